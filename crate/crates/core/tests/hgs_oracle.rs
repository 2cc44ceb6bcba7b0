use hopfgal::catalog::enumerate_transitive;
use hopfgal::hgs::{direct_hgs, direct_hgs_capped, find_hgs, ExtensionContext, HgsRecord};
use hopfgal::zoo::groups_of_order;

fn keys(v: &[HgsRecord]) -> Vec<Vec<hopfgal::Perm>> {
    let mut k: Vec<_> = v.iter().map(|r| r.key().to_vec()).collect();
    k.sort();
    k
}

#[test]
fn engine_matches_direct_enumeration_up_to_degree_6() {
    for g in 1..=6 {
        for entry in enumerate_transitive(g).unwrap().entries {
            let ctx = ExtensionContext::new(entry.group().unwrap()).unwrap();
            for t in groups_of_order(g).unwrap() {
                let fast = find_hgs(&ctx, &t).unwrap();
                let slow = direct_hgs(&ctx, &t).unwrap();
                assert_eq!(keys(&fast), keys(&slow), "degree {g} entry {} type {}", entry.index, t.label);
                for r in &fast {
                    assert!(r.n_image.is_regular());
                    assert!(ctx.group().normalizes(&r.n_image));
                }
            }
        }
    }
}

#[test]
fn engine_matches_direct_enumeration_degree_8() {
    for g in [7, 8] {
        for entry in enumerate_transitive(g).unwrap().entries {
            let ctx = ExtensionContext::new(entry.group().unwrap()).unwrap();
            for t in groups_of_order(g).unwrap() {
                let fast = find_hgs(&ctx, &t).unwrap();
                let slow = direct_hgs_capped(&ctx, &t, 8).unwrap();
                assert_eq!(keys(&fast), keys(&slow), "degree {g} entry {} type {}", entry.index, t.label);
            }
        }
    }
}

#[test]
fn generator_order_does_not_matter() {
    for entry in enumerate_transitive(6).unwrap().entries {
        let g = entry.group().unwrap();
        let mut gens = g.generators().to_vec();
        gens.reverse();
        gens.push(gens[0] * gens[gens.len() - 1]);
        let shuffled = hopfgal::PermGroup::new(6, gens).unwrap();
        let a = ExtensionContext::new(g).unwrap();
        let b = ExtensionContext::new(shuffled).unwrap();
        for t in groups_of_order(6).unwrap() {
            assert_eq!(keys(&find_hgs(&a, &t).unwrap()), keys(&find_hgs(&b, &t).unwrap()));
        }
    }
}

use hopfgal::algos::{find_isomorphism, LatticeOptions, SubgroupLattice};
use hopfgal::zoo::groups_of_order;
use hopfgal::PermGroup;

/// Regular subgroups of S_g up to isomorphism, from the subgroup lattice.
fn regular_types(g: usize) -> Vec<PermGroup> {
    let opts = LatticeOptions {
        order_divides: Some(g as u128),
        ..Default::default()
    };
    let lat = SubgroupLattice::build(&PermGroup::symmetric(g), &opts).unwrap();
    let mut reps: Vec<PermGroup> = Vec::new();
    for c in lat.classes() {
        if c.order != g as u128 || !c.rep.is_regular() {
            continue;
        }
        if !reps.iter().any(|r| find_isomorphism(r, &c.rep).unwrap().is_some()) {
            reps.push(c.rep.clone());
        }
    }
    reps
}

#[test]
fn zoo_matches_regular_subgroups() {
    for g in 2..=8 {
        let found = regular_types(g);
        let zoo = groups_of_order(g).unwrap();
        assert_eq!(found.len(), zoo.len(), "order {g}");
        for r in &found {
            let hits = zoo
                .iter()
                .filter(|t| find_isomorphism(t.abstract_group(), r).unwrap().is_some())
                .count();
            assert_eq!(hits, 1, "order {g}");
        }
    }
}

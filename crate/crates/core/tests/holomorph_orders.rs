use hopfgal::holomorph::Holomorph;
use hopfgal::zoo::{groups_of_order, type_2p2, TwoP2Kind};

#[test]
fn order_18_holomorphs() {
    let expected = [
        (TwoP2Kind::Cyclic, 108),
        (TwoP2Kind::CpxC2p, 864),
        (TwoP2Kind::DpxCp, 216),
        (TwoP2Kind::CpxCpC2, 7776),
        (TwoP2Kind::Dihedral, 972),
    ];
    for (k, order) in expected {
        let t = type_2p2(3, k).unwrap();
        let h = Holomorph::new(t.abstract_group()).unwrap();
        assert_eq!(h.group().order(), order, "{}", t.label);
        let stab = h.aut_part().unwrap();
        assert_eq!(stab.order() * 18, order);
        assert!(h.group().is_transitive());
        let exponent_small = !matches!(k, TwoP2Kind::Cyclic | TwoP2Kind::Dihedral);
        if exponent_small {
            assert!(h.group().elements().all(|x| x.order() % 9 != 0), "{}", t.label);
        }
    }
}

#[test]
fn small_holomorph_orders() {
    let expected = [(12, vec![48, 144, 144, 144, 288]), (14, vec![84, 588]), (15, vec![120])];
    for (g, orders) in expected {
        let got: Vec<u128> = groups_of_order(g)
            .unwrap()
            .iter()
            .map(|t| Holomorph::new(t.abstract_group()).unwrap().group().order())
            .collect();
        assert_eq!(got, orders, "order {g}");
    }
}

#[test]
fn element_constructor_respects_factorization() {
    let t = type_2p2(3, TwoP2Kind::Dihedral).unwrap();
    let h = Holomorph::new(t.abstract_group()).unwrap();
    let aut = h.automorphisms();
    let n = t.abstract_group().generators()[0];
    for phi in aut.autos.iter().take(5) {
        let x = h.element(&n, phi).unwrap();
        assert!(h.group().contains(&x));
        // (n, φ) sends point 1 to the point of n
        assert_eq!(x.apply(1).unwrap(), h.regular().point_of(&n).unwrap());
    }
}

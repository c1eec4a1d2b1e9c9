use bgg_core::selftest::kostant_brute_force;
use bgg_core::{LieAlgebra, RootSystem};

#[test]
fn kostant_closed_form_in_a2() {
    let rs = RootSystem::from_label("A2").unwrap();
    for a in 0..12 {
        for b in 0..12 {
            assert_eq!(rs.kostant(&[a, b]), (a.min(b) + 1) as u128);
        }
    }
}

#[test]
fn kostant_agrees_with_enumeration_in_rank_three() {
    for label in ["A3", "B3", "C3"] {
        let rs = RootSystem::from_label(label).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(rs.kostant(&[a, b, c]), kostant_brute_force(&rs, &[a, b, c]), "{label}");
                }
            }
        }
    }
}

#[test]
fn adjoint_dimensions() {
    let expected = [
        ("A1", 3), ("A4", 24), ("B3", 21), ("C4", 36), ("D4", 28),
        ("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248),
    ];
    for (label, dim) in expected {
        let rs = RootSystem::from_label(label).unwrap();
        let theta = rs.root_to_weight(rs.highest_root());
        assert_eq!(rs.weyl_dimension(&theta).unwrap(), dim, "{label}");
        assert_eq!(2 * rs.num_positive() + rs.rank(), dim as usize, "{label}");
    }
}

#[test]
fn weyl_group_orders() {
    for (label, order) in [("A3", 24), ("B3", 48), ("D4", 192), ("G2", 12), ("F4", 1152), ("E6", 51840), ("E7", 2903040), ("E8", 696729600)] {
        assert_eq!(RootSystem::from_label(label).unwrap().weyl_order(), order, "{label}");
    }
}

#[test]
fn enumeration_agrees_with_the_degree_formula() {
    for label in ["A1", "A3", "B3", "C3", "D4", "G2", "F4"] {
        let rs = RootSystem::from_label(label).unwrap();
        assert_eq!(rs.try_weyl_group().unwrap().len() as u128, rs.weyl_order(), "{label}");
    }
    assert!(RootSystem::from_label("E8").unwrap().try_weyl_group().is_err());
}

#[test]
fn chevalley_basis_in_rank_four() {
    for label in ["A4", "C4", "F4"] {
        let g = LieAlgebra::from_label(label).unwrap();
        assert_eq!(g.dim(), 2 * g.num_positive() + g.rank());
    }
}

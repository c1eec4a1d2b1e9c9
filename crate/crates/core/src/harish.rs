//! Harish-Chandra projection with the ρ-twist, central characters and linkage.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{evaluate_at, LieAlgebra, UEAElement};
use crate::poly::Poly;
use crate::rational::{q, Q};
use crate::rootdata::{RootSystem, Weight};

/// `f ↦ (λ ↦ f(λ − ρ))`; since `ρ(h_i) = 1` this is `h_i ↦ h_i − 1`.
pub fn gamma_twist(f: &Poly) -> Poly {
    f.translate(&vec![q(-1); f.nvars()])
}

/// `ψ(z) = γ♯(φ(z))` for `z` of weight zero.
pub fn hc_psi(alg: &LieAlgebra, z: &UEAElement) -> Result<Poly> {
    if !alg.is_weight_zero(z) {
        return Err(Error::NotWeightZero);
    }
    Ok(gamma_twist(&alg.hc_project(z)))
}

/// `χ_λ(z)`: the scalar by which a central `z` acts on a highest weight module of weight λ.
pub fn central_character(alg: &LieAlgebra, lambda: &Weight, z: &UEAElement) -> Result<Q> {
    alg.root_system().check_weight(lambda)?;
    if let Some(i) = alg.first_noncommuting(z) {
        return Err(Error::NotCentral(i));
    }
    Ok(evaluate_at(&alg.hc_project(z), lambda))
}

pub fn is_linked(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    rs.dot_orbit(lambda).contains(mu)
}

/// Partition of a weight sample into linkage classes, each in block order.
pub fn linkage_classes(rs: &RootSystem, weights: &[Weight]) -> Vec<Vec<Weight>> {
    let mut classes: Vec<(Weight, Vec<Weight>)> = Vec::new();
    for w in weights {
        let key = rs.dot_orbit(w)[0].clone();
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) if members.contains(w) => {}
            Some((_, members)) => members.push(w.clone()),
            None => classes.push((key, vec![w.clone()])),
        }
    }
    classes
        .into_iter()
        .map(|(_, members)| rs.block_ordering(members))
        .collect()
}

/// The character `χ_λ` of `Z(g)`, identified by the dot orbit of λ.
///
/// Equality compares the first element of the orbit in block order, which
/// is the same as asking whether the representatives are linked.
#[derive(Clone, Debug, Serialize)]
pub struct CentralCharacter {
    pub representative: Weight,
    orbit_key: Weight,
    #[serde(with = "crate::rational::serde_q")]
    pub casimir_value: Q,
}

impl CentralCharacter {
    pub fn new(alg: &LieAlgebra, lambda: &Weight) -> Result<Self> {
        let omega = alg.casimir()?;
        Ok(Self {
            representative: lambda.clone(),
            orbit_key: alg.root_system().dot_orbit(lambda)[0].clone(),
            casimir_value: evaluate_at(&alg.hc_project(&omega), lambda),
        })
    }
}

impl PartialEq for CentralCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.orbit_key == other.orbit_key
    }
}

impl Eq for CentralCharacter {}

/// `χ_λ(1) = 1`.
pub fn unit_character() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn sl2_normalized_casimir(g: &LieAlgebra) -> UEAElement {
        g.word(&[1, 1])
            .add(&g.word(&[1]).scale(&q(2)))
            .add(&g.word(&[0, 2]).scale(&q(4)))
    }

    #[test]
    fn twist_examples() {
        let h = Poly::var(1, 0);
        assert_eq!(gamma_twist(&h), h.sub(&Poly::one(1)));
        assert_eq!(gamma_twist(&Poly::constant(2, q(7))), Poly::constant(2, q(7)));
        let p = h.mul(&h).add(&h.scale(&q(2)));
        assert_eq!(gamma_twist(&p).to_string(), "h1^2 - 1");
    }

    #[test]
    fn psi_examples() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let z = sl2_normalized_casimir(&g);
        assert_eq!(hc_psi(&g, &z).unwrap().to_string(), "h1^2 - 1");
        assert_eq!(hc_psi(&g, &UEAElement::one(3)).unwrap(), Poly::one(1));
        assert_eq!(hc_psi(&g, &UEAElement::basis(3, 2)), Err(Error::NotWeightZero));
    }

    #[test]
    fn character_examples() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let z = sl2_normalized_casimir(&g);
        assert_eq!(central_character(&g, &Weight::from_ints(&[3]), &z).unwrap(), q(15));
        let minus_rho = Weight::from_ints(&[-1]);
        let psi_at_zero = hc_psi(&g, &z).unwrap().evaluate(&[q(0)]);
        assert_eq!(central_character(&g, &minus_rho, &z).unwrap(), psi_at_zero);
        assert_eq!(
            central_character(&g, &Weight::from_ints(&[2]), &UEAElement::one(3)).unwrap(),
            unit_character()
        );
        assert_eq!(
            central_character(&g, &Weight::from_ints(&[2]), &UEAElement::basis(3, 1)),
            Err(Error::NotCentral(0))
        );
    }

    #[test]
    fn linkage() {
        let rs = RootSystem::from_label("A1").unwrap();
        let w = |x: i64| Weight::from_ints(&[x]);
        assert!(is_linked(&rs, &w(3), &w(3)));
        assert!(is_linked(&rs, &w(3), &w(-5)));
        assert!(!is_linked(&rs, &w(3), &w(-4)));
        let classes = linkage_classes(&rs, &[w(-5), w(0), w(3), w(-2), w(-1)]);
        assert_eq!(classes, vec![vec![w(3), w(-5)], vec![w(0), w(-2)], vec![w(-1)]]);
    }

    #[test]
    fn character_equality_is_linkage() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let a = CentralCharacter::new(&g, &Weight::from_ints(&[3])).unwrap();
        let b = CentralCharacter::new(&g, &Weight::from_ints(&[-5])).unwrap();
        let c = CentralCharacter::new(&g, &Weight::new(vec![q_frac(1, 2)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.casimir_value, b.casimir_value);
        assert_ne!(a, c);
    }
}

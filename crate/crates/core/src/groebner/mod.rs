//! Gröbner bases and the decision procedures derived from them.

mod buchberger;
mod dimension;
mod elimination;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

pub use dimension::{krull_dimension, is_zero_dimensional, monomial_dimension, MAX_DIMENSION_VARIABLES};
pub use elimination::{elimination_ideal, kernel_of_map};

/// Finitely generated ideal of a polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.ring().compatible(ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g.in_ring(ring)?);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, gens: &[S]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn groebner(&self, order: MonomialOrder) -> GroebnerBasis {
        buchberger(self, order)
    }
}

/// Reduced Gröbner basis of an ideal under a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Ring carrying the basis order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].leading_monomial().unwrap().is_one()
    }

    /// Remainder of `f` on full division by the basis, returned in `f`'s own
    /// ring. No term of the result is divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let g = f.in_ring(&self.ring)?;
        buchberger::reduce(&g, &self.basis).in_ring(f.ring())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks the Gröbner property directly: every S-polynomial of a pair of
    /// basis elements reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|j| {
            (0..j).all(|i| buchberger::reduce(&buchberger::s_polynomial(&b[i], &b[j]), b).is_zero())
        })
    }

    /// Whether the basis is reduced: monic and no term of any element is
    /// divisible by the leading monomial of another element.
    pub fn check_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.basis.iter().enumerate().all(|(i, g)| {
            g.leading_coefficient() == 1
                && g.terms().iter().all(|(m, _)| {
                    lms.iter().enumerate().all(|(k, l)| k == i || !l.divides(m))
                })
        })
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    let ring = if ideal.ring.order() == order {
        ideal.ring.clone()
    } else {
        ideal.ring.with_order(order)
    };
    let gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|g| g.in_ring(&ring).expect("compatible by construction"))
        .collect();
    let basis = buchberger::groebner(&ring, &gens);
    GroebnerBasis {
        ring,
        basis,
        reduced: true,
    }
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if !f.ring().compatible(&ideal.ring) {
        return Err(Error::RingMismatch);
    }
    buchberger(ideal, MonomialOrder::GrevLex).contains(f)
}

/// Ideal equality by mutual membership against reduced Gröbner bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if !a.ring.compatible(&b.ring) {
        return Err(Error::RingMismatch);
    }
    let ga = buchberger(a, MonomialOrder::GrevLex);
    let gb = buchberger(b, MonomialOrder::GrevLex);
    for g in b.generators() {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in a.generators() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(names: &[&str]) -> Arc<Ring> {
        Ring::standard(PrimeField::new(32003).unwrap(), names).unwrap()
    }

    #[test]
    fn binomial_is_its_own_basis() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["x*y - z*w"]).unwrap();
        let g = buchberger(&i, MonomialOrder::GrevLex);
        assert_eq!(g.polynomials(), &[r.parse("x*y - z*w").unwrap()]);
    }

    #[test]
    fn empty_ideal_has_empty_basis() {
        let r = ring(&["x"]);
        assert!(buchberger(&Ideal::zero(&r), MonomialOrder::GrevLex).is_empty());
    }

    #[test]
    fn one_step_rewrite() {
        let r = ring(&["x", "y", "z", "w"]);
        let g = buchberger(&Ideal::parse(&r, &["x*y - z*w"]).unwrap(), MonomialOrder::GrevLex);
        assert_eq!(g.normal_form(&r.parse("x*y").unwrap()).unwrap(), r.parse("z*w").unwrap());
        assert!(g.normal_form(&g.polynomials()[0]).unwrap().is_zero());
    }

    #[test]
    fn membership_and_equality() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["x*y - z*w", "x*y"]).unwrap();
        assert!(ideal_membership(&r.parse("z*w").unwrap(), &i).unwrap());
        assert!(!ideal_membership(&r.parse("z").unwrap(), &i).unwrap());
        let a = Ideal::parse(&r, &["x", "y"]).unwrap();
        let b = Ideal::parse(&r, &["x + y", "y"]).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        let c = Ideal::parse(&r, &["x", "z"]).unwrap();
        assert!(!ideal_equal(&a, &c).unwrap());
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&Ideal::parse(&r, &["x", "x + 1"]).unwrap(), MonomialOrder::GrevLex);
        assert!(g.is_unit());
    }

    #[test]
    fn membership_rejects_foreign_ring() {
        let r = ring(&["x", "y"]);
        let s = ring(&["a", "b"]);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(ideal_membership(&s.var(0), &i), Err(Error::RingMismatch));
    }
}

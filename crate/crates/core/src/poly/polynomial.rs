use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::monomial::{Monomial, MonomialOrder, MultiDegree};
use super::ring::Ring;

pub type Term = (Monomial, u64);

/// Sparse polynomial over `F_p`. Terms are kept sorted in descending order
/// under the ring's active monomial order, with no zero coefficients and no
/// repeated monomials.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// `a + c * shift * b` with both inputs sorted descending under `order`.
pub(crate) fn axpy(
    field: PrimeField,
    order: MonomialOrder,
    a: &[Term],
    c: u64,
    shift: &Monomial,
    b: &[Term],
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(m, k)| (shift.mul(m), field.mul(c, *k))).peekable();
    while i < a.len() || bi.peek().is_some() {
        let ord = match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let t = bi.next().unwrap();
                if t.1 != 0 {
                    out.push(t);
                }
            }
            Ordering::Equal => {
                let t = bi.next().unwrap();
                let s = field.add(a[i].1, t.1);
                if s != 0 {
                    out.push((t.0, s));
                }
                i += 1;
            }
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: u64) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u64) -> Self {
        let c = c % ring.field().modulus();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Normalizes an arbitrary list of terms: combines duplicates, drops zeros
    /// and sorts under the ring order.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.modulus());
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already canonical for `ring`.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.field().neg(1);
        Ok(self.add_scaled(minus_one, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        // accumulate products of the shorter operand's terms
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in &small.terms {
            acc = axpy(self.field(), self.ring.order(), &acc, *c, m, &large.terms);
        }
        Ok(Polynomial::from_sorted_terms(&self.ring, acc))
    }

    /// `self + c * m * other`, assuming the same ring.
    pub(crate) fn add_scaled(&self, c: u64, m: &Monomial, other: &Polynomial) -> Polynomial {
        let terms = axpy(self.field(), self.ring.order(), &self.terms, c, m, &other.terms);
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.field();
        let c = c % f.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), f.mul(*k, c))).collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u64) -> Polynomial {
        Polynomial::zero(&self.ring).add_scaled(c, m, self)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.field().inv(self.leading_coefficient()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Moves the polynomial into a compatible ring (e.g. one with a different
    /// monomial order), re-sorting terms.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, ring) || *self.ring == **ring {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        if !self.ring.compatible(ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial::from_sorted_terms(ring, terms))
    }

    /// Renames variables: variable `i` of this ring becomes variable
    /// `mapping[i]` of `target`. Fields must agree.
    pub fn map_variables(&self, target: &Arc<Ring>, mapping: &[usize]) -> Result<Polynomial> {
        if self.field() != target.field() || mapping.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[mapping[i]] += x;
                }
                (Monomial::from_exponents(e), *c)
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::WrongCount {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Err(Error::InvalidInput(
                    "substitution from a ring without variables".into(),
                ))
            }
        };
        if images.iter().any(|p| !Arc::ptr_eq(&p.ring, &target) && *p.ring != *target) {
            return Err(Error::RingMismatch);
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Common multidegree of all terms under `grading`, or `None` when the
    /// terms disagree (or the polynomial is zero).
    pub fn multidegree_under(&self, grading: &[MultiDegree]) -> Option<MultiDegree> {
        let mut degs = self.terms.iter().map(|(m, _)| m.multidegree(grading));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Common multidegree under the ring's own grading.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        if self.ring.nvars() == 0 {
            return if self.is_zero() {
                None
            } else {
                Some(MultiDegree::zero(self.ring.components()))
            };
        }
        self.multidegree_under(self.ring.grading())
    }

    /// Common total degree (sum of multidegree components).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self
            .terms
            .iter()
            .map(|(m, _)| self.ring.monomial_degree(m).total());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

/// Common multidegree of `f` under an explicit per-variable grading.
pub fn is_multihomogeneous(f: &Polynomial, grading: &[MultiDegree]) -> Option<MultiDegree> {
    f.multidegree_under(grading)
}

/// `sum coeffs[j] * basis[j]`.
pub fn linear_combination(basis: &[Polynomial], coeffs: &[u64]) -> Result<Polynomial> {
    let first = basis.first().ok_or(Error::Empty("linear combination basis"))?;
    if coeffs.len() != basis.len() {
        return Err(Error::WrongCount {
            expected: basis.len(),
            got: coeffs.len(),
        });
    }
    let one = Monomial::one(first.ring.nvars());
    let mut acc = Polynomial::zero(&first.ring);
    for (b, &c) in basis.iter().zip(coeffs) {
        first.check_ring(b)?;
        acc = acc.add_scaled(c, &one, b);
    }
    Ok(acc)
}

/// Draws `c` uniformly from `F_p^len` and returns `(sum c_j basis_j, c)`.
/// All nonzero basis elements must share one multidegree.
pub fn random_linear_combination<R: Rng + ?Sized>(
    basis: &[Polynomial],
    rng: &mut R,
) -> Result<(Polynomial, Vec<u64>)> {
    let first = basis.first().ok_or(Error::Empty("linear combination basis"))?;
    let mut common: Option<MultiDegree> = None;
    for b in basis.iter().filter(|b| !b.is_zero()) {
        let d = b
            .multidegree()
            .ok_or_else(|| Error::NotHomogeneous(b.to_string()))?;
        match &common {
            None => common = Some(d),
            Some(c) if *c != d => {
                return Err(Error::NotHomogeneous(format!(
                    "basis mixes multidegrees {c} and {d}"
                )))
            }
            _ => {}
        }
    }
    let field = first.field();
    let coeffs: Vec<u64> = basis.iter().map(|_| field.sample(rng)).collect();
    let p = linear_combination(basis, &coeffs)?;
    Ok((p, coeffs))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics when the operands live in different rings; use the
            /// `try_*` methods to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomial operands in different rings")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(self.field().neg(1))
    }
}

/// Serialized as its canonical text form.
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

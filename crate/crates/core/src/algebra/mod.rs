//! Graded algebra presentations and the verification oracles built on the
//! Gröbner engine.
//!
//! Every module-finiteness question is decided through graded Nakayama: for
//! a positively graded presentation `S = k[x]/J` and homogeneous elements
//! `y_1..y_r` of positive degree, `S` is a finite `k[y]`-module exactly when
//! `S/(y)` is a finite-dimensional `k`-vector space, i.e. when
//! `J + (y)` is zero-dimensional. (If `S/(y)` is spanned by finitely many
//! homogeneous classes, those classes generate `S` over `k[y]` by induction on
//! degree; the converse is immediate.)

mod complete;
mod reduction;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, krull_dimension, GroebnerBasis, Ideal};
use crate::poly::{Monomial, MonomialOrder, MultiDegree, Polynomial, Ring};

pub use complete::{
    diagonal_subring, is_complete_reduction_ideals, is_complete_reduction_ring,
    lemma_correspondence_check, multigraded_fiber_ring, CompleteReductionMatrix, Correspondence,
    DiagonalSubring, IdealSequence, MultigradedFiberRing,
};
pub(crate) use complete::fresh_names;
pub use reduction::{
    analytic_spread, fiber_ring, fiber_reduction_test, is_minimal_reduction, is_reduction,
    power_criterion, EquigeneratedIdeal, FiberRing, GbWitness, PowerScan, PowerStep,
    ReductionOracle, ReductionStatus, ReductionTranscript, ReductionVerdict,
};

/// Largest monomial basis of `S_(1,..,1)` accepted when building a diagonal
/// subring.
pub const MAX_DIAGONAL_GENERATORS: usize = 64;

/// Default bound on `N` for the power criterion `I^{N+1} = J I^N`.
pub const DEFAULT_N_MAX: usize = 10;

/// `k[x]/J` with an N^n-grading on the variables and multihomogeneous
/// relations. The grevlex basis of `J` is computed once and shared between
/// clones.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    ring: Arc<Ring>,
    relations: Ideal,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl GradedAlgebra {
    pub fn new(ring: &Arc<Ring>, relations: Vec<Polynomial>) -> Result<GradedAlgebra> {
        let ring = if ring.order() == MonomialOrder::GrevLex {
            ring.clone()
        } else {
            ring.with_order(MonomialOrder::GrevLex)
        };
        if let Some(i) = ring.grading().iter().position(|g| g.is_zero()) {
            return Err(Error::InvalidRing(format!(
                "variable {} has degree zero",
                ring.names()[i]
            )));
        }
        let relations = Ideal::new(&ring, relations)?;
        for r in relations.generators() {
            match r.multidegree() {
                Some(d) if !d.is_zero() => {}
                Some(_) => {
                    return Err(Error::NotHomogeneous(format!(
                        "relation {r} has degree zero"
                    )))
                }
                None => return Err(Error::NotHomogeneous(format!("relation {r}"))),
            }
        }
        Ok(GradedAlgebra {
            ring,
            relations,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn polynomial_ring(ring: &Arc<Ring>) -> Result<GradedAlgebra> {
        GradedAlgebra::new(ring, Vec::new())
    }

    /// Parses relation strings against `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, relations: &[S]) -> Result<GradedAlgebra> {
        let rel = relations
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::new(ring, rel)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Number of grading components `n`.
    pub fn components(&self) -> usize {
        self.ring.components()
    }

    /// All variables have unit-vector degrees.
    pub fn is_standard(&self) -> bool {
        self.ring.is_standard()
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        self.ring.parse(text)
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| buchberger(&self.relations, MonomialOrder::GrevLex))
    }

    /// Canonical representative modulo the relations.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.groebner().normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Standard monomials of multidegree `degree`: a `k`-basis of that
    /// graded component.
    pub fn component_basis(&self, degree: &MultiDegree) -> Vec<Monomial> {
        let lms = self.groebner().leading_monomials();
        monomials_of_multidegree(&self.ring, degree)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// `relations + (extra)` as an ideal of the ambient ring.
    pub fn ideal_with(&self, extra: &[Polynomial]) -> Result<Ideal> {
        self.relations.extended(extra)
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(krull_dimension(&self.relations)?.unwrap_or(0))
    }
}

/// Every monomial of the given multidegree (variables of degree zero are
/// excluded by [`GradedAlgebra::new`]).
pub(crate) fn monomials_of_multidegree(ring: &Ring, degree: &MultiDegree) -> Vec<Monomial> {
    let n = ring.nvars();
    let grading = ring.grading();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        i: usize,
        left: &mut Vec<u32>,
        cur: &mut Vec<u32>,
        grading: &[MultiDegree],
        out: &mut Vec<Monomial>,
    ) {
        if left.iter().all(|&c| c == 0) {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        if i == cur.len() {
            return;
        }
        let g = grading[i].components();
        // largest exponent that still fits
        let max_e = g
            .iter()
            .zip(left.iter())
            .filter(|(gc, _)| **gc > 0)
            .map(|(gc, l)| l / gc)
            .min()
            .unwrap_or(0);
        for e in (0..=max_e).rev() {
            for (l, gc) in left.iter_mut().zip(g) {
                *l -= e * gc;
            }
            cur[i] = e;
            rec(i + 1, left, cur, grading, out);
            for (l, gc) in left.iter_mut().zip(g) {
                *l += e * gc;
            }
        }
        cur[i] = 0;
    }
    if degree.len() != ring.components() {
        return out;
    }
    let mut left = degree.0.clone();
    rec(0, &mut left, &mut cur, grading, &mut out);
    out
}

/// Krull dimension of the presented algebra.
pub fn algebra_dimension(s: &GradedAlgebra) -> Result<usize> {
    s.dimension()
}

fn check_homogeneous_positive(y: &[Polynomial], ring: &Arc<Ring>) -> Result<()> {
    for f in y {
        if !f.ring().compatible(ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            continue;
        }
        match f.homogeneous_degree() {
            Some(0) => return Err(Error::WrongDegree(format!("{f} has degree zero"))),
            Some(_) => {}
            None => return Err(Error::NotHomogeneous(f.to_string())),
        }
    }
    Ok(())
}

/// Whether `y` is a homogeneous system of parameters of `s`: exactly
/// `dim s` homogeneous elements of positive degree with `s/(y)` of finite
/// length. Zero entries are allowed and simply fail to help.
pub fn is_hsop(s: &GradedAlgebra, y: &[Polynomial]) -> Result<bool> {
    check_homogeneous_positive(y, s.ring())?;
    let d = s.dimension()?;
    if y.len() != d {
        return Err(Error::WrongCount {
            expected: d,
            got: y.len(),
        });
    }
    is_zero_dimensional(&s.ideal_with(y)?)
}

/// Whether `k[y] ⊆ s` is a graded Noether normalization, for degree-1
/// elements `y` of a standard graded algebra. Given the hsop property the
/// `y` are algebraically independent, so no separate injectivity check is
/// needed.
pub fn is_noether_normalization(s: &GradedAlgebra, y: &[Polynomial]) -> Result<bool> {
    if s.components() != 1 || !s.is_standard() {
        return Err(Error::InvalidRing(
            "Noether normalization requires a standard N-graded algebra".into(),
        ));
    }
    for f in y.iter().filter(|f| !f.is_zero()) {
        if f.homogeneous_degree() != Some(1) {
            return Err(Error::WrongDegree(format!("{f} is not of degree 1")));
        }
    }
    is_hsop(s, y)
}

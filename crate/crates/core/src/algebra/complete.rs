//! Complete reductions of standard N^n-graded algebras and of sequences of
//! equigenerated ideals, plus the multigraded fiber ring linking the two.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, kernel_of_map, GroebnerBasis};
use crate::linalg::Span;
use crate::poly::{linear_combination, Monomial, MonomialOrder, MultiDegree, Polynomial, Ring};

use super::reduction::{EquigeneratedIdeal, ReductionOracle, ReductionStatus, ReductionVerdict};
use super::{GradedAlgebra, MAX_DIAGONAL_GENERATORS};

/// `n × r` matrix of entries; row `i` belongs to the `i`-th ideal or graded
/// piece, column `j` contributes the product `X_j = ∏_i x_{ij}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompleteReductionMatrix {
    rows: Vec<Vec<Polynomial>>,
}

impl CompleteReductionMatrix {
    pub fn new(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty("matrix rows"))?;
        let r = first.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != r) {
            return Err(Error::WrongCount {
                expected: r,
                got: bad.len(),
            });
        }
        let ring = rows.iter().flatten().next().map(|p| p.ring().clone());
        if let Some(ring) = ring {
            if rows.iter().flatten().any(|p| !p.ring().compatible(&ring)) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(CompleteReductionMatrix { rows })
    }

    /// Builds the matrix from its columns (each of length `n`).
    pub fn from_columns(columns: Vec<Vec<Polynomial>>, n: usize) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::WrongCount {
                expected: n,
                got: bad.len(),
            });
        }
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        CompleteReductionMatrix::new(rows)
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.parse(s.as_ref())).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        CompleteReductionMatrix::new(rows)
    }

    /// Number of rows `n`.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Type `r` (number of columns).
    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.rows.iter().map(|row| row[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    /// `X_j = ∏_i x_{ij}` for every column.
    pub fn column_products(&self) -> Vec<Polynomial> {
        (0..self.ncols())
            .map(|j| {
                let mut col = self.rows.iter().map(|row| &row[j]);
                let first = col.next().unwrap().clone();
                col.fold(first, |acc, x| &acc * x)
            })
            .collect()
    }
}

/// `S^Δ = k[S_(1,..,1)]` presented as a quotient of `k[T_1..T_m]`, with
/// `T_i` mapped to the `i`-th standard monomial of multidegree `(1,..,1)`.
#[derive(Clone, Debug)]
pub struct DiagonalSubring {
    parent: GradedAlgebra,
    monomials: Vec<Monomial>,
    presentation: GradedAlgebra,
}

impl DiagonalSubring {
    pub fn parent(&self) -> &GradedAlgebra {
        &self.parent
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The generators as elements of the parent.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.monomials
            .iter()
            .map(|m| Polynomial::monomial(self.parent.ring(), m.clone(), 1))
            .collect()
    }

    pub fn presentation(&self) -> &GradedAlgebra {
        &self.presentation
    }

    pub fn dimension(&self) -> Result<usize> {
        self.presentation.dimension()
    }

    /// Linear form in the `T_i` representing an element of `S_(1,..,1)`.
    pub fn image(&self, f: &Polynomial) -> Result<Polynomial> {
        let t = self.presentation.ring();
        let nf = self.parent.normal_form(f)?;
        if nf.is_zero() {
            return Ok(Polynomial::zero(t));
        }
        let diag = MultiDegree(vec![1; self.parent.components()]);
        if nf.multidegree().as_ref() != Some(&diag) {
            return Err(Error::WrongDegree(format!("{f} is not of multidegree {diag}")));
        }
        let index: HashMap<&Monomial, usize> =
            self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coeffs = vec![0u64; self.monomials.len()];
        for (m, c) in nf.terms() {
            coeffs[index[m]] = *c;
        }
        linear_combination(&t.vars(), &coeffs)
    }

    /// Whether `S^Δ` is module-finite over `k[X_1..X_r]`.
    pub fn is_complete_reduction(&self, x: &CompleteReductionMatrix) -> Result<bool> {
        check_ring_entries(&self.parent, x)?;
        let images = x
            .column_products()
            .iter()
            .map(|p| self.image(p))
            .collect::<Result<Vec<_>>>()?;
        is_zero_dimensional(&self.presentation.ideal_with(&images)?)
    }
}

fn check_standard_multigraded(s: &GradedAlgebra) -> Result<()> {
    if !s.is_standard() {
        return Err(Error::InvalidRing(
            "complete reductions require a standard N^n-graded algebra".into(),
        ));
    }
    Ok(())
}

fn check_ring_entries(s: &GradedAlgebra, x: &CompleteReductionMatrix) -> Result<()> {
    let n = s.components();
    if x.nrows() != n {
        return Err(Error::WrongCount {
            expected: n,
            got: x.nrows(),
        });
    }
    for (i, row) in x.rows().iter().enumerate() {
        let want = MultiDegree::unit(n, i);
        for (j, p) in row.iter().enumerate() {
            if !p.ring().compatible(s.ring()) {
                return Err(Error::RingMismatch);
            }
            if !p.is_zero() && p.multidegree().as_ref() != Some(&want) {
                return Err(Error::WrongDegree(format!(
                    "entry ({},{}) = {p} is not of multidegree {want}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Builds the presentation of `S^Δ`. When `S_(1,..,1) = 0` the result is
/// the presentation of `k` (no variables).
pub fn diagonal_subring(s: &GradedAlgebra) -> Result<DiagonalSubring> {
    check_standard_multigraded(s)?;
    let diag = MultiDegree(vec![1; s.components()]);
    let monomials = s.component_basis(&diag);
    if monomials.len() > MAX_DIAGONAL_GENERATORS {
        return Err(Error::DiagonalTooLarge(monomials.len()));
    }
    let names: Vec<String> = (1..=monomials.len()).map(|i| format!("T{i}")).collect();
    let t = Ring::standard(s.ring().field(), &names)?;
    let gens: Vec<Polynomial> = monomials
        .iter()
        .map(|m| Polynomial::monomial(s.ring(), m.clone(), 1))
        .collect();
    let kernel = kernel_of_map(&t, &gens, s.relations())?;
    let presentation = GradedAlgebra::new(&t, kernel.generators().to_vec())?;
    Ok(DiagonalSubring {
        parent: s.clone(),
        monomials,
        presentation,
    })
}

/// Ring-level complete-reduction test: `S^Δ` module-finite over
/// `k[X_1..X_r]`.
pub fn is_complete_reduction_ring(s: &GradedAlgebra, x: &CompleteReductionMatrix) -> Result<bool> {
    check_ring_entries(s, x)?;
    diagonal_subring(s)?.is_complete_reduction(x)
}

/// A sequence `I_1..I_n` of equigenerated ideals of one algebra with its
/// product `I`, caching the Gröbner bases every complete-reduction test
/// needs.
#[derive(Debug)]
pub struct IdealSequence {
    ideals: Vec<EquigeneratedIdeal>,
    bases: Vec<GroebnerBasis>,
    oracle: ReductionOracle,
}

impl IdealSequence {
    pub fn new(ideals: Vec<EquigeneratedIdeal>) -> Result<Self> {
        let (first, rest) = ideals.split_first().ok_or(Error::Empty("ideal sequence"))?;
        if rest.iter().any(|i| !i.algebra().ring().compatible(first.algebra().ring())) {
            return Err(Error::RingMismatch);
        }
        let product = rest.iter().try_fold(first.clone(), |acc, i| acc.product(i))?;
        let bases = ideals
            .iter()
            .map(|i| Ok(buchberger(&i.ambient_ideal()?, MonomialOrder::GrevLex)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealSequence {
            ideals,
            bases,
            oracle: ReductionOracle::new(&product),
        })
    }

    pub fn ideals(&self) -> &[EquigeneratedIdeal] {
        &self.ideals
    }

    pub fn product(&self) -> &EquigeneratedIdeal {
        self.oracle.ideal()
    }

    /// `ℓ(I_1 ⋯ I_n)`, the type of a minimal complete reduction.
    pub fn analytic_spread(&self) -> Result<usize> {
        self.oracle.analytic_spread()
    }

    fn check_entries(&self, a: &CompleteReductionMatrix) -> Result<()> {
        if a.nrows() != self.ideals.len() {
            return Err(Error::WrongCount {
                expected: self.ideals.len(),
                got: a.nrows(),
            });
        }
        for (i, ((ideal, gb), row)) in self.ideals.iter().zip(&self.bases).zip(a.rows()).enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.ring().compatible(ideal.algebra().ring()) {
                    return Err(Error::RingMismatch);
                }
                let nf = ideal.algebra().normal_form(p)?;
                let in_degree = nf.is_zero() || p.homogeneous_degree() == Some(ideal.degree());
                if !in_degree || !gb.contains(p)? {
                    return Err(Error::EntryNotInIdeal { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Whether `(b_1..b_r)`, `b_j = ∏_i a_{ij}`, is a reduction of the
    /// product.
    pub fn is_complete_reduction(
        &self,
        a: &CompleteReductionMatrix,
        n_max: usize,
    ) -> Result<ReductionVerdict> {
        self.check_entries(a)?;
        let product = self.product();
        let b = EquigeneratedIdeal::with_degree(
            product.algebra(),
            a.column_products(),
            product.degree(),
        )?;
        self.oracle.is_reduction(&b, n_max)
    }
}

/// Ideal-level complete-reduction test: `(b_1..b_r)` with `b_j = ∏_i a_{ij}`
/// is a reduction of `I_1 ⋯ I_n`.
pub fn is_complete_reduction_ideals(
    ideals: &[EquigeneratedIdeal],
    a: &CompleteReductionMatrix,
    n_max: usize,
) -> Result<ReductionVerdict> {
    IdealSequence::new(ideals.to_vec())?.is_complete_reduction(a, n_max)
}

/// `F(I_1..I_n) = k[f_{ik} t_i] ⊆ R[t_1..t_n]`, presented over variables
/// `T{i}_{k}` of multidegree `e_i`.
///
/// For equigenerated `I_i` of degree `δ_i` the piece of multidegree `r` is
/// `I^r / m I^r ≅ (I_1^{r_1} ⋯ I_n^{r_n})_{Σ r_i δ_i}`, spanned by the
/// products of the `f_{ik}`; the auxiliary `t_i` keep track of `r`.
#[derive(Clone, Debug)]
pub struct MultigradedFiberRing {
    base: GradedAlgebra,
    presentation: GradedAlgebra,
    generators: Vec<Vec<Polynomial>>,
    offsets: Vec<usize>,
}

impl MultigradedFiberRing {
    pub fn presentation(&self) -> &GradedAlgebra {
        &self.presentation
    }

    /// Basis of `(I_i)_{δ_i}` used for the variables of block `i`.
    pub fn generators(&self, i: usize) -> &[Polynomial] {
        &self.generators[i]
    }

    /// Image of `a ∈ (I_i)_{δ_i}` in the degree-`e_i` piece.
    pub fn image(&self, i: usize, a: &Polynomial) -> Result<Polynomial> {
        let t = self.presentation.ring();
        let nf = self.base.normal_form(a)?;
        if nf.is_zero() {
            return Ok(Polynomial::zero(t));
        }
        let gens = &self.generators[i];
        let mut span = Span::new(self.base.ring());
        for g in gens {
            span.insert(g);
        }
        let coeffs = span
            .express(&nf)
            .ok_or_else(|| Error::NotContained(a.to_string()))?;
        let vars: Vec<Polynomial> = (0..gens.len()).map(|k| t.var(self.offsets[i] + k)).collect();
        linear_combination(&vars, &coeffs)
    }

    /// Translates an ideal-level matrix into the matrix `x_{ij}` over the
    /// fiber ring.
    pub fn matrix_image(&self, a: &CompleteReductionMatrix) -> Result<CompleteReductionMatrix> {
        let rows = a
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|p| self.image(i, p)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        CompleteReductionMatrix::new(rows)
    }
}

pub(crate) fn fresh_names(taken: &[String], stem: &str, count: usize) -> Vec<String> {
    let mut prefix = stem.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

/// Multigraded fiber ring of equigenerated ideals of one standard graded
/// algebra.
pub fn multigraded_fiber_ring(ideals: &[EquigeneratedIdeal]) -> Result<MultigradedFiberRing> {
    let first = ideals.first().ok_or(Error::Empty("ideal sequence"))?;
    let base = first.algebra().clone();
    if ideals.iter().any(|i| !i.algebra().ring().compatible(base.ring())) {
        return Err(Error::RingMismatch);
    }
    let n = ideals.len();
    let field = base.ring().field();
    let generators = ideals
        .iter()
        .map(|i| i.minimal_generators())
        .collect::<Result<Vec<_>>>()?;

    // R[t_1..t_n]
    let mut rt_names = base.ring().names().to_vec();
    rt_names.extend(fresh_names(&rt_names, "t", n));
    let nx = base.ring().nvars();
    let rt = Ring::standard(field, &rt_names)?;
    let embed: Vec<usize> = (0..nx).collect();
    let relations = base
        .relations()
        .generators()
        .iter()
        .map(|r| r.map_variables(&rt, &embed))
        .collect::<Result<Vec<_>>>()?;
    let relations = crate::groebner::Ideal::new(&rt, relations)?;

    let mut names = Vec::new();
    let mut grading = Vec::new();
    let mut offsets = Vec::new();
    let mut targets = Vec::new();
    for (i, gens) in generators.iter().enumerate() {
        offsets.push(names.len());
        let ti = rt.var(nx + i);
        for (k, g) in gens.iter().enumerate() {
            names.push(format!("T{}_{}", i + 1, k + 1));
            grading.push(MultiDegree::unit(n, i));
            targets.push(&g.map_variables(&rt, &embed)? * &ti);
        }
    }
    let source = Ring::new(field, names, grading, n, MonomialOrder::GrevLex)?;
    let kernel = kernel_of_map(&source, &targets, &relations)?;
    let presentation = GradedAlgebra::new(&source, kernel.generators().to_vec())?;
    Ok(MultigradedFiberRing {
        base,
        presentation,
        generators,
        offsets,
    })
}

/// Verdicts of the two sides of the ideal/ring complete-reduction
/// correspondence. `ideal` is `None` when the reduction test was
/// inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub ideal: Option<bool>,
    pub ring: bool,
}

impl Correspondence {
    /// `None` when skipped.
    pub fn agrees(&self) -> Option<bool> {
        self.ideal.map(|i| i == self.ring)
    }
}

/// Runs both the ideal-level test on `a` and the ring-level test on its
/// image in `F(I_1..I_n)`.
pub fn lemma_correspondence_check(
    ideals: &[EquigeneratedIdeal],
    a: &CompleteReductionMatrix,
    n_max: usize,
) -> Result<Correspondence> {
    let verdict = is_complete_reduction_ideals(ideals, a, n_max)?;
    let ideal = match verdict.status {
        ReductionStatus::Yes(_) => Some(true),
        ReductionStatus::No => Some(false),
        ReductionStatus::Inconclusive(_) => None,
    };
    let fiber = multigraded_fiber_ring(ideals)?;
    let x = fiber.matrix_image(a)?;
    let ring = is_complete_reduction_ring(fiber.presentation(), &x)?;
    Ok(Correspondence { ideal, ring })
}

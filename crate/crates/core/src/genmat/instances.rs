use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    diagonal_subring, fresh_names, is_noether_normalization, CompleteReductionMatrix,
    DiagonalSubring, EquigeneratedIdeal, GradedAlgebra, IdealSequence, ReductionOracle,
    ReductionStatus,
};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Span;
use crate::poly::{linear_combination, random_linear_combination, Polynomial, Ring};

use super::{check_matroid_axioms, AxiomReport, GenericMatroid, Topology, MAX_AXIOM_GROUND};

/// A subset `M` of a finite ground set together with `C_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHandle {
    members: Vec<usize>,
    carrier: Vec<usize>,
}

impl FiniteHandle {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }
}

fn sorted_distinct(set: &[usize]) -> Option<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    let n = s.len();
    s.dedup();
    (s.len() == n).then_some(s)
}

fn shuffled(carrier: &[usize], mut rng: ChaCha8Rng) -> Box<dyn Iterator<Item = usize>> {
    let mut order = carrier.to_vec();
    order.shuffle(&mut rng);
    Box::new(order.into_iter())
}

/// Ordinary matroid on `{0..n-1}` given by its bases, discrete topology.
/// Handles are arbitrary subsets containing at least one basis.
#[derive(Clone, Debug)]
pub struct FiniteMatroid {
    n: usize,
    bases: Vec<Vec<usize>>,
}

impl FiniteMatroid {
    /// Validates the basis axioms when `n` is small enough to check
    /// exhaustively.
    pub fn new(n: usize, bases: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(bases.len());
        for b in &bases {
            let s = sorted_distinct(b)
                .ok_or_else(|| Error::InvalidInput(format!("basis {b:?} repeats an element")))?;
            if s.iter().any(|&x| x >= n) {
                return Err(Error::InvalidInput(format!("basis {b:?} leaves 0..{n}")));
            }
            sets.push(s);
        }
        sets.sort();
        sets.dedup();
        if n <= MAX_AXIOM_GROUND {
            let ground: Vec<usize> = (0..n).collect();
            match check_matroid_axioms(&ground, &sets)? {
                AxiomReport::Ok => {}
                AxiomReport::Empty => return Err(Error::Empty("matroid bases")),
                other => return Err(Error::InvalidInput(format!("not a matroid: {other:?}"))),
            }
        } else if sets.is_empty() {
            return Err(Error::Empty("matroid bases"));
        }
        Ok(FiniteMatroid { n, bases: sets })
    }

    /// `U_{k,n}`: every `k`-subset is a basis.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n || n > MAX_AXIOM_GROUND {
            return Err(Error::InvalidInput(format!("U_{{{k},{n}}} out of range")));
        }
        let bases = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        FiniteMatroid::new(n, bases)
    }

    /// The matroid whose only basis is empty.
    pub fn trivial() -> Self {
        FiniteMatroid {
            n: 0,
            bases: vec![Vec::new()],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    /// Handle for the subset `members`; errors when it contains no basis.
    pub fn handle(&self, members: &[usize]) -> Result<FiniteHandle> {
        let members = sorted_distinct(members)
            .ok_or_else(|| Error::InvalidInput("handle repeats an element".into()))?;
        let mut carrier: Vec<usize> = self
            .bases
            .iter()
            .filter(|b| b.iter().all(|x| members.contains(x)))
            .flatten()
            .copied()
            .collect();
        if carrier.is_empty() && !self.bases.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidInput(format!("no basis inside {members:?}")));
        }
        carrier.sort_unstable();
        carrier.dedup();
        Ok(FiniteHandle { members, carrier })
    }
}

impl GenericMatroid for FiniteMatroid {
    type Element = usize;
    type Handle = FiniteHandle;

    fn topology(&self) -> Topology {
        Topology::Discrete
    }

    fn rank(&self) -> usize {
        self.bases[0].len()
    }

    fn is_basis(&self, set: &[usize]) -> Result<bool> {
        Ok(sorted_distinct(set).is_some_and(|s| self.bases.binary_search(&s).is_ok()))
    }

    fn handle_for(&self, basis: &[usize]) -> Result<FiniteHandle> {
        self.handle(basis)
    }

    fn in_handle(&self, handle: &FiniteHandle, x: &usize) -> Result<bool> {
        Ok(handle.members.contains(x))
    }

    fn sample(&self, handle: &FiniteHandle, rng: &mut ChaCha8Rng) -> Option<usize> {
        handle.carrier.choose(rng).copied()
    }

    fn candidates<'a>(
        &'a self,
        handle: &'a FiniteHandle,
        rng: ChaCha8Rng,
    ) -> Box<dyn Iterator<Item = usize> + 'a> {
        shuffled(&handle.carrier, rng)
    }
}

/// Column matroid of a list of vectors over `F_p`; elements are indices.
#[derive(Clone, Debug)]
pub struct VectorMatroid {
    field: PrimeField,
    vectors: Vec<Vec<u64>>,
    coords: Arc<Ring>,
    rank: usize,
}

impl VectorMatroid {
    pub fn new(field: PrimeField, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, |v| v.len());
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::WrongCount {
                expected: dim,
                got: bad.len(),
            });
        }
        let names: Vec<String> = (1..=dim).map(|i| format!("e{i}")).collect();
        let coords = Ring::standard(field, &names)?;
        let vectors: Vec<Vec<u64>> = vectors
            .iter()
            .map(|v| v.iter().map(|&c| field.from_i64(c)).collect())
            .collect();
        let mut m = VectorMatroid {
            field,
            vectors,
            coords,
            rank: 0,
        };
        m.rank = m.rank_of(&(0..m.vectors.len()).collect::<Vec<_>>());
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    fn form(&self, i: usize) -> Polynomial {
        let vars = self.coords.vars();
        if vars.is_empty() {
            return Polynomial::zero(&self.coords);
        }
        linear_combination(&vars, &self.vectors[i]).expect("lengths checked")
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        let mut span = Span::new(&self.coords);
        for &i in set {
            span.insert(&self.form(i));
        }
        span.dim()
    }

    /// Handle for a subset of full rank; `C_M` is its non-loops.
    pub fn handle(&self, members: &[usize]) -> Result<FiniteHandle> {
        let members = sorted_distinct(members)
            .ok_or_else(|| Error::InvalidInput("handle repeats an element".into()))?;
        if members.iter().any(|&i| i >= self.vectors.len()) {
            return Err(Error::InvalidInput("handle index out of range".into()));
        }
        if self.rank_of(&members) != self.rank {
            return Err(Error::InvalidInput(format!("{members:?} does not have full rank")));
        }
        let carrier = members
            .iter()
            .copied()
            .filter(|&i| self.vectors[i].iter().any(|&c| c != 0))
            .collect();
        Ok(FiniteHandle { members, carrier })
    }

    /// Every basis, by enumeration of `rank`-subsets.
    pub fn to_finite(&self) -> Result<FiniteMatroid> {
        let n = self.vectors.len();
        if n > MAX_AXIOM_GROUND {
            return Err(Error::InvalidInput(format!("{n} vectors is too many to enumerate")));
        }
        let bases = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == self.rank)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| self.rank_of(s) == self.rank)
            .collect();
        FiniteMatroid::new(n, bases)
    }
}

impl GenericMatroid for VectorMatroid {
    type Element = usize;
    type Handle = FiniteHandle;

    fn topology(&self) -> Topology {
        Topology::Discrete
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn is_basis(&self, set: &[usize]) -> Result<bool> {
        Ok(set.len() == self.rank
            && sorted_distinct(set).is_some()
            && set.iter().all(|&i| i < self.vectors.len())
            && self.rank_of(set) == self.rank)
    }

    fn handle_for(&self, basis: &[usize]) -> Result<FiniteHandle> {
        self.handle(basis)
    }

    fn in_handle(&self, handle: &FiniteHandle, x: &usize) -> Result<bool> {
        Ok(handle.members.contains(x))
    }

    fn sample(&self, handle: &FiniteHandle, rng: &mut ChaCha8Rng) -> Option<usize> {
        handle.carrier.choose(rng).copied()
    }

    fn candidates<'a>(
        &'a self,
        handle: &'a FiniteHandle,
        rng: ChaCha8Rng,
    ) -> Box<dyn Iterator<Item = usize> + 'a> {
        shuffled(&handle.carrier, rng)
    }
}

/// Generators of a matroid given as a `k`-span inside a graded algebra.
#[derive(Clone, Debug)]
pub struct SpanHandle {
    generators: Vec<Polynomial>,
}

impl SpanHandle {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

fn in_span(algebra: &GradedAlgebra, gens: &[Polynomial], x: &Polynomial) -> Result<bool> {
    let mut span = Span::new(algebra.ring());
    for g in gens {
        span.insert(&algebra.normal_form(g)?);
    }
    Ok(span.contains(&algebra.normal_form(x)?))
}

fn sample_span(gens: &[Polynomial], rng: &mut ChaCha8Rng) -> Option<Polynomial> {
    random_linear_combination(gens, rng).ok().map(|(p, _)| p)
}

/// Graded Noether normalizations of a standard graded algebra: bases are
/// sets of `dim S` degree-one elements generating one; each handle is the
/// degree-one span of a basis.
#[derive(Clone, Debug)]
pub struct NoetherInstance {
    algebra: GradedAlgebra,
    dim: usize,
    traps: Vec<(String, Polynomial)>,
}

impl NoetherInstance {
    pub fn new(algebra: &GradedAlgebra) -> Result<Self> {
        if algebra.components() != 1 || !algebra.is_standard() {
            return Err(Error::InvalidRing(
                "Noether normalization requires a standard N-graded algebra".into(),
            ));
        }
        Ok(NoetherInstance {
            dim: algebra.dimension()?,
            algebra: algebra.clone(),
            traps: Vec::new(),
        })
    }

    pub fn with_trap(mut self, name: &str, element: Polynomial) -> Self {
        self.traps.push((name.to_string(), element));
        self
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }
}

impl GenericMatroid for NoetherInstance {
    type Element = Polynomial;
    type Handle = SpanHandle;

    fn topology(&self) -> Topology {
        Topology::SubspaceArrangementComplement
    }

    fn rank(&self) -> usize {
        self.dim
    }

    fn is_basis(&self, set: &[Polynomial]) -> Result<bool> {
        if set.len() != self.dim
            || set.iter().any(|f| f.is_zero() || f.homogeneous_degree() != Some(1))
        {
            return Ok(false);
        }
        is_noether_normalization(&self.algebra, set)
    }

    fn handle_for(&self, basis: &[Polynomial]) -> Result<SpanHandle> {
        if !self.is_basis(basis)? {
            return Err(Error::InvalidInput("handle basis does not verify".into()));
        }
        Ok(SpanHandle {
            generators: basis.to_vec(),
        })
    }

    fn in_handle(&self, handle: &SpanHandle, x: &Polynomial) -> Result<bool> {
        in_span(&self.algebra, &handle.generators, x)
    }

    fn sample(&self, handle: &SpanHandle, rng: &mut ChaCha8Rng) -> Option<Polynomial> {
        sample_span(&handle.generators, rng)
    }

    fn traps(&self) -> Vec<(String, Polynomial)> {
        self.traps.clone()
    }
}

/// Minimal reductions of an equigenerated ideal `I`: bases are minimal
/// generating sets (in degree `δ`) of minimal reductions; each handle is
/// the degree-`δ` span of one.
#[derive(Debug)]
pub struct MinimalReductionInstance {
    oracle: ReductionOracle,
    spread: usize,
    n_max: usize,
    traps: Vec<(String, Polynomial)>,
}

impl MinimalReductionInstance {
    pub fn new(ideal: &EquigeneratedIdeal, n_max: usize) -> Result<Self> {
        let oracle = ReductionOracle::new(ideal);
        let spread = oracle.analytic_spread()?;
        Ok(MinimalReductionInstance {
            oracle,
            spread,
            n_max,
            traps: Vec::new(),
        })
    }

    pub fn with_trap(mut self, name: &str, element: Polynomial) -> Self {
        self.traps.push((name.to_string(), element));
        self
    }

    pub fn ideal(&self) -> &EquigeneratedIdeal {
        self.oracle.ideal()
    }
}

impl GenericMatroid for MinimalReductionInstance {
    type Element = Polynomial;
    type Handle = SpanHandle;

    fn topology(&self) -> Topology {
        Topology::IdealUnionComplement
    }

    fn rank(&self) -> usize {
        self.spread
    }

    fn is_basis(&self, set: &[Polynomial]) -> Result<bool> {
        if set.len() != self.spread {
            return Ok(false);
        }
        let ideal = self.oracle.ideal();
        if set.is_empty() {
            // only the nilpotent case has rank 0, and then (0) is the reduction
            return Ok(true);
        }
        let j = EquigeneratedIdeal::with_degree(ideal.algebra(), set.to_vec(), ideal.degree())?;
        self.oracle.is_minimal_reduction(&j, self.n_max)
    }

    fn handle_for(&self, basis: &[Polynomial]) -> Result<SpanHandle> {
        if !self.is_basis(basis)? {
            return Err(Error::InvalidInput("handle basis does not verify".into()));
        }
        Ok(SpanHandle {
            generators: basis.to_vec(),
        })
    }

    fn in_handle(&self, handle: &SpanHandle, x: &Polynomial) -> Result<bool> {
        in_span(self.oracle.ideal().algebra(), &handle.generators, x)
    }

    fn sample(&self, handle: &SpanHandle, rng: &mut ChaCha8Rng) -> Option<Polynomial> {
        sample_span(&handle.generators, rng)
    }

    fn traps(&self) -> Vec<(String, Polynomial)> {
        self.traps.clone()
    }
}

/// How replacement columns are drawn from a target complete reduction
/// `{w_ij}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `x_i = Σ_h c_ih w_ih` with an independent coefficient row per `i`.
    Matrix,
    /// `x_i = Σ_h v_h w_ih` with one coefficient vector.
    #[default]
    Vector,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(Variant::Matrix),
            "vector" => Ok(Variant::Vector),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Matrix => "matrix",
            Variant::Vector => "vector",
        })
    }
}

/// Column `(x_1..x_n)` of a complete-reduction matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Column(pub Vec<Polynomial>);

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", items.join("; "))
    }
}

/// A target complete reduction together with the sampling variant. For the
/// vector variant the matroid is the `k`-span of the columns; for the
/// matrix variant every entry ranges independently over its row span.
#[derive(Clone, Debug)]
pub struct CrHandle {
    columns: Vec<Column>,
    variant: Variant,
}

impl CrHandle {
    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

fn to_matrix(columns: &[Column], n: usize) -> Result<CompleteReductionMatrix> {
    CompleteReductionMatrix::from_columns(columns.iter().map(|c| c.0.clone()).collect(), n)
}

fn sample_column(handle: &CrHandle, rng: &mut ChaCha8Rng) -> Option<Column> {
    let w = &handle.columns;
    let first = w.first()?;
    let n = first.0.len();
    let field = first.0.first()?.field();
    let shared: Vec<u64> = w.iter().map(|_| field.sample(rng)).collect();
    let entries = (0..n)
        .map(|i| {
            let coeffs = match handle.variant {
                Variant::Vector => shared.clone(),
                Variant::Matrix => w.iter().map(|_| field.sample(rng)).collect(),
            };
            let row: Vec<Polynomial> = w.iter().map(|c| c.0[i].clone()).collect();
            linear_combination(&row, &coeffs).expect("nonempty row")
        })
        .collect();
    Some(Column(entries))
}

fn column_in_handle(algebra: &GradedAlgebra, handle: &CrHandle, x: &Column) -> Result<bool> {
    let n = x.0.len();
    if handle.columns.iter().any(|c| c.0.len() != n) {
        return Err(Error::WrongCount {
            expected: n,
            got: handle.columns[0].0.len(),
        });
    }
    match handle.variant {
        Variant::Matrix => {
            for i in 0..n {
                let row: Vec<Polynomial> = handle.columns.iter().map(|c| c.0[i].clone()).collect();
                if !in_span(algebra, &row, &x.0[i])? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Variant::Vector => {
            // glue a column into one polynomial by tagging row i with u_i
            let ring = algebra.ring();
            let mut names = ring.names().to_vec();
            names.extend(fresh_names(&names, "u", n));
            let glued = Ring::standard(ring.field(), &names)?;
            let embed: Vec<usize> = (0..ring.nvars()).collect();
            let glue = |c: &Column| -> Result<Polynomial> {
                let mut acc = Polynomial::zero(&glued);
                for (i, p) in c.0.iter().enumerate() {
                    let nf = algebra.normal_form(p)?.map_variables(&glued, &embed)?;
                    acc = &acc + &(&nf * &glued.var(ring.nvars() + i));
                }
                Ok(acc)
            };
            let mut span = Span::new(&glued);
            for c in &handle.columns {
                span.insert(&glue(c)?);
            }
            Ok(span.contains(&glue(x)?))
        }
    }
}

/// Minimal complete reductions of a standard N^n-graded algebra: bases
/// are `d = dim S^Δ` columns whose products make `S^Δ` module-finite.
#[derive(Clone, Debug)]
pub struct CompleteReductionRingInstance {
    diagonal: DiagonalSubring,
    dim: usize,
    variant: Variant,
}

impl CompleteReductionRingInstance {
    pub fn new(algebra: &GradedAlgebra, variant: Variant) -> Result<Self> {
        let diagonal = diagonal_subring(algebra)?;
        Ok(CompleteReductionRingInstance {
            dim: diagonal.dimension()?,
            diagonal,
            variant,
        })
    }

    pub fn diagonal(&self) -> &DiagonalSubring {
        &self.diagonal
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl GenericMatroid for CompleteReductionRingInstance {
    type Element = Column;
    type Handle = CrHandle;

    fn topology(&self) -> Topology {
        Topology::ZariskiComplement
    }

    fn rank(&self) -> usize {
        self.dim
    }

    fn is_basis(&self, set: &[Column]) -> Result<bool> {
        if set.len() != self.dim {
            return Ok(false);
        }
        let n = self.diagonal.parent().components();
        if set.is_empty() {
            return Ok(true);
        }
        self.diagonal.is_complete_reduction(&to_matrix(set, n)?)
    }

    fn handle_for(&self, basis: &[Column]) -> Result<CrHandle> {
        if !self.is_basis(basis)? {
            return Err(Error::InvalidInput("handle basis does not verify".into()));
        }
        Ok(CrHandle {
            columns: basis.to_vec(),
            variant: self.variant,
        })
    }

    fn in_handle(&self, handle: &CrHandle, x: &Column) -> Result<bool> {
        column_in_handle(self.diagonal.parent(), handle, x)
    }

    fn sample(&self, handle: &CrHandle, rng: &mut ChaCha8Rng) -> Option<Column> {
        sample_column(handle, rng)
    }
}

/// Minimal complete reductions of equigenerated ideals `I_1..I_n`: bases
/// are `d = ℓ(I_1 ⋯ I_n)` columns with `a_ij ∈ (I_i)_{δ_i}`. Lifts of the
/// coefficient matrix or vector are taken to be constants, the only
/// homogeneous choice.
#[derive(Debug)]
pub struct CompleteReductionIdealsInstance {
    sequence: IdealSequence,
    dim: usize,
    n_max: usize,
    variant: Variant,
}

impl CompleteReductionIdealsInstance {
    pub fn new(ideals: Vec<EquigeneratedIdeal>, variant: Variant, n_max: usize) -> Result<Self> {
        let sequence = IdealSequence::new(ideals)?;
        Ok(CompleteReductionIdealsInstance {
            dim: sequence.analytic_spread()?,
            sequence,
            n_max,
            variant,
        })
    }

    pub fn sequence(&self) -> &IdealSequence {
        &self.sequence
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl GenericMatroid for CompleteReductionIdealsInstance {
    type Element = Column;
    type Handle = CrHandle;

    fn topology(&self) -> Topology {
        Topology::ZariskiComplement
    }

    fn rank(&self) -> usize {
        self.dim
    }

    fn is_basis(&self, set: &[Column]) -> Result<bool> {
        if set.len() != self.dim {
            return Ok(false);
        }
        if set.is_empty() {
            return Ok(true);
        }
        let m = to_matrix(set, self.sequence.ideals().len())?;
        match self.sequence.is_complete_reduction(&m, self.n_max)?.status {
            ReductionStatus::Yes(_) => Ok(true),
            ReductionStatus::No => Ok(false),
            ReductionStatus::Inconclusive(n) => Err(Error::Inconclusive(n)),
        }
    }

    fn handle_for(&self, basis: &[Column]) -> Result<CrHandle> {
        if !self.is_basis(basis)? {
            return Err(Error::InvalidInput("handle basis does not verify".into()));
        }
        Ok(CrHandle {
            columns: basis.to_vec(),
            variant: self.variant,
        })
    }

    fn in_handle(&self, handle: &CrHandle, x: &Column) -> Result<bool> {
        column_in_handle(self.sequence.ideals()[0].algebra(), handle, x)
    }

    fn sample(&self, handle: &CrHandle, rng: &mut ChaCha8Rng) -> Option<Column> {
        sample_column(handle, rng)
    }
}

//! Generic matroids: a basis oracle, a family of matroid handles `M`, and a
//! sampler over each carrier `C_M` (the union of the bases inside `M`).
//!
//! Exchange never computes the bad set explicitly. A replacement for `b` is
//! found by drawing candidates from `C_M` and asking the basis oracle; over a
//! large field the bad set is a proper closed subset, so a handful of draws
//! suffices in practice and exhaustion is reported as an error.

mod axioms;
mod instances;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use axioms::{check_matroid_axioms, AxiomReport, MAX_AXIOM_GROUND};
pub use instances::{
    Column, CompleteReductionIdealsInstance, CompleteReductionRingInstance, CrHandle,
    FiniteHandle, FiniteMatroid, MinimalReductionInstance, NoetherInstance, SpanHandle, Variant,
    VectorMatroid,
};

/// Attempts allowed per exchange step before giving up.
pub const DEFAULT_MAX_TRIES: usize = 64;

/// Topology carried by an instance. Only recorded, never computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Discrete,
    SubspaceArrangementComplement,
    ZariskiComplement,
    IdealUnionComplement,
}

/// Interface shared by all instances.
pub trait GenericMatroid {
    type Element: Clone + PartialEq + fmt::Display + fmt::Debug;
    /// A matroid `M` of the family, with whatever data its sampler needs.
    type Handle;

    fn topology(&self) -> Topology;

    /// Common cardinality of all bases.
    fn rank(&self) -> usize;

    /// Membership in `𝓑`. Deterministic.
    fn is_basis(&self, set: &[Self::Element]) -> Result<bool>;

    /// The matroid of the family determined by a basis (the span, submodule
    /// or subset it generates).
    fn handle_for(&self, basis: &[Self::Element]) -> Result<Self::Handle>;

    /// Whether `x` lies in the matroid `handle`.
    fn in_handle(&self, handle: &Self::Handle, x: &Self::Element) -> Result<bool>;

    /// One draw from `C_M`, or `None` if the carrier is empty.
    fn sample(&self, handle: &Self::Handle, rng: &mut ChaCha8Rng) -> Option<Self::Element>;

    /// Candidate stream used by exchange. Defaults to independent draws;
    /// finite instances enumerate `C_M` in random order instead.
    fn candidates<'a>(
        &'a self,
        handle: &'a Self::Handle,
        mut rng: ChaCha8Rng,
    ) -> Box<dyn Iterator<Item = Self::Element> + 'a> {
        Box::new(std::iter::from_fn(move || self.sample(handle, &mut rng)))
    }

    /// Named elements known to fail for a particular exchange, for
    /// regression tests.
    fn traps(&self) -> Vec<(String, Self::Element)> {
        Vec::new()
    }
}

/// Record of a successful replacement `B ↦ (B ∖ {b}) ∪ {x}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExchangeCertificate<E> {
    pub position: usize,
    pub removed: E,
    pub inserted: E,
    pub attempts: usize,
    pub seed: u64,
    pub transcript_id: String,
    pub rejected: Vec<E>,
    pub result: Vec<E>,
}

fn transcript_id<E: fmt::Display>(seed: u64, removed: &E, inserted: &E, attempts: usize) -> String {
    let mut h = DefaultHasher::new();
    (seed, removed.to_string(), inserted.to_string(), attempts).hash(&mut h);
    format!("{:016x}", h.finish())
}

fn ensure_basis<G: GenericMatroid + ?Sized>(inst: &G, basis: &[G::Element]) -> Result<()> {
    if !inst.is_basis(basis)? {
        return Err(Error::InvalidInput(format!(
            "{} is not a basis",
            display_set(basis)
        )));
    }
    Ok(())
}

pub fn display_set<E: fmt::Display>(set: &[E]) -> String {
    let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Replaces `basis[position]` by a candidate from `C_M`.
pub fn exchange_step<G: GenericMatroid + ?Sized>(
    inst: &G,
    basis: &[G::Element],
    position: usize,
    handle: &G::Handle,
    seed: u64,
    max_tries: usize,
) -> Result<ExchangeCertificate<G::Element>> {
    exchange_step_with(inst, basis, position, handle, seed, max_tries, &[])
}

/// As [`exchange_step`], trying `injected` before any random candidate.
/// Injected candidates count as attempts.
pub fn exchange_step_with<G: GenericMatroid + ?Sized>(
    inst: &G,
    basis: &[G::Element],
    position: usize,
    handle: &G::Handle,
    seed: u64,
    max_tries: usize,
    injected: &[G::Element],
) -> Result<ExchangeCertificate<G::Element>> {
    if max_tries == 0 {
        return Err(Error::InvalidInput("max_tries must be at least 1".into()));
    }
    if position >= basis.len() {
        return Err(Error::InvalidInput(format!(
            "position {position} outside a basis of size {}",
            basis.len()
        )));
    }
    ensure_basis(inst, basis)?;
    let rng = ChaCha8Rng::seed_from_u64(seed);
    let stream = injected.iter().cloned().chain(inst.candidates(handle, rng));
    let mut rejected = Vec::new();
    let mut attempts = 0;
    for x in stream.take(max_tries) {
        attempts += 1;
        let mut trial = basis.to_vec();
        trial[position] = x.clone();
        if inst.is_basis(&trial)? {
            return Ok(ExchangeCertificate {
                position,
                removed: basis[position].clone(),
                transcript_id: transcript_id(seed, &basis[position], &x, attempts),
                inserted: x,
                attempts,
                seed,
                rejected,
                result: trial,
            });
        }
        rejected.push(x);
    }
    Err(Error::ExchangeExhausted {
        attempts,
        rejected: rejected.iter().map(|x| x.to_string()).collect(),
    })
}

/// Re-checks a certificate against the basis oracle.
pub fn verify_certificate<G: GenericMatroid + ?Sized>(
    inst: &G,
    cert: &ExchangeCertificate<G::Element>,
) -> Result<bool> {
    Ok(cert.result.get(cert.position) == Some(&cert.inserted) && inst.is_basis(&cert.result)?)
}

/// Sequence of exchanges moving a basis into a target matroid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExchangePath<E> {
    pub start: Vec<E>,
    pub steps: Vec<ExchangeCertificate<E>>,
}

impl<E: Clone> ExchangePath<E> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Basis reached after the last step.
    pub fn end(&self) -> Vec<E> {
        self.steps
            .last()
            .map_or_else(|| self.start.clone(), |s| s.result.clone())
    }

    /// All bases visited, starting basis included.
    pub fn bases(&self) -> Vec<Vec<E>> {
        std::iter::once(self.start.clone())
            .chain(self.steps.iter().map(|s| s.result.clone()))
            .collect()
    }
}

/// A path that stopped at a failed step.
#[derive(Clone, Debug)]
pub struct PathError<E> {
    pub partial: ExchangePath<E>,
    pub error: Error,
}

impl<E> fmt::Display for PathError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exchange path stopped after {} steps: {}", self.partial.steps.len(), self.error)
    }
}

impl<E: fmt::Debug> std::error::Error for PathError<E> {}

fn step_seed(seed: u64, step: usize) -> u64 {
    seed ^ (step as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Replaces, one at a time, every element of `basis` outside `handle` by
/// an element of `C_M`. At most `|B|` steps; the final basis lies in the
/// handle.
pub fn exchange_path<G: GenericMatroid + ?Sized>(
    inst: &G,
    basis: &[G::Element],
    handle: &G::Handle,
    seed: u64,
    max_tries: usize,
) -> std::result::Result<ExchangePath<G::Element>, PathError<G::Element>> {
    let mut path = ExchangePath {
        start: basis.to_vec(),
        steps: Vec::new(),
    };
    let fail = |path: &ExchangePath<G::Element>, error| PathError {
        partial: path.clone(),
        error,
    };
    let mut current = basis.to_vec();
    for position in 0..basis.len() {
        match inst.in_handle(handle, &current[position]) {
            Ok(true) => continue,
            Ok(false) => {}
            Err(e) => return Err(fail(&path, e)),
        }
        let step = path.steps.len();
        match exchange_step(inst, &current, position, handle, step_seed(seed, step), max_tries) {
            Ok(cert) => {
                current = cert.result.clone();
                path.steps.push(cert);
            }
            Err(e) => return Err(fail(&path, e)),
        }
    }
    Ok(path)
}

/// All listed bases have one cardinality. Needs at least two.
pub fn check_equicardinality<E>(bases: &[Vec<E>]) -> Result<bool> {
    if bases.len() < 2 {
        return Err(Error::InvalidInput("need at least two bases".into()));
    }
    let n = bases[0].len();
    Ok(bases.iter().all(|b| b.len() == n))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExchangeStats {
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
}

/// Fraction of independent draws `x` from `C_M` for which
/// `(B ∖ {b}) ∪ {x}` is a basis.
pub fn check_generic_exchange_statistical<G: GenericMatroid + ?Sized>(
    inst: &G,
    basis: &[G::Element],
    position: usize,
    handle: &G::Handle,
    trials: usize,
    seed: u64,
) -> Result<ExchangeStats> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if position >= basis.len() {
        return Err(Error::InvalidInput(format!("position {position} outside the basis")));
    }
    ensure_basis(inst, basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    let mut trial = basis.to_vec();
    for _ in 0..trials {
        let Some(x) = inst.sample(handle, &mut rng) else {
            break;
        };
        trial[position] = x;
        if inst.is_basis(&trial)? {
            successes += 1;
        }
    }
    Ok(ExchangeStats {
        trials,
        successes,
        rate: successes as f64 / trials as f64,
    })
}

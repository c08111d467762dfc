//! Library side of the `genmat` command: instance files, task dispatch and
//! JSON reports. The binary only parses arguments and prints.

mod input;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    analytic_spread, diagonal_subring, is_complete_reduction_ring, is_hsop,
    is_noether_normalization, EquigeneratedIdeal, GradedAlgebra, IdealSequence, ReductionOracle,
    ReductionStatus,
};
use crate::error::Error;
use crate::genmat::{
    check_generic_exchange_statistical, check_matroid_axioms, display_set, exchange_step_with,
    verify_certificate, AxiomReport, CompleteReductionIdealsInstance,
    CompleteReductionRingInstance, GenericMatroid, MinimalReductionInstance, NoetherInstance,
    Variant, DEFAULT_MAX_TRIES,
};
use crate::poly::Polynomial;

pub use input::{
    element_from_arg, ElementSpec, ExchangeSpec, ExchangeTask, FieldSpec, InstanceFile,
    ReductionSpec, RingSpec, VarSpec, PRIME_ENV,
};
use input::{element_column, element_poly, ideal, input_error, matrix, parse_list, require};

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{location}: {message}")]
    Input { location: String, message: String },
    #[error(transparent)]
    Algebra(Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(Error::Inconclusive(_)) => 2,
            CliError::Algebra(Error::ExchangeExhausted { .. }) => 4,
            _ => 3,
        }
    }

    /// JSON body printed in `--json` mode.
    pub fn to_json(&self) -> Value {
        let location = match self {
            CliError::Input { location, .. } => Some(location.clone()),
            _ => None,
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "location": location, "message": self.to_string() },
            "exit_code": self.exit_code(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
    Exhausted,
}

impl Verdict {
    /// Process exit status: 0 verified true, 1 verified false,
    /// 2 inconclusive, 4 exchange exhausted (3 is reserved for input errors).
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::True => 0,
            Verdict::False => 1,
            Verdict::Inconclusive => 2,
            Verdict::Exhausted => 4,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    fn from_status(s: ReductionStatus) -> Self {
        match s {
            ReductionStatus::Yes(_) => Verdict::True,
            ReductionStatus::No => Verdict::False,
            ReductionStatus::Inconclusive(_) => Verdict::Inconclusive,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Exhausted => "exhausted",
        })
    }
}

/// Output of every command. `input` is the instance with all defaults
/// resolved, so running it again reproduces the verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub task: String,
    pub verdict: Verdict,
    pub prime: u64,
    pub seed: Option<u64>,
    pub timing_ms: f64,
    pub input: InstanceFile,
    pub details: Value,
    pub summary: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Human-readable rendering.
    pub fn render(&self) -> String {
        let mut out = format!("task: {}\nverdict: {}\nprime: {}\n", self.task, self.verdict, self.prime);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("time: {:.1} ms\n", self.timing_ms));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckTask {
    Nn,
    Hsop,
    Reduction,
    MinimalReduction,
    CompleteReductionRing,
    CompleteReductionIdeals,
}

impl CheckTask {
    pub const ALL: [CheckTask; 6] = [
        CheckTask::Nn,
        CheckTask::Hsop,
        CheckTask::Reduction,
        CheckTask::MinimalReduction,
        CheckTask::CompleteReductionRing,
        CheckTask::CompleteReductionIdeals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckTask::Nn => "nn",
            CheckTask::Hsop => "hsop",
            CheckTask::Reduction => "reduction",
            CheckTask::MinimalReduction => "minimal-reduction",
            CheckTask::CompleteReductionRing => "complete-reduction-ring",
            CheckTask::CompleteReductionIdeals => "complete-reduction-ideals",
        }
    }
}

impl FromStr for CheckTask {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckTask::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = CheckTask::ALL.iter().map(|t| t.name()).collect();
                format!("unknown task {s:?}; expected one of {}", names.join(", "))
            })
    }
}

impl fmt::Display for CheckTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Command-line overrides shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub prime: Option<u64>,
    pub n_max: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub max_tries: Option<usize>,
    pub variant: Option<Variant>,
    pub remove: Option<String>,
    pub from: Vec<String>,
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

struct Outcome {
    verdict: Verdict,
    details: Value,
    summary: Vec<String>,
}

fn finish(task: &str, file: InstanceFile, prime: u64, seed: Option<u64>, start: Instant, o: Outcome) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        task: task.to_string(),
        verdict: o.verdict,
        prime,
        seed,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
        input: file,
        details: o.details,
        summary: o.summary,
    }
}

fn resolved(file: &InstanceFile, prime: u64) -> InstanceFile {
    let mut f = file.clone();
    f.field = Some(FieldSpec { prime });
    f
}

/// Runs one verification task on an instance.
pub fn run_check(task: CheckTask, file: &InstanceFile, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let field = file.resolve_prime(opts.prime)?;
    let algebra = file.build_algebra(field)?;
    let mut echo = resolved(file, field.modulus());
    let outcome = match task {
        CheckTask::Nn | CheckTask::Hsop => check_system(task, file, &algebra)?,
        CheckTask::Reduction | CheckTask::MinimalReduction => {
            let n_max = file.n_max(opts.n_max);
            echo.n_max = Some(n_max);
            check_reduction(task, file, &algebra, n_max)?
        }
        CheckTask::CompleteReductionRing => check_cr_ring(file, &algebra)?,
        CheckTask::CompleteReductionIdeals => {
            let n_max = file.n_max(opts.n_max);
            echo.n_max = Some(n_max);
            check_cr_ideals(file, &algebra, n_max)?
        }
    };
    Ok(finish(task.name(), echo, field.modulus(), None, start, outcome))
}

fn check_system(task: CheckTask, file: &InstanceFile, s: &GradedAlgebra) -> Result<Outcome, CliError> {
    let y = parse_list(s.ring(), require(&file.system, "system")?, "system")?;
    let dim = s.dimension()?;
    let ok = match task {
        CheckTask::Nn => is_noether_normalization(s, &y),
        _ => is_hsop(s, &y),
    }
    .map_err(|e| input_error("system", e))?;
    Ok(Outcome {
        verdict: Verdict::from_bool(ok),
        details: json!({ "dimension": dim, "system": strings(&y), "holds": ok }),
        summary: vec![
            format!("dim S = {dim}"),
            format!("{} {} a {}", display_set(&y), if ok { "is" } else { "is not" }, match task {
                CheckTask::Nn => "graded Noether normalization",
                _ => "homogeneous system of parameters",
            }),
        ],
    })
}

fn check_reduction(
    task: CheckTask,
    file: &InstanceFile,
    r: &GradedAlgebra,
    n_max: usize,
) -> Result<Outcome, CliError> {
    let spec = require(&file.reduction, "reduction")?;
    let i = ideal(r, &spec.ideal, "reduction.ideal")?;
    let j = ideal(r, &spec.candidate, "reduction.candidate")?;
    let oracle = ReductionOracle::new(&i);
    let verdict = oracle
        .is_reduction(&j, n_max)
        .map_err(|e| input_error("reduction.candidate", e))?;
    let mut summary = vec![format!(
        "J = ({}) reduction of I = ({}): {:?}",
        strings(j.generators()).join(", "),
        strings(i.generators()).join(", "),
        verdict.status
    )];
    let mut details = json!({
        "status": verdict.status,
        "transcript": verdict.transcript,
    });
    let result = match task {
        CheckTask::MinimalReduction => {
            let spread = oracle.analytic_spread()?;
            let independent = j.generators_independent()?;
            let count = j.generators().len();
            details["analytic_spread"] = json!(spread);
            details["generators"] = json!(count);
            details["independent"] = json!(independent);
            summary.push(format!(
                "analytic spread {spread}; {count} generators; linearly independent: {independent}"
            ));
            match verdict.status {
                ReductionStatus::Inconclusive(_) => Verdict::Inconclusive,
                ReductionStatus::No => Verdict::False,
                ReductionStatus::Yes(_) => Verdict::from_bool(independent && count == spread),
            }
        }
        _ => Verdict::from_status(verdict.status),
    };
    Ok(Outcome {
        verdict: result,
        details,
        summary,
    })
}

fn check_cr_ring(file: &InstanceFile, s: &GradedAlgebra) -> Result<Outcome, CliError> {
    let x = matrix(s.ring(), require(&file.matrix, "matrix")?, "matrix")?;
    let diag = diagonal_subring(s).map_err(|e| input_error("ring", e))?;
    let d = diag.dimension()?;
    let ok = is_complete_reduction_ring(s, &x).map_err(|e| input_error("matrix", e))?;
    Ok(Outcome {
        verdict: Verdict::from_bool(ok),
        details: json!({
            "diagonal_generators": diag.monomials().len(),
            "diagonal_dimension": d,
            "type": x.ncols(),
            "column_products": strings(&x.column_products()),
            "holds": ok,
        }),
        summary: vec![
            format!("dim S^Δ = {d} ({} generators)", diag.monomials().len()),
            format!("type {} complete reduction: {ok}", x.ncols()),
        ],
    })
}

fn check_cr_ideals(file: &InstanceFile, r: &GradedAlgebra, n_max: usize) -> Result<Outcome, CliError> {
    let ideals = require(&file.ideals, "ideals")?
        .iter()
        .enumerate()
        .map(|(k, gens)| ideal(r, gens, &format!("ideals[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let a = matrix(r.ring(), require(&file.matrix, "matrix")?, "matrix")?;
    let seq = IdealSequence::new(ideals).map_err(|e| input_error("ideals", e))?;
    let verdict = seq.is_complete_reduction(&a, n_max).map_err(|e| match e {
        Error::EntryNotInIdeal { row, col } => input_error(
            format!("matrix[{row}][{col}]"),
            "entry is not in the corresponding ideal",
        ),
        other => input_error("matrix", other),
    })?;
    Ok(Outcome {
        verdict: Verdict::from_status(verdict.status),
        details: json!({
            "type": a.ncols(),
            "column_products": strings(&a.column_products()),
            "status": verdict.status,
            "transcript": verdict.transcript,
        }),
        summary: vec![format!(
            "({}) reduction of the product: {:?}",
            strings(&a.column_products()).join(", "),
            verdict.status
        )],
    })
}

fn fresh_seed() -> u64 {
    rand::rng().random()
}

/// One exchange step (and optionally a statistical run) described by the
/// file's `exchange` section.
pub fn run_exchange(file: &InstanceFile, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let field = file.resolve_prime(opts.prime)?;
    let algebra = file.build_algebra(field)?;
    let mut spec = require(&file.exchange, "exchange")?.clone();
    let columns = matches!(
        spec.task,
        ExchangeTask::CompleteReductionRing | ExchangeTask::CompleteReductionIdeals
    );
    if let Some(r) = &opts.remove {
        spec.remove = Some(element_from_arg(r, columns));
    }
    if !opts.from.is_empty() {
        spec.target = opts.from.iter().map(|s| element_from_arg(s, columns)).collect();
    }
    let variant = opts.variant.or(spec.variant).unwrap_or_default();
    if columns {
        spec.variant = Some(variant);
    }
    let seed = opts.seed.unwrap_or_else(fresh_seed);
    let max_tries = opts.max_tries.unwrap_or(DEFAULT_MAX_TRIES);
    let n_max = file.n_max(opts.n_max);
    let ring = algebra.ring().clone();
    let polys = |items: &[ElementSpec], loc: &str| {
        items
            .iter()
            .enumerate()
            .map(|(i, e)| element_poly(&ring, e, &format!("{loc}[{i}]")))
            .collect::<Result<Vec<_>, _>>()
    };
    let cols = |items: &[ElementSpec], loc: &str| {
        items
            .iter()
            .enumerate()
            .map(|(i, e)| element_column(&ring, e, &format!("{loc}[{i}]")))
            .collect::<Result<Vec<_>, _>>()
    };
    let run = Run {
        seed,
        max_tries,
        trials: opts.trials,
    };
    let outcome = match spec.task {
        ExchangeTask::Nn => {
            let inst = NoetherInstance::new(&algebra).map_err(|e| input_error("ring", e))?;
            let remove = spec.remove.as_ref().map(|r| element_poly(&ring, r, "exchange.remove")).transpose()?;
            run.exchange(&inst, polys(&spec.basis, "exchange.basis")?, polys(&spec.target, "exchange.target")?, remove)?
        }
        ExchangeTask::MinimalReduction => {
            let red = require(&file.reduction, "reduction")?;
            let i = ideal(&algebra, &red.ideal, "reduction.ideal")?;
            let inst = MinimalReductionInstance::new(&i, n_max)?;
            let remove = spec.remove.as_ref().map(|r| element_poly(&ring, r, "exchange.remove")).transpose()?;
            run.exchange(&inst, polys(&spec.basis, "exchange.basis")?, polys(&spec.target, "exchange.target")?, remove)?
        }
        ExchangeTask::CompleteReductionRing => {
            let inst = CompleteReductionRingInstance::new(&algebra, variant)
                .map_err(|e| input_error("ring", e))?;
            let remove = spec.remove.as_ref().map(|r| element_column(&ring, r, "exchange.remove")).transpose()?;
            run.exchange(&inst, cols(&spec.basis, "exchange.basis")?, cols(&spec.target, "exchange.target")?, remove)?
        }
        ExchangeTask::CompleteReductionIdeals => {
            let ideals = require(&file.ideals, "ideals")?
                .iter()
                .enumerate()
                .map(|(k, gens)| ideal(&algebra, gens, &format!("ideals[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let inst = CompleteReductionIdealsInstance::new(ideals, variant, n_max)
                .map_err(|e| input_error("ideals", e))?;
            let remove = spec.remove.as_ref().map(|r| element_column(&ring, r, "exchange.remove")).transpose()?;
            run.exchange(&inst, cols(&spec.basis, "exchange.basis")?, cols(&spec.target, "exchange.target")?, remove)?
        }
    };
    let mut echo = resolved(file, field.modulus());
    echo.exchange = Some(spec);
    if matches!(spec_task(&echo), Some(ExchangeTask::MinimalReduction | ExchangeTask::CompleteReductionIdeals)) {
        echo.n_max = Some(n_max);
    }
    Ok(finish("exchange", echo, field.modulus(), Some(seed), start, outcome))
}

fn spec_task(f: &InstanceFile) -> Option<ExchangeTask> {
    f.exchange.as_ref().map(|e| e.task)
}

struct Run {
    seed: u64,
    max_tries: usize,
    trials: Option<usize>,
}

impl Run {
    fn exchange<G>(
        &self,
        inst: &G,
        basis: Vec<G::Element>,
        target: Vec<G::Element>,
        remove: Option<G::Element>,
    ) -> Result<Outcome, CliError>
    where
        G: GenericMatroid,
        G::Element: Serialize,
    {
        let handle = inst.handle_for(&target).map_err(|e| match e {
            Error::Inconclusive(_) => CliError::Algebra(e),
            other => input_error("exchange.target", other),
        })?;
        if !inst.is_basis(&basis).map_err(|e| input_error("exchange.basis", e))? {
            return Err(input_error("exchange.basis", format!("{} is not a basis", display_set(&basis))));
        }
        let position = match &remove {
            None => 0,
            Some(r) => basis.iter().position(|b| b == r).ok_or_else(|| {
                input_error("exchange.remove", format!("{r} is not in the basis"))
            })?,
        };
        if basis.is_empty() {
            return Err(input_error("exchange.basis", "the empty basis has nothing to exchange"));
        }
        let mut summary = vec![format!(
            "rank {}; removing {} from {}; target {}",
            inst.rank(),
            basis[position],
            display_set(&basis),
            display_set(&target)
        )];
        let mut details = json!({ "rank": inst.rank(), "topology": inst.topology() });
        let cert = match exchange_step_with(inst, &basis, position, &handle, self.seed, self.max_tries, &[]) {
            Ok(c) => c,
            Err(Error::ExchangeExhausted { attempts, rejected }) => {
                summary.push(format!("no replacement after {attempts} attempts"));
                details["attempts"] = json!(attempts);
                details["rejected"] = json!(rejected);
                return Ok(Outcome {
                    verdict: Verdict::Exhausted,
                    details,
                    summary,
                });
            }
            Err(Error::Inconclusive(n)) => {
                summary.push(format!("basis oracle inconclusive up to N = {n}"));
                return Ok(Outcome {
                    verdict: Verdict::Inconclusive,
                    details,
                    summary,
                });
            }
            Err(e) => return Err(input_error("exchange", e)),
        };
        let verified = verify_certificate(inst, &cert)?;
        summary.push(format!(
            "inserted {} after {} attempt(s); result {} verified: {verified}",
            cert.inserted,
            cert.attempts,
            display_set(&cert.result)
        ));
        details["certificate"] = serde_json::to_value(&cert).map_err(|e| CliError::Io(e.to_string()))?;
        details["verified"] = json!(verified);
        if let Some(trials) = self.trials {
            let stats = check_generic_exchange_statistical(inst, &basis, position, &handle, trials, self.seed)?;
            summary.push(format!(
                "statistical: {}/{} successes, rate {:.3}",
                stats.successes, stats.trials, stats.rate
            ));
            details["statistics"] = json!(stats);
        }
        Ok(Outcome {
            verdict: Verdict::from_bool(verified),
            details,
            summary,
        })
    }
}

/// The quadric `xy - zw` with its five candidate systems, as an instance
/// file.
pub fn quadric_instance(prime: u64) -> InstanceFile {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    InstanceFile {
        field: Some(FieldSpec { prime }),
        ring: RingSpec {
            vars: s(&["x", "y", "z", "w"]).into_iter().map(VarSpec::Name).collect(),
            relations: s(&["x*y - z*w"]),
        },
        system: None,
        reduction: Some(ReductionSpec {
            ideal: s(&["x", "y", "z", "w"]),
            candidate: s(&["x + y", "z", "w"]),
        }),
        ideals: None,
        matrix: None,
        n_max: Some(crate::algebra::DEFAULT_N_MAX),
        exchange: Some(ExchangeSpec {
            task: ExchangeTask::MinimalReduction,
            basis: s(&["x + y", "z", "w"]).into_iter().map(ElementSpec::Poly).collect(),
            target: s(&["x", "y", "z + w"]).into_iter().map(ElementSpec::Poly).collect(),
            remove: Some(ElementSpec::Poly("x + y".into())),
            variant: None,
        }),
    }
}

/// The five candidate systems of the quadric example with the expected
/// verdicts.
pub const QUADRIC_SYSTEMS: [([&str; 3], bool); 5] = [
    (["x + y", "z", "w"], true),
    (["x", "y", "z + w"], true),
    (["x", "z", "w"], false),
    (["y", "z", "w"], false),
    (["z + w", "z", "w"], false),
];

/// Walks through the quadric `k[x,y,z,w]/(xy - zw)`: which triples are
/// minimal reductions of `m`, why they do not form a matroid, and how
/// generic exchange still succeeds.
pub fn run_demo(opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let probe = InstanceFile {
        field: None,
        ..quadric_instance(crate::field::DEFAULT_PRIME)
    };
    let field = probe.resolve_prime(opts.prime)?;
    let file = quadric_instance(field.modulus());
    let seed = opts.seed.unwrap_or_else(fresh_seed);
    let trials = opts.trials.unwrap_or(200);
    let n_max = file.n_max(opts.n_max);
    let r = file.build_algebra(field)?;
    let m = ideal(&r, &file.reduction.as_ref().unwrap().ideal, "reduction.ideal")?;
    let mut summary = Vec::new();
    let mut all_ok = true;

    let dim = r.dimension()?;
    let spread = analytic_spread(&m)?;
    summary.push(format!("R = F_{}[x,y,z,w]/(xy - zw): dim R = {dim}, analytic spread of m = {spread}", field.modulus()));

    let inst = MinimalReductionInstance::new(&m, n_max)?;
    let nn = NoetherInstance::new(&r)?;
    let mut verdicts = Vec::new();
    for (set, expected) in QUADRIC_SYSTEMS {
        let polys: Vec<Polynomial> = set.iter().map(|s| r.parse_element(s)).collect::<Result<_, _>>()?;
        let j = EquigeneratedIdeal::new(&r, polys.clone())?;
        let minimal = inst.is_basis(j.generators())?;
        let normalization = nn.is_basis(&polys)?;
        all_ok &= minimal == expected && normalization == expected;
        summary.push(format!(
            "({}) minimal reduction: {minimal}; Noether normalization: {normalization}",
            set.join(", ")
        ));
        verdicts.push(json!({
            "system": set,
            "minimal_reduction": minimal,
            "noether_normalization": normalization,
            "expected": expected,
        }));
    }

    let good: Vec<Vec<Polynomial>> = QUADRIC_SYSTEMS
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(set, _)| set.iter().map(|s| r.parse_element(s)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let ground: Vec<Polynomial> = QUADRIC_SYSTEMS
        .iter()
        .flat_map(|(set, _)| set.iter())
        .map(|s| r.parse_element(s))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(Vec::new(), |mut acc, p| {
            if !acc.contains(&p) {
                acc.push(p);
            }
            acc
        });
    let axioms = check_matroid_axioms(&ground, &good)?;
    let witness = match &axioms {
        AxiomReport::Exchange { removed, .. } => Some(removed.to_string()),
        _ => None,
    };
    all_ok &= witness.as_deref() == Some("x + y");
    summary.push(match &witness {
        Some(b) => format!("ordinary exchange fails for the two minimal reductions at b = {b}"),
        None => "ordinary exchange unexpectedly holds".to_string(),
    });

    let basis = good[0].clone();
    let handle = inst.handle_for(&good[1])?;
    let traps = good[1].clone();
    let cert = exchange_step_with(&inst, &basis, 0, &handle, seed, DEFAULT_MAX_TRIES + traps.len(), &traps);
    let exchange = match &cert {
        Ok(c) => {
            let traps_rejected = c.rejected.len() >= traps.len() && c.rejected[..traps.len()] == traps[..];
            let verified = verify_certificate(&inst, c)?;
            all_ok &= traps_rejected && verified;
            summary.push(format!(
                "trap candidates {} rejected: {traps_rejected}",
                display_set(&traps)
            ));
            summary.push(format!(
                "generic exchange: x + y replaced by {} after {} random attempt(s); verified: {verified}",
                c.inserted,
                c.attempts - traps.len()
            ));
            json!({ "certificate": c, "traps_rejected": traps_rejected, "verified": verified })
        }
        Err(e) => {
            all_ok = false;
            summary.push(format!("generic exchange failed: {e}"));
            json!({ "error": e.to_string() })
        }
    };
    let stats = check_generic_exchange_statistical(&inst, &basis, 0, &handle, trials, seed)?;
    summary.push(format!(
        "success rate over {} random combinations of {}: {:.3}",
        stats.trials,
        display_set(&good[1]),
        stats.rate
    ));

    let outcome = Outcome {
        verdict: Verdict::from_bool(all_ok),
        details: json!({
            "dimension": dim,
            "analytic_spread": spread,
            "systems": verdicts,
            "matroid_axioms": axioms,
            "exchange": exchange,
            "statistics": stats,
        }),
        summary,
    };
    Ok(finish("demo", file, field.modulus(), Some(seed), start, outcome))
}

/// Parses an instance from JSON text and runs a check.
pub fn check_json(task: CheckTask, text: &str, opts: &Options) -> Result<Report, CliError> {
    run_check(task, &InstanceFile::from_json(text)?, opts)
}

/// Parses an instance from JSON text and runs its exchange section.
pub fn exchange_json(text: &str, opts: &Options) -> Result<Report, CliError> {
    run_exchange(&InstanceFile::from_json(text)?, opts)
}

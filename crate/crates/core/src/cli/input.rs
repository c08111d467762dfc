//! JSON instance files and their conversion into algebra objects.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{CompleteReductionMatrix, EquigeneratedIdeal, GradedAlgebra};
use crate::error::Error;
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::genmat::{Column, Variant};
use crate::poly::{MonomialOrder, MultiDegree, Polynomial, Ring};

use super::CliError;

/// Environment variable that replaces the built-in default prime.
pub const PRIME_ENV: &str = "GENMAT_PRIME";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub prime: u64,
}

/// A variable: either a bare name (degree 1) or a name with a multidegree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarSpec {
    Name(String),
    Graded { name: String, multidegree: Vec<u32> },
}

impl VarSpec {
    fn name(&self) -> &str {
        match self {
            VarSpec::Name(n) | VarSpec::Graded { name: n, .. } => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<VarSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSpec {
    /// Generators of `I`.
    pub ideal: Vec<String>,
    /// Generators of the candidate `J ⊆ I`.
    #[serde(default)]
    pub candidate: Vec<String>,
}

/// A basis element: a polynomial, or a column of a complete-reduction
/// matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Poly(String),
    Column(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExchangeTask {
    Nn,
    MinimalReduction,
    CompleteReductionRing,
    CompleteReductionIdeals,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeSpec {
    pub task: ExchangeTask,
    pub basis: Vec<ElementSpec>,
    pub target: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remove: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

/// Top-level instance document. Sections are optional; each task reads the
/// ones it needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub ring: RingSpec,
    /// Elements `y` for the `nn` and `hsop` tasks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSpec>,
    /// Ideals `I_1..I_n` for complete reductions of ideals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<Vec<String>>>,
    /// Rows of a complete-reduction matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exchange: Option<ExchangeSpec>,
}

pub(crate) fn input_error(location: impl Into<String>, message: impl std::fmt::Display) -> CliError {
    CliError::Input {
        location: location.into(),
        message: message.to_string(),
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            input_error(format!("line {}, column {}", e.line(), e.column()), e)
        })
    }

    /// Prime used for this file: explicit override, then the file, then
    /// `GENMAT_PRIME`, then the built-in default.
    pub fn resolve_prime(&self, explicit: Option<u64>) -> Result<PrimeField, CliError> {
        let (p, location) = if let Some(p) = explicit {
            (p, "--prime".to_string())
        } else if let Some(f) = &self.field {
            (f.prime, "field.prime".to_string())
        } else if let Ok(v) = std::env::var(PRIME_ENV) {
            let p = v
                .trim()
                .parse::<u64>()
                .map_err(|e| input_error(PRIME_ENV, e))?;
            (p, PRIME_ENV.to_string())
        } else {
            (DEFAULT_PRIME, "default".to_string())
        };
        PrimeField::new(p).map_err(|e| input_error(location, e))
    }

    pub fn build_ring(&self, field: PrimeField) -> Result<Arc<Ring>, CliError> {
        let vars = &self.ring.vars;
        let components = vars
            .iter()
            .find_map(|v| match v {
                VarSpec::Graded { multidegree, .. } => Some(multidegree.len()),
                VarSpec::Name(_) => None,
            })
            .unwrap_or(1);
        let mut names = Vec::new();
        let mut grading = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            names.push(v.name().to_string());
            grading.push(match v {
                VarSpec::Name(_) if components == 1 => MultiDegree(vec![1]),
                VarSpec::Name(n) => {
                    return Err(input_error(
                        format!("ring.vars[{i}]"),
                        format!("{n} needs an explicit multidegree of length {components}"),
                    ))
                }
                VarSpec::Graded { multidegree, .. } => MultiDegree(multidegree.clone()),
            });
        }
        Ring::new(field, names, grading, components, MonomialOrder::GrevLex)
            .map_err(|e| input_error("ring.vars", e))
    }

    pub fn build_algebra(&self, field: PrimeField) -> Result<GradedAlgebra, CliError> {
        let ring = self.build_ring(field)?;
        let rels = parse_list(&ring, &self.ring.relations, "ring.relations")?;
        GradedAlgebra::new(&ring, rels).map_err(|e| input_error("ring.relations", e))
    }

    pub fn n_max(&self, explicit: Option<usize>) -> usize {
        explicit
            .or(self.n_max)
            .unwrap_or(crate::algebra::DEFAULT_N_MAX)
    }
}

pub(crate) fn parse_one(ring: &Arc<Ring>, text: &str, location: &str) -> Result<Polynomial, CliError> {
    ring.parse(text).map_err(|e| input_error(location, e))
}

pub(crate) fn parse_list(
    ring: &Arc<Ring>,
    items: &[String],
    location: &str,
) -> Result<Vec<Polynomial>, CliError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_one(ring, s, &format!("{location}[{i}]")))
        .collect()
}

pub(crate) fn require<'a, T>(section: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    section
        .as_ref()
        .ok_or_else(|| input_error(name, "section is required for this task"))
}

pub(crate) fn ideal(
    algebra: &GradedAlgebra,
    gens: &[String],
    location: &str,
) -> Result<EquigeneratedIdeal, CliError> {
    let polys = parse_list(algebra.ring(), gens, location)?;
    EquigeneratedIdeal::new(algebra, polys).map_err(|e| input_error(location, e))
}

pub(crate) fn matrix(
    ring: &Arc<Ring>,
    rows: &[Vec<String>],
    location: &str,
) -> Result<CompleteReductionMatrix, CliError> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| parse_list(ring, row, &format!("{location}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    CompleteReductionMatrix::new(rows).map_err(|e| input_error(location, e))
}

pub(crate) fn element_poly(
    ring: &Arc<Ring>,
    spec: &ElementSpec,
    location: &str,
) -> Result<Polynomial, CliError> {
    match spec {
        ElementSpec::Poly(s) => parse_one(ring, s, location),
        ElementSpec::Column(_) => Err(input_error(location, "expected a polynomial, found a column")),
    }
}

pub(crate) fn element_column(
    ring: &Arc<Ring>,
    spec: &ElementSpec,
    location: &str,
) -> Result<Column, CliError> {
    match spec {
        ElementSpec::Column(entries) => Ok(Column(parse_list(ring, entries, location)?)),
        ElementSpec::Poly(_) => Err(input_error(location, "expected a column (list of polynomials)")),
    }
}

/// Parses a command-line element: a polynomial, or a column written with
/// `;` between entries.
pub fn element_from_arg(text: &str, column: bool) -> ElementSpec {
    if column {
        ElementSpec::Column(text.split(';').map(|s| s.trim().to_string()).collect())
    } else {
        ElementSpec::Poly(text.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ExchangeExhausted { .. } => CliError::Algebra(e),
            Error::Inconclusive(_) => CliError::Algebra(e),
            other => input_error("input", other),
        }
    }
}

//! Reductions of equigenerated homogeneous ideals, fiber rings and
//! analytic spread.
//!
//! Local statements are modelled in a standard graded algebra `R` with
//! `m` the irrelevant ideal. For `I` generated in a single degree `δ`,
//! `I^n / m I^n` is the degree-`nδ` part of `I^n`, so the fiber ring
//! `F(I)` is the subalgebra `k[f_1..f_s] ⊆ R`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, ideal_equal, is_zero_dimensional, kernel_of_map, GroebnerBasis, Ideal,
};
use crate::linalg::Span;
use crate::poly::{MonomialOrder, Polynomial, Ring};

use super::{GradedAlgebra, DEFAULT_N_MAX};

/// Homogeneous ideal of a standard N-graded algebra, generated in one
/// degree `δ ≥ 1`.
#[derive(Clone, Debug)]
pub struct EquigeneratedIdeal {
    algebra: GradedAlgebra,
    generators: Vec<Polynomial>,
    degree: u32,
}

impl EquigeneratedIdeal {
    /// Infers `δ` from the nonzero generators.
    pub fn new(algebra: &GradedAlgebra, generators: Vec<Polynomial>) -> Result<Self> {
        let degree = generators
            .iter()
            .find(|g| !g.is_zero())
            .ok_or(Error::Empty("ideal has no nonzero generator"))?
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(generators[0].to_string()))?;
        EquigeneratedIdeal::with_degree(algebra, generators, degree)
    }

    /// Generators may include zeros; every nonzero one must have degree
    /// `degree`.
    pub fn with_degree(
        algebra: &GradedAlgebra,
        generators: Vec<Polynomial>,
        degree: u32,
    ) -> Result<Self> {
        if algebra.components() != 1 || !algebra.is_standard() {
            return Err(Error::InvalidRing(
                "ideals are supported in standard N-graded algebras only".into(),
            ));
        }
        if degree == 0 {
            return Err(Error::WrongDegree("generators must have positive degree".into()));
        }
        if generators.is_empty() {
            return Err(Error::Empty("ideal generators"));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.ring().compatible(algebra.ring()) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                match g.homogeneous_degree() {
                    None => return Err(Error::NotHomogeneous(g.to_string())),
                    Some(d) if d != degree => {
                        return Err(Error::WrongDegree(format!(
                            "{g} has degree {d}, expected {degree}"
                        )))
                    }
                    _ => {}
                }
            }
            gens.push(g.in_ring(algebra.ring())?);
        }
        Ok(EquigeneratedIdeal {
            algebra: algebra.clone(),
            generators: gens,
            degree,
        })
    }

    pub fn parse<S: AsRef<str>>(algebra: &GradedAlgebra, gens: &[S]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| algebra.parse_element(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        EquigeneratedIdeal::new(algebra, gens)
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn reduced_span(&self, polys: impl IntoIterator<Item = Polynomial>) -> Result<Span> {
        let mut span = Span::new(self.algebra.ring());
        for p in polys {
            span.insert(&self.algebra.normal_form(&p)?);
        }
        Ok(span)
    }

    /// Number of minimal generators: `dim_k` of the span of the generators
    /// in `R_δ`.
    pub fn minimal_generator_count(&self) -> Result<usize> {
        Ok(self.reduced_span(self.generators.iter().cloned())?.dim())
    }

    /// Generators are `k`-linearly independent in `R_δ` (so they minimally
    /// generate).
    pub fn generators_independent(&self) -> Result<bool> {
        Ok(self.minimal_generator_count()? == self.generators.len())
    }

    /// Echelon basis of `I_δ` modulo the relations.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        Ok(self.reduced_span(self.generators.iter().cloned())?.basis())
    }

    /// Product ideal, generated by a basis of the span of pairwise products.
    pub fn product(&self, other: &EquigeneratedIdeal) -> Result<EquigeneratedIdeal> {
        let a = self.minimal_generators()?;
        let b = other.minimal_generators()?;
        let prods = a.iter().flat_map(|x| b.iter().map(move |y| x * y));
        let span = self.reduced_span(prods)?;
        let mut gens = span.basis();
        if gens.is_empty() {
            gens.push(Polynomial::zero(self.algebra.ring()));
        }
        EquigeneratedIdeal::with_degree(&self.algebra, gens, self.degree + other.degree)
    }

    /// `relations + (generators)` in the ambient polynomial ring.
    pub fn ambient_ideal(&self) -> Result<Ideal> {
        self.algebra.ideal_with(&self.generators)
    }
}

/// `F(I) = k[T_1..T_s]/ker` with `T_i` mapped to a basis `f_i` of `I_δ`.
#[derive(Clone, Debug)]
pub struct FiberRing {
    presentation: GradedAlgebra,
    generators: Vec<Polynomial>,
    ideal: EquigeneratedIdeal,
}

impl FiberRing {
    pub fn presentation(&self) -> &GradedAlgebra {
        &self.presentation
    }

    /// Images of the `T_i` in `R`.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn dimension(&self) -> Result<usize> {
        self.presentation.dimension()
    }

    /// Degree-one image in `F(I)` of an element `g ∈ I_δ`, as a linear form
    /// in the `T_i`.
    pub fn image(&self, g: &Polynomial) -> Result<Polynomial> {
        let t = self.presentation.ring();
        if g.is_zero() {
            return Ok(Polynomial::zero(t));
        }
        if g.homogeneous_degree() != Some(self.ideal.degree) {
            return Err(Error::NotContained(g.to_string()));
        }
        let alg = &self.ideal.algebra;
        let mut span = Span::new(alg.ring());
        for f in &self.generators {
            span.insert(f);
        }
        let coeffs = span
            .express(&alg.normal_form(g)?)
            .ok_or_else(|| Error::NotContained(g.to_string()))?;
        let vars = t.vars();
        crate::poly::linear_combination(&vars, &coeffs)
    }

    /// `F(I)` is module-finite over the subalgebra generated by the images of
    /// `elements`.
    pub fn is_finite_over(&self, elements: &[Polynomial]) -> Result<bool> {
        let images = elements
            .iter()
            .map(|g| self.image(g))
            .collect::<Result<Vec<_>>>()?;
        is_zero_dimensional(&self.presentation.ideal_with(&images)?)
    }
}

fn fiber_variable_ring(ring: &Ring, count: usize, prefix: &str) -> Result<Arc<Ring>> {
    let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
    Ring::standard(ring.field(), &names)
}

/// Fiber ring of an equigenerated ideal.
pub fn fiber_ring(ideal: &EquigeneratedIdeal) -> Result<FiberRing> {
    let gens = ideal.minimal_generators()?;
    let t = fiber_variable_ring(ideal.algebra.ring(), gens.len(), "T")?;
    let kernel = kernel_of_map(&t, &gens, ideal.algebra.relations())?;
    let presentation = GradedAlgebra::new(&t, kernel.generators().to_vec())?;
    Ok(FiberRing {
        presentation,
        generators: gens,
        ideal: ideal.clone(),
    })
}

/// `ℓ(I) = dim F(I)`.
pub fn analytic_spread(ideal: &EquigeneratedIdeal) -> Result<usize> {
    fiber_ring(ideal)?.dimension()
}

/// Fiber-ring test: `J` is a reduction of `I` iff `F(I)` is module-finite
/// over the image of `F(J)`.
pub fn fiber_reduction_test(j: &EquigeneratedIdeal, i: &EquigeneratedIdeal) -> Result<bool> {
    ReductionOracle::new(i).fiber_test(j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "n", rename_all = "kebab-case")]
pub enum ReductionStatus {
    /// `I^{N+1} = J I^N` verified for the least such `N`.
    Yes(usize),
    /// The fiber-ring test proves `J` is not a reduction.
    No,
    /// Neither route decided up to the stated bound.
    Inconclusive(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerStep {
    pub n: usize,
    /// `dim_k (I^{n+1})_{(n+1)δ}` modulo relations.
    pub power_dim: usize,
    /// `dim_k (J I^n)_{(n+1)δ}` modulo relations.
    pub product_dim: usize,
}

/// Gröbner-basis confirmation of `I^{N+1} = J I^N` at the deciding `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbWitness {
    pub n: usize,
    pub power_basis_size: usize,
    pub product_basis_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTranscript {
    pub steps: Vec<PowerStep>,
    pub gb_witness: Option<GbWitness>,
    /// Outcome of the fiber-ring test when it was consulted.
    pub fiber_finite: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionVerdict {
    pub status: ReductionStatus,
    pub transcript: ReductionTranscript,
}

impl ReductionVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.status, ReductionStatus::Yes(_))
    }
}

/// Result of scanning `N = 1..=n_max` for `I^{N+1} = J I^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerScan {
    pub found: Option<usize>,
    pub steps: Vec<PowerStep>,
    pub gb_witness: Option<GbWitness>,
}

/// Caches everything about `I` that repeated reduction questions need.
#[derive(Debug)]
pub struct ReductionOracle {
    ideal: EquigeneratedIdeal,
    ambient_gb: OnceLock<GroebnerBasis>,
    fiber: OnceLock<Result<FiberRing>>,
    spread: OnceLock<Result<usize>>,
}

impl ReductionOracle {
    pub fn new(ideal: &EquigeneratedIdeal) -> Self {
        ReductionOracle {
            ideal: ideal.clone(),
            ambient_gb: OnceLock::new(),
            fiber: OnceLock::new(),
            spread: OnceLock::new(),
        }
    }

    pub fn ideal(&self) -> &EquigeneratedIdeal {
        &self.ideal
    }

    pub fn fiber(&self) -> Result<&FiberRing> {
        self.fiber
            .get_or_init(|| fiber_ring(&self.ideal))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn analytic_spread(&self) -> Result<usize> {
        self.spread
            .get_or_init(|| self.fiber().and_then(|f| f.dimension()))
            .clone()
    }

    fn check_pair(&self, j: &EquigeneratedIdeal) -> Result<()> {
        let i = &self.ideal;
        if !j.algebra.ring().compatible(i.algebra.ring()) {
            return Err(Error::RingMismatch);
        }
        if j.degree != i.degree {
            return Err(Error::WrongDegree(format!(
                "J is generated in degree {}, I in degree {}",
                j.degree, i.degree
            )));
        }
        let gb = self.ambient_gb.get_or_init(|| {
            buchberger(&i.ambient_ideal().expect("same ring"), MonomialOrder::GrevLex)
        });
        for g in &j.generators {
            if !gb.contains(g)? {
                return Err(Error::NotContained(g.to_string()));
            }
        }
        Ok(())
    }

    /// Least `N ≤ n_max` with `I^{N+1} = J I^N` in `R`.
    ///
    /// Both sides are generated in the single degree `D = (N+1)δ` and
    /// `J I^N ⊆ I^{N+1}`, so equality is first detected by comparing the
    /// dimensions of their degree-`D` components; the candidate `N` is then
    /// confirmed by Gröbner-basis ideal equality.
    pub fn power_criterion(&self, j: &EquigeneratedIdeal, n_max: usize) -> Result<PowerScan> {
        self.check_pair(j)?;
        let i = &self.ideal;
        let alg = &i.algebra;
        let igens = i.minimal_generators()?;
        let jgens: Vec<Polynomial> = j.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        let mut power = igens.clone(); // basis of (I^n)_{nδ}
        let mut steps = Vec::new();
        for n in 1..=n_max {
            let mut next = Span::new(alg.ring());
            for b in &power {
                for f in &igens {
                    next.insert(&alg.normal_form(&(b * f))?);
                }
            }
            let mut prod = Span::new(alg.ring());
            for b in &power {
                for g in &jgens {
                    prod.insert(&alg.normal_form(&(g * b))?);
                }
            }
            steps.push(PowerStep {
                n,
                power_dim: next.dim(),
                product_dim: prod.dim(),
            });
            let next_basis = next.basis();
            if next.dim() == prod.dim() {
                let lhs = alg.ideal_with(&next_basis)?;
                let prod_basis = prod.basis();
                let rhs = alg.ideal_with(&prod_basis)?;
                if ideal_equal(&lhs, &rhs)? {
                    return Ok(PowerScan {
                        found: Some(n),
                        steps,
                        gb_witness: Some(GbWitness {
                            n,
                            power_basis_size: buchberger(&lhs, MonomialOrder::GrevLex).len(),
                            product_basis_size: buchberger(&rhs, MonomialOrder::GrevLex).len(),
                        }),
                    });
                }
            }
            if next_basis.is_empty() {
                // I is nilpotent; every J already works at this N
                return Ok(PowerScan {
                    found: Some(n),
                    steps,
                    gb_witness: None,
                });
            }
            power = next_basis;
        }
        Ok(PowerScan {
            found: None,
            steps,
            gb_witness: None,
        })
    }

    pub fn fiber_test(&self, j: &EquigeneratedIdeal) -> Result<bool> {
        self.check_pair(j)?;
        self.fiber()?.is_finite_over(&j.generators)
    }

    /// `No` comes from the fiber test and `Yes(N)` from the power criterion;
    /// `Inconclusive` means the fiber test allows a reduction but no
    /// `N ≤ n_max` was found.
    pub fn is_reduction(&self, j: &EquigeneratedIdeal, n_max: usize) -> Result<ReductionVerdict> {
        if n_max == 0 {
            return Err(Error::InvalidInput("N_max must be at least 1".into()));
        }
        // a failed fiber test already disproves, so skip the power scan
        let finite = self.fiber_test(j)?;
        if !finite {
            return Ok(ReductionVerdict {
                status: ReductionStatus::No,
                transcript: ReductionTranscript {
                    fiber_finite: Some(false),
                    ..ReductionTranscript::default()
                },
            });
        }
        let scan = self.power_criterion(j, n_max)?;
        let status = match scan.found {
            Some(n) => ReductionStatus::Yes(n),
            None => ReductionStatus::Inconclusive(n_max),
        };
        Ok(ReductionVerdict {
            status,
            transcript: ReductionTranscript {
                steps: scan.steps,
                gb_witness: scan.gb_witness,
                fiber_finite: Some(true),
            },
        })
    }

    /// Reduction with `k`-independent generators, as many as `ℓ(I)`.
    pub fn is_minimal_reduction(&self, j: &EquigeneratedIdeal, n_max: usize) -> Result<bool> {
        let verdict = self.is_reduction(j, n_max)?;
        match verdict.status {
            ReductionStatus::Inconclusive(n) => Err(Error::Inconclusive(n)),
            ReductionStatus::No => Ok(false),
            ReductionStatus::Yes(_) => {
                Ok(j.generators.len() == self.analytic_spread()? && j.generators_independent()?)
            }
        }
    }
}

pub fn power_criterion(
    j: &EquigeneratedIdeal,
    i: &EquigeneratedIdeal,
    n_max: usize,
) -> Result<PowerScan> {
    ReductionOracle::new(i).power_criterion(j, n_max)
}

/// Three-valued reduction test for `J ⊆ I`.
pub fn is_reduction(
    j: &EquigeneratedIdeal,
    i: &EquigeneratedIdeal,
    n_max: usize,
) -> Result<ReductionVerdict> {
    ReductionOracle::new(i).is_reduction(j, n_max)
}

/// Minimal-reduction test with the default power bound. An inconclusive
/// reduction test is an error, never a silent `false`.
pub fn is_minimal_reduction(j: &EquigeneratedIdeal, i: &EquigeneratedIdeal) -> Result<bool> {
    ReductionOracle::new(i).is_minimal_reduction(j, DEFAULT_N_MAX)
}

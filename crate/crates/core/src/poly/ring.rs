use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::monomial::{Monomial, MonomialOrder, MultiDegree};
use super::polynomial::Polynomial;

/// Ambient polynomial ring `F_p[x_1..x_m]` with an N^n-grading and an
/// active monomial order.
#[derive(Clone, Debug)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    grading: Vec<MultiDegree>,
    components: usize,
    order: MonomialOrder,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.order == other.order
    }
}

impl Eq for Ring {}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Builds a ring with explicit variable multidegrees. `components` is the
    /// number of grading components `n`; every degree vector must have that
    /// length.
    pub fn new(
        field: PrimeField,
        names: Vec<String>,
        grading: Vec<MultiDegree>,
        components: usize,
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        if names.len() != grading.len() {
            return Err(Error::InvalidRing(format!(
                "{} variable names but {} degrees",
                names.len(),
                grading.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !valid_identifier(name) {
                return Err(Error::InvalidRing(format!("bad variable name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable {name}")));
            }
        }
        if let Some(bad) = grading.iter().find(|g| g.len() != components) {
            return Err(Error::InvalidRing(format!(
                "degree {bad} does not have {components} components"
            )));
        }
        Ok(Arc::new(Ring {
            field,
            names,
            grading,
            components,
            order,
        }))
    }

    /// Standard N-graded ring (every variable of degree 1) under grevlex.
    pub fn standard<S: AsRef<str>>(field: PrimeField, names: &[S]) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let grading = vec![MultiDegree(vec![1]); names.len()];
        Ring::new(field, names, grading, 1, MonomialOrder::GrevLex)
    }

    /// N^n-graded ring where block `i` of `blocks` consists of variables of
    /// degree `e_i`.
    pub fn multigraded<S: AsRef<str>>(field: PrimeField, blocks: &[&[S]]) -> Result<Arc<Ring>> {
        let n = blocks.len();
        let mut names = Vec::new();
        let mut grading = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            for s in block.iter() {
                names.push(s.as_ref().to_string());
                grading.push(MultiDegree::unit(n, i));
            }
        }
        Ring::new(field, names, grading, n, MonomialOrder::GrevLex)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            order,
            ..self.clone()
        })
    }

    /// Same variables, grading and field; the order may differ.
    pub fn compatible(&self, other: &Ring) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.grading == other.grading
            && self.components == other.components
    }

    /// Ring on the variables `keep` (in that order), grevlex.
    pub fn subring(&self, keep: &[usize]) -> Result<Arc<Ring>> {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let grading = keep.iter().map(|&i| self.grading[i].clone()).collect();
        Ring::new(self.field, names, grading, self.components, MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &[MultiDegree] {
        &self.grading
    }

    /// Number of grading components `n`.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when every variable has a unit-vector degree.
    pub fn is_standard(&self) -> bool {
        self.grading.iter().all(|g| g.unit_index().is_some())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> MultiDegree {
        if self.grading.is_empty() {
            return MultiDegree::zero(self.components);
        }
        m.multidegree(&self.grading)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), 1)
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    /// All monomials of the given total degree, in lex-descending order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::from_exponents(Vec::new()));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, degree, &mut cur, &mut out);
        out
    }
}

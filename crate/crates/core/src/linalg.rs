//! Gaussian elimination on finite-dimensional spans of polynomials.
//!
//! Rows are polynomials whose leading monomial acts as the pivot column, so
//! no explicit coordinate system is needed. Each row optionally tracks the
//! combination of inserted inputs it came from.

use std::collections::HashMap;
use std::sync::Arc;

use crate::poly::{axpy, Monomial, Polynomial, Ring, Term};

struct Row {
    terms: Vec<Term>,
    combo: Vec<u64>,
}

pub(crate) struct Span {
    ring: Arc<Ring>,
    rows: Vec<Row>,
    pivots: HashMap<Monomial, usize>,
    inputs: usize,
}

impl Span {
    pub fn new(ring: &Arc<Ring>) -> Self {
        Span {
            ring: ring.clone(),
            rows: Vec::new(),
            pivots: HashMap::new(),
            inputs: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(residual, combo)` with `p - sum combo_i input_i = residual`
    /// and no residual term sitting on a pivot.
    fn reduce_terms(&self, p: &[Term]) -> (Vec<Term>, Vec<u64>) {
        let field = self.ring.field();
        let order = self.ring.order();
        let one = Monomial::one(self.ring.nvars());
        let mut v = p.to_vec();
        let mut combo = vec![0u64; self.inputs];
        let mut pos = 0;
        while pos < v.len() {
            if let Some(&r) = self.pivots.get(&v[pos].0) {
                let c = v[pos].1;
                let row = &self.rows[r];
                v = axpy(field, order, &v, field.neg(c), &one, &row.terms);
                for (acc, &k) in combo.iter_mut().zip(&row.combo) {
                    *acc = field.add(*acc, field.mul(c, k));
                }
            } else {
                pos += 1;
            }
        }
        (v, combo)
    }

    /// Adds `p` as the next input. Returns whether the span grew.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        debug_assert!(p.ring().compatible(&self.ring));
        let field = self.ring.field();
        let (res, combo) = self.reduce_terms(p.terms());
        let idx = self.inputs;
        self.inputs += 1;
        for row in &mut self.rows {
            row.combo.resize(self.inputs, 0);
        }
        if res.is_empty() {
            return false;
        }
        let inv = field.inv(res[0].1).unwrap();
        let terms: Vec<Term> = res.into_iter().map(|(m, c)| (m, field.mul(c, inv))).collect();
        // row = inv * (input_idx - combo)
        let mut row_combo: Vec<u64> = combo.iter().map(|&c| field.mul(field.neg(c), inv)).collect();
        row_combo.resize(self.inputs, 0);
        row_combo[idx] = inv;
        self.pivots.insert(terms[0].0.clone(), self.rows.len());
        self.rows.push(Row {
            terms,
            combo: row_combo,
        });
        true
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce_terms(p.terms()).0.is_empty()
    }

    /// Coefficients `c` with `p = sum c_i input_i`, if `p` lies in the span.
    pub fn express(&self, p: &Polynomial) -> Option<Vec<u64>> {
        let (res, combo) = self.reduce_terms(p.terms());
        res.is_empty().then_some(combo)
    }

    /// Echelon basis of the span.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.rows
            .iter()
            .map(|r| Polynomial::from_terms(&self.ring, r.terms.clone()))
            .collect()
    }
}

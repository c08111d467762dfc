//! Helpers shared by the integration tests: instance builders, proptest
//! strategies and a deliberately naive Gröbner oracle that shares no code
//! with the library.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use genmat::algebra::{EquigeneratedIdeal, GradedAlgebra};
use genmat::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use genmat::PrimeField;
use proptest::prelude::*;

pub const P: u64 = 32003;

pub fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

pub fn ring(names: &[&str]) -> Arc<Ring> {
    Ring::standard(field(), names).unwrap()
}

pub fn quadric() -> GradedAlgebra {
    GradedAlgebra::parse(&ring(&["x", "y", "z", "w"]), &["x*y - z*w"]).unwrap()
}

pub fn quadric_over(p: u64) -> GradedAlgebra {
    let r = Ring::standard(PrimeField::new(p).unwrap(), &["x", "y", "z", "w"]).unwrap();
    GradedAlgebra::parse(&r, &["x*y - z*w"]).unwrap()
}

pub fn segre() -> GradedAlgebra {
    let r = Ring::multigraded(field(), &[&["x1", "x2"], &["y1", "y2"]]).unwrap();
    GradedAlgebra::polynomial_ring(&r).unwrap()
}

pub fn polys(s: &GradedAlgebra, v: &[&str]) -> Vec<Polynomial> {
    v.iter().map(|t| s.parse_element(t).unwrap()).collect()
}

pub fn ideal(s: &GradedAlgebra, v: &[&str]) -> EquigeneratedIdeal {
    EquigeneratedIdeal::parse(s, v).unwrap()
}

/// Raw terms: exponent vectors with coefficients in `[0, P)`.
pub type RawPoly = Vec<(Vec<u32>, u64)>;

pub fn raw_poly(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), 0..P),
        0..=max_terms,
    )
}

/// Homogeneous of the given degree: exponents are drawn then scaled into
/// the right degree by topping up the last variable.
pub fn raw_homogeneous(nvars: usize, max_terms: usize, degree: u32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..=degree, nvars), 1..P), 1..=max_terms).prop_map(
        move |terms| {
            terms
                .into_iter()
                .map(|(mut e, c)| {
                    let mut budget = degree;
                    for x in e.iter_mut().take(nvars - 1) {
                        *x = (*x).min(budget);
                        budget -= *x;
                    }
                    e[nvars - 1] = budget;
                    (e, c)
                })
                .collect()
        },
    )
}

pub fn build(ring: &Arc<Ring>, raw: &RawPoly) -> Polynomial {
    Polynomial::from_terms(
        ring,
        raw.iter()
            .map(|(e, c)| (Monomial::from_exponents(e.clone()), *c))
            .collect(),
    )
}

// ---- naive Gröbner oracle ----

/// Polynomial as a map from exponent vectors to nonzero coefficients.
pub type Naive = BTreeMap<Vec<u32>, u64>;

#[derive(Clone, Copy)]
pub enum NaiveOrder {
    Lex,
    GrevLex,
}

impl NaiveOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            NaiveOrder::Lex => a.cmp(b),
            NaiveOrder::GrevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn library(self) -> MonomialOrder {
        match self {
            NaiveOrder::Lex => MonomialOrder::Lex,
            NaiveOrder::GrevLex => MonomialOrder::GrevLex,
        }
    }
}

fn inv(a: u64) -> u64 {
    // Fermat
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

pub fn naive_from(p: &Polynomial) -> Naive {
    p.terms()
        .iter()
        .map(|(m, c)| (m.exponents().to_vec(), *c))
        .collect()
}

pub fn naive_from_raw(raw: &RawPoly) -> Naive {
    let mut out = Naive::new();
    for (e, c) in raw {
        let v = out.entry(e.clone()).or_insert(0);
        *v = (*v + c) % P;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn lead(f: &Naive, o: NaiveOrder) -> (Vec<u32>, u64) {
    let (m, c) = f.iter().max_by(|a, b| o.cmp(a.0, b.0)).unwrap();
    (m.clone(), *c)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `f - c * x^m * g`.
fn sub_scaled(f: &mut Naive, g: &Naive, c: u64, m: &[u32]) {
    for (e, d) in g {
        let key: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
        let v = f.entry(key.clone()).or_insert(0);
        *v = (*v + P - c * d % P) % P;
        if *v == 0 {
            f.remove(&key);
        }
    }
}

/// Full reduction of `f` by `g` (normal form).
pub fn naive_reduce(f: &Naive, g: &[Naive], o: NaiveOrder) -> Naive {
    let mut f = f.clone();
    let mut rem = Naive::new();
    let leads: Vec<(Vec<u32>, u64)> = g.iter().map(|h| lead(h, o)).collect();
    while !f.is_empty() {
        let (m, c) = lead(&f, o);
        match leads.iter().position(|(l, _)| divides(l, &m)) {
            Some(i) => {
                let shift: Vec<u32> = m.iter().zip(&leads[i].0).map(|(a, b)| a - b).collect();
                let k = c * inv(leads[i].1) % P;
                sub_scaled(&mut f, &g[i], k, &shift);
            }
            None => {
                rem.insert(m.clone(), c);
                f.remove(&m);
            }
        }
    }
    rem
}

pub fn s_poly(f: &Naive, g: &Naive, o: NaiveOrder) -> Naive {
    let (mf, cf) = lead(f, o);
    let (mg, cg) = lead(g, o);
    let l: Vec<u32> = mf.iter().zip(&mg).map(|(a, b)| *a.max(b)).collect();
    let mut s = Naive::new();
    let uf: Vec<u32> = l.iter().zip(&mf).map(|(a, b)| a - b).collect();
    let ug: Vec<u32> = l.iter().zip(&mg).map(|(a, b)| a - b).collect();
    sub_scaled(&mut s, f, P - inv(cf), &uf);
    sub_scaled(&mut s, g, inv(cg), &ug);
    s
}

fn monic(f: &Naive, o: NaiveOrder) -> Naive {
    let c = inv(lead(f, o).1);
    f.iter().map(|(m, d)| (m.clone(), d * c % P)).collect()
}

/// Reduced Gröbner basis by plain Buchberger: every pair, no criteria.
pub fn naive_groebner(gens: &[Naive], o: NaiveOrder) -> BTreeSet<Naive> {
    let mut g: Vec<Naive> = gens.iter().filter(|f| !f.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let r = naive_reduce(&s_poly(&g[i], &g[j], o), &g, o);
        if !r.is_empty() {
            g.push(r);
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimalize
    let mut minimal: Vec<Naive> = Vec::new();
    for (i, f) in g.iter().enumerate() {
        let lf = lead(f, o).0;
        let redundant = g.iter().enumerate().any(|(j, h)| {
            let lh = lead(h, o).0;
            j != i && divides(&lh, &lf) && (lh != lf || j < i)
        });
        if !redundant {
            minimal.push(monic(f, o));
        }
    }
    // interreduce
    let mut out = BTreeSet::new();
    for i in 0..minimal.len() {
        let others: Vec<Naive> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let (lm, _) = lead(&minimal[i], o);
        let mut tail = minimal[i].clone();
        tail.remove(&lm);
        let mut r = naive_reduce(&tail, &others, o);
        r.insert(lm, 1);
        out.insert(r);
    }
    out
}

/// Krull dimension of `k[x]/(monomials)` by brute force over variable
/// subsets: the largest `U` containing no monomial's support.
pub fn brute_monomial_dimension(n: usize, monomials: &[Vec<u32>]) -> usize {
    (0u32..1 << n)
        .filter(|u| {
            monomials.iter().all(|m| {
                m.iter()
                    .enumerate()
                    .any(|(i, e)| *e > 0 && u & (1 << i) == 0)
            })
        })
        .map(|u| u.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

// ---- exchange instances ----

use genmat::genmat::{
    exchange_path, verify_certificate, Column, CompleteReductionIdealsInstance,
    CompleteReductionRingInstance, GenericMatroid, MinimalReductionInstance, NoetherInstance,
    Variant, VectorMatroid, DEFAULT_MAX_TRIES,
};

pub fn column(ring: &Arc<Ring>, entries: &[&str]) -> Column {
    Column(entries.iter().map(|e| ring.parse(e).unwrap()).collect())
}

/// An instance with a starting basis and a basis spanning the target handle.
pub struct Scenario<G: GenericMatroid> {
    pub name: &'static str,
    pub inst: G,
    pub start: Vec<G::Element>,
    pub target: Vec<G::Element>,
}

pub fn vector_scenario() -> Scenario<VectorMatroid> {
    let f = PrimeField::new(5).unwrap();
    let inst = VectorMatroid::new(
        f,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 3], vec![2, 0, 4]],
    )
    .unwrap();
    Scenario { name: "vector matroid", inst, start: vec![0, 1, 2], target: vec![3, 4, 5] }
}

pub fn noether_scenario() -> Scenario<NoetherInstance> {
    let q = quadric();
    Scenario {
        name: "noether normalization",
        inst: NoetherInstance::new(&q).unwrap(),
        start: polys(&q, &["x + y", "z", "w"]),
        target: polys(&q, &["x", "y", "z + w"]),
    }
}

pub fn minimal_reduction_scenario() -> Scenario<MinimalReductionInstance> {
    let q = quadric();
    let m = ideal(&q, &["x", "y", "z", "w"]);
    Scenario {
        name: "minimal reduction",
        inst: MinimalReductionInstance::new(&m, 10).unwrap(),
        start: polys(&q, &["x + y", "z", "w"]),
        target: polys(&q, &["x", "y", "z + w"]),
    }
}

pub fn complete_ring_scenario(variant: Variant) -> Scenario<CompleteReductionRingInstance> {
    let s = segre();
    let r = s.ring().clone();
    Scenario {
        name: "complete reduction (ring)",
        inst: CompleteReductionRingInstance::new(&s, variant).unwrap(),
        start: vec![column(&r, &["x1", "y1"]), column(&r, &["x2", "y2"]), column(&r, &["x1 + x2", "y1 + y2"])],
        target: vec![column(&r, &["x1 - x2", "y1"]), column(&r, &["x1", "y2"]), column(&r, &["x2", "y1 + 3*y2"])],
    }
}

pub fn complete_ideals_scenario(variant: Variant) -> Scenario<CompleteReductionIdealsInstance> {
    let xy = ring(&["x", "y"]);
    let s = GradedAlgebra::polynomial_ring(&xy).unwrap();
    let m = ideal(&s, &["x", "y"]);
    Scenario {
        name: "complete reduction (ideals)",
        inst: CompleteReductionIdealsInstance::new(vec![m.clone(), m], variant, 10).unwrap(),
        start: vec![column(&xy, &["x", "x"]), column(&xy, &["y", "y"])],
        target: vec![column(&xy, &["x + y", "x"]), column(&xy, &["y", "x - y"])],
    }
}

/// Outcome of running exchange paths from `start` into the target handle
/// for each seed.
#[derive(Debug, Default)]
pub struct PathAudit {
    pub runs: usize,
    pub violations: Vec<String>,
    pub max_len: usize,
}

pub fn audit_paths<G: GenericMatroid>(sc: &Scenario<G>, seeds: impl IntoIterator<Item = u64>) -> PathAudit {
    let d = sc.inst.rank();
    let handle = sc.inst.handle_for(&sc.target).unwrap();
    let mut audit = PathAudit::default();
    for seed in seeds {
        audit.runs += 1;
        let mut fail = |msg: String| audit.violations.push(format!("{} seed {seed}: {msg}", sc.name));
        let path = match exchange_path(&sc.inst, &sc.start, &handle, seed, DEFAULT_MAX_TRIES) {
            Ok(p) => p,
            Err(e) => {
                fail(e.to_string());
                continue;
            }
        };
        if path.len() > d {
            fail(format!("path of length {} exceeds rank {d}", path.len()));
        }
        for b in path.bases() {
            if b.len() != d {
                fail(format!("basis of size {} != {d}", b.len()));
            }
            if !sc.inst.is_basis(&b).unwrap() {
                fail("produced set is not a basis".into());
            }
        }
        for cert in &path.steps {
            if !verify_certificate(&sc.inst, cert).unwrap() {
                fail("certificate does not verify".into());
            }
        }
        for x in path.end() {
            if !sc.inst.in_handle(&handle, &x).unwrap() {
                fail(format!("{x} ends outside the target"));
            }
        }
        let again = exchange_path(&sc.inst, &sc.start, &handle, seed, DEFAULT_MAX_TRIES).ok();
        if again.as_ref() != Some(&path) {
            fail("rerun with the same seed differs".into());
        }
        audit.max_len = audit.max_len.max(path.len());
    }
    audit
}

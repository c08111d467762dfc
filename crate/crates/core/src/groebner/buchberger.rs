use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::poly::{Monomial, Polynomial, Ring};

/// Full reduction of `f` modulo monic `basis` (all in the same ring).
pub(crate) fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let mut p = f.terms().to_vec();
    let mut rem = Vec::new();
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = &p[pos];
        let divisor = basis
            .iter()
            .find_map(|g| g.leading_monomial().and_then(|lm| lm.quotient_of(m)).map(|q| (g, q)));
        match divisor {
            Some((g, q)) => {
                p = crate::poly::axpy(field, order, &p[pos..], field.neg(*c), &q, g.terms());
                pos = 0;
            }
            None => {
                rem.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}

pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let field = f.field();
    let a = lf.quotient_of(&l).unwrap();
    let b = lg.quotient_of(&l).unwrap();
    let cf = field.inv(f.leading_coefficient()).unwrap();
    let cg = field.inv(g.leading_coefficient()).unwrap();
    f.mul_monomial(&a, cf).add_scaled(field.neg(cg), &b, g)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first) and both of Buchberger's criteria. Returns the reduced
/// basis, sorted by descending leading monomial.
pub(crate) fn groebner(ring: &Arc<Ring>, generators: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = Vec::new();
    for f in generators {
        let f = f.monic();
        if !f.is_zero() && !g.contains(&f) {
            g.push(f);
        }
    }
    if g.iter().any(|f| f.leading_monomial().unwrap().is_one()) {
        return vec![Polynomial::one(ring)];
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |pairs: &mut Vec<Pair>,
                     heap: &mut BinaryHeap<Reverse<(u32, usize)>>,
                     pending: &mut HashSet<(usize, usize)>,
                     g: &[Polynomial],
                     i: usize,
                     j: usize| {
        let lcm = g[i].leading_monomial().unwrap().lcm(g[j].leading_monomial().unwrap());
        heap.push(Reverse((lcm.degree(), pairs.len())));
        pairs.push(Pair { i, j, lcm });
        pending.insert((i, j));
    };
    for j in 0..g.len() {
        for i in 0..j {
            push_pair(&mut pairs, &mut heap, &mut pending, &g, i, j);
        }
    }

    while let Some(Reverse((_, idx))) = heap.pop() {
        let (i, j) = (pairs[idx].i, pairs[idx].j);
        pending.remove(&(i, j));
        let li = g[i].leading_monomial().unwrap();
        let lj = g[j].leading_monomial().unwrap();
        // product criterion
        if li.is_coprime(lj) {
            continue;
        }
        // chain criterion
        let lcm = &pairs[idx].lcm;
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chained = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chained {
            continue;
        }
        let h = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.leading_monomial().unwrap().is_one() {
            return vec![Polynomial::one(ring)];
        }
        g.push(h);
        let new = g.len() - 1;
        for k in 0..new {
            push_pair(&mut pairs, &mut heap, &mut pending, &g, k, new);
        }
    }
    reduce_basis(g)
}

/// Minimalizes and inter-reduces a Gröbner basis.
pub(crate) fn reduce_basis(g: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut keep: Vec<Polynomial> = Vec::new();
    for (idx, f) in g.iter().enumerate() {
        let lf = f.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(k, h)| {
            let lh = h.leading_monomial().unwrap();
            k != idx && lh.divides(lf) && (lh != lf || k < idx)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..keep.len())
        .map(|i| {
            let others: Vec<Polynomial> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            reduce(&keep[i], &others).monic()
        })
        .collect();
    if let Some(first) = out.first() {
        let order = first.ring().order();
        out.sort_by(|a, b| {
            order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
    }
    out
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, MultiDegree, Polynomial, Ring};

use super::{buchberger, Ideal};

/// Generators of `I ∩ k[keep]`, returned as an ideal of the subring on the
/// `keep` variables (in the given order).
///
/// The eliminated variables are moved to the front of a block elimination
/// order; the basis elements free of them form a Gröbner basis of the
/// elimination ideal.
pub fn elimination_ideal(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if keep.iter().any(|&k| k >= n) {
        return Err(Error::InvalidInput(format!("variable index out of range 0..{n}")));
    }
    let mut seen = vec![false; n];
    for &k in keep {
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidInput(format!("variable {k} listed twice")));
        }
    }
    let eliminate: Vec<usize> = (0..n).filter(|i| !seen[*i]).collect();
    let layout: Vec<usize> = eliminate.iter().chain(keep).copied().collect();
    // position of original variable i in the permuted ring
    let mut to_permuted = vec![0usize; n];
    for (pos, &orig) in layout.iter().enumerate() {
        to_permuted[orig] = pos;
    }
    let permuted = Ring::new(
        ring.field(),
        layout.iter().map(|&i| ring.names()[i].clone()).collect(),
        layout.iter().map(|&i| ring.grading()[i].clone()).collect(),
        ring.components(),
        MonomialOrder::Elimination {
            split: eliminate.len(),
        },
    )?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_variables(&permuted, &to_permuted))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&Ideal::new(&permuted, gens)?, permuted.order());

    let sub = ring.subring(keep)?;
    let split = eliminate.len();
    let back: Vec<usize> = (0..n).map(|p| p.saturating_sub(split)).collect();
    let kept = gb
        .polynomials()
        .iter()
        .filter(|g| g.variables().iter().all(|&v| v >= split))
        .map(|g| g.map_variables(&sub, &back))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub, kept)
}

/// Kernel of `source -> target/relations`, `T_i -> targets[i]`, computed as
/// `(relations + (T_i - f_i)) ∩ k[T]`. The result lives in `source`.
pub fn kernel_of_map(
    source: &Arc<Ring>,
    targets: &[Polynomial],
    relations: &Ideal,
) -> Result<Ideal> {
    if targets.len() != source.nvars() {
        return Err(Error::WrongCount {
            expected: source.nvars(),
            got: targets.len(),
        });
    }
    let target_ring = relations.ring();
    if source.field() != target_ring.field() {
        return Err(Error::RingMismatch);
    }
    if targets.iter().any(|t| !t.ring().compatible(target_ring)) {
        return Err(Error::RingMismatch);
    }
    if source.nvars() == 0 {
        return Ok(Ideal::zero(source));
    }
    let nx = target_ring.nvars();
    let ns = source.nvars();
    // internal names avoid clashes between the two variable sets
    let names: Vec<String> = (0..nx + ns).map(|i| format!("v{i}")).collect();
    let combined = Ring::new(
        source.field(),
        names,
        vec![MultiDegree(vec![1]); nx + ns],
        1,
        MonomialOrder::GrevLex,
    )?;
    let embed_x: Vec<usize> = (0..nx).collect();
    let mut gens = Vec::new();
    for r in relations.generators() {
        gens.push(r.map_variables(&combined, &embed_x)?);
    }
    for (i, f) in targets.iter().enumerate() {
        let fi = f.map_variables(&combined, &embed_x)?;
        gens.push(&combined.var(nx + i) - &fi);
    }
    let keep: Vec<usize> = (nx..nx + ns).collect();
    let elim = elimination_ideal(&Ideal::new(&combined, gens)?, &keep)?;
    let identity: Vec<usize> = (0..ns).collect();
    let gens = elim
        .generators()
        .iter()
        .map(|g| g.map_variables(source, &identity))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(source, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::ideal_equal;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn twisted_parametrizations() {
        let r = Ring::standard(field(), &["t", "x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x - t", "y - t^2"]).unwrap();
        let e = elimination_ideal(&i, &[1, 2]).unwrap();
        let sub = e.ring().clone();
        assert!(ideal_equal(&e, &Ideal::parse(&sub, &["y - x^2"]).unwrap()).unwrap());

        let i = Ideal::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
        let e = elimination_ideal(&i, &[1, 2]).unwrap();
        assert!(ideal_equal(&e, &Ideal::parse(e.ring(), &["y^2 - x^3"]).unwrap()).unwrap());
        // substitution check: every generator vanishes on (t^2, t^3)
        let t = Ring::standard(field(), &["t"]).unwrap();
        let images = vec![t.parse("t^2").unwrap(), t.parse("t^3").unwrap()];
        for g in e.generators() {
            assert!(g.substitute(&images).unwrap().is_zero());
        }
    }

    #[test]
    fn ideal_already_in_subring() {
        let r = Ring::standard(field(), &["t", "x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x*y - y^2", "x^3"]).unwrap();
        let e = elimination_ideal(&i, &[1, 2]).unwrap();
        let expected = Ideal::parse(e.ring(), &["x*y - y^2", "x^3"]).unwrap();
        assert!(ideal_equal(&e, &expected).unwrap());
    }

    #[test]
    fn veronese_and_trivial_kernels() {
        let r = Ring::standard(field(), &["x", "y"]).unwrap();
        let t = Ring::standard(field(), &["T1", "T2", "T3"]).unwrap();
        let f: Vec<Polynomial> = ["x^2", "x*y", "y^2"].iter().map(|s| r.parse(s).unwrap()).collect();
        let k = kernel_of_map(&t, &f, &Ideal::zero(&r)).unwrap();
        assert!(ideal_equal(&k, &Ideal::parse(&t, &["T1*T3 - T2^2"]).unwrap()).unwrap());

        let t2 = Ring::standard(field(), &["T1", "T2"]).unwrap();
        let k = kernel_of_map(&t2, &[r.var(0), r.var(1)], &Ideal::zero(&r)).unwrap();
        assert!(k.is_zero());
        let k = kernel_of_map(&t2, &[r.var(0), r.var(0)], &Ideal::zero(&r)).unwrap();
        assert!(ideal_equal(&k, &Ideal::parse(&t2, &["T1 - T2"]).unwrap()).unwrap());
    }
}

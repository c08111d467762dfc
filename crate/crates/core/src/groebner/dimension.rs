use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder};

use super::{buchberger, Ideal};

/// Variable-count ceiling for the independent-set search.
pub const MAX_DIMENSION_VARIABLES: usize = 64;

/// Krull dimension of `k[x]/J`, or `None` for the unit ideal (empty
/// variety).
///
/// Computed from the leading monomials of a grevlex basis: the dimension is
/// the largest number of variables `U` such that no leading monomial is
/// supported inside `U`.
pub fn krull_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    let n = ideal.ring().nvars();
    if n > MAX_DIMENSION_VARIABLES {
        return Err(Error::TooManyVariables {
            vars: n,
            limit: MAX_DIMENSION_VARIABLES,
        });
    }
    let gb = buchberger(ideal, MonomialOrder::GrevLex);
    if gb.is_unit() {
        return Ok(None);
    }
    Ok(Some(monomial_dimension(n, &gb.leading_monomials())))
}

/// `k[x]/J` is finite-dimensional over `k`: every variable occurs as a pure
/// power among the leading monomials (the unit ideal counts).
pub fn is_zero_dimensional(ideal: &Ideal) -> Result<bool> {
    let n = ideal.ring().nvars();
    let gb = buchberger(ideal, MonomialOrder::GrevLex);
    if gb.is_unit() {
        return Ok(true);
    }
    let mut pure = vec![false; n];
    for m in gb.leading_monomials() {
        if let Some(i) = m.pure_power_of() {
            pure[i] = true;
        }
    }
    Ok(pure.into_iter().all(|b| b))
}

/// Dimension of `k[x_1..x_n]/(monomials)`: `n` minus a minimum hitting set
/// of the supports.
pub fn monomial_dimension(n: usize, monomials: &[Monomial]) -> usize {
    assert!(n <= MAX_DIMENSION_VARIABLES);
    let mut edges: Vec<u64> = monomials
        .iter()
        .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
        .collect();
    if edges.contains(&0) {
        // a constant among the monomials: unit ideal, treat as empty
        return 0;
    }
    edges.sort_by_key(|e| e.count_ones());
    edges.dedup();
    // drop supersets of other supports
    let mut minimal: Vec<u64> = Vec::new();
    for e in edges {
        if !minimal.iter().any(|&m| m & !e == 0) {
            minimal.push(e);
        }
    }
    let mut best = n;
    hitting_set(&minimal, 0, 0, &mut best);
    n - best
}

fn hitting_set(edges: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // smallest uncovered edge
    let open = edges
        .iter()
        .filter(|&&e| e & chosen == 0)
        .min_by_key(|e| e.count_ones());
    match open {
        None => *best = size,
        Some(&e) => {
            let mut bits = e;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                hitting_set(edges, chosen | (1 << v), size + 1, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive subset search, independent of the hitting-set recursion.
    fn brute_dimension(n: usize, monomials: &[Monomial]) -> usize {
        (0u32..(1 << n))
            .filter(|&u| {
                monomials.iter().all(|m| {
                    m.support().iter().any(|&i| u & (1 << i) == 0)
                })
            })
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn hitting_set_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=7);
            let k = rng.random_range(0..=6);
            let monos: Vec<Monomial> = (0..k)
                .map(|_| {
                    let mut e: Vec<u32> = (0..n).map(|_| rng.random_range(0..3)).collect();
                    if e.iter().all(|&x| x == 0) {
                        e[0] = 1;
                    }
                    Monomial::from_exponents(e)
                })
                .collect();
            assert_eq!(monomial_dimension(n, &monos), brute_dimension(n, &monos));
        }
    }

    #[test]
    fn quadric_polynomial_ring_and_point() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::standard(f, &["x", "y", "z", "w"]).unwrap();
        let q = Ideal::parse(&r, &["x*y - z*w"]).unwrap();
        assert_eq!(krull_dimension(&q).unwrap(), Some(3));
        assert_eq!(krull_dimension(&Ideal::zero(&r)).unwrap(), Some(4));
        let s = Ring::standard(f, &["x", "y"]).unwrap();
        let m = Ideal::parse(&s, &["x", "y"]).unwrap();
        assert_eq!(krull_dimension(&m).unwrap(), Some(0));
        assert!(is_zero_dimensional(&m).unwrap());
        assert!(!is_zero_dimensional(&q).unwrap());
        let unit = Ideal::parse(&s, &["1"]).unwrap();
        assert_eq!(krull_dimension(&unit).unwrap(), None);
        assert!(is_zero_dimensional(&unit).unwrap());
    }

    #[test]
    fn variable_limit() {
        let f = PrimeField::default();
        let names: Vec<String> = (0..65).map(|i| format!("x{i}")).collect();
        let r = Ring::standard(f, &names).unwrap();
        assert!(matches!(
            krull_dimension(&Ideal::zero(&r)),
            Err(Error::TooManyVariables { vars: 65, .. })
        ));
    }
}

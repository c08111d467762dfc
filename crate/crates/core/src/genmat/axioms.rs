use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ground-set ceiling for the exhaustive check.
pub const MAX_AXIOM_GROUND: usize = 20;

/// Outcome of [`check_matroid_axioms`]; the first violation found.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomReport<T> {
    Ok,
    /// No bases at all.
    Empty,
    /// One basis strictly contains another.
    NotAntichain { smaller: Vec<T>, larger: Vec<T> },
    /// No `b' ∈ B' ∖ B` makes `(B ∖ {b}) ∪ {b'}` a basis.
    Exchange { basis: Vec<T>, other: Vec<T>, removed: T },
}

impl<T> AxiomReport<T> {
    pub fn is_ok(&self) -> bool {
        matches!(self, AxiomReport::Ok)
    }
}

fn same_set<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

/// Exhaustive check of the basis axioms on an explicit family: nonempty,
/// antichain, exchange. Elements are compared with `==`, so any type with
/// a meaningful equality works.
pub fn check_matroid_axioms<T: Clone + PartialEq + fmt::Debug>(
    ground: &[T],
    bases: &[Vec<T>],
) -> Result<AxiomReport<T>> {
    if ground.len() > MAX_AXIOM_GROUND {
        return Err(Error::InvalidInput(format!(
            "ground set of {} elements exceeds {MAX_AXIOM_GROUND}",
            ground.len()
        )));
    }
    for b in bases {
        if let Some(x) = b.iter().find(|x| !ground.contains(x)) {
            return Err(Error::InvalidInput(format!("{x:?} is not in the ground set")));
        }
        if (1..b.len()).any(|i| b[..i].contains(&b[i])) {
            return Err(Error::InvalidInput(format!("basis {b:?} repeats an element")));
        }
    }
    if bases.is_empty() {
        return Ok(AxiomReport::Empty);
    }
    for a in bases {
        for b in bases {
            if a.len() < b.len() && a.iter().all(|x| b.contains(x)) {
                return Ok(AxiomReport::NotAntichain {
                    smaller: a.clone(),
                    larger: b.clone(),
                });
            }
        }
    }
    let is_basis = |s: &[T]| bases.iter().any(|b| same_set(b, s));
    for b in bases {
        for other in bases {
            for (i, removed) in b.iter().enumerate() {
                if other.contains(removed) {
                    continue;
                }
                let ok = other.iter().filter(|y| !b.contains(y)).any(|y| {
                    let mut trial = b.clone();
                    trial[i] = y.clone();
                    is_basis(&trial)
                });
                if !ok {
                    return Ok(AxiomReport::Exchange {
                        basis: b.clone(),
                        other: other.clone(),
                        removed: removed.clone(),
                    });
                }
            }
        }
    }
    Ok(AxiomReport::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }

    #[test]
    fn uniform_matroids_pass() {
        let ground: Vec<usize> = (0..4).collect();
        assert!(check_matroid_axioms(&ground, &subsets(4, 2)).unwrap().is_ok());
        assert!(check_matroid_axioms(&ground, &[vec![1, 2]]).unwrap().is_ok());
    }

    #[test]
    fn violations() {
        let ground: Vec<usize> = (0..4).collect();
        assert_eq!(check_matroid_axioms(&ground, &[]).unwrap(), AxiomReport::Empty);
        assert!(matches!(
            check_matroid_axioms(&ground, &[vec![0], vec![0, 1]]).unwrap(),
            AxiomReport::NotAntichain { .. }
        ));
        assert_eq!(
            check_matroid_axioms(&ground, &[vec![0, 1], vec![2, 3]]).unwrap(),
            AxiomReport::Exchange {
                basis: vec![0, 1],
                other: vec![2, 3],
                removed: 0
            }
        );
        assert!(check_matroid_axioms(&ground, &[vec![0, 7]]).is_err());
    }
}

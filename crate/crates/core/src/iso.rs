//! Brute-force isomorphism testing for small quasigroups.

use crate::error::{Error, Result};
use crate::quasigroup::Quasigroup;

pub const MAX_ISOMORPHISM_ORDER: usize = 8;

/// Searches for a bijection `σ` with `σ(x·y) = σ(x)·σ(y)`.
///
/// Elements are assigned in ascending order; a partial assignment is
/// pruned as soon as some product among assigned elements disagrees.
pub fn are_isomorphic(q: &Quasigroup, r: &Quasigroup) -> Result<Option<Vec<usize>>> {
    let n = q.order();
    if n > MAX_ISOMORPHISM_ORDER || r.order() > MAX_ISOMORPHISM_ORDER {
        return Err(Error::OrderTooLarge { order: n.max(r.order()), max: MAX_ISOMORPHISM_ORDER });
    }
    if n != r.order() || fingerprint(q) != fingerprint(r) {
        return Ok(None);
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(q, r, 0, &mut sigma, &mut used).then_some(sigma))
}

// Isomorphism-invariant counts used to reject early.
fn fingerprint(q: &Quasigroup) -> (usize, usize, bool, bool) {
    let n = q.order();
    let idempotents = (0..n).filter(|&x| q.mul(x, x) == x).count();
    let distinct_squares = {
        let mut s: Vec<usize> = (0..n).map(|x| q.mul(x, x)).collect();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    (idempotents, distinct_squares, q.left_unit().is_some(), q.right_unit().is_some())
}

fn extend(q: &Quasigroup, r: &Quasigroup, i: usize, sigma: &mut [usize], used: &mut [bool]) -> bool {
    let n = q.order();
    if i == n {
        return true;
    }
    for candidate in 0..n {
        if used[candidate] {
            continue;
        }
        sigma[i] = candidate;
        if consistent(q, r, i, sigma) {
            used[candidate] = true;
            if extend(q, r, i + 1, sigma, used) {
                return true;
            }
            used[candidate] = false;
        }
    }
    sigma[i] = usize::MAX;
    false
}

// Checks every product x·y = z with x, y, z ≤ i that involves i.
fn consistent(q: &Quasigroup, r: &Quasigroup, i: usize, sigma: &[usize]) -> bool {
    (0..=i).all(|x| {
        (0..=i).all(|y| {
            let z = q.mul(x, y);
            z > i || (x != i && y != i && z != i) || sigma[z] == r.mul(sigma[x], sigma[y])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{iq3, klein, lf4, z};

    #[test]
    fn z2_with_itself() {
        assert_eq!(are_isomorphic(&z(2), &z(2)).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert_eq!(are_isomorphic(&z(4), &klein()).unwrap(), None);
        assert_eq!(are_isomorphic(&iq3(), &z(3)).unwrap(), None);
    }

    #[test]
    fn finds_relabelings() {
        let q = lf4();
        let r = q.relabel(&[3, 1, 0, 2]);
        let sigma = are_isomorphic(&q, &r).unwrap().unwrap();
        assert_eq!(q.relabel(&sigma), r);
    }

    #[test]
    fn order_cap() {
        assert_eq!(
            are_isomorphic(&z(9), &z(9)).unwrap_err(),
            Error::OrderTooLarge { order: 9, max: 8 }
        );
    }
}

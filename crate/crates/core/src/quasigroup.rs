//! Finite quasigroups stored as Latin-square multiplication tables.
//!
//! Elements are the indices `0..n`. Alongside the multiplication table the
//! two division tables are materialized at construction so that every
//! operation is a single lookup:
//!
//! * `x \ y` is the unique `z` with `x·z = y`,
//! * `y / x` is the unique `z` with `z·x = y`.

use crate::error::{Axis, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    n: usize,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    // Row = right operand: rdiv[x * n + y] = y / x.
    rdiv: Vec<usize>,
}

/// Structural summary of a quasigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub left_unit: Option<usize>,
    pub right_unit: Option<usize>,
    pub is_loop: bool,
    pub is_group: bool,
    pub is_idempotent: bool,
}

impl Quasigroup {
    /// Builds a quasigroup from a square multiplication table, where
    /// `rows[x][y] = x·y`.
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: r, len: row.len(), expected: n });
            }
        }
        Self::from_flat(n, rows.concat())
    }

    /// Builds a quasigroup from a row-major table of length `n * n`.
    pub fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if mul.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "flat table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(i) = mul.iter().position(|&v| v >= n) {
            return Err(Error::EntryOutOfRange { row: i / n, col: i % n, value: mul[i], order: n });
        }

        let mut ldiv = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let slot = &mut ldiv[x * n + mul[x * n + y]];
                if *slot != usize::MAX {
                    return Err(Error::NotLatin(Axis::Row, x));
                }
                *slot = y;
            }
        }
        let mut rdiv = vec![usize::MAX; n * n];
        for x in 0..n {
            for z in 0..n {
                let slot = &mut rdiv[x * n + mul[z * n + x]];
                if *slot != usize::MAX {
                    return Err(Error::NotLatin(Axis::Column, x));
                }
                *slot = z;
            }
        }
        Ok(Self { n, mul, ldiv, rdiv })
    }

    /// The cyclic group `Z_n` with `x·y = x + y mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_flat(n, (0..n * n).map(|i| (i / n + i % n) % n.max(1)).collect())
    }

    /// The one-element quasigroup.
    pub fn trivial() -> Self {
        Self { n: 1, mul: vec![0], ldiv: vec![0], rdiv: vec![0] }
    }

    /// Direct product with pairs `(a, b)` encoded as `a * |other| + b`.
    pub fn direct_product(&self, other: &Quasigroup) -> Quasigroup {
        let m = other.n;
        let n = self.n * m;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / m, x % m);
                let (ya, yb) = (y / m, y % m);
                mul[x * n + y] = self.mul(xa, ya) * m + other.mul(xb, yb);
            }
        }
        Self::from_flat(n, mul).expect("direct product of quasigroups is a quasigroup")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `x·y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    /// `x \ y`, the solution `z` of `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    /// `y / x`, the solution `z` of `z·x = y`.
    #[inline]
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        self.rdiv[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.mul[x * self.n..(x + 1) * self.n]
    }

    /// The multiplication table, row-major.
    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// `(a/a, a\a)`: the left and right local units of `a`.
    ///
    /// Panics if `a` is not an element.
    pub fn local_units(&self, a: usize) -> (usize, usize) {
        assert!(a < self.n, "element {a} out of range for order {}", self.n);
        (self.rdiv(a, a), self.ldiv(a, a))
    }

    /// The element whose row is the identity permutation, if any.
    pub fn left_unit(&self) -> Option<usize> {
        (0..self.n).find(|&u| (0..self.n).all(|y| self.mul(u, y) == y))
    }

    /// The element whose column is the identity permutation, if any.
    pub fn right_unit(&self) -> Option<usize> {
        (0..self.n).find(|&u| (0..self.n).all(|x| self.mul(x, u) == x))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|x| self.mul(x, x) == x)
    }

    pub fn classify(&self) -> Classification {
        let left_unit = self.left_unit();
        let right_unit = self.right_unit();
        let is_loop = left_unit.is_some() && right_unit.is_some();
        debug_assert!(!is_loop || left_unit == right_unit);
        Classification {
            left_unit,
            right_unit,
            is_loop,
            is_group: is_loop && self.is_associative(),
            is_idempotent: self.is_idempotent(),
        }
    }

    /// Transports the table along the bijection `sigma`, giving the
    /// quasigroup `σQ` with `σ(x)·σ(y) = σ(x·y)`.
    ///
    /// Panics if `sigma` is not a permutation of `0..n`.
    pub fn relabel(&self, sigma: &[usize]) -> Quasigroup {
        let n = self.n;
        assert_eq!(sigma.len(), n, "relabeling has wrong length");
        let mut mul = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[sigma[x] * n + sigma[y]] = sigma[self.mul(x, y)];
            }
        }
        Self::from_flat(n, mul).expect("relabeling must be a permutation")
    }

    /// The subquasigroup induced on a sorted element list closed under
    /// multiplication, re-indexed by position in the list.
    pub(crate) fn induced(&self, elements: &[usize]) -> Result<Quasigroup> {
        let k = elements.len();
        let pos = |v: usize| elements.binary_search(&v).ok();
        let mut mul = Vec::with_capacity(k * k);
        for &x in elements {
            for &y in elements {
                mul.push(pos(self.mul(x, y)).ok_or(Error::NotHomomorphism)?);
            }
        }
        Self::from_flat(k, mul)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{iq3, lf4};

    #[test]
    fn z2_divisions() {
        let z2 = Quasigroup::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.ldiv, vec![0, 1, 1, 0]);
        assert_eq!(z2, Quasigroup::cyclic(2).unwrap());
    }

    #[test]
    fn idempotent_order_three_rule() {
        let q = iq3();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.mul(x, y), (2 * x + 2 * y) % 3);
            }
        }
    }

    #[test]
    fn repeated_entries_rejected() {
        // Row 0 of [[0,0],[1,1]] repeats 0; its columns are permutations.
        let err = Quasigroup::new(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NotLatin(Axis::Row, 0));
        let err = Quasigroup::new(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::NotLatin(Axis::Column, 0));
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(Quasigroup::new(&[]).unwrap_err(), Error::Empty);
        assert!(matches!(
            Quasigroup::new(&[vec![0, 1], vec![1]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            Quasigroup::new(&[vec![0, 2], vec![1, 0]]),
            Err(Error::EntryOutOfRange { row: 0, col: 1, value: 2, .. })
        ));
    }

    #[test]
    fn local_units_examples() {
        assert_eq!(Quasigroup::cyclic(2).unwrap().local_units(1), (0, 0));
        assert_eq!(iq3().local_units(1), (1, 1));
        assert_eq!(lf4().local_units(1), (0, 2));
    }

    #[test]
    fn classify_examples() {
        let z3 = Quasigroup::cyclic(3).unwrap().classify();
        assert!(z3.is_loop && z3.is_group);
        assert_eq!(z3.left_unit, Some(0));

        let c = iq3().classify();
        assert_eq!((c.left_unit, c.right_unit), (None, None));
        assert!(c.is_idempotent && !c.is_group);
        let q = iq3();
        assert_eq!(q.mul(q.mul(0, 0), 1), 2);
        assert_eq!(q.mul(0, q.mul(0, 1)), 1);

        let c = lf4().classify();
        assert_eq!(c.left_unit, Some(0));
        assert_eq!(c.right_unit, None);
        assert!(!c.is_loop);
    }

    #[test]
    fn division_identities_hold() {
        for q in [iq3(), lf4(), Quasigroup::cyclic(5).unwrap()] {
            let n = q.order();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(q.mul(x, q.ldiv(x, y)), y);
                    assert_eq!(q.ldiv(x, q.mul(x, y)), y);
                    assert_eq!(q.mul(q.rdiv(y, x), x), y);
                    assert_eq!(q.rdiv(q.mul(y, x), x), y);
                }
            }
        }
    }

    #[test]
    fn direct_product_of_z2_is_klein() {
        let v = Quasigroup::cyclic(2).unwrap().direct_product(&Quasigroup::cyclic(2).unwrap());
        assert!(v.classify().is_group);
        assert!((0..4).all(|x| v.mul(x, x) == 0));
    }

    #[test]
    fn relabel_transports_products() {
        let q = lf4();
        let sigma = [2, 0, 3, 1];
        let r = q.relabel(&sigma);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.mul(sigma[x], sigma[y]), sigma[q.mul(x, y)]);
            }
        }
    }
}

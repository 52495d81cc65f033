//! Congruences given by the fibers of an endomorphism, and quotients.

use crate::error::{Error, Result};
use crate::map::{is_homomorphism, QMap};
use crate::quasigroup::Quasigroup;

/// A partition of the element set compatible with multiplication.
///
/// Classes are ordered by their smallest element and each class is sorted
/// ascending, so two equal partitions always compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    /// Builds the partition whose classes are the level sets of `labels`,
    /// validating uniformity and compatibility with `q`.
    pub fn from_labels(q: &Quasigroup, labels: &[usize]) -> Result<Self> {
        let n = q.order();
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a quasigroup of order {n}",
                labels.len()
            )));
        }
        // Renumber labels in order of first appearance; scanning elements
        // ascending orders classes by their minimum.
        let mut renumber = std::collections::HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for (x, label) in labels.iter().enumerate() {
            let next = renumber.len();
            let c = *renumber.entry(label).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        let size = classes[0].len();
        if classes.iter().any(|c| c.len() != size) {
            return Err(Error::NonUniformFibers);
        }
        let congruence = Self { class_of, classes };
        if !congruence.is_compatible(q) {
            return Err(Error::NotCompatible);
        }
        Ok(congruence)
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self) -> usize {
        self.classes[0].len()
    }

    fn is_compatible(&self, q: &Quasigroup) -> bool {
        // Products of class members must land in one class; comparing every
        // pair against the product of the class minima covers all of them.
        let n = q.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let rx = self.classes[self.class_of[x]][0];
                let ry = self.classes[self.class_of[y]][0];
                self.class_of[q.mul(x, y)] == self.class_of[q.mul(rx, ry)]
            })
        })
    }
}

/// The partition of `q` into the nonempty preimages of the endomorphism `f`.
pub fn fibers(f: &QMap, q: &Quasigroup) -> Result<Congruence> {
    if !is_homomorphism(f, q, q)? {
        return Err(Error::NotHomomorphism);
    }
    Congruence::from_labels(q, f.values())
}

/// The quotient quasigroup on the classes of `c`, with its projection.
pub fn quotient(q: &Quasigroup, c: &Congruence) -> Result<(Quasigroup, QMap)> {
    if c.class_of.len() != q.order() {
        return Err(Error::DimensionMismatch("congruence does not match quasigroup".into()));
    }
    let m = c.class_count();
    let mut table = vec![usize::MAX; m * m];
    for x in 0..q.order() {
        for y in 0..q.order() {
            let slot = &mut table[c.class_of[x] * m + c.class_of[y]];
            let class = c.class_of[q.mul(x, y)];
            if *slot != usize::MAX && *slot != class {
                return Err(Error::NotCompatible);
            }
            *slot = class;
        }
    }
    let e = Quasigroup::from_flat(m, table)?;
    let proj = QMap::new(m, c.class_of.clone())?;
    Ok((e, proj))
}

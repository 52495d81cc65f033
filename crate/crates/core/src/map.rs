//! Total maps between the element sets of two finite quasigroups.

use crate::error::{Error, Result};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMap {
    codomain_order: usize,
    values: Vec<usize>,
}

impl QMap {
    pub fn new(codomain_order: usize, values: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= codomain_order) {
            return Err(Error::MapValueOutOfRange { index, value, codomain: codomain_order });
        }
        Ok(Self { codomain_order, values })
    }

    pub fn identity(n: usize) -> Self {
        Self { codomain_order: n, values: (0..n).collect() }
    }

    /// The map `x ↦ value` from an `n`-element set into an `m`-element set.
    pub fn constant(n: usize, m: usize, value: usize) -> Result<Self> {
        Self::new(m, vec![value; n])
    }

    pub fn domain_order(&self) -> usize {
        self.values.len()
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &QMap) -> Result<QMap> {
        if other.domain_order() != self.codomain_order {
            return Err(Error::DimensionMismatch(format!(
                "cannot follow a map into {} elements by a map from {}",
                self.codomain_order,
                other.domain_order()
            )));
        }
        Ok(QMap {
            codomain_order: other.codomain_order,
            values: self.values.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    /// `f ∘ f = f`, for self-maps.
    pub fn is_idempotent(&self) -> bool {
        self.codomain_order == self.values.len()
            && self.values.iter().all(|&v| self.values[v] == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain_order];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain_order
    }

    /// The sorted, deduplicated set of values.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.codomain_order];
        for &v in &self.values {
            seen[v] = true;
        }
        (0..self.codomain_order).filter(|&v| seen[v]).collect()
    }
}

fn check_dimensions(f: &QMap, q: &Quasigroup, r: &Quasigroup) -> Result<()> {
    if f.domain_order() != q.order() || f.codomain_order() != r.order() {
        return Err(Error::DimensionMismatch(format!(
            "map {}→{} against quasigroups of orders {} and {}",
            f.domain_order(),
            f.codomain_order(),
            q.order(),
            r.order()
        )));
    }
    Ok(())
}

/// Whether `f(x·y) = f(x)·f(y)` for every pair.
pub fn is_homomorphism(f: &QMap, q: &Quasigroup, r: &Quasigroup) -> Result<bool> {
    check_dimensions(f, q, r)?;
    let n = q.order();
    Ok((0..n).all(|x| (0..n).all(|y| f.apply(q.mul(x, y)) == r.mul(f.apply(x), f.apply(y)))))
}

/// Image of a homomorphism as a subquasigroup of the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageSubquasigroup {
    /// Image elements of the codomain, ascending.
    pub elements: Vec<usize>,
    /// The image re-indexed as `0..elements.len()`.
    pub induced: Quasigroup,
    /// Embedding of `induced` back into the codomain.
    pub embed: QMap,
}

pub fn image_subquasigroup(f: &QMap, q: &Quasigroup, r: &Quasigroup) -> Result<ImageSubquasigroup> {
    if !is_homomorphism(f, q, r)? {
        return Err(Error::NotHomomorphism);
    }
    let elements = f.image();
    // Closed under · by the homomorphism law; the divisions then follow
    // from f(x\y) = f(x)\f(y) and f(y/x) = f(y)/f(x).
    debug_assert!(elements.iter().all(|&a| {
        elements.iter().all(|&b| {
            elements.binary_search(&r.ldiv(a, b)).is_ok()
                && elements.binary_search(&r.rdiv(b, a)).is_ok()
        })
    }));
    let induced = r.induced(&elements)?;
    let embed = QMap::new(r.order(), elements.clone())?;
    Ok(ImageSubquasigroup { elements, induced, embed })
}

//! Bruck systems: extensions of a set by a quasigroup.
//!
//! A system consists of a base quasigroup `E` of order `m`, a fiber size
//! `k`, and for every pair `(a, b)` of base elements a `k×k` Latin square
//! `∇_{a,b}`. Composing it gives the quasigroup on `T × E` with
//!
//! ```text
//! (α, a) ∘ (β, b) = (α ∇_{a,b} β, a·b)
//! ```
//!
//! Pairs `(t, a)` are encoded as the single index `t·m + a`, so the
//! canonical epimorphism onto `E` is reduction mod `m`.
//!
//! Decomposition runs the other way: an epimorphism `π: Q → E` partitions
//! `Q` into uniform fibers, each fiber is labeled `0..k` in ascending element
//! order, and the blocks are read off the products of fibers. For an
//! endomorphism `η` the base is the quotient by the fibers of `η`, and the
//! injective map `ι = η∘π⁻¹` splits into `(γ(a), g(a))` in the labeling.

use crate::congruence::{fibers, quotient, Congruence};
use crate::error::{Error, Result};
use crate::map::{is_homomorphism, QMap};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruckSystem {
    base: Quasigroup,
    fiber_size: usize,
    /// Row-major over `E × E`: block `(a, b)` at `a * m + b`.
    blocks: Vec<Quasigroup>,
}

/// A composed quasigroup together with its canonical epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub quasigroup: Quasigroup,
    pub projection: QMap,
}

impl BruckSystem {
    pub fn new(base: Quasigroup, fiber_size: usize, blocks: Vec<Quasigroup>) -> Result<Self> {
        let m = base.order();
        if blocks.len() != m * m {
            return Err(Error::InvalidSystem(format!(
                "{} blocks given for a base of order {m}",
                blocks.len()
            )));
        }
        if let Some(i) = blocks.iter().position(|b| b.order() != fiber_size) {
            return Err(Error::InvalidSystem(format!(
                "block ({}, {}) has order {}, expected {fiber_size}",
                i / m,
                i % m,
                blocks[i].order()
            )));
        }
        Ok(Self { base, fiber_size, blocks })
    }

    /// Builds a system from a block rule `(a, b, α, β) ↦ α ∇_{a,b} β`.
    pub fn from_fn<F>(base: Quasigroup, fiber_size: usize, rule: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize) -> usize,
    {
        let m = base.order();
        let k = fiber_size;
        let mut blocks = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let table = (0..k * k).map(|i| rule(a, b, i / k, i % k)).collect();
                let block = Quasigroup::from_flat(k, table).map_err(|e| {
                    Error::InvalidSystem(format!("block ({a}, {b}) is not a quasigroup: {e}"))
                })?;
                blocks.push(block);
            }
        }
        Ok(Self { base, fiber_size, blocks })
    }

    /// The system with every block equal to `block`.
    pub fn uniform(base: Quasigroup, block: &Quasigroup) -> Self {
        let m = base.order();
        Self { base, fiber_size: block.order(), blocks: vec![block.clone(); m * m] }
    }

    pub fn base(&self) -> &Quasigroup {
        &self.base
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    pub fn block(&self, a: usize, b: usize) -> &Quasigroup {
        &self.blocks[a * self.base.order() + b]
    }

    pub fn blocks(&self) -> &[Quasigroup] {
        &self.blocks
    }

    /// Order of the composed quasigroup, `k·m`.
    pub fn composed_order(&self) -> usize {
        self.fiber_size * self.base.order()
    }

    #[inline]
    pub fn encode(&self, t: usize, a: usize) -> usize {
        t * self.base.order() + a
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize) {
        let m = self.base.order();
        (x / m, x % m)
    }

    /// Product in the composed quasigroup, without materializing it.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (alpha, a) = self.decode(x);
        let (beta, b) = self.decode(y);
        self.encode(self.block(a, b).mul(alpha, beta), self.base.mul(a, b))
    }

    pub fn compose(&self) -> Composition {
        let n = self.composed_order();
        let table = (0..n * n).map(|i| self.mul(i / n, i % n)).collect();
        let quasigroup =
            Quasigroup::from_flat(n, table).expect("blocks are Latin, so the composition is");
        let m = self.base.order();
        let projection = QMap::new(m, (0..n).map(|x| x % m).collect()).expect("values below m");
        Composition { quasigroup, projection }
    }
}

/// Identification of the elements of `Q` with pairs `(t, a) ∈ T × E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pairs: Vec<(usize, usize)>,
    base_order: usize,
}

impl Labeling {
    /// `(t, a)` for the element `x` of `Q`.
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of `x` in the composed quasigroup.
    pub fn index(&self, x: usize) -> usize {
        let (t, a) = self.pairs[x];
        t * self.base_order + a
    }

    /// The isomorphism `Q → Q(B)` as a map of indices.
    pub fn to_composed(&self) -> QMap {
        QMap::new(self.pairs.len(), (0..self.pairs.len()).map(|x| self.index(x)).collect())
            .expect("labeling is a bijection onto T × E")
    }

    /// The inverse isomorphism `Q(B) → Q`.
    pub fn from_composed(&self) -> QMap {
        let mut values = vec![0; self.pairs.len()];
        for x in 0..self.pairs.len() {
            values[self.index(x)] = x;
        }
        QMap::new(self.pairs.len(), values).expect("labeling is a bijection onto T × E")
    }
}

/// A Bruck decomposition with respect to an epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpiDecomposition {
    pub system: BruckSystem,
    pub labeling: Labeling,
}

impl EpiDecomposition {
    /// The composed table transported back to the original element names.
    pub fn reconstruct(&self) -> Quasigroup {
        let composed = self.system.compose().quasigroup;
        let back = self.labeling.from_composed();
        let n = composed.order();
        let table = (0..n * n)
            .map(|i| back.apply(composed.mul(self.labeling.index(i / n), self.labeling.index(i % n))))
            .collect();
        Quasigroup::from_flat(n, table).expect("transport of a quasigroup")
    }
}

/// Decomposes `q` with respect to the epimorphism `pi: q → e`.
pub fn decompose_epi(q: &Quasigroup, e: &Quasigroup, pi: &QMap) -> Result<EpiDecomposition> {
    if !is_homomorphism(pi, q, e)? || !pi.is_surjective() {
        return Err(Error::NotEpimorphism);
    }
    let congruence = Congruence::from_labels(q, pi.values())?;
    // Classes are ordered by minimum, not by their value under pi; relabel
    // classes so that class a is the fiber over a.
    let m = e.order();
    let k = congruence.class_size();
    let mut fiber = vec![Vec::new(); m];
    for class in congruence.classes() {
        fiber[pi.apply(class[0])] = class.clone();
    }
    let mut pairs = vec![(0, 0); q.order()];
    for (a, members) in fiber.iter().enumerate() {
        for (t, &x) in members.iter().enumerate() {
            pairs[x] = (t, a);
        }
    }
    let system = BruckSystem::from_fn(e.clone(), k, |a, b, s, t| {
        pairs[q.mul(fiber[a][s], fiber[b][t])].0
    })?;
    Ok(EpiDecomposition { system, labeling: Labeling { pairs, base_order: m } })
}

/// A Bruck decomposition with respect to an endomorphism `η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoDecomposition {
    pub system: BruckSystem,
    pub labeling: Labeling,
    /// `γ: E → T`.
    pub gamma: Vec<usize>,
    /// `g: E → E`.
    pub g: QMap,
    /// `π: Q → E`, the class map of the fibers of `η`.
    pub projection: QMap,
    /// The endomorphism being decomposed.
    pub endomorphism: QMap,
}

impl EndoDecomposition {
    /// `ι(a)` as an index of the composed quasigroup.
    pub fn embedding(&self, a: usize) -> usize {
        self.system.encode(self.gamma[a], self.g.apply(a))
    }

    /// `γ(ab) = γ(a) ∇_{g(a),g(b)} γ(b)` for all `a, b ∈ E`.
    pub fn transfer_law_holds(&self) -> bool {
        let e = self.system.base();
        let m = e.order();
        (0..m).all(|a| {
            (0..m).all(|b| {
                let block = self.system.block(self.g.apply(a), self.g.apply(b));
                self.gamma[e.mul(a, b)] == block.mul(self.gamma[a], self.gamma[b])
            })
        })
    }
}

/// Decomposes `q` with respect to the endomorphism `eta`.
pub fn decompose_endo(q: &Quasigroup, eta: &QMap) -> Result<EndoDecomposition> {
    let congruence = fibers(eta, q)?;
    let (base, projection) = quotient(q, &congruence)?;
    let epi = decompose_epi(q, &base, &projection)?;

    let m = base.order();
    let mut gamma = Vec::with_capacity(m);
    let mut g = Vec::with_capacity(m);
    for class in congruence.classes() {
        let image = eta.apply(class[0]);
        if class.iter().any(|&x| eta.apply(x) != image) {
            return Err(Error::InconsistentDecomposition(
                "endomorphism is not constant on its own fibers".into(),
            ));
        }
        let (t, a) = epi.labeling.pair(image);
        gamma.push(t);
        g.push(a);
    }
    let d = EndoDecomposition {
        system: epi.system,
        labeling: epi.labeling,
        gamma,
        g: QMap::new(m, g)?,
        projection,
        endomorphism: eta.clone(),
    };
    if !is_homomorphism(&d.g, &base, &base)? {
        return Err(Error::InconsistentDecomposition("g is not an endomorphism".into()));
    }
    if !d.transfer_law_holds() {
        return Err(Error::InconsistentDecomposition("γ violates the transfer law".into()));
    }
    Ok(d)
}

/// Decides `η∘η = η` from the decomposition alone, as `g∘g = g` together
/// with `γ∘g = γ`, and cross-checks against `η` directly.
pub fn is_idempotent_via_decomposition(d: &EndoDecomposition) -> Result<bool> {
    let m = d.system.base_order();
    let g_idempotent = d.g.is_idempotent();
    let gamma_factors = (0..m).all(|a| d.gamma[d.g.apply(a)] == d.gamma[a]);
    let via_decomposition = g_idempotent && gamma_factors;
    let direct = d.endomorphism.is_idempotent();
    if via_decomposition != direct {
        return Err(Error::InconsistentDecomposition(format!(
            "decomposition says idempotent={via_decomposition}, endomorphism says {direct}"
        )));
    }
    Ok(via_decomposition)
}

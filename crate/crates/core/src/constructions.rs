//! Builders for Bruck systems with prescribed deviation behaviour.
//!
//! * [`build_dl_system`]: blocks chosen so that the composition lies in
//!   `D_l` with deviation `(α, a) ↦ (ε, a\a)`.
//! * [`build_adl_system`]: a group base whose `∇_{a,1}` blocks are the
//!   twisted products `(α/ε(a))∘β`, landing in `aD_l`.
//! * [`build_lf_extension`]: `(α, a)∘(β, b) = (α·ε(a)⁻¹·β, ab)` over two
//!   groups, an LF-quasigroup with left unit and left inverses.

use std::fmt;

use crate::bruck::BruckSystem;
use crate::error::{Error, Result};
use crate::map::{is_homomorphism, QMap};
use crate::quasigroup::Quasigroup;
use crate::varieties::in_dl;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: Quasigroup,
    unit: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub fn new(table: Quasigroup) -> Result<Self> {
        let c = table.classify();
        if !c.is_group {
            let reason = if c.is_loop { "not associative" } else { "no two-sided unit" };
            return Err(Error::NotGroup(reason.into()));
        }
        let unit = c.left_unit.expect("loops have a unit");
        let inverse = (0..table.order()).map(|x| table.ldiv(x, unit)).collect();
        Ok(Self { table, unit, inverse })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(Quasigroup::cyclic(n)?)
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn direct_product(&self, other: &Group) -> Group {
        Group::new(self.table.direct_product(&other.table)).expect("product of groups")
    }
}

/// How a group is specified on the command line or in a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Quasigroup),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn resolve(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic(n) => Group::cyclic(*n),
            GroupSpec::Product(a, b) => Ok(a.resolve()?.direct_product(&b.resolve()?)),
            GroupSpec::Table(q) => Group::new(q.clone()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Table(q) => write!(f, "table[{}]", q.order()),
        }
    }
}

/// `Z1..Z6`, `Z2×Z2` and `Z2×Z3`.
pub fn group_catalog() -> Vec<GroupSpec> {
    let mut catalog: Vec<GroupSpec> = (1..=6).map(GroupSpec::Cyclic).collect();
    catalog.push(GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)));
    catalog.push(GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)));
    catalog
}

fn precondition(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(message()))
    }
}

/// Bruck system over a `D_l` base `e` with blocks:
///
/// * `∇_{a, a\a} = t1` for every `a`,
/// * `∇_{u, v} = t2` for deviation values `u`, `v` with `v ≠ u\u`,
/// * `filler` (default `t1`) everywhere else.
///
/// `t1` must have a right unit `ε` which is idempotent in `t2`.
pub fn build_dl_system(
    e: &Quasigroup,
    t1: &Quasigroup,
    t2: &Quasigroup,
    filler: Option<&Quasigroup>,
) -> Result<BruckSystem> {
    precondition(in_dl(e)?, || "base quasigroup is not in D_l".into())?;
    let k = t1.order();
    precondition(t2.order() == k, || format!("fiber quasigroups have orders {k} and {}", t2.order()))?;
    let filler = filler.unwrap_or(t1);
    precondition(filler.order() == k, || format!("filler has order {}, expected {k}", filler.order()))?;
    let eps = t1.right_unit().ok_or_else(|| Error::PreconditionFailed("first fiber quasigroup has no right unit".into()))?;
    precondition(t2.mul(eps, eps) == eps, || format!("right unit {eps} is not idempotent in the second fiber quasigroup"))?;

    #[derive(Clone, Copy, PartialEq)]
    enum Slot {
        Free,
        Unit,
        Idempotent,
    }
    let m = e.order();
    let mut slots = vec![Slot::Free; m * m];
    for a in 0..m {
        slots[a * m + e.ldiv(a, a)] = Slot::Unit;
    }
    for a in 0..m {
        let u = e.ldiv(a, a);
        for b in 0..m {
            let v = e.ldiv(b, b);
            if v != e.ldiv(u, u) {
                match slots[u * m + v] {
                    Slot::Unit => return Err(Error::PatternConflict(u, v)),
                    _ => slots[u * m + v] = Slot::Idempotent,
                }
            }
        }
    }
    let blocks = slots
        .into_iter()
        .map(|s| match s {
            Slot::Unit => t1.clone(),
            Slot::Idempotent => t2.clone(),
            Slot::Free => filler.clone(),
        })
        .collect();
    BruckSystem::new(e.clone(), k, blocks)
}

/// Bruck system over a group `e` with `α ∇_{a,1} β = (α/ε(a))∘β` in `t`
/// and `filler` (default `t`) in every block `∇_{a,b}`, `b ≠ 1`.
///
/// `eps: E → T` must be a homomorphism with `ε(1)` a right unit of `t`.
pub fn build_adl_system(
    e: &Quasigroup,
    t: &Quasigroup,
    eps: &QMap,
    filler: Option<&Quasigroup>,
) -> Result<BruckSystem> {
    let group = Group::new(e.clone())
        .map_err(|err| Error::PreconditionFailed(format!("base is not a group: {err}")))?;
    precondition(eps.domain_order() == e.order() && eps.codomain_order() == t.order(), || {
        format!(
            "ε maps {} elements into {}, expected {} into {}",
            eps.domain_order(),
            eps.codomain_order(),
            e.order(),
            t.order()
        )
    })?;
    precondition(is_homomorphism(eps, e, t)?, || "ε is not a homomorphism".into())?;
    let unit = group.unit();
    let r = eps.apply(unit);
    precondition((0..t.order()).all(|alpha| t.mul(alpha, r) == alpha), || {
        format!("ε(1) = {r} is not a right unit of the fiber quasigroup")
    })?;
    let filler = filler.unwrap_or(t);
    precondition(filler.order() == t.order(), || "filler order differs from fiber order".into())?;

    BruckSystem::from_fn(e.clone(), t.order(), |a, b, alpha, beta| {
        if b == unit {
            t.mul(t.rdiv(alpha, eps.apply(a)), beta)
        } else {
            filler.mul(alpha, beta)
        }
    })
}

/// The LF-quasigroup on `T × E` with `(α, a)∘(β, b) = (α·ε(a)⁻¹·β, ab)`,
/// carrying its factors so the closed forms can be evaluated.
///
/// Pairs `(α, a)` are indexed as `α·|E| + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfExtension {
    quasigroup: Quasigroup,
    base: Group,
    fiber: Group,
    epsilon: QMap,
}

fn lf_product(base: &Group, fiber: &Group, eps: &QMap, x: usize, y: usize) -> usize {
    let m = base.order();
    let (alpha, a) = (x / m, x % m);
    let (beta, b) = (y / m, y % m);
    let t = fiber.mul(fiber.mul(alpha, fiber.inverse(eps.apply(a))), beta);
    t * m + base.mul(a, b)
}

pub fn build_lf_extension(base: &Group, fiber: &Group, eps: &QMap) -> Result<LfExtension> {
    if eps.domain_order() != base.order() || eps.codomain_order() != fiber.order() {
        return Err(Error::DimensionMismatch(format!(
            "ε maps {} elements into {}, groups have orders {} and {}",
            eps.domain_order(),
            eps.codomain_order(),
            base.order(),
            fiber.order()
        )));
    }
    if !is_homomorphism(eps, base.quasigroup(), fiber.quasigroup())? {
        return Err(Error::NotHomomorphism);
    }
    let n = base.order() * fiber.order();
    let table = (0..n * n).map(|i| lf_product(base, fiber, eps, i / n, i % n)).collect();
    Ok(LfExtension {
        quasigroup: Quasigroup::from_flat(n, table)?,
        base: base.clone(),
        fiber: fiber.clone(),
        epsilon: eps.clone(),
    })
}

impl LfExtension {
    /// Attaches factor data to an existing table, checking that the table
    /// is the one the factors produce.
    pub fn from_parts(q: Quasigroup, base: &Group, fiber: &Group, eps: &QMap) -> Result<Self> {
        let built = build_lf_extension(base, fiber, eps)?;
        if built.quasigroup != q {
            return Err(Error::NotLfInstance);
        }
        Ok(built)
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.quasigroup
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn fiber(&self) -> &Group {
        &self.fiber
    }

    pub fn epsilon(&self) -> &QMap {
        &self.epsilon
    }

    pub fn encode(&self, alpha: usize, a: usize) -> usize {
        alpha * self.base.order() + a
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.base.order(), x % self.base.order())
    }

    /// `(1, 1)`.
    pub fn left_unit(&self) -> usize {
        self.encode(self.fiber.unit(), self.base.unit())
    }

    /// `(ε(a), 1)`, the deviation of `(α, a)`.
    pub fn deviation(&self, x: usize) -> usize {
        let (_, a) = self.decode(x);
        self.encode(self.epsilon.apply(a), self.base.unit())
    }

    /// `(ε(a)·α⁻¹·ε(a)⁻¹, a⁻¹)`, verified against `x^λ∘(x∘y) = y`.
    pub fn left_inverse(&self, x: usize) -> Result<usize> {
        let (alpha, a) = self.decode(x);
        let t = &self.fiber;
        let ea = self.epsilon.apply(a);
        let lambda = self.encode(
            t.mul(t.mul(ea, t.inverse(alpha)), t.inverse(ea)),
            self.base.inverse(a),
        );
        let q = &self.quasigroup;
        if let Some(y) = (0..q.order()).find(|&y| q.mul(lambda, q.mul(x, y)) != y) {
            return Err(Error::InconsistentPredicates(format!(
                "closed-form left inverse of {x} fails at {y}"
            )));
        }
        Ok(lambda)
    }

    /// The Bruck system `α ∇_{a,b} β = α·ε(a)⁻¹·β` whose composition is
    /// this quasigroup.
    pub fn bruck_system(&self) -> BruckSystem {
        let t = &self.fiber;
        BruckSystem::from_fn(self.base.quasigroup().clone(), t.order(), |a, _b, alpha, beta| {
            t.mul(t.mul(alpha, t.inverse(self.epsilon.apply(a))), beta)
        })
        .expect("every block is an isotope of a group")
    }

    /// `φ(α, a) = (α·ε(a)⁻¹, a)` as a permutation of indices.
    pub fn isotopism(&self) -> QMap {
        let n = self.quasigroup.order();
        let t = &self.fiber;
        let values = (0..n)
            .map(|x| {
                let (alpha, a) = self.decode(x);
                self.encode(t.mul(alpha, t.inverse(self.epsilon.apply(a))), a)
            })
            .collect();
        QMap::new(n, values).expect("in range")
    }

    /// The direct product `T × E` in the same pair encoding.
    pub fn direct_product(&self) -> Quasigroup {
        self.fiber.quasigroup().direct_product(self.base.quasigroup())
    }

    /// Checks that `(φ, id, id)` is an isotopism onto `T × E`:
    /// `x∘y = φ(x)·y` for all `x, y`.
    pub fn isotopy_to_direct_product(&self) -> Result<bool> {
        let phi = self.isotopism();
        if !(phi.is_injective() && phi.is_surjective()) {
            return Err(Error::IsotopyFailed(0, 0));
        }
        let product = self.direct_product();
        let q = &self.quasigroup;
        let n = q.order();
        for x in 0..n {
            for y in 0..n {
                if q.mul(x, y) != product.mul(phi.apply(x), y) {
                    return Err(Error::IsotopyFailed(x, y));
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruck::decompose_endo;
    use crate::fixtures::{iq3, klein, lf4, z};
    use crate::varieties::{
        check_adl_system, check_dl_system, deviation_map, in_adl, is_lf, left_inverse_map,
    };

    fn zg(n: usize) -> Group {
        Group::cyclic(n).unwrap()
    }

    #[test]
    fn groups() {
        assert!(matches!(Group::new(iq3()), Err(Error::NotGroup(_))));
        assert!(matches!(Group::new(lf4()), Err(Error::NotGroup(_))));
        let g = zg(5);
        assert_eq!(g.unit(), 0);
        assert_eq!(g.inverse(2), 3);
        let spec = GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(3));
        assert_eq!(spec.resolve().unwrap().order(), 6);
        assert_eq!(spec.to_string(), "Z2xZ3");
        assert_eq!(group_catalog().len(), 8);
    }

    #[test]
    fn dl_system_over_z2() {
        let b = build_dl_system(&z(2), &z(2), &z(2), None).unwrap();
        let q = b.compose().quasigroup;
        assert!(in_dl(&q).unwrap());
        // base is a group: deviation is the constant (ε, 1), the right unit
        let e = deviation_map(&q);
        assert_eq!(e.values(), &[0, 0, 0, 0]);
        assert_eq!(q.right_unit(), Some(0));
    }

    #[test]
    fn dl_system_over_idempotent_base() {
        let b = build_dl_system(&iq3(), &z(2), &z(2), None).unwrap();
        let q = b.compose().quasigroup;
        assert_eq!(q.order(), 6);
        assert!(in_dl(&q).unwrap());
        let e = deviation_map(&q);
        for x in 0..6 {
            assert_eq!(e.apply(x), b.encode(0, x % 3));
        }
        assert!(check_dl_system(&b).unwrap().holds());
    }

    #[test]
    fn dl_system_degenerate_fiber() {
        let t = Quasigroup::trivial();
        let b = build_dl_system(&iq3(), &t, &t, None).unwrap();
        assert_eq!(b.compose().quasigroup, iq3());
    }

    #[test]
    fn dl_system_preconditions() {
        let not_dl = Quasigroup::new(&[
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![3, 0, 1, 2],
            vec![2, 3, 0, 1],
        ])
        .unwrap();
        assert!(matches!(build_dl_system(&not_dl, &z(2), &z(2), None), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_dl_system(&z(2), &iq3(), &iq3(), None), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_dl_system(&z(2), &z(2), &z(3), None), Err(Error::PreconditionFailed(_))));
        // 0 is the right unit of Z2 but 0⋆0 = 1 in the other order-2 table
        let swapped = Quasigroup::new(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(build_dl_system(&z(2), &z(2), &swapped, None), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn dl_system_with_filler() {
        let filler = Quasigroup::new(&[vec![1, 0], vec![0, 1]]).unwrap();
        // over Z2 the deviation is constant 0: only (a, 0) is prescribed
        let b = build_dl_system(&z(2), &z(2), &z(2), Some(&filler)).unwrap();
        assert_eq!(b.block(0, 1), &filler);
        assert_eq!(b.block(1, 1), &filler);
        assert_eq!(b.block(1, 0), &z(2));
        assert!(in_dl(&b.compose().quasigroup).unwrap());
    }

    #[test]
    fn adl_system_z2_identity() {
        let b = build_adl_system(&z(2), &z(2), &QMap::identity(2), None).unwrap();
        let q = b.compose().quasigroup;
        assert_eq!(q.order(), 4);
        assert!(in_adl(&q).unwrap());
        let e = deviation_map(&q);
        for x in 0..4 {
            assert_eq!(e.apply(x), b.encode(x % 2, 0));
        }
        let r = check_adl_system(&b).unwrap();
        assert!(r.holds());
        assert_eq!(r.epsilon, Some(vec![0, 1]));
        assert_eq!(b.block(0, 0), &z(2));
    }

    #[test]
    fn adl_system_constant_epsilon() {
        let b = build_adl_system(&z(3), &z(3), &QMap::constant(3, 3, 0).unwrap(), None).unwrap();
        for a in 0..3 {
            assert_eq!(b.block(a, 0), &z(3));
        }
        assert!(in_adl(&b.compose().quasigroup).unwrap());
    }

    #[test]
    fn adl_system_preconditions() {
        let eps = QMap::constant(2, 3, 0).unwrap();
        assert!(matches!(build_adl_system(&z(2), &iq3(), &eps, None), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_adl_system(&iq3(), &z(2), &QMap::constant(3, 2, 0).unwrap(), None), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_adl_system(&z(2), &z(2), &QMap::constant(2, 2, 1).unwrap(), None), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn lf_extension_over_z2() {
        let ext = build_lf_extension(&zg(2), &zg(2), &QMap::identity(2)).unwrap();
        let q = ext.quasigroup();
        assert_eq!(q, &lf4());
        assert_eq!(q.left_unit(), Some(ext.left_unit()));
        assert!(is_lf(q));
        assert!(in_adl(q).unwrap());
        assert_eq!(ext.bruck_system().compose().quasigroup, lf4());
        for x in 0..4 {
            assert_eq!(deviation_map(q).apply(x), ext.deviation(x));
            assert_eq!(ext.left_inverse(x).unwrap(), x);
        }
        assert_eq!(ext.isotopism().values(), &[0, 3, 2, 1]);
        assert!(ext.isotopy_to_direct_product().unwrap());
    }

    #[test]
    fn lf_extension_constant_is_direct_product() {
        let ext = build_lf_extension(&zg(2), &zg(2), &QMap::constant(2, 2, 0).unwrap()).unwrap();
        assert_eq!(ext.quasigroup(), &klein());
        assert_eq!(ext.isotopism(), QMap::identity(4));
    }

    #[test]
    fn lf_extension_over_z3() {
        let ext = build_lf_extension(&zg(3), &zg(3), &QMap::identity(3)).unwrap();
        let q = ext.quasigroup();
        assert_eq!(q.order(), 9);
        let c = q.classify();
        assert_eq!(c.left_unit, Some(0));
        assert_eq!(c.right_unit, None);
        assert!(!c.is_loop);
        assert!(is_lf(q));
        // (1, 2) ↦ (2, 1)
        assert_eq!(ext.left_inverse(ext.encode(1, 2)).unwrap(), ext.encode(2, 1));
        assert!(ext.isotopy_to_direct_product().unwrap());
        let lambda = left_inverse_map(q).unwrap();
        for x in 0..9 {
            assert_eq!(lambda.apply(x), ext.left_inverse(x).unwrap());
        }
    }

    #[test]
    fn lf_extension_errors() {
        let bad = QMap::constant(2, 2, 1).unwrap();
        assert_eq!(build_lf_extension(&zg(2), &zg(2), &bad).unwrap_err(), Error::NotHomomorphism);
        assert!(matches!(
            GroupSpec::Table(iq3()).resolve(),
            Err(Error::NotGroup(_))
        ));
        let err = LfExtension::from_parts(klein(), &zg(2), &zg(2), &QMap::identity(2)).unwrap_err();
        assert_eq!(err, Error::NotLfInstance);
        assert!(LfExtension::from_parts(lf4(), &zg(2), &zg(2), &QMap::identity(2)).is_ok());
    }

    #[test]
    fn lf_deviation_decomposition_size() {
        // ε injective: the deviation recovers the whole base
        let ext = build_lf_extension(&zg(3), &zg(3), &QMap::identity(3)).unwrap();
        let d = decompose_endo(ext.quasigroup(), &deviation_map(ext.quasigroup())).unwrap();
        assert_eq!(d.system.base_order(), 3);
        let eps = QMap::constant(3, 3, 0).unwrap();
        let ext = build_lf_extension(&zg(3), &zg(3), &eps).unwrap();
        let d = decompose_endo(ext.quasigroup(), &deviation_map(ext.quasigroup())).unwrap();
        assert_eq!(d.system.base_order(), 1);
    }
}

//! The left deviation `e(x) = x\x` and the varieties built on it.
//!
//! * `D_l`: quasigroups whose left deviation is an endomorphism,
//! * `aD_l`: the members of `D_l` whose deviation image is a group,
//! * LF-quasigroups: `x·yz = xy·(x\x·z)`, a subvariety of `D_l`.
//!
//! Each membership test is computed along two independent routes and the
//! routes are required to agree.

use crate::bruck::BruckSystem;
use crate::error::{Error, Result};
use crate::map::{image_subquasigroup, is_homomorphism, QMap};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationReport {
    /// `x ↦ x\x`.
    pub deviation: QMap,
    pub is_endomorphism: bool,
    /// Only evaluated when the deviation is an endomorphism.
    pub image_is_group: bool,
    pub image: Vec<usize>,
}

pub fn deviation_map(q: &Quasigroup) -> QMap {
    QMap::new(q.order(), (0..q.order()).map(|x| q.ldiv(x, x)).collect())
        .expect("divisions stay in range")
}

pub fn left_deviation(q: &Quasigroup) -> DeviationReport {
    let deviation = deviation_map(q);
    let image = deviation.image();
    let is_endomorphism = is_homomorphism(&deviation, q, q).expect("self-map");
    // An associative quasigroup is a group.
    let image_is_group = is_endomorphism
        && image_subquasigroup(&deviation, q, q)
            .expect("endomorphism")
            .induced
            .is_associative();
    DeviationReport { deviation, is_endomorphism, image_is_group, image }
}

// xy\xy = x\x · y\y
fn deviation_identity_holds(q: &Quasigroup) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = q.mul(x, y);
            q.ldiv(xy, xy) == q.mul(q.ldiv(x, x), q.ldiv(y, y))
        })
    })
}

// (x\x · y\y)·z\z = x\x ·(y\y · z\z)
fn deviation_values_associate(q: &Quasigroup) -> bool {
    let n = q.order();
    let e: Vec<usize> = (0..n).map(|x| q.ldiv(x, x)).collect();
    e.iter().all(|&ex| {
        e.iter().all(|&ey| e.iter().all(|&ez| q.mul(q.mul(ex, ey), ez) == q.mul(ex, q.mul(ey, ez))))
    })
}

pub fn in_dl(q: &Quasigroup) -> Result<bool> {
    let by_map = left_deviation(q).is_endomorphism;
    let by_identity = deviation_identity_holds(q);
    if by_map != by_identity {
        return Err(Error::InconsistentPredicates(format!(
            "D_l: endomorphism test {by_map}, identity test {by_identity}"
        )));
    }
    Ok(by_map)
}

pub fn in_adl(q: &Quasigroup) -> Result<bool> {
    let by_identities = deviation_identity_holds(q) && deviation_values_associate(q);
    let report = left_deviation(q);
    let structural = report.is_endomorphism && report.image_is_group;
    if by_identities != structural {
        return Err(Error::InconsistentPredicates(format!(
            "aD_l: identities {by_identities}, structural {structural}"
        )));
    }
    Ok(by_identities)
}

/// `x·yz = xy·(x\x·z)` over all triples.
pub fn is_lf(q: &Quasigroup) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        let ex = q.ldiv(x, x);
        (0..n).all(|y| {
            let xy = q.mul(x, y);
            (0..n).all(|z| q.mul(x, q.mul(y, z)) == q.mul(xy, q.mul(ex, z)))
        })
    })
}

/// The map `x ↦ x^λ` with `x^λ·(x·y) = y` for all `y`, if every element
/// has such a left inverse.
pub fn left_inverse_map(q: &Quasigroup) -> Option<QMap> {
    let n = q.order();
    let mut lambda = Vec::with_capacity(n);
    for x in 0..n {
        // Forced by y = 0: x^λ·(x·0) = 0.
        let candidate = q.rdiv(0, q.mul(x, 0));
        if !(0..n).all(|y| q.mul(candidate, q.mul(x, y)) == y) {
            return None;
        }
        lambda.push(candidate);
    }
    Some(QMap::new(n, lambda).expect("elements in range"))
}

pub fn has_left_inverse_property(q: &Quasigroup) -> bool {
    left_inverse_map(q).is_some()
}

/// Right units `ε(a)` of the blocks `∇_{a, a\a}`, together with whether
/// `a ↦ (ε(a), a\a)` is a homomorphism `E → Q(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlSystemReport {
    /// Every block `∇_{a, a\a}` has a right unit.
    pub has_right_units: bool,
    pub epsilon: Option<Vec<usize>>,
    /// `a ↦ (ε(a), a\a)` is a homomorphism; false when units are missing.
    pub embedding_is_homomorphism: bool,
}

impl DlSystemReport {
    pub fn holds(&self) -> bool {
        self.has_right_units && self.embedding_is_homomorphism
    }
}

fn deviation_embedding(b: &BruckSystem, epsilon: &[usize]) -> Vec<usize> {
    let e = b.base();
    (0..e.order()).map(|a| b.encode(epsilon[a], e.ldiv(a, a))).collect()
}

fn map_is_homomorphism_into_system(b: &BruckSystem, iota: &[usize]) -> bool {
    let e = b.base();
    let m = e.order();
    (0..m).all(|a| (0..m).all(|c| iota[e.mul(a, c)] == b.mul(iota[a], iota[c])))
}

/// Checks whether a Bruck system has the shape that forces `Q(B) ∈ D_l`.
///
/// When both conditions hold, the composed quasigroup lies in `D_l` with
/// deviation `(α, a) ↦ (ε(a), a\a)`; in debug builds this is verified
/// against the composed table.
pub fn check_dl_system(b: &BruckSystem) -> Result<DlSystemReport> {
    let e = b.base();
    let epsilon: Option<Vec<usize>> =
        (0..e.order()).map(|a| b.block(a, e.ldiv(a, a)).right_unit()).collect();
    let embedding_is_homomorphism = epsilon
        .as_deref()
        .is_some_and(|eps| map_is_homomorphism_into_system(b, &deviation_embedding(b, eps)));
    let report = DlSystemReport {
        has_right_units: epsilon.is_some(),
        epsilon,
        embedding_is_homomorphism,
    };
    if cfg!(debug_assertions) && report.holds() {
        let eps = report.epsilon.as_deref().unwrap();
        let q = b.compose().quasigroup;
        if !in_dl(&q)? {
            return Err(Error::InconsistentPredicates(
                "system conditions hold but the composition is not in D_l".into(),
            ));
        }
        let deviation = deviation_map(&q);
        let m = b.base_order();
        if (0..q.order()).any(|x| deviation.apply(x) != b.encode(eps[x % m], e.ldiv(x % m, x % m))) {
            return Err(Error::InconsistentPredicates(
                "deviation of the composition differs from (ε(a), a\\a)".into(),
            ));
        }
    }
    Ok(report)
}

/// Whether `a ↦ (ε(a), a\a)` is injective, i.e. whether the system is
/// itself the Bruck decomposition of `Q(B)` with respect to its deviation.
pub fn deviation_embedding_is_injective(b: &BruckSystem) -> Result<bool> {
    let report = check_dl_system(b)?;
    let Some(eps) = report.epsilon.as_deref().filter(|_| report.holds()) else {
        return Err(Error::PreconditionFailed(
            "system does not have right units with a homomorphic deviation embedding".into(),
        ));
    };
    let iota = deviation_embedding(b, eps);
    let mut sorted = iota.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == iota.len();
    if cfg!(debug_assertions) {
        let q = b.compose().quasigroup;
        let classes = deviation_map(&q).image().len();
        if (classes == b.base_order()) != injective || classes > b.base_order() {
            return Err(Error::InconsistentPredicates(format!(
                "deviation has {classes} fibers over a base of order {}",
                b.base_order()
            )));
        }
    }
    Ok(injective)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdlSystemReport {
    pub base_is_group: bool,
    /// Every block `∇_{a, 1}` has a right unit `ε(a)`.
    pub has_right_units: bool,
    pub epsilon: Option<Vec<usize>>,
    /// `ε` is a homomorphism from `E` into the block `∇_{1,1}`.
    pub epsilon_is_homomorphism: bool,
}

impl AdlSystemReport {
    pub fn holds(&self) -> bool {
        self.base_is_group && self.has_right_units && self.epsilon_is_homomorphism
    }
}

/// Checks whether a Bruck system has the shape that forces `Q(B) ∈ aD_l`:
/// a group base with unit 1, right units `ε(a)` in every `∇_{a,1}`, and
/// `ε` a homomorphism into `∇_{1,1}`.
pub fn check_adl_system(b: &BruckSystem) -> Result<AdlSystemReport> {
    let e = b.base();
    let m = e.order();
    let unit = e.classify().is_group.then(|| e.left_unit()).flatten();
    let epsilon: Option<Vec<usize>> =
        unit.and_then(|u| (0..m).map(|a| b.block(a, u).right_unit()).collect());
    let epsilon_is_homomorphism = match (unit, epsilon.as_deref()) {
        (Some(u), Some(eps)) => {
            let core = b.block(u, u);
            (0..m).all(|a| (0..m).all(|c| eps[e.mul(a, c)] == core.mul(eps[a], eps[c])))
        }
        _ => false,
    };
    let report = AdlSystemReport {
        base_is_group: unit.is_some(),
        has_right_units: epsilon.is_some(),
        epsilon,
        epsilon_is_homomorphism,
    };
    if cfg!(debug_assertions) && report.holds() {
        let (u, eps) = (unit.unwrap(), report.epsilon.as_deref().unwrap());
        let q = b.compose().quasigroup;
        if !in_adl(&q)? {
            return Err(Error::InconsistentPredicates(
                "system conditions hold but the composition is not in aD_l".into(),
            ));
        }
        let deviation = deviation_map(&q);
        if (0..q.order()).any(|x| deviation.apply(x) != b.encode(eps[x % m], u)) {
            return Err(Error::InconsistentPredicates(
                "deviation of the composition differs from (ε(a), 1)".into(),
            ));
        }
    }
    Ok(report)
}

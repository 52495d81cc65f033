//! Exhaustive verification batteries.
//!
//! Each function returns the list of violations it found; an empty list
//! means every check passed. Errors are reserved for malformed input.

use crate::bruck::{decompose_endo, decompose_epi, is_idempotent_via_decomposition, BruckSystem};
use crate::congruence::{fibers, quotient};
use crate::constructions::{build_adl_system, build_lf_extension, Group, GroupSpec, LfExtension};
use crate::enumerate::{enumerate_endomorphisms, enumerate_homomorphisms};
use crate::error::{Error, Result};
use crate::map::QMap;
use crate::quasigroup::Quasigroup;
use crate::varieties::{
    check_dl_system, deviation_embedding_is_injective, deviation_map, in_adl, in_dl, is_lf,
    left_inverse_map,
};

/// `η∘η = η` against `g∘g = g ∧ γ∘g = γ` for every endomorphism of `q`.
pub fn idempotence_violations(q: &Quasigroup) -> Result<Vec<String>> {
    let mut violations = Vec::new();
    for eta in enumerate_endomorphisms(q)? {
        let d = decompose_endo(q, &eta)?;
        let direct = eta.then(&eta)? == eta;
        let m = d.system.base_order();
        let via_parts = d.g.then(&d.g)? == d.g && (0..m).all(|a| d.gamma[d.g.apply(a)] == d.gamma[a]);
        if direct != via_parts {
            violations.push(format!("η={:?}: η∘η=η is {direct}, decomposition says {via_parts}", eta.values()));
        }
        match is_idempotent_via_decomposition(&d) {
            Ok(v) if v == direct => {}
            Ok(v) => violations.push(format!("η={:?}: reported {v}, expected {direct}", eta.values())),
            Err(e) => violations.push(format!("η={:?}: {e}", eta.values())),
        }
        if !d.transfer_law_holds() {
            violations.push(format!("η={:?}: γ violates the transfer law", eta.values()));
        }
    }
    Ok(violations)
}

/// For `q ∈ D_l`: the deviation decomposition has right units and a
/// homomorphic embedding, and reproduces the deviation as `(ε(a), a\a)`.
/// For `q ∉ D_l`: decomposing along the deviation is rejected.
pub fn deviation_decomposition_violations(q: &Quasigroup) -> Result<Vec<String>> {
    let e = deviation_map(q);
    if !in_dl(q)? {
        return Ok(match decompose_endo(q, &e) {
            Err(Error::NotHomomorphism) => Vec::new(),
            Err(other) => vec![format!("expected NotHomomorphism, got {other}")],
            Ok(_) => vec!["deviation decomposition accepted outside D_l".into()],
        });
    }
    let mut violations = Vec::new();
    let d = decompose_endo(q, &e)?;
    let report = check_dl_system(&d.system)?;
    if !report.has_right_units {
        violations.push("some block ∇_{a,a\\a} lacks a right unit".into());
    }
    if !report.embedding_is_homomorphism {
        violations.push("a ↦ (ε(a), a\\a) is not a homomorphism".into());
    }
    if let Some(eps) = &report.epsilon {
        let base = d.system.base();
        for x in 0..q.order() {
            let a = d.projection.apply(x);
            let expected = d.system.encode(eps[a], base.ldiv(a, a));
            if d.labeling.index(e.apply(x)) != expected {
                violations.push(format!("deviation of {x} is not (ε(a), a\\a)"));
            }
        }
    }
    Ok(violations)
}

/// For every endomorphism, composing the decomposition along its fibers
/// reproduces `q` entry for entry.
pub fn round_trip_violations(q: &Quasigroup) -> Result<Vec<String>> {
    let mut violations = Vec::new();
    for eta in enumerate_endomorphisms(q)? {
        let (base, projection) = quotient(q, &fibers(&eta, q)?)?;
        let d = decompose_epi(q, &base, &projection)?;
        if d.reconstruct() != *q {
            violations.push(format!("η={:?}: reconstruction differs", eta.values()));
        }
        let composed = d.system.compose();
        let to = d.labeling.to_composed();
        for x in 0..q.order() {
            if composed.projection.apply(to.apply(x)) != projection.apply(x) {
                violations.push(format!("η={:?}: canonical epimorphism disagrees at {x}", eta.values()));
            }
        }
    }
    Ok(violations)
}

/// Dual characterization of `aD_l`; `in_adl` errors on disagreement.
pub fn adl_violations(q: &Quasigroup) -> Vec<String> {
    match in_adl(q) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    }
}

/// Properties of one LF extension: LF identity, left unit `(1,1)`,
/// closed-form left inverses, `aD_l` membership, deviation `(ε(a), 1)`,
/// and the isotopism onto `T × E`.
pub fn lf_extension_violations(ext: &LfExtension) -> Vec<String> {
    let q = ext.quasigroup();
    let n = q.order();
    let mut violations = Vec::new();
    if !is_lf(q) {
        violations.push("LF identity fails".into());
    }
    let unit = ext.left_unit();
    if !(0..n).all(|y| q.mul(unit, y) == y) {
        violations.push("(1,1) is not a left unit".into());
    }
    let lambda = left_inverse_map(q);
    if lambda.is_none() {
        violations.push("left inverse property fails".into());
    }
    for x in 0..n {
        match ext.left_inverse(x) {
            Ok(l) if lambda.as_ref().is_none_or(|f| f.apply(x) == l) => {}
            Ok(_) => violations.push(format!("closed-form left inverse of {x} disagrees with search")),
            Err(e) => violations.push(e.to_string()),
        }
    }
    match in_adl(q) {
        Ok(true) => {}
        Ok(false) => violations.push("not in aD_l".into()),
        Err(e) => violations.push(e.to_string()),
    }
    let e = deviation_map(q);
    if (0..n).any(|x| e.apply(x) != ext.deviation(x)) {
        violations.push("deviation is not (ε(a), 1)".into());
    }
    if let Err(e) = ext.isotopy_to_direct_product() {
        violations.push(e.to_string());
    }
    violations
}

/// Whether decomposing `q` along its deviation recovers a base of the
/// given order exactly when `epsilon` is injective.
fn recovery_violation(q: &Quasigroup, base_order: usize, epsilon: &QMap, label: &str) -> Result<Option<String>> {
    let d = decompose_endo(q, &deviation_map(q))?;
    let recovered = d.system.base_order() == base_order;
    let expected_classes = epsilon.image().len();
    Ok(if recovered != epsilon.is_injective() || d.system.base_order() != expected_classes {
        Some(format!(
            "{label}: deviation has {} classes over |E| = {base_order}, ε injective = {}",
            d.system.base_order(),
            epsilon.is_injective()
        ))
    } else {
        None
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BatteryReport {
    pub instances: usize,
    pub violations: Vec<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every homomorphism between every pair of groups, resolved.
pub fn group_pairs(specs: &[GroupSpec]) -> Result<Vec<(String, Group, String, Group)>> {
    let mut out = Vec::new();
    for e in specs {
        for t in specs {
            out.push((e.to_string(), e.resolve()?, t.to_string(), t.resolve()?));
        }
    }
    Ok(out)
}

/// LF extensions for all `(E, T, ε)` over the given groups.
pub fn lf_battery(specs: &[GroupSpec]) -> Result<BatteryReport> {
    let mut report = BatteryReport::default();
    for (en, e, tn, t) in group_pairs(specs)? {
        for eps in enumerate_homomorphisms(e.quasigroup(), t.quasigroup()) {
            let ext = build_lf_extension(&e, &t, &eps)?;
            let label = format!("E={en} T={tn} ε={:?}", eps.values());
            report.instances += 1;
            report.violations.extend(lf_extension_violations(&ext).into_iter().map(|v| format!("{label}: {v}")));
        }
    }
    Ok(report)
}

/// Deviation recovery for the twisted-product and LF families over all
/// `(E, T, ε)` drawn from the given groups.
pub fn injectivity_battery(specs: &[GroupSpec]) -> Result<BatteryReport> {
    let mut report = BatteryReport::default();
    for (en, e, tn, t) in group_pairs(specs)? {
        for eps in enumerate_homomorphisms(e.quasigroup(), t.quasigroup()) {
            let label = format!("E={en} T={tn} ε={:?}", eps.values());

            let adl = build_adl_system(e.quasigroup(), t.quasigroup(), &eps, None)?;
            report.instances += 1;
            let q = adl.compose().quasigroup;
            if let Some(v) = recovery_violation(&q, e.order(), &eps, &format!("twisted {label}"))? {
                report.violations.push(v);
            }
            check_system_injectivity(&adl, &eps, &format!("twisted {label}"), &mut report)?;

            let lf = build_lf_extension(&e, &t, &eps)?;
            report.instances += 1;
            if let Some(v) = recovery_violation(lf.quasigroup(), e.order(), &eps, &format!("LF {label}"))? {
                report.violations.push(v);
            }
            check_system_injectivity(&lf.bruck_system(), &eps, &format!("LF {label}"), &mut report)?;
        }
    }
    Ok(report)
}

fn check_system_injectivity(b: &BruckSystem, eps: &QMap, label: &str, report: &mut BatteryReport) -> Result<()> {
    match deviation_embedding_is_injective(b) {
        Ok(inj) if inj == eps.is_injective() => {}
        Ok(inj) => report.violations.push(format!("{label}: embedding injective = {inj}, ε injective = {}", eps.is_injective())),
        Err(e) => report.violations.push(format!("{label}: {e}")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{iq3, lf4, z};

    #[test]
    fn small_batteries_pass() {
        for q in [z(3), iq3(), lf4()] {
            assert!(idempotence_violations(&q).unwrap().is_empty());
            assert!(deviation_decomposition_violations(&q).unwrap().is_empty());
            assert!(round_trip_violations(&q).unwrap().is_empty());
            assert!(adl_violations(&q).is_empty());
        }
    }

    #[test]
    fn lf_battery_over_two_groups() {
        let r = lf_battery(&[GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)]).unwrap();
        // homs: Z2→Z2: 2, Z2→Z3: 1, Z3→Z2: 1, Z3→Z3: 3
        assert_eq!(r.instances, 7);
        assert!(r.passed(), "{:?}", r.violations);
        let r = injectivity_battery(&[GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)]).unwrap();
        assert_eq!(r.instances, 14);
        assert!(r.passed(), "{:?}", r.violations);
    }
}

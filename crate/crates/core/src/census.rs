//! Counts of labeled quasigroups of a given order satisfying each predicate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::enumerate::{par_fold_latin_squares, to_quasigroup, EnumerationOptions};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::quasigroup::Quasigroup;
use crate::varieties::{has_left_inverse_property, in_adl, in_dl, is_lf};

/// Largest order for which `--up-to-iso` deduplication is offered.
pub const MAX_ISO_CENSUS_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Loop,
    Group,
    Idempotent,
    Dl,
    ADl,
    Lf,
    Lip,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::Loop,
        Predicate::Group,
        Predicate::Idempotent,
        Predicate::Dl,
        Predicate::ADl,
        Predicate::Lf,
        Predicate::Lip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Loop => "loop",
            Predicate::Group => "group",
            Predicate::Idempotent => "idempotent",
            Predicate::Dl => "Dl",
            Predicate::ADl => "aDl",
            Predicate::Lf => "LF",
            Predicate::Lip => "LIP",
        }
    }

    pub fn evaluate(self, q: &Quasigroup) -> Result<bool> {
        Ok(match self {
            Predicate::Loop => q.classify().is_loop,
            Predicate::Group => q.classify().is_group,
            Predicate::Idempotent => q.is_idempotent(),
            Predicate::Dl => in_dl(q)?,
            Predicate::ADl => in_adl(q)?,
            Predicate::Lf => is_lf(q),
            Predicate::Lip => has_left_inverse_property(q),
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::PreconditionFailed(format!("unknown predicate {s:?}")))
    }
}

/// The `props` flag line: `loop=.. group=.. idempotent=.. Dl=.. aDl=.. LF=.. LIP=..`.
pub fn property_line(q: &Quasigroup) -> Result<String> {
    let flags = Predicate::ALL
        .into_iter()
        .map(|p| Ok(format!("{}={}", p.name(), u8::from(p.evaluate(q)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(flags.join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub order: usize,
    pub total: u64,
    pub counts: BTreeMap<Predicate, u64>,
    /// Counts are of isomorphism classes rather than labeled tables.
    pub up_to_iso: bool,
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "total={}", self.total)?;
        for (p, c) in &self.counts {
            write!(f, " {p}={c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusOptions {
    pub threads: usize,
    pub up_to_iso: bool,
    pub allow_order_six: bool,
}

fn evaluate_all(q: &Quasigroup, predicates: &[Predicate]) -> Result<Vec<bool>> {
    predicates.iter().map(|p| p.evaluate(q)).collect()
}

pub fn census(n: usize, predicates: &[Predicate], opts: CensusOptions) -> Result<CensusRow> {
    let mut predicates = predicates.to_vec();
    predicates.sort();
    predicates.dedup();
    if opts.up_to_iso {
        return iso_census(n, &predicates);
    }

    type Acc = Result<(u64, Vec<u64>)>;
    let k = predicates.len();
    let enumeration = EnumerationOptions { allow_order_six: opts.allow_order_six, ..Default::default() };
    let (total, counts) = par_fold_latin_squares(
        n,
        enumeration,
        opts.threads.max(1),
        || -> Acc { Ok((0, vec![0; k])) },
        |acc: &mut Acc, g: &[u8]| {
            if let Ok((total, counts)) = acc {
                let q = to_quasigroup(n, g);
                match evaluate_all(&q, &predicates) {
                    Ok(flags) => {
                        *total += 1;
                        for (c, f) in counts.iter_mut().zip(flags) {
                            *c += u64::from(f);
                        }
                    }
                    Err(e) => *acc = Err(e),
                }
            }
        },
        |a: Acc, b: Acc| {
            let (ta, ca) = a?;
            let (tb, cb) = b?;
            Ok((ta + tb, ca.iter().zip(&cb).map(|(x, y)| x + y).collect()))
        },
    )??;
    Ok(CensusRow {
        order: n,
        total,
        counts: predicates.into_iter().zip(counts).collect(),
        up_to_iso: false,
    })
}

fn iso_census(n: usize, predicates: &[Predicate]) -> Result<CensusRow> {
    if n > MAX_ISO_CENSUS_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ISO_CENSUS_ORDER });
    }
    let mut representatives: Vec<Quasigroup> = Vec::new();
    let mut failure = None;
    crate::enumerate::enumerate_latin_squares(n, |g| {
        if failure.is_some() {
            return;
        }
        let q = to_quasigroup(n, g);
        let mut known = false;
        for r in &representatives {
            match are_isomorphic(&q, r) {
                Ok(Some(_)) => {
                    known = true;
                    break;
                }
                Ok(None) => {}
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        if !known {
            representatives.push(q);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut counts: BTreeMap<Predicate, u64> = predicates.iter().map(|&p| (p, 0)).collect();
    for r in &representatives {
        for &p in predicates {
            if p.evaluate(r)? {
                *counts.get_mut(&p).unwrap() += 1;
            }
        }
    }
    Ok(CensusRow { order: n, total: representatives.len() as u64, counts, up_to_iso: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_quasigroups;
    use crate::fixtures::{iq3, lf4};

    fn row(n: usize) -> CensusRow {
        census(n, &Predicate::ALL, CensusOptions::default()).unwrap()
    }

    #[test]
    fn trivial_order() {
        let r = row(1);
        assert_eq!(r.total, 1);
        assert!(r.counts.values().all(|&c| c == 1));
    }

    #[test]
    fn order_two() {
        // [[0,1],[1,0]] has unit 0 and [[1,0],[0,1]] has unit 1: both are Z2.
        let r = row(2);
        assert_eq!(r.total, 2);
        assert_eq!(r.counts[&Predicate::Group], 2);
    }

    #[test]
    fn order_three_matches_direct_scan() {
        let r = row(3);
        assert_eq!(r.total, 12);
        let qs = all_quasigroups(3).unwrap();
        for p in Predicate::ALL {
            let scanned = qs.iter().filter(|q| p.evaluate(q).unwrap()).count() as u64;
            assert_eq!(r.counts[&p], scanned, "{p}");
        }
        assert_eq!(r.counts[&Predicate::Idempotent], 1);
    }

    #[test]
    fn monotone_counts() {
        for n in 1..=4 {
            let r = row(n);
            let c = |p| r.counts[&p];
            assert!(c(Predicate::Group) <= c(Predicate::Loop));
            assert!(c(Predicate::Loop) <= r.total);
            assert!(c(Predicate::Lf) <= c(Predicate::Dl));
            assert!(c(Predicate::ADl) <= c(Predicate::Dl));
            assert!(c(Predicate::Group) <= c(Predicate::ADl));
        }
    }

    #[test]
    fn parallel_census_is_deterministic() {
        let serial = row(4);
        for threads in [2, 4] {
            let opts = CensusOptions { threads, ..Default::default() };
            assert_eq!(census(4, &Predicate::ALL, opts).unwrap(), serial);
        }
    }

    #[test]
    fn up_to_isomorphism() {
        let opts = CensusOptions { up_to_iso: true, ..Default::default() };
        let r = census(3, &[Predicate::Group], opts).unwrap();
        // Z3, the idempotent one, and the rest
        assert_eq!(r.counts[&Predicate::Group], 1);
        assert!(r.total >= 2);
        assert!(matches!(census(5, &[], opts), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn flag_lines() {
        assert_eq!(
            property_line(&lf4()).unwrap(),
            "loop=0 group=0 idempotent=0 Dl=1 aDl=1 LF=1 LIP=1"
        );
        assert_eq!(
            property_line(&iq3()).unwrap(),
            "loop=0 group=0 idempotent=1 Dl=1 aDl=0 LF=1 LIP=1"
        );
    }

    #[test]
    fn predicate_names_parse() {
        for p in Predicate::ALL {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!("bogus".parse::<Predicate>().is_err());
    }
}

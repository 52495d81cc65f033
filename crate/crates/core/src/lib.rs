//! Computational toolkit for finite quasigroups.
//!
//! Quasigroups are Latin-square tables over `0..n` with both divisions
//! precomputed. On top of that the crate provides Bruck composition and
//! decomposition along epimorphisms and endomorphisms, membership tests
//! for the deviation varieties `D_l` and `aD_l` and for LF-quasigroups,
//! builders for families with prescribed deviation, and an exhaustive
//! enumerator used to verify all of it at small orders.

pub mod battery;
pub mod bruck;
pub mod census;
pub mod cli;
pub mod congruence;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod iso;
pub mod map;
pub mod quasigroup;
pub mod sample;
pub mod varieties;

pub use bruck::{
    decompose_endo, decompose_epi, is_idempotent_via_decomposition, BruckSystem, Composition,
    EndoDecomposition, EpiDecomposition, Labeling,
};
pub use census::{census, CensusOptions, CensusRow, Predicate};
pub use congruence::{fibers, quotient, Congruence};
pub use constructions::{
    build_adl_system, build_dl_system, build_lf_extension, group_catalog, Group, GroupSpec,
    LfExtension,
};
pub use enumerate::{enumerate_endomorphisms, enumerate_homomorphisms, enumerate_latin_squares};
pub use error::{Axis, Error, Result};
pub use iso::are_isomorphic;
pub use map::{image_subquasigroup, is_homomorphism, ImageSubquasigroup, QMap};
pub use quasigroup::{Classification, Quasigroup};
pub use varieties::{
    check_adl_system, check_dl_system, deviation_embedding_is_injective, deviation_map,
    has_left_inverse_property, in_adl, in_dl, is_lf, left_deviation, left_inverse_map,
    AdlSystemReport, DeviationReport, DlSystemReport,
};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::quasigroup::Quasigroup;

    pub fn z(n: usize) -> Quasigroup {
        Quasigroup::cyclic(n).unwrap()
    }

    pub fn klein() -> Quasigroup {
        z(2).direct_product(&z(2))
    }

    /// `x·y = 2x + 2y mod 3`.
    pub fn iq3() -> Quasigroup {
        Quasigroup::new(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    /// `(α, a)∘(β, b) = (α + a + β, a + b)` over `Z2 × Z2`, index `2α + a`.
    pub fn lf4() -> Quasigroup {
        Quasigroup::new(&[vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![2, 3, 0, 1], vec![1, 0, 3, 2]])
            .unwrap()
    }
}

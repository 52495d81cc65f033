//! Seeded random quasigroups and Bruck systems for fuzzing.
//!
//! Not uniform over Latin squares: tables are random isotopes of a cyclic
//! group (independent uniform row, column and symbol permutations).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bruck::BruckSystem;
use crate::quasigroup::Quasigroup;

pub fn random_quasigroup<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Quasigroup {
    let mut perm = || {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    let (rows, cols, symbols) = (perm(), perm(), perm());
    let table = (0..n * n).map(|i| symbols[(rows[i / n] + cols[i % n]) % n]).collect();
    Quasigroup::from_flat(n, table).expect("isotope of a cyclic group")
}

pub fn random_bruck_system<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> BruckSystem {
    let base = random_quasigroup(m, rng);
    let blocks = (0..m * m).map(|_| random_quasigroup(k, rng)).collect();
    BruckSystem::new(base, k, blocks).expect("blocks of the requested order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn seeded_and_reproducible() {
        let a = random_quasigroup(6, &mut StdRng::seed_from_u64(7));
        let b = random_quasigroup(6, &mut StdRng::seed_from_u64(7));
        assert_eq!(a, b);
        let s = random_bruck_system(3, 2, &mut StdRng::seed_from_u64(1));
        assert_eq!(s.compose().quasigroup.order(), 6);
    }
}

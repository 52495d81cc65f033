//! Exhaustive enumeration of labeled Latin squares and of homomorphisms.
//!
//! Latin squares are filled cell by cell with per-row and per-column
//! bitmasks of used symbols. The parallel driver splits the search forest
//! at completed second rows, so the partition (and therefore every sum)
//! does not depend on the number of workers.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::map::QMap;
use crate::quasigroup::Quasigroup;

pub const MAX_LATIN_ORDER: usize = 5;
pub const MAX_LATIN_ORDER_OVERRIDE: usize = 6;
pub const MAX_ENDOMORPHISM_ORDER: usize = 8;

/// Order in which cells are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillOrder {
    #[default]
    RowMajor,
    ColumnMajor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    pub fill_order: FillOrder,
    /// Permits order 6 (812 851 200 squares).
    pub allow_order_six: bool,
}

fn check_order(n: usize, opts: &EnumerationOptions) -> Result<()> {
    let max = if opts.allow_order_six { MAX_LATIN_ORDER_OVERRIDE } else { MAX_LATIN_ORDER };
    if n == 0 || n > max {
        return Err(Error::OrderTooLarge { order: n, max });
    }
    Ok(())
}

struct Filler {
    n: usize,
    cells: Vec<(usize, usize)>,
    grid: Vec<u8>,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
}

impl Filler {
    fn new(n: usize, order: FillOrder) -> Self {
        let cells = match order {
            FillOrder::RowMajor => (0..n * n).map(|i| (i / n, i % n)).collect(),
            FillOrder::ColumnMajor => (0..n * n).map(|i| (i % n, i / n)).collect(),
        };
        Self { n, cells, grid: vec![0; n * n], row_used: vec![0; n], col_used: vec![0; n] }
    }

    fn place(&mut self, r: usize, c: usize, s: u8) {
        self.grid[r * self.n + c] = s;
        self.row_used[r] |= 1 << s;
        self.col_used[c] |= 1 << s;
    }

    fn unplace(&mut self, r: usize, c: usize, s: u8) {
        self.row_used[r] &= !(1 << s);
        self.col_used[c] &= !(1 << s);
    }

    /// Fills cells `pos..stop`, calling `visit` on each completed prefix.
    fn fill<F: FnMut(&[u8])>(&mut self, pos: usize, stop: usize, visit: &mut F) -> u64 {
        if pos == stop {
            visit(&self.grid);
            return 1;
        }
        let (r, c) = self.cells[pos];
        let full: u16 = (1 << self.n) - 1;
        let mut free = full & !(self.row_used[r] | self.col_used[c]);
        let mut count = 0;
        while free != 0 {
            let s = free.trailing_zeros() as u8;
            free &= free - 1;
            self.place(r, c, s);
            count += self.fill(pos + 1, stop, visit);
            self.unplace(r, c, s);
        }
        count
    }
}

/// Visits every labeled Latin square of order `n` exactly once, as a
/// row-major table, and returns how many there are.
pub fn enumerate_latin_squares<F: FnMut(&[u8])>(n: usize, visitor: F) -> Result<u64> {
    enumerate_latin_squares_with(n, EnumerationOptions::default(), visitor)
}

pub fn enumerate_latin_squares_with<F: FnMut(&[u8])>(
    n: usize,
    opts: EnumerationOptions,
    mut visitor: F,
) -> Result<u64> {
    check_order(n, &opts)?;
    let mut filler = Filler::new(n, opts.fill_order);
    Ok(filler.fill(0, n * n, &mut visitor))
}

pub fn count_latin_squares(n: usize, opts: EnumerationOptions) -> Result<u64> {
    enumerate_latin_squares_with(n, opts, |_| {})
}

/// Completed first-two-row prefixes in row-major order.
fn second_row_prefixes(n: usize) -> Vec<Vec<u8>> {
    let mut prefixes = Vec::new();
    let mut filler = Filler::new(n, FillOrder::RowMajor);
    filler.fill(0, 2 * n, &mut |g: &[u8]| prefixes.push(g[..2 * n].to_vec()));
    prefixes
}

/// Folds every Latin square of order `n` on up to `threads` workers.
///
/// Each worker starts from `init()`, folds squares with `fold`, and the
/// partial results are combined with `merge`, which must be commutative
/// and associative for the result to be independent of `threads`.
pub fn par_fold_latin_squares<T, I, F, M>(
    n: usize,
    opts: EnumerationOptions,
    threads: usize,
    init: I,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u8]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    check_order(n, &opts)?;
    if threads <= 1 || n < 3 {
        let mut acc = init();
        enumerate_latin_squares_with(n, opts, |g| fold(&mut acc, g))?;
        return Ok(acc);
    }
    let prefixes = second_row_prefixes(n);
    let run = || {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut filler = Filler::new(n, FillOrder::RowMajor);
                for (i, &s) in prefix.iter().enumerate() {
                    filler.place(i / n, i % n, s);
                }
                let mut acc = init();
                filler.fill(2 * n, n * n, &mut |g: &[u8]| fold(&mut acc, g));
                acc
            })
            .reduce(&init, &merge)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::PreconditionFailed(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(run))
}

/// Worker count from `QGKIT_THREADS`; absent means one.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var("QGKIT_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(Error::PreconditionFailed(format!(
                "QGKIT_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// All homomorphisms `q → r`, in lexicographic order of their values.
///
/// Values are assigned to `0, 1, ...` in turn; a partial map is abandoned
/// as soon as a product among assigned elements disagrees.
pub fn enumerate_homomorphisms(q: &Quasigroup, r: &Quasigroup) -> Vec<QMap> {
    let n = q.order();
    let mut values = vec![0; n];
    let mut out = Vec::new();
    extend_hom(q, r, 0, &mut values, &mut out);
    out
}

fn extend_hom(q: &Quasigroup, r: &Quasigroup, i: usize, values: &mut [usize], out: &mut Vec<QMap>) {
    let n = q.order();
    if i == n {
        out.push(QMap::new(r.order(), values.to_vec()).expect("values in range"));
        return;
    }
    for v in 0..r.order() {
        values[i] = v;
        let consistent = (0..=i).all(|x| {
            (0..=i).all(|y| {
                let z = q.mul(x, y);
                z > i || (x != i && y != i && z != i) || values[z] == r.mul(values[x], values[y])
            })
        });
        if consistent {
            extend_hom(q, r, i + 1, values, out);
        }
    }
}

pub fn enumerate_endomorphisms(q: &Quasigroup) -> Result<Vec<QMap>> {
    if q.order() > MAX_ENDOMORPHISM_ORDER {
        return Err(Error::OrderTooLarge { order: q.order(), max: MAX_ENDOMORPHISM_ORDER });
    }
    Ok(enumerate_homomorphisms(q, q))
}

/// Converts an enumerated table into a quasigroup.
pub fn to_quasigroup(n: usize, table: &[u8]) -> Quasigroup {
    Quasigroup::from_flat(n, table.iter().map(|&v| v as usize).collect())
        .expect("enumerated tables are Latin")
}

/// Every labeled quasigroup of order `n`, collected.
pub fn all_quasigroups(n: usize) -> Result<Vec<Quasigroup>> {
    let mut out = Vec::new();
    enumerate_latin_squares(n, |g| out.push(to_quasigroup(n, g)))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{iq3, z};
    use crate::map::is_homomorphism;

    // Independent oracle: choose every row as one of the n! permutations
    // and keep the choices whose columns are permutations too.
    fn naive_count(n: usize) -> u64 {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let perms = permutations(n);
        let total = perms.len().pow(n as u32);
        let mut count = 0;
        for mut code in 0..total {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                rows.push(&perms[code % perms.len()]);
                code /= perms.len();
            }
            let columns_ok = (0..n).all(|c| {
                let mut seen = vec![false; n];
                rows.iter().all(|row| !std::mem::replace(&mut seen[row[c]], true))
            });
            if columns_ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn oracle_totals() {
        let frozen = [1, 2, 12, 576];
        for n in 1..=4 {
            assert_eq!(naive_count(n), frozen[n - 1]);
            assert_eq!(count_latin_squares(n, EnumerationOptions::default()).unwrap(), frozen[n - 1]);
        }
    }

    #[test]
    fn fill_orders_agree() {
        let col = EnumerationOptions { fill_order: FillOrder::ColumnMajor, ..Default::default() };
        for n in 1..=4 {
            let mut a = Vec::new();
            let mut b = Vec::new();
            enumerate_latin_squares(n, |g| a.push(g.to_vec())).unwrap();
            enumerate_latin_squares_with(n, col, |g| b.push(g.to_vec())).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            a.dedup();
            assert_eq!(a.len(), b.len());
        }
    }

    #[test]
    fn row_major_is_lexicographic() {
        let mut all = Vec::new();
        enumerate_latin_squares(4, |g| all.push(g.to_vec())).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn order_caps() {
        assert_eq!(
            count_latin_squares(6, EnumerationOptions::default()).unwrap_err(),
            Error::OrderTooLarge { order: 6, max: 5 }
        );
        assert!(count_latin_squares(0, EnumerationOptions::default()).is_err());
        let opts = EnumerationOptions { allow_order_six: true, ..Default::default() };
        assert!(count_latin_squares(7, opts).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        for threads in [1, 2, 3] {
            let count = par_fold_latin_squares(
                4,
                EnumerationOptions::default(),
                threads,
                || 0u64,
                |acc, _| *acc += 1,
                |a, b| a + b,
            )
            .unwrap();
            assert_eq!(count, 576);
        }
    }

    #[test]
    fn endomorphisms_of_small_groups() {
        let z2: Vec<Vec<usize>> =
            enumerate_endomorphisms(&z(2)).unwrap().iter().map(|f| f.values().to_vec()).collect();
        assert_eq!(z2, vec![vec![0, 0], vec![0, 1]]);
        let z3: Vec<Vec<usize>> =
            enumerate_endomorphisms(&z(3)).unwrap().iter().map(|f| f.values().to_vec()).collect();
        assert_eq!(z3, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn endomorphisms_match_full_scan() {
        for q in [iq3(), z(4)] {
            let n = q.order();
            let mut scanned = Vec::new();
            for code in 0..n.pow(n as u32) {
                let values: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
                let f = QMap::new(n, values).unwrap();
                if is_homomorphism(&f, &q, &q).unwrap() {
                    scanned.push(f);
                }
            }
            scanned.sort_by(|a, b| a.values().cmp(b.values()));
            assert_eq!(enumerate_endomorphisms(&q).unwrap(), scanned);
        }
        assert!(enumerate_endomorphisms(&iq3()).unwrap().contains(&QMap::identity(3)));
    }
}

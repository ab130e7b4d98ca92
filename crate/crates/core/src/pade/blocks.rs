//! Block structure of a rectangular section of the Padé table.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::entry::{pade, PadeEntry};
use crate::error::{Error, Result};
use crate::series::poly::Polynomial;
use crate::series::PowerSeries;

/// Maximal square of identical reduced entries, clipped to the scanned
/// rectangle. The zero fraction is the exception: when `f` vanishes to order
/// `k` it fills the half-strip `n < k` for every `m`, recorded with
/// `strip = true` and `extent = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub anchor: (usize, usize),
    pub extent: usize,
    /// The square reaches past the scanned rectangle; `extent` is a lower bound.
    pub truncated: bool,
    pub strip: bool,
}

impl Block {
    pub fn contains(&self, n: usize, m: usize) -> bool {
        let (n0, m0) = self.anchor;
        n >= n0 && m >= m0 && n < n0 + self.extent && (self.strip || m < m0 + self.extent)
    }
}

#[derive(Debug, Clone)]
pub struct TableScan {
    pub n_max: usize,
    pub m_max: usize,
    /// Row-major: `entries[n * m_max + m]`.
    pub entries: Vec<PadeEntry>,
    pub blocks: Vec<Block>,
}

impl TableScan {
    pub fn entry(&self, n: usize, m: usize) -> &PadeEntry {
        &self.entries[n * self.m_max + m]
    }

    pub fn block_of(&self, n: usize, m: usize) -> &Block {
        self.blocks.iter().find(|b| b.contains(n, m)).expect("every entry belongs to a block")
    }
}

/// Entries `π_{n,m}` for `0 ≤ n < n_max`, `0 ≤ m < m_max`, grouped into blocks.
///
/// A group of identical entries that is not a (clipped) square is reported
/// as an invariant violation.
pub fn block_scan(f: &PowerSeries, n_max: usize, m_max: usize) -> Result<TableScan> {
    if n_max < 1 || m_max < 1 {
        return Err(Error::param("n_max/m_max", "both must be at least 1"));
    }
    let cells: Vec<(usize, usize)> = (0..n_max).flat_map(|n| (0..m_max).map(move |m| (n, m))).collect();
    let entries: Vec<PadeEntry> = cells.par_iter().map(|&(n, m)| pade(f, n, m)).collect::<Result<_>>()?;

    let mut groups: HashMap<(&Polynomial, &Polynomial), Vec<(usize, usize)>> = HashMap::new();
    for e in &entries {
        groups.entry((&e.p, &e.q)).or_default().push((e.n, e.m));
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for ((p, _), members) in &groups {
        if p.is_zero() {
            blocks.push(zero_strip(members, n_max, m_max)?);
            continue;
        }
        let n0 = members.iter().map(|c| c.0).min().unwrap();
        let m0 = members.iter().map(|c| c.1).min().unwrap();
        let w = members.iter().map(|c| c.0).max().unwrap() - n0 + 1;
        let h = members.iter().map(|c| c.1).max().unwrap() - m0 + 1;
        let k = w.max(h);
        let block = Block { anchor: (n0, m0), extent: k, truncated: n0 + k > n_max || m0 + k > m_max, strip: false };
        let expected = (n0..(n0 + k).min(n_max)).flat_map(|n| (m0..(m0 + k).min(m_max)).map(move |m| (n, m))).count();
        let inside = members.iter().all(|&(n, m)| block.contains(n, m));
        if !inside || expected != members.len() {
            return Err(Error::InvariantViolation(format!(
                "identical entries anchored at ({n0},{m0}) do not form a square block ({} cells, bounding box {w}×{h})",
                members.len()
            )));
        }
        blocks.push(block);
    }
    blocks.sort_by_key(|b| b.anchor);
    Ok(TableScan { n_max, m_max, entries, blocks })
}

fn zero_strip(members: &[(usize, usize)], n_max: usize, m_max: usize) -> Result<Block> {
    let k = members.iter().map(|c| c.0).max().unwrap() + 1;
    let block = Block { anchor: (0, 0), extent: k, truncated: true, strip: true };
    if members.len() != k * m_max || !members.iter().all(|&(n, m)| block.contains(n, m)) || k > n_max {
        return Err(Error::InvariantViolation(format!(
            "zero entries do not fill the strip n < {k} ({} cells)",
            members.len()
        )));
    }
    Ok(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::catalog::{catalog_make, CatalogSpec};
    use rug::Rational;

    #[test]
    fn geometric_block_fills_the_row_m1() {
        let f = catalog_make(&CatalogSpec::geometric()).unwrap();
        let scan = block_scan(&f, 4, 2).unwrap();
        let big: Vec<_> = scan.blocks.iter().filter(|b| b.extent > 1).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].anchor, (0, 1));
        assert!(big[0].truncated);
        for n in 0..4 {
            assert!(scan.entry(n, 1).same_fraction(scan.entry(0, 1)));
        }
    }

    #[test]
    fn monomial_splits_into_zero_strip_and_its_own_block() {
        let mut c = vec![Rational::new(); 8];
        c[6] = Rational::from(1);
        let f = PowerSeries::from_coeffs("z6", c);
        let scan = block_scan(&f, 8, 8).unwrap();
        assert_eq!(scan.blocks.len(), 2);
        assert_eq!(scan.blocks[0], Block { anchor: (0, 0), extent: 6, truncated: true, strip: true });
        assert_eq!(scan.blocks[1].anchor, (6, 0));
        assert!(scan.block_of(5, 7).strip);
        assert!(!scan.block_of(7, 7).strip);
    }

    #[test]
    fn exp_blocks_are_trivial() {
        let f = catalog_make(&CatalogSpec::Exp).unwrap();
        let scan = block_scan(&f, 3, 3).unwrap();
        assert_eq!(scan.entries.len(), 9);
        assert_eq!(scan.blocks.len(), 9);
        assert!(scan.blocks.iter().all(|b| b.extent == 1));
        assert!(scan.entries.iter().all(|e| e.defect == 0));
    }

    #[test]
    fn even_function_two_by_two_block() {
        let f = catalog_make(&CatalogSpec::rational(&["1", "-1"], &["1/2", "-1/2"])).unwrap();
        let scan = block_scan(&f, 2, 2).unwrap();
        assert_eq!(scan.blocks, vec![Block { anchor: (0, 0), extent: 2, truncated: false, strip: false }]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        /// Sparse series produce nontrivial blocks; every group of equal
        /// entries must be a square (or the zero strip) and every cell must lie
        /// in exactly one.
        #[test]
        fn random_tables_tile_into_squares(c in proptest::collection::vec(proptest::sample::select(vec![0i64, 0, 0, 1, -1, 2]), 18)) {
            let f = PowerSeries::from_coeffs("sparse", c.into_iter().map(Rational::from).collect());
            let scan = block_scan(&f, 8, 8).unwrap();
            for n in 0..8 {
                for m in 0..8 {
                    let hits = scan.blocks.iter().filter(|b| b.contains(n, m)).count();
                    proptest::prop_assert_eq!(hits, 1, "({}, {})", n, m);
                    let b = scan.block_of(n, m);
                    proptest::prop_assert!(scan.entry(n, m).same_fraction(scan.entry(b.anchor.0, b.anchor.1)));
                }
            }
        }
    }
}

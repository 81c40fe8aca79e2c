//! Dense bit-packed matrices over F₂ and rank by Gaussian elimination.
//!
//! Rows are stored contiguously, `words_per_row` machine words each, so a
//! 24k × 16k matrix occupies about 48 MiB. Elimination is forward-only (rank
//! is all the oracle needs) and the row-update sweep for each pivot runs on
//! the rayon pool; the result does not depend on the schedule.

use rayon::prelude::*;

const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Debug)]
pub struct BitMatrix {
    ncols: usize,
    words_per_row: usize,
    nrows: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(ncols: usize) -> Self {
        BitMatrix {
            ncols,
            words_per_row: ncols.div_ceil(64).max(1),
            nrows: 0,
            data: Vec::new(),
        }
    }

    pub fn with_capacity(ncols: usize, rows: usize) -> Self {
        let mut m = BitMatrix::new(ncols);
        m.data.reserve_exact(rows * m.words_per_row);
        m
    }

    /// Bytes needed to hold `rows` rows of `ncols` columns.
    pub fn bytes_for(ncols: usize, rows: usize) -> u64 {
        (ncols.div_ceil(64).max(1) as u64) * 8 * rows as u64
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Appends a row whose set bits are the given columns. Repeated columns
    /// cancel, as they should over F₂.
    pub fn push_toggled<I: IntoIterator<Item = usize>>(&mut self, cols: I) {
        let start = self.data.len();
        self.data.resize(start + self.words_per_row, 0);
        let row = &mut self.data[start..];
        for c in cols {
            assert!(c < self.ncols, "column {c} out of range {}", self.ncols);
            row[c / 64] ^= 1 << (c % 64);
        }
        self.nrows += 1;
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        let w = self.data[row * self.words_per_row + col / 64];
        w >> (col % 64) & 1 == 1
    }

    /// Rank over F₂. Consumes the matrix since elimination is destructive.
    pub fn rank(mut self) -> usize {
        let wpr = self.words_per_row;
        let nrows = self.nrows;
        let mut rank = 0;
        for col in 0..self.ncols {
            if rank == nrows {
                break;
            }
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let pivot = (rank..nrows).find(|&r| self.data[r * wpr + word] & mask != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                let (a, b) = self.data.split_at_mut(pivot * wpr);
                a[rank * wpr..(rank + 1) * wpr].swap_with_slice(&mut b[..wpr]);
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * wpr);
            let pivot_row = &head[rank * wpr + word..(rank + 1) * wpr];
            let reduce = |row: &mut [u64]| {
                if row[word] & mask != 0 {
                    for (dst, src) in row[word..].iter_mut().zip(pivot_row) {
                        *dst ^= *src;
                    }
                }
            };
            let rows_below = nrows - rank - 1;
            if rows_below * (wpr - word) >= PAR_THRESHOLD {
                tail.par_chunks_mut(wpr).for_each(reduce);
            } else {
                tail.chunks_mut(wpr).for_each(reduce);
            }
            rank += 1;
        }
        rank
    }
}

/// Rank of a family of sparse rows given as column lists.
pub fn rank_of_rows<R, I>(ncols: usize, rows: R) -> usize
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = usize>,
{
    let mut m = BitMatrix::new(ncols);
    for r in rows {
        m.push_toggled(r);
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_duplicates() {
        assert_eq!(rank_of_rows(3, vec![vec![0], vec![1], vec![2]]), 3);
        assert_eq!(rank_of_rows(3, vec![vec![0, 1], vec![0, 1]]), 1);
        assert_eq!(rank_of_rows(3, vec![vec![0, 0]]), 0);
        assert_eq!(rank_of_rows(0, Vec::<Vec<usize>>::new()), 0);
    }

    #[test]
    fn dependent_triple() {
        // r3 = r1 + r2
        assert_eq!(rank_of_rows(4, vec![vec![0, 1], vec![1, 2], vec![0, 2]]), 2);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let rows: Vec<Vec<usize>> = (0..200).map(|i| vec![i, (i + 63) % 200]).collect();
        // a single 200-cycle of edges: rank n - 1 over F2
        assert_eq!(rank_of_rows(200, rows), 199);
    }

    // Rank via brute-force span enumeration, independent of elimination.
    fn span_rank(rows: &[u16]) -> usize {
        let mut span = std::collections::BTreeSet::new();
        span.insert(0u16);
        for &r in rows {
            let next: Vec<u16> = span.iter().map(|s| s ^ r).collect();
            span.extend(next);
        }
        span.len().trailing_zeros() as usize
    }

    proptest! {
        #[test]
        fn rank_matches_span_size(rows in proptest::collection::vec(any::<u16>(), 0..12)) {
            let cols: Vec<Vec<usize>> = rows
                .iter()
                .map(|r| (0..16).filter(|b| r >> b & 1 == 1).collect())
                .collect();
            prop_assert_eq!(rank_of_rows(16, cols), span_rank(&rows));
        }
    }
}

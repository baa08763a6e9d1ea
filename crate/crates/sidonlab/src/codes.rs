//! The bridge between Sidon sets of F_2^n and binary linear codes of
//! minimum distance at least 5: columns of a parity check matrix on one
//! side, a spanning Sidon set containing 0 on the other.

use crate::algebra::{hex_width, rank_of};
use crate::sidon::PointSet;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("set does not contain 0; translate it first")]
    MissingZero,
    #[error("set is not Sidon")]
    NotSidon,
    #[error("set has rank {rank}, does not span F_2^{n}")]
    NotSpanning { rank: u32, n: u32 },
    #[error("minimum distance {distance} < 5; witness columns {witness:?}")]
    DistanceTooSmall { distance: u32, witness: Vec<usize> },
    #[error("matrix has {cols} columns; the small-weight search supports at most 64")]
    TooLong { cols: usize },
}

/// Binary parity check matrix, stored as its list of n-bit columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    rows: u32,
    columns: Vec<u32>,
}

impl ParityCheckMatrix {
    pub fn new(rows: u32, columns: Vec<u32>) -> Self {
        assert!((1..=32).contains(&rows), "row count {rows} out of range");
        let lim = if rows == 32 { u32::MAX } else { (1u32 << rows) - 1 };
        assert!(columns.iter().all(|&c| c <= lim), "column out of range");
        ParityCheckMatrix { rows, columns }
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    /// Code length N.
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    pub fn rank(&self) -> u32 {
        rank_of(&self.columns)
    }

    /// Code dimension N - rank(H).
    pub fn code_dimension(&self) -> usize {
        self.cols() - self.rank() as usize
    }
}

impl fmt::Display for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows={} cols={}", self.rows, self.cols())?;
        let w = hex_width(self.rows);
        for c in &self.columns {
            writeln!(f, "{c:0w$x}", w = w)?;
        }
        Ok(())
    }
}

/// Outcome of the capped minimum-distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Exact(u32),
    AtLeast(u32),
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Exact(d) => write!(f, "{d}"),
            MinDistance::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// Parity check matrix of the code attached to a spanning Sidon set
/// containing 0: the nonzero members, sorted, as columns. The resulting
/// code has length |S|-1, dimension |S|-1-n, minimum distance at least 5.
pub fn sidon_to_code(s: &PointSet) -> Result<ParityCheckMatrix, CodeError> {
    if !s.contains(0) {
        return Err(CodeError::MissingZero);
    }
    if !s.is_sidon() {
        return Err(CodeError::NotSidon);
    }
    if !s.spans() {
        return Err(CodeError::NotSpanning { rank: rank_of(s.members()), n: s.n() });
    }
    let columns: Vec<u32> = s.members().iter().copied().filter(|&x| x != 0).collect();
    Ok(ParityCheckMatrix::new(s.n(), columns))
}

/// The column set plus 0 as a point set in F_2^rows; requires distinct
/// nonzero columns and minimum distance at least 5.
pub fn code_to_sidon(h: &ParityCheckMatrix) -> Result<PointSet, CodeError> {
    match min_distance(h, 5)? {
        MinDistance::Exact(d) => {
            let witness = distance_witness(h, d).expect("witness exists below the cap");
            Err(CodeError::DistanceTooSmall { distance: d, witness })
        }
        MinDistance::AtLeast(_) => {
            let mut members = h.columns().to_vec();
            members.push(0);
            Ok(PointSet::new(h.rows(), members))
        }
    }
}

/// Minimum distance when below `cap`, else "at least cap", by direct search
/// for zero columns, duplicate columns, and triples or quadruples of columns
/// summing to zero. Supports cap <= 5.
pub fn min_distance(h: &ParityCheckMatrix, cap: u32) -> Result<MinDistance, CodeError> {
    assert!((1..=5).contains(&cap), "the small-weight search supports cap <= 5");
    if h.cols() > 64 {
        return Err(CodeError::TooLong { cols: h.cols() });
    }
    for w in 1..cap {
        if distance_witness(h, w).is_some() {
            return Ok(MinDistance::Exact(w));
        }
    }
    Ok(MinDistance::AtLeast(cap))
}

/// Indices of `w` columns XOR-ing to zero, if any (w <= 4).
fn distance_witness(h: &ParityCheckMatrix, w: u32) -> Option<Vec<usize>> {
    let cols = h.columns();
    match w {
        1 => cols.iter().position(|&c| c == 0).map(|i| vec![i]),
        2 => {
            let mut seen: HashMap<u32, usize> = HashMap::new();
            for (j, &c) in cols.iter().enumerate() {
                if let Some(&i) = seen.get(&c) {
                    return Some(vec![i, j]);
                }
                seen.insert(c, j);
            }
            None
        }
        3 => {
            let index: HashMap<u32, usize> =
                cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            for i in 0..cols.len() {
                for j in (i + 1)..cols.len() {
                    if let Some(&k) = index.get(&(cols[i] ^ cols[j])) {
                        if k != i && k != j {
                            let mut v = vec![i, j, k];
                            v.sort_unstable();
                            return Some(v);
                        }
                    }
                }
            }
            None
        }
        4 => {
            // pair-sum meet-in-the-middle; reject pairs sharing an index
            let mut sums: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
            for i in 0..cols.len() {
                for j in (i + 1)..cols.len() {
                    sums.entry(cols[i] ^ cols[j]).or_default().push((i, j));
                }
            }
            for pairs in sums.values() {
                for (a, &(i, j)) in pairs.iter().enumerate() {
                    for &(k, l) in &pairs[a + 1..] {
                        if i != k && i != l && j != k && j != l {
                            let mut v = vec![i, j, k, l];
                            v.sort_unstable();
                            return Some(v);
                        }
                    }
                }
            }
            None
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{theorem2_set, ConicKind};

    #[test]
    fn ellipse_code_parameters() {
        // theorem2 ellipse m=4 contains the nucleus 0 already
        let s = theorem2_set(ConicKind::Ellipse, 4);
        let h = sidon_to_code(&s).unwrap();
        assert_eq!(h.cols(), 17);
        assert_eq!(h.rows(), 8);
        assert_eq!(h.code_dimension(), 9);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::AtLeast(5)));
    }

    #[test]
    fn zero_dimension_code_roundtrip() {
        // minimal spanning Sidon set: |S|-1 = n, dimension 0
        let s = PointSet::new(3, [0u32, 1, 2, 4]);
        let h = sidon_to_code(&s).unwrap();
        assert_eq!(h.code_dimension(), 0);
        assert_eq!(code_to_sidon(&h).unwrap(), s);
    }

    #[test]
    fn sidon_to_code_preconditions() {
        let no_zero = PointSet::new(3, [1u32, 2, 4]);
        assert_eq!(sidon_to_code(&no_zero), Err(CodeError::MissingZero));
        let not_sidon = PointSet::new(2, [0u32, 1, 2, 3]);
        assert_eq!(sidon_to_code(&not_sidon), Err(CodeError::NotSidon));
        let not_spanning = PointSet::new(4, [0u32, 1, 2]);
        assert_eq!(sidon_to_code(&not_spanning), Err(CodeError::NotSpanning { rank: 2, n: 4 }));
    }

    #[test]
    fn min_distance_small_cases() {
        // identity columns: no dependent quadruple
        let h = ParityCheckMatrix::new(4, vec![1, 2, 4, 8]);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::AtLeast(5)));
        // a, b, a+b sums to zero
        let h = ParityCheckMatrix::new(4, vec![1, 2, 3, 8]);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::Exact(3)));
        // duplicate column
        let h = ParityCheckMatrix::new(4, vec![5, 5, 2]);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::Exact(2)));
        assert!(matches!(
            code_to_sidon(&h),
            Err(CodeError::DistanceTooSmall { distance: 2, .. })
        ));
        // zero column
        let h = ParityCheckMatrix::new(4, vec![0, 1]);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::Exact(1)));
        // weight-4 relation without smaller ones
        let h = ParityCheckMatrix::new(4, vec![1, 2, 4, 7]);
        assert_eq!(min_distance(&h, 5), Ok(MinDistance::Exact(4)));
        // lower caps stop early
        assert_eq!(min_distance(&h, 3), Ok(MinDistance::AtLeast(3)));
    }

    #[test]
    fn too_long_rejected() {
        let h = ParityCheckMatrix::new(8, (0..70u32).map(|i| i % 256).collect());
        assert_eq!(min_distance(&h, 5), Err(CodeError::TooLong { cols: 70 }));
    }

    #[test]
    fn roundtrip_and_equivalence_on_random_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut done = 0;
        while done < 120 {
            let n = rng.gen_range(3..=10u32);
            let size = rng.gen_range(n as usize..=(1usize << (n / 2)) + n as usize);
            let mut members: Vec<u32> =
                (0..size).map(|_| rng.gen_range(0..(1u32 << n))).collect();
            members.push(0);
            let s = PointSet::new(n, members);
            if !s.contains(0) || !s.spans() {
                continue;
            }
            done += 1;
            // equivalence: Sidon <=> every weight <= 4 relation among the
            // nonzero members is absent <=> distance >= 5
            let columns: Vec<u32> = s.members().iter().copied().filter(|&x| x != 0).collect();
            let h = ParityCheckMatrix::new(n, columns);
            let dist_ok = matches!(min_distance(&h, 5), Ok(MinDistance::AtLeast(5)));
            assert_eq!(s.is_sidon(), dist_ok, "Sidon <=> d >= 5 failed");
            if s.is_sidon() {
                let h2 = sidon_to_code(&s).unwrap();
                assert_eq!(code_to_sidon(&h2).unwrap(), s, "round trip failed");
                assert_eq!(rank_of(h2.columns()), n);
            }
        }
    }

    #[test]
    fn construction_codes_have_distance_5() {
        for m in 1..=5 {
            for kind in [ConicKind::Ellipse, ConicKind::Hyperbola] {
                let s = theorem2_set(kind, m);
                // translate by the least member so that 0 is in the set
                let t = s.translate(s.members()[0]);
                if !t.spans() {
                    continue; // tiny cases below m=2 need not span
                }
                let h = sidon_to_code(&t).unwrap();
                assert_eq!(min_distance(&h, 5), Ok(MinDistance::AtLeast(5)));
                assert_eq!(h.cols(), t.len() - 1);
            }
        }
    }
}

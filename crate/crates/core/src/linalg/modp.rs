//! Arithmetic modulo a word-sized prime, used to bound ranks from below.

use super::Matrix;
use crate::scalar::Scalar;

/// The largest prime below `2^63`.
pub const PRIME: u64 = 9_223_372_036_854_775_783;

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

pub fn inv(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

impl<F: Scalar> Matrix<F> {
    /// Rank of the reduction modulo `p`, which never exceeds the rank over
    /// the field. `None` when an entry has a denominator divisible by `p`.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let mut m: Vec<Vec<u64>> = (0..self.rows())
            .map(|i| self.row(i).iter().map(|v| v.residue(p)).collect())
            .collect::<Option<_>>()?;
        let mut rank = 0;
        for c in 0..self.cols() {
            let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let scale = inv(m[rank][c], p);
            let pivot_row: Vec<u64> = m[rank].iter().map(|&v| mul(v, scale, p)).collect();
            for row in m.iter_mut().skip(rank + 1) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = (*x + p - mul(factor, y, p)) % p;
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        Some(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, RatMatrix};

    #[test]
    fn inverse_mod_prime() {
        for a in [1u64, 2, 3, 12345, PRIME - 1] {
            assert_eq!(mul(a, inv(a, PRIME), PRIME), 1);
        }
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank_mod_p(PRIME), Some(2));
        let half = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)]]).unwrap();
        assert_eq!(half.rank_mod_p(PRIME), Some(1));
        assert_eq!(half.rank_mod_p(3), None);
    }
}

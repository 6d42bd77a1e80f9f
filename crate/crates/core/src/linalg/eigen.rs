//! Characteristic and minimal polynomials, and the rational eigen-structure
//! needed to put a relation matrix into Jordan form.
//!
//! Diagonalizability over the algebraic closure is decided exactly: a matrix
//! is diagonalizable iff its minimal polynomial is squarefree. Eigenvalues are
//! only ever computed when they are rational.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;
use crate::linalg::{Matrix, UniPoly};
use crate::scalar::Scalar;

/// `det(tI - M)` by the Berkowitz algorithm, which uses no division.
pub fn char_poly<F: Scalar>(m: &Matrix<F>) -> Result<UniPoly<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // Coefficients from the highest power down.
    let mut p: Vec<F> = vec![F::one()];
    for k in 0..n {
        // Leading principal block of size k, column above and row left of m[k][k].
        let col: Vec<F> = (0..k).map(|i| m[(i, k)].clone()).collect();
        let row: Vec<F> = (0..k).map(|j| m[(k, j)].clone()).collect();
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(F::one());
        toeplitz.push(-m[(k, k)].clone());
        let mut v = col;
        for _ in 0..k {
            let dot = row
                .iter()
                .zip(&v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            toeplitz.push(-dot);
            v = (0..k)
                .map(|i| (0..k).fold(F::zero(), |acc, j| acc + m[(i, j)].clone() * v[j].clone()))
                .collect();
        }
        let mut next = vec![F::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j {
                    *slot = slot.clone() + toeplitz[i - j].clone() * pj.clone();
                }
            }
        }
        p = next;
    }
    p.reverse();
    Ok(UniPoly::new(p))
}

/// Monic minimal polynomial: the first power `M^k` that is a combination of
/// `I, M, ..., M^{k-1}` gives the relation.
pub fn min_poly<F: Scalar>(m: &Matrix<F>) -> Result<UniPoly<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let flatten = |a: &Matrix<F>| -> Vec<F> { a.row_vectors().into_iter().flatten().collect() };
    let mut powers = vec![flatten(&Matrix::identity(n))];
    let mut current = Matrix::identity(n);
    for _ in 1..=n {
        current = &current * m;
        powers.push(flatten(&current));
        let system = Matrix::from_columns(&powers).expect("equal lengths");
        if let Some(rel) = system.kernel().into_iter().next() {
            let lead = rel.last().cloned().expect("nonempty");
            return Ok(UniPoly::new(rel).scale(&(F::one() / lead)));
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}

/// Exact spectral summary of a square rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub char_poly: UniPoly<BigRational>,
    pub min_poly: UniPoly<BigRational>,
    pub is_scalar: bool,
    /// Minimal polynomial is squarefree.
    pub is_diagonalizable_over_closure: bool,
    /// Rational roots of the characteristic polynomial with algebraic
    /// multiplicity, in increasing order.
    pub rational_eigenvalues: Vec<(BigRational, usize)>,
    pub splits_over_q: bool,
}

pub fn eigen_report(m: &Matrix<BigRational>) -> Result<EigenReport, LinalgError> {
    let char_poly = char_poly(m)?;
    let min_poly = min_poly(m)?;
    let rational_eigenvalues = rational_roots(&char_poly);
    let found: usize = rational_eigenvalues.iter().map(|(_, k)| k).sum();
    Ok(EigenReport {
        is_scalar: min_poly.degree() == Some(1),
        is_diagonalizable_over_closure: min_poly.is_squarefree(),
        splits_over_q: found == m.rows(),
        rational_eigenvalues,
        char_poly,
        min_poly,
    })
}

/// Rational roots with multiplicity, sorted increasingly.
///
/// Candidates come from the rational root theorem applied to the
/// integer-scaled squarefree part, restricted to the Cauchy root bound so that
/// divisor enumeration stays proportional to the size of the roots.
pub fn rational_roots(p: &UniPoly<BigRational>) -> Vec<(BigRational, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    let zero_mult = multiplicity(&mut rest, &BigRational::zero());
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let squarefree = rest.div_rem(&rest.gcd(&rest.derivative())).0;
        let ints = integer_coefficients(&squarefree);
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let bound = cauchy_bound(&ints);
        for q in divisors_up_to(&lead, &lead) {
            let limit = &bound * &q;
            for num in divisors_up_to(&constant, &limit) {
                if !num.gcd(&q).is_one() {
                    continue;
                }
                for sign in [-1, 1] {
                    let candidate = BigRational::new(BigInt::from(sign) * &num, q.clone());
                    if squarefree.eval(&candidate).is_zero() {
                        let k = multiplicity(&mut rest, &candidate);
                        roots.push((candidate, k));
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// Divides `p` by `(t - root)` as often as possible.
fn multiplicity(p: &mut UniPoly<BigRational>, root: &BigRational) -> usize {
    let factor = UniPoly::linear(root.clone());
    let mut k = 0;
    loop {
        let (q, r) = p.div_rem(&factor);
        if !r.is_zero() || p.is_zero() {
            return k;
        }
        *p = q;
        k += 1;
    }
}

/// Primitive integer multiple of `p`.
fn integer_coefficients(p: &UniPoly<BigRational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

/// `1 + max |a_i| / |a_n|`, rounded up.
fn cauchy_bound(ints: &[BigInt]) -> BigInt {
    let lead = ints.last().unwrap().abs();
    let max = ints[..ints.len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero);
    BigInt::one() + max.div_ceil(&lead)
}

/// Positive divisors of `n` that are at most `limit`, in increasing order.
fn divisors_up_to(n: &BigInt, limit: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.sign() == Sign::Plus);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n && d <= *limit {
        if (n % &d).is_zero() {
            let co = n / &d;
            if co != d && co <= *limit {
                large.push(co);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    // Stopping at `limit` below sqrt(n) loses nothing: every cofactor of a
    // skipped divisor is then above the limit too.
    large.reverse();
    small.extend(large);
    small
}

/// A Jordan block of the rational Jordan form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: BigRational,
    pub size: usize,
    /// Index of the block's first row and column in `J`.
    pub offset: usize,
}

/// `M = P^{-1} J P` with `J` in upper Jordan form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub p: Matrix<BigRational>,
    pub j: Matrix<BigRational>,
    pub blocks: Vec<JordanBlock>,
}

/// Jordan form over the rationals, absent when the characteristic polynomial
/// has an irrational root.
///
/// Blocks are ordered by eigenvalue, then by decreasing size. Chains are built
/// by ascending through `ker (M - λI)^k`, always preferring kernel basis
/// vectors with the smallest free index.
pub fn rational_jordan_transform(m: &Matrix<BigRational>) -> Option<JordanDecomposition> {
    let report = eigen_report(m).ok()?;
    if !report.splits_over_q {
        return None;
    }
    let n = m.rows();
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (lambda, alg_mult) in &report.rational_eigenvalues {
        let shifted = m.shift(lambda);
        let mut kernels: Vec<Vec<Vec<BigRational>>> = vec![Vec::new()];
        let mut power = Matrix::identity(n);
        while kernels.last().unwrap().len() < *alg_mult {
            power = &power * &shifted;
            kernels.push(power.kernel());
        }
        let height = kernels.len() - 1;
        let mut frontier: Vec<Vec<BigRational>> = Vec::new();
        let mut chains: Vec<Vec<Vec<BigRational>>> = Vec::new();
        for level in (1..=height).rev() {
            let mut base: Vec<Vec<BigRational>> = kernels[level - 1].clone();
            base.extend(frontier.iter().cloned());
            let mut rank = rank_of(&base);
            let mut tops = Vec::new();
            for candidate in &kernels[level] {
                base.push(candidate.clone());
                let r = rank_of(&base);
                if r > rank {
                    rank = r;
                    tops.push(candidate.clone());
                } else {
                    base.pop();
                }
            }
            for top in &tops {
                let mut chain = vec![top.clone()];
                for _ in 1..level {
                    let below = shifted.mul_vec(chain.last().unwrap());
                    chain.push(below);
                }
                chain.reverse();
                chains.push(chain);
            }
            frontier = frontier
                .iter()
                .chain(&tops)
                .map(|v| shifted.mul_vec(v))
                .collect();
        }
        chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for chain in chains {
            blocks.push(JordanBlock {
                eigenvalue: lambda.clone(),
                size: chain.len(),
                offset: columns.len(),
            });
            columns.extend(chain);
        }
    }
    let q = Matrix::from_columns(&columns).ok()?;
    let p = q.inverse()?;
    let mut j = Matrix::zeros(n, n);
    for block in &blocks {
        for k in 0..block.size {
            let i = block.offset + k;
            j[(i, i)] = block.eigenvalue.clone();
            if k + 1 < block.size {
                j[(i, i + 1)] = BigRational::one();
            }
        }
    }
    assert_eq!(&(&q * &j) * &p, *m, "Jordan decomposition must reproduce M");
    Some(JordanDecomposition { p, j, blocks })
}

fn rank_of(vectors: &[Vec<BigRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec())
        .expect("equal lengths")
        .rank()
}

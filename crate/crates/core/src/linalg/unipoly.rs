use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients from low to high degree.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![F::one()])
    }

    /// `t - root`.
    pub fn linear(root: F) -> Self {
        UniPoly::new(vec![-root, F::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = F::one() / lc.clone();
                UniPoly::new(
                    self.coeffs
                        .iter()
                        .map(|c| c.clone() * inv.clone())
                        .collect(),
                )
            }
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(F::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_u32(i as u32))
                .collect(),
        )
    }

    /// `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        assert!(m.is_square());
        let n = m.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix::zeros(n, n), |acc, c| {
                (&acc * m).add(&Matrix::identity(n).scale(c))
            })
    }
}

impl<F: Scalar> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.clone() < F::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{abs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

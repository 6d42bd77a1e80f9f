//! Sparse homogeneous polynomials with exact coefficients.
//!
//! A [`HomPoly`] lives in a fixed ring `F[x_0, ..., x_n]` and carries its total
//! degree explicitly, so the zero polynomial still knows which graded piece it
//! belongs to. Terms are kept in a `BTreeMap` keyed by [`ExponentVector`],
//! whose ordering is graded lexicographic with `x_0 > x_1 > ... > x_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Exponents of `x_0, ..., x_n` in a monomial.
///
/// `Ord` is graded lexicographic: higher total degree first, then the larger
/// exponent of the earliest variable wins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// `x_var^power`.
    pub fn unit(nvars: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = power;
        ExponentVector(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub(crate) fn with(&self, var: usize, power: u32) -> ExponentVector {
        let mut exps = self.0.clone();
        exps[var] = power;
        ExponentVector(exps)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// decreasing graded-lex order (`x_0^degree` first).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<ExponentVector> {
    fn fill(out: &mut Vec<ExponentVector>, current: &mut Vec<u32>, var: usize, left: u32) {
        if var + 1 == current.len() {
            current[var] = left;
            out.push(ExponentVector(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[var] = e;
            fill(out, current, var + 1, left - e);
        }
        current[var] = 0;
    }
    assert!(nvars >= 1, "at least one variable is required");
    let mut out = Vec::new();
    fill(&mut out, &mut vec![0; nvars], 0, degree);
    out
}

/// A homogeneous polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly<F> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<ExponentVector, F>,
}

impl<F: Scalar> HomPoly<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1, "at least one variable is required");
        HomPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    /// The variable `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, var, 1), F::one())
    }

    pub fn monomial(exps: ExponentVector, coeff: F) -> Self {
        let mut p = HomPoly::zero(exps.nvars(), exps.degree());
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[F]) -> Self {
        let nvars = coeffs.len();
        Self::from_terms(
            nvars,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (ExponentVector::unit(nvars, i, 1), c.clone())),
        )
        .expect("linear terms have degree one")
    }

    /// Builds a polynomial from terms, summing repeated exponents.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, F)>,
    {
        let mut p = HomPoly::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.nvars() != nvars {
                return Err(PolyError::VariableCount {
                    expected: nvars,
                    found: exps.nvars(),
                });
            }
            if exps.degree() != degree {
                return Err(PolyError::NotHomogeneous {
                    degrees: vec![degree, exps.degree()],
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: ExponentVector, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index of the last variable, i.e. the `n` of `P^n`.
    pub fn n(&self) -> usize {
        self.nvars - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &F)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &ExponentVector) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &F)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return HomPoly::zero(self.nvars, self.degree);
        }
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Rescales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, lc)) => self.scale(&(F::one() / lc.clone())),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = HomPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
    }

    /// `c` with `self = c * other`, if it exists.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return None;
        }
        if other.is_zero() {
            return if self.is_zero() { Some(F::one()) } else { None };
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = other.leading_term()?;
        let ratio = self.coeff(e) / c.clone();
        if ratio.is_zero() {
            return None;
        }
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// `∂f/∂x_var`, of degree `d - 1` (saturating at zero for constants).
    pub fn partial(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = HomPoly::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k > 0 {
                out.add_term(e.with(var, k - 1), c.clone() * F::from_u32(k));
            }
        }
        Ok(out)
    }

    /// `(f_0, ..., f_n)`.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Matrix of second partials `f_ij`.
    pub fn hessian(&self) -> Result<PolyMatrix<F>, PolyError> {
        if self.degree < 2 {
            return Err(PolyError::DegreeTooLow {
                needed: 2,
                found: self.degree,
            });
        }
        let grad = self.gradient();
        let mut entries = Vec::with_capacity(self.nvars * self.nvars);
        for gi in &grad {
            for j in 0..self.nvars {
                entries.push(gi.partial(j)?);
            }
        }
        Ok(PolyMatrix {
            rows: self.nvars,
            cols: self.nvars,
            entries,
        })
    }

    /// `det Hess(f)`, homogeneous of degree `(d - 2)(n + 1)`.
    pub fn hessian_det(&self) -> Result<Self, PolyError> {
        Ok(self.hessian()?.determinant())
    }

    /// `f(A x)`: substitutes `x_i -> sum_j A[i][j] x_j`.
    pub fn linear_substitute(&self, a: &Matrix<F>) -> Result<Self, PolyError> {
        if a.rows() != self.nvars || a.cols() != self.nvars {
            return Err(PolyError::MatrixShape {
                expected: self.nvars,
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let mut powers: Vec<Vec<HomPoly<F>>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let max_exp = self.terms.keys().map(|e| e.get(i)).max().unwrap_or(0);
            let form = HomPoly::linear_form(a.row(i));
            let mut row = vec![HomPoly::one(self.nvars)];
            for k in 1..=max_exp as usize {
                let next = &row[k - 1] * &form;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = HomPoly::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let mut term = HomPoly::constant(self.nvars, c.clone());
            for (i, &k) in e.exps().iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCount {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.exps()) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Checks `sum_i x_i f_i = d f` symbolically.
    pub fn euler_check(&self) -> bool {
        let lhs = euler_sum(&self.gradient());
        match lhs {
            Some(lhs) => lhs == self.scale(&F::from_u32(self.degree)),
            None => self.degree == 0,
        }
    }

    /// Sets every variable in `vars` to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Self {
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&v| e.get(v) == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Antiderivative in `x_var` with lower limit zero.
    pub fn integrate(&self, var: usize) -> Self {
        let mut out = HomPoly::zero(self.nvars, self.degree + 1);
        for (e, c) in &self.terms {
            let k = e.get(var) + 1;
            out.add_term(e.with(var, k), c.clone() / F::from_u32(k));
        }
        out
    }

    /// Reinterprets the polynomial in a ring with more variables appended.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        HomPoly {
            nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut exps = e.exps().to_vec();
                    exps.resize(nvars, 0);
                    (ExponentVector(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by the monomial `m`, if it divides every term.
    pub fn div_monomial(&self, m: &ExponentVector) -> Option<Self> {
        let mut out = HomPoly::zero(self.nvars, self.degree.checked_sub(m.degree())?);
        for (e, c) in &self.terms {
            out.terms.insert(e.checked_div(m)?, c.clone());
        }
        Some(out)
    }

    /// Variables that occur in at least one term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e.get(i) > 0))
            .collect()
    }

    /// Multiplies by the monomial `m` with coefficient one.
    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        HomPoly {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.mul(m), c.clone()))
                .collect(),
        }
    }
}

/// `sum_i x_i F_i` for a tuple of polynomials of a common degree, or `None`
/// for an empty tuple.
pub fn euler_sum<F: Scalar>(tuple: &[HomPoly<F>]) -> Option<HomPoly<F>> {
    let first = tuple.first()?;
    let nvars = first.nvars();
    let mut acc = HomPoly::zero(nvars, first.degree() + 1);
    for (i, fi) in tuple.iter().enumerate() {
        acc = &acc + &fi.mul_monomial(&ExponentVector::unit(nvars, i, 1));
    }
    Some(acc)
}

/// `sum_i a_i F_i` with rational weights.
pub fn combine<F: Scalar>(weights: &[F], polys: &[HomPoly<F>]) -> HomPoly<F> {
    assert_eq!(weights.len(), polys.len());
    let first = &polys[0];
    let mut acc = HomPoly::zero(first.nvars(), first.degree());
    for (w, p) in weights.iter().zip(polys) {
        if !w.is_zero() {
            acc = &acc + &p.scale(w);
        }
    }
    acc
}

/// `M * v` for a column of polynomials.
pub fn apply_matrix<F: Scalar>(m: &Matrix<F>, v: &[HomPoly<F>]) -> Vec<HomPoly<F>> {
    assert_eq!(m.cols(), v.len(), "matrix/vector size mismatch");
    (0..m.rows()).map(|i| combine(m.row(i), v)).collect()
}

impl<'a, F: Scalar> Add<&'a HomPoly<F>> for &'a HomPoly<F> {
    type Output = HomPoly<F>;

    fn add(self, rhs: &'a HomPoly<F>) -> HomPoly<F> {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Scalar> Sub<&'a HomPoly<F>> for &'a HomPoly<F> {
    type Output = HomPoly<F>;

    fn sub(self, rhs: &'a HomPoly<F>) -> HomPoly<F> {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Scalar> Mul<&'a HomPoly<F>> for &'a HomPoly<F> {
    type Output = HomPoly<F>;

    fn mul(self, rhs: &'a HomPoly<F>) -> HomPoly<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = HomPoly::zero(self.nvars, self.degree + rhs.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Scalar> Neg for &HomPoly<F> {
    type Output = HomPoly<F>;

    fn neg(self) -> HomPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Add for HomPoly<F> {
    type Output = HomPoly<F>;
    fn add(self, rhs: HomPoly<F>) -> HomPoly<F> {
        &self + &rhs
    }
}

impl<F: Scalar> Sub for HomPoly<F> {
    type Output = HomPoly<F>;
    fn sub(self, rhs: HomPoly<F>) -> HomPoly<F> {
        &self - &rhs
    }
}

impl<F: Scalar> Mul for HomPoly<F> {
    type Output = HomPoly<F>;
    fn mul(self, rhs: HomPoly<F>) -> HomPoly<F> {
        &self * &rhs
    }
}

impl<F: Scalar> fmt::Display for HomPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_poly(self))
    }
}

/// A matrix of homogeneous polynomials sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<HomPoly<F>>,
}

impl<F: Scalar> PolyMatrix<F> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by Laplace expansion memoized over column subsets,
    /// `O(2^n n)` polynomial products and no division.
    pub fn determinant(&self) -> HomPoly<F> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let size = self.rows;
        let nvars = self.entries[0].nvars();
        let mut minors: std::collections::HashMap<u32, HomPoly<F>> =
            std::collections::HashMap::from([(0u32, HomPoly::one(nvars))]);
        for row in 0..size {
            let mut next = std::collections::HashMap::new();
            for (&mask, minor) in &minors {
                if minor.is_zero() {
                    continue;
                }
                for col in 0..size {
                    if mask & (1 << col) != 0 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    // Moving the new column into sorted position inside `mask`.
                    let above = (mask >> col).count_ones();
                    let mut term = minor * entry;
                    if above % 2 == 1 {
                        term = -&term;
                    }
                    let slot = next
                        .entry(mask | (1 << col))
                        .or_insert_with(|| HomPoly::zero(nvars, term.degree()));
                    *slot = &*slot + &term;
                }
            }
            minors = next;
        }
        let full = if size == 32 {
            u32::MAX
        } else {
            (1u32 << size) - 1
        };
        let degree = self.entries[0].degree() * size as u32;
        minors
            .remove(&full)
            .unwrap_or_else(|| HomPoly::zero(nvars, degree))
    }
}

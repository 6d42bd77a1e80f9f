//! Graded pieces of Jacobian ideals and the relations among partials.
//!
//! Every finite-dimensional space of degree-`m` forms is stored as a
//! [`PolySpace`] in reduced row-echelon form over the monomial coordinates of
//! `S_m`, ordered by decreasing graded-lex order. That form is canonical, so
//! structural equality of two spaces is equality of subspaces.

use std::collections::HashMap;

use crate::error::IdealError;
use crate::linalg::{modp, Matrix};
use crate::poly::{monomials_of_degree, ExponentVector, HomPoly};
use crate::scalar::Scalar;

/// `dim S_{n,m} = C(n + m, n)`.
pub fn dim_graded(n: usize, m: u32) -> usize {
    let m = m as usize;
    // C(n+m, n) computed incrementally stays integral at every step.
    (1..=n).fold(1usize, |acc, k| acc * (m + k) / k)
}

/// Monomial coordinates of one graded piece.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn index_of(&self, e: &ExponentVector) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn coordinates<F: Scalar>(&self, p: &HomPoly<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.len()];
        for (e, c) in p.terms() {
            v[self.index[e]] = c.clone();
        }
        v
    }

    pub fn polynomial<F: Scalar>(&self, nvars: usize, degree: u32, coords: &[F]) -> HomPoly<F> {
        HomPoly::from_terms(
            nvars,
            degree,
            self.monomials
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
        .expect("monomials of the right degree")
    }
}

/// A subspace of `S_m` in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySpace<F> {
    nvars: usize,
    degree: u32,
    basis: Vec<HomPoly<F>>,
}

impl<F: Scalar> PolySpace<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        PolySpace {
            nvars,
            degree,
            basis: Vec::new(),
        }
    }

    /// Span of `polys` inside `S_{nvars, degree}`.
    pub fn span_in(nvars: usize, degree: u32, polys: &[HomPoly<F>]) -> Result<Self, IdealError> {
        if let Some(bad) = polys
            .iter()
            .find(|p| p.nvars() != nvars || p.degree() != degree)
        {
            return Err(IdealError::MixedShapes(format!(
                "expected degree {degree} in {nvars} variables, found degree {} in {} variables",
                bad.degree(),
                bad.nvars()
            )));
        }
        let coords = MonomialBasis::new(nvars, degree);
        let rows: Vec<Vec<F>> = polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| coords.coordinates(p))
            .collect();
        if rows.is_empty() {
            return Ok(PolySpace::zero(nvars, degree));
        }
        let reduced = Matrix::from_rows(rows).expect("equal lengths").rref();
        let basis = (0..reduced.rank)
            .map(|i| coords.polynomial(nvars, degree, reduced.matrix.row(i)))
            .collect();
        Ok(PolySpace {
            nvars,
            degree,
            basis,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        dim_graded(self.nvars - 1, self.degree)
    }

    /// Canonical basis: leading monomials strictly decreasing, leading
    /// coefficients one, and each leading monomial absent from the others.
    pub fn basis(&self) -> &[HomPoly<F>] {
        &self.basis
    }

    /// Coefficients of `p` in the canonical basis, if `p` lies in the space.
    pub fn coordinates(&self, p: &HomPoly<F>) -> Option<Vec<F>> {
        if p.nvars() != self.nvars || p.degree() != self.degree {
            return None;
        }
        let mut rest = p.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let (lead, _) = b.leading_term().expect("basis elements are nonzero");
            let c = rest.coeff(lead);
            if !c.is_zero() {
                rest = &rest - &b.scale(&c);
            }
            coords.push(c);
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains(&self, p: &HomPoly<F>) -> bool {
        self.coordinates(p).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Canonical span of a nonempty list of forms of one degree.
pub fn span<F: Scalar>(polys: &[HomPoly<F>]) -> Result<PolySpace<F>, IdealError> {
    let first = polys.first().ok_or(IdealError::EmptySpan)?;
    PolySpace::span_in(first.nvars(), first.degree(), polys)
}

/// Equality of two subspaces of the same graded piece.
pub fn span_equal<F: Scalar>(a: &PolySpace<F>, b: &PolySpace<F>) -> Result<bool, IdealError> {
    if a.nvars != b.nvars || a.degree != b.degree {
        return Err(IdealError::MixedShapes(format!(
            "degree {} in {} variables versus degree {} in {} variables",
            a.degree, a.nvars, b.degree, b.nvars
        )));
    }
    Ok(a == b)
}

/// `E(f)`, the span of the partial derivatives.
pub fn e_space<F: Scalar>(f: &HomPoly<F>) -> PolySpace<F> {
    jacobian_component(f, f.degree().saturating_sub(1))
}

/// `E'(f)`, the degree-`d` piece of the Jacobian ideal.
pub fn e_prime_space<F: Scalar>(f: &HomPoly<F>) -> PolySpace<F> {
    jacobian_component(f, f.degree())
}

/// Degree-`m` piece of the Jacobian ideal, spanned by `x^α f_i` with
/// `|α| = m - (d - 1)`. Below degree `d - 1` the piece is zero.
pub fn jacobian_component<F: Scalar>(f: &HomPoly<F>, m: u32) -> PolySpace<F> {
    let nvars = f.nvars();
    let base = f.degree().saturating_sub(1);
    if m < base {
        return PolySpace::zero(nvars, m);
    }
    let grad = f.gradient();
    let shifts = monomials_of_degree(nvars, m - base);
    let generators: Vec<HomPoly<F>> = grad
        .iter()
        .flat_map(|fi| shifts.iter().map(move |a| fi.mul_monomial(a)))
        .collect();
    PolySpace::span_in(nvars, m, &generators).expect("generators share a degree")
}

/// A basis of `AR(f)_m`: tuples `(a_0, ..., a_n)` of degree-`m` forms with
/// `sum a_i f_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySpace<F> {
    pub degree: u32,
    pub basis: Vec<Vec<HomPoly<F>>>,
}

impl<F: Scalar> SyzygySpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// `sum_i a_i f_i`.
pub fn apply_relation<F: Scalar>(relation: &[HomPoly<F>], grad: &[HomPoly<F>]) -> HomPoly<F> {
    assert_eq!(relation.len(), grad.len());
    let nvars = grad[0].nvars();
    let degree = relation[0].degree() + grad[0].degree();
    relation
        .iter()
        .zip(grad)
        .fold(HomPoly::zero(nvars, degree), |acc, (a, g)| &acc + &(a * g))
}

/// Matrix of `(a_i) -> sum a_i f_i` from `(S_m)^{n+1}` to `S_{m+d-1}`.
/// Columns are ordered by partial index, then by the monomial order of `S_m`.
fn relation_system<F: Scalar>(grad: &[HomPoly<F>], m: u32) -> (Matrix<F>, MonomialBasis) {
    let nvars = grad[0].nvars();
    let source = MonomialBasis::new(nvars, m);
    let target = MonomialBasis::new(nvars, m + grad[0].degree());
    let mut system = Matrix::zeros(target.len(), grad.len() * source.len());
    for (i, fi) in grad.iter().enumerate() {
        for (k, alpha) in source.monomials().iter().enumerate() {
            let col = i * source.len() + k;
            for (e, c) in fi.terms() {
                let row = target.index_of(&e.mul(alpha)).expect("degree matches");
                system[(row, col)] = c.clone();
            }
        }
    }
    (system, source)
}

/// `AR(f)_m` as the kernel of the relation map in monomial coordinates.
pub fn syzygies<F: Scalar>(f: &HomPoly<F>, m: u32) -> SyzygySpace<F> {
    let grad = f.gradient();
    let nvars = f.nvars();
    let (system, source) = relation_system(&grad, m);
    let basis = system
        .kernel()
        .into_iter()
        .map(|v| {
            v.chunks(source.len())
                .map(|chunk| source.polynomial(nvars, m, chunk))
                .collect()
        })
        .collect();
    SyzygySpace { degree: m, basis }
}

/// `mdr_0(f) = min { m : AR(f)_m != 0 }`. A cone has a constant relation and
/// gets zero. The Koszul relations bound the search by `d - 1`.
pub fn mdr0<F: Scalar>(f: &HomPoly<F>) -> Result<u32, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    let grad = f.gradient();
    if grad.len() < 2 {
        return Err(IdealError::SinglePartial);
    }
    if grad.iter().any(HomPoly::is_zero) {
        return Ok(0);
    }
    for m in 0..f.degree().saturating_sub(1) {
        let (system, _) = relation_system(&grad, m);
        let full_mod_p = system.rank_mod_p(modp::PRIME) == Some(system.cols());
        if !full_mod_p && system.rank() < system.cols() {
            return Ok(m);
        }
    }
    // Two nonzero partials give the Koszul relation f_j e_i - f_i e_j.
    Ok(f.degree() - 1)
}

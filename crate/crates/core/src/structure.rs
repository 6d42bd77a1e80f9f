//! Classification of pairs of forms that share a Jacobian ideal.
//!
//! When `E(f) = E(g)` and neither form is a cone there is a unique invertible
//! matrix `C` with `∇f = C ∇g`. If `C` is diagonalizable (squarefree minimal
//! polynomial) both forms split as Sebastiani-Thom sums along the eigenspaces;
//! otherwise a nontrivial Jordan block forces a point of multiplicity `d - 1`.
//! Both branches are certified exactly, and whenever the eigenvalues are
//! rational the splitting or the singular point is constructed explicitly.

use num_traits::{One, Zero};

use crate::error::{AnalysisError, PreconditionError};
use crate::graded::{e_space, span_equal};
use crate::linalg::{eigen_report, rational_jordan_transform, EigenReport, JordanDecomposition};
use crate::poly::apply_matrix;
use crate::{Poly, Rat, RatMatrix};

/// Result of looking for a linear dependency among the partials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReduction {
    pub is_cone: bool,
    /// `f(A x)` does not depend on `x_{eliminated_index}`.
    pub a: Option<RatMatrix>,
    pub eliminated_index: Option<usize>,
}

pub fn cone_detect(f: &Poly) -> ConeReduction {
    let nvars = f.nvars();
    let grad = f.gradient();
    let coords = crate::graded::MonomialBasis::new(nvars, f.degree().saturating_sub(1));
    let columns: Vec<Vec<Rat>> = grad.iter().map(|g| coords.coordinates(g)).collect();
    let relations = RatMatrix::from_columns(&columns)
        .expect("equal lengths")
        .kernel();
    let eliminated = (0..nvars).find_map(|i| {
        relations
            .iter()
            .find(|rel| !rel[i].is_zero())
            .map(|rel| (i, rel.clone()))
    });
    match eliminated {
        None => ConeReduction {
            is_cone: false,
            a: None,
            eliminated_index: None,
        },
        Some((i, relation)) => {
            // ∇(f∘A) = Aᵗ (∇f)∘A, so putting the relation in row i of Aᵗ
            // kills the i-th partial.
            let mut at = RatMatrix::identity(nvars);
            for (j, c) in relation.into_iter().enumerate() {
                at[(i, j)] = c;
            }
            ConeReduction {
                is_cone: true,
                a: Some(at.transpose()),
                eliminated_index: Some(i),
            }
        }
    }
}

fn is_cone(f: &Poly) -> bool {
    e_space(f).dim() < f.nvars()
}

/// `∇f = C ∇g` together with the spectral data of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationStructure {
    pub c: RatMatrix,
    pub report: EigenReport,
    pub jordan: Option<JordanDecomposition>,
}

/// The unique `C` with `∇f = C ∇g`, for `E(f) = E(g)` and `g` not a cone.
pub fn relation_matrix(f: &Poly, g: &Poly) -> Result<RelationStructure, AnalysisError> {
    if f.nvars() != g.nvars() || f.degree() != g.degree() {
        return Err(PreconditionError::ShapeMismatch.into());
    }
    let space = e_space(g);
    if space.dim() < g.nvars() {
        return Err(PreconditionError::Cone { which: "g" }.into());
    }
    if !span_equal(&e_space(f), &space)? {
        return Err(PreconditionError::SpansDiffer.into());
    }
    let coords = |p: &Poly| space.coordinates(p).expect("partials lie in E");
    let gc = RatMatrix::from_rows(g.gradient().iter().map(coords).collect()).expect("square");
    let fc = RatMatrix::from_rows(f.gradient().iter().map(coords).collect()).expect("square");
    let gc_inv = gc
        .inverse()
        .ok_or_else(|| AnalysisError::Internal("partials of g are not a basis of E(g)".into()))?;
    let c = &fc * &gc_inv;
    if apply_matrix(&c, &g.gradient()) != f.gradient() {
        return Err(AnalysisError::Internal(
            "relation matrix does not reproduce ∇f".into(),
        ));
    }
    let report = eigen_report(&c).expect("square");
    let jordan = rational_jordan_transform(&c);
    Ok(RelationStructure { c, report, jordan })
}

/// `∇f = J ∇g` symbolically.
pub fn verify_jordan_relation(f: &Poly, g: &Poly, j: &RatMatrix) -> bool {
    j.rows() == g.nvars()
        && j.cols() == g.nvars()
        && f.nvars() == g.nvars()
        && apply_matrix(j, &g.gradient()) == f.gradient()
}

/// Multiplicity of `V(f)` at the projective point `p`.
///
/// `p` is moved to `[0 : ... : 0 : 1]` by a matrix whose last column is `p`
/// and whose other columns are the unit vectors except the one at the first
/// nonzero coordinate of `p`; the answer is the lowest degree of the
/// dehomogenized form.
pub fn multiplicity_at(f: &Poly, p: &[Rat]) -> Result<u32, PreconditionError> {
    let nvars = f.nvars();
    if p.len() != nvars {
        return Err(crate::error::PolyError::VariableCount {
            expected: nvars,
            found: p.len(),
        }
        .into());
    }
    let pivot = p
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(PreconditionError::ZeroPoint)?;
    if !f.evaluate(p)?.is_zero() {
        return Ok(0);
    }
    let moved = f.linear_substitute(&move_to_last(p, pivot))?;
    let last = nvars - 1;
    Ok(moved
        .terms()
        .map(|(e, _)| f.degree() - e.get(last))
        .min()
        .unwrap_or(f.degree()))
}

fn move_to_last(p: &[Rat], pivot: usize) -> RatMatrix {
    let nvars = p.len();
    let mut columns: Vec<Vec<Rat>> = (0..nvars)
        .filter(|&j| j != pivot)
        .map(|j| {
            let mut e = vec![Rat::zero(); nvars];
            e[j] = Rat::one();
            e
        })
        .collect();
    columns.push(p.to_vec());
    RatMatrix::from_columns(&columns).expect("square")
}

/// `det Hess(f) = c · ℓ^e` with `ℓ` linear and its first nonzero coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianPower {
    pub c: Rat,
    pub ell: Poly,
    pub e: u32,
    /// Point where the Hessian determinant was probed.
    pub probe: Vec<Rat>,
}

/// Checks whether the Hessian determinant is a constant times a power of a
/// linear form; such a form is neither a cone nor of Sebastiani-Thom type.
pub fn hessian_power_test(f: &Poly) -> Result<Option<HessianPower>, PreconditionError> {
    if f.degree() < 3 {
        return Err(PreconditionError::Degree {
            requirement: "d >= 3",
            found: f.degree(),
        });
    }
    let h = f.hessian_det()?;
    if h.is_zero() {
        return Ok(None);
    }
    let q = nonvanishing_point(&h);
    let hq = h.evaluate(&q)?;
    let grad_at_q: Vec<Rat> = h
        .gradient()
        .iter()
        .map(|hi| hi.evaluate(&q).expect("same ring"))
        .collect();
    let ell = Poly::linear_form(&grad_at_q).monic();
    let e = h.degree();
    let ell_q = ell.evaluate(&q)?;
    let lhs = h.scale(&num_traits::pow(ell_q.clone(), e as usize));
    let rhs = ell.pow(e).scale(&hq);
    if lhs != rhs {
        return Ok(None);
    }
    Ok(Some(HessianPower {
        c: hq / num_traits::pow(ell_q, e as usize),
        ell,
        e,
        probe: q,
    }))
}

/// First point of the integer grid, in order of increasing max-norm, where a
/// nonzero form does not vanish.
fn nonvanishing_point(h: &Poly) -> Vec<Rat> {
    let nvars = h.nvars();
    for radius in 1i64.. {
        let values: Vec<i64> = std::iter::once(0)
            .chain((1..=radius).flat_map(|k| [k, -k]))
            .collect();
        for index in 0..values.len().pow(nvars as u32) {
            let mut rest = index;
            let mut point = vec![0i64; nvars];
            for slot in point.iter_mut().rev() {
                *slot = values[rest % values.len()];
                rest /= values.len();
            }
            if point.iter().all(|v| v.abs() < radius) {
                continue;
            }
            let q: Vec<Rat> = point.iter().map(|&v| Rat::from_integer(v.into())).collect();
            if !h.evaluate(&q).expect("same ring").is_zero() {
                return q;
            }
        }
    }
    unreachable!("a nonzero form cannot vanish on a grid wider than its degree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    SameHypersurface,
    StType,
    MultiplicityWitness,
    /// Reserved: the squarefree certificate always decides the branch.
    IndeterminateOverQ,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::SameHypersurface => "same_hypersurface",
            Outcome::StType => "st_type",
            Outcome::MultiplicityWitness => "multiplicity_witness",
            Outcome::IndeterminateOverQ => "indeterminate_over_Q",
        }
    }
}

/// Which form of the pair a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F,
    G,
}

/// Sebastiani-Thom splitting of `g` along the eigenspaces of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StSplitting {
    /// `B` with `x = B x'`; `g(B x')` is the split form.
    pub coordinate_change: RatMatrix,
    pub transformed_g: Poly,
    /// Groups of new coordinates, one per eigenvalue.
    pub groups: Vec<Vec<usize>>,
    pub eigenvalues: Vec<Rat>,
    /// The new coordinates of each group written in the original variables.
    pub group_forms: Vec<Vec<Poly>>,
    /// One summand per group, in the original variables; they add up to `g`.
    pub parts: Vec<Poly>,
}

/// A point where one form of the pair has multiplicity `d - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPoint {
    pub side: Side,
    pub point: Vec<Rat>,
    pub multiplicity: u32,
    /// New coordinate (in `x = B x'`) in which the form is linear.
    pub linear_index: usize,
    pub coordinate_change: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub outcome: Outcome,
    /// `c` with `f = c g` for the same-hypersurface outcome.
    pub scalar: Option<Rat>,
    pub relation: Option<RelationStructure>,
    pub st_splitting: Option<StSplitting>,
    /// Witness on `V(g)` first, then on `V(f)` when derivable.
    pub witnesses: Vec<WitnessPoint>,
    pub hessian_power: Option<HessianPower>,
}

impl Classification {
    pub fn witness_point(&self) -> Option<&WitnessPoint> {
        self.witnesses.first()
    }

    pub fn witness_for(&self, side: Side) -> Option<&WitnessPoint> {
        self.witnesses.iter().find(|w| w.side == side)
    }
}

/// Decides the dichotomy for a pair with `E(f) = E(g)`.
pub fn classify_pair(f: &Poly, g: &Poly) -> Result<Classification, AnalysisError> {
    if f.nvars() != g.nvars() || f.degree() != g.degree() {
        return Err(PreconditionError::ShapeMismatch.into());
    }
    if g.degree() < 3 {
        return Err(PreconditionError::Degree {
            requirement: "d >= 3",
            found: g.degree(),
        }
        .into());
    }
    if is_cone(f) {
        return Err(PreconditionError::Cone { which: "f" }.into());
    }
    if is_cone(g) {
        return Err(PreconditionError::Cone { which: "g" }.into());
    }
    if let Some(c) = f.ratio_to(g) {
        return Ok(Classification {
            outcome: Outcome::SameHypersurface,
            scalar: Some(c),
            relation: None,
            st_splitting: None,
            witnesses: Vec::new(),
            hessian_power: None,
        });
    }
    let relation = relation_matrix(f, g)?;
    let mut result = Classification {
        outcome: Outcome::IndeterminateOverQ,
        scalar: None,
        relation: None,
        st_splitting: None,
        witnesses: Vec::new(),
        hessian_power: None,
    };
    if relation.report.is_diagonalizable_over_closure {
        result.outcome = Outcome::StType;
        if let Some(jordan) = &relation.jordan {
            result.st_splitting = Some(st_splitting(g, jordan)?);
        }
    } else {
        result.outcome = Outcome::MultiplicityWitness;
        if let Some(jordan) = &relation.jordan {
            result.witnesses.push(witness_point(g, Side::G, jordan)?);
            let inverse = relation.c.inverse().expect("C is invertible");
            let back = rational_jordan_transform(&inverse)
                .ok_or_else(|| AnalysisError::Internal("C^-1 lost rational eigenvalues".into()))?;
            result.witnesses.push(witness_point(f, Side::F, &back)?);
        }
        result.hessian_power = hessian_power_test(g)?;
    }
    result.relation = Some(relation);
    Ok(result)
}

fn st_splitting(g: &Poly, jordan: &JordanDecomposition) -> Result<StSplitting, AnalysisError> {
    let nvars = g.nvars();
    let b = jordan.p.transpose();
    let transformed = g.linear_substitute(&b)?;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut eigenvalues: Vec<Rat> = Vec::new();
    for block in &jordan.blocks {
        if eigenvalues.last() != Some(&block.eigenvalue) {
            eigenvalues.push(block.eigenvalue.clone());
            groups.push(Vec::new());
        }
        groups
            .last_mut()
            .unwrap()
            .extend(block.offset..block.offset + block.size);
    }
    let group_of = |i: usize| groups.iter().position(|grp| grp.contains(&i)).unwrap();
    let hess = transformed.hessian()?;
    for i in 0..nvars {
        for j in 0..nvars {
            if group_of(i) != group_of(j) && !hess.get(i, j).is_zero() {
                return Err(AnalysisError::Internal(format!(
                    "mixed second partial g_{i}{j} survives across eigenvalue groups"
                )));
            }
        }
    }
    let transformed_parts: Vec<Poly> = groups
        .iter()
        .map(|grp| {
            Poly::from_terms(
                nvars,
                transformed.degree(),
                transformed
                    .terms()
                    .filter(|(e, _)| (0..nvars).all(|v| e.get(v) == 0 || grp.contains(&v)))
                    .map(|(e, c)| (e.clone(), c.clone())),
            )
            .expect("terms of g")
        })
        .collect();
    let total = transformed_parts
        .iter()
        .fold(Poly::zero(nvars, g.degree()), |acc, p| &acc + p);
    if total != transformed {
        return Err(AnalysisError::Internal(
            "split parts do not add up to g".into(),
        ));
    }
    let back = b.inverse().expect("invertible");
    let parts = transformed_parts
        .iter()
        .map(|p| p.linear_substitute(&back))
        .collect::<Result<Vec<_>, _>>()?;
    let group_forms = groups
        .iter()
        .map(|grp| {
            grp.iter()
                .map(|&k| Poly::linear_form(back.row(k)))
                .collect()
        })
        .collect();
    Ok(StSplitting {
        coordinate_change: b,
        transformed_g: transformed,
        groups,
        eigenvalues,
        group_forms,
        parts,
    })
}

/// For `∇other = P⁻¹JP ∇h` with a nontrivial block ending at index `N`, the
/// form `h(Pᵗ x')` has vanishing second derivative in `x'_N`, so `h` has
/// multiplicity `d - 1` at the point `Pᵗ e_N`.
fn witness_point(
    h: &Poly,
    side: Side,
    jordan: &JordanDecomposition,
) -> Result<WitnessPoint, AnalysisError> {
    let block = jordan
        .blocks
        .iter()
        .find(|b| b.size > 1)
        .ok_or_else(|| AnalysisError::Internal("no nontrivial Jordan block".into()))?;
    let last = block.offset + block.size - 1;
    let b = jordan.p.transpose();
    let transformed = h.linear_substitute(&b)?;
    if !transformed.partial(last)?.partial(last)?.is_zero() {
        return Err(AnalysisError::Internal(format!(
            "second derivative in x'_{last} does not vanish"
        )));
    }
    let point = b.column(last);
    let multiplicity = multiplicity_at(h, &point)?;
    if multiplicity + 1 < h.degree() {
        return Err(AnalysisError::Internal(format!(
            "witness point has multiplicity {multiplicity} < d - 1"
        )));
    }
    Ok(WitnessPoint {
        side,
        point: normalize_point(point),
        multiplicity,
        linear_index: last,
        coordinate_change: b,
    })
}

/// Scales a projective point so its first nonzero coordinate is one.
pub fn normalize_point(p: Vec<Rat>) -> Vec<Rat> {
    match p.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / &lead).collect()
        }
        None => p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_poly, parse_poly_in};
    use crate::rat;

    fn p(s: &str) -> Poly {
        parse_poly_in(s, 3).unwrap()
    }

    fn point(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn cone_with_missing_variable() {
        let r = cone_detect(&p("x^3 + y^3"));
        assert!(r.is_cone);
        assert_eq!(r.eliminated_index, Some(2));
    }

    #[test]
    fn cone_with_proportional_partials() {
        let f = parse_poly("(x + y)^3").unwrap();
        let r = cone_detect(&f);
        assert!(r.is_cone);
        let reduced = f.linear_substitute(r.a.as_ref().unwrap()).unwrap();
        assert!(reduced
            .partial(r.eliminated_index.unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn fermat_is_not_a_cone() {
        assert!(!cone_detect(&p("x^3 + y^3 + z^3")).is_cone);
    }

    #[test]
    fn relation_matrix_diagonal() {
        let r = relation_matrix(&p("x^3 + y^3 + z^3"), &p("x^3 + 2*y^3 + 2*z^3")).unwrap();
        assert_eq!(r.c, RatMatrix::diagonal(&[rat(1, 1), rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn relation_matrix_jordan() {
        let g = p("x^2*z + x*y^2");
        for lambda in [1, 2, -3] {
            let f = &g.scale(&rat(lambda, 1)) + &p("x^2*y");
            let r = relation_matrix(&f, &g).unwrap();
            assert_eq!(
                r.c,
                RatMatrix::from_i64(&[&[lambda, 1, 0], &[0, lambda, 1], &[0, 0, lambda]])
            );
        }
        assert_eq!(relation_matrix(&g, &g).unwrap().c, RatMatrix::identity(3));
    }

    #[test]
    fn relation_matrix_preconditions() {
        let g = p("x^3 + y^3 + z^3");
        assert_eq!(
            relation_matrix(&p("x^3 + y^3 + z^3 + x*y*z"), &g),
            Err(PreconditionError::SpansDiffer.into())
        );
        assert_eq!(
            relation_matrix(&g, &p("x^3 + y^3")),
            Err(PreconditionError::Cone { which: "g" }.into())
        );
    }

    #[test]
    fn multiplicity_examples() {
        let g = p("x^2*z + x*y^2");
        assert_eq!(multiplicity_at(&g, &point(&[0, 0, 1])).unwrap(), 2);
        assert_eq!(multiplicity_at(&g, &point(&[1, 0, 0])).unwrap(), 1);
        assert_eq!(
            multiplicity_at(&p("x^3 + y^3 + z^3"), &point(&[1, 0, 0])).unwrap(),
            0
        );
        assert_eq!(
            multiplicity_at(&g, &point(&[0, 0, 0])),
            Err(PreconditionError::ZeroPoint)
        );
    }

    #[test]
    fn hessian_power_examples() {
        let half = p("1/2*x^2*z + 1/2*x*y^2");
        let hp = hessian_power_test(&half).unwrap().unwrap();
        assert_eq!(hp.ell, p("x"));
        assert_eq!(hp.e, 3);
        assert_eq!(hp.c, rat(-1, 1));
        assert!(hessian_power_test(&p("x^3 + y^3 + z^3")).unwrap().is_none());
        assert!(hessian_power_test(&p("x^2 + y^2")).is_err());
    }

    #[test]
    fn classify_intro_pair() {
        let g = p("x^2*z + x*y^2");
        let f = &g + &p("x^2*y");
        let c = classify_pair(&f, &g).unwrap();
        assert_eq!(c.outcome, Outcome::MultiplicityWitness);
        let w = c.witness_point().unwrap();
        assert_eq!(w.side, Side::G);
        assert_eq!(w.point, point(&[0, 0, 1]));
        assert_eq!(w.multiplicity, 2);
        let wf = c.witness_for(Side::F).unwrap();
        assert_eq!(wf.point, point(&[0, 0, 1]));
        assert_eq!(wf.multiplicity, 2);
        assert!(c.hessian_power.is_some());
    }

    #[test]
    fn classify_diagonal_pair() {
        let f = p("x^3 + y^3 + z^3");
        let g = p("x^3 + 2*y^3 + 2*z^3");
        let c = classify_pair(&f, &g).unwrap();
        assert_eq!(c.outcome, Outcome::StType);
        let s = c.st_splitting.unwrap();
        let mut parts: Vec<Poly> = s.parts.clone();
        parts.sort_by_key(|q| q.num_terms());
        assert_eq!(parts, vec![p("x^3"), p("2*y^3 + 2*z^3")]);
    }

    #[test]
    fn classify_same_hypersurface() {
        let g = p("x^2*z + x*y^2");
        let c = classify_pair(&g.scale(&rat(2, 1)), &g).unwrap();
        assert_eq!(c.outcome, Outcome::SameHypersurface);
        assert_eq!(c.scalar, Some(rat(2, 1)));
    }

    #[test]
    fn classify_rejects_bad_input() {
        let g = p("x^3 + y^3 + z^3");
        assert!(matches!(
            classify_pair(&p("x^3 + y^3"), &g),
            Err(AnalysisError::Precondition(PreconditionError::Cone {
                which: "f"
            }))
        ));
        assert!(matches!(
            classify_pair(&p("x^2 + y^2 + z^2"), &p("x^2 + 2*y^2 + z^2")),
            Err(AnalysisError::Precondition(
                PreconditionError::Degree { .. }
            ))
        ));
    }

    #[test]
    fn jordan_relation_check() {
        let g = p("x^2*z + x*y^2");
        let f = &g + &p("x^2*y");
        let j = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert!(verify_jordan_relation(&f, &g, &j));
        assert!(verify_jordan_relation(&g, &g, &RatMatrix::identity(3)));
        assert!(!verify_jordan_relation(&g, &f, &j));
    }
}

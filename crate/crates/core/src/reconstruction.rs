//! Recovering a form from the span of its partial derivatives, and the
//! pipeline from equal `E'` spaces to the classification of a pair.
//!
//! A basis `F_0, ..., F_n` of `E` is a gradient exactly when it is symmetric,
//! `∂F_i/∂x_j = ∂F_j/∂x_i`. Writing `F = M G` for the canonical basis `G` of
//! `E` turns symmetry into a linear system on the entries of `M`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{AnalysisError, PreconditionError};
use crate::graded::{e_prime_space, e_space, mdr0, span_equal, MonomialBasis};
use crate::poly::{apply_matrix, euler_sum};
use crate::structure::{classify_pair, hessian_power_test, Classification};
use crate::witness::random_poly_with;
use crate::{Poly, Rat, RatMatrix, RatPolySpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricBasisSolution {
    /// Dimension of the space of matrices `M` making `M G` symmetric.
    pub nullity: usize,
    /// The invertible representative when the solution is unique up to scale.
    pub m: Option<RatMatrix>,
    pub f: Option<Vec<Poly>>,
}

fn check_space(space: &RatPolySpace) -> Result<(), PreconditionError> {
    if space.dim() != space.nvars() {
        return Err(PreconditionError::SpaceDimension {
            expected: space.nvars(),
            found: space.dim(),
        });
    }
    if space.degree() < 2 {
        return Err(PreconditionError::Degree {
            requirement: "d - 1 >= 2",
            found: space.degree() + 1,
        });
    }
    Ok(())
}

/// Basis of the matrices `M` for which `M G` is a symmetric tuple.
pub fn symmetric_solutions(space: &RatPolySpace) -> Result<Vec<RatMatrix>, PreconditionError> {
    check_space(space)?;
    let size = space.nvars();
    let g = space.basis();
    let target = MonomialBasis::new(size, space.degree() - 1);
    // dg[k][j] = coordinates of ∂G_k/∂x_j
    let dg: Vec<Vec<Vec<Rat>>> = g
        .iter()
        .map(|gk| {
            (0..size)
                .map(|j| target.coordinates(&gk.partial(j).expect("in range")))
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            let mut block = vec![vec![Rat::zero(); size * size]; target.len()];
            for (k, dgk) in dg.iter().enumerate() {
                for (row, (a, b)) in block.iter_mut().zip(dgk[j].iter().zip(&dgk[i])) {
                    row[i * size + k] += a;
                    row[j * size + k] -= b;
                }
            }
            rows.extend(block);
        }
    }
    let system = if rows.is_empty() {
        RatMatrix::zeros(0, size * size)
    } else {
        RatMatrix::from_rows(rows).expect("rectangular")
    };
    Ok(system
        .kernel()
        .into_iter()
        .map(|v| {
            RatMatrix::from_rows(v.chunks(size).map(<[Rat]>::to_vec).collect()).expect("square")
        })
        .collect())
}

/// Scales a tuple so that the leading coefficient of its first nonzero entry
/// is one.
fn normalize_tuple(m: RatMatrix, tuple: Vec<Poly>) -> (RatMatrix, Vec<Poly>) {
    let lead = tuple
        .iter()
        .find_map(|p| p.leading_term().map(|(_, c)| c.clone()));
    match lead {
        Some(c) => {
            let inv = Rat::one() / c;
            (m.scale(&inv), tuple.iter().map(|p| p.scale(&inv)).collect())
        }
        None => (m, tuple),
    }
}

/// The symmetric bases of `E`, with a representative when they are unique up
/// to a common scalar.
pub fn symmetric_basis(space: &RatPolySpace) -> Result<SymmetricBasisSolution, PreconditionError> {
    let solutions = symmetric_solutions(space)?;
    let nullity = solutions.len();
    let (m, f) = match solutions.into_iter().next() {
        Some(m) if nullity == 1 && m.is_invertible() => {
            let tuple = apply_matrix(&m, space.basis());
            let (m, tuple) = normalize_tuple(m, tuple);
            (Some(m), Some(tuple))
        }
        _ => (None, None),
    };
    Ok(SymmetricBasisSolution { nullity, m, f })
}

/// The form `f` with `∇f = F`, if there is one.
pub fn integrate_gradient(tuple: &[Poly]) -> Option<Poly> {
    let first = tuple.first()?;
    if tuple
        .iter()
        .any(|p| p.nvars() != tuple.len() || p.degree() != first.degree())
    {
        return None;
    }
    let d = first.degree() + 1;
    let f = euler_sum(tuple)?.scale(&(Rat::one() / Rat::from_integer(d.into())));
    (f.gradient() == tuple).then_some(f)
}

/// Candidate solutions when there is more than one: each basis element, their
/// sum, then seeded random integer combinations.
fn candidate_solutions(solutions: &[RatMatrix]) -> impl Iterator<Item = RatMatrix> + '_ {
    let size = solutions[0].rows();
    let sum = solutions
        .iter()
        .fold(RatMatrix::zeros(size, size), |acc, m| acc.add(m));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let random = (0..32).map(move |_| {
        solutions
            .iter()
            .fold(RatMatrix::zeros(size, size), |acc, m| {
                acc.add(&m.scale(&Rat::from_integer(rng.gen_range(-100i64..=100).into())))
            })
    });
    solutions
        .iter()
        .cloned()
        .chain(std::iter::once(sum))
        .chain(random)
}

/// A form whose partials span `E`, scaled to leading coefficient one, and
/// whether it is unique up to scale.
pub fn reconstruct(space: &RatPolySpace) -> Result<Option<(Poly, bool)>, PreconditionError> {
    let solutions = symmetric_solutions(space)?;
    if solutions.is_empty() {
        return Ok(None);
    }
    let unique = solutions.len() == 1;
    for m in candidate_solutions(&solutions) {
        if !m.is_invertible() {
            continue;
        }
        let (_, tuple) = normalize_tuple(m.clone(), apply_matrix(&m, space.basis()));
        if let Some(f) = integrate_gradient(&tuple) {
            return Ok(Some((f.monic(), unique)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub mdr0_g: u32,
    /// `E(f) = E(g)`, checked before classifying.
    pub e_spans_equal: bool,
    pub classification: Classification,
}

/// From `E'(f) = E'(g)` with `d > 3`, `mdr0(g) >= 3` and `g` not a cone to
/// `E(f) = E(g)` and the classification of the pair.
pub fn eprime_pipeline(f: &Poly, g: &Poly) -> Result<PipelineResult, AnalysisError> {
    if f.nvars() != g.nvars() || f.degree() != g.degree() {
        return Err(PreconditionError::ShapeMismatch.into());
    }
    if g.degree() <= 3 {
        return Err(PreconditionError::Degree {
            requirement: "d > 3",
            found: g.degree(),
        }
        .into());
    }
    if !span_equal(&e_prime_space(f), &e_prime_space(g))? {
        return Err(PreconditionError::EPrimeSpansDiffer.into());
    }
    if e_space(g).dim() < g.nvars() {
        return Err(PreconditionError::Cone { which: "g" }.into());
    }
    let mdr0_g = mdr0(g)?;
    if mdr0_g < 3 {
        return Err(PreconditionError::MdrTooSmall { found: mdr0_g }.into());
    }
    if !span_equal(&e_space(f), &e_space(g))? {
        return Err(AnalysisError::Internal(
            "E'(f) = E'(g) with mdr0(g) >= 3 but E(f) != E(g)".into(),
        ));
    }
    let classification = classify_pair(f, g)?;
    Ok(PipelineResult {
        mdr0_g,
        e_spans_equal: true,
        classification,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeStats {
    pub n: usize,
    pub d: u32,
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: u32,
    /// Samples whose partials are linearly dependent, including zero samples.
    pub cone: usize,
    /// Samples whose symmetric basis is unique up to scale.
    pub unique: usize,
    /// Samples whose Hessian determinant is a constant times a power of a
    /// linear form.
    pub hessian_positive: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SampleFlags {
    pub cone: bool,
    pub unique: bool,
    pub hessian_positive: bool,
}

/// Sample `index` of a probe: the generator seeded with `seed` on stream
/// `index`, so samples are independent of evaluation order.
pub fn probe_sample(n: usize, d: u32, seed: u64, index: usize, bound: u32) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    random_poly_with(&mut rng, n, d, bound)
}

pub fn sample_flags(f: &Poly) -> SampleFlags {
    let space = e_space(f);
    if f.is_zero() || space.dim() < f.nvars() {
        return SampleFlags {
            cone: true,
            ..SampleFlags::default()
        };
    }
    let unique = symmetric_basis(&space)
        .map(|s| s.nullity == 1)
        .unwrap_or(false);
    let hessian_positive = matches!(hessian_power_test(f), Ok(Some(_)));
    SampleFlags {
        cone: false,
        unique,
        hessian_positive,
    }
}

/// Counts cones, unique reconstructions and Hessian obstructions among seeded
/// random forms of degree `d` in `n + 1` variables.
pub fn genericity_probe(
    n: usize,
    d: u32,
    samples: usize,
    seed: u64,
    coeff_bound: u32,
) -> Result<ProbeStats, PreconditionError> {
    if d < 3 {
        return Err(PreconditionError::Degree {
            requirement: "d >= 3",
            found: d,
        });
    }
    if samples == 0 {
        return Err(PreconditionError::Parameter(
            "samples must be at least 1".into(),
        ));
    }
    let flags: Vec<SampleFlags> = (0..samples)
        .into_par_iter()
        .map(|i| sample_flags(&probe_sample(n, d, seed, i, coeff_bound)))
        .collect();
    Ok(ProbeStats {
        n,
        d,
        samples,
        seed,
        coeff_bound,
        cone: flags.iter().filter(|s| s.cone).count(),
        unique: flags.iter().filter(|s| s.unique).count(),
        hessian_positive: flags.iter().filter(|s| s.hessian_positive).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly_in;
    use crate::graded::span;
    use crate::structure::Outcome;
    use crate::witness::random_invertible;

    fn p(text: &str) -> Poly {
        parse_poly_in(text, 3).unwrap()
    }

    fn scrambled_gradient_span(f: &Poly, seed: u64) -> RatPolySpace {
        let a = random_invertible(f.nvars(), seed, 3);
        span(&apply_matrix(&a, &f.gradient())).unwrap()
    }

    #[test]
    fn hesse_pencil_member_has_unique_symmetric_basis() {
        let f = p("x^3 + y^3 + z^3 + x*y*z");
        let sol = symmetric_basis(&scrambled_gradient_span(&f, 5)).unwrap();
        assert_eq!(sol.nullity, 1);
        let tuple = sol.f.unwrap();
        let c = tuple[0].ratio_to(&f.gradient()[0]).unwrap();
        for (a, b) in tuple.iter().zip(f.gradient()) {
            assert_eq!(*a, b.scale(&c));
        }
    }

    #[test]
    fn fermat_partials_have_nullity_three() {
        let space = span(&[p("x^2"), p("y^2"), p("z^2")]).unwrap();
        let sol = symmetric_basis(&space).unwrap();
        assert_eq!(sol.nullity, 3);
        assert!(sol.m.is_none());
    }

    #[test]
    fn intro_witness_is_ambiguous() {
        let g = p("x^2*z + x*y^2");
        assert!(symmetric_basis(&e_space(&g)).unwrap().nullity >= 2);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let space = span(&[p("x^2"), p("y^2")]).unwrap();
        assert!(symmetric_basis(&space).is_err());
    }

    #[test]
    fn integrate_gradient_examples() {
        let f = p("x^3 + y^3 + z^3");
        assert_eq!(integrate_gradient(&f.gradient()), Some(f));
        assert_eq!(
            integrate_gradient(&[p("y^2"), Poly::zero(3, 2), Poly::zero(3, 2)]),
            None
        );
    }

    #[test]
    fn reconstruct_fermat_is_not_unique() {
        let space = span(&[p("x^3"), p("y^3"), p("z^3")]).unwrap();
        let (f, unique) = reconstruct(&space).unwrap().unwrap();
        assert!(!unique);
        assert_eq!(f.support(), vec![0, 1, 2]);
        assert!(f.terms().all(|(e, _)| e.exps().contains(&4)));
    }

    #[test]
    fn reconstruct_random_quartic() {
        let f = crate::witness::random_poly(2, 4, 11, 5);
        let (r, unique) = reconstruct(&scrambled_gradient_span(&f, 3))
            .unwrap()
            .unwrap();
        assert!(unique);
        assert!(r.ratio_to(&f).is_some());
    }

    #[test]
    fn generic_subspace_does_not_integrate() {
        let space = span(&[
            p("x^3 + y*z^2"),
            p("x*y^2 + 2*z^3 - x^2*z"),
            p("y^3 + x*y*z - z^3"),
        ])
        .unwrap();
        assert_eq!(reconstruct(&space).unwrap(), None);
    }

    #[test]
    fn pipeline_on_fermat_quartics() {
        let f = p("x^4 + 2*y^4 + z^4");
        let g = p("x^4 + y^4 + z^4");
        let r = eprime_pipeline(&f, &g).unwrap();
        assert_eq!(r.mdr0_g, 3);
        assert_eq!(r.classification.outcome, Outcome::StType);
        let r = eprime_pipeline(&g.scale(&Rat::from_integer(2.into())), &g).unwrap();
        assert_eq!(r.classification.outcome, Outcome::SameHypersurface);
        let g3 = p("x^2*z + x*y^2");
        assert!(matches!(
            eprime_pipeline(&g3, &g3),
            Err(AnalysisError::Precondition(
                PreconditionError::Degree { .. }
            ))
        ));
    }

    #[test]
    fn probe_counts() {
        let stats = genericity_probe(2, 3, 40, 42, 10).unwrap();
        assert!(stats.unique > 30);
        assert_eq!(stats, genericity_probe(2, 3, 40, 42, 10).unwrap());
        let zero = genericity_probe(2, 3, 5, 1, 0).unwrap();
        assert_eq!(zero.cone, 5);
        assert_eq!(zero.unique, 0);
    }
}

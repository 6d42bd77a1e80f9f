//! Explicit pairs `f`, `g` with the same Jacobian ideal, and seeded random forms.
//!
//! The Jordan family is built inductively: if `f' = g' + h'` is a witness in
//! `n` variables, the next witness `g` is obtained by integrating the partials
//! of `h = g'` so that `∂g/∂x_{r+1} = ∂h/∂x_r`, and `f = g + h`. With the upper
//! Jordan block `J` this is exactly `∇f = J ∇g`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AnalysisError, PreconditionError};
use crate::graded::{e_space, span_equal};
use crate::poly::{monomials_of_degree, ExponentVector};
use crate::structure::verify_jordan_relation;
use crate::{Poly, Rat, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    JordanBlock,
    Case1,
    Case2,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::JordanBlock => "jordan_block",
            Family::Case1 => "case1",
            Family::Case2 => "case2",
        }
    }
}

/// What is known about `g` being a Sebastiani-Thom sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    /// Certified by the Hessian obstruction.
    NotSt,
    St,
    Unknown,
}

impl StStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StStatus::NotSt => "not_st",
            StStatus::St => "st",
            StStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    pub n: usize,
    pub d: u32,
    pub a: Option<Rat>,
    pub b: Option<Rat>,
    pub h: Option<Poly>,
}

/// A pair with `∇f = J ∇g`, hence `E(f) = E(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub f: Poly,
    pub g: Poly,
    pub j: RatMatrix,
    pub family: Family,
    pub params: WitnessParams,
    pub st_status: StStatus,
}

/// `(size x size)` upper Jordan block with eigenvalue `lambda`.
pub fn jordan_block(size: usize, lambda: &Rat) -> RatMatrix {
    let mut j = RatMatrix::identity(size).scale(lambda);
    for i in 0..size.saturating_sub(1) {
        j[(i, i + 1)] = Rat::one();
    }
    j
}

fn check_degree(d: u32) -> Result<(), PreconditionError> {
    if d < 3 {
        return Err(PreconditionError::Degree {
            requirement: "d >= 3",
            found: d,
        });
    }
    Ok(())
}

fn verify(pair: &WitnessPair) -> Result<(), AnalysisError> {
    if !verify_jordan_relation(&pair.f, &pair.g, &pair.j) {
        return Err(AnalysisError::Internal(format!(
            "{} pair does not satisfy ∇f = J∇g",
            pair.family.as_str()
        )));
    }
    if !span_equal(&e_space(&pair.f), &e_space(&pair.g))? {
        return Err(AnalysisError::Internal("E(f) and E(g) differ".into()));
    }
    if pair.f.ratio_to(&pair.g).is_some() {
        return Err(AnalysisError::Internal("f is proportional to g".into()));
    }
    Ok(())
}

/// Form `g` in one more variable with `∂g/∂x_{r+1} = ∂h/∂x_r` for every `r`.
///
/// The `r`-th summand integrates `∂h/∂x_r` restricted to `x_1 = ... = x_r = 0`
/// in the variable `x_{r+1}`.
pub fn lift(h: &Poly) -> Poly {
    let nvars = h.nvars() + 1;
    let h = h.extend_vars(nvars);
    let mut g = Poly::zero(nvars, h.degree());
    for r in 0..nvars - 1 {
        let hr = h.partial(r).expect("in range");
        let restricted = hr.set_zero(&(1..=r).collect::<Vec<_>>());
        g = &g + &restricted.integrate(r + 1);
    }
    g
}

/// The non Sebastiani-Thom witness in `n + 1` variables with `J` the full
/// Jordan block of eigenvalue one.
pub fn jordan_witness(n: usize, d: u32) -> Result<WitnessPair, AnalysisError> {
    if n < 2 {
        return Err(PreconditionError::Parameter(format!("need n >= 2, got {n}")).into());
    }
    check_degree(d)?;
    let mut prev = Poly::zero(2, d);
    let mut h = Poly::monomial(ExponentVector::new(vec![d - 1, 1]), Rat::one());
    for _ in 1..n {
        let g = lift(&h);
        let h_ext = h.extend_vars(g.nvars());
        for r in 0..g.nvars() - 1 {
            if g.partial(r + 1)? != h_ext.partial(r)? {
                return Err(AnalysisError::Internal(format!(
                    "lifted form fails g_{} = h_{r}",
                    r + 1
                )));
            }
        }
        prev = h;
        h = g;
    }
    let g = h;
    let f = &g + &prev.extend_vars(g.nvars());
    let pair = WitnessPair {
        f,
        g,
        j: jordan_block(n + 1, &Rat::one()),
        family: Family::JordanBlock,
        params: WitnessParams {
            n,
            d,
            a: None,
            b: None,
            h: None,
        },
        st_status: StStatus::NotSt,
    };
    verify(&pair)?;
    Ok(pair)
}

/// `g = x^{d-1} z + (d-1)/2 x^{d-2} y^2 + A x^{d-1} y + B x^d` and
/// `f = g + x^{d-1} y + (A/d) x^d`.
pub fn case1_family(d: u32, a: &Rat, b: &Rat) -> Result<WitnessPair, AnalysisError> {
    check_degree(d)?;
    let m = |e: [u32; 3], c: Rat| Poly::monomial(ExponentVector::new(e.to_vec()), c);
    let dr = Rat::from_integer(d.into());
    let g = m([d - 1, 0, 1], Rat::one())
        + m(
            [d - 2, 2, 0],
            (&dr - Rat::one()) / Rat::from_integer(2.into()),
        )
        + m([d - 1, 1, 0], a.clone())
        + m([d, 0, 0], b.clone());
    let f = &g + &(m([d - 1, 1, 0], Rat::one()) + m([d, 0, 0], a / &dr));
    let x_pow = ExponentVector::new(vec![d - 2, 0, 0]);
    if f.div_monomial(&x_pow).is_none() || g.div_monomial(&x_pow).is_none() {
        return Err(AnalysisError::Internal(
            "x^(d-2) does not divide the pair".into(),
        ));
    }
    let pair = WitnessPair {
        f,
        g,
        j: jordan_block(3, &Rat::one()),
        family: Family::Case1,
        params: WitnessParams {
            n: 2,
            d,
            a: Some(a.clone()),
            b: Some(b.clone()),
            h: None,
        },
        st_status: StStatus::NotSt,
    };
    verify(&pair)?;
    Ok(pair)
}

/// `g = x^{d-1} y + H(x, z)` and `f = g + x^d / d`.
///
/// `H` is given either in two variables, read as `(x, z)`, or in three
/// variables without `y`.
pub fn case2_family(d: u32, h: &Poly) -> Result<WitnessPair, AnalysisError> {
    check_degree(d)?;
    let h3 = match h.nvars() {
        2 => Poly::from_terms(
            3,
            h.degree(),
            h.terms()
                .map(|(e, c)| (ExponentVector::new(vec![e.get(0), 0, e.get(1)]), c.clone())),
        )?,
        3 if h.support().contains(&1) => {
            return Err(PreconditionError::Parameter("H must not involve y".into()).into())
        }
        3 => h.clone(),
        k => {
            return Err(PreconditionError::Parameter(format!(
                "H must have 2 or 3 variables, found {k}"
            ))
            .into())
        }
    };
    let h3 = if h3.is_zero() {
        Poly::zero(3, d)
    } else if h3.degree() != d {
        return Err(PreconditionError::Parameter(format!(
            "H has degree {}, expected {d}",
            h3.degree()
        ))
        .into());
    } else {
        h3
    };
    let m = |e: [u32; 3], c: Rat| Poly::monomial(ExponentVector::new(e.to_vec()), c);
    let g = &m([d - 1, 1, 0], Rat::one()) + &h3;
    let f = &g + &m([d, 0, 0], Rat::one() / Rat::from_integer(d.into()));
    let z_d = m([0, 0, d], Rat::one());
    let st_status = if h3 == z_d {
        StStatus::St
    } else {
        StStatus::Unknown
    };
    let pair = WitnessPair {
        f,
        g,
        j: RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        family: Family::Case2,
        params: WitnessParams {
            n: 2,
            d,
            a: None,
            b: None,
            h: Some(h3),
        },
        st_status,
    };
    verify(&pair)?;
    Ok(pair)
}

/// Form of degree `d` in `n + 1` variables whose coefficients are uniform in
/// `[-bound, bound]`, drawn in decreasing graded-lex order of the monomials.
pub fn random_poly(n: usize, d: u32, seed: u64, bound: u32) -> Poly {
    random_poly_with(&mut ChaCha8Rng::seed_from_u64(seed), n, d, bound)
}

pub(crate) fn random_poly_with(rng: &mut ChaCha8Rng, n: usize, d: u32, bound: u32) -> Poly {
    let bound = i64::from(bound);
    let terms: Vec<_> = monomials_of_degree(n + 1, d)
        .into_iter()
        .map(|e| (e, Rat::from_integer(rng.gen_range(-bound..=bound).into())))
        .collect();
    Poly::from_terms(n + 1, d, terms).expect("homogeneous by construction")
}

/// Invertible `size x size` integer matrix with entries in `[-bound, bound]`,
/// redrawn until the determinant is nonzero.
pub fn random_invertible(size: usize, seed: u64, bound: u32) -> RatMatrix {
    assert!(
        bound > 0 || size == 0,
        "bound 0 admits no invertible matrix"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = i64::from(bound);
    loop {
        let rows = (0..size)
            .map(|_| {
                (0..size)
                    .map(|_| Rat::from_integer(rng.gen_range(-bound..=bound).into()))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).expect("rectangular");
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly_in;
    use crate::rat;

    fn p(text: &str, nvars: usize) -> Poly {
        parse_poly_in(text, nvars).unwrap()
    }

    #[test]
    fn jordan_witness_n2_d3_is_the_intro_pair() {
        let w = jordan_witness(2, 3).unwrap();
        assert_eq!(w.g, p("x^2*z + x*y^2", 3));
        assert_eq!(w.f, p("x^2*z + x*y^2 + x^2*y", 3));
        assert_eq!(w.j, jordan_block(3, &Rat::one()));
    }

    #[test]
    fn jordan_witness_n3_d3() {
        let w = jordan_witness(3, 3).unwrap();
        assert_eq!(w.g, p("x^2*t + 2*x*y*z + 1/3*y^3", 4));
        assert_eq!(w.f, p("x^2*t + 2*x*y*z + 1/3*y^3 + x^2*z + x*y^2", 4));
    }

    #[test]
    fn jordan_witness_rejects_small_parameters() {
        assert!(jordan_witness(1, 3).is_err());
        assert!(jordan_witness(2, 2).is_err());
    }

    #[test]
    fn case1_reduces_to_the_intro_pair() {
        let w = case1_family(3, &Rat::zero(), &Rat::zero()).unwrap();
        assert_eq!(w.g, p("x^2*z + x*y^2", 3));
        assert_eq!(w.f, p("x^2*z + x*y^2 + x^2*y", 3));
        let w = case1_family(4, &rat(1, 1), &rat(2, 1)).unwrap();
        assert!(verify_jordan_relation(&w.f, &w.g, &w.j));
    }

    #[test]
    fn case2_examples() {
        let w = case2_family(3, &p("z^3", 3)).unwrap();
        assert_eq!(w.g, p("x^2*y + z^3", 3));
        assert_eq!(w.st_status, StStatus::St);
        let w = case2_family(4, &p("x0^2*x1^2", 2)).unwrap();
        assert_eq!(w.g, p("x^3*y + x^2*z^2", 3));
        assert_eq!(w.st_status, StStatus::Unknown);
        let w = case2_family(5, &Poly::zero(3, 0)).unwrap();
        assert_eq!(w.g, p("x^4*y", 3));
        assert!(case2_family(3, &p("y^3", 3)).is_err());
        assert!(case2_family(3, &p("z^4", 3)).is_err());
    }

    #[test]
    fn random_poly_is_deterministic() {
        assert!(random_poly(2, 3, 7, 0).is_zero());
        let a = random_poly(2, 3, 7, 10);
        assert_eq!(a, random_poly(2, 3, 7, 10));
        assert_eq!(a.degree(), 3);
        assert_ne!(a, random_poly(2, 3, 8, 10));
    }
}

//! One line per acceptance criterion: `PASS`/`FAIL`, elapsed time against the
//! budget, and the observed values. The test fails if any criterion fails.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use jacobian_core::expr::parse_poly_in;
use jacobian_core::graded::{
    apply_relation, e_prime_space, e_space, mdr0, span, span_equal, syzygies,
};
use jacobian_core::poly::apply_matrix;
use jacobian_core::reconstruction::{eprime_pipeline, reconstruct, symmetric_basis};
use jacobian_core::structure::{
    classify_pair, cone_detect, hessian_power_test, relation_matrix, verify_jordan_relation,
    Outcome, Side,
};
use jacobian_core::witness::{
    case1_family, jordan_block, jordan_witness, random_invertible, random_poly,
};
use jacobian_core::{rat, ExponentVector, Poly, Rat};

type Verdict = Result<String, String>;

struct Report {
    failures: Vec<u32>,
}

impl Report {
    fn check(&mut self, id: u32, title: &str, budget_secs: u64, body: impl FnOnce() -> Verdict) {
        let budget = Duration::from_secs(budget_secs);
        let start = Instant::now();
        let verdict = body();
        let elapsed = start.elapsed();
        let (ok, detail) = match verdict {
            Ok(detail) if elapsed <= budget => (true, detail),
            Ok(detail) => (false, format!("{detail}; over time budget")),
            Err(detail) => (false, detail),
        };
        println!(
            "{} [{id:>2}] {title} ({:.3}s / {}s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget_secs
        );
        if !ok {
            self.failures.push(id);
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(text: &str, nvars: usize) -> Poly {
    parse_poly_in(text, nvars).unwrap()
}

/// `c * x^exps`, or zero when `c` is zero (exponents may then be meaningless).
fn term(nvars: usize, degree: u32, exps: &[i64], c: Rat) -> Poly {
    if c == rat(0, 1) || exps.iter().any(|&e| e < 0) {
        return Poly::zero(nvars, degree);
    }
    Poly::monomial(
        ExponentVector::new(exps.iter().map(|&e| e as u32).collect()),
        c,
    )
}

fn sum(terms: Vec<Poly>) -> Poly {
    let mut it = terms.into_iter();
    let first = it.next().unwrap();
    it.fold(first, |acc, t| &acc + &t)
}

/// `x^{d-1} z + (d-1)/2 x^{d-2} y^2` in the first three of `nvars` variables.
fn closed_n2(d: u32, nvars: usize) -> Poly {
    let d = i64::from(d);
    let pad = |mut v: Vec<i64>| {
        v.resize(nvars, 0);
        v
    };
    sum(vec![
        term(nvars, d as u32, &pad(vec![d - 1, 0, 1]), rat(1, 1)),
        term(nvars, d as u32, &pad(vec![d - 2, 2, 0]), rat(d - 1, 2)),
    ])
}

fn closed_n3(d: u32, nvars: usize) -> Poly {
    let d = i64::from(d);
    let pad = |mut v: Vec<i64>| {
        v.resize(nvars, 0);
        v
    };
    sum(vec![
        term(nvars, d as u32, &pad(vec![d - 1, 0, 0, 1]), rat(1, 1)),
        term(nvars, d as u32, &pad(vec![d - 2, 1, 1, 0]), rat(d - 1, 1)),
        term(
            nvars,
            d as u32,
            &pad(vec![d - 3, 3, 0, 0]),
            rat((d - 1) * (d - 2), 6),
        ),
    ])
}

fn closed_n4(d: u32) -> Poly {
    let d = i64::from(d);
    sum(vec![
        term(5, d as u32, &[d - 1, 0, 0, 0, 1], rat(1, 1)),
        term(5, d as u32, &[d - 2, 1, 0, 1, 0], rat(d - 1, 1)),
        term(5, d as u32, &[d - 2, 0, 2, 0, 0], rat(d - 1, 2)),
        term(5, d as u32, &[d - 3, 2, 1, 0, 0], rat((d - 1) * (d - 2), 2)),
        term(
            5,
            d as u32,
            &[d - 4, 4, 0, 0, 0],
            rat((d - 1) * (d - 2) * (d - 3), 24),
        ),
    ])
}

fn last_point(nvars: usize) -> Vec<Rat> {
    let mut v = vec![rat(0, 1); nvars];
    v[nvars - 1] = rat(1, 1);
    v
}

fn criterion_1() -> Verdict {
    let g = p("x^2*z + x*y^2", 3);
    for lambda in [1, 2, -3] {
        let f = &g.scale(&rat(lambda, 1)) + &p("x^2*y", 3);
        ensure(span_equal(&e_space(&f), &e_space(&g)).unwrap(), || {
            format!("λ={lambda}: E(f) != E(g)")
        })?;
        let rel = relation_matrix(&f, &g).map_err(|e| e.to_string())?;
        ensure(rel.c == jordan_block(3, &rat(lambda, 1)), || {
            format!("λ={lambda}: C = {}", rel.c)
        })?;
        let c = classify_pair(&f, &g).map_err(|e| e.to_string())?;
        ensure(c.outcome == Outcome::MultiplicityWitness, || {
            format!("λ={lambda}: {:?}", c.outcome)
        })?;
        let w = c.witness_for(Side::G).ok_or("no witness on V(g)")?;
        ensure(w.point == last_point(3) && w.multiplicity == 2, || {
            format!(
                "λ={lambda}: point {:?} multiplicity {}",
                w.point, w.multiplicity
            )
        })?;
    }
    Ok("λ ∈ {1,2,-3}: C = J_3(λ), witness [0:0:1] with multiplicity 2".into())
}

fn criterion_2() -> Verdict {
    for n in 2..=4usize {
        for d in 3..=5 {
            let w = jordan_witness(n, d).map_err(|e| e.to_string())?;
            ensure(
                verify_jordan_relation(&w.f, &w.g, &jordan_block(n + 1, &rat(1, 1))),
                || format!("n={n} d={d}: ∇f != J∇g"),
            )?;
        }
    }
    for d in 3..=9 {
        let w = jordan_witness(3, d).unwrap();
        let g = closed_n3(d, 4);
        let f = &g + &closed_n2(d, 4);
        ensure(w.g == g && w.f == f, || format!("n=3 d={d}: g = {}", w.g))?;
    }
    for d in 3..=6 {
        let w = jordan_witness(4, d).unwrap();
        let g = closed_n4(d);
        let f = &g + &closed_n3(d, 5);
        ensure(w.g == g && w.f == f, || format!("n=4 d={d}: g = {}", w.g))?;
    }
    Ok("n=2..4, d=3..5 verified; n=3 closed form for d=3..9, n=4 for d=3..6".into())
}

fn criterion_3() -> Verdict {
    for n in 2..=3usize {
        for d in 3..=5u32 {
            let g = jordan_witness(n, d).unwrap().g;
            let h = g.hessian_det().unwrap();
            let expected_exp = (d - 2) * (n as u32 + 1);
            let (e, c) = h
                .leading_term()
                .ok_or_else(|| format!("n={n} d={d}: Hessian vanishes"))?;
            ensure(
                h.num_terms() == 1 && *e == ExponentVector::unit(n + 1, 0, expected_exp),
                || format!("n={n} d={d}: Hess(g) = {h}"),
            )?;
            ensure(*c != rat(0, 1), || "zero constant".into())?;
            let hp = hessian_power_test(&g).unwrap().ok_or("power test failed")?;
            ensure(
                hp.ell == Poly::var(n + 1, 0) && hp.e == expected_exp,
                || "wrong ℓ".into(),
            )?;
        }
    }
    let g = p("x^2*z + x*y^2", 3);
    let unnormalized = g.hessian_det().unwrap();
    let normalized = g.scale(&rat(1, 2)).hessian_det().unwrap();
    ensure(normalized == p("-x^3", 3), || {
        format!("Hess(g/2) = {normalized}")
    })?;
    Ok(format!(
        "Hess(g) = c·x0^((d-2)(n+1)); n=2,d=3: Hess(g) = {unnormalized}, Hess(g/2) = {normalized}"
    ))
}

fn criterion_4() -> Verdict {
    let vars = ["x", "y", "z", "t"];
    for n in 2..=3usize {
        for d in 3..=5u32 {
            let text: Vec<String> = vars[..=n].iter().map(|v| format!("{v}^{d}")).collect();
            let f = p(&text.join(" + "), n + 1);
            let m = mdr0(&f).unwrap();
            ensure(m == d - 1, || format!("n={n} d={d}: mdr0 = {m}"))?;
        }
    }
    let g = p("x^2*z + x*y^2", 3);
    let m = mdr0(&g).unwrap();
    ensure(m == 1, || format!("mdr0(x²z+xy²) = {m}"))?;
    let relation = vec![p("x", 3), p("-1/2*y", 3), p("-2*z", 3)];
    ensure(apply_relation(&relation, &g.gradient()).is_zero(), || {
        "syzygy fails multiply-back".into()
    })?;
    let ar1 = syzygies(&g, 1);
    let mut flat: Vec<Vec<Rat>> = ar1
        .basis
        .iter()
        .map(|r| {
            r.iter()
                .flat_map(|q| jacobian_core::graded::MonomialBasis::new(3, 1).coordinates(q))
                .collect()
        })
        .collect();
    let rank = jacobian_core::RatMatrix::from_rows(flat.clone())
        .unwrap()
        .rank();
    flat.push(
        relation
            .iter()
            .flat_map(|q| jacobian_core::graded::MonomialBasis::new(3, 1).coordinates(q))
            .collect(),
    );
    ensure(
        jacobian_core::RatMatrix::from_rows(flat).unwrap().rank() == rank,
        || "syzygy not in AR(g)_1".into(),
    )?;
    Ok(format!(
        "Fermat: mdr0 = d-1 for n=2,3, d=3..5; mdr0(x²z+xy²) = 1, dim AR_1 = {}",
        ar1.dim()
    ))
}

fn criterion_5() -> Verdict {
    let (mut generic, mut matched, mut cones) = (0, 0, 0);
    for seed in 0..100u64 {
        let f = random_poly(2, 4, seed, 5);
        let e = e_space(&f);
        if f.is_zero() || e.dim() < 3 {
            cones += 1;
            continue;
        }
        if symmetric_basis(&e).unwrap().nullity != 1 {
            continue;
        }
        generic += 1;
        let a = random_invertible(3, 10_000 + seed, 5);
        let scrambled = span(&apply_matrix(&a, &f.gradient())).unwrap();
        let (r, unique) = reconstruct(&scrambled)
            .unwrap()
            .ok_or_else(|| format!("seed {seed}: absent"))?;
        ensure(unique && r.ratio_to(&f).is_some(), || {
            format!("seed {seed}: got {r}")
        })?;
        matched += 1;
    }
    Ok(format!(
        "nullity-1 rate {generic}/100 (cones {cones}); all {matched} reconstructed up to a scalar"
    ))
}

fn criterion_6() -> Verdict {
    let e = span(&[p("x^3", 3), p("y^3", 3), p("z^3", 3)]).unwrap();
    let sol = symmetric_basis(&e).unwrap();
    ensure(sol.nullity == 3, || format!("nullity {}", sol.nullity))?;
    let (f, unique) = reconstruct(&e).unwrap().ok_or("no integrable solution")?;
    ensure(!unique, || "claimed unique".into())?;
    ensure(span_equal(&e_space(&f), &e).unwrap(), || {
        format!("∇({f}) does not span E")
    })?;
    Ok(format!("nullity 3, unique=false, representative {f}"))
}

fn criterion_7() -> Verdict {
    let f = p("x^4 + 2*y^4 + z^4", 3);
    let g = p("x^4 + y^4 + z^4", 3);
    ensure(
        span_equal(&e_prime_space(&f), &e_prime_space(&g)).unwrap(),
        || "E' differ".into(),
    )?;
    let m = mdr0(&g).unwrap();
    ensure(m == 3, || format!("mdr0(g) = {m}"))?;
    let r = eprime_pipeline(&f, &g).map_err(|e| e.to_string())?;
    ensure(
        r.e_spans_equal && r.classification.outcome == Outcome::StType,
        || format!("{:?}", r.classification.outcome),
    )?;
    let split = r.classification.st_splitting.ok_or("no splitting")?;
    let mut partition: Vec<Vec<usize>> = split
        .group_forms
        .iter()
        .map(|forms| {
            let mut v: Vec<usize> = forms.iter().flat_map(Poly::support).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    partition.sort();
    ensure(partition == vec![vec![0, 2], vec![1]], || {
        format!("partition {partition:?}")
    })?;

    let dir = tempfile::TempDir::new().unwrap();
    let (f3, g3) = (dir.path().join("f3.poly"), dir.path().join("g3.poly"));
    fs::write(&f3, "x^3 + 2*y^3 + z^3").unwrap();
    fs::write(&g3, "x^3 + y^3 + z^3").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_jacobian"))
        .arg("eprime-pipeline")
        .arg(&f3)
        .arg(&g3)
        .output()
        .unwrap();
    ensure(out.status.code() == Some(2), || {
        format!("d=3 exit code {:?}", out.status.code())
    })?;
    Ok("E' equal, mdr0(g)=3, E equal, st_type {x,z | y}; d=3 control exits 2".into())
}

fn criterion_8() -> Verdict {
    let f = p("x^3 + y^3 + z^3", 3);
    let g = p("x^3 + 2*y^3 + 2*z^3", 3);
    let c = classify_pair(&f, &g).map_err(|e| e.to_string())?;
    ensure(c.outcome == Outcome::StType, || format!("{:?}", c.outcome))?;
    let s = c.st_splitting.ok_or("no splitting")?;
    let h = s.transformed_g.hessian().unwrap();
    for (a, ga) in s.groups.iter().enumerate() {
        for (b, gb) in s.groups.iter().enumerate() {
            if a == b {
                continue;
            }
            for &i in ga {
                for &j in gb {
                    ensure(h.get(i, j).is_zero(), || format!("g'_{{{i}{j}}} != 0"))?;
                }
            }
        }
    }
    let total = s.parts.iter().fold(Poly::zero(3, 3), |acc, q| &acc + q);
    ensure(total == g, || "parts do not sum to g".into())?;
    Ok(format!(
        "st_type, groups {:?}, cross second partials vanish, parts sum to g",
        s.groups
    ))
}

fn criterion_9() -> Verdict {
    let fermat = p("x^3 + y^3 + z^3", 3);
    let e_prime = e_prime_space(&fermat);
    ensure(e_prime.dim() == 9 && e_prime.ambient_dim() == 10, || {
        format!("dim E' = {} in {}", e_prime.dim(), e_prime.ambient_dim())
    })?;
    let mut checked = 0;
    for seed in 0..300u64 {
        let d = 2 + (seed % 4) as u32;
        let f = random_poly(2, d, seed, if seed % 3 == 0 { 1 } else { 4 });
        if f.is_zero() || cone_detect(&f).is_cone {
            continue;
        }
        ensure(e_space(&f).dim() == 3, || {
            format!("seed {seed}: dim E = {}", e_space(&f).dim())
        })?;
        checked += 1;
    }
    Ok(format!(
        "dim E'(Fermat cubic) = 9 of 10; dim E = 3 on {checked} non-cones"
    ))
}

fn criterion_10() -> Verdict {
    const CASES: u64 = 1000;
    let sample = |seed: u64| {
        let n = 1 + (seed % 3) as usize;
        let d = 1 + (seed % 4) as u32;
        random_poly(n, d, seed, 4)
    };
    for seed in 0..CASES {
        let f = sample(seed);
        ensure(f.euler_check(), || format!("Euler fails for seed {seed}"))?;
        for i in 0..f.nvars() {
            for j in 0..i {
                let a = f.partial(i).unwrap().partial(j).unwrap();
                let b = f.partial(j).unwrap().partial(i).unwrap();
                ensure(a == b, || format!("mixed partials differ, seed {seed}"))?;
            }
        }
    }
    for seed in 0..CASES {
        let f = sample(seed);
        let grad = f.gradient();
        let base = span(&grad).unwrap();
        let mut shuffled: Vec<Poly> = grad
            .iter()
            .enumerate()
            .map(|(k, q)| {
                q.scale(&rat(
                    ((seed + k as u64) % 5) as i64 + 1,
                    if k % 2 == 0 { 1 } else { -3 },
                ))
            })
            .collect();
        shuffled.rotate_left((seed as usize) % grad.len());
        ensure(span(&shuffled).unwrap() == base, || {
            format!("span not canonical, seed {seed}")
        })?;
    }
    let mut koszul = 0;
    for seed in 0..CASES {
        let f = random_poly(1 + (seed % 2) as usize, 2 + (seed % 3) as u32, seed, 3);
        if f.gradient().iter().filter(|q| !q.is_zero()).count() < 2 {
            continue;
        }
        let m = mdr0(&f).unwrap();
        ensure(m < f.degree(), || format!("mdr0 {m} > d-1, seed {seed}"))?;
        koszul += 1;
    }
    let mut pairs = 0;
    for seed in 0..CASES {
        let d = 3 + (seed % 2) as u32;
        let (f, g) = if seed % 2 == 0 {
            let w = if seed % 4 == 0 {
                jordan_witness(2, d).unwrap()
            } else {
                case1_family(
                    d,
                    &rat((seed % 7) as i64, 1),
                    &rat((seed % 5) as i64 - 2, 1),
                )
                .unwrap()
            };
            (w.f, w.g)
        } else {
            let binary = random_poly(1, d, seed, 3).extend_vars(3);
            let z = term(3, d, &[0, 0, i64::from(d)], rat(1, 1));
            (&binary + &z.scale(&rat(-2, 1)), &binary + &z)
        };
        let a = random_invertible(3, seed, 2);
        let (f, g) = (
            f.linear_substitute(&a).unwrap(),
            g.linear_substitute(&a).unwrap(),
        );
        ensure(span_equal(&e_space(&f), &e_space(&g)).unwrap(), || {
            format!("E differ, seed {seed}")
        })?;
        ensure(
            span_equal(&e_prime_space(&f), &e_prime_space(&g)).unwrap(),
            || format!("E' differ, seed {seed}"),
        )?;
        pairs += 1;
    }
    Ok(format!(
        "Euler + mixed partials on {CASES}, span canonicality on {CASES}, Koszul on {koszul}, E⇒E' on {pairs}"
    ))
}

fn main() {
    let mut report = Report {
        failures: Vec::new(),
    };
    report.check(1, "intro witness classification", 1, criterion_1);
    report.check(2, "Jordan family verification", 5, criterion_2);
    report.check(3, "Hessian certificate", 5, criterion_3);
    report.check(4, "mdr0 on smooth hypersurfaces", 30, criterion_4);
    report.check(5, "reconstruction round trip", 120, criterion_5);
    report.check(6, "ST ambiguity control", 1, criterion_6);
    report.check(7, "E' pipeline end to end", 30, criterion_7);
    report.check(8, "diagonal-case splitting", 1, criterion_8);
    report.check(9, "dimension facts", 1, criterion_9);
    report.check(10, "property suites", 120, criterion_10);
    if !report.failures.is_empty() {
        eprintln!("failed criteria: {:?}", report.failures);
        std::process::exit(1);
    }
}

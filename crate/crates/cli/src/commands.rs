use jacobian_core::graded::{
    e_prime_space, e_space, jacobian_component, mdr0, span, span_equal, syzygies, PolySpace,
};
use jacobian_core::reconstruction::{
    eprime_pipeline, genericity_probe, reconstruct, symmetric_basis,
};
use jacobian_core::structure::{classify_pair, multiplicity_at, relation_matrix};
use jacobian_core::witness::{case1_family, case2_family, jordan_witness, WitnessPair};
use jacobian_core::{IdealError, Poly, PreconditionError, Rat};
use serde_json::{json, Value};

use crate::input::{parse_point, parse_rational, read_basis, read_pair, read_poly};
use crate::render::{self, ResultDoc};
use crate::{CliError, Command, Context, FamilyArg, SpanDegree};

fn space(s: &PolySpace<Rat>, ctx: &Context) -> Value {
    json!({
        "degree": s.degree(),
        "dim": s.dim(),
        "ambient_dim": s.ambient_dim(),
        "basis": render::polys(s.basis(), ctx.style),
    })
}

fn ideal_error(e: IdealError) -> CliError {
    PreconditionError::from(e).into()
}

pub fn run(ctx: &Context, command: Command) -> Result<ResultDoc, CliError> {
    let style = ctx.style;
    match command {
        Command::Grad { file } => {
            let f = read_poly(&file, ctx.vars)?;
            Ok(ResultDoc::new(
                "grad",
                json!({ "f": render::form(&f, style) }),
                "ok",
                json!({ "gradient": render::polys(&f.gradient(), style) }),
            ))
        }
        Command::Hess { file, det } => {
            let f = read_poly(&file, ctx.vars)?;
            let h = f.hessian().map_err(PreconditionError::from)?;
            let rows: Vec<Value> = (0..h.rows())
                .map(|i| {
                    Value::Array(
                        (0..h.cols())
                            .map(|j| render::poly(h.get(i, j), style))
                            .collect(),
                    )
                })
                .collect();
            let mut cert = json!({ "hessian": rows });
            if det {
                cert["determinant"] = render::poly(&h.determinant(), style);
            }
            Ok(ResultDoc::new(
                "hess",
                json!({ "f": render::form(&f, style) }),
                "ok",
                cert,
            ))
        }
        Command::Jac { file, m } => {
            let f = read_poly(&file, ctx.vars)?;
            Ok(ResultDoc::new(
                "jac",
                json!({ "f": render::form(&f, style), "m": m }),
                "ok",
                json!({ "component": space(&jacobian_component(&f, m), ctx) }),
            ))
        }
        Command::SpanEq {
            file_f,
            file_g,
            degree,
        } => {
            let (f, g) = read_pair(&file_f, &file_g, ctx.vars)?;
            if f.nvars() != g.nvars() || f.degree() != g.degree() {
                return Err(PreconditionError::ShapeMismatch.into());
            }
            let (ef, eg, label) = match degree {
                SpanDegree::DMinus1 => (e_space(&f), e_space(&g), "d-1"),
                SpanDegree::D => (e_prime_space(&f), e_prime_space(&g), "d"),
            };
            let equal = span_equal(&ef, &eg).map_err(ideal_error)?;
            Ok(ResultDoc::new(
                "span-eq",
                json!({ "f": render::form(&f, style), "g": render::form(&g, style), "degree": label }),
                if equal { "equal" } else { "different" },
                json!({ "equal": equal, "space_f": space(&ef, ctx), "space_g": space(&eg, ctx) }),
            ))
        }
        Command::Relate { file_f, file_g } => {
            let (f, g) = read_pair(&file_f, &file_g, ctx.vars)?;
            let rel = relation_matrix(&f, &g)?;
            Ok(ResultDoc::new(
                "relate",
                json!({ "f": render::form(&f, style), "g": render::form(&g, style) }),
                "ok",
                render::relation(&rel),
            ))
        }
        Command::Classify { file_f, file_g } => {
            let (f, g) = read_pair(&file_f, &file_g, ctx.vars)?;
            let c = classify_pair(&f, &g)?;
            Ok(ResultDoc::new(
                "classify",
                json!({ "f": render::form(&f, style), "g": render::form(&g, style) }),
                c.outcome.as_str(),
                render::classification(&c, g.nvars(), style),
            ))
        }
        Command::Mdr0 { file } => {
            let f = read_poly(&file, ctx.vars)?;
            let m = mdr0(&f).map_err(ideal_error)?;
            let relations = syzygies(&f, m);
            Ok(ResultDoc::new(
                "mdr0",
                json!({ "f": render::form(&f, style) }),
                "ok",
                json!({
                    "mdr0": m,
                    "syzygy_dim": relations.dim(),
                    "syzygy": relations.basis.first().map(|r| render::polys(r, style)),
                }),
            ))
        }
        Command::Syzygies { file, m } => {
            let f = read_poly(&file, ctx.vars)?;
            let relations = syzygies(&f, m);
            Ok(ResultDoc::new(
                "syzygies",
                json!({ "f": render::form(&f, style), "m": m }),
                "ok",
                json!({
                    "dim": relations.dim(),
                    "basis": relations.basis.iter().map(|r| render::polys(r, style)).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Reconstruct { files, lines } => {
            let basis = read_basis(&files, lines, ctx.vars)?;
            let e = span(&basis).map_err(ideal_error)?;
            let solution = symmetric_basis(&e)?;
            let result = reconstruct(&e)?;
            let outcome = match &result {
                Some((_, true)) => "unique",
                Some((_, false)) => "not_unique",
                None => "absent",
            };
            Ok(ResultDoc::new(
                "reconstruct",
                json!({ "basis": render::polys(&basis, style) }),
                outcome,
                json!({
                    "nullity": solution.nullity,
                    "symmetric_basis": solution.f.as_deref().map(|f| render::polys(f, style)),
                    "M": solution.m.as_ref().map(render::matrix),
                    "f": result.as_ref().map(|(f, _)| render::poly(f, style)),
                    "unique": result.as_ref().map(|(_, u)| *u),
                }),
            ))
        }
        Command::EprimePipeline { file_f, file_g } => {
            let (f, g) = read_pair(&file_f, &file_g, ctx.vars)?;
            let r = eprime_pipeline(&f, &g)?;
            Ok(ResultDoc::new(
                "eprime-pipeline",
                json!({ "f": render::form(&f, style), "g": render::form(&g, style) }),
                r.classification.outcome.as_str(),
                json!({
                    "eprime_spans_equal": true,
                    "mdr0_g": r.mdr0_g,
                    "e_spans_equal": r.e_spans_equal,
                    "classification": render::classification(&r.classification, g.nvars(), style),
                }),
            ))
        }
        Command::Mult { file, point } => {
            let f = read_poly(&file, ctx.vars)?;
            let p = parse_point(&point)?;
            let m = multiplicity_at(&f, &p)?;
            Ok(ResultDoc::new(
                "mult",
                json!({ "f": render::form(&f, style), "point": render::point(&p) }),
                "ok",
                json!({ "multiplicity": m }),
            ))
        }
        Command::Witness {
            family,
            n,
            d,
            a,
            b,
            h,
        } => {
            let pair = witness(ctx, family, n, d, a, b, h)?;
            Ok(witness_doc(&pair, ctx))
        }
        Command::Probe {
            n,
            d,
            samples,
            seed,
            bound,
        } => {
            let stats = genericity_probe(n, d, samples, seed, bound)?;
            let rate = |k: usize| Rat::new(k.into(), samples.into());
            Ok(ResultDoc::new(
                "probe",
                json!({ "n": n, "d": d, "samples": samples, "seed": seed, "bound": bound }),
                "ok",
                json!({
                    "cone": stats.cone,
                    "unique": stats.unique,
                    "hessian_positive": stats.hessian_positive,
                    "unique_rate": render::rat(&rate(stats.unique)),
                    "cone_rate": render::rat(&rate(stats.cone)),
                    "hessian_positive_rate": render::rat(&rate(stats.hessian_positive)),
                }),
            ))
        }
    }
}

fn witness(
    ctx: &Context,
    family: FamilyArg,
    n: Option<usize>,
    d: u32,
    a: Option<String>,
    b: Option<String>,
    h: Option<std::path::PathBuf>,
) -> Result<WitnessPair, CliError> {
    let pair = match family {
        FamilyArg::Jordan => {
            let n =
                n.ok_or_else(|| CliError::Input("--n is required for the jordan family".into()))?;
            jordan_witness(n, d)?
        }
        FamilyArg::Case1 => {
            let a = a
                .as_deref()
                .map(parse_rational)
                .transpose()?
                .unwrap_or_default();
            let b = b
                .as_deref()
                .map(parse_rational)
                .transpose()?
                .unwrap_or_default();
            case1_family(d, &a, &b)?
        }
        FamilyArg::Case2 => {
            let h = match h {
                Some(path) => read_poly(&path, ctx.vars)?,
                None => Poly::zero(3, d),
            };
            case2_family(d, &h)?
        }
    };
    Ok(pair)
}

fn witness_doc(pair: &WitnessPair, ctx: &Context) -> ResultDoc {
    let style = ctx.style;
    let p = &pair.params;
    ResultDoc::new(
        "witness",
        json!({
            "family": pair.family.as_str(),
            "n": p.n,
            "d": p.d,
            "A": p.a.as_ref().map(render::rat),
            "B": p.b.as_ref().map(render::rat),
            "H": p.h.as_ref().map(|h| render::poly(h, style)),
        }),
        "ok",
        json!({
            "f": render::poly(&pair.f, style),
            "g": render::poly(&pair.g, style),
            "J": render::matrix(&pair.j),
            "st_status": pair.st_status.as_str(),
            "relation_verified": true,
        }),
    )
}

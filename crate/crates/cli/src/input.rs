use std::fs;
use std::path::Path;

use jacobian_core::expr::{parse_poly, parse_poly_in};
use jacobian_core::{Poly, Rat};

use crate::CliError;

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_text(text: &str, nvars: Option<usize>, origin: &str) -> Result<Poly, CliError> {
    let parsed = match nvars {
        Some(n) => parse_poly_in(text.trim(), n),
        None => parse_poly(text.trim()),
    };
    parsed.map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

/// Parses several expressions into one common ring: the requested number of
/// variables, or else the largest one any of them needs.
fn parse_common(texts: &[(String, String)], vars: Option<usize>) -> Result<Vec<Poly>, CliError> {
    let nvars = match vars {
        Some(n) => n,
        None => texts
            .iter()
            .map(|(text, origin)| parse_text(text, None, origin).map(|p| p.nvars()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(2),
    };
    texts
        .iter()
        .map(|(text, origin)| parse_text(text, Some(nvars), origin))
        .collect()
}

pub fn read_poly(path: &Path, vars: Option<usize>) -> Result<Poly, CliError> {
    let text = read_text(path)?;
    parse_text(&text, vars, &path.display().to_string())
}

pub fn read_pair(f: &Path, g: &Path, vars: Option<usize>) -> Result<(Poly, Poly), CliError> {
    let texts = [
        (read_text(f)?, f.display().to_string()),
        (read_text(g)?, g.display().to_string()),
    ];
    let mut polys = parse_common(&texts, vars)?.into_iter();
    Ok((
        polys.next().expect("two inputs"),
        polys.next().expect("two inputs"),
    ))
}

/// Basis elements, one per file or one per nonblank line.
pub fn read_basis(
    paths: &[impl AsRef<Path>],
    lines: bool,
    vars: Option<usize>,
) -> Result<Vec<Poly>, CliError> {
    let mut texts = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let text = read_text(path)?;
        if lines {
            for (k, line) in text.lines().enumerate() {
                if !line.trim().is_empty() {
                    texts.push((line.to_string(), format!("{}:{}", path.display(), k + 1)));
                }
            }
        } else {
            texts.push((text, path.display().to_string()));
        }
    }
    if texts.is_empty() {
        return Err(CliError::Input("no basis elements given".into()));
    }
    parse_common(&texts, vars)
}

pub fn parse_rational(text: &str) -> Result<Rat, CliError> {
    text.trim()
        .parse::<Rat>()
        .map_err(|_| CliError::Input(format!("'{text}' is not a rational number")))
}

pub fn parse_point(text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(',').map(parse_rational).collect()
}

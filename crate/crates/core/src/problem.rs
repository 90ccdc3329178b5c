//! Line-oriented problem files.
//!
//! ```text
//! source: 2 4        # factor orders of G; 0 = Z
//! target: 2 4        # factor orders of H
//! matrix:            # one row per target factor
//! 0 1
//! 2 0
//! rhs: 1 2
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::error::Error;
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub hom: Homomorphism,
    pub rhs: GroupElement,
}

impl ProblemFile {
    pub fn source(&self) -> &FgAbelianGroup {
        self.hom.source()
    }

    pub fn target(&self) -> &FgAbelianGroup {
        self.hom.target()
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        writeln!(s, "source: {}", join(self.source().orders())).unwrap();
        writeln!(s, "target: {}", join(self.target().orders())).unwrap();
        writeln!(s, "matrix:").unwrap();
        for i in 0..self.hom.matrix().rows() {
            writeln!(s, "{}", join(self.hom.matrix().row(i))).unwrap();
        }
        writeln!(s, "rhs: {}", join(self.rhs.exponents())).unwrap();
        s
    }
}

fn numbers(text: &str, line: usize) -> Result<Vec<BigInt>, ParseError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| ParseError::Syntax { line, message: format!("expected an integer, found `{t}`") })
        })
        .collect()
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut source = None;
    let mut target = None;
    let mut matrix: Option<Vec<(usize, Vec<BigInt>)>> = None;
    let mut rhs = None;
    let mut in_matrix = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            if in_matrix {
                matrix.as_mut().expect("in matrix").push((line, numbers(content, line)?));
                continue;
            }
            return Err(ParseError::Syntax { line, message: format!("expected `key: values`, found `{content}`") });
        };
        in_matrix = false;
        let slot = match key.trim() {
            "source" => &mut source,
            "target" => &mut target,
            "rhs" => &mut rhs,
            "matrix" => {
                if matrix.is_some() {
                    return Err(ParseError::Syntax { line, message: "duplicate `matrix`".into() });
                }
                matrix = Some(numbers(rest, line).map(|v| if v.is_empty() { vec![] } else { vec![(line, v)] })?);
                in_matrix = true;
                continue;
            }
            other => return Err(ParseError::Syntax { line, message: format!("unknown key `{other}`") }),
        };
        if slot.is_some() {
            return Err(ParseError::Syntax { line, message: format!("duplicate `{}`", key.trim()) });
        }
        *slot = Some((line, numbers(rest, line)?));
    }

    let (_, source) = source.ok_or(ParseError::Missing("source"))?;
    let (_, target) = target.ok_or(ParseError::Missing("target"))?;
    let rows = matrix.ok_or(ParseError::Missing("matrix"))?;
    let (rhs_line, rhs) = rhs.ok_or(ParseError::Missing("rhs"))?;
    let source = FgAbelianGroup::new(source)?;
    let target = FgAbelianGroup::new(target)?;
    let (n, m) = (source.rank(), target.rank());

    if rows.len() != m && !(n == 0 && rows.is_empty()) {
        return Err(ParseError::Dimension(format!("matrix has {} rows but the target has {m} factors", rows.len())));
    }
    for (line, row) in &rows {
        if row.len() != n {
            return Err(ParseError::Dimension(format!(
                "line {line}: matrix row has {} entries but the source has {n} factors",
                row.len()
            )));
        }
    }
    if rhs.len() != m {
        return Err(ParseError::Dimension(format!(
            "line {rhs_line}: rhs has {} entries but the target has {m} factors",
            rhs.len()
        )));
    }
    let data: Vec<Vec<BigInt>> = rows.into_iter().map(|(_, r)| r).collect();
    let a = if data.is_empty() { Matrix::zeros(m, n) } else { Matrix::from_rows(&data) };
    let hom = Homomorphism::new(source, target.clone(), a)?;
    let rhs = target.element(&rhs)?;
    Ok(ProblemFile { hom, rhs })
}

//! The shared matrix text format.
//!
//! ```text
//! rows cols domain          # domain is gf3 or dyadic
//! labels a b c ...          # optional; omitted when labels are e1..en
//! <rows lines of whitespace-separated entries>
//! ```
//!
//! GF(3) entries print as `0 1 -1`; dyadic entries print as integers or `a/2^b`.
//! Lines starting with `#` are ignored on input. The flattened single-line form
//! joins the same lines with `; `.

use std::fmt;
use std::str::FromStr;

use super::{default_labels, Dyadic, Gf3, LinalgError, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Gf3,
    Dyadic,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Gf3 => "gf3",
            Domain::Dyadic => "dyadic",
        })
    }
}

impl FromStr for Domain {
    type Err = LinalgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gf3" => Ok(Domain::Gf3),
            "dyadic" => Ok(Domain::Dyadic),
            other => Err(LinalgError::Parse(format!("unknown domain {other:?}"))),
        }
    }
}

/// A matrix over one of the two coefficient domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactMatrix {
    Gf3(Matrix<Gf3>),
    Dyadic(Matrix<Dyadic>),
}

impl From<Matrix<Gf3>> for ExactMatrix {
    fn from(m: Matrix<Gf3>) -> Self {
        ExactMatrix::Gf3(m)
    }
}

impl From<Matrix<Dyadic>> for ExactMatrix {
    fn from(m: Matrix<Dyadic>) -> Self {
        ExactMatrix::Dyadic(m)
    }
}

impl ExactMatrix {
    pub fn domain(&self) -> Domain {
        match self {
            ExactMatrix::Gf3(_) => Domain::Gf3,
            ExactMatrix::Dyadic(_) => Domain::Dyadic,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            ExactMatrix::Gf3(m) => m.rows(),
            ExactMatrix::Dyadic(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ExactMatrix::Gf3(m) => m.cols(),
            ExactMatrix::Dyadic(m) => m.cols(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            ExactMatrix::Gf3(m) => m.labels(),
            ExactMatrix::Dyadic(m) => m.labels(),
        }
    }

    pub fn as_gf3(&self) -> Option<&Matrix<Gf3>> {
        match self {
            ExactMatrix::Gf3(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_dyadic(&self) -> Option<&Matrix<Dyadic>> {
        match self {
            ExactMatrix::Dyadic(m) => Some(m),
            _ => None,
        }
    }

    /// GF(3) view: identity for GF(3) input, reduction mod 3 for dyadic input.
    pub fn to_gf3(&self) -> Matrix<Gf3> {
        match self {
            ExactMatrix::Gf3(m) => m.clone(),
            ExactMatrix::Dyadic(m) => m.map(|v| Gf3::new(v.mod_p(3) as i64)),
        }
    }

    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>), LinalgError> {
        Ok(match self {
            ExactMatrix::Gf3(m) => {
                let (r, p) = m.rref()?;
                (r.into(), p)
            }
            ExactMatrix::Dyadic(m) => {
                let (r, p) = m.rref()?;
                (r.into(), p)
            }
        })
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.1.len())
    }

    pub fn to_text(&self) -> String {
        self.lines().join("\n") + "\n"
    }

    pub fn to_flat(&self) -> String {
        self.lines().join("; ")
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("{} {} {}", self.rows(), self.cols(), self.domain())];
        if self.labels() != default_labels(self.cols()).as_slice() {
            out.push(format!("labels {}", self.labels().join(" ")));
        }
        let body = match self {
            ExactMatrix::Gf3(m) => m.fmt_rows(),
            ExactMatrix::Dyadic(m) => m.fmt_rows(),
        };
        out.extend(body.lines().map(str::to_owned));
        out
    }

    pub fn parse_text(s: &str) -> Result<Self, LinalgError> {
        let lines: Vec<&str> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        parse_lines(&lines)
    }

    pub fn parse_flat(s: &str) -> Result<Self, LinalgError> {
        let lines: Vec<&str> = s.split(';').map(str::trim).filter(|l| !l.is_empty()).collect();
        parse_lines(&lines)
    }
}

fn parse_lines(lines: &[&str]) -> Result<ExactMatrix, LinalgError> {
    let header = lines.first().ok_or_else(|| LinalgError::Parse("empty matrix text".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols, domain] = fields.as_slice() else {
        return Err(LinalgError::Parse(format!("bad header {header:?}")));
    };
    let rows: usize = rows.parse().map_err(|_| LinalgError::Parse(format!("bad row count {rows:?}")))?;
    let cols: usize = cols.parse().map_err(|_| LinalgError::Parse(format!("bad column count {cols:?}")))?;
    let domain: Domain = domain.parse()?;
    let mut rest = &lines[1..];
    let mut labels = default_labels(cols);
    if let Some(l) = rest.first().and_then(|l| l.strip_prefix("labels")) {
        labels = l.split_whitespace().map(str::to_owned).collect();
        rest = &rest[1..];
    }
    if rest.len() != rows {
        return Err(LinalgError::Parse(format!("expected {rows} rows, found {}", rest.len())));
    }
    Ok(match domain {
        Domain::Gf3 => ExactMatrix::Gf3(parse_body(rest, rows, cols, labels)?),
        Domain::Dyadic => ExactMatrix::Dyadic(parse_body(rest, rows, cols, labels)?),
    })
}

fn parse_body<S: Scalar>(lines: &[&str], rows: usize, cols: usize, labels: Vec<String>) -> Result<Matrix<S>, LinalgError> {
    let mut data = Vec::with_capacity(rows * cols);
    for (i, line) in lines.iter().enumerate() {
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(tok.parse::<S>()?);
        }
        if data.len() - before != cols {
            return Err(LinalgError::Parse(format!("row {} has {} entries, expected {cols}", i + 1, data.len() - before)));
        }
    }
    Matrix::new(rows, cols, data, labels)
}

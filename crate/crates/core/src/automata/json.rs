use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AutomataError, LinearRepresentation};
use crate::alphabet::Letter;
use crate::linalg::Matrix;
use crate::ring::{parse_coeff, Coeff};

/// Coefficient ring tag of a representation file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Rational,
    Polynomial,
    RationalFunction,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Rational => "Q",
            RingKind::Polynomial => "Q[t]",
            RingKind::RationalFunction => "Q(z)",
        })
    }
}

impl FromStr for RingKind {
    type Err = AutomataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Q" => Ok(RingKind::Rational),
            "Q[t]" => Ok(RingKind::Polynomial),
            "Q(z)" | "Q(t)" => Ok(RingKind::RationalFunction),
            other => Err(AutomataError::Format(format!("unknown ring {other:?}"))),
        }
    }
}

/// On-disk form of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub alphabet: Vec<String>,
    pub ring: String,
    pub dim: usize,
    pub nu: Vec<String>,
    pub mu: BTreeMap<String, Vec<Vec<String>>>,
    pub eta: Vec<String>,
}

pub fn to_json<C: Coeff>(r: &LinearRepresentation<C>, ring: RingKind) -> String {
    let text = |v: &[C]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let file = RepFile {
        alphabet: r.letters().map(|l| l.to_string()).collect(),
        ring: ring.to_string(),
        dim: r.dim(),
        nu: text(r.nu()),
        mu: r.matrices().map(|(l, m)| (l.to_string(), m.to_rows().iter().map(|row| text(row)).collect())).collect(),
        eta: text(r.eta()),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// The ring declared by a representation file.
pub fn ring_of_json(text: &str) -> Result<RingKind, AutomataError> {
    let file: RepFile = serde_json::from_str(text).map_err(|e| AutomataError::Format(e.to_string()))?;
    file.ring.parse()
}

/// Reads a representation; every coefficient must lie in `C`.
pub fn from_json<C: Coeff>(text: &str) -> Result<LinearRepresentation<C>, AutomataError> {
    let file: RepFile = serde_json::from_str(text).map_err(|e| AutomataError::Format(e.to_string()))?;
    file.ring.parse::<RingKind>()?;
    let coeff = |s: &str| -> Result<C, AutomataError> {
        let r = parse_coeff(s).map_err(|e| AutomataError::Format(format!("coefficient {s:?}: {e}")))?;
        C::from_ratfun(&r).ok_or_else(|| AutomataError::Format(format!("coefficient {s:?} is not in ring {}", file.ring)))
    };
    let vector = |v: &[String], what: &str| -> Result<Vec<C>, AutomataError> {
        if v.len() != file.dim {
            return Err(AutomataError::Dimension(format!("{what} has length {}, dim is {}", v.len(), file.dim)));
        }
        v.iter().map(|s| coeff(s)).collect()
    };
    let letter = |s: &str| s.parse::<Letter>().map_err(|e| AutomataError::Format(e.to_string()));
    let letters = file.alphabet.iter().map(|s| letter(s)).collect::<Result<Vec<_>, _>>()?;
    let mut mu = BTreeMap::new();
    for (name, rows) in &file.mu {
        let l = letter(name)?;
        if !letters.contains(&l) {
            return Err(AutomataError::Format(format!("matrix for {l}, which is not in the alphabet")));
        }
        if rows.len() != file.dim {
            return Err(AutomataError::Dimension(format!("μ({l}) has {} rows, dim is {}", rows.len(), file.dim)));
        }
        let rows = rows.iter().map(|row| vector(row, &format!("a row of μ({l})"))).collect::<Result<Vec<_>, _>>()?;
        let m = if file.dim == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
        mu.insert(l, m);
    }
    LinearRepresentation::new(letters, vector(&file.nu, "nu")?, mu, vector(&file.eta, "eta")?)
}

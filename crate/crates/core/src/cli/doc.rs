//! The `kronrep/1` text format for representations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{Field, FieldSpec, Matrix, PrimeField, Rationals};
use crate::kronrep::{AnyRep, KronRep, Provenance};

pub const FORMAT: &str = "kronrep/1";

/// One representation. Entries are strings: reduced fractions over Q,
/// residues in `0..p` over `F_p`. Each map is a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub format: String,
    pub r: usize,
    pub field: FieldSpec,
    pub dim: [usize; 2],
    pub maps: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl RepDocument {
    pub fn from_rep<F: Field>(m: &KronRep<F>) -> Self {
        let f = m.field();
        let maps = m
            .maps()
            .iter()
            .map(|a| (0..a.rows()).map(|i| a.row(i).iter().map(|x| f.format(x)).collect()).collect())
            .collect();
        let provenance = match m.provenance() {
            Provenance::None => None,
            p => Some(p.to_string()),
        };
        RepDocument { format: FORMAT.into(), r: m.r(), field: f.spec(), dim: [m.dim1(), m.dim2()], maps, provenance }
    }

    pub fn from_any(m: &AnyRep) -> Self {
        crate::with_rep!(m, x => Self::from_rep(x))
    }

    fn build<F: Field>(&self, f: &F) -> Result<KronRep<F>> {
        if self.format != FORMAT {
            return Err(Error::Parse(format!("unsupported format {:?}", self.format)));
        }
        if self.maps.len() != self.r {
            return Err(Error::Parse(format!("expected {} maps, found {}", self.r, self.maps.len())));
        }
        let [d1, d2] = self.dim;
        let maps = self
            .maps
            .iter()
            .map(|rows| {
                if rows.len() != d2 || rows.iter().any(|row| row.len() != d1) {
                    return Err(Error::Parse(format!("every map must be {d2}x{d1}")));
                }
                let data = rows.iter().flatten().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_vec(f, d2, d1, data))
            })
            .collect::<Result<Vec<_>>>()?;
        let prov = match &self.provenance {
            Some(s) => s.parse()?,
            None => Provenance::None,
        };
        Ok(KronRep::from_parts(f, d1, d2, maps, prov))
    }

    pub fn to_rep(&self) -> Result<AnyRep> {
        Ok(match self.field {
            FieldSpec::Q => AnyRep::Q(self.build(&Rationals)?),
            FieldSpec::Fp { p } => AnyRep::Fp(self.build(&PrimeField::new(p)?)?),
        })
    }

    /// Canonical single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// All documents in a stream of concatenated JSON values.
    pub fn parse_stream(s: &str) -> Result<Vec<Self>> {
        serde_json::Deserializer::from_str(s)
            .into_iter::<RepDocument>()
            .map(|d| d.map_err(|e| Error::Parse(e.to_string())))
            .collect()
    }
}

/// Canonical text of a representation: parse and re-serialize.
pub fn canonicalize(s: &str) -> Result<String> {
    let doc = RepDocument::parse(s)?;
    Ok(RepDocument::from_any(&doc.to_rep()?).to_json())
}

/// Matrix literal: rows separated by `;`, entries by `,` or whitespace.
pub fn parse_matrix<F: Field>(f: &F, s: &str) -> Result<Matrix<F>> {
    let rows: Vec<Vec<&str>> = s
        .split(';')
        .map(|row| row.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 || rows.iter().any(|row| row.len() != cols) {
        return Err(Error::Parse(format!("malformed matrix literal {s:?}")));
    }
    let data = rows.iter().flatten().map(|t| f.parse(t)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(f, rows.len(), cols, data))
}

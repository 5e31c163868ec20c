//! JSON documents exchanged by the command-line front end: sparse series
//! with coefficient expressions, sparse triangular tables, and the exit
//! policy for verification report streams.

use crate::coeff::parse_coeff_expr;
use crate::dirichletseries::Dps;
use crate::powerseries::{Fps, RiordanMatrix};
use crate::rdgroup::RdMatrix;
use crate::report::VerificationReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse series document. Keys of `coeffs` are decimal indices, values
/// are coefficient expressions; omitted indices mean zero. Index range is
/// 0..=order for kind "fps" and 1..=order for kind "dps". The optional
/// `eval` map carries double-precision previews and is never read back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub kind: String,
    pub order: usize,
    pub coeffs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval: Option<BTreeMap<String, f64>>,
}

impl SeriesDocument {
    pub fn from_fps(a: &Fps) -> SeriesDocument {
        let mut coeffs = BTreeMap::new();
        for (i, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(i.to_string(), c.to_string());
            }
        }
        SeriesDocument { kind: "fps".to_string(), order: a.order(), coeffs, eval: None }
    }

    pub fn from_dps(a: &Dps) -> SeriesDocument {
        let mut coeffs = BTreeMap::new();
        for n in 1..=a.order() {
            if !a.coeff(n).is_zero() {
                coeffs.insert(n.to_string(), a.coeff(n).to_string());
            }
        }
        SeriesDocument { kind: "dps".to_string(), order: a.order(), coeffs, eval: None }
    }

    fn parsed_entries(&self, min_index: usize) -> Result<Vec<(usize, crate::coeff::SymPoly)>, String> {
        let mut out = Vec::new();
        for (key, expr) in &self.coeffs {
            let idx: usize = key
                .parse()
                .map_err(|_| format!("coefficient key {:?} is not an index", key))?;
            if idx < min_index || idx > self.order {
                return Err(format!(
                    "coefficient index {} outside {}..={}",
                    idx, min_index, self.order
                ));
            }
            let poly = parse_coeff_expr(expr)
                .map_err(|e| format!("coefficient {}: {}", idx, e))?;
            out.push((idx, poly));
        }
        Ok(out)
    }

    pub fn to_fps(&self) -> Result<Fps, String> {
        if self.kind != "fps" {
            return Err(format!("expected kind \"fps\", found {:?}", self.kind));
        }
        let mut coeffs = vec![crate::coeff::SymPoly::zero(); self.order + 1];
        for (idx, poly) in self.parsed_entries(0)? {
            coeffs[idx] = poly;
        }
        Ok(Fps::from_coeffs(coeffs))
    }

    pub fn to_dps(&self) -> Result<Dps, String> {
        if self.kind != "dps" {
            return Err(format!("expected kind \"dps\", found {:?}", self.kind));
        }
        if self.order < 1 {
            return Err("dps order must be at least 1".to_string());
        }
        let mut a = Dps::zero(self.order);
        for (idx, poly) in self.parsed_entries(1)? {
            a.set_coeff(idx, poly);
        }
        Ok(a)
    }
}

/// Sparse table document: (row, col, expression) triples for the nonzero
/// entries of a realized matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub kind: String,
    pub order: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl TableDocument {
    pub fn from_riordan(m: &RiordanMatrix) -> TableDocument {
        let mut entries = Vec::new();
        for n in 0..=m.order() {
            for k in 0..=n {
                let e = m.table().entry(n, k);
                if !e.is_zero() {
                    entries.push((n, k, e.to_string()));
                }
            }
        }
        TableDocument { kind: "riordan".to_string(), order: m.order(), entries }
    }

    pub fn from_rd(m: &RdMatrix) -> TableDocument {
        let entries = m
            .table()
            .nonzero_entries()
            .into_iter()
            .map(|(n, k, e)| (n, k, e.to_string()))
            .collect();
        TableDocument { kind: "rd".to_string(), order: m.order(), entries }
    }
}

/// Exit policy for a verify run: 0 when every report verified, 2 otherwise.
pub fn reports_exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.is_verified()) {
        0
    } else {
        2
    }
}

//! Machine-readable outcome of a single identity check.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Verified,
    Failed,
}

/// One verified (or failed) instance of an identity. `residual` is the
/// rendered difference of the two sides when the check fails, None when it
/// verifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "identity-id")]
    pub identity_id: String,
    pub n: u64,
    pub parameters: BTreeMap<String, String>,
    pub status: VerifyStatus,
    pub residual: Option<String>,
}

impl VerificationReport {
    pub fn verified(
        identity_id: &str,
        n: u64,
        parameters: BTreeMap<String, String>,
    ) -> VerificationReport {
        VerificationReport {
            identity_id: identity_id.to_string(),
            n,
            parameters,
            status: VerifyStatus::Verified,
            residual: None,
        }
    }

    pub fn failed(
        identity_id: &str,
        n: u64,
        parameters: BTreeMap<String, String>,
        residual: String,
    ) -> VerificationReport {
        VerificationReport {
            identity_id: identity_id.to_string(),
            n,
            parameters,
            status: VerifyStatus::Failed,
            residual: Some(residual),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == VerifyStatus::Verified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_serialization_shape() {
        let mut params = BTreeMap::new();
        params.insert("beta".to_string(), "1".to_string());
        let r = VerificationReport::verified("theorem1/coeff-shift", 5, params);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            "{\"identity-id\":\"theorem1/coeff-shift\",\"n\":5,\
             \"parameters\":{\"beta\":\"1\"},\"status\":\"verified\",\
             \"residual\":null}"
        );
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(back.is_verified());
    }

    #[test]
    fn failed_report_carries_residual() {
        let r = VerificationReport::failed(
            "abel/binomial",
            4,
            BTreeMap::new(),
            "l2*phi".to_string(),
        );
        assert!(!r.is_verified());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"status\":\"failed\""));
        assert!(json.contains("\"residual\":\"l2*phi\""));
    }
}

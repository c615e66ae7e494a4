//! Versioned JSON documents for spectra.
//!
//! ```json
//! {"schema_version":1,"source":"iid","n":2,"d":2,
//!  "blocks":[{"lambda":[2,0],"log2_b":-0.415,"dimU":"3","dimV":"1"}]}
//! ```
//! Big integers are decimal strings; `log2` of zero is `null`.

use serde::{Deserialize, Serialize};

use super::{BlockSpectrum, WeightedSpectrum};
use crate::error::{invalid, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Which construction produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Iid,
    Clone1,
    Clone2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrumDoc {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(flatten)]
    pub spectrum: BlockSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSpectrumDoc {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(flatten)]
    pub spectrum: WeightedSpectrum,
}

impl BlockSpectrumDoc {
    pub fn new(spectrum: BlockSpectrum, source: Option<Source>, params: Option<serde_json::Value>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            source,
            params,
            spectrum,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s).map_err(|e| invalid(format!("bad spectrum JSON: {e}")))?;
        check_version(doc.schema_version)?;
        Ok(doc)
    }
}

impl WeightedSpectrumDoc {
    pub fn new(spectrum: WeightedSpectrum, source: Option<Source>, params: Option<serde_json::Value>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            source,
            params,
            spectrum,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s).map_err(|e| invalid(format!("bad spectrum JSON: {e}")))?;
        check_version(doc.schema_version)?;
        Ok(doc)
    }
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(invalid(format!("unsupported schema_version {v}")));
    }
    Ok(())
}

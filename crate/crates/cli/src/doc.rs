//! JSON code documents: field elements as packed integers keyed to the
//! recorded modulus.

use std::sync::Arc;

use gso_core::codes::{CertifiedCode, GrsSpec};
use gso_core::gf::{table_limit_from_env, FieldCtx, Fe};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub method: String,
    pub seed: Option<u64>,
    #[serde(rename = "lambdaDegree")]
    pub lambda_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecDocument {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub e: u32,
    pub k: usize,
    pub extended: bool,
    pub locators: Vec<u32>,
    pub multipliers: Vec<u32>,
    pub meta: Meta,
}

impl CodeSpecDocument {
    pub fn from_spec(spec: &GrsSpec, e: u32, meta: Meta) -> Self {
        CodeSpecDocument {
            p: spec.ctx.p(),
            m: spec.ctx.m(),
            modulus: spec.ctx.modulus().to_vec(),
            e,
            k: spec.k,
            extended: spec.extended,
            locators: spec.a.iter().map(|x| x.enc()).collect(),
            multipliers: spec.v.iter().map(|x| x.enc()).collect(),
            meta,
        }
    }

    pub fn from_certified(code: &CertifiedCode, method: &str, seed: Option<u64>) -> Self {
        let meta = Meta { method: method.into(), seed, lambda_degree: code.lambda_degree };
        Self::from_spec(&code.spec, code.e, meta)
    }

    /// Rebuilds the field from the recorded modulus and validates the spec.
    pub fn to_spec(&self) -> Result<GrsSpec, CliError> {
        let ctx = FieldCtx::with_modulus(self.p, self.m, &self.modulus, table_limit_from_env())
            .map_err(|err| CliError::Malformed(err.to_string()))?;
        let a = self.locators.iter().map(|&x| Fe(x)).collect();
        let v = self.multipliers.iter().map(|&x| Fe(x)).collect();
        GrsSpec::new(Arc::new(ctx), a, v, self.k, self.extended)
            .map_err(|err| CliError::Malformed(err.to_string()))
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| CliError::Malformed(format!("{path}: {err}")))?;
        serde_json::from_str(&text).map_err(|err| CliError::Malformed(format!("{path}: {err}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

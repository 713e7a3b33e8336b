use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON document every command prints. Maps inside are `BTreeMap`s, so
/// keys come out sorted and identical inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Value>,
    pub params: Value,
    pub result: Option<Value>,
    pub version: String,
}

impl Envelope {
    pub fn new(command: &str, params: Value) -> Self {
        Envelope {
            command: command.to_string(),
            hypotheses: None,
            params,
            result: None,
            version: VERSION.to_string(),
        }
    }

    pub fn with_hypotheses(mut self, h: Value) -> Self {
        self.hypotheses = Some(h);
        self
    }

    pub fn with_result(mut self, r: Value) -> Self {
        self.result = Some(r);
        self
    }

    pub fn to_json(&self) -> String {
        // via Value so nested maps are sorted too
        let value = serde_json::to_value(self).expect("envelope serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Exact integer as a JSON number, however large.
pub fn big(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal digits parse as a JSON number")
}

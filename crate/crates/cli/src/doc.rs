//! Polygon documents: the JSON interchange format of the CLI.
//!
//! ```json
//! {"n": 4, "vertices": {"kind": "angles", "values": [0.0, 1.5707, 3.1415, 4.7123]}}
//! {"n": 4, "vertices": {"kind": "params", "values": [0.0, 1.0, "inf", -1.0]}, "label": "square"}
//! ```
//!
//! JSON has no infinity literal, so the parameter representation uses the
//! string token `"inf"`; the angle representation needs no special token and
//! is the recommended encoding.

use kleinbary::{ExtReal, IdealPolygon};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Token(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexList {
    Angles { values: Vec<f64> },
    Params { values: Vec<ParamValue> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonDocument {
    pub n: usize,
    pub vertices: VertexList,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PolygonDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid polygon document: {e}"))
    }

    pub fn to_polygon(&self) -> Result<IdealPolygon, String> {
        let len = match &self.vertices {
            VertexList::Angles { values } => values.len(),
            VertexList::Params { values } => values.len(),
        };
        if len != self.n {
            return Err(format!(
                "vertex count {len} does not match declared n = {}",
                self.n
            ));
        }
        let poly = match &self.vertices {
            VertexList::Angles { values } => IdealPolygon::from_angles(values),
            VertexList::Params { values } => {
                let params: Vec<ExtReal> = values
                    .iter()
                    .map(|v| match v {
                        ParamValue::Number(x) => Ok(ExtReal::Finite(*x)),
                        ParamValue::Token(t) if t == "inf" => Ok(ExtReal::Infinity),
                        ParamValue::Token(t) => Err(format!(
                            "unknown parameter token {t:?} (only \"inf\" is recognized)"
                        )),
                    })
                    .collect::<Result<_, String>>()?;
                IdealPolygon::from_params(&params)
            }
        };
        poly.map_err(|e| e.to_string())
    }
}

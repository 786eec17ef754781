//! Per-edge curvature values tagged with the method that produced them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Frc,
    Afrc3,
    Afrc4,
    Afrc5,
    Orc,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Frc, Method::Afrc3, Method::Afrc4, Method::Afrc5, Method::Orc];

    pub fn afrc(max_len: usize) -> Result<Method> {
        match max_len {
            3 => Ok(Method::Afrc3),
            4 => Ok(Method::Afrc4),
            5 => Ok(Method::Afrc5),
            n => Err(Error::InvalidParameter(format!(
                "augmented Forman curvature supports cycle lengths 3..=5, got {n}"
            ))),
        }
    }

    /// Maximum cycle length for the augmented Forman variants.
    pub fn cycle_len(self) -> Option<usize> {
        match self {
            Method::Afrc3 => Some(3),
            Method::Afrc4 => Some(4),
            Method::Afrc5 => Some(5),
            _ => None,
        }
    }

    /// Whether every value is an integer.
    pub fn is_combinatorial(self) -> bool {
        self != Method::Orc
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Frc => "frc",
            Method::Afrc3 => "afrc3",
            Method::Afrc4 => "afrc4",
            Method::Afrc5 => "afrc5",
            Method::Orc => "orc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "frc" => Ok(Method::Frc),
            "afrc" | "afrc3" => Ok(Method::Afrc3),
            "afrc4" => Ok(Method::Afrc4),
            "afrc5" => Ok(Method::Afrc5),
            "orc" => Ok(Method::Orc),
            other => Err(Error::InvalidParameter(format!("unknown curvature method {other:?}"))),
        }
    }
}

/// Formats a value with 12 significant digits, dropping trailing zeros.
pub fn format_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap();
    // avoid "-0"
    if rounded == 0.0 {
        return "0".to_string();
    }
    rounded.to_string()
}

/// Rounds to the 12 significant digits used in every output.
pub fn round_sig(x: f64) -> f64 {
    format_value(x).parse().unwrap_or(x)
}

/// Curvature of every edge of `g` under `method`.
pub fn compute(g: &Graph, method: Method) -> Result<CurvatureVector> {
    match method {
        Method::Frc => Ok(crate::forman::frc_all(g)),
        Method::Orc => Ok(crate::ollivier::orc_all(g)),
        _ => crate::forman::afrc_all(g, method.cycle_len().unwrap()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureVector {
    pub method: Method,
    pub values: BTreeMap<Edge, f64>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    u: u64,
    v: u64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonVector {
    method: Method,
    edges: Vec<JsonRow>,
}

impl CurvatureVector {
    pub fn new(method: Method, values: BTreeMap<Edge, f64>) -> Self {
        CurvatureVector { method, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, e: Edge) -> Option<f64> {
        self.values.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    /// Values in canonical edge order.
    pub fn to_vec(&self) -> Vec<f64> {
        self.values.values().copied().collect()
    }

    pub fn matches_graph(&self, g: &Graph) -> bool {
        self.values.len() == g.edge_count() && g.edges().all(|e| self.values.contains_key(&e))
    }

    /// Splits values into within-community and between-community edges.
    pub fn split(&self, truth: &Partition) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut within = Vec::new();
        let mut between = Vec::new();
        for (e, v) in self.iter() {
            match truth.is_within(e) {
                Some(true) => within.push(v),
                Some(false) => between.push(v),
                None => return Err(Error::Mismatch(format!("edge {e} has an unlabelled endpoint"))),
            }
        }
        Ok((within, between))
    }

    /// `# method=<name>` followed by a `u,v,value` header and one row per edge.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# method={}\nu,v,value\n", self.method);
        for (e, v) in self.iter() {
            out.push_str(&format!("{},{},{}\n", e.0, e.1, format_value(v)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = JsonVector {
            method: self.method,
            edges: self.iter().map(|(e, v)| JsonRow { u: e.0, v: e.1, value: round_sig(v) }).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let doc: JsonVector = serde_json::from_value(value)?;
        Ok(CurvatureVector {
            method: doc.method,
            values: doc.edges.into_iter().map(|r| (Edge::new(r.u, r.v), r.value)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(-5.0), "-5");
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(-0.0), "0");
        assert_eq!(format_value(0.5), "0.5");
        assert_eq!(format_value(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_value(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_value(123456.0), "123456");
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("afrc".parse::<Method>().unwrap(), Method::Afrc3);
        assert!("ricci".parse::<Method>().is_err());
        assert_eq!(Method::afrc(4).unwrap(), Method::Afrc4);
        assert!(Method::afrc(6).is_err());
    }

    #[test]
    fn csv_and_json_layout() {
        let cv = CurvatureVector::new(Method::Orc, [(Edge(1, 2), 0.5), (Edge(2, 3), -1.0 / 3.0)].into_iter().collect());
        assert_eq!(cv.to_csv(), "# method=orc\nu,v,value\n1,2,0.5\n2,3,-0.333333333333\n");
        let json = cv.to_json();
        assert_eq!(json["method"], "orc");
        assert_eq!(json["edges"][0]["u"], 1);
        let back = CurvatureVector::from_json(json).unwrap();
        assert_eq!(back.get(Edge(1, 2)), Some(0.5));
    }
}

//! JSON documents exchanged between `analyze` and `verify`.
//!
//! Rationals are always strings (`"p/q"` or `"p"`), never floats.

use serde::{Deserialize, Serialize};

use crate::chromatic::FractionalColoring;
use crate::error::{Error, Result};
use crate::gap::GapCertificate;
use crate::graph::{Graph, VertexSet};
use crate::rational::{serde_rat, Rat};
use crate::vc::{CostVector, HalfIntegralVC};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub v0: Vec<usize>,
    pub v_half: Vec<usize>,
    pub v1: Vec<usize>,
}

impl PartitionDoc {
    pub fn from_vc(x: &HalfIntegralVC) -> Self {
        PartitionDoc {
            v0: x.v0.as_slice().to_vec(),
            v_half: x.v_half.as_slice().to_vec(),
            v1: x.v1.as_slice().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub vertices: Vec<usize>,
    #[serde(with = "serde_rat")]
    pub weight: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    #[serde(with = "serde_rat")]
    pub value: Rat,
    pub classes: Vec<ClassDoc>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &FractionalColoring) -> Self {
        ColoringDoc {
            value: c.value.clone(),
            classes: c
                .classes
                .iter()
                .map(|(u, y)| ClassDoc {
                    vertices: u.as_slice().to_vec(),
                    weight: y.clone(),
                })
                .collect(),
        }
    }

    fn to_coloring(&self) -> FractionalColoring {
        FractionalColoring {
            value: self.value.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| (VertexSet::new(c.vertices.clone()), c.weight.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub vertices: Vec<usize>,
    #[serde(with = "serde_rat")]
    pub lambda: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema_version: u32,
    pub seed: u64,
    pub graph: GraphDoc,
    #[serde(with = "serde_rat")]
    pub chi_f: Rat,
    #[serde(with = "serde_rat")]
    pub rho: Rat,
    #[serde(with = "serde_rat::vec")]
    pub worst_cost: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub lp_value: Rat,
    #[serde(with = "serde_rat")]
    pub ip_value: Rat,
    #[serde(with = "serde_rat")]
    pub ratio: Rat,
    #[serde(with = "serde_rat::vec")]
    pub lp_dual: Vec<Rat>,
    pub ip_cover: Vec<usize>,
    #[serde(with = "serde_rat::vec")]
    pub x_star: Vec<Rat>,
    pub partition: PartitionDoc,
    pub h_coloring: ColoringDoc,
    pub covers: Vec<CoverDoc>,
}

impl CertificateDoc {
    pub fn new(cert: &GapCertificate, seed: u64) -> Self {
        CertificateDoc {
            schema_version: SCHEMA_VERSION,
            seed,
            graph: GraphDoc::from_graph(&cert.graph),
            chi_f: cert.chi_f.clone(),
            rho: cert.rho.clone(),
            worst_cost: cert.worst_cost.values().to_vec(),
            lp_value: cert.lp_value.clone(),
            ip_value: cert.ip_value.clone(),
            ratio: cert.ratio.clone(),
            lp_dual: cert.lp_dual.clone(),
            ip_cover: cert.ip_cover.as_slice().to_vec(),
            x_star: cert.x_star.x.clone(),
            partition: PartitionDoc::from_vc(&cert.x_star),
            h_coloring: ColoringDoc::from_coloring(&cert.h_coloring),
            covers: cert
                .covers
                .iter()
                .map(|(s, l)| CoverDoc {
                    vertices: s.as_slice().to_vec(),
                    lambda: l.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the certificate exactly as written; no invariant is checked
    /// beyond the graph being simple, so a verifier sees any tampering.
    pub fn to_certificate(&self) -> Result<GapCertificate> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Json(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let graph = self.graph.to_graph()?;
        let x = self.x_star.clone();
        let c = CostVector::new_unchecked(self.worst_cost.clone());
        Ok(GapCertificate {
            graph,
            chi_f: self.chi_f.clone(),
            rho: self.rho.clone(),
            lp_value: self.lp_value.clone(),
            lp_dual: self.lp_dual.clone(),
            ip_value: self.ip_value.clone(),
            ip_cover: VertexSet::new(self.ip_cover.clone()),
            ratio: self.ratio.clone(),
            x_star: HalfIntegralVC {
                objective: crate::rational::dot(c.values(), &x),
                x,
                v0: VertexSet::new(self.partition.v0.clone()),
                v_half: VertexSet::new(self.partition.v_half.clone()),
                v1: VertexSet::new(self.partition.v1.clone()),
            },
            worst_cost: c,
            h_coloring: self.h_coloring.to_coloring(),
            covers: self
                .covers
                .iter()
                .map(|c| (VertexSet::new(c.vertices.clone()), c.lambda.clone()))
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap::{verify_certificate, worst_case_certificate};
    use crate::graph::cycle;

    #[test]
    fn json_shape() {
        let g = cycle(5).unwrap();
        let cert = worst_case_certificate(&g, 40).unwrap();
        let doc = CertificateDoc::new(&cert, 7);
        let text = doc.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["chi_f"], "5/2");
        assert_eq!(v["rho"], "6/5");
        assert_eq!(v["ratio"], "6/5");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["worst_cost"][0], "1/2");
        assert!(v["covers"][0]["vertices"].is_array());
        assert!(v["covers"][0]["lambda"].is_string());
        assert!(v["partition"]["v_half"].is_array());

        let back = CertificateDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let cert2 = back.to_certificate().unwrap();
        assert_eq!(cert2, cert);
        assert!(verify_certificate(&g, &cert2, None).all_passed());
    }

    #[test]
    fn rejects_floats_and_versions() {
        let g = cycle(3).unwrap();
        let doc = CertificateDoc::new(&worst_case_certificate(&g, 40).unwrap(), 0);
        let text = doc.to_json().replace("\"chi_f\": \"3\"", "\"chi_f\": 3.0");
        assert!(CertificateDoc::from_json(&text).is_err());
        let mut d = doc.clone();
        d.schema_version = 99;
        assert!(d.to_certificate().is_err());
    }
}

//! JSON form of the presentation. Indices are 1-based and polynomials are
//! printed in degrevlex-descending order.

use derivring_core::relgen::PresentationDoc;
use derivring_core::{IndexTuple, Residue};
use serde::{Deserialize, Serialize};

use crate::parse::print_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: GeneratorsJson,
    pub rd1: Vec<String>,
    pub rd2: Vec<Rd2Json>,
    pub rd3: Vec<Rd3Json>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub variables: Vec<String>,
    pub d_symbols: Vec<SymbolJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rd2Json {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: usize,
    pub constant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rd3Json {
    pub i: Vec<usize>,
    pub iprime: Vec<usize>,
    pub j: Vec<usize>,
    pub jprime: Vec<usize>,
    pub lhs_minor: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub sign: i32,
    pub minor: String,
    pub target_j: Vec<usize>,
}

fn idx(t: &IndexTuple) -> Vec<usize> {
    t.one_based()
}

impl PresentationJson {
    pub fn from_doc(doc: &PresentationDoc, generators: &[derivring_core::Polynomial]) -> Self {
        let vars = &doc.variables;
        let show = |r: &Residue| print_polynomial(r.lift(), vars);
        let missing = "0".to_string();
        PresentationJson {
            generators: GeneratorsJson {
                variables: vars.clone(),
                d_symbols: doc.d_symbols.iter().map(|(i, j)| SymbolJson { i: idx(i), j: idx(j) }).collect(),
            },
            rd1: generators.iter().map(|f| print_polynomial(f, vars)).collect(),
            rd2: doc
                .rd2
                .iter()
                .map(|rel| Rd2Json {
                    i: idx(&rel.i),
                    j: idx(&rel.j),
                    k: rel.k.map_or(0, |k| k + 1),
                    constant: rel.minor.as_ref().map_or(missing.clone(), show),
                })
                .collect(),
            rd3: doc
                .rd3
                .iter()
                .map(|rel| Rd3Json {
                    i: idx(&rel.i),
                    iprime: idx(&rel.iprime),
                    j: idx(&rel.j),
                    jprime: idx(&rel.jprime),
                    lhs_minor: rel.minor.as_ref().map_or(missing.clone(), show),
                    terms: rel
                        .terms
                        .iter()
                        .map(|t| TermJson { sign: t.sign, minor: show(&t.minor), target_j: idx(&t.target_j) })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

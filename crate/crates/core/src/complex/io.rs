use serde::{Deserialize, Serialize};

use super::{SimplicialComplex, SimplicialPair, SimplicialTriad};
use crate::error::ComplexError;

/// On-disk complex: `{"vertices": N, "facets": [...]}` plus optional pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_facets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub2_facets: Option<Vec<Vec<usize>>>,
}

/// Parses JSON, reporting the line and column of syntax errors.
pub fn parse_complex_file(text: &str) -> Result<ComplexFile, ComplexError> {
    serde_json::from_str(text).map_err(|e| ComplexError::Json(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn sorted(mut f: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut f {
        s.sort_unstable();
    }
    f.sort();
    f
}

fn facet_lists(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    c.facets().into_iter().map(|s| s.vertices().to_vec()).collect()
}

impl ComplexFile {
    /// Every declared vertex becomes a 0-simplex of the total complex.
    pub fn total(&self) -> Result<SimplicialComplex, ComplexError> {
        let points = (0..self.vertices).map(|v| vec![v]);
        SimplicialComplex::from_facets(self.vertices, self.facets.iter().cloned().chain(points))
    }

    pub fn pair(&self) -> Result<SimplicialPair, ComplexError> {
        let total = self.total()?;
        let sub = SimplicialComplex::from_facets(self.vertices, self.sub_facets.clone().unwrap_or_default())?;
        SimplicialPair::new(total, sub)
    }

    pub fn triad(&self) -> Result<SimplicialTriad, ComplexError> {
        let total = self.total()?;
        let s1 = SimplicialComplex::from_facets(self.vertices, self.sub_facets.clone().unwrap_or_default())?;
        let s2 = SimplicialComplex::from_facets(self.vertices, self.sub2_facets.clone().unwrap_or_default())?;
        SimplicialTriad::new(total, s1, s2)
    }

    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: c.vertex_count(),
            facets: sorted(facet_lists(c)),
            sub_facets: None,
            sub2_facets: None,
        }
    }

    pub fn from_pair(p: &SimplicialPair) -> Self {
        let mut f = Self::from_complex(&p.total);
        f.sub_facets = Some(sorted(facet_lists(&p.sub)));
        f
    }

    pub fn from_triad(t: &SimplicialTriad) -> Self {
        let mut f = Self::from_complex(&t.total);
        f.sub_facets = Some(sorted(facet_lists(&t.sub1)));
        f.sub2_facets = Some(sorted(facet_lists(&t.sub2)));
        f
    }

    /// Canonical text: one facet per line, sorted.
    pub fn to_canonical_json(&self) -> String {
        fn list(name: &str, f: &[Vec<usize>]) -> String {
            let body: Vec<String> = f
                .iter()
                .map(|s| format!("    {}", serde_json::to_string(s).expect("ints")))
                .collect();
            if body.is_empty() {
                format!("  \"{name}\": []")
            } else {
                format!("  \"{name}\": [\n{}\n  ]", body.join(",\n"))
            }
        }
        let mut parts = vec![
            format!("  \"vertices\": {}", self.vertices),
            list("facets", &self.facets),
        ];
        if let Some(s) = &self.sub_facets {
            parts.push(list("sub_facets", s));
        }
        if let Some(s) = &self.sub2_facets {
            parts.push(list("sub2_facets", s));
        }
        format!("{{\n{}\n}}\n", parts.join(",\n"))
    }
}

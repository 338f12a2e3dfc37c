//! The JSON input document and its translation into core objects.

use std::collections::BTreeMap;
use std::fmt;

use saw_core::algebra::{AlgebraKind, WeightedPresentation};
use saw_core::quiver::{validate, RawArrow, RawQuiver, TriangulationQuiver};
use saw_core::surface::{quiver_from_surface, raw_quiver_from_surface, DirectedTriangulation, Triangle};
use saw_core::{Field, Result, SawError};
use serde::{Deserialize, Serialize};

/// Identifiers may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Id {
    Text(String),
    Int(i64),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Text(s) => f.write_str(s),
            Id::Int(n) => write!(f, "{n}"),
        }
    }
}

/// Scalar written as `"n"`, `"n/d"` or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Text(s) => s.clone(),
            Scalar::Int(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: Id,
    pub from: Id,
    pub to: Id,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<Id>,
    pub arrows: Vec<ArrowDoc>,
    pub f: BTreeMap<String, Id>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleDoc {
    pub edges: [Id; 3],
    #[serde(rename = "selfFolded", default)]
    pub self_folded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub edges: Vec<Id>,
    pub triangles: Vec<TriangleDoc>,
    #[serde(default)]
    pub boundary: Vec<Id>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub enum FieldDoc {
    Q,
    Fp(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Weighted,
    Biserial,
    String,
    Deformed,
}

impl KindDoc {
    pub fn kind(self) -> AlgebraKind {
        match self {
            KindDoc::Weighted => AlgebraKind::Weighted,
            KindDoc::Biserial => AlgebraKind::Biserial,
            KindDoc::String => AlgebraKind::String,
            KindDoc::Deformed => AlgebraKind::SocleDeformed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Scalar>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub border: BTreeMap<String, Scalar>,
    #[serde(default = "default_field")]
    pub field: FieldDoc,
    #[serde(default = "default_kind")]
    pub kind: KindDoc,
}

fn default_field() -> FieldDoc {
    FieldDoc::Q
}

fn default_kind() -> KindDoc {
    KindDoc::Weighted
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| SawError::Input(e.to_string()))?;
    match (&doc.quiver, &doc.surface) {
        (Some(_), Some(_)) => Err(SawError::Input("give either \"quiver\" or \"surface\", not both".into())),
        (None, None) => Err(SawError::Input("missing \"quiver\" or \"surface\"".into())),
        _ => Ok(doc),
    }
}

impl QuiverDoc {
    pub fn raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.to_string(),
                    from: a.from.to_string(),
                    to: a.to.to_string(),
                })
                .collect(),
            f: self.f.iter().map(|(a, b)| (a.clone(), b.to_string())).collect(),
        }
    }

    pub fn from_raw(raw: &RawQuiver) -> Self {
        QuiverDoc {
            vertices: raw.vertices.iter().cloned().map(Id::Text).collect(),
            arrows: raw
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    id: Id::Text(a.id.clone()),
                    from: Id::Text(a.from.clone()),
                    to: Id::Text(a.to.clone()),
                })
                .collect(),
            f: raw.f.iter().map(|(a, b)| (a.clone(), Id::Text(b.clone()))).collect(),
        }
    }
}

impl SurfaceDoc {
    pub fn triangulation(&self) -> DirectedTriangulation {
        DirectedTriangulation {
            edges: self.edges.iter().map(|e| e.to_string()).collect(),
            triangles: self
                .triangles
                .iter()
                .map(|t| Triangle {
                    edges: [t.edges[0].to_string(), t.edges[1].to_string(), t.edges[2].to_string()],
                    self_folded: t.self_folded,
                })
                .collect(),
            boundary: self.boundary.iter().map(|e| e.to_string()).collect(),
        }
    }

    pub fn from_triangulation(t: &DirectedTriangulation) -> Self {
        SurfaceDoc {
            edges: t.edges.iter().cloned().map(Id::Text).collect(),
            triangles: t
                .triangles
                .iter()
                .map(|tr| TriangleDoc {
                    edges: tr.edges.clone().map(Id::Text),
                    self_folded: tr.self_folded,
                })
                .collect(),
            boundary: t.boundary.iter().cloned().map(Id::Text).collect(),
        }
    }
}

impl InputDocument {
    /// Raw quiver, converting a surface if needed.
    pub fn raw_quiver(&self) -> Result<RawQuiver> {
        match (&self.quiver, &self.surface) {
            (Some(q), _) => Ok(q.raw()),
            (None, Some(s)) => raw_quiver_from_surface(&s.triangulation()),
            (None, None) => Err(SawError::Input("missing \"quiver\" or \"surface\"".into())),
        }
    }

    pub fn quiver(&self) -> Result<TriangulationQuiver> {
        match (&self.quiver, &self.surface) {
            (Some(q), _) => validate(&q.raw()),
            (None, Some(s)) => quiver_from_surface(&s.triangulation()),
            (None, None) => Err(SawError::Input("missing \"quiver\" or \"surface\"".into())),
        }
    }

    /// Builds the presentation over `field`. Weight and parameter keys that
    /// are not orbit representatives are moved to the representative; the
    /// returned strings describe each such move.
    pub fn presentation<F: Field>(&self, field: F) -> Result<(WeightedPresentation<F>, Vec<String>)> {
        let q = self.quiver()?;
        let mut warnings = Vec::new();
        let mut pres = WeightedPresentation::new(q.clone(), field.clone(), self.kind.kind());
        let orbits = &q.g_structure().orbits;
        let mut seen_w: BTreeMap<usize, String> = BTreeMap::new();
        for (key, &m) in &self.weights {
            let a = arrow_key(&q, key, "weights")?;
            let rep = orbits[q.orbit_index(a)].rep;
            note_key(&q, key, a, rep, "weight", &mut warnings);
            if let Some(prev) = seen_w.insert(rep, key.clone()) {
                return Err(SawError::Input(format!(
                    "weights {prev} and {key} name the same g-orbit"
                )));
            }
            let m = usize::try_from(m).map_err(|_| SawError::Input(format!("weight {m} too large")))?;
            pres.set_weight(a, m);
        }
        let mut seen_c: BTreeMap<usize, String> = BTreeMap::new();
        for (key, c) in &self.params {
            let a = arrow_key(&q, key, "params")?;
            let rep = orbits[q.orbit_index(a)].rep;
            note_key(&q, key, a, rep, "parameter", &mut warnings);
            if let Some(prev) = seen_c.insert(rep, key.clone()) {
                return Err(SawError::Input(format!(
                    "params {prev} and {key} name the same g-orbit"
                )));
            }
            let value = field
                .parse(&c.text())
                .map_err(|e| SawError::Input(format!("parameter for {key}: {e}")))?;
            pres.set_param(a, value);
        }
        for (key, b) in &self.border {
            let v = q
                .vertex_by_name(key)
                .ok_or_else(|| SawError::Input(format!("border names unknown vertex {key}")))?;
            let value = field
                .parse(&b.text())
                .map_err(|e| SawError::Input(format!("border value for {key}: {e}")))?;
            pres.set_border(v, value);
        }
        pres.check()?;
        Ok((pres, warnings))
    }
}

fn arrow_key(q: &TriangulationQuiver, key: &str, section: &str) -> Result<usize> {
    q.arrow_by_name(key)
        .ok_or_else(|| SawError::Input(format!("{section} names unknown arrow {key}")))
}

fn note_key(q: &TriangulationQuiver, key: &str, a: usize, rep: usize, what: &str, warnings: &mut Vec<String>) {
    if a != rep {
        warnings.push(format!(
            "{what} key {key} is not the orbit representative; applied to the orbit of {}",
            q.arrow_name(rep)
        ));
    }
}

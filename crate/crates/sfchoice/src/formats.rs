//! JSON documents read and written by the command-line tool.
//!
//! Vertex-keyed maps use decimal vertex ids as object keys. All maps are
//! ordered, so serialising the same value always yields the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sfchoice_core::adversary::{GadgetBundle, GadgetParams, PairPath};
use sfchoice_core::colour::{ColourSet, ListAssignment, MultiColouring};
use sfchoice_core::constructive::TraceStep;
use sfchoice_core::oracle::{GadgetCertificate, GadgetDefect, GADGET_CLAIM};
use sfchoice_core::sp::Graph;
use sfchoice_core::{Colour, Vertex};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<[Vertex; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertices: g.vertices().to_vec(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            terminals: g.terminals().map(|(x, y)| [x, y]),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = CliError;

    fn try_from(j: &GraphJson) -> CliResult<Graph> {
        Ok(Graph::new(
            j.vertices.iter().copied(),
            j.edges.iter().map(|&[u, v]| (u, v)),
            j.terminals.map(|[x, y]| (x, y)),
        )?)
    }
}

fn sets_to_json<'a>(it: impl Iterator<Item = (Vertex, &'a ColourSet)>) -> BTreeMap<Vertex, Vec<Colour>> {
    it.map(|(v, s)| (v, s.to_vec())).collect()
}

fn check_set(v: Vertex, colours: &[Colour]) -> CliResult<ColourSet> {
    let set: ColourSet = colours.iter().copied().collect();
    if set.len() != colours.len() {
        return Err(CliError::Input(format!("vertex {v}: repeated colour in {colours:?}")));
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListsJson {
    pub lists: BTreeMap<Vertex, Vec<Colour>>,
}

impl From<&ListAssignment> for ListsJson {
    fn from(l: &ListAssignment) -> Self {
        ListsJson { lists: sets_to_json(l.iter()) }
    }
}

impl TryFrom<&ListsJson> for ListAssignment {
    type Error = CliError;

    fn try_from(j: &ListsJson) -> CliResult<ListAssignment> {
        j.lists.iter().map(|(&v, c)| Ok((v, check_set(v, c)?))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColouringJson {
    pub m: usize,
    pub colours: BTreeMap<Vertex, Vec<Colour>>,
}

impl From<&MultiColouring> for ColouringJson {
    fn from(c: &MultiColouring) -> Self {
        ColouringJson { m: c.fold(), colours: sets_to_json(c.iter()) }
    }
}

impl TryFrom<&ColouringJson> for MultiColouring {
    type Error = CliError;

    fn try_from(j: &ColouringJson) -> CliResult<MultiColouring> {
        let mut out = MultiColouring::new(j.m);
        for (&v, c) in &j.colours {
            out.set(v, check_set(v, c)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStepJson {
    Chain { vertices: Vec<Vertex> },
    ChainThroughTerminal { vertices: Vec<Vertex> },
    Leaf { vertex: Vertex, neighbour: Option<Vertex> },
    Path { vertices: Vec<Vertex> },
}

impl From<&TraceStep> for TraceStepJson {
    fn from(s: &TraceStep) -> Self {
        match s {
            TraceStep::Chain { vertices } => TraceStepJson::Chain { vertices: vertices.clone() },
            TraceStep::ChainThroughTerminal { vertices } => {
                TraceStepJson::ChainThroughTerminal { vertices: vertices.clone() }
            }
            TraceStep::Leaf { vertex, neighbour } => TraceStepJson::Leaf { vertex: *vertex, neighbour: *neighbour },
            TraceStep::Path { vertices } => TraceStepJson::Path { vertices: vertices.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    #[serde(rename = "S")]
    pub s: Vec<Colour>,
    #[serde(rename = "T")]
    pub t: Vec<Colour>,
    pub path: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub k: u32,
    pub m: usize,
    pub e: usize,
    pub q: usize,
    pub l: usize,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GadgetJson {
    pub graph: GraphJson,
    pub lists: BTreeMap<Vertex, Vec<Colour>>,
    #[serde(rename = "X")]
    pub x: Vec<Colour>,
    #[serde(rename = "Y")]
    pub y: Vec<Colour>,
    pub pairing: Vec<PairJson>,
    pub params: ParamsJson,
    pub blocks: BTreeMap<String, Vec<Colour>>,
}

impl From<&GadgetBundle> for GadgetJson {
    fn from(b: &GadgetBundle) -> Self {
        let p = b.params;
        GadgetJson {
            graph: GraphJson::from(&b.graph),
            lists: sets_to_json(b.lists.iter()),
            x: b.x_list.to_vec(),
            y: b.y_list.to_vec(),
            pairing: b
                .pairing
                .iter()
                .map(|pp| PairJson { s: pp.s.to_vec(), t: pp.t.to_vec(), path: pp.path.clone() })
                .collect(),
            params: ParamsJson { k: p.k, m: p.m, e: p.e, q: p.q, l: p.l, p: p.p },
            blocks: b.blocks.iter().map(|(k, v)| (k.clone(), v.to_vec())).collect(),
        }
    }
}

impl TryFrom<&GadgetJson> for GadgetBundle {
    type Error = CliError;

    /// Only the shape is checked here; the pairing and lists are checked by
    /// the verifier.
    fn try_from(j: &GadgetJson) -> CliResult<GadgetBundle> {
        let p = j.params;
        Ok(GadgetBundle {
            graph: Graph::try_from(&j.graph)?,
            lists: ListAssignment::try_from(&ListsJson { lists: j.lists.clone() })?,
            x_list: check_set(0, &j.x)?,
            y_list: check_set(0, &j.y)?,
            pairing: j
                .pairing
                .iter()
                .map(|pp| Ok(PairPath { s: check_set(0, &pp.s)?, t: check_set(0, &pp.t)?, path: pp.path.clone() }))
                .collect::<CliResult<_>>()?,
            params: GadgetParams { k: p.k, m: p.m, e: p.e, q: p.q, l: p.l, p: p.p },
            blocks: j.blocks.iter().map(|(k, v)| Ok((k.clone(), check_set(0, v)?))).collect::<CliResult<_>>()?,
        })
    }
}

/// Either a witness (`S`, `T`, `witness`) or a `structure` message.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectJson {
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Colour>>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Colour>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ColouringJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub pairs_checked: usize,
    pub all_uncolourable: bool,
    pub defects: Vec<DefectJson>,
    pub runtime_ms: u64,
    /// What an all-uncolourable verdict implies.
    pub claim: String,
}

impl CertificateJson {
    /// `runtime_ms` defaults to 0 when the certificate was built without a clock.
    pub fn new(cert: &GadgetCertificate) -> Self {
        CertificateJson {
            pairs_checked: cert.pairs_checked,
            all_uncolourable: cert.all_uncolourable,
            defects: cert
                .defects
                .iter()
                .map(|d| match d {
                    GadgetDefect::Witness { s, t, witness } => DefectJson {
                        s: Some(s.to_vec()),
                        t: Some(t.to_vec()),
                        witness: Some(ColouringJson::from(witness)),
                        ..Default::default()
                    },
                    GadgetDefect::Structure(msg) => DefectJson { structure: Some(msg.clone()), ..Default::default() },
                })
                .collect(),
            runtime_ms: cert.runtime_ms.unwrap_or(0),
            claim: GADGET_CLAIM.to_string(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let text = to_json_string(value);
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sfchoice_core::adversary::build_gadget;
    use sfchoice_core::sp::{parse_sp_expression, realize};

    #[test]
    fn graph_round_trip() {
        let g = realize(&parse_sp_expression("P(e^2,e^3)").unwrap()).unwrap();
        let j = GraphJson::from(&g);
        let text = to_json_string(&j);
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Graph::try_from(&back).unwrap(), g);
    }

    #[test]
    fn map_keys_are_decimal_strings() {
        let lists: ListAssignment = [(10, ColourSet::from([1, 2])), (2, ColourSet::from([3]))].into_iter().collect();
        let text = serde_json::to_string(&ListsJson::from(&lists)).unwrap();
        assert_eq!(text, r#"{"lists":{"2":[3],"10":[1,2]}}"#);
    }

    #[test]
    fn repeated_colours_rejected() {
        let j: ListsJson = serde_json::from_str(r#"{"lists":{"0":[1,1]}}"#).unwrap();
        assert_eq!(ListAssignment::try_from(&j).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn multi_edge_in_file_rejected() {
        let j: GraphJson = serde_json::from_str(r#"{"vertices":[0,1],"edges":[[0,1],[1,0]]}"#).unwrap();
        assert!(Graph::try_from(&j).is_err());
    }

    #[test]
    fn gadget_round_trip() {
        let b = build_gadget(4, 2, 1).unwrap();
        let j = GadgetJson::from(&b);
        let back: GadgetJson = serde_json::from_str(&to_json_string(&j)).unwrap();
        assert_eq!(GadgetBundle::try_from(&back).unwrap(), b);
    }

    #[test]
    fn trace_is_tagged() {
        let s = TraceStepJson::from(&TraceStep::Leaf { vertex: 3, neighbour: None });
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"leaf","vertex":3,"neighbour":null}"#);
    }
}

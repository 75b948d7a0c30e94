//! Canonical text forms: graph JSON, Graphviz DOT and JSONL growth traces.
//!
//! Output is deterministic: edges are written as `[u, v]` with `u < v` in
//! lexicographic order and metadata keys are sorted, so equal graphs always
//! serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::de::{self, DeserializeSeed, Deserializer, MapAccess, SeqAccess, Visitor};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, RingOrder};
use crate::growth::{GrowthTrace, TraceEvent};

pub type Meta = BTreeMap<String, Value>;

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub meta: Meta,
}

fn parse_error(e: serde_json::Error, line_offset: usize) -> Error {
    Error::Parse {
        line: e.line() + line_offset,
        column: e.column(),
        message: strip_position(&e.to_string()),
    }
}

// serde_json appends " at line L column C"; the position is carried separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// `{"n":<int>,"edges":[[u,v],...],"meta":{...}}` on a single line.
pub fn to_json(g: &Graph, meta: &Meta) -> String {
    let mut out = String::with_capacity(16 + 10 * g.link_count());
    write!(out, "{{\"n\":{},\"edges\":[", g.node_count()).unwrap();
    for (i, (u, v)) in g.edges().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "[{u},{v}]").unwrap();
    }
    out.push_str("],\"meta\":");
    out.push_str(&serde_json::to_string(meta).expect("meta is plain JSON"));
    out.push('}');
    out
}

pub fn from_json(text: &str) -> Result<Graph> {
    read_document(text).map(|d| d.graph)
}

/// Parses a graph document. Malformed JSON, self-loops, duplicate edges and
/// endpoints outside `0..n` are reported with their line and column.
pub fn read_document(text: &str) -> Result<GraphDocument> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc = DocSeed.deserialize(&mut de).map_err(|e| parse_error(e, 0))?;
    de.end().map_err(|e| parse_error(e, 0))?;
    Ok(doc)
}

struct DocSeed;

impl<'de> DeserializeSeed<'de> for DocSeed {
    type Value = GraphDocument;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<GraphDocument, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for DocSeed {
    type Value = GraphDocument;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a graph object with n, edges and meta")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<GraphDocument, A::Error> {
        let mut n: Option<usize> = None;
        let mut edges: Option<Vec<(usize, usize)>> = None;
        let mut meta = Meta::new();
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "n" => n = Some(map.next_value()?),
                "edges" => edges = Some(map.next_value_seed(EdgesSeed { n })?),
                "meta" => meta = map.next_value()?,
                other => return Err(de::Error::unknown_field(other, &["n", "edges", "meta"])),
            }
        }
        let n = n.ok_or_else(|| de::Error::missing_field("n"))?;
        let edges = edges.unwrap_or_default();
        // only reachable when "edges" came before "n"
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u.max(v) >= n) {
            return Err(de::Error::custom(format!(
                "edge [{u},{v}] has an endpoint outside 0..{n}"
            )));
        }
        let graph = Graph::from_edges(n, edges).map_err(de::Error::custom)?;
        Ok(GraphDocument { graph, meta })
    }
}

struct EdgesSeed {
    n: Option<usize>,
}

impl<'de> DeserializeSeed<'de> for EdgesSeed {
    type Value = Vec<(usize, usize)>;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Self::Value, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for EdgesSeed {
    type Value = Vec<(usize, usize)>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a list of [u,v] pairs")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        while let Some((u, v)) = seq.next_element::<(usize, usize)>()? {
            if u == v {
                return Err(de::Error::custom(format!("self-loop [{u},{v}]")));
            }
            if let Some(n) = self.n.filter(|&n| u.max(v) >= n) {
                return Err(de::Error::custom(format!(
                    "edge [{u},{v}] has an endpoint outside 0..{n}"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(de::Error::custom(format!("duplicate edge [{u},{v}]")));
            }
            out.push((u, v));
        }
        Ok(out)
    }
}

const PALETTE: [&str; 8] = [
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "deeppink",
    "teal",
];

/// Undirected DOT. With `classes`, node `i` gets colour `classes[i]` from a
/// fixed palette (cycled), e.g. from [`half_classes`] or [`ring_classes`].
pub fn to_dot(g: &Graph, classes: Option<&[usize]>) -> String {
    let mut out = String::from("graph {\n");
    for u in g.nodes() {
        match classes.and_then(|c| c.get(u.index())) {
            Some(&c) => writeln!(out, "  {u} [color={}];", PALETTE[c % PALETTE.len()]).unwrap(),
            None => writeln!(out, "  {u};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Class 0 for the first `n/2` nodes, class 1 for the rest.
pub fn half_classes(n: usize) -> Vec<usize> {
    (0..n).map(|i| usize::from(i >= n / 2)).collect()
}

/// Class `i` for members of `rings[i]`; nodes on no ring get class 0.
pub fn ring_classes(n: usize, rings: &[&RingOrder]) -> Vec<usize> {
    let mut classes = vec![0; n];
    for (i, ring) in rings.iter().enumerate() {
        for &u in ring.members() {
            if let Some(c) = classes.get_mut(u.index()) {
                *c = i;
            }
        }
    }
    classes
}

/// One JSON object per event, each line newline-terminated.
pub fn trace_to_jsonl(trace: &GrowthTrace) -> String {
    let mut out = String::new();
    for ev in &trace.events {
        out.push_str(&serde_json::to_string(ev).expect("trace events serialize"));
        out.push('\n');
    }
    out
}

/// Parses and replays a JSONL trace; the returned trace is known to replay.
pub fn trace_from_jsonl(text: &str) -> Result<GrowthTrace> {
    let mut events = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ev: TraceEvent = serde_json::from_str(line).map_err(|e| parse_error(e, i))?;
        events.push(ev);
    }
    let trace = GrowthTrace { events };
    trace.replay()?;
    Ok(trace)
}

/// Replays a JSONL trace and returns the final graph.
pub fn replay_jsonl(text: &str) -> Result<Graph> {
    let trace = trace_from_jsonl(text)?;
    trace.replay()
}

/// Node ids of a node list, for callers building metadata.
pub fn id_list(nodes: &[NodeId]) -> Value {
    Value::from(nodes.iter().map(|u| u.index()).collect::<Vec<_>>())
}

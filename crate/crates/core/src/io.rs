//! Input formats (edge lists, JSON graphs, JSON planar maps) and output
//! helpers (JSON with 17 significant digits, CSV tables).

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::graph::{Dart, Edge, WeightedGraph};
use crate::planar::PlanarMap;

/// Parses `u v [c]` lines. Blank lines and `#` comments are skipped; the
/// conductance defaults to 1.
pub fn parse_edge_list(text: &str) -> Result<Vec<(String, String, f64)>> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let c = match fields.len() {
            2 => 1.0,
            3 => fields[2]
                .parse::<f64>()
                .map_err(|_| parse_err(format!("bad conductance `{}`", fields[2])))?,
            n => return Err(parse_err(format!("expected `u v [c]`, found {n} fields"))),
        };
        edges.push((fields[0].to_string(), fields[1].to_string(), c));
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(edges)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonEdge {
    Weighted(usize, usize, f64),
    Unit(usize, usize),
}

impl JsonEdge {
    fn edge(&self) -> Edge {
        match *self {
            JsonEdge::Weighted(u, v, c) => Edge::new(u, v, c),
            JsonEdge::Unit(u, v) => Edge::new(u, v, 1.0),
        }
    }
}

/// `{"vertices": n, "boundary": b, "edges": [[u, v, c], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub boundary: usize,
    edges: Vec<JsonEdge>,
}

impl GraphJson {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: g.vertex_count(),
            boundary: g.boundary(),
            edges: g
                .edges()
                .iter()
                .map(|e| JsonEdge::Weighted(e.u, e.v, e.conductance))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        if self.edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        WeightedGraph::new(self.vertices, self.edges.iter().map(JsonEdge::edge), self.boundary)
    }
}

/// A graph plus rotation system: `rotation[v]` lists dart ids (`2e` for
/// `u → v`, `2e + 1` for `v → u`) around `v`; `outer` is a dart on the
/// outer face.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub vertices: usize,
    pub boundary: usize,
    edges: Vec<JsonEdge>,
    pub rotation: Vec<Vec<usize>>,
    pub outer: usize,
}

impl MapJson {
    pub fn from_map(map: &PlanarMap) -> Self {
        let g = GraphJson::from_graph(map.graph());
        let outer_face = &map.faces()[map.outer_face()];
        MapJson {
            vertices: g.vertices,
            boundary: g.boundary,
            edges: g.edges,
            rotation: map
                .rotation()
                .iter()
                .map(|r| r.iter().map(Dart::index).collect())
                .collect(),
            outer: outer_face[0].index(),
        }
    }

    pub fn to_map(&self) -> Result<PlanarMap> {
        let graph = GraphJson {
            vertices: self.vertices,
            boundary: self.boundary,
            edges: self.edges.clone(),
        }
        .to_graph()?;
        let darts = 2 * graph.edge_count();
        let check = |d: usize| {
            if d < darts {
                Ok(Dart::from_index(d))
            } else {
                Err(Error::NonPlanarMap(format!("dart id {d} out of range")))
            }
        };
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().map(|&d| check(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PlanarMap::new(graph, rotation, check(self.outer)?)
    }
}

/// Loads a graph from a `.json` file or an edge list. For edge lists the
/// boundary is a vertex label (default `b`); for JSON it is a vertex id and
/// overrides the file's own boundary.
pub fn load_graph(path: &Path, boundary: Option<&str>) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let g: GraphJson = serde_json::from_str(&text)?;
        let g = g.to_graph()?;
        match boundary {
            Some(b) => {
                let id = b
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("boundary `{b}` is not a vertex id")))?;
                g.with_boundary(id)
            }
            None => Ok(g),
        }
    } else {
        let edges = parse_edge_list(&text)?;
        WeightedGraph::from_labeled(&edges, boundary.unwrap_or("b"))
    }
}

pub fn load_map(path: &Path) -> Result<PlanarMap> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str::<MapJson>(&text)?.to_map()
}

/// Pretty JSON whose floats carry 17 significant digits; non-finite values
/// become `null`.
struct PreciseFormatter(PrettyFormatter<'static>);

impl Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Formats a float the same way as [`to_json`].
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// Writes a header and string rows as CSV.
pub fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 strings"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_parsing() {
        let e = parse_edge_list("# triangle\na b\nb c 2.5\n\nc a 1 # unit\n").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[1], ("b".into(), "c".into(), 2.5));
        assert!(matches!(
            parse_edge_list("a b c d"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list("a b x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("# nothing\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn graph_json_roundtrip() {
        let g: GraphJson =
            serde_json::from_str(r#"{"vertices":3,"boundary":2,"edges":[[0,1],[1,2,0.5]]}"#).unwrap();
        let g = g.to_graph().unwrap();
        assert_eq!(g.edges()[1].conductance, 0.5);
        let back = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        assert!(back.contains("[1,2,0.5]"));
    }

    #[test]
    fn precise_floats() {
        let s = to_json(&serde_json::json!({"x": 1.0 / 3.0, "y": f64::NAN})).unwrap();
        assert!(s.contains("3.3333333333333331e-1"), "{s}");
        assert!(s.contains("null"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"].as_f64().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn csv_quoting() {
        let s = to_csv(&["a", "b"], [vec!["x,y".to_string(), "1".to_string()]]).unwrap();
        assert_eq!(s, "a,b\n\"x,y\",1\n");
    }
}

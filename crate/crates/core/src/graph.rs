//! Immutable undirected simple graphs in compressed adjacency form.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = usize;

/// Undirected simple graph with sorted neighbor lists.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted, and
/// addressed by their position in that list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    labels: Vec<String>,
}

/// Input format selector for [`load_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// Matrix-Market if the first line is a `%%MatrixMarket` banner, else an edge list.
    #[default]
    Auto,
    EdgeList,
    MatrixMarket,
    /// Header `n m` followed by `u v` pairs over dense ids.
    Canonical,
}

impl Graph {
    /// Builds a graph on `n` vertices, dropping self-loops and duplicate or
    /// reversed edges. Labels default to the decimal ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::with_labels(labels, edges)
    }

    fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        let mut list: Vec<(VertexId, VertexId)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a != b {
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        list.dedup();
        if list.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let mut degree = vec![0usize; n];
        for &(a, b) in &list {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; offsets[n]];
        // Edges are sorted, so each list fills in ascending order for the
        // lower endpoint; upper endpoints are sorted below.
        for &(a, b) in &list {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph {
            offsets,
            neighbors,
            edges: list,
            labels,
        })
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as VertexId).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Id of the edge `{a, b}`, if present.
    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let (small, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.neighbors(small).binary_search(&other).is_ok()
    }

    /// Original input label of a vertex.
    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Finds the vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as VertexId)
    }

    /// Work-ordering proxy for an edge: `d_u + d_v`.
    pub fn edge_hardness(&self, e: EdgeId) -> usize {
        let (u, v) = self.edges[e];
        self.degree(u) + self.degree(v)
    }

    /// Writes the canonical form: `n m`, then sorted `u v` lines.
    pub fn write_canonical<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n(), self.m())?;
        for &(a, b) in &self.edges {
            writeln!(w, "{a} {b}")?;
        }
        Ok(())
    }

    pub fn to_canonical_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_canonical(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::LengthMismatch(perm.len(), self.n()));
        }
        let mut labels = vec![String::new(); self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p as usize] = self.labels[v].clone();
        }
        Graph::with_labels(
            labels,
            self.edges
                .iter()
                .map(|&(a, b)| (perm[a as usize], perm[b as usize])),
        )
    }
}

/// Parses a graph from text.
///
/// Edge lists accept whitespace- or comma-separated pairs, one per line, with
/// `#` or `%` comment lines. Labels may be arbitrary tokens; when every label
/// is an integer they are assigned dense ids in numeric order, otherwise in
/// order of first appearance. Extra columns (weights) are ignored.
pub fn load_graph(text: &str, format: Format) -> Result<Graph> {
    let format = match format {
        Format::Auto => {
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            if first.trim_start().starts_with("%%MatrixMarket") {
                Format::MatrixMarket
            } else {
                Format::EdgeList
            }
        }
        f => f,
    };
    match format {
        Format::EdgeList | Format::Auto => parse_edge_list(text),
        Format::MatrixMarket => parse_matrix_market(text),
        Format::Canonical => parse_canonical(text),
    }
}

/// Reads a graph from a file, decompressing when the name ends in `.gz`.
pub fn read_graph_file(path: impl AsRef<Path>, format: Format) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let mut text = String::new();
    if path.extension().is_some_and(|e| e == "gz") {
        GzDecoder::new(BufReader::new(file)).read_to_string(&mut text)?;
    } else {
        BufReader::new(file).read_to_string(&mut text)?;
    }
    load_graph(&text, format)
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#') || t.starts_with('%')
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if is_comment(line) {
            continue;
        }
        let mut it = tokens(line);
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => pairs.push((a, b)),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected two vertex labels, got {line:?}"),
                })
            }
        }
    }

    let numeric: Option<Vec<(i64, i64)>> = pairs
        .iter()
        .map(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
        .collect();

    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    if let Some(nums) = &numeric {
        let mut sorted: Vec<i64> = nums.iter().flat_map(|&(a, b)| [a, b]).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let index: HashMap<i64, VertexId> = sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as VertexId))
            .collect();
        labels = sorted.iter().map(|x| x.to_string()).collect();
        let edges = nums.iter().map(|(a, b)| (index[a], index[b]));
        return Graph::with_labels(labels, edges);
    }

    let mut edges = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let mut pair = [0 as VertexId; 2];
        for (slot, s) in pair.iter_mut().zip([a, b]) {
            *slot = *ids.entry(s).or_insert_with(|| {
                labels.push(s.to_string());
                (labels.len() - 1) as VertexId
            });
        }
        edges.push((pair[0], pair[1]));
    }
    Graph::with_labels(labels, edges)
}

fn parse_matrix_market(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in lines.by_ref() {
        if is_comment(line) {
            continue;
        }
        let nums: Vec<&str> = tokens(line).collect();
        if size.is_none() {
            if nums.len() < 2 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "expected a `rows cols [nnz]` size line".into(),
                });
            }
            let rows = parse_usize(nums[0], i)?;
            let cols = parse_usize(nums[1], i)?;
            size = Some((rows, cols));
            continue;
        }
        let (rows, cols) = size.unwrap();
        if nums.len() < 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected a coordinate entry, got {line:?}"),
            });
        }
        let r = parse_usize(nums[0], i)?;
        let c = parse_usize(nums[1], i)?;
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("entry ({r}, {c}) outside a {rows}x{cols} matrix"),
            });
        }
        edges.push(((r - 1) as VertexId, (c - 1) as VertexId));
    }
    let (rows, cols) = size.ok_or(Error::EmptyGraph)?;
    let n = rows.max(cols);
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Graph::with_labels(labels, edges)
}

fn parse_canonical(text: &str) -> Result<Graph> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if is_comment(line) {
            continue;
        }
        let nums: Vec<&str> = tokens(line).collect();
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected two integers, got {line:?}"),
            });
        }
        let a = parse_usize(nums[0], i)?;
        let b = parse_usize(nums[1], i)?;
        match header {
            None => header = Some(a),
            Some(n) => {
                if a >= n || b >= n {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("vertex id out of range for n = {n}"),
                    });
                }
                edges.push((a as VertexId, b as VertexId));
            }
        }
    }
    let n = header.ok_or(Error::EmptyGraph)?;
    Graph::from_edges(n, edges)
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line: line + 1,
        message: format!("expected a non-negative integer, got {tok:?}"),
    })
}

/// Reads a graph from any buffered reader (edge list or Matrix-Market).
pub fn read_graph<R: BufRead>(mut reader: R, format: Format) -> Result<Graph> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    load_graph(&text, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_text() {
        let g = load_graph("0 1\n1 2\n2 0\n", Format::Auto).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn cleanup_drops_loops_and_duplicates() {
        let g = load_graph("1 1\n1 2\n2 1\n", Format::Auto).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn string_labels_map_by_first_appearance() {
        let g = load_graph("a b\nb c", Format::Auto).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), &["a", "b", "c"]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn comments_commas_and_weights() {
        let g = load_graph("# header\n% other\n0,1\n1 2 0.5\n", Format::EdgeList).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load_graph("0 1\n7\n", Format::Auto) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_graph_is_an_error() {
        assert!(matches!(load_graph("# nothing\n", Format::Auto), Err(Error::EmptyGraph)));
        assert!(matches!(load_graph("3 3\n", Format::Auto), Err(Error::EmptyGraph)));
    }

    #[test]
    fn matrix_market_keeps_isolated_vertices() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n5 5 2\n2 1\n3 2\n";
        let g = load_graph(text, Format::Auto).unwrap();
        assert_eq!((g.n(), g.m()), (5, 2));
        assert_eq!(g.degree(4), 0);
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn matrix_market_rejects_out_of_range() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n";
        assert!(matches!(load_graph(text, Format::Auto), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn canonical_round_trip_keeps_isolated() {
        let g = Graph::from_edges(6, [(0, 2), (1, 2), (4, 3)]).unwrap();
        let text = g.to_canonical_string();
        assert_eq!(text, "6 3\n0 2\n1 2\n3 4\n");
        let h = load_graph(&text, Format::Canonical).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn hardness_examples() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!((0..6).all(|e| k4.edge_hardness(e) == 6));
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.edge_hardness(path.edge_id(1, 2).unwrap()), 4);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.edge_hardness(star.edge_id(0, 1).unwrap()), 4);
    }
}

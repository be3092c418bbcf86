//! File formats: whitespace-separated edge lists and community files,
//! with a label map translating arbitrary string labels to dense ids.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::community::Cover;
use crate::graph::Graph;
use crate::{Error, Result};

/// Bidirectional map between external string labels and dense vertex ids.
/// Ids are assigned in order of first appearance.
#[derive(Debug, Clone, Default)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelMap {
    pub fn new() -> LabelMap {
        LabelMap::default()
    }

    /// Label map `"0"`, `"1"`, ... for graphs born with dense ids.
    pub fn numeric(n: usize) -> LabelMap {
        let mut map = LabelMap::new();
        for i in 0..n {
            map.intern(&i.to_string());
        }
        map
    }

    /// Returns the id for `label`, allocating the next id on first sight.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Panics if `id` was never assigned.
    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Reads an edge list: one edge per line, two whitespace-separated labels.
/// Lines starting with `#` and blank lines are ignored. Duplicate edges
/// collapse; self-loops are an error.
pub fn read_edge_list(path: &Path) -> Result<(Graph, LabelMap)> {
    let text = fs::read_to_string(path)?;
    parse_edge_list(&text, &path.display().to_string())
}

pub(crate) fn parse_edge_list(text: &str, origin: &str) -> Result<(Graph, LabelMap)> {
    let mut labels = LabelMap::new();
    let mut edges = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::MalformedEdgeLine {
                    path: origin.to_string(),
                    line: line_no + 1,
                    found: line.to_string(),
                });
            }
        };
        edges.push((labels.intern(a), labels.intern(b)));
    }
    let graph = Graph::from_edges(&edges, Some(labels.len()))?;
    Ok((graph, labels))
}

/// Writes the canonical edge list: one `u v` line per edge with `u < v` by
/// id, lines sorted by id pair.
pub fn write_edge_list<W: Write>(graph: &Graph, labels: &LabelMap, mut out: W) -> Result<()> {
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", labels.label(u), labels.label(v))?;
    }
    Ok(())
}

pub fn write_edge_list_file(graph: &Graph, labels: &LabelMap, path: &Path) -> Result<()> {
    write_edge_list(graph, labels, fs::File::create(path)?)
}

/// Reads a community file: one community per line, whitespace-separated
/// vertex labels. A label appearing on several lines yields an overlapping
/// cover. Every vertex of the graph must appear on at least one line.
pub fn read_cover(path: &Path, labels: &LabelMap, vertex_count: usize) -> Result<Cover> {
    let text = fs::read_to_string(path)?;
    parse_cover(&text, &path.display().to_string(), labels, vertex_count)
}

pub(crate) fn parse_cover(
    text: &str,
    origin: &str,
    labels: &LabelMap,
    vertex_count: usize,
) -> Result<Cover> {
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    let mut community = 0usize;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let id = labels.get(token).ok_or_else(|| Error::UnknownLabel {
                path: origin.to_string(),
                line: line_no + 1,
                label: token.to_string(),
            })?;
            memberships[id].push(community);
        }
        community += 1;
    }
    let uncovered: Vec<usize> = (0..vertex_count)
        .filter(|&v| memberships[v].is_empty())
        .collect();
    if !uncovered.is_empty() {
        let sample = uncovered
            .iter()
            .take(5)
            .map(|&v| labels.label(v))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::UncoveredVertices {
            count: uncovered.len(),
            sample,
        });
    }
    Cover::from_memberships(memberships)
}

/// Writes one community per line, labels sorted lexicographically.
pub fn write_cover<W: Write>(cover: &Cover, labels: &LabelMap, mut out: W) -> Result<()> {
    for members in cover.communities() {
        let mut names: Vec<&str> = members.iter().map(|&v| labels.label(v)).collect();
        names.sort_unstable();
        writeln!(out, "{}", names.join(" "))?;
    }
    Ok(())
}

pub fn write_cover_file(cover: &Cover, labels: &LabelMap, path: &Path) -> Result<()> {
    write_cover(cover, labels, fs::File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labels_comments_and_blanks() {
        let text = "# a comment\nalice bob\n\nbob carol\ncarol alice\n";
        let (g, labels) = parse_edge_list(text, "test").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(labels.get("alice"), Some(0));
        assert_eq!(labels.get("carol"), Some(2));
    }

    #[test]
    fn malformed_line_reports_position() {
        let err = parse_edge_list("a b\nc\n", "test").unwrap_err();
        match err {
            Error::MalformedEdgeLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_list_round_trips() {
        let text = "b a\nc b\na c\n";
        let (g, labels) = parse_edge_list(text, "test").unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &labels, &mut buf).unwrap();
        let written = String::from_utf8(buf).unwrap();
        assert_eq!(written, "b a\nb c\na c\n");
        let (g2, _) = parse_edge_list(&written, "round-trip").unwrap();
        assert_eq!(g2.edge_count(), g.edge_count());
        assert_eq!(g2.vertex_count(), g.vertex_count());
    }

    #[test]
    fn cover_partition_and_overlap() {
        let mut labels = LabelMap::new();
        for v in 0..5 {
            labels.intern(&v.to_string());
        }
        let cover = parse_cover("0 1 2\n3 4\n", "test", &labels, 5).unwrap();
        assert!(cover.is_partition());
        assert_eq!(cover.community_count(), 2);
        assert!(cover.same_community(0, 2));
        assert!(!cover.same_community(2, 3));

        let overlapping = parse_cover("0 1 2\n2 3 4\n", "test", &labels, 5).unwrap();
        assert!(!overlapping.is_partition());
        assert_eq!(overlapping.memberships(2).len(), 2);
    }

    #[test]
    fn empty_cover_on_nonempty_graph_is_an_error() {
        let labels = LabelMap::numeric(3);
        let err = parse_cover("", "test", &labels, 3).unwrap_err();
        assert!(matches!(err, Error::UncoveredVertices { count: 3, .. }));
    }

    #[test]
    fn unknown_label_is_an_error() {
        let labels = LabelMap::numeric(2);
        let err = parse_cover("0 7\n1\n", "test", &labels, 2).unwrap_err();
        assert!(matches!(err, Error::UnknownLabel { .. }));
    }

    #[test]
    fn missing_vertex_is_reported() {
        let labels = LabelMap::numeric(4);
        let err = parse_cover("0 1\n", "test", &labels, 4).unwrap_err();
        match err {
            Error::UncoveredVertices { count, sample } => {
                assert_eq!(count, 2);
                assert!(sample.contains('2') && sample.contains('3'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cover_writer_sorts_labels() {
        let mut labels = LabelMap::new();
        for name in ["zoe", "amy", "bob"] {
            labels.intern(name);
        }
        let cover = parse_cover("zoe amy\nbob\n", "test", &labels, 3).unwrap();
        let mut buf = Vec::new();
        write_cover(&cover, &labels, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "amy zoe\nbob\n");
    }
}

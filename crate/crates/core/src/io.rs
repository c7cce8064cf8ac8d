//! The `tgraph` text format.
//!
//! ```text
//! tgraph 1
//! n=5 a=5 nprime=2.5
//! # comment lines start with '#'
//! 0 1 3
//! 1 2 4,5
//! ```
//!
//! Line 1 is the magic + format version, line 2 the header, then one line per
//! edge: `<u> <v> <l1>[,<l2>,...]` with 0-based vertex indices and ascending
//! labels. Parsing is strict: any violation of the graph invariants is a load
//! error carrying the offending line number.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{Label, TemporalGraph, Vertex};

const MAGIC: &str = "tgraph 1";

/// Renders a graph in canonical form: edges sorted by `(u, v)`, labels
/// ascending, LF newlines. `parse` of the output reproduces the graph.
pub fn write_string(graph: &TemporalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(
        out,
        "n={} a={} nprime={}",
        graph.num_vertices(),
        graph.max_label(),
        graph.slow_arrival()
    )
    .unwrap();
    for e in graph.edges() {
        let labels = e
            .labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "{} {} {}", e.u, e.v, labels).unwrap();
    }
    out
}

pub fn save(graph: &TemporalGraph, path: &Path) -> Result<()> {
    std::fs::write(path, write_string(graph)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<TemporalGraph> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_named(&text, path.to_path_buf())
}

pub fn parse(text: &str) -> Result<TemporalGraph> {
    parse_named(text, PathBuf::from("<string>"))
}

fn parse_named(text: &str, path: PathBuf) -> Result<TemporalGraph> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.clone(),
        line,
        msg,
    };

    // Significant lines with their 1-based numbers; comments and blanks skipped.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines
        .next()
        .ok_or_else(|| err(1, "empty file, expected `tgraph 1`".into()))?;
    if magic != MAGIC {
        return Err(err(ln, format!("expected `{MAGIC}`, got `{magic}`")));
    }

    let (ln, header) = lines
        .next()
        .ok_or_else(|| err(ln, "missing header line `n=.. a=.. nprime=..`".into()))?;
    let mut n: Option<usize> = None;
    let mut a: Option<Label> = None;
    let mut nprime: Option<f64> = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(ln, format!("malformed header field `{field}`")))?;
        match key {
            "n" => {
                n = Some(value.parse().map_err(|e| err(ln, format!("n: {e}")))?);
            }
            "a" => {
                a = Some(value.parse().map_err(|e| err(ln, format!("a: {e}")))?);
            }
            "nprime" => {
                nprime = Some(value.parse().map_err(|e| err(ln, format!("nprime: {e}")))?);
            }
            other => return Err(err(ln, format!("unknown header field `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| err(ln, "header missing `n=`".into()))?;
    let a = a.ok_or_else(|| err(ln, "header missing `a=`".into()))?;
    let nprime = nprime.ok_or_else(|| err(ln, "header missing `nprime=`".into()))?;

    let mut edges: Vec<(Vertex, Vertex, Vec<Label>)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        let (u, v, labels_part) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), Some(ls), None) => (u, v, ls),
            _ => {
                return Err(err(
                    ln,
                    format!("expected `<u> <v> <l1>[,<l2>,...]`, got `{line}`"),
                ))
            }
        };
        let u: Vertex = u.parse().map_err(|e| err(ln, format!("vertex: {e}")))?;
        let v: Vertex = v.parse().map_err(|e| err(ln, format!("vertex: {e}")))?;
        let mut labels = Vec::new();
        for part in labels_part.split(',') {
            let l: Label = part
                .parse()
                .map_err(|e| err(ln, format!("label `{part}`: {e}")))?;
            labels.push(l);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(ln, "labels must be strictly ascending".into()));
        }
        edges.push((u, v, labels));
        edge_lines.push(ln);
    }

    // Per-edge invariant violations re-checked up front so they can carry a
    // line number; whole-graph checks fall back on the header line.
    for (i, (u, v, labels)) in edges.iter().enumerate() {
        let ln = edge_lines[i];
        if u == v {
            return Err(err(ln, format!("self-loop on vertex {u}")));
        }
        if *u >= n || *v >= n {
            return Err(err(ln, format!("vertex out of range 0..{n}")));
        }
        for l in labels {
            if *l == 0 || *l > a {
                return Err(err(ln, format!("label {l} outside 1..={a}")));
            }
        }
    }

    TemporalGraph::new(n, edges, a, nprime).map_err(|e| err(ln, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "tgraph 1\nn=3 a=5 nprime=2.5\n# a comment\n0 1 3\n1 2 4,5\n";

    #[test]
    fn parse_and_write_round_trip() {
        let g = parse(SAMPLE).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.max_label(), 5);
        assert_eq!(g.slow_arrival(), 2.5);
        assert_eq!(g.labels_of(1, 2), Some(&[4, 5][..]));
        let text = write_string(&g);
        let g2 = parse(&text).unwrap();
        assert_eq!(write_string(&g2), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_label = "tgraph 1\nn=3 a=2 nprime=1\n0 1 2\n1 2 7\n";
        match parse(bad_label) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_magic = "tgraph 2\nn=2 a=1 nprime=1\n0 1 1\n";
        assert!(matches!(
            parse(bad_magic),
            Err(Error::Parse { line: 1, .. })
        ));
        let descending = "tgraph 1\nn=3 a=5 nprime=2.5\n0 1 5,4\n";
        assert!(matches!(
            parse(descending),
            Err(Error::Parse { line: 3, .. })
        ));
        let self_loop = "tgraph 1\nn=3 a=5 nprime=2.5\n1 1 2\n";
        assert!(matches!(
            parse(self_loop),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# heading\n\ntgraph 1\n# more\nn=2 a=1 nprime=0.5\n\n0 1 1\n";
        let g = parse(text).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn duplicate_pair_is_rejected() {
        let text = "tgraph 1\nn=3 a=5 nprime=2.5\n0 1 3\n1 0 4\n";
        assert!(parse(text).is_err());
    }
}

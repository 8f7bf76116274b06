//! Text formats: edge lists, trace dumps and flat report records.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based
//! vertex ids. Output is sorted with `u < v`; input may come in any order
//! and may contain blank lines and `#` comments.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use graphtest_core::container::{ContainerTrace, LemmaReport};
use graphtest_core::oracles::{DistanceProperty, DistanceReport, DistanceWitness};
use graphtest_core::{Graph, VertexSet};
use serde_json::{json, Map, Value};

use crate::error::{HarnessError, Result};

fn parse_err(line: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let f = fields
            .next()
            .ok_or_else(|| parse_err(line, "expected two integers"))?;
        f.parse()
            .map_err(|_| parse_err(line, format!("not a vertex id: {f:?}")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(parse_err(line, "trailing fields"));
    }
    Ok(pair)
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let pair = parse_pair(i + 1, text)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push((i + 1, pair));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing \"n m\" header"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    for &(line, (u, v)) in &edges {
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(line, "self-loop"));
        }
    }
    let g = Graph::new(n, edges.iter().map(|&(_, e)| e))?;
    if g.edge_count() != m {
        return Err(parse_err(0, "duplicate edges"));
    }
    Ok(g)
}

pub fn write_edge_list<W: Write>(mut out: W, g: &Graph) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_edge_list(BufReader::new(file))
}

pub fn save_graph(path: &Path, g: &Graph) -> Result<()> {
    let file = File::create(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_edge_list(BufWriter::new(file), g)?;
    Ok(())
}

fn members(set: &VertexSet) -> String {
    let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    ids.join(" ")
}

/// One line `t v_t |F_t| |C_t|` per step. With `with_members`, each line is
/// followed by `  F: …` and `  C: …`.
pub fn write_trace<W: Write>(
    mut out: W,
    trace: &ContainerTrace,
    with_members: bool,
) -> std::io::Result<()> {
    for t in 1..=trace.len() {
        let (f, c) = (trace.fingerprint(t), trace.container(t));
        writeln!(out, "{t} {} {} {}", trace.chosen()[t - 1], f.len(), c.len())?;
        if with_members {
            writeln!(out, "  F: {}", members(f))?;
            writeln!(out, "  C: {}", members(c))?;
        }
    }
    Ok(())
}

pub fn lemma_report_record(report: &LemmaReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("witness_t".into(), json!(report.witness_t));
    m.insert("witness_size".into(), json!(report.witness_size));
    m.insert("bound_value".into(), json!(report.bound_value));
    m.insert(
        "edges_in_container".into(),
        json!(report.edges_in_container),
    );
    m.insert("edge_bound".into(), json!(report.edge_bound));
    m.insert("t_limit".into(), json!(report.t_limit));
    m.insert("satisfied".into(), json!(report.satisfied));
    m
}

pub fn distance_report_record(report: &DistanceReport) -> Map<String, Value> {
    let (property, parameter) = match report.property {
        DistanceProperty::IndepSet { m } => ("indep_set", m),
        DistanceProperty::Clique { m } => ("clique", m),
        DistanceProperty::KColorable { k } => ("k_colorable", k),
    };
    let witness = match &report.witness {
        DistanceWitness::Subset(s) => json!(s.to_vec()),
        DistanceWitness::Partition(p) => json!(p),
    };
    let mut m = Map::new();
    m.insert("property".into(), json!(property));
    m.insert("parameter".into(), json!(parameter));
    m.insert("n".into(), json!(report.n));
    m.insert("edit_count".into(), json!(report.edit_count));
    m.insert(
        "epsilon_equivalent".into(),
        json!(report.epsilon_equivalent),
    );
    m.insert("witness".into(), witness);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_sorts_edges() {
        let text = "# triangle plus a pendant\n4 4\n\n2 1\n0 1\n# inner\n0 2\n3 2\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_edge_list(&mut out, &g).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "4 4\n0 1\n0 2\n1 2\n2 3\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_edge_list("3 1\n0 3\n".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n1 1\n".as_bytes()).is_err());
        assert!(read_edge_list("3 2\n0 1\n".as_bytes()).is_err());
        assert!(read_edge_list("3 2\n0 1\n1 0\n".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n0 x\n".as_bytes()).is_err());
        assert!(read_edge_list("# nothing\n".as_bytes()).is_err());
    }

    #[test]
    fn trace_dump_lines() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let set = VertexSet::from_members(3, [0, 2]).unwrap();
        let trace = ContainerTrace::generate(&g, &set).unwrap();
        let mut out = Vec::new();
        write_trace(&mut out, &trace, true).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "1 0 1 2\n  F: 0\n  C: 0 2\n2 2 2 2\n  F: 0 2\n  C: 0 2\n"
        );
    }
}

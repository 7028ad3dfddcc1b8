use std::io::{BufRead, Write};

use super::SimpleGraph;
use crate::error::{Error, Result};
use crate::oracle::{Edge, Vertex};

/// Parses one `u v` pair per line (0-based). Blank lines and lines starting
/// with `#` are skipped. Without `n` the vertex count is `max id + 1`.
pub fn read_edge_list<R: BufRead>(reader: R, n: Option<usize>) -> Result<SimpleGraph> {
    let mut edges: Vec<Edge> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let parse = |s: &str| -> Result<Vertex> {
            s.parse().map_err(|_| {
                Error::InvalidInput(format!("line {}: `{s}` is not a vertex id", lineno + 1))
            })
        };
        if fields.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected two vertex ids, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    SimpleGraph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(mut writer: W, g: &SimpleGraph) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = SimpleGraph::from_edges(6, [(0, 1), (4, 2), (3, 5)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1\n2 4\n3 5\n");
        assert_eq!(read_edge_list(&buf[..], Some(6)).unwrap(), g);
    }

    #[test]
    fn comments_and_inferred_size() {
        let text = "# triangle\n0 1\n\n1 2\n2 0\n";
        let g = read_edge_list(text.as_bytes(), None).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn malformed_lines() {
        assert!(read_edge_list("0 1 2\n".as_bytes(), None).is_err());
        assert!(read_edge_list("0 x\n".as_bytes(), None).is_err());
        assert!(read_edge_list("0 5\n".as_bytes(), Some(3)).is_err());
        assert!(read_edge_list("1 1\n".as_bytes(), None).is_err());
    }
}

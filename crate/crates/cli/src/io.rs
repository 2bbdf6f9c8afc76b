//! Text formats: graphs (`n m` header then `u v` lines), hypergraphs
//! (`s n m` header then lines of `s` vertex indices), variable-size set
//! families (`n m` header then `k v1 .. vk` lines), partial colourings
//! (`v c` lines) and the flat key-value experiment config. All 0-indexed,
//! whitespace-separated, LF line endings.

use std::fmt::Write as _;

use ramsey_core::graph::Graph;
use ramsey_core::hypergraph::UniformHypergraph;

/// A parse failure with its 1-based line number.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn bad(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>, ParseError> {
    line.split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| bad(lineno, format!("expected an integer, got {tok:?}"))))
        .collect()
}

/// Lines with content, paired with their original line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(bad(1, "empty graph file"));
    };
    let head = numbers(header, hline)?;
    if head.len() != 2 {
        return Err(bad(hline, "header must be 'n m'"));
    }
    let (n, m) = (head[0], head[1] as usize);
    if lines.len() - 1 != m {
        return Err(bad(hline, format!("header promises {m} edges, file has {}", lines.len() - 1)));
    }
    let mut edges = Vec::with_capacity(m);
    for &(lineno, line) in &lines[1..] {
        let nums = numbers(line, lineno)?;
        if nums.len() != 2 {
            return Err(bad(lineno, "edge lines must be 'u v'"));
        }
        edges.push((nums[0] as u32, nums[1] as u32));
    }
    Graph::new(n as u32, &edges).map_err(|e| bad(hline, e.to_string()))
}

#[cfg_attr(not(test), allow(dead_code))] // round-trip helper used by the format tests
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph, ParseError> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(bad(1, "empty hypergraph file"));
    };
    let head = numbers(header, hline)?;
    if head.len() != 3 {
        return Err(bad(hline, "header must be 's n m'"));
    }
    let (s, n, m) = (head[0] as usize, head[1], head[2] as usize);
    if lines.len() - 1 != m {
        return Err(bad(hline, format!("header promises {m} edges, file has {}", lines.len() - 1)));
    }
    let mut edges = Vec::with_capacity(m);
    for &(lineno, line) in &lines[1..] {
        let nums = numbers(line, lineno)?;
        if nums.len() != s {
            return Err(bad(lineno, format!("edge lines must hold {s} vertices")));
        }
        edges.push(nums.into_iter().map(|v| v as u32).collect::<Vec<u32>>());
    }
    UniformHypergraph::new(s, n as u32, &edges).map_err(|e| bad(hline, e.to_string()))
}

pub fn write_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.s(), h.n(), h.edge_count());
    for e in h.edges() {
        let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

/// `n m` header then `k v1 .. vk` lines: subset families for the Janson
/// calculator and prestar parts.
pub fn parse_set_family(text: &str) -> Result<(u32, Vec<Vec<u32>>), ParseError> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(bad(1, "empty set-family file"));
    };
    let head = numbers(header, hline)?;
    if head.len() != 2 {
        return Err(bad(hline, "header must be 'n m'"));
    }
    let (n, m) = (head[0] as u32, head[1] as usize);
    if lines.len() - 1 != m {
        return Err(bad(hline, format!("header promises {m} sets, file has {}", lines.len() - 1)));
    }
    let mut sets = Vec::with_capacity(m);
    for &(lineno, line) in &lines[1..] {
        let nums = numbers(line, lineno)?;
        let Some((&k, rest)) = nums.split_first() else {
            return Err(bad(lineno, "set lines must start with their size"));
        };
        if rest.len() != k as usize {
            return Err(bad(lineno, format!("set line promises {k} elements, holds {}", rest.len())));
        }
        if let Some(&v) = rest.iter().find(|&&v| v >= n as u64) {
            return Err(bad(lineno, format!("element {v} out of range for ground size {n}")));
        }
        sets.push(rest.iter().map(|&v| v as u32).collect());
    }
    Ok((n, sets))
}

/// Partial colourings: `v c` lines (colours 1-based); uncoloured vertices
/// are simply absent.
pub fn parse_partial_colouring(text: &str, n: u32) -> Result<Vec<Option<u32>>, ParseError> {
    let mut colouring = vec![None; n as usize];
    for (lineno, line) in content_lines(text) {
        let nums = numbers(line, lineno)?;
        if nums.len() != 2 {
            return Err(bad(lineno, "colouring lines must be 'vertex colour'"));
        }
        let (v, c) = (nums[0], nums[1]);
        if v >= n as u64 {
            return Err(bad(lineno, format!("vertex {v} out of range for {n} vertices")));
        }
        if c == 0 {
            return Err(bad(lineno, "colours are 1-based"));
        }
        colouring[v as usize] = Some(c as u32);
    }
    Ok(colouring)
}

/// Comma-separated vertex sets, e.g. `0,1,5`.
pub fn parse_vertex_list(text: &str) -> Result<Vec<u32>, ParseError> {
    text.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| bad(1, format!("bad vertex {t:?}"))))
        .collect()
}

/// Flat `key = value` (or `key value`) experiment config.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k, v),
            None => line
                .split_once(char::is_whitespace)
                .ok_or_else(|| bad(lineno, "config lines are 'key = value'"))?,
        };
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// Grid specs: either `lo:hi:step` (inclusive ends, tolerant of rounding)
/// or a comma list of probabilities.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, ParseError> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| bad(1, format!("bad probability {t:?}")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    let grid: Vec<f64> = if parts.len() == 3 {
        let lo = parse_one(parts[0])?;
        let hi = parse_one(parts[1])?;
        let step = parse_one(parts[2])?;
        if step <= 0.0 {
            return Err(bad(1, "grid step must be positive"));
        }
        let mut g = Vec::new();
        let mut i = 0u32;
        loop {
            let p = lo + step * i as f64;
            if p > hi + step * 1e-9 {
                break;
            }
            g.push(p);
            i += 1;
        }
        g
    } else {
        text.split(',').map(parse_one).collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err(bad(1, "empty grid"));
    }
    if grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(bad(1, "grid probabilities must lie in [0, 1]"));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::petersen();
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = UniformHypergraph::fano();
        let text = write_hypergraph(&h);
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph("2 1\n0 x\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_hypergraph("3 4 2\n0 1 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_hypergraph("3 4 1\n0 1\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.1:0.3:0.1").unwrap();
        assert_eq!(g.len(), 3);
        assert!((g[2] - 0.3).abs() < 1e-12);
        let g = parse_grid("0.05,0.2,0.9").unwrap();
        assert_eq!(g, vec![0.05, 0.2, 0.9]);
        assert!(parse_grid("0.5,1.5").is_err());
    }

    #[test]
    fn config_pairs() {
        let cfg = parse_config("family = schur\nsize = 61\n# comment\ntrials 400\n").unwrap();
        assert_eq!(cfg.len(), 3);
        assert_eq!(cfg[0], ("family".into(), "schur".into()));
        assert_eq!(cfg[2], ("trials".into(), "400".into()));
    }
}

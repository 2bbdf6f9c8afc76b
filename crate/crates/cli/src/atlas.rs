//! Built-in graph atlas: `complete:k`, `cycle:k`, `path:k`, `petersen`,
//! `complete-bipartite:a,b`. Anything else is treated as a file path.

use ramsey_core::graph::Graph;

use crate::io;

pub fn resolve_graph(spec: &str) -> Result<Graph, String> {
    if let Some(g) = atlas(spec)? {
        return Ok(g);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("cannot read graph {spec:?}: {e}"))?;
    io::parse_graph(&text).map_err(|e| format!("{spec}: {e}"))
}

fn atlas(spec: &str) -> Result<Option<Graph>, String> {
    if spec == "petersen" {
        return Ok(Some(Graph::petersen()));
    }
    let Some((name, args)) = spec.split_once(':') else {
        return Ok(None);
    };
    let parse = |t: &str| t.parse::<u32>().map_err(|_| format!("bad atlas parameter {t:?}"));
    match name {
        "complete" => Ok(Some(Graph::complete(parse(args)?))),
        "cycle" => Graph::cycle(parse(args)?).map(Some).map_err(|e| e.to_string()),
        "path" => Ok(Some(Graph::path(parse(args)?))),
        "complete-bipartite" => {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| "complete-bipartite wants a,b".to_string())?;
            Ok(Some(Graph::complete_bipartite(parse(a)?, parse(b)?)))
        }
        _ => Ok(None),
    }
}

//! Instance sources shared by the subcommands: a hypergraph file or a
//! built-in family spec.

use clap::Args;
use ramsey_core::families::{
    build_copies_hypergraph, build_kap_hypergraph, build_schur_hypergraph,
};
use ramsey_core::hypergraph::UniformHypergraph;

use crate::{atlas, io};

#[derive(Args, Clone, Debug)]
pub struct HyperSource {
    /// Hypergraph file ('s n m' header then edge lines).
    #[arg(long)]
    pub hypergraph: Option<String>,
    /// Built-in family: copies | kap | schur.
    #[arg(long)]
    pub family: Option<String>,
    /// Family size: n for copies, N for kap/schur.
    #[arg(long)]
    pub size: Option<u32>,
    /// Pattern graph for the copies family (atlas name or file).
    #[arg(long)]
    pub h: Option<String>,
    /// Progression length for the kap family.
    #[arg(long)]
    pub k: Option<usize>,
    /// Drop residue 0 from the Schur family.
    #[arg(long)]
    pub exclude_zero: bool,
}

impl HyperSource {
    pub fn resolve(&self) -> Result<(UniformHypergraph, String), String> {
        match (&self.hypergraph, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read hypergraph {path:?}: {e}"))?;
                let h = io::parse_hypergraph(&text).map_err(|e| format!("{path}: {e}"))?;
                Ok((h, format!("file:{path}")))
            }
            (None, Some(family)) => {
                let size = self.size.ok_or("--family needs --size")?;
                match family.as_str() {
                    "copies" => {
                        let spec = self.h.as_deref().ok_or("copies family needs --h")?;
                        let pattern = atlas::resolve_graph(spec)?;
                        let h = build_copies_hypergraph(&pattern, size)
                            .map_err(|e| e.to_string())?;
                        Ok((h, format!("copies:{spec}:{size}")))
                    }
                    "kap" => {
                        let k = self.k.ok_or("kap family needs --k")?;
                        let h = build_kap_hypergraph(k, size).map_err(|e| e.to_string())?;
                        Ok((h, format!("kap:{k}:{size}")))
                    }
                    "schur" => {
                        let h = build_schur_hypergraph(size, self.exclude_zero)
                            .map_err(|e| e.to_string())?;
                        let tag = if self.exclude_zero { "schur-nozero" } else { "schur" };
                        Ok((h, format!("{tag}:{size}")))
                    }
                    other => Err(format!("unknown family {other:?} (copies | kap | schur)")),
                }
            }
            _ => Err("give exactly one instance source: --hypergraph or --family".into()),
        }
    }
}

use std::fmt::Write as _;

use cubewalk_core::{GroupElement, WeightVector};

use crate::report::Indexing;
use crate::CliError;

/// Largest dimension exported as DOT.
pub const MAX_DOT_DIM: u32 = 8;

fn weight_label(z: &WeightVector, h: usize) -> String {
    match z.integers() {
        Some(v) => v[h].to_string(),
        None => z.get(h).to_string(),
    }
}

/// Undirected DOT graph with one labelled edge per nonzero weight. Vertices
/// are labelled with their bitstrings.
pub fn to_dot(z: &WeightVector, indexing: Indexing) -> Result<String, CliError> {
    let dim = z.dim();
    if dim > MAX_DOT_DIM {
        return Err(CliError::usage(format!(
            "DOT export supports d <= {MAX_DOT_DIM}, got d = {dim}"
        )));
    }
    let n = z.len();
    let mut out = String::new();
    let _ = writeln!(out, "// weighted cubelike graph, d = {dim}, indexing: {}", indexing.name());
    let _ = writeln!(out, "graph cubelike {{");
    for u in 0..n {
        let bits = GroupElement::new(u, dim).expect("vertex in range");
        let _ = writeln!(out, "  {} [label=\"{bits}\"];", indexing.label(u));
    }
    for u in 0..n {
        for v in u..n {
            if z.get(u ^ v) == 0.0 {
                continue;
            }
            let _ = writeln!(
                out,
                "  {} -- {} [label=\"{}\"];",
                indexing.label(u),
                indexing.label(v),
                weight_label(z, u ^ v)
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

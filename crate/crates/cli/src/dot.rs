//! Graphviz export of a host graph with a certificate drawn on top.

use std::collections::HashMap;
use std::fmt::Write;

use immlab::{Graph, ImmersionCertificate};

/// Branch vertices are double circles; every certificate path gets its own
/// hue, and host edges no path uses are drawn light grey.
pub fn to_dot(g: &Graph, cert: Option<&ImmersionCertificate>) -> String {
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    let mut branch = vec![false; g.n()];
    if let Some(c) = cert {
        for &b in &c.branch {
            if b < g.n() {
                branch[b] = true;
            }
        }
        for (i, p) in c.paths.iter().enumerate() {
            for w in p.walk.windows(2) {
                owner.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(i);
            }
        }
    }
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for (v, &b) in branch.iter().enumerate() {
        if b {
            writeln!(out, "  {v} [shape=doublecircle];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        match owner.get(&(u, v)) {
            Some(&i) => {
                // golden-ratio hue steps keep neighbouring path colours apart
                let hue = (i as f64 * 0.618_033_988_75).fract();
                writeln!(out, "  {u} -- {v} [color=\"{hue:.3} 0.85 0.80\", penwidth=2];").unwrap();
            }
            None => writeln!(out, "  {u} -- {v} [color=lightgrey];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

//! Graphviz output for triangulation quivers.

use std::fmt::Write;

use saw_core::quiver::TriangulationQuiver;

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per vertex and one edge per arrow, in id order. With
/// `highlight`, the arrows of each f-orbit share a color and an
/// `forbit` attribute.
pub fn export_dot(q: &TriangulationQuiver, highlight: bool) -> String {
    let mut out = String::from("digraph Q {\n");
    for v in 0..q.num_vertices() {
        let _ = writeln!(out, "  {};", quoted(q.vertex_name(v)));
    }
    let mut group = vec![0; q.num_arrows()];
    for (k, orbit) in q.f_orbits().iter().enumerate() {
        for &a in &orbit.arrows {
            group[a] = k;
        }
    }
    for a in 0..q.num_arrows() {
        let s = quoted(q.vertex_name(q.s(a)));
        let t = quoted(q.vertex_name(q.t(a)));
        let label = quoted(q.arrow_name(a));
        if highlight {
            let g = group[a];
            let _ = writeln!(
                out,
                "  {s} -> {t} [label={label}, color=\"{}\", forbit={g}];",
                PALETTE[g % PALETTE.len()]
            );
        } else {
            let _ = writeln!(out, "  {s} -> {t} [label={label}];");
        }
    }
    out.push_str("}\n");
    out
}

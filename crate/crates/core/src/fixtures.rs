//! Standard small triangulation quivers and surfaces used by tests, the
//! acceptance suite and the shipped input files.

use crate::quiver::RawQuiver;
use crate::surface::{DirectedTriangulation, Triangle};

/// One triangle whose three sides lie on the boundary of a disc. Every
/// vertex carries a boundary loop; there is a single g-orbit of length 6.
pub fn disc_triangle() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3"],
        &[
            ("alpha", "1", "2"),
            ("beta", "2", "3"),
            ("gamma", "3", "1"),
            ("epsilon", "1", "1"),
            ("eta", "2", "2"),
            ("mu", "3", "3"),
        ],
        &[&["alpha", "beta", "gamma"], &["epsilon"], &["eta"], &["mu"]],
    )
}

pub fn disc_triangle_surface() -> DirectedTriangulation {
    DirectedTriangulation {
        edges: strings(&["1", "2", "3"]),
        triangles: vec![Triangle::plain("1", "2", "3")],
        boundary: strings(&["1", "2", "3"]),
    }
}

/// Sphere glued from two triangles with coherent orientations.
pub fn sphere_coherent() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3"],
        &[
            ("alpha1", "1", "2"),
            ("alpha2", "2", "3"),
            ("alpha3", "3", "1"),
            ("beta1", "1", "2"),
            ("beta2", "2", "3"),
            ("beta3", "3", "1"),
        ],
        &[&["alpha1", "alpha2", "alpha3"], &["beta1", "beta2", "beta3"]],
    )
}

pub fn sphere_coherent_surface() -> DirectedTriangulation {
    DirectedTriangulation {
        edges: strings(&["1", "2", "3"]),
        triangles: vec![Triangle::plain("1", "2", "3"), Triangle::plain("1", "2", "3")],
        boundary: vec![],
    }
}

/// The same sphere with the second triangle reversed; three g-orbits of
/// length 2.
pub fn sphere_opposite() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3"],
        &[
            ("alpha1", "1", "2"),
            ("alpha2", "2", "3"),
            ("alpha3", "3", "1"),
            ("beta1", "2", "1"),
            ("beta2", "3", "2"),
            ("beta3", "1", "3"),
        ],
        &[&["alpha1", "alpha2", "alpha3"], &["beta1", "beta3", "beta2"]],
    )
}

pub fn sphere_opposite_surface() -> DirectedTriangulation {
    DirectedTriangulation {
        edges: strings(&["1", "2", "3"]),
        triangles: vec![Triangle::plain("1", "2", "3"), Triangle::plain("1", "3", "2")],
        boundary: vec![],
    }
}

/// Two self-folded triangles sharing their outer edge 2.
pub fn self_folded_pair() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3"],
        &[
            ("alpha", "1", "1"),
            ("beta", "1", "2"),
            ("gamma", "2", "1"),
            ("delta", "2", "3"),
            ("sigma", "3", "2"),
            ("rho", "3", "3"),
        ],
        &[&["alpha", "beta", "gamma"], &["rho", "sigma", "delta"]],
    )
}

pub fn self_folded_pair_surface() -> DirectedTriangulation {
    DirectedTriangulation {
        edges: strings(&["1", "2", "3"]),
        triangles: vec![Triangle::self_folded("1", "2"), Triangle::self_folded("3", "2")],
        boundary: vec![],
    }
}

/// The tetrahedral triangulation quiver: a sphere built from four
/// coherently oriented triangles (1 5 4), (2 5 3), (2 6 4), (1 6 3).
pub fn tetrahedron() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("alpha", "3", "1"),
            ("beta", "4", "2"),
            ("gamma", "4", "1"),
            ("delta", "1", "5"),
            ("epsilon", "2", "5"),
            ("eta", "5", "4"),
            ("mu", "6", "3"),
            ("nu", "1", "6"),
            ("xi", "5", "3"),
            ("rho", "2", "6"),
            ("sigma", "3", "2"),
            ("omega", "6", "4"),
        ],
        &[
            &["delta", "eta", "gamma"],
            &["beta", "rho", "omega"],
            &["sigma", "epsilon", "xi"],
            &["nu", "mu", "alpha"],
        ],
    )
}

pub fn tetrahedron_surface() -> DirectedTriangulation {
    DirectedTriangulation {
        edges: strings(&["1", "2", "3", "4", "5", "6"]),
        triangles: vec![
            Triangle::plain("1", "5", "4"),
            Triangle::plain("2", "5", "3"),
            Triangle::plain("2", "6", "4"),
            Triangle::plain("1", "6", "3"),
        ],
        boundary: vec![],
    }
}

/// The tetrahedral sphere with the triangle on edges 1, 4, 5 reversed;
/// g-orbits of lengths 9 and 3.
pub fn tetrahedron_flipped() -> RawQuiver {
    RawQuiver::from_cycles(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("alpha", "3", "1"),
            ("beta", "4", "2"),
            ("gamma", "1", "4"),
            ("delta", "5", "1"),
            ("epsilon", "2", "5"),
            ("eta", "4", "5"),
            ("mu", "6", "3"),
            ("nu", "1", "6"),
            ("xi", "5", "3"),
            ("rho", "2", "6"),
            ("sigma", "3", "2"),
            ("omega", "6", "4"),
        ],
        &[
            &["gamma", "eta", "delta"],
            &["beta", "rho", "omega"],
            &["sigma", "epsilon", "xi"],
            &["nu", "mu", "alpha"],
        ],
    )
}

/// Further surfaces given only as triangle lists, with the multiset of
/// g-orbit lengths of their quivers.
pub fn surface_catalogue() -> Vec<(&'static str, DirectedTriangulation, Vec<usize>)> {
    let tri = |spec: &[[&str; 3]]| -> Vec<Triangle> {
        spec.iter()
            .map(|[a, b, c]| {
                if a == b {
                    Triangle::self_folded(a, c)
                } else {
                    Triangle::plain(a, b, c)
                }
            })
            .collect()
    };
    let edges = |n: usize| (1..=n).map(|i| i.to_string()).collect::<Vec<_>>();
    vec![
        (
            "punctured torus, first orientation",
            DirectedTriangulation {
                edges: edges(6),
                triangles: tri(&[["1", "2", "4"], ["4", "1", "5"], ["5", "2", "6"], ["3", "3", "6"]]),
                boundary: vec![],
            },
            vec![1, 11],
        ),
        (
            "punctured torus, second orientation",
            DirectedTriangulation {
                edges: edges(6),
                triangles: tri(&[["1", "2", "4"], ["1", "4", "5"], ["5", "2", "6"], ["3", "3", "6"]]),
                boundary: vec![],
            },
            vec![1, 2, 3, 6],
        ),
        (
            "punctured triangle, first orientation",
            DirectedTriangulation {
                edges: edges(6),
                triangles: tri(&[["1", "2", "4"], ["4", "5", "6"], ["5", "3", "6"]]),
                boundary: strings(&["1", "2", "3"]),
            },
            vec![2, 10],
        ),
        (
            "punctured triangle, second orientation",
            DirectedTriangulation {
                edges: edges(6),
                triangles: tri(&[["1", "2", "4"], ["4", "5", "6"], ["3", "5", "6"]]),
                boundary: strings(&["1", "2", "3"]),
            },
            vec![4, 8],
        ),
        (
            "genus two surface, eight triangles",
            DirectedTriangulation {
                edges: edges(12),
                triangles: tri(&[
                    ["1", "6", "5"],
                    ["2", "7", "6"],
                    ["7", "3", "8"],
                    ["8", "4", "9"],
                    ["9", "3", "10"],
                    ["10", "4", "11"],
                    ["11", "1", "12"],
                    ["2", "5", "12"],
                ]),
                boundary: vec![],
            },
            vec![8, 16],
        ),
        (
            "genus two surface, six triangles",
            DirectedTriangulation {
                edges: edges(9),
                triangles: tri(&[
                    ["1", "5", "2"],
                    ["5", "6", "1"],
                    ["2", "6", "7"],
                    ["8", "7", "4"],
                    ["3", "9", "8"],
                    ["4", "3", "9"],
                ]),
                boundary: vec![],
            },
            vec![18],
        ),
        (
            "punctured torus with two boundary edges",
            DirectedTriangulation {
                edges: edges(10),
                triangles: tri(&[
                    ["1", "2", "6"],
                    ["6", "1", "7"],
                    ["7", "2", "8"],
                    ["8", "4", "9"],
                    ["9", "5", "10"],
                    ["3", "3", "10"],
                ]),
                boundary: strings(&["4", "5"]),
            },
            vec![1, 19],
        ),
    ]
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

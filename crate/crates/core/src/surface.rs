//! Directed triangulated surfaces as combinatorial data, and the two-way
//! translation to triangulation quivers.

use std::collections::{HashMap, HashSet};

use crate::error::{Result, SawError};
use crate::quiver::{validate, RawQuiver, TriangulationQuiver};

/// An oriented triangle, listed in cyclic order. A self-folded triangle is
/// stored as `(a a b)` with `a` the self-folded edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub edges: [String; 3],
    pub self_folded: bool,
}

impl Triangle {
    pub fn plain(a: &str, b: &str, c: &str) -> Self {
        Triangle {
            edges: [a.to_string(), b.to_string(), c.to_string()],
            self_folded: false,
        }
    }

    /// The self-folded triangle `(a a b)`.
    pub fn self_folded(a: &str, b: &str) -> Self {
        Triangle {
            edges: [a.to_string(), a.to_string(), b.to_string()],
            self_folded: true,
        }
    }

    /// Rotates a self-folded triangle to the `(a a b)` form; checks the
    /// flag against the entries.
    pub fn normalized(&self) -> Result<Triangle> {
        let [x, y, z] = &self.edges;
        let distinct = x != y && y != z && x != z;
        if !self.self_folded {
            if !distinct {
                return Err(SawError::Input(format!(
                    "triangle ({x} {y} {z}) repeats an edge but is not marked self-folded"
                )));
            }
            return Ok(self.clone());
        }
        if x == y && y == z {
            return Err(SawError::Input(format!("triangle ({x} {y} {z}) uses one edge three times")));
        }
        let (a, b) = if x == y {
            (x, z)
        } else if y == z {
            (y, x)
        } else if z == x {
            (z, y)
        } else {
            return Err(SawError::Input(format!(
                "self-folded triangle ({x} {y} {z}) needs a repeated edge"
            )));
        };
        Ok(Triangle::self_folded(a, b))
    }

    /// Opposite orientation.
    pub fn reversed(&self) -> Triangle {
        let [x, y, z] = &self.edges;
        let t = Triangle {
            edges: [x.clone(), z.clone(), y.clone()],
            self_folded: self.self_folded,
        };
        t.normalized().unwrap_or(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DirectedTriangulation {
    pub edges: Vec<String>,
    pub triangles: Vec<Triangle>,
    pub boundary: Vec<String>,
}

impl DirectedTriangulation {
    /// Checks edge references and the slot count: every edge fills exactly
    /// two places among triangle slots and the boundary.
    pub fn check(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(e.as_str()) {
                return Err(SawError::Input(format!("duplicate edge {e}")));
            }
        }
        if self.edges.len() < 3 {
            return Err(SawError::Input(format!(
                "a triangulation needs at least 3 edges, found {}",
                self.edges.len()
            )));
        }
        let mut slots: HashMap<&str, usize> = self.edges.iter().map(|e| (e.as_str(), 0)).collect();
        for t in &self.triangles {
            t.normalized()?;
            for e in &t.edges {
                *slots
                    .get_mut(e.as_str())
                    .ok_or_else(|| SawError::Input(format!("triangle uses unknown edge {e}")))? += 1;
            }
        }
        let mut bseen = HashSet::new();
        for e in &self.boundary {
            if !bseen.insert(e.as_str()) {
                return Err(SawError::Input(format!("boundary edge {e} listed twice")));
            }
            *slots
                .get_mut(e.as_str())
                .ok_or_else(|| SawError::Input(format!("boundary uses unknown edge {e}")))? += 1;
        }
        for e in &self.edges {
            let n = slots[e.as_str()];
            if n != 2 {
                return Err(SawError::Input(format!(
                    "edge {e} fills {n} slots (triangle sides plus boundary), expected 2"
                )));
            }
        }
        Ok(())
    }
}

/// Name of the arrow created for slot `slot` (1-based) of triangle `tri`
/// (1-based).
pub fn triangle_arrow_name(tri: usize, slot: usize) -> String {
    format!("t{tri}.{slot}")
}

/// Name of the loop created for a boundary edge.
pub fn boundary_arrow_name(edge: &str) -> String {
    format!("b.{edge}")
}

/// Raw quiver of a directed triangulation: a triangle `(x1 x2 x3)` gives
/// arrows `x1->x2->x3->x1` forming one f-cycle (a self-folded `(a a b)` is
/// the same rule with a loop first), and a boundary edge gives an f-fixed
/// loop.
pub fn raw_quiver_from_surface(t: &DirectedTriangulation) -> Result<RawQuiver> {
    t.check()?;
    let mut raw = RawQuiver {
        vertices: t.edges.clone(),
        ..Default::default()
    };
    for (k, tri) in t.triangles.iter().enumerate() {
        let tri = tri.normalized()?;
        let names: Vec<String> = (1..=3).map(|j| triangle_arrow_name(k + 1, j)).collect();
        for j in 0..3 {
            raw.arrows.push(crate::quiver::RawArrow {
                id: names[j].clone(),
                from: tri.edges[j].clone(),
                to: tri.edges[(j + 1) % 3].clone(),
            });
            raw.f.push((names[j].clone(), names[(j + 1) % 3].clone()));
        }
    }
    for e in &t.boundary {
        let name = boundary_arrow_name(e);
        raw.arrows.push(crate::quiver::RawArrow {
            id: name.clone(),
            from: e.clone(),
            to: e.clone(),
        });
        raw.f.push((name.clone(), name));
    }
    Ok(raw)
}

pub fn quiver_from_surface(t: &DirectedTriangulation) -> Result<TriangulationQuiver> {
    validate(&raw_quiver_from_surface(t)?)
}

/// Reconstructs a directed triangulation: one triangle per f-cycle of
/// length 3 (self-folded when it contains a loop) and one boundary edge per
/// f-fixed loop. Edges carry the vertex names.
pub fn surface_from_quiver(q: &TriangulationQuiver) -> DirectedTriangulation {
    let mut out = DirectedTriangulation {
        edges: q.vertex_names().to_vec(),
        ..Default::default()
    };
    for orbit in q.f_orbits() {
        match orbit.arrows.len() {
            1 => out.boundary.push(q.vertex_name(q.s(orbit.rep)).to_string()),
            _ => {
                let start = orbit
                    .arrows
                    .iter()
                    .copied()
                    .find(|&a| q.is_loop(a))
                    .unwrap_or(orbit.rep);
                let a1 = start;
                let a2 = q.f(a1);
                let name = |a| q.vertex_name(q.s(a)).to_string();
                let edges = [name(a1), name(a2), q.vertex_name(q.t(a2)).to_string()];
                out.triangles.push(Triangle {
                    self_folded: q.is_loop(start),
                    edges,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::find_isomorphism;

    #[test]
    fn disc_surface_matches_disc_quiver() {
        let from_surface = quiver_from_surface(&fixtures::disc_triangle_surface()).unwrap();
        let direct = validate(&fixtures::disc_triangle()).unwrap();
        assert!(find_isomorphism(&from_surface, &direct, true).is_some());
        let back = surface_from_quiver(&direct);
        assert_eq!(back.triangles, vec![Triangle::plain("1", "2", "3")]);
        assert_eq!(back.boundary, vec!["1", "2", "3"]);
    }

    #[test]
    fn tetrahedron_reconstructs_four_triangles() {
        let q = validate(&fixtures::tetrahedron()).unwrap();
        let s = surface_from_quiver(&q);
        assert!(s.boundary.is_empty());
        let mut got: Vec<[String; 3]> = s.triangles.iter().map(|t| t.edges.clone()).collect();
        // compare up to rotation
        for t in got.iter_mut() {
            let min = (0..3).min_by_key(|&r| t[r].clone()).unwrap();
            t.rotate_left(min);
        }
        got.sort();
        let mut want: Vec<[String; 3]> = [["1", "5", "4"], ["2", "5", "3"], ["2", "6", "4"], ["1", "6", "3"]]
            .iter()
            .map(|t| t.map(|x| x.to_string()))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn self_folded_reconstruction() {
        let q = validate(&fixtures::self_folded_pair()).unwrap();
        let s = surface_from_quiver(&q);
        assert_eq!(
            s.triangles,
            vec![Triangle::self_folded("1", "2"), Triangle::self_folded("3", "2")]
        );
        assert!(s.boundary.is_empty());
    }

    #[test]
    fn slot_count_is_enforced() {
        let mut s = fixtures::disc_triangle_surface();
        s.boundary.pop();
        assert!(quiver_from_surface(&s).is_err());
        let mut s = fixtures::disc_triangle_surface();
        s.triangles[0].self_folded = true;
        assert!(quiver_from_surface(&s).is_err());
    }

    #[test]
    fn self_folded_rotations_normalize() {
        let t = Triangle {
            edges: ["a".into(), "b".into(), "a".into()],
            self_folded: true,
        };
        assert_eq!(t.normalized().unwrap(), Triangle::self_folded("a", "b"));
        assert_eq!(Triangle::self_folded("a", "b").reversed(), Triangle::self_folded("a", "b"));
    }
}

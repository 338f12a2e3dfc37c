//! Triangulation quivers: validation, the permutations `bar`, `f`, `g`,
//! their orbits, border loops and the tetrahedral test.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Result, SawError, Violation};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArrow {
    pub id: String,
    pub from: String,
    pub to: String,
}

/// Unvalidated quiver data as it arrives from a file or a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
    pub f: Vec<(String, String)>,
}

impl RawQuiver {
    /// Convenience constructor from string slices.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)], f: &[(&str, &str)]) -> Self {
        RawQuiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, from, to)| RawArrow {
                    id: id.to_string(),
                    from: from.to_string(),
                    to: to.to_string(),
                })
                .collect(),
            f: f.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    /// Same data with `f` given as cycles of arrow names.
    pub fn from_cycles(vertices: &[&str], arrows: &[(&str, &str, &str)], cycles: &[&[&str]]) -> Self {
        let mut f = Vec::new();
        for cyc in cycles {
            for (k, a) in cyc.iter().enumerate() {
                f.push((*a, cyc[(k + 1) % cyc.len()]));
            }
        }
        Self::from_parts(vertices, arrows, &f)
    }
}

/// One cycle of a permutation of arrows, listed from its least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: ArrowId,
    pub arrows: Vec<ArrowId>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GOrbitData {
    pub bar: Vec<ArrowId>,
    pub g: Vec<ArrowId>,
    pub orbits: Vec<Orbit>,
    /// Index into `orbits` for each arrow.
    pub orbit_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BorderData {
    /// Border vertex to its f-fixed loop, ordered by vertex.
    pub loops: BTreeMap<VertexId, ArrowId>,
}

impl BorderData {
    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.loops.keys().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationQuiver {
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    source: Vec<VertexId>,
    target: Vec<VertexId>,
    f: Vec<ArrowId>,
    out_arrows: Vec<[ArrowId; 2]>,
    in_arrows: Vec<[ArrowId; 2]>,
    gdata: GOrbitData,
    f_orbits: Vec<Orbit>,
}

/// Cycles of a permutation, each starting at its least element, ordered by
/// that element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push(cyc);
    }
    out
}

fn orbits_of(perm: &[usize]) -> (Vec<Orbit>, Vec<usize>) {
    let cycs = cycles(perm);
    let mut orbit_of = vec![0; perm.len()];
    for (k, c) in cycs.iter().enumerate() {
        for &a in c {
            orbit_of[a] = k;
        }
    }
    let orbits = cycs
        .into_iter()
        .map(|c| Orbit { rep: c[0], arrows: c })
        .collect();
    (orbits, orbit_of)
}

/// Checks the triangulation-quiver axioms and builds the derived data.
///
/// Structural problems with the raw data (unknown names, duplicates, `f`
/// not a permutation) are input errors; axiom failures are collected and
/// reported together.
pub fn validate(raw: &RawQuiver) -> Result<TriangulationQuiver> {
    let mut vindex: HashMap<&str, VertexId> = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(SawError::Input(format!("duplicate vertex {v}")));
        }
    }
    let mut aindex: HashMap<&str, ArrowId> = HashMap::new();
    let mut source = Vec::new();
    let mut target = Vec::new();
    for (k, a) in raw.arrows.iter().enumerate() {
        if aindex.insert(a.id.as_str(), k).is_some() {
            return Err(SawError::Input(format!("duplicate arrow id {}", a.id)));
        }
        let lookup = |v: &str| {
            vindex
                .get(v)
                .copied()
                .ok_or_else(|| SawError::Input(format!("arrow {} refers to unknown vertex {v}", a.id)))
        };
        source.push(lookup(&a.from)?);
        target.push(lookup(&a.to)?);
    }
    let n_arrows = raw.arrows.len();
    let mut f = vec![usize::MAX; n_arrows];
    let mut hit = vec![false; n_arrows];
    for (a, b) in &raw.f {
        let ia = *aindex
            .get(a.as_str())
            .ok_or_else(|| SawError::Input(format!("f mentions unknown arrow id {a}")))?;
        let ib = *aindex
            .get(b.as_str())
            .ok_or_else(|| SawError::Input(format!("f mentions unknown arrow id {b}")))?;
        if f[ia] != usize::MAX {
            return Err(SawError::Input(format!("f assigns arrow {a} twice")));
        }
        if hit[ib] {
            return Err(SawError::Input(format!("f is not injective: {b} is hit twice")));
        }
        f[ia] = ib;
        hit[ib] = true;
    }
    if let Some(k) = f.iter().position(|&x| x == usize::MAX) {
        return Err(SawError::Input(format!(
            "f is missing arrow id {}",
            raw.arrows[k].id
        )));
    }

    let n_vertices = raw.vertices.len();
    let mut violations = Vec::new();
    if n_vertices < 3 {
        violations.push(Violation::TooFewVertices { found: n_vertices });
    }
    let mut outs: Vec<Vec<ArrowId>> = vec![Vec::new(); n_vertices];
    let mut ins: Vec<Vec<ArrowId>> = vec![Vec::new(); n_vertices];
    for a in 0..n_arrows {
        outs[source[a]].push(a);
        ins[target[a]].push(a);
    }
    for v in 0..n_vertices {
        if outs[v].len() != 2 {
            violations.push(Violation::OutDegree {
                vertex: raw.vertices[v].clone(),
                found: outs[v].len(),
            });
        }
        if ins[v].len() != 2 {
            violations.push(Violation::InDegree {
                vertex: raw.vertices[v].clone(),
                found: ins[v].len(),
            });
        }
    }
    for a in 0..n_arrows {
        if source[f[a]] != target[a] {
            violations.push(Violation::FSourceMismatch {
                arrow: raw.arrows[a].id.clone(),
            });
        }
    }
    for a in 0..n_arrows {
        if f[f[f[a]]] != a {
            violations.push(Violation::FCubeNotIdentity {
                arrow: raw.arrows[a].id.clone(),
            });
        }
    }
    let components = count_components(n_vertices, &source, &target);
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    if !violations.is_empty() {
        return Err(SawError::Axioms(violations));
    }

    let out_arrows: Vec<[ArrowId; 2]> = outs.iter().map(|o| [o[0], o[1]]).collect();
    let in_arrows: Vec<[ArrowId; 2]> = ins.iter().map(|o| [o[0], o[1]]).collect();
    let bar: Vec<ArrowId> = (0..n_arrows)
        .map(|a| {
            let [x, y] = out_arrows[source[a]];
            if x == a {
                y
            } else {
                x
            }
        })
        .collect();
    let g: Vec<ArrowId> = (0..n_arrows).map(|a| bar[f[a]]).collect();
    let (orbits, orbit_of) = orbits_of(&g);
    let (f_orbits, _) = orbits_of(&f);
    Ok(TriangulationQuiver {
        vertex_names: raw.vertices.clone(),
        arrow_names: raw.arrows.iter().map(|a| a.id.clone()).collect(),
        source,
        target,
        f,
        out_arrows,
        in_arrows,
        gdata: GOrbitData {
            bar,
            g,
            orbits,
            orbit_of,
        },
        f_orbits,
    })
}

fn count_components(n: usize, source: &[usize], target: &[usize]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (&s, &t) in source.iter().zip(target) {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a] = b;
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

impl TriangulationQuiver {
    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn arrow_names(&self) -> &[String] {
        &self.arrow_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_names.iter().position(|a| a == name)
    }

    pub fn s(&self, a: ArrowId) -> VertexId {
        self.source[a]
    }

    pub fn t(&self, a: ArrowId) -> VertexId {
        self.target[a]
    }

    pub fn f(&self, a: ArrowId) -> ArrowId {
        self.f[a]
    }

    pub fn bar(&self, a: ArrowId) -> ArrowId {
        self.gdata.bar[a]
    }

    pub fn g(&self, a: ArrowId) -> ArrowId {
        self.gdata.g[a]
    }

    /// `g` applied `k` times.
    pub fn g_pow(&self, a: ArrowId, k: usize) -> ArrowId {
        let mut x = a;
        for _ in 0..k % self.n(a) {
            x = self.g(x);
        }
        x
    }

    /// Length of the g-orbit of `a`.
    pub fn n(&self, a: ArrowId) -> usize {
        self.gdata.orbits[self.gdata.orbit_of[a]].len()
    }

    pub fn orbit_index(&self, a: ArrowId) -> usize {
        self.gdata.orbit_of[a]
    }

    pub fn out_arrows(&self, v: VertexId) -> [ArrowId; 2] {
        self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: VertexId) -> [ArrowId; 2] {
        self.in_arrows[v]
    }

    pub fn g_structure(&self) -> &GOrbitData {
        &self.gdata
    }

    pub fn f_orbits(&self) -> &[Orbit] {
        &self.f_orbits
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        self.source[a] == self.target[a]
    }

    pub fn border(&self) -> BorderData {
        let mut loops = BTreeMap::new();
        for a in 0..self.num_arrows() {
            if self.f[a] == a {
                loops.insert(self.source[a], a);
            }
        }
        BorderData { loops }
    }

    /// The other arrow ending at `t(a)`.
    pub fn star(&self, a: ArrowId) -> ArrowId {
        let [x, y] = self.in_arrows[self.target[a]];
        if x == a {
            y
        } else {
            x
        }
    }

    /// `bar(star(a))`, a permutation of the arrows.
    pub fn h(&self, a: ArrowId) -> ArrowId {
        self.bar(self.star(a))
    }
}

/// An isomorphism of triangulation quivers, given on arrows and vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverIso {
    pub arrows: Vec<ArrowId>,
    pub vertices: Vec<VertexId>,
}

impl QuiverIso {
    pub fn inverse(&self) -> QuiverIso {
        let mut arrows = vec![0; self.arrows.len()];
        for (a, &b) in self.arrows.iter().enumerate() {
            arrows[b] = a;
        }
        let mut vertices = vec![0; self.vertices.len()];
        for (v, &w) in self.vertices.iter().enumerate() {
            vertices[w] = v;
        }
        QuiverIso { arrows, vertices }
    }
}

/// Finds an isomorphism `a -> b` commuting with `f` (and hence with `bar`
/// and `g`). With `preserve_names`, vertices must map to equally named
/// vertices. A connected triangulation quiver is generated from any arrow by
/// `f` and `bar`, so the image of arrow 0 determines everything.
pub fn find_isomorphism(
    a: &TriangulationQuiver,
    b: &TriangulationQuiver,
    preserve_names: bool,
) -> Option<QuiverIso> {
    if a.num_arrows() != b.num_arrows() || a.num_vertices() != b.num_vertices() {
        return None;
    }
    if a.num_arrows() == 0 {
        return None;
    }
    (0..b.num_arrows()).find_map(|start| extend_from(a, b, start, preserve_names))
}

fn extend_from(
    a: &TriangulationQuiver,
    b: &TriangulationQuiver,
    start: ArrowId,
    preserve_names: bool,
) -> Option<QuiverIso> {
    let mut amap = vec![usize::MAX; a.num_arrows()];
    let mut vmap = vec![usize::MAX; a.num_vertices()];
    let mut used = vec![false; b.num_arrows()];
    let mut queue = VecDeque::new();
    let assign = |x: ArrowId,
                  y: ArrowId,
                  amap: &mut Vec<usize>,
                  vmap: &mut Vec<usize>,
                  used: &mut Vec<bool>,
                  queue: &mut VecDeque<ArrowId>|
     -> bool {
        if amap[x] != usize::MAX {
            return amap[x] == y;
        }
        if used[y] {
            return false;
        }
        for (va, vb) in [(a.s(x), b.s(y)), (a.t(x), b.t(y))] {
            if vmap[va] == usize::MAX {
                if preserve_names && a.vertex_name(va) != b.vertex_name(vb) {
                    return false;
                }
                if vmap.contains(&vb) {
                    return false;
                }
                vmap[va] = vb;
            } else if vmap[va] != vb {
                return false;
            }
        }
        amap[x] = y;
        used[y] = true;
        queue.push_back(x);
        true
    };
    if !assign(0, start, &mut amap, &mut vmap, &mut used, &mut queue) {
        return None;
    }
    while let Some(x) = queue.pop_front() {
        let y = amap[x];
        if !assign(a.f(x), b.f(y), &mut amap, &mut vmap, &mut used, &mut queue) {
            return None;
        }
        if !assign(a.bar(x), b.bar(y), &mut amap, &mut vmap, &mut used, &mut queue) {
            return None;
        }
    }
    if amap.contains(&usize::MAX) || vmap.contains(&usize::MAX) {
        return None;
    }
    Some(QuiverIso {
        arrows: amap,
        vertices: vmap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TetrahedralWitness {
    /// Isomorphism onto the reference tetrahedral quiver.
    Tetrahedral(QuiverIso),
    /// An arrow whose g-orbit length differs from 3.
    NotTetrahedral { arrow: ArrowId, orbit_length: usize },
}

impl TetrahedralWitness {
    pub fn is_tetrahedral(&self) -> bool {
        matches!(self, TetrahedralWitness::Tetrahedral(_))
    }
}

/// The reference tetrahedral triangulation quiver, validated.
pub fn tetrahedral_reference() -> TriangulationQuiver {
    validate(&crate::fixtures::tetrahedron()).expect("reference tetrahedral quiver is valid")
}

/// Decides whether `g^3 = id` and, if so, produces the isomorphism onto the
/// reference tetrahedral quiver.
pub fn is_tetrahedral(q: &TriangulationQuiver) -> TetrahedralWitness {
    if let Some(a) = (0..q.num_arrows()).find(|&a| q.n(a) != 3) {
        return TetrahedralWitness::NotTetrahedral {
            arrow: a,
            orbit_length: q.n(a),
        };
    }
    match find_isomorphism(q, &tetrahedral_reference(), false) {
        Some(iso) => TetrahedralWitness::Tetrahedral(iso),
        None => TetrahedralWitness::NotTetrahedral {
            arrow: 0,
            orbit_length: q.n(0),
        },
    }
}

/// The four equivalent characterizations of the tetrahedral quiver:
/// `g^3 = id`; every orbit has length 3; some arrow has `n = 3` at itself,
/// its partner, and their `f`-images; isomorphism to the reference quiver.
pub fn tetrahedral_conditions(q: &TriangulationQuiver) -> [bool; 4] {
    let arrows = 0..q.num_arrows();
    let g_cubed = arrows.clone().all(|a| q.g(q.g(q.g(a))) == a);
    let all_three = arrows.clone().all(|a| q.n(a) == 3);
    let local = arrows.clone().any(|b| {
        [b, q.bar(b), q.f(b), q.f(q.bar(b))]
            .iter()
            .all(|&x| q.n(x) == 3)
    });
    let iso = find_isomorphism(q, &tetrahedral_reference(), false).is_some();
    [g_cubed, all_three, local, iso]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(q: &TriangulationQuiver, o: &Orbit) -> Vec<String> {
        o.arrows.iter().map(|&a| q.arrow_name(a).to_string()).collect()
    }

    #[test]
    fn disc_orbit_is_a_single_six_cycle() {
        let q = validate(&fixtures::disc_triangle()).unwrap();
        let orbits = &q.g_structure().orbits;
        assert_eq!(orbits.len(), 1);
        assert_eq!(names(&q, &orbits[0]), ["alpha", "eta", "beta", "mu", "gamma", "epsilon"]);
        assert_eq!(q.border().vertices(), vec![0, 1, 2]);
    }

    #[test]
    fn self_folded_pair_orbits() {
        let q = validate(&fixtures::self_folded_pair()).unwrap();
        let got: Vec<Vec<String>> = q.g_structure().orbits.iter().map(|o| names(&q, o)).collect();
        assert_eq!(
            got,
            vec![
                vec!["alpha".to_string()],
                vec!["beta".into(), "delta".into(), "sigma".into(), "gamma".into()],
                vec!["rho".to_string()],
            ]
        );
        assert!(q.border().is_empty());
    }

    #[test]
    fn swapped_f_breaks_source_axiom() {
        let mut raw = fixtures::disc_triangle();
        raw.f = vec![
            ("alpha".into(), "gamma".into()),
            ("gamma".into(), "beta".into()),
            ("beta".into(), "alpha".into()),
            ("epsilon".into(), "eta".into()),
            ("eta".into(), "epsilon".into()),
            ("mu".into(), "mu".into()),
        ];
        let err = validate(&raw).unwrap_err();
        match err {
            SawError::Axioms(v) => assert!(v.contains(&Violation::FSourceMismatch {
                arrow: "epsilon".into()
            })),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_input_errors() {
        let mut raw = fixtures::disc_triangle();
        raw.f.pop();
        assert!(matches!(validate(&raw), Err(SawError::Input(m)) if m.contains("mu")));
        let mut raw = fixtures::disc_triangle();
        raw.arrows[1].id = "alpha".into();
        assert!(matches!(validate(&raw), Err(SawError::Input(_))));
    }

    #[test]
    fn two_copies_are_disconnected() {
        let raw = fixtures::disc_triangle();
        let mut doubled = raw.clone();
        for v in &raw.vertices {
            doubled.vertices.push(format!("{v}'"));
        }
        for a in &raw.arrows {
            doubled.arrows.push(RawArrow {
                id: format!("{}'", a.id),
                from: format!("{}'", a.from),
                to: format!("{}'", a.to),
            });
        }
        for (x, y) in &raw.f {
            doubled.f.push((format!("{x}'"), format!("{y}'")));
        }
        let err = validate(&doubled).unwrap_err();
        assert!(matches!(err, SawError::Axioms(v) if v == vec![Violation::Disconnected { components: 2 }]));
    }

    #[test]
    fn tetrahedral_detection() {
        let t = validate(&fixtures::tetrahedron()).unwrap();
        assert!(is_tetrahedral(&t).is_tetrahedral());
        assert_eq!(tetrahedral_conditions(&t), [true; 4]);
        let d = validate(&fixtures::disc_triangle()).unwrap();
        assert_eq!(
            is_tetrahedral(&d),
            TetrahedralWitness::NotTetrahedral {
                arrow: 0,
                orbit_length: 6
            }
        );
        let s = validate(&fixtures::sphere_opposite()).unwrap();
        assert!(!is_tetrahedral(&s).is_tetrahedral());
        assert_eq!(tetrahedral_conditions(&s), [false; 4]);
    }

    #[test]
    fn star_and_h() {
        let q = validate(&fixtures::disc_triangle()).unwrap();
        let alpha = q.arrow_by_name("alpha").unwrap();
        assert_eq!(q.arrow_name(q.star(alpha)), "eta");
        let mut x = alpha;
        let mut r = 0;
        loop {
            x = q.h(x);
            r += 1;
            if x == alpha {
                break;
            }
        }
        assert!(r >= 1 && r <= q.num_arrows());
    }
}

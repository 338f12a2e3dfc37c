//! Projective bimodules `P(i,j) = A e_i (x) e_j A`, the first four maps of
//! the bimodule resolution of a weighted surface algebra and the closing
//! map `theta: A -> P3`, all checked by exact ranks on flattened bases.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraKind, AlgebraTable};
use crate::error::{Result, SawError};
use crate::field::Field;
use crate::linalg::{sv_axpy, sv_from_entries, SparseEchelon, SparseVec};
use crate::quiver::{ArrowId, VertexId};

/// Which term of the resolution a summand belongs to, with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BimoduleSummandIndex {
    /// `P(i,i)` in the zeroth term.
    P0(VertexId),
    /// `P(s(a), t(a))`.
    P1(ArrowId),
    /// `P(s(a), t(f(a)))`.
    P2(ArrowId),
    /// `P(i,i)` in the third term.
    P3(VertexId),
}

/// A direct sum of projective bimodules with a flattened basis: for each
/// summand `P(i,j)`, pairs (basis of `A e_i`) x (basis of `e_j A`).
#[derive(Clone, Debug)]
pub struct BimoduleSpace {
    pub summands: Vec<BimoduleSummandIndex>,
    pub ends: Vec<(VertexId, VertexId)>,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    left_pos: Vec<Vec<Option<usize>>>,
    right_pos: Vec<Vec<Option<usize>>>,
}

impl BimoduleSpace {
    fn new<F: Field>(t: &AlgebraTable<F>, summands: Vec<BimoduleSummandIndex>) -> Self {
        let q = t.quiver();
        let ends: Vec<(VertexId, VertexId)> = summands
            .iter()
            .map(|s| match *s {
                BimoduleSummandIndex::P0(i) | BimoduleSummandIndex::P3(i) => (i, i),
                BimoduleSummandIndex::P1(a) => (q.s(a), q.t(a)),
                BimoduleSummandIndex::P2(a) => (q.s(a), q.t(q.f(a))),
            })
            .collect();
        let position = |list: &[usize]| {
            let mut pos = vec![None; t.dim()];
            for (p, &b) in list.iter().enumerate() {
                pos[b] = Some(p);
            }
            pos
        };
        let left: Vec<Vec<usize>> = ends.iter().map(|&(i, _)| t.basis_to(i)).collect();
        let right: Vec<Vec<usize>> = ends.iter().map(|&(_, j)| t.basis_from(j)).collect();
        let mut offsets = vec![0];
        for s in 0..ends.len() {
            offsets.push(offsets[s] + left[s].len() * right[s].len());
        }
        BimoduleSpace {
            left_pos: left.iter().map(|l| position(l)).collect(),
            right_pos: right.iter().map(|r| position(r)).collect(),
            summands,
            ends,
            left,
            right,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn summand_dim(&self, s: usize) -> usize {
        self.offsets[s + 1] - self.offsets[s]
    }

    pub fn summand_of(&self, idx: BimoduleSummandIndex) -> usize {
        self.summands.iter().position(|&s| s == idx).expect("summand present")
    }

    /// Flattened coordinate of the basis tensor `x (x) y` in summand `s`.
    pub fn index(&self, s: usize, x: usize, y: usize) -> usize {
        let l = self.left_pos[s][x].expect("left factor in A e_i");
        let r = self.right_pos[s][y].expect("right factor in e_j A");
        self.offsets[s] + l * self.right[s].len() + r
    }

    /// Inverse of `index`.
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= idx) - 1;
        let local = idx - self.offsets[s];
        let w = self.right[s].len();
        (s, self.left[s][local / w], self.right[s][local % w])
    }
}

/// Sparse element of a bimodule sum: `(summand, left basis, right basis)`
/// to coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleElement<E> {
    pub terms: BTreeMap<(usize, usize, usize), E>,
}

impl<E: Clone> BimoduleElement<E> {
    pub fn zero() -> Self {
        BimoduleElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: Clone> Default for BimoduleElement<E> {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_term<F: Field>(k: &F, el: &mut BimoduleElement<F::Elem>, key: (usize, usize, usize), c: F::Elem) {
    let entry = el.terms.entry(key).or_insert_with(|| k.zero());
    *entry = k.add(entry, &c);
    if k.is_zero(entry) {
        el.terms.remove(&key);
    }
}

/// `c * x (x) y` in summand `s` for algebra elements `x`, `y`.
pub fn tensor<F: Field>(
    k: &F,
    el: &mut BimoduleElement<F::Elem>,
    s: usize,
    c: &F::Elem,
    x: &[(usize, F::Elem)],
    y: &[(usize, F::Elem)],
) {
    for (xi, xc) in x {
        for (yi, yc) in y {
            add_term(k, el, (s, *xi, *yi), k.mul(c, &k.mul(xc, yc)));
        }
    }
}

/// `a * el * b`.
pub fn sandwich<F: Field>(
    t: &AlgebraTable<F>,
    a: &[(usize, F::Elem)],
    el: &BimoduleElement<F::Elem>,
    b: &[(usize, F::Elem)],
) -> BimoduleElement<F::Elem> {
    let k = t.field();
    let mut out = BimoduleElement::zero();
    for (&(s, x, y), c) in &el.terms {
        let left = t.mul(a, &[(x, k.one())]);
        let right = t.mul(&[(y, k.one())], b);
        tensor(k, &mut out, s, c, &left, &right);
    }
    out
}

pub fn flatten<F: Field>(k: &F, space: &BimoduleSpace, el: &BimoduleElement<F::Elem>) -> SparseVec<F::Elem> {
    sv_from_entries(
        k,
        el.terms
            .iter()
            .map(|(&(s, x, y), c)| (space.index(s, x, y), c.clone()))
            .collect(),
    )
}

/// The `P1` space: one summand per arrow.
pub fn p1_space<F: Field>(t: &AlgebraTable<F>) -> BimoduleSpace {
    BimoduleSpace::new(t, (0..t.quiver().num_arrows()).map(BimoduleSummandIndex::P1).collect())
}

pub fn p0_space<F: Field>(t: &AlgebraTable<F>) -> BimoduleSpace {
    BimoduleSpace::new(t, (0..t.quiver().num_vertices()).map(BimoduleSummandIndex::P0).collect())
}

pub fn p2_space<F: Field>(t: &AlgebraTable<F>) -> BimoduleSpace {
    BimoduleSpace::new(t, (0..t.quiver().num_arrows()).map(BimoduleSummandIndex::P2).collect())
}

pub fn p3_space<F: Field>(t: &AlgebraTable<F>) -> BimoduleSpace {
    BimoduleSpace::new(t, (0..t.quiver().num_vertices()).map(BimoduleSummandIndex::P3).collect())
}

/// `rho(a1 ... am) = sum_k a1..a(k-1) (x) a(k+1)..am` with the k-th term in
/// the summand of `a_k` of `P1`.
pub fn rho<F: Field>(t: &AlgebraTable<F>, word: &[ArrowId]) -> Result<BimoduleElement<F::Elem>> {
    let q = t.quiver();
    let k = t.field();
    if word.is_empty() {
        return Err(SawError::Input("rho of an empty word".into()));
    }
    for w in word.windows(2) {
        if q.t(w[0]) != q.s(w[1]) {
            return Err(SawError::Input(format!(
                "arrows {} and {} do not compose",
                q.arrow_name(w[0]),
                q.arrow_name(w[1])
            )));
        }
    }
    let mut out = BimoduleElement::zero();
    for (pos, &a) in word.iter().enumerate() {
        let left = t.path(q.s(word[0]), &word[..pos]);
        let right = t.path(q.t(a), &word[pos + 1..]);
        tensor(k, &mut out, a, &k.one(), &left, &right);
    }
    Ok(out)
}

/// `rho` extended linearly to a combination of words.
pub fn rho_combination<F: Field>(
    t: &AlgebraTable<F>,
    terms: &[(F::Elem, Vec<ArrowId>)],
) -> Result<BimoduleElement<F::Elem>> {
    let k = t.field();
    let mut out = BimoduleElement::zero();
    for (c, w) in terms {
        for (key, v) in rho(t, w)?.terms {
            add_term(k, &mut out, key, k.mul(c, &v));
        }
    }
    Ok(out)
}

/// A bimodule map given by generator images, with its full matrix as
/// sparse columns over the flattened source basis.
#[derive(Clone, Debug)]
pub struct BimoduleMap<E> {
    pub name: &'static str,
    /// Image of the generator of each source summand, flattened in the
    /// target.
    pub generators: Vec<SparseVec<E>>,
    pub columns: Vec<SparseVec<E>>,
    pub target_dim: usize,
}

impl<E: Clone> BimoduleMap<E> {
    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }
}

/// Applies a map to a flattened vector.
pub fn apply<F: Field>(k: &F, m: &BimoduleMap<F::Elem>, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::new();
    for (i, c) in v {
        sv_axpy(k, &mut out, c, &m.columns[*i]);
    }
    out
}

/// Extends generator images bilinearly: the column of `x (x) y` in source
/// summand `s` is `x * gen_s * y`.
fn extend<F: Field>(
    t: &AlgebraTable<F>,
    name: &'static str,
    source: &BimoduleSpace,
    target: &BimoduleSpace,
    gens: Vec<BimoduleElement<F::Elem>>,
) -> BimoduleMap<F::Elem> {
    let k = t.field();
    let mut columns = Vec::with_capacity(source.dim());
    for (s, gen) in gens.iter().enumerate() {
        for &x in &source.left[s] {
            for &y in &source.right[s] {
                let img = sandwich(t, &[(x, k.one())], gen, &[(y, k.one())]);
                columns.push(flatten(k, target, &img));
            }
        }
    }
    BimoduleMap {
        name,
        generators: gens.iter().map(|g| flatten(k, target, g)).collect(),
        columns,
        target_dim: target.dim(),
    }
}

/// `d0(x (x) y) = xy`, into the algebra itself.
pub fn map_d0<F: Field>(t: &AlgebraTable<F>) -> BimoduleMap<F::Elem> {
    let p0 = p0_space(t);
    let mut columns = Vec::new();
    for s in 0..p0.summands.len() {
        for &x in &p0.left[s] {
            for &y in &p0.right[s] {
                columns.push(t.mul_basis(x, y).clone());
            }
        }
    }
    BimoduleMap {
        name: "d0",
        generators: (0..t.quiver().num_vertices()).map(|v| t.idempotent(v)).collect(),
        columns,
        target_dim: t.dim(),
    }
}

/// `d(e (x) e at a) = a (x) e - e (x) a`.
pub fn map_d<F: Field>(t: &AlgebraTable<F>) -> BimoduleMap<F::Elem> {
    let k = t.field();
    let q = t.quiver();
    let (p1, p0) = (p1_space(t), p0_space(t));
    let gens = (0..q.num_arrows())
        .map(|a| {
            let mut g = BimoduleElement::zero();
            tensor(k, &mut g, q.t(a), &k.one(), &t.arrow(a), &t.idempotent(q.t(a)));
            tensor(k, &mut g, q.s(a), &k.neg(&k.one()), &t.idempotent(q.s(a)), &t.arrow(a));
            g
        })
        .collect();
    extend(t, "d", &p1, &p0, gens)
}

fn require_resolution_kind<F: Field>(t: &AlgebraTable<F>) -> Result<()> {
    match t.kind() {
        AlgebraKind::Weighted | AlgebraKind::SocleDeformed => Ok(()),
        other => Err(SawError::Unsupported(format!(
            "the bimodule resolution applies to weighted and deformed algebras, not {other}"
        ))),
    }
}

/// The relation `a f(a) - c A_abar` (minus `b B_abar` at a deformed border
/// loop) as a combination of words.
pub fn relation_element<F: Field>(t: &AlgebraTable<F>, a: ArrowId) -> Vec<(F::Elem, Vec<ArrowId>)> {
    let k = t.field();
    let q = t.quiver();
    let p = t.presentation();
    let ab = q.bar(a);
    let mut terms = vec![(k.one(), vec![a, q.f(a)]), (k.neg(p.c(ab)), t.long_word(ab))];
    if t.kind() == AlgebraKind::SocleDeformed && q.f(a) == a {
        let b = p.b(q.s(a));
        if !k.is_zero(&b) {
            terms.push((k.neg(&b), t.cycle_word(ab)));
        }
    }
    terms
}

/// `R(e (x) e at a) = rho(mu_a)`.
pub fn map_r<F: Field>(t: &AlgebraTable<F>) -> Result<BimoduleMap<F::Elem>> {
    require_resolution_kind(t)?;
    let (p2, p1) = (p2_space(t), p1_space(t));
    let gens = (0..t.quiver().num_arrows())
        .map(|a| rho_combination(t, &relation_element(t, a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(extend(t, "R", &p2, &p1, gens))
}

/// The generator image `psi_i` in `P2`, with the border corrections for a
/// deformed algebra.
pub fn psi<F: Field>(t: &AlgebraTable<F>, i: VertexId) -> BimoduleElement<F::Elem> {
    let k = t.field();
    let q = t.quiver();
    let p = t.presentation();
    let mut out = BimoduleElement::zero();
    let minus = k.neg(&k.one());
    for a in q.out_arrows(i) {
        let f2 = q.f(q.f(a));
        tensor(k, &mut out, a, &k.one(), &t.idempotent(i), &t.arrow(f2));
        tensor(k, &mut out, q.f(a), &minus, &t.arrow(a), &t.idempotent(i));
    }
    if t.kind() == AlgebraKind::SocleDeformed {
        if let Some(&a) = q.border().loops.get(&i) {
            let b = p.b(i);
            if !k.is_zero(&b) {
                let ratio = k.div(&b, p.c(a));
                let pw = |n: usize| t.path(i, &vec![a; n]);
                let mut coef = k.one();
                for n in 1..=3 {
                    coef = k.mul(&coef, &ratio);
                    tensor(k, &mut out, a, &coef, &pw(1), &pw(n));
                    if n < 3 {
                        tensor(k, &mut out, a, &coef, &pw(0), &pw(n + 1));
                    }
                }
            }
        }
    }
    out
}

/// `S(e_i (x) e_i) = psi_i`. A nonzero border function needs
/// characteristic two.
pub fn map_s<F: Field>(t: &AlgebraTable<F>) -> Result<BimoduleMap<F::Elem>> {
    require_resolution_kind(t)?;
    let k = t.field();
    if t.kind() == AlgebraKind::SocleDeformed && t.presentation().has_nonzero_border() && k.characteristic() != 2 {
        return Err(SawError::Unsupported(
            "the deformed bimodule resolution needs characteristic 2".into(),
        ));
    }
    let (p3, p2) = (p3_space(t), p2_space(t));
    let gens = (0..t.quiver().num_vertices()).map(|i| psi(t, i)).collect();
    Ok(extend(t, "S", &p3, &p2, gens))
}

/// `xi_i = sum over b in e_i A of b (x) b*`, with `b` running from `i` to
/// `j` placed in summand `j` of `P3`.
pub fn xi<F: Field>(t: &AlgebraTable<F>, dual: &[SparseVec<F::Elem>], i: VertexId) -> BimoduleElement<F::Elem> {
    let k = t.field();
    let mut out = BimoduleElement::zero();
    for b in t.basis_from(i) {
        let j = t.target(b);
        tensor(k, &mut out, j, &k.one(), &[(b, k.one())], &dual[b]);
    }
    out
}

/// `theta(a) = a * sum_i xi_i`, columns indexed by the algebra basis.
pub fn map_theta<F: Field>(t: &AlgebraTable<F>) -> Result<BimoduleMap<F::Elem>> {
    let k = t.field();
    let dual = t.dual_basis()?;
    let p3 = p3_space(t);
    let nv = t.quiver().num_vertices();
    let gens: Vec<BimoduleElement<F::Elem>> = (0..nv).map(|i| xi(t, &dual, i)).collect();
    let mut total = BimoduleElement::zero();
    for g in &gens {
        for (key, v) in &g.terms {
            add_term(k, &mut total, *key, v.clone());
        }
    }
    let columns = (0..t.dim())
        .map(|a| flatten(k, &p3, &sandwich(t, &[(a, k.one())], &total, &t.one())))
        .collect();
    Ok(BimoduleMap {
        name: "theta",
        generators: gens.iter().map(|g| flatten(k, &p3, g)).collect(),
        columns,
        target_dim: p3.dim(),
    })
}

/// True when `a Xi = Xi a` for every basis element `a`, with
/// `Xi = sum_i xi_i`.
pub fn xi_is_central<F: Field>(t: &AlgebraTable<F>) -> Result<bool> {
    let k = t.field();
    let dual = t.dual_basis()?;
    let p3 = p3_space(t);
    let mut total = BimoduleElement::zero();
    for i in 0..t.quiver().num_vertices() {
        for (key, v) in xi(t, &dual, i).terms {
            add_term(k, &mut total, key, v);
        }
    }
    let one = t.one();
    Ok((0..t.dim()).all(|a| {
        let unit = [(a, k.one())];
        flatten(k, &p3, &sandwich(t, &unit, &total, &one)) == flatten(k, &p3, &sandwich(t, &one, &total, &unit))
    }))
}

fn rank_of<F: Field>(k: &F, cols: &[SparseVec<F::Elem>]) -> usize {
    let mut ech = SparseEchelon::new(k.clone());
    for c in cols {
        ech.insert(c.clone());
    }
    ech.rank()
}

fn composes_to_zero<F: Field>(k: &F, outer: &BimoduleMap<F::Elem>, inner: &BimoduleMap<F::Elem>) -> bool {
    inner.columns.iter().all(|c| apply(k, outer, c).is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BimoduleVerdict {
    PeriodicPeriod4,
    NotVerified,
}

impl BimoduleVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BimoduleVerdict::PeriodicPeriod4 => "PERIODIC_PERIOD_4",
            BimoduleVerdict::NotVerified => "NOT_VERIFIED",
        }
    }
}

/// One checked stage: a map, its rank, and the conditions checked on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub map: &'static str,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// The composition with the previous map vanishes.
    pub composition_zero: bool,
    /// Image equals the kernel of the previous map (by dimension count, the
    /// image being contained in the kernel).
    pub image_is_kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleReport {
    pub dim_algebra: usize,
    /// `dim P0 .. dim P3`.
    pub term_dims: [usize; 4],
    pub stages: Vec<StageReport>,
    pub psi_in_kernel_of_r: Vec<bool>,
    pub s_kills_xi: Vec<bool>,
    pub theta_injective: bool,
    pub xi_central: bool,
    /// `dim Ker S` against `dim P3 - dim P2 + dim P1 - dim P0 + dim A`.
    pub alternating_sum_ok: bool,
    pub verdict: BimoduleVerdict,
    pub failing_stage: Option<String>,
}

/// Largest flattened term the verifier will build.
pub const DEFAULT_MAX_DIM: usize = 5000;

/// Sizes of `P0..P3` without building them.
pub fn term_dims<F: Field>(t: &AlgebraTable<F>) -> [usize; 4] {
    let q = t.quiver();
    let l = |i: VertexId| t.basis_to(i).len();
    let r = |j: VertexId| t.basis_from(j).len();
    let p0: usize = (0..q.num_vertices()).map(|i| l(i) * r(i)).sum();
    let p1: usize = (0..q.num_arrows()).map(|a| l(q.s(a)) * r(q.t(a))).sum();
    let p2: usize = (0..q.num_arrows()).map(|a| l(q.s(a)) * r(q.t(q.f(a)))).sum();
    [p0, p1, p2, p0]
}

/// Builds all maps and checks the complex `P3 -> P2 -> P1 -> P0 -> A` plus
/// `theta: A -> P3` for exactness. Stops at the first failing stage.
pub fn verify_bimodule_periodicity<F: Field>(t: &AlgebraTable<F>, max_dim: usize) -> Result<BimoduleReport> {
    require_resolution_kind(t)?;
    let k = t.field();
    let dims = term_dims(t);
    let largest = *dims.iter().max().unwrap();
    if largest > max_dim {
        return Err(SawError::SizeLimit {
            what: "bimodule resolution term".into(),
            needed: largest,
            limit: max_dim,
        });
    }
    let mut report = BimoduleReport {
        dim_algebra: t.dim(),
        term_dims: dims,
        stages: Vec::new(),
        psi_in_kernel_of_r: Vec::new(),
        s_kills_xi: Vec::new(),
        theta_injective: false,
        xi_central: false,
        alternating_sum_ok: false,
        verdict: BimoduleVerdict::NotVerified,
        failing_stage: None,
    };

    let d0 = map_d0(t);
    let r0 = rank_of(k, &d0.columns);
    report.stages.push(StageReport {
        map: "d0",
        source_dim: d0.source_dim(),
        target_dim: d0.target_dim,
        rank: r0,
        composition_zero: true,
        image_is_kernel: r0 == t.dim(),
    });
    if r0 != t.dim() {
        report.failing_stage = Some("d0 is not onto".into());
        return Ok(report);
    }

    let mut prev = d0;
    let mut prev_rank = r0;
    let d = map_d(t);
    let r = map_r(t)?;
    let s = map_s(t)?;
    let theta = map_theta(t)?;
    for (i, m) in [d, r, s, theta].into_iter().enumerate() {
        if i == 2 {
            report.psi_in_kernel_of_r = m.generators.iter().map(|g| apply(k, &prev, g).is_empty()).collect();
        }
        if i == 3 {
            report.s_kills_xi = m.generators.iter().map(|g| apply(k, &prev, g).is_empty()).collect();
        }
        let rank = rank_of(k, &m.columns);
        let kernel_of_prev = prev.source_dim() - prev_rank;
        let stage = StageReport {
            map: m.name,
            source_dim: m.source_dim(),
            target_dim: m.target_dim,
            rank,
            composition_zero: composes_to_zero(k, &prev, &m),
            image_is_kernel: rank == kernel_of_prev,
        };
        let ok = stage.composition_zero && stage.image_is_kernel;
        let name = m.name;
        report.stages.push(stage);
        if i == 3 {
            report.theta_injective = rank == t.dim();
            report.alternating_sum_ok =
                kernel_of_prev + dims[2] + dims[0] == dims[3] + dims[1] + t.dim();
        }
        if !ok {
            report.failing_stage = Some(format!("{name}: image differs from the kernel of {}", prev.name));
            return Ok(report);
        }
        prev = m;
        prev_rank = rank;
    }
    report.xi_central = xi_is_central(t)?;
    if !report.theta_injective {
        report.failing_stage = Some("theta is not injective".into());
    } else if !report.xi_central {
        report.failing_stage = Some("sum of xi_i does not commute with the algebra".into());
    } else {
        report.verdict = BimoduleVerdict::PeriodicPeriod4;
    }
    Ok(report)
}

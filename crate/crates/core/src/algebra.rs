//! Weighted triangulation algebras and their relatives as explicit
//! finite-dimensional algebras: a normal-form basis of paths and socle
//! elements, with multiplication given by closed-form rules.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Result, SawError};
use crate::field::{Field, Rationals};
use crate::linalg::{self, sparse_rank, sv_axpy, sv_from_entries, sv_scale, Matrix, SparseVec};
use crate::quiver::{is_tetrahedral, ArrowId, QuiverIso, TetrahedralWitness, TriangulationQuiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    /// Relations `a f(a) = c A` and `b f(b) g(f(b)) = 0`.
    Weighted,
    /// Relations `b f(b) = 0` and `c B = c' B'`.
    Biserial,
    /// Monomial algebra generated by `a f(a)` and the long paths `A`.
    String,
    /// Weighted relations with the squares of border loops moved by a
    /// socle term.
    SocleDeformed,
}

impl AlgebraKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgebraKind::Weighted => "weighted",
            AlgebraKind::Biserial => "biserial",
            AlgebraKind::String => "string",
            AlgebraKind::SocleDeformed => "deformed",
        }
    }

    pub fn has_socle(&self) -> bool {
        !matches!(self, AlgebraKind::String)
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Quiver plus weight, parameter and border functions.
#[derive(Clone, Debug)]
pub struct WeightedPresentation<F: Field> {
    pub quiver: TriangulationQuiver,
    pub field: F,
    pub kind: AlgebraKind,
    weights: Vec<usize>,
    params: Vec<F::Elem>,
    border: BTreeMap<VertexId, F::Elem>,
}

impl<F: Field> WeightedPresentation<F> {
    /// All weights and parameters equal to one, no border function.
    pub fn new(quiver: TriangulationQuiver, field: F, kind: AlgebraKind) -> Self {
        let n_orbits = quiver.g_structure().orbits.len();
        WeightedPresentation {
            weights: vec![1; n_orbits],
            params: vec![field.one(); n_orbits],
            border: BTreeMap::new(),
            quiver,
            field,
            kind,
        }
    }

    /// Sets the weight of the g-orbit containing `arrow`.
    pub fn set_weight(&mut self, arrow: ArrowId, m: usize) -> &mut Self {
        let o = self.quiver.orbit_index(arrow);
        self.weights[o] = m;
        self
    }

    /// Sets the parameter of the g-orbit containing `arrow`.
    pub fn set_param(&mut self, arrow: ArrowId, c: F::Elem) -> &mut Self {
        let o = self.quiver.orbit_index(arrow);
        self.params[o] = c;
        self
    }

    pub fn set_border(&mut self, vertex: VertexId, b: F::Elem) -> &mut Self {
        self.border.insert(vertex, b);
        self
    }

    pub fn with_weights(mut self, pairs: &[(&str, usize)]) -> Self {
        for (name, m) in pairs {
            let a = self.quiver.arrow_by_name(name).expect("arrow name");
            self.set_weight(a, *m);
        }
        self
    }

    pub fn with_params(mut self, pairs: &[(&str, F::Elem)]) -> Self {
        for (name, c) in pairs {
            let a = self.quiver.arrow_by_name(name).expect("arrow name");
            self.set_param(a, c.clone());
        }
        self
    }

    pub fn with_border(mut self, pairs: &[(&str, F::Elem)]) -> Self {
        for (name, b) in pairs {
            let v = self.quiver.vertex_by_name(name).expect("vertex name");
            self.set_border(v, b.clone());
        }
        self
    }

    pub fn m(&self, a: ArrowId) -> usize {
        self.weights[self.quiver.orbit_index(a)]
    }

    pub fn c(&self, a: ArrowId) -> &F::Elem {
        &self.params[self.quiver.orbit_index(a)]
    }

    /// Border value at `v`, zero when unset.
    pub fn b(&self, v: VertexId) -> F::Elem {
        self.border.get(&v).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn params(&self) -> &[F::Elem] {
        &self.params
    }

    pub fn border_values(&self) -> &BTreeMap<VertexId, F::Elem> {
        &self.border
    }

    /// `m n` for the orbit of `a`: the length of the cycle `B_a`.
    pub fn cycle_len(&self, a: ArrowId) -> usize {
        self.m(a) * self.quiver.n(a)
    }

    pub fn has_nonzero_border(&self) -> bool {
        self.border.values().any(|b| !self.field.is_zero(b))
    }

    /// When the quiver is tetrahedral and all weights are one: the four
    /// parameters in the reference labeling and whether `abcd = 1`.
    pub fn tetrahedral_parameters(&self) -> Option<TetrahedralParams<F::Elem>> {
        let q = &self.quiver;
        if (0..q.num_arrows()).any(|a| self.m(a) != 1) {
            return None;
        }
        let TetrahedralWitness::Tetrahedral(iso) = is_tetrahedral(q) else {
            return None;
        };
        let reference = crate::quiver::tetrahedral_reference();
        let back = iso.inverse();
        let param = |name: &str| {
            let r = reference.arrow_by_name(name).unwrap();
            self.c(back.arrows[r]).clone()
        };
        let (a, b, c, d) = (param("beta"), param("rho"), param("gamma"), param("alpha"));
        let k = &self.field;
        let prod = k.mul(&k.mul(&a, &b), &k.mul(&c, &d));
        Some(TetrahedralParams {
            singular: k.is_one(&prod),
            a,
            b,
            c,
            d,
            iso,
        })
    }

    pub fn check(&self) -> Result<()> {
        let q = &self.quiver;
        for a in 0..q.num_arrows() {
            if self.m(a) == 0 {
                return Err(SawError::Presentation(format!(
                    "weight of the orbit of {} must be positive",
                    q.arrow_name(a)
                )));
            }
            if self.cycle_len(a) < 3 {
                return Err(SawError::Presentation(format!(
                    "m*n = {} < 3 on the orbit of {}",
                    self.cycle_len(a),
                    q.arrow_name(a)
                )));
            }
            if self.field.is_zero(self.c(a)) {
                return Err(SawError::Presentation(format!(
                    "parameter of the orbit of {} must be nonzero",
                    q.arrow_name(a)
                )));
            }
        }
        let border = q.border();
        if !self.border.is_empty() && self.kind != AlgebraKind::SocleDeformed {
            return Err(SawError::Presentation(
                "a border function is only allowed for the deformed kind".into(),
            ));
        }
        for v in self.border.keys() {
            if !border.loops.contains_key(v) {
                return Err(SawError::Presentation(format!(
                    "border value given at {} which is not a border vertex",
                    q.vertex_name(*v)
                )));
            }
        }
        if self.kind == AlgebraKind::SocleDeformed && border.is_empty() {
            return Err(SawError::Presentation(
                "deformed kind needs a quiver with nonempty border".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Idempotent(VertexId),
    /// `a g(a) ... g^{len-1}(a)`
    PathWord { start: ArrowId, len: usize },
    /// The socle element at a vertex, `c_a B_a` for either arrow `a` there.
    Socle(VertexId),
}

pub type AlgebraElement<F> = SparseVec<<F as Field>::Elem>;

#[derive(Clone, Debug)]
pub struct AlgebraTable<F: Field> {
    pres: WeightedPresentation<F>,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    source: Vec<VertexId>,
    target: Vec<VertexId>,
    right_arrow: Vec<Vec<SparseVec<F::Elem>>>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
}

/// Integer Cartan matrix with exact determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    /// Entry `(i, j)` is `dim e_i A e_j`.
    pub matrix: Vec<Vec<i64>>,
    pub determinant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub dim: usize,
    pub symmetric: bool,
    pub asymmetric_pair: Option<(usize, usize)>,
    pub gram_rank: usize,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.gram_rank == self.dim
    }
}

pub fn build_algebra<F: Field>(pres: WeightedPresentation<F>) -> Result<AlgebraTable<F>> {
    pres.check()?;
    AlgebraTable::from_presentation(pres)
}

impl<F: Field> AlgebraTable<F> {
    fn from_presentation(pres: WeightedPresentation<F>) -> Result<Self> {
        let q = &pres.quiver;
        let kind = pres.kind;
        let mut basis = Vec::new();
        for v in 0..q.num_vertices() {
            basis.push(BasisElement::Idempotent(v));
        }
        for orbit in &q.g_structure().orbits {
            let mut starts = orbit.arrows.clone();
            starts.sort_unstable();
            for &a in &starts {
                for len in 1..=max_len(&pres, a) {
                    basis.push(BasisElement::PathWord { start: a, len });
                }
            }
        }
        if kind.has_socle() {
            for v in 0..q.num_vertices() {
                basis.push(BasisElement::Socle(v));
            }
        }
        let index: HashMap<BasisElement, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let (source, target): (Vec<_>, Vec<_>) = basis
            .iter()
            .map(|b| match *b {
                BasisElement::Idempotent(v) | BasisElement::Socle(v) => (v, v),
                BasisElement::PathWord { start, len } => (q.s(start), q.t(q.g_pow(start, len - 1))),
            })
            .unzip();
        let mut t = AlgebraTable {
            pres,
            basis,
            index,
            source,
            target,
            right_arrow: Vec::new(),
            table: Vec::new(),
        };
        t.right_arrow = (0..t.basis.len())
            .map(|i| (0..t.pres.quiver.num_arrows()).map(|d| t.rule(i, d)).collect())
            .collect();
        t.table = t.build_table();
        Ok(t)
    }

    fn k(&self) -> &F {
        &self.pres.field
    }

    fn unit(&self, idx: usize) -> SparseVec<F::Elem> {
        vec![(idx, self.k().one())]
    }

    /// The closed-form product of a basis element with an arrow.
    fn rule(&self, i: usize, d: ArrowId) -> SparseVec<F::Elem> {
        let p = &self.pres;
        let q = &p.quiver;
        let k = self.k();
        match self.basis[i] {
            BasisElement::Idempotent(v) => {
                if q.s(d) == v {
                    self.unit(self.index[&BasisElement::PathWord { start: d, len: 1 }])
                } else {
                    Vec::new()
                }
            }
            BasisElement::Socle(_) => Vec::new(),
            BasisElement::PathWord { start: a, len } => {
                let last = q.g_pow(a, len - 1);
                if q.t(last) != q.s(d) {
                    return Vec::new();
                }
                if d == q.g(last) {
                    if len < max_len(p, a) {
                        self.unit(self.index[&BasisElement::PathWord { start: a, len: len + 1 }])
                    } else if p.kind.has_socle() && len + 1 == p.cycle_len(a) {
                        let coef = k.inv(p.c(a)).unwrap();
                        vec![(self.index[&BasisElement::Socle(q.s(a))], coef)]
                    } else {
                        Vec::new()
                    }
                } else {
                    debug_assert_eq!(d, q.f(last));
                    if len != 1 {
                        return Vec::new();
                    }
                    match p.kind {
                        AlgebraKind::Weighted | AlgebraKind::SocleDeformed => {
                            let ab = q.bar(a);
                            let long = self.index[&BasisElement::PathWord {
                                start: ab,
                                len: p.cycle_len(ab) - 1,
                            }];
                            let mut out = vec![(long, p.c(ab).clone())];
                            if p.kind == AlgebraKind::SocleDeformed && q.f(a) == a {
                                let bval = p.b(q.s(a));
                                if !k.is_zero(&bval) {
                                    let coef = k.mul(&bval, &k.inv(p.c(ab)).unwrap());
                                    out.push((self.index[&BasisElement::Socle(q.s(a))], coef));
                                }
                            }
                            sv_from_entries(k, out)
                        }
                        AlgebraKind::Biserial | AlgebraKind::String => Vec::new(),
                    }
                }
            }
        }
    }

    /// `x * d` for an arrow `d`.
    pub fn apply_arrow(&self, x: &[(usize, F::Elem)], d: ArrowId) -> SparseVec<F::Elem> {
        let k = self.k();
        let mut out = Vec::new();
        for (i, c) in x {
            sv_axpy(k, &mut out, c, &self.right_arrow[*i][d]);
        }
        out
    }

    /// Arrow word of a basis element with its scalar: the element equals
    /// `coef * word` (the word is empty for idempotents).
    pub fn basis_word(&self, i: usize) -> (F::Elem, Vec<ArrowId>) {
        let q = &self.pres.quiver;
        match self.basis[i] {
            BasisElement::Idempotent(_) => (self.k().one(), Vec::new()),
            BasisElement::PathWord { start, len } => {
                (self.k().one(), (0..len).map(|j| q.g_pow(start, j)).collect())
            }
            BasisElement::Socle(v) => {
                let a = self.socle_arrow(v);
                (self.pres.c(a).clone(), self.cycle_word(a))
            }
        }
    }

    /// The arrow used to write the socle element at `v`.
    pub fn socle_arrow(&self, v: VertexId) -> ArrowId {
        self.pres.quiver.out_arrows(v)[0]
    }

    fn build_table(&self) -> Vec<Vec<SparseVec<F::Elem>>> {
        let n = self.basis.len();
        let k = self.k();
        let mut table: Vec<Vec<SparseVec<F::Elem>>> = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let prod = match self.basis[y] {
                    BasisElement::Idempotent(v) => {
                        if self.target[x] == v {
                            self.unit(x)
                        } else {
                            Vec::new()
                        }
                    }
                    BasisElement::PathWord { start, len } => {
                        let prev = if len == 1 {
                            self.unit(x)
                        } else {
                            let p = self.index[&BasisElement::PathWord { start, len: len - 1 }];
                            table[x][p].clone()
                        };
                        self.apply_arrow(&prev, self.pres.quiver.g_pow(start, len - 1))
                    }
                    BasisElement::Socle(v) => {
                        let a = self.socle_arrow(v);
                        let mut cur = self.unit(x);
                        for d in self.cycle_word(a) {
                            cur = self.apply_arrow(&cur, d);
                        }
                        sv_scale(k, self.pres.c(a), &cur)
                    }
                };
                table[x][y] = prod;
            }
        }
        table
    }

    pub fn presentation(&self) -> &WeightedPresentation<F> {
        &self.pres
    }

    pub fn quiver(&self) -> &TriangulationQuiver {
        &self.pres.quiver
    }

    pub fn field(&self) -> &F {
        &self.pres.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.pres.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn source(&self, i: usize) -> VertexId {
        self.source[i]
    }

    pub fn target(&self, i: usize) -> VertexId {
        self.target[i]
    }

    /// Basis indices of `e_v A`, in basis order.
    pub fn basis_from(&self, v: VertexId) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.source[i] == v).collect()
    }

    /// Basis indices of `A e_v`, in basis order.
    pub fn basis_to(&self, v: VertexId) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.target[i] == v).collect()
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, x: usize, y: usize) -> &SparseVec<F::Elem> {
        &self.table[x][y]
    }

    pub fn mul(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let k = self.k();
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let coef = k.mul(a, b);
                sv_axpy(k, &mut out, &coef, &self.table[*i][*j]);
            }
        }
        out
    }

    pub fn idempotent(&self, v: VertexId) -> SparseVec<F::Elem> {
        self.unit(v)
    }

    pub fn one(&self) -> SparseVec<F::Elem> {
        (0..self.quiver().num_vertices()).map(|v| (v, self.k().one())).collect()
    }

    pub fn arrow(&self, a: ArrowId) -> SparseVec<F::Elem> {
        self.unit(self.index[&BasisElement::PathWord { start: a, len: 1 }])
    }

    pub fn socle(&self, v: VertexId) -> Option<SparseVec<F::Elem>> {
        self.index.get(&BasisElement::Socle(v)).map(|&i| self.unit(i))
    }

    /// Product of the arrows of a word, starting from the idempotent at
    /// the source of its first arrow. An empty word has no source, so the
    /// caller supplies it.
    pub fn path(&self, start: VertexId, word: &[ArrowId]) -> SparseVec<F::Elem> {
        let mut cur = self.idempotent(start);
        for &d in word {
            cur = self.apply_arrow(&cur, d);
        }
        cur
    }

    /// Arrow word `a g(a) ... ` of length `m n - 1`.
    pub fn long_word(&self, a: ArrowId) -> Vec<ArrowId> {
        let q = self.quiver();
        (0..self.pres.cycle_len(a) - 1).map(|j| q.g_pow(a, j)).collect()
    }

    /// Arrow word `a g(a) ... ` of length `m n`.
    pub fn cycle_word(&self, a: ArrowId) -> Vec<ArrowId> {
        let q = self.quiver();
        (0..self.pres.cycle_len(a)).map(|j| q.g_pow(a, j)).collect()
    }

    /// The long path `A_a` as an element.
    pub fn long_path(&self, a: ArrowId) -> SparseVec<F::Elem> {
        self.path(self.quiver().s(a), &self.long_word(a))
    }

    /// The cycle `B_a` as an element.
    pub fn cycle(&self, a: ArrowId) -> SparseVec<F::Elem> {
        self.path(self.quiver().s(a), &self.cycle_word(a))
    }

    /// `A_a` with its first arrow removed, as an element from `t(a)`.
    pub fn long_path_tail(&self, a: ArrowId) -> SparseVec<F::Elem> {
        let w = self.long_word(a);
        self.path(self.quiver().t(a), &w[1..])
    }

    /// `B_a` with its first arrow removed.
    pub fn cycle_tail(&self, a: ArrowId) -> SparseVec<F::Elem> {
        let w = self.cycle_word(a);
        self.path(self.quiver().t(a), &w[1..])
    }

    /// The defining relations of the algebra kind as formal combinations of
    /// arrow words, each with its start vertex.
    pub fn relation_words(&self) -> Vec<Relation<F::Elem>> {
        let q = self.quiver();
        let k = self.k();
        let p = &self.pres;
        let mut out = Vec::new();
        for a in 0..q.num_arrows() {
            let name = q.arrow_name(a);
            let ab = q.bar(a);
            let af = vec![a, q.f(a)];
            let rel = |label: String, terms: Vec<(F::Elem, Vec<ArrowId>)>| Relation {
                label,
                start: q.s(a),
                terms,
            };
            match p.kind {
                AlgebraKind::Weighted | AlgebraKind::SocleDeformed => {
                    let mut terms = vec![(k.one(), af), (k.neg(p.c(ab)), self.long_word(ab))];
                    if p.kind == AlgebraKind::SocleDeformed && q.f(a) == a {
                        terms.push((k.neg(&p.b(q.s(a))), self.cycle_word(ab)));
                    }
                    out.push(rel(format!("commutativity at {name}"), terms));
                    out.push(rel(
                        format!("zero relation at {name}"),
                        vec![(k.one(), vec![a, q.f(a), q.g(q.f(a))])],
                    ));
                }
                AlgebraKind::Biserial => {
                    out.push(rel(format!("zero relation at {name}"), vec![(k.one(), af)]));
                    out.push(rel(
                        format!("cycle relation at {name}"),
                        vec![(p.c(a).clone(), self.cycle_word(a)), (k.neg(p.c(ab)), self.cycle_word(ab))],
                    ));
                }
                AlgebraKind::String => {
                    out.push(rel(format!("zero relation at {name}"), vec![(k.one(), af)]));
                    out.push(rel(format!("long path at {name}"), vec![(k.one(), self.long_word(a))]));
                }
            }
        }
        out
    }

    /// The defining relations evaluated in the algebra; all should vanish.
    pub fn defining_relations(&self) -> Vec<(String, SparseVec<F::Elem>)> {
        let k = self.k();
        self.relation_words()
            .into_iter()
            .map(|r| {
                let mut acc = Vec::new();
                for (c, w) in &r.terms {
                    sv_axpy(k, &mut acc, c, &self.path(r.start, w));
                }
                (r.label, acc)
            })
            .collect()
    }

    /// Cartan matrix with entry `(i, j) = dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> CartanData {
        let n = self.quiver().num_vertices();
        let mut matrix = vec![vec![0i64; n]; n];
        for i in 0..self.dim() {
            matrix[self.source[i]][self.target[i]] += 1;
        }
        let q = Rationals;
        let m = Matrix {
            rows: n,
            cols: n,
            data: matrix.iter().flatten().map(|&x| q.from_i64(x)).collect(),
        };
        let det = linalg::determinant(&q, &m);
        debug_assert!(det.is_integer());
        CartanData {
            matrix,
            determinant: det.to_integer(),
        }
    }

    /// Values of the symmetrizing form on the basis: one on socle elements,
    /// zero elsewhere.
    pub fn form_values(&self) -> Result<Vec<F::Elem>> {
        if !self.kind().has_socle() {
            return Err(SawError::Unsupported(
                "the string algebra is not self-injective and has no symmetrizing form".into(),
            ));
        }
        Ok(self
            .basis
            .iter()
            .map(|b| match b {
                BasisElement::Socle(_) => self.k().one(),
                _ => self.k().zero(),
            })
            .collect())
    }

    /// The symmetrizing form applied to an element.
    pub fn form(&self, x: &[(usize, F::Elem)]) -> Result<F::Elem> {
        if !self.kind().has_socle() {
            return Err(SawError::Unsupported("no symmetrizing form".into()));
        }
        let k = self.k();
        let mut acc = k.zero();
        for (i, c) in x {
            if matches!(self.basis[*i], BasisElement::Socle(_)) {
                acc = k.add(&acc, c);
            }
        }
        Ok(acc)
    }

    /// Checks `phi(xy) = phi(yx)` on all basis pairs and the rank of the
    /// Gram matrix `phi(b b')`.
    pub fn symmetry_report(&self) -> Result<SymmetryReport> {
        let n = self.dim();
        let mut asym = None;
        let mut rows = Vec::with_capacity(n);
        for x in 0..n {
            let mut row = Vec::new();
            for y in 0..n {
                let v = self.form(&self.table[x][y])?;
                if asym.is_none() && v != self.form(&self.table[y][x])? {
                    asym = Some((x, y));
                }
                if !self.k().is_zero(&v) {
                    row.push((y, v));
                }
            }
            rows.push(row);
        }
        Ok(SymmetryReport {
            dim: n,
            symmetric: asym.is_none(),
            asymmetric_pair: asym,
            gram_rank: sparse_rank(self.k(), rows),
        })
    }

    /// Dual basis with respect to `(x, y) = phi(xy)`: `(b, c*) = 1` when
    /// `b = c` and zero otherwise. Solved block by block, since `phi(b b')`
    /// vanishes unless `b` runs `i -> j` and `b'` runs `j -> i`.
    pub fn dual_basis(&self) -> Result<Vec<SparseVec<F::Elem>>> {
        self.form_values()?;
        let k = self.k();
        let nv = self.quiver().num_vertices();
        let mut blocks: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        for i in 0..self.dim() {
            blocks.entry((self.source[i], self.target[i])).or_default().push(i);
        }
        let mut dual = vec![Vec::new(); self.dim()];
        for i in 0..nv {
            for j in 0..nv {
                let Some(rows) = blocks.get(&(i, j)) else { continue };
                let cols = blocks.get(&(j, i)).cloned().unwrap_or_default();
                if rows.len() != cols.len() {
                    return Err(SawError::Invariant(format!(
                        "Gram block ({i},{j}) is {}x{}",
                        rows.len(),
                        cols.len()
                    )));
                }
                let size = rows.len();
                let mut g = linalg::zeros(k, size, size);
                for (r, &x) in rows.iter().enumerate() {
                    for (c, &y) in cols.iter().enumerate() {
                        g.set(r, c, self.form(&self.table[x][y])?);
                    }
                }
                let inv = linalg::inverse(k, &g)
                    .ok_or_else(|| SawError::Invariant("degenerate Gram block".into()))?;
                for (r, &b) in rows.iter().enumerate() {
                    let entries = cols
                        .iter()
                        .enumerate()
                        .map(|(c, &y)| (y, inv.get(c, r).clone()))
                        .collect();
                    dual[b] = sv_from_entries(k, entries);
                }
            }
        }
        Ok(dual)
    }

    /// Dimension of `x A` for an element `x`.
    pub fn right_ideal_dim(&self, x: &[(usize, F::Elem)]) -> usize {
        let vecs = (0..self.dim()).map(|b| self.mul(x, &self.unit(b)));
        sparse_rank(self.k(), vecs)
    }

    /// See [`WeightedPresentation::tetrahedral_parameters`].
    pub fn tetrahedral_parameters(&self) -> Option<TetrahedralParams<F::Elem>> {
        self.pres.tetrahedral_parameters()
    }
}

fn max_len<F: Field>(p: &WeightedPresentation<F>, a: ArrowId) -> usize {
    match p.kind {
        AlgebraKind::String => p.cycle_len(a) - 2,
        _ => p.cycle_len(a) - 1,
    }
}

/// A relation `sum coef * word`, all words starting at `start`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<E> {
    pub label: String,
    pub start: VertexId,
    pub terms: Vec<(E, Vec<ArrowId>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TetrahedralParams<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub singular: bool,
    /// Isomorphism from the algebra's quiver onto the reference quiver.
    pub iso: QuiverIso,
}

/// Outcome of checking that an assignment of arrow images defines an
/// algebra isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub multiplicative: bool,
    pub failing_pair: Option<(usize, usize)>,
    pub bijective: bool,
}

impl HomCheck {
    pub fn is_isomorphism(&self) -> bool {
        self.multiplicative && self.bijective
    }
}

/// Extends `e_v -> e_{vertex_map[v]}` and `a -> arrow_images[a]`
/// multiplicatively to the basis of `src`, then checks multiplicativity on
/// every basis pair and bijectivity by rank.
pub fn check_arrow_homomorphism<F: Field>(
    src: &AlgebraTable<F>,
    dst: &AlgebraTable<F>,
    vertex_map: &[VertexId],
    arrow_images: &[SparseVec<F::Elem>],
) -> HomCheck {
    let k = src.field();
    let images: Vec<SparseVec<F::Elem>> = (0..src.dim())
        .map(|i| {
            let (coef, word) = src.basis_word(i);
            let mut cur = dst.idempotent(vertex_map[src.source(i)]);
            for d in word {
                cur = dst.mul(&cur, &arrow_images[d]);
            }
            sv_scale(k, &coef, &cur)
        })
        .collect();
    let image_of = |x: &SparseVec<F::Elem>| {
        let mut out = Vec::new();
        for (i, c) in x {
            sv_axpy(k, &mut out, c, &images[*i]);
        }
        out
    };
    let mut failing_pair = None;
    'outer: for x in 0..src.dim() {
        for y in 0..src.dim() {
            let lhs = image_of(src.mul_basis(x, y));
            let rhs = dst.mul(&images[x], &images[y]);
            if lhs != rhs {
                failing_pair = Some((x, y));
                break 'outer;
            }
        }
    }
    let bijective = src.dim() == dst.dim() && sparse_rank(k, images.iter().cloned()) == dst.dim();
    HomCheck {
        multiplicative: failing_pair.is_none(),
        failing_pair,
        bijective,
    }
}

/// Arrow multipliers, in the reference labeling, of the isomorphism from
/// the algebra with parameters `(abcd, 1, 1, 1)` onto the one with
/// `(a, b, c, d)`.
pub fn tetrahedral_scaling<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem, d: &F::Elem) -> Vec<(&'static str, F::Elem)> {
    let _ = a;
    let bcd = k.mul(b, &k.mul(c, d));
    vec![
        ("alpha", d.clone()),
        ("mu", b.clone()),
        ("nu", c.clone()),
        ("delta", bcd.clone()),
        ("omega", bcd.clone()),
        ("sigma", bcd),
        ("xi", k.one()),
        ("rho", k.one()),
        ("gamma", k.one()),
        ("eta", k.one()),
        ("epsilon", k.one()),
        ("beta", k.one()),
    ]
}

/// Checks the arrow scaling `multipliers` (reference labeling) as a map
/// from `t2` to `t1`; both must be tetrahedral with unit weights.
pub fn scaling_check_with<F: Field>(
    t1: &AlgebraTable<F>,
    t2: &AlgebraTable<F>,
    multipliers: &[(&str, F::Elem)],
) -> Result<HomCheck> {
    let not_tet = || SawError::Unsupported("scaling check needs tetrahedral algebras with unit weights".into());
    let p1 = t1.tetrahedral_parameters().ok_or_else(not_tet)?;
    let p2 = t2.tetrahedral_parameters().ok_or_else(not_tet)?;
    let reference = crate::quiver::tetrahedral_reference();
    let back1 = p1.iso.inverse();
    let k = t1.field();
    let mut images = Vec::new();
    for x in 0..t2.quiver().num_arrows() {
        let r = p2.iso.arrows[x];
        let name = reference.arrow_name(r);
        let factor = multipliers
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f.clone())
            .ok_or_else(|| SawError::Input(format!("no multiplier for arrow {name}")))?;
        images.push(sv_scale(k, &factor, &t1.arrow(back1.arrows[r])));
    }
    let vertex_map: Vec<VertexId> = (0..t2.quiver().num_vertices())
        .map(|v| back1.vertices[p2.iso.vertices[v]])
        .collect();
    Ok(check_arrow_homomorphism(t2, t1, &vertex_map, &images))
}

/// Verifies that the arrow scaling maps the algebra with parameters
/// `(abcd, 1, 1, 1)` isomorphically onto the one with `(a, b, c, d)`.
pub fn scaling_isomorphism_check<F: Field>(t1: &AlgebraTable<F>, t2: &AlgebraTable<F>) -> Result<bool> {
    let not_tet = || SawError::Unsupported("scaling check needs tetrahedral algebras with unit weights".into());
    let p1 = t1.tetrahedral_parameters().ok_or_else(not_tet)?;
    let p2 = t2.tetrahedral_parameters().ok_or_else(not_tet)?;
    let k = t1.field();
    if !(k.is_one(&p2.b) && k.is_one(&p2.c) && k.is_one(&p2.d)) {
        return Err(SawError::Input(
            "second algebra must have parameters (lambda, 1, 1, 1) in the reference labeling".into(),
        ));
    }
    let mult = tetrahedral_scaling(k, &p1.a, &p1.b, &p1.c, &p1.d);
    Ok(scaling_check_with(t1, t2, &mult)?.is_isomorphism())
}

/// `dim e_v A` predicted from the weights: `m n + m' n'` over the two
/// arrows leaving `v`, three less for the string kind.
pub fn predicted_projective_dim<F: Field>(p: &WeightedPresentation<F>, v: VertexId) -> usize {
    let [a, b] = p.quiver.out_arrows(v);
    let s = p.cycle_len(a) + p.cycle_len(b);
    match p.kind {
        AlgebraKind::String => s - 3,
        _ => s,
    }
}

/// `sum over g-orbits of m n^2`.
pub fn predicted_dim<F: Field>(p: &WeightedPresentation<F>) -> usize {
    p.quiver
        .g_structure()
        .orbits
        .iter()
        .map(|o| p.m(o.rep) * o.len() * o.len())
        .sum()
}

/// Integer value of a small determinant, for reports.
pub fn det_as_i64(d: &BigInt) -> Option<i64> {
    d.to_i64()
}

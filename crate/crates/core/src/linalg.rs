//! Exact linear algebra: sparse vectors, an incremental sparse echelon basis
//! used for large rank computations, and dense matrices for the small
//! systems arising from modules.

use std::collections::HashMap;

use crate::field::Field;

/// Sorted `(index, coefficient)` pairs without zero coefficients.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `y += a * x`
pub fn sv_axpy<F: Field>(k: &F, y: &mut SparseVec<F::Elem>, a: &F::Elem, x: &[(usize, F::Elem)]) {
    if k.is_zero(a) || x.is_empty() {
        return;
    }
    let old = std::mem::take(y);
    let mut out = Vec::with_capacity(old.len() + x.len());
    let mut xi = x.iter().peekable();
    let mut yi = old.into_iter().peekable();
    loop {
        match (yi.peek(), xi.peek()) {
            (Some((iy, _)), Some((ix, _))) if iy < ix => out.push(yi.next().unwrap()),
            (Some((iy, _)), Some((ix, _))) if iy > ix => {
                let (i, v) = xi.next().unwrap();
                out.push((*i, k.mul(a, v)));
            }
            (Some(_), Some(_)) => {
                let (i, mut v) = yi.next().unwrap();
                let (_, w) = xi.next().unwrap();
                k.add_mul_assign(&mut v, a, w);
                if !k.is_zero(&v) {
                    out.push((i, v));
                }
            }
            (Some(_), None) => out.push(yi.next().unwrap()),
            (None, Some(_)) => {
                let (i, v) = xi.next().unwrap();
                out.push((*i, k.mul(a, v)));
            }
            (None, None) => break,
        }
    }
    *y = out;
}

pub fn sv_scale<F: Field>(k: &F, a: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if k.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, k.mul(a, v))).collect()
}

pub fn sv_get<F: Field>(k: &F, x: &[(usize, F::Elem)], idx: usize) -> F::Elem {
    match x.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => x[p].1.clone(),
        Err(_) => k.zero(),
    }
}

/// Builds a sparse vector from unsorted entries, merging duplicates.
pub fn sv_from_entries<F: Field>(k: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = k.add(w, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !k.is_zero(v));
    out
}

/// Incrementally built echelon basis of a subspace. Each stored vector has
/// leading coefficient one and a leading index not shared with any other.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    field: F,
    pivots: HashMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: F) -> Self {
        SparseEchelon {
            field,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by leading terms until it is zero or has a fresh lead.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let k = &self.field;
        let mut start = 0;
        while start < v.len() {
            let (lead, coef) = (v[start].0, v[start].1.clone());
            match self.pivots.get(&lead) {
                Some(p) => {
                    let minus = k.neg(&coef);
                    sv_axpy(k, &mut v, &minus, p);
                    // entries before `start` are untouched, since p starts at `lead`
                }
                None => start += 1,
            }
        }
        v
    }

    /// True when `v` already lies in the span.
    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce_lead(v).is_empty()
    }

    fn reduce_lead(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let k = &self.field;
        while let Some((lead, coef)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let minus = k.neg(&coef);
                    sv_axpy(k, &mut v, &minus, p);
                }
                None => return v,
            }
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.reduce_lead(v);
        let Some((lead, coef)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&coef).expect("nonzero lead");
        let v = sv_scale(&self.field, &inv, &v);
        self.pivots.insert(lead, v);
        true
    }
}

/// Rank of the span of the given sparse vectors.
pub fn sparse_rank<F: Field>(k: &F, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut ech = SparseEchelon::new(k.clone());
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Dense matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

pub fn zeros<F: Field>(k: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, k.zero())
}

pub fn identity<F: Field>(k: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(k, n, n);
    for i in 0..n {
        m.set(i, i, k.one());
    }
    m
}

pub fn mat_mul<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = zeros(k, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if k.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if k.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                k.add_mul_assign(&mut out.data[idx], x, y);
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(k: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = k.zero();
            for (j, x) in v.iter().enumerate() {
                if !k.is_zero(x) {
                    k.add_mul_assign(&mut acc, a.get(i, j), x);
                }
            }
            acc
        })
        .collect()
}

pub fn is_zero_matrix<F: Field>(k: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| k.is_zero(x))
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref<F: Field>(k: &F, a: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !k.is_zero(a.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = k.inv(a.get(row, col)).unwrap();
        for c in col..a.cols {
            let v = k.mul(a.get(row, c), &inv);
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || k.is_zero(a.get(r, col)) {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                if k.is_zero(a.get(row, c)) {
                    continue;
                }
                let v = k.sub(a.get(r, c), &k.mul(&factor, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(k: &F, a: &Matrix<F::Elem>) -> usize {
    let mut m = a.clone();
    rref(k, &mut m).len()
}

/// Basis of the null space `{x : a x = 0}`, as vectors of length `a.cols`.
pub fn kernel<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(k, &mut m);
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..a.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![k.zero(); a.cols];
        v[free] = k.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = k.neg(m.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a x = b`, if any.
pub fn solve<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = zeros(k, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let pivots = rref(k, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![k.zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, a.cols).clone();
    }
    Some(x)
}

/// Solves `a X = b` column by column; `None` if some column is inconsistent.
pub fn solve_matrix<F: Field>(
    k: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    let mut aug = zeros(k, a.rows, a.cols + b.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        for c in 0..b.cols {
            aug.set(r, a.cols + c, b.get(r, c).clone());
        }
    }
    let pivots = rref(k, &mut aug);
    if pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let mut x = zeros(k, a.cols, b.cols);
    for (r, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.set(p, c, aug.get(r, a.cols + c).clone());
        }
    }
    Some(x)
}

pub fn inverse<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return None;
    }
    let x = solve_matrix(k, a, &identity(k, a.rows))?;
    if rank(k, a) == a.rows {
        Some(x)
    } else {
        None
    }
}

pub fn determinant<F: Field>(k: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let mut m = a.clone();
    let n = m.rows;
    let mut det = k.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !k.is_zero(m.get(r, col))) else {
            return k.zero();
        };
        if p != col {
            for c in 0..n {
                m.data.swap(p * n + c, col * n + c);
            }
            det = k.neg(&det);
        }
        let pivot = m.get(col, col).clone();
        det = k.mul(&det, &pivot);
        let inv = k.inv(&pivot).unwrap();
        for r in col + 1..n {
            if k.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = k.mul(m.get(r, col), &inv);
            for c in col..n {
                let v = k.sub(m.get(r, c), &k.mul(&factor, m.get(col, c)));
                m.set(r, c, v);
            }
        }
    }
    det
}

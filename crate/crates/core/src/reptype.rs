//! Walks in the string quotient `KQ / (a f(a), A_a)` and the growth
//! classification of weighted surface algebras.

use std::fmt;

use crate::algebra::{AlgebraKind, WeightedPresentation};
use crate::error::{Result, SawError};
use crate::field::Field;
use crate::quiver::{ArrowId, TriangulationQuiver, VertexId};

/// An arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn source(self, q: &TriangulationQuiver) -> VertexId {
        if self.inverse {
            q.t(self.arrow)
        } else {
            q.s(self.arrow)
        }
    }

    pub fn target(self, q: &TriangulationQuiver) -> VertexId {
        if self.inverse {
            q.s(self.arrow)
        } else {
            q.t(self.arrow)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk(pub Vec<Letter>);

impl Walk {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn power(&self, n: usize) -> Walk {
        Walk(self.0.repeat(n))
    }

    pub fn inverse(&self) -> Walk {
        Walk(self.0.iter().rev().map(|l| l.flipped()).collect())
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Walk {
        let n = self.0.len();
        (0..n.max(1))
            .map(|r| {
                let mut w = self.0.clone();
                w.rotate_left(r.min(n));
                w
            })
            .min()
            .map(Walk)
            .unwrap_or_else(|| self.clone())
    }

    /// True when the word is `v^r` for some shorter word `v`.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]))
    }

    pub fn display(&self, q: &TriangulationQuiver) -> String {
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", q.arrow_name(l.arrow))
                } else {
                    q.arrow_name(l.arrow).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Why a letter sequence fails to be a walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkDefect {
    Empty,
    NotComposable { position: usize },
    Backtrack { position: usize },
    /// The run of direct (or inverse) letters starting at `position` with
    /// length `len` is a path in the ideal.
    InIdeal { position: usize, len: usize },
}

impl fmt::Display for WalkDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkDefect::Empty => write!(f, "empty walk"),
            WalkDefect::NotComposable { position } => write!(f, "letters {position} and {} do not compose", position + 1),
            WalkDefect::Backtrack { position } => write!(f, "letter {} inverts letter {position}", position + 1),
            WalkDefect::InIdeal { position, len } => {
                write!(f, "subpath of length {len} at letter {position} lies in the ideal")
            }
        }
    }
}

/// The monomial ideal generated by `a f(a)` and `A_a`, described by the
/// cycle lengths `m_a n_a`.
#[derive(Clone, Debug)]
pub struct StringIdeal<'q> {
    pub quiver: &'q TriangulationQuiver,
    cycle_len: Vec<usize>,
}

impl<'q> StringIdeal<'q> {
    pub fn new(quiver: &'q TriangulationQuiver, weights: &[usize]) -> Self {
        let cycle_len = (0..quiver.num_arrows())
            .map(|a| weights[quiver.orbit_index(a)] * quiver.n(a))
            .collect();
        StringIdeal { quiver, cycle_len }
    }

    pub fn from_presentation<F: Field>(p: &'q WeightedPresentation<F>) -> Self {
        StringIdeal::new(&p.quiver, p.weights())
    }

    pub fn cycle_len(&self, a: ArrowId) -> usize {
        self.cycle_len[a]
    }

    /// A path lies in the ideal when it has an `f`-step or is a `g`-run of
    /// length at least `m n - 1`.
    pub fn path_in_ideal(&self, path: &[ArrowId]) -> bool {
        let q = self.quiver;
        if path.is_empty() {
            return false;
        }
        if path.windows(2).any(|w| w[1] == q.f(w[0])) {
            return true;
        }
        path.len() + 1 >= self.cycle_len[path[0]]
    }

    /// Checks the walk conditions on a linear word.
    pub fn check_walk(&self, w: &Walk) -> std::result::Result<(), WalkDefect> {
        let q = self.quiver;
        let l = &w.0;
        if l.is_empty() {
            return Err(WalkDefect::Empty);
        }
        for i in 0..l.len() - 1 {
            if l[i].target(q) != l[i + 1].source(q) {
                return Err(WalkDefect::NotComposable { position: i });
            }
            if l[i + 1] == l[i].flipped() {
                return Err(WalkDefect::Backtrack { position: i });
            }
        }
        let mut start = 0;
        while start < l.len() {
            let dir = l[start].inverse;
            let mut end = start;
            while end < l.len() && l[end].inverse == dir {
                end += 1;
            }
            let mut run: Vec<ArrowId> = l[start..end].iter().map(|x| x.arrow).collect();
            if dir {
                run.reverse();
            }
            // the whole run is in the ideal iff some subpath is
            if self.path_in_ideal(&run) {
                return Err(WalkDefect::InIdeal {
                    position: start,
                    len: end - start,
                });
            }
            start = end;
        }
        Ok(())
    }

    pub fn is_closed(&self, w: &Walk) -> bool {
        !w.is_empty() && w.0[0].source(self.quiver) == w.0[w.len() - 1].target(self.quiver)
    }

    /// Closed, every power is a walk, and not a proper power. Powers are
    /// walks as soon as the square is, provided the word changes direction.
    pub fn primitivity(&self, w: &Walk) -> Primitivity {
        let walk = self.check_walk(w).is_ok();
        let closed = self.is_closed(w);
        let mixed = w.0.iter().any(|l| l.inverse) && w.0.iter().any(|l| !l.inverse);
        let square_is_walk = closed && mixed && self.check_walk(&w.power(2)).is_ok();
        Primitivity {
            walk,
            closed,
            square_is_walk,
            proper_power: w.is_proper_power(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub walk: bool,
    pub closed: bool,
    pub square_is_walk: bool,
    pub proper_power: bool,
}

impl Primitivity {
    pub fn primitive(&self) -> bool {
        self.walk && self.closed && self.square_is_walk && !self.proper_power
    }
}

/// The involution pairing the two arrows with a common target, and
/// `h(a) = bar(a*)`.
pub fn string_star_involution(q: &TriangulationQuiver) -> (Vec<ArrowId>, Vec<ArrowId>) {
    let star: Vec<ArrowId> = (0..q.num_arrows()).map(|a| q.star(a)).collect();
    let h = (0..q.num_arrows()).map(|a| q.bar(star[a])).collect();
    (star, h)
}

/// `a (a*)^-1 h(a) (h(a)*)^-1 ... h^(r-1)(a) (h^(r-1)(a)*)^-1` with `r` the
/// length of the `h`-orbit of `a`.
pub fn bipartite_walk(q: &TriangulationQuiver, a: ArrowId) -> Walk {
    let (star, h) = string_star_involution(q);
    let mut out = Vec::new();
    let mut x = a;
    loop {
        out.push(Letter::direct(x));
        out.push(Letter::inv(star[x]));
        x = h[x];
        if x == a {
            break;
        }
    }
    Walk(out)
}

/// Closed walks certifying non-polynomial growth of the string quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthWitness {
    pub arrow: ArrowId,
    /// `u f(abar)^-1 ubar f(a)^-1`.
    pub v: Walk,
    /// The bipartite walk through `g(a)`.
    pub w: Walk,
    pub v_check: Primitivity,
    pub w_check: Primitivity,
}

/// `g(a) g^2(a) ... g^len(a)`.
fn g_run(q: &TriangulationQuiver, a: ArrowId, len: usize) -> Vec<Letter> {
    (1..=len).map(|j| Letter::direct(q.g_pow(a, j))).collect()
}

/// Looks for an arrow with `n >= 4` or `m >= 2` and builds the two
/// primitive walks. The `g`-runs have length `n - 2` modulo `n`; the
/// shortest lengths that give a valid primitive walk are used.
pub fn nonpolynomial_witness(ideal: &StringIdeal) -> Option<GrowthWitness> {
    let q = ideal.quiver;
    for a in 0..q.num_arrows() {
        let n = q.n(a);
        let m = ideal.cycle_len(a) / n;
        if n < 4 && m < 2 {
            continue;
        }
        let ab = q.bar(a);
        let lengths = |x: ArrowId, min: usize| {
            let nx = q.n(x);
            (min..=ideal.cycle_len(x).saturating_sub(2))
                .filter(move |l| (l + 2) % nx == 0)
                .collect::<Vec<_>>()
        };
        for lu in lengths(a, 1) {
            for lb in lengths(ab, 0) {
                let mut letters = g_run(q, a, lu);
                letters.push(Letter::inv(q.f(ab)));
                letters.extend(g_run(q, ab, lb));
                letters.push(Letter::inv(q.f(a)));
                let v = Walk(letters);
                let v_check = ideal.primitivity(&v);
                if !v_check.primitive() {
                    continue;
                }
                let w = bipartite_walk(q, q.g(a));
                let w_check = ideal.primitivity(&w);
                if !w_check.primitive() {
                    continue;
                }
                return Some(GrowthWitness {
                    arrow: a,
                    v,
                    w,
                    v_check,
                    w_check,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthVerdict<E> {
    PolynomialGrowthNonSingularTetrahedral { a: E, b: E, c: E, d: E },
    NotPeriodicSingularTetrahedral { a: E, b: E, c: E, d: E },
    NonPolynomialGrowthTame(GrowthWitness),
}

impl<E> GrowthVerdict<E> {
    pub fn as_str(&self) -> &'static str {
        match self {
            GrowthVerdict::PolynomialGrowthNonSingularTetrahedral { .. } => "PolynomialGrowth_NonSingularTetrahedral",
            GrowthVerdict::NotPeriodicSingularTetrahedral { .. } => "NotPeriodic_SingularTetrahedral",
            GrowthVerdict::NonPolynomialGrowthTame(_) => "NonPolynomialGrowth_Tame",
        }
    }
}

/// Growth type of a weighted surface algebra: tetrahedral with unit
/// weights splits on `abcd = 1`; everything else has non-polynomial
/// growth, certified by a witness.
pub fn classify_growth<F: Field>(p: &WeightedPresentation<F>) -> Result<GrowthVerdict<F::Elem>> {
    if p.kind != AlgebraKind::Weighted {
        return Err(SawError::Unsupported(format!(
            "growth classification applies to the weighted kind, not {}",
            p.kind
        )));
    }
    p.check()?;
    if let Some(tp) = p.tetrahedral_parameters() {
        let (a, b, c, d) = (tp.a, tp.b, tp.c, tp.d);
        return Ok(if tp.singular {
            GrowthVerdict::NotPeriodicSingularTetrahedral { a, b, c, d }
        } else {
            GrowthVerdict::PolynomialGrowthNonSingularTetrahedral { a, b, c, d }
        });
    }
    let ideal = StringIdeal::from_presentation(p);
    nonpolynomial_witness(&ideal)
        .map(GrowthVerdict::NonPolynomialGrowthTame)
        .ok_or_else(|| {
            SawError::Invariant("non-tetrahedral quiver without a non-polynomial growth witness".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::fixtures;
    use crate::quiver::validate;

    #[test]
    fn star_on_disc() {
        let q = validate(&fixtures::disc_triangle()).unwrap();
        let (star, h) = string_star_involution(&q);
        let a = q.arrow_by_name("alpha").unwrap();
        assert_eq!(star[a], q.arrow_by_name("eta").unwrap());
        for x in 0..q.num_arrows() {
            assert_eq!(star[star[x]], x);
            assert_eq!(q.t(star[x]), q.t(x));
        }
        let mut seen = vec![false; h.len()];
        for &x in &h {
            seen[x] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn bipartite_walks_are_primitive() {
        for raw in [fixtures::disc_triangle(), fixtures::tetrahedron(), fixtures::tetrahedron_flipped()] {
            let q = validate(&raw).unwrap();
            let ideal = StringIdeal::new(&q, &vec![1; q.g_structure().orbits.len()]);
            for a in 0..q.num_arrows() {
                let w = bipartite_walk(&q, a);
                assert!(ideal.primitivity(&w).primitive(), "{}", w.display(&q));
                assert_eq!(w.0[0], Letter::direct(a));
                assert!(w.0.iter().enumerate().all(|(i, l)| l.inverse == (i % 2 == 1)));
            }
        }
    }

    #[test]
    fn walk_defects() {
        let q = validate(&fixtures::disc_triangle()).unwrap();
        let ideal = StringIdeal::new(&q, &[1]);
        let id = |n: &str| q.arrow_by_name(n).unwrap();
        // alpha beta is an f-step
        let w = Walk(vec![Letter::direct(id("alpha")), Letter::direct(id("beta"))]);
        assert!(matches!(ideal.check_walk(&w), Err(WalkDefect::InIdeal { .. })));
        let w = Walk(vec![Letter::direct(id("alpha")), Letter::inv(id("alpha"))]);
        assert!(matches!(ideal.check_walk(&w), Err(WalkDefect::Backtrack { .. })));
        let w = Walk(vec![Letter::direct(id("alpha")), Letter::direct(id("gamma"))]);
        assert!(matches!(ideal.check_walk(&w), Err(WalkDefect::NotComposable { .. })));
        // g-run alpha eta beta mu gamma has length 5 = mn - 1
        let run: Vec<ArrowId> = ["alpha", "eta", "beta", "mu"].iter().map(|n| id(n)).collect();
        assert!(!ideal.path_in_ideal(&run));
        let mut longer = run.clone();
        longer.push(id("gamma"));
        assert!(ideal.path_in_ideal(&longer));
    }

    #[test]
    fn proper_powers() {
        let w = Walk(vec![Letter::direct(0), Letter::inv(1)]);
        assert!(!w.is_proper_power());
        assert!(w.power(3).is_proper_power());
        assert_eq!(w.power(2).canonical_rotation(), w.power(2));
    }

    #[test]
    fn classification() {
        let k = Rationals;
        let tet = validate(&fixtures::tetrahedron()).unwrap();
        let p = WeightedPresentation::new(tet.clone(), k, AlgebraKind::Weighted);
        assert_eq!(classify_growth(&p).unwrap().as_str(), "NotPeriodic_SingularTetrahedral");
        let p = WeightedPresentation::new(tet, k, AlgebraKind::Weighted).with_params(&[("beta", k.from_i64(30))]);
        assert_eq!(classify_growth(&p).unwrap().as_str(), "PolynomialGrowth_NonSingularTetrahedral");
        for (raw, weights) in [
            (fixtures::tetrahedron_flipped(), vec![]),
            (fixtures::disc_triangle(), vec![]),
            (fixtures::self_folded_pair(), vec![("alpha", 3), ("rho", 3)]),
        ] {
            let q = validate(&raw).unwrap();
            let p = WeightedPresentation::new(q, k, AlgebraKind::Weighted).with_weights(&weights);
            match classify_growth(&p).unwrap() {
                GrowthVerdict::NonPolynomialGrowthTame(w) => {
                    assert!(w.v_check.primitive() && w.w_check.primitive());
                }
                other => panic!("{}", other.as_str()),
            }
        }
    }

    #[test]
    fn weight_two_witness_on_short_orbits() {
        let k = Rationals;
        let q = validate(&fixtures::sphere_opposite()).unwrap();
        let p = WeightedPresentation::new(q.clone(), k, AlgebraKind::Weighted).with_weights(&[
            ("alpha1", 2),
            ("alpha2", 2),
            ("alpha3", 2),
        ]);
        let v = classify_growth(&p).unwrap();
        assert_eq!(v.as_str(), "NonPolynomialGrowth_Tame");
        // tetrahedron with one weight raised is no longer tetrahedral in the
        // growth sense
        let tet = validate(&fixtures::tetrahedron()).unwrap();
        let p = WeightedPresentation::new(tet, k, AlgebraKind::Weighted).with_weights(&[("beta", 2)]);
        assert_eq!(classify_growth(&p).unwrap().as_str(), "NonPolynomialGrowth_Tame");
    }
}

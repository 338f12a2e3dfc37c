// Random surfaces: every edge is dropped into two of the available slots,
// slots are grouped into triangles and boundary pieces, and the resulting
// quiver is pushed through the round trip and the walk machinery.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use saw_core::algebra::{AlgebraKind, WeightedPresentation};
use saw_core::quiver::{find_isomorphism, is_tetrahedral, validate, TriangulationQuiver};
use saw_core::reptype::{classify_growth, GrowthVerdict};
use saw_core::surface::{quiver_from_surface, raw_quiver_from_surface, surface_from_quiver, DirectedTriangulation, Triangle};
use saw_core::{fixtures, Rationals};

fn random_surface(edges: usize, boundary: usize, seed: u64) -> Option<DirectedTriangulation> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=edges).map(|i| i.to_string()).collect();
    let mut slots: Vec<String> = names.iter().chain(names.iter()).cloned().collect();
    slots.shuffle(&mut rng);
    if (slots.len() - boundary) % 3 != 0 {
        return None;
    }
    let (b, t) = slots.split_at(boundary);
    let mut bnd: Vec<String> = b.to_vec();
    bnd.sort();
    bnd.dedup();
    if bnd.len() != boundary {
        return None;
    }
    let triangles = t
        .chunks(3)
        .map(|c| {
            let folded = c[0] == c[1] || c[1] == c[2] || c[0] == c[2];
            Triangle {
                edges: [c[0].clone(), c[1].clone(), c[2].clone()],
                self_folded: folded,
            }
        })
        .collect();
    Some(DirectedTriangulation {
        edges: names,
        triangles,
        boundary: bnd,
    })
}

fn quiver_for(edges: usize, boundary: usize, seed: u64) -> Option<TriangulationQuiver> {
    let s = random_surface(edges, boundary, seed)?;
    quiver_from_surface(&s).ok()
}

fn fixture_quivers() -> Vec<TriangulationQuiver> {
    [
        fixtures::disc_triangle(),
        fixtures::sphere_coherent(),
        fixtures::sphere_opposite(),
        fixtures::self_folded_pair(),
        fixtures::tetrahedron(),
        fixtures::tetrahedron_flipped(),
    ]
    .iter()
    .map(|r| validate(r).unwrap())
    .collect()
}

#[test]
fn fixtures_round_trip() {
    for q in fixture_quivers() {
        let back = quiver_from_surface(&surface_from_quiver(&q)).unwrap();
        assert!(find_isomorphism(&back, &q, true).is_some());
    }
    for (name, s, _) in fixtures::surface_catalogue() {
        let q = quiver_from_surface(&s).unwrap();
        let back = quiver_from_surface(&surface_from_quiver(&q)).unwrap();
        assert!(find_isomorphism(&back, &q, true).is_some(), "{name}");
    }
}

#[test]
fn catalogue_orbit_lengths() {
    for (name, s, lengths) in fixtures::surface_catalogue() {
        let q = quiver_from_surface(&s).unwrap();
        let mut got: Vec<usize> = q.g_structure().orbits.iter().map(|o| o.len()).collect();
        got.sort();
        assert_eq!(got, lengths, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_is_isomorphic(edges in 3usize..10, boundary in 0usize..4, seed in any::<u64>()) {
        let Some(s) = random_surface(edges, boundary, seed) else { return Ok(()) };
        let Ok(raw) = raw_quiver_from_surface(&s) else { return Ok(()) };
        let Ok(q) = validate(&raw) else { return Ok(()) };
        let back = quiver_from_surface(&surface_from_quiver(&q)).unwrap();
        prop_assert!(find_isomorphism(&back, &q, true).is_some());
        prop_assert_eq!(back.num_arrows(), 2 * q.num_vertices());
    }

    #[test]
    fn orbit_structure_is_consistent(edges in 3usize..10, boundary in 0usize..4, seed in any::<u64>()) {
        let Some(q) = quiver_for(edges, boundary, seed) else { return Ok(()) };
        let g = q.g_structure();
        let total: usize = g.orbits.iter().map(|o| o.len()).sum();
        prop_assert_eq!(total, q.num_arrows());
        for a in 0..q.num_arrows() {
            prop_assert_eq!(q.g(a), q.bar(q.f(a)));
            prop_assert_eq!(q.bar(q.bar(a)), a);
            prop_assert_eq!(q.s(q.bar(a)), q.s(a));
            prop_assert_eq!(q.g_pow(a, q.n(a)), a);
            prop_assert_eq!(q.f(q.f(q.f(a))), a);
        }
    }

    #[test]
    fn growth_witnesses_are_primitive(edges in 3usize..9, boundary in 0usize..3, seed in any::<u64>(), m in 1usize..3) {
        let Some(q) = quiver_for(edges, boundary, seed) else { return Ok(()) };
        let tet = is_tetrahedral(&q).is_tetrahedral();
        let mut p = WeightedPresentation::new(q.clone(), Rationals, AlgebraKind::Weighted);
        for o in q.g_structure().orbits.clone() {
            let mut w = m;
            while w * o.len() < 3 {
                w += 1;
            }
            p.set_weight(o.rep, w);
        }
        let v = classify_growth(&p).unwrap();
        match v {
            GrowthVerdict::NonPolynomialGrowthTame(w) => {
                prop_assert!(!(tet && m == 1));
                prop_assert!(w.v_check.primitive());
                prop_assert!(w.w_check.primitive());
            }
            _ => prop_assert!(tet && m == 1),
        }
    }
}

#[test]
fn generator_produces_valid_surfaces() {
    let ok = (0..200u64).filter(|&s| quiver_for(6, s as usize % 3, s).is_some()).count();
    assert!(ok >= 20, "only {ok} of 200 random surfaces were valid");
}

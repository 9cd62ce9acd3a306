mod common;

use std::collections::HashSet;

use common::{random_collineation, rearrange_spread};
use num_traits::ToPrimitive;
use pgiso_core::classify::{classify, enumerate_spreads};
use pgiso_core::counts::count_search_space;
use pgiso_core::design::{spread_to_star, Spread};
use pgiso_core::fixtures;
use pgiso_core::gf2::{Gf2Matrix, Point};
use pgiso_core::iso::{brute_force_iso, iso_spreads, iso_stars, verify_witness, IsoOptions};
use pgiso_core::Design;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn key(s: &Spread) -> Vec<Vec<Point>> {
    let mut k: Vec<Vec<Point>> = s.flats().iter().map(|f| f.points().to_vec()).collect();
    k.sort();
    k
}

/// Every invertible `u x u` matrix, by column backtracking.
fn all_collineations(u: usize) -> Vec<Gf2Matrix> {
    fn rec(u: usize, cols: &mut Vec<u32>, out: &mut Vec<Gf2Matrix>) {
        if cols.len() == u {
            out.push(Gf2Matrix::from_columns(u, cols.clone()).unwrap());
            return;
        }
        for v in 1..1u32 << u {
            cols.push(v);
            if Gf2Matrix::from_columns(u, cols.clone()).unwrap().rank() == cols.len() {
                rec(u, cols, out);
            }
            cols.pop();
        }
    }
    let mut out = Vec::new();
    rec(u, &mut Vec::new(), &mut out);
    out
}

#[test]
fn orbit_of_psi1_is_every_line_spread() {
    let group = all_collineations(4);
    assert_eq!(group.len(), 20160);
    let orbit: HashSet<_> = group
        .iter()
        .map(|m| key(&fixtures::psi1().apply(m).unwrap()))
        .collect();
    let all: HashSet<_> = enumerate_spreads(4, 2).unwrap().iter().map(key).collect();
    // stabilizer of order 360
    assert_eq!(orbit.len(), 56);
    assert_eq!(orbit, all);
}

#[test]
fn classification_of_pg32() {
    let c = classify(4, 2, &IsoOptions::default()).unwrap();
    assert_eq!(c.total_spreads, 56);
    assert_eq!(c.classes.len(), 1);
    assert_eq!(c.classes[0].members, 56);
}

/// A known line spread of PG(3,2) moved by a random collineation and rearranged.
fn random_spread(rng: &mut StdRng) -> Spread {
    let base = if rng.gen_bool(0.5) {
        fixtures::psi1()
    } else {
        fixtures::psi2()
    };
    let moved = base.apply(&random_collineation(4, rng)).unwrap();
    rearrange_spread(&moved, rng)
}

#[test]
fn engine_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let spreads = enumerate_spreads(4, 2).unwrap();
    for case in 0..60 {
        let (a, b) = if case % 2 == 0 {
            (random_spread(&mut rng), random_spread(&mut rng))
        } else {
            (
                spreads[rng.gen_range(0..spreads.len())].clone(),
                spreads[rng.gen_range(0..spreads.len())].clone(),
            )
        };
        let fast = iso_spreads(&a, &b, &IsoOptions::default()).unwrap();
        let slow = brute_force_iso(&a, &b).unwrap();
        assert_eq!(fast.verdict, slow.verdict, "case {case}");
        let (da, db): (Design, Design) = (a.into(), b.into());
        for w in [fast.witness, slow.witness].into_iter().flatten() {
            assert!(verify_witness(&w, &da, &db));
        }
    }
}

#[test]
fn psi3_and_psi4_are_not_isomorphic() {
    let (a, b) = (fixtures::psi3(), fixtures::psi4());
    let total = count_search_space(6, 2).unwrap().to_u64().unwrap();
    let exhaustive = iso_spreads(
        &a,
        &b,
        &IsoOptions {
            deterministic: true,
            jobs: Some(1),
            prune: false,
        },
    )
    .unwrap();
    assert!(!exhaustive.is_isomorphic());
    assert_eq!(exhaustive.relabellings_tried, total);
    assert_eq!(exhaustive.relabellings_pruned, 0);

    let pruned = iso_spreads(&a, &b, &IsoOptions::default()).unwrap();
    assert!(!pruned.is_isomorphic());
    assert_eq!(
        pruned.relabellings_tried + pruned.relabellings_pruned,
        total
    );
    assert!(pruned.relabellings_pruned > 0);

    let threaded = iso_spreads(
        &a,
        &b,
        &IsoOptions {
            deterministic: false,
            jobs: Some(3),
            prune: true,
        },
    )
    .unwrap();
    assert_eq!(threaded.relabellings_tried, pruned.relabellings_tried);
}

#[test]
fn lifted_non_isomorphic_pair_stays_apart() {
    let (a, b) = (
        spread_to_star(&fixtures::psi3(), 1).unwrap(),
        spread_to_star(&fixtures::psi4(), 1).unwrap(),
    );
    assert!(!iso_stars(&a, &b, &IsoOptions::default())
        .unwrap()
        .is_isomorphic());
}

#[test]
fn star_witness_survives_relabelling() {
    let mut rng = StdRng::seed_from_u64(42);
    let omega1 = fixtures::omega1();
    for _ in 0..10 {
        let moved = omega1.apply(&random_collineation(5, &mut rng)).unwrap();
        let res = iso_stars(&fixtures::omega2(), &moved, &IsoOptions::default()).unwrap();
        assert!(verify_witness(
            res.witness.as_ref().unwrap(),
            &fixtures::omega2().into(),
            &moved.into()
        ));
    }
}

#[test]
fn spread_as_star_with_empty_nucleus() {
    let (a, b) = (
        spread_to_star(&fixtures::psi1(), 0).unwrap(),
        spread_to_star(&fixtures::psi2(), 0).unwrap(),
    );
    let res = iso_stars(&a, &b, &IsoOptions::default()).unwrap();
    assert!(res.is_isomorphic());
    assert!(verify_witness(
        res.witness.as_ref().unwrap(),
        &a.into(),
        &b.into()
    ));
}

#[test]
fn deterministic_witness_is_stable() {
    let opts = IsoOptions::deterministic();
    let first = iso_spreads(&fixtures::psi1(), &fixtures::psi2(), &opts).unwrap();
    for _ in 0..3 {
        let again = iso_spreads(&fixtures::psi1(), &fixtures::psi2(), &opts).unwrap();
        assert_eq!(again.witness, first.witness);
        assert_eq!(again.accepted, first.accepted);
    }
}

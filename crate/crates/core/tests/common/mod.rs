#![allow(dead_code)]

use pgiso_core::design::{Design, Flat, Spread, Star};
use pgiso_core::gf2::Gf2Matrix;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_collineation<R: Rng>(n: usize, rng: &mut R) -> Gf2Matrix {
    loop {
        let cols = (0..n).map(|_| rng.gen_range(1..1u32 << n)).collect();
        let m = Gf2Matrix::from_columns(n, cols).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn shuffle_flat<R: Rng>(f: &Flat, rng: &mut R) -> Flat {
    let mut pts = f.display_points().to_vec();
    pts.shuffle(rng);
    Flat::new(pts).unwrap()
}

/// A random rearrangement: flats permuted, points permuted within each flat.
pub fn rearrange<R: Rng>(d: &Design, rng: &mut R) -> Design {
    let mut flats: Vec<Flat> = d.flats().iter().map(|f| shuffle_flat(f, rng)).collect();
    flats.shuffle(rng);
    match d {
        Design::Spread(s) => Spread::new(s.u(), s.h(), flats).unwrap().into(),
        Design::Star(s) => Star::new(s.n(), s.t(), s.t0(), flats).unwrap().into(),
    }
}

pub fn rearrange_spread<R: Rng>(s: &Spread, rng: &mut R) -> Spread {
    match rearrange(&s.clone().into(), rng) {
        Design::Spread(s) => s,
        Design::Star(_) => unreachable!(),
    }
}

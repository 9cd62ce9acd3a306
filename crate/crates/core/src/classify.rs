//! Exhaustive enumeration of small spreads and their isomorphism classes.

use std::collections::HashSet;

use crate::design::{Flat, Spread};
use crate::error::{Error, Result};
use crate::gf2::{Point, XorBasis};
use crate::iso::{iso_spreads, IsoOptions};

/// Largest `u` for exhaustive classification.
pub const CLASSIFY_MAX_DIM: usize = 4;

/// Largest `u` for spread enumeration; line spreads of `P_6` are already far too many.
pub const ENUMERATE_MAX_DIM: usize = 5;

/// Every `h`-dimensional subspace of `P_u`, each listed in binary-counter
/// order of its lexicographically first basis.
pub fn enumerate_flats(u: usize, h: usize) -> Vec<Flat> {
    fn rec(
        u: usize,
        h: usize,
        start: u32,
        gens: &mut Vec<Point>,
        basis: &XorBasis,
        seen: &mut HashSet<Vec<Point>>,
        out: &mut Vec<Flat>,
    ) {
        if gens.len() == h {
            let f = Flat::span(gens).expect("nonempty");
            if seen.insert(f.points().to_vec()) {
                out.push(f);
            }
            return;
        }
        for m in start..(1u32 << u) {
            let mut next = basis.clone();
            if next.insert(m) {
                gens.push(Point::new(m).unwrap());
                rec(u, h, m + 1, gens, &next, seen, out);
                gens.pop();
            }
        }
    }
    let mut out = Vec::new();
    if h == 0 || h > u {
        return out;
    }
    rec(
        u,
        h,
        1,
        &mut Vec::new(),
        &XorBasis::new(),
        &mut HashSet::new(),
        &mut out,
    );
    out
}

fn set_mask(f: &Flat) -> u64 {
    f.points()
        .iter()
        .fold(0u64, |acc, p| acc | 1 << (p.mask() - 1))
}

/// All `(h-1)`-spreads of `P_u`, found by exact-cover backtracking: the
/// lowest uncovered point is always covered next.
pub fn enumerate_spreads(u: usize, h: usize) -> Result<Vec<Spread>> {
    if u == 0 || u > ENUMERATE_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "spread enumeration is limited to u <= {ENUMERATE_MAX_DIM}"
        )));
    }
    if h == 0 || !u.is_multiple_of(h) {
        return Err(Error::NoBalancedSpread { u, h });
    }
    let flats = enumerate_flats(u, h);
    let masks: Vec<u64> = flats.iter().map(set_mask).collect();
    let full = (1u64 << ((1u64 << u) - 1)) - 1;
    let mut by_point = vec![Vec::new(); (1usize << u) - 1];
    for (i, &m) in masks.iter().enumerate() {
        for (bit, list) in by_point.iter_mut().enumerate() {
            if m >> bit & 1 == 1 {
                list.push(i);
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    cover(
        full,
        0,
        &masks,
        &by_point,
        &mut chosen,
        &mut |sel: &[usize]| {
            let fl = sel.iter().map(|&i| flats[i].clone()).collect();
            out.push(Spread::new(u, h, fl).expect("exact covers are spreads"));
        },
    );
    Ok(out)
}

fn cover(
    full: u64,
    covered: u64,
    masks: &[u64],
    by_point: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if covered == full {
        emit(chosen);
        return;
    }
    let bit = (!covered).trailing_zeros() as usize;
    for &i in &by_point[bit] {
        if masks[i] & covered == 0 {
            chosen.push(i);
            cover(full, covered | masks[i], masks, by_point, chosen, emit);
            chosen.pop();
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    pub representative: Spread,
    pub members: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub u: usize,
    pub h: usize,
    pub total_spreads: usize,
    pub classes: Vec<IsoClass>,
}

/// Enumerates every spread of `P_u` and sorts them into isomorphism classes,
/// comparing each against the class representatives found so far.
pub fn classify(u: usize, h: usize, opts: &IsoOptions) -> Result<Classification> {
    if u > CLASSIFY_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "exhaustive classification is limited to u <= {CLASSIFY_MAX_DIM}; \
             larger cases rely on published censuses (for example, 131044 classes of line spreads of PG(5,2))"
        )));
    }
    let spreads = enumerate_spreads(u, h)?;
    let mut classes: Vec<IsoClass> = Vec::new();
    for s in &spreads {
        let mut placed = false;
        for class in classes.iter_mut() {
            if iso_spreads(&class.representative, s, opts)?.is_isomorphic() {
                class.members += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(IsoClass {
                representative: s.clone(),
                members: 1,
            });
        }
    }
    Ok(Classification {
        u,
        h,
        total_spreads: spreads.len(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_counts() {
        // Gaussian binomials [u choose h]_2
        assert_eq!(enumerate_flats(3, 1).len(), 7);
        assert_eq!(enumerate_flats(3, 2).len(), 7);
        assert_eq!(enumerate_flats(4, 2).len(), 35);
        assert_eq!(enumerate_flats(6, 3).len(), 1395);
        assert_eq!(enumerate_flats(4, 4).len(), 1);
    }

    #[test]
    fn trivial_spreads() {
        assert_eq!(enumerate_spreads(3, 1).unwrap().len(), 1);
        assert_eq!(enumerate_spreads(3, 3).unwrap().len(), 1);
        assert_eq!(enumerate_spreads(5, 1).unwrap().len(), 1);
        assert!(enumerate_spreads(4, 3).is_err());
        assert!(enumerate_spreads(6, 2).is_err());
    }

    #[test]
    fn classify_small() {
        for (u, h) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3), (4, 1), (4, 4)] {
            let c = classify(u, h, &IsoOptions::deterministic()).unwrap();
            assert_eq!(c.classes.len(), 1, "u={u} h={h}");
        }
        assert!(classify(6, 2, &IsoOptions::deterministic()).is_err());
    }
}

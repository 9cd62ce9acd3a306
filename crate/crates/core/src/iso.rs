//! Isomorphism testing for balanced spreads and covering stars.
//!
//! Two spreads are isomorphic when some collineation maps one onto a
//! rearrangement of the other. Any such collineation maps flats to flats, and
//! it is determined by its action on `r = u/h` flats whose union is linearly
//! independent (a LIF). The search therefore fixes one LIF of the first
//! spread and only tries relabellings that send it onto ordered `r`-tuples of
//! flats of the second spread, with every choice of independent images
//! inside those flats. Stars are reduced to their underlying spreads first.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::counts::count_collineations;
use crate::design::{normalize_star, Design, Flat, Spread, Star};
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Point, XorBasis};
use crate::signature::{signature, signature_of_flats, SignatureMode};

/// `r` pairwise disjoint flats whose union is linearly independent, with `h`
/// chosen independent points from each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lif {
    /// Indices into the spread's flats, 0-based.
    pub flat_indices: Vec<usize>,
    /// `r * h` points; points `i*h .. (i+1)*h` lie in flat `flat_indices[i]`.
    pub basis_points: Vec<Point>,
}

/// Whether `flats` are linearly independent: their union has rank equal to
/// the sum of their dimensions.
pub fn is_lif(flats: &[&Flat]) -> bool {
    let total: usize = flats.iter().map(|f| f.dim()).sum();
    let union: Vec<Point> = flats
        .iter()
        .flat_map(|f| f.points().iter().copied())
        .collect();
    gf2::rank(&union) == total
}

/// Greedy LIF: scan flats in order and keep each one that is independent of
/// those kept so far. Each kept flat contributes its first `h` independent
/// points in display order.
pub fn find_lif(spread: &Spread) -> Lif {
    let (u, h) = (spread.u(), spread.h());
    let r = u / h;
    let mut basis = XorBasis::new();
    let mut lif = Lif {
        flat_indices: Vec::with_capacity(r),
        basis_points: Vec::with_capacity(u),
    };
    for (i, f) in spread.flats().iter().enumerate() {
        if lif.flat_indices.len() == r {
            break;
        }
        let gens = f.display_basis();
        let mut trial = basis.clone();
        if gens.iter().all(|p| trial.insert(p.mask())) {
            basis = trial;
            lif.flat_indices.push(i);
            lif.basis_points.extend(gens);
        }
    }
    debug_assert_eq!(lif.flat_indices.len(), r, "every spread contains a LIF");
    lif
}

/// Relabels `spread` so the LIF flats come first and flat `i` (1-based) of
/// the LIF begins with `F_((i-1)h+1), ..., F_(ih)`.
///
/// Returns the relabelled spread and `C1`, the inverse of the matrix whose
/// columns are the LIF basis points.
pub fn normalize_lif(spread: &Spread, lif: &Lif) -> Result<(Spread, Gf2Matrix)> {
    let u = spread.u();
    let c1 = Gf2Matrix::from_points(u, &lif.basis_points)?.inverse()?;
    let mapped = spread.apply(&c1)?;
    let h = spread.h();
    let mut order = lif.flat_indices.clone();
    order.extend((0..spread.len()).filter(|i| !lif.flat_indices.contains(i)));
    let mut out = mapped.reordered(&order);
    let mut flats = out.flats().to_vec();
    for (slot, flat) in flats.iter_mut().enumerate().take(lif.flat_indices.len()) {
        let lead: Vec<Point> = (slot * h + 1..=slot * h + h).map(Point::factor).collect();
        let mut display = lead.clone();
        display.extend(
            flat.display_points()
                .iter()
                .copied()
                .filter(|p| !lead.contains(p)),
        );
        *flat = flat.with_display(display);
    }
    out = Spread::new_unchecked(u, h, flats);
    Ok((out, c1))
}

/// Position of a relabelling in the pruned search space.
///
/// `target_flats[i]` is the flat of the second spread that LIF flat `i` is
/// sent to (`If`); `point_choices[i]` lists, for each of the `h` basis points
/// of LIF flat `i`, the position of its image among that target flat's
/// display points (`IC`, column `i`). All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelabelIndex {
    pub target_flats: Vec<usize>,
    pub point_choices: Vec<Vec<usize>>,
}

impl RelabelIndex {
    /// From 1-based `If` and `IC` columns.
    pub fn from_one_based(target_flats: &[usize], point_choices: &[Vec<usize>]) -> RelabelIndex {
        RelabelIndex {
            target_flats: target_flats.iter().map(|i| i - 1).collect(),
            point_choices: point_choices
                .iter()
                .map(|c| c.iter().map(|i| i - 1).collect())
                .collect(),
        }
    }
}

impl fmt::Display for RelabelIndex {
    /// 1-based, `If=(..) IC=((..),(..))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let cols: Vec<String> = self
            .point_choices
            .iter()
            .map(|c| format!("({})", join(c)))
            .collect();
        write!(
            f,
            "If=({}) IC=({})",
            join(&self.target_flats),
            cols.join(",")
        )
    }
}

/// The `u x u` relabelling described by `idx`, or `None` when the chosen
/// images are dependent (not a collineation).
///
/// Column `i*h + s` is the `point_choices[i][s]`-th display point of
/// `target.flats()[target_flats[i]]`.
pub fn build_relabelling(
    idx: &RelabelIndex,
    source: &Spread,
    target: &Spread,
) -> Result<Option<Gf2Matrix>> {
    check_same_shape(source, target)?;
    let (u, h) = (source.u(), source.h());
    let r = u / h;
    let bad = |msg: &str| {
        Err(Error::InvalidParameters(format!(
            "malformed relabelling index: {msg}"
        )))
    };
    if idx.target_flats.len() != r || idx.point_choices.len() != r {
        return bad("expected u/h target flats");
    }
    let mut seen = vec![false; target.len()];
    let mut cols = Vec::with_capacity(u);
    for (&j, choice) in idx.target_flats.iter().zip(&idx.point_choices) {
        if j >= target.len() || std::mem::replace(&mut seen[j], true) {
            return bad("target flats must be distinct and in range");
        }
        let pts = target.flats()[j].display_points();
        if choice.len() != h || choice.iter().any(|&c| c >= pts.len()) {
            return bad("point choices out of range");
        }
        cols.extend(choice.iter().map(|&c| pts[c].mask()));
    }
    let m = Gf2Matrix::from_columns(u, cols)?;
    Ok(m.is_invertible().then_some(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NonIsomorphic,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Isomorphic => "ISOMORPHIC",
            Verdict::NonIsomorphic => "NON-ISOMORPHIC",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IsoResult {
    pub verdict: Verdict,
    /// A collineation mapping the first design onto a rearrangement of the
    /// second; present iff isomorphic.
    pub witness: Option<Gf2Matrix>,
    /// Relabellings enumerated, singular ones included.
    pub relabellings_tried: u64,
    /// Relabellings skipped because their target flats were dependent.
    pub relabellings_pruned: u64,
    /// Position of the accepting relabelling, for the engine search.
    pub accepted: Option<RelabelIndex>,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        self.verdict == Verdict::Isomorphic
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Sequential search in canonical order; the witness is then the first
    /// accepting relabelling.
    pub deterministic: bool,
    /// Worker threads for the parallel search; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Skip whole blocks of relabellings whose target flats are dependent.
    pub prune: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            deterministic: false,
            jobs: None,
            prune: true,
        }
    }
}

impl IsoOptions {
    pub fn deterministic() -> Self {
        IsoOptions {
            deterministic: true,
            jobs: Some(1),
            prune: true,
        }
    }
}

fn check_same_shape(a: &Spread, b: &Spread) -> Result<()> {
    if (a.u(), a.h()) != (b.u(), b.h()) {
        return Err(Error::ParameterMismatch(
            format!("spread(u={}, h={})", a.u(), a.h()),
            format!("spread(u={}, h={})", b.u(), b.h()),
        ));
    }
    Ok(())
}

/// Ordered `h`-tuples of positions whose points are independent, in
/// lexicographic order.
fn independent_tuples(points: &[Point], h: usize) -> Vec<Vec<usize>> {
    fn rec(
        points: &[Point],
        h: usize,
        cur: &mut Vec<usize>,
        basis: &XorBasis,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for (i, p) in points.iter().enumerate() {
            let mut next = basis.clone();
            if next.insert(p.mask()) {
                cur.push(i);
                rec(points, h, cur, &next, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(
        points,
        h,
        &mut Vec::with_capacity(h),
        &XorBasis::new(),
        &mut out,
    );
    out
}

/// Precomputed state for one search; read-only while searching.
struct Search<'a> {
    u: usize,
    h: usize,
    r: usize,
    mu: usize,
    target: &'a Spread,
    /// Points of the non-LIF flats of the normalized source, flattened.
    rest: Vec<u32>,
    per_flat: usize,
    /// owner[p] = index of the target flat containing point p.
    owner: Vec<u16>,
    /// Independent image tuples per target flat, as masks.
    tuples: Vec<Vec<Vec<u32>>>,
    /// Target flat spans as XOR bases, for prefix rank pruning.
    target_basis: Vec<Vec<u32>>,
    ic_per_block: u64,
    prune: bool,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    tried: u64,
    pruned: u64,
}

impl<'a> Search<'a> {
    fn new(normalized: &Spread, target: &'a Spread, prune: bool) -> Search<'a> {
        let (u, h) = (normalized.u(), normalized.h());
        let r = u / h;
        let mu = normalized.len();
        let rest: Vec<u32> = normalized.flats()[r..]
            .iter()
            .flat_map(|f| f.display_points().iter().map(|p| p.mask()))
            .collect();
        let mut owner = vec![u16::MAX; 1 << u];
        for (j, f) in target.flats().iter().enumerate() {
            for p in f.points() {
                owner[p.mask() as usize] = j as u16;
            }
        }
        let tuples: Vec<Vec<Vec<u32>>> = target
            .flats()
            .iter()
            .map(|f| {
                let pts = f.display_points();
                independent_tuples(pts, h)
                    .into_iter()
                    .map(|t| t.into_iter().map(|i| pts[i].mask()).collect())
                    .collect()
            })
            .collect();
        let target_basis = target
            .flats()
            .iter()
            .map(|f| f.display_basis().iter().map(|p| p.mask()).collect())
            .collect();
        let per_block = count_collineations(h).pow(r as u32);
        Search {
            u,
            h,
            r,
            mu,
            target,
            rest,
            per_flat: (1 << h) - 1,
            owner,
            tuples,
            target_basis,
            ic_per_block: per_block.to_u64().unwrap_or(u64::MAX),
            prune,
        }
    }

    /// Number of ordered completions of an `If` prefix of length `k`.
    fn completions(&self, k: usize) -> u64 {
        (0..self.r - k).map(|i| (self.mu - k - i) as u64).product()
    }

    /// Whether the relabelling with these columns maps every remaining source
    /// flat into a single target flat.
    fn accepts(&self, cols: &[u32]) -> bool {
        let apply = |v: u32| {
            let mut out = 0;
            let mut bits = v;
            while bits != 0 {
                out ^= cols[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            out
        };
        self.rest.chunks_exact(self.per_flat).all(|flat| {
            let home = self.owner[apply(flat[0]) as usize];
            flat[1..]
                .iter()
                .all(|&p| self.owner[apply(p) as usize] == home)
        })
    }

    /// Depth-first over the `If` prefix `chosen`; returns the first accepted
    /// relabelling in lexicographic order.
    fn search_if(
        &self,
        chosen: &mut Vec<usize>,
        basis: &XorBasis,
        tally: &mut Tally,
        stop: &AtomicBool,
    ) -> Option<RelabelIndex> {
        let k = chosen.len();
        if k == self.r {
            return self.search_ic(chosen, basis.rank() == self.u, tally, stop);
        }
        for j in 0..self.mu {
            if chosen.contains(&j) {
                continue;
            }
            if stop.load(Ordering::Relaxed) {
                return None;
            }
            let mut next = basis.clone();
            let independent = self.target_basis[j].iter().all(|&v| next.insert(v));
            if self.prune && !independent {
                tally.pruned += self.completions(k + 1) * self.ic_per_block;
                continue;
            }
            chosen.push(j);
            let found = self.search_if(chosen, &next, tally, stop);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn search_ic(
        &self,
        target_flats: &[usize],
        nonsingular: bool,
        tally: &mut Tally,
        stop: &AtomicBool,
    ) -> Option<RelabelIndex> {
        if !nonsingular {
            // every choice of images is singular
            tally.tried += self.ic_per_block;
            return None;
        }
        let mut cols = vec![0u32; self.u];
        let mut picks = vec![0usize; self.r];
        // odometer over tuple choices, first flat most significant
        loop {
            for (i, &j) in target_flats.iter().enumerate() {
                let t = &self.tuples[j][picks[i]];
                cols[i * self.h..(i + 1) * self.h].copy_from_slice(t);
            }
            tally.tried += 1;
            if self.accepts(&cols) {
                let point_choices = target_flats
                    .iter()
                    .zip(&picks)
                    .map(|(&j, &p)| {
                        let pts = self.target.flats()[j].display_points();
                        self.tuples[j][p]
                            .iter()
                            .map(|&m| pts.iter().position(|q| q.mask() == m).unwrap())
                            .collect()
                    })
                    .collect();
                return Some(RelabelIndex {
                    target_flats: target_flats.to_vec(),
                    point_choices,
                });
            }
            let mut i = self.r;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                picks[i] += 1;
                if picks[i] < self.tuples[target_flats[i]].len() {
                    break;
                }
                picks[i] = 0;
            }
            if stop.load(Ordering::Relaxed) {
                return None;
            }
        }
    }
}

/// Decides whether two spreads with the same `(u, h)` are isomorphic.
pub fn iso_spreads(a: &Spread, b: &Spread, opts: &IsoOptions) -> Result<IsoResult> {
    check_same_shape(a, b)?;
    let lif = find_lif(a);
    let (normalized, c1) = normalize_lif(a, &lif)?;
    let search = Search::new(&normalized, b, opts.prune);

    let stop = AtomicBool::new(false);
    let (found, tally) = if opts.deterministic || opts.jobs == Some(1) {
        let mut tally = Tally::default();
        let found = search.search_if(
            &mut Vec::with_capacity(search.r),
            &XorBasis::new(),
            &mut tally,
            &stop,
        );
        (found, tally)
    } else {
        let tried = AtomicU64::new(0);
        let pruned = AtomicU64::new(0);
        let run = || {
            (0..search.mu).into_par_iter().find_map_any(|first| {
                let mut tally = Tally::default();
                let mut basis = XorBasis::new();
                let independent = search.target_basis[first].iter().all(|&v| basis.insert(v));
                let found = if search.prune && !independent {
                    tally.pruned += search.completions(1) * search.ic_per_block;
                    None
                } else {
                    search.search_if(&mut vec![first], &basis, &mut tally, &stop)
                };
                tried.fetch_add(tally.tried, Ordering::Relaxed);
                pruned.fetch_add(tally.pruned, Ordering::Relaxed);
                if found.is_some() {
                    stop.store(true, Ordering::Relaxed);
                }
                found
            })
        };
        let found = match opts.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?
                .install(run),
            None => run(),
        };
        (
            found,
            Tally {
                tried: tried.into_inner(),
                pruned: pruned.into_inner(),
            },
        )
    };

    let witness = match &found {
        Some(idx) => {
            let star = build_relabelling(idx, &normalized, b)?
                .expect("accepted relabellings are invertible");
            let w = star.compose(&c1);
            debug_assert!(verify_witness(
                &w,
                &Design::Spread(a.clone()),
                &Design::Spread(b.clone())
            ));
            Some(w)
        }
        None => None,
    };
    Ok(IsoResult {
        verdict: if witness.is_some() {
            Verdict::Isomorphic
        } else {
            Verdict::NonIsomorphic
        },
        witness,
        relabellings_tried: tally.tried,
        relabellings_pruned: tally.pruned,
        accepted: found,
    })
}

/// Decides whether two covering stars with the same `(n, t, t0)` are isomorphic.
///
/// Both are normalized to `psi_i x pi` by `C0i`, the spreads are compared,
/// and a spread witness `W` is lifted to `C02^-1 * embed(W) * C01`.
pub fn iso_stars(a: &Star, b: &Star, opts: &IsoOptions) -> Result<IsoResult> {
    let (sa, sb) = (
        Design::Star(a.clone()).shape(),
        Design::Star(b.clone()).shape(),
    );
    if sa != sb {
        return Err(Error::ParameterMismatch(sa.to_string(), sb.to_string()));
    }
    let (psi1, c01) = normalize_star(a)?;
    let (psi2, c02) = normalize_star(b)?;
    let mut res = iso_spreads(&psi1, &psi2, opts)?;
    res.witness = match res.witness {
        Some(w) => Some(c02.inverse()?.compose(&w.embed(a.n())).compose(&c01)),
        None => None,
    };
    Ok(res)
}

pub fn iso(a: &Design, b: &Design, opts: &IsoOptions) -> Result<IsoResult> {
    match (a, b) {
        (Design::Spread(x), Design::Spread(y)) => iso_spreads(x, y, opts),
        (Design::Star(x), Design::Star(y)) => iso_stars(x, y, opts),
        _ => Err(Error::ParameterMismatch(
            a.shape().to_string(),
            b.shape().to_string(),
        )),
    }
}

/// Whether `c` maps `a` onto a rearrangement of `b`.
pub fn verify_witness(c: &Gf2Matrix, a: &Design, b: &Design) -> bool {
    if a.shape() != b.shape() || c.rows() != a.n() || !c.is_invertible() {
        return false;
    }
    match a.apply(c) {
        Ok(mapped) => {
            signature(&mapped, SignatureMode::Bitstring) == signature(b, SignatureMode::Bitstring)
        }
        Err(_) => false,
    }
}

/// Largest `u` accepted by [`brute_force_iso`].
pub const BRUTE_FORCE_MAX_DIM: usize = 4;

/// Tries every invertible `u x u` matrix in turn; an oracle for small `u`.
pub fn brute_force_iso(a: &Spread, b: &Spread) -> Result<IsoResult> {
    check_same_shape(a, b)?;
    let u = a.u();
    if u > BRUTE_FORCE_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "brute force is limited to u <= {BRUTE_FORCE_MAX_DIM}, got {u}"
        )));
    }
    let goal = signature_of_flats(b.flats(), u, SignatureMode::Bitstring);
    let mut tried = 0u64;
    let mut cols = Vec::with_capacity(u);
    let found = brute_rec(a, &goal, &mut cols, &XorBasis::new(), &mut tried);
    Ok(IsoResult {
        verdict: if found.is_some() {
            Verdict::Isomorphic
        } else {
            Verdict::NonIsomorphic
        },
        witness: found,
        relabellings_tried: tried,
        relabellings_pruned: 0,
        accepted: None,
    })
}

fn brute_rec(
    a: &Spread,
    goal: &crate::signature::Signature,
    cols: &mut Vec<u32>,
    basis: &XorBasis,
    tried: &mut u64,
) -> Option<Gf2Matrix> {
    let u = a.u();
    if cols.len() == u {
        *tried += 1;
        let m = Gf2Matrix::from_columns(u, cols.clone()).ok()?;
        let mapped: Vec<Flat> = a.flats().iter().map(|f| f.map(&m)).collect();
        return (signature_of_flats(&mapped, u, SignatureMode::Bitstring) == *goal).then_some(m);
    }
    for v in 1..(1u32 << u) {
        let mut next = basis.clone();
        if next.insert(v) {
            cols.push(v);
            let found = brute_rec(a, goal, cols, &next, tried);
            cols.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Total relabellings in the pruned space for these spreads, `N_IF * N_IC`.
pub fn search_space_size(spread: &Spread) -> BigUint {
    crate::counts::count_search_space(spread.u(), spread.h()).expect("valid spread shape")
}

//! Flats, balanced spreads and balanced covering stars.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{
    self, check_dim, independent_subset, point_count, span_of_basis, Gf2Matrix, Point, XorBasis,
};

/// The nonzero points of a GF(2) subspace.
///
/// Points are kept sorted by Yates index for comparison and hashing; the order
/// they were supplied in is kept separately and used for display and for
/// positional indexing (the `IC` point indices of the relabelling search).
#[derive(Clone)]
pub struct Flat {
    sorted: Vec<Point>,
    display: Vec<Point>,
    dim: usize,
}

impl Flat {
    /// The empty flat (dimension 0), used for the nucleus of a spread viewed as a star.
    pub fn empty() -> Flat {
        Flat {
            sorted: Vec::new(),
            display: Vec::new(),
            dim: 0,
        }
    }

    /// Checks that `points` are distinct and closed under addition.
    pub fn new(points: Vec<Point>) -> Result<Flat> {
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotAFlat("repeated point".into()));
        }
        let size = sorted.len();
        if !(size + 1).is_power_of_two() {
            return Err(Error::NotAFlat(format!(
                "{size} points is not of the form 2^t - 1"
            )));
        }
        let dim = (size + 1).trailing_zeros() as usize;
        if gf2::rank(&sorted) != dim {
            return Err(Error::NotAFlat(
                "points are not closed under addition".into(),
            ));
        }
        Ok(Flat {
            sorted,
            display: points,
            dim,
        })
    }

    /// Span of `generators`, listed in binary-counter order of a greedy basis.
    pub fn span(generators: &[Point]) -> Result<Flat> {
        let display = gf2::span(generators)?;
        Ok(Self::from_closed(display))
    }

    pub(crate) fn from_closed(display: Vec<Point>) -> Flat {
        let mut sorted = display.clone();
        sorted.sort_unstable();
        let dim = (display.len() + 1).trailing_zeros() as usize;
        Flat {
            sorted,
            display,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Points in Yates order.
    pub fn points(&self) -> &[Point] {
        &self.sorted
    }

    /// Points in the order they were supplied.
    pub fn display_points(&self) -> &[Point] {
        &self.display
    }

    pub fn contains(&self, p: Point) -> bool {
        self.sorted.binary_search(&p).is_ok()
    }

    /// Smallest geometry dimension containing every point.
    pub fn min_ambient(&self) -> usize {
        self.sorted.iter().map(|p| p.min_dim()).max().unwrap_or(0)
    }

    /// First `dim` independent points in display order.
    pub fn display_basis(&self) -> Vec<Point> {
        independent_subset(&self.display)
    }

    /// Image under a collineation, keeping display order.
    pub fn map(&self, m: &Gf2Matrix) -> Flat {
        let display: Vec<Point> = self
            .display
            .iter()
            .map(|&p| m.apply(p).expect("collineation must be invertible"))
            .collect();
        Self::from_closed(display)
    }

    /// Same point set with a new display order.
    pub(crate) fn with_display(&self, display: Vec<Point>) -> Flat {
        debug_assert_eq!(display.len(), self.len());
        Flat {
            sorted: self.sorted.clone(),
            display,
            dim: self.dim,
        }
    }

    pub fn intersection(&self, other: &Flat) -> Vec<Point> {
        self.sorted
            .iter()
            .copied()
            .filter(|&p| other.contains(p))
            .collect()
    }

    pub fn is_disjoint(&self, other: &Flat) -> bool {
        self.sorted.iter().all(|&p| !other.contains(p))
    }

    pub fn is_subset(&self, other: &Flat) -> bool {
        self.sorted.iter().all(|&p| other.contains(p))
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.sorted == other.sorted
    }
}

impl Eq for Flat {}

impl std::hash::Hash for Flat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorted.hash(state);
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.display).finish()
    }
}

/// First violated clause of a spread check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `h` does not divide `u`, or `u` is out of range.
    BadParameters { u: usize, h: usize },
    /// Element `index` is not a flat of the right dimension inside `P_u`.
    NotFlat { index: usize, reason: String },
    /// Elements `first` and `second` share a point.
    NotDisjoint { first: usize, second: usize },
    /// Some point is in no flat.
    NotCovering { missing: Point },
    /// Wrong number of flats.
    Count { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadParameters { u, h } => {
                write!(f, "bad parameters u={u}, h={h}: h must divide u")
            }
            Violation::NotFlat { index, reason } => {
                write!(f, "element {} is not a valid flat: {reason}", index + 1)
            }
            Violation::NotDisjoint { first, second } => {
                write!(
                    f,
                    "not disjoint: elements {} and {} overlap",
                    first + 1,
                    second + 1
                )
            }
            Violation::NotCovering { missing } => write!(f, "not covering: {missing} is missing"),
            Violation::Count { expected, found } => {
                write!(f, "expected {expected} flats, found {found}")
            }
        }
    }
}

/// `(2^u - 1) / (2^h - 1)`.
pub fn spread_size(u: usize, h: usize) -> usize {
    point_count(u) / point_count(h)
}

/// Checks that `flats` are `(h-1)`-flats partitioning `P_u`.
///
/// Clauses are checked in the order: parameters, flatness, disjointness,
/// cover, count.
pub fn validate_spread(flats: &[Flat], u: usize, h: usize) -> Result<(), Violation> {
    if u == 0 || u > gf2::MAX_DIM || h == 0 || !u.is_multiple_of(h) {
        return Err(Violation::BadParameters { u, h });
    }
    let limit = 1u32 << u;
    for (index, f) in flats.iter().enumerate() {
        if f.dim() != h {
            return Err(Violation::NotFlat {
                index,
                reason: format!("dimension {} instead of {h}", f.dim()),
            });
        }
        if f.points().iter().any(|p| p.mask() >= limit) {
            return Err(Violation::NotFlat {
                index,
                reason: format!("point outside P_{u}"),
            });
        }
    }
    let mut owner = vec![usize::MAX; limit as usize];
    for (index, f) in flats.iter().enumerate() {
        for p in f.points() {
            let slot = &mut owner[p.mask() as usize];
            if *slot != usize::MAX {
                return Err(Violation::NotDisjoint {
                    first: *slot,
                    second: index,
                });
            }
            *slot = index;
        }
    }
    if let Some(m) = (1..limit).find(|&m| owner[m as usize] == usize::MAX) {
        return Err(Violation::NotCovering {
            missing: Point::new(m).unwrap(),
        });
    }
    let expected = spread_size(u, h);
    if flats.len() != expected {
        return Err(Violation::Count {
            expected,
            found: flats.len(),
        });
    }
    Ok(())
}

/// A balanced `(h-1)`-spread of `P_u`.
#[derive(Clone, Debug)]
pub struct Spread {
    u: usize,
    h: usize,
    flats: Vec<Flat>,
}

impl Spread {
    pub fn new(u: usize, h: usize, flats: Vec<Flat>) -> Result<Spread> {
        validate_spread(&flats, u, h).map_err(Error::InvalidSpread)?;
        Ok(Spread { u, h, flats })
    }

    pub(crate) fn new_unchecked(u: usize, h: usize, flats: Vec<Flat>) -> Spread {
        debug_assert_eq!(validate_spread(&flats, u, h), Ok(()));
        Spread { u, h, flats }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Number of flats, `mu`.
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn apply(&self, m: &Gf2Matrix) -> Result<Spread> {
        if !m.is_invertible() || m.rows() != self.u {
            return Err(Error::NotCollineation);
        }
        Ok(Spread {
            u: self.u,
            h: self.h,
            flats: self.flats.iter().map(|f| f.map(m)).collect(),
        })
    }

    /// Same spread with flats in a new order; `order` must be a permutation.
    pub fn reordered(&self, order: &[usize]) -> Spread {
        let flats = order.iter().map(|&i| self.flats[i].clone()).collect();
        Spread::new_unchecked(self.u, self.h, flats)
    }
}

impl PartialEq for Spread {
    /// Equality as ordered lists of point sets.
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.h == other.h && self.flats == other.flats
    }
}

/// A balanced covering star `St(n, mu, t, t0)`.
///
/// `t0 = 0` means an empty nucleus; such a star is a spread of `P_n`.
#[derive(Clone, Debug)]
pub struct Star {
    n: usize,
    t: usize,
    t0: usize,
    nucleus: Flat,
    rays: Vec<Flat>,
}

/// Common intersection of all rays.
///
/// Fails with "not a star" when pairwise intersections differ or the
/// intersection is not a flat.
pub fn nucleus_of(rays: &[Flat]) -> Result<Flat> {
    if rays.len() < 2 {
        return Err(Error::NotAStar("need at least two rays".into()));
    }
    let common = rays[0].intersection(&rays[1]);
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if rays[i].intersection(&rays[j]) != common {
                return Err(Error::NotAStar(format!(
                    "rays {} and {} meet outside the common nucleus",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if common.is_empty() {
        return Ok(Flat::empty());
    }
    // keep the first ray's display order
    let display: Vec<Point> = rays[0]
        .display_points()
        .iter()
        .copied()
        .filter(|p| common.contains(p))
        .collect();
    Flat::new(display).map_err(|e| Error::NotAStar(format!("nucleus is not a flat: {e}")))
}

/// `(2^(n-t0) - 1) / (2^(t-t0) - 1)`.
pub fn star_size(n: usize, t: usize, t0: usize) -> usize {
    spread_size(n - t0, t - t0)
}

impl Star {
    /// Validates a covering star from its rays; the nucleus is derived.
    pub fn new(n: usize, t: usize, t0: usize, rays: Vec<Flat>) -> Result<Star> {
        check_dim(n)?;
        if !(t0 < t && t < n) {
            return Err(Error::InvalidParameters(format!(
                "star needs 0 <= t0 < t < n, got n={n}, t={t}, t0={t0}"
            )));
        }
        if !(n - t0).is_multiple_of(t - t0) {
            return Err(Error::InvalidParameters(format!(
                "no balanced covering star: {} does not divide {}",
                t - t0,
                n - t0
            )));
        }
        let limit = 1u32 << n;
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != t {
                return Err(Error::NotAStar(format!(
                    "ray {} has dimension {}, not {t}",
                    i + 1,
                    r.dim()
                )));
            }
            if r.points().iter().any(|p| p.mask() >= limit) {
                return Err(Error::NotAStar(format!(
                    "ray {} has a point outside P_{n}",
                    i + 1
                )));
            }
        }
        let nucleus = nucleus_of(&rays)?;
        if nucleus.dim() != t0 {
            return Err(Error::NotAStar(format!(
                "nucleus has dimension {}, expected {t0}",
                nucleus.dim()
            )));
        }
        let expected = star_size(n, t, t0);
        if rays.len() != expected {
            return Err(Error::NotAStar(format!(
                "{} rays, a covering star has {expected}",
                rays.len()
            )));
        }
        let mut covered = vec![false; limit as usize];
        for r in &rays {
            for p in r.points() {
                covered[p.mask() as usize] = true;
            }
        }
        if let Some(m) = (1..limit).find(|&m| !covered[m as usize]) {
            return Err(Error::NotAStar(format!(
                "not covering: {} is missing",
                Point::new(m).unwrap()
            )));
        }
        Ok(Star {
            n,
            t,
            t0,
            nucleus,
            rays,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn nucleus(&self) -> &Flat {
        &self.nucleus
    }

    pub fn rays(&self) -> &[Flat] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// `(u, h) = (n - t0, t - t0)` of the underlying spread.
    pub fn spread_params(&self) -> (usize, usize) {
        (self.n - self.t0, self.t - self.t0)
    }

    pub fn apply(&self, m: &Gf2Matrix) -> Result<Star> {
        if !m.is_invertible() || m.rows() != self.n {
            return Err(Error::NotCollineation);
        }
        Ok(Star {
            n: self.n,
            t: self.t,
            t0: self.t0,
            nucleus: self.nucleus.map(m),
            rays: self.rays.iter().map(|f| f.map(m)).collect(),
        })
    }
}

/// Nucleus `span{F_(u+1), ..., F_(u+t0)}`.
pub fn standard_nucleus(u: usize, t0: usize) -> Flat {
    let gens: Vec<Point> = (u + 1..=u + t0).map(Point::factor).collect();
    Flat::from_closed(span_of_basis(&gens))
}

fn join(f: &Flat, nucleus: &Flat) -> Flat {
    // f's points, the nucleus, then f shifted by each nucleus point
    let mut display = f.display_points().to_vec();
    display.extend_from_slice(nucleus.display_points());
    for &q in nucleus.display_points() {
        display.extend(
            f.display_points()
                .iter()
                .map(|&p| (p + q).expect("disjoint subspaces")),
        );
    }
    Flat::from_closed(display)
}

/// Lifts a spread of `P_u` to the covering star `psi x pi` of `P_(u+t0)`.
pub fn spread_to_star(spread: &Spread, t0: usize) -> Result<Star> {
    let (u, h) = (spread.u(), spread.h());
    let n = u + t0;
    check_dim(n)?;
    let nucleus = standard_nucleus(u, t0);
    let rays: Vec<Flat> = spread.flats().iter().map(|f| join(f, &nucleus)).collect();
    if h == u {
        // a single flat cannot be a star with t < n
        return Err(Error::InvalidParameters(
            "trivial spread (h = u) has no star form".into(),
        ));
    }
    Ok(Star {
        n,
        t: h + t0,
        t0,
        nucleus,
        rays,
    })
}

/// Brings a star to the form `psi x pi` with `pi = span{F_(u+1), ..., F_n}`.
///
/// Returns the underlying spread and the collineation `C0` with
/// `C0(star) = psi x pi`. `C0` is the inverse of the matrix that sends
/// `F_(u+1..n)` to a greedy basis of the nucleus (ascending Yates order) and
/// `F_(1..u)` to its greedy extension to a basis of `P_n`.
pub fn normalize_star(star: &Star) -> Result<(Spread, Gf2Matrix)> {
    let n = star.n();
    let (u, h) = star.spread_params();
    let mut basis = XorBasis::new();
    let nucleus_basis: Vec<Point> = star
        .nucleus()
        .points()
        .iter()
        .copied()
        .filter(|p| basis.insert(p.mask()))
        .collect();
    let extension: Vec<Point> = (1..=point_count(n))
        .map(|i| Point::from_yates(i, n).unwrap())
        .filter(|p| basis.insert(p.mask()))
        .collect();
    debug_assert_eq!(extension.len(), u);
    let mut cols = extension;
    cols.extend(nucleus_basis);
    let to_star = Gf2Matrix::from_points(n, &cols)?;
    let c0 = to_star
        .inverse()
        .map_err(|_| Error::NotAStar("degenerate nucleus".into()))?;

    let limit = 1u32 << u;
    let mut flats = Vec::with_capacity(star.len());
    for ray in star.rays() {
        let mapped = ray.map(&c0);
        let base: Vec<Point> = mapped
            .display_points()
            .iter()
            .copied()
            .filter(|p| p.mask() < limit)
            .collect();
        flats.push(Flat::new(base).map_err(|e| Error::NotAStar(e.to_string()))?);
    }
    let spread = Spread::new(u, h, flats).map_err(|e| Error::NotAStar(e.to_string()))?;
    Ok((spread, c0))
}

/// A spread or a covering star.
#[derive(Clone, Debug)]
pub enum Design {
    Spread(Spread),
    Star(Star),
}

/// Shape parameters, compared before any equivalence or isomorphism test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Spread { u: usize, h: usize },
    Star { n: usize, t: usize, t0: usize },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Spread { u, h } => write!(f, "spread(u={u}, h={h})"),
            Shape::Star { n, t, t0 } => write!(f, "star(n={n}, t={t}, t0={t0})"),
        }
    }
}

impl Design {
    /// Ambient dimension of the geometry.
    pub fn n(&self) -> usize {
        match self {
            Design::Spread(s) => s.u(),
            Design::Star(s) => s.n(),
        }
    }

    pub fn flats(&self) -> &[Flat] {
        match self {
            Design::Spread(s) => s.flats(),
            Design::Star(s) => s.rays(),
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Design::Spread(s) => Shape::Spread { u: s.u(), h: s.h() },
            Design::Star(s) => Shape::Star {
                n: s.n(),
                t: s.t(),
                t0: s.t0(),
            },
        }
    }

    pub fn apply(&self, m: &Gf2Matrix) -> Result<Design> {
        Ok(match self {
            Design::Spread(s) => Design::Spread(s.apply(m)?),
            Design::Star(s) => Design::Star(s.apply(m)?),
        })
    }
}

impl From<Spread> for Design {
    fn from(s: Spread) -> Self {
        Design::Spread(s)
    }
}

impl From<Star> for Design {
    fn from(s: Star) -> Self {
        Design::Star(s)
    }
}

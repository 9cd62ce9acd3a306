//! GF(2^u) arithmetic and the cyclic spread construction.
//!
//! Elements are `u`-bit masks in the polynomial basis `1, w, ..., w^(u-1)`:
//! bit `j` is the coefficient of `w^j`. When an element becomes a point of
//! `P_u`, the coefficient of `w^j` is assigned to factor `F_(u-j)`, so `w^0`
//! is the last letter. This reproduces the published cyclic line spreads of
//! PG(3,2) and PG(5,2) exactly.

use crate::design::{spread_size, Flat, Spread};
use crate::error::{Error, Result};
use crate::gf2::{check_dim, Gf2Matrix, Point};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 31;

fn degree(poly: u64) -> Option<usize> {
    (poly != 0).then(|| 63 - poly.leading_zeros() as usize)
}

/// Distinct prime factors by trial division.
fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Whether `poly` (bit `i` = coefficient of `w^i`) is primitive of degree `u`.
///
/// Uses the order test: `w` has order exactly `2^u - 1` modulo `poly`. Over a
/// reducible modulus the unit group is smaller than `2^u - 1`, so the test
/// also certifies irreducibility.
pub fn is_primitive(poly: u64, u: usize) -> Result<bool> {
    if u == 0 || u > MAX_DEGREE || degree(poly) != Some(u) {
        return Err(Error::DegreeMismatch { poly, u });
    }
    if poly & 1 == 0 {
        return Ok(false);
    }
    let ring = FieldSpec { u, poly };
    let order = (1u64 << u) - 1;
    let w = FieldElem(if u == 1 { 1 } else { 2 });
    if ring.pow(w, order) != ring.one() {
        return Ok(false);
    }
    Ok(prime_factors(order)
        .into_iter()
        .all(|p| ring.pow(w, order / p) != ring.one()))
}

/// All primitive polynomials of degree `u`, ascending.
pub fn primitive_polynomials(u: usize) -> Vec<u64> {
    if u == 0 || u > 20 {
        return Vec::new();
    }
    ((1u64 << u)..(1u64 << (u + 1)))
        .filter(|&p| is_primitive(p, u).unwrap_or(false))
        .collect()
}

/// An element of GF(2^u) in the polynomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u64);

/// GF(2^u) presented as `GF(2)[w] / poly` with `poly` primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    u: usize,
    poly: u64,
}

impl FieldSpec {
    pub fn new(u: usize, poly: u64) -> Result<FieldSpec> {
        if !is_primitive(poly, u)? {
            return Err(Error::NotPrimitive(poly));
        }
        Ok(FieldSpec { u, poly })
    }

    pub fn degree(&self) -> usize {
        self.u
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    pub fn order(&self) -> u64 {
        (1u64 << self.u) - 1
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The primitive element `w` (the class of the indeterminate).
    pub fn generator(&self) -> FieldElem {
        if self.u == 1 {
            FieldElem(1)
        } else {
            FieldElem(2)
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    /// Carry-less multiply, reduced modulo `poly`.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut acc: u64 = 0;
        let mut x = a.0;
        let mut y = b.0;
        let top = 1u64 << self.u;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & top != 0 {
                x ^= self.poly;
            }
        }
        FieldElem(acc)
    }

    pub fn pow(&self, mut base: FieldElem, mut k: u64) -> FieldElem {
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `w^k`, with `k` taken modulo the group order.
    pub fn power_of_generator(&self, k: u64) -> FieldElem {
        self.pow(self.generator(), k % self.order())
    }

    /// Point of `P_u` for a nonzero element: coefficient of `w^j` goes to factor `F_(u-j)`.
    pub fn to_point(&self, e: FieldElem) -> Option<Point> {
        let reversed = (0..self.u).fold(0u32, |acc, j| {
            acc | (((e.0 >> j) & 1) as u32) << (self.u - 1 - j)
        });
        Point::new(reversed)
    }

    pub fn from_point(&self, p: Point) -> FieldElem {
        let m = p.mask() as u64;
        FieldElem((0..self.u).fold(0u64, |acc, j| acc | ((m >> (self.u - 1 - j)) & 1) << j))
    }
}

/// Cyclic `(h-1)`-spread of `P_u` from the root `beta = w^(2^k)` of `poly`.
///
/// Flat `i` (1-based) is `{beta^(j*mu + i - 1) : j = 0..2^h - 2}`, written in
/// the field's fixed polynomial basis and listed in that order.
pub fn cyclic_spread(spec: &FieldSpec, h: usize, conjugate_k: usize) -> Result<Spread> {
    let u = spec.degree();
    check_dim(u)?;
    if h == 0 || !u.is_multiple_of(h) {
        return Err(Error::NoBalancedSpread { u, h });
    }
    if conjugate_k >= u {
        return Err(Error::InvalidParameters(format!(
            "conjugate index {conjugate_k} must be below {u}"
        )));
    }
    let mu = spread_size(u, h) as u64;
    let beta = spec.pow(spec.generator(), 1u64 << conjugate_k);
    let per_flat = (1u64 << h) - 1;
    let flats: Vec<Flat> = (0..mu)
        .map(|i| {
            let pts = (0..per_flat)
                .map(|j| {
                    spec.to_point(spec.pow(beta, j * mu + i))
                        .expect("nonzero power")
                })
                .collect();
            Flat::new(pts).expect("cyclic construction yields flats")
        })
        .collect();
    Spread::new(u, h, flats)
}

/// Columns `beta^0, ..., beta^(u-1)` for `beta = w^(2^k)`, in the polynomial
/// basis (bit `i` of a column = coefficient of `w^i`).
pub fn change_root_basis(spec: &FieldSpec, k: usize) -> Result<Gf2Matrix> {
    let u = spec.degree();
    if k >= u {
        return Err(Error::InvalidParameters(format!(
            "conjugate index {k} must be below {u}"
        )));
    }
    let beta = spec.pow(spec.generator(), 1u64 << k);
    let cols = (0..u as u64).map(|j| spec.pow(beta, j).0 as u32).collect();
    Gf2Matrix::from_columns(u, cols)
}

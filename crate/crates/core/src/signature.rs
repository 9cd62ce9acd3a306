//! Equivalence fingerprints of spreads and stars.
//!
//! Two designs with the same shape are equivalent (equal up to reordering
//! flats and points within flats) iff their sorted per-flat fingerprints are
//! equal. Two fingerprints are provided: the product of the primes assigned to
//! the flat's points in Yates order, and the flat's membership bitstring over
//! the points of `P_n`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::design::{Design, Flat};
use crate::error::{Error, Result};
use crate::gf2::{point_count, yates_index, Point};

/// The `2^n - 1` smallest primes; entry `i - 1` belongs to the `i`-th effect
/// in Yates order.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    n: usize,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(n: usize) -> PrimeTable {
        PrimeTable {
            n,
            primes: first_primes(point_count(n)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Prime assigned to a point.
    pub fn lambda(&self, p: Point) -> u64 {
        self.primes[yates_index(p) - 1]
    }

    /// Product of the primes of the flat's points.
    pub fn lambda_flat(&self, f: &Flat) -> BigUint {
        f.points()
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * self.lambda(p))
    }
}

fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_k < k (ln k + ln ln k) for k >= 6
    let k = count.max(6) as f64;
    let bound = (k * (k.ln() + k.ln().ln())).ceil() as usize + 1;
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::with_capacity(count);
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if out.len() == count {
            break;
        }
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Product of the primes of `f`'s points, with primes drawn from `P_n`.
pub fn lambda_flat(f: &Flat, n: usize) -> BigUint {
    PrimeTable::new(n).lambda_flat(f)
}

/// Membership bitstring of a flat over `P_n`: bit `i - 1` is set iff the
/// `i`-th point in Yates order belongs to the flat.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    // little-endian 64-bit words; the comparison order is only used for sorting
    words: Vec<u64>,
}

impl PointSet {
    pub fn words_for(n: usize) -> usize {
        point_count(n).div_ceil(64).max(1)
    }

    pub fn of_flat(f: &Flat, n: usize) -> PointSet {
        let mut words = vec![0u64; Self::words_for(n)];
        for &p in f.points() {
            let bit = yates_index(p) - 1;
            words[bit / 64] |= 1 << (bit % 64);
        }
        PointSet { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, p: Point) -> bool {
        let bit = yates_index(p) - 1;
        self.words
            .get(bit / 64)
            .is_some_and(|w| w >> (bit % 64) & 1 == 1)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointSet {
    /// Hexadecimal, most significant word first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x")?;
        let mut iter = self.words.iter().rev().skip_while(|&&w| w == 0).peekable();
        if iter.peek().is_none() {
            return write!(f, "0");
        }
        write!(f, "{:x}", iter.next().unwrap())?;
        for w in iter {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignatureMode {
    /// Sorted products of primes.
    #[default]
    Prime,
    /// Sorted membership bitstrings.
    Bitstring,
}

/// Sorted per-flat fingerprints of a design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signature {
    Prime(Vec<BigUint>),
    Bitstring(Vec<PointSet>),
}

impl Signature {
    pub fn len(&self) -> usize {
        match self {
            Signature::Prime(v) => v.len(),
            Signature::Bitstring(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> SignatureMode {
        match self {
            Signature::Prime(_) => SignatureMode::Prime,
            Signature::Bitstring(_) => SignatureMode::Bitstring,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match self {
            Signature::Prime(v) => v.iter().map(|x| x.to_string()).collect(),
            Signature::Bitstring(v) => v.iter().map(|x| x.to_string()).collect(),
        };
        write!(f, "({})", items.join(", "))
    }
}

/// Signature of a list of flats of `P_n`.
pub fn signature_of_flats(flats: &[Flat], n: usize, mode: SignatureMode) -> Signature {
    match mode {
        SignatureMode::Prime => {
            let table = PrimeTable::new(n);
            let mut v: Vec<BigUint> = flats.iter().map(|f| table.lambda_flat(f)).collect();
            v.sort_unstable();
            Signature::Prime(v)
        }
        SignatureMode::Bitstring => {
            let mut v: Vec<PointSet> = flats.iter().map(|f| PointSet::of_flat(f, n)).collect();
            v.sort_unstable();
            Signature::Bitstring(v)
        }
    }
}

pub fn signature(design: &Design, mode: SignatureMode) -> Signature {
    signature_of_flats(design.flats(), design.n(), mode)
}

/// Whether two designs of the same shape are equivalent.
pub fn equivalent(a: &Design, b: &Design, mode: SignatureMode) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::ParameterMismatch(
            a.shape().to_string(),
            b.shape().to_string(),
        ));
    }
    Ok(signature(a, mode) == signature(b, mode))
}

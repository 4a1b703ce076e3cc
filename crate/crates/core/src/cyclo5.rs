//! Exact arithmetic in the ring of integers `Z[ζ]` of the fifth cyclotomic field.
//!
//! Elements are stored in the integral basis `1, ζ, ζ², ζ³`; every `ζ⁴` produced
//! during a computation is rewritten as `-1 - ζ - ζ² - ζ³`, so the representation
//! is unique and equality is coordinate-wise.
//!
//! The ring is norm-Euclidean, which gives [`CycInt::euclid_div`] and [`gcd`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `c0 + c1·ζ + c2·ζ² + c3·ζ³` with `ζ = exp(2πi/5)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycInt {
    c: [BigInt; 4],
}

impl CycInt {
    pub fn new(
        c0: impl Into<BigInt>,
        c1: impl Into<BigInt>,
        c2: impl Into<BigInt>,
        c3: impl Into<BigInt>,
    ) -> Self {
        CycInt {
            c: [c0.into(), c1.into(), c2.into(), c3.into()],
        }
    }

    pub fn from_coords(c: [BigInt; 4]) -> Self {
        CycInt { c }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0, 0, 0)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive fifth root of unity `ζ`.
    pub fn zeta() -> Self {
        Self::new(0, 1, 0, 0)
    }

    /// `ζ^k` for any integer exponent (reduced mod 5).
    pub fn zeta_pow(k: i64) -> Self {
        let mut v: [BigInt; 5] = Default::default();
        v[k.rem_euclid(5) as usize] = BigInt::one();
        Self::from_cyclic(v)
    }

    /// `λ = 1 - ζ`, the unique prime above 5.
    pub fn lambda() -> Self {
        Self::new(1, -1, 0, 0)
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The element lies in `Z`.
    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// Collapse a vector in `Z[x]/(x⁵ - 1)` onto the basis via `ζ⁴ = -1 - ζ - ζ² - ζ³`.
    fn from_cyclic(v: [BigInt; 5]) -> Self {
        let [a0, a1, a2, a3, a4] = v;
        CycInt {
            c: [a0 - &a4, a1 - &a4, a2 - &a4, a3 - a4],
        }
    }

    /// Apply `σ_i : ζ ↦ ζ^i`. `galois(2)` is the generator `τ` of `Gal(k0/Q)`.
    pub fn galois(&self, i: u32) -> Result<Self> {
        if !(1..=4).contains(&i) {
            return Err(Error::InvalidArgument(format!(
                "galois index {i} outside 1..=4"
            )));
        }
        Ok(self.galois_unchecked(i))
    }

    fn galois_unchecked(&self, i: u32) -> Self {
        let mut v: [BigInt; 5] = Default::default();
        for (k, c) in self.c.iter().enumerate() {
            v[(k * i as usize) % 5] += c;
        }
        Self::from_cyclic(v)
    }

    /// Product of the three non-trivial conjugates, so that `x · x.conj_product() = N(x)`.
    pub fn conj_product(&self) -> Self {
        &(&self.galois_unchecked(2) * &self.galois_unchecked(3)) * &self.galois_unchecked(4)
    }

    /// Absolute norm `N_{k0/Q}(x)`, the product of the four conjugates.
    pub fn norm(&self) -> BigInt {
        let n = self * &self.conj_product();
        debug_assert!(n.is_rational());
        n.c[0].clone()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            c: [
                &self.c[0] * k,
                &self.c[1] * k,
                &self.c[2] * k,
                &self.c[3] * k,
            ],
        }
    }

    /// Image of `x` under `ζ ↦ 1` reduced mod 5, i.e. `x mod λ` in `O/λ ≅ Z/5`.
    pub fn eval_at_one(&self) -> u8 {
        let s: BigInt = self.c.iter().sum();
        s.mod_floor(&BigInt::from(5)).to_u8().unwrap()
    }

    /// Euclidean division: `self = q·b + r` with `N(r) < N(b)`.
    ///
    /// The quotient starts from the coordinate-wise rounding of the exact
    /// rational quotient; if the remainder misses the bound, offsets in
    /// `{-1, 0, 1}⁴` are tried in a fixed order and the first admissible one wins.
    pub fn euclid_div(&self, b: &CycInt) -> Result<(CycInt, CycInt)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nb = b.norm();
        let num = self * &b.conj_product();
        let two = BigInt::from(2);
        let twice_nb = &nb * &two;
        let rounded = num.c.clone().map(|x| (x * &two + &nb).div_floor(&twice_nb));
        let base = CycInt::from_coords(rounded);
        let r = self - &(&base * b);
        if r.norm() < nb {
            return Ok((base, r));
        }
        for radius in 1..=2i64 {
            for offset in offsets(radius) {
                let q = &base + &offset;
                let r = self - &(&q * b);
                if r.norm() < nb {
                    return Ok((q, r));
                }
            }
        }
        unreachable!("Z[ζ5] is norm-Euclidean; no admissible quotient near {base}")
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &CycInt) -> Option<CycInt> {
        if b.is_zero() {
            return None;
        }
        let nb = b.norm();
        let num = self * &b.conj_product();
        let mut out: [BigInt; 4] = Default::default();
        for (o, x) in out.iter_mut().zip(num.c.iter()) {
            let (q, r) = x.div_rem(&nb);
            if !r.is_zero() {
                return None;
            }
            *o = q;
        }
        Some(CycInt::from_coords(out))
    }

    pub fn divides(&self, x: &CycInt) -> bool {
        x.div_exact(self).is_some()
    }

    /// `self` is a unit (norm ±1).
    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Valuation of `self` at the prime element `pi`. Errors on zero.
    pub fn valuation(&self, pi: &CycInt) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("valuation of zero".into()));
        }
        if pi.is_unit() || pi.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{pi} is not a prime element"
            )));
        }
        let mut v = 0;
        let mut x = self.clone();
        while let Some(q) = x.div_exact(pi) {
            x = q;
            v += 1;
        }
        Ok(v)
    }

    /// Canonical associate among `±ζ^i · self`: sign chosen so that
    /// `eval_at_one ∈ {1, 2}` when it is nonzero, then the lexicographically
    /// smallest coordinate vector.
    pub fn normalize_associate(&self) -> CycInt {
        let mut candidates = Vec::with_capacity(10);
        for i in 0..5 {
            let t = self * &CycInt::zeta_pow(i);
            candidates.push(-&t);
            candidates.push(t);
        }
        if self.eval_at_one() != 0 {
            candidates.retain(|c| matches!(c.eval_at_one(), 1 | 2));
        }
        candidates.into_iter().min_by(lex_cmp).unwrap()
    }
}

fn lex_cmp(a: &CycInt, b: &CycInt) -> Ordering {
    a.c.iter().cmp(b.c.iter())
}

fn offsets(radius: i64) -> impl Iterator<Item = CycInt> {
    let side = 2 * radius + 1;
    (0..side.pow(4)).filter_map(move |mut idx| {
        let mut c = [0i64; 4];
        for slot in c.iter_mut() {
            *slot = idx % side - radius;
            idx /= side;
        }
        // radius 2 only needs the shell not already covered by radius 1
        let max = c.iter().map(|x| x.abs()).max().unwrap();
        (max == radius).then(|| CycInt::new(c[0], c[1], c[2], c[3]))
    })
}

/// Generator of the ideal `(a, b)`, normalized by [`CycInt::normalize_associate`].
/// A unit gcd is reported as `1`.
pub fn gcd(a: &CycInt, b: &CycInt) -> Result<CycInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.euclid_div(&y)?;
        x = y;
        y = r;
    }
    if x.is_unit() {
        return Ok(CycInt::one());
    }
    Ok(x.normalize_associate())
}

impl Add<&CycInt> for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        CycInt {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Sub<&CycInt> for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        CycInt {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Mul<&CycInt> for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let mut v: [BigInt; 5] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                v[(i + j) % 5] += a * b;
            }
        }
        CycInt::from_cyclic(v)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            c: self.c.clone().map(|x| -x),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &'a CycInt) -> CycInt {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl From<i64> for CycInt {
    fn from(n: i64) -> Self {
        CycInt::from_int(n)
    }
}

impl From<BigInt> for CycInt {
    fn from(n: BigInt) -> Self {
        CycInt::from_int(n)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt({self})")
    }
}

/// Parses `c0,c1,c2,c3` or a bare integer.
impl FromStr for CycInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse {s:?} as a cyclotomic integer"));
        let parts: Vec<&str> = s.split(',').collect();
        let parse = |t: &str| t.parse::<BigInt>().map_err(|_| bad());
        match parts.as_slice() {
            [n] => Ok(CycInt::from_int(parse(n)?)),
            [a, b, c, d] => Ok(CycInt::new(parse(a)?, parse(b)?, parse(c)?, parse(d)?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

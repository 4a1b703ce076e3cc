//! Decomposition laws in `k0 = Q(ζ)`, the pure quintic field `Γ = Q(⁵√n)` and
//! its normal closure `k = Γ(ζ)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::cyclo5::{gcd, CycInt};
use crate::error::{Error, Result};
use crate::lambda_adic::is_fifth_power_mod_lambda;
use crate::nt::{self, pow_mod, require_prime};
use crate::symbols::{is_rational_quintic_residue, power_residue_symbol};

/// A prime element of `Z[ζ]` together with the rational prime below it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeK0 {
    pub generator: CycInt,
    pub parent_p: u64,
    /// Residue degree, the order of `p` mod 5 (1 for `λ`).
    pub residue_degree: u8,
    pub is_lambda: bool,
}

impl PrimeK0 {
    pub fn lambda() -> Self {
        PrimeK0 {
            generator: CycInt::lambda(),
            parent_p: 5,
            residue_degree: 1,
            is_lambda: true,
        }
    }

    /// The conjugate prime `σ_i(π)`.
    pub fn galois(&self, i: u32) -> Result<Self> {
        Ok(PrimeK0 {
            generator: self.generator.galois(i)?,
            ..self.clone()
        })
    }

    /// Norm of the prime ideal, `p^f`.
    pub fn norm(&self) -> u128 {
        (self.parent_p as u128).pow(self.residue_degree as u32)
    }
}

impl fmt::Display for PrimeK0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) over {}", self.generator, self.parent_p)
    }
}

/// `(a, b)` with `p = a² + ab - b²`, normalized so that `b + a(ζ² + ζ³) ≡ 1 (mod λ)`.
///
/// `a` is searched upward from 1 and `b` taken from the larger root of the
/// quadratic; if the congruence fails, `b ↦ a - b` exchanges the two factors.
pub fn norm_form_representation(p: u64) -> Result<(i64, i64)> {
    require_prime(p)?;
    if p % 5 != 4 {
        return Err(Error::InvalidArgument(format!("{p} is not ≡ -1 (mod 5)")));
    }
    let p = p as i128;
    let mut a: i128 = 1;
    loop {
        let disc = 5 * a * a - 4 * p;
        if disc >= 0 {
            let s = disc.sqrt();
            if s * s == disc && (a + s) % 2 == 0 {
                let mut b = (a + s) / 2;
                debug_assert_eq!(a * a + a * b - b * b, p);
                if (2 * a + b).rem_euclid(5) != 1 {
                    b = a - b;
                }
                return Ok((a as i64, b as i64));
            }
        }
        a += 1;
    }
}

/// The pair `π1 = b + aζ² + aζ³`, `π2 = (a - b) + aζ² + aζ³` with `π1·π2 = p`.
pub fn split_pair(p: u64) -> Result<(CycInt, CycInt)> {
    let (a, b) = norm_form_representation(p)?;
    Ok((CycInt::new(b, 0, a, a), CycInt::new(a - b, 0, a, a)))
}

/// Factor the rational prime `p` in `Z[ζ]`, listing primes with multiplicity.
///
/// * `p = 5`: `λ` four times.
/// * `p ≡ 1 (mod 5)`: `gcd(p, ζ - r)` for `r = r0, r0², r0³, r0⁴`, `r0` the least
///   nontrivial fifth root of unity mod `p`.
/// * `p ≡ -1 (mod 5)`: `π1, π2` from [`split_pair`].
/// * `p ≡ ±2 (mod 5)`: `p` itself (inert).
pub fn factor_rational_prime_k0(p: u64) -> Result<Vec<PrimeK0>> {
    require_prime(p)?;
    let prime = |g: CycInt, f: u8| PrimeK0 {
        generator: g,
        parent_p: p,
        residue_degree: f,
        is_lambda: false,
    };
    Ok(match p % 5 {
        0 => vec![PrimeK0::lambda(); 4],
        1 => fifth_roots_of_unity(p)
            .into_iter()
            .map(|r| {
                let g = gcd(&CycInt::from_int(p), &CycInt::new(-(r as i64), 1, 0, 0))?;
                Ok(prime(g, 1))
            })
            .collect::<Result<Vec<_>>>()?,
        4 => {
            let (pi1, pi2) = split_pair(p)?;
            vec![prime(pi1, 2), prime(pi2, 2)]
        }
        _ => vec![prime(CycInt::from_int(p), 4)],
    })
}

/// `[r, r², r³, r⁴]` for the least nontrivial fifth root of unity `r` mod `p ≡ 1 (mod 5)`.
pub(crate) fn fifth_roots_of_unity(p: u64) -> Vec<u64> {
    debug_assert_eq!(p % 5, 1);
    let m = (p - 1) / 5;
    let t = (2..p)
        .map(|g| pow_mod(g, m, p))
        .find(|&t| t != 1)
        .expect("p ≡ 1 (mod 5) has a nontrivial fifth root of unity");
    let all: Vec<u64> = (1..=4).map(|k| pow_mod(t, k, p)).collect();
    let r = *all.iter().min().unwrap();
    (1..=4).map(|k| pow_mod(r, k, p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    First,
    Second,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

/// Kind of `Γ = Q(⁵√n)` with the radical of `n` and the fourth power of the
/// conductor of `k/k0` (the first-kind conductor has no integral fourth root).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldKind {
    pub n: u64,
    pub kind: Kind,
    pub radical_r: u64,
    #[serde(with = "crate::serde_str")]
    pub conductor_f4: BigUint,
}

impl FieldKind {
    /// `p` ramifies in `Γ`, i.e. divides its discriminant.
    pub fn divides_discriminant(&self, p: u64) -> bool {
        p == 5 || self.n % p == 0
    }
}

/// Residues `x mod 25` with `x⁴ ≡ 1`, i.e. `±1, ±7`.
pub const SECOND_KIND_RESIDUES: [u64; 4] = [1, 7, 18, 24];

pub fn is_second_kind_residue(n: u64) -> bool {
    SECOND_KIND_RESIDUES.contains(&(n % 25))
}

pub(crate) fn validate_radicand(n: u64) -> Result<()> {
    if n <= 1 {
        return Err(Error::InvalidArgument(format!(
            "radicand {n} must exceed 1"
        )));
    }
    if !nt::is_fifth_power_free(n) {
        return Err(Error::InvalidArgument(format!(
            "radicand {n} is not fifth-power-free"
        )));
    }
    Ok(())
}

pub fn field_kind(n: u64) -> Result<FieldKind> {
    validate_radicand(n)?;
    let n4 = pow_mod(n, 4, 25);
    let kind = if n4 == 1 { Kind::Second } else { Kind::First };
    let radical_r: u64 = nt::factor(n).iter().map(|&(p, _)| p).product();
    let r4 = BigUint::from(radical_r).pow(4);
    let conductor_f4 = match kind {
        Kind::First => r4 * 25u32,
        Kind::Second => r4,
    };
    Ok(FieldKind {
        n,
        kind,
        radical_r,
        conductor_f4,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    Gamma,
    K0,
    K,
}

impl FieldTag {
    /// Absolute degree of the field.
    pub fn degree(self) -> u32 {
        match self {
            FieldTag::Gamma => 5,
            FieldTag::K0 => 4,
            FieldTag::K => 20,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Gamma => "gamma",
            FieldTag::K0 => "k0",
            FieldTag::K => "k",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub label: String,
    /// Ramification index over Q.
    pub e: u32,
    /// Residue degree over Q.
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPattern {
    pub field: FieldTag,
    pub p: u64,
    pub entries: Vec<PrimeEntry>,
    /// Degrees or counts derived here rather than read off a stated law.
    pub inferred: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SplittingPattern {
    fn build(field: FieldTag, p: u64, prefix: &str, groups: &[(usize, u32, u32)]) -> Self {
        let total: usize = groups.iter().map(|g| g.0).sum();
        let mut entries = Vec::with_capacity(total);
        for &(count, e, f) in groups {
            for _ in 0..count {
                let label = if total == 1 {
                    prefix.to_string()
                } else {
                    format!("{prefix}{}", entries.len() + 1)
                };
                entries.push(PrimeEntry { label, e, f });
            }
        }
        SplittingPattern {
            field,
            p,
            entries,
            inferred: false,
            note: None,
        }
    }

    fn inferred(mut self, note: &str) -> Self {
        self.inferred = true;
        self.note = Some(note.to_string());
        self
    }

    /// `Σ e·f`, which equals the field degree.
    pub fn degree_sum(&self) -> u32 {
        self.entries.iter().map(|x| x.e * x.f).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.entries.iter().any(|x| x.e > 1)
    }

    pub fn is_inert(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].e == 1
    }

    /// Multiset of `(e, f)` pairs, sorted, for label-free comparison.
    pub fn shape(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.entries.iter().map(|x| (x.e, x.f)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for SplittingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}O_{} =", self.p, self.field)?;
        for x in &self.entries {
            write!(f, " {}", x.label)?;
            if x.e > 1 {
                write!(f, "^{}", x.e)?;
            }
            write!(f, "(f={})", x.f)?;
        }
        Ok(())
    }
}

/// Splitting of `p` in `k0` as a pattern.
pub fn split_in_k0(p: u64) -> Result<SplittingPattern> {
    require_prime(p)?;
    let groups: &[(usize, u32, u32)] = match p % 5 {
        0 => &[(1, 4, 1)],
        1 => &[(4, 1, 1)],
        4 => &[(2, 1, 2)],
        _ => &[(1, 1, 4)],
    };
    let prefix = if p == 5 { "λ" } else { "π" };
    Ok(SplittingPattern::build(FieldTag::K0, p, prefix, groups))
}

/// Splitting of `p` in `Γ = Q(⁵√n)`.
pub fn split_in_gamma(p: u64, n: u64) -> Result<SplittingPattern> {
    require_prime(p)?;
    validate_radicand(n)?;
    let groups: Vec<(usize, u32, u32)> = if p == 5 {
        match field_kind(n)?.kind {
            Kind::First => vec![(1, 5, 1)],
            Kind::Second => vec![(1, 1, 1), (1, 4, 1)],
        }
    } else if n % p == 0 {
        vec![(1, 5, 1)]
    } else {
        match p % 5 {
            2 | 3 => vec![(1, 1, 1), (1, 1, 4)],
            4 => vec![(1, 1, 1), (2, 1, 2)],
            _ => {
                if is_rational_quintic_residue(n, p) {
                    vec![(5, 1, 1)]
                } else {
                    vec![(1, 1, 5)]
                }
            }
        }
    };
    Ok(SplittingPattern::build(FieldTag::Gamma, p, "P", &groups))
}

/// Splitting of `p` in the normal closure `k`, following the case analysis by
/// kind, `p | n` and `p mod 5`.
///
/// For unramified `p ≢ 1 (mod 5)` every prime of the Galois field `k` above `p`
/// has residue degree equal to the order of `p` mod 5, giving ten primes of
/// degree 2 (`p ≡ -1`) or five of degree 4 (`p ≡ ±2`); these two branches are
/// marked inferred.
pub fn split_in_k(p: u64, n: u64) -> Result<SplittingPattern> {
    require_prime(p)?;
    validate_radicand(n)?;
    let pattern = if p == 5 {
        match field_kind(n)?.kind {
            Kind::First => SplittingPattern::build(FieldTag::K, p, "L", &[(1, 20, 1)]),
            Kind::Second => SplittingPattern::build(FieldTag::K, p, "L", &[(5, 4, 1)]),
        }
    } else if n % p == 0 {
        let groups: &[(usize, u32, u32)] = match p % 5 {
            1 => &[(4, 5, 1)],
            4 => &[(2, 5, 2)],
            _ => &[(1, 5, 4)],
        };
        SplittingPattern::build(FieldTag::K, p, "L", groups)
    } else {
        match p % 5 {
            1 => {
                if is_rational_quintic_residue(n, p) {
                    SplittingPattern::build(FieldTag::K, p, "L", &[(20, 1, 1)])
                } else {
                    SplittingPattern::build(FieldTag::K, p, "L", &[(4, 1, 5)])
                }
            }
            4 => SplittingPattern::build(FieldTag::K, p, "L", &[(10, 1, 2)]).inferred(
                "unramified p ≡ -1 (mod 5): Frobenius has order 2 in Gal(k/Q), so g = 20/2",
            ),
            _ => SplittingPattern::build(FieldTag::K, p, "L", &[(5, 1, 4)]).inferred(
                "unramified p ≡ ±2 (mod 5): Frobenius has order 4 in Gal(k/Q), so g = 20/4",
            ),
        }
    };
    Ok(pattern)
}

/// Splitting of `p` in `k`, computed prime by prime of `k0` from the Kummer
/// criteria applied to `θ = n`. Independent of the case analysis in [`split_in_k`].
pub fn split_in_k_via_kummer(p: u64, n: u64) -> Result<SplittingPattern> {
    validate_radicand(n)?;
    let theta = CycInt::from_int(n);
    let mut primes = factor_rational_prime_k0(p)?;
    primes.dedup();
    let ram_k0 = if p == 5 { 4 } else { 1 };
    let mut groups = Vec::new();
    for prime in &primes {
        let f = prime.residue_degree as u32;
        groups.push(match kummer_split_type(&theta, prime)? {
            KummerSplit::Split => (5, ram_k0, f),
            KummerSplit::Inert => (1, ram_k0, 5 * f),
            KummerSplit::Ramified => (1, 5 * ram_k0, f),
        });
    }
    Ok(SplittingPattern::build(FieldTag::K, p, "L", &groups))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KummerSplit {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for KummerSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KummerSplit::Split => "split",
            KummerSplit::Inert => "inert",
            KummerSplit::Ramified => "ramified",
        })
    }
}

/// Behaviour of the prime `prime` of `k0` in `k0(⁵√theta)`.
///
/// A valuation not divisible by 5 means total ramification. Otherwise the
/// prime's contribution is stripped (it is a fifth power) and the unit part is
/// tested: by Euler's criterion away from `λ`, and at `λ` by solvability of
/// `x⁵ ≡ θ` modulo `λ⁶` (split) or `λ⁵` (inert), decided by enumeration.
pub fn kummer_split_type(theta: &CycInt, prime: &PrimeK0) -> Result<KummerSplit> {
    if theta.is_zero() {
        return Err(Error::InvalidArgument("theta must be nonzero".into()));
    }
    let pi = &prime.generator;
    let v = theta.valuation(pi)?;
    if v % 5 != 0 {
        return Ok(KummerSplit::Ramified);
    }
    let unit_part = theta
        .div_exact(&pi.pow(v as u64))
        .expect("valuation divides");
    if prime.is_lambda {
        return Ok(if is_fifth_power_mod_lambda(&unit_part, 6) {
            KummerSplit::Split
        } else if is_fifth_power_mod_lambda(&unit_part, 5) {
            KummerSplit::Inert
        } else {
            KummerSplit::Ramified
        });
    }
    Ok(if power_residue_symbol(&unit_part, prime)?.exponent == 0 {
        KummerSplit::Split
    } else {
        KummerSplit::Inert
    })
}

/// Product of the generators, for reassembly checks.
pub fn generator_product(primes: &[PrimeK0]) -> CycInt {
    primes
        .iter()
        .fold(CycInt::one(), |acc, x| &acc * &x.generator)
}

/// `p` divided by the product of the returned generators, which must be a unit.
pub fn reassembly_quotient(p: u64, primes: &[PrimeK0]) -> Option<CycInt> {
    CycInt::from_int(BigInt::from(p)).div_exact(&generator_product(primes))
}

//! Residue fields `O/π` of `Z[ζ]` and quintic power residue symbols.
//!
//! For a prime `π ∤ 5` with norm `p^f`, the residue field is `F_p[x]/(g)` where
//! `g` is the irreducible factor of `Φ5 = x⁴ + x³ + x² + x + 1` mod `p` that
//! the generator of `π` reduces to zero under `ζ ↦ x`. The symbol `(α/π)_5` is
//! the exponent `j` with `α^((p^f - 1)/5) ≡ ζ^j (mod π)`.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cyclo5::CycInt;
use crate::error::{Error, Result};
use crate::nt::{self, inv_mod, mul_mod, pow_mod, require_prime};
use crate::splitting::{factor_rational_prime_k0, fifth_roots_of_unity, split_pair, PrimeK0};

/// Element of a residue field: polynomial coefficients in `x`, low degree first.
/// Only the first `f` slots are used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fq(pub [u64; 4]);

impl Fq {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    pub p: u64,
    pub f: u8,
    /// Monic modulus, low degree first, length `f + 1`.
    pub modulus: Vec<u64>,
    pub zeta_image: Fq,
    /// `ζ^j` for `j = 0..5`.
    roots: [Fq; 5],
}

impl ResidueField {
    fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        let f = (modulus.len() - 1) as u8;
        let mut rf = ResidueField {
            p,
            f,
            modulus,
            zeta_image: Fq::default(),
            roots: [Fq::default(); 5],
        };
        rf.zeta_image = rf.reduce(&CycInt::zeta());
        let mut acc = rf.one();
        for j in 0..5 {
            rf.roots[j] = acc;
            acc = rf.mul(&acc, &rf.zeta_image);
        }
        rf
    }

    pub fn one(&self) -> Fq {
        let mut c = [0; 4];
        c[0] = 1 % self.p;
        Fq(c)
    }

    /// Reduce a polynomial of degree < 7 modulo the (monic) modulus.
    fn reduce_poly(&self, mut c: Vec<u64>) -> Fq {
        let p = self.p;
        let f = self.f as usize;
        for deg in (f..c.len()).rev() {
            let lead = c[deg];
            if lead == 0 {
                continue;
            }
            c[deg] = 0;
            // x^deg = x^(deg-f) · x^f and x^f ≡ -(m_0 + ... + m_{f-1} x^{f-1})
            for i in 0..f {
                let t = mul_mod(lead, self.modulus[i], p);
                let slot = &mut c[deg - f + i];
                *slot = (*slot + p - t) % p;
            }
        }
        let mut out = [0; 4];
        out[..f].copy_from_slice(&c[..f]);
        Fq(out)
    }

    pub fn reduce(&self, x: &CycInt) -> Fq {
        let pb = BigInt::from(self.p);
        let c: Vec<u64> = x
            .coords()
            .iter()
            .map(|v| v.mod_floor(&pb).to_u64().unwrap())
            .collect();
        self.reduce_poly(c)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        let f = self.f as usize;
        let mut c = vec![0u64; 2 * f - 1];
        for i in 0..f {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..f {
                c[i + j] = (c[i + j] + mul_mod(a.0[i], b.0[j], p)) % p;
            }
        }
        self.reduce_poly(c)
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Field size `p^f`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.f as u32)
    }

    /// `m = (p^f - 1) / 5`.
    pub fn euler_exponent(&self) -> u128 {
        (self.order() - 1) / 5
    }

    /// `α^m` in the residue field.
    pub fn euler_power(&self, alpha: &CycInt) -> Fq {
        self.pow(&self.reduce(alpha), self.euler_exponent())
    }

    /// The `j` with `t = ζ^j`, if `t` is a fifth root of unity.
    pub fn root_exponent(&self, t: &Fq) -> Option<u8> {
        self.roots.iter().position(|r| r == t).map(|j| j as u8)
    }
}

/// Construct `O/π` for a prime `π ≠ λ`.
pub fn residue_field(prime: &PrimeK0) -> Result<ResidueField> {
    if prime.is_lambda {
        return Err(Error::Unsupported("residue ring at λ".into()));
    }
    let p = prime.parent_p;
    if p >= 1 << 32 {
        return Err(Error::InvalidArgument(format!(
            "prime {p} too large for residue-field arithmetic"
        )));
    }
    let candidates: Vec<Vec<u64>> = match prime.residue_degree {
        4 => vec![vec![1, 1, 1, 1, 1]],
        1 => fifth_roots_of_unity(p)
            .into_iter()
            .map(|r| vec![(p - r) % p, 1])
            .collect(),
        2 => {
            // x² - ηx + 1 with η = ζ + ζ⁻¹ a root of η² + η - 1, i.e. η = (-1 ± √5)/2
            let s = nt::sqrt_mod(5, p)
                .ok_or_else(|| Error::InvalidArgument(format!("5 is not a square mod {p}")))?;
            let half = inv_mod(2, p);
            [s, p - s]
                .into_iter()
                .map(|root| {
                    let eta = mul_mod((root + p - 1) % p, half, p);
                    vec![1, (p - eta) % p, 1]
                })
                .collect()
        }
        f => {
            return Err(Error::InvalidArgument(format!("residue degree {f}")));
        }
    };
    candidates
        .into_iter()
        .map(|m| ResidueField::with_modulus(p, m))
        .find(|rf| rf.reduce(&prime.generator).is_zero())
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} is not a prime element above {p}",
                prime.generator
            ))
        })
}

/// Value `ζ^exponent` of a quintic symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolValue {
    pub exponent: u8,
}

impl SymbolValue {
    pub const ONE: SymbolValue = SymbolValue { exponent: 0 };

    pub fn new(exponent: i64) -> Self {
        SymbolValue {
            exponent: exponent.rem_euclid(5) as u8,
        }
    }

    pub fn is_trivial(self) -> bool {
        self.exponent == 0
    }

    pub fn pow(self, k: i64) -> Self {
        SymbolValue::new(self.exponent as i64 * k)
    }
}

impl Add for SymbolValue {
    type Output = SymbolValue;
    fn add(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue::new(self.exponent as i64 + rhs.exponent as i64)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ^{}", self.exponent)
    }
}

/// `(α/π)_5` by Euler's criterion.
pub fn power_residue_symbol(alpha: &CycInt, prime: &PrimeK0) -> Result<SymbolValue> {
    let rf = residue_field(prime)?;
    symbol_in(&rf, alpha, prime)
}

fn symbol_in(rf: &ResidueField, alpha: &CycInt, prime: &PrimeK0) -> Result<SymbolValue> {
    let a = rf.reduce(alpha);
    if a.is_zero() {
        return Err(Error::NotCoprime(prime.to_string()));
    }
    let t = rf.pow(&a, rf.euler_exponent());
    let j = rf
        .root_exponent(&t)
        .expect("α^((N(π)-1)/5) is a fifth root of unity in O/π");
    Ok(SymbolValue { exponent: j })
}

/// Symbols of `alpha` at every prime of `k0` above the rational prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPrimeSymbol {
    pub p: u64,
    pub per_prime: Vec<(PrimeK0, SymbolValue)>,
    /// Symbol at `pO`, the product over the primes above `p`.
    pub product: SymbolValue,
}

pub fn symbol_at_rational_prime(alpha: &CycInt, p: u64) -> Result<RationalPrimeSymbol> {
    require_prime(p)?;
    if p == 5 {
        return Err(Error::Unsupported("symbol at the ramified prime 5".into()));
    }
    let mut per_prime = Vec::new();
    let mut product = SymbolValue::ONE;
    for prime in factor_rational_prime_k0(p)? {
        let s = power_residue_symbol(alpha, &prime)?;
        product = product + s;
        per_prime.push((prime, s));
    }
    Ok(RationalPrimeSymbol {
        p,
        per_prime,
        product,
    })
}

/// `(β, α / π)_5` at a prime unramified in `k0(⁵√α)`: `(α'/π)_5^(-b)` where
/// `b = v_π(β)` and `α'` is `α` with its (fifth-power) `π`-part removed.
pub fn norm_residue_unramified(
    beta: &CycInt,
    alpha: &CycInt,
    prime: &PrimeK0,
) -> Result<SymbolValue> {
    if prime.is_lambda {
        return Err(Error::Unsupported("norm residue symbol at λ".into()));
    }
    if beta.is_zero() || alpha.is_zero() {
        return Err(Error::InvalidArgument("arguments must be nonzero".into()));
    }
    let pi = &prime.generator;
    let va = alpha.valuation(pi)?;
    if va % 5 != 0 {
        return Err(Error::Unsupported(format!(
            "{prime} ramifies in k0(⁵√α) (v = {va})"
        )));
    }
    let b = beta.valuation(pi)?;
    if b == 0 {
        return Ok(SymbolValue::ONE);
    }
    let stripped = alpha
        .div_exact(&pi.pow(va as u64))
        .expect("valuation divides");
    Ok(power_residue_symbol(&stripped, prime)?.pow(-(b as i64)))
}

/// `n` is a fifth power modulo the rational prime `p`.
pub fn is_rational_quintic_residue(n: u64, p: u64) -> bool {
    let a = n % p;
    if a == 0 {
        return true;
    }
    let g = if (p - 1) % 5 == 0 { 5 } else { 1 };
    pow_mod(a, (p - 1) / g, p) == 1
}

/// Computed status of the symbol identities for `p ≡ -1 (mod 5)`, `p = π1π2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPrimeReport {
    pub p: u64,
    pub c: i64,
    pub pi1: CycInt,
    pub pi2: CycInt,
    /// `(c/π1)_5`, `(c/π2)_5`.
    pub j1: SymbolValue,
    pub j2: SymbolValue,
    /// `(c/π1) = (c/π2)²`.
    pub conjugate_identity: bool,
    /// Both symbols trivial iff `c^((p²-1)/5) ≡ 1 (mod p)`.
    pub residue_criterion: bool,
    /// `(π2/π1) = (π1/π2) = 1`.
    pub mutual_identity: bool,
    /// Both symbols of `c` are trivial.
    pub c_is_residue: bool,
}

pub fn check_split_prime_identities(p: u64, c: i64) -> Result<SplitPrimeReport> {
    require_prime(p)?;
    if p % 5 != 4 {
        return Err(Error::InvalidArgument(format!("{p} is not ≡ -1 (mod 5)")));
    }
    if c.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime(format!("{p} divides {c}")));
    }
    let (pi1, pi2) = split_pair(p)?;
    let prime = |g: &CycInt| PrimeK0 {
        generator: g.clone(),
        parent_p: p,
        residue_degree: 2,
        is_lambda: false,
    };
    let (p1, p2) = (prime(&pi1), prime(&pi2));
    let cc = CycInt::from_int(c);
    let j1 = power_residue_symbol(&cc, &p1)?;
    let j2 = power_residue_symbol(&cc, &p2)?;
    let m = ((p as u128 * p as u128 - 1) / 5) as u64;
    let rational_trivial = pow_mod(c.rem_euclid(p as i64) as u64, m, p) == 1;
    let c_is_residue = j1.is_trivial() && j2.is_trivial();
    let mutual_identity = power_residue_symbol(&pi2, &p1)?.is_trivial()
        && power_residue_symbol(&pi1, &p2)?.is_trivial();
    Ok(SplitPrimeReport {
        p,
        c,
        pi1,
        pi2,
        j1,
        j2,
        conjugate_identity: j1 == j2.pow(2),
        residue_criterion: c_is_residue == rational_trivial,
        mutual_identity,
        c_is_residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi_over_19() -> (PrimeK0, PrimeK0) {
        let f = factor_rational_prime_k0(19).unwrap();
        (f[0].clone(), f[1].clone())
    }

    #[test]
    fn residue_field_over_19() {
        let (p1, p2) = pi_over_19();
        // √5 ≡ ±9 (mod 19); π1 = 3 + 4ζ² + 4ζ³ vanishes on x² - 14x + 1
        let rf1 = residue_field(&p1).unwrap();
        assert_eq!(rf1.modulus, vec![1, 5, 1]);
        let rf2 = residue_field(&p2).unwrap();
        assert_eq!(rf2.modulus, vec![1, 15, 1]);
        // product of the two factors is Φ5 mod 19
        let prod = [1, (5 + 15) % 19, (1 + 5 * 15 + 1) % 19, (5 + 15) % 19, 1];
        assert_eq!(prod, [1, 1, 1, 1, 1]);
    }

    #[test]
    fn residue_field_inert_and_split() {
        let seven = &factor_rational_prime_k0(7).unwrap()[0];
        let rf = residue_field(seven).unwrap();
        assert_eq!(rf.modulus, vec![1, 1, 1, 1, 1]);
        assert_eq!(rf.order(), 2401);
        let eleven = &factor_rational_prime_k0(11).unwrap()[0];
        let rf = residue_field(eleven).unwrap();
        assert_eq!(rf.modulus, vec![8, 1]);
        assert_eq!(rf.zeta_image, Fq([3, 0, 0, 0]));
        assert!(residue_field(&PrimeK0::lambda()).is_err());
    }

    #[test]
    fn symbol_examples_over_19() {
        let (p1, p2) = pi_over_19();
        assert_eq!(
            power_residue_symbol(&CycInt::zeta(), &p1).unwrap().exponent,
            2
        );
        assert_eq!(
            power_residue_symbol(&CycInt::from_int(2), &p1)
                .unwrap()
                .exponent,
            0
        );
        assert_eq!(
            power_residue_symbol(&p2.generator, &p1).unwrap().exponent,
            0
        );
        assert_eq!(
            power_residue_symbol(&CycInt::from_int(38), &p1),
            Err(Error::NotCoprime(p1.to_string()))
        );
        assert!(matches!(
            power_residue_symbol(&CycInt::one(), &PrimeK0::lambda()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn symbol_at_19() {
        let s = symbol_at_rational_prime(&CycInt::from_int(5), 19).unwrap();
        assert!(s.per_prime.iter().all(|(_, v)| v.is_trivial()));
        assert!(s.product.is_trivial());
        let z = symbol_at_rational_prime(&CycInt::zeta(), 19).unwrap();
        assert_eq!(z.per_prime[0].1.exponent, 2);
        // ζ^((19²-1)/5) = ζ^72 at both primes
        assert_eq!(z.per_prime[1].1.exponent, 2);
        assert_eq!(z.product.exponent, 4);
        for p in [3u64, 7, 11, 13, 19, 31] {
            assert!(symbol_at_rational_prime(&CycInt::from_int(32), p)
                .unwrap()
                .product
                .is_trivial());
        }
        assert!(symbol_at_rational_prime(&CycInt::one(), 5).is_err());
    }

    #[test]
    fn norm_residue_examples() {
        let (p1, p2) = pi_over_19();
        assert_eq!(
            norm_residue_unramified(&p1.generator, &p2.generator, &p1)
                .unwrap()
                .exponent,
            0
        );
        assert_eq!(
            norm_residue_unramified(&CycInt::from_int(2), &CycInt::zeta(), &p1)
                .unwrap()
                .exponent,
            0
        );
        assert_eq!(
            norm_residue_unramified(&CycInt::from_int(19), &CycInt::zeta(), &p1)
                .unwrap()
                .exponent,
            3
        );
        assert!(matches!(
            norm_residue_unramified(&CycInt::from_int(19), &p1.generator, &p1),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            norm_residue_unramified(&CycInt::from_int(19), &CycInt::zeta(), &PrimeK0::lambda()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn split_prime_identity_examples() {
        let r = check_split_prime_identities(19, 2).unwrap();
        assert!(r.conjugate_identity && r.mutual_identity && r.residue_criterion);
        assert_eq!((r.j1.exponent, r.j2.exponent), (0, 0));
        let r = check_split_prime_identities(29, 17).unwrap();
        assert!(r.conjugate_identity && r.mutual_identity && r.residue_criterion);
        assert_eq!(r.pi1, CycInt::new(1, 0, 5, 5));
        assert!(matches!(
            check_split_prime_identities(19, 38),
            Err(Error::NotCoprime(_))
        ));
        assert!(check_split_prime_identities(11, 2).is_err());
    }

    #[test]
    fn rational_quintic_residues_mod_11() {
        let fifth: Vec<u64> = (1..11)
            .filter(|&a| is_rational_quintic_residue(a, 11))
            .collect();
        assert_eq!(fifth, vec![1, 10]);
        assert!(is_rational_quintic_residue(3, 7));
    }
}

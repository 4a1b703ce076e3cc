//! Radicand classification and predicted 5-class group generators.
//!
//! Three radicand shapes admit explicit generators of `C_{k,5}` when that group
//! has type `(5,5)` and its ambiguous part has rank 1:
//!
//! 1. `n = 5^e·p`, `p ≡ -1 (mod 5)`, `p ≢ -1 (mod 25)`;
//! 2. `n = p^e·q ≡ ±1, ±7 (mod 25)`, `p` as above, `q ≡ ±2 (mod 5)`, `q ≢ ±7 (mod 25)`;
//! 3. `n = p^e`, `p ≡ -1 (mod 25)`.
//!
//! The type and rank are facts about the class group that this crate does not
//! compute, so every prediction is reported as an implication from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo5::CycInt;
use crate::error::{Error, Result};
use crate::nt::{self, require_prime, v5};
use crate::splitting::{self, field_kind, is_second_kind_residue, FieldKind, Kind};
use crate::symbols::{symbol_at_rational_prime, SymbolValue};

/// Strip fifth powers from `m`. Errors if `m ≤ 1` or `m` is a perfect fifth power.
pub fn normalize_radicand(m: u64) -> Result<u64> {
    if m <= 1 {
        return Err(Error::InvalidArgument(format!(
            "radicand {m} must exceed 1"
        )));
    }
    let n: u64 = nt::factor(m)
        .into_iter()
        .map(|(p, e)| p.pow(e % 5))
        .product();
    if n == 1 {
        return Err(Error::Degenerate(m));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum RadicandCase {
    Case1 { e: u32, p: u64 },
    Case2 { p: u64, e: u32, q: u64 },
    Case3 { p: u64, e: u32 },
    Uncovered { reason: String },
}

impl RadicandCase {
    pub fn number(&self) -> Option<u8> {
        match self {
            RadicandCase::Case1 { .. } => Some(1),
            RadicandCase::Case2 { .. } => Some(2),
            RadicandCase::Case3 { .. } => Some(3),
            RadicandCase::Uncovered { .. } => None,
        }
    }

    /// The prime `p ≡ -1 (mod 5)` of the radicand.
    pub fn p(&self) -> Option<u64> {
        match *self {
            RadicandCase::Case1 { p, .. }
            | RadicandCase::Case2 { p, .. }
            | RadicandCase::Case3 { p, .. } => Some(p),
            RadicandCase::Uncovered { .. } => None,
        }
    }

    pub fn q(&self) -> Option<u64> {
        match *self {
            RadicandCase::Case2 { q, .. } => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for RadicandCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadicandCase::Case1 { e, p } => write!(f, "case 1: n = 5^{e}·{p}"),
            RadicandCase::Case2 { p, e, q } => write!(f, "case 2: n = {p}^{e}·{q}"),
            RadicandCase::Case3 { p, e } => write!(f, "case 3: n = {p}^{e}"),
            RadicandCase::Uncovered { reason } => write!(f, "uncovered: {reason}"),
        }
    }
}

/// Automorphism applied to a class: none or `1 - τ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Twist {
    None,
    OneMinusTauSquared,
}

/// A formal ideal class `[X]` or `[X]^(1-τ²)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExpr {
    /// Ideal name, e.g. `P1`, `L`, `B1B2B3B4B5`.
    pub ideal: String,
    /// The rational prime below the ideal, `None` for an auxiliary prime not yet chosen.
    pub above: Option<u64>,
    /// Labels of the entries of `split_in_k(above, n)` the ideal refers to.
    pub pattern_labels: Vec<String>,
    pub twist: Twist,
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.ideal)?;
        if self.twist == Twist::OneMinusTauSquared {
            f.write_str("^(1-τ²)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet(pub Vec<ClassExpr>);

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("⟩")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDescription {
    /// Hypotheses on `C_{k,5}` under which the generators are claimed.
    pub premise: String,
    pub primary: GeneratorSet,
    pub alternates: Vec<GeneratorSet>,
}

impl fmt::Display for GeneratorDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "if {} then C_k,5 = {}", self.premise, self.primary)?;
        for alt in &self.alternates {
            write!(f, " = {alt}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Flag,
}

/// One non-residue hypothesis, e.g. "5 is not a quintic residue modulo p".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    /// The base whose residue character is tested.
    pub base: u64,
    pub modulus: u64,
    pub asserted: String,
    /// Symbol exponents at each prime above the modulus.
    pub per_prime: Vec<SymbolValue>,
    /// Symbol at `pO`.
    pub computed: SymbolValue,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub n: u64,
    pub case: RadicandCase,
    /// Congruence facts the case decision was read from.
    pub evidence: BTreeMap<String, u64>,
    pub kind: FieldKind,
    /// `q* ∈ {0, 1, 2}`, fixed per case (absent when uncovered).
    pub q_star: Option<u8>,
    pub lambda_ramified: bool,
    pub generators: Option<GeneratorDescription>,
    pub auxiliary_l: Option<u64>,
    pub hypotheses: Vec<HypothesisCheck>,
}

const PREMISE: &str = "C_k,5 has type (5,5) and rank C_k,5^(σ) = 1";

fn is_minus_one_mod5(p: u64) -> bool {
    p % 5 == 4
}

fn is_plus_minus_two_mod5(q: u64) -> bool {
    matches!(q % 5, 2 | 3)
}

/// Exponent `j` with `e·j ≡ 1 (mod 5)`.
fn inverse_mod5(e: u32) -> u32 {
    (1..5).find(|j| (e * j) % 5 == 1).unwrap()
}

/// Decide which case `n` falls into. `n` must be fifth-power-free.
///
/// A radicand whose designated single prime carries an exponent `e ≠ 1` is
/// first replaced by the equivalent radicand of `Q(⁵√n) = Q(⁵√(n^j))`,
/// `j ≡ e⁻¹ (mod 5)`; the replacement is recorded in the evidence.
pub fn detect_case(n: u64) -> Result<(RadicandCase, BTreeMap<String, u64>)> {
    splitting::validate_radicand(n)?;
    let fac = nt::factor(n);
    let mut ev = BTreeMap::new();
    ev.insert("n mod 25".to_string(), n % 25);
    let uncovered = |reason: String| RadicandCase::Uncovered { reason };

    let case = match fac.as_slice() {
        [(p, e)] if *p != 5 => {
            ev.insert("p mod 5".into(), p % 5);
            ev.insert("p mod 25".into(), p % 25);
            if p % 25 == 24 {
                RadicandCase::Case3 { p: *p, e: *e }
            } else {
                uncovered(format!("single prime {p} is not ≡ -1 (mod 25)"))
            }
        }
        [(a, ea), (b, eb)] => {
            let (five_or_q, ex_q, p, ex_p) =
                if *a == 5 || is_plus_minus_two_mod5(*a) && is_minus_one_mod5(*b) {
                    (*a, *ea, *b, *eb)
                } else {
                    (*b, *eb, *a, *ea)
                };
            ev.insert("p mod 5".into(), p % 5);
            ev.insert("p mod 25".into(), p % 25);
            if five_or_q == 5 {
                classify_case1(p, ex_p, ex_q, &mut ev)
            } else {
                classify_case2(n, p, ex_p, five_or_q, ex_q, &mut ev)
            }
        }
        [(5, _)] => uncovered("n is a power of 5".into()),
        _ => uncovered(format!("n has {} distinct prime factors", fac.len())),
    };
    Ok((case, ev))
}

fn classify_case1(p: u64, ex_p: u32, ex_5: u32, ev: &mut BTreeMap<String, u64>) -> RadicandCase {
    let reason = |r: String| RadicandCase::Uncovered { reason: r };
    if !is_minus_one_mod5(p) {
        return reason(format!("{p} is not ≡ -1 (mod 5)"));
    }
    if p % 25 == 24 {
        return reason(format!("{p} ≡ -1 (mod 25)"));
    }
    let j = inverse_mod5(ex_p);
    let e = (ex_5 * j) % 5;
    if j != 1 {
        ev.insert("equivalent radicand".into(), 5u64.pow(e) * p);
    }
    RadicandCase::Case1 { e, p }
}

fn classify_case2(
    n: u64,
    p: u64,
    ex_p: u32,
    q: u64,
    ex_q: u32,
    ev: &mut BTreeMap<String, u64>,
) -> RadicandCase {
    let reason = |r: String| RadicandCase::Uncovered { reason: r };
    ev.insert("q mod 5".into(), q % 5);
    ev.insert("q mod 25".into(), q % 25);
    if !is_minus_one_mod5(p) || !is_plus_minus_two_mod5(q) {
        return reason(format!(
            "need one prime ≡ -1 and one ≡ ±2 (mod 5), got {p} and {q}"
        ));
    }
    if p % 25 == 24 {
        return reason(format!("{p} ≡ -1 (mod 25)"));
    }
    if matches!(q % 25, 7 | 18) {
        return reason(format!("{q} ≡ ±7 (mod 25)"));
    }
    if !is_second_kind_residue(n) {
        return reason(format!("n ≡ {} (mod 25) is not ±1, ±7", n % 25));
    }
    let j = inverse_mod5(ex_q);
    let e = (ex_p * j) % 5;
    if j != 1 {
        ev.insert("equivalent radicand".into(), p.pow(e) * q);
    }
    RadicandCase::Case2 { p, e, q }
}

fn labels(p: u64, n: u64, take: std::ops::Range<usize>) -> Result<Vec<String>> {
    let pat = splitting::split_in_k(p, n)?;
    Ok(pat.entries[take].iter().map(|x| x.label.clone()).collect())
}

fn class(ideal: &str, above: Option<u64>, pattern_labels: Vec<String>, twist: Twist) -> ClassExpr {
    ClassExpr {
        ideal: ideal.to_string(),
        above,
        pattern_labels,
        twist,
    }
}

fn generators_for(
    n: u64,
    case: &RadicandCase,
    l: Option<u64>,
) -> Result<Option<GeneratorDescription>> {
    let aux = |l: Option<u64>| -> Result<ClassExpr> {
        let pl = match l {
            Some(l) => labels(l, n, 0..1)?,
            None => Vec::new(),
        };
        Ok(class("L", l, pl, Twist::OneMinusTauSquared))
    };
    let desc = match *case {
        RadicandCase::Case1 { p, .. } | RadicandCase::Case2 { p, .. } => {
            let p1 = class("P1", Some(p), labels(p, n, 0..1)?, Twist::None);
            let p2 = class("P2", Some(p), labels(p, n, 1..2)?, Twist::None);
            let third = match case {
                RadicandCase::Case1 { .. } => class("I", Some(5), labels(5, n, 0..1)?, Twist::None),
                _ => {
                    let q = case.q().unwrap();
                    class("Q", Some(q), labels(q, n, 0..1)?, Twist::None)
                }
            };
            let lc = aux(l)?;
            GeneratorDescription {
                premise: PREMISE.into(),
                primary: GeneratorSet(vec![p1, lc.clone()]),
                alternates: vec![
                    GeneratorSet(vec![p2, lc.clone()]),
                    GeneratorSet(vec![third, lc]),
                ],
            }
        }
        RadicandCase::Case3 { .. } => {
            let all = labels(5, n, 0..5)?;
            let b = |i: usize| {
                class(
                    &format!("B{}", i + 1),
                    Some(5),
                    vec![all[i].clone()],
                    Twist::None,
                )
            };
            let product = class("B1B2B3B4B5", Some(5), all.clone(), Twist::None);
            let mut tw = b(0);
            tw.twist = Twist::OneMinusTauSquared;
            GeneratorDescription {
                premise: PREMISE.into(),
                primary: GeneratorSet(vec![b(0), b(1)]),
                alternates: vec![GeneratorSet(vec![product, tw])],
            }
        }
        RadicandCase::Uncovered { .. } => return Ok(None),
    };
    Ok(Some(desc))
}

/// Classify a fifth-power-free radicand `n > 1`.
pub fn classify(n: u64) -> Result<CaseReport> {
    let (case, evidence) = detect_case(n)?;
    let kind = field_kind(n)?;
    let q_star = match case {
        RadicandCase::Case1 { .. } | RadicandCase::Case2 { .. } => Some(1),
        RadicandCase::Case3 { .. } => Some(2),
        RadicandCase::Uncovered { .. } => None,
    };
    let generators = generators_for(n, &case, None)?;
    Ok(CaseReport {
        n,
        lambda_ramified: kind.kind == Kind::First,
        case,
        evidence,
        kind,
        q_star,
        generators,
        auxiliary_l: None,
        hypotheses: Vec::new(),
    })
}

fn non_residue_check(name: String, base: u64, modulus: u64) -> Result<HypothesisCheck> {
    let s = symbol_at_rational_prime(&CycInt::from_int(base), modulus)?;
    let status = if s.product.is_trivial() {
        CheckStatus::Flag
    } else {
        CheckStatus::Pass
    };
    Ok(HypothesisCheck {
        name,
        base,
        modulus,
        asserted: "nontrivial".into(),
        per_prime: s.per_prime.iter().map(|(_, v)| *v).collect(),
        computed: s.product,
        status,
    })
}

/// Attach the auxiliary prime `l` and compute every non-residue hypothesis of
/// the report's case. Trivial computed symbols are `FLAG`, never dropped.
pub fn hypothesis_check(report: &CaseReport, l: Option<u64>) -> Result<CaseReport> {
    let mut out = report.clone();
    out.hypotheses.clear();
    let needs_l = matches!(
        report.case,
        RadicandCase::Case1 { .. } | RadicandCase::Case2 { .. }
    );
    if let Some(l) = l {
        require_prime(l)?;
        if Some(l) == report.case.p() || Some(l) == report.case.q() {
            return Err(Error::InvalidArgument(format!(
                "auxiliary prime {l} must differ from p and q"
            )));
        }
    }
    match report.case {
        RadicandCase::Case1 { p, .. } => {
            out.hypotheses.push(non_residue_check(
                format!("5 is not a quintic residue modulo {p}"),
                5,
                p,
            )?);
        }
        RadicandCase::Case2 { p, q, .. } => {
            out.hypotheses.push(non_residue_check(
                format!("{q} is not a quintic residue modulo {p}"),
                q,
                p,
            )?);
        }
        RadicandCase::Case3 { p, .. } => {
            out.hypotheses.push(non_residue_check(
                format!("5 is not a quintic residue modulo {p}"),
                5,
                p,
            )?);
        }
        RadicandCase::Uncovered { .. } => return Ok(out),
    }
    if needs_l {
        let p = report.case.p().unwrap();
        match l {
            Some(l) => {
                out.hypotheses.push(non_residue_check(
                    format!("{l} is not a quintic residue modulo {p}"),
                    l,
                    p,
                )?);
                out.auxiliary_l = Some(l);
                out.generators = generators_for(report.n, &report.case, Some(l))?;
            }
            None => {
                return Err(Error::InvalidArgument(
                    "this case needs an auxiliary prime l".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// First `count` candidate auxiliary primes (skipping `p`, `q`) with their computed hypothesis.
pub fn suggest_auxiliary(report: &CaseReport, count: usize) -> Result<Vec<HypothesisCheck>> {
    let Some(p) = report.case.p() else {
        return Ok(Vec::new());
    };
    let q = report.case.q();
    let mut out = Vec::new();
    let mut l = 2;
    while out.len() < count {
        if nt::is_prime(l) && l != p && Some(l) != q {
            out.push(non_residue_check(
                format!("{l} is not a quintic residue modulo {p}"),
                l,
                p,
            )?);
        }
        l += 1;
    }
    Ok(out)
}

/// Unit index and class number of `Γ`, from an oracle or a fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub u_value: u64,
    pub h_gamma: u64,
    pub source: DataSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSource {
    Oracle,
    Fixture,
    Manual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub v5_u: u32,
    pub v5_h_gamma: u32,
    /// `v5(h_k) = v5(u) - 1 + 4(v5(h_Γ) - 1)` from `h_k = (u/5)(h_Γ/5)⁴`.
    pub v5_h_k: i64,
    /// `C_{k,5} ≅ (5,5)` is possible exactly when `v5(u) = 3` and `v5(h_Γ) = 1`.
    pub type_5_5: bool,
    /// `(v5(u), v5(h_Γ))` solves `a + 4b = 7`, whose only solution with `a ≤ 6` is `(3, 1)`.
    pub solves_order_equation: bool,
}

pub fn predicted_structure(data: &ClassData) -> Result<StructureVerdict> {
    let u = data.u_value;
    if u == 0 || 15_625 % u != 0 {
        return Err(Error::InvalidArgument(format!(
            "u = {u} does not divide 5^6"
        )));
    }
    if data.h_gamma == 0 {
        return Err(Error::InvalidArgument("h_Γ must be positive".into()));
    }
    let v5_u = v5(u);
    let v5_h_gamma = v5(data.h_gamma);
    let v5_h_k = v5_u as i64 - 1 + 4 * (v5_h_gamma as i64 - 1);
    Ok(StructureVerdict {
        v5_u,
        v5_h_gamma,
        v5_h_k,
        type_5_5: v5_u == 3 && v5_h_gamma == 1,
        solves_order_equation: v5_u + 4 * v5_h_gamma == 7,
    })
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "{}", self.case)?;
        for (k, v) in &self.evidence {
            writeln!(f, "  {k} = {v}")?;
        }
        writeln!(
            f,
            "kind: {} (R = {}, f^4 = {}), λ ramified in k/k0: {}",
            self.kind.kind, self.kind.radical_r, self.kind.conductor_f4, self.lambda_ramified
        )?;
        if let Some(q) = self.q_star {
            writeln!(f, "q* = {q}")?;
        }
        if let Some(l) = self.auxiliary_l {
            writeln!(f, "auxiliary l = {l}")?;
        }
        if let Some(g) = &self.generators {
            writeln!(f, "{g}")?;
        }
        for h in &self.hypotheses {
            writeln!(
                f,
                "  [{}] {}: computed {} (per prime: {}), expected {}",
                match h.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Flag => "FLAG",
                },
                h.name,
                h.computed,
                h.per_prime
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                h.asserted
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_radicand(608).unwrap(), 19);
        assert_eq!(normalize_radicand(95).unwrap(), 95);
        assert_eq!(normalize_radicand(32), Err(Error::Degenerate(32)));
        assert!(normalize_radicand(1).is_err());
    }

    #[test]
    fn classify_95() {
        let r = classify(95).unwrap();
        assert_eq!(r.case, RadicandCase::Case1 { e: 1, p: 19 });
        assert_eq!(r.q_star, Some(1));
        assert_eq!(r.kind.kind, Kind::First);
        assert!(r.lambda_ramified);
        let g = r.generators.unwrap();
        assert_eq!(g.primary.to_string(), "⟨[P1], [L]^(1-τ²)⟩");
        assert_eq!(g.primary.0[0].pattern_labels, vec!["L1".to_string()]);
        assert_eq!(g.alternates[1].to_string(), "⟨[I], [L]^(1-τ²)⟩");
    }

    #[test]
    fn classify_57_and_149_and_7() {
        let r = classify(57).unwrap();
        assert_eq!(r.case, RadicandCase::Case2 { p: 19, e: 1, q: 3 });
        assert_eq!(r.kind.kind, Kind::Second);
        assert_eq!(r.q_star, Some(1));
        let r = classify(149).unwrap();
        assert_eq!(r.case, RadicandCase::Case3 { p: 149, e: 1 });
        assert_eq!(r.q_star, Some(2));
        assert_eq!(r.generators.unwrap().primary.to_string(), "⟨[B1], [B2]⟩");
        assert!(matches!(
            classify(7).unwrap().case,
            RadicandCase::Uncovered { .. }
        ));
        assert!(r.kind.kind == Kind::Second);
    }

    #[test]
    fn equivalent_radicand_is_recorded() {
        // 19²·3 ≡ 1083 ≡ 8 (mod 25): not second kind, uncovered
        assert!(matches!(
            classify(1083).unwrap().case,
            RadicandCase::Uncovered { .. }
        ));
        // 19·3² = 171: squaring class; cube gives 19³·3⁶ ~ 19³·3
        let r = classify(171).unwrap();
        assert_eq!(r.n % 25, 21);
        assert!(matches!(r.case, RadicandCase::Uncovered { .. }));
        // 5²·19 and 5·19² = 1805 ~ (5·19²)³ = 5³·19⁶ ~ 5³·19
        let r = classify(1805).unwrap();
        assert_eq!(r.case, RadicandCase::Case1 { e: 3, p: 19 });
        assert_eq!(r.evidence["equivalent radicand"], 125 * 19);
    }

    #[test]
    fn hypotheses_are_flagged_under_trivial_symbols() {
        let r = hypothesis_check(&classify(95).unwrap(), Some(2)).unwrap();
        assert_eq!(r.hypotheses.len(), 2);
        assert!(r.hypotheses.iter().all(|h| h.status == CheckStatus::Flag));
        assert_eq!(r.hypotheses[0].base, 5);
        assert_eq!(r.hypotheses[1].base, 2);
        assert_eq!(r.auxiliary_l, Some(2));
        let r = hypothesis_check(&classify(57).unwrap(), Some(53)).unwrap();
        assert_eq!(
            r.hypotheses.iter().map(|h| h.base).collect::<Vec<_>>(),
            vec![3, 53]
        );
        let r = hypothesis_check(&classify(149).unwrap(), None).unwrap();
        assert_eq!(r.hypotheses.len(), 1);
        assert_eq!(r.hypotheses[0].base, 5);
        assert!(hypothesis_check(&classify(95).unwrap(), Some(19)).is_err());
        assert!(hypothesis_check(&classify(95).unwrap(), Some(4)).is_err());
        assert!(hypothesis_check(&classify(95).unwrap(), None).is_err());
    }

    #[test]
    fn structure_examples() {
        let v = |u, h| {
            predicted_structure(&ClassData {
                u_value: u,
                h_gamma: h,
                source: DataSource::Manual,
            })
            .unwrap()
        };
        let a = v(125, 5);
        assert!(a.type_5_5 && a.solves_order_equation);
        assert_eq!(a.v5_h_k, 2);
        let b = v(5, 5);
        assert!(!b.type_5_5);
        assert_eq!(b.v5_h_k, 0);
        let c = v(15_625, 25);
        assert!(!c.type_5_5);
        assert_eq!(c.v5_h_k, 9);
        assert!(predicted_structure(&ClassData {
            u_value: 10,
            h_gamma: 5,
            source: DataSource::Manual
        })
        .is_err());
        assert!(predicted_structure(&ClassData {
            u_value: 5,
            h_gamma: 0,
            source: DataSource::Manual
        })
        .is_err());
    }

    #[test]
    fn classify_is_total_on_small_radicands() {
        for n in 2..5000u64 {
            if !nt::is_fifth_power_free(n) {
                continue;
            }
            let r = classify(n).unwrap();
            assert_eq!(r.generators.is_some(), r.case.number().is_some(), "{n}");
            if let RadicandCase::Case2 { .. } = r.case {
                assert_eq!(r.kind.kind, Kind::Second);
            }
        }
    }
}

//! Salem certification.
//!
//! Two independent routes decide whether the large root of a monic
//! self-reciprocal integer polynomial is a Salem number:
//!
//! * the power criterion: some `P_n` (`n >= 2`) satisfies the `l = 1` case of
//!   Vieira's coefficient inequality, which forces `d - 2` simple roots of
//!   `P_n` onto the unit circle;
//! * the direct route: exact Sturm counts of unimodular roots and of real
//!   roots above one.
//!
//! Neither route factors. Irreducibility comes from squarefreeness plus
//! absence of cyclotomic factors: with one root outside the circle, any
//! proper factor would have all roots unimodular, hence be cyclotomic.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic_factors, IntPolynomial};
use crate::numeric::{big_ratio, ln_abs, polish_real_root};
use crate::powerpoly::PowerSequence;
use crate::rootcount::{count_roots_above_one, isolate_largest_root_above_one, unimodular_root_count};

/// Vieira's inequality `|a_{d-l}| > (1/2)(d/(d-2l)) Σ_{k≠l,d-l} |a_k|`,
/// held in the cross-multiplied integer form
/// `2(d-2l)|a_{d-l}| > d Σ_{k≠l,d-l} |a_k|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VieiraCheck {
    pub l: usize,
    #[serde(serialize_with = "as_decimal")]
    pub lhs: BigInt,
    /// `2(d-2l)` times the right-hand side, i.e. `d Σ|a_k|`.
    #[serde(serialize_with = "as_decimal")]
    pub rhs_doubled: BigInt,
    pub satisfied: bool,
}

pub(crate) fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn vieira_condition(p: &IntPolynomial, l: usize) -> Result<VieiraCheck> {
    if !p.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    let d = p.degree();
    if 2 * l >= d {
        return Err(Error::BadL { l, degree: d });
    }
    let coeffs = p.coeffs();
    let lhs = coeffs[d - l].abs();
    let sum: BigInt = coeffs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != l && k != d - l)
        .map(|(_, c)| c.abs())
        .sum();
    let rhs_doubled = sum * BigInt::from(d);
    let satisfied = &lhs * BigInt::from(2 * (d - 2 * l)) > rhs_doubled;
    Ok(VieiraCheck { l, lhs, rhs_doubled, satisfied })
}

/// The `l = 1` condition used as the power criterion.
pub fn satisfies_power_condition(p: &IntPolynomial) -> bool {
    p.degree() >= 4 && vieira_condition(p, 1).is_ok_and(|v| v.satisfied)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Salem,
    NotSalem,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PowerCriterion,
    Direct,
    Both,
}

/// Coefficient-growth checks for one `P_n` of a Salem polynomial:
/// the lower bound `τ^n + τ^-n <= |a_{d-1,n}| + d - 2`, the envelope
/// `|a_{d-k-1,n}| <= C(d-2,k)(|a_{d-1,n}| + d - 2) + C(d-2,k-1) + C(d-2,k+1)`
/// for `k = 1..=d-3`, and the Graeffe estimates of `τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthCheck {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub a_top: BigInt,
    pub lower_bound_holds: bool,
    pub envelope_holds: bool,
    /// Values of `k` where the envelope fails.
    pub envelope_violations: Vec<usize>,
    /// `a_{d-1,n} / a_{d-1,n-1}`, when the previous polynomial is known.
    pub graeffe_ratio: Option<f64>,
    /// `|a_{d-1,n}|^(1/n)`.
    pub graeffe_root: Option<f64>,
}

impl GrowthCheck {
    pub fn holds(&self) -> bool {
        self.lower_bound_holds && self.envelope_holds
    }
}

/// Relative slack on `τ^n` in the lower bound, absorbing float error in τ.
pub const LOWER_BOUND_SLACK: f64 = 1e-6;

/// Largest real root of `p` above one, to about `1e-13`, or `None`.
pub fn tau_estimate(p: &IntPolynomial) -> Option<f64> {
    let (lo, hi) = isolate_largest_root_above_one(p, 45)?;
    let lo = lo.to_f64()?;
    let hi = hi.to_f64()?;
    Some(polish_real_root(&p.squarefree_part(), lo, hi))
}

/// Runs growth checks for a fixed polynomial with τ estimated once.
#[derive(Clone, Debug)]
pub struct GrowthChecker {
    tau: Option<f64>,
}

impl GrowthChecker {
    pub fn new(p: &IntPolynomial) -> Self {
        Self { tau: tau_estimate(p) }
    }

    pub fn with_tau(tau: Option<f64>) -> Self {
        Self { tau }
    }

    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    pub fn check(&self, n: u64, p_n: &IntPolynomial, p_prev: Option<&IntPolynomial>) -> GrowthCheck {
        let d = p_n.degree();
        let a_top = p_n.coeff(d.saturating_sub(1));
        let slack_total = a_top.abs() + BigInt::from(d.saturating_sub(2));

        let lower_bound_holds = match self.tau {
            Some(tau) if tau > 1.0 => {
                // compare logs so that τ^n may exceed the f64 range
                let ln_tau_n = n as f64 * tau.ln();
                let ln_lhs = ln_tau_n + (1.0 - LOWER_BOUND_SLACK + (-2.0 * ln_tau_n).exp()).ln();
                ln_lhs <= ln_abs(&slack_total)
            }
            _ => true,
        };

        let mut envelope_violations = Vec::new();
        if d >= 4 {
            let m = BigInt::from(d - 2);
            for k in 1..=d - 3 {
                let bound = binomial(m.clone(), BigInt::from(k)) * &slack_total
                    + binomial(m.clone(), BigInt::from(k - 1))
                    + binomial(m.clone(), BigInt::from(k + 1));
                if p_n.coeff(d - k - 1).abs() > bound {
                    envelope_violations.push(k);
                }
            }
        }

        let graeffe_ratio = p_prev
            .map(|prev| prev.coeff(prev.degree().saturating_sub(1)))
            .filter(|prev_top| !prev_top.is_zero())
            .map(|prev_top| big_ratio(&a_top, &prev_top));
        let graeffe_root = (!a_top.is_zero() && n > 0).then(|| (ln_abs(&a_top) / n as f64).exp());

        GrowthCheck {
            n,
            a_top,
            lower_bound_holds,
            envelope_holds: envelope_violations.is_empty(),
            envelope_violations,
            graeffe_ratio,
            graeffe_root,
        }
    }
}

/// Growth checks for `P_n` of `p`, estimating τ from `p`.
pub fn growth_checks(
    p: &IntPolynomial,
    n: u64,
    p_n: &IntPolynomial,
    p_prev: Option<&IntPolynomial>,
) -> GrowthCheck {
    GrowthChecker::new(p).check(n, p_n, p_prev)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub method: Method,
    pub witness_n: Option<u64>,
    pub unimodular_count: Option<usize>,
    pub roots_above_one: Option<usize>,
    pub cyclotomic_free: Option<bool>,
    pub tau_estimate: Option<f64>,
    pub failure_reason: Option<String>,
    #[serde(rename = "bounds")]
    pub bound_checks: Vec<GrowthCheck>,
}

impl CertificateReport {
    fn new(method: Method) -> Self {
        Self {
            verdict: Verdict::Inconclusive,
            method,
            witness_n: None,
            unimodular_count: None,
            roots_above_one: None,
            cyclotomic_free: None,
            tau_estimate: None,
            failure_reason: None,
            bound_checks: Vec::new(),
        }
    }

    fn reject(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::NotSalem;
        self.failure_reason = Some(reason.into());
        self
    }
}

/// Checks shared by both certifiers. `Err(report)` carries a NotSalem
/// verdict naming the first failed check.
fn structural_checks(p: &IntPolynomial, mut report: CertificateReport) -> std::result::Result<CertificateReport, CertificateReport> {
    if !p.is_reciprocal() {
        return Err(report.reject("not self-reciprocal"));
    }
    let d = p.degree();
    if d % 2 == 1 {
        return Err(report.reject(format!("odd degree {d}")));
    }
    if d < 4 {
        return Err(report.reject(format!("degree {d} is below 4")));
    }
    if !p.is_squarefree() {
        return Err(report.reject("not squarefree"));
    }
    let factors = cyclotomic_factors(p);
    report.cyclotomic_free = Some(factors.is_empty());
    if let Some(k) = factors.first() {
        return Err(report.reject(format!("cyclotomic factor Phi_{k}")));
    }
    let above = count_roots_above_one(p).expect("squarefree checked above");
    report.roots_above_one = Some(above);
    report.tau_estimate = tau_estimate(p);
    if above == 0 {
        return Err(report.reject("no real root greater than 1"));
    }
    Ok(report)
}

/// Scans `n = 2..=max_n` for the least `P_n` passing the power criterion.
///
/// Growth bounds are checked at every `n` before the criterion; a violation
/// proves the root is not a Salem number. Exhausting `max_n` without a
/// witness or a violation gives `Inconclusive`.
pub fn certify_power_criterion(p: &IntPolynomial, max_n: u64) -> Result<CertificateReport> {
    p.require_monic()?;
    let report = match structural_checks(p, CertificateReport::new(Method::PowerCriterion)) {
        Ok(r) => r,
        Err(rejected) => return Ok(rejected),
    };
    let mut report = report;
    let d = p.degree();
    let checker = GrowthChecker::with_tau(report.tau_estimate);
    let mut prev = p.clone();
    for step in PowerSequence::starting_at(p, 2)? {
        if step.n > max_n {
            break;
        }
        let check = checker.check(step.n, &step.poly, Some(&prev));
        let holds = check.holds();
        report.bound_checks.push(check);
        if !holds {
            return Ok(report.reject(format!("coefficient growth bound violated at n = {}", step.n)));
        }
        if satisfies_power_condition(&step.poly)
            && step.poly.is_reciprocal()
            && step.poly.degree() == d
            && step.poly.is_squarefree()
            && cyclotomic_factors(&step.poly).is_empty()
        {
            report.unimodular_count = Some(unimodular_root_count(&step.poly)?);
            report.witness_n = Some(step.n);
            report.verdict = Verdict::Salem;
            return Ok(report);
        }
        prev = step.poly;
    }
    report.failure_reason = Some(format!("no witness for n in [2, {max_n}]"));
    Ok(report)
}

/// Exact certification from the definition: self-reciprocal, even degree at
/// least 4, squarefree, no cyclotomic factor, exactly one real root above one
/// and `d - 2` roots on the unit circle.
pub fn certify_direct(p: &IntPolynomial) -> Result<CertificateReport> {
    p.require_monic()?;
    let mut report = match structural_checks(p, CertificateReport::new(Method::Direct)) {
        Ok(r) => r,
        Err(rejected) => return Ok(rejected),
    };
    let d = p.degree();
    let above = report.roots_above_one.unwrap_or(0);
    let on_circle = unimodular_root_count(p)?;
    report.unimodular_count = Some(on_circle);
    if above != 1 {
        return Ok(report.reject(format!("{above} real roots greater than 1")));
    }
    if on_circle != d - 2 {
        return Ok(report.reject(format!("{on_circle} unimodular roots, expected {}", d - 2)));
    }
    report.verdict = Verdict::Salem;
    Ok(report)
}

/// Runs both certifiers. The direct verdict stands unless the power criterion
/// reaches a definite verdict that contradicts it, which is reported as
/// `Inconclusive`.
pub fn certify_both(p: &IntPolynomial, max_n: u64) -> Result<CertificateReport> {
    let direct = certify_direct(p)?;
    let power = certify_power_criterion(p, max_n)?;
    let mut report = CertificateReport {
        method: Method::Both,
        witness_n: power.witness_n,
        bound_checks: power.bound_checks,
        ..direct.clone()
    };
    if power.verdict != Verdict::Inconclusive && power.verdict != direct.verdict {
        report.verdict = Verdict::Inconclusive;
        report.failure_reason = Some(format!(
            "certifiers disagree: direct {:?}, power criterion {:?}",
            direct.verdict, power.verdict
        ));
    }
    Ok(report)
}

/// `2 d^2 + 4`: covers every root-of-unity order `k` with `φ(k) <= d`.
pub fn default_period_bound(d: usize) -> u64 {
    2 * (d as u64) * (d as u64) + 4
}

/// True iff two of `P_1, ..., P_bound` coincide.
///
/// A repeat forces every root onto the unit circle (compare the largest
/// modulus), so once a coefficient exceeds the binomial bound that
/// unimodular roots impose, no repeat can ever occur and the scan stops.
pub fn detect_cyclotomic_by_periodicity(p: &IntPolynomial, period_bound: Option<u64>) -> Result<bool> {
    p.require_monic()?;
    let d = p.degree();
    let bound = period_bound.unwrap_or_else(|| default_period_bound(d));
    let envelope: Vec<BigInt> = (0..=d)
        .map(|k| binomial(BigInt::from(d), BigInt::from(k)))
        .collect();
    let mut seen = HashSet::new();
    for step in PowerSequence::new(p)? {
        if step.n > bound {
            break;
        }
        if step.poly.coeffs().iter().zip(&envelope).any(|(c, e)| c.abs() > *e) {
            return Ok(false);
        }
        if !seen.insert(step.poly.into_coeffs()) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::cyclotomic;
    use crate::powerpoly::power_min_poly;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn row1() -> IntPolynomial {
        poly(&[1, -1, -1, -1, 1])
    }

    #[test]
    fn vieira_examples() {
        let p2 = poly(&[1, -3, 1, -3, 1]);
        let v = vieira_condition(&p2, 1).unwrap();
        // 2*2*3 > 4*(1+1+1) is false
        assert_eq!((v.lhs.clone(), v.rhs_doubled.clone(), v.satisfied), (BigInt::from(3), BigInt::from(12), false));
        let p9 = power_min_poly(&row1(), 9).unwrap().poly;
        assert!(vieira_condition(&p9, 1).unwrap().satisfied);
        assert!(!vieira_condition(&cyclotomic(5), 1).unwrap().satisfied);
    }

    #[test]
    fn vieira_errors() {
        assert_eq!(vieira_condition(&poly(&[2, -3, 1]), 0), Err(Error::NotReciprocal));
        assert_eq!(vieira_condition(&row1(), 2), Err(Error::BadL { l: 2, degree: 4 }));
        // l = 0: |a_d| = 1 against the rest
        assert!(!vieira_condition(&row1(), 0).unwrap().satisfied);
    }

    #[test]
    fn power_certifier_row1() {
        let r = certify_power_criterion(&row1(), 50).unwrap();
        assert_eq!(r.verdict, Verdict::Salem);
        assert_eq!(r.witness_n, Some(9));
        assert_eq!(r.unimodular_count, Some(2));
        assert_eq!(r.bound_checks.len(), 8);
        assert!((r.tau_estimate.unwrap() - 1.722_083_81).abs() < 1e-8);
    }

    #[test]
    fn power_certifier_inconclusive_below_witness() {
        let r = certify_power_criterion(&row1(), 8).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.witness_n.is_none());
    }

    #[test]
    fn cyclotomic_product_rejected() {
        let p = &cyclotomic(5) * &cyclotomic(12);
        let r = certify_power_criterion(&p, 10).unwrap();
        assert_eq!(r.verdict, Verdict::NotSalem);
        assert!(r.failure_reason.unwrap().contains("cyclotomic"));
        assert_eq!(certify_direct(&p).unwrap().verdict, Verdict::NotSalem);
    }

    #[test]
    fn direct_certifier() {
        let row2 = poly(&[1, -1, 0, -1, 0, -1, 1]);
        let r = certify_direct(&row2).unwrap();
        assert_eq!(r.verdict, Verdict::Salem);
        assert_eq!((r.unimodular_count, r.roots_above_one), (Some(4), Some(1)));
        assert_eq!(certify_direct(&cyclotomic(5)).unwrap().verdict, Verdict::NotSalem);
        // x^4 - 2x^3 - 2x + 1 has Q(y) = y^2 - 2y - 2, roots 1 ± √3: one in
        // (-2, 2) and one above 2, so it is a Salem polynomial
        let r = certify_direct(&poly(&[1, -2, 0, -2, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::Salem);
    }

    #[test]
    fn direct_rejections_name_the_check() {
        let reason = |c: &[i64]| certify_direct(&poly(c)).unwrap().failure_reason.unwrap();
        assert_eq!(reason(&[1, 2, 1]), "degree 2 is below 4");
        assert_eq!(reason(&[1, 2, 3, 1]), "not self-reciprocal");
        // (x^2 - 3x + 1)(x^2 - 4x + 1): two roots above one
        assert_eq!(reason(&[1, -7, 14, -7, 1]), "2 real roots greater than 1");
        // (x^2 + 3x + 1)(x^2 + 4x + 1): both large roots are negative
        assert_eq!(reason(&[1, 7, 14, 7, 1]), "no real root greater than 1");
        assert_eq!(certify_direct(&poly(&[2, 1, 2])), Err(Error::NonMonic("2".into())));
    }

    #[test]
    fn growth_checks_row1_n2() {
        let p2 = power_min_poly(&row1(), 2).unwrap().poly;
        let g = growth_checks(&row1(), 2, &p2, Some(&row1()));
        assert!(g.lower_bound_holds && g.envelope_holds);
        // a_{3,2} / a_{3,1} = -3 / -1
        assert_eq!(g.graeffe_ratio, Some(3.0));
    }

    #[test]
    fn growth_bound_detects_non_salem() {
        // two roots above one: the envelope fails once τ_2^n is large
        let p = poly(&[1, -7, 14, -7, 1]);
        let checker = GrowthChecker::new(&p);
        let any_violation = PowerSequence::new(&p)
            .unwrap()
            .take(30)
            .any(|s| !checker.check(s.n, &s.poly, None).holds());
        assert!(any_violation);
        assert_eq!(certify_power_criterion(&p, 30).unwrap().verdict, Verdict::NotSalem);
    }

    #[test]
    fn periodicity() {
        assert!(detect_cyclotomic_by_periodicity(&cyclotomic(5), None).unwrap());
        assert!(!detect_cyclotomic_by_periodicity(&row1(), None).unwrap());
        assert!(detect_cyclotomic_by_periodicity(&poly(&[-1, 0, 1]), None).unwrap());
        // P_7 = P_1 for Φ_5 Φ_12 since 7 is prime to both orders
        let p = &cyclotomic(5) * &cyclotomic(12);
        assert!(!detect_cyclotomic_by_periodicity(&p, Some(6)).unwrap());
        assert!(detect_cyclotomic_by_periodicity(&p, Some(7)).unwrap());
    }
}

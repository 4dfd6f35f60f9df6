//! Exact real-root counting by Sturm sequences, and unit-circle root counts
//! for self-reciprocal polynomials through the substitution `y = x + 1/x`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;

/// Polynomial with exact rational coefficients, ascending, trailing zeros
/// trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Remainder of Euclidean division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlen = divisor.coeffs.len();
        let lc = divisor.coeffs.last().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() >= dlen {
            let q = r.last().unwrap() / lc;
            let shift = r.len() - dlen;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Divides by the absolute value of the leading coefficient. Signs at
    /// every point are unchanged.
    fn sign_normalized(self) -> Self {
        match self.coeffs.last() {
            None => self,
            Some(lc) => {
                let lc = lc.abs();
                Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
            }
        }
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn sign_at(&self, at: &Bound) -> Ordering {
        let Some(lc) = self.coeffs.last() else {
            return Ordering::Equal;
        };
        let lead = if lc.is_positive() { Ordering::Greater } else { Ordering::Less };
        match at {
            Bound::PosInfinity => lead,
            Bound::NegInfinity if self.degree().is_multiple_of(2) => lead,
            Bound::NegInfinity => lead.reverse(),
            Bound::Finite(x) => self.evaluate(x).cmp(&BigRational::zero()),
        }
    }
}

impl From<&IntPolynomial> for RationalPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        Self::new(p.coeffs().iter().cloned().map(BigRational::from_integer).collect())
    }
}

/// Interval endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(v)))
    }
}

/// `q, q', -rem(q, q'), ...` down to the last nonzero remainder.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<RationalPolynomial>,
}

impl SturmChain {
    pub fn new(q: &RationalPolynomial) -> Self {
        let mut polys = vec![q.clone().sign_normalized()];
        if q.is_zero() {
            return Self { polys };
        }
        let mut prev = polys[0].clone();
        let mut cur = q.derivative().sign_normalized();
        while !cur.is_zero() {
            polys.push(cur.clone());
            let next = RationalPolynomial::new(
                prev.rem(&cur).coeffs.into_iter().map(|c| -c).collect(),
            )
            .sign_normalized();
            prev = cur;
            cur = next;
        }
        Self { polys }
    }

    pub fn polys(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    /// Sign variations of the chain at `at`, zeros skipped.
    pub fn variations(&self, at: &Bound) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in self.polys.iter().map(|p| p.sign_at(at)) {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of distinct real roots of `q` in `(lo, hi]`. A non-squarefree `q`
/// is reduced to its squarefree part first.
pub fn count_real_roots(q: &IntPolynomial, lo: &Bound, hi: &Bound) -> usize {
    if q.is_constant() {
        return 0;
    }
    let sf = q.squarefree_part();
    SturmChain::new(&RationalPolynomial::from(&sf)).count(lo, hi)
}

/// `Q` of degree `m` with `P(x) / x^m = Q(x + 1/x)` for a self-reciprocal
/// `P` of degree `2m`.
pub fn trace_transform(p: &IntPolynomial) -> Result<IntPolynomial> {
    if !p.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    let d = p.degree();
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    let m = d / 2;
    // basis[j] = T_j with x^j + x^-j = T_j(x + 1/x)
    let y = IntPolynomial::from_i64s(&[0, 1]);
    let mut basis = vec![IntPolynomial::from_i64s(&[2]), y.clone()];
    for j in 2..=m {
        let next = &(&y * &basis[j - 1]) - &basis[j - 2];
        basis.push(next);
    }
    let mut q = IntPolynomial::new(vec![p.coeff(m)]);
    for j in 1..=m {
        let c = IntPolynomial::new(vec![p.coeff(m + j)]);
        q = &q + &(&c * &basis[j]);
    }
    Ok(q)
}

fn require_reciprocal_even_squarefree(p: &IntPolynomial) -> Result<()> {
    if !p.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    if p.degree() % 2 == 1 {
        return Err(Error::OddDegree(p.degree()));
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Number of roots of `p` on the unit circle `|z| = 1`.
///
/// Roots of the trace transform in `(-2, 2)` each account for a conjugate
/// pair `e^{±it}`; `x = ±1` are checked directly.
pub fn unimodular_root_count(p: &IntPolynomial) -> Result<usize> {
    require_reciprocal_even_squarefree(p)?;
    let q = trace_transform(p)?;
    let mut inside = count_real_roots(&q, &Bound::int(-2), &Bound::int(2));
    if q.evaluate(&BigInt::from(2)).is_zero() {
        inside -= 1;
    }
    let at_one = usize::from(p.evaluate(&BigInt::one()).is_zero());
    let at_minus_one = usize::from(p.evaluate(&BigInt::from(-1)).is_zero());
    Ok(2 * inside + at_one + at_minus_one)
}

/// Number of distinct real roots of a squarefree `p` in `(1, ∞)`.
pub fn count_roots_above_one(p: &IntPolynomial) -> Result<usize> {
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(count_real_roots(p, &Bound::int(1), &Bound::PosInfinity))
}

/// Encloses the largest real root of `p` in `(1, ∞)`, if any, in an interval
/// of width at most `2^-bits` by Sturm bisection. Returns `(lo, hi]`.
pub fn isolate_largest_root_above_one(
    p: &IntPolynomial,
    bits: u32,
) -> Option<(BigRational, BigRational)> {
    if p.is_constant() {
        return None;
    }
    let sf = p.squarefree_part();
    let chain = SturmChain::new(&RationalPolynomial::from(&sf));
    let one = Bound::int(1);
    if chain.count(&one, &Bound::PosInfinity) == 0 {
        return None;
    }
    // Cauchy bound: every root has modulus below 1 + max|a_k / a_d|.
    let lc = BigRational::from_integer(sf.leading().unwrap().abs());
    let max_ratio = sf
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lc)
        .max()
        .unwrap();
    let mut lo = BigRational::one();
    let mut hi = BigRational::one() + max_ratio;
    let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if chain.count(&Bound::Finite(mid.clone()), &Bound::Finite(hi.clone())) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn transform_examples() {
        assert_eq!(trace_transform(&poly(&[1, 0, 1])).unwrap(), poly(&[0, 1]));
        assert_eq!(trace_transform(&poly(&[1, -1, -1, -1, 1])).unwrap(), poly(&[-3, -1, 1]));
        assert_eq!(trace_transform(&poly(&[1, 0, 0, 0, 1])).unwrap(), poly(&[-2, 0, 1]));
        assert_eq!(trace_transform(&poly(&[1, 2, 1, 1])), Err(Error::NotReciprocal));
        assert_eq!(trace_transform(&poly(&[1, 0, 0, 1])), Err(Error::OddDegree(3)));
    }

    #[test]
    fn real_root_counts() {
        let q = poly(&[-3, -1, 1]);
        assert_eq!(count_real_roots(&q, &Bound::int(-2), &Bound::int(2)), 1);
        assert_eq!(count_real_roots(&poly(&[-2, 0, 1]), &Bound::int(-2), &Bound::int(2)), 2);
        assert_eq!(count_real_roots(&poly(&[1, 0, 1]), &Bound::NegInfinity, &Bound::PosInfinity), 0);
        // half-open: root at the right endpoint counts, at the left does not
        let lin = poly(&[-1, 1]);
        assert_eq!(count_real_roots(&lin, &Bound::int(0), &Bound::int(1)), 1);
        assert_eq!(count_real_roots(&lin, &Bound::int(1), &Bound::int(2)), 0);
        // multiplicities are stripped
        let sq = &poly(&[-2, 0, 1]) * &poly(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&sq, &Bound::NegInfinity, &Bound::PosInfinity), 2);
    }

    #[test]
    fn sturm_chain_degrees_decrease() {
        let chain = SturmChain::new(&RationalPolynomial::from(&poly(&[1, -1, -1, -1, 1])));
        let degs: Vec<_> = chain.polys().iter().map(RationalPolynomial::degree).collect();
        assert!(degs.windows(2).all(|w| w[0] > w[1]), "{degs:?}");
    }

    #[test]
    fn unimodular_counts() {
        assert_eq!(unimodular_root_count(&poly(&[1, -1, -1, -1, 1])).unwrap(), 2);
        assert_eq!(unimodular_root_count(&poly(&[1, 1, 1, 1, 1])).unwrap(), 4);
        let lehmer = poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert_eq!(unimodular_root_count(&lehmer).unwrap(), 8);
        assert_eq!(unimodular_root_count(&poly(&[1, -2, 1])), Err(Error::NotSquarefree));
        assert_eq!(unimodular_root_count(&poly(&[1, 0, 0, 1])), Err(Error::OddDegree(3)));
    }

    #[test]
    fn roots_above_one() {
        assert_eq!(count_roots_above_one(&poly(&[1, -1, -1, -1, 1])).unwrap(), 1);
        assert_eq!(count_roots_above_one(&poly(&[1, 1, 1, 1, 1])).unwrap(), 0);
        assert_eq!(count_roots_above_one(&poly(&[1, -3, 1])).unwrap(), 1);
        assert_eq!(count_roots_above_one(&poly(&[1, -2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn isolation_brackets_tau() {
        let (lo, hi) = isolate_largest_root_above_one(&poly(&[1, -1, -1, -1, 1]), 40).unwrap();
        let lo: f64 = num_traits::ToPrimitive::to_f64(&lo).unwrap();
        let hi: f64 = num_traits::ToPrimitive::to_f64(&hi).unwrap();
        assert!(lo < 1.722_083_81 && 1.722_083_80 < hi);
        assert!(isolate_largest_root_above_one(&poly(&[1, 1, 1, 1, 1]), 40).is_none());
    }
}

//! Dense integer polynomials with arbitrary-precision coefficients.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` is the
//! coefficient of `x^k`. Every constructor trims trailing zeros, so the
//! zero polynomial is the empty vector and a nonzero polynomial always has a
//! nonzero leading coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Expands the lower half `a_0 ... a_m` of a self-reciprocal polynomial of
    /// degree `2m` by mirroring (`a_{2m-k} = a_k`).
    pub fn from_reciprocal_half(half: &[BigInt]) -> Self {
        let mut coeffs = half.to_vec();
        coeffs.extend(half.iter().rev().skip(1).cloned());
        Self::new(coeffs)
    }

    /// Parses whitespace-separated integers in ascending powers, e.g.
    /// `"1 -1 -1 -1 1"` for `x^4 - x^3 - x^2 - x + 1`. With `reciprocal_half`
    /// the list is `a_0 ... a_{d/2}` and the rest is mirrored.
    pub fn parse(text: &str, reciprocal_half: bool) -> Result<Self> {
        let values = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Parse("no coefficients given".into()));
        }
        let p = if reciprocal_half {
            Self::from_reciprocal_half(&values)
        } else {
            Self::new(values)
        };
        if p.is_zero() {
            return Err(Error::Parse("zero polynomial".into()));
        }
        Ok(p)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn require_monic(&self) -> Result<()> {
        match self.leading() {
            Some(lc) if lc.is_one() => Ok(()),
            Some(lc) => Err(Error::NonMonic(lc.to_string())),
            None => Err(Error::NonMonic("0".into())),
        }
    }

    /// `a_k = a_{d-k}` for all `k`, i.e. `x^d P(1/x) = P(x)`.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^e * self` with the smallest `e` that keeps every step
    /// integral.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "pseudo-remainder by zero polynomial");
        let dlen = divisor.coeffs.len();
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        while !r.is_zero() && r.coeffs.len() >= dlen {
            let shift = r.coeffs.len() - dlen;
            let rl = r.leading().unwrap().clone();
            let mut next = r.scale(lc).coeffs;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                next[k + shift] -= &rl * c;
            }
            r = Self::new(next);
        }
        r
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * c;
            }
            quot[shift] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Primitive gcd with positive leading coefficient, by the primitive
    /// pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// True iff `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        // g is primitive and divides p over Q, hence over Z.
        self.div_exact(&g).expect("gcd must divide the polynomial")
    }

    /// Ascending whitespace-separated form accepted by [`IntPolynomial::parse`].
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;

            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Euler's totient by trial division.
pub fn euler_phi(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

fn divisors(k: u64) -> Vec<u64> {
    (1..=k).filter(|j| k.is_multiple_of(*j)).collect()
}

/// Builds `Φ_j` for every divisor `j` of `k` into `table`, ascending, each by
/// exact division of `x^j - 1` by the already known `Φ_i` for `i | j, i < j`.
fn fill_cyclotomic(k: u64, table: &mut BTreeMap<u64, IntPolynomial>) {
    for j in divisors(k) {
        if table.contains_key(&j) {
            continue;
        }
        let mut phi = IntPolynomial::x_pow_minus_one(j as usize);
        for i in divisors(j).into_iter().filter(|&i| i < j) {
            phi = phi
                .div_exact(&table[&i])
                .expect("cyclotomic divisor must divide x^j - 1");
        }
        table.insert(j, phi);
    }
}

/// The `k`-th cyclotomic polynomial `Φ_k`, `k >= 1`.
pub fn cyclotomic(k: u64) -> IntPolynomial {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut table = BTreeMap::new();
    fill_cyclotomic(k, &mut table);
    table.remove(&k).unwrap()
}

/// Indices `k` with `φ(k) <= d`, scanned over `k <= 2 d^2` (since
/// `φ(k) >= sqrt(k/2)`).
pub fn cyclotomic_candidates(d: usize) -> Vec<u64> {
    let d = d as u64;
    let bound = (2 * d * d).max(2);
    (1..=bound).filter(|&k| euler_phi(k) <= d).collect()
}

/// Every `k` such that `Φ_k` divides `p`, ascending.
pub fn cyclotomic_factors(p: &IntPolynomial) -> Vec<u64> {
    if p.is_constant() {
        return Vec::new();
    }
    let mut table = BTreeMap::new();
    cyclotomic_candidates(p.degree())
        .into_iter()
        .filter(|&k| {
            fill_cyclotomic(k, &mut table);
            table[&k].divides(p)
        })
        .collect()
}

/// True iff no cyclotomic polynomial divides `p`.
pub fn cyclotomic_free(p: &IntPolynomial) -> bool {
    cyclotomic_factors(p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn canonical_trims_zeros() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
        assert!(poly(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, -1, 1]);
        let b = poly(&[1, 1, 1]);
        assert_eq!(&a * &b, poly(&[1, 0, 1, 0, 1]));
        assert_eq!(&a * &IntPolynomial::one(), a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(poly(&[1, -1, -1, -1, 1]).evaluate(&BigInt::from(1)), BigInt::from(-1));
    }

    #[test]
    fn reciprocity() {
        assert!(poly(&[1, -1, -1, -1, 1]).is_reciprocal());
        assert!(poly(&[1, 0, 0, 1]).is_reciprocal());
        assert!(!poly(&[2, -3, 1]).is_reciprocal());
        assert!(poly(&[1, -3, 1]).is_reciprocal());
    }

    #[test]
    fn squarefree() {
        assert!(poly(&[1, -1, -1, -1, 1]).is_squarefree());
        assert!(!poly(&[1, -2, 1]).is_squarefree());
        assert!(poly(&[1, 0, 1]).is_squarefree());
        let sq = &poly(&[1, 1, 1]) * &poly(&[1, 1, 1]);
        assert_eq!((&sq * &poly(&[-2, 1])).squarefree_part(), &poly(&[1, 1, 1]) * &poly(&[-2, 1]));
    }

    #[test]
    fn gcd_of_non_primitive_inputs() {
        let a = &poly(&[2, 2]) * &poly(&[3, 0, 1]);
        let b = &poly(&[4, 4]) * &poly(&[-5, 1]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let p = poly(&[1, 0, 0, 0, 1]);
        assert_eq!(p.div_exact(&poly(&[1, 0, 1])), None);
        assert_eq!(poly(&[-1, 0, 1]).div_exact(&poly(&[1, 1])), Some(poly(&[-1, 1])));
        assert_eq!(poly(&[2, 4]).div_exact(&poly(&[3])), None);
    }

    #[test]
    fn known_cyclotomics() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(5), poly(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert_eq!(cyclotomic(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn cyclotomic_product_identity_and_degree() {
        for k in 1..=60u64 {
            let prod = divisors(k)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, j| &acc * &cyclotomic(j));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(k as usize), "k = {k}");
            assert_eq!(cyclotomic(k).degree() as u64, euler_phi(k), "k = {k}");
        }
    }

    #[test]
    fn cyclotomic_trial_division() {
        assert!(cyclotomic_free(&poly(&[1, -1, -1, -1, 1])));
        assert!(!cyclotomic_free(&cyclotomic(5)));
        let with_one = &poly(&[1, -3, 1]) * &cyclotomic(1);
        assert_eq!(cyclotomic_factors(&with_one), vec![1]);
        let prod = &cyclotomic(5) * &cyclotomic(12);
        assert_eq!(cyclotomic_factors(&prod), vec![5, 12]);
    }

    #[test]
    fn candidate_set_is_complete() {
        // φ(k) <= 4 exactly for these k
        assert_eq!(cyclotomic_candidates(4), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
    }

    #[test]
    fn parse_forms() {
        let p = IntPolynomial::parse("1 -1 -1", true).unwrap();
        assert_eq!(p, poly(&[1, -1, -1, -1, 1]));
        let q = IntPolynomial::parse(" 1  -1 -1 -1 1 ", false).unwrap();
        assert_eq!(p, q);
        assert_eq!(IntPolynomial::parse(&p.to_text(), false).unwrap(), p);
        assert!(IntPolynomial::parse("1 x 2", false).is_err());
        assert!(IntPolynomial::parse("", false).is_err());
        assert!(IntPolynomial::parse("0 0", false).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, -1, -1, -1, 1]).to_string(), "x^4 - x^3 - x^2 - x + 1");
        assert_eq!(poly(&[-2, 0, 3]).to_string(), "3x^2 - 2");
    }
}

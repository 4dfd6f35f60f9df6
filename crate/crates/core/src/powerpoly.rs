//! Characteristic polynomials of companion-matrix powers.
//!
//! For a monic `P` with companion matrix `C`, the roots of
//! `P_n(x) = det(xI - C^n)` are the `n`-th powers of the roots of `P`. Every
//! step is exact: matrices hold arbitrary-precision integers and the
//! characteristic polynomial comes from traces through Newton's identities.

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;

/// Square matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `self^n` by binary exponentiation, `n >= 1`.
    pub fn pow(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc.unwrap())
    }
}

impl Mul for &BigIntMatrix {
    type Output = BigIntMatrix;

    fn mul(self, rhs: &BigIntMatrix) -> BigIntMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = BigIntMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Companion matrix of a monic `p` of degree `d >= 2`: ones on the
/// superdiagonal and last row `(-a_0, ..., -a_{d-1})`.
pub fn companion(p: &IntPolynomial) -> Result<BigIntMatrix> {
    p.require_monic()?;
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let mut m = BigIntMatrix::zeros(d);
    for i in 0..d - 1 {
        m.entries[i * d + i + 1] = BigInt::one();
    }
    for (j, a) in p.coeffs().iter().take(d).enumerate() {
        m.entries[(d - 1) * d + j] = -a;
    }
    Ok(m)
}

/// `M^n`, `n >= 1`.
pub fn mat_pow(m: &BigIntMatrix, n: u64) -> Result<BigIntMatrix> {
    m.pow(n)
}

/// Traces `tr(M), tr(M^2), ..., tr(M^d)` from successive products.
pub fn power_traces(m: &BigIntMatrix) -> Vec<BigInt> {
    let d = m.dim();
    let mut traces = Vec::with_capacity(d);
    let mut acc = m.clone();
    traces.push(acc.trace());
    for _ in 1..d {
        acc = &acc * m;
        traces.push(acc.trace());
    }
    traces
}

/// Monic polynomial whose roots have power sums `traces[k-1] = p_k`,
/// `k = 1..=d`, via `k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i`.
pub fn poly_from_power_sums(traces: &[BigInt]) -> Result<IntPolynomial> {
    let d = traces.len();
    let mut e = Vec::with_capacity(d + 1);
    e.push(BigInt::one());
    for k in 1..=d {
        let mut sum = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let (q, r) = sum.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::InternalInexactDivision(k));
        }
        e.push(q);
    }
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[d - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `det(xI - M)`.
pub fn char_poly(m: &BigIntMatrix) -> Result<IntPolynomial> {
    poly_from_power_sums(&power_traces(m))
}

/// `P_n` together with the power sums of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerPolyResult {
    pub n: u64,
    pub poly: IntPolynomial,
    /// `p_1 ... p_d`, power sums of the roots of `poly`.
    pub trace_sums: Vec<BigInt>,
}

fn result_from_matrix(n: u64, m: &BigIntMatrix) -> Result<PowerPolyResult> {
    let trace_sums = power_traces(m);
    let poly = poly_from_power_sums(&trace_sums)?;
    Ok(PowerPolyResult { n, poly, trace_sums })
}

/// Characteristic polynomial of `C^n` for the companion matrix `C` of `p`.
pub fn power_min_poly(p: &IntPolynomial, n: u64) -> Result<PowerPolyResult> {
    let c = companion(p)?;
    result_from_matrix(n, &c.pow(n)?)
}

/// Ascending sequence `P_start, P_{start+1}, ...`, advancing by one
/// multiplication with `C` per step.
#[derive(Clone, Debug)]
pub struct PowerSequence {
    companion: BigIntMatrix,
    current: BigIntMatrix,
    next_n: u64,
}

impl PowerSequence {
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        Self::starting_at(p, 1)
    }

    pub fn starting_at(p: &IntPolynomial, start: u64) -> Result<Self> {
        let companion = companion(p)?;
        let current = companion.pow(start)?;
        Ok(Self { companion, current, next_n: start })
    }

    pub fn degree(&self) -> usize {
        self.companion.dim()
    }

    /// The exponent the next call to `next` will produce.
    pub fn peek_n(&self) -> u64 {
        self.next_n
    }
}

impl Iterator for PowerSequence {
    type Item = PowerPolyResult;

    fn next(&mut self) -> Option<PowerPolyResult> {
        let out = result_from_matrix(self.next_n, &self.current)
            .expect("Newton's identities are exact on integer matrices");
        self.current = &self.current * &self.companion;
        self.next_n += 1;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn companion_layout() {
        assert_eq!(companion(&poly(&[1, -3, 1])).unwrap(), BigIntMatrix::from_rows(&[vec![0, 1], vec![-1, 3]]));
        let c = companion(&poly(&[1, -1, -1, -1, 1])).unwrap();
        assert_eq!(c.row(3), &[-1, 1, 1, 1].map(BigInt::from));
        assert_eq!(c.row(0), &[0, 1, 0, 0].map(BigInt::from));
    }

    #[test]
    fn companion_rejects_bad_input() {
        assert!(matches!(companion(&poly(&[3, 1])), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(companion(&poly(&[1, 2, 2])), Err(Error::NonMonic(_))));
    }

    #[test]
    fn matrix_powers() {
        let m = BigIntMatrix::from_rows(&[vec![0, 1], vec![-1, 3]]);
        assert_eq!(mat_pow(&m, 1).unwrap(), m);
        assert_eq!(mat_pow(&m, 2).unwrap(), BigIntMatrix::from_rows(&[vec![-1, 3], vec![-3, 8]]));
        let c = companion(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(mat_pow(&c, 2).unwrap(), BigIntMatrix::identity(2));
        assert_eq!(mat_pow(&m, 0), Err(Error::ZeroExponent));
        // 13 = 0b1101 exercises the odd/even branches
        let mut naive = m.clone();
        for _ in 1..13 {
            naive = &naive * &m;
        }
        assert_eq!(mat_pow(&m, 13).unwrap(), naive);
    }

    #[test]
    fn char_poly_basics() {
        let p = poly(&[1, -1, -1, -1, 1]);
        assert_eq!(char_poly(&companion(&p).unwrap()).unwrap(), p);
        assert_eq!(char_poly(&BigIntMatrix::identity(2)).unwrap(), poly(&[1, -2, 1]));
    }

    #[test]
    fn square_of_quartic() {
        // power sums p2 = 3, p4 = 7, p6 = 27, p8 = 79 of P give P_2 by Newton
        let p = poly(&[1, -1, -1, -1, 1]);
        let r = power_min_poly(&p, 2).unwrap();
        assert_eq!(r.poly, poly(&[1, -3, 1, -3, 1]));
        assert_eq!(r.trace_sums, [3, 7, 27, 79].map(BigInt::from));
    }

    #[test]
    fn first_power_is_identity_map() {
        let p = poly(&[1, -1, 0, -1, 0, -1, 1]);
        assert_eq!(power_min_poly(&p, 1).unwrap().poly, p);
    }

    #[test]
    fn sequence_matches_direct_powering() {
        let p = poly(&[1, 0, -1, 0, 0, -1, 0, 0, -1, 0, 1]);
        let seq: Vec<_> = PowerSequence::starting_at(&p, 5).unwrap().take(4).collect();
        for r in seq {
            assert_eq!(r, power_min_poly(&p, r.n).unwrap());
        }
    }
}

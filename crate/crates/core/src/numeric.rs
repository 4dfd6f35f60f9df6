//! Floating-point helpers. Nothing here feeds an exact verdict; these are
//! estimates (τ, Graeffe ratios) and independent cross-checks.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::intpoly::IntPolynomial;

/// Natural log of `|a|`, valid far beyond the `f64` range. `-inf` for zero.
pub fn ln_abs(a: &BigInt) -> f64 {
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = a.bits();
    if bits <= 1000 {
        return a.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (a.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `b / a` as a float, computed through logs when the operands overflow.
pub fn big_ratio(b: &BigInt, a: &BigInt) -> f64 {
    if a.is_zero() {
        return f64::NAN;
    }
    let sign = if b.is_negative() == a.is_negative() { 1.0 } else { -1.0 };
    match (b.to_f64(), a.to_f64()) {
        (Some(x), Some(y)) if x.is_finite() && y.is_finite() => x / y,
        _ => sign * (ln_abs(b) - ln_abs(a)).exp(),
    }
}

fn to_f64_coeffs(p: &IntPolynomial) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Value and derivative of `p` at `x`.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut dv = 0.0;
    for &c in coeffs.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

/// Newton polish of a real root inside the bracket `[lo, hi]`; falls back to
/// the bracket midpoint when a step leaves it.
pub fn polish_real_root(p: &IntPolynomial, lo: f64, hi: f64) -> f64 {
    let coeffs = to_f64_coeffs(p);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let (v, dv) = eval_with_derivative(&coeffs, x);
        if dv == 0.0 || v == 0.0 {
            break;
        }
        let next = x - v / dv;
        if !(lo..=hi).contains(&next) {
            break;
        }
        if (next - x).abs() <= 1e-16 * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// All complex roots of `p` from the eigenvalues of its (normalized)
/// companion matrix, each refined by a few complex Newton steps.
///
/// The QR iteration is bounded; when it stalls (it does on some companion
/// matrices with symmetric root patterns) the transposed matrix is tried and
/// then Durand-Kerner iteration.
pub fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    let coeffs = to_f64_coeffs(p);
    let lc = coeffs[d];
    let mut c = DMatrix::<f64>::zeros(d, d);
    for i in 0..d - 1 {
        c[(i, i + 1)] = 1.0;
    }
    for j in 0..d {
        c[(d - 1, j)] = -coeffs[j] / lc;
    }
    let eigen = |m: DMatrix<f64>| {
        Schur::try_new(m, f64::EPSILON, 10_000).map(|s| s.complex_eigenvalues().iter().copied().collect::<Vec<_>>())
    };
    let roots = eigen(c.clone())
        .or_else(|| eigen(c.transpose()))
        .unwrap_or_else(|| durand_kerner(&coeffs));
    roots.into_iter().map(|z| newton_polish_complex(&coeffs, z)).collect()
}

fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lc = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    let radius = 1.0 + monic[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::from_polar(0.9 * radius.min(2.0), 0.4);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let v = monic.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z[i] + c);
            let denom = (0..d)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = v / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn newton_polish_complex(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for &c in coeffs.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1e-3 * z.norm().max(1.0) {
            break;
        }
        z -= step;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_huge_integers() {
        let a: BigInt = BigInt::from(3).pow(2000);
        assert!((ln_abs(&a) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
        assert_eq!(ln_abs(&BigInt::from(-1)), 0.0);
        let b: BigInt = &a * 7;
        assert!((big_ratio(&b, &a) - 7.0).abs() < 1e-9);
        assert!((big_ratio(&-b, &a) + 7.0).abs() < 1e-9);
    }

    #[test]
    fn roots_where_plain_qr_stalls() {
        let mut roots = complex_roots(&IntPolynomial::from_i64s(&[4, 0, -4, 0, 4]));
        assert_eq!(roots.len(), 4);
        roots.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for (z, k) in roots.iter().zip([-5, -1, 1, 5]) {
            let w = Complex64::from_polar(1.0, k as f64 * std::f64::consts::PI / 6.0);
            assert!((z - w).norm() < 1e-12, "{z} vs {w}");
        }
    }

    #[test]
    fn durand_kerner_agrees_with_eigenvalues() {
        let coeffs = [1.0, -1.0, -1.0, -1.0, 1.0];
        let mut a = durand_kerner(&coeffs);
        let mut b = complex_roots(&IntPolynomial::from_i64s(&[1, -1, -1, -1, 1]));
        let key = |z: &Complex64| (z.re * 1e6).round() as i64 * 10_000_000 + (z.im * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn roots_of_quadratic() {
        let mut roots = complex_roots(&IntPolynomial::from_i64s(&[1, -3, 1]));
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let s5 = 5f64.sqrt();
        assert!((roots[0].re - (3.0 - s5) / 2.0).abs() < 1e-14);
        assert!((roots[1].re - (3.0 + s5) / 2.0).abs() < 1e-14);
    }
}

//! Probability `p_d` that the power polynomial of a random power of a
//! degree-`d` Salem number satisfies the power criterion.
//!
//! With `D = τ^n + τ^-n` and conjugate angles `t_1 ... t_H` (`H = (d-2)/2`)
//! equidistributed on `[0, π]^H`,
//! `P_n(x) = (x^2 - Dx + 1) Π (x^2 - 2cos(t_i) x + 1)`, and `p_d` is the
//! measure of the angle set where the coefficients satisfy the criterion,
//! in the limit `D → ∞`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;
use crate::powerpoly::PowerSequence;
use crate::salem::{certify_direct, satisfies_power_condition, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbMethod {
    ExactD4,
    IntegralD6,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbEstimate {
    pub d: usize,
    pub method: ProbMethod,
    pub value: f64,
    /// Exact rational value, when known.
    pub exact: Option<String>,
    pub m: Option<usize>,
    pub h: Option<f64>,
    #[serde(rename = "D")]
    pub big_d: Option<f64>,
    /// `H!` when only the box around one symmetric cluster was counted.
    pub symmetry_factor: Option<u64>,
    #[serde(rename = "N_c")]
    pub hit_count: Option<u64>,
    /// `(m+1)^H`.
    pub total: Option<u128>,
    pub box_half_width: Option<f64>,
    /// Hits on the outer shell of the final box; nonzero means the box may
    /// have clipped the cluster.
    pub shell_hits: Option<u64>,
    pub error_estimate: f64,
}

impl ProbEstimate {
    fn analytic(d: usize, method: ProbMethod, value: f64, error_estimate: f64) -> Self {
        Self {
            d,
            method,
            value,
            exact: None,
            m: None,
            h: None,
            big_d: None,
            symmetry_factor: None,
            hit_count: None,
            total: None,
            box_half_width: None,
            shell_hits: None,
            error_estimate,
        }
    }
}

/// `p_4 = 1/3`: in the limit the criterion reduces to `-1 < 2cos t_1 < 1`.
pub fn prob_d4() -> ProbEstimate {
    ProbEstimate {
        exact: Some("1/3".into()),
        ..ProbEstimate::analytic(4, ProbMethod::ExactD4, 1.0 / 3.0, 0.0)
    }
}

/// `arccos` with the argument clamped to `[-1, 1]`, absorbing rounding at
/// interval ends where the exact argument is `±1`.
fn acos_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

/// Integrand on the first piece of the `d = 6` region boundary.
pub fn d6_integrand_first(t: f64) -> f64 {
    let c = t.cos();
    acos_clamped((-5.0 - 6.0 * c) / (6.0 + 6.0 * c)) - (PI - t)
}

/// Integrand on the second piece.
pub fn d6_integrand_second(t: f64) -> f64 {
    let c = t.cos();
    acos_clamped((1.0 - 6.0 * c) / (6.0 - 6.0 * c)) - (PI - t)
}

/// Limits `[t_0, t_1, t_2]` of the two integrals.
pub fn d6_limits() -> [f64; 3] {
    [
        (30f64.sqrt() / 6.0).acos(),
        ((19f64.sqrt() - 1.0) / 6.0).acos(),
        (6f64.sqrt() / 6.0).acos(),
    ]
}

/// Adaptive Simpson quadrature. Returns the Richardson-corrected value and
/// the summed local error estimates.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> (f64, f64) {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        let (lv, le) = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
        let (rv, re) = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        (lv + rv, le + re)
    }

    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, abs_tol, 50)
}

/// `p_6 = (4/π²)(I_1 + I_2)`, the two integrals over the pieces of one of
/// the four congruent regions in the `(t_1, t_2)` square.
pub fn prob_d6_integral(abs_tol: f64) -> Result<ProbEstimate> {
    if !(abs_tol >= 1e-10) {
        return Err(Error::ToleranceTooTight(abs_tol));
    }
    let scale = 4.0 / (PI * PI);
    let per_piece = 0.5 * abs_tol / scale;
    let [t0, t1, t2] = d6_limits();
    let (i1, e1) = adaptive_simpson(&d6_integrand_first, t0, t1, per_piece);
    let (i2, e2) = adaptive_simpson(&d6_integrand_second, t1, t2, per_piece);
    Ok(ProbEstimate::analytic(
        6,
        ProbMethod::IntegralD6,
        scale * (i1 + i2),
        scale * (e1 + e2),
    ))
}

/// Default half-width of the box around the symmetric cluster centre.
pub const DEFAULT_BOX_HALF_WIDTH: f64 = PI / 8.0;
/// Default `D`.
pub const DEFAULT_BIG_D: f64 = 1e9;
/// Relative margin a grid node must clear to count as a hit.
pub const HIT_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    pub d: usize,
    pub m: usize,
    pub big_d: f64,
    pub restrict_symmetry: bool,
    /// Starting half-width of the symmetry box; grown by 1.5x while hits
    /// touch its shell.
    pub box_half_width: f64,
}

impl GridConfig {
    pub fn new(d: usize, m: usize) -> Self {
        Self {
            d,
            m,
            big_d: DEFAULT_BIG_D,
            restrict_symmetry: false,
            box_half_width: DEFAULT_BOX_HALF_WIDTH,
        }
    }

    pub fn big_d(mut self, big_d: f64) -> Self {
        self.big_d = big_d;
        self
    }

    pub fn symmetric(mut self, on: bool) -> Self {
        self.restrict_symmetry = on;
        self
    }

    pub fn box_half_width(mut self, w: f64) -> Self {
        self.box_half_width = w;
        self
    }

    fn validate(&self) -> Result<usize> {
        if !matches!(self.d, 4 | 6 | 8 | 10 | 12) {
            return Err(Error::BadDegree(self.d));
        }
        if self.m < 100 {
            return Err(Error::GridTooCoarse(self.m));
        }
        if !(self.big_d >= 1e6) {
            return Err(Error::GapTooSmall(self.big_d));
        }
        Ok((self.d - 2) / 2)
    }
}

/// Arguments in `(0, π)` of the roots of `x^{d-2} + 1`: `(2i+1)π/(d-2)`.
pub fn cluster_centre(h_dim: usize) -> Vec<f64> {
    (0..h_dim)
        .map(|i| (2 * i + 1) as f64 * PI / (2 * h_dim) as f64)
        .collect()
}

const MAX_COEFFS: usize = 13;

/// Multiplies the first `len` coefficients of `c` by `x^2 - s x + 1`.
fn multiply_quadratic(c: &[f64; MAX_COEFFS], len: usize, s: f64) -> [f64; MAX_COEFFS] {
    let mut out = [0.0; MAX_COEFFS];
    for k in 0..len + 2 {
        let mut v = if k < len { c[k] } else { 0.0 };
        if k >= 1 && k - 1 < len {
            v -= s * c[k - 1];
        }
        if k >= 2 && k - 2 < len {
            v += c[k - 2];
        }
        out[k] = v;
    }
    out
}

/// Criterion on the lower half `a_0 ... a_{d/2}` of a self-reciprocal
/// coefficient vector.
#[inline]
fn half_hits(a: &[f64], d: usize) -> bool {
    let half = d / 2;
    let mut side = a[0].abs();
    for v in &a[2..half] {
        side += v.abs();
    }
    let rhs = d as f64 * (2.0 * side + a[half].abs());
    let lhs = 2.0 * (d - 2) as f64 * a[1].abs();
    lhs > rhs * (1.0 + HIT_MARGIN)
}

fn node_hits(svals: &[f64], big_d: f64, d: usize) -> bool {
    let mut c = [0.0; MAX_COEFFS];
    c[0] = 1.0;
    c[1] = -big_d;
    c[2] = 1.0;
    let mut len = 3;
    for &s in svals {
        c = multiply_quadratic(&c, len, s);
        len += 2;
    }
    half_hits(&c[..=d / 2], d)
}

#[derive(Clone, Copy, Debug, Default)]
struct Counts {
    hits: u64,
    shell_hits: u64,
    transitions: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            hits: self.hits + o.hits,
            shell_hits: self.shell_hits + o.shell_hits,
            transitions: self.transitions + o.transitions,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct AxisRange {
    lo: usize,
    hi: usize,
    lo_is_shell: bool,
    hi_is_shell: bool,
}

impl AxisRange {
    fn full(m: usize) -> Self {
        Self { lo: 0, hi: m, lo_is_shell: false, hi_is_shell: false }
    }

    /// Nodes `j` with `|j h - centre| < w`. Ends clipped by the grid edge are
    /// not shell.
    fn around(centre: f64, w: f64, m: usize) -> Self {
        let h = PI / m as f64;
        let inside = |j: usize| (j as f64 * h - centre).abs() < w;
        let mut lo = (((centre - w) / h).floor().max(0.0) as usize).min(m);
        while lo > 0 && inside(lo - 1) {
            lo -= 1;
        }
        while !inside(lo) {
            lo += 1;
        }
        let mut hi = (((centre + w) / h).ceil() as usize).min(m);
        while hi < m && inside(hi + 1) {
            hi += 1;
        }
        while !inside(hi) {
            hi -= 1;
        }
        Self { lo, hi, lo_is_shell: lo > 0, hi_is_shell: hi < m }
    }

    fn is_shell(&self, j: usize) -> bool {
        (j == self.lo && self.lo_is_shell) || (j == self.hi && self.hi_is_shell)
    }
}

struct GridScan<'a> {
    d: usize,
    big_d: f64,
    svals: &'a [f64],
    ranges: &'a [AxisRange],
}

impl GridScan<'_> {
    fn base(&self) -> [f64; MAX_COEFFS] {
        let mut c = [0.0; MAX_COEFFS];
        c[0] = 1.0;
        c[1] = -self.big_d;
        c[2] = 1.0;
        c
    }

    fn run(&self) -> Counts {
        let base = self.base();
        if self.ranges.len() == 1 {
            return self.innermost(&base, 3, false);
        }
        let r = self.ranges[0];
        (r.lo..=r.hi)
            .into_par_iter()
            .map(|j| {
                let c = multiply_quadratic(&base, 3, self.svals[j]);
                self.level(1, &c, 5, r.is_shell(j))
            })
            .reduce(Counts::default, |a, b| a + b)
    }

    fn level(&self, axis: usize, c: &[f64; MAX_COEFFS], len: usize, on_shell: bool) -> Counts {
        if axis + 1 == self.ranges.len() {
            return self.innermost(c, len, on_shell);
        }
        let r = self.ranges[axis];
        let mut total = Counts::default();
        for j in r.lo..=r.hi {
            let next = multiply_quadratic(c, len, self.svals[j]);
            total = total + self.level(axis + 1, &next, len + 2, on_shell || r.is_shell(j));
        }
        total
    }

    /// Last axis: only the lower half of the final coefficients is formed.
    fn innermost(&self, c: &[f64; MAX_COEFFS], len: usize, on_shell: bool) -> Counts {
        let r = self.ranges[self.ranges.len() - 1];
        let half = self.d / 2;
        let mut counts = Counts::default();
        let mut prev: Option<bool> = None;
        let mut a = [0.0; MAX_COEFFS];
        for j in r.lo..=r.hi {
            let s = self.svals[j];
            for k in 0..=half {
                let mut v = if k < len { c[k] } else { 0.0 };
                if k >= 1 {
                    v -= s * c[k - 1];
                }
                if k >= 2 {
                    v += c[k - 2];
                }
                a[k] = v;
            }
            let hit = half_hits(&a[..=half], self.d);
            if hit {
                counts.hits += 1;
                if on_shell || r.is_shell(j) {
                    counts.shell_hits += 1;
                }
            }
            if prev.is_some_and(|p| p != hit) {
                counts.transitions += 1;
            }
            prev = Some(hit);
        }
        counts
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn node_values(m: usize) -> Vec<f64> {
    (0..=m).map(|j| 2.0 * (j as f64 * PI / m as f64).cos()).collect()
}

fn box_ranges(h_dim: usize, m: usize, w: f64) -> Vec<AxisRange> {
    cluster_centre(h_dim)
        .into_iter()
        .map(|c| AxisRange::around(c, w, m))
        .collect()
}

/// Grid estimate of `p_d` on nodes `t_j = jπ/m`, `j = 0..=m` per axis.
///
/// With `restrict_symmetry`, only the box around the cluster centre is
/// scanned and the count is multiplied by `H!`. The box starts at
/// `box_half_width` and grows while hits reach its shell, up to `π/(2H)`
/// where boxes of permuted centres would start to overlap.
pub fn prob_grid(cfg: &GridConfig) -> Result<ProbEstimate> {
    let h_dim = cfg.validate()?;
    let m = cfg.m;
    let svals = node_values(m);
    let total = (m as u128 + 1).pow(h_dim as u32);

    let (counts, factor, half_width) = if cfg.restrict_symmetry {
        let cap = PI / (2 * h_dim) as f64;
        let mut w = cfg.box_half_width.min(cap);
        loop {
            let ranges = box_ranges(h_dim, m, w);
            let counts = GridScan { d: cfg.d, big_d: cfg.big_d, svals: &svals, ranges: &ranges }.run();
            if counts.shell_hits == 0 || w >= cap {
                break (counts, factorial(h_dim), Some(w));
            }
            w = (1.5 * w).min(cap);
        }
    } else {
        let ranges = vec![AxisRange::full(m); h_dim];
        let counts = GridScan { d: cfg.d, big_d: cfg.big_d, svals: &svals, ranges: &ranges }.run();
        (counts, 1, None)
    };

    let scale = factor as f64 / total as f64;
    Ok(ProbEstimate {
        d: cfg.d,
        method: ProbMethod::Grid,
        value: counts.hits as f64 * scale,
        exact: None,
        m: Some(m),
        h: Some(PI / m as f64),
        big_d: Some(cfg.big_d),
        symmetry_factor: cfg.restrict_symmetry.then_some(factor),
        hit_count: Some(counts.hits),
        total: Some(total),
        box_half_width: half_width,
        shell_hits: cfg.restrict_symmetry.then_some(counts.shell_hits),
        // boundary nodes along all axes, each ambiguous by half a node
        error_estimate: 0.5 * h_dim as f64 * counts.transitions as f64 * scale,
    })
}

/// Angle tuples `(t_1 ... t_H)` of grid hits, in lexicographic node order,
/// at most `limit` of them. Scans the full grid.
pub fn grid_hits(cfg: &GridConfig, limit: usize) -> Result<Vec<Vec<f64>>> {
    let h_dim = cfg.validate()?;
    let m = cfg.m;
    let svals = node_values(m);
    let ranges = if cfg.restrict_symmetry {
        box_ranges(h_dim, m, cfg.box_half_width.min(PI / (2 * h_dim) as f64))
    } else {
        vec![AxisRange::full(m); h_dim]
    };
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.lo).collect();
    let mut out = Vec::new();
    'outer: loop {
        let s: Vec<f64> = idx.iter().map(|&j| svals[j]).collect();
        if node_hits(&s, cfg.big_d, cfg.d) {
            out.push(idx.iter().map(|&j| j as f64 * PI / m as f64).collect());
            if out.len() >= limit {
                break;
            }
        }
        for axis in (0..h_dim).rev() {
            if idx[axis] < ranges[axis].hi {
                idx[axis] += 1;
                continue 'outer;
            }
            idx[axis] = ranges[axis].lo;
        }
        break;
    }
    Ok(out)
}

/// Exponents `n` in `[from, to]` whose `P_n` satisfies the power criterion.
pub fn power_condition_hits(p: &IntPolynomial, from: u64, to: u64) -> Result<Vec<u64>> {
    if from == 0 {
        return Err(Error::ZeroExponent);
    }
    if from > to {
        return Err(Error::EmptyRange { from, to });
    }
    Ok(PowerSequence::starting_at(p, from)?
        .take((to - from + 1) as usize)
        .filter(|step| satisfies_power_condition(&step.poly))
        .map(|step| step.n)
        .collect())
}

/// Same as [`power_condition_hits`], split into chunks of `chunk` exponents
/// scanned in parallel and merged in ascending order.
pub fn power_condition_hits_parallel(p: &IntPolynomial, from: u64, to: u64, chunk: u64) -> Result<Vec<u64>> {
    if from == 0 {
        return Err(Error::ZeroExponent);
    }
    if from > to {
        return Err(Error::EmptyRange { from, to });
    }
    let chunk = chunk.max(1);
    let starts: Vec<u64> = (from..=to).step_by(chunk as usize).collect();
    let parts = starts
        .into_par_iter()
        .map(|start| power_condition_hits(p, start, (start + chunk - 1).min(to)))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.concat())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalFrequency {
    pub n_from: u64,
    pub n_to: u64,
    pub hits: Vec<u64>,
    pub count: u64,
    pub total: u64,
    pub frequency: f64,
    pub warning: Option<String>,
}

fn frequency_from_hits(p: &IntPolynomial, n_from: u64, n_to: u64, hits: Vec<u64>) -> Result<EmpiricalFrequency> {
    let warning = match certify_direct(p)?.verdict {
        Verdict::Salem => None,
        _ => Some("polynomial is not a Salem polynomial; the frequency has no probabilistic meaning".into()),
    };
    let total = n_to - n_from + 1;
    let count = hits.len() as u64;
    Ok(EmpiricalFrequency {
        n_from,
        n_to,
        hits,
        count,
        total,
        frequency: count as f64 / total as f64,
        warning,
    })
}

/// Relative frequency of power-criterion hits over `n` in `[n_from, n_to]`.
pub fn empirical_frequency(p: &IntPolynomial, n_from: u64, n_to: u64) -> Result<EmpiricalFrequency> {
    p.require_monic()?;
    let hits = power_condition_hits(p, n_from, n_to)?;
    frequency_from_hits(p, n_from, n_to, hits)
}

/// [`empirical_frequency`] with the scan split into parallel chunks.
pub fn empirical_frequency_parallel(p: &IntPolynomial, n_from: u64, n_to: u64, chunk: u64) -> Result<EmpiricalFrequency> {
    p.require_monic()?;
    let hits = power_condition_hits_parallel(p, n_from, n_to, chunk)?;
    frequency_from_hits(p, n_from, n_to, hits)
}

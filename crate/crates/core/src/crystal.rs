//! One-dimensional quasicrystals `Λ_ℓ = {t ∈ R : tℓ ∈ Σ(p)}`.
//!
//! Restricting `p` to the line `t ↦ tℓ` gives the exponential polynomial
//! `f(t) = Σ_α a_α e^{2πi⟨α,ℓ⟩t}`. Frequencies are stored in cycles, i.e.
//! `λ_α = ⟨α,ℓ⟩` and `f(t) = Σ a_j e^{2πiλ_j t}`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::cone::Direction;
use crate::error::{ContourEdge, Error, Result};
use crate::laurent::LaurentPoly;
use crate::{cis_turns, par, Complex64, CompensatedSum};

/// Frequencies closer than this are merged.
pub const FREQ_MERGE_TOL: f64 = 1e-12;
/// A Newton limit with `|Im t|` at most this is accepted as real.
pub const REAL_ACCEPT_TOL: f64 = 1e-9;
/// Roots closer than this are the same root.
pub const DEDUP_TOL: f64 = 1e-9;
/// Relative threshold on derivatives when assigning multiplicities.
pub const MULTIPLICITY_TOL: f64 = 1e-6;
pub const NEWTON_MAX_ITER: usize = 100;

/// `f(t) = Σ_j a_j e^{2πiλ_j t}` with strictly ascending `λ_j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentialPolynomial {
    freqs: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl ExponentialPolynomial {
    /// Sorts by frequency, merges frequencies within [`FREQ_MERGE_TOL`] and
    /// drops zero coefficients.
    pub fn new(freqs: Vec<f64>, coeffs: Vec<Complex64>) -> Result<Self> {
        if freqs.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: freqs.len(),
                got: coeffs.len(),
            });
        }
        let mut pairs: Vec<(f64, Complex64)> = freqs.into_iter().zip(coeffs).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, Complex64)> = Vec::with_capacity(pairs.len());
        for (l, c) in pairs {
            match merged.last_mut() {
                Some(last) if (l - last.0).abs() <= FREQ_MERGE_TOL * (1.0 + l.abs()) => {
                    log::warn!(
                        "frequencies {} and {} collide; the direction is not Q-independent for this support",
                        last.0,
                        l
                    );
                    last.1 += c;
                }
                _ => merged.push((l, c)),
            }
        }
        let max = merged.iter().map(|p| p.1.norm()).fold(0.0, f64::max);
        merged.retain(|p| p.1.norm() > 1e-14 * max);
        if merged.is_empty() {
            return Err(Error::Degenerate("all coefficients cancel".into()));
        }
        let (freqs, coeffs) = merged.into_iter().unzip();
        Ok(Self { freqs, coeffs })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// `λ_N − λ_0`, which is also the asymptotic zero density of a
    /// real-rooted `f`.
    pub fn bandwidth(&self) -> f64 {
        self.freqs.last().unwrap() - self.freqs[0]
    }

    /// `Σ|a_j|`; root-finding tolerances are relative to it.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Scale of the `m`-th derivative, `Σ|a_j|·|2πλ_j|^m`.
    pub fn derivative_scale(&self, m: u32) -> f64 {
        self.freqs
            .iter()
            .zip(&self.coeffs)
            .map(|(l, c)| c.norm() * (TAU * l).abs().powi(m as i32))
            .sum()
    }

    /// `Σ|a_j e^{2πiλ_j t}|` at complex `t`.
    pub fn local_scale(&self, t: Complex64) -> f64 {
        self.freqs
            .iter()
            .zip(&self.coeffs)
            .map(|(l, c)| c.norm() * (-TAU * l * t.im).exp())
            .sum()
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.derivative(0, t)
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        let mut acc = CompensatedSum::new();
        for (l, c) in self.freqs.iter().zip(&self.coeffs) {
            acc.add(c * cis_turns(l * t));
        }
        acc.value()
    }

    /// `f^{(m)}(t)` at complex `t`.
    pub fn derivative(&self, m: u32, t: Complex64) -> Complex64 {
        let mut acc = CompensatedSum::new();
        for (l, c) in self.freqs.iter().zip(&self.coeffs) {
            let base = c * cis_turns(l * t.re) * (-TAU * l * t.im).exp();
            let factor = Complex64::new(0.0, TAU * l).powu(m);
            acc.add(base * factor);
        }
        acc.value()
    }

    fn value_and_derivative(&self, t: Complex64) -> (Complex64, Complex64) {
        let mut v = CompensatedSum::new();
        let mut d = CompensatedSum::new();
        for (l, c) in self.freqs.iter().zip(&self.coeffs) {
            let base = c * cis_turns(l * t.re) * (-TAU * l * t.im).exp();
            v.add(base);
            d.add(base * Complex64::new(0.0, TAU * l));
        }
        (v.value(), d.value())
    }

    /// Multiplies by `e^{-2πiλ_c t}` with `λ_c` the midpoint of the spectrum.
    /// Zeros are unchanged and the frequencies become symmetric about 0.
    pub fn centered(&self) -> Self {
        let mid = 0.5 * (self.freqs[0] + self.freqs.last().unwrap());
        Self {
            freqs: self.freqs.iter().map(|l| l - mid).collect(),
            coeffs: self.coeffs.clone(),
        }
    }
}

/// `f(t) = p(exp(2πi t ℓ))`.
pub fn restrict_to_line(p: &LaurentPoly, ell: &Direction) -> Result<ExponentialPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if ell.dim() != p.arity() {
        return Err(Error::DimensionMismatch {
            expected: p.arity(),
            got: ell.dim(),
        });
    }
    let (freqs, coeffs) = p.terms().map(|(e, &c)| (e.dot(&ell.entries), c)).unzip();
    ExponentialPolynomial::new(freqs, coeffs)
}

/// Real zeros of `f` in a closed window, with multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootList {
    pub window: (f64, f64),
    pub roots: Vec<f64>,
    pub multiplicities: Vec<u32>,
    /// Smallest distance between consecutive roots; `None` with fewer than two.
    pub min_gap: Option<f64>,
    /// Newton seeds that did not converge within the iteration cap.
    pub newton_failures: usize,
}

impl RootList {
    /// Number of roots counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, u32)> + '_ {
        self.roots.iter().copied().zip(self.multiplicities.iter().copied())
    }

    /// Roots in the closed interval `[a, b]`.
    pub fn restricted(&self, a: f64, b: f64) -> Vec<(f64, u32)> {
        self.iter().filter(|(t, _)| *t >= a && *t <= b).collect()
    }
}

/// Finds the real zeros of `f` in the closed window `[a, b]`.
///
/// `|f|` is sampled with step at most `1/(8(λ_N − λ_0))`, complex Newton is
/// started from every local minimum, limits with `|Im t| ≤ 1e-9` are accepted
/// as real, and duplicates closer than `1e-9` are merged. Roots within `1e-9`
/// outside an endpoint still count.
pub fn find_real_roots(f: &ExponentialPolynomial, window: (f64, f64), tol: f64) -> Result<RootList> {
    find_real_roots_with_step(f, window, tol, f64::INFINITY)
}

/// As [`find_real_roots`] with an extra cap on the grid step.
pub fn find_real_roots_with_step(
    f: &ExponentialPolynomial,
    window: (f64, f64),
    tol: f64,
    max_step: f64,
) -> Result<RootList> {
    let (a, b) = window;
    if !(b > a) {
        return Err(Error::Invalid(format!("empty window [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let width = f.bandwidth();
    let mut out = RootList {
        window,
        roots: Vec::new(),
        multiplicities: Vec::new(),
        min_gap: None,
        newton_failures: 0,
    };
    if width <= 0.0 {
        return Ok(out);
    }
    let step = (1.0 / (8.0 * width)).min(max_step);
    let n = ((b - a) / step).ceil().max(2.0) as usize;
    let h = (b - a) / n as f64;
    let scale = f.scale();

    let mags = par::map_range(0..n + 1, |i| f.eval_real(a + i as f64 * h).norm());
    let seeds: Vec<f64> = (0..=n)
        .filter(|&i| {
            let left = if i == 0 { f64::INFINITY } else { mags[i - 1] };
            let right = if i == n { f64::INFINITY } else { mags[i + 1] };
            mags[i] <= left && mags[i] <= right
        })
        .map(|i| a + i as f64 * h)
        .collect();

    let found = par::map_range(0..seeds.len(), |i| newton(f, seeds[i]));
    let mut candidates = Vec::new();
    for r in found {
        match r {
            Some(t) => {
                if t.im.abs() <= REAL_ACCEPT_TOL
                    && t.re >= a - DEDUP_TOL
                    && t.re <= b + DEDUP_TOL
                    && f.eval_real(t.re).norm() <= tol * scale
                {
                    candidates.push(t.re);
                }
            }
            None => out.newton_failures += 1,
        }
    }
    if out.newton_failures > 0 {
        log::debug!("{} Newton seeds did not converge", out.newton_failures);
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup_by(|x, y| (*x - *y).abs() <= DEDUP_TOL);

    for t in candidates {
        let m = multiplicity(f, t);
        if m > 1 {
            log::warn!("root at t = {t} has multiplicity {m}; the polynomial is probably not regular");
        }
        out.roots.push(t);
        out.multiplicities.push(m);
    }
    out.min_gap = out
        .roots
        .windows(2)
        .map(|w| w[1] - w[0])
        .min_by(f64::total_cmp);
    Ok(out)
}

fn newton(f: &ExponentialPolynomial, seed: f64) -> Option<Complex64> {
    let mut t = Complex64::new(seed, 0.0);
    for _ in 0..NEWTON_MAX_ITER {
        let (v, d) = f.value_and_derivative(t);
        if v.norm() == 0.0 {
            return Some(t);
        }
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return None;
        }
        let step = v / d;
        t -= step;
        if !(t.re.is_finite() && t.im.is_finite()) {
            return None;
        }
        if step.norm() <= 1e-14 * t.norm().max(1.0) {
            return Some(t);
        }
    }
    None
}

fn multiplicity(f: &ExponentialPolynomial, t: f64) -> u32 {
    let z = Complex64::new(t, 0.0);
    let mut m = 1;
    while m < 8 {
        let d = f.derivative(m, z).norm();
        if d <= MULTIPLICITY_TOL * f.derivative_scale(m) {
            m += 1;
        } else {
            break;
        }
    }
    m
}

/// Number of zeros of `f` in `[t0, t1] × [−H, H]` by the argument principle.
///
/// The phase of `f` is tracked along the boundary with adaptive bisection so
/// that consecutive samples differ by less than half a radian; the total
/// change divided by `2π` is the winding number. Every boundary sample must
/// satisfy `|f| ≥ 1e-8·Σ|a_j e^{2πiλ_j t}|`.
pub fn argument_principle_count(f: &ExponentialPolynomial, rect: (f64, f64), height: f64) -> Result<i64> {
    let (t0, t1) = rect;
    if !(t1 > t0) || !(height > 0.0) {
        return Err(Error::Invalid("degenerate contour rectangle".into()));
    }
    let g = f.centered();
    let corners = [
        Complex64::new(t0, -height),
        Complex64::new(t1, -height),
        Complex64::new(t1, height),
        Complex64::new(t0, height),
    ];
    let edges = [
        ContourEdge::Bottom,
        ContourEdge::Right,
        ContourEdge::Top,
        ContourEdge::Left,
    ];
    let density = g.bandwidth().max(1.0);
    let mut total = 0.0;
    for (k, edge) in edges.iter().enumerate() {
        let (za, zb) = (corners[k], corners[(k + 1) % 4]);
        let len = (zb - za).norm();
        let segments = (len * 16.0 * density).ceil() as usize + 8;
        let parts = par::map_range(0..segments, |s| {
            let p0 = za + (zb - za) * (s as f64 / segments as f64);
            let p1 = za + (zb - za) * ((s + 1) as f64 / segments as f64);
            phase_change(&g, p0, p1, 0, *edge)
        });
        for p in parts {
            total += p?;
        }
    }
    let winding = total / TAU;
    let rounded = winding.round();
    let residue = (winding - rounded).abs();
    if residue > 0.01 {
        return Err(Error::Residue(residue));
    }
    Ok(rounded as i64)
}

fn phase_change(
    g: &ExponentialPolynomial,
    z0: Complex64,
    z1: Complex64,
    depth: u32,
    edge: ContourEdge,
) -> Result<f64> {
    let v0 = checked_value(g, z0, edge)?;
    let v1 = checked_value(g, z1, edge)?;
    let d = (v1 / v0).arg();
    if d.abs() < 0.5 || depth >= 40 {
        return Ok(d);
    }
    let mid = (z0 + z1) * 0.5;
    Ok(phase_change(g, z0, mid, depth + 1, edge)? + phase_change(g, mid, z1, depth + 1, edge)?)
}

fn checked_value(g: &ExponentialPolynomial, z: Complex64, edge: ContourEdge) -> Result<Complex64> {
    let v = g.eval(z);
    if v.norm() < 1e-8 * g.local_scale(z) {
        return Err(Error::ZeroNearContour { edge });
    }
    Ok(v)
}

/// Outcome of comparing real roots with the argument-principle count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    /// The window actually audited (endpoints are nudged off zeros).
    pub window: (f64, f64),
    pub height: f64,
    /// Real roots in the window, with multiplicity.
    pub real_count: u64,
    /// Zeros inside the rectangle.
    pub contour_count: i64,
    /// `contour_count − real_count`.
    pub complex_count: i64,
    pub pass: bool,
}

/// `f` is real-rooted on the window iff the rectangle `[t0, t1] × [−H, H]`
/// holds no more zeros than the real axis does.
pub fn real_rootedness_audit(
    f: &ExponentialPolynomial,
    window: (f64, f64),
    height: f64,
) -> Result<AuditReport> {
    let a = nudge_endpoint(f, window.0, -1.0);
    let b = nudge_endpoint(f, window.1, 1.0);
    let roots = find_real_roots(f, (a, b), 1e-10)?;
    let mut h = height;
    let contour = match argument_principle_count(f, (a, b), h) {
        Err(Error::ZeroNearContour {
            edge: ContourEdge::Top | ContourEdge::Bottom,
        }) => {
            h *= 2.0;
            argument_principle_count(f, (a, b), h)?
        }
        other => other?,
    };
    let real = roots.count();
    Ok(AuditReport {
        window: (a, b),
        height: h,
        real_count: real,
        contour_count: contour,
        complex_count: contour - real as i64,
        pass: contour == real as i64,
    })
}

/// Moves a window endpoint outward until `|f|` there is comfortably nonzero.
fn nudge_endpoint(f: &ExponentialPolynomial, t: f64, dir: f64) -> f64 {
    let scale = f.scale();
    let step = 1.0 / (64.0 * f.bandwidth().max(1.0));
    let mut x = t;
    for i in 0..64 {
        if f.eval_real(x).norm() >= 1e-4 * scale {
            return x;
        }
        x = t + dir * step * (i + 1) as f64 / 8.0;
    }
    x
}

/// `(1/2T)·Σ_{t ∈ Λ ∩ [−T,T]} e^{−2πiξt}` over a symmetric root list.
///
/// For a Fourier quasicrystal this tends to the spectral coefficient at `ξ`
/// as `T → ∞`, with error `O(1/T)`.
pub fn recover_coefficient(roots: &RootList, xi: f64) -> Result<Complex64> {
    let (a, b) = roots.window;
    let half = 0.5 * (b - a);
    if (a + b).abs() > 1e-9 * half.max(1.0) {
        return Err(Error::Invalid("coefficient recovery needs a symmetric window".into()));
    }
    if roots.roots.is_empty() {
        log::warn!("empty root list; coefficient recovered as 0");
        return Ok(Complex64::default());
    }
    let mut acc = CompensatedSum::new();
    for (t, m) in roots.iter() {
        acc.add(cis_turns(-xi * t) * m as f64);
    }
    Ok(acc.value() / (2.0 * half))
}

/// Zero density from a symmetric root list, weighted by the Hann window
/// `cos²(πt/2T)`. Smooth weighting makes the error decay like `1/T²`
/// instead of the `1/T` of a raw count.
pub fn windowed_density(roots: &RootList) -> Result<f64> {
    let (a, b) = roots.window;
    let half = 0.5 * (b - a);
    if (a + b).abs() > 1e-9 * half.max(1.0) {
        return Err(Error::Invalid("windowed density needs a symmetric window".into()));
    }
    let sum: f64 = roots
        .iter()
        .map(|(t, m)| m as f64 * (std::f64::consts::FRAC_PI_2 * t / half).cos().powi(2))
        .sum();
    Ok(sum / half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::samples::*;
    use std::f64::consts::SQRT_2;

    fn unit_circle_minus_one() -> ExponentialPolynomial {
        ExponentialPolynomial::new(
            vec![1.0, 0.0],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn restriction_examples() {
        let ell = Direction::golden_pair();
        let f = restrict_to_line(&diagonal(), &ell).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.freqs()[0], 0.0);
        assert!((f.freqs()[1] - (1.0 + SQRT_2)).abs() < 1e-15);
        assert_eq!(f.coeffs()[0].re, -1.0);

        let f = restrict_to_line(&quadric(0.5), &ell).unwrap();
        let expected = [0.0, 1.0, SQRT_2, 1.0 + SQRT_2];
        for (l, e) in f.freqs().iter().zip(expected) {
            assert!((l - e).abs() < 1e-15);
        }
        let c: Vec<f64> = f.coeffs().iter().map(|c| c.re).collect();
        assert_eq!(c, vec![1.0, 0.5, 0.5, 1.0]);
    }

    #[test]
    fn restriction_cancellation_is_degenerate() {
        // z1 − z2 on ℓ = (1,1): both frequencies equal 1 and cancel
        let p = crate::laurent::LaurentPoly::from_real_terms(2, &[(&[1, 0], 1.0), (&[0, 1], -1.0)]).unwrap();
        let ell = Direction::new(vec![1.0, 1.0]).unwrap();
        assert!(matches!(restrict_to_line(&p, &ell), Err(Error::Degenerate(_))));
    }

    #[test]
    fn shift_translates_frequencies() {
        let ell = Direction::golden_pair();
        let p = sheared_quadric(0.5);
        let (q, beta) = p.shift_to_polynomial().unwrap();
        let fp = restrict_to_line(&p, &ell).unwrap();
        let fq = restrict_to_line(&q, &ell).unwrap();
        let d = beta.dot(&ell.entries);
        for (a, b) in fp.freqs().iter().zip(fq.freqs()) {
            assert!((a - d - b).abs() < 1e-14);
        }
        let rp = find_real_roots(&fp, (0.0, 20.0), 1e-10).unwrap();
        let rq = find_real_roots(&fq, (0.0, 20.0), 1e-10).unwrap();
        assert_eq!(rp.roots.len(), rq.roots.len());
        for (a, b) in rp.roots.iter().zip(&rq.roots) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn roots_of_unit_circle_minus_one() {
        let r = find_real_roots(&unit_circle_minus_one(), (-0.5, 2.5), 1e-10).unwrap();
        assert_eq!(r.roots.len(), 3);
        for (t, e) in r.roots.iter().zip([0.0, 1.0, 2.0]) {
            assert!((t - e).abs() < 1e-12);
        }
        assert_eq!(r.multiplicities, vec![1, 1, 1]);
    }

    #[test]
    fn diagonal_roots_closed_form() {
        let f = restrict_to_line(&diagonal(), &Direction::golden_pair()).unwrap();
        // the window is open, so widen it slightly to catch t = 0
        let r = find_real_roots(&f, (-1e-3, 1.0), 1e-10).unwrap();
        let h = SQRT_2 - 1.0;
        assert_eq!(r.roots.len(), 3);
        for (i, t) in r.roots.iter().enumerate() {
            assert!((t - i as f64 * h).abs() < 1e-10);
        }
        assert!((r.min_gap.unwrap() - h).abs() < 1e-10);
    }

    #[test]
    fn double_root_multiplicity() {
        // (e^{2πit} − 1)^2 = e^{4πit} − 2e^{2πit} + 1
        let f = ExponentialPolynomial::new(
            vec![2.0, 1.0, 0.0],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)],
        )
        .unwrap();
        let r = find_real_roots(&f, (-0.5, 1.5), 1e-10).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.multiplicities, vec![2, 2]);
    }

    #[test]
    fn argument_principle_examples() {
        assert_eq!(argument_principle_count(&unit_circle_minus_one(), (-0.5, 0.5), 1.0).unwrap(), 1);
        let f = restrict_to_line(&diagonal(), &Direction::golden_pair()).unwrap();
        assert_eq!(argument_principle_count(&f, (-0.1, 1.1), 1.0).unwrap(), 3);
        assert_eq!(argument_principle_count(&f, (0.1, 0.3), 1.0).unwrap(), 0);
    }

    #[test]
    fn argument_principle_zero_on_contour() {
        let r = argument_principle_count(&unit_circle_minus_one(), (0.0, 0.5), 1.0);
        assert!(matches!(r, Err(Error::ZeroNearContour { edge: ContourEdge::Left })));
    }

    #[test]
    fn audit_examples() {
        let ell = Direction::golden_pair();
        let f1 = restrict_to_line(&diagonal(), &ell).unwrap();
        assert!(real_rootedness_audit(&f1, (0.0, 10.0), 1.0).unwrap().pass);
        let f2 = restrict_to_line(&quadric(0.5), &ell).unwrap();
        assert!(real_rootedness_audit(&f2, (0.0, 50.0), 1.0).unwrap().pass);
        let f3 = restrict_to_line(&non_lee_yang(), &ell).unwrap();
        let rep = real_rootedness_audit(&f3, (0.0, 50.0), 1.0).unwrap();
        assert!(!rep.pass);
        assert!(rep.complex_count > 0);
    }

    #[test]
    fn quadric_root_count_matches_contour() {
        let f = restrict_to_line(&quadric(0.5), &Direction::golden_pair()).unwrap();
        let r = find_real_roots(&f, (0.0, 50.0), 1e-10).unwrap();
        let n = argument_principle_count(&f, (0.0, 50.0), 1.0).unwrap();
        assert_eq!(r.count() as i64, n);
    }

    #[test]
    fn recovered_coefficients_for_diagonal() {
        let f = restrict_to_line(&diagonal(), &Direction::golden_pair()).unwrap();
        let roots = find_real_roots(&f, (-500.0, 500.0), 1e-10).unwrap();
        let density = 1.0 + SQRT_2;
        let c0 = recover_coefficient(&roots, 0.0).unwrap();
        assert!((c0 - density).norm() < 5e-3);
        let c1 = recover_coefficient(&roots, density).unwrap();
        assert!((c1 - density).norm() < 5e-3);
        assert!(recover_coefficient(&roots, 0.5).unwrap().norm() < 5e-3);
        let plus = recover_coefficient(&roots, 0.7).unwrap();
        let minus = recover_coefficient(&roots, -0.7).unwrap();
        assert!((plus - minus.conj()).norm() < 1e-12);
    }

    #[test]
    fn windowed_density_of_diagonal() {
        let f = restrict_to_line(&diagonal(), &Direction::golden_pair()).unwrap();
        let roots = find_real_roots(&f, (-300.0, 300.0), 1e-10).unwrap();
        let d = windowed_density(&roots).unwrap();
        assert!((d - (1.0 + SQRT_2)).abs() < 1e-4);
    }

    #[test]
    fn recovery_rejects_asymmetric_window() {
        let f = unit_circle_minus_one();
        let roots = find_real_roots(&f, (0.5, 3.5), 1e-10).unwrap();
        assert!(recover_coefficient(&roots, 0.0).is_err());
    }
}

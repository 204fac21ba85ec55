//! The torus curve `Σ(p)` of a two-variable Laurent polynomial.
//!
//! Everything here parametrizes `Σ(p)` by one coordinate `s` (the fixed
//! axis) and solves for the other coordinate `u` (the free axis) slice by
//! slice. On a smooth branch the toric gradient `g = (z_i ∂_i p)` satisfies
//! `g_free·u' + g_fixed = 0`, so `u' = −g_fixed/g_free` is real and the
//! directional measure has slice density `|ℓ_free − ℓ_fixed·u'| ds`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{Direction, ProperCone};
use crate::crystal::{find_real_roots_with_step, ExponentialPolynomial};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::univariate::UniPoly;
use crate::{cis_turns, par, Complex64, CompensatedSum};

/// Slice roots farther than this from the unit circle are discarded.
pub const CIRCLE_TOL: f64 = 1e-8;
/// Absolute tolerance of the resolution-doubling check.
pub const QUADRATURE_TOL: f64 = 1e-8;
pub const MAX_RESOLUTION: usize = 1 << 16;
pub const DEFAULT_RESOLUTION: usize = 256;
/// Branches closer than this on a slice are treated as colliding.
pub const COLLISION_TOL: f64 = 1e-6;
const SAMPLES_PER_STREAM: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::X1 => Axis::X2,
            Axis::X2 => Axis::X1,
        }
    }

    /// Torus point with this axis at `fixed` and the other one at `free`.
    pub fn assemble(self, fixed: f64, free: f64) -> [f64; 2] {
        match self {
            Axis::X1 => [fixed, free],
            Axis::X2 => [free, fixed],
        }
    }
}

/// The axis to hold fixed: `x2`, unless `p` does not involve `z1`.
pub fn default_axis(p: &LaurentPoly) -> Axis {
    match p.degree_range(0) {
        Some((lo, hi)) if lo == hi => Axis::X1,
        _ => Axis::X2,
    }
}

fn require_arity_two(p: &LaurentPoly) -> Result<()> {
    if p.arity() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.arity(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Free-coordinate solutions on one slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceRoots {
    /// Sorted values in `[0, 1)`.
    pub values: Vec<f64>,
    /// Roots discarded because they are off the unit circle.
    pub off_circle: usize,
}

/// Solves `p = 0` on the slice `x_axis = fixed` for the free coordinate.
pub fn slice_solve(p: &LaurentPoly, axis: Axis, fixed: f64) -> Result<SliceRoots> {
    slice_solve_with_tol(p, axis, fixed, CIRCLE_TOL)
}

/// As [`slice_solve`] with a custom unit-circle tolerance.
pub fn slice_solve_with_tol(
    p: &LaurentPoly,
    axis: Axis,
    fixed: f64,
    circle_tol: f64,
) -> Result<SliceRoots> {
    require_arity_two(p)?;
    let (fi, ui) = (axis.index(), axis.other().index());
    let terms: Vec<(i64, Complex64)> = p
        .terms()
        .map(|(e, &c)| (e.0[ui], c * cis_turns(e.0[fi] as f64 * fixed)))
        .collect();
    let (poly, _) = UniPoly::from_laurent(&terms)?;
    if poly.degree().is_none() || poly.scale() <= 1e-14 * p.scale() {
        return Err(Error::Degenerate(format!("slice {axis:?} = {fixed} is identically zero")));
    }
    let mut values = Vec::new();
    let mut off_circle = 0;
    for z in poly.roots()? {
        if (z.norm() - 1.0).abs() <= circle_tol {
            let t = z.arg() / std::f64::consts::TAU;
            let v = t.rem_euclid(1.0);
            values.push(if v >= 1.0 { 0.0 } else { v });
        } else {
            off_circle += 1;
        }
    }
    values.sort_by(f64::total_cmp);
    Ok(SliceRoots { values, off_circle })
}

/// Circular distance on `R/Z`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn min_circular_gap(v: &[f64]) -> f64 {
    match v.len() {
        0 | 1 => 1.0,
        n => {
            let mut g = v[0] + 1.0 - v[n - 1];
            for w in v.windows(2) {
                g = g.min(w[1] - w[0]);
            }
            g
        }
    }
}

/// `r = g_fixed/g_free`, so that `u' = −Re r`. Errors when the free partial
/// derivative is negligible.
fn gradient_ratio(p: &LaurentPoly, axis: Axis, x: [f64; 2]) -> Result<Complex64> {
    let (_, g) = p.eval_exp_with_toric_gradient(&x);
    let free = g[axis.other().index()];
    if free.norm() < 1e-9 * p.scale() {
        return Err(Error::NearSingular(format!(
            "free partial derivative vanishes at ({}, {})",
            x[0], x[1]
        )));
    }
    Ok(g[axis.index()] / free)
}

/// A point of `Σ(p)` from a traced slice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlicePoint {
    pub axis: Axis,
    pub fixed_value: f64,
    pub free_value: f64,
    pub branch_id: usize,
    /// `d(free)/d(fixed)` along the branch.
    pub slope: f64,
}

impl SlicePoint {
    pub fn coords(&self) -> [f64; 2] {
        self.axis.assemble(self.fixed_value, self.free_value)
    }
}

/// `Σ(p)` sampled on `resolution` equispaced slices and split into branches.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveBranches {
    pub axis: Axis,
    pub resolution: usize,
    /// `branches[b][j]` lies on slice `j`.
    pub branches: Vec<Vec<SlicePoint>>,
    /// Branch `b` continues as branch `closure[b]` after one period of the
    /// fixed coordinate.
    pub closure: Vec<usize>,
}

impl CurveBranches {
    pub fn points(&self) -> impl Iterator<Item = &SlicePoint> {
        self.branches.iter().flatten()
    }

    /// Number of fixed-coordinate periods before each branch closes up.
    pub fn wraps(&self) -> Vec<usize> {
        (0..self.closure.len())
            .map(|b| {
                let mut c = self.closure[b];
                let mut n = 1;
                while c != b {
                    c = self.closure[c];
                    n += 1;
                }
                n
            })
            .collect()
    }

    /// CSV with columns `x1,x2,branch,slope`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x1,x2,branch,slope\n");
        for pt in self.points() {
            let [a, b] = pt.coords();
            let _ = writeln!(s, "{a:.16e},{b:.16e},{},{:.16e}", pt.branch_id, pt.slope);
        }
        s
    }
}

/// Traces `Σ(p)` on slices `x_axis = j/resolution`.
///
/// Roots on adjacent slices are matched by circular distance to the
/// slope-predicted position, within half the smallest gap between roots. A
/// failed match is retried with four sub-steps before giving up.
pub fn trace_curve(p: &LaurentPoly, resolution: usize) -> Result<CurveBranches> {
    require_arity_two(p)?;
    if resolution == 0 {
        return Err(Error::Invalid("resolution must be positive".into()));
    }
    let axis = default_axis(p);
    let h = 1.0 / resolution as f64;
    let slices = par::map_range(0..resolution, |j| slice_with_slopes(p, axis, j as f64 * h));
    let slices: Vec<Vec<(f64, f64)>> = slices.into_iter().collect::<Result<_>>()?;
    let count = slices[0].len();
    let mut branches: Vec<Vec<SlicePoint>> = (0..count)
        .map(|b| {
            vec![SlicePoint {
                axis,
                fixed_value: 0.0,
                free_value: slices[0][b].0,
                branch_id: b,
                slope: slices[0][b].1,
            }]
        })
        .collect();
    let mut closure = vec![0; count];
    for j in 0..resolution {
        let s0 = j as f64 * h;
        let state: Vec<(f64, f64)> = branches.iter().map(|br| {
            let last = br.last().unwrap();
            (last.free_value, last.slope)
        }).collect();
        let next = &slices[(j + 1) % resolution];
        let perm = match match_step(&state, next, h) {
            Some(m) => m,
            None => refine_match(p, axis, &state, s0, h, next)?,
        };
        if j + 1 == resolution {
            closure = perm;
        } else {
            for (b, &r) in perm.iter().enumerate() {
                branches[b].push(SlicePoint {
                    axis,
                    fixed_value: (j + 1) as f64 * h,
                    free_value: next[r].0,
                    branch_id: b,
                    slope: next[r].1,
                });
            }
        }
    }
    Ok(CurveBranches {
        axis,
        resolution,
        branches,
        closure,
    })
}

/// Roots and slopes on one slice, with the collision check.
fn slice_with_slopes(p: &LaurentPoly, axis: Axis, s: f64) -> Result<Vec<(f64, f64)>> {
    let roots = slice_solve(p, axis, s)?;
    if min_circular_gap(&roots.values) < COLLISION_TOL {
        return Err(Error::NearSingular(format!(
            "branches collide on slice {axis:?} = {s}: near-singular curve"
        )));
    }
    roots
        .values
        .iter()
        .map(|&u| {
            let r = gradient_ratio(p, axis, axis.assemble(s, u))?;
            Ok((u, -r.re))
        })
        .collect()
}

/// Assignment branch → root index, or `None` if ambiguous.
fn match_step(state: &[(f64, f64)], next: &[(f64, f64)], h: f64) -> Option<Vec<usize>> {
    if state.len() != next.len() {
        return None;
    }
    let values: Vec<f64> = next.iter().map(|r| r.0).collect();
    let threshold = 0.5 * min_circular_gap(&values);
    let mut used = vec![false; next.len()];
    let mut perm = Vec::with_capacity(state.len());
    for &(u, slope) in state {
        let predicted = u + slope * h;
        let (idx, d) = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, circle_distance(v, predicted)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d > threshold || used[idx] {
            return None;
        }
        used[idx] = true;
        perm.push(idx);
    }
    Some(perm)
}

fn refine_match(
    p: &LaurentPoly,
    axis: Axis,
    state: &[(f64, f64)],
    s0: f64,
    h: f64,
    next: &[(f64, f64)],
) -> Result<Vec<usize>> {
    let sub = h / 4.0;
    let mut cur: Vec<(f64, f64)> = state.to_vec();
    for i in 1..4 {
        let mid = slice_with_slopes(p, axis, s0 + i as f64 * sub)?;
        let perm = match_step(&cur, &mid, sub).ok_or_else(|| mismatch(axis, s0, state.len(), mid.len()))?;
        cur = perm.iter().map(|&r| mid[r]).collect();
    }
    match_step(&cur, next, sub).ok_or_else(|| mismatch(axis, s0, state.len(), next.len()))
}

fn mismatch(axis: Axis, s: f64, a: usize, b: usize) -> Error {
    Error::TraceFailed(format!(
        "branch matching failed after refinement near {axis:?} = {s} ({a} branches, {b} roots)"
    ))
}

/// Unit normal of `Σ(p)` at a point of the curve.
///
/// The normal is the real direction of the toric gradient `(z1 ∂1 p, z2 ∂2 p)`.
/// With a cone the representative in `C` is preferred (or the one closer to
/// it); otherwise the first nonzero component is made positive.
pub fn normal_at(p: &LaurentPoly, x: [f64; 2], cone: Option<&ProperCone>) -> Result<[f64; 2]> {
    require_arity_two(p)?;
    let (v, g) = p.eval_exp_with_toric_gradient(&x);
    let scale = p.scale();
    if v.norm() > 1e-6 * scale {
        return Err(Error::Invalid(format!("point ({}, {}) is not on the curve", x[0], x[1])));
    }
    let pivot = if g[0].norm() >= g[1].norm() { g[0] } else { g[1] };
    if pivot.norm() < 1e-9 * scale {
        return Err(Error::NearSingular(format!("gradient vanishes at ({}, {})", x[0], x[1])));
    }
    let d = [g[0] / pivot, g[1] / pivot];
    if d[0].im.abs().max(d[1].im.abs()) > 1e-6 {
        return Err(Error::NearSingular(format!(
            "gradient direction is not real at ({}, {})",
            x[0], x[1]
        )));
    }
    let norm = d[0].re.hypot(d[1].re);
    let n = [d[0].re / norm, d[1].re / norm];
    Ok(orient(n, cone))
}

fn orient(n: [f64; 2], cone: Option<&ProperCone>) -> [f64; 2] {
    let neg = [-n[0], -n[1]];
    match cone {
        Some(c) => {
            if cone_margin(c, &n) >= cone_margin(c, &neg) {
                n
            } else {
                neg
            }
        }
        None => {
            if n[0] > 0.0 || (n[0] == 0.0 && n[1] > 0.0) {
                n
            } else {
                neg
            }
        }
    }
}

/// `min_i (base^T x)_i`; nonnegative iff `x ∈ C`.
fn cone_margin(c: &ProperCone, x: &[f64]) -> f64 {
    c.cone_coordinates(x).into_iter().fold(f64::INFINITY, f64::min)
}

/// One quadrature node: slice coordinate and `(u, −u')` for each root.
#[derive(Clone, Debug)]
struct SliceSample {
    s: f64,
    roots: Vec<(f64, f64)>,
}

/// Caches slice samples of `Σ(p)` for the periodic trapezoid rule and
/// refines them by doubling.
#[derive(Clone, Debug)]
pub struct SpectrumEvaluator {
    p: LaurentPoly,
    axis: Axis,
    samples: Vec<SliceSample>,
}

impl SpectrumEvaluator {
    pub fn new(p: &LaurentPoly, resolution: usize) -> Result<Self> {
        require_arity_two(p)?;
        if resolution < 2 {
            return Err(Error::Invalid("resolution must be at least 2".into()));
        }
        let axis = default_axis(p);
        let h = 1.0 / resolution as f64;
        let samples = par::map_range(0..resolution, |j| sample(p, axis, j as f64 * h))
            .into_iter()
            .collect::<Result<_>>()?;
        Ok(Self {
            p: p.clone(),
            axis,
            samples,
        })
    }

    pub fn resolution(&self) -> usize {
        self.samples.len()
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    fn refine(&mut self) -> Result<()> {
        let n = self.samples.len();
        if 2 * n > MAX_RESOLUTION {
            return Err(Error::NoConvergence(format!(
                "resolution-doubling check still above {QUADRATURE_TOL:e} at resolution {n}"
            )));
        }
        let h = 1.0 / (2 * n) as f64;
        let odd: Vec<SliceSample> = par::map_range(0..n, |j| sample(&self.p, self.axis, (2 * j + 1) as f64 * h))
            .into_iter()
            .collect::<Result<_>>()?;
        let mut merged = Vec::with_capacity(2 * n);
        for (e, o) in std::mem::take(&mut self.samples).into_iter().zip(odd) {
            merged.push(e);
            merged.push(o);
        }
        self.samples = merged;
        Ok(())
    }

    /// Trapezoid value using every `stride`-th sample.
    fn raw(&self, ell: &[f64], k: &[i64], stride: usize) -> Complex64 {
        let (fi, ui) = (self.axis.index(), self.axis.other().index());
        let mut acc = CompensatedSum::new();
        let mut count = 0usize;
        for smp in self.samples.iter().step_by(stride) {
            count += 1;
            for &(u, ratio) in &smp.roots {
                let density = (ell[ui] + ell[fi] * ratio).abs();
                let phase = k[ui] as f64 * u + k[fi] as f64 * smp.s;
                acc.add(cis_turns(phase) * density);
            }
        }
        acc.value() / count as f64
    }

    /// `m̂_ℓ(k)` for every `k`, refined until halving the resolution changes
    /// no value by more than [`QUADRATURE_TOL`].
    pub fn coefficients(&mut self, ell: &Direction, ks: &[Vec<i64>]) -> Result<Vec<Complex64>> {
        if ell.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: ell.dim(),
            });
        }
        if let Some(k) = ks.iter().find(|k| k.len() != 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: k.len(),
            });
        }
        loop {
            let this = &*self;
            let pairs = par::map_range(0..ks.len(), |i| {
                (this.raw(&ell.entries, &ks[i], 1), this.raw(&ell.entries, &ks[i], 2))
            });
            let worst = pairs.iter().map(|(f, c)| (f - c).norm()).fold(0.0, f64::max);
            if worst <= QUADRATURE_TOL {
                return Ok(pairs.into_iter().map(|(f, _)| f).collect());
            }
            log::debug!("doubling resolution {} (change {worst:e})", self.resolution());
            self.refine()?;
        }
    }

    pub fn coefficient(&mut self, ell: &Direction, k: &[i64]) -> Result<Complex64> {
        Ok(self.coefficients(ell, &[k.to_vec()])?[0])
    }
}

fn sample(p: &LaurentPoly, axis: Axis, s: f64) -> Result<SliceSample> {
    let roots = slice_solve(p, axis, s)?;
    let roots = roots
        .values
        .into_iter()
        .map(|u| Ok((u, gradient_ratio(p, axis, axis.assemble(s, u))?.re)))
        .collect::<Result<_>>()?;
    Ok(SliceSample { s, roots })
}

/// `m̂_ℓ(k) = ∫ e^{2πi⟨k,x⟩} dm_ℓ(x)` by the periodic trapezoid rule over
/// slices, starting at `resolution` and doubling until converged.
pub fn fourier_coefficient(
    p: &LaurentPoly,
    ell: &Direction,
    k: &[i64],
    resolution: usize,
) -> Result<Complex64> {
    SpectrumEvaluator::new(p, resolution)?.coefficient(ell, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub coefficient: Complex64,
    /// `⟨ℓ, k⟩`.
    pub frequency: f64,
}

/// `m̂_ℓ(k)` on a set of lattice vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub entries: BTreeMap<(i64, i64), SpectrumEntry>,
    /// Resolution at which the doubling check passed.
    pub resolution: usize,
}

impl SpectrumTable {
    pub fn get(&self, k: (i64, i64)) -> Option<Complex64> {
        self.entries.get(&k).map(|e| e.coefficient)
    }

    /// `m̂(0)`, the total mass of `m_ℓ` on the torus.
    pub fn mass(&self) -> f64 {
        self.get((0, 0)).map_or(0.0, |c| c.re)
    }

    /// Largest violation of `m̂(−k) = conj m̂(k)` and of `|m̂(k)| ≤ m̂(0)`.
    pub fn invariant_defects(&self) -> (f64, f64) {
        let m0 = self.mass();
        let mut sym: f64 = 0.0;
        let mut bound: f64 = 0.0;
        for (&(a, b), e) in &self.entries {
            if let Some(m) = self.get((-a, -b)) {
                sym = sym.max((m - e.coefficient.conj()).norm());
            }
            bound = bound.max(e.coefficient.norm() - m0);
        }
        (sym, bound)
    }

    pub fn check_invariants(&self) -> bool {
        let (sym, bound) = self.invariant_defects();
        sym <= 1e-9 && bound <= 1e-9
    }

    /// CSV with columns `k1,k2,re,im,freq`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k1,k2,re,im,freq\n");
        for (&(a, b), e) in &self.entries {
            let _ = writeln!(
                s,
                "{a},{b},{:.16e},{:.16e},{:.16e}",
                e.coefficient.re, e.coefficient.im, e.frequency
            );
        }
        s
    }
}

/// All `m̂_ℓ(k)` with `‖k‖∞ ≤ k_radius`.
pub fn spectrum_table(
    p: &LaurentPoly,
    ell: &Direction,
    k_radius: i64,
    resolution: usize,
) -> Result<SpectrumTable> {
    let ks: Vec<Vec<i64>> = (-k_radius..=k_radius)
        .flat_map(|a| (-k_radius..=k_radius).map(move |b| vec![a, b]))
        .collect();
    table_for(p, ell, &ks, resolution)
}

/// `m̂_ℓ(k)` for an explicit list of `k`.
pub fn table_for(
    p: &LaurentPoly,
    ell: &Direction,
    ks: &[Vec<i64>],
    resolution: usize,
) -> Result<SpectrumTable> {
    let mut ev = SpectrumEvaluator::new(p, resolution)?;
    let values = ev.coefficients(ell, ks)?;
    let entries = ks
        .iter()
        .zip(values)
        .map(|(k, c)| {
            (
                (k[0], k[1]),
                SpectrumEntry {
                    coefficient: c,
                    frequency: ell.dot(k),
                },
            )
        })
        .collect();
    Ok(SpectrumTable {
        entries,
        resolution: ev.resolution(),
    })
}

/// Monte Carlo estimate of `m_ℓ(T²)` with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlabEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Estimates `Vol{x + tℓ : x ∈ Σ, |t| ≤ ε}/(2ε)` by uniform sampling of the
/// unit square.
///
/// A sample `x` is in the slab iff `t ↦ p(e^{2πi(x − tℓ)})` has a real zero in
/// `[−ε, ε]`. Zeros are counted with multiplicity, which keeps the estimator
/// unbiased even when `ε` exceeds half the first-return time. Samples are
/// drawn in blocks of 4096, block `b` using ChaCha stream `b` of `seed`.
pub fn slab_volume_oracle(
    p: &LaurentPoly,
    ell: &Direction,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<SlabEstimate> {
    require_arity_two(p)?;
    if !(eps > 0.0) || samples < 2 {
        return Err(Error::Invalid("need eps > 0 and at least two samples".into()));
    }
    let terms: Vec<(Vec<i64>, Complex64)> = p.terms().map(|(e, &c)| (e.0.clone(), c)).collect();
    let freqs: Vec<f64> = terms.iter().map(|(e, _)| -ell.dot(e)).collect();
    let blocks = samples.div_ceil(SAMPLES_PER_STREAM);
    let partial = par::map_range(0..blocks, |b| -> Result<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let n = SAMPLES_PER_STREAM.min(samples - b * SAMPLES_PER_STREAM);
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..n {
            let x = [rng.gen::<f64>(), rng.gen::<f64>()];
            let coeffs = terms
                .iter()
                .map(|(e, c)| c * cis_turns(e[0] as f64 * x[0] + e[1] as f64 * x[1]))
                .collect();
            let count = match ExponentialPolynomial::new(freqs.clone(), coeffs) {
                Ok(h) if h.len() > 1 => {
                    find_real_roots_with_step(&h, (-eps, eps), 1e-8, eps / 8.0)?.count() as f64
                }
                _ => 0.0,
            };
            sum += count;
            sq += count * count;
        }
        Ok((sum, sq))
    });
    let (mut sum, mut sq) = (0.0, 0.0);
    for r in partial {
        let (a, b) = r?;
        sum += a;
        sq += b;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sq / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(SlabEstimate {
        estimate: mean / (2.0 * eps),
        std_error: (var / n).sqrt() / (2.0 * eps),
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeSupportReport {
    /// `max |m̂(k)|` over `k ∉ C ∪ −C`.
    pub max_outside: f64,
    /// `max |m̂(k)|` over `k ∈ C ∪ −C`, `k ≠ 0`.
    pub max_inside: f64,
    pub mass: f64,
    pub k_radius: i64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip)]
    pub table: SpectrumTable,
}

/// Checks `supp m̂_ℓ ⊂ C ∪ −C` on `‖k‖∞ ≤ k_radius`, relative to `m̂(0)`.
pub fn cone_support_scan(
    p: &LaurentPoly,
    ell: &Direction,
    cone: &ProperCone,
    k_radius: i64,
    resolution: usize,
    tol: f64,
) -> Result<ConeSupportReport> {
    if cone.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cone.dim(),
        });
    }
    let table = spectrum_table(p, ell, k_radius, resolution)?;
    let mass = table.mass();
    let (mut outside, mut inside) = (0.0f64, 0.0f64);
    for (&(a, b), e) in &table.entries {
        let k = [a, b];
        let neg = [-a, -b];
        if k == [0, 0] {
            continue;
        }
        if cone.contains(&k) || cone.contains(&neg) {
            inside = inside.max(e.coefficient.norm());
        } else {
            outside = outside.max(e.coefficient.norm());
        }
    }
    Ok(ConeSupportReport {
        max_outside: outside,
        max_inside: inside,
        mass,
        k_radius,
        tol,
        pass: outside <= tol * mass,
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalConeReport {
    pub samples: usize,
    pub violations: usize,
    /// Smallest `min_i (base^T n)_i` over samples after choosing the better sign.
    pub worst_margin: f64,
    pub pass: bool,
}

/// Checks that every traced normal lies in `C ∪ −C`.
pub fn normal_cone_check(p: &LaurentPoly, cone: &ProperCone, samples: usize) -> Result<NormalConeReport> {
    let curve = trace_curve(p, samples)?;
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for pt in curve.points() {
        let n = normal_at(p, pt.coords(), Some(cone))?;
        let m = cone_margin(cone, &n);
        worst = worst.min(m);
        count += 1;
        if m < -1e-9 {
            violations += 1;
        }
    }
    Ok(NormalConeReport {
        samples: count,
        violations,
        worst_margin: worst,
        pass: violations == 0,
    })
}

//! End-to-end validators built from the other modules.

use std::f64::consts::{E, PI, TAU};

use serde::Serialize;

use crate::cone::{Direction, ProperCone};
use crate::crystal::{find_real_roots, restrict_to_line};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::LaurentPoly;
use crate::quad;
use crate::surface::{self, cone_support_scan, ConeSupportReport, SpectrumEvaluator};
use crate::{cis_turns, par, Complex64, CompensatedSum};

/// Both truncation tails of the summation check must be below this.
pub const TRUNCATION_TOL: f64 = 1e-8;

/// `f(ξ) = amp·e^{−(ξ−c)²/(2s²)}` and `f̂(t) = amp·s√(2π)·e^{−2π²s²t²}·e^{−2πict}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussianTest {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl GaussianTest {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !center.is_finite() {
            return Err(Error::Invalid("Gaussian width must be positive".into()));
        }
        Ok(Self {
            center,
            width,
            amplitude: 1.0,
        })
    }

    /// The zero test function.
    pub fn zero() -> Self {
        Self {
            center: 0.0,
            width: 1.0,
            amplitude: 0.0,
        }
    }

    pub fn f(&self, xi: f64) -> f64 {
        let d = (xi - self.center) / self.width;
        self.amplitude * (-0.5 * d * d).exp()
    }

    pub fn f_hat(&self, t: f64) -> Complex64 {
        let s = self.width;
        self.amplitude * s * TAU.sqrt() * (-2.0 * PI * PI * s * s * t * t).exp() * cis_turns(-self.center * t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LighthouseReport {
    pub pass: bool,
    pub scan: ConeSupportReport,
}

/// `(m_ℓ, C)` is a lighthouse iff the Fourier support of `m_ℓ` lies in
/// `C ∪ −C`. The other condition (singularity) holds since `Σ` is a curve.
pub fn lighthouse_check(
    p: &LaurentPoly,
    ell: &Direction,
    cone: &ProperCone,
    k_radius: i64,
    tol: f64,
    resolution: usize,
) -> Result<LighthouseReport> {
    let scan = cone_support_scan(p, ell, cone, k_radius, resolution, tol)?;
    Ok(LighthouseReport { pass: scan.pass, scan })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootTerm {
    pub t: f64,
    pub multiplicity: u32,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumTerm {
    pub k: Vec<i64>,
    pub frequency: f64,
    pub coefficient: Complex64,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummationReport {
    pub test: GaussianTest,
    pub t_max: f64,
    pub r_max: f64,
    /// `Σ_{t ∈ Λ ∩ [−T,T]} f̂(t)`.
    pub lhs: Complex64,
    /// `Σ_k conj(m̂(k))·f(⟨ℓ,k⟩)` over the truncated cone lattice.
    pub rhs: Complex64,
    pub residual: f64,
    /// Root-side and spectrum-side tail estimates.
    pub truncation_estimates: (f64, f64),
    pub pass: bool,
    pub root_terms: Vec<RootTerm>,
    pub spectrum_terms: Vec<SpectrumTerm>,
}

/// Compares both sides of the summation formula for a Gaussian test.
///
/// The coefficient of `f(⟨ℓ,k⟩)` is `conj m̂(k) = m̂(−k)`, the limit of
/// `(1/2T)Σ e^{−2πi⟨ℓ,k⟩t}` over the roots.
#[allow(clippy::too_many_arguments)]
pub fn verify_summation(
    p: &LaurentPoly,
    ell: &Direction,
    cone: &ProperCone,
    test: &GaussianTest,
    t_max: f64,
    r_max: f64,
    resolution: usize,
) -> Result<SummationReport> {
    if !(t_max > 0.0) || !(r_max >= 0.0) {
        return Err(Error::Invalid("T must be positive and R nonnegative".into()));
    }
    let f = restrict_to_line(p, ell)?;
    let roots = find_real_roots(&f, (-t_max, t_max), 1e-10)?;
    let ks = cone.enumerate_truncated(ell, r_max)?;

    let (lhs_tail, rhs_tail, per_unit, mass_bound) = if test.amplitude == 0.0 {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        let per_unit = match roots.min_gap {
            Some(g) => (1.0 / g).floor() + 1.0,
            None => f.bandwidth().ceil() + f.len() as f64,
        };
        let s = test.width;
        let a = 2.0 * PI * PI * s * s;
        let amp = test.amplitude.abs() * s * TAU.sqrt();
        let lhs_tail = 2.0 * per_unit * amp * (-a * t_max * t_max).exp() * (1.0 + 1.0 / (2.0 * a * t_max));
        let r2 = (2.0 * r_max).max(test.center.abs() + 40.0 * s);
        let outer = cone.enumerate_truncated(ell, r2)?;
        let tail_sum: f64 = outer
            .iter()
            .filter(|k| ell.dot(k).abs() > r_max)
            .map(|k| test.f(ell.dot(k)).abs())
            .sum();
        // |m̂(k)| ≤ m̂(0) = bandwidth for every k.
        let mass_bound = f.bandwidth();
        (lhs_tail, mass_bound * tail_sum, per_unit, mass_bound)
    };
    if lhs_tail > TRUNCATION_TOL || rhs_tail > TRUNCATION_TOL {
        let s = test.width;
        let a = 2.0 * PI * PI * s * s;
        let amp = test.amplitude.abs() * s * TAU.sqrt();
        let budget = (4.0 * per_unit * amp / TRUNCATION_TOL).max(E);
        let suggested_t = (budget.ln() / a).sqrt().max(t_max);
        let budget_r = (4.0 * mass_bound * f.bandwidth().max(1.0) / TRUNCATION_TOL).max(E);
        let suggested_r = (test.center.abs() + s * (2.0 * budget_r.ln()).sqrt() * 1.5).max(r_max);
        return Err(Error::Truncation {
            lhs_tail,
            rhs_tail,
            suggested_t,
            suggested_r,
        });
    }

    let root_terms: Vec<RootTerm> = roots
        .iter()
        .map(|(t, m)| RootTerm {
            t,
            multiplicity: m,
            value: test.f_hat(t) * m as f64,
        })
        .collect();
    let mut lhs = CompensatedSum::new();
    for r in &root_terms {
        lhs.add(r.value);
    }

    let coeffs = if test.amplitude == 0.0 {
        vec![Complex64::default(); ks.len()]
    } else {
        SpectrumEvaluator::new(p, resolution)?.coefficients(ell, &ks)?
    };
    let spectrum_terms: Vec<SpectrumTerm> = ks
        .into_iter()
        .zip(coeffs)
        .map(|(k, c)| {
            let freq = ell.dot(&k);
            SpectrumTerm {
                value: c.conj() * test.f(freq),
                frequency: freq,
                coefficient: c,
                k,
            }
        })
        .collect();
    let mut rhs = CompensatedSum::new();
    for s in &spectrum_terms {
        rhs.add(s.value);
    }
    let (lhs, rhs) = (lhs.value(), rhs.value());
    let residual = (lhs - rhs).norm();
    Ok(SummationReport {
        test: *test,
        t_max,
        r_max,
        lhs,
        rhs,
        residual,
        truncation_estimates: (lhs_tail, rhs_tail),
        pass: residual <= 1e-6 * lhs.norm().max(1.0),
        root_terms,
        spectrum_terms,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovComparison {
    pub k: Vec<i64>,
    pub at_k: Vec<i64>,
    pub p_coefficient: Complex64,
    pub q_coefficient: Complex64,
    pub supported: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovReport {
    /// `m̂^p(0) / m̂^q(0)`.
    pub kappa: f64,
    pub det_a: i64,
    /// `max |m̂^p(k) − κ·m̂^q(A^T k)|` over all compared `k`.
    pub max_deviation: f64,
    /// `max |ratio/κ − 1|` over supported `k`.
    pub max_ratio_deviation: f64,
    pub supported: usize,
    pub ell: Vec<f64>,
    pub pass: bool,
    pub comparisons: Vec<CovComparison>,
}

/// Compares `m̂^p_ℓ(k)` with `m̂^q_{ℓ̃}(A^T k)` where `q(z) = p(z^A)` and
/// `ℓ = Aℓ̃`.
///
/// `p` may be omitted when `A` is unimodular; it is then `q(z^{A^{-1}})`.
/// `k` counts as supported when `|m̂^q(A^T k)| ≥ 1e-6·m̂^q(0)`.
pub fn change_of_variables_check(
    q: &LaurentPoly,
    a: &IntMatrix,
    ell_tilde: &Direction,
    k_radius: i64,
    p: Option<&LaurentPoly>,
    resolution: usize,
) -> Result<CovReport> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.rows().max(a.cols()),
        });
    }
    let det_a = a.determinant()?;
    if det_a == 0 {
        return Err(Error::Singular);
    }
    let p = match p {
        Some(p) => p.clone(),
        None => {
            let inv = a.unimodular_inverse()?.ok_or_else(|| {
                Error::Invalid("non-unimodular A needs an explicit p".into())
            })?;
            q.monomial_substitute(&inv)?
        }
    };
    let ell = Direction::new(a.mul_vec_f64(&ell_tilde.entries))?;
    let ks: Vec<Vec<i64>> = (-k_radius..=k_radius)
        .flat_map(|x| (-k_radius..=k_radius).map(move |y| vec![x, y]))
        .collect();
    let at = a.transpose();
    let mapped: Vec<Vec<i64>> = ks.iter().map(|k| at.mul_vec(k)).collect::<Result<_>>()?;

    let mut ev_p = SpectrumEvaluator::new(&p, resolution)?;
    let mut ev_q = SpectrumEvaluator::new(q, resolution)?;
    let mp = ev_p.coefficients(&ell, &ks)?;
    let mq = ev_q.coefficients(ell_tilde, &mapped)?;
    let zero = ks.iter().position(|k| k == &[0, 0]).expect("origin in range");
    let kappa = mp[zero].re / mq[zero].re;
    let mq0 = mq[zero].re;
    let mp0 = mp[zero].re;

    let mut max_dev: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    let mut supported = 0;
    let mut comparisons = Vec::with_capacity(ks.len());
    for i in 0..ks.len() {
        max_dev = max_dev.max((mp[i] - kappa * mq[i]).norm());
        let sup = mq[i].norm() >= 1e-6 * mq0;
        if sup {
            supported += 1;
            max_ratio = max_ratio.max(((mp[i] / mq[i]) / kappa - 1.0).norm());
        }
        comparisons.push(CovComparison {
            k: ks[i].clone(),
            at_k: mapped[i].clone(),
            p_coefficient: mp[i],
            q_coefficient: mq[i],
            supported: sup,
        });
    }
    Ok(CovReport {
        kappa,
        det_a,
        max_deviation: max_dev,
        max_ratio_deviation: max_ratio,
        supported,
        ell: ell.entries,
        pass: max_dev <= 1e-6 * mp0 && max_ratio <= 1e-6,
        comparisons,
    })
}

/// `θ = Σ_{k∈Z} e^{−πk²}`.
fn theta() -> f64 {
    1.0 + 2.0 * (1..10).map(|k| (-PI * (k * k) as f64).exp()).sum::<f64>()
}

/// `c₂ = 2·(2πe/n)^{n/2}·Σ_{k∈Zⁿ} e^{−π‖k‖²}`.
pub fn lattice_constant(n: usize) -> f64 {
    2.0 * (TAU * E / n as f64).powf(n as f64 / 2.0) * theta().powi(n as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianTailReport {
    pub n: usize,
    pub big_n: f64,
    pub r: f64,
    pub eps: f64,
    pub shift: Vec<f64>,
    pub lhs_sum: f64,
    pub rhs_bound: f64,
    /// Natural logarithms of both sides; finite even when the sides underflow.
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    pub pass: bool,
}

/// Scaled terms below this are dropped (with a bound added in their place).
const TERM_CUTOFF_LN: f64 = -690.8;

/// `Σ_{k : |k − c| > √h0} e^{−((k−c)² − h0)/(2N²)}`, or the sum over every
/// `k` when `h0 < 0`. Each side is summed outward until terms fall below
/// `1e-17` of the first one; the rest is bounded by a geometric series, valid
/// because consecutive ratios of a Gaussian decrease.
fn line_tail(c: f64, h0: f64, two_n2: f64) -> f64 {
    let (right_start, left_start) = if h0 < 0.0 {
        (c.floor() as i64 + 1, c.floor() as i64)
    } else {
        let h = h0.sqrt();
        ((c + h).floor() as i64 + 1, (c - h).ceil() as i64 - 1)
    };
    let term = |k: i64| {
        let d = k as f64 - c;
        (-(d * d - h0) / two_n2).exp()
    };
    let side = |start: i64, step: i64| -> f64 {
        let first = term(start);
        let mut sum = 0.0;
        let mut k = start;
        let mut prev = first;
        loop {
            let t = term(k);
            sum += t;
            if t < 1e-17 * first || t == 0.0 {
                let ratio = if prev > 0.0 { t / prev } else { 0.0 };
                if ratio < 1.0 {
                    sum += t * ratio / (1.0 - ratio);
                }
                return sum;
            }
            prev = t;
            k += step;
        }
    };
    side(right_start, 1) + side(left_start, -1)
}

/// Compares `Σ_{k ∉ B(v, ρ)} e^{−‖k−v‖²/(2N²)}`, `ρ = R·N^{1+ε}`, with
/// `c₂·ρⁿ·e^{−R²N^{2ε}/2}`.
///
/// Both sides carry the factor `e^{−ρ²/(2N²)}`, which is divided out before
/// summing so that nothing underflows. The first `n − 1` coordinates are
/// scanned over the box where scaled terms exceed `1e-300`; the last one is
/// summed along lines.
pub fn gaussian_tail_bound(n: usize, big_n: f64, r: f64, eps: f64, v: &[f64]) -> Result<GaussianTailReport> {
    if !(1..=3).contains(&n) || v.len() != n {
        return Err(Error::Invalid("need n ∈ {1,2,3} and a shift of length n".into()));
    }
    if !(big_n > 0.0) || !(r >= 0.0) || !eps.is_finite() {
        return Err(Error::Invalid("need N > 0 and R ≥ 0".into()));
    }
    let rho = r * big_n.powf(1.0 + eps);
    let rho2 = rho * rho;
    let two_n2 = 2.0 * big_n * big_n;
    let slack = -TERM_CUTOFF_LN * two_n2;
    let reach = (rho2 + slack).sqrt();
    let last = v[n - 1];

    let scaled = match n {
        1 => line_tail(last, rho2, two_n2),
        _ => {
            let (a0, b0) = ((v[0] - reach).floor() as i64, (v[0] + reach).ceil() as i64);
            let mut rows = par::map_range(0..(b0 - a0 + 1) as usize, |i| {
                let d0 = (a0 + i as i64) as f64 - v[0];
                let mut sum = 0.0;
                let mut line = |d2: f64| {
                    if rho2 - d2 >= -slack {
                        sum += line_tail(last, rho2 - d2, two_n2);
                    }
                };
                if n == 2 {
                    line(d0 * d0);
                } else {
                    let (a1, b1) = ((v[1] - reach).floor() as i64, (v[1] + reach).ceil() as i64);
                    for k1 in a1..=b1 {
                        let d1 = k1 as f64 - v[1];
                        line(d0 * d0 + d1 * d1);
                    }
                }
                sum
            });
            rows.sort_by(f64::total_cmp);
            rows.iter().sum()
        }
    };
    // Dropped lines each contribute at most e^{-690.8}·(√(2π)N + 1).
    let dropped = if n == 1 {
        0.0
    } else {
        2.0 * n as f64 * TERM_CUTOFF_LN.exp() * (TAU.sqrt() * big_n + 1.0).powi(n as i32)
    };
    let scaled = scaled + dropped;
    let scaled_rhs = lattice_constant(n) * rho.powi(n as i32);
    let ln_factor = -rho2 / two_n2;
    Ok(GaussianTailReport {
        n,
        big_n,
        r,
        eps,
        shift: v.to_vec(),
        lhs_sum: scaled * ln_factor.exp(),
        rhs_bound: scaled_rhs * ln_factor.exp(),
        ln_lhs: scaled.ln() + ln_factor,
        ln_rhs: scaled_rhs.ln() + ln_factor,
        pass: scaled <= scaled_rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianIntegralReport {
    pub n: usize,
    pub big_n: f64,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `c_n = 2·n^{3/2}·(2π)^{(n−1)/2}`, from a union bound over coordinates
/// with the two-sided single-variable tail.
pub fn tail_integral_constant(n: usize) -> f64 {
    let n = n as f64;
    2.0 * n.powf(1.5) * TAU.powf((n - 1.0) / 2.0)
}

fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => TAU,
        _ => 2.0 * TAU,
    }
}

/// `∫_{‖x‖>R} e^{−N²‖x‖²/2} dx` by radial Gauss–Legendre quadrature.
pub fn gaussian_tail_integral(n: usize, big_n: f64, r: f64) -> f64 {
    let upper = r + 40.0 / big_n;
    let radial = quad::integrate(
        |x| x.powi(n as i32 - 1) * (-0.5 * big_n * big_n * x * x).exp(),
        r,
        upper,
        800,
        16,
    );
    sphere_area(n) * radial
}

/// Compares the tail integral with `c_n/(R·N^{n+1})·e^{−N²R²/(2n)}`. At
/// `R = 0` the bound is infinite and the check passes trivially.
pub fn gaussian_tail_integral_check(n: usize, big_n: f64, r: f64) -> Result<GaussianIntegralReport> {
    if !(1..=3).contains(&n) || !(big_n > 0.0) || !(r >= 0.0) {
        return Err(Error::Invalid("need n ∈ {1,2,3}, N > 0 and R ≥ 0".into()));
    }
    let lhs = gaussian_tail_integral(n, big_n, r);
    let rhs = if r == 0.0 {
        f64::INFINITY
    } else {
        tail_integral_constant(n) / (r * big_n.powi(n as i32 + 1))
            * (-(big_n * big_n * r * r) / (2.0 * n as f64)).exp()
    };
    Ok(GaussianIntegralReport {
        n,
        big_n,
        r,
        lhs,
        rhs,
        pass: lhs <= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitReport {
    /// Worst distance from a curve sample to the nearest orbit point.
    pub max_min_distance: f64,
    pub curve_samples: usize,
    pub orbit_points: usize,
    pub delta: f64,
    pub t_max: f64,
    pub pass: bool,
}

fn torus_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    surface::circle_distance(a[0], b[0]).hypot(surface::circle_distance(a[1], b[1]))
}

/// Density of `{tℓ mod 1 : t ∈ Λ ∩ [0,T]}` in `Σ(p)`: every traced curve
/// point must be within `δ` of an orbit point.
pub fn orbit_closure_check(
    p: &LaurentPoly,
    ell: &Direction,
    delta: f64,
    t_max: f64,
    resolution: usize,
) -> Result<OrbitReport> {
    if ell.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: ell.dim(),
        });
    }
    let f = restrict_to_line(p, ell)?;
    let lo = -1e-9 * t_max.max(1.0);
    let roots = find_real_roots(&f, (lo, t_max), 1e-10)?;
    let orbit: Vec<[f64; 2]> = roots
        .roots
        .iter()
        .map(|&t| {
            let x = [t * ell.entries[0], t * ell.entries[1]];
            [x[0].rem_euclid(1.0), x[1].rem_euclid(1.0)]
        })
        .collect();
    let curve = surface::trace_curve(p, resolution)?;
    let pts: Vec<[f64; 2]> = curve.points().map(|p| p.coords()).collect();
    let dists = par::map_range(0..pts.len(), |i| {
        orbit
            .iter()
            .map(|o| torus_distance(pts[i], *o))
            .fold(f64::INFINITY, f64::min)
    });
    let worst = dists.into_iter().fold(0.0, f64::max);
    Ok(OrbitReport {
        max_min_distance: worst,
        curve_samples: pts.len(),
        orbit_points: orbit.len(),
        delta,
        t_max,
        pass: worst <= delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::samples::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn gaussian_transform_pair() {
        // f̂(t) = ∫ f(ξ) e^{−2πiξt} dξ, checked by quadrature
        let g = GaussianTest::new(0.7, 0.8).unwrap();
        for t in [0.0, 0.3, -1.1] {
            let re = quad::integrate(|x| g.f(x) * (-TAU * x * t).cos(), -20.0, 20.0, 200, 16);
            let im = quad::integrate(|x| g.f(x) * (-TAU * x * t).sin(), -20.0, 20.0, 200, 16);
            assert!((g.f_hat(t) - Complex64::new(re, im)).norm() < 1e-12);
        }
    }

    #[test]
    fn summation_diagonal() {
        let ell = Direction::golden_pair();
        let r = verify_summation(
            &diagonal(),
            &ell,
            &ProperCone::orthant(2),
            &GaussianTest::new(0.0, 1.0).unwrap(),
            6.0,
            10.0,
            64,
        )
        .unwrap();
        assert!(r.residual <= 1e-8, "{}", r.residual);
        assert!(r.pass);
    }

    #[test]
    fn summation_zero_test() {
        let r = verify_summation(
            &quadric(0.5),
            &Direction::golden_pair(),
            &ProperCone::orthant(2),
            &GaussianTest::zero(),
            2.0,
            2.0,
            64,
        )
        .unwrap();
        assert_eq!(r.lhs, Complex64::default());
        assert_eq!(r.rhs, Complex64::default());
    }

    #[test]
    fn summation_truncation_error() {
        let r = verify_summation(
            &diagonal(),
            &Direction::golden_pair(),
            &ProperCone::orthant(2),
            &GaussianTest::new(0.0, 1.0).unwrap(),
            0.5,
            10.0,
            64,
        );
        match r {
            Err(Error::Truncation { suggested_t, .. }) => assert!(suggested_t > 0.5),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn lighthouse_examples() {
        let ell = Direction::golden_pair();
        let orth = ProperCone::orthant(2);
        assert!(lighthouse_check(&diagonal(), &ell, &orth, 8, 1e-6, 64).unwrap().pass);
        assert!(lighthouse_check(&quadric(0.5), &ell, &orth, 6, 1e-6, 128).unwrap().pass);
        let narrow = ProperCone::new(IntMatrix::from_rows(&[[1, -1], [0, 1]]).unwrap()).unwrap();
        assert!(!lighthouse_check(&quadric(0.5), &ell, &narrow, 6, 1e-6, 128).unwrap().pass);
    }

    #[test]
    fn cov_identity_and_shear() {
        let ell = Direction::new(vec![1.0, SQRT_2 - 1.0]).unwrap();
        let i = IntMatrix::identity(2);
        let r = change_of_variables_check(&quadric(0.5), &i, &ell, 3, None, 128).unwrap();
        assert!((r.kappa - 1.0).abs() < 1e-9 && r.max_deviation < 1e-9);
        let a = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let r = change_of_variables_check(&quadric(0.5), &a, &ell, 4, None, 128).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.kappa - 1.0).abs() < 1e-8);
        let r = change_of_variables_check(&diagonal(), &a, &ell, 4, None, 64).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn cov_needs_p_for_non_unimodular() {
        let a = IntMatrix::from_rows(&[[2, 1], [0, 3]]).unwrap();
        let ell = Direction::golden_pair();
        assert!(change_of_variables_check(&quadric(0.5), &a, &ell, 2, None, 64).is_err());
    }

    #[test]
    fn lattice_constant_value() {
        let theta = 1.086_434_811_213_308;
        assert!((super::theta() - theta).abs() < 1e-15);
        assert!((lattice_constant(1) - 2.0 * (TAU * E).sqrt() * theta).abs() < 1e-12);
    }

    #[test]
    fn tail_bound_examples() {
        assert!(gaussian_tail_bound(1, 10.0, 6.0, 0.1, &[0.0]).unwrap().pass);
        assert!(gaussian_tail_bound(2, 20.0, 6.0, 0.1, &[0.3, 0.7]).unwrap().pass);
        let r = gaussian_tail_bound(1, 10.0, 100.0, 0.1, &[0.0]).unwrap();
        assert!(r.pass && r.lhs_sum == 0.0 && r.ln_lhs < r.ln_rhs);
    }

    #[test]
    fn tail_sum_matches_direct_summation() {
        // small N: compare against a brute-force sum with R small enough to
        // leave a visible tail
        for (n, v) in [(1usize, vec![0.25]), (2, vec![0.3, -0.4]), (3, vec![0.1, 0.2, 0.3])] {
            let big_n = 3.0;
            let r = 0.5;
            let rep = gaussian_tail_bound(n, big_n, r, 0.0, &v).unwrap();
            let rho = r * big_n;
            let m = 60i64;
            let mut direct = 0.0;
            let mut idx = vec![-m; n];
            loop {
                let d2: f64 = idx.iter().zip(&v).map(|(&k, &c)| (k as f64 - c).powi(2)).sum();
                if d2.sqrt() > rho {
                    direct += (-d2 / (2.0 * big_n * big_n)).exp();
                }
                let mut i = 0;
                while i < n {
                    idx[i] += 1;
                    if idx[i] <= m {
                        break;
                    }
                    idx[i] = -m;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            assert!((rep.lhs_sum - direct).abs() <= 1e-12 * direct, "n = {n}");
        }
    }

    #[test]
    fn tail_integral_closed_forms() {
        use statrs::function::erf::erfc;
        for (n, big_n, r) in [(1usize, 5.0, 1.0), (2, 10.0, 0.5), (3, 5.0, 0.5)] {
            let a = big_n * r / SQRT_2;
            let exact = match n {
                1 => (TAU).sqrt() / big_n * erfc(a),
                2 => TAU / (big_n * big_n) * (-a * a).exp(),
                _ => {
                    let b = big_n;
                    4.0 * PI
                        * (r * (-a * a).exp() / (b * b) + (PI / 2.0).sqrt() / b.powi(3) * erfc(a))
                }
            };
            let got = gaussian_tail_integral(n, big_n, r);
            assert!((got - exact).abs() <= 1e-10 * exact, "n = {n}: {got} vs {exact}");
            assert!(gaussian_tail_integral_check(n, big_n, r).unwrap().pass);
        }
    }

    #[test]
    fn tail_integral_anchor() {
        for n in 1..=3 {
            let big_n: f64 = 4.0;
            let full = TAU.powf(n as f64 / 2.0) / big_n.powi(n as i32);
            let got = gaussian_tail_integral_check(n, big_n, 0.0).unwrap();
            assert!((got.lhs - full).abs() <= 1e-8 * full);
        }
    }

    #[test]
    fn orbit_examples() {
        let ell = Direction::golden_pair();
        assert!(orbit_closure_check(&diagonal(), &ell, 0.05, 200.0, 64).unwrap().pass);
        assert!(!orbit_closure_check(&diagonal(), &ell, 0.01, 1.0, 64).unwrap().pass);
    }
}

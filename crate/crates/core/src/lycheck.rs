//! Randomized falsification of the Lee–Yang property.
//!
//! A fiber fixes every coordinate but one at a random point with all moduli
//! below 1 (or all above 1) and solves the remaining univariate polynomial
//! exactly. A root in the same regime is a counterexample; it is re-checked
//! by direct evaluation before being reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::laurent::LaurentPoly;
use crate::surface::{default_axis, slice_solve_with_tol};
use crate::univariate::UniPoly;
use crate::{par, Complex64};

pub const INSIDE_MODULI: (f64, f64) = (0.05, 0.95);
pub const OUTSIDE_MODULI: (f64, f64) = (1.05, 2.0);
/// Roots with `||z| − 1|` at most this are on the boundary and never count.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// A violation must satisfy `|p(z*)| ≤ VERIFY_TOL·scale`.
pub const VERIFY_TOL: f64 = 1e-8;
const MAX_RESAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Inside,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub fiber: usize,
    pub regime: Regime,
    pub free_index: usize,
    /// The full witness point, root included.
    pub point: Vec<Complex64>,
    pub root: Complex64,
    /// `|p(point)| / scale`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyReport {
    pub fibers_tested: usize,
    /// Fibers whose slice degenerated and were resampled.
    pub degenerate_fibers: usize,
    pub violation: Option<Violation>,
    /// Smallest signed distance of a fiber root to the forbidden region
    /// (negative when a root is inside it).
    pub min_margin: f64,
    pub seed: u64,
}

impl LyReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

/// Outcome of one fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberOutcome {
    pub regime: Regime,
    pub roots: Vec<Complex64>,
    pub min_margin: f64,
    pub violation: Option<Violation>,
}

/// Solves `p` in coordinate `free_index` with the other coordinates taken
/// from `point` (the entry at `free_index` is ignored).
pub fn test_fiber(p: &LaurentPoly, free_index: usize, point: &[Complex64]) -> Result<FiberOutcome> {
    if point.len() != p.arity() || free_index >= p.arity() {
        return Err(Error::DimensionMismatch {
            expected: p.arity(),
            got: point.len(),
        });
    }
    let fixed = point.iter().enumerate().filter(|&(i, _)| i != free_index).map(|(_, z)| z.norm());
    let fixed: Vec<f64> = fixed.collect();
    let regime = if fixed.iter().all(|&m| m < 1.0 - BOUNDARY_TOL) {
        Regime::Inside
    } else if fixed.iter().all(|&m| m > 1.0 + BOUNDARY_TOL) {
        Regime::Outside
    } else {
        return Err(Error::Invalid("fiber point mixes regimes".into()));
    };

    let mut terms = Vec::with_capacity(p.len());
    for (e, &c) in p.terms() {
        let mut coef = c;
        for (i, (&a, z)) in e.0.iter().zip(point).enumerate() {
            if i != free_index {
                coef *= z.powi(a as i32);
            }
        }
        terms.push((e.0[free_index], coef));
    }
    let (poly, _) = UniPoly::from_laurent(&terms)?;
    if poly.degree().is_none() || poly.scale() == 0.0 {
        return Err(Error::Degenerate("univariate slice is identically zero".into()));
    }
    let roots = poly.roots()?;

    let scale = p.scale();
    let mut min_margin = f64::INFINITY;
    let mut violation = None;
    for &r in &roots {
        let m = r.norm();
        let margin = match regime {
            Regime::Inside => m - 1.0,
            Regime::Outside => 1.0 - m,
        };
        min_margin = min_margin.min(margin);
        let strictly = match regime {
            Regime::Inside => m < 1.0 - BOUNDARY_TOL && m > 0.0,
            Regime::Outside => m > 1.0 + BOUNDARY_TOL,
        };
        if strictly && violation.is_none() {
            let mut witness = point.to_vec();
            witness[free_index] = r;
            let residual = p.eval(&witness)?.norm() / scale;
            if residual <= VERIFY_TOL {
                violation = Some(Violation {
                    fiber: 0,
                    regime,
                    free_index,
                    point: witness,
                    root: r,
                    residual,
                });
            } else {
                log::debug!("candidate root {r} failed re-verification (residual {residual:e})");
            }
        }
    }
    Ok(FiberOutcome {
        regime,
        roots,
        min_margin,
        violation,
    })
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, moduli: (f64, f64)) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = rng.gen_range(moduli.0..moduli.1);
            let phase: f64 = rng.gen();
            Complex64::from_polar(r, std::f64::consts::TAU * phase)
        })
        .collect()
}

/// Tests `fibers` random fibers; fiber `i` uses ChaCha stream `i` of `seed`
/// and solves for coordinate `i mod n`. Even fibers sample the inside
/// regime, odd fibers the outside regime.
pub fn ly_falsify(p: &LaurentPoly, fibers: usize, seed: u64) -> Result<LyReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.arity();
    let outcomes = par::map_range(0..fibers, |i| -> Result<(Option<FiberOutcome>, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let free = i % n;
        let moduli = if i % 2 == 0 { INSIDE_MODULI } else { OUTSIDE_MODULI };
        for attempt in 0..MAX_RESAMPLES {
            let point = random_point(&mut rng, n, moduli);
            match test_fiber(p, free, &point) {
                Ok(mut out) => {
                    if let Some(v) = out.violation.as_mut() {
                        v.fiber = i;
                    }
                    return Ok((Some(out), attempt));
                }
                Err(Error::Degenerate(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok((None, MAX_RESAMPLES))
    });

    let mut report = LyReport {
        fibers_tested: 0,
        degenerate_fibers: 0,
        violation: None,
        min_margin: f64::INFINITY,
        seed,
    };
    for o in outcomes {
        let (out, resampled) = o?;
        report.degenerate_fibers += resampled;
        if let Some(out) = out {
            report.fibers_tested += 1;
            report.min_margin = report.min_margin.min(out.min_margin);
            if report.violation.is_none() {
                report.violation = out.violation;
            }
        }
    }
    Ok(report)
}

/// Runs [`ly_falsify`] on `p(z^A)`.
pub fn essentially_ly_verify(p: &LaurentPoly, a: &IntMatrix, fibers: usize, seed: u64) -> Result<LyReport> {
    if !a.is_square() {
        return Err(Error::Invalid("witness matrix must be square".into()));
    }
    if a.determinant()? == 0 {
        return Err(Error::Singular);
    }
    ly_falsify(&p.monomial_substitute(a)?, fibers, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    /// `min ‖(z1 ∂1 p, z2 ∂2 p)‖` over the sampled points of `Σ(p)`.
    pub min_gradient_norm: f64,
    pub points: usize,
    pub threshold: f64,
    /// `Σ(p)` had no sampled points; the check passes vacuously.
    pub empty: bool,
    pub pass: bool,
}

/// Samples `Σ(p)` on `resolution` slices and reports the smallest toric
/// gradient there.
///
/// Slices are solved with a looser circle tolerance (`1e-6`) so that the
/// perturbed double roots of a singular curve are still sampled.
pub fn regularity_check(p: &LaurentPoly, resolution: usize) -> Result<RegularityReport> {
    if p.arity() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.arity(),
        });
    }
    let axis = default_axis(p);
    let scale = p.scale();
    let per_slice = par::map_range(0..resolution, |j| -> Result<(f64, usize)> {
        let s = (j as f64 + 0.5) / resolution as f64;
        let roots = match slice_solve_with_tol(p, axis, s, 1e-6) {
            Ok(r) => r.values,
            Err(Error::Degenerate(_)) => return Ok((f64::INFINITY, 0)),
            Err(e) => return Err(e),
        };
        let mut best = f64::INFINITY;
        for &u in &roots {
            let (_, g) = p.eval_exp_with_toric_gradient(&axis.assemble(s, u));
            best = best.min(g[0].norm().hypot(g[1].norm()));
        }
        Ok((best, roots.len()))
    });
    let mut min = f64::INFINITY;
    let mut points = 0;
    for r in per_slice {
        let (m, c) = r?;
        min = min.min(m);
        points += c;
    }
    let threshold = 1e-6 * scale;
    Ok(RegularityReport {
        min_gradient_norm: min,
        points,
        threshold,
        empty: points == 0,
        pass: points == 0 || min > threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::samples::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn diagonal_passes() {
        let r = ly_falsify(&diagonal(), 10_000, 42).unwrap();
        assert!(r.pass());
        assert_eq!(r.fibers_tested, 10_000);
        assert!(r.min_margin > 0.0);
    }

    #[test]
    fn quadric_passes() {
        assert!(ly_falsify(&quadric(0.5), 10_000, 42).unwrap().pass());
    }

    #[test]
    fn hand_fibers() {
        let out = test_fiber(&non_lee_yang(), 0, &[c(0.0), c(3.5)]).unwrap();
        assert_eq!(out.regime, Regime::Outside);
        let v = out.violation.unwrap();
        assert!((v.root - c(-1.5)).norm() < 1e-12);

        let p = quadric(2.0);
        let out = test_fiber(&p, 0, &[c(0.0), c(0.1)]).unwrap();
        let v = out.violation.unwrap();
        assert_eq!(v.regime, Regime::Inside);
        assert!((v.root - c(-1.2 / 2.1)).norm() < 1e-12);
    }

    #[test]
    fn counterexample_is_certified() {
        let p = non_lee_yang();
        let r = ly_falsify(&p, 10_000, 42).unwrap();
        let v = r.violation.expect("violation");
        assert!(p.eval(&v.point).unwrap().norm() <= 1e-8 * p.scale());
        let m: Vec<f64> = v.point.iter().map(|z| z.norm()).collect();
        match v.regime {
            Regime::Inside => assert!(m.iter().all(|&x| x < 1.0 - 1e-9)),
            Regime::Outside => assert!(m.iter().all(|&x| x > 1.0 + 1e-9)),
        }
    }

    #[test]
    fn deterministic() {
        let a = ly_falsify(&non_lee_yang(), 500, 7).unwrap();
        let b = ly_falsify(&non_lee_yang(), 500, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn essentially_ly_witnesses() {
        let i = IntMatrix::identity(2);
        assert!(essentially_ly_verify(&quadric(0.5), &i, 2000, 1).unwrap().pass());
        let a = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let p = sheared_quadric(0.5);
        assert_eq!(p.monomial_substitute(&a).unwrap(), quadric(0.5));
        let via = essentially_ly_verify(&p, &a, 2000, 3).unwrap();
        let direct = ly_falsify(&quadric(0.5), 2000, 3).unwrap();
        assert_eq!(via, direct);
        assert!(!essentially_ly_verify(&non_lee_yang(), &i, 2000, 1).unwrap().pass());
        let sing = IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(essentially_ly_verify(&p, &sing, 10, 1), Err(Error::Singular));
    }

    #[test]
    fn regularity_examples() {
        let r = regularity_check(&diagonal(), 64).unwrap();
        assert!(r.pass);
        assert!((r.min_gradient_norm - 2f64.sqrt()).abs() < 1e-9);
        assert!(regularity_check(&quadric(0.5), 256).unwrap().pass);
        assert!(!regularity_check(&singular_square(), 64).unwrap().pass);
        let empty = LaurentPoly::from_real_terms(2, &[(&[1, 1], 1.0), (&[0, 0], -3.0)]).unwrap();
        let r = regularity_check(&empty, 32).unwrap();
        assert!(r.empty && r.pass);
    }
}

//! Numerical laboratory for one-dimensional Fourier quasicrystals built from
//! Lee–Yang polynomials.
//!
//! The pieces fit together as follows:
//!
//! * [`laurent`] holds Laurent polynomials `p(z)` and monomial changes of
//!   coordinates `z ↦ z^A`.
//! * [`intmat`] is exact integer matrix algebra (determinant, adjugate, Smith
//!   normal form, pullback certificates).
//! * [`cone`] models simplicial cones `C = (A^T)^{-1} R^n_{≥0}` and enumerates
//!   lattice points of `C ∪ -C` in a slab `|⟨ℓ,k⟩| ≤ R`.
//! * [`lycheck`] falsifies the Lee–Yang property on random fibers.
//! * [`crystal`] restricts `p` to the line `t ↦ tℓ`, finds the real zero set
//!   `Λ_ℓ` and audits real-rootedness with the argument principle.
//! * [`surface`] traces the torus curve `Σ(p)` and integrates the directional
//!   measure `m_ℓ` against characters.
//! * [`harness`] ties everything into end-to-end validators (summation
//!   formula, change of variables, Gaussian bounds, orbit closure).

pub mod cone;
pub mod crystal;
pub mod error;
pub mod harness;
pub mod intmat;
pub mod laurent;
pub mod lycheck;
mod par;
pub mod quad;
pub mod univariate;
pub mod surface;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, v.re);
        neumaier(&mut self.im, &mut self.im_c, v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

/// `e^{2πi·r}` with `r` reduced to `[-1/2, 1/2]` first.
pub(crate) fn cis_turns(r: f64) -> Complex64 {
    let r = r - r.round();
    Complex64::cis(std::f64::consts::TAU * r)
}

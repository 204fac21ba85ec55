//! Univariate complex polynomials and their roots.
//!
//! Roots are eigenvalues of the companion matrix (complex Schur form), then
//! polished by a few Newton steps on the original coefficients.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::Complex64;

/// `c_0 + c_1 z + … + c_d z^d`, stored ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    /// Trailing coefficients that are exactly zero are trimmed.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From Laurent terms `(exponent, coefficient)`: returns the polynomial
    /// `z^{-e_min}·Σ c_e z^e` and `e_min`.
    pub fn from_laurent(terms: &[(i64, Complex64)]) -> Result<(Self, i64)> {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Err(Error::ZeroPolynomial);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![Complex64::default(); (hi - lo + 1) as usize];
        for &(e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Ok((Self::new(coeffs), lo))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::default();
        let mut dp = Complex64::default();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// All complex roots with multiplicity.
    ///
    /// Fails if the polynomial is identically zero or if the leading
    /// coefficient is negligible against the others (the companion matrix
    /// would be meaningless).
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let Some(deg) = self.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let scale = self.scale();
        let lead = self.coeffs[deg];
        if lead.norm() <= 1e-13 * scale {
            return Err(Error::Degenerate(
                "leading coefficient underflow in univariate slice".into(),
            ));
        }
        let zero_prefix = self.coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        let mut roots = vec![Complex64::default(); zero_prefix];
        let reduced = &self.coeffs[zero_prefix..];
        let d = reduced.len() - 1;
        match d {
            0 => {}
            1 => roots.push(-reduced[0] / reduced[1]),
            _ => {
                let mut comp = DMatrix::<Complex64>::zeros(d, d);
                for i in 1..d {
                    comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
                }
                for i in 0..d {
                    comp[(i, d - 1)] = -reduced[i] / reduced[d];
                }
                let schur = nalgebra::Schur::try_new(comp, f64::EPSILON, 10_000).ok_or_else(
                    || Error::NoConvergence("companion-matrix eigenvalues".into()),
                )?;
                let (_, t) = schur.unpack();
                let reduced_poly = UniPoly::new(reduced.to_vec());
                for i in 0..d {
                    roots.push(reduced_poly.polish(t[(i, i)]));
                }
            }
        }
        Ok(roots)
    }

    /// A few guarded Newton steps; a step is kept only if it lowers |p|.
    pub fn polish(&self, mut z: Complex64) -> Complex64 {
        let (mut val, _) = self.eval_with_derivative(z);
        for _ in 0..8 {
            let (p, dp) = self.eval_with_derivative(z);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            let cand = z - p / dp;
            let cv = self.eval(cand);
            if cv.norm() < val.norm() {
                z = cand;
                val = cv;
            } else {
                break;
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_arg(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        v
    }

    #[test]
    fn roots_of_unity() {
        // z^5 - 1
        let mut coeffs = vec![c(0.0, 0.0); 6];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[5] = c(1.0, 0.0);
        let r = UniPoly::new(coeffs).roots().unwrap();
        assert_eq!(r.len(), 5);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!((z.powi(5) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn known_quadratic() {
        // (z - 2)(z + i) = z^2 + (i - 2) z - 2i
        let p = UniPoly::new(vec![c(0.0, -2.0), c(-2.0, 1.0), c(1.0, 0.0)]);
        let r = sorted_by_arg(p.roots().unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_roots_and_laurent_shift() {
        // z^{-1} + 1 + 0·z → shift -1, poly 1 + z
        let (p, lo) = UniPoly::from_laurent(&[(-1, c(1.0, 0.0)), (0, c(1.0, 0.0))]).unwrap();
        assert_eq!(lo, -1);
        assert_eq!(p.roots().unwrap(), vec![c(-1.0, 0.0)]);
        let q = UniPoly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let r = q.roots().unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(UniPoly::new(vec![]).roots(), Err(Error::ZeroPolynomial));
        assert!(UniPoly::new(vec![c(1.0, 0.0)]).roots().unwrap().is_empty());
        let tiny = UniPoly::new(vec![c(1.0, 0.0), c(1e-20, 0.0)]);
        assert!(matches!(tiny.roots(), Err(Error::Degenerate(_))));
    }
}

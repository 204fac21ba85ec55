//! Laurent polynomials in `n` variables with complex coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order is
//! lexicographic and serialization is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::{cis_turns, Complex64, CompensatedSum};

/// Coefficients below this fraction of the largest coefficient are dropped
/// after merging like terms.
pub const MERGE_DROP_RELATIVE: f64 = 1e-14;

/// Monomial exponent `α` in `z^α`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum()
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// A finitely supported map `α ↦ a_α` with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<ExponentVector, Complex64>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I, E>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, Complex64)>,
        E: Into<Vec<i64>>,
    {
        if arity == 0 {
            return Err(Error::Invalid("arity must be positive".into()));
        }
        let mut map: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.into();
            if e.len() != arity {
                return Err(Error::DimensionMismatch {
                    expected: arity,
                    got: e.len(),
                });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::Invalid("non-finite coefficient".into()));
            }
            *map.entry(ExponentVector(e)).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { arity, terms: map })
    }

    /// Real-coefficient shorthand: `from_real_terms(2, &[(&[1, 1], 1.0), (&[0, 0], -1.0)])`.
    pub fn from_real_terms(arity: usize, terms: &[(&[i64], f64)]) -> Result<Self> {
        Self::from_terms(
            arity,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Complex64::new(*c, 0.0))),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> Complex64 {
        self.terms
            .get(&ExponentVector(e.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// `Σ|a_α|`, the scale all relative tolerances are measured against.
    pub fn scale(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `(min, max)` exponent of variable `var`, `None` for the zero polynomial.
    pub fn degree_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.0[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                got: z.len(),
            });
        }
        if let Some(i) = z.iter().position(|c| c.norm() == 0.0) {
            return Err(Error::Domain(format!("coordinate {i} is zero")));
        }
        Ok(())
    }

    /// `p(z)` with compensated summation.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_point(z)?;
        let mut acc = CompensatedSum::new();
        for (e, &c) in &self.terms {
            acc.add(c * monomial(z, &e.0)?);
        }
        Ok(acc.value())
    }

    /// `Σ|a_α z^α|`, the natural magnitude scale of `p(z)`.
    pub fn magnitude_at(&self, z: &[Complex64]) -> Result<f64> {
        self.check_point(z)?;
        let mut s = 0.0;
        for (e, c) in &self.terms {
            s += c.norm() * monomial(z, &e.0)?.norm();
        }
        Ok(s)
    }

    /// `p(e^{2πi x_1}, …, e^{2πi x_n})`.
    pub fn eval_exp(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.arity, "eval_exp: arity mismatch");
        let frac: Vec<f64> = x.iter().map(|v| v - v.floor()).collect();
        let mut acc = CompensatedSum::new();
        for (e, &c) in &self.terms {
            acc.add(c * cis_turns(e.dot(&frac)));
        }
        acc.value()
    }

    /// `p` together with the toric gradient `(z_i ∂p/∂z_i)_i` at `z = e^{2πi x}`.
    pub fn eval_exp_with_toric_gradient(&self, x: &[f64]) -> (Complex64, Vec<Complex64>) {
        assert_eq!(x.len(), self.arity, "eval_exp: arity mismatch");
        let frac: Vec<f64> = x.iter().map(|v| v - v.floor()).collect();
        let mut acc = CompensatedSum::new();
        let mut grad = vec![CompensatedSum::new(); self.arity];
        for (e, &c) in &self.terms {
            let v = c * cis_turns(e.dot(&frac));
            acc.add(v);
            for (g, &a) in grad.iter_mut().zip(&e.0) {
                if a != 0 {
                    g.add(v * a as f64);
                }
            }
        }
        (acc.value(), grad.iter().map(CompensatedSum::value).collect())
    }

    /// `∇p(z)`, component `i` is `∂p/∂z_i`.
    pub fn gradient(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        let mut grad = vec![CompensatedSum::new(); self.arity];
        for (e, &c) in &self.terms {
            let m = c * monomial(z, &e.0)?;
            for (i, &a) in e.0.iter().enumerate() {
                if a != 0 {
                    grad[i].add(m * a as f64 / z[i]);
                }
            }
        }
        Ok(grad.iter().map(CompensatedSum::value).collect())
    }

    /// `q(z) = p(z^A)` for `A ∈ Z^{m×n}`, `m` the arity of `p`.
    ///
    /// Exponent `α` maps to `A^T α`. Like terms are merged and coefficients
    /// below [`MERGE_DROP_RELATIVE`] of the largest one are dropped.
    pub fn monomial_substitute(&self, a: &IntMatrix) -> Result<LaurentPoly> {
        if a.rows() != self.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                got: a.rows(),
            });
        }
        let at = a.transpose();
        let mut map: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let new_e = at
                .mul_vec(&e.0)
                .map_err(|_| Error::Overflow("monomial substitution"))?;
            *map.entry(ExponentVector(new_e)).or_default() += c;
        }
        let max = map.values().map(|c| c.norm()).fold(0.0, f64::max);
        map.retain(|_, c| c.norm() > MERGE_DROP_RELATIVE * max && c.norm() > 0.0);
        Ok(LaurentPoly {
            arity: a.cols(),
            terms: map,
        })
    }

    /// Multiplies by `z^{-β}` with `β` the componentwise minimum exponent, so
    /// every exponent is `≥ 0` and each variable attains `0`. Returns the
    /// polynomial and `β`. The torus zero set is unchanged.
    pub fn shift_to_polynomial(&self) -> Result<(LaurentPoly, ExponentVector)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let shift: Vec<i64> = (0..self.arity)
            .map(|i| self.degree_range(i).expect("nonzero").0)
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let ne: Vec<i64> = e.0.iter().zip(&shift).map(|(a, s)| a - s).collect();
                (ExponentVector(ne), c)
            })
            .collect();
        Ok((
            LaurentPoly {
                arity: self.arity,
                terms,
            },
            ExponentVector(shift),
        ))
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<i64> = e1
                    .0
                    .iter()
                    .zip(&e2.0)
                    .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("product")))
                    .collect::<Result<_>>()?;
                out.push((e, c1 * c2));
            }
        }
        LaurentPoly::from_terms(self.arity, out)
    }

    pub fn scale_by(&self, s: Complex64) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), c * s))
            .filter(|(_, c)| c.norm() > 0.0)
            .collect();
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }
}

fn monomial(z: &[Complex64], e: &[i64]) -> Result<Complex64> {
    let mut m = Complex64::new(1.0, 0.0);
    for (zi, &a) in z.iter().zip(e) {
        let a = i32::try_from(a).map_err(|_| Error::Overflow("monomial exponent"))?;
        m *= zi.powi(a);
    }
    Ok(m)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, &a)| {
                        if a == 1 {
                            format!("z{}", i + 1)
                        } else {
                            format!("z{}^{}", i + 1, a)
                        }
                    })
                    .collect();
                let coef = if c.im == 0.0 {
                    format!("{}", c.re)
                } else {
                    format!("({}{:+}i)", c.re, c.im)
                };
                if mono.is_empty() {
                    coef
                } else {
                    format!("{}·{}", coef, mono.join("·"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// One term of the JSON polynomial schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// `{"arity": n, "terms": [{"exp": [...], "re": x, "im": y}, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            arity: p.arity,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.0.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        if j.arity == 0 {
            return Err(Error::Invalid("\"arity\" must be positive".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, t) in j.terms.iter().enumerate() {
            if t.exp.len() != j.arity {
                return Err(Error::Invalid(format!(
                    "terms[{i}].exp has length {}, arity is {}",
                    t.exp.len(),
                    j.arity
                )));
            }
            if t.re == 0.0 && t.im == 0.0 {
                return Err(Error::Invalid(format!("terms[{i}] has a zero coefficient")));
            }
            if !seen.insert(t.exp.clone()) {
                return Err(Error::Invalid(format!(
                    "terms[{i}] repeats exponent {:?}",
                    t.exp
                )));
            }
        }
        LaurentPoly::from_terms(
            j.arity,
            j.terms
                .into_iter()
                .map(|t| (t.exp, Complex64::new(t.re, t.im))),
        )
    }
}

impl LaurentPoly {
    pub fn from_json(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s)
            .map_err(|e| Error::Invalid(format!("polynomial JSON: {e}")))?;
        j.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial serializes")
    }
}

/// Frequently used examples.
pub mod samples {
    use super::*;

    /// `z1·z2 − 1`, whose torus zero set is the diagonal `x1 + x2 ∈ Z`.
    pub fn diagonal() -> LaurentPoly {
        LaurentPoly::from_real_terms(2, &[(&[1, 1], 1.0), (&[0, 0], -1.0)]).unwrap()
    }

    /// `z1·z2 + a(z1 + z2) + 1`, Lee–Yang for real `|a| < 1`.
    pub fn quadric(a: f64) -> LaurentPoly {
        LaurentPoly::from_real_terms(
            2,
            &[(&[1, 1], 1.0), (&[1, 0], a), (&[0, 1], a), (&[0, 0], 1.0)],
        )
        .unwrap()
    }

    /// `w1 + a(w1·w2^{-1} + w2) + 1`, which becomes `quadric(a)` under
    /// `w = z^A` with `A = [[1,1],[0,1]]`.
    pub fn sheared_quadric(a: f64) -> LaurentPoly {
        LaurentPoly::from_real_terms(
            2,
            &[(&[1, 0], 1.0), (&[1, -1], a), (&[0, 1], a), (&[0, 0], 1.0)],
        )
        .unwrap()
    }

    /// `2 − z1 − z2`, not Lee–Yang.
    pub fn non_lee_yang() -> LaurentPoly {
        LaurentPoly::from_real_terms(2, &[(&[0, 0], 2.0), (&[1, 0], -1.0), (&[0, 1], -1.0)])
            .unwrap()
    }

    /// `(z1·z2 − 1)^2`, singular along its whole zero set.
    pub fn singular_square() -> LaurentPoly {
        let d = diagonal();
        d.mul(&d).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p1 = diagonal();
        let p2 = quadric(0.5);
        assert_eq!(p1.eval(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(), c(0.0, 0.0));
        assert!((p2.eval(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        assert!(p1.eval(&[c(2.0, 0.0), c(0.5, 0.0)]).unwrap().norm() < 1e-15);
    }

    #[test]
    fn eval_rejects_zero_coordinate() {
        let p = diagonal();
        assert!(matches!(p.eval(&[c(0.0, 0.0), c(1.0, 0.0)]), Err(Error::Domain(_))));
        assert!(matches!(
            p.eval(&[c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eval_exp_examples() {
        assert!(diagonal().eval_exp(&[0.25, 0.75]).norm() < 1e-15);
        assert!(quadric(0.5).eval_exp(&[0.5, 0.0]).norm() < 1e-15);
        let x = [0.123, 0.456];
        let shifted = [1.123, 0.456];
        let p2 = quadric(0.5);
        assert!((p2.eval_exp(&x) - p2.eval_exp(&shifted)).norm() < 1e-12);
    }

    #[test]
    fn gradient_examples() {
        let z = [c(0.3, -1.2), c(2.0, 0.5)];
        let g = diagonal().gradient(&z).unwrap();
        assert!((g[0] - z[1]).norm() < 1e-15 && (g[1] - z[0]).norm() < 1e-15);
        let g = quadric(0.5).gradient(&[c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((g[0] - c(1.5, 0.0)).norm() < 1e-15);
        assert!((g[1] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn substitution_examples() {
        let p = diagonal();
        assert_eq!(p.monomial_substitute(&IntMatrix::identity(2)).unwrap(), p);
        let a = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let q = p.monomial_substitute(&a).unwrap();
        let expected = LaurentPoly::from_real_terms(2, &[(&[1, 2], 1.0), (&[0, 0], -1.0)]).unwrap();
        assert_eq!(q, expected);
        assert_eq!(sheared_quadric(0.5).monomial_substitute(&a).unwrap(), quadric(0.5));
    }

    #[test]
    fn substitution_merges_and_drops_cancelled_terms() {
        // w1 − w2 under w = (z1, z1) cancels completely.
        let p = LaurentPoly::from_real_terms(2, &[(&[1, 0], 1.0), (&[0, 1], -1.0)]).unwrap();
        let a = IntMatrix::from_rows(&[[1], [1]]).unwrap();
        assert!(p.monomial_substitute(&a).unwrap().is_zero());
    }

    #[test]
    fn shift_examples() {
        let p = LaurentPoly::from_real_terms(2, &[(&[-1, 0], 1.0), (&[0, 0], 1.0)]).unwrap();
        let (q, s) = p.shift_to_polynomial().unwrap();
        assert_eq!(s.0, vec![-1, 0]);
        assert_eq!(
            q,
            LaurentPoly::from_real_terms(2, &[(&[0, 0], 1.0), (&[1, 0], 1.0)]).unwrap()
        );

        let (q, s) = quadric(0.5).shift_to_polynomial().unwrap();
        assert_eq!(s.0, vec![0, 0]);
        assert_eq!(q, quadric(0.5));

        let (q, s) = sheared_quadric(0.5).shift_to_polynomial().unwrap();
        assert_eq!(s.0, vec![0, -1]);
        let expected = LaurentPoly::from_real_terms(
            2,
            &[(&[1, 1], 1.0), (&[1, 0], 0.5), (&[0, 2], 0.5), (&[0, 1], 1.0)],
        )
        .unwrap();
        assert_eq!(q, expected);

        assert_eq!(LaurentPoly::zero(2).shift_to_polynomial(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let p = sheared_quadric(0.5);
        assert_eq!(LaurentPoly::from_json(&p.to_json()).unwrap(), p);
        let dup = r#"{"arity":2,"terms":[{"exp":[1,1],"re":1,"im":0},{"exp":[1,1],"re":2,"im":0}]}"#;
        assert!(LaurentPoly::from_json(dup).is_err());
        let zero = r#"{"arity":2,"terms":[{"exp":[1,1],"re":0,"im":0}]}"#;
        assert!(LaurentPoly::from_json(zero).is_err());
        let bad_len = r#"{"arity":2,"terms":[{"exp":[1],"re":1,"im":0}]}"#;
        assert!(LaurentPoly::from_json(bad_len).is_err());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-3i64..=3, -3i64..=3), -2.0f64..2.0, -2.0f64..2.0), 1..6).prop_map(
            |terms| {
                LaurentPoly::from_terms(
                    2,
                    terms
                        .into_iter()
                        .map(|((a, b), re, im)| (vec![a, b], Complex64::new(re, im))),
                )
                .unwrap()
            },
        )
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-3i64..=3, 4)
            .prop_map(|d| IntMatrix::new(2, 2, d).unwrap())
    }

    proptest! {
        #[test]
        fn eval_exp_is_periodic(p in small_poly(), x in -3.0f64..3.0, y in -3.0f64..3.0, k in -5i64..5, l in -5i64..5) {
            let a = p.eval_exp(&[x, y]);
            let b = p.eval_exp(&[x + k as f64, y + l as f64]);
            prop_assert!((a - b).norm() <= 1e-12 * p.scale().max(1.0));
        }

        #[test]
        fn substitution_composes(p in small_poly(), a in small_matrix(), b in small_matrix()) {
            let lhs = p.monomial_substitute(&a).unwrap().monomial_substitute(&b).unwrap();
            let rhs = p.monomial_substitute(&a.mul(&b).unwrap()).unwrap();
            // exponent arithmetic is exact; merged coefficients may differ by roundoff
            let lk: Vec<_> = lhs.terms().map(|(e, _)| e.clone()).collect();
            let rk: Vec<_> = rhs.terms().map(|(e, _)| e.clone()).collect();
            prop_assert_eq!(lk, rk);
            for ((_, c1), (_, c2)) in lhs.terms().zip(rhs.terms()) {
                prop_assert!((c1 - c2).norm() <= 1e-12 * p.scale());
            }
        }

        #[test]
        fn substitution_matches_torus_evaluation(p in small_poly(), a in small_matrix(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
            let q = p.monomial_substitute(&a).unwrap();
            let ax = a.mul_vec_f64(&[x, y]);
            let diff = (q.eval_exp(&[x, y]) - p.eval_exp(&ax)).norm();
            prop_assert!(diff <= 1e-10 * p.scale());
        }

        #[test]
        fn gradient_matches_finite_differences(p in small_poly(), r1 in 0.5f64..1.5, r2 in 0.5f64..1.5, t1 in 0.0f64..std::f64::consts::TAU, t2 in 0.0f64..std::f64::consts::TAU) {
            let z = [Complex64::from_polar(r1, t1), Complex64::from_polar(r2, t2)];
            let g = p.gradient(&z).unwrap();
            let h = 1e-6;
            for i in 0..2 {
                let mut zp = z;
                let mut zm = z;
                zp[i] += h;
                zm[i] -= h;
                let fd = (p.eval(&zp).unwrap() - p.eval(&zm).unwrap()) / (2.0 * h);
                let scale = g[i].norm().max(p.scale() * 1e-3);
                prop_assert!((fd - g[i]).norm() <= 1e-6 * scale.max(1.0));
            }
        }

        #[test]
        fn shift_preserves_torus_zero_set(p in small_poly(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
            let (q, _) = p.shift_to_polynomial().unwrap();
            prop_assert!((p.eval_exp(&[x, y]).norm() - q.eval_exp(&[x, y]).norm()).abs() <= 1e-12 * p.scale());
        }
    }
}

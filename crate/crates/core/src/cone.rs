//! Simplicial cones `C = (A^T)^{-1}·R^n_{≥0}` and lattice points in
//! truncated double cones `{k ∈ Z^n ∩ (C ∪ −C) : |⟨ℓ,k⟩| ≤ R}`.
//!
//! Membership of integer vectors is exact: `x ∈ C ⟺ A^T x ≥ 0`.
//! The dual-cone interior is `int(C*) = A·R^n_{>0}`, i.e. `A^{-1}ℓ > 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::par;

/// Relative tolerance for the strict positivity test on `A^{-1}ℓ`.
pub const DUAL_INTERIOR_TOL: f64 = 1e-12;
/// Refuse enumerations whose bounding box exceeds this many lattice points.
pub const MAX_BOX_POINTS: u128 = 200_000_000;

/// Proper simplicial cone given by an invertible integer base matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperCone {
    base: IntMatrix,
    det: i64,
    adj: IntMatrix,
}

impl ProperCone {
    pub fn new(base: IntMatrix) -> Result<Self> {
        if !base.is_square() {
            return Err(Error::DimensionMismatch {
                expected: base.rows(),
                got: base.cols(),
            });
        }
        let det = base.determinant()?;
        if det == 0 {
            return Err(Error::Singular);
        }
        let adj = base.adjugate()?;
        Ok(Self { base, det, adj })
    }

    /// The nonnegative orthant `R^n_{≥0}`.
    pub fn orthant(n: usize) -> Self {
        Self::new(IntMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    /// `base^T·x ≥ 0` componentwise.
    pub fn contains(&self, x: &[i64]) -> bool {
        assert_eq!(x.len(), self.dim(), "cone membership: dimension mismatch");
        (0..self.dim()).all(|j| {
            let s: i128 = (0..self.dim())
                .map(|i| self.base.get(i, j) as i128 * x[i] as i128)
                .sum();
            s >= 0
        })
    }

    /// `x ∈ C ∪ −C`.
    pub fn contains_double(&self, x: &[i64]) -> bool {
        let neg: Vec<i64> = x.iter().map(|v| -v).collect();
        self.contains(x) || self.contains(&neg)
    }

    /// `base^T·x` for a real vector.
    pub fn cone_coordinates(&self, x: &[f64]) -> Vec<f64> {
        self.base.transpose().mul_vec_f64(x)
    }

    /// Real membership with slack: `base^T·x ≥ −tol·‖x‖` componentwise.
    pub fn contains_real(&self, x: &[f64], tol: f64) -> bool {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.cone_coordinates(x).iter().all(|&u| u >= -tol * norm)
    }

    /// `base^{-1}·ℓ`, computed from the exact adjugate.
    pub fn dual_coordinates(&self, ell: &[f64]) -> Vec<f64> {
        let v = self.adj.mul_vec_f64(ell);
        v.into_iter().map(|x| x / self.det as f64).collect()
    }

    /// `ℓ ∈ int(C*)`, equivalently `⟨ℓ, v⟩ > 0` for all nonzero `v ∈ C`.
    pub fn dual_interior_contains(&self, ell: &Direction) -> bool {
        assert_eq!(ell.dim(), self.dim(), "dual membership: dimension mismatch");
        let u = self.dual_coordinates(&ell.entries);
        let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        scale > 0.0 && u.iter().all(|&v| v > DUAL_INTERIOR_TOL * scale)
    }

    /// Lattice points of `C ∪ −C` with `|⟨ℓ,k⟩| ≤ R`, sorted by `⟨ℓ,k⟩`
    /// then lexicographically.
    ///
    /// The scan covers the bounding box `|k_j| ≤ Σ_i |(A^{-T})_{ji}|·R/w_i`
    /// with `w = A^{-1}ℓ`, which contains the truncated cone, and filters
    /// exactly.
    pub fn enumerate_truncated(&self, ell: &Direction, radius: f64) -> Result<Vec<Vec<i64>>> {
        if !self.dual_interior_contains(ell) {
            return Err(Error::NotInDualInterior);
        }
        if !(radius >= 0.0) {
            return Err(Error::Invalid("radius must be nonnegative".into()));
        }
        let n = self.dim();
        let w = self.dual_coordinates(&ell.entries);
        // A^{-T} = adj^T / det
        let bounds: Vec<i64> = (0..n)
            .map(|j| {
                let b: f64 = (0..n)
                    .map(|i| (self.adj.get(i, j) as f64 / self.det as f64).abs() * radius / w[i])
                    .sum();
                b.floor() as i64 + 1
            })
            .collect();
        let box_points: u128 = bounds.iter().map(|&b| (2 * b + 1) as u128).product();
        if box_points > MAX_BOX_POINTS {
            return Err(Error::Invalid(format!(
                "enumeration box has {box_points} points; reduce the radius"
            )));
        }
        let e = &ell.entries;
        let first = bounds[0];
        let rest = &bounds[1..];
        let chunks = par::map_range(0..(2 * first + 1) as usize, |i| {
            let k0 = i as i64 - first;
            let mut out = Vec::new();
            let mut k = vec![0i64; n];
            k[0] = k0;
            scan_box(&mut k, 1, rest, &mut |k| {
                let dot: f64 = k.iter().zip(e).map(|(&a, &b)| a as f64 * b).sum();
                if dot.abs() <= radius && self.contains_double(k) {
                    out.push((dot, k.to_vec()));
                }
            });
            out
        });
        let mut pts: Vec<(f64, Vec<i64>)> = chunks.into_iter().flatten().collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        Ok(pts.into_iter().map(|(_, k)| k).collect())
    }
}

fn scan_box(k: &mut Vec<i64>, depth: usize, bounds: &[i64], f: &mut impl FnMut(&[i64])) {
    if depth == k.len() {
        f(k);
        return;
    }
    let b = bounds[depth - 1];
    for v in -b..=b {
        k[depth] = v;
        scan_box(k, depth + 1, bounds, f);
    }
}

/// Direction `ℓ` of the line `t ↦ tℓ`.
///
/// Q-linear independence of the entries cannot be certified for floating
/// point input; `independence_asserted` records that the caller vouches for
/// it, and [`Direction::integer_relation`] is a best-effort lint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub entries: Vec<f64>,
    #[serde(default)]
    pub independence_asserted: bool,
}

impl Direction {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().all(|&v| v == 0.0) {
            return Err(Error::Invalid("direction must be a nonzero vector".into()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("direction has non-finite entries".into()));
        }
        Ok(Self {
            entries,
            independence_asserted: false,
        })
    }

    /// `(1, √2)`.
    pub fn golden_pair() -> Self {
        Self {
            entries: vec![1.0, std::f64::consts::SQRT_2],
            independence_asserted: true,
        }
    }

    /// `(1, √2, √3)`.
    pub fn root_triple() -> Self {
        Self {
            entries: vec![1.0, std::f64::consts::SQRT_2, 3f64.sqrt()],
            independence_asserted: true,
        }
    }

    pub fn asserted(mut self) -> Self {
        self.independence_asserted = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn dot(&self, k: &[i64]) -> f64 {
        self.entries.iter().zip(k).map(|(&a, &b)| a * b as f64).sum()
    }

    /// Searches `m ∈ Z^n`, `0 < ‖m‖∞ ≤ bound`, with `|⟨m,ℓ⟩| ≤ 1e-9·‖m‖·‖ℓ‖`.
    ///
    /// The bound is lowered automatically so the search stays below ~10^7
    /// candidates. The first nonzero entry of a returned relation is positive.
    pub fn integer_relation(&self, bound: i64) -> Option<Vec<i64>> {
        let n = self.dim();
        let mut b = bound.max(1);
        while ((2 * b + 1) as f64).powi(n as i32) > 1e7 && b > 1 {
            b -= 1;
        }
        let norm = self.entries.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut m = vec![0i64; n];
        let mut found = None;
        let mut visit = |m: &[i64]| {
            if found.is_some() {
                return;
            }
            let Some(first) = m.iter().find(|&&v| v != 0) else {
                return;
            };
            if *first < 0 {
                return;
            }
            let mn = m.iter().map(|&v| (v * v) as f64).sum::<f64>().sqrt();
            if self.dot(m).abs() <= 1e-9 * mn * norm {
                found = Some(m.to_vec());
            }
        };
        fn rec(m: &mut Vec<i64>, d: usize, b: i64, f: &mut impl FnMut(&[i64])) {
            if d == m.len() {
                f(m);
                return;
            }
            for v in -b..=b {
                m[d] = v;
                rec(m, d + 1, b, f);
            }
        }
        rec(&mut m, 0, b, &mut visit);
        found
    }

    /// Logs a warning if a small integer relation exists.
    pub fn lint_independence(&self) -> Option<Vec<i64>> {
        let rel = self.integer_relation(50);
        if let Some(m) = &rel {
            log::warn!(
                "direction {:?} satisfies the integer relation {:?}; entries are not Q-independent",
                self.entries,
                m
            );
        }
        rel
    }
}

/// JSON form `{"entries": [..]}`.
impl Direction {
    pub fn from_json(s: &str) -> Result<Self> {
        let d: Direction = serde_json::from_str(s)
            .map_err(|e| Error::Invalid(format!("direction JSON: {e}")))?;
        Direction::new(d.entries).map(|mut x| {
            x.independence_asserted = d.independence_asserted;
            x
        })
    }
}

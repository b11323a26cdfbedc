//! Lattice operators restricted to finite windows.
//!
//! The physical family acts on `l2(Z)`:
//!
//! ```text
//! (H(x) psi)(n) = psi(n+1) + psi(n-1) + eps * v(x + n*alpha) * psi(n)
//! ```
//!
//! with `v` a real trigonometric polynomial on the d-torus and `alpha` a
//! frequency vector. The dual family acts on `l2(Z^d)`:
//!
//! ```text
//! (Hd(theta) psi)(m) = eps * (vhat * psi)(m) + 2 cos(2 pi (theta + m.alpha)) psi(m)
//! ```
//!
//! Both are truncated to finite index windows with a hard (Dirichlet) cutoff:
//! matrix elements that would reach outside the window are dropped. Window
//! enumeration is lexicographic over the box `[-N, N]^d`, which fixes the
//! bijection to `0..site_count` used by every dense matrix in this crate.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::frac;

const TWO_PI: f64 = 2.0 * PI;

/// Hermitian-symmetry tolerance for potential coefficients.
const SYMMETRY_TOL: f64 = 1e-12;
/// Largest imaginary part tolerated when evaluating a potential.
const EVAL_IMAG_TOL: f64 = 1e-10;

/// A real trigonometric polynomial on the d-torus, stored through its
/// finitely many Fourier coefficients `vhat(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPotential {
    dim: usize,
    coeffs: BTreeMap<Vec<i64>, C64>,
    support_radius: i64,
}

impl TrigPotential {
    /// Build from `(mode, coefficient)` pairs. Zero coefficients are dropped.
    ///
    /// Fails unless `vhat(-m) = conj(vhat(m))` for every mode, which is what
    /// makes the potential real-valued.
    pub fn new<I>(dim: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C64)>,
    {
        if dim == 0 {
            return Err(Error::InvalidPotential("dimension must be positive".into()));
        }
        let mut map: BTreeMap<Vec<i64>, C64> = BTreeMap::new();
        for (m, c) in coeffs {
            if m.len() != dim {
                return Err(Error::InvalidPotential(format!(
                    "mode {m:?} has dimension {}, expected {dim}",
                    m.len()
                )));
            }
            *map.entry(m).or_insert(C64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm() > 0.0);
        for (m, c) in &map {
            let neg: Vec<i64> = m.iter().map(|k| -k).collect();
            let mirror = map.get(&neg).copied().unwrap_or(C64::new(0.0, 0.0));
            if (mirror - c.conj()).norm() > SYMMETRY_TOL {
                return Err(Error::InvalidPotential(format!(
                    "coefficient at {m:?} breaks vhat(-m) = conj(vhat(m))"
                )));
            }
        }
        let support_radius = map
            .keys()
            .map(|m| m.iter().map(|k| k.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Ok(Self {
            dim,
            coeffs: map,
            support_radius,
        })
    }

    /// The one-frequency cosine potential `v(x) = 2 cos(2 pi x)`,
    /// i.e. `vhat(1) = vhat(-1) = 1`.
    pub fn amo() -> Self {
        Self::new(
            1,
            [
                (vec![1], C64::new(1.0, 0.0)),
                (vec![-1], C64::new(1.0, 0.0)),
            ],
        )
        .expect("cosine coefficients are symmetric")
    }

    /// Separable multi-frequency cosine `v(x) = sum_i 2 cos(2 pi x_i)`.
    pub fn cosine_sum(dim: usize) -> Self {
        let mut coeffs = Vec::new();
        for i in 0..dim {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            coeffs.push((e.clone(), C64::new(1.0, 0.0)));
            e[i] = -1;
            coeffs.push((e, C64::new(1.0, 0.0)));
        }
        Self::new(dim, coeffs).expect("cosine coefficients are symmetric")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest `|m|_inf` with a nonzero coefficient.
    pub fn support_radius(&self) -> i64 {
        self.support_radius
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&[i64], C64)> {
        self.coeffs.iter().map(|(m, c)| (m.as_slice(), *c))
    }

    /// Fourier coefficient at `m` (zero off the support).
    pub fn coeff(&self, m: &[i64]) -> C64 {
        self.coeffs
            .get(m)
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// Evaluate `v(x) = sum_m vhat(m) exp(2 pi i m.x)` at a point of the
    /// d-torus. The imaginary part is asserted to be negligible and dropped.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::InvalidPotential(format!(
                "point has dimension {}, expected {}",
                x.len(),
                self.dim
            )));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in &self.coeffs {
            let phase: f64 = m.iter().zip(x).map(|(k, xi)| *k as f64 * xi).sum();
            acc += c * C64::from_polar(1.0, TWO_PI * phase);
        }
        if acc.im.abs() > EVAL_IMAG_TOL {
            return Err(Error::InvalidPotential(format!(
                "evaluation has imaginary part {:.3e}",
                acc.im
            )));
        }
        Ok(acc.re)
    }
}

/// A frequency vector `alpha` in `[0,1)^d`, optionally tagged as the exact
/// rational `p/q` it was constructed from.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    alpha: Vec<f64>,
    rational_denominator: Option<u64>,
}

impl FrequencyVector {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidFrequency("empty frequency vector".into()));
        }
        for a in &alpha {
            if !(0.0..1.0).contains(a) {
                return Err(Error::InvalidFrequency(format!(
                    "component {a} outside [0,1)"
                )));
            }
        }
        Ok(Self {
            alpha,
            rational_denominator: None,
        })
    }

    /// `alpha = (sqrt(5)-1)/2`, the golden rotation number.
    pub fn golden() -> Self {
        Self {
            alpha: vec![(5.0_f64.sqrt() - 1.0) / 2.0],
            rational_denominator: None,
        }
    }

    /// Exact rational proxy `p_i / q`.
    pub fn rational(numerators: &[u64], denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidFrequency("zero denominator".into()));
        }
        let alpha: Vec<f64> = numerators
            .iter()
            .map(|p| (p % denominator) as f64 / denominator as f64)
            .collect();
        let mut fv = Self::new(alpha)?;
        fv.rational_denominator = Some(denominator);
        Ok(fv)
    }

    /// Wrap an existing vector and declare a rational denominator. Each
    /// `alpha_i * q` must be integral to within `1e-12 * q`.
    pub fn with_denominator(alpha: Vec<f64>, q: u64) -> Result<Self> {
        let fv = Self::new(alpha)?;
        for a in &fv.alpha {
            let scaled = a * q as f64;
            if (scaled - scaled.round()).abs() > 1e-12 * q as f64 {
                return Err(Error::InvalidFrequency(format!(
                    "{a} is not a multiple of 1/{q}"
                )));
            }
        }
        Ok(Self {
            rational_denominator: Some(q),
            ..fv
        })
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn rational_denominator(&self) -> Option<u64> {
        self.rational_denominator
    }

    /// Orbit point `x + n*alpha` on the torus.
    pub fn translate(&self, x: &[f64], n: i64) -> Vec<f64> {
        x.iter()
            .zip(&self.alpha)
            .map(|(xi, ai)| frac(xi + n as f64 * ai))
            .collect()
    }

    /// Inner product `m . alpha` reduced to `[0, 1)`.
    pub fn mode_phase(&self, m: &[i64]) -> f64 {
        let s: f64 = m.iter().zip(&self.alpha).map(|(k, a)| *k as f64 * a).sum();
        frac(s)
    }
}

/// Symmetric window `{ n : |n| <= N }` of the one-dimensional lattice.
/// Index `i` corresponds to site `i - N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window1d {
    half_width: i64,
}

impl Window1d {
    pub fn new(half_width: usize) -> Self {
        Self {
            half_width: half_width as i64,
        }
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn site_count(&self) -> usize {
        (2 * self.half_width + 1) as usize
    }

    pub fn contains(&self, n: i64) -> bool {
        n.abs() <= self.half_width
    }

    pub fn index_of(&self, n: i64) -> Option<usize> {
        self.contains(n).then_some((n + self.half_width) as usize)
    }

    pub fn site(&self, index: usize) -> i64 {
        index as i64 - self.half_width
    }

    pub fn sites(&self) -> impl Iterator<Item = i64> {
        -self.half_width..=self.half_width
    }

    /// Unit vector `delta_n` on this window.
    pub fn delta(&self, n: i64) -> Result<Array1<C64>> {
        let idx = self
            .index_of(n)
            .ok_or_else(|| Error::WindowMismatch(format!("site {n} outside window")))?;
        let mut v = Array1::zeros(self.site_count());
        v[idx] = C64::new(1.0, 0.0);
        Ok(v)
    }
}

/// Symmetric box window `{ m : |m|_inf <= N }` of the d-dimensional lattice,
/// enumerated lexicographically (first coordinate most significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowNd {
    dim: usize,
    half_width: i64,
}

impl WindowNd {
    pub fn new(dim: usize, half_width: usize) -> Self {
        assert!(dim >= 1, "window dimension must be positive");
        Self {
            dim,
            half_width: half_width as i64,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn side(&self) -> usize {
        (2 * self.half_width + 1) as usize
    }

    pub fn site_count(&self) -> usize {
        self.side().pow(self.dim as u32)
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        m.len() == self.dim && m.iter().all(|k| k.abs() <= self.half_width)
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        if !self.contains(m) {
            return None;
        }
        let side = self.side();
        let mut idx = 0usize;
        for k in m {
            idx = idx * side + (k + self.half_width) as usize;
        }
        Some(idx)
    }

    pub fn point(&self, index: usize) -> Vec<i64> {
        let side = self.side();
        let mut rest = index;
        let mut m = vec![0i64; self.dim];
        for slot in m.iter_mut().rev() {
            *slot = (rest % side) as i64 - self.half_width;
            rest /= side;
        }
        m
    }

    /// All points in index (lexicographic) order.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.site_count()).map(|i| self.point(i))
    }

    pub fn delta(&self, m: &[i64]) -> Result<Array1<C64>> {
        let idx = self
            .index_of(m)
            .ok_or_else(|| Error::WindowMismatch(format!("point {m:?} outside window")))?;
        let mut v = Array1::zeros(self.site_count());
        v[idx] = C64::new(1.0, 0.0);
        Ok(v)
    }
}

/// Which operator family a windowed matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Physical,
    Dual,
}

/// The window a matrix was built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorWindow {
    Physical(Window1d),
    Dual(WindowNd),
}

impl OperatorWindow {
    pub fn site_count(&self) -> usize {
        match self {
            OperatorWindow::Physical(w) => w.site_count(),
            OperatorWindow::Dual(w) => w.site_count(),
        }
    }
}

/// Construction parameters kept for provenance and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorParams {
    pub epsilon: f64,
    /// The sampled point: `x` for the physical family, `[theta]` for the dual.
    pub sample_point: Vec<f64>,
}

/// Dense Hermitian matrix of a windowed operator.
#[derive(Debug, Clone)]
pub struct WindowedOperator {
    pub matrix: Array2<C64>,
    pub window: OperatorWindow,
    pub params: OperatorParams,
}

impl WindowedOperator {
    pub fn kind(&self) -> OperatorKind {
        match self.window {
            OperatorWindow::Physical(_) => OperatorKind::Physical,
            OperatorWindow::Dual(_) => OperatorKind::Dual,
        }
    }

    pub fn site_count(&self) -> usize {
        self.window.site_count()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.matrix;
        let n = m.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// True when every entry has zero imaginary part, enabling the real
    /// symmetric eigensolver path.
    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }

    /// Euclidean operator-norm upper bound via max absolute row sum.
    pub fn norm_bound(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in self.matrix.rows() {
            let s: f64 = row.iter().map(|z| z.norm()).sum();
            worst = worst.max(s);
        }
        worst
    }
}

/// Physical Hamiltonian on a window: hopping 1 off-diagonal, diagonal
/// `eps * v(x + n*alpha)`, hard cutoff at the edges.
pub fn build_hamiltonian(
    v: &TrigPotential,
    x: &[f64],
    alpha: &FrequencyVector,
    epsilon: f64,
    w: Window1d,
) -> Result<WindowedOperator> {
    if epsilon < 0.0 {
        return Err(Error::InvalidArgument("epsilon must be >= 0".into()));
    }
    if v.dim() != alpha.dim() || x.len() != v.dim() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: potential d={}, alpha d={}, x d={}",
            v.dim(),
            alpha.dim(),
            x.len()
        )));
    }
    let n = w.site_count();
    let mut h = Array2::zeros((n, n));
    for (i, site) in w.sites().enumerate() {
        let val = epsilon * v.evaluate(&alpha.translate(x, site))?;
        h[(i, i)] = C64::new(val, 0.0);
        if i + 1 < n {
            h[(i, i + 1)] = C64::new(1.0, 0.0);
            h[(i + 1, i)] = C64::new(1.0, 0.0);
        }
    }
    Ok(WindowedOperator {
        matrix: h,
        window: OperatorWindow::Physical(w),
        params: OperatorParams {
            epsilon,
            sample_point: x.to_vec(),
        },
    })
}

/// Dual Hamiltonian on a box window:
/// `entry(m, m') = eps * vhat(m - m') + delta_{mm'} * 2 cos(2 pi (theta + m.alpha))`.
pub fn build_dual_hamiltonian(
    v: &TrigPotential,
    theta: f64,
    alpha: &FrequencyVector,
    epsilon: f64,
    w: WindowNd,
) -> Result<WindowedOperator> {
    if epsilon < 0.0 {
        return Err(Error::InvalidArgument("epsilon must be >= 0".into()));
    }
    if v.dim() != alpha.dim() || w.dim() != v.dim() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: potential d={}, alpha d={}, window d={}",
            v.dim(),
            alpha.dim(),
            w.dim()
        )));
    }
    let n = w.site_count();
    let mut h = Array2::zeros((n, n));
    let mut diff = vec![0i64; w.dim()];
    for (i, m) in w.points().enumerate() {
        h[(i, i)] = C64::new(2.0 * (TWO_PI * (theta + alpha.mode_phase(&m))).cos(), 0.0);
        // band of width support_radius around the diagonal, via the
        // potential's modes
        for (k, c) in v.coeffs() {
            for (slot, (mi, ki)) in diff.iter_mut().zip(m.iter().zip(k)) {
                *slot = mi - ki;
            }
            if let Some(j) = w.index_of(&diff) {
                // entry(m, m') with m - m' = k
                h[(i, j)] += epsilon * c;
            }
        }
    }
    Ok(WindowedOperator {
        matrix: h,
        window: OperatorWindow::Dual(w),
        params: OperatorParams {
            epsilon,
            sample_point: vec![theta],
        },
    })
}

/// Hopping current stencil `(A psi)(n) = i (psi(n+1) - psi(n-1))` with hard
/// cutoff at the window edges. Its operator norm is at most 2.
pub fn apply_current(psi: ArrayView1<'_, C64>) -> Array1<C64> {
    let n = psi.len();
    let i_unit = C64::new(0.0, 1.0);
    let mut out = Array1::zeros(n);
    for k in 0..n {
        let up = if k + 1 < n {
            psi[k + 1]
        } else {
            C64::new(0.0, 0.0)
        };
        let down = if k > 0 { psi[k - 1] } else { C64::new(0.0, 0.0) };
        out[k] = i_unit * (up - down);
    }
    out
}

/// Real part of the current stencil: `(K psi)(n) = psi(n+1) - psi(n-1)`,
/// so that `A = i K`. Used by the real eigensolver path.
pub(crate) fn apply_current_real(psi: &[f64], out: &mut [f64]) {
    let n = psi.len();
    for k in 0..n {
        let up = if k + 1 < n { psi[k + 1] } else { 0.0 };
        let down = if k > 0 { psi[k - 1] } else { 0.0 };
        out[k] = up - down;
    }
}

/// Dense matrix of the current operator on a window.
pub fn current_matrix(w: Window1d) -> Array2<C64> {
    let n = w.site_count();
    let i_unit = C64::new(0.0, 1.0);
    let mut a = Array2::zeros((n, n));
    for k in 0..n {
        if k + 1 < n {
            a[(k, k + 1)] = i_unit;
            a[(k + 1, k)] = -i_unit;
        }
    }
    a
}

/// Diagonal of the dual current operator: entries `2 sin(2 pi (m.alpha + theta))`
/// over the window, in index order.
pub fn dual_current_diagonal(theta: f64, alpha: &FrequencyVector, w: &WindowNd) -> Array1<f64> {
    let mut d = Array1::zeros(w.site_count());
    for (i, m) in w.points().enumerate() {
        d[i] = 2.0 * (TWO_PI * (alpha.mode_phase(&m) + theta)).sin();
    }
    d
}

/// Windowed convolution `(vhat * psi)(m) = sum_k vhat(k) psi(m - k)` with a
/// hard cutoff: contributions from outside the window are dropped.
pub fn convolve(v: &TrigPotential, psi: ArrayView1<'_, C64>, w: &WindowNd) -> Result<Array1<C64>> {
    if psi.len() != w.site_count() {
        return Err(Error::WindowMismatch(format!(
            "vector length {} does not match window size {}",
            psi.len(),
            w.site_count()
        )));
    }
    if v.dim() != w.dim() {
        return Err(Error::InvalidArgument(format!(
            "potential d={} vs window d={}",
            v.dim(),
            w.dim()
        )));
    }
    let mut out = Array1::zeros(psi.len());
    let mut src = vec![0i64; w.dim()];
    for (i, m) in w.points().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in v.coeffs() {
            for (slot, (mi, ki)) in src.iter_mut().zip(m.iter().zip(k)) {
                *slot = mi - ki;
            }
            if let Some(j) = w.index_of(&src) {
                acc += c * psi[j];
            }
        }
        out[i] = acc;
    }
    Ok(out)
}

//! Dense square complex matrices.
//!
//! Coin operators are 2×2, ancilla-coin dilations are 4×4 and tensor powers
//! stay below [`Limits::max_dim`]. Storage is row-major `Vec<Complex64>`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QorwError, Result};
use crate::tolerance::{Limits, LIMITS};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Fails unless there are `dim²`
    /// finite entries with `dim ≥ 1`.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(QorwError::Structural("matrix dimension must be ≥ 1".into()));
        }
        if data.len() != dim * dim {
            return Err(QorwError::Structural(format!(
                "expected {} entries for a {dim}×{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QorwError::Numeric("matrix has non-finite entries".into()));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from nested rows; panics on ragged input.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), dim, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Self { dim, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// `|ψ⟩⟨ψ|` for an (unnormalized) state vector.
    pub fn outer(psi: &[C64]) -> Self {
        let dim = psi.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    /// `self += z·other`
    pub fn add_scaled(&mut self, other: &Self, z: C64) {
        assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * z;
        }
    }

    /// `X ρ X†`
    pub fn conjugate_by(&self, x: &Self) -> Self {
        &(x * self) * &x.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Largest entry of `|M M† − 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                if s == ZERO {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Converts to nalgebra for eigen-solves and factorizations.
    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<C64> {
        nalgebra::DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

// {dim, re[][], im[][]} fixture form.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&self[(i, j)])).collect())
                .collect()
        };
        MatrixRepr {
            dim: n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MatrixRepr::deserialize(deserializer)?;
        let n = repr.dim;
        if repr.re.len() != n
            || repr.im.len() != n
            || repr.re.iter().chain(&repr.im).any(|r| r.len() != n)
        {
            return Err(D::Error::custom(format!(
                "re/im must both be {n}×{n} nested arrays"
            )));
        }
        let data = repr
            .re
            .iter()
            .flatten()
            .zip(repr.im.iter().flatten())
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(n, data).map_err(D::Error::custom)
    }
}

/// Pauli and projector matrices on the coin, in the `{|+⟩, |−⟩}` basis.
pub mod pauli {
    use super::*;

    pub fn sigma_1() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_2() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
    }

    pub fn sigma_3() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `σ₊ = |+⟩⟨−|`
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ZERO, ZERO]])
    }

    /// `σ₋ = |−⟩⟨+|`
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ZERO], [ONE, ZERO]])
    }

    /// `P₊ = |+⟩⟨+|`
    pub fn proj_plus() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[ONE, ZERO])
    }

    /// `P₋ = |−⟩⟨−|`
    pub fn proj_minus() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[ZERO, ONE])
    }
}

/// `exp(iθσ₂) = [[cosθ, sinθ], [−sinθ, cosθ]]`.
pub fn rotation_unitary(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_real_rows(&[[c, s], [-s, c]])
}

/// s-fold tensor power under the default dimension cap.
pub fn tensor_power(m: &ComplexMatrix, s: usize) -> Result<ComplexMatrix> {
    tensor_power_with(m, s, &LIMITS)
}

pub fn tensor_power_with(m: &ComplexMatrix, s: usize, limits: &Limits) -> Result<ComplexMatrix> {
    if s == 0 {
        return Err(QorwError::Parameter("tensor power order must be ≥ 1".into()));
    }
    let out_dim = (m.dim() as u128).checked_pow(s as u32);
    match out_dim {
        Some(d) if d <= limits.max_dim as u128 => {}
        _ => {
            return Err(QorwError::Resource(format!(
                "{}^{s} exceeds the dimension cap {}",
                m.dim(),
                limits.max_dim
            )))
        }
    }
    let mut out = m.clone();
    for _ in 1..s {
        out = out.kron(m);
    }
    Ok(out)
}

/// Traces out the leading tensor factor of dimension `first_dim`.
pub fn partial_trace_first(m: &ComplexMatrix, first_dim: usize) -> Result<ComplexMatrix> {
    if first_dim == 0 || !m.dim().is_multiple_of(first_dim) {
        return Err(QorwError::Structural(format!(
            "dimension {} is not divisible by {first_dim}",
            m.dim()
        )));
    }
    let rest = m.dim() / first_dim;
    let mut out = ComplexMatrix::zeros(rest);
    for a in 0..first_dim {
        for i in 0..rest {
            for j in 0..rest {
                out[(i, j)] += m[(a * rest + i, a * rest + j)];
            }
        }
    }
    Ok(out)
}

/// Traces out the factors listed in `traced` of a system with factor
/// dimensions `dims` (leading factor first). The remaining factors keep
/// their order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], traced: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if total != m.dim() {
        return Err(QorwError::Structural(format!(
            "factor dimensions {dims:?} do not multiply to {}",
            m.dim()
        )));
    }
    if traced.iter().any(|&t| t >= dims.len()) {
        return Err(QorwError::Structural("traced factor index out of range".into()));
    }
    let kept: Vec<usize> = (0..dims.len()).filter(|f| !traced.contains(f)).collect();
    let kept_dim: usize = kept.iter().map(|&f| dims[f]).product();
    let traced_dim: usize = traced.iter().map(|&f| dims[f]).product();

    // multi-index ↔ flat index, leading factor most significant
    let flatten = |digits: &[usize]| digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d);
    let split = |mut flat: usize, factors: &[usize]| -> Vec<usize> {
        let mut digits = vec![0; factors.len()];
        for (slot, &f) in factors.iter().enumerate().rev() {
            digits[slot] = flat % dims[f];
            flat /= dims[f];
        }
        digits
    };

    let mut out = ComplexMatrix::zeros(kept_dim);
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    for i in 0..kept_dim {
        let ki = split(i, &kept);
        for j in 0..kept_dim {
            let kj = split(j, &kept);
            let mut acc = ZERO;
            for t in 0..traced_dim {
                let td = split(t, traced);
                for (slot, &f) in kept.iter().enumerate() {
                    row_digits[f] = ki[slot];
                    col_digits[f] = kj[slot];
                }
                for (slot, &f) in traced.iter().enumerate() {
                    row_digits[f] = td[slot];
                    col_digits[f] = td[slot];
                }
                acc += m[(flatten(&row_digits), flatten(&col_digits))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Matrix exponential by scaling and squaring around a Taylor series.
pub fn matrix_exponential(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_exponential_with(m, &LIMITS)
}

pub fn matrix_exponential_with(m: &ComplexMatrix, limits: &Limits) -> Result<ComplexMatrix> {
    if m.dim() > limits.max_dim {
        return Err(QorwError::Resource(format!(
            "dimension {} exceeds the cap {}",
            m.dim(),
            limits.max_dim
        )));
    }
    if !m.is_finite() {
        return Err(QorwError::Numeric("exponent has non-finite entries".into()));
    }
    let norm = m.one_norm();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = m.scale_real(0.5f64.powi(squarings as i32));

    let n = m.dim();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    let mut converged = false;
    for j in 1..=limits.expm_max_terms {
        term = (&term * &scaled).scale_real(1.0 / j as f64);
        sum = &sum + &term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() * 1e-2 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(QorwError::Numeric(format!(
            "Taylor series did not converge in {} terms",
            limits.expm_max_terms
        )));
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// Fixed-size 2×2 complex matrix for the coin hot paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn diag(a: C64, b: C64) -> Self {
        Mat2([[a, ZERO], [ZERO, b]])
    }

    #[inline]
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    #[inline]
    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    #[inline]
    pub fn scale(&self, z: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * z, m[0][1] * z], [m[1][0] * z, m[1][1] * z]])
    }

    /// `diag(l0, l1) · self · diag(r0, r1)`
    #[inline]
    pub fn diag_sandwich(&self, l: (C64, C64), r: (C64, C64)) -> Self {
        let m = &self.0;
        Mat2([
            [l.0 * m[0][0] * r.0, l.0 * m[0][1] * r.1],
            [l.1 * m[1][0] * r.0, l.1 * m[1][1] * r.1],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    #[inline]
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    #[inline]
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl TryFrom<&ComplexMatrix> for Mat2 {
    type Error = QorwError;
    fn try_from(m: &ComplexMatrix) -> Result<Mat2> {
        if m.dim() != 2 {
            return Err(QorwError::Structural(format!(
                "expected a 2×2 coin matrix, got {}×{}",
                m.dim(),
                m.dim()
            )));
        }
        Ok(Mat2([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]))
    }
}

impl From<Mat2> for ComplexMatrix {
    fn from(m: Mat2) -> ComplexMatrix {
        ComplexMatrix::from_rows(&m.0)
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rotation_quarter_angles() {
        assert!(rotation_unitary(0.0).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let r = FRAC_1_SQRT_2;
        let expected = ComplexMatrix::from_real_rows(&[[r, r], [-r, r]]);
        assert!(rotation_unitary(FRAC_PI_4).max_abs_diff(&expected) < 1e-15);
        let quarter = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
        assert!(rotation_unitary(FRAC_PI_2).max_abs_diff(&quarter) < 1e-15);
        for theta in [0.3, 1.1, -2.0, 5.0] {
            assert!(rotation_unitary(theta).unitarity_deviation() < 1e-14);
        }
    }

    #[test]
    fn tensor_power_traces_and_mixed_product() {
        let s3 = sigma_3();
        assert_eq!(tensor_power(&s3, 1).unwrap(), s3);
        assert!(tensor_power(&s3, 2).unwrap().trace().norm() < 1e-15);
        let xx = tensor_power(&sigma_1(), 2).unwrap();
        assert!((&xx * &xx).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        let m = ComplexMatrix::from_rows(&[[C64::new(0.5, 0.1), ONE], [I, C64::new(-0.2, 0.0)]]);
        let t3 = tensor_power(&m, 3).unwrap();
        assert!((t3.trace() - m.trace().powi(3)).norm() < 1e-13);
    }

    #[test]
    fn tensor_power_respects_cap() {
        let limits = Limits {
            max_dim: 16,
            ..Limits::DEFAULT
        };
        assert!(tensor_power_with(&sigma_1(), 4, &limits).is_ok());
        assert!(matches!(
            tensor_power_with(&sigma_1(), 5, &limits),
            Err(QorwError::Resource(_))
        ));
        assert!(matches!(tensor_power(&sigma_1(), 13), Err(QorwError::Resource(_))));
        assert!(matches!(tensor_power(&sigma_1(), 0), Err(QorwError::Parameter(_))));
    }

    #[test]
    fn partial_trace_first_cases() {
        let id2 = ComplexMatrix::identity(2).scale_real(2.0);
        assert!(partial_trace_first(&ComplexMatrix::identity(4), 2)
            .unwrap()
            .max_abs_diff(&id2)
            < 1e-15);
        let a = ComplexMatrix::from_real_rows(&[[0.7, 0.1], [0.1, 0.3]]);
        let c = ComplexMatrix::from_rows(&[[C64::new(0.4, 0.0), C64::new(0.1, 0.2)], [
            C64::new(0.1, -0.2),
            C64::new(0.6, 0.0),
        ]]);
        assert!(partial_trace_first(&a.kron(&c), 2).unwrap().max_abs_diff(&c) < 1e-15);
        assert!(matches!(
            partial_trace_first(&ComplexMatrix::identity(6), 4),
            Err(QorwError::Structural(_))
        ));
    }

    #[test]
    fn general_partial_trace_matches_factors() {
        let a = ComplexMatrix::from_real_rows(&[[0.7, 0.1], [0.1, 0.3]]);
        let b = ComplexMatrix::from_real_rows(&[[0.2, 0.0], [0.0, 0.8]]);
        let c = ComplexMatrix::from_rows(&[[C64::new(0.4, 0.0), C64::new(0.1, 0.2)], [
            C64::new(0.1, -0.2),
            C64::new(0.6, 0.0),
        ]]);
        let abc = a.kron(&b).kron(&c);
        let ac = partial_trace(&abc, &[2, 2, 2], &[1]).unwrap();
        assert!(ac.max_abs_diff(&a.kron(&c)) < 1e-15);
        let b_only = partial_trace(&abc, &[2, 2, 2], &[0, 2]).unwrap();
        assert!(b_only.max_abs_diff(&b) < 1e-15);
        let first = partial_trace(&abc, &[2, 4], &[0]).unwrap();
        assert!(first.max_abs_diff(&partial_trace_first(&abc, 2).unwrap()) < 1e-15);
    }

    #[test]
    fn exponential_closed_forms() {
        let e0 = matrix_exponential(&ComplexMatrix::zeros(3)).unwrap();
        assert!(e0.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let gen = sigma_2().scale(I * FRAC_PI_4);
        let r = matrix_exponential(&gen).unwrap();
        assert!(r.max_abs_diff(&rotation_unitary(FRAC_PI_4)) < 1e-14);
        // large norm exercises the squaring phase
        let big = sigma_2().scale(I * 37.3);
        assert!(matrix_exponential(&big)
            .unwrap()
            .max_abs_diff(&rotation_unitary(37.3))
            < 1e-12);
        let nan = ComplexMatrix::from_rows(&[[C64::new(f64::NAN, 0.0)]]);
        assert!(matches!(matrix_exponential(&nan), Err(QorwError::Numeric(_))));
    }

    #[test]
    fn json_fixture_form() {
        let m = ComplexMatrix::from_rows(&[[ONE, I], [-I, C64::new(0.5, 0.25)]]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"dim":2,"re":[[1.0,0.0],[-0.0,0.5]],"im":[[0.0,1.0],[-1.0,0.25]]}"#
        );
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"dim":2,"re":[[1,0]],"im":[[0,0]]}"#).is_err());
    }

    #[test]
    fn mat2_agrees_with_dense() {
        let a = ComplexMatrix::from_rows(&[[C64::new(0.3, 0.1), ONE], [I, C64::new(-0.2, 0.5)]]);
        let b = rotation_unitary(0.7);
        let (a2, b2) = (Mat2::try_from(&a).unwrap(), Mat2::try_from(&b).unwrap());
        assert!(ComplexMatrix::from(a2 * b2).max_abs_diff(&(&a * &b)) < 1e-15);
        assert!(ComplexMatrix::from(a2.adjoint()).max_abs_diff(&a.adjoint()) < 1e-15);
        assert!(Mat2::try_from(&ComplexMatrix::identity(3)).is_err());
    }
}

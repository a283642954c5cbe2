//! Small dense Hermitian matrices and a cyclic Jacobi eigenvalue solver.

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance on `|a_ij - conj(a_ji)|`, relative to `max(1, ||A||_F)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of `||A||_F`.
pub const JACOBI_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_CLAMP_TOL * ||A||_F, 0)` are rounding noise and are
/// clamped to zero.
pub const PSD_CLAMP_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major and expected to be Hermitian.
///
/// The constructors do not enforce conjugate symmetry; the eigensolver
/// checks it and reports a contract violation instead.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![Complex64::new(0.0, 0.0); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_diagonal(&vec![1.0; order])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must equal
    /// `order * order`.
    pub fn from_row_major(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::LengthMismatch {
                left: entries.len(),
                right: order * order,
            });
        }
        Ok(Self { order, entries })
    }

    /// Gram matrix `R R^H` of the given rows, where entry `(i, j)` is
    /// `sum_m r_i[m] conj(r_j[m])`. The result is exactly Hermitian.
    pub fn gram<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        for r in rows {
            if r.as_ref().len() != width {
                return Err(Error::LengthMismatch {
                    left: r.as_ref().len(),
                    right: width,
                });
            }
        }
        let mut g = Self::zeros(order);
        for i in 0..order {
            let ri = rows[i].as_ref();
            let diag: f64 = ri.iter().map(|z| z.norm_sqr()).sum();
            g.set(i, i, Complex64::new(diag, 0.0));
            for j in (i + 1)..order {
                let rj = rows[j].as_ref();
                let v: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.order + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij - conj(a_ji)|` over all entries, diagonal included.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.order {
            for j in i..self.order {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.order {
            for j in 0..self.order {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

/// All eigenvalues of a Hermitian matrix in ascending order, by cyclic
/// Jacobi rotations.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary,
/// then applies the real symmetric Jacobi rotation that zeroes it.
pub fn hermitian_eigenvalues(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let n = a.order();
    let norm = a.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * norm.max(1.0) {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if norm == 0.0 {
        return Ok(vec![0.0; n]);
    }

    let mut w = a.clone();
    for i in 0..n {
        let d = w.get(i, i).re;
        w.set(i, i, Complex64::new(d, 0.0));
    }

    let target = JACOBI_TOL * norm;
    let mut sweeps = 0;
    loop {
        let off = w.off_diagonal_norm();
        if off < target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut w, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| w.get(i, i).re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn rotate(w: &mut HermitianMatrix, p: usize, q: usize) {
    let n = w.order();
    let apq = w.get(p, q);
    let g = apq.norm();
    if g == 0.0 {
        return;
    }

    // Diagonal unitary: scale column q by conj(phase) and row q by phase so
    // that a_pq becomes the real number |a_pq|.
    let phase = apq / g;
    for k in 0..n {
        let v = w.get(k, q) * phase.conj();
        w.set(k, q, v);
    }
    for k in 0..n {
        let v = w.get(q, k) * phase;
        w.set(q, k, v);
    }

    let app = w.get(p, p).re;
    let aqq = w.get(q, q).re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = w.get(k, p);
        let akq = w.get(k, q);
        w.set(k, p, akp * c - akq * s);
        w.set(k, q, akp * s + akq * c);
    }
    for k in 0..n {
        let apk = w.get(p, k);
        let aqk = w.get(q, k);
        w.set(p, k, apk * c - aqk * s);
        w.set(q, k, apk * s + aqk * c);
    }

    let zero = Complex64::new(0.0, 0.0);
    w.set(p, q, zero);
    w.set(q, p, zero);
    w.set(p, p, Complex64::new(app - t * g, 0.0));
    w.set(q, q, Complex64::new(aqq + t * g, 0.0));
}

/// Clamps eigenvalues in `[-PSD_CLAMP_TOL * scale, 0)` to zero; anything
/// more negative is left alone for the caller to reject.
pub fn clamp_psd(eigenvalues: &mut [f64], scale: f64) {
    let floor = -PSD_CLAMP_TOL * scale;
    for v in eigenvalues.iter_mut() {
        if *v < 0.0 && *v >= floor {
            *v = 0.0;
        }
    }
}

/// `log2 det(I + rho A)` as `sum log2(1 + rho lambda_i)` over the
/// eigenvalues of `A`.
pub fn logdet_identity_plus(a: &HermitianMatrix, rho: f64) -> Result<f64> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("rho must be finite and >= 0, got {rho}")));
    }
    let mut eig = hermitian_eigenvalues(a)?;
    clamp_psd(&mut eig, a.frobenius_norm());
    log2_det_from_eigenvalues(&eig, rho)
}

pub(crate) fn log2_det_from_eigenvalues(eig: &[f64], rho: f64) -> Result<f64> {
    let mut total = 0.0;
    for &lambda in eig {
        let v = 1.0 + rho * lambda;
        if !(v > 0.0) {
            return Err(Error::NumericalRank { value: v });
        }
        total += v.log2();
    }
    Ok(total)
}

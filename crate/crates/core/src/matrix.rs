//! Dense complex matrices and global-phase-insensitive comparison.

use ndarray::{linalg, Array2};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

pub type CMatrix<T> = Array2<Complex<T>>;

pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `e^{iθ}`.
pub fn phase<T: Real>(theta: T) -> Complex<T> {
    Complex::from_polar(T::one(), theta)
}

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    Array2::from_shape_fn(
        (dim, dim),
        |(i, j)| if i == j { Complex::one() } else { Complex::zero() },
    )
}

pub fn from_rows<T: Real>(rows: &[&[Complex<T>]]) -> CMatrix<T> {
    Array2::from_shape_fn((rows.len(), rows[0].len()), |(i, j)| rows[i][j])
}

pub fn adjoint<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    m.t().mapv(|z| z.conj())
}

/// `a ⊗ b`; `b` occupies the low-order index bits.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    linalg::kron(a, b)
}

pub fn frobenius<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// `tr(aᴴ b)`.
pub fn inner<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Complex<T> {
    a.iter()
        .zip(b.iter())
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y)
}

/// `min_φ ‖a − e^{iφ} b‖_F`, or `None` on a shape mismatch.
pub fn phase_distance<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Option<T> {
    if a.dim() != b.dim() {
        return None;
    }
    let overlap = inner(b, a);
    let rot = if overlap.norm() > T::zero() {
        overlap / overlap.norm()
    } else {
        Complex::one()
    };
    let d = a
        .iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc + (*x - rot * y).norm_sqr());
    Some(d.sqrt())
}

/// Equality up to a global phase within Frobenius distance `tol`.
pub fn equal_up_to_phase<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, tol: T) -> bool {
    phase_distance(a, b).is_some_and(|d| d <= tol)
}

/// `‖mᴴ m − 1‖_F ≤ tol`.
pub fn is_isometry<T: Real>(m: &CMatrix<T>, tol: T) -> bool {
    let g = adjoint(m).dot(m);
    frobenius(&(g - identity::<T>(m.ncols()))) <= tol
}

pub fn is_unitary<T: Real>(m: &CMatrix<T>, tol: T) -> bool {
    m.is_square() && is_isometry(m, tol)
}

/// Whitespace-separated complex entries, one row per line.
pub fn format_matrix<T: Real>(m: &CMatrix<T>, decimals: usize) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| {
                let re = clean(z.re, decimals);
                let im = clean(z.im, decimals);
                let sign = if im.is_sign_negative() { '-' } else { '+' };
                format!("{re:.decimals$}{sign}{:.decimals$}i", im.abs())
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

// avoids printing -0.000000000
fn clean<T: Real>(x: T, decimals: usize) -> f64 {
    let v = x.to_f64().unwrap();
    if v.abs() < 0.5 * 10f64.powi(-(decimals as i32)) {
        0.0
    } else {
        v
    }
}

//! Small complex-matrix helpers shared by the gate and oracle modules.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

pub type C = Complex64;
pub type Mat2 = Matrix2<C>;
pub type Mat4 = Matrix4<C>;

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);
pub const I: C = C::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> Mat2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat2::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0))
}

/// `diag(1, i)`.
pub fn phase_gate() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, I)
}

/// `exp(i a P)` for a Pauli matrix `P`.
pub fn pauli_rotation(a: f64, p: &Mat2) -> Mat2 {
    Mat2::identity() * c(a.cos(), 0.0) + p * c(0.0, a.sin())
}

/// Kronecker product with `a` acting on the more significant qubit.
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

pub fn kron(a: &DMatrix<C>, b: &DMatrix<C>) -> DMatrix<C> {
    a.kronecker(b)
}

pub fn max_abs_diff<R, Cc, S1, S2>(a: &nalgebra::Matrix<C, R, Cc, S1>, b: &nalgebra::Matrix<C, R, Cc, S2>) -> f64
where
    R: nalgebra::Dim,
    Cc: nalgebra::Dim,
    S1: nalgebra::RawStorage<C, R, Cc>,
    S2: nalgebra::RawStorage<C, R, Cc>,
{
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entry of `U†U - I`.
pub fn unitarity_error(u: &DMatrix<C>) -> f64 {
    let prod = u.adjoint() * u;
    max_abs_diff(&prod, &DMatrix::identity(u.nrows(), u.ncols()))
}

/// `|tr(U† V)| / dim`: equals one exactly when `V = e^{iφ} U`.
pub fn fidelity_up_to_phase(u: &DMatrix<C>, v: &DMatrix<C>) -> f64 {
    assert_eq!(u.shape(), v.shape());
    let tr: C = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    tr.norm() / u.nrows() as f64
}

/// Dense matrix from the fixed-size 4x4 form.
pub fn to_dynamic4(m: &Mat4) -> DMatrix<C> {
    DMatrix::from_fn(4, 4, |r, col| m[(r, col)])
}

pub fn to_dynamic2(m: &Mat2) -> DMatrix<C> {
    DMatrix::from_fn(2, 2, |r, col| m[(r, col)])
}

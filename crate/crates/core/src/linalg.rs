//! Small dense complex matrices and helpers shared by the algebra modules.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type ComplexMatrix2 = Matrix2<C64>;
pub type ComplexMatrix4 = Matrix4<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn mat2(a: C64, b: C64, cc: C64, d: C64) -> ComplexMatrix2 {
    ComplexMatrix2::new(a, b, cc, d)
}

/// Assemble a 4×4 matrix from 2×2 tiles `[[ul, ur], [ll, lr]]`.
pub fn from_blocks(
    ul: &ComplexMatrix2,
    ur: &ComplexMatrix2,
    ll: &ComplexMatrix2,
    lr: &ComplexMatrix2,
) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(ul);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(ur);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(ll);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(lr);
    m
}

/// Tile `(row, col)` of a 4×4 matrix viewed as 2×2 blocks.
pub fn block(m: &ComplexMatrix4, row: usize, col: usize) -> ComplexMatrix2 {
    m.fixed_view::<2, 2>(2 * row, 2 * col).into_owned()
}

pub fn block_diag(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    from_blocks(a, &ComplexMatrix2::zeros(), &ComplexMatrix2::zeros(), b)
}

/// Largest entrywise modulus.
pub fn max_abs<R: nalgebra::Dim, Cc: nalgebra::Dim, S>(m: &nalgebra::Matrix<C64, R, Cc, S>) -> f64
where
    S: nalgebra::RawStorage<C64, R, Cc>,
{
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_slice(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Inverse of a unimodular-ish 2×2 matrix via the adjugate.
pub fn inverse2(m: &ComplexMatrix2) -> ComplexMatrix2 {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    mat2(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det
}

pub fn det2(m: &ComplexMatrix2) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

//! Fourier-space construction of exact plane-wave solutions.
//!
//! For a single term `a·exp(-ik·x)` every residual is a linear map of the
//! amplitude `a`, so the admissible polarizations at fixed `k` are the
//! nullspace of a 16×16 matrix. It is found by SVD and every returned
//! vector is re-checked against the residual.

use nalgebra::DMatrix;
use rand::Rng;

use crate::bispinor::{Sector, TensorMultiplet};
use crate::linalg::{C64, I, ZERO};
use crate::tensor::Linear;

use super::residual::dk_residual_jet;
use super::{Jet, PlaneWaveField};

/// Acceptance threshold on `|M v|` for a unit-norm null vector.
pub const ONSHELL_TOL: f64 = 1e-12;

fn plane_jet(k: &[f64; 4], a: TensorMultiplet) -> Jet<TensorMultiplet> {
    Jet {
        value: a,
        grad: std::array::from_fn(|c| a.scale(-I * k[c])),
    }
}

fn unit(i: usize) -> TensorMultiplet {
    let mut a = [ZERO; 16];
    a[i] = C64::new(1.0, 0.0);
    TensorMultiplet::from_array(&a)
}

/// Matrix of `a ↦ residual(a·e^{-ik·x})` at `x = 0`.
pub fn system_matrix<F>(k: &[f64; 4], residual: F) -> DMatrix<C64>
where
    F: Fn(&Jet<TensorMultiplet>) -> TensorMultiplet,
{
    let mut m = DMatrix::zeros(16, 16);
    for col in 0..16 {
        let r = residual(&plane_jet(k, unit(col))).to_array();
        for row in 0..16 {
            m[(row, col)] = r[row];
        }
    }
    m
}

/// The massive Dirac–Kähler system in Fourier space.
pub fn dk_system_matrix(k: &[f64; 4], m: f64) -> DMatrix<C64> {
    system_matrix(k, |j| dk_residual_jet(j, m))
}

/// Orthonormal basis of `{v : M v = 0}` restricted to the components where
/// `mask` is true. Candidates whose residual exceeds [`ONSHELL_TOL`] are
/// discarded, so degenerate near-null directions never leak through.
pub fn fourier_nullspace(matrix: &DMatrix<C64>, mask: Option<[bool; 16]>) -> Vec<[C64; 16]> {
    let cols: Vec<usize> = (0..16).filter(|&i| mask.is_none_or(|mk| mk[i])).collect();
    let sub = DMatrix::from_fn(16, cols.len(), |r, c| matrix[(r, cols[c])]);
    let n = cols.len();
    let svd = sub.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
        .max(1.0);
    let mut out = Vec::new();
    for (row, &s) in svd.singular_values.iter().enumerate() {
        if s > 1e-9 * smax {
            continue;
        }
        let v: Vec<C64> = (0..n).map(|c| v_t[(row, c)].conj()).collect();
        let mut full = [ZERO; 16];
        for (c, &idx) in cols.iter().enumerate() {
            full[idx] = v[c];
        }
        let residual: f64 = (0..16)
            .map(|r| (0..n).map(|c| sub[(r, c)] * v[c]).sum::<C64>().norm())
            .fold(0.0, f64::max);
        if residual < ONSHELL_TOL {
            out.push(full);
        }
    }
    out
}

/// Polarizations solving the massive system at wave vector `k`, optionally
/// restricted to one sector.
pub fn on_shell_polarizations(
    k: &[f64; 4],
    m: f64,
    sector: Option<Sector>,
) -> Vec<TensorMultiplet> {
    fourier_nullspace(&dk_system_matrix(k, m), sector.map(Sector::mask))
        .iter()
        .map(TensorMultiplet::from_array)
        .collect()
}

/// Lower-index `k` with `k² = m²` and spatial momentum uniform in `[-1, 1)³`.
pub fn random_wave_vector<R: Rng>(rng: &mut R, m: f64) -> [f64; 4] {
    let p: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let omega = (m * m + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [omega, -p[0], -p[1], -p[2]]
}

/// Null wave vector of frequency `omega` travelling along `direction`
/// (contravariant); returned with lower indices.
pub fn null_wave_vector(direction: [f64; 3], omega: f64) -> [f64; 4] {
    let n = (direction[0].powi(2) + direction[1].powi(2) + direction[2].powi(2)).sqrt();
    [
        omega,
        -omega * direction[0] / n,
        -omega * direction[1] / n,
        -omega * direction[2] / n,
    ]
}

/// Superposition of `terms` random on-shell plane waves. Each term has a
/// random `k` on the mass shell and a random complex combination of the
/// nullspace basis.
pub fn random_on_shell_field<R: Rng>(
    rng: &mut R,
    m: f64,
    terms: usize,
    sector: Option<Sector>,
) -> PlaneWaveField {
    let mut f = PlaneWaveField::new();
    while f.terms.len() < terms {
        let k = random_wave_vector(rng, m);
        let basis = on_shell_polarizations(&k, m, sector);
        if basis.is_empty() {
            continue;
        }
        let amp = basis.iter().fold(TensorMultiplet::zero(), |acc, b| {
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            acc + b.scale(c)
        });
        f.push(k, amp);
    }
    f
}

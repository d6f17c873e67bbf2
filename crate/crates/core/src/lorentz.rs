//! SL(2,C) action on the bispinor, the induced 4-vector representation and
//! the discrete maps `M = iγ⁰`, `N = γ⁰γ⁵`.
//!
//! A group element is a unimodular `B`. The dotted factor is
//! `B(k̄*) = (B†)⁻¹`, so the bispinor transforms with
//! `S = diag(B, (B†)⁻¹)` as `U' = S U Sᵀ`. With that choice
//! `Sγ^aS⁻¹ = γ^b L_b^a` holds exactly and `S E⁻¹ Sᵀ = E⁻¹`.

use std::ops::{Mul, Neg};

use nalgebra::Matrix4;
use rand::Rng;

use crate::bispinor::{Bispinor, TensorMultiplet};
use crate::clifford::{e_inv, gam, gamma5, pauli, pauli_bar, pauli_bar_lower, MinkowskiMetric};
use crate::error::{Error, Result};
use crate::linalg::{
    block_diag, det2, inverse2, max_abs, real, ComplexMatrix2, ComplexMatrix4, C64, I, ONE, ZERO,
};
use crate::tensor::{Antisym, PAIRS};

/// Unimodular 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2CElement {
    b: ComplexMatrix2,
}

const DET_TOL: f64 = 1e-12;

fn unit_direction(n: [f64; 3]) -> Result<[f64; 3]> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !norm.is_finite() || norm < 1e-300 {
        return Err(Error::ZeroDirection);
    }
    Ok([n[0] / norm, n[1] / norm, n[2] / norm])
}

fn n_dot_sigma(n: [C64; 3]) -> ComplexMatrix2 {
    pauli(1) * n[0] + pauli(2) * n[1] + pauli(3) * n[2]
}

impl SL2CElement {
    pub fn identity() -> Self {
        SL2CElement {
            b: ComplexMatrix2::identity(),
        }
    }

    /// Accepts `B` only if `|det B - 1| < 1e-12`.
    pub fn from_matrix(b: ComplexMatrix2) -> Result<Self> {
        let d = det2(&b);
        if (d - ONE).norm() >= DET_TOL {
            return Err(Error::InvalidArgument(format!(
                "SL(2,C) element needs det = 1, got {d}"
            )));
        }
        Ok(SL2CElement { b })
    }

    /// Vector parametrization `B = k₀ + k·σ`, `k₀² - k·k = 1`.
    pub fn from_parameters(k0: C64, k: [C64; 3]) -> Result<Self> {
        Self::from_matrix(ComplexMatrix2::identity() * k0 + n_dot_sigma(k))
    }

    /// `(k₀, k)` recovered by trace projection.
    pub fn parameters(&self) -> (C64, [C64; 3]) {
        let half = real(0.5);
        (
            self.b.trace() * half,
            std::array::from_fn(|j| (pauli(j + 1) * self.b).trace() * half),
        )
    }

    /// `exp(a·σ)` for a complex 3-vector `a`, via the closed form
    /// `cosh(s) + sinh(s)/s a·σ`, `s² = a·a`.
    pub fn exp(a: [C64; 3]) -> Self {
        let s2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        let s = s2.sqrt();
        let (ch, shc) = if s.norm() < 1e-8 {
            // Taylor: cosh s ≈ 1 + s²/2, sinh(s)/s ≈ 1 + s²/6
            (ONE + s2 * 0.5, ONE + s2 / 6.0)
        } else {
            (s.cosh(), s.sinh() / s)
        };
        SL2CElement {
            b: ComplexMatrix2::identity() * ch + n_dot_sigma(a) * shc,
        }
    }

    /// Random element `exp(a·σ)` with `Re a`, `Im a` uniform in `[-1, 1)³`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let a =
            std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        Self::exp(a)
    }

    pub fn matrix(&self) -> &ComplexMatrix2 {
        &self.b
    }

    /// `B(k*) = B†`.
    pub fn star(&self) -> ComplexMatrix2 {
        self.b.adjoint()
    }

    /// `B(k̄*) = (B†)⁻¹`, the matrix acting on dotted indices.
    pub fn bar_star(&self) -> ComplexMatrix2 {
        inverse2(&self.b.adjoint())
    }

    pub fn inverse(&self) -> Self {
        SL2CElement {
            b: inverse2(&self.b),
        }
    }

    pub fn det_residual(&self) -> f64 {
        (det2(&self.b) - ONE).norm()
    }

    /// `S = diag(B, (B†)⁻¹)`.
    pub fn spinor_matrix(&self) -> ComplexMatrix4 {
        block_diag(&self.b, &self.bar_star())
    }
}

impl Mul for SL2CElement {
    type Output = SL2CElement;
    fn mul(self, rhs: Self) -> Self {
        SL2CElement { b: self.b * rhs.b }
    }
}

impl Neg for SL2CElement {
    type Output = SL2CElement;
    fn neg(self) -> Self {
        SL2CElement { b: -self.b }
    }
}

/// `B = exp(+(β/2) n·σ)`.
pub fn sl2c_boost(direction: [f64; 3], rapidity: f64) -> Result<SL2CElement> {
    let n = unit_direction(direction)?;
    let (ch, sh) = ((rapidity / 2.0).cosh(), (rapidity / 2.0).sinh());
    Ok(SL2CElement {
        b: ComplexMatrix2::identity() * real(ch) + n_dot_sigma(n.map(real)) * real(sh),
    })
}

/// `B = exp(-i(θ/2) n·σ)`.
pub fn sl2c_rotation(axis: [f64; 3], angle: f64) -> Result<SL2CElement> {
    let n = unit_direction(axis)?;
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    Ok(SL2CElement {
        b: ComplexMatrix2::identity() * real(c) - n_dot_sigma(n.map(real)) * (I * s),
    })
}

/// Real 4×4 matrix `L[b][a] = L_b^a` acting on lower-index components,
/// `Φ'_b = L_b^a Φ_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    /// `diag(1, -1, -1, -1)`.
    pub fn parity() -> Self {
        LorentzMatrix(MinkowskiMetric::matrix())
    }

    pub fn get(&self, b: usize, a: usize) -> f64 {
        self.0[(b, a)]
    }

    /// `max |LᵀgL - g|`.
    pub fn metric_residual(&self) -> f64 {
        let g = MinkowskiMetric::matrix();
        (self.0.transpose() * g * self.0 - g).amax()
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn is_orthochronous(&self) -> bool {
        self.0[(0, 0)] >= 1.0 - 1e-12
    }

    /// Lower-index vector `v'_b = L_b^a v_a`.
    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        std::array::from_fn(|b| (0..4).map(|a| v[a] * self.0[(b, a)]).sum())
    }

    pub fn apply_real(&self, v: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|b| (0..4).map(|a| v[a] * self.0[(b, a)]).sum())
    }

    /// Upper-index vector (a spacetime point). Uses `(L⁻¹)ᵀ = gLg`, which keeps
    /// `k_a x^a` invariant.
    pub fn apply_upper(&self, x: &[f64; 4]) -> [f64; 4] {
        let g = MinkowskiMetric::matrix();
        let m = g * self.0 * g;
        std::array::from_fn(|b| (0..4).map(|a| x[a] * m[(b, a)]).sum())
    }

    /// Antisymmetric tensor `F'_bc = L_b^m L_c^n F_mn`.
    pub fn apply_antisym(&self, f: &Antisym) -> Antisym {
        let full = f.to_full();
        Antisym(std::array::from_fn(|s| {
            let (b, c) = PAIRS[s];
            let mut acc = ZERO;
            for m in 0..4 {
                for n in 0..4 {
                    acc += full[m][n] * (self.0[(b, m)] * self.0[(c, n)]);
                }
            }
            acc
        }))
    }

    /// Tensor-side action on a whole multiplet for a proper transformation:
    /// scalars fixed, both vectors by `L`, the antisymmetric part by `L⊗L`.
    pub fn apply_multiplet(&self, t: &TensorMultiplet) -> TensorMultiplet {
        TensorMultiplet {
            scalar: t.scalar,
            vector: self.apply(&t.vector),
            pseudoscalar: t.pseudoscalar,
            pseudovector: self.apply(&t.pseudovector),
            antisym: self.apply_antisym(&t.antisym),
        }
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: Self) -> Self {
        LorentzMatrix(self.0 * rhs.0)
    }
}

impl Neg for LorentzMatrix {
    type Output = LorentzMatrix;
    fn neg(self) -> Self {
        LorentzMatrix(-self.0)
    }
}

/// Complex trace projection `½Sp(σ̄_b (B†)⁻¹ σ^a B⁻¹)`.
fn projected(k: &SL2CElement) -> [[C64; 4]; 4] {
    let left = k.bar_star();
    let right = inverse2(k.matrix());
    let mut out = [[ZERO; 4]; 4];
    for a in 0..4 {
        let m = left * pauli(a) * right;
        for (b, row) in out.iter_mut().enumerate() {
            row[a] = (pauli_bar_lower(b) * m).trace() * 0.5;
        }
    }
    out
}

/// Induced Lorentz matrix from `(B†)⁻¹ σ^a B⁻¹ = σ^b L_b^a`.
pub fn vector_rep(k: &SL2CElement) -> LorentzMatrix {
    let p = projected(k);
    LorentzMatrix(Matrix4::from_fn(|b, a| p[b][a].re))
}

/// `max_a |(B†)⁻¹ σ^a B⁻¹ - σ^b L_b^a|`, the undotted-dotted intertwiner.
pub fn sigma_intertwiner_residual(k: &SL2CElement, l: &LorentzMatrix) -> f64 {
    let left = k.bar_star();
    let right = inverse2(k.matrix());
    (0..4)
        .map(|a| {
            let lhs = left * pauli(a) * right;
            let rhs: ComplexMatrix2 = (0..4).map(|b| pauli(b) * real(l.get(b, a))).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

/// `max_a |B σ̄^a B† - σ̄^b L_b^a|`, the companion identity.
pub fn sigma_bar_intertwiner_residual(k: &SL2CElement, l: &LorentzMatrix) -> f64 {
    let b = k.matrix();
    let bd = k.star();
    (0..4)
        .map(|a| {
            let lhs = b * pauli_bar(a) * bd;
            let rhs: ComplexMatrix2 = (0..4).map(|c| pauli_bar(c) * real(l.get(c, a))).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

/// `max_a |Sγ^aS⁻¹ - γ^b L_b^a|` with `L = vector_rep(k)`.
pub fn verify_intertwiner(k: &SL2CElement) -> f64 {
    let l = vector_rep(k);
    let s = k.spinor_matrix();
    let s_inv = SL2CElement::inverse(k).spinor_matrix();
    (0..4)
        .map(|a| {
            let lhs = s * gam(a) * s_inv;
            let rhs: ComplexMatrix4 = (0..4).map(|b| gam(b) * real(l.get(b, a))).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

/// `max |SᵀES - E|`; the metric spinor is invariant.
pub fn metric_spinor_invariance_residual(k: &SL2CElement) -> f64 {
    let s = k.spinor_matrix();
    let ei = e_inv();
    max_abs(&(s * ei * s.transpose() - ei))
}

/// `U' = S U Sᵀ`, i.e. blockwise
/// `ξ' = BξBᵀ`, `Δ' = BΔB̄ᵀ`, `H' = B̄HBᵀ`, `η' = B̄ηB̄ᵀ` with `B̄ = (B†)⁻¹`.
pub fn transform_bispinor(u: &Bispinor, k: &SL2CElement) -> Bispinor {
    let b = *k.matrix();
    let bb = k.bar_star();
    let (xi, delta, h, eta) = u.blocks();
    Bispinor::from_blocks(
        &(b * xi * b.transpose()),
        &(b * delta * bb.transpose()),
        &(bb * h * b.transpose()),
        &(bb * eta * bb.transpose()),
    )
}

/// The two discrete maps on the bispinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscreteMap {
    /// `M = iγ⁰`
    M,
    /// `N = γ⁰γ⁵`
    N,
}

impl DiscreteMap {
    pub fn matrix(self) -> ComplexMatrix4 {
        match self {
            DiscreteMap::M => gam(0) * I,
            DiscreteMap::N => gam(0) * gamma5(),
        }
    }

    /// `L` in `Kγ^aK⁻¹ = γ^b L_b^a`: `diag(1,-1,-1,-1)` for `M`, its
    /// negative for `N`.
    pub fn lorentz_matrix(self) -> LorentzMatrix {
        match self {
            DiscreteMap::M => LorentzMatrix::parity(),
            DiscreteMap::N => -LorentzMatrix::parity(),
        }
    }
}

/// Block map: `M: (ξ,Δ,H,η) → (-η,-H,-Δ,-ξ)`, `N: → (η,-H,-Δ,ξ)`.
pub fn discrete_transform(u: &Bispinor, which: DiscreteMap) -> Bispinor {
    let (xi, delta, h, eta) = u.blocks();
    match which {
        DiscreteMap::M => Bispinor::from_blocks(&-eta, &-h, &-delta, &-xi),
        DiscreteMap::N => Bispinor::from_blocks(&eta, &-h, &-delta, &xi),
    }
}

/// Distance between the block map and the two-sided action `K U Kᵀ`.
pub fn discrete_matrix_residual(u: &Bispinor, which: DiscreteMap) -> f64 {
    let k = which.matrix();
    let two_sided = k * u.0 * k.transpose();
    max_abs(&(discrete_transform(u, which).0 - two_sided))
}

/// `max_a |Kγ^aK⁻¹ - γ^b L_b^a|` for the discrete map.
pub fn discrete_gamma_residual(which: DiscreteMap) -> f64 {
    let k = which.matrix();
    // M² = -1 and N² = -1 in this basis, so K⁻¹ = -K.
    let k_inv = -k;
    let l = which.lorentz_matrix();
    (0..4)
        .map(|a| {
            let lhs = k * gam(a) * k_inv;
            let rhs: ComplexMatrix4 = (0..4).map(|b| gam(b) * real(l.get(b, a))).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bispinor::{compose, decompose};
    use crate::tensor::Linear;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_boost_and_rotation() {
        assert_eq!(
            *sl2c_boost([0.0, 0.0, 1.0], 0.0).unwrap().matrix(),
            ComplexMatrix2::identity()
        );
        assert_eq!(
            *sl2c_rotation([1.0, 0.0, 0.0], 0.0).unwrap().matrix(),
            ComplexMatrix2::identity()
        );
        assert_eq!(sl2c_boost([0.0; 3], 1.0), Err(Error::ZeroDirection));
        assert_eq!(sl2c_rotation([0.0; 3], 1.0), Err(Error::ZeroDirection));
    }

    #[test]
    fn z_boost_is_diagonal_exponential() {
        let beta = 0.8;
        let b = sl2c_boost([0.0, 0.0, 1.0], beta).unwrap();
        let m = b.matrix();
        assert!((m[(0, 0)] - real((beta / 2.0).exp())).norm() < 1e-14);
        assert!((m[(1, 1)] - real((-beta / 2.0).exp())).norm() < 1e-14);
        assert!(max_abs(&(m - m.adjoint())) < 1e-15);
    }

    #[test]
    fn full_turn_is_minus_identity() {
        let b = sl2c_rotation([0.0, 0.0, 1.0], 2.0 * std::f64::consts::PI).unwrap();
        assert!(max_abs(&(b.matrix() + ComplexMatrix2::identity())) < 1e-14);
    }

    #[test]
    fn rotations_are_unitary_and_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let axis = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let r = sl2c_rotation(axis, rng.gen_range(-7.0..7.0)).unwrap();
            assert!(max_abs(&(r.matrix() * r.star() - ComplexMatrix2::identity())) < 1e-13);
            assert!(r.det_residual() < 1e-12);
            assert!(SL2CElement::random(&mut rng).det_residual() < 1e-12);
        }
    }

    #[test]
    fn from_matrix_rejects_non_unimodular() {
        assert!(SL2CElement::from_matrix(ComplexMatrix2::identity() * real(2.0)).is_err());
        let (k0, k) = sl2c_boost([1.0, 0.0, 0.0], 0.4).unwrap().parameters();
        assert!((k0 * k0 - k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - ONE).norm() < 1e-14);
        assert!(SL2CElement::from_parameters(k0, k).is_ok());
    }

    #[test]
    fn z_boost_vector_rep() {
        let beta = 0.6;
        let l = vector_rep(&sl2c_boost([0.0, 0.0, 1.0], beta).unwrap());
        let (ch, sh) = (beta.cosh(), beta.sinh());
        let expected = Matrix4::new(
            ch, 0.0, 0.0, -sh, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            -sh, 0.0, 0.0, ch,
        );
        assert!((l.0 - expected).amax() < 1e-14);
    }

    #[test]
    fn z_rotation_vector_rep() {
        let theta = 0.9;
        let l = vector_rep(&sl2c_rotation([0.0, 0.0, 1.0], theta).unwrap());
        assert!((l.get(0, 0) - 1.0).abs() < 1e-14);
        assert!((l.get(3, 3) - 1.0).abs() < 1e-14);
        let (c, s) = (theta.cos(), theta.sin());
        // spatial block is a rotation by θ about z (sign fixed by the intertwiner)
        assert!((l.get(1, 1) - c).abs() < 1e-14 && (l.get(2, 2) - c).abs() < 1e-14);
        assert!((l.get(1, 2).abs() - s).abs() < 1e-14);
        assert!((l.get(1, 2) + l.get(2, 1)).abs() < 1e-14);
        assert!(l.metric_residual() < 1e-14);
    }

    #[test]
    fn identity_maps_to_identity() {
        let l = vector_rep(&SL2CElement::identity());
        assert_eq!(l, LorentzMatrix::identity());
        assert_eq!(verify_intertwiner(&SL2CElement::identity()), 0.0);
    }

    #[test]
    fn intertwiners_hold_for_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let k = SL2CElement::random(&mut rng);
            let l = vector_rep(&k);
            assert!(sigma_intertwiner_residual(&k, &l) < 1e-10);
            assert!(sigma_bar_intertwiner_residual(&k, &l) < 1e-10);
            assert!(verify_intertwiner(&k) < 1e-10);
            assert!(metric_spinor_invariance_residual(&k) < 1e-10);
            assert!(l.metric_residual() < 1e-10);
            assert!((l.det() - 1.0).abs() < 1e-9);
            assert!(l.is_orthochronous());
        }
        assert!(verify_intertwiner(&sl2c_boost([1.0, 0.0, 0.0], 1.0).unwrap()) < 1e-10);
    }

    #[test]
    fn vector_transforms_like_lorentz_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let k = SL2CElement::random(&mut rng);
        let l = vector_rep(&k);
        let a = [
            real(0.4),
            C64::new(-0.3, 0.1),
            real(1.2),
            C64::new(0.0, 0.7),
        ];
        let out = decompose(&transform_bispinor(
            &compose(&TensorMultiplet::from_vector(a)),
            &k,
        ));
        assert!(Linear::sub(&out.vector, &l.apply(&a)).max_abs() < 1e-12);
        assert!(out.scalar.norm() < 1e-12 && out.pseudoscalar.norm() < 1e-12);
        assert!(out.pseudovector.max_abs() < 1e-12);
        assert!(out.antisym.max_abs() < 1e-12);
    }

    #[test]
    fn whole_multiplet_transforms_covariantly() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let k = SL2CElement::random(&mut rng);
        let t = crate::bispinor::random_multiplet(&mut rng);
        let spinor_side = decompose(&transform_bispinor(&compose(&t), &k));
        let tensor_side = vector_rep(&k).apply_multiplet(&t);
        assert!((spinor_side - tensor_side).max_abs() < 1e-11);
    }

    #[test]
    fn discrete_maps_are_involutions_and_match_matrix_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = compose(&crate::bispinor::random_multiplet(&mut rng));
        for w in [DiscreteMap::M, DiscreteMap::N] {
            let twice = discrete_transform(&discrete_transform(&u, w), w);
            assert!(max_abs(&(twice.0 - u.0)) < 1e-15);
            assert!(discrete_matrix_residual(&u, w) < 1e-12);
            assert!(discrete_gamma_residual(w) < 1e-15);
        }
    }

    #[test]
    fn discrete_maps_reflect_space_components_of_a_vector() {
        let a = [real(1.0), real(2.0), real(-3.0), real(0.5)];
        let u = compose(&TensorMultiplet::from_vector(a));
        let expected = LorentzMatrix::parity().apply(&a);
        for w in [DiscreteMap::M, DiscreteMap::N] {
            let out = decompose(&discrete_transform(&u, w)).vector;
            assert!(Linear::sub(&out, &expected).max_abs() < 1e-14, "{w:?}");
        }
    }
}

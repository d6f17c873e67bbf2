//! Weyl-basis Dirac algebra.
//!
//! ```text
//! γ^a = | 0    σ̄^a |      σ^a = (I, σ^k),  σ̄^a = (I, -σ^k)
//!       | σ^a  0   |
//! γ^5 = -i γ^0 γ^1 γ^2 γ^3 = diag(-I, +I)
//! σ^{ab} = ¼(γ^a γ^b - γ^b γ^a) = diag(Σ^{ab}, Σ̄^{ab})
//! E = diag(iσ², -iσ²),  E⁻¹ = -E
//! ```
//!
//! All entries are exact small integers times powers of `i`, so every
//! identity below holds to the last bit; the `1e-12` tolerances used by the
//! checks catch construction mistakes rather than rounding.

use std::sync::LazyLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    block_diag, from_blocks, mat2, max_abs, real, ComplexMatrix2, ComplexMatrix4, C64, I, ONE, ZERO,
};

/// Absolute tolerance for the exact-entry identity checks.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Minkowski metric `diag(+1, -1, -1, -1)`. It is its own inverse, so the
/// same table raises and lowers indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiMetric;

impl MinkowskiMetric {
    pub const DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    #[inline]
    pub fn g(a: usize, b: usize) -> f64 {
        if a == b {
            Self::DIAG[a]
        } else {
            0.0
        }
    }

    /// Lower (or raise) the index of a 4-vector.
    #[inline]
    pub fn lower<T>(v: [T; 4]) -> [T; 4]
    where
        T: Copy + std::ops::Neg<Output = T>,
    {
        [v[0], -v[1], -v[2], -v[3]]
    }

    pub fn matrix() -> nalgebra::Matrix4<f64> {
        nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::from(Self::DIAG))
    }
}

#[inline]
pub(crate) fn g(a: usize, b: usize) -> f64 {
    MinkowskiMetric::g(a, b)
}

fn check_index(a: usize) -> Result<()> {
    if a < 4 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(a))
    }
}

/// Pauli matrices `σ^a = (I, σ¹, σ², σ³)` with the upper index.
pub fn pauli(a: usize) -> ComplexMatrix2 {
    match a {
        0 => mat2(ONE, ZERO, ZERO, ONE),
        1 => mat2(ZERO, ONE, ONE, ZERO),
        2 => mat2(ZERO, -I, I, ZERO),
        3 => mat2(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {a} out of range"),
    }
}

/// `σ̄^a = (I, -σ^k)`.
pub fn pauli_bar(a: usize) -> ComplexMatrix2 {
    if a == 0 {
        pauli(0)
    } else {
        -pauli(a)
    }
}

/// `σ_a = g_{ab} σ^b`.
pub fn pauli_lower(a: usize) -> ComplexMatrix2 {
    pauli(a) * real(g(a, a))
}

pub fn pauli_bar_lower(a: usize) -> ComplexMatrix2 {
    pauli_bar(a) * real(g(a, a))
}

/// `ε = iσ²`, the undotted metric spinor (upper-left tile of `E`).
pub fn epsilon2() -> ComplexMatrix2 {
    pauli(2) * I
}

/// The 2×2 Lorentz generators `(Σ^{ab}, Σ̄^{ab})`.
pub fn weyl_sigma(a: usize, b: usize) -> (ComplexMatrix2, ComplexMatrix2) {
    let q = real(0.25);
    let upper = (pauli_bar(a) * pauli(b) - pauli_bar(b) * pauli(a)) * q;
    let lower = (pauli(a) * pauli_bar(b) - pauli(b) * pauli_bar(a)) * q;
    (upper, lower)
}

struct Tables {
    gamma: [ComplexMatrix4; 4],
    gamma_lower: [ComplexMatrix4; 4],
    gamma5: ComplexMatrix4,
    sigma: [[ComplexMatrix4; 4]; 4],
    e: ComplexMatrix4,
    e_inv: ComplexMatrix4,
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let z = ComplexMatrix2::zeros();
    let gamma: [ComplexMatrix4; 4] =
        std::array::from_fn(|a| from_blocks(&z, &pauli_bar(a), &pauli(a), &z));
    let gamma_lower = std::array::from_fn(|a| gamma[a] * real(g(a, a)));
    let gamma5 = gamma[0] * gamma[1] * gamma[2] * gamma[3] * (-I);
    let sigma = std::array::from_fn(|a| {
        std::array::from_fn(|b| (gamma[a] * gamma[b] - gamma[b] * gamma[a]) * real(0.25))
    });
    let eps = epsilon2();
    let e = block_diag(&eps, &(-eps));
    let e_inv = block_diag(&(-eps), &eps);
    Tables {
        gamma,
        gamma_lower,
        gamma5,
        sigma,
        e,
        e_inv,
    }
});

/// `γ^a` in the Weyl basis.
pub fn gamma(a: usize) -> Result<ComplexMatrix4> {
    check_index(a)?;
    Ok(TABLES.gamma[a])
}

/// `γ^5 = -i γ^0 γ^1 γ^2 γ^3`.
pub fn gamma5() -> ComplexMatrix4 {
    TABLES.gamma5
}

/// `σ^{ab} = ¼(γ^a γ^b - γ^b γ^a)`.
pub fn sigma_ab(a: usize, b: usize) -> Result<ComplexMatrix4> {
    check_index(a)?;
    check_index(b)?;
    Ok(TABLES.sigma[a][b])
}

/// `(E, E⁻¹)` with `E = diag(iσ², -iσ²)`.
pub fn metric_spinor() -> (ComplexMatrix4, ComplexMatrix4) {
    (TABLES.e, TABLES.e_inv)
}

// Infallible accessors for hot loops with indices known to be in range.
#[inline]
pub(crate) fn gam(a: usize) -> &'static ComplexMatrix4 {
    &TABLES.gamma[a]
}
#[inline]
pub(crate) fn gam_lower(a: usize) -> &'static ComplexMatrix4 {
    &TABLES.gamma_lower[a]
}
#[inline]
pub(crate) fn sig(a: usize, b: usize) -> &'static ComplexMatrix4 {
    &TABLES.sigma[a][b]
}
#[inline]
pub(crate) fn e_mat() -> &'static ComplexMatrix4 {
    &TABLES.e
}
#[inline]
pub(crate) fn e_inv() -> &'static ComplexMatrix4 {
    &TABLES.e_inv
}

/// Totally antisymmetric symbol with upper indices, `ε^{0123} = +1`.
/// Returns 0 on repeated (or out-of-range) indices.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> i32 {
    let idx = [a, b, c, d];
    if idx.iter().any(|&i| i > 3) {
        return 0;
    }
    let mut sign = 1;
    for i in 0..4 {
        for j in (i + 1)..4 {
            match idx[i].cmp(&idx[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// `ε_{abcd}` with all indices lowered by `g`; `ε_{0123} = -1`.
pub fn levi_civita_lower(a: usize, b: usize, c: usize, d: usize) -> i32 {
    -levi_civita(a, b, c, d)
}

/// `ε_{ab}^{cd}`: first pair lowered, second pair raised.
#[inline]
pub fn levi_civita_mixed(a: usize, b: usize, c: usize, d: usize) -> f64 {
    g(a, a) * g(b, b) * f64::from(levi_civita(a, b, c, d))
}

fn trace(m: &ComplexMatrix4) -> C64 {
    m.trace()
}

fn idx4() -> impl Iterator<Item = [usize; 4]> {
    (0..256).map(|n| [n >> 6 & 3, n >> 4 & 3, n >> 2 & 3, n & 3])
}

/// Clifford relation `γ^a γ^b + γ^b γ^a = 2 g^{ab}` over all 16 pairs.
pub fn verify_clifford_relations() -> f64 {
    let mut worst = 0.0f64;
    let id = ComplexMatrix4::identity();
    for a in 0..4 {
        for b in 0..4 {
            let lhs = gam(a) * gam(b) + gam(b) * gam(a);
            worst = worst.max(max_abs(&(lhs - id * real(2.0 * g(a, b)))));
        }
        let g5 = gamma5();
        worst = worst.max(max_abs(&(g5 * gam(a) + gam(a) * g5)));
    }
    worst.max(max_abs(&(gamma5() * gamma5() - id)))
}

/// Relations of the metric spinor: `E² = -I`, `Eᵀ = -E`, `Sp E = 0`,
/// `E⁻¹E = I`, and `(σ^{ab})ᵀ E = -E σ^{ab}` for all 16 pairs.
pub fn verify_metric_spinor_relations() -> f64 {
    let (e, e_inv) = metric_spinor();
    let id = ComplexMatrix4::identity();
    let mut worst = max_abs(&(e * e + id))
        .max(max_abs(&(e.transpose() + e)))
        .max(e.trace().norm())
        .max(max_abs(&(e_inv * e - id)));
    for a in 0..4 {
        for b in 0..4 {
            let s = sig(a, b);
            worst = worst.max(max_abs(&(s.transpose() * e + e * s)));
        }
    }
    worst
}

/// Enumerates every trace identity used to pass from the spinor to the
/// tensor form of the wave equation and returns the largest deviation.
///
/// `trials` additional seeded checks contract the Clifford relation with
/// random real vectors: `(a·γ)(b·γ) + (b·γ)(a·γ) = 2 (a·b)`.
pub fn verify_trace_identities(seed: u64, trials: usize) -> f64 {
    let g5 = gamma5();
    let mut worst = 0.0f64;
    let mut upd = |lhs: C64, rhs: C64| worst = worst.max((lhs - rhs).norm());

    upd(trace(&g5), ZERO);
    for a in 0..4 {
        upd(trace(gam(a)), ZERO);
        upd(trace(&(g5 * gam(a))), ZERO);
        for b in 0..4 {
            let gab = g(a, b);
            upd((pauli(a) * pauli_bar(b)).trace(), real(2.0 * gab));
            upd((pauli_bar(a) * pauli(b)).trace(), real(2.0 * gab));
            upd(trace(&(gam(a) * gam(b))), real(4.0 * gab));
            upd(trace(&(g5 * gam(a) * gam(b))), ZERO);
            for cc in 0..4 {
                upd(trace(&(gam(cc) * gam(a) * gam(b))), ZERO);
                upd(trace(&(g5 * gam(cc) * gam(a) * gam(b))), ZERO);
            }
        }
    }
    for [d, cc, a, b] in idx4() {
        let sym = g(d, cc) * g(a, b) - g(d, a) * g(cc, b) + g(d, b) * g(cc, a);
        let eps = f64::from(levi_civita(d, cc, a, b));
        let bar_first = pauli_bar(d) * pauli(cc) * pauli_bar(a) * pauli(b);
        let plain_first = pauli(d) * pauli_bar(cc) * pauli(a) * pauli_bar(b);
        upd(bar_first.trace(), C64::new(2.0 * sym, -2.0 * eps));
        upd(plain_first.trace(), C64::new(2.0 * sym, 2.0 * eps));
        upd(
            trace(&(gam(d) * gam(cc) * gam(a) * gam(b))),
            real(4.0 * sym),
        );
        upd(
            trace(&(g5 * gam(d) * gam(cc) * gam(a) * gam(b))),
            C64::new(0.0, 4.0 * eps),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = ComplexMatrix4::identity();
    for _ in 0..trials {
        let u: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let slash =
            |w: &[f64; 4]| (0..4).fold(ComplexMatrix4::zeros(), |acc, a| acc + gam(a) * real(w[a]));
        // a·γ uses upper components contracted with γ_a; here both vectors
        // are contravariant so a·b = g_{ab} a^a b^b.
        let dot: f64 = (0..4).map(|a| g(a, a) * u[a] * v[a]).sum();
        let (su, sv) = (
            slash(&MinkowskiMetric::lower(u)),
            slash(&MinkowskiMetric::lower(v)),
        );
        let lhs = su * sv + sv * su;
        worst = worst.max(max_abs(&(lhs - id * real(2.0 * dot))));
    }
    worst
}

/// Checks `σ^a σ̄^b σ^c = σ^a g^{bc} - σ^b g^{ac} + σ^c g^{ab} + i ε^{abcd} σ_d`
/// and the barred counterpart (with `-i ε`) over all 64 triples.
pub fn verify_sigma_triple_products() -> f64 {
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                let (lhs, lhs_bar) = sigma_triple(a, b, cc);
                let (rhs, rhs_bar) = sigma_triple_closed_form(a, b, cc);
                worst = worst
                    .max(max_abs(&(lhs - rhs)))
                    .max(max_abs(&(lhs_bar - rhs_bar)));
            }
        }
    }
    worst
}

/// Direct products `(σ^a σ̄^b σ^c, σ̄^a σ^b σ̄^c)`.
pub fn sigma_triple(a: usize, b: usize, cc: usize) -> (ComplexMatrix2, ComplexMatrix2) {
    (
        pauli(a) * pauli_bar(b) * pauli(cc),
        pauli_bar(a) * pauli(b) * pauli_bar(cc),
    )
}

/// Right-hand sides of the σ triple-product expansion.
pub fn sigma_triple_closed_form(a: usize, b: usize, cc: usize) -> (ComplexMatrix2, ComplexMatrix2) {
    let mut rhs = pauli(a) * real(g(b, cc)) - pauli(b) * real(g(a, cc)) + pauli(cc) * real(g(a, b));
    let mut rhs_bar = pauli_bar(a) * real(g(b, cc)) - pauli_bar(b) * real(g(a, cc))
        + pauli_bar(cc) * real(g(a, b));
    for d in 0..4 {
        let eps = f64::from(levi_civita(a, b, cc, d));
        if eps != 0.0 {
            rhs += pauli_lower(d) * (I * eps);
            rhs_bar -= pauli_bar_lower(d) * (I * eps);
        }
    }
    (rhs, rhs_bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ComplexMatrix4, b: &ComplexMatrix4) -> bool {
        max_abs(&(a - b)) < ALGEBRA_TOL
    }

    #[test]
    fn gamma0_blocks_are_identity() {
        let g0 = gamma(0).unwrap();
        let id2 = ComplexMatrix2::identity();
        assert_eq!(crate::linalg::block(&g0, 0, 1), id2);
        assert_eq!(crate::linalg::block(&g0, 1, 0), id2);
        assert_eq!(crate::linalg::block(&g0, 0, 0), ComplexMatrix2::zeros());
    }

    #[test]
    fn gamma1_squares_to_minus_identity() {
        let g1 = gamma(1).unwrap();
        assert!(close(&(g1 * g1), &(-ComplexMatrix4::identity())));
    }

    #[test]
    fn distinct_gammas_anticommute() {
        let (g0, g1) = (gamma(0).unwrap(), gamma(1).unwrap());
        assert!(close(&(g0 * g1 + g1 * g0), &ComplexMatrix4::zeros()));
    }

    #[test]
    fn gamma_index_out_of_range() {
        assert_eq!(gamma(4), Err(Error::IndexOutOfRange(4)));
        assert_eq!(sigma_ab(0, 7), Err(Error::IndexOutOfRange(7)));
    }

    #[test]
    fn gamma5_weyl_block_form() {
        let diag = ComplexMatrix4::from_diagonal(&nalgebra::Vector4::new(-ONE, -ONE, ONE, ONE));
        assert!(close(&gamma5(), &diag));
        assert!(close(&(gamma5() * gamma5()), &ComplexMatrix4::identity()));
        let g0 = gamma(0).unwrap();
        assert!(close(
            &(gamma5() * g0 + g0 * gamma5()),
            &ComplexMatrix4::zeros()
        ));
    }

    #[test]
    fn sigma_ab_examples() {
        assert!(close(&sigma_ab(2, 2).unwrap(), &ComplexMatrix4::zeros()));
        assert!(close(
            &(sigma_ab(0, 1).unwrap() + sigma_ab(1, 0).unwrap()),
            &ComplexMatrix4::zeros()
        ));
        // ¼(γ¹γ² - γ²γ¹) evaluated by hand: both diagonal tiles are -(i/2)σ³.
        let tile = pauli(3) * C64::new(0.0, -0.5);
        let expected = block_diag(&tile, &tile);
        assert!(close(&sigma_ab(1, 2).unwrap(), &expected));
    }

    #[test]
    fn sigma_ab_is_block_diagonal_with_weyl_generators() {
        for a in 0..4 {
            for b in 0..4 {
                let (up, lo) = weyl_sigma(a, b);
                assert!(close(&sigma_ab(a, b).unwrap(), &block_diag(&up, &lo)));
            }
        }
    }

    #[test]
    fn metric_spinor_examples() {
        let (e, e_inv) = metric_spinor();
        assert!(close(&(e * e), &(-ComplexMatrix4::identity())));
        assert_eq!(e.trace(), ZERO);
        assert!(close(&e.transpose(), &(-e)));
        assert!(close(&(e_inv * e), &ComplexMatrix4::identity()));
        assert!(verify_metric_spinor_relations() < ALGEBRA_TOL);
    }

    #[test]
    fn levi_civita_examples() {
        assert_eq!(levi_civita(0, 1, 2, 3), 1);
        assert_eq!(levi_civita(1, 0, 2, 3), -1);
        assert_eq!(levi_civita(0, 0, 2, 3), 0);
        assert_eq!(levi_civita(1, 2, 3, 0), -1);
        assert_eq!(levi_civita(2, 3, 0, 1), 1);
        assert_eq!(levi_civita_lower(0, 1, 2, 3), -1);
    }

    #[test]
    fn levi_civita_is_totally_antisymmetric() {
        for [a, b, cc, d] in idx4() {
            let e = levi_civita(a, b, cc, d);
            assert_eq!(levi_civita(b, a, cc, d), -e);
            assert_eq!(levi_civita(a, cc, b, d), -e);
            assert_eq!(levi_civita(a, b, d, cc), -e);
        }
    }

    #[test]
    fn named_trace_examples() {
        let g0 = gamma(0).unwrap();
        assert_eq!(trace(&(g0 * g0)), real(4.0));
        let prod = gamma5()
            * gamma(0).unwrap()
            * gamma(1).unwrap()
            * gamma(2).unwrap()
            * gamma(3).unwrap();
        assert!((trace(&prod) - C64::new(0.0, 4.0)).norm() < ALGEBRA_TOL);
    }

    #[test]
    fn full_trace_enumeration() {
        assert!(verify_trace_identities(1, 100) < ALGEBRA_TOL);
        assert!(verify_clifford_relations() < ALGEBRA_TOL);
    }

    #[test]
    fn sigma_triple_examples() {
        let (lhs, _) = sigma_triple(0, 0, 0);
        assert_eq!(lhs, pauli(0));
        // σ¹σ̄²σ³ = -σ¹σ²σ³ = -i I, and i ε^{1230} σ_0 = -i I.
        let (lhs, _) = sigma_triple(1, 2, 3);
        let expected = ComplexMatrix2::identity() * (-I);
        assert!(max_abs(&(lhs - expected)) < ALGEBRA_TOL);
        let (rhs, _) = sigma_triple_closed_form(1, 2, 3);
        assert!(max_abs(&(rhs - expected)) < ALGEBRA_TOL);
        assert!(verify_sigma_triple_products() < ALGEBRA_TOL);
    }
}

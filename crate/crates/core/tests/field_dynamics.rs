use dkfield::bispinor::{decompose, random_multiplet, Bispinor};
use dkfield::clifford::{gamma, metric_spinor};
use dkfield::field::{
    dk_residual, lorentz_condition, massless_maxwell_residual, massless_potential_spinor_residual,
    massless_pseudovector_residual, null_wave_vector, proca_vector_residual,
    pseudoscalar_sector_residual, pseudovector_proca_residual, random_on_shell_field,
    random_wave_vector, scalar_sector_residual, spinor_tensor_equivalence, FnSampler, Jet,
    PointCharge, Sampler, Wave, Zero,
};
use dkfield::linalg::{real, ComplexMatrix4, C64, I, ZERO};
use dkfield::lorentz::{vector_rep, SL2CElement};
use dkfield::tensor::{Antisym, Linear, PAIRS};
use dkfield::{Error, Mass, PlaneWaveField, TensorMultiplet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mass(m: f64) -> Mass {
    Mass::new(m).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.gen_range(-3.0..3.0))
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn raise(k: &[f64; 4]) -> [f64; 4] {
    [k[0], -k[1], -k[2], -k[3]]
}

/// Independent on-shell oracle: `(γ^a k_a - m)(γ^b k_b + m) = k² - m² = 0`,
/// so `U = (k̸ + m) X E⁻¹` solves the bispinor equation for any `X`.
fn dirac_projector_wave(rng: &mut ChaCha8Rng, m: f64) -> PlaneWaveField {
    let k = random_wave_vector(rng, m);
    let slash: ComplexMatrix4 = (0..4).map(|a| gamma(a).unwrap() * real(k[a])).sum();
    let x = ComplexMatrix4::from_fn(|_, _| random_c(rng));
    let (_, e_inv) = metric_spinor();
    let u = (slash + ComplexMatrix4::identity() * real(m)) * x * e_inv;
    PlaneWaveField::single(k, decompose(&Bispinor(u)))
}

#[test]
fn zero_field_has_zero_residuals() {
    let x = [0.1, 0.2, 0.3, 0.4];
    let m = mass(1.0);
    assert_eq!(dk_residual(&Zero, m, &x), TensorMultiplet::zero());
    let eq = spinor_tensor_equivalence(&Zero, m, &x);
    assert_eq!(eq.max_residual(), 0.0);
    assert_eq!(
        proca_vector_residual(&Zero, &Zero, m, &x)
            .unwrap()
            .max_abs(),
        0.0
    );
    assert_eq!(
        pseudovector_proca_residual(&Zero, &Zero, m, &x)
            .unwrap()
            .max_abs(),
        0.0
    );
    assert_eq!(scalar_sector_residual(&Zero, m, &x).max_abs(), 0.0);
    assert_eq!(pseudoscalar_sector_residual(&Zero, m, &x).max_abs(), 0.0);
    assert_eq!(
        massless_maxwell_residual(&Zero, &Zero, Some(&Zero), Some(&Zero), &x).max_abs(),
        0.0
    );
    assert_eq!(
        massless_pseudovector_residual(&Zero, &Zero, Some(&Zero), Some(&Zero), &x).max_abs(),
        0.0
    );
}

#[test]
fn massive_systems_reject_zero_mass() {
    let x = [0.0; 4];
    assert_eq!(
        proca_vector_residual(&Zero, &Zero, Mass::zero(), &x),
        Err(Error::MasslessNotAllowed(0.0))
    );
    assert!(pseudovector_proca_residual(&Zero, &Zero, Mass::zero(), &x).is_err());
}

#[test]
fn projector_oracle_solves_tensor_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let m = rng.gen_range(0.2..2.0);
        let f = dirac_projector_wave(&mut rng, m);
        let x = random_point(&mut rng);
        assert!(dk_residual(&f, mass(m), &x).max_abs() < 1e-10);
        let eq = spinor_tensor_equivalence(&f, mass(m), &x);
        assert!(eq.spinor_max < 1e-10 && eq.tensor_max < 1e-10, "{eq:?}");
    }
}

#[test]
fn nullspace_solutions_agree_with_projector_oracle() {
    // Every on-shell polarization from the SVD route is annihilated by
    // (k̸ - m) after composing, which is a different computation.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let m = 1.1;
    let f = random_on_shell_field(&mut rng, m, 3, None);
    for term in &f.terms {
        let u = dkfield::bispinor::compose(&term.amplitude).0;
        let slash: ComplexMatrix4 = (0..4).map(|a| gamma(a).unwrap() * real(term.k[a])).sum();
        let r = (slash - ComplexMatrix4::identity() * real(m)) * u;
        assert!(r.iter().all(|z| z.norm() < 1e-10));
    }
}

#[test]
fn generic_field_is_off_shell_in_both_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let f = PlaneWaveField::single(
            std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
            random_multiplet(&mut rng),
        );
        let x = random_point(&mut rng);
        let eq = spinor_tensor_equivalence(&f, mass(1.0), &x);
        assert!(eq.spinor_max > 1e-3 && eq.tensor_max > 1e-3);
        assert!(eq.mismatch < 1e-12, "{eq:?}");
    }
}

#[test]
fn proca_plane_wave() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let m = 0.7;
    let k = random_wave_vector(&mut rng, m);
    let ku = raise(&k);
    // transverse polarization: project a random vector, k^a ε_a = 0
    let raw: [C64; 4] = std::array::from_fn(|_| random_c(&mut rng));
    let dot: C64 = (0..4).map(|a| raw[a] * ku[a]).sum();
    let eps: [C64; 4] = std::array::from_fn(|a| raw[a] - real(k[a] / (m * m)) * dot);
    let f = Antisym(PAIRS.map(|(d, kk)| -I * (eps[kk] * k[d] - eps[d] * k[kk]) / m));
    let a_wave = Wave::single(k, eps);
    let f_wave = Wave::single(k, f);
    let x = random_point(&mut rng);
    let r = proca_vector_residual(&a_wave, &f_wave, mass(m), &x).unwrap();
    assert!(r.max_abs() < 1e-10, "{r:?}");

    // longitudinal admixture shows up in the Lorentz condition
    let bad = Wave::single(k, raw);
    let r = proca_vector_residual(&bad, &f_wave, mass(m), &x).unwrap();
    assert!(r.get("lorentz").unwrap().norm() > 1e-3);
}

#[test]
fn pseudovector_plane_wave() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let m = 1.4;
    let k = random_wave_vector(&mut rng, m);
    let ku = raise(&k);
    let raw: [C64; 4] = std::array::from_fn(|_| random_c(&mut rng));
    let dot: C64 = (0..4).map(|a| raw[a] * ku[a]).sum();
    let at: [C64; 4] = std::array::from_fn(|a| raw[a] - real(k[a] / (m * m)) * dot);
    // F_dk = ε_dk^{cl} (-i k_c) Ã_l / m with two indices lowered by g
    let g = [1.0, -1.0, -1.0, -1.0];
    let f = Antisym(PAIRS.map(|(d, kk)| {
        let mut acc = ZERO;
        for c in 0..4 {
            for l in 0..4 {
                let e = dkfield::clifford::levi_civita(d, kk, c, l) as f64;
                acc += -I * k[c] * at[l] * (e * g[d] * g[kk]) / m;
            }
        }
        acc
    }));
    let x = random_point(&mut rng);
    let r = pseudovector_proca_residual(&Wave::single(k, at), &Wave::single(k, f), mass(m), &x)
        .unwrap();
    assert!(r.max_abs() < 1e-10, "{r:?}");

    // a vector-sector Proca field is not a pseudovector solution
    let fv = Antisym(PAIRS.map(|(d, kk)| -I * (at[kk] * k[d] - at[d] * k[kk]) / m));
    let r = pseudovector_proca_residual(&Wave::single(k, at), &Wave::single(k, fv), mass(m), &x)
        .unwrap();
    assert!(r.max_abs() > 1e-3);
}

#[test]
fn scalar_and_pseudoscalar_sectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let m = 0.9;
    for (on_shell, k) in [
        (true, random_wave_vector(&mut rng, m)),
        (false, [1.7, 0.3, -0.2, 0.1]),
    ] {
        let mut t = TensorMultiplet::zero();
        t.scalar = real(1.0);
        t.vector = std::array::from_fn(|l| -I * k[l] / m);
        let mut p = TensorMultiplet::zero();
        p.pseudoscalar = real(1.0);
        p.pseudovector = t.vector;
        let x = random_point(&mut rng);
        let rs = scalar_sector_residual(&PlaneWaveField::single(k, t), mass(m), &x).max_abs();
        let rp = pseudoscalar_sector_residual(&PlaneWaveField::single(k, p), mass(m), &x).max_abs();
        if on_shell {
            assert!(rs < 1e-10 && rp < 1e-10);
        } else {
            assert!(rs > 1e-3 && rp > 1e-3);
        }
    }
}

/// `A_1 = -sin(z - t)` (covariant), i.e. `A^x = sin(z - t)`, and
/// `E_x = B_y = cos(z - t)`.
#[test]
fn axis_plane_wave_solves_vector_photon_system() {
    let e = FnSampler(|x: &[f64; 4]| {
        let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
        Jet {
            value: [real(c), ZERO, ZERO],
            grad: [
                [real(s), ZERO, ZERO],
                [ZERO; 3],
                [ZERO; 3],
                [real(-s), ZERO, ZERO],
            ],
        }
    });
    let b = FnSampler(|x: &[f64; 4]| {
        let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
        Jet {
            value: [ZERO, real(c), ZERO],
            grad: [
                [ZERO, real(s), ZERO],
                [ZERO; 3],
                [ZERO; 3],
                [ZERO, real(-s), ZERO],
            ],
        }
    });
    let a = FnSampler(|x: &[f64; 4]| {
        let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
        Jet {
            value: [ZERO, real(-s), ZERO, ZERO],
            grad: [
                [ZERO, real(c), ZERO, ZERO],
                [ZERO; 4],
                [ZERO; 4],
                [ZERO, real(-c), ZERO, ZERO],
            ],
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let x = random_point(&mut rng);
        let r = massless_maxwell_residual(&e, &b, Some(&a), None, &x);
        assert!(r.max_abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn coulomb_field_off_origin() {
    let q = PointCharge {
        charge: 1.0,
        center: [0.0; 3],
    };
    let r = massless_maxwell_residual(&q, &Zero, None, Some(&Zero), &[0.0, 0.6, 0.0, 0.8]);
    assert!(r.max_abs() < 1e-8, "{r:?}");
}

/// `Ã_1 = -sin(z - t)`: `E~ = rot Ã`, `B~ = ∂_t Ã`.
#[test]
fn axis_plane_wave_solves_pseudovector_photon_system() {
    let at = FnSampler(|x: &[f64; 4]| {
        let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
        Jet {
            value: [ZERO, real(-s), ZERO, ZERO],
            grad: [
                [ZERO, real(c), ZERO, ZERO],
                [ZERO; 4],
                [ZERO; 4],
                [ZERO, real(-c), ZERO, ZERO],
            ],
        }
    });
    // rot Ã with Ã^x = sin(z - t): (0, cos, 0)
    let e = FnSampler(|x: &[f64; 4]| {
        let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
        Jet {
            value: [ZERO, real(c), ZERO],
            grad: [
                [ZERO, real(s), ZERO],
                [ZERO; 3],
                [ZERO; 3],
                [ZERO, real(-s), ZERO],
            ],
        }
    });
    let b_sign = |sign: f64| {
        FnSampler(move |x: &[f64; 4]| {
            let (c, s) = ((x[3] - x[0]).cos(), (x[3] - x[0]).sin());
            // ∂_t sin(z - t) = -cos(z - t)
            Jet {
                value: [real(-sign * c), ZERO, ZERO],
                grad: [
                    [real(-sign * s), ZERO, ZERO],
                    [ZERO; 3],
                    [ZERO; 3],
                    [real(sign * s), ZERO, ZERO],
                ],
            }
        })
    };
    let x = [0.3, 0.1, -0.4, 1.2];
    let good = massless_pseudovector_residual(&e, &b_sign(1.0), Some(&at), None, &x);
    assert!(good.max_abs() < 1e-12, "{good:?}");
    // The opposite potential sign cannot satisfy Faraday's law for this wave.
    let bad = massless_pseudovector_residual(&e, &b_sign(-1.0), None, None, &x);
    assert!(bad.max_abs() > 0.1);
}

#[test]
fn monopole_field_off_origin() {
    let g = PointCharge {
        charge: 1.0,
        center: [0.0; 3],
    };
    let r = massless_pseudovector_residual(&Zero, &g, None, Some(&Zero), &[0.0, 0.0, 1.0, 0.0]);
    assert!(r.get("gauss_B").unwrap().norm() < 1e-8);
}

#[test]
fn sourced_residual_reports_current_divergence() {
    let j = Wave::single([1.0, 0.0, 0.0, 0.0], [real(1.0), ZERO, ZERO, ZERO]);
    let r = massless_maxwell_residual(&Zero, &Zero, None, Some(&j), &[0.0; 4]);
    assert!(r.get("continuity").unwrap().norm() > 0.5);
}

#[test]
fn lorentz_covariance_of_on_shell_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let m = 1.0;
    for _ in 0..20 {
        let f = random_on_shell_field(&mut rng, m, 2, None);
        let l = vector_rep(&SL2CElement::random(&mut rng));
        let g = f.transformed(&l);
        let x = random_point(&mut rng);
        assert!(dk_residual(&g, mass(m), &x).max_abs() < 1e-8);
    }
}

#[test]
fn massless_potential_equations_imply_lorentz_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for trial in 0..50 {
        let dir: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let k = null_wave_vector(dir, rng.gen_range(0.5..2.0));
        let ku = raise(&k);
        let raw: [C64; 4] = std::array::from_fn(|_| random_c(&mut rng));
        // half the trials keep a longitudinal part violating ∂^lA_l = 0
        let eps = if trial % 2 == 0 {
            // project out the component along a null partner n with n·k ≠ 0
            let n = ku;
            let nk: f64 = (0..4).map(|a| n[a] * ku[a]).sum();
            let dot: C64 = (0..4).map(|a| raw[a] * ku[a]).sum();
            std::array::from_fn(|a| raw[a] - dot * (n[a] / nk))
        } else {
            raw
        };
        let mut t = TensorMultiplet::zero();
        t.vector = eps;
        t.antisym = Antisym(PAIRS.map(|(d, c)| -I * (k[d] * eps[c] - k[c] * eps[d])));
        let f = PlaneWaveField::single(k, t);
        let x = random_point(&mut rng);
        let spinor = massless_potential_spinor_residual(&f, &x);
        let lorentz = lorentz_condition(&f.vector_part().jet(&x)).norm();
        if spinor < 1e-10 {
            assert!(lorentz < 1e-10);
        }
        assert_eq!(
            trial % 2 == 0,
            spinor < 1e-10,
            "trial {trial}: spinor {spinor}"
        );
    }
}

proptest! {
    #[test]
    fn spinor_and_tensor_systems_are_the_same_equations(
        seed in any::<u64>(),
        m in 0.0f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PlaneWaveField::single(
            std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
            random_multiplet(&mut rng),
        );
        let eq = spinor_tensor_equivalence(&f, mass(m), &random_point(&mut rng));
        prop_assert!(eq.mismatch < 1e-11);
    }

    #[test]
    fn dk_residual_is_linear(seed in any::<u64>(), s in -2.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let a = random_multiplet(&mut rng);
        let b = random_multiplet(&mut rng);
        let x = random_point(&mut rng);
        let m = mass(0.5);
        let lhs = dk_residual(&PlaneWaveField::single(k, a + b.scale(real(s))), m, &x);
        let rhs = dk_residual(&PlaneWaveField::single(k, a), m, &x)
            + dk_residual(&PlaneWaveField::single(k, b), m, &x).scale(real(s));
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
    }
}

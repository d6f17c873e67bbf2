//! Electrodynamics with electric and magnetic charges built from a vector
//! potential `A` and a pseudovector potential `Ã`.
//!
//! ```text
//! F⁺ = dA + (dÃ)*        F⁻ = dA - (dÃ)*
//! ∂^β F⁺_αβ  = -j_α       ∂^β F⁻_αβ  = -j_α
//! ∂^β F⁺*_αβ = +j̃_α       ∂^β F⁻*_αβ = -j̃_α
//! ```
//!
//! The system is invariant under the duality rotation mixing `(A, Ã)`,
//! `(j, j̃)` and, correspondingly, `F^±` with `F^±*`.

mod fdtd;
mod monopole;

pub use fdtd::{
    threads_from_env, CurrentConfig, Diagnostics, DualFieldState, GridCurrents, GridSpec,
    InitialConfig, NoCurrents, OutputKind, PlaneWaveAxis, SimulationConfig, SimulationOutput,
    UniformCurrents,
};
pub use monopole::{gauss_legendre, monopole_flux_offset, monopole_flux_test};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::residual::{curl3, curl4, div3, divergence_antisym, dual_curl4, split4};
use crate::field::{lorentz_condition, CurrentSpec, Jet, Point, ResidualSet, Sampler, Wave};
use crate::linalg::{real, C64, I, ZERO};
use crate::tensor::{Antisym, Linear};

/// `F*_ab = ½ ε_ab^{ρσ} F_ρσ`.
pub fn dual_tensor(f: &Antisym) -> Antisym {
    f.dual()
}

/// The pair `F⁺ = F + F~`, `F⁻ = F - F~`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CombinedStrength {
    pub plus: Antisym,
    pub minus: Antisym,
}

impl CombinedStrength {
    pub fn plus_dual(&self) -> Antisym {
        self.plus.dual()
    }

    pub fn minus_dual(&self) -> Antisym {
        self.minus.dual()
    }

    /// Recovers `(F, F~) = ((F⁺ + F⁻)/2, (F⁺ - F⁻)/2)`.
    pub fn split(&self) -> (Antisym, Antisym) {
        (
            (self.plus + self.minus) * 0.5,
            (self.plus - self.minus) * 0.5,
        )
    }
}

impl Linear for CombinedStrength {
    fn zero() -> Self {
        Self::default()
    }
    fn add(&self, o: &Self) -> Self {
        CombinedStrength {
            plus: self.plus + o.plus,
            minus: self.minus + o.minus,
        }
    }
    fn scale(&self, s: C64) -> Self {
        CombinedStrength {
            plus: self.plus * s,
            minus: self.minus * s,
        }
    }
    fn max_abs(&self) -> f64 {
        self.plus.max_abs().max(self.minus.max_abs())
    }
}

pub fn combine_fields(f: &Antisym, ft: &Antisym) -> CombinedStrength {
    CombinedStrength {
        plus: *f + *ft,
        minus: *f - *ft,
    }
}

/// Plane-wave amplitude of `∂`-linear expressions: for a single term the
/// jet at the origin carries `∂_a → -i k_a` exactly.
fn origin_jet(k: &[f64; 4], a: &[C64; 4]) -> Jet<[C64; 4]> {
    Jet {
        value: *a,
        grad: std::array::from_fn(|c| a.scale(-I * k[c])),
    }
}

impl Wave<[C64; 4]> {
    /// `dA` as a plane-wave field.
    pub fn curl_wave(&self) -> Wave<Antisym> {
        Wave {
            terms: self
                .terms
                .iter()
                .map(|t| crate::field::WaveTerm {
                    k: t.k,
                    amplitude: curl4(&origin_jet(&t.k, &t.amplitude)),
                })
                .collect(),
        }
    }

    /// `(dA)*` as a plane-wave field.
    pub fn dual_curl_wave(&self) -> Wave<Antisym> {
        Wave {
            terms: self
                .terms
                .iter()
                .map(|t| crate::field::WaveTerm {
                    k: t.k,
                    amplitude: dual_curl4(&origin_jet(&t.k, &t.amplitude)),
                })
                .collect(),
        }
    }
}

/// `A_b` and `Ã_b` (lower indices) as plane-wave superpositions.
#[derive(Debug, Clone, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct PotentialPair {
    pub a: Wave<[C64; 4]>,
    pub at: Wave<[C64; 4]>,
}

impl PotentialPair {
    /// `(F⁺, F⁻)` as a plane-wave field.
    pub fn strengths(&self) -> Wave<CombinedStrength> {
        let from_a = self.a.curl_wave().map(|f| CombinedStrength {
            plus: *f,
            minus: *f,
        });
        let from_at = self.at.dual_curl_wave().map(|f| CombinedStrength {
            plus: *f,
            minus: -*f,
        });
        from_a.plus(&from_at)
    }

    /// `(∂^bA_b, ∂^bÃ_b)` at `x`.
    pub fn lorentz_conditions(&self, x: &Point) -> [C64; 2] {
        [
            lorentz_condition(&self.a.jet(x)),
            lorentz_condition(&self.at.jet(x)),
        ]
    }
}

/// `F^±` at `x` from the potentials.
pub fn strengths_from_potentials(p: &PotentialPair, x: &Point) -> CombinedStrength {
    let da = curl4(&p.a.jet(x));
    let dat_star = dual_curl4(&p.at.jet(x));
    CombinedStrength {
        plus: da + dat_star,
        minus: da - dat_star,
    }
}

/// Compares the duals of `F^±` computed by direct ε-contraction with the
/// closed form `F^{±*} = ∓(∂Ã - ∂Ã) + (dA)*`. Returns the larger deviation.
pub fn dual_identity_residual(p: &PotentialPair, x: &Point) -> f64 {
    let s = strengths_from_potentials(p, x);
    let a = p.a.jet(x);
    let at = p.at.jet(x);
    let da_star = dual_curl4(&a);
    let dat = curl4(&at);
    let plus_closed = da_star - dat;
    let minus_closed = da_star + dat;
    (s.plus_dual() - plus_closed)
        .max_abs()
        .max((s.minus_dual() - minus_closed).max_abs())
}

/// The four divergence equations, each moved to one side:
///
/// ```text
/// plus        ∂^β F⁺_αβ  + j_α
/// minus       ∂^β F⁻_αβ  + j_α
/// plus_dual   ∂^β F⁺*_αβ - j̃_α
/// minus_dual  ∂^β F⁻*_αβ + j̃_α
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExtendedResidual {
    pub plus: [C64; 4],
    pub minus: [C64; 4],
    pub plus_dual: [C64; 4],
    pub minus_dual: [C64; 4],
}

impl ExtendedResidual {
    pub fn max_abs(&self) -> f64 {
        self.plus
            .max_abs()
            .max(self.minus.max_abs())
            .max(self.plus_dual.max_abs())
            .max(self.minus_dual.max_abs())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ExtendedResidual {
            plus: Linear::sub(&self.plus, &o.plus),
            minus: Linear::sub(&self.minus, &o.minus),
            plus_dual: Linear::sub(&self.plus_dual, &o.plus_dual),
            minus_dual: Linear::sub(&self.minus_dual, &o.minus_dual),
        }
    }

    pub fn to_set(&self) -> ResidualSet {
        let mut out = ResidualSet::default();
        for (name, v) in [
            ("plus", self.plus),
            ("minus", self.minus),
            ("plus_dual", self.plus_dual),
            ("minus_dual", self.minus_dual),
        ] {
            for (a, z) in v.iter().enumerate() {
                out.entries.push((format!("{name}_{a}"), *z));
            }
        }
        out
    }
}

pub fn extended_residual<S, J, Jt>(s: &S, j: &J, jt: &Jt, x: &Point) -> ExtendedResidual
where
    S: Sampler<CombinedStrength> + ?Sized,
    J: Sampler<[C64; 4]> + ?Sized,
    Jt: Sampler<[C64; 4]> + ?Sized,
{
    let sj = s.jet(x);
    let j = j.value(x);
    let jt = jt.value(x);
    let plus = divergence_antisym(&sj.map(|c| c.plus));
    let minus = divergence_antisym(&sj.map(|c| c.minus));
    let plus_dual = divergence_antisym(&sj.map(|c| c.plus.dual()));
    let minus_dual = divergence_antisym(&sj.map(|c| c.minus.dual()));
    ExtendedResidual {
        plus: plus.add(&j),
        minus: minus.add(&j),
        plus_dual: Linear::sub(&plus_dual, &jt),
        minus_dual: minus_dual.add(&jt),
    }
}

fn three_vector_system(
    e: &dyn Sampler<[C64; 3]>,
    b: &dyn Sampler<[C64; 3]>,
    j: Option<&dyn Sampler<[C64; 4]>>,
    jt: Option<&dyn Sampler<[C64; 4]>>,
    magnetic_sign: f64,
    x: &Point,
) -> ResidualSet {
    let e = e.jet(x);
    let b = b.jet(x);
    let split = |s: Option<&dyn Sampler<[C64; 4]>>| match s {
        Some(s) => {
            let (r, v) = split4(&s.jet(x));
            (r.value, v.value)
        }
        None => (ZERO, [ZERO; 3]),
    };
    let (rho, jv) = split(j);
    let (rho_m, jm) = split(jt);
    let ms = real(magnetic_sign);
    let ce = curl3(&e);
    let cb = curl3(&b);
    let mut out = ResidualSet::default();
    out.entries.push(("gauss_E".into(), div3(&e) - rho));
    out.entries.push(("gauss_B".into(), div3(&b) + ms * rho_m));
    for (i, axis) in ["x", "y", "z"].iter().enumerate() {
        out.entries
            .push((format!("faraday_{axis}"), ce[i] + b.grad[0][i] - ms * jm[i]));
    }
    for (i, axis) in ["x", "y", "z"].iter().enumerate() {
        out.entries
            .push((format!("ampere_{axis}"), cb[i] - e.grad[0][i] - jv[i]));
    }
    out
}

/// Sum combination `Ê = E + E~`, `B̂ = B + B~`:
/// `div Ê = j⁰`, `div B̂ = -j̃⁰`, `rot Ê = -∂_tB̂ + j̃`, `rot B̂ = ∂_tÊ + j`.
pub fn sum_system_residual(
    e_hat: &dyn Sampler<[C64; 3]>,
    b_hat: &dyn Sampler<[C64; 3]>,
    j: Option<&dyn Sampler<[C64; 4]>>,
    jt: Option<&dyn Sampler<[C64; 4]>>,
    x: &Point,
) -> ResidualSet {
    three_vector_system(e_hat, b_hat, j, jt, 1.0, x)
}

/// Difference combination `Ĕ = E - E~`, `B̆ = B - B~`:
/// `div Ĕ = j⁰`, `div B̆ = +j̃⁰`, `rot Ĕ = -∂_tB̆ - j̃`, `rot B̆ = ∂_tĔ + j`.
pub fn difference_system_residual(
    e: &dyn Sampler<[C64; 3]>,
    b: &dyn Sampler<[C64; 3]>,
    j: Option<&dyn Sampler<[C64; 4]>>,
    jt: Option<&dyn Sampler<[C64; 4]>>,
    x: &Point,
) -> ResidualSet {
    three_vector_system(e, b, j, jt, -1.0, x)
}

/// Plane-wave potential driven by a plane-wave current: `□A = j` gives
/// `A = -j / k²`. Requires `k² ≠ 0` and a conserved current `k^a j_a = 0`.
pub fn sourced_potential(k: &[f64; 4], j: &[C64; 4]) -> Result<[C64; 4]> {
    let k2 = k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
    if k2.abs() < 1e-12 {
        return Err(Error::InvalidArgument(
            "source wave vector must be off the light cone".into(),
        ));
    }
    let kj: C64 = j[0] * k[0] - j[1] * k[1] - j[2] * k[2] - j[3] * k[3];
    if kj.norm() > 1e-12 * (1.0 + j.max_abs()) {
        return Err(Error::InvalidArgument(format!(
            "current is not conserved: k·j = {kj}"
        )));
    }
    Ok(j.scale(real(-1.0 / k2)))
}

/// Duality angle `χ`; `χ` and `χ + 2π` act identically.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DualityAngle(pub f64);

impl DualityAngle {
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `[0, 2π)`.
    pub fn normalized(self) -> f64 {
        self.0.rem_euclid(std::f64::consts::TAU)
    }

    fn cs(self) -> (f64, f64) {
        (self.0.cos(), self.0.sin())
    }
}

/// Objects carried along by the duality rotation.
pub trait DualityRotate: Sized {
    /// Continuous rotation by `χ`.
    fn duality_rotate(&self, chi: DualityAngle) -> Self;

    /// The discrete extended duality map, written out case by case:
    /// `A' = Ã`, `Ã' = -A`, `F'⁺ = -F⁺*`, `F'⁻ = F⁻*`, `j' = j̃`, `j̃' = -j`.
    fn extended_dual(&self) -> Self;
}

pub fn duality_rotate<T: DualityRotate>(x: &T, chi: DualityAngle) -> T {
    x.duality_rotate(chi)
}

fn rotate_waves(
    a: &Wave<[C64; 4]>,
    b: &Wave<[C64; 4]>,
    chi: DualityAngle,
) -> (Wave<[C64; 4]>, Wave<[C64; 4]>) {
    let (c, s) = chi.cs();
    (
        a.scaled(real(c)).plus(&b.scaled(real(s))),
        a.scaled(real(-s)).plus(&b.scaled(real(c))),
    )
}

impl DualityRotate for PotentialPair {
    fn duality_rotate(&self, chi: DualityAngle) -> Self {
        let (a, at) = rotate_waves(&self.a, &self.at, chi);
        PotentialPair { a, at }
    }

    fn extended_dual(&self) -> Self {
        PotentialPair {
            a: self.at.clone(),
            at: self.a.scaled(real(-1.0)),
        }
    }
}

impl DualityRotate for CurrentSpec {
    fn duality_rotate(&self, chi: DualityAngle) -> Self {
        let (electric, magnetic) = rotate_waves(&self.electric, &self.magnetic, chi);
        CurrentSpec { electric, magnetic }
    }

    fn extended_dual(&self) -> Self {
        CurrentSpec {
            electric: self.magnetic.clone(),
            magnetic: self.electric.scaled(real(-1.0)),
        }
    }
}

impl DualityRotate for CombinedStrength {
    /// `F'⁺ = cos χ F⁺ - sin χ F⁺*`, `F'⁻ = cos χ F⁻ + sin χ F⁻*`.
    fn duality_rotate(&self, chi: DualityAngle) -> Self {
        let (c, s) = chi.cs();
        CombinedStrength {
            plus: self.plus * c - self.plus_dual() * s,
            minus: self.minus * c + self.minus_dual() * s,
        }
    }

    fn extended_dual(&self) -> Self {
        CombinedStrength {
            plus: -self.plus_dual(),
            minus: self.minus_dual(),
        }
    }
}

impl DualityRotate for Wave<CombinedStrength> {
    fn duality_rotate(&self, chi: DualityAngle) -> Self {
        self.map(|s| s.duality_rotate(chi))
    }

    fn extended_dual(&self) -> Self {
        self.map(|s| s.extended_dual())
    }
}

impl DualityRotate for ExtendedResidual {
    /// Induced action on the residuals: the `+` family mixes as
    /// `(R⁺, R⁺*) → (cR⁺ - sR⁺*, cR⁺* + sR⁺)`, the `-` family with the
    /// opposite sense.
    fn duality_rotate(&self, chi: DualityAngle) -> Self {
        let (c, s) = chi.cs();
        let mix = |a: &[C64; 4], b: &[C64; 4], sb: f64| -> [C64; 4] {
            std::array::from_fn(|i| a[i] * c + b[i] * sb)
        };
        ExtendedResidual {
            plus: mix(&self.plus, &self.plus_dual, -s),
            plus_dual: mix(&self.plus_dual, &self.plus, s),
            minus: mix(&self.minus, &self.minus_dual, s),
            minus_dual: mix(&self.minus_dual, &self.minus, -s),
        }
    }

    fn extended_dual(&self) -> Self {
        let neg = |v: &[C64; 4]| v.map(|z| -z);
        ExtendedResidual {
            plus: neg(&self.plus_dual),
            plus_dual: self.plus,
            minus: self.minus_dual,
            minus_dual: neg(&self.minus),
        }
    }
}

/// Potentials, currents and sample points for the invariance checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DyonicScenario {
    pub potentials: PotentialPair,
    pub currents: CurrentSpec,
    pub points: Vec<Point>,
}

fn transverse<R: Rng>(rng: &mut R, k: &[f64; 4]) -> [C64; 4] {
    let raw: [C64; 4] =
        std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    // remove the component along n = (k_0, -k_1, -k_2, -k_3), which has n·k ≠ 0
    let ku = [k[0], -k[1], -k[2], -k[3]];
    let nk: f64 = (0..4).map(|a| ku[a] * ku[a]).sum();
    let kr: C64 = (0..4).map(|a| raw[a] * ku[a]).sum();
    std::array::from_fn(|a| raw[a] - kr * (ku[a] / nk))
}

impl DyonicScenario {
    /// Electric and magnetic plane-wave sources with their driven
    /// potentials, plus one free wave in each potential.
    pub fn plane_wave(seed: u64, n_points: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut potentials = PotentialPair::default();
        let mut currents = CurrentSpec::default();
        for magnetic in [false, true] {
            // sourced term, k spacelike or timelike but never null
            let k = loop {
                let k: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
                let k2 = k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
                if k2.abs() > 0.2 {
                    break k;
                }
            };
            let j = transverse(&mut rng, &k);
            let pot = sourced_potential(&k, &j).expect("transverse, off light cone");
            // free term on the light cone
            let dir: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let kn = crate::field::null_wave_vector(dir, rng.gen_range(0.5..1.5));
            let free = transverse(&mut rng, &kn);
            let (pw, cw) = if magnetic {
                (&mut potentials.at, &mut currents.magnetic)
            } else {
                (&mut potentials.a, &mut currents.electric)
            };
            pw.push(k, pot);
            pw.push(kn, free);
            cw.push(k, j);
        }
        let points = (0..n_points)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-3.0..3.0)))
            .collect();
        DyonicScenario {
            potentials,
            currents,
            points,
        }
    }

    /// Largest residual of the full system (four divergence equations and
    /// both Lorentz conditions) over the sample points.
    pub fn residual(&self) -> f64 {
        let s = self.potentials.strengths();
        self.points
            .iter()
            .map(|x| {
                let r = extended_residual(&s, &self.currents.electric, &self.currents.magnetic, x);
                let [l1, l2] = self.potentials.lorentz_conditions(x);
                r.max_abs().max(l1.norm()).max(l2.norm())
            })
            .fold(0.0, f64::max)
    }

    pub fn rotated(&self, chi: DualityAngle) -> Self {
        DyonicScenario {
            potentials: self.potentials.duality_rotate(chi),
            currents: self.currents.duality_rotate(chi),
            points: self.points.clone(),
        }
    }
}

/// Rotates the whole configuration by `χ` and compares, at every sample
/// point, (a) the residuals of the rotated configuration with the rotated
/// residuals and (b) strengths built from rotated potentials with rotated
/// strengths. Returns the largest discrepancy.
pub fn duality_invariance_test(scenario: &DyonicScenario, chi: DualityAngle) -> f64 {
    let rotated = scenario.rotated(chi);
    let s = scenario.potentials.strengths();
    let s_rot = rotated.potentials.strengths();
    let c = &scenario.currents;
    let cr = &rotated.currents;
    scenario
        .points
        .iter()
        .map(|x| {
            let r = extended_residual(&s, &c.electric, &c.magnetic, x);
            let r_rot = extended_residual(&s_rot, &cr.electric, &cr.magnetic, x);
            let residual_gap = r_rot.sub(&r.duality_rotate(chi)).max_abs();
            let strength_gap =
                Linear::sub(&s_rot.value(x), &s.value(x).duality_rotate(chi)).max_abs();
            residual_gap.max(strength_gap)
        })
        .fold(0.0, f64::max)
}

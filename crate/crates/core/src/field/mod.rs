//! Exactly differentiable fields and the residual evaluators built on them.
//!
//! A field is anything implementing [`Sampler`]: at a point it returns a
//! [`Jet`], the value together with all four first derivatives. Plane-wave
//! superpositions ([`Wave`]) are the workhorse because differentiation is
//! exact (`∂_a → -i k_a`); closed-form static fields such as the Coulomb
//! field use analytic derivatives.

mod onshell;
pub(crate) mod residual;

pub use onshell::{
    dk_system_matrix, fourier_nullspace, null_wave_vector, on_shell_polarizations,
    random_on_shell_field, random_wave_vector, system_matrix, ONSHELL_TOL,
};
pub use residual::{
    dk_residual, dk_residual_jet, lorentz_condition, massless_maxwell_residual,
    massless_potential_spinor_residual, massless_pseudovector_residual, proca_vector_residual,
    pseudoscalar_sector_residual, pseudovector_proca_residual, scalar_sector_residual,
    spinor_block_residuals, spinor_residual_jet, spinor_tensor_equivalence, tensor_to_spinor_order,
    EquivalenceReport, ResidualSet,
};

use serde::{Deserialize, Serialize};

use crate::bispinor::TensorMultiplet;
use crate::error::{Error, Result};
use crate::linalg::{real, C64, I, ZERO};
use crate::lorentz::LorentzMatrix;
use crate::tensor::{Antisym, Linear};

/// Spacetime point `x^a = (t, x, y, z)`.
pub type Point = [f64; 4];

/// Value and first derivatives `∂_a = ∂/∂x^a` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub grad: [T; 4],
}

impl<T: Linear> Jet<T> {
    pub fn zero() -> Self {
        Jet {
            value: T::zero(),
            grad: [T::zero(); 4],
        }
    }

    pub fn constant(value: T) -> Self {
        Jet {
            value,
            grad: [T::zero(); 4],
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Jet<U> {
        Jet {
            value: f(&self.value),
            grad: std::array::from_fn(|a| f(&self.grad[a])),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Jet {
            value: self.value.add(&other.value),
            grad: std::array::from_fn(|a| self.grad[a].add(&other.grad[a])),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|v| v.scale(s))
    }
}

/// A field that can be evaluated, with derivatives, at any point.
pub trait Sampler<T> {
    fn jet(&self, x: &Point) -> Jet<T>;

    fn value(&self, x: &Point) -> T {
        self.jet(x).value
    }
}

impl<T, S: Sampler<T> + ?Sized> Sampler<T> for &S {
    fn jet(&self, x: &Point) -> Jet<T> {
        (**self).jet(x)
    }
}

/// Closure-backed sampler, handy for analytic fields in tests.
pub struct FnSampler<F>(pub F);

impl<T, F: Fn(&Point) -> Jet<T>> Sampler<T> for FnSampler<F> {
    fn jet(&self, x: &Point) -> Jet<T> {
        (self.0)(x)
    }
}

/// Identically zero field.
#[derive(Debug, Clone, Copy, Default)]
pub struct Zero;

impl<T: Linear> Sampler<T> for Zero {
    fn jet(&self, _x: &Point) -> Jet<T> {
        Jet::zero()
    }
}

/// One term `amplitude · exp(-i k_a x^a)`; `k` has lower indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveTerm<T> {
    pub k: [f64; 4],
    #[serde(rename = "polarization")]
    pub amplitude: T,
}

/// Finite superposition of plane waves.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wave<T> {
    pub terms: Vec<WaveTerm<T>>,
}

/// The full 16-component plane-wave field.
pub type PlaneWaveField = Wave<TensorMultiplet>;

impl<T: Linear> Wave<T> {
    pub fn new() -> Self {
        Wave { terms: Vec::new() }
    }

    pub fn single(k: [f64; 4], amplitude: T) -> Self {
        Wave {
            terms: vec![WaveTerm { k, amplitude }],
        }
    }

    pub fn push(&mut self, k: [f64; 4], amplitude: T) {
        self.terms.push(WaveTerm { k, amplitude });
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map to every amplitude. Exact for any linear `f`.
    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Wave<U> {
        Wave {
            terms: self
                .terms
                .iter()
                .map(|t| WaveTerm {
                    k: t.k,
                    amplitude: f(&t.amplitude),
                })
                .collect(),
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        self.map(|a| a.scale(s))
    }

    /// Concatenation, i.e. the sum of two fields.
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Wave { terms }
    }
}

impl<T: Linear> Sampler<T> for Wave<T> {
    fn jet(&self, x: &Point) -> Jet<T> {
        let mut out = Jet::<T>::zero();
        for term in &self.terms {
            let phase: f64 = (0..4).map(|a| term.k[a] * x[a]).sum();
            let v = term.amplitude.scale(C64::from_polar(1.0, -phase));
            out.value = out.value.add(&v);
            for a in 0..4 {
                out.grad[a] = out.grad[a].add(&v.scale(-I * term.k[a]));
            }
        }
        out
    }
}

impl PlaneWaveField {
    pub fn vector_part(&self) -> Wave<[C64; 4]> {
        self.map(|t| t.vector)
    }

    pub fn pseudovector_part(&self) -> Wave<[C64; 4]> {
        self.map(|t| t.pseudovector)
    }

    pub fn antisym_part(&self) -> Wave<Antisym> {
        self.map(|t| t.antisym)
    }

    /// The boosted/rotated field `Φ'(x) = L·Φ(L⁻¹x)`: each term's wave vector
    /// goes to `L k` and its amplitude to the tensor action of `L`.
    pub fn transformed(&self, l: &LorentzMatrix) -> Self {
        Wave {
            terms: self
                .terms
                .iter()
                .map(|t| WaveTerm {
                    k: l.apply_real(&t.k),
                    amplitude: l.apply_multiplet(&t.amplitude),
                })
                .collect(),
        }
    }
}

impl Wave<Antisym> {
    /// `E^k = F_{0k}`.
    pub fn electric(&self) -> Wave<[C64; 3]> {
        self.map(|f| f.electric())
    }

    /// `B = -(F_23, F_31, F_12)`.
    pub fn magnetic(&self) -> Wave<[C64; 3]> {
        self.map(|f| f.magnetic())
    }
}

/// Non-negative mass in natural units (`c = 1`, inverse length).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Mass(f64);

impl Mass {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && m >= 0.0 {
            Ok(Mass(m))
        } else {
            Err(Error::InvalidMass(m))
        }
    }

    pub fn zero() -> Self {
        Mass(0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// For systems that divide by the mass.
    pub fn require_positive(self) -> Result<f64> {
        if self.0 > 0.0 {
            Ok(self.0)
        } else {
            Err(Error::MasslessNotAllowed(self.0))
        }
    }
}

/// Static point source with field `q r̂ / (4π r²)` around `center`, with
/// analytic derivatives. Used both as a Coulomb field and, with the
/// magnetic charge, as a monopole field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCharge {
    pub charge: f64,
    pub center: [f64; 3],
}

impl Sampler<[C64; 3]> for PointCharge {
    fn jet(&self, x: &Point) -> Jet<[C64; 3]> {
        let r = [
            x[1] - self.center[0],
            x[2] - self.center[1],
            x[3] - self.center[2],
        ];
        let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        let rn = r2.sqrt();
        let pref = self.charge / (4.0 * std::f64::consts::PI);
        let r3 = rn * r2;
        let r5 = r3 * r2;
        let value = r.map(|ri| real(pref * ri / r3));
        let mut grad = [[ZERO; 3]; 4];
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                // ∂_i (x_j / r³) = δ_ij / r³ - 3 x_i x_j / r⁵
                grad[i + 1][j] = real(pref * (delta / r3 - 3.0 * r[i] * r[j] / r5));
            }
        }
        Jet { value, grad }
    }
}

/// Electric (`j_b`) and magnetic (`j̃_b`) currents, both with lower indices.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CurrentSpec {
    #[serde(default)]
    pub electric: Wave<[C64; 4]>,
    #[serde(default)]
    pub magnetic: Wave<[C64; 4]>,
}

impl CurrentSpec {
    /// `max(|∂^b j_b|, |∂^b j̃_b|)` at `x`.
    pub fn divergence(&self, x: &Point) -> f64 {
        lorentz_condition(&self.electric.jet(x))
            .norm()
            .max(lorentz_condition(&self.magnetic.jet(x)).norm())
    }
}

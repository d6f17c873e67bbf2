//! The 16-component tensor multiplet and its bispinor realisation
//!
//! ```text
//! U = [ -iΦ + γ^l Φ_l + i σ^{mn} Φ_mn + γ⁵ Φ̃ + i γ^l γ⁵ Φ̃_l ] E⁻¹
//! ```
//!
//! with `σ^{mn} Φ_mn` summed over all 16 ordered pairs, i.e. twice the sum
//! over the six stored components.

use std::ops::{Add, Mul, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{e_inv, e_mat, g, gam, gam_lower, gamma5, sig};
use crate::linalg::{block, from_blocks, max_abs, ComplexMatrix2, ComplexMatrix4, C64, I, ZERO};
use crate::tensor::{Antisym, Linear, PAIRS};

/// `{Φ, Φ_l, Φ̃, Φ̃_l, Φ_mn}`, all with lower indices.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TensorMultiplet {
    pub scalar: C64,
    pub vector: [C64; 4],
    pub pseudoscalar: C64,
    pub pseudovector: [C64; 4],
    pub antisym: Antisym,
}

impl TensorMultiplet {
    pub const LEN: usize = 16;

    pub fn zero() -> Self {
        Self::default()
    }

    /// Flat view in the order `(Φ, Φ_0..Φ_3, Φ̃, Φ̃_0..Φ̃_3, Φ_01, Φ_02, Φ_03, Φ_23, Φ_31, Φ_12)`.
    pub fn to_array(&self) -> [C64; 16] {
        let mut out = [ZERO; 16];
        out[0] = self.scalar;
        out[1..5].copy_from_slice(&self.vector);
        out[5] = self.pseudoscalar;
        out[6..10].copy_from_slice(&self.pseudovector);
        out[10..16].copy_from_slice(&self.antisym.0);
        out
    }

    pub fn from_array(a: &[C64; 16]) -> Self {
        TensorMultiplet {
            scalar: a[0],
            vector: [a[1], a[2], a[3], a[4]],
            pseudoscalar: a[5],
            pseudovector: [a[6], a[7], a[8], a[9]],
            antisym: Antisym([a[10], a[11], a[12], a[13], a[14], a[15]]),
        }
    }

    pub fn from_vector(v: [C64; 4]) -> Self {
        TensorMultiplet {
            vector: v,
            ..Self::zero()
        }
    }

    pub fn from_pseudovector(v: [C64; 4]) -> Self {
        TensorMultiplet {
            pseudovector: v,
            ..Self::zero()
        }
    }

    pub fn from_antisym(f: Antisym) -> Self {
        TensorMultiplet {
            antisym: f,
            ..Self::zero()
        }
    }

    /// Componentwise Hermitian inner product.
    pub fn inner(&self, other: &Self) -> C64 {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Linear for TensorMultiplet {
    fn zero() -> Self {
        TensorMultiplet::zero()
    }
    fn add(&self, other: &Self) -> Self {
        Self::from_array(&Linear::add(&self.to_array(), &other.to_array()))
    }
    fn scale(&self, s: C64) -> Self {
        Self::from_array(&self.to_array().scale(s))
    }
    fn max_abs(&self) -> f64 {
        self.to_array().max_abs()
    }
}

impl Add for TensorMultiplet {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Linear::add(&self, &rhs)
    }
}

impl Sub for TensorMultiplet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Linear::sub(&self, &rhs)
    }
}

impl Mul<C64> for TensorMultiplet {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

// Wire format: flat array of 16 `[re, im]` pairs.
impl Serialize for TensorMultiplet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.to_array().iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TensorMultiplet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        if pairs.len() != TensorMultiplet::LEN {
            return Err(D::Error::invalid_length(pairs.len(), &"16 [re, im] pairs"));
        }
        let arr: [C64; 16] = std::array::from_fn(|i| C64::new(pairs[i][0], pairs[i][1]));
        Ok(TensorMultiplet::from_array(&arr))
    }
}

/// The 2-rank bispinor `U`, tiled in the Weyl basis as
/// `[[ξ, Δ], [H, η]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bispinor(pub ComplexMatrix4);

impl Bispinor {
    pub fn zero() -> Self {
        Bispinor(ComplexMatrix4::zeros())
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn xi(&self) -> ComplexMatrix2 {
        block(&self.0, 0, 0)
    }

    pub fn delta(&self) -> ComplexMatrix2 {
        block(&self.0, 0, 1)
    }

    pub fn h(&self) -> ComplexMatrix2 {
        block(&self.0, 1, 0)
    }

    pub fn eta(&self) -> ComplexMatrix2 {
        block(&self.0, 1, 1)
    }

    /// `(ξ, Δ, H, η)`.
    pub fn blocks(
        &self,
    ) -> (
        ComplexMatrix2,
        ComplexMatrix2,
        ComplexMatrix2,
        ComplexMatrix2,
    ) {
        (self.xi(), self.delta(), self.h(), self.eta())
    }

    pub fn from_blocks(
        xi: &ComplexMatrix2,
        delta: &ComplexMatrix2,
        h: &ComplexMatrix2,
        eta: &ComplexMatrix2,
    ) -> Self {
        Bispinor(from_blocks(xi, delta, h, eta))
    }
}

/// Free-function form of [`Bispinor::blocks`].
pub fn blocks(
    u: &Bispinor,
) -> (
    ComplexMatrix2,
    ComplexMatrix2,
    ComplexMatrix2,
    ComplexMatrix2,
) {
    u.blocks()
}

/// Parity sectors obtained by switching off complementary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    /// scalar: `{Φ, Φ_l}`
    S0,
    /// pseudoscalar: `{Φ̃, Φ̃_l}`
    S0tilde,
    /// vector: `{Φ_l, Φ_mn}`
    S1,
    /// pseudovector: `{Φ̃_l, Φ_mn}`
    S1tilde,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::S0, Sector::S0tilde, Sector::S1, Sector::S1tilde];

    /// Dimension of the projector image.
    pub fn dimension(self) -> usize {
        match self {
            Sector::S0 | Sector::S0tilde => 5,
            Sector::S1 | Sector::S1tilde => 10,
        }
    }

    /// Mask over the flat 16-component layout.
    pub fn mask(self) -> [bool; 16] {
        let mut m = [false; 16];
        let (scalar, vector, pscalar, pvector, antisym) = match self {
            Sector::S0 => (true, true, false, false, false),
            Sector::S0tilde => (false, false, true, true, false),
            Sector::S1 => (false, true, false, false, true),
            Sector::S1tilde => (false, false, false, true, true),
        };
        m[0] = scalar;
        m[1..5].fill(vector);
        m[5] = pscalar;
        m[6..10].fill(pvector);
        m[10..16].fill(antisym);
        m
    }
}

impl std::str::FromStr for Sector {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "S0" | "s0" | "scalar" => Ok(Sector::S0),
            "S0tilde" | "s0tilde" | "pseudoscalar" => Ok(Sector::S0tilde),
            "S1" | "s1" | "vector" => Ok(Sector::S1),
            "S1tilde" | "s1tilde" | "pseudovector" => Ok(Sector::S1tilde),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown sector '{s}'"
            ))),
        }
    }
}

/// Tensor multiplet → bispinor.
pub fn compose(t: &TensorMultiplet) -> Bispinor {
    let g5 = gamma5();
    let mut q = ComplexMatrix4::identity() * (-I * t.scalar) + g5 * t.pseudoscalar;
    for l in 0..4 {
        q += gam(l) * t.vector[l];
        q += gam(l) * g5 * (I * t.pseudovector[l]);
    }
    for (s, &(m, n)) in PAIRS.iter().enumerate() {
        // σ^{mn}Φ_mn + σ^{nm}Φ_nm = 2 σ^{mn}Φ_mn
        q += sig(m, n) * (I * 2.0 * t.antisym[s]);
    }
    Bispinor(q * e_inv())
}

/// Bispinor → tensor multiplet (trace projections).
pub fn decompose(u: &Bispinor) -> TensorMultiplet {
    let e = e_mat();
    let g5 = gamma5();
    let scalar = (e * u.0).trace() * (I * 0.25);
    let pseudoscalar = (e * g5 * u.0).trace() * 0.25;
    let vector = std::array::from_fn(|l| (e * gam_lower(l) * u.0).trace() * 0.25);
    let pseudovector = std::array::from_fn(|l| (e * g5 * gam_lower(l) * u.0).trace() / (I * 4.0));
    let antisym = Antisym(std::array::from_fn(|s| {
        let (m, n) = PAIRS[s];
        let lower = sig(m, n) * C64::new(g(m, m) * g(n, n), 0.0);
        -(e * lower * u.0).trace() / (I * 2.0)
    }));
    TensorMultiplet {
        scalar,
        vector,
        pseudoscalar,
        pseudovector,
        antisym,
    }
}

/// Zeroes the components outside sector `s`.
pub fn project_sector(t: &TensorMultiplet, s: Sector) -> TensorMultiplet {
    let mask = s.mask();
    let arr = t.to_array();
    TensorMultiplet::from_array(&std::array::from_fn(
        |i| if mask[i] { arr[i] } else { ZERO },
    ))
}

/// Largest violation of the sector's transposition constraints on the blocks:
///
/// | sector | constraints |
/// |--------|-------------|
/// | S0     | `Δᵀ = H`, `ξ = -η`, `ξᵀ = -ξ` |
/// | S0tilde| `Δᵀ = -H`, `ξ = η`, `ξᵀ = -ξ` |
/// | S1     | `Δᵀ = H`, `ξᵀ = ξ`, `ηᵀ = η` |
/// | S1tilde| `Δᵀ = -H`, `ξᵀ = ξ`, `ηᵀ = η` |
pub fn check_block_constraints(u: &Bispinor, s: Sector) -> f64 {
    let (xi, delta, h, eta) = u.blocks();
    match s {
        Sector::S0 => max_abs(&(delta.transpose() - h))
            .max(max_abs(&(xi + eta)))
            .max(max_abs(&(xi.transpose() + xi))),
        Sector::S0tilde => max_abs(&(delta.transpose() + h))
            .max(max_abs(&(xi - eta)))
            .max(max_abs(&(xi.transpose() + xi))),
        Sector::S1 => max_abs(&(delta.transpose() - h))
            .max(max_abs(&(xi.transpose() - xi)))
            .max(max_abs(&(eta.transpose() - eta))),
        Sector::S1tilde => max_abs(&(delta.transpose() + h))
            .max(max_abs(&(xi.transpose() - xi)))
            .max(max_abs(&(eta.transpose() - eta))),
    }
}

/// Seeded random multiplet with components uniform in the unit square.
pub fn random_multiplet<R: rand::Rng>(rng: &mut R) -> TensorMultiplet {
    TensorMultiplet::from_array(&std::array::from_fn(|_| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }))
}

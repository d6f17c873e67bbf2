//! Antisymmetric rank-2 tensors and the small linear-space trait shared by
//! all field amplitudes.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::clifford::{g, levi_civita_mixed};
use crate::linalg::{C64, ZERO};

/// Minimal vector-space interface for field amplitudes so that plane waves,
/// jets and duality rotations can be written once.
pub trait Linear: Copy {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: C64) -> Self;
    /// Largest component modulus.
    fn max_abs(&self) -> f64;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }
}

impl Linear for C64 {
    fn zero() -> Self {
        ZERO
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, s: C64) -> Self {
        self * s
    }
    fn max_abs(&self) -> f64 {
        self.norm()
    }
}

impl<const N: usize> Linear for [C64; N] {
    fn zero() -> Self {
        [ZERO; N]
    }
    fn add(&self, other: &Self) -> Self {
        std::array::from_fn(|i| self[i] + other[i])
    }
    fn scale(&self, s: C64) -> Self {
        std::array::from_fn(|i| self[i] * s)
    }
    fn max_abs(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Independent index pairs in storage order. `(3, 1)` rather than `(1, 3)`
/// so the last three slots line up with the cyclic 3-vector `(23, 31, 12)`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Antisymmetric tensor `F_{mn}` (lower indices) stored as
/// `(F_01, F_02, F_03, F_23, F_31, F_12)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Antisym(pub [C64; 6]);

impl Antisym {
    pub fn zero() -> Self {
        Antisym([ZERO; 6])
    }

    /// Component `F_{ab}` for any ordered pair.
    pub fn get(&self, a: usize, b: usize) -> C64 {
        if a == b {
            return ZERO;
        }
        for (slot, &(m, n)) in PAIRS.iter().enumerate() {
            if (m, n) == (a, b) {
                return self.0[slot];
            }
            if (n, m) == (a, b) {
                return -self.0[slot];
            }
        }
        unreachable!("index pair ({a}, {b}) out of range")
    }

    /// Builds from a full 4×4 array, reading only the stored pairs.
    pub fn from_full(f: &[[C64; 4]; 4]) -> Self {
        Antisym(std::array::from_fn(|s| {
            let (m, n) = PAIRS[s];
            f[m][n]
        }))
    }

    pub fn to_full(&self) -> [[C64; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.get(a, b)))
    }

    /// Same tensor with both indices raised.
    pub fn raised(&self) -> [[C64; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.get(a, b) * (g(a, a) * g(b, b))))
    }

    /// Hodge dual `F*_{ab} = ½ ε_{ab}^{ρσ} F_{ρσ}`.
    pub fn dual(&self) -> Antisym {
        Antisym(std::array::from_fn(|s| {
            let (a, b) = PAIRS[s];
            let mut acc = ZERO;
            for r in 0..4 {
                for t in 0..4 {
                    let e = levi_civita_mixed(a, b, r, t);
                    if e != 0.0 {
                        acc += self.get(r, t) * (0.5 * e);
                    }
                }
            }
            acc
        }))
    }

    /// `E^k = F_{0k}`.
    pub fn electric(&self) -> [C64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    /// `B = -(F_23, F_31, F_12)`, so that `B = rot A` when `F = dA`.
    pub fn magnetic(&self) -> [C64; 3] {
        [-self.0[3], -self.0[4], -self.0[5]]
    }

    /// Inverse of [`Antisym::electric`] / [`Antisym::magnetic`].
    pub fn from_fields(e: [C64; 3], b: [C64; 3]) -> Self {
        Antisym([e[0], e[1], e[2], -b[0], -b[1], -b[2]])
    }
}

impl Index<usize> for Antisym {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Linear for Antisym {
    fn zero() -> Self {
        Antisym::zero()
    }
    fn add(&self, other: &Self) -> Self {
        Antisym(self.0.add(&other.0))
    }
    fn scale(&self, s: C64) -> Self {
        Antisym(self.0.scale(s))
    }
    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }
}

impl Add for Antisym {
    type Output = Antisym;
    fn add(self, rhs: Self) -> Self {
        Linear::add(&self, &rhs)
    }
}

impl Sub for Antisym {
    type Output = Antisym;
    fn sub(self, rhs: Self) -> Self {
        Linear::sub(&self, &rhs)
    }
}

impl Neg for Antisym {
    type Output = Antisym;
    fn neg(self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for Antisym {
    type Output = Antisym;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for Antisym {
    type Output = Antisym;
    fn mul(self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }
}

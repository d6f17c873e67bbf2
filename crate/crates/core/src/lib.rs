//! Dirac–Kähler field algebra and two-potential electrodynamics with
//! electric and magnetic charges.
//!
//! The crate is organised bottom-up:
//!
//! - [`clifford`]: Weyl-basis γ-matrices, the metric spinor `E`, the
//!   Levi-Civita symbol and the trace / σ-product identity checks.
//! - [`bispinor`]: the bijection between the 16-component tensor multiplet
//!   and the 2-rank bispinor `U`, its 2×2 block structure and the four
//!   parity sectors.
//! - [`lorentz`]: SL(2,C) transformations of `U`, the induced 4-vector
//!   representation and the discrete maps `M`, `N`.
//! - [`field`]: exactly differentiable plane-wave fields and residual
//!   evaluators for every tensor / spinor equation system.
//! - [`maxwell`]: sum/difference combinations, Hodge duals, duality
//!   rotations and a Yee-grid solver for the dual-charge system.
//! - [`harness`]: verification suites producing [`harness::ReportRecord`]s.
//!
//! Index conventions: metric signature `(+,-,-,-)`, `ε^{0123} = +1`,
//! `ε_{0123} = -1`. Vector-like quantities (`Φ_l`, `A_l`, `j_l`, wave vectors
//! `k_a`) are stored with lower indices; spacetime points `x^a = (t, x, y, z)`
//! with upper indices. 3-vectors `E`, `B` are contravariant:
//! `E^k = F_{0k}` and `B = -(F_23, F_31, F_12)`.

pub mod bispinor;
pub mod clifford;
pub mod error;
pub mod field;
pub mod harness;
pub mod linalg;
pub mod lorentz;
pub mod maxwell;
pub mod tensor;

pub use bispinor::{Bispinor, Sector, TensorMultiplet};
pub use error::{Error, Result};
pub use field::{Jet, Mass, PlaneWaveField, Point, Sampler};
pub use linalg::{ComplexMatrix2, ComplexMatrix4, C64};
pub use lorentz::{LorentzMatrix, SL2CElement};
pub use maxwell::{CombinedStrength, DualFieldState, DualityAngle, PotentialPair};
pub use tensor::{Antisym, Linear};

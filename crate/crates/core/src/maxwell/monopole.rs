//! Flux of a static point monopole through a sphere.
//!
//! With `j̃⁰ = g δ³(r)` the sum-field Gauss law `div B̂ = -j̃⁰` gives
//! `B̂ = -g r̂ / (4π r²)`, so the outward flux is `-g` for any enclosing
//! sphere. The surface integral uses Gauss–Legendre nodes in `cos θ` and
//! the trapezoidal rule in `φ`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::field::{PointCharge, Sampler};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Outward flux of the monopole at `source` through the sphere of
/// `radius` about the origin, with `order` nodes in `cos θ` and `2·order`
/// in `φ`.
pub fn monopole_flux_offset(g: f64, radius: f64, source: [f64; 3], order: usize) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidArgument(
            "quadrature order must be at least 1".into(),
        ));
    }
    let field = PointCharge {
        charge: -g,
        center: source,
    };
    let (nodes, weights) = gauss_legendre(order);
    let n_phi = 2 * order;
    let dphi = TAU / n_phi as f64;
    let mut flux = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let s = (1.0 - u * u).sqrt();
        for m in 0..n_phi {
            let phi = m as f64 * dphi;
            let n = [s * phi.cos(), s * phi.sin(), u];
            let x = [0.0, radius * n[0], radius * n[1], radius * n[2]];
            let b = field.value(&x);
            let bn = b[0].re * n[0] + b[1].re * n[1] + b[2].re * n[2];
            flux += w * dphi * bn * radius * radius;
        }
    }
    Ok(flux)
}

/// Flux of a monopole of charge `g` at the centre of the sphere.
pub fn monopole_flux_test(g: f64, radius: f64, order: usize) -> Result<f64> {
    monopole_flux_offset(g, radius, [0.0; 3], order)
}

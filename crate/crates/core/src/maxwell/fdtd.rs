//! Leapfrog solver for the sum fields `(Ê, B̂)` on a periodic Yee lattice.
//!
//! Layout (in units of `h`):
//!
//! ```text
//! Ex (i+½, j, k)     Bx (i, j+½, k+½)
//! Ey (i, j+½, k)     By (i+½, j, k+½)
//! Ez (i, j, k+½)     Bz (i+½, j+½, k)
//! ```
//!
//! `Ê` lives at integer times `t_n`, `B̂` at `t_n + dt/2`. Each step does
//!
//! ```text
//! Ê ← Ê + dt (rot_h B̂ - j(t_n + dt/2))
//! B̂ ← B̂ - dt (rot_h Ê - j̃(t_n + dt))
//! ```
//!
//! so `div_h Ê` (at nodes) and `div_h B̂` (at cell centres) change only
//! through the currents. Work is split into z-slabs; reductions are formed
//! per slab and summed in slab order, so results do not depend on the
//! thread count.

use std::sync::Arc;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lattice size and spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: [usize; 3],
    pub h: f64,
}

impl GridSpec {
    pub fn cubic(n: usize, h: f64) -> Self {
        GridSpec { n: [n; 3], h }
    }

    pub fn cells(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    /// Largest stable time step, `h/√3`.
    pub fn max_dt(&self) -> f64 {
        self.h / 3f64.sqrt()
    }

    fn validate(&self) -> Result<()> {
        if self.n.contains(&0) {
            return Err(Error::InvalidGrid(format!(
                "zero-sized lattice {:?}",
                self.n
            )));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {}",
                self.h
            )));
        }
        Ok(())
    }
}

/// Electric and magnetic current densities seen by the solver, as
/// `(ρ, j^x, j^y, j^z)` at a physical position and time.
pub trait GridCurrents: Sync {
    fn electric(&self, p: [f64; 3], t: f64) -> [f64; 4];
    fn magnetic(&self, p: [f64; 3], t: f64) -> [f64; 4];
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoCurrents;

impl GridCurrents for NoCurrents {
    fn electric(&self, _p: [f64; 3], _t: f64) -> [f64; 4] {
        [0.0; 4]
    }
    fn magnetic(&self, _p: [f64; 3], _t: f64) -> [f64; 4] {
        [0.0; 4]
    }
}

/// Spatially uniform currents `j = electric·cos ωt`, `j̃ = magnetic·cos ωt`
/// with no charge density. Trivially conserved, on the lattice as well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformCurrents {
    pub electric: [f64; 3],
    pub magnetic: [f64; 3],
    pub omega: f64,
}

impl GridCurrents for UniformCurrents {
    fn electric(&self, _p: [f64; 3], t: f64) -> [f64; 4] {
        let c = (self.omega * t).cos();
        [
            0.0,
            self.electric[0] * c,
            self.electric[1] * c,
            self.electric[2] * c,
        ]
    }
    fn magnetic(&self, _p: [f64; 3], t: f64) -> [f64; 4] {
        let c = (self.omega * t).cos();
        [
            0.0,
            self.magnetic[0] * c,
            self.magnetic[1] * c,
            self.magnetic[2] * c,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneWaveAxis {
    X,
    Y,
    Z,
}

impl PlaneWaveAxis {
    pub fn index(self) -> usize {
        match self {
            PlaneWaveAxis::X => 0,
            PlaneWaveAxis::Y => 1,
            PlaneWaveAxis::Z => 2,
        }
    }
}

/// Staggering offsets of the E and B components.
const E_OFFSET: [[f64; 3]; 3] = [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]];
const B_OFFSET: [[f64; 3]; 3] = [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]];

/// `(Ê, B̂)` on the lattice together with the clock.
#[derive(Clone)]
pub struct DualFieldState {
    grid: GridSpec,
    dt: f64,
    step: usize,
    e: [Vec<f64>; 3],
    b: [Vec<f64>; 3],
    pool: Option<Arc<ThreadPool>>,
}

impl std::fmt::Debug for DualFieldState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DualFieldState")
            .field("grid", &self.grid)
            .field("dt", &self.dt)
            .field("step", &self.step)
            .field("threads", &self.threads())
            .finish_non_exhaustive()
    }
}

/// Gauss-law diagnostics at the current step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub step: usize,
    pub energy: f64,
    pub max_div_e_minus_rho: f64,
    pub max_div_b_plus_rhomag: f64,
}

/// Worker count from `DKFIELD_THREADS`; 1 when unset.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var("DKFIELD_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidArgument(format!(
                "DKFIELD_THREADS must be a positive integer, got {s:?}"
            ))),
        },
    }
}

impl DualFieldState {
    /// Zero fields at `t = 0`. Fails on a bad lattice or when `dt`
    /// exceeds `h/√3`.
    pub fn new(grid: GridSpec, dt: f64) -> Result<Self> {
        grid.validate()?;
        let max_dt = grid.max_dt();
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if dt > max_dt {
            return Err(Error::Cfl { dt, max_dt });
        }
        let n = grid.cells();
        Ok(DualFieldState {
            grid,
            dt,
            step: 0,
            e: std::array::from_fn(|_| vec![0.0; n]),
            b: std::array::from_fn(|_| vec![0.0; n]),
            pool: None,
        })
    }

    /// Runs the lattice loops on `threads` workers. Results are identical
    /// for every thread count.
    pub fn with_threads(mut self, threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::InvalidArgument(
                "thread count must be at least 1".into(),
            ));
        }
        self.pool = if threads == 1 {
            None
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Some(Arc::new(pool))
        };
        Ok(self)
    }

    pub fn threads(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Time of `Ê`; `B̂` is half a step ahead.
    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt
    }

    pub fn e(&self, c: usize) -> &[f64] {
        &self.e[c]
    }

    pub fn b(&self, c: usize) -> &[f64] {
        &self.b[c]
    }

    pub fn e_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.e[c]
    }

    pub fn b_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.b[c]
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.grid.n[0] * (j + self.grid.n[1] * k)
    }

    /// `(Ex, Ey, Ez, Bx, By, Bz)` stored for cell `(i, j, k)`.
    pub fn cell(&self, i: usize, j: usize, k: usize) -> [f64; 6] {
        let p = self.index(i, j, k);
        [
            self.e[0][p],
            self.e[1][p],
            self.e[2][p],
            self.b[0][p],
            self.b[1][p],
            self.b[2][p],
        ]
    }

    fn position(&self, i: usize, j: usize, k: usize, off: &[f64; 3]) -> [f64; 3] {
        let h = self.grid.h;
        [
            (i as f64 + off[0]) * h,
            (j as f64 + off[1]) * h,
            (k as f64 + off[2]) * h,
        ]
    }

    /// Sets every component from functions of `(component, position)`.
    /// `e_at` is sampled at the E sites, `b_at` at the B sites.
    pub fn fill<FE, FB>(&mut self, e_at: FE, b_at: FB)
    where
        FE: Fn(usize, [f64; 3]) -> f64,
        FB: Fn(usize, [f64; 3]) -> f64,
    {
        let [nx, ny, nz] = self.grid.n;
        for c in 0..3 {
            for k in 0..nz {
                for j in 0..ny {
                    for i in 0..nx {
                        let p = self.index(i, j, k);
                        self.e[c][p] = e_at(c, self.position(i, j, k, &E_OFFSET[c]));
                        self.b[c][p] = b_at(c, self.position(i, j, k, &B_OFFSET[c]));
                    }
                }
            }
        }
    }

    fn plane_wave_component(
        &self,
        amplitude: f64,
        mode: usize,
        axis: PlaneWaveAxis,
    ) -> impl Fn(bool, usize, [f64; 3], f64) -> f64 {
        let a = axis.index();
        let kappa = std::f64::consts::TAU * mode as f64 / (self.grid.n[a] as f64 * self.grid.h);
        move |magnetic, c, p, t| {
            let want = if magnetic { (a + 2) % 3 } else { (a + 1) % 3 };
            if c == want {
                amplitude * (kappa * (p[a] - t)).cos()
            } else {
                0.0
            }
        }
    }

    /// Vacuum wave travelling along `+axis` with `mode` wavelengths across
    /// the box: `Ê` along the next axis, `B̂` along the one after.
    pub fn set_plane_wave(&mut self, amplitude: f64, mode: usize, axis: PlaneWaveAxis) {
        let f = self.plane_wave_component(amplitude, mode, axis);
        let (te, tb) = (self.time(), self.time() + 0.5 * self.dt);
        self.fill(|c, p| f(false, c, p, te), |c, p| f(true, c, p, tb));
    }

    /// L∞ distance to the exact wave at the current clock.
    pub fn plane_wave_error(&self, amplitude: f64, mode: usize, axis: PlaneWaveAxis) -> f64 {
        let f = self.plane_wave_component(amplitude, mode, axis);
        let (te, tb) = (self.time(), self.time() + 0.5 * self.dt);
        let [nx, ny, nz] = self.grid.n;
        let mut err: f64 = 0.0;
        for c in 0..3 {
            for k in 0..nz {
                for j in 0..ny {
                    for i in 0..nx {
                        let p = self.index(i, j, k);
                        let pe = self.position(i, j, k, &E_OFFSET[c]);
                        let pb = self.position(i, j, k, &B_OFFSET[c]);
                        err = err
                            .max((self.e[c][p] - f(false, c, pe, te)).abs())
                            .max((self.b[c][p] - f(true, c, pb, tb)).abs());
                    }
                }
            }
        }
        err
    }

    /// One leapfrog step.
    pub fn fdtd_step(&mut self, currents: &dyn GridCurrents) {
        let [nx, ny, nz] = self.grid.n;
        let h = self.grid.h;
        let dt = self.dt;
        let slab = nx * ny;
        let inv_h = 1.0 / h;
        let t_e = self.time() + 0.5 * dt;
        let t_b = self.time() + dt;
        let idx = move |i: usize, j: usize, k: usize| i + nx * (j + ny * k);

        {
            let [bx, by, bz] = &self.b;
            let [ex, ey, ez] = &mut self.e;
            let update = |k: usize, ex: &mut [f64], ey: &mut [f64], ez: &mut [f64]| {
                let km = (k + nz - 1) % nz;
                for j in 0..ny {
                    let jm = (j + ny - 1) % ny;
                    for i in 0..nx {
                        let im = (i + nx - 1) % nx;
                        let p = idx(i, j, k);
                        let q = i + nx * j;
                        let curl_x =
                            (bz[p] - bz[idx(i, jm, k)] - by[p] + by[idx(i, j, km)]) * inv_h;
                        let curl_y =
                            (bx[p] - bx[idx(i, j, km)] - bz[p] + bz[idx(im, j, k)]) * inv_h;
                        let curl_z =
                            (by[p] - by[idx(im, j, k)] - bx[p] + bx[idx(i, jm, k)]) * inv_h;
                        let pos = |c: usize| {
                            [
                                (i as f64 + E_OFFSET[c][0]) * h,
                                (j as f64 + E_OFFSET[c][1]) * h,
                                (k as f64 + E_OFFSET[c][2]) * h,
                            ]
                        };
                        let jx = currents.electric(pos(0), t_e)[1];
                        let jy = currents.electric(pos(1), t_e)[2];
                        let jz = currents.electric(pos(2), t_e)[3];
                        ex[q] += dt * (curl_x - jx);
                        ey[q] += dt * (curl_y - jy);
                        ez[q] += dt * (curl_z - jz);
                    }
                }
            };
            for_slabs(self.pool.as_deref(), slab, [ex, ey, ez], update);
        }
        {
            let [ex, ey, ez] = &self.e;
            let [bx, by, bz] = &mut self.b;
            let update = |k: usize, bx: &mut [f64], by: &mut [f64], bz: &mut [f64]| {
                let kp = (k + 1) % nz;
                for j in 0..ny {
                    let jp = (j + 1) % ny;
                    for i in 0..nx {
                        let ip = (i + 1) % nx;
                        let p = idx(i, j, k);
                        let q = i + nx * j;
                        let curl_x =
                            (ez[idx(i, jp, k)] - ez[p] - ey[idx(i, j, kp)] + ey[p]) * inv_h;
                        let curl_y =
                            (ex[idx(i, j, kp)] - ex[p] - ez[idx(ip, j, k)] + ez[p]) * inv_h;
                        let curl_z =
                            (ey[idx(ip, j, k)] - ey[p] - ex[idx(i, jp, k)] + ex[p]) * inv_h;
                        let pos = |c: usize| {
                            [
                                (i as f64 + B_OFFSET[c][0]) * h,
                                (j as f64 + B_OFFSET[c][1]) * h,
                                (k as f64 + B_OFFSET[c][2]) * h,
                            ]
                        };
                        let mx = currents.magnetic(pos(0), t_b)[1];
                        let my = currents.magnetic(pos(1), t_b)[2];
                        let mz = currents.magnetic(pos(2), t_b)[3];
                        bx[q] -= dt * (curl_x - mx);
                        by[q] -= dt * (curl_y - my);
                        bz[q] -= dt * (curl_z - mz);
                    }
                }
            };
            for_slabs(self.pool.as_deref(), slab, [bx, by, bz], update);
        }
        self.step += 1;
    }

    /// `½ Σ (|Ê|² + |B̂|²) h³`, each field at its own time level.
    pub fn energy(&self) -> f64 {
        let [nx, ny, nz] = self.grid.n;
        let slab = nx * ny;
        let partial = slab_map(self.pool.as_deref(), nz, |k| {
            let r = k * slab..(k + 1) * slab;
            let mut s = 0.0;
            for c in 0..3 {
                s += self.e[c][r.clone()].iter().map(|v| v * v).sum::<f64>();
                s += self.b[c][r.clone()].iter().map(|v| v * v).sum::<f64>();
            }
            s
        });
        0.5 * partial.iter().sum::<f64>() * self.grid.h.powi(3)
    }

    /// `div_h Ê - ρ` at every node, `ρ` taken at the time of `Ê`.
    pub fn gauss_electric(&self, currents: &dyn GridCurrents) -> Vec<f64> {
        let [nx, ny, nz] = self.grid.n;
        let h = self.grid.h;
        let t = self.time();
        let mut out = vec![0.0; self.grid.cells()];
        let [ex, ey, ez] = &self.e;
        let idx = |i: usize, j: usize, k: usize| i + nx * (j + ny * k);
        for_slab(self.pool.as_deref(), nx * ny, &mut out, |k, o| {
            let km = (k + nz - 1) % nz;
            for j in 0..ny {
                let jm = (j + ny - 1) % ny;
                for i in 0..nx {
                    let im = (i + nx - 1) % nx;
                    let p = idx(i, j, k);
                    let div = (ex[p] - ex[idx(im, j, k)] + ey[p] - ey[idx(i, jm, k)] + ez[p]
                        - ez[idx(i, j, km)])
                        / h;
                    let rho = currents.electric([i as f64 * h, j as f64 * h, k as f64 * h], t)[0];
                    o[i + nx * j] = div - rho;
                }
            }
        });
        out
    }

    /// `div_h B̂ + ρ̃` at every cell centre, `ρ̃` at the time of `B̂`.
    pub fn gauss_magnetic(&self, currents: &dyn GridCurrents) -> Vec<f64> {
        let [nx, ny, nz] = self.grid.n;
        let h = self.grid.h;
        let t = self.time() + 0.5 * self.dt;
        let mut out = vec![0.0; self.grid.cells()];
        let [bx, by, bz] = &self.b;
        let idx = |i: usize, j: usize, k: usize| i + nx * (j + ny * k);
        for_slab(self.pool.as_deref(), nx * ny, &mut out, |k, o| {
            let kp = (k + 1) % nz;
            for j in 0..ny {
                let jp = (j + 1) % ny;
                for i in 0..nx {
                    let ip = (i + 1) % nx;
                    let p = idx(i, j, k);
                    let div = (bx[idx(ip, j, k)] - bx[p] + by[idx(i, jp, k)] - by[p]
                        + bz[idx(i, j, kp)]
                        - bz[p])
                        / h;
                    let centre = [
                        (i as f64 + 0.5) * h,
                        (j as f64 + 0.5) * h,
                        (k as f64 + 0.5) * h,
                    ];
                    o[i + nx * j] = div + currents.magnetic(centre, t)[0];
                }
            }
        });
        out
    }

    pub fn diagnostics(&self, currents: &dyn GridCurrents) -> Diagnostics {
        let max = |v: Vec<f64>| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        Diagnostics {
            step: self.step,
            energy: self.energy(),
            max_div_e_minus_rho: max(self.gauss_electric(currents)),
            max_div_b_plus_rhomag: max(self.gauss_magnetic(currents)),
        }
    }

    /// Componentwise sum of two states on the same lattice and clock.
    pub fn superpose(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid || self.dt != other.dt || self.step != other.step {
            return Err(Error::InvalidArgument(
                "states live on different lattices or clocks".into(),
            ));
        }
        let mut out = self.clone();
        for c in 0..3 {
            for (a, b) in out.e[c].iter_mut().zip(&other.e[c]) {
                *a += b;
            }
            for (a, b) in out.b[c].iter_mut().zip(&other.b[c]) {
                *a += b;
            }
        }
        Ok(out)
    }

    /// Largest componentwise difference.
    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for c in 0..3 {
            for (a, b) in self.e[c].iter().zip(&other.e[c]) {
                m = m.max((a - b).abs());
            }
            for (a, b) in self.b[c].iter().zip(&other.b[c]) {
                m = m.max((a - b).abs());
            }
        }
        m
    }
}

fn for_slabs<F>(pool: Option<&ThreadPool>, slab: usize, out: [&mut Vec<f64>; 3], f: F)
where
    F: Fn(usize, &mut [f64], &mut [f64], &mut [f64]) + Sync,
{
    let [a, b, c] = out;
    match pool {
        None => {
            for (k, ((a, b), c)) in a
                .chunks_mut(slab)
                .zip(b.chunks_mut(slab))
                .zip(c.chunks_mut(slab))
                .enumerate()
            {
                f(k, a, b, c);
            }
        }
        Some(pool) => pool.install(|| {
            a.par_chunks_mut(slab)
                .zip(b.par_chunks_mut(slab))
                .zip(c.par_chunks_mut(slab))
                .enumerate()
                .for_each(|(k, ((a, b), c))| f(k, a, b, c));
        }),
    }
}

fn for_slab<F>(pool: Option<&ThreadPool>, slab: usize, out: &mut [f64], f: F)
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    match pool {
        None => out.chunks_mut(slab).enumerate().for_each(|(k, o)| f(k, o)),
        Some(pool) => pool.install(|| {
            out.par_chunks_mut(slab)
                .enumerate()
                .for_each(|(k, o)| f(k, o));
        }),
    }
}

fn slab_map<F>(pool: Option<&ThreadPool>, nz: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync,
{
    match pool {
        None => (0..nz).map(f).collect(),
        Some(pool) => pool.install(|| (0..nz).into_par_iter().map(&f).collect()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InitialConfig {
    #[default]
    Zero,
    PlaneWave {
        amplitude: f64,
        mode: usize,
        axis: PlaneWaveAxis,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurrentConfig {
    #[default]
    Zero,
    Uniform {
        electric: [f64; 3],
        magnetic: [f64; 3],
        omega: f64,
    },
}

impl CurrentConfig {
    pub fn build(&self) -> Box<dyn GridCurrents> {
        match *self {
            CurrentConfig::Zero => Box::new(NoCurrents),
            CurrentConfig::Uniform {
                electric,
                magnetic,
                omega,
            } => Box::new(UniformCurrents {
                electric,
                magnetic,
                omega,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Energy,
    Gauss,
    Fields,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Energy, OutputKind::Gauss]
}

fn one() -> usize {
    1
}

/// Simulation input as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub grid: GridSpec,
    pub dt: f64,
    pub steps: usize,
    #[serde(default)]
    pub initial: InitialConfig,
    #[serde(default)]
    pub currents: CurrentConfig,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    /// Diagnostics cadence in steps.
    #[serde(default = "one")]
    pub diagnostics_every: usize,
    /// Snapshot cadence when `fields` output is requested; initial and final
    /// states are always included.
    #[serde(default)]
    pub snapshot_every: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub diagnostics: Vec<Diagnostics>,
    pub snapshots: Vec<DualFieldState>,
    pub final_state: DualFieldState,
}

impl SimulationConfig {
    /// Builds the initial state; all input validation happens here, before
    /// any stepping.
    pub fn initial_state(&self, threads: usize) -> Result<DualFieldState> {
        if self.diagnostics_every == 0 || self.snapshot_every == Some(0) {
            return Err(Error::InvalidArgument(
                "output cadence must be at least 1".into(),
            ));
        }
        let mut s = DualFieldState::new(self.grid, self.dt)?.with_threads(threads)?;
        if let InitialConfig::PlaneWave {
            amplitude,
            mode,
            axis,
        } = self.initial
        {
            s.set_plane_wave(amplitude, mode, axis);
        }
        Ok(s)
    }

    pub fn run(&self, threads: usize) -> Result<SimulationOutput> {
        let mut state = self.initial_state(threads)?;
        let currents = self.currents.build();
        let fields = self.outputs.contains(&OutputKind::Fields);
        let mut diagnostics = vec![state.diagnostics(currents.as_ref())];
        let mut snapshots = Vec::new();
        if fields {
            snapshots.push(state.clone());
        }
        for n in 1..=self.steps {
            state.fdtd_step(currents.as_ref());
            if n % self.diagnostics_every == 0 || n == self.steps {
                diagnostics.push(state.diagnostics(currents.as_ref()));
            }
            let snap = self.snapshot_every.is_some_and(|e| n % e == 0) || n == self.steps;
            if fields && snap {
                snapshots.push(state.clone());
            }
        }
        Ok(SimulationOutput {
            diagnostics,
            snapshots,
            final_state: state,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cfl_boundary() {
        let g = GridSpec::cubic(4, 1.0);
        assert!(DualFieldState::new(g, g.max_dt()).is_ok());
        match DualFieldState::new(g, 0.6) {
            Err(Error::Cfl { max_dt, .. }) => assert!((max_dt - 1.0 / 3f64.sqrt()).abs() < 1e-15),
            other => panic!("expected CFL error, got {other:?}"),
        }
        assert!(DualFieldState::new(GridSpec::cubic(0, 1.0), 0.1).is_err());
        assert!(DualFieldState::new(g, -0.1).is_err());
    }

    #[test]
    fn zero_stays_zero() {
        let mut s = DualFieldState::new(GridSpec::cubic(4, 0.5), 0.25).unwrap();
        for _ in 0..5 {
            s.fdtd_step(&NoCurrents);
        }
        assert_eq!(s.energy(), 0.0);
        assert_eq!(s.step(), 5);
    }

    #[test]
    fn energy_is_quadratic() {
        let mut s = DualFieldState::new(GridSpec::cubic(6, 0.3), 0.1).unwrap();
        s.set_plane_wave(1.0, 1, PlaneWaveAxis::Y);
        let e1 = s.energy();
        s.set_plane_wave(2.0, 1, PlaneWaveAxis::Y);
        assert!((s.energy() - 4.0 * e1).abs() < 1e-12 * e1);
    }

    #[test]
    fn config_parses() {
        let cfg: SimulationConfig = serde_json::from_str(
            r#"{"grid":{"n":[8,8,8],"h":0.1},"dt":0.05,"steps":3,
                "initial":{"type":"plane_wave","amplitude":1.0,"mode":1,"axis":"z"},
                "currents":{"type":"uniform","electric":[0,0,1],"magnetic":[1,0,0],"omega":2.0},
                "outputs":["energy","fields"]}"#,
        )
        .unwrap();
        let out = cfg.run(1).unwrap();
        assert_eq!(out.diagnostics.len(), 4);
        assert_eq!(out.snapshots.len(), 2);
    }
}

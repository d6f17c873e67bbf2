use crate::bispinor::{compose, decompose, TensorMultiplet};
use crate::clifford::{g, gam, levi_civita, pauli, pauli_bar};
use crate::error::Result;
use crate::linalg::{max_abs, ComplexMatrix2, ComplexMatrix4, C64, I, ZERO};
use crate::tensor::{Antisym, Linear, PAIRS};

use super::{Jet, Mass, Point, Sampler};

/// Named residual components, in evaluation order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResidualSet {
    pub entries: Vec<(String, C64)>,
}

impl ResidualSet {
    fn push(&mut self, name: impl Into<String>, value: C64) {
        self.entries.push((name.into(), value));
    }

    fn push3(&mut self, name: &str, v: [C64; 3]) {
        for (axis, value) in ["x", "y", "z"].iter().zip(v) {
            self.push(format!("{name}_{axis}"), value);
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<C64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Labels a 16-component multiplet residual slot by slot.
    pub fn from_multiplet(prefix: &str, t: &TensorMultiplet) -> Self {
        let mut out = ResidualSet::default();
        out.push(format!("{prefix}scalar"), t.scalar);
        for (l, v) in t.vector.iter().enumerate() {
            out.push(format!("{prefix}vector_{l}"), *v);
        }
        out.push(format!("{prefix}pseudoscalar"), t.pseudoscalar);
        for (l, v) in t.pseudovector.iter().enumerate() {
            out.push(format!("{prefix}pseudovector_{l}"), *v);
        }
        for (s, &(m, n)) in PAIRS.iter().enumerate() {
            out.push(format!("{prefix}antisym_{m}{n}"), t.antisym[s]);
        }
        out
    }
}

fn eps(a: usize, b: usize, c: usize, d: usize) -> f64 {
    f64::from(levi_civita(a, b, c, d))
}

/// `∂^l V_l` for a lower-index vector; equals `∂_t V⁰ + div V`.
pub fn lorentz_condition(v: &Jet<[C64; 4]>) -> C64 {
    (0..4).map(|l| v.grad[l][l] * g(l, l)).sum()
}

/// `∂^n F_kn` for each `k`.
pub(crate) fn divergence_antisym(f: &Jet<Antisym>) -> [C64; 4] {
    std::array::from_fn(|k| (0..4).map(|n| f.grad[n].get(k, n) * g(n, n)).sum())
}

/// `½ ε_k^{cmn} ∂_c F_mn`.
fn dual_divergence(f: &Jet<Antisym>) -> [C64; 4] {
    std::array::from_fn(|k| {
        let mut acc = ZERO;
        for c in 0..4 {
            for (m, n) in PAIRS {
                // the ½ cancels against the two orderings of (m, n)
                let e = eps(k, c, m, n);
                if e != 0.0 {
                    acc += f.grad[c].get(m, n) * (g(k, k) * e);
                }
            }
        }
        acc
    })
}

/// `∂_m V_n - ∂_n V_m`.
pub(crate) fn curl4(v: &Jet<[C64; 4]>) -> Antisym {
    Antisym(std::array::from_fn(|s| {
        let (m, n) = PAIRS[s];
        v.grad[m][n] - v.grad[n][m]
    }))
}

/// `ε_mn^{cl} ∂_c V_l`.
pub(crate) fn dual_curl4(v: &Jet<[C64; 4]>) -> Antisym {
    Antisym(std::array::from_fn(|s| {
        let (m, n) = PAIRS[s];
        let mut acc = ZERO;
        for c in 0..4 {
            for l in 0..4 {
                let e = eps(m, n, c, l);
                if e != 0.0 {
                    acc += v.grad[c][l] * (g(m, m) * g(n, n) * e);
                }
            }
        }
        acc
    }))
}

/// Massive Dirac–Kähler tensor system at one jet, all indices lowered:
///
/// ```text
/// scalar        ∂^lΦ_l + mΦ
/// pseudoscalar  ∂^lΦ̃_l + mΦ̃
/// vector_k      ∂_kΦ + ∂^nΦ_kn - mΦ_k
/// pseudovector  ∂_kΦ̃ - ½ε_k^{cmn}∂_cΦ_mn - mΦ̃_k
/// antisym_mn    ∂_mΦ_n - ∂_nΦ_m + ε_mn^{cl}∂_cΦ̃_l - mΦ_mn
/// ```
pub fn dk_residual_jet(j: &Jet<TensorMultiplet>, m: f64) -> TensorMultiplet {
    let v = &j.value;
    let vec = j.map(|t| t.vector);
    let pvec = j.map(|t| t.pseudovector);
    let f = j.map(|t| t.antisym);
    let div_f = divergence_antisym(&f);
    let ddiv_f = dual_divergence(&f);
    TensorMultiplet {
        scalar: lorentz_condition(&vec) + v.scalar * m,
        pseudoscalar: lorentz_condition(&pvec) + v.pseudoscalar * m,
        vector: std::array::from_fn(|k| j.grad[k].scalar + div_f[k] - v.vector[k] * m),
        pseudovector: std::array::from_fn(|k| {
            j.grad[k].pseudoscalar - ddiv_f[k] - v.pseudovector[k] * m
        }),
        antisym: curl4(&vec) + dual_curl4(&pvec) - v.antisym * m,
    }
}

pub fn dk_residual<S: Sampler<TensorMultiplet> + ?Sized>(
    f: &S,
    m: Mass,
    x: &Point,
) -> TensorMultiplet {
    dk_residual_jet(&f.jet(x), m.value())
}

/// `(iγ^a∂_a - m) U` as a 4×4 matrix.
pub fn spinor_residual_jet(j: &Jet<TensorMultiplet>, m: f64) -> ComplexMatrix4 {
    let mut out = compose(&j.value).0 * C64::new(-m, 0.0);
    for a in 0..4 {
        out += gam(a) * compose(&j.grad[a]).0 * I;
    }
    out
}

/// The four 2-spinor equations, evaluated block by block:
/// `[(A) iσ^a∂_aξ - mH, (B) iσ̄^a∂_aη - mΔ, (A') iσ̄^a∂_aH - mξ, (B') iσ^a∂_aΔ - mη]`.
pub fn spinor_block_residuals(j: &Jet<TensorMultiplet>, m: f64) -> [ComplexMatrix2; 4] {
    let u = compose(&j.value);
    let du: [_; 4] = std::array::from_fn(|a| compose(&j.grad[a]));
    let mm = C64::new(-m, 0.0);
    let mut out = [u.h() * mm, u.delta() * mm, u.xi() * mm, u.eta() * mm];
    for a in 0..4 {
        out[0] += pauli(a) * du[a].xi() * I;
        out[1] += pauli_bar(a) * du[a].eta() * I;
        out[2] += pauli_bar(a) * du[a].h() * I;
        out[3] += pauli(a) * du[a].delta() * I;
    }
    out
}

/// Reorders a tensor residual into the slot convention produced by
/// `decompose((iγ∂ - m)U)`: scalar and pseudoscalar equations flip sign.
pub fn tensor_to_spinor_order(t: &TensorMultiplet) -> TensorMultiplet {
    TensorMultiplet {
        scalar: -t.scalar,
        pseudoscalar: -t.pseudoscalar,
        ..*t
    }
}

/// Joint evaluation of the 2-spinor and tensor forms of the massive system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    /// Largest entry over the four block equations.
    pub spinor_max: f64,
    /// Largest entry of the tensor residual.
    pub tensor_max: f64,
    /// `|decompose(spinor residual) - reordered tensor residual|`; zero means
    /// the two systems are the same equations.
    pub mismatch: f64,
}

impl EquivalenceReport {
    /// Both vanish, or neither does.
    pub fn jointly_consistent(&self, tol: f64) -> bool {
        (self.spinor_max < tol) == (self.tensor_max < tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.spinor_max.max(self.tensor_max)
    }
}

pub fn spinor_tensor_equivalence<S: Sampler<TensorMultiplet> + ?Sized>(
    f: &S,
    m: Mass,
    x: &Point,
) -> EquivalenceReport {
    let jet = f.jet(x);
    let m = m.value();
    let blocks = spinor_block_residuals(&jet, m);
    let spinor_max = blocks.iter().map(max_abs).fold(0.0, f64::max);
    let tensor = dk_residual_jet(&jet, m);
    let full = spinor_residual_jet(&jet, m);
    let mapped = decompose(&crate::bispinor::Bispinor(full));
    EquivalenceReport {
        spinor_max,
        tensor_max: tensor.max_abs(),
        mismatch: (mapped - tensor_to_spinor_order(&tensor)).max_abs(),
    }
}

/// `(A') iσ̄^a∂_aH - ξ` and `(B') iσ^a∂_aΔ - η`: the massless potential
/// equations, with the potential in the vector (or pseudovector) slot and
/// the strength in the antisymmetric slot.
pub fn massless_potential_spinor_residual<S: Sampler<TensorMultiplet> + ?Sized>(
    f: &S,
    x: &Point,
) -> f64 {
    let b = spinor_block_residuals(&f.jet(x), 1.0);
    max_abs(&b[2]).max(max_abs(&b[3]))
}

/// Proca system for a massive vector:
/// `∂^lA_l`, `∂^lF_kl - mA_k`, `ε_k^{cmn}∂_cF_mn`, `∂_dA_k - ∂_kA_d - mF_dk`.
pub fn proca_vector_residual<A, F>(a: &A, f: &F, m: Mass, x: &Point) -> Result<ResidualSet>
where
    A: Sampler<[C64; 4]> + ?Sized,
    F: Sampler<Antisym> + ?Sized,
{
    let m = m.require_positive()?;
    let a = a.jet(x);
    let f = f.jet(x);
    let mut out = ResidualSet::default();
    out.push("lorentz", lorentz_condition(&a));
    let div = divergence_antisym(&f);
    for k in 0..4 {
        out.push(format!("field_{k}"), div[k] - a.value[k] * m);
    }
    let bianchi = dual_divergence(&f);
    for (k, b) in bianchi.iter().enumerate() {
        out.push(format!("bianchi_{k}"), b * 2.0);
    }
    let c = curl4(&a) - f.value * m;
    for (s, &(d, k)) in PAIRS.iter().enumerate() {
        out.push(format!("strength_{d}{k}"), c[s]);
    }
    Ok(out)
}

/// Massive pseudovector:
/// `∂^lÃ_l`, `∂^lF_kl`, `½ε_k^{cmn}∂_cF_mn + mÃ_k`, `ε_dk^{cl}∂_cÃ_l - mF_dk`.
pub fn pseudovector_proca_residual<A, F>(at: &A, f: &F, m: Mass, x: &Point) -> Result<ResidualSet>
where
    A: Sampler<[C64; 4]> + ?Sized,
    F: Sampler<Antisym> + ?Sized,
{
    let m = m.require_positive()?;
    let a = at.jet(x);
    let f = f.jet(x);
    let mut out = ResidualSet::default();
    out.push("lorentz", lorentz_condition(&a));
    let div = divergence_antisym(&f);
    for (k, d) in div.iter().enumerate() {
        out.push(format!("divergence_{k}"), *d);
    }
    let ddiv = dual_divergence(&f);
    for k in 0..4 {
        out.push(format!("field_{k}"), ddiv[k] + a.value[k] * m);
    }
    let c = dual_curl4(&a) - f.value * m;
    for (s, &(d, k)) in PAIRS.iter().enumerate() {
        out.push(format!("strength_{d}{k}"), c[s]);
    }
    Ok(out)
}

/// Spin-0 scalar sector `{Φ, Φ_l}`:
/// `∂^lΦ_l + mΦ`, `∂_kΦ - mΦ_k`, and the compatibility `∂_mΦ_n - ∂_nΦ_m`.
pub fn scalar_sector_residual<S: Sampler<TensorMultiplet> + ?Sized>(
    f: &S,
    m: Mass,
    x: &Point,
) -> ResidualSet {
    let j = f.jet(x);
    let m = m.value();
    let v = j.map(|t| t.vector);
    let mut out = ResidualSet::default();
    out.push("divergence", lorentz_condition(&v) + j.value.scalar * m);
    for k in 0..4 {
        out.push(
            format!("gradient_{k}"),
            j.grad[k].scalar - j.value.vector[k] * m,
        );
    }
    let c = curl4(&v);
    for (s, &(a, b)) in PAIRS.iter().enumerate() {
        out.push(format!("curl_{a}{b}"), c[s]);
    }
    out
}

/// Pseudoscalar sector `{Φ̃, Φ̃_l}`:
/// `∂^lΦ̃_l + mΦ̃`, `∂_kΦ̃ - mΦ̃_k`, and `ε_mn^{cl}∂_cΦ̃_l`.
pub fn pseudoscalar_sector_residual<S: Sampler<TensorMultiplet> + ?Sized>(
    f: &S,
    m: Mass,
    x: &Point,
) -> ResidualSet {
    let j = f.jet(x);
    let m = m.value();
    let v = j.map(|t| t.pseudovector);
    let mut out = ResidualSet::default();
    out.push(
        "divergence",
        lorentz_condition(&v) + j.value.pseudoscalar * m,
    );
    for k in 0..4 {
        out.push(
            format!("gradient_{k}"),
            j.grad[k].pseudoscalar - j.value.pseudovector[k] * m,
        );
    }
    let c = dual_curl4(&v);
    for (s, &(a, b)) in PAIRS.iter().enumerate() {
        out.push(format!("dual_curl_{a}{b}"), c[s]);
    }
    out
}

pub(crate) fn div3(v: &Jet<[C64; 3]>) -> C64 {
    v.grad[1][0] + v.grad[2][1] + v.grad[3][2]
}

pub(crate) fn curl3(v: &Jet<[C64; 3]>) -> [C64; 3] {
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        v.grad[j + 1][k] - v.grad[k + 1][j]
    })
}

pub(crate) fn grad3(s: &Jet<C64>) -> [C64; 3] {
    [s.grad[1], s.grad[2], s.grad[3]]
}

/// Lower-index 4-vector jet → (time component, contravariant 3-vector).
pub(crate) fn split4(v: &Jet<[C64; 4]>) -> (Jet<C64>, Jet<[C64; 3]>) {
    (v.map(|a| a[0]), v.map(|a| [-a[1], -a[2], -a[3]]))
}

fn sub3(a: [C64; 3], b: [C64; 3]) -> [C64; 3] {
    std::array::from_fn(|i| a[i] - b[i])
}

fn add3(a: [C64; 3], b: [C64; 3]) -> [C64; 3] {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Vector-photon system in 3-vector form. `a` and `j` are lower-index
/// 4-vectors (`A⁰ = A_0`, `A^k = -A_k`).
///
/// ```text
/// gauss_E      div E - j⁰
/// gauss_B      div B
/// faraday      rot E + ∂_t B
/// ampere       rot B - ∂_t E - j
/// lorentz      ∂_t A⁰ + div A
/// potential_E  -∂_t A - grad A⁰ - E
/// potential_B  rot A - B
/// continuity   ∂_t j⁰ + div j
/// ```
pub fn massless_maxwell_residual(
    e: &dyn Sampler<[C64; 3]>,
    b: &dyn Sampler<[C64; 3]>,
    a: Option<&dyn Sampler<[C64; 4]>>,
    j: Option<&dyn Sampler<[C64; 4]>>,
    x: &Point,
) -> ResidualSet {
    let e = e.jet(x);
    let b = b.jet(x);
    let (rho, jv) = match j {
        Some(j) => {
            let jj = j.jet(x);
            let (r, v) = split4(&jj);
            (r.value, Some((v.value, lorentz_condition(&jj))))
        }
        None => (ZERO, None),
    };
    let jvec = jv.map(|(v, _)| v).unwrap_or([ZERO; 3]);
    let mut out = ResidualSet::default();
    out.push("gauss_E", div3(&e) - rho);
    out.push("gauss_B", div3(&b));
    out.push3("faraday", add3(curl3(&e), b.grad[0]));
    out.push3("ampere", sub3(sub3(curl3(&b), e.grad[0]), jvec));
    if let Some(a) = a {
        let (a0, av) = split4(&a.jet(x));
        out.push("lorentz", a0.grad[0] + div3(&av));
        let pe = sub3(sub3(av.grad[0].map(|z| -z), grad3(&a0)), e.value);
        out.push3("potential_E", pe);
        out.push3("potential_B", sub3(curl3(&av), b.value));
    }
    if let Some((_, cont)) = jv {
        out.push("continuity", cont);
    }
    out
}

/// Pseudovector-photon system in 3-vector form, magnetic source `j̃`:
///
/// ```text
/// gauss_E      div E~
/// gauss_B      div B~ + j̃⁰
/// faraday      rot E~ + ∂_t B~ - j̃
/// ampere       rot B~ - ∂_t E~
/// lorentz      ∂_t Ã⁰ + div Ã
/// potential_E  rot Ã - E~
/// potential_B  ∂_t Ã + grad Ã⁰ - B~
/// continuity   ∂_t j̃⁰ + div j̃
/// ```
///
/// The sign of the last potential relation is the one compatible with
/// `F~ = (dÃ)*` and `B = -(F_23, F_31, F_12)`.
pub fn massless_pseudovector_residual(
    e: &dyn Sampler<[C64; 3]>,
    b: &dyn Sampler<[C64; 3]>,
    at: Option<&dyn Sampler<[C64; 4]>>,
    jt: Option<&dyn Sampler<[C64; 4]>>,
    x: &Point,
) -> ResidualSet {
    let e = e.jet(x);
    let b = b.jet(x);
    let (rho, jv) = match jt {
        Some(j) => {
            let jj = j.jet(x);
            let (r, v) = split4(&jj);
            (r.value, Some((v.value, lorentz_condition(&jj))))
        }
        None => (ZERO, None),
    };
    let jvec = jv.map(|(v, _)| v).unwrap_or([ZERO; 3]);
    let mut out = ResidualSet::default();
    out.push("gauss_E", div3(&e));
    out.push("gauss_B", div3(&b) + rho);
    out.push3("faraday", sub3(add3(curl3(&e), b.grad[0]), jvec));
    out.push3("ampere", sub3(curl3(&b), e.grad[0]));
    if let Some(a) = at {
        let (a0, av) = split4(&a.jet(x));
        out.push("lorentz", a0.grad[0] + div3(&av));
        out.push3("potential_E", sub3(curl3(&av), e.value));
        out.push3("potential_B", sub3(add3(av.grad[0], grad3(&a0)), b.value));
    }
    if let Some((_, cont)) = jv {
        out.push("continuity", cont);
    }
    out
}

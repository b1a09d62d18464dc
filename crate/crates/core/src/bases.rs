//! Measurement bases: parametric single-qubit bases, the GHZ basis and the
//! GHZ-W ("GW") basis, plus verification and basis-level statistics.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::qcore::{e2_pair, roi, tensor_product, PureState};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Angles of a single-qubit basis `{cos α|0> + e^{iβ} sin α|1>, ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitBasisParams {
    pub alpha: f64,
    pub beta: f64,
}

impl QubitBasisParams {
    /// `alpha ∈ [0, π/2)`, `beta ∈ [0, π)`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..FRAC_PI_2).contains(&alpha) {
            return Err(Error::domain(format!("alpha = {alpha} outside [0, π/2)")));
        }
        if !(0.0..PI).contains(&beta) {
            return Err(Error::domain(format!("beta = {beta} outside [0, π)")));
        }
        Ok(Self { alpha, beta })
    }
}

/// Ordered set of measurement vectors on a `dim`-dimensional subsystem.
///
/// Vectors are stored as given; orthonormality is checked by
/// [`verify_basis`], not at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBasis {
    label: String,
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl ProjectiveBasis {
    pub fn new(label: impl Into<String>, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::domain(format!(
                "basis vectors must have length 2^n, got {dim}"
            )));
        }
        if vectors.len() != dim || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::domain(format!(
                "a basis of C^{dim} needs {dim} vectors of length {dim}"
            )));
        }
        Ok(Self {
            label: label.into(),
            dim,
            vectors,
        })
    }

    /// Resolves a command-line label: `ghz`, `gw`, `pauli-x`, `hat`,
    /// `computational`, `real:<alpha>` or `complex:<alpha>,<beta>`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        match label {
            "ghz" => return Ok(ghz_basis()),
            "gw" => return Ok(gw_basis()),
            "pauli-x" => return complex_qubit_basis(FRAC_PI_4, 0.0).map(|b| b.relabel("pauli-x")),
            "hat" => return complex_qubit_basis(FRAC_PI_4, FRAC_PI_2).map(|b| b.relabel("hat")),
            "computational" | "pauli-z" => return Ok(computational_basis(1)),
            _ => {}
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("cannot parse angle '{s}' in basis '{label}'")))
        };
        if let Some(rest) = label.strip_prefix("real:") {
            return real_qubit_basis(parse(rest)?);
        }
        if let Some(rest) = label.strip_prefix("complex:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::domain(format!("expected complex:<alpha>,<beta>, got '{label}'")))?;
            return complex_qubit_basis(parse(a)?, parse(b)?);
        }
        Err(Error::domain(format!("unknown basis label '{label}'")))
    }

    fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &[Complex64] {
        &self.vectors[k]
    }

    /// Element `k` as a normalized state (fails if the stored vector is not).
    pub fn element(&self, k: usize) -> Result<PureState> {
        PureState::new(self.vectors[k].clone())
    }

    /// Multiplies vector `k` by `factor`; used to build defective bases.
    pub fn scale_vector(&mut self, k: usize, factor: f64) {
        self.vectors[k].iter_mut().for_each(|a| *a *= factor);
    }
}

/// `{cos α|0> + sin α|1>, sin α|0> − cos α|1>}`, `α ∈ [0, π/2)`.
pub fn real_qubit_basis(alpha: f64) -> Result<ProjectiveBasis> {
    QubitBasisParams::new(alpha, 0.0)?;
    let (s, c) = alpha.sin_cos();
    ProjectiveBasis::new(
        format!("real:{alpha}"),
        vec![vec![re(c), re(s)], vec![re(s), re(-c)]],
    )
}

/// `|+k> = cos α|0> + e^{iβ} sin α|1>`, `|−k> = e^{−iβ} sin α|0> − cos α|1>`
/// with `α ∈ [0, π/4]`, `β ∈ [0, π)`.
pub fn complex_qubit_basis(alpha: f64, beta: f64) -> Result<ProjectiveBasis> {
    if !(0.0..=FRAC_PI_4).contains(&alpha) {
        return Err(Error::domain(format!("alpha = {alpha} outside [0, π/4]")));
    }
    QubitBasisParams::new(alpha, beta)?;
    Ok(parametric_qubit_basis(alpha, beta).relabel(&format!("complex:{alpha},{beta}")))
}

/// Same vectors as [`complex_qubit_basis`] without the range restriction;
/// used by the basis optimizer, which scans `α ∈ [0, π/2)`.
pub fn parametric_qubit_basis(alpha: f64, beta: f64) -> ProjectiveBasis {
    let (s, c) = alpha.sin_cos();
    let plus = vec![re(c), Complex64::from_polar(s, beta)];
    let minus = vec![Complex64::from_polar(s, -beta), re(-c)];
    ProjectiveBasis {
        label: format!("parametric:{alpha},{beta}"),
        dim: 2,
        vectors: vec![plus, minus],
    }
}

pub fn computational_basis(num_qubits: usize) -> ProjectiveBasis {
    let dim = 1usize << num_qubits;
    let vectors = (0..dim)
        .map(|k| (0..dim).map(|i| if i == k { re(1.0) } else { ZERO }).collect())
        .collect();
    ProjectiveBasis {
        label: "computational".into(),
        dim,
        vectors,
    }
}

/// The eight GHZ-type states, in the order
/// `|000>±|111>`, `|001>±|110>`, `|010>±|101>`, `|100>±|011>` (each over √2,
/// plus sign first).
pub fn ghz_basis() -> ProjectiveBasis {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut vectors = Vec::with_capacity(8);
    for (i, j) in [(0b000, 0b111), (0b001, 0b110), (0b010, 0b101), (0b100, 0b011)] {
        for sign in [1.0, -1.0] {
            let mut v = vec![ZERO; 8];
            v[i] = re(h);
            v[j] = re(sign * h);
            vectors.push(v);
        }
    }
    ProjectiveBasis {
        label: "ghz".into(),
        dim: 8,
        vectors,
    }
}

/// The GHZ-W basis: `G1..G5` then `W1..W3`.
///
/// `G_m = (|000> + a^{m-1}|110> + a^{2(m-1)}|101> + a^{3(m-1)}|011> +
/// a^{4(m-1)}|111>)/√5` with `a = exp(2πi/5)`, and
/// `W_m = (|100> + w^{m-1}|010> + w^{2(m-1)}|001>)/√3` with `w = exp(2πi/3)`.
pub fn gw_basis() -> ProjectiveBasis {
    let root = |n: u32, k: u32| Complex64::from_polar(1.0, 2.0 * PI * f64::from(k % n) / f64::from(n));
    let g = 1.0 / 5f64.sqrt();
    let w = 1.0 / 3f64.sqrt();
    let mut vectors = Vec::with_capacity(8);
    for m in 0..5u32 {
        let mut v = vec![ZERO; 8];
        v[0b000] = re(g);
        for (power, index) in [(1, 0b110), (2, 0b101), (3, 0b011), (4, 0b111)] {
            v[index] = g * root(5, power * m);
        }
        vectors.push(v);
    }
    for m in 0..3u32 {
        let mut v = vec![ZERO; 8];
        v[0b100] = re(w);
        v[0b010] = w * root(3, m);
        v[0b001] = w * root(3, 2 * m);
        vectors.push(v);
    }
    ProjectiveBasis {
        label: "gw".into(),
        dim: 8,
        vectors,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisVerification {
    /// `max |<v_i|v_j> − δ_ij|`
    pub orthonormality_residual: f64,
    /// Largest entry modulus of `Σ |v_i><v_i| − I`.
    pub completeness_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

pub fn verify_basis(basis: &ProjectiveBasis, tol: f64) -> Result<BasisVerification> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let n = basis.dim;
    let v = &basis.vectors;
    let mut ortho = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let ip: Complex64 = v[i].iter().zip(&v[j]).map(|(a, b)| a.conj() * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((ip - target).norm());
        }
    }
    let mut complete = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let s: Complex64 = v.iter().map(|x| x[r] * x[c].conj()).sum();
            let target = if r == c { 1.0 } else { 0.0 };
            complete = complete.max((s - target).norm());
        }
    }
    Ok(BasisVerification {
        orthonormality_residual: ortho,
        completeness_residual: complete,
        tol,
        passed: ortho < tol && complete < tol,
    })
}

/// Mean pairwise `E2` (qubits 0 and 1) over the elements of a three-qubit
/// basis.
pub fn basis_average_scp(basis: &ProjectiveBasis) -> Result<f64> {
    if basis.dim != 8 {
        return Err(Error::domain("average SCP is defined for three-qubit bases"));
    }
    let mut total = 0.0;
    for k in 0..basis.len() {
        total += e2_pair(&basis.element(k)?, 0, 1)?;
    }
    Ok(total / basis.len() as f64)
}

/// Mean robustness of imaginarity of the element projectors.
pub fn basis_average_roi(basis: &ProjectiveBasis) -> Result<f64> {
    let mut total = 0.0;
    for k in 0..basis.len() {
        total += roi(&basis.element(k)?.projector());
    }
    Ok(total / basis.len() as f64)
}

/// Parameters of a GHZ-SLOCC-class state
/// `√K (cos δ|aaa> + e^{iφ} sin δ|φA φB φC>)` with
/// `|φX> = cos θ|a> + sin θ|a⊥>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SloccGhzParams {
    pub delta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub varphi: f64,
    pub k: f64,
}

impl SloccGhzParams {
    pub fn new(delta: f64, theta1: f64, theta2: f64, theta3: f64, varphi: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= FRAC_PI_4) {
            return Err(Error::domain(format!("delta = {delta} outside (0, π/4]")));
        }
        for t in [theta1, theta2, theta3] {
            if !(t > 0.0 && t <= FRAC_PI_2) {
                return Err(Error::domain(format!("theta = {t} outside (0, π/2]")));
            }
        }
        if !(0.0..2.0 * PI).contains(&varphi) {
            return Err(Error::domain(format!("varphi = {varphi} outside [0, 2π)")));
        }
        let k = 1.0
            / (1.0
                + 2.0 * delta.cos() * delta.sin() * theta1.cos() * theta2.cos() * theta3.cos()
                    * varphi.cos());
        Ok(Self {
            delta,
            theta1,
            theta2,
            theta3,
            varphi,
            k,
        })
    }

    /// The state with `|a> = |0>` on every qubit.
    pub fn state(&self) -> Result<PureState> {
        let phi = |t: f64| vec![re(t.cos()), re(t.sin())];
        let zero = vec![re(1.0), ZERO];
        let first = kron3(&zero, &zero, &zero);
        let second = kron3(&phi(self.theta1), &phi(self.theta2), &phi(self.theta3));
        let phase = Complex64::from_polar(self.delta.sin(), self.varphi);
        let sk = self.k.sqrt();
        let amps = first
            .iter()
            .zip(&second)
            .map(|(x, y)| sk * (self.delta.cos() * x + phase * y))
            .collect();
        PureState::new(amps)
    }
}

/// Local vectors of a two-term decomposition `cos δ|a1 b1 c1> + sin δ|a2 b2 c2>`
/// of `G1`, with `b = c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G1Vectors {
    pub a1: [f64; 2],
    pub a2: [f64; 2],
    pub b1: [f64; 2],
    pub b2: [f64; 2],
}

impl G1Vectors {
    /// The vectors as printed alongside the construction, including its
    /// `a1`/`a2` entries, which do not reproduce `G1`.
    pub fn as_printed() -> Self {
        let s5 = 5f64.sqrt();
        let (sd, cd) = g1_delta();
        Self {
            a1: [0.5 * (1.0 - 1.0 / s5) / sd, (1.0 / s5) / sd],
            a2: [0.5 * (1.0 + 1.0 / s5) / cd, (1.0 / s5) / cd],
            b1: [1.0 / (s5 * cd), (1.0 + s5) / (2.0 * s5 * cd)],
            b2: [1.0 / (s5 * sd), (1.0 - s5) / (2.0 * s5 * sd)],
        }
    }

    /// The unique `a1`, `a2` consistent with the printed `δ`, `b`, `c`:
    /// `a1 = sec δ [(1/√5)|0> + ½(1+1/√5)|1>]`,
    /// `a2 = csc δ [(1/√5)|0> − ½(1−1/√5)|1>]`.
    pub fn exact() -> Self {
        let s5 = 5f64.sqrt();
        let (sd, cd) = g1_delta();
        let printed = Self::as_printed();
        Self {
            a1: [(1.0 / s5) / cd, 0.5 * (1.0 + 1.0 / s5) / cd],
            a2: [(1.0 / s5) / sd, -0.5 * (1.0 - 1.0 / s5) / sd],
            ..printed
        }
    }
}

/// `(sin δ, cos δ)` with `cos δ = √((5+√5)/10)`.
fn g1_delta() -> (f64, f64) {
    let s5 = 5f64.sqrt();
    (((5.0 - s5) / 10.0).sqrt(), ((5.0 + s5) / 10.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G1DecompositionCheck {
    pub cos_delta: f64,
    pub sin_delta: f64,
    /// `max |(cos δ|a1 b1 b1> + sin δ|a2 b2 b2>)_i − (G1)_i|`
    pub decomposition_residual: f64,
    /// Largest deviation of any local vector norm from 1.
    pub term_norm_residual: f64,
    /// `cos θ1 = <a1|a2>` implied by the vectors.
    pub cos_theta1: f64,
    /// Residual, modulo global phase, of `(A⊗I⊗I)(U_A⊗U_B⊗U_C)|GHZ>` after
    /// renormalization, with `A` built from `δ` and `θ1`.
    pub povm_residual: f64,
    /// `E2` of the reconstructed state.
    pub reconstructed_e2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G1SloccReport {
    /// Using [`G1Vectors::exact`].
    pub exact: G1DecompositionCheck,
    /// Using [`G1Vectors::as_printed`] and the printed `cos θ1 = 2/√5`.
    pub printed: G1DecompositionCheck,
    pub passed: bool,
}

/// Checks the two-term GHZ-SLOCC decomposition of `G1` and the local POVM
/// that produces it from a rotated GHZ state.
pub fn verify_g1_slocc_decomposition() -> Result<G1SloccReport> {
    let exact = check_g1_vectors(&G1Vectors::exact(), None)?;
    let printed = check_g1_vectors(&G1Vectors::as_printed(), Some(2.0 / 5f64.sqrt()))?;
    Ok(G1SloccReport {
        passed: exact.decomposition_residual < 1e-12
            && exact.povm_residual < 1e-12
            && exact.term_norm_residual < 1e-12,
        exact,
        printed,
    })
}

fn check_g1_vectors(v: &G1Vectors, cos_theta1: Option<f64>) -> Result<G1DecompositionCheck> {
    let (sd, cd) = g1_delta();
    let g1 = gw_basis().element(0)?;
    let cv = |x: [f64; 2]| vec![re(x[0]), re(x[1])];
    let (a1, a2, b1, b2) = (cv(v.a1), cv(v.a2), cv(v.b1), cv(v.b2));

    let t1 = kron3(&a1, &b1, &b1);
    let t2 = kron3(&a2, &b2, &b2);
    let recon: Vec<Complex64> = t1.iter().zip(&t2).map(|(x, y)| cd * x + sd * y).collect();
    let decomposition_residual = max_deviation(&recon, g1.amplitudes());
    let term_norm_residual = [v.a1, v.a2, v.b1, v.b2]
        .iter()
        .map(|x| (x[0].hypot(x[1]) - 1.0).abs())
        .fold(0.0, f64::max);

    // U maps |0> -> |x1>, |1> -> |x1⊥>; the complement of a1 is oriented
    // towards a2 and b2 = c2 serve as the complements of b1 = c1.
    let dot = |x: [f64; 2], y: [f64; 2]| x[0] * y[0] + x[1] * y[1];
    let mut a1_perp = [-v.a1[1], v.a1[0]];
    if dot(a1_perp, v.a2) < 0.0 {
        a1_perp = [-a1_perp[0], -a1_perp[1]];
    }
    let cos_theta1 = cos_theta1.unwrap_or_else(|| dot(v.a1, v.a2));
    let sin_theta1 = (1.0 - cos_theta1 * cos_theta1).max(0.0).sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let ap = cv(a1_perp);
    let rotated_ghz: Vec<Complex64> = kron3(&a1, &b1, &b1)
        .iter()
        .zip(&kron3(&ap, &b2, &b2))
        .map(|(x, y)| h * (x + y))
        .collect();
    // A = cos δ|a1><a1| + sin δ cos θ1 |a1><a1⊥| + sin δ sin θ1 |a1⊥><a1⊥|
    let outer = |x: &[Complex64], y: &[Complex64]| {
        [x[0] * y[0].conj(), x[0] * y[1].conj(), x[1] * y[0].conj(), x[1] * y[1].conj()]
    };
    let m1 = outer(&a1, &a1);
    let m2 = outer(&a1, &ap);
    let m3 = outer(&ap, &ap);
    let a_op: Vec<Complex64> = (0..4)
        .map(|k| cd * m1[k] + sd * cos_theta1 * m2[k] + sd * sin_theta1 * m3[k])
        .collect();
    let mut out = vec![ZERO; 8];
    for (idx, slot) in out.iter_mut().enumerate() {
        let r = idx >> 2;
        let rest = idx & 3;
        *slot = (0..2).map(|c| a_op[r * 2 + c] * rotated_ghz[(c << 2) | rest]).sum();
    }
    let produced = PureState::from_unnormalized(out)?;
    let overlap = g1.inner(&produced);
    let phase = if overlap.norm() > 0.0 { overlap.conj() / overlap.norm() } else { re(1.0) };
    let aligned: Vec<Complex64> = produced.amplitudes().iter().map(|x| x * phase).collect();
    let povm_residual = max_deviation(&aligned, g1.amplitudes());

    let reconstructed_e2 = e2_pair(&PureState::from_unnormalized(recon)?, 0, 1)?;
    Ok(G1DecompositionCheck {
        cos_delta: cd,
        sin_delta: sd,
        decomposition_residual,
        term_norm_residual,
        cos_theta1,
        povm_residual,
        reconstructed_e2,
    })
}

fn kron3(a: &[Complex64], b: &[Complex64], c: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in a {
        for y in b {
            for z in c {
                out.push(x * y * z);
            }
        }
    }
    out
}

fn max_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Product-state basis `{|x y z>}` built from single-qubit bases; handy for
/// tests of the basis statistics.
pub fn product_basis(
    label: &str,
    a: &ProjectiveBasis,
    b: &ProjectiveBasis,
    c: &ProjectiveBasis,
) -> Result<ProjectiveBasis> {
    let mut vectors = Vec::new();
    for x in a.vectors() {
        for y in b.vectors() {
            for z in c.vectors() {
                let xy = tensor_product(&PureState::from_unnormalized(x.clone())?, &PureState::from_unnormalized(y.clone())?)?;
                let xyz = tensor_product(&xy, &PureState::from_unnormalized(z.clone())?)?;
                vectors.push(xyz.amplitudes().to_vec());
            }
        }
    }
    ProjectiveBasis::new(label, vectors)
}

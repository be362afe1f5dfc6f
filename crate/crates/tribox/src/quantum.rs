//! Born-rule box generation from qubit states: density operators, projective
//! spin measurements, the named three-qubit state families and the six-qubit
//! block construction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::behavior::{index, Behavior, BoxError, QUANTUM_TOL};

type CMat = DMatrix<Complex64>;

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_FLOOR: f64 = -1e-10;
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("invalid density operator: {0}")]
    InvalidState(String),
    #[error("invalid measurement settings: {0}")]
    InvalidSettings(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Box(#[from] BoxError),
}

/// A validated density operator on n <= 6 qubits.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    mat: CMat,
    qubits: usize,
}

impl DensityOperator {
    pub fn new(mat: CMat) -> Result<Self, QuantumError> {
        let dim = mat.nrows();
        if mat.ncols() != dim || !dim.is_power_of_two() || !(2..=64).contains(&dim) {
            return Err(QuantumError::InvalidState(format!(
                "dimension {dim}x{} is not a power-of-two square up to 64",
                mat.ncols()
            )));
        }
        let qubits = dim.trailing_zeros() as usize;
        let mut herm = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                herm = herm.max((mat[(r, c)] - mat[(c, r)].conj()).norm());
            }
        }
        if herm > HERMITICITY_TOL {
            return Err(QuantumError::InvalidState(format!(
                "hermiticity violated by {herm:.3e}"
            )));
        }
        let tr: Complex64 = (0..dim).map(|r| mat[(r, r)]).sum();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(QuantumError::InvalidState(format!("trace is {tr}")));
        }
        let eig = mat.clone().symmetric_eigenvalues();
        let min_eig = eig.iter().fold(f64::INFINITY, |a, v| a.min(*v));
        if min_eig < PSD_FLOOR {
            return Err(QuantumError::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(DensityOperator { mat, qubits })
    }

    pub fn from_pure(state: &DVector<Complex64>) -> Result<Self, QuantumError> {
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QuantumError::InvalidState(format!(
                "pure state norm {norm} is not 1"
            )));
        }
        let mat = state * state.adjoint();
        Self::new(mat)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.mat
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .filter(|v| **v > tol)
            .count()
    }
}

/// Six measurement directions, one pair per party, each a unit 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSettings {
    pub a: [[f64; 3]; 2],
    pub b: [[f64; 3]; 2],
    pub c: [[f64; 3]; 2],
}

impl MeasurementSettings {
    pub fn new(a: [[f64; 3]; 2], b: [[f64; 3]; 2], c: [[f64; 3]; 2]) -> Result<Self, QuantumError> {
        for (party, dirs) in [('a', &a), ('b', &b), ('c', &c)] {
            for (idx, d) in dirs.iter().enumerate() {
                let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                if (norm - 1.0).abs() > UNIT_TOL {
                    return Err(QuantumError::InvalidSettings(format!(
                        "direction {party}{idx} has norm {norm}"
                    )));
                }
            }
        }
        Ok(MeasurementSettings { a, b, c })
    }
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn identity2() -> CMat {
    CMat::identity(2, 2)
}

/// n̂·σ with σy = [[0, -i], [i, 0]].
fn bloch_observable(d: [f64; 3]) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            c64(d[2], 0.0),
            c64(d[0], -d[1]),
            c64(d[0], d[1]),
            c64(-d[2], 0.0),
        ],
    )
}

/// Projector onto outcome (-1)^m of the spin observable along d.
fn projector(d: [f64; 3], m: usize) -> CMat {
    let sign = if m == 0 { 1.0 } else { -1.0 };
    (identity2() + bloch_observable(d).scale(sign)).scale(0.5)
}

fn trace_product(rho: &CMat, op: &CMat) -> f64 {
    let dim = rho.nrows();
    let mut acc = Complex64::ZERO;
    for r in 0..dim {
        for c in 0..dim {
            acc += rho[(r, c)] * op[(c, r)];
        }
    }
    acc.re
}

/// Joint probabilities P = Tr(rho Π_A ⊗ Π_B ⊗ Π_C). Party A is the most
/// significant qubit. The output is validated at the quantum tolerance.
pub fn born_box(rho: &DensityOperator, s: &MeasurementSettings) -> Result<Behavior, QuantumError> {
    if rho.qubits() != 3 {
        return Err(QuantumError::InvalidState(format!(
            "born_box needs a 3-qubit state, got {} qubits",
            rho.qubits()
        )));
    }
    let mut table = [0.0; 64];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    let pa = projector(s.a[i], m);
                    for n in 0..2 {
                        let pb = projector(s.b[j], n);
                        let pab = pa.kronecker(&pb);
                        for o in 0..2 {
                            let op = pab.kronecker(&projector(s.c[k], o));
                            table[index(i, j, k, m, n, o)] = trace_product(rho.matrix(), &op);
                        }
                    }
                }
            }
        }
    }
    Behavior::from_probabilities_with_tol(table, QUANTUM_TOL).map_err(QuantumError::from)
}

/// Measurement assignment for the six-qubit construction: Alice's input
/// selects which qubit triple all parties measure; each party's own input
/// selects the direction on that triple's qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockStrategy {
    /// `blocks[i]` = (Alice's, Bob's, Charlie's) qubit index when Alice inputs i.
    pub blocks: [[usize; 3]; 2],
    pub alice_dirs: [[f64; 3]; 2],
    pub bob_dirs: [[f64; 3]; 2],
    pub charlie_dirs: [[f64; 3]; 2],
}

impl BlockStrategy {
    /// The x/y assignment used by the six-qubit states: block 0 = qubits
    /// (0,1,2) measured when Alice inputs 0, block 1 = qubits (3,4,5).
    pub fn sixqubit_xy() -> BlockStrategy {
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        BlockStrategy {
            blocks: [[0, 1, 2], [3, 4, 5]],
            alice_dirs: [x, y],
            bob_dirs: [x, y],
            charlie_dirs: [x, y],
        }
    }
}

/// Block-conditional Born rule on a six-qubit state. The joint distribution
/// for Alice's input i is computed on block i; the result must pass
/// nonsignaling validation and is rejected otherwise.
pub fn born_box_blocked(
    rho6: &DensityOperator,
    strat: &BlockStrategy,
) -> Result<Behavior, QuantumError> {
    if rho6.qubits() != 6 {
        return Err(QuantumError::InvalidState(format!(
            "blocked Born rule needs a 6-qubit state, got {} qubits",
            rho6.qubits()
        )));
    }
    let mut table = [0.0; 64];
    for i in 0..2 {
        let block = strat.blocks[i];
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        for o in 0..2 {
                            let mut op = CMat::identity(1, 1);
                            for q in 0..6 {
                                let factor = if q == block[0] {
                                    projector(strat.alice_dirs[i], m)
                                } else if q == block[1] {
                                    projector(strat.bob_dirs[j], n)
                                } else if q == block[2] {
                                    projector(strat.charlie_dirs[k], o)
                                } else {
                                    identity2()
                                };
                                op = op.kronecker(&factor);
                            }
                            table[index(i, j, k, m, n, o)] = trace_product(rho6.matrix(), &op);
                        }
                    }
                }
            }
        }
    }
    Behavior::from_probabilities_with_tol(table, QUANTUM_TOL).map_err(QuantumError::from)
}

fn ket(bits: &[usize]) -> DVector<Complex64> {
    let dim = 1 << bits.len();
    let mut idx = 0;
    for b in bits {
        idx = idx * 2 + b;
    }
    let mut v = DVector::zeros(dim);
    v[idx] = Complex64::ONE;
    v
}

/// `|GHZ> = (|000> + |111>)/sqrt2`.
pub fn ghz() -> DensityOperator {
    gghz(std::f64::consts::FRAC_PI_4).expect("pi/4 in range")
}

/// `cos(theta)|000> + sin(theta)|111>`.
pub fn gghz(theta: f64) -> Result<DensityOperator, QuantumError> {
    ghz_class(theta, std::f64::consts::FRAC_PI_2)
}

/// `cos(theta)|000> + sin(theta)|11>(cos(theta3)|0> + sin(theta3)|1>)`.
pub fn ghz_class(theta: f64, theta3: f64) -> Result<DensityOperator, QuantumError> {
    if !theta.is_finite() || !theta3.is_finite() {
        return Err(QuantumError::BadParameters("nonfinite angle".into()));
    }
    let v = ket(&[0, 0, 0]).scale(theta.cos())
        + ket(&[1, 1, 0]).scale(theta.sin() * theta3.cos())
        + ket(&[1, 1, 1]).scale(theta.sin() * theta3.sin());
    DensityOperator::from_pure(&v)
}

/// `alpha|100> + beta|010> + gamma|001>` with real amplitudes.
pub fn w_class(alpha: f64, beta: f64, gamma: f64) -> Result<DensityOperator, QuantumError> {
    let norm2 = alpha * alpha + beta * beta + gamma * gamma;
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(QuantumError::BadParameters(format!(
            "amplitudes give norm^2 = {norm2}"
        )));
    }
    let v =
        ket(&[1, 0, 0]).scale(alpha) + ket(&[0, 1, 0]).scale(beta) + ket(&[0, 0, 1]).scale(gamma);
    DensityOperator::from_pure(&v)
}

/// The symmetric W state.
pub fn w() -> DensityOperator {
    let a = 1.0 / 3.0f64.sqrt();
    w_class(a, a, a).expect("normalized")
}

/// `p|GHZ><GHZ| + (1-p) I/8`.
pub fn werner(p: f64) -> Result<DensityOperator, QuantumError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QuantumError::BadParameters(format!("werner weight {p}")));
    }
    let mut m = ghz().matrix().scale(p);
    for r in 0..8 {
        m[(r, r)] += c64((1.0 - p) / 8.0, 0.0);
    }
    DensityOperator::new(m)
}

/// Uniform mixture of the three two-excitation biseparable pairs
/// `(|100>+|010>)/sqrt2`, `(|100>+|001>)/sqrt2`, `(|010>+|001>)/sqrt2`.
pub fn bisep_w() -> DensityOperator {
    let s = 1.0 / 2.0f64.sqrt();
    let v1 = (ket(&[1, 0, 0]) + ket(&[0, 1, 0])).scale(s);
    let v2 = (ket(&[1, 0, 0]) + ket(&[0, 0, 1])).scale(s);
    let v3 = (ket(&[0, 1, 0]) + ket(&[0, 0, 1])).scale(s);
    let m = (&v1 * v1.adjoint() + &v2 * v2.adjoint() + &v3 * v3.adjoint()).scale(1.0 / 3.0);
    DensityOperator::new(m).expect("valid mixture")
}

/// `p|GHZ><GHZ| + q|W><W|` with p + q = 1.
pub fn ghz_w(p: f64, q: f64) -> Result<DensityOperator, QuantumError> {
    if (p + q - 1.0).abs() > 1e-12 || p < 0.0 || q < 0.0 {
        return Err(QuantumError::BadParameters(format!("weights ({p}, {q})")));
    }
    let m = ghz().matrix().scale(p) + w().matrix().scale(q);
    DensityOperator::new(m)
}

/// Classically correlated A-C pair with a maximally mixed B:
/// `(|0>(I/2)|0> + |1>(I/2)|1>)/2` in A ⊗ B ⊗ C order.
pub fn classically_correlated_ac() -> DensityOperator {
    let mut m = CMat::zeros(8, 8);
    for bit in 0..2usize {
        let pa = ket(&[bit]) * ket(&[bit]).adjoint();
        let pc = pa.clone();
        let blk = pa.kronecker(&identity2().scale(0.5)).kronecker(&pc);
        m += blk.scale(0.5);
    }
    DensityOperator::new(m).expect("valid state")
}

fn x_eigenstate(bit: usize) -> DVector<Complex64> {
    let s = if bit == 0 { 1.0 } else { -1.0 };
    (ket(&[0]) + ket(&[1]).scale(s)).scale(1.0 / 2.0f64.sqrt())
}

fn y_eigenstate(bit: usize) -> DVector<Complex64> {
    let s = if bit == 0 {
        c64(0.0, 1.0)
    } else {
        c64(0.0, -1.0)
    };
    let mut v = ket(&[0]);
    v += ket(&[1]).map(|x| x * s);
    v.scale(1.0 / 2.0f64.sqrt())
}

fn phi_pair(sign: f64) -> DVector<Complex64> {
    (ket(&[0, 0]) + ket(&[1, 1]).scale(sign)).scale(1.0 / 2.0f64.sqrt())
}

/// `(|00> + phase·|11>)/sqrt2` with an imaginary phase.
fn chi_pair(phase: Complex64) -> DVector<Complex64> {
    let mut v = ket(&[0, 0]);
    v += ket(&[1, 1]).map(|x| x * phase);
    v.scale(1.0 / 2.0f64.sqrt())
}

type FlagPair<'a> = (&'a DVector<Complex64>, &'a DVector<Complex64>);

fn flag_block((flag0, pair0): FlagPair, (flag1, pair1): FlagPair) -> CMat {
    let t0 = (flag0 * flag0.adjoint()).kronecker(&(pair0 * pair0.adjoint()));
    let t1 = (flag1 * flag1.adjoint()).kronecker(&(pair1 * pair1.adjoint()));
    (t0 + t1).scale(0.5)
}

/// The six-qubit 4-separable state whose block-conditional statistics form
/// the GHZ-paradox Mermin box. Qubits 0..2 are the x-flagged block holding
/// `(|00>±|11>)/sqrt2`; qubits 3..5 the y-flagged block holding
/// `(|00>∓i|11>)/sqrt2`. Entanglement lives only inside the two Bell pairs.
pub fn sixqubit_4sep() -> DensityOperator {
    let bx = flag_block(
        (&x_eigenstate(0), &phi_pair(1.0)),
        (&x_eigenstate(1), &phi_pair(-1.0)),
    );
    let by = flag_block(
        (&y_eigenstate(0), &chi_pair(c64(0.0, -1.0))),
        (&y_eigenstate(1), &chi_pair(c64(0.0, 1.0))),
    );
    DensityOperator::new(bx.kronecker(&by)).expect("valid state")
}

/// The six-qubit state with the y-flag collapsed to a single pure branch.
/// Its block-conditional statistics signal between the blocks, so the
/// blocked Born rule rejects it.
pub fn sixqubit_partial() -> DensityOperator {
    let bx = flag_block(
        (&x_eigenstate(0), &phi_pair(1.0)),
        (&x_eigenstate(1), &phi_pair(-1.0)),
    );
    let fy = y_eigenstate(0);
    let pair = chi_pair(c64(0.0, -1.0));
    let by = (&fy * fy.adjoint()).kronecker(&(&pair * pair.adjoint()));
    DensityOperator::new(bx.kronecker(&by)).expect("valid state")
}

const X: [f64; 3] = [1.0, 0.0, 0.0];
const Y: [f64; 3] = [0.0, 1.0, 0.0];
const Z: [f64; 3] = [0.0, 0.0, 1.0];

/// a = (x, y), b_j = (x + (-1)^{j+1} y)/sqrt2, c = (x, y).
pub fn settings_sd_xy() -> MeasurementSettings {
    let s = 1.0 / 2.0f64.sqrt();
    MeasurementSettings::new([X, Y], [[s, -s, 0.0], [s, s, 0.0]], [X, Y]).expect("unit vectors")
}

/// a = (z, x), b_j = (z + (-1)^j x)/sqrt2, c = (z, x).
pub fn settings_sd_xz() -> MeasurementSettings {
    let s = 1.0 / 2.0f64.sqrt();
    MeasurementSettings::new([Z, X], [[s, 0.0, s], [-s, 0.0, s]], [Z, X]).expect("unit vectors")
}

/// All parties measure (x, y): the GHZ-paradox settings.
pub fn settings_md_xy() -> MeasurementSettings {
    MeasurementSettings::new([X, Y], [X, Y], [X, Y]).expect("unit vectors")
}

/// All parties measure (z, x).
pub fn settings_md_xz() -> MeasurementSettings {
    MeasurementSettings::new([Z, X], [Z, X], [Z, X]).expect("unit vectors")
}

/// State-dependent settings for the GGHZ family: b_0 = sin2θ x - cos2θ y,
/// b_1 = cos2θ x + sin2θ y.
pub fn settings_gghz_dependent(theta: f64) -> Result<MeasurementSettings, QuantumError> {
    if !theta.is_finite() {
        return Err(QuantumError::BadParameters("nonfinite angle".into()));
    }
    let (s, c) = (2.0 * theta).sin_cos();
    MeasurementSettings::new([X, Y], [[s, -c, 0.0], [c, s, 0.0]], [X, Y])
}

/// Settings maximizing the class-99 functional for the GGHZ family:
/// b_j = cos t z + (-1)^j sin t x with cos t = 1/sqrt(1 + sin^2 2θ).
pub fn settings_class99(theta: f64) -> Result<MeasurementSettings, QuantumError> {
    if !theta.is_finite() {
        return Err(QuantumError::BadParameters("nonfinite angle".into()));
    }
    let s2 = (2.0 * theta).sin().powi(2);
    let ct = 1.0 / (1.0 + s2).sqrt();
    let st = (1.0 - ct * ct).sqrt();
    MeasurementSettings::new([Z, X], [[st, 0.0, ct], [-st, 0.0, ct]], [Z, X])
}

/// Interpolating settings B_0 = sqrt(p) x - sqrt(1-p) y,
/// B_1 = sqrt(1-p) x + sqrt(p) y.
pub fn settings_mixed_p(p: f64) -> Result<MeasurementSettings, QuantumError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QuantumError::BadParameters(format!("weight {p}")));
    }
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    MeasurementSettings::new([X, Y], [[sp, -sq, 0.0], [sq, sp, 0.0]], [X, Y])
}

/// Three-tangle of the GHZ-class family: (sin 2θ sin θ3)^2.
pub fn tau3_ghz_class(theta: f64, theta3: f64) -> f64 {
    ((2.0 * theta).sin() * theta3.sin()).powi(2)
}

/// The three bipartite concurrences (2ab, 2ac, 2bc) of a W-class state.
pub fn concurrences_w_class(alpha: f64, beta: f64, gamma: f64) -> (f64, f64, f64) {
    (2.0 * alpha * beta, 2.0 * alpha * gamma, 2.0 * beta * gamma)
}

/// Minimal concurrence of assistance min(C12, C13, C23).
pub fn ca_min(alpha: f64, beta: f64, gamma: f64) -> f64 {
    let (c12, c13, c23) = concurrences_w_class(alpha, beta, gamma);
    c12.min(c13).min(c23)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CqQcKind {
    /// A classical against BC: rho = sum_i p_i rho^A_i ⊗ rho^BC_i.
    Cq,
    /// AB quantum block against a C factor.
    Qc12_3,
    /// AC quantum block against a B factor.
    Qc13_2,
}

/// One sampled mixture with its components kept for factorization checks.
#[derive(Debug, Clone)]
pub struct CqQcSample {
    pub kind: CqQcKind,
    pub weights: Vec<f64>,
    /// Two-qubit blocks (4x4 pure projectors).
    pub pair_blocks: Vec<CMat>,
    /// Single-qubit factors (2x2 pure projectors).
    pub single_blocks: Vec<CMat>,
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller from two uniforms.
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

fn haar_pure(rng: &mut ChaCha8Rng, dim: usize) -> DVector<Complex64> {
    let mut v = DVector::from_fn(dim, |_, _| c64(normal(rng), normal(rng)));
    let n = v.norm();
    v /= c64(n, 0.0);
    v
}

/// Reorder a 3-qubit operator from (A, C, B) to (A, B, C) significance.
fn swap_last_two_qubits(m: &CMat) -> CMat {
    let perm = |idx: usize| -> usize {
        let (a, c, b) = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        (a << 2) | (b << 1) | c
    };
    let mut out = CMat::zeros(8, 8);
    for r in 0..8 {
        for c in 0..8 {
            out[(perm(r), perm(c))] = m[(r, c)];
        }
    }
    out
}

impl CqQcSample {
    pub fn density(&self) -> DensityOperator {
        let mut m = CMat::zeros(8, 8);
        for ((w, pair), single) in self
            .weights
            .iter()
            .zip(self.pair_blocks.iter())
            .zip(self.single_blocks.iter())
        {
            let term = match self.kind {
                CqQcKind::Cq => single.kronecker(pair),
                CqQcKind::Qc12_3 => pair.kronecker(single),
                CqQcKind::Qc13_2 => swap_last_two_qubits(&pair.kronecker(single)),
            };
            m += term.scale(*w);
        }
        DensityOperator::new(m).expect("convex mixture of states")
    }
}

/// Sample a random CQ/QC state: Haar-random pure two-qubit blocks tensored
/// with random single-qubit states, mixed with random convex weights.
pub fn sample_cq_qc_components(kind: CqQcKind, seed: u64, terms: usize) -> CqQcSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.05..1.0)).collect();
    let sum: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= sum;
    }
    let mut pair_blocks = Vec::with_capacity(terms);
    let mut single_blocks = Vec::with_capacity(terms);
    for _ in 0..terms {
        let p = haar_pure(&mut rng, 4);
        pair_blocks.push(&p * p.adjoint());
        let s = haar_pure(&mut rng, 2);
        single_blocks.push(&s * s.adjoint());
    }
    CqQcSample {
        kind,
        weights,
        pair_blocks,
        single_blocks,
    }
}

pub fn sample_cq_qc(kind: CqQcKind, seed: u64) -> DensityOperator {
    sample_cq_qc_components(kind, seed, 3).density()
}

/// Random unit vectors for settings sweeps, optionally confined to the
/// xy-plane.
pub fn random_settings(seed: u64, xy_plane: bool) -> MeasurementSettings {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dir = |_: usize| -> [f64; 3] {
        if xy_plane {
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            [phi.cos(), phi.sin(), 0.0]
        } else {
            let v = [normal(&mut rng), normal(&mut rng), normal(&mut rng)];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        }
    };
    MeasurementSettings::new([dir(0), dir(1)], [dir(2), dir(3)], [dir(4), dir(5)])
        .expect("unit vectors")
}

//! Dense statevector simulator used as a reference for the algebra backend.
//!
//! Basis index `i` of an `n`-qubit state has wire `w` (1-based) at bit
//! `n - w`, so wire 1 is the most significant bit.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{clifford_amplitudes, Circuit};
use crate::error::{Error, Result};
use crate::gates::{Gate, Matrix2};
use crate::witt::{bits_index, MAX_DENSE_QUBITS};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

/// A `2^k × 2^k` matrix, row major, acting on `k` ordered wires.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    k: usize,
    data: Vec<Complex64>,
}

impl GateMatrix {
    pub fn new(k: usize, data: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << k;
        if data.len() != dim * dim {
            return Err(Error::AmplitudeLength {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { k, data })
    }

    pub fn identity(k: usize) -> Self {
        let dim = 1usize << k;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Self { k, data }
    }

    fn from_2x2(m: &Matrix2) -> Self {
        Self {
            k: 1,
            data: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    /// Matrix of a classical permutation `i ↦ perm(i)` of basis indices.
    fn permutation(k: usize, perm: impl Fn(usize) -> usize) -> Self {
        let dim = 1usize << k;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[perm(i) * dim + i] = ONE;
        }
        Self { k, data }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.k
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &GateMatrix) -> Result<GateMatrix> {
        if self.k != other.k {
            return Err(Error::QubitMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let a = self.data[i * dim + l];
                if a == ZERO {
                    continue;
                }
                for j in 0..dim {
                    data[i * dim + j] += a * other.data[l * dim + j];
                }
            }
        }
        Ok(GateMatrix { k: self.k, data })
    }

    /// Largest entry error of `M† M − 1`.
    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut s = ZERO;
                for l in 0..dim {
                    s += self.get(l, i).conj() * self.get(l, j);
                }
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

/// Standard matrix of a registry gate on its own wires, first wire as MSB.
pub fn gate_matrix(gate: &Gate) -> GateMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    match gate {
        Gate::X => GateMatrix::from_2x2(&[[ZERO, ONE], [ONE, ZERO]]),
        Gate::Y => GateMatrix::from_2x2(&[[ZERO, -IM], [IM, ZERO]]),
        Gate::Z => GateMatrix::from_2x2(&[[ONE, ZERO], [ZERO, -ONE]]),
        Gate::H => GateMatrix::from_2x2(&[[h, h], [h, -h]]),
        Gate::S => GateMatrix::from_2x2(&[[ONE, ZERO], [ZERO, IM]]),
        Gate::Phase(phi) => {
            GateMatrix::from_2x2(&[[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, *phi)]])
        }
        Gate::U2(m) => GateMatrix::from_2x2(m),
        Gate::Cnot => GateMatrix::permutation(2, |i| if i & 0b10 != 0 { i ^ 0b01 } else { i }),
        Gate::Cz => {
            let mut m = GateMatrix::identity(2);
            m.data[15] = -ONE;
            m
        }
        Gate::Swap => GateMatrix::permutation(2, |i| ((i & 1) << 1) | (i >> 1)),
        Gate::Ccnot => GateMatrix::permutation(3, |i| if i & 0b110 == 0b110 { i ^ 1 } else { i }),
        Gate::Cswap => GateMatrix::permutation(3, |i| {
            if i & 0b100 != 0 {
                0b100 | ((i & 1) << 1) | ((i >> 1) & 1)
            } else {
                i
            }
        }),
    }
}

fn check_wires(wires: &[usize], n: usize) -> Result<()> {
    for &w in wires {
        if w == 0 || w > n {
            return Err(Error::WireOutOfRange { wire: w, n });
        }
    }
    for (i, w) in wires.iter().enumerate() {
        if wires[i + 1..].contains(w) {
            return Err(Error::DuplicateWires(wires.to_vec()));
        }
    }
    Ok(())
}

fn check_dense(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            got: n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

// Local index of `i` on the given wires, first wire most significant.
fn local_index(i: usize, wires: &[usize], n: usize) -> usize {
    wires
        .iter()
        .fold(0, |acc, &w| (acc << 1) | ((i >> (n - w)) & 1))
}

fn with_local(i: usize, local: usize, wires: &[usize], n: usize) -> usize {
    let k = wires.len();
    let mut out = i;
    for (pos, &w) in wires.iter().enumerate() {
        let bit = (local >> (k - 1 - pos)) & 1;
        let shift = n - w;
        out = (out & !(1 << shift)) | (bit << shift);
    }
    out
}

/// The full `2^n × 2^n` matrix of `g` acting on `wires`, identity elsewhere.
pub fn kron_embed(g: &GateMatrix, wires: &[usize], n: usize) -> Result<GateMatrix> {
    check_dense(n)?;
    if wires.len() != g.k {
        return Err(Error::Arity {
            gate: "matrix".to_string(),
            expected: g.k,
            got: wires.len(),
        });
    }
    check_wires(wires, n)?;
    let dim = 1usize << n;
    let mut data = vec![ZERO; dim * dim];
    for col in 0..dim {
        let lc = local_index(col, wires, n);
        for lr in 0..g.dim() {
            let z = g.get(lr, lc);
            if z != ZERO {
                data[with_local(col, lr, wires, n) * dim + col] = z;
            }
        }
    }
    Ok(GateMatrix { k: n, data })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl MatrixState {
    pub fn basis(n: usize, bits: &[bool]) -> Result<Self> {
        check_dense(n)?;
        if bits.len() != n {
            return Err(Error::BitCount {
                expected: n,
                got: bits.len(),
            });
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[bits_index(bits)] = ONE;
        Ok(Self { n, amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = amplitudes.len().trailing_zeros() as usize;
        if !amplitudes.len().is_power_of_two() || n == 0 {
            return Err(Error::AmplitudeLength {
                expected: 1usize << n.max(1),
                got: amplitudes.len(),
            });
        }
        check_dense(n)?;
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies `g` to `wires` without forming the full matrix.
    pub fn apply(&mut self, g: &GateMatrix, wires: &[usize]) -> Result<()> {
        if wires.len() != g.k {
            return Err(Error::Arity {
                gate: "matrix".to_string(),
                expected: g.k,
                got: wires.len(),
            });
        }
        check_wires(wires, self.n)?;
        let n = self.n;
        let dim = g.dim();
        let mask: usize = wires.iter().map(|&w| 1usize << (n - w)).sum();
        let mut local_in = vec![ZERO; dim];
        let mut indices = vec![0usize; dim];
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            for l in 0..dim {
                indices[l] = with_local(base, l, wires, n);
                local_in[l] = self.amplitudes[indices[l]];
            }
            for (r, &idx) in indices.iter().enumerate() {
                self.amplitudes[idx] = local_in
                    .iter()
                    .enumerate()
                    .map(|(c, v)| g.get(r, c) * v)
                    .sum();
            }
        }
        Ok(())
    }

    /// Dense `M v` with an already embedded matrix.
    pub fn apply_full(&mut self, m: &GateMatrix) -> Result<()> {
        if m.k != self.n {
            return Err(Error::QubitMismatch {
                left: m.k,
                right: self.n,
            });
        }
        let dim = m.dim();
        let out: Vec<Complex64> = (0..dim)
            .map(|r| (0..dim).map(|c| m.get(r, c) * self.amplitudes[c]).sum())
            .collect();
        self.amplitudes = out;
        Ok(())
    }
}

pub fn run_matrix(circuit: &Circuit, init: &[bool]) -> Result<MatrixState> {
    let mut state = MatrixState::basis(circuit.n(), init)?;
    for op in circuit.ops() {
        state.apply(&gate_matrix(&op.gate), &op.wires)?;
    }
    Ok(state)
}

pub fn max_abs_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub clifford: Vec<Complex64>,
    pub matrix: Vec<Complex64>,
    /// L∞ distance between the two amplitude vectors.
    pub deviation: f64,
    pub passed: bool,
}

pub fn compare_backends(circuit: &Circuit, init: &[bool], tol: f64) -> Result<Comparison> {
    let matrix = run_matrix(circuit, init)?.into_amplitudes();
    let clifford = clifford_amplitudes(circuit, init)?;
    let deviation = max_abs_deviation(&clifford, &matrix);
    Ok(Comparison {
        clifford,
        matrix,
        deviation,
        passed: deviation < tol,
    })
}

/// A 2×2 unitary `e^{iδ} [[e^{iα} cos θ, e^{iβ} sin θ], [−e^{−iβ} sin θ, e^{−iα} cos θ]]`
/// with angles drawn uniformly.
pub fn random_u2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let theta = rng.random_range(0.0..PI);
    let alpha = rng.random_range(0.0..TAU);
    let beta = rng.random_range(0.0..TAU);
    let delta = rng.random_range(0.0..TAU);
    let g = Complex64::from_polar(1.0, delta);
    let (s, c) = theta.sin_cos();
    [
        [g * Complex64::from_polar(c, alpha), g * Complex64::from_polar(s, beta)],
        [-g * Complex64::from_polar(s, -beta), g * Complex64::from_polar(c, -alpha)],
    ]
}

/// A registry gate drawn uniformly among those fitting on `n` wires.
pub fn random_gate<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Gate {
    let names: Vec<&str> = Gate::NAMES
        .iter()
        .copied()
        .filter(|name| Gate::arity_of(name).is_some_and(|a| a <= n))
        .collect();
    match names[rng.random_range(0..names.len())] {
        "phase" => Gate::Phase(rng.random_range(0.0..TAU)),
        "u2" => Gate::U2(random_u2(rng)),
        name => Gate::from_name(name).expect("registry name"),
    }
}

/// Distinct wires in random order.
pub fn random_wires<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    (0..k)
        .map(|_| pool.swap_remove(rng.random_range(0..pool.len())))
        .collect()
}

/// `1..=max_qubits` qubits, `1..=depth` gates.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, max_qubits: usize, depth: usize) -> Result<Circuit> {
    let n = rng.random_range(1..=max_qubits.max(1));
    let mut circuit = Circuit::new(n)?;
    let count = rng.random_range(1..=depth.max(1));
    for _ in 0..count {
        let gate = random_gate(rng, n);
        let wires = random_wires(rng, n, gate.arity());
        circuit.push(gate, wires)?;
    }
    Ok(circuit)
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub circuits: usize,
    pub max_qubits: usize,
    pub depth: usize,
    pub tol: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            circuits: 200,
            max_qubits: 4,
            depth: 20,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    /// Seed that regenerates this case alone.
    pub seed: u64,
    pub qubits: usize,
    pub gates: usize,
    pub init: String,
    pub deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub max_deviation: f64,
    pub failures: usize,
    pub passed: bool,
    pub cases: Vec<FuzzCase>,
}

/// The circuit and initial bits of one fuzz case.
pub fn fuzz_case(seed: u64, max_qubits: usize, depth: usize) -> Result<(Circuit, Vec<bool>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let circuit = random_circuit(&mut rng, max_qubits, depth)?;
    let init: Vec<bool> = (0..circuit.n()).map(|_| rng.random()).collect();
    Ok((circuit, init))
}

/// Differential test of the two backends over random circuits. Case `i` uses
/// seed `config.seed + i`.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    if config.max_qubits == 0 || config.max_qubits > MAX_DENSE_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            got: config.max_qubits,
            max: MAX_DENSE_QUBITS,
        });
    }
    let mut cases = Vec::with_capacity(config.circuits);
    for index in 0..config.circuits {
        let seed = config.seed.wrapping_add(index as u64);
        let (circuit, init) = fuzz_case(seed, config.max_qubits, config.depth)?;
        let cmp = compare_backends(&circuit, &init, config.tol)?;
        cases.push(FuzzCase {
            index,
            seed,
            qubits: circuit.n(),
            gates: circuit.len(),
            init: init.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            deviation: cmp.deviation,
            passed: cmp.passed,
        });
    }
    let max_deviation = cases.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let failures = cases.iter().filter(|c| !c.passed).count();
    Ok(FuzzReport {
        config: config.clone(),
        max_deviation,
        failures,
        passed: failures == 0,
        cases,
    })
}

//! Quantum gates as unitary elements of the complex Clifford algebra.
//!
//! A single-qubit gate with matrix `[[a, b], [c, d]]` on wire `k` is the
//! wire-local element `a f_k f_k† + b f_k + c f_k† + d f_k† f_k`. Placing
//! wire-local factors side by side is not the plain geometric product: the
//! ordinary tensor product `λ_1 ⊗ ⋯ ⊗ λ_n` of basis factors
//! `λ_k ∈ {I_k, K_k, f_k, f_k†}` is `(−1)^s λ_1 ⋯ λ_n`, where `s` counts, for
//! every odd factor `λ_i`, the earlier wires holding `f_ℓ` or `K_ℓ`.
//! [`super_tensor`] applies that rule after expanding each factor in this
//! basis, and every named gate is built through it.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::algebra::{BladeMask, Multivector};
use crate::error::{Error, Result};
use crate::witt::{basis_state, state_to_amplitudes, SpinorState, WittContext};

/// Tolerance on `λ†λ = 1` and on unitarity of input matrices.
pub const UNITARY_TOL: f64 = 1e-10;

pub const EXP_TOL: f64 = 1e-13;
pub const EXP_MAX_TERMS: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, row major: `[[a, b], [c, d]]`.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Deviation of `m† m` from the identity, as the largest entry error.
pub fn matrix2_unitarity_deviation(m: &Matrix2) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let s = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

/// An algebra element used as an operator on `n`-qubit spinors.
#[derive(Clone, Debug)]
pub struct GateElement {
    n: usize,
    value: Multivector,
    unitary: OnceLock<bool>,
}

impl GateElement {
    pub fn new(ctx: &WittContext, value: Multivector) -> Result<Self> {
        if value.signature() != ctx.signature() {
            return Err(Error::DimensionMismatch {
                left: value.dim(),
                right: 2 * ctx.n(),
            });
        }
        Ok(Self {
            n: ctx.n(),
            value,
            unitary: OnceLock::new(),
        })
    }

    pub fn identity(ctx: &WittContext) -> Self {
        Self::new(ctx, ctx.one()).expect("identity has the context signature")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_value(self) -> Multivector {
        self.value
    }

    /// The gate that applies `self` first and then `next`, i.e. `next · self`.
    pub fn then(&self, next: &GateElement) -> Result<GateElement> {
        if self.n != next.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: next.n,
            });
        }
        Ok(GateElement {
            n: self.n,
            value: &next.value * &self.value,
            unitary: OnceLock::new(),
        })
    }

    /// Largest coefficient error in `λ†λ = 1` and `λλ† = 1`.
    pub fn unitarity_deviation(&self) -> f64 {
        let one = Multivector::one(self.value.signature());
        let dag = self.value.dagger();
        let left = (&dag * &self.value).max_deviation(&one);
        let right = (&self.value * &dag).max_deviation(&one);
        left.max(right)
    }

    /// `λ†λ = 1` and `λλ† = 1` within [`UNITARY_TOL`]. Cached.
    pub fn is_unitary(&self) -> bool {
        *self
            .unitary
            .get_or_init(|| self.unitarity_deviation() <= UNITARY_TOL)
    }
}

impl PartialEq for GateElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.value == other.value
    }
}

pub fn is_unitary(g: &GateElement) -> bool {
    g.is_unitary()
}

/// Basis of a wire's local subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireFactor {
    /// `f_k f_k†`, i.e. `|0⟩⟨0|`
    I,
    /// `f_k† f_k`, i.e. `|1⟩⟨1|`
    K,
    /// `f_k`, i.e. `|0⟩⟨1|`
    F,
    /// `f_k†`, i.e. `|1⟩⟨0|`
    FDag,
}

impl WireFactor {
    pub const ALL: [WireFactor; 4] = [WireFactor::I, WireFactor::K, WireFactor::F, WireFactor::FDag];

    pub fn is_odd(self) -> bool {
        matches!(self, WireFactor::F | WireFactor::FDag)
    }

    /// Whether this factor on an earlier wire flips the sign of a later odd one.
    pub fn flips_later_odd(self) -> bool {
        matches!(self, WireFactor::F | WireFactor::K)
    }

    pub fn element(self, ctx: &WittContext, wire: usize) -> Multivector {
        match self {
            WireFactor::I => ctx.idem_i(wire).clone(),
            WireFactor::K => ctx.idem_k(wire).clone(),
            WireFactor::F => ctx.f(wire).clone(),
            WireFactor::FDag => ctx.f_dag(wire).clone(),
        }
    }
}

/// `a I_k + b f_k + c f_k† + d K_k` for `m = [[a, b], [c, d]]`, without any
/// embedding on the other wires.
pub fn wire_element(ctx: &WittContext, wire: usize, m: &Matrix2) -> Result<Multivector> {
    ctx.check_wire(wire)?;
    Ok(ctx.idem_i(wire).scale(m[0][0])
        + ctx.f(wire).scale(m[0][1])
        + ctx.f_dag(wire).scale(m[1][0])
        + ctx.idem_k(wire).scale(m[1][1]))
}

/// Inverse of [`wire_element`]: reads `[[a, b], [c, d]]` off an element
/// supported on wire `k`'s generators `e_k, e_{k+n}`.
pub fn wire_coefficients(ctx: &WittContext, wire: usize, x: &Multivector) -> Result<Matrix2> {
    ctx.check_wire(wire)?;
    if x.signature() != ctx.signature() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: 2 * ctx.n(),
        });
    }
    let mask = ctx.wire_mask(wire);
    if !x.support().is_subset_of(mask) {
        return Err(Error::FactorOutsideWire(wire));
    }
    let lo = BladeMask::generator(wire);
    let hi = BladeMask::generator(wire + ctx.n());
    let c0 = x.scalar_part();
    let c1 = x.coefficient(lo);
    let c2 = x.coefficient(hi);
    let c3 = x.coefficient(mask);
    // I = ½(1 + i e e'), K = ½(1 − i e e'), f = ½(e − i e'), f† = ½(e + i e')
    Ok([[c0 - IM * c3, c1 + IM * c2], [c1 - IM * c2, c0 + IM * c3]])
}

/// The element representing the ordinary tensor product `λ_1 ⊗ ⋯ ⊗ λ_n` of
/// wire-local factors (`factors[k-1]` acts on wire `k`).
pub fn super_tensor(ctx: &WittContext, factors: &[Multivector]) -> Result<GateElement> {
    if factors.len() != ctx.n() {
        return Err(Error::FactorCount {
            expected: ctx.n(),
            got: factors.len(),
        });
    }
    let mut expansions: Vec<Vec<(WireFactor, Complex64)>> = Vec::with_capacity(ctx.n());
    for (k, factor) in factors.iter().enumerate() {
        let wire = k + 1;
        let [[a, b], [c, d]] = wire_coefficients(ctx, wire, factor)?;
        let terms = [
            (WireFactor::I, a),
            (WireFactor::F, b),
            (WireFactor::FDag, c),
            (WireFactor::K, d),
        ];
        expansions.push(terms.into_iter().filter(|(_, z)| z.norm() > 0.0).collect());
    }
    let mut acc = ctx.zero();
    expand_words(ctx, &expansions, 0, ctx.one(), ONE, 0, &mut acc);
    GateElement::new(ctx, acc)
}

// Depth-first over the words of the multilinear expansion. `flippers` counts
// earlier wires holding `f` or `K`; each odd factor contributes that many
// sign flips.
fn expand_words(
    ctx: &WittContext,
    expansions: &[Vec<(WireFactor, Complex64)>],
    k: usize,
    product: Multivector,
    coef: Complex64,
    flippers: usize,
    acc: &mut Multivector,
) {
    if product.is_zero() {
        return;
    }
    if k == expansions.len() {
        *acc = &*acc + product.scale(coef);
        return;
    }
    let wire = k + 1;
    for (factor, z) in &expansions[k] {
        let mut c = coef * z;
        if factor.is_odd() && flippers % 2 == 1 {
            c = -c;
        }
        let next = &product * &factor.element(ctx, wire);
        let f = flippers + usize::from(factor.flips_later_odd());
        expand_words(ctx, expansions, k + 1, next, c, f, acc);
    }
}

/// Tensor product with the listed wire factors and identity elsewhere.
pub fn tensor_term(ctx: &WittContext, factors: &[(usize, Multivector)]) -> Result<GateElement> {
    let mut slots: Vec<Option<Multivector>> = vec![None; ctx.n()];
    for (wire, m) in factors {
        ctx.check_wire(*wire)?;
        let slot = &mut slots[wire - 1];
        if slot.is_some() {
            return Err(Error::DuplicateWires(factors.iter().map(|(w, _)| *w).collect()));
        }
        *slot = Some(m.clone());
    }
    let full: Vec<Multivector> = slots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| ctx.one()))
        .collect();
    super_tensor(ctx, &full)
}

fn sum_terms(ctx: &WittContext, terms: &[Vec<(usize, Multivector)>]) -> Result<GateElement> {
    let mut acc = ctx.zero();
    for t in terms {
        acc = acc + tensor_term(ctx, t)?.into_value();
    }
    GateElement::new(ctx, acc)
}

fn check_distinct(ctx: &WittContext, wires: &[usize]) -> Result<()> {
    for w in wires {
        ctx.check_wire(*w)?;
    }
    for (i, a) in wires.iter().enumerate() {
        if wires[i + 1..].contains(a) {
            return Err(Error::DuplicateWires(wires.to_vec()));
        }
    }
    Ok(())
}

// Wire-local forms of the named single-qubit gates.

fn local_x(ctx: &WittContext, k: usize) -> Multivector {
    ctx.f_dag(k) + ctx.f(k)
}

fn local_y(ctx: &WittContext, k: usize) -> Multivector {
    (ctx.f_dag(k) - ctx.f(k)).scale(IM)
}

fn local_z(ctx: &WittContext, k: usize) -> Multivector {
    ctx.idem_i(k) - ctx.idem_k(k)
}

fn local_phase(ctx: &WittContext, k: usize, phi: f64) -> Multivector {
    ctx.idem_i(k) + ctx.idem_k(k).scale(Complex64::from_polar(1.0, phi))
}

fn local_h(ctx: &WittContext, k: usize) -> Multivector {
    (ctx.idem_i(k) - ctx.idem_k(k) + ctx.f(k) + ctx.f_dag(k)).scale(FRAC_1_SQRT_2)
}

fn on_wire(ctx: &WittContext, k: usize, local: impl Fn(&WittContext, usize) -> Multivector) -> Result<GateElement> {
    ctx.check_wire(k)?;
    tensor_term(ctx, &[(k, local(ctx, k))])
}

/// `λ_X = f_k† + f_k` on wire `k`.
pub fn gate_x(ctx: &WittContext, k: usize) -> Result<GateElement> {
    on_wire(ctx, k, local_x)
}

/// `λ_Y = i f_k† − i f_k` on wire `k`.
pub fn gate_y(ctx: &WittContext, k: usize) -> Result<GateElement> {
    on_wire(ctx, k, local_y)
}

/// `λ_Z = f_k f_k† − f_k† f_k` on wire `k`.
pub fn gate_z(ctx: &WittContext, k: usize) -> Result<GateElement> {
    on_wire(ctx, k, local_z)
}

/// `R_φ = f_k f_k† + e^{iφ} f_k† f_k`.
pub fn gate_phase(ctx: &WittContext, k: usize, phi: f64) -> Result<GateElement> {
    on_wire(ctx, k, |c, k| local_phase(c, k, phi))
}

pub fn gate_s(ctx: &WittContext, k: usize) -> Result<GateElement> {
    gate_phase(ctx, k, FRAC_PI_2)
}

/// `H = (f f† − f† f + f + f†)/√2`.
pub fn gate_h(ctx: &WittContext, k: usize) -> Result<GateElement> {
    on_wire(ctx, k, local_h)
}

/// The element corresponding to a 2×2 unitary on wire `k`.
pub fn gate_from_u2(ctx: &WittContext, k: usize, m: &Matrix2) -> Result<GateElement> {
    let dev = matrix2_unitarity_deviation(m);
    if dev > UNITARY_TOL {
        return Err(Error::NonUnitary(dev));
    }
    let local = wire_element(ctx, k, m)?;
    tensor_term(ctx, &[(k, local)])
}

/// `I_c ⊗ 1 + K_c ⊗ X_t`.
pub fn gate_cnot(ctx: &WittContext, control: usize, target: usize) -> Result<GateElement> {
    check_distinct(ctx, &[control, target])?;
    sum_terms(
        ctx,
        &[
            vec![(control, ctx.idem_i(control).clone())],
            vec![(control, ctx.idem_k(control).clone()), (target, local_x(ctx, target))],
        ],
    )
}

/// `I_c ⊗ 1 + K_c ⊗ Z_t`.
pub fn gate_cz(ctx: &WittContext, control: usize, target: usize) -> Result<GateElement> {
    check_distinct(ctx, &[control, target])?;
    sum_terms(
        ctx,
        &[
            vec![(control, ctx.idem_i(control).clone())],
            vec![(control, ctx.idem_k(control).clone()), (target, local_z(ctx, target))],
        ],
    )
}

// |00⟩⟨00| + |11⟩⟨11| + |01⟩⟨10| + |10⟩⟨01| as wire-local tensor terms.
fn swap_terms(ctx: &WittContext, a: usize, b: usize) -> Vec<Vec<(usize, Multivector)>> {
    vec![
        vec![(a, ctx.idem_i(a).clone()), (b, ctx.idem_i(b).clone())],
        vec![(a, ctx.idem_k(a).clone()), (b, ctx.idem_k(b).clone())],
        vec![(a, ctx.f(a).clone()), (b, ctx.f_dag(b).clone())],
        vec![(a, ctx.f_dag(a).clone()), (b, ctx.f(b).clone())],
    ]
}

pub fn gate_swap(ctx: &WittContext, a: usize, b: usize) -> Result<GateElement> {
    check_distinct(ctx, &[a, b])?;
    sum_terms(ctx, &swap_terms(ctx, a, b))
}

/// Toffoli: `I_{c1} ⊗ 1 + K_{c1} ⊗ I_{c2} + K_{c1} ⊗ K_{c2} ⊗ X_t`.
pub fn gate_ccnot(ctx: &WittContext, c1: usize, c2: usize, target: usize) -> Result<GateElement> {
    check_distinct(ctx, &[c1, c2, target])?;
    sum_terms(
        ctx,
        &[
            vec![(c1, ctx.idem_i(c1).clone())],
            vec![(c1, ctx.idem_k(c1).clone()), (c2, ctx.idem_i(c2).clone())],
            vec![
                (c1, ctx.idem_k(c1).clone()),
                (c2, ctx.idem_k(c2).clone()),
                (target, local_x(ctx, target)),
            ],
        ],
    )
}

/// Fredkin: `I_c ⊗ 1 + K_c ⊗ SWAP_{t1,t2}`.
pub fn gate_cswap(ctx: &WittContext, control: usize, t1: usize, t2: usize) -> Result<GateElement> {
    check_distinct(ctx, &[control, t1, t2])?;
    let mut terms = vec![vec![(control, ctx.idem_i(control).clone())]];
    for mut t in swap_terms(ctx, t1, t2) {
        t.push((control, ctx.idem_k(control).clone()));
        terms.push(t);
    }
    sum_terms(ctx, &terms)
}

/// `|out⟩⟨in|`.
pub fn ketbra(ctx: &WittContext, bits_out: &[bool], bits_in: &[bool]) -> Result<Multivector> {
    let ket = basis_state(ctx, bits_out)?;
    let bra = basis_state(ctx, bits_in)?;
    Ok(ket.value() * bra.value().dagger())
}

/// `exp(x)`.
///
/// When `x²` is a scalar `s²` this is `cosh(s) + (sinh(s)/s) x`; otherwise the
/// power series is summed until a term's norm drops below `tol` relative to
/// the running sum.
pub fn exp_element(x: &Multivector, tol: f64) -> Result<Multivector> {
    let sq = x * x;
    if sq.support() == BladeMask::SCALAR {
        let s = sq.scalar_part().sqrt();
        let sinhc = if s.norm() < 1e-8 {
            ONE + s * s / 6.0
        } else {
            s.sinh() / s
        };
        let one = Multivector::one(x.signature());
        return Ok(one.scale(s.cosh()) + x.scale(sinhc));
    }
    exp_series(x, tol, EXP_MAX_TERMS)
}

/// Plain power series `Σ x^k / k!`.
pub fn exp_series(x: &Multivector, tol: f64, max_terms: usize) -> Result<Multivector> {
    let mut term = Multivector::one(x.signature());
    let mut sum = term.clone();
    for k in 1..max_terms {
        term = (&term * x).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm() <= tol * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::NotConverged(max_terms))
}

/// Left multiplication `g x`.
pub fn apply(g: &GateElement, x: &SpinorState) -> Result<SpinorState> {
    if g.n != x.n() {
        return Err(Error::QubitMismatch {
            left: g.n,
            right: x.n(),
        });
    }
    Ok(SpinorState::from_parts(g.n, g.value() * x.value()))
}

/// [`apply`], plus a membership check of the result in strict contexts.
pub fn apply_in(ctx: &WittContext, g: &GateElement, x: &SpinorState) -> Result<SpinorState> {
    let out = apply(g, x)?;
    if ctx.is_strict() {
        SpinorState::new(ctx, out.into_value())
    } else {
        Ok(out)
    }
}

/// Born-rule probabilities `|⟨k|x⟩|²`.
pub fn measure_probabilities(ctx: &WittContext, x: &SpinorState) -> Result<Vec<f64>> {
    Ok(state_to_amplitudes(ctx, x)?
        .into_iter()
        .map(|a| a.norm_sqr())
        .collect())
}

/// The gate registry consumed by the circuit parser.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X,
    Y,
    Z,
    H,
    S,
    Phase(f64),
    U2(Matrix2),
    Cnot,
    Cz,
    Swap,
    Ccnot,
    Cswap,
}

impl Gate {
    pub const NAMES: [&'static str; 12] = [
        "x", "y", "z", "h", "s", "phase", "u2", "cnot", "cz", "swap", "ccnot", "cswap",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
            Gate::H => "h",
            Gate::S => "s",
            Gate::Phase(_) => "phase",
            Gate::U2(_) => "u2",
            Gate::Cnot => "cnot",
            Gate::Cz => "cz",
            Gate::Swap => "swap",
            Gate::Ccnot => "ccnot",
            Gate::Cswap => "cswap",
        }
    }

    /// Gates that take no parameters, by name.
    pub fn from_name(name: &str) -> Option<Gate> {
        Some(match name {
            "x" => Gate::X,
            "y" => Gate::Y,
            "z" => Gate::Z,
            "h" => Gate::H,
            "s" => Gate::S,
            "cnot" => Gate::Cnot,
            "cz" => Gate::Cz,
            "swap" => Gate::Swap,
            "ccnot" => Gate::Ccnot,
            "cswap" => Gate::Cswap,
            _ => return None,
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::X | Gate::Y | Gate::Z | Gate::H | Gate::S | Gate::Phase(_) | Gate::U2(_) => 1,
            Gate::Cnot | Gate::Cz | Gate::Swap => 2,
            Gate::Ccnot | Gate::Cswap => 3,
        }
    }

    /// Number of parameters following the wires in circuit files.
    pub fn param_count(name: &str) -> usize {
        match name {
            "phase" => 1,
            "u2" => 4,
            _ => 0,
        }
    }

    pub fn arity_of(name: &str) -> Option<usize> {
        match name {
            "phase" | "u2" => Some(1),
            _ => Gate::from_name(name).map(|g| g.arity()),
        }
    }

    /// The algebra element of this gate on the given 1-based wires.
    pub fn element(&self, ctx: &WittContext, wires: &[usize]) -> Result<GateElement> {
        if wires.len() != self.arity() {
            return Err(Error::Arity {
                gate: self.name().to_string(),
                expected: self.arity(),
                got: wires.len(),
            });
        }
        let w = wires;
        match self {
            Gate::X => gate_x(ctx, w[0]),
            Gate::Y => gate_y(ctx, w[0]),
            Gate::Z => gate_z(ctx, w[0]),
            Gate::H => gate_h(ctx, w[0]),
            Gate::S => gate_s(ctx, w[0]),
            Gate::Phase(phi) => gate_phase(ctx, w[0], *phi),
            Gate::U2(m) => gate_from_u2(ctx, w[0], m),
            Gate::Cnot => gate_cnot(ctx, w[0], w[1]),
            Gate::Cz => gate_cz(ctx, w[0], w[1]),
            Gate::Swap => gate_swap(ctx, w[0], w[1]),
            Gate::Ccnot => gate_ccnot(ctx, w[0], w[1], w[2]),
            Gate::Cswap => gate_cswap(ctx, w[0], w[1], w[2]),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

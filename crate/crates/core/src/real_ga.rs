//! Qubits in the real algebra 𝔾₃ generated by σ₁, σ₂, σ₃.
//!
//! Two encodings live here. The quaternionic one uses the even subalgebra,
//! with `|0⟩ = 1`, `|1⟩ = σ₁σ₃`, Pauli action `ψ ↦ σ_k ψ σ₃` and complex
//! structure `ψ ↦ ψ σ₁σ₂`. The other transports ℂ₂ spinors through the real
//! isomorphism ℂ₂ ≅ 𝔾₃, giving `|0⟩ = I_ℝ = ½(1 + σ₃)`, `|1⟩ = σ₁ I_ℝ` and
//! Pauli action `ψ ↦ σ_k ψ`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::algebra::{blade_product, AlgebraSignature, BladeMask, Multivector};
use crate::error::{Error, Result};
use crate::gates::{exp_element, EXP_TOL};

pub const G3_TOL: f64 = 1e-12;

pub const SIGMA1: BladeMask = BladeMask(0b001);
pub const SIGMA2: BladeMask = BladeMask(0b010);
pub const SIGMA3: BladeMask = BladeMask(0b100);
pub const SIGMA12: BladeMask = BladeMask(0b011);
pub const SIGMA13: BladeMask = BladeMask(0b101);
pub const SIGMA23: BladeMask = BladeMask(0b110);
pub const SIGMA123: BladeMask = BladeMask(0b111);

/// Quaternion units inside the even subalgebra: `i = σ₂σ₃`, `j = σ₃σ₁`,
/// `k = σ₁σ₂`.
pub const QUAT_I: (f64, BladeMask) = (1.0, SIGMA23);
pub const QUAT_J: (f64, BladeMask) = (-1.0, SIGMA13);
pub const QUAT_K: (f64, BladeMask) = (1.0, SIGMA12);

pub fn g3_signature() -> AlgebraSignature {
    AlgebraSignature::euclidean(3).expect("three generators")
}

/// An element of 𝔾₃ with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct G3Element(Multivector);

impl G3Element {
    pub fn new(value: Multivector) -> Result<Self> {
        if value.signature() != g3_signature() {
            return Err(Error::DimensionMismatch {
                left: value.dim(),
                right: 3,
            });
        }
        let im = value.max_imaginary();
        if im >= G3_TOL {
            return Err(Error::NotReal(im));
        }
        let real = Multivector::from_terms(
            g3_signature(),
            value.terms().map(|(m, z)| (m, Complex64::new(z.re, 0.0))),
        )?;
        Ok(Self(real))
    }

    pub fn from_terms(terms: &[(f64, BladeMask)]) -> Self {
        let mv = Multivector::from_terms(
            g3_signature(),
            terms.iter().map(|&(c, m)| (m, Complex64::new(c, 0.0))),
        )
        .expect("masks fit in three generators");
        Self(mv)
    }

    pub fn zero() -> Self {
        Self(Multivector::zero(g3_signature()))
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    pub fn scalar(c: f64) -> Self {
        Self::from_terms(&[(c, BladeMask::SCALAR)])
    }

    pub fn blade(mask: BladeMask) -> Self {
        Self::from_terms(&[(1.0, mask)])
    }

    /// `σ_k` for `k ∈ {1, 2, 3}`.
    pub fn sigma(k: usize) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::OutOfRange {
                what: "Pauli index",
                got: k,
                range: "1..=3",
            });
        }
        Ok(Self::blade(BladeMask::generator(k)))
    }

    /// The pseudoscalar `σ₁σ₂σ₃`.
    pub fn pseudoscalar() -> Self {
        Self::blade(SIGMA123)
    }

    /// `I_ℝ = ½(1 + σ₃)`.
    pub fn real_idempotent() -> Self {
        Self::from_terms(&[(0.5, BladeMask::SCALAR), (0.5, SIGMA3)])
    }

    pub fn value(&self) -> &Multivector {
        &self.0
    }

    pub fn into_value(self) -> Multivector {
        self.0
    }

    pub fn coefficient(&self, mask: BladeMask) -> f64 {
        self.0.coefficient(mask).re
    }

    pub fn scalar_part(&self) -> f64 {
        self.coefficient(BladeMask::SCALAR)
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.reverse())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.scale(c))
    }

    pub fn is_even(&self) -> bool {
        self.0.terms().all(|(m, _)| m.grade() % 2 == 0)
    }

    pub fn max_deviation(&self, other: &G3Element) -> f64 {
        self.0.max_deviation(&other.0)
    }

    pub fn approx_eq(&self, other: &G3Element, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }
}

impl std::fmt::Display for G3Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (mask, z) in self.0.terms() {
            let c = z.re;
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let name: String = mask.generators().map(|g| format!("σ{g}")).collect();
            match (name.is_empty(), c.abs() == 1.0) {
                (true, _) => write!(f, "{}", c.abs())?,
                (false, true) => f.write_str(&name)?,
                (false, false) => write!(f, "{}{name}", c.abs())?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! g3_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&G3Element> for &G3Element {
            type Output = G3Element;
            fn $method(self, rhs: &G3Element) -> G3Element {
                G3Element(&self.0 $op &rhs.0)
            }
        }
        impl $trait<G3Element> for G3Element {
            type Output = G3Element;
            fn $method(self, rhs: G3Element) -> G3Element {
                G3Element(&self.0 $op &rhs.0)
            }
        }
    };
}

g3_binop!(Add, add, +);
g3_binop!(Sub, sub, -);
g3_binop!(Mul, mul, *);

impl Neg for &G3Element {
    type Output = G3Element;
    fn neg(self) -> G3Element {
        G3Element(-&self.0)
    }
}

fn quat_unit((c, m): (f64, BladeMask)) -> G3Element {
    G3Element::from_terms(&[(c, m)])
}

/// Quaternionic qubit: an even element `a⁰ + a¹σ₂σ₃ + a²σ₃σ₁ + a³σ₁σ₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatQubit(G3Element);

impl QuatQubit {
    pub fn new(value: G3Element) -> Result<Self> {
        if !value.is_even() {
            return Err(Error::NotEven);
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> &G3Element {
        &self.0
    }

    /// `(a⁰, a¹, a², a³)`.
    pub fn coordinates(&self) -> [f64; 4] {
        [
            self.0.scalar_part(),
            self.0.coefficient(SIGMA23),
            -self.0.coefficient(SIGMA13),
            self.0.coefficient(SIGMA12),
        ]
    }
}

/// `α = a⁰ + a³i`, `β = −a² + a¹i` ↦ `a⁰ + a¹σ₂σ₃ + a²σ₃σ₁ + a³σ₁σ₂`.
pub fn quat_encode(alpha: Complex64, beta: Complex64) -> QuatQubit {
    let (a0, a3) = (alpha.re, alpha.im);
    let (a2, a1) = (-beta.re, beta.im);
    QuatQubit(G3Element::from_terms(&[
        (a0, BladeMask::SCALAR),
        (a1, SIGMA23),
        (-a2, SIGMA13),
        (a3, SIGMA12),
    ]))
}

pub fn quat_decode(psi: &QuatQubit) -> (Complex64, Complex64) {
    let [a0, a1, a2, a3] = psi.coordinates();
    (Complex64::new(a0, a3), Complex64::new(-a2, a1))
}

/// `[φ̃ψ]₀ − [φ̃ψσ₁σ₂]₀ i`.
pub fn quat_inner(phi: &QuatQubit, psi: &QuatQubit) -> Complex64 {
    let prod = &phi.0.reverse() * &psi.0;
    let turned = &prod * &G3Element::blade(SIGMA12);
    Complex64::new(prod.scalar_part(), -turned.scalar_part())
}

/// `σ_k ψ σ₃`.
pub fn quat_pauli(k: usize, psi: &QuatQubit) -> Result<QuatQubit> {
    let s = G3Element::sigma(k)?;
    let out = &(&s * &psi.0) * &G3Element::blade(SIGMA3);
    Ok(QuatQubit(out))
}

/// Multiplication by the complex unit: `ψ ↦ ψσ₁σ₂`.
pub fn quat_complex_structure(psi: &QuatQubit) -> QuatQubit {
    QuatQubit(&psi.0 * &G3Element::blade(SIGMA12))
}

/// Image of `x ∈ ℂ₂` under the real isomorphism ℂ₂ → 𝔾₃.
///
/// On generators: `e₁ ↦ σ₁`, `e₂ ↦ −σ₂`, `i ↦ σ₁σ₂σ₃`.
pub fn c2_to_g3(x: &Multivector) -> Result<G3Element> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: 2,
        });
    }
    let images = [
        G3Element::one(),
        G3Element::blade(SIGMA1),
        G3Element::blade(SIGMA2).scale(-1.0),
        G3Element::blade(SIGMA12).scale(-1.0),
    ];
    let p = G3Element::pseudoscalar();
    let mut acc = G3Element::zero();
    for (mask, z) in x.terms() {
        let img = &images[mask.0 as usize];
        acc = acc + img.scale(z.re) + (&p * img).scale(z.im);
    }
    Ok(acc)
}

/// Inverse of [`c2_to_g3`]: `σ₁ ↦ e₁`, `σ₂ ↦ −e₂`, `σ₃ ↦ i e₁e₂`.
pub fn g3_to_c2(x: &G3Element) -> Multivector {
    let sig = AlgebraSignature::euclidean(2).expect("two generators");
    let e1 = Multivector::generator(sig, 1);
    let e2 = Multivector::generator(sig, 2);
    let images = [
        e1.clone(),
        -&e2,
        (&e1 * &e2).scale(Complex64::new(0.0, 1.0)),
    ];
    let mut acc = Multivector::zero(sig);
    for (mask, z) in x.value().terms() {
        let term = mask
            .generators()
            .fold(Multivector::one(sig), |t, g| &t * &images[g - 1]);
        acc = acc + term.scale(z.re);
    }
    acc
}

/// Qubit `(a⁰ + a¹σ₁ + a²σ₂ + a³σ₁σ₂) I_ℝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealComplexQubit(G3Element);

impl RealComplexQubit {
    /// Checks `ψ I_ℝ = ψ`.
    pub fn new(value: G3Element) -> Result<Self> {
        let dev = (&value * &G3Element::real_idempotent()).max_deviation(&value);
        if dev >= G3_TOL {
            return Err(Error::NotSpinor(dev));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> &G3Element {
        &self.0
    }

    /// `(a⁰, a¹, a², a³)`.
    pub fn coordinates(&self) -> [f64; 4] {
        [
            2.0 * self.0.scalar_part(),
            2.0 * self.0.coefficient(SIGMA1),
            2.0 * self.0.coefficient(SIGMA2),
            2.0 * self.0.coefficient(SIGMA12),
        ]
    }
}

/// `α = a⁰ + a³i`, `β = a¹ + a²i` ↦ `(a⁰ + a¹σ₁ + a²σ₂ + a³σ₁σ₂) I_ℝ`.
pub fn rc_encode(alpha: Complex64, beta: Complex64) -> RealComplexQubit {
    let body = G3Element::from_terms(&[
        (alpha.re, BladeMask::SCALAR),
        (beta.re, SIGMA1),
        (beta.im, SIGMA2),
        (alpha.im, SIGMA12),
    ]);
    RealComplexQubit(&body * &G3Element::real_idempotent())
}

pub fn rc_decode(psi: &RealComplexQubit) -> (Complex64, Complex64) {
    let [a0, a1, a2, a3] = psi.coordinates();
    (Complex64::new(a0, a3), Complex64::new(a1, a2))
}

/// `2([φ̃ψ]₀ − [φ̃ψ P]₀ i)` with `P = σ₁σ₂σ₃` the image of the complex unit.
pub fn rc_inner(phi: &RealComplexQubit, psi: &RealComplexQubit) -> Complex64 {
    let prod = &phi.0.reverse() * &psi.0;
    let turned = &prod * &G3Element::pseudoscalar();
    Complex64::new(2.0 * prod.scalar_part(), -2.0 * turned.scalar_part())
}

/// `σ_k ψ`.
pub fn rc_pauli(k: usize, psi: &RealComplexQubit) -> Result<RealComplexQubit> {
    Ok(RealComplexQubit(&G3Element::sigma(k)? * &psi.0))
}

/// Formal tensor product of up to three copies of 𝔾₃. Factors in different
/// slots commute.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorG3 {
    n: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

pub const MAX_TENSOR_SLOTS: usize = 3;

impl TensorG3 {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TENSOR_SLOTS {
            return Err(Error::OutOfRange {
                what: "tensor slots",
                got: n,
                range: "1..=3",
            });
        }
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut t = Self::zero(n)?;
        t.terms.insert(vec![0; n], 1.0);
        Ok(t)
    }

    /// `x` in slot `k` (1-based), identity in the others.
    pub fn slot(n: usize, k: usize, x: &G3Element) -> Result<Self> {
        let mut t = Self::zero(n)?;
        if k == 0 || k > n {
            return Err(Error::WireOutOfRange { wire: k, n });
        }
        for (mask, z) in x.value().terms() {
            let mut key = vec![0u8; n];
            key[k - 1] = mask.0 as u8;
            t.terms.insert(key, z.re);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn coefficient(&self, key: &[u8]) -> f64 {
        self.terms.get(key).copied().unwrap_or(0.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| v.abs() > 1e-15);
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "tensor slot count mismatch");
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.check(other);
        let keys = self.terms.keys().chain(other.terms.keys());
        keys.map(|k| (self.coefficient(k) - other.coefficient(k)).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for &TensorG3 {
    type Output = TensorG3;
    fn add(self, rhs: &TensorG3) -> TensorG3 {
        self.check(rhs);
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            *out.terms.entry(k.clone()).or_insert(0.0) += v;
        }
        out.prune();
        out
    }
}

impl Sub for &TensorG3 {
    type Output = TensorG3;
    fn sub(self, rhs: &TensorG3) -> TensorG3 {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &TensorG3 {
    type Output = TensorG3;
    fn mul(self, rhs: &TensorG3) -> TensorG3 {
        self.check(rhs);
        let sig = g3_signature();
        let mut out = TensorG3 {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut sign = 1.0;
                let key: Vec<u8> = ka
                    .iter()
                    .zip(kb)
                    .map(|(&a, &b)| {
                        let (s, m) = blade_product(BladeMask(a as u64), BladeMask(b as u64), sig);
                        sign *= s;
                        m.0 as u8
                    })
                    .collect();
                *out.terms.entry(key).or_insert(0.0) += sign * va * vb;
            }
        }
        out.prune();
        out
    }
}

/// `J_k`: the complex unit `iσ₃ = σ₁σ₂` in slot `k`.
pub fn complex_structure(n: usize, k: usize) -> Result<TensorG3> {
    TensorG3::slot(n, k, &G3Element::blade(SIGMA12))
}

/// `E_n = Π_{k=2}^{n} ½(1 − J₁J_k)`.
pub fn correlator(n: usize) -> Result<TensorG3> {
    if !(2..=MAX_TENSOR_SLOTS).contains(&n) {
        return Err(Error::OutOfRange {
            what: "correlator size",
            got: n,
            range: "2..=3",
        });
    }
    let one = TensorG3::one(n)?;
    let j1 = complex_structure(n, 1)?;
    let mut e = one.clone();
    for k in 2..=n {
        let jk = complex_structure(n, k)?;
        let factor = (&one - &(&j1 * &jk)).scale(0.5);
        e = &e * &factor;
    }
    Ok(e)
}

/// `(θ, φ)` of the normalized qubit `α|0⟩ + β|1⟩` after rotating the global
/// phase so that `α ≥ 0`. `φ = 0` at the poles.
pub fn bloch_angles(alpha: Complex64, beta: Complex64) -> Result<(f64, f64)> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let theta = 2.0 * beta.norm().atan2(alpha.norm());
    let pole = beta.norm() < 1e-15 || alpha.norm() < 1e-15;
    let phi = if pole {
        0.0
    } else {
        (beta.arg() - alpha.arg()).rem_euclid(std::f64::consts::TAU)
    };
    Ok((theta, phi))
}

fn quat_exp(unit: (f64, BladeMask), angle: f64) -> G3Element {
    let x = quat_unit(unit).scale(angle).into_value();
    G3Element::new(exp_element(&x, EXP_TOL).expect("closed form")).expect("real rotor")
}

fn quat_components(v: &G3Element) -> [f64; 3] {
    [
        QUAT_I.0 * v.coefficient(QUAT_I.1),
        QUAT_J.0 * v.coefficient(QUAT_J.1),
        QUAT_K.0 * v.coefficient(QUAT_K.1),
    ]
}

/// The rotor `e^{−φk/2} e^{−θj/2}` carrying the north pole `k` to the Bloch
/// point `(θ, φ)`.
pub fn bloch_rotor(theta: f64, phi: f64) -> G3Element {
    &quat_exp(QUAT_K, -phi / 2.0) * &quat_exp(QUAT_J, -theta / 2.0)
}

/// `R k R̃` read off in the `(i, j, k)` basis.
pub fn bloch_verify(theta: f64, phi: f64) -> [f64; 3] {
    let r = bloch_rotor(theta, phi);
    quat_components(&(&(&r * &quat_unit(QUAT_K)) * &r.reverse()))
}

/// Bloch vector of a normalized qubit computed as `ψ k ψ̃` with `ψ` the
/// quaternionic encoding.
pub fn bloch_vector(alpha: Complex64, beta: Complex64) -> [f64; 3] {
    let psi = quat_encode(alpha, beta);
    let v = &(psi.value() * &quat_unit(QUAT_K)) * &psi.value().reverse();
    quat_components(&v)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct IsoReport {
    pub basis_size: usize,
    pub pairs_checked: usize,
    /// `max |map(xy) − map(x)map(y)|` over basis pairs.
    pub multiplicative_error: f64,
    /// `max |map(x†) − reverse(map(x))|` over basis elements.
    pub reverse_error: f64,
    /// `max |inverse(map(x)) − x|` over basis elements.
    pub inverse_error: f64,
    /// Deviation from the printed table of images.
    pub table_error: f64,
}

impl IsoReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.multiplicative_error <= tol
            && self.reverse_error <= tol
            && self.inverse_error <= tol
            && self.table_error <= tol
    }
}

/// The 16 test elements of ℂ₂: the 8 real multiples `{1, i}·{1, e₁, e₂, e₁e₂}`
/// and the 8 entries `{1, i}·{1, f, f†, ff†}` of the Witt table.
pub fn c2_test_basis() -> Vec<Multivector> {
    let sig = AlgebraSignature::euclidean(2).expect("two generators");
    let i = Complex64::new(0.0, 1.0);
    let blades: Vec<Multivector> = (0..4u64)
        .map(|m| Multivector::blade(sig, BladeMask(m), 1.0))
        .collect();
    let e1 = &blades[1];
    let e2 = &blades[2];
    let f = (e1 - &e2.scale(i)).scale(0.5);
    let fd = (e1 + &e2.scale(i)).scale(0.5);
    let ffd = &f * &fd;
    let witt = [Multivector::one(sig), f, fd, ffd];
    let mut out = Vec::with_capacity(16);
    for x in blades.iter().chain(witt.iter()) {
        out.push(x.clone());
        out.push(x.scale(i));
    }
    out
}

/// The printed images of `{1, i, f, if, f†, if†, ff†, iff†}`.
pub fn c2_table() -> Vec<(Multivector, G3Element)> {
    let basis = c2_test_basis();
    let h = 0.5;
    let images = [
        G3Element::one(),
        G3Element::pseudoscalar(),
        G3Element::from_terms(&[(h, SIGMA1), (-h, SIGMA13)]),
        G3Element::from_terms(&[(h, SIGMA23), (-h, SIGMA2)]),
        G3Element::from_terms(&[(h, SIGMA1), (h, SIGMA13)]),
        G3Element::from_terms(&[(h, SIGMA23), (h, SIGMA2)]),
        G3Element::from_terms(&[(h, BladeMask::SCALAR), (h, SIGMA3)]),
        G3Element::from_terms(&[(h, SIGMA12), (h, SIGMA123)]),
    ];
    basis[8..].iter().cloned().zip(images).collect()
}

/// Exhaustive check that [`c2_to_g3`] is an isomorphism transporting `†`
/// to reversion.
pub fn iso_check() -> IsoReport {
    let basis = c2_test_basis();
    let images: Vec<G3Element> = basis
        .iter()
        .map(|x| c2_to_g3(x).expect("ℂ₂ element"))
        .collect();
    let mut multiplicative_error: f64 = 0.0;
    for (x, mx) in basis.iter().zip(&images) {
        for (y, my) in basis.iter().zip(&images) {
            let lhs = c2_to_g3(&(x * y)).expect("ℂ₂ element");
            multiplicative_error = multiplicative_error.max(lhs.max_deviation(&(mx * my)));
        }
    }
    let mut reverse_error: f64 = 0.0;
    let mut inverse_error: f64 = 0.0;
    for (x, mx) in basis.iter().zip(&images) {
        let dag = c2_to_g3(&x.dagger()).expect("ℂ₂ element");
        reverse_error = reverse_error.max(dag.max_deviation(&mx.reverse()));
        inverse_error = inverse_error.max(g3_to_c2(mx).max_deviation(x));
    }
    let table_error = c2_table()
        .iter()
        .map(|(x, img)| c2_to_g3(x).expect("ℂ₂ element").max_deviation(img))
        .fold(0.0, f64::max);
    IsoReport {
        basis_size: basis.len(),
        pairs_checked: basis.len() * basis.len(),
        multiplicative_error,
        reverse_error,
        inverse_error,
        table_error,
    }
}

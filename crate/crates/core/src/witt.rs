//! Witt basis of the complex algebra over `2n` generators, its idempotents,
//! and the spinor ideal that carries `n`-qubit states.
//!
//! Generator `e_j` is paired with `e_{j+n}`:
//!
//! ```text
//! f_j  = ½(e_j − i e_{j+n})      f_j† = ½(e_j + i e_{j+n})
//! I_j  = f_j f_j†                K_j  = f_j† f_j
//! I    = I_1 ⋯ I_n
//! ```
//!
//! States live in the left ideal `ℂ_{2n} I`; the basis state for bits
//! `i_1 … i_n` (most significant first) is `(f_1†)^{i_1} ⋯ (f_n†)^{i_n} I`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::algebra::{
    blade_product, hermitian_inner_raw, AlgebraSignature, BladeMask, Multivector,
};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 32;

/// Membership tolerance for `x I = x`, relative to `max(1, |x|)`.
pub const SPINOR_TOL: f64 = 1e-12;

/// Largest register for which all basis states are materialized.
pub const MAX_DENSE_QUBITS: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Precomputed Witt elements and idempotents for `n` qubits.
#[derive(Debug)]
pub struct WittContext {
    n: usize,
    sig: AlgebraSignature,
    f: Vec<Multivector>,
    f_dag: Vec<Multivector>,
    idem_i: Vec<Multivector>,
    idem_k: Vec<Multivector>,
    primitive: OnceLock<Multivector>,
    basis: OnceLock<Vec<Multivector>>,
    strict: bool,
}

impl WittContext {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCountOutOfRange {
                got: n,
                max: MAX_QUBITS,
            });
        }
        let sig = AlgebraSignature::euclidean(2 * n)?;
        let mut f = Vec::with_capacity(n);
        let mut f_dag = Vec::with_capacity(n);
        for j in 1..=n {
            let e = Multivector::generator(sig, j);
            let e_pair = Multivector::generator(sig, j + n);
            f.push((&e - &e_pair.scale(I)).scale(0.5));
            f_dag.push((&e + &e_pair.scale(I)).scale(0.5));
        }
        let idem_i = (0..n).map(|j| &f[j] * &f_dag[j]).collect();
        let idem_k = (0..n).map(|j| &f_dag[j] * &f[j]).collect();
        Ok(Self {
            n,
            sig,
            f,
            f_dag,
            idem_i,
            idem_k,
            primitive: OnceLock::new(),
            basis: OnceLock::new(),
            strict: false,
        })
    }

    /// Enables membership checks on state construction and after every gate.
    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn one(&self) -> Multivector {
        Multivector::one(self.sig)
    }

    pub fn zero(&self) -> Multivector {
        Multivector::zero(self.sig)
    }

    pub fn scalar(&self, z: impl Into<Complex64>) -> Multivector {
        Multivector::scalar(self.sig, z)
    }

    fn index(&self, j: usize) -> usize {
        assert!(
            (1..=self.n).contains(&j),
            "wire {j} out of range 1..={}",
            self.n
        );
        j - 1
    }

    /// `f_j`, 1-based. Panics outside `1..=n`.
    pub fn f(&self, j: usize) -> &Multivector {
        &self.f[self.index(j)]
    }

    pub fn f_dag(&self, j: usize) -> &Multivector {
        &self.f_dag[self.index(j)]
    }

    /// `I_j = f_j f_j†`.
    pub fn idem_i(&self, j: usize) -> &Multivector {
        &self.idem_i[self.index(j)]
    }

    /// `K_j = f_j† f_j`.
    pub fn idem_k(&self, j: usize) -> &Multivector {
        &self.idem_k[self.index(j)]
    }

    /// The primitive idempotent `I = I_1 ⋯ I_n`, built on first use since it
    /// has `2^n` terms.
    pub fn primitive(&self) -> &Multivector {
        self.primitive.get_or_init(|| {
            self.idem_i
                .iter()
                .fold(self.one(), |acc, idem| &acc * idem)
        })
    }

    /// The two blades `e_j` and `e_{j+n}` owned by wire `j`.
    pub fn wire_mask(&self, j: usize) -> BladeMask {
        let k = self.index(j);
        BladeMask((1u64 << k) | (1u64 << (k + self.n)))
    }

    pub fn check_wire(&self, wire: usize) -> Result<()> {
        if (1..=self.n).contains(&wire) {
            Ok(())
        } else {
            Err(Error::WireOutOfRange { wire, n: self.n })
        }
    }

    fn basis_values(&self) -> Result<&[Multivector]> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::QubitCountOutOfRange {
                got: self.n,
                max: MAX_DENSE_QUBITS,
            });
        }
        Ok(self.basis.get_or_init(|| {
            (0..1usize << self.n)
                .map(|k| self.basis_value(&index_bits(k, self.n)))
                .collect()
        }))
    }

    fn basis_value(&self, bits: &[bool]) -> Multivector {
        let mut v = self.primitive().clone();
        for j in (1..=self.n).rev() {
            if bits[j - 1] {
                v = self.f_dag(j) * &v;
            }
        }
        v
    }
}

/// Bits of `k`, most significant first, padded to `n`.
pub fn index_bits(k: usize, n: usize) -> Vec<bool> {
    (0..n).map(|j| (k >> (n - 1 - j)) & 1 == 1).collect()
}

/// Inverse of [`index_bits`].
pub fn bits_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, b| (acc << 1) | usize::from(*b))
}

/// A multivector in the spinor ideal of an `n`-qubit context.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorState {
    n: usize,
    value: Multivector,
}

impl SpinorState {
    /// Wraps `value`, checking ideal membership when the context is strict.
    pub fn new(ctx: &WittContext, value: Multivector) -> Result<Self> {
        if value.signature() != ctx.signature() {
            return Err(Error::DimensionMismatch {
                left: value.dim(),
                right: 2 * ctx.n,
            });
        }
        if ctx.strict {
            let dev = membership_deviation(ctx, &value);
            if dev > SPINOR_TOL * value.norm().max(1.0) {
                return Err(Error::NotSpinor(dev));
            }
        }
        Ok(Self { n: ctx.n, value })
    }

    /// Like [`SpinorState::new`] but always checks membership.
    pub fn new_checked(ctx: &WittContext, value: Multivector) -> Result<Self> {
        if !is_spinor(ctx, &value) {
            return Err(Error::NotSpinor(membership_deviation(ctx, &value)));
        }
        Self::new(ctx, value)
    }

    pub(crate) fn from_parts(n: usize, value: Multivector) -> Self {
        Self { n, value }
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
}

/// `(f_1†)^{i_1} ⋯ (f_n†)^{i_n} I` for bits given most significant first.
pub fn basis_state(ctx: &WittContext, bits: &[bool]) -> Result<SpinorState> {
    if bits.len() != ctx.n {
        return Err(Error::BitCount {
            expected: ctx.n,
            got: bits.len(),
        });
    }
    let value = if ctx.n <= MAX_DENSE_QUBITS {
        ctx.basis_values()?[bits_index(bits)].clone()
    } else {
        ctx.basis_value(bits)
    };
    Ok(SpinorState::from_parts(ctx.n, value))
}

/// Normalized Hermitian product `2^n [x† y]_0`.
pub fn spinor_inner(ctx: &WittContext, x: &SpinorState, y: &SpinorState) -> Result<Complex64> {
    for s in [x, y] {
        if s.n != ctx.n {
            return Err(Error::QubitMismatch {
                left: ctx.n,
                right: s.n,
            });
        }
    }
    Ok(hermitian_inner_raw(&x.value, &y.value)? * 2f64.powi(ctx.n as i32))
}

fn membership_deviation(ctx: &WittContext, x: &Multivector) -> f64 {
    if x.signature() != ctx.signature() {
        return f64::INFINITY;
    }
    (x * ctx.primitive()).max_deviation(x)
}

/// Whether `x I = x` within tolerance.
pub fn is_spinor(ctx: &WittContext, x: &Multivector) -> bool {
    membership_deviation(ctx, x) <= SPINOR_TOL * x.norm().max(1.0)
}

/// Amplitudes `⟨k|x⟩` for `k = 0 … 2^n − 1`, bits most significant first.
///
/// Always verifies that the amplitudes account for the whole norm of `x`
/// (equality in Bessel's inequality), which fails exactly when `x` has a
/// component outside the ideal.
pub fn state_to_amplitudes(ctx: &WittContext, x: &SpinorState) -> Result<Vec<Complex64>> {
    if x.n != ctx.n {
        return Err(Error::QubitMismatch {
            left: ctx.n,
            right: x.n,
        });
    }
    let scale = 2f64.powi(ctx.n as i32);
    let amps = ctx
        .basis_values()?
        .iter()
        .map(|b| hermitian_inner_raw(b, &x.value).map(|z| z * scale))
        .collect::<Result<Vec<_>>>()?;
    let total = hermitian_inner_raw(&x.value, &x.value)?.re * scale;
    let captured: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let dev = (total - captured).abs();
    if dev > 1e-10 * total.max(1.0) {
        return Err(Error::NotSpinor(dev));
    }
    Ok(amps)
}

/// `Σ_k v_k |k⟩`.
pub fn amplitudes_to_state(ctx: &WittContext, v: &[Complex64]) -> Result<SpinorState> {
    let basis = ctx.basis_values()?;
    if v.len() != basis.len() {
        return Err(Error::AmplitudeLength {
            expected: basis.len(),
            got: v.len(),
        });
    }
    let value = basis
        .iter()
        .zip(v)
        .fold(ctx.zero(), |acc, (b, a)| acc + b.scale(*a));
    Ok(SpinorState::from_parts(ctx.n, value))
}

/// One wire's factor in a Witt word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WittLetter {
    One,
    F,
    FDag,
    /// `f† f`
    K,
}

const LOCAL_ONE: [(WittLetter, Complex64); 1] = [(WittLetter::One, Complex64::new(1.0, 0.0))];
// e_j = f + f†
const LOCAL_LO: [(WittLetter, Complex64); 2] = [
    (WittLetter::F, Complex64::new(1.0, 0.0)),
    (WittLetter::FDag, Complex64::new(1.0, 0.0)),
];
// e_{j+n} = i(f − f†)
const LOCAL_HI: [(WittLetter, Complex64); 2] = [
    (WittLetter::F, Complex64::new(0.0, 1.0)),
    (WittLetter::FDag, Complex64::new(0.0, -1.0)),
];
// e_j e_{j+n} = −i + 2i f†f
const LOCAL_BOTH: [(WittLetter, Complex64); 2] = [
    (WittLetter::One, Complex64::new(0.0, -1.0)),
    (WittLetter::K, Complex64::new(0.0, 2.0)),
];

/// Coefficients of `x` over the words `w_1 w_2 ⋯ w_n`, one letter per wire
/// from `{1, f_j, f_j†, f_j† f_j}`, multiplied in wire order.
pub fn witt_expansion(
    ctx: &WittContext,
    x: &Multivector,
) -> Result<BTreeMap<Vec<WittLetter>, Complex64>> {
    if x.signature() != ctx.signature() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: 2 * ctx.n,
        });
    }
    let n = ctx.n;
    let one = Complex64::new(1.0, 0.0);
    let mut out: BTreeMap<Vec<WittLetter>, Complex64> = BTreeMap::new();
    for (blade, coef) in x.terms() {
        // e_A = σ · Π_j (e_j^{a_j} e_{j+n}^{b_j}) with the wire parts in order.
        let mut product = BladeMask::SCALAR;
        let mut sign = 1.0;
        let mut locals: Vec<&[(WittLetter, Complex64)]> = Vec::with_capacity(n);
        for j in 1..=n {
            let part = BladeMask(blade.0 & ctx.wire_mask(j).0);
            let (s, p) = blade_product(product, part, ctx.sig);
            sign *= s;
            product = p;
            let lo = part.contains(j);
            let hi = part.contains(j + n);
            locals.push(match (lo, hi) {
                (false, false) => &LOCAL_ONE,
                (true, false) => &LOCAL_LO,
                (false, true) => &LOCAL_HI,
                (true, true) => &LOCAL_BOTH,
            });
        }
        debug_assert_eq!(product, blade);
        let mut partial: Vec<(Vec<WittLetter>, Complex64)> = vec![(Vec::new(), coef * sign)];
        for options in locals {
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for (word, c) in &partial {
                for (letter, d) in options {
                    let mut w = word.clone();
                    w.push(*letter);
                    next.push((w, c * d));
                }
            }
            partial = next;
        }
        for (word, c) in partial {
            *out.entry(word).or_insert(one * 0.0) += c;
        }
    }
    out.retain(|_, c| c.norm() > 1e-12);
    Ok(out)
}

/// Renders `x` as a factored sum of Witt words, e.g.
/// `1 + f1† f1 f2† f2 (f3 + f3† − 1)`.
pub fn render_witt(ctx: &WittContext, x: &Multivector) -> Result<String> {
    let expansion = witt_expansion(ctx, x)?;
    if expansion.is_empty() {
        return Ok("0".to_string());
    }
    let mut root = Node::default();
    for (word, c) in expansion {
        let path: Vec<(usize, WittLetter)> = word
            .into_iter()
            .enumerate()
            .filter(|(_, l)| *l != WittLetter::One)
            .map(|(j, l)| (j + 1, l))
            .collect();
        root.insert(&path, c);
    }
    Ok(join_terms(&root.terms(true)))
}

#[derive(Default)]
struct Node {
    coef: Option<Complex64>,
    children: BTreeMap<(usize, WittLetter), Node>,
}

struct Term {
    coef: Complex64,
    body: String,
}

impl Node {
    fn insert(&mut self, path: &[(usize, WittLetter)], c: Complex64) {
        match path.split_first() {
            None => *self.coef.get_or_insert(Complex64::new(0.0, 0.0)) += c,
            Some((head, rest)) => self.children.entry(*head).or_default().insert(rest, c),
        }
    }

    fn terms(&self, root: bool) -> Vec<Term> {
        let mut out = Vec::new();
        let mut constant = self.coef.map(|coef| Term {
            coef,
            body: String::new(),
        });
        if root {
            out.extend(constant.take());
        }
        for (key, child) in &self.children {
            let mut prefix = vec![letter_str(*key)];
            let mut node = child;
            while node.coef.is_none() && node.children.len() == 1 {
                let (k, next) = node.children.iter().next().unwrap();
                prefix.push(letter_str(*k));
                node = next;
            }
            let prefix = prefix.join(" ");
            let sub = node.terms(false);
            if sub.len() == 1 {
                let t = &sub[0];
                let body = if t.body.is_empty() {
                    prefix
                } else {
                    format!("{prefix} {}", t.body)
                };
                out.push(Term { coef: t.coef, body });
            } else {
                let g = sub[0].coef;
                let uniform = sub
                    .iter()
                    .all(|t| (t.coef - g).norm() < 1e-12 || (t.coef + g).norm() < 1e-12);
                let (factor, inner) = if uniform {
                    let scaled: Vec<Term> = sub
                        .iter()
                        .map(|t| Term {
                            coef: t.coef / g,
                            body: t.body.clone(),
                        })
                        .collect();
                    (g, join_terms(&scaled))
                } else {
                    (Complex64::new(1.0, 0.0), join_terms(&sub))
                };
                out.push(Term {
                    coef: factor,
                    body: format!("{prefix} ({inner})"),
                });
            }
        }
        if !root {
            out.extend(constant);
        }
        out
    }
}

fn letter_str((wire, letter): (usize, WittLetter)) -> String {
    match letter {
        WittLetter::One => "1".to_string(),
        WittLetter::F => format!("f{wire}"),
        WittLetter::FDag => format!("f{wire}†"),
        WittLetter::K => format!("f{wire}† f{wire}"),
    }
}

fn is_negative(c: Complex64) -> bool {
    if c.im.abs() < 1e-12 {
        c.re < 0.0
    } else if c.re.abs() < 1e-12 {
        c.im < 0.0
    } else {
        false
    }
}

fn fmt_real(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    if r < 0.0 {
        format!("−{}", -r)
    } else {
        format!("{}", r.abs())
    }
}

/// Coefficient prefix for a term: empty for 1, `i` for the imaginary unit.
fn coef_str(c: Complex64, has_body: bool) -> String {
    let unit = |x: f64| (x - 1.0).abs() < 1e-12;
    if c.im.abs() < 1e-12 {
        if unit(c.re) && has_body {
            String::new()
        } else {
            fmt_real(c.re)
        }
    } else if c.re.abs() < 1e-12 {
        if unit(c.im) {
            "i".to_string()
        } else {
            format!("{}i", fmt_real(c.im))
        }
    } else {
        let sign = if c.im < 0.0 { '−' } else { '+' };
        let im = if unit(c.im.abs()) {
            String::new()
        } else {
            fmt_real(c.im.abs())
        };
        format!("({} {sign} {im}i)", fmt_real(c.re))
    }
}

fn join_terms(terms: &[Term]) -> String {
    let mut s = String::new();
    for (idx, t) in terms.iter().enumerate() {
        let neg = is_negative(t.coef);
        let c = if neg { -t.coef } else { t.coef };
        if idx == 0 {
            if neg {
                s.push('−');
            }
        } else {
            s.push_str(if neg { " − " } else { " + " });
        }
        let cs = coef_str(c, !t.body.is_empty());
        s.push_str(&cs);
        if !t.body.is_empty() {
            if !cs.is_empty() {
                s.push(' ');
            }
            let _ = write!(s, "{}", t.body);
        }
    }
    s
}

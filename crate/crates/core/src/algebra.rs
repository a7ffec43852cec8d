//! Sparse arithmetic in the Clifford algebra over an orthonormal basis
//! `e_1 … e_m` with complex coefficients.
//!
//! A blade `e_A` is stored as a bitmask with bit `j-1` set iff `e_j` occurs in
//! it, always in ascending generator order. A [`Multivector`] is a sparse map
//! from blade masks to `Complex64` coefficients; every product prunes
//! coefficients whose magnitude falls below [`DEFAULT_PRUNE`].
//!
//! The complex algebra uses a Euclidean signature. Real algebras such as the
//! algebra of 3-space are the same kernel with coefficients kept real.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest generator count representable by a [`BladeMask`].
pub const MAX_GENERATORS: usize = 64;

/// Coefficients with magnitude below this are dropped after every product.
pub const DEFAULT_PRUNE: f64 = 1e-14;

/// Tolerance used by `PartialEq` on multivectors.
pub const DEFAULT_EQ_TOL: f64 = 1e-12;

// Products over at most this many generators accumulate into a dense buffer.
const DENSE_LIMIT: usize = 16;

/// A basis blade, encoded as a generator bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BladeMask(pub u64);

impl BladeMask {
    pub const SCALAR: BladeMask = BladeMask(0);

    /// The blade of the single generator `e_j` (1-based).
    pub fn generator(j: usize) -> Self {
        assert!(
            (1..=MAX_GENERATORS).contains(&j),
            "generator index {j} out of range"
        );
        BladeMask(1 << (j - 1))
    }

    /// Canonical blade containing the given generators. Repeated indices cancel
    /// pairwise, which is what a Euclidean product would do up to sign.
    pub fn from_generators<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        gens.into_iter()
            .fold(BladeMask::SCALAR, |acc, j| BladeMask(acc.0 ^ Self::generator(j).0))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, j: usize) -> bool {
        (1..=MAX_GENERATORS).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn is_subset_of(self, other: BladeMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: BladeMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Generator indices (1-based) in ascending order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |b| bits & (1u64 << b) != 0).map(|b| b + 1)
    }

    /// Highest generator index present, 0 for the scalar blade.
    pub fn top(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

/// Signature `(p, q)`: generators `1..=p` square to `+1`, `p+1..=p+q` to `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    pub p: usize,
    pub q: usize,
}

impl AlgebraSignature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(p + q));
        }
        Ok(Self { p, q })
    }

    pub fn euclidean(m: usize) -> Result<Self> {
        Self::new(m, 0)
    }

    pub fn dim(self) -> usize {
        self.p + self.q
    }

    fn negative_mask(self) -> u64 {
        mask_below(self.p + self.q) & !mask_below(self.p)
    }

    fn full_mask(self) -> u64 {
        mask_below(self.dim())
    }
}

fn mask_below(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Geometric product of two basis blades: `e_A e_B = sign · e_{A xor B}`.
///
/// The sign counts the transpositions needed to bring the concatenated
/// generator word into ascending order, plus one factor of `-1` for every
/// contracted generator of negative square.
pub fn blade_product(a: BladeMask, b: BladeMask, sig: AlgebraSignature) -> (f64, BladeMask) {
    let mut swaps = 0u32;
    let mut rest = a.0 >> 1;
    while rest != 0 {
        swaps += (rest & b.0).count_ones();
        rest >>= 1;
    }
    swaps += (a.0 & b.0 & sig.negative_mask()).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
    (sign, BladeMask(a.0 ^ b.0))
}

fn reverse_sign(grade: u32) -> f64 {
    // (-1)^{r(r-1)/2}
    if (grade / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn involution_sign(grade: u32) -> f64 {
    if grade.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of the Clifford algebra with complex coefficients.
///
/// Values are immutable once built; all operations return new multivectors.
#[derive(Clone, Debug)]
pub struct Multivector {
    sig: AlgebraSignature,
    terms: BTreeMap<BladeMask, Complex64>,
}

impl Multivector {
    pub fn zero(sig: AlgebraSignature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: AlgebraSignature, value: impl Into<Complex64>) -> Self {
        Self::blade(sig, BladeMask::SCALAR, value)
    }

    pub fn one(sig: AlgebraSignature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// `value · e_A`. Panics if the blade does not fit the signature.
    pub fn blade(sig: AlgebraSignature, mask: BladeMask, value: impl Into<Complex64>) -> Self {
        assert!(
            mask.0 & !sig.full_mask() == 0,
            "blade {:#b} outside {} generators",
            mask.0,
            sig.dim()
        );
        let mut mv = Self::zero(sig);
        let value = value.into();
        if value.norm() >= DEFAULT_PRUNE {
            mv.terms.insert(mask, value);
        }
        mv
    }

    /// The generator `e_j` (1-based).
    pub fn generator(sig: AlgebraSignature, j: usize) -> Self {
        assert!(j >= 1 && j <= sig.dim(), "generator e{j} outside {} generators", sig.dim());
        Self::blade(sig, BladeMask::generator(j), 1.0)
    }

    /// Builds a multivector from `(blade, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(sig: AlgebraSignature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BladeMask, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (mask, c) in terms {
            if mask.0 & !sig.full_mask() != 0 {
                return Err(Error::BladeOutOfRange {
                    mask: mask.0,
                    dim: sig.dim(),
                });
            }
            *map.entry(mask).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut mv = Self { sig, terms: map };
        mv.prune(DEFAULT_PRUNE);
        Ok(mv)
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    /// Stored terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, Complex64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: BladeMask) -> Complex64 {
        self.terms.get(&mask).copied().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coefficient(BladeMask::SCALAR)
    }

    /// Union of all blade masks carrying a coefficient.
    pub fn support(&self) -> BladeMask {
        BladeMask(self.terms.keys().fold(0, |acc, m| acc | m.0))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coefficient magnitude of `self - other`. Infinite when the
    /// signatures differ.
    pub fn max_deviation(&self, other: &Multivector) -> f64 {
        if self.sig != other.sig {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coefficient(*m)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imaginary() <= tol
    }

    /// Drops coefficients with magnitude below `eps`.
    pub fn prune(&mut self, eps: f64) {
        self.terms.retain(|_, c| c.norm() >= eps && c.norm() > 0.0);
    }

    pub fn pruned(mut self, eps: f64) -> Self {
        self.prune(eps);
        self
    }

    pub fn scale(&self, z: impl Into<Complex64>) -> Self {
        let z = z.into();
        let terms = self.terms.iter().map(|(m, c)| (*m, c * z));
        let mut mv = Self {
            sig: self.sig,
            terms: terms.collect(),
        };
        mv.prune(DEFAULT_PRUNE);
        mv
    }

    fn map_blades(&self, f: impl Fn(BladeMask, Complex64) -> Complex64) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().map(|(m, c)| (*m, f(*m, *c))).collect(),
        }
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Self> {
        same_signature(self, other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(*m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self {
            sig: self.sig,
            terms,
        }
        .pruned(DEFAULT_PRUNE))
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn grade(&self, r: usize) -> Self {
        grade_projection(self, r)
    }

    pub fn reverse(&self) -> Self {
        reverse(self)
    }

    pub fn dagger(&self) -> Self {
        hermitian_conjugation(self)
    }
}

fn same_signature(x: &Multivector, y: &Multivector) -> Result<()> {
    if x.sig == y.sig {
        Ok(())
    } else if x.dim() != y.dim() {
        Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        })
    } else {
        Err(Error::SignatureMismatch(x.sig.p, x.sig.q, y.sig.p, y.sig.q))
    }
}

/// Bilinear extension of `blade_product`, restricted to blade pairs accepted by
/// `keep`.
fn bilinear(
    x: &Multivector,
    y: &Multivector,
    eps: f64,
    keep: impl Fn(BladeMask, BladeMask) -> bool,
) -> Result<Multivector> {
    same_signature(x, y)?;
    let sig = x.sig;
    let zero = Complex64::new(0.0, 0.0);
    let terms = if sig.dim() <= DENSE_LIMIT {
        let mut acc = vec![zero; 1usize << sig.dim()];
        let mut touched = vec![false; acc.len()];
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if !keep(*a, *b) {
                    continue;
                }
                let (s, r) = blade_product(*a, *b, sig);
                let slot = r.0 as usize;
                acc[slot] += ca * cb * s;
                touched[slot] = true;
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(i, c)| touched[*i] && c.norm() >= eps && c.norm() > 0.0)
            .map(|(i, c)| (BladeMask(i as u64), c))
            .collect()
    } else {
        let mut acc: BTreeMap<BladeMask, Complex64> = BTreeMap::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if !keep(*a, *b) {
                    continue;
                }
                let (s, r) = blade_product(*a, *b, sig);
                *acc.entry(r).or_insert(zero) += ca * cb * s;
            }
        }
        acc.retain(|_, c| c.norm() >= eps && c.norm() > 0.0);
        acc
    };
    Ok(Multivector { sig, terms })
}

pub fn geometric_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    bilinear(x, y, DEFAULT_PRUNE, |_, _| true)
}

/// Geometric product with a caller-chosen prune threshold.
pub fn geometric_product_with(x: &Multivector, y: &Multivector, eps: f64) -> Result<Multivector> {
    bilinear(x, y, eps, |_, _| true)
}

/// Wedge product: `e_A ∧ e_B` vanishes unless the blades are disjoint.
pub fn outer_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    bilinear(x, y, DEFAULT_PRUNE, |a, b| a.is_disjoint(b))
}

/// Left contraction `x ⌋ y`: for blades, nonzero only when `A ⊆ B`, where it
/// equals the grade `|B| - |A|` part of `e_A e_B`.
///
/// For a vector `v` this gives `v y = v ⌋ y + v ∧ y`, i.e.
/// `e_j · e_A = Σ_k (-1)^{k-1} B(e_j, e_{i_k}) e_{A∖{i_k}}`.
pub fn left_contraction(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    bilinear(x, y, DEFAULT_PRUNE, |a, b| a.is_subset_of(b))
}

pub fn grade_projection(x: &Multivector, r: usize) -> Multivector {
    Multivector {
        sig: x.sig,
        terms: x
            .terms
            .iter()
            .filter(|(m, _)| m.grade() as usize == r)
            .map(|(m, c)| (*m, *c))
            .collect(),
    }
}

/// The automorphism negating odd grades.
pub fn grade_involution(x: &Multivector) -> Multivector {
    x.map_blades(|m, c| c * involution_sign(m.grade()))
}

/// The antiautomorphism reversing generator order in every blade.
pub fn reverse(x: &Multivector) -> Multivector {
    x.map_blades(|m, c| c * reverse_sign(m.grade()))
}

/// Grade involution composed with reverse. Coefficients are not conjugated.
pub fn clifford_conjugation(x: &Multivector) -> Multivector {
    x.map_blades(|m, c| c * involution_sign(m.grade()) * reverse_sign(m.grade()))
}

/// Hermitian conjugation `(a + ib)† = ã - i b̃` with `a, b` real.
///
/// This is the reverse with complex-conjugated coefficients. It is an
/// involutive antiautomorphism, complex conjugation on scalars, maps the Witt
/// element `½(e_j - i e_{j+n})` to `½(e_j + i e_{j+n})`, and makes
/// `[x† x]_0 = Σ |x_A|²` in a Euclidean signature.
pub fn hermitian_conjugation(x: &Multivector) -> Multivector {
    x.map_blades(|m, c| c.conj() * reverse_sign(m.grade()))
}

/// `[x y]_0`, computed without forming the full product.
pub fn scalar_product(x: &Multivector, y: &Multivector) -> Result<Complex64> {
    same_signature(x, y)?;
    let mut acc = Complex64::new(0.0, 0.0);
    // Only equal blades contribute to grade zero.
    let (small, large, swapped) = if x.len() <= y.len() {
        (x, y, false)
    } else {
        (y, x, true)
    };
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            let (s, _) = blade_product(*m, *m, x.sig);
            let prod = if swapped { d * c } else { c * d };
            acc += prod * s;
        }
    }
    Ok(acc)
}

/// `[x† y]_0`: conjugate-linear in `x`, linear in `y`.
pub fn hermitian_inner_raw(x: &Multivector, y: &Multivector) -> Result<Complex64> {
    same_signature(x, y)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in &x.terms {
        if let Some(d) = y.terms.get(m) {
            let (s, _) = blade_product(*m, *m, x.sig);
            acc += c.conj() * reverse_sign(m.grade()) * s * d;
        }
    }
    Ok(acc)
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, DEFAULT_EQ_TOL)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_blades(|_, c| -c)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

// Operators panic on mismatched signatures, like shape mismatches elsewhere in
// the numeric ecosystem. The `checked_*` / free functions return errors.
macro_rules! binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                let f: fn(&Multivector, &Multivector) -> Result<Multivector> = $f;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b));
binop!(Sub, sub, |a, b| a.checked_sub(b));
binop!(Mul, mul, geometric_product);

impl Mul<Complex64> for &Multivector {
    type Output = Multivector;
    fn mul(self, z: Complex64) -> Multivector {
        self.scale(z)
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Multivector;
    fn mul(self, z: Complex64) -> Multivector {
        self.scale(z)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, z: f64) -> Multivector {
        self.scale(z)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, z: f64) -> Multivector {
        self.scale(z)
    }
}

pub(crate) fn fmt_complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}i)", c.re, sign, c.im.abs())
}

/// Renders terms sorted by `(grade, mask)` as `(re±im i) e1e3 + …`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.grade(), **m));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_complex(*c))?;
            if m.grade() > 0 {
                write!(f, " ")?;
                for j in m.generators() {
                    write!(f, "e{j}")?;
                }
            }
        }
        Ok(())
    }
}

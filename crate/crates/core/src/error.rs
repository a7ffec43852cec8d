use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} generators")]
    DimensionMismatch { left: usize, right: usize },

    #[error("signature mismatch: ({0}, {1}) vs ({2}, {3})")]
    SignatureMismatch(usize, usize, usize, usize),

    #[error("{0} generators requested, at most 64 are supported")]
    TooManyGenerators(usize),

    #[error("blade mask {mask:#b} does not fit in {dim} generators")]
    BladeOutOfRange { mask: u64, dim: usize },

    #[error("qubit count {got} outside the supported range 1..={max}")]
    QubitCountOutOfRange { got: usize, max: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("expected {expected} bits, got {got}")]
    BitCount { expected: usize, got: usize },

    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeLength { expected: usize, got: usize },

    #[error("element does not lie in the spinor ideal (deviation {0:.3e})")]
    NotSpinor(f64),

    #[error("wire {wire} out of range 1..={n}")]
    WireOutOfRange { wire: usize, n: usize },

    #[error("wires must be distinct, got {0:?}")]
    DuplicateWires(Vec<usize>),

    #[error("gate `{gate}` acts on {expected} wire(s), got {got}")]
    Arity {
        gate: String,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("exponential series did not converge within {0} terms")]
    NotConverged(usize),

    #[error("factor for wire {0} is supported outside that wire")]
    FactorOutsideWire(usize),

    #[error("expected {expected} wire factors, got {got}")]
    FactorCount { expected: usize, got: usize },

    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),

    #[error("element has a non-zero imaginary part ({0:.3e})")]
    NotReal(f64),

    #[error("element is not in the even subalgebra")]
    NotEven,

    #[error("{what} = {got} outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        got: usize,
        range: &'static str,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

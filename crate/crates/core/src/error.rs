use thiserror::Error;

/// Errors surfaced by the exact-computation pipeline.
///
/// Certified negative verdicts (a resonance witness, a violated membership)
/// are *not* errors; they are ordinary return values. Errors mean a
/// precondition failed or a bounded search was exhausted.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid radicand set: {0}")]
    InvalidRadicands(String),

    #[error("sqrt({0}) does not lie in this field context")]
    RadicalNotRepresentable(u64),

    #[error("field elements belong to different contexts")]
    ContextMismatch,

    #[error("division by zero field element")]
    DivisionByZero,

    #[error("the zero vector is not accepted here")]
    ZeroVector,

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("ratio is rational; continued-fraction search would not terminate")]
    RationalRatio,

    #[error("lambda is not admissible: need 0 < lambda and lambda^2 < <kappa,kappa>")]
    LambdaInadmissible,

    #[error("kappa is resonant; this operation requires a non-resonant class")]
    ResonantKappa,

    #[error("class is not isotropic: <delta,delta> = {0}")]
    NotIsotropic(String),

    #[error("class is not indivisible: coordinate gcd = {0}")]
    NotIndivisible(String),

    #[error("pairing <kappa,delta> = {0} is outside (0, lambda]")]
    PairingOutOfRange(String),

    #[error("inputs are not pairwise orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("input has non-positive square: {0}")]
    NotPositive(String),

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("box radius {0} exceeds the desk-scale limit 12")]
    BoxTooLarge(u32),

    #[error("period matrix rows are linearly dependent; all minors vanish")]
    DegenerateRows,

    #[error("lattice condition fails: real period matrix is singular")]
    NotALattice,

    #[error("period point is not polarized: <kappa,phi> != 0")]
    NotPolarized,

    #[error("constraint system leaves no usable solution space")]
    TooManyConstraints,

    #[error("no solution-space element with positive <phi,conj phi> after {0} attempts")]
    PositivityUnachievable(usize),

    #[error("disc lies inside the hyperplane: pairing vanishes identically")]
    DiscInsideHyperplane,

    #[error("crossing root lies exactly on the boundary circle")]
    RootOnBoundary,

    #[error("loop touches the hyperplane H_delta; parity undefined")]
    LoopTouchesHyperplane,

    #[error("pairing vanishes on a whole loop segment")]
    DegenerateSegment,

    #[error("no polarized transverse direction with nonzero pairing against delta")]
    NoTransverseDirection,

    #[error("generator-loop search exhausted: {0}")]
    GeneratorSearchExhausted(String),

    #[error("delta classes must be pairwise distinct")]
    DuplicateDeltas,

    #[error("iteration limit reached: {0}")]
    IterationLimit(String),

    #[error("malformed data: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

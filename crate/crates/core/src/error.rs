use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different generator tables")]
    TableMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator name `{0}` uses the reserved form prefix `d`")]
    ReservedName(String),
    #[error("even mode requires parity ≡ weight (mod 2) for generator `{0}`")]
    EvenModeViolation(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("image of generator `{0}` has the wrong parity")]
    ParityMismatch(String),
    #[error("image of generator `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("bidegree violation at generator {generator}: expected {expected}, found {found}")]
    BidegreeViolation { generator: String, expected: String, found: String },
    #[error("differential does not square to zero on generator {generator}: d²({generator}) = {residue}")]
    NotSquareZero { generator: String, residue: String },
    #[error("`{0}` must be an even generator")]
    ExpectedEven(String),
    #[error("`{0}` must be an odd generator")]
    ExpectedOdd(String),
    #[error("element `{0}` is not even")]
    OddBound(String),
    #[error("degree cap insufficient: {0}")]
    CapInsufficient(String),
    #[error("map {0} is not monotone")]
    NonMonotone(String),
    #[error("index tuple {0} is invalid")]
    InvalidIndices(String),
    #[error("form has mixed form-weights; expected pure weight {0}")]
    MixedFormWeight(usize),
    #[error("map is not multiplicative: σ({a})·σ({b}) ≠ σ({a}·{b})")]
    NotMultiplicative { a: String, b: String },
    #[error("map does not intertwine differentials on `{generator}`: {detail}")]
    NotChainMap { generator: String, detail: String },
    #[error("lifting square does not commute")]
    NonCommutingSquare,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

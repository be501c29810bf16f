use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table is not closed: entry [{a}][{b}] = {value} is out of range for order {order}")]
    NotClosed { a: usize, b: usize, value: usize, order: usize },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("closure exceeds the order cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("empty group")]
    EmptyGroup,
    #[error("parity map is not a homomorphism to C2: parity({a}*{b}) != parity({a}) + parity({b})")]
    InvalidParity { a: usize, b: usize },
    #[error("parity map has {found} entries, group has order {order}")]
    ParityLength { found: usize, order: usize },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("modulus must be even to encode -1, got {0}")]
    OddModulus(u64),
    #[error("cochain has {found} values, expected {expected}")]
    CochainLength { expected: usize, found: usize },
    #[error("value {value} at position {index} is not a residue mod {modulus}")]
    ResidueOutOfRange { index: usize, value: u64, modulus: u64 },
    #[error("bidegree mismatch: expected ({0}, {1}), found ({2}, {3})")]
    BidegreeMismatch(usize, usize, usize, usize),
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("not a complex: d_out * d_in is nonzero mod {modulus} on column {column}")]
    NotAComplex { column: usize, modulus: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("level {level} requires field `{field}`")]
    MissingField { level: &'static str, field: &'static str },
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(&'static str, &'static str),
    #[error("cocycle triple fails {failures} coherence instance(s), first in `{first}`")]
    InvalidTriple { failures: usize, first: String },
    #[error(
        "delta is not conjugation invariant: delta({k}, {l}) != delta({gk}, {gl}) under conjugation by {conjugator}"
    )]
    ConstraintViolated { conjugator: usize, k: usize, l: usize, gk: usize, gl: usize },
    #[error("matrix entry [{row}][{col}] is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("mutually inverse N-matrices that are not permutation matrices")]
    NonPermutationInverse,
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

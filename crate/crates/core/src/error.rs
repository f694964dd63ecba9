use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {p}^{e} exceeds the 2^20 cap")]
    OrderTooLarge { p: u32, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element index {index} does not belong to GF({q})")]
    ForeignElement { index: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF({q}) has no subfield of order {s} with {s}^2 = {q}")]
    NotSquare { q: u32, s: u32 },
}

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed plane file: {0}")]
    Malformed(String),
    #[error("expected {expected} lines for order {q}, found {found}")]
    LineCount { q: u32, expected: usize, found: usize },
    #[error("point index {index} out of range (n = {n})")]
    IndexOutOfRange { index: u32, n: usize },
    #[error("projective plane axiom violated: {0}")]
    Axiom(String),
    #[error("points must be distinct")]
    SamePoint,
    #[error("lines must be distinct")]
    SameLine,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum SaturationError {
    #[error("point {0} is already in the set")]
    PointInSet(u32),
    #[error("no unsaturated points remain")]
    NothingUnsaturated,
    #[error("probability {0} outside the open interval (0, 1)")]
    Probability(f64),
    #[error("k = {k} outside 0..={max}")]
    ProductRange { k: u32, max: u32 },
    #[error("brute force over {n} points exceeds the cap of {cap} without override")]
    BruteForceCap { n: usize, cap: usize },
    #[error("plane of order {0} is too small")]
    OrderTooSmall(u32),
    #[error("result failed saturation check ({0} unsaturated points)")]
    NotSaturating(usize),
}

#[derive(Debug, Error)]
pub enum SubgeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("order {0} is not a square")]
    NotSquare(u32),
    #[error("Baer subplanes are only built for canonical PG(2,q)")]
    NotCanonical,
    #[error("Baer property violated: line {line} meets the subplane in {count} points")]
    BaerProperty { line: u32, count: usize },
}

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("seed set needs at least 2 points, got {0}")]
    SeedTooSmall(usize),
    #[error("edge {0} is empty and cannot be covered")]
    EmptyEdge(usize),
    #[error("family has no edges")]
    NoEdges,
    #[error("bound needs m >= 2, got m = {0}")]
    TooFewEdges(usize),
    #[error("bound needs r >= 1")]
    ZeroRank,
    #[error("malformed family file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

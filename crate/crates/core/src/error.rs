use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names double as the stable error identifiers printed by the CLI,
/// see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring: {0}")]
    MalformedRing(String),
    #[error("ring fails its axioms: {0}")]
    NonVerifiedRing(String),
    #[error("label {label} out of range for rank {rank}")]
    LabelOutOfRange { label: usize, rank: usize },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("ring is not integral: {0}")]
    NonIntegralRing(String),
    #[error("empty group: {0}")]
    EmptyGroup(String),
    #[error("degenerate bicharacter: gcd({s}, {exponent}) != 1")]
    DegenerateBicharacter { s: i64, exponent: u64 },
    #[error("level {0} too small, need k >= 2")]
    LevelTooSmall(i64),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("group too large: {0}")]
    GroupTooLarge(String),
    #[error("not a bicharacter: {0}")]
    NotBicharacter(String),
    #[error("bicharacter is not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("{s} is not coprime to {n}")]
    NonCoprime { s: i64, n: u64 },
    #[error("automorphism does not preserve q: {0}")]
    NotQPreserving(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("no Schur multiplier on record for {0}")]
    UnknownMultiplier(String),
    #[error("{0} is not prime")]
    NonPrimeOrder(u64),
    #[error("channel combinations belong to different rings")]
    RingMismatch,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("strand mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("loop parameter must be nonzero")]
    ZeroLoopParameter,
    #[error("too many strands: {0} (max 16)")]
    TooManyStrands(usize),
    #[error("quantum integer [{0}] vanishes")]
    SingularQuantumInteger(usize),
    #[error("Lagrangians live in different metric groups")]
    MetricGroupMismatch,
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid metric group: {0}")]
    InvalidMetricGroup(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("invalid channel combination: {0}")]
    InvalidCombo(String),
    #[error("elements use different loop parameters")]
    LoopParameterMismatch,
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedRing(_) => "MalformedRing",
            Error::NonVerifiedRing(_) => "NonVerifiedRing",
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NonIntegralRing(_) => "NonIntegralRing",
            Error::EmptyGroup(_) => "EmptyGroup",
            Error::DegenerateBicharacter { .. } => "DegenerateBicharacter",
            Error::LevelTooSmall(_) => "LevelTooSmall",
            Error::UnknownName(_) => "UnknownName",
            Error::GroupTooLarge(_) => "GroupTooLarge",
            Error::NotBicharacter(_) => "NotBicharacter",
            Error::NotAntisymmetric(_) => "NotAntisymmetric",
            Error::NonCoprime { .. } => "NonCoprime",
            Error::NotQPreserving(_) => "NotQPreserving",
            Error::InvalidAutomorphism(_) => "InvalidAutomorphism",
            Error::UnknownMultiplier(_) => "UnknownMultiplier",
            Error::NonPrimeOrder(_) => "NonPrimeOrder",
            Error::RingMismatch => "RingMismatch",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::StrandMismatch(..) => "StrandMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ZeroLoopParameter => "ZeroLoopParameter",
            Error::TooManyStrands(_) => "TooManyStrands",
            Error::SingularQuantumInteger(_) => "SingularQuantumInteger",
            Error::MetricGroupMismatch => "MetricGroupMismatch",
            Error::InvalidSubgroup(_) => "InvalidSubgroup",
            Error::InvalidMetricGroup(_) => "InvalidMetricGroup",
            Error::InvalidDiagram(_) => "InvalidDiagram",
            Error::Parse { .. } => "ParseError",
            Error::Overflow(_) => "Overflow",
            Error::InvalidCombo(_) => "InvalidCombo",
            Error::LoopParameterMismatch => "LoopParameterMismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

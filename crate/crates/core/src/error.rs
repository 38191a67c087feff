use thiserror::Error;

/// Errors raised by every gradekit operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid algebra parameter: {0}")]
    InvalidParameter(String),
    #[error("defining matrix K is not {0}")]
    WrongSymmetry(&'static str),
    #[error("basis is not closed under the bracket: [{0}, {1}] leaves the span")]
    NotClosed(usize, usize),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("Killing form is degenerate (radical dimension {radical})")]
    DegenerateKilling { radical: usize },
    #[error("cannot split simple ideals exactly: {0}")]
    IdealSplit(String),
    #[error("conjugation by A does not preserve the algebra (basis element {0})")]
    NotNormalizing(usize),
    #[error("map does not preserve the algebra (basis element {0})")]
    NotPreserved(usize),
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("spectrum of generator {0} is not covered by the candidate eigenvalues")]
    UnresolvedSpectrum(usize),
    #[error("empty candidate list")]
    NoCandidates,
    #[error("not a grading: {0}")]
    NotAGrading(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("grading is not group-indexable (subspaces {0} and {1} share a label)")]
    NotGroupIndexable(usize, usize),
    #[error("conductor {conductor} cannot host roots of unity of the torsion orders; minimal conductor {needed}")]
    ConductorTooSmall { conductor: u32, needed: u32 },
    #[error("{0}")]
    NoDiagonalTorus(String),
    #[error("antiautomorphism is not involutive")]
    NotInvolutive,
    #[error("algebra is not stable under entrywise conjugation (basis element {0})")]
    NotConjugationStable(usize),
    #[error("real forms need a conductor whose field has rational real subfield and contains non-real elements (3, 4 or 6); got {0}")]
    RealFormConductor(u32),
    #[error("fixed-point set has dimension {found}, expected {expected}")]
    RealDimension { expected: usize, found: usize },
    #[error("structure constant is not rational")]
    NonRational,
    #[error("grading subspaces lack real bases")]
    NoRealBasis,
    #[error("group closure exceeded the order bound {0}; inconclusive")]
    Inconclusive(usize),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("catalog entry {0} is unavailable: {1}")]
    Unavailable(String, String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

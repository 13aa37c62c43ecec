use alloc::string::String;
use core::fmt;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Scalar(ScalarError),
    NonTerminatingOrder { rule: String },
    StarMismatch { generator: String },
    DegreeMismatch(String),
    RewriteBudgetExceeded { steps: usize },
    UnknownSubalgebra(String),
    UnknownGenerator(String),
    Parse { line: usize, col: usize, msg: String },
    NoHopfStructure,
    DimensionMismatch(String),
    GradeOverflow(String),
    MissingDelta,
    NotHorizontal(String),
    NotAConnection(String),
    NotIntertwiner(String),
    NotBase(String),
    NotUnitary(String),
    RepresentationMismatch(String),
    NotCovariant(String),
    CentralityViolated(String),
    NotDifferentialMorphism(String),
    NotTrivialBundle(String),
    OutsideTable(String),
    Unsolvable(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl From<ScalarError> for Error {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::Parse { pos, msg } => Error::Parse { line: 1, col: pos + 1, msg },
            e => Error::Scalar(e),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            Scalar(e) => write!(f, "{e}"),
            NonTerminatingOrder { rule } => write!(f, "rule `{rule}` is not decreasing in the term order"),
            StarMismatch { generator } => write!(f, "inconsistent star partner for `{generator}`"),
            DegreeMismatch(s) => write!(f, "degree mismatch: {s}"),
            RewriteBudgetExceeded { steps } => write!(f, "rewriting exceeded {steps} steps"),
            UnknownSubalgebra(s) => write!(f, "unknown subalgebra `{s}`"),
            UnknownGenerator(s) => write!(f, "unknown generator `{s}`"),
            Parse { line, col, msg } => write!(f, "{line}:{col}: {msg}"),
            NoHopfStructure => write!(f, "no Hopf structure registered"),
            DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            GradeOverflow(s) => write!(f, "grade overflow: {s}"),
            MissingDelta => write!(f, "no embedded differential registered"),
            NotHorizontal(s) => write!(f, "not horizontal: {s}"),
            NotAConnection(s) => write!(f, "not a connection: {s}"),
            NotIntertwiner(s) => write!(f, "not an intertwiner: {s}"),
            NotBase(s) => write!(f, "not a base element: {s}"),
            NotUnitary(s) => write!(f, "not unitary: {s}"),
            RepresentationMismatch(s) => write!(f, "representation mismatch: {s}"),
            NotCovariant(s) => write!(f, "not covariant: {s}"),
            CentralityViolated(s) => write!(f, "character centrality violated: {s}"),
            NotDifferentialMorphism(s) => write!(f, "not a graded differential *-morphism: {s}"),
            NotTrivialBundle(s) => write!(f, "not a trivial bundle: {s}"),
            OutsideTable(s) => write!(f, "argument outside the registered table: {s}"),
            Unsolvable(s) => write!(f, "no solution: {s}"),
        }
    }
}

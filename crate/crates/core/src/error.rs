use thiserror::Error;

/// Which DG-algebra or DG-module axiom a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Grading,
    Unit,
    Associativity,
    GradedCommutativity,
    OddSquare,
    Differential,
    Leibniz,
    ModuleAction,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Grading => "grading",
            Axiom::Unit => "unit",
            Axiom::Associativity => "associativity",
            Axiom::GradedCommutativity => "graded-commutativity",
            Axiom::OddSquare => "odd-square",
            Axiom::Differential => "differential",
            Axiom::Leibniz => "leibniz",
            Axiom::ModuleAction => "module-action",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("basis columns are linearly dependent")]
    DependentColumns,
    #[error("axiom violation ({axiom}) at basis tuple {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("algebra is not local: degree-0 part must be k*1 ({0})")]
    NotLocal(String),
    #[error("homology is zero")]
    HomologyZero,
    #[error("truncation at {requested} would change homology (sup H = {sup})")]
    TruncationBelowHomology { requested: i64, sup: i64 },
    #[error("operation requires an artinian ring")]
    NonArtinian,
    #[error("Tor balance mismatch in degree {degree}: {left} vs {right}")]
    BalanceMismatch { degree: usize, left: usize, right: usize },
    #[error("differential entry ({row}, {col}) has the wrong degree")]
    DegreeMismatch { row: usize, col: usize },
    #[error("semibasis is not concentrated in a single degree")]
    NotSingleDegree,
    #[error("modules live over different algebras or rings")]
    AlgebraMismatch,
    #[error("module has zero homology")]
    ZeroModule,
    #[error("cutoff {r} is below sup H = {sup}")]
    CutoffTooSmall { r: i64, sup: i64 },
    #[error("precondition not verified: {0}")]
    PreconditionUnverified(String),
    #[error("m_A^{0} is not zero")]
    PowerNotZero(usize),
    #[error("input {0} is perfect at the requested level")]
    PerfectInput(usize),
    #[error("ring has depth {0}, expected 0")]
    DepthNonzero(usize),
    #[error("ring has depth 0")]
    DepthZero,
    #[error("variable {0} occurs in an ideal generator")]
    NotRegularVariable(usize),
    #[error("positive depth but no variable is free of the ideal generators")]
    ReductionUnavailable,
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("Hensel hypothesis violated: {0}")]
    HenselHypothesisViolated(String),
    #[error("basis does not span a lattice")]
    SingularLattice,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("residue field of size {0} is too large to enumerate")]
    ResidueFieldTooLarge(u64),
    #[error("matrix does not preserve the lattice: {0}")]
    NotIntegral(String),
    #[error("tree is not a finite band (shape {0}); the representation is not irreducible")]
    NotIrreducible(String),
    #[error("vertex is an interior point of the stable subtree of the matrix")]
    NotABoundaryPoint,
    #[error("characteristic polynomial does not factor as claimed: {0}")]
    BadFactorization(String),
    #[error("characteristic polynomial is irreducible modulo pi^{0}")]
    NotReducible(u32),
    #[error("word search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("theorem violation witness: {0}")]
    TheoremViolationWitness(String),
    #[error("modulus {n} exceeds the tree diameter {d}")]
    ModulusExceedsDiameter { n: u32, d: u32 },
    #[error("relation does not vanish on the representation: {0}")]
    InvalidRelation(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

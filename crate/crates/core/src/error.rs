use thiserror::Error;

use crate::group_algebra::freeness::NotFreeCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("inverse of a series that is zero within its precision")]
    InvertZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("decomposition invalid: {0}")]
    DecompositionInvalid(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("presentation does not define a finite module: {0}")]
    NotFinitePresentation(String),
    #[error("module is not free over F_q[G]: {0}")]
    NotFree(Box<NotFreeCertificate>),

    #[error("matrix is not a ring automorphism: {0}")]
    NotAutomorphism(String),
    #[error("action matrices do not realize the Cayley table: {0}")]
    CayleyMismatch(String),
    #[error("defining polynomial is not separable: {0}")]
    NotSeparable(String),
    #[error("wild prime {0} but no taming basis supplied")]
    WildWithoutBasis(String),
    #[error("invalid taming basis: {0}")]
    InvalidTamingBasis(String),

    #[error("twisted polynomials over different coefficient rings")]
    CarrierMismatch,
    #[error("module carries no Frobenius")]
    NoFrobenius,
    #[error("exponential evaluation did not settle: {0}")]
    DivergenceSuspected(String),

    #[error("lattice ball too small for a nucleus: {0}")]
    NucleusTooSmall(String),
    #[error("hypothesis could not be verified at this precision: {0}")]
    HypothesisUnverified(String),

    #[error("stabilization budget exceeded: {0}")]
    StabilizationBudgetExceeded(String),
    #[error("no isometry ball found: {0}")]
    IsometryBallNotFound(String),
    #[error("unit lattice rank not reached: {0}")]
    RankNotReached(String),
    #[error("no G-equivariant section available: {0}")]
    NoSectionAvailable(String),
    #[error("lattice is not free: {0}")]
    NotFreeLattice(String),
    #[error("class number formula mismatch: {0}")]
    MismatchWithDiff(String),
    #[error("element is not polynomial within precision: {0}")]
    NotPolynomialWithinPrecision(String),
    #[error("unit lattice is not A[G]-free: {0}")]
    UNotFree(String),

    #[error("stage {0}: {1}")]
    AtStage(&'static str, Box<Error>),
}

impl Error {
    pub fn at(self, stage: &'static str) -> Self {
        match self {
            e @ Error::AtStage(..) => e,
            e => Error::AtStage(stage, Box::new(e)),
        }
    }

    pub fn root(&self) -> &Error {
        match self {
            Error::AtStage(_, e) => e.root(),
            e => e,
        }
    }

    /// Raising a budget or the precision may help.
    pub fn is_budget(&self) -> bool {
        matches!(
            self.root(),
            Error::StabilizationBudgetExceeded(_)
                | Error::DivergenceSuspected(_)
                | Error::PrecisionExhausted(_)
                | Error::NotPolynomialWithinPrecision(_)
                | Error::RankNotReached(_)
                | Error::IsometryBallNotFound(_)
                | Error::NucleusTooSmall(_)
                | Error::HypothesisUnverified(_)
        )
    }

    /// The input is malformed or outside the hypotheses of the requested check.
    pub fn is_config(&self) -> bool {
        matches!(
            self.root(),
            Error::Config(_)
                | Error::CayleyMismatch(_)
                | Error::NotSeparable(_)
                | Error::NotAutomorphism(_)
                | Error::WildWithoutBasis(_)
                | Error::InvalidTamingBasis(_)
                | Error::HypothesisViolated(_)
                | Error::DecompositionInvalid(_)
        )
    }
}

pub trait AtStage<T> {
    fn at(self, stage: &'static str) -> Result<T>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}

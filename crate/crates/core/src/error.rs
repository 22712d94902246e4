use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZero,
    #[error("zero polynomial has no squarefree decomposition")]
    SquarefreeOfZero,
    #[error("resultant requires nonzero polynomials")]
    ResultantOfZero,
    #[error("declared degree {declared} is below actual degree {actual}")]
    DegreeTooSmall { declared: u32, actual: u32 },
    #[error("zero form has no semistability type")]
    ZeroForm,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),
    #[error("{op}: expected a binary form of degree {expected}, got degree {got} in {vars} variables")]
    WrongShape {
        op: &'static str,
        expected: u32,
        got: u32,
        vars: usize,
    },
    #[error("{0} is not in (1/12)Z")]
    NotInTwelfths(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inconsistent singularity profile: {0}")]
    InconsistentProfile(String),
    #[error("invalid descriptor field `{field}`: {message}")]
    InvalidDescriptor { field: &'static str, message: String },
    #[error("formula out of validity domain: {0}")]
    OutOfValidityDomain(String),
    #[error("GIT height undefined: point outside semistable locus")]
    GenericFiberUnstable,
    #[error("invalid pencil: {0}")]
    InvalidPencil(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("linear program failed: {0}")]
    Lp(String),
}

impl Error {
    /// Machine-readable name of the variant, in kebab case.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GcdOfZero => "gcd-of-zero",
            Error::SquarefreeOfZero => "squarefree-of-zero",
            Error::ResultantOfZero => "resultant-of-zero",
            Error::DegreeTooSmall { .. } => "degree-too-small",
            Error::ZeroForm => "zero-form",
            Error::InvalidForm(_) => "invalid-form",
            Error::InvalidWeight(_) => "invalid-weight",
            Error::WrongShape { .. } => "wrong-shape",
            Error::NotInTwelfths(_) => "not-in-twelfths",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InconsistentProfile(_) => "inconsistent-profile",
            Error::InvalidDescriptor { .. } => "invalid-descriptor",
            Error::OutOfValidityDomain(_) => "out-of-validity-domain",
            Error::GenericFiberUnstable => "generic-fiber-unstable",
            Error::InvalidPencil(_) => "invalid-pencil",
            Error::Parse(_) => "parse",
            Error::Lp(_) => "lp",
        }
    }

    /// The offending input field, for descriptor errors.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::InvalidDescriptor { field, .. } => Some(field),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

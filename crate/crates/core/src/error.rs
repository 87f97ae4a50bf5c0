use std::fmt;

/// Errors from parameter validation and the numerical solvers.
///
/// Every model-assumption violation carries a stable SCREAMING_SNAKE code
/// (see [`Error::code`]) so callers can match on it without parsing the
/// human-readable message.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Effective autarky discount rho_hat = rho - (1-gamma) mu
    /// + gamma (1-gamma) sigma^2 / 2 must be positive.
    RhoHatNonpositive { rho_hat: f64 },
    /// r_hat = r - mu must be positive.
    RHatNonpositive { r_hat: f64 },
    /// K = r + (rho - r) / gamma must be positive.
    KNonpositive { k: f64 },
    /// mu must exceed sigma^2 / 2.
    MuTooSmall { mu: f64, sigma: f64 },
    /// Relative risk aversion must be positive and different from 1.
    GammaInvalid { gamma: f64 },
    /// Rates must satisfy 0 < r <= rho.
    RateOrderInvalid { r: f64, rho: f64 },
    /// A primitive that must be strictly positive was not.
    NonpositiveParameter { name: &'static str, value: f64 },
    /// Promised value below the autarky value (or wrong sign for gamma > 1).
    WInfeasible { w: f64, autarky: f64 },
    /// An operation received an argument outside its domain.
    DomainViolation { what: String },
    /// Boundary-equation residual does not change sign on (z_inf, 1).
    NoRootInBracket { node: usize },
    /// Upward doubling search for a root bracket exceeded its cap.
    BracketFailure { hi: f64 },
    /// The improper outer integral did not meet the tail tolerance
    /// before the truncation cap.
    TailNotConverged { u_max: f64 },
    /// Projected SOR exceeded its iteration cap.
    PsorNotConverged { time_index: usize, residual: f64 },
    /// A finite-difference stencil straddles the free boundary.
    StencilAcrossBoundary,
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RhoHatNonpositive { .. } => "RHO_HAT_NONPOSITIVE",
            Error::RHatNonpositive { .. } => "R_HAT_NONPOSITIVE",
            Error::KNonpositive { .. } => "K_NONPOSITIVE",
            Error::MuTooSmall { .. } => "MU_TOO_SMALL",
            Error::GammaInvalid { .. } => "GAMMA_INVALID",
            Error::RateOrderInvalid { .. } => "RATE_ORDER_INVALID",
            Error::NonpositiveParameter { .. } => "NONPOSITIVE_PARAMETER",
            Error::WInfeasible { .. } => "W_INFEASIBLE",
            Error::DomainViolation { .. } => "DOMAIN_VIOLATION",
            Error::NoRootInBracket { .. } => "NO_ROOT_IN_BRACKET",
            Error::BracketFailure { .. } => "BRACKET_FAILURE",
            Error::TailNotConverged { .. } => "TAIL_NOT_CONVERGED",
            Error::PsorNotConverged { .. } => "PSOR_NOT_CONVERGED",
            Error::StencilAcrossBoundary => "STENCIL_ACROSS_BOUNDARY",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RhoHatNonpositive { rho_hat } => {
                write!(f, "{}: rho_hat = {rho_hat} must be > 0", self.code())
            }
            Error::RHatNonpositive { r_hat } => {
                write!(f, "{}: r_hat = r - mu = {r_hat} must be > 0", self.code())
            }
            Error::KNonpositive { k } => {
                write!(f, "{}: K = r + (rho - r)/gamma = {k} must be > 0", self.code())
            }
            Error::MuTooSmall { mu, sigma } => {
                write!(f, "{}: mu = {mu} must exceed sigma^2/2 = {}", self.code(), 0.5 * sigma * sigma)
            }
            Error::GammaInvalid { gamma } => {
                write!(f, "{}: gamma = {gamma} must be positive and != 1", self.code())
            }
            Error::RateOrderInvalid { r, rho } => {
                write!(f, "{}: need 0 < r <= rho, got r = {r}, rho = {rho}", self.code())
            }
            Error::NonpositiveParameter { name, value } => {
                write!(f, "{}: {name} = {value} must be > 0", self.code())
            }
            Error::WInfeasible { w, autarky } => {
                write!(f, "{}: promised value {w} infeasible (autarky value {autarky})", self.code())
            }
            Error::DomainViolation { what } => write!(f, "{}: {what}", self.code()),
            Error::NoRootInBracket { node } => {
                write!(f, "{}: boundary residual has no sign change at node {node}", self.code())
            }
            Error::BracketFailure { hi } => {
                write!(f, "{}: doubling search exceeded cap at {hi}", self.code())
            }
            Error::TailNotConverged { u_max } => {
                write!(f, "{}: outer integral tail still above tolerance at u = {u_max}", self.code())
            }
            Error::PsorNotConverged { time_index, residual } => {
                write!(f, "{}: PSOR stalled at time step {time_index} (residual {residual})", self.code())
            }
            Error::StencilAcrossBoundary => {
                write!(f, "{}: finite-difference stencil crosses the free boundary", self.code())
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

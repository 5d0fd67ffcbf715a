use thiserror::Error;

/// Errors raised by state construction, channel application and closed-form maps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not physical: smallest eigenvalue {min_eigenvalue:e} is below tolerance")]
    PhysicalityViolation { min_eigenvalue: f64 },

    #[error("correlation coefficient {name} = {value} lies outside [-1, 1]")]
    CoefficientOutOfRange { name: &'static str, value: f64 },

    #[error("matrix is not Bell-diagonal (max deviation {deviation:e})")]
    NotBellDiagonal { deviation: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace {trace} differs from 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("parameter {name} = {value} lies outside [0, 1]")]
    ParamOutOfRange { name: &'static str, value: f64 },

    #[error("requested {requested} channel applications, cap is {cap}")]
    IterationCapExceeded { requested: u64, cap: u64 },

    #[error("{0}")]
    UnsupportedFamily(String),

    #[error("frozen scan needs at least two samples, got {got}")]
    EmptyInput { got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange { name, value })
    }
}

use crate::report::ViolationReport;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{what} has {size} coordinates, above the cap of {cap} (set HLTS_DIM_CAP to raise it)")]
    DimensionCap {
        what: String,
        size: usize,
        cap: usize,
    },
    #[error("degree {degree} is above the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("{what} failed its axiom check ({} violation(s))", report.violations.len())]
    Invalid {
        what: String,
        report: Box<ViolationReport>,
    },
    #[error("regularity required: {0} is not invertible")]
    RegularityRequired(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn invalid(what: impl Into<String>, report: ViolationReport) -> Self {
        Error::Invalid {
            what: what.into(),
            report: Box::new(report),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::Invalid`] unless the report passes.
pub(crate) fn require(what: &str, report: ViolationReport) -> Result<()> {
    if report.pass() {
        Ok(())
    } else {
        Err(Error::invalid(what, report))
    }
}

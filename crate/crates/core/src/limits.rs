use crate::error::{Error, Result};

/// Size caps for exhaustive enumeration and cochain spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra dimension checked exhaustively on 5-tuples.
    pub dim_cap: usize,
    /// Largest cohomological degree (cochains of arity `2n - 1`).
    pub max_degree: usize,
    /// Largest number of coordinates of a cochain space before it is built.
    pub max_cochain_coords: usize,
}

pub const DIM_CAP_VAR: &str = "HLTS_DIM_CAP";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 8,
            max_degree: 2,
            max_cochain_coords: 1 << 16,
        }
    }
}

impl Limits {
    /// Defaults, with the dimension cap taken from `HLTS_DIM_CAP` when set
    /// to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(DIM_CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            limits.dim_cap = cap;
        }
        limits
    }

    pub fn check_dim(&self, what: &str, dim: usize) -> Result<()> {
        if dim > self.dim_cap {
            return Err(Error::DimensionCap {
                what: what.to_string(),
                size: dim,
                cap: self.dim_cap,
            });
        }
        Ok(())
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::DegreeCap {
                degree,
                cap: self.max_degree,
            });
        }
        Ok(())
    }
}

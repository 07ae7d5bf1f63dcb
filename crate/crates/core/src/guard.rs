use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Size policy for exhaustive searches whose cost explodes with `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guard {
    /// Refuse sizes above the operation's default limit.
    #[default]
    Enforce,
    /// Run regardless of size.
    Force,
}

impl Guard {
    pub fn from_force_flag(force: bool) -> Self {
        if force {
            Guard::Force
        } else {
            Guard::Enforce
        }
    }

    pub(crate) fn check(
        self,
        what: &'static str,
        n: usize,
        limit: usize,
        estimate: impl FnOnce() -> BigUint,
    ) -> Result<()> {
        if self == Guard::Enforce && n > limit {
            return Err(Error::GuardExceeded {
                what,
                n,
                limit,
                estimate: estimate().to_string(),
            });
        }
        Ok(())
    }
}

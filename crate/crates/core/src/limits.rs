//! Budgets for the exhaustive searches.

/// Environment variable that overrides [`Limits::max_enum`].
pub const MAX_ENUM_ENV: &str = "MEDIA_KIT_MAX_ENUM";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search nodes any single enumeration may visit.
    pub max_enum: usize,
    /// Maximum number of circuits `circuits_upto` may return.
    pub max_circuits: usize,
    /// Largest graph the isomorphism search accepts.
    pub iso_max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: 2_000_000,
            max_circuits: 100_000,
            iso_max_vertices: 12,
        }
    }
}

impl Limits {
    /// Defaults, with `max_enum` taken from `MEDIA_KIT_MAX_ENUM` when set to a
    /// positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_ENUM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            limits.max_enum = n;
        }
        limits
    }
}

/// Counts visited nodes against a budget.
pub(crate) struct Meter {
    used: usize,
    budget: usize,
}

impl Meter {
    pub(crate) fn new(budget: usize) -> Self {
        Meter { used: 0, budget }
    }

    pub(crate) fn tick(&mut self, context: &str) -> crate::Result<()> {
        self.used += 1;
        if self.used > self.budget {
            return Err(crate::Error::Budget {
                budget: self.budget,
                context: context.to_string(),
            });
        }
        Ok(())
    }
}

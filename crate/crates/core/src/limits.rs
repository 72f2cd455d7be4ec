use std::time::Duration;

/// Upper limit on exhaustive enumeration of `{0,1}^n`.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;
/// Upper limit on the block length for which output sets are materialized.
pub const DEFAULT_OUTPUT_SET_CAP: usize = 20;
/// Upper limit on the block length of a materialized confusability graph.
pub const DEFAULT_GRAPH_CAP: usize = 14;
pub const DEFAULT_SEARCH_TIMEOUT: Duration = Duration::from_secs(60);

/// Environment variable that overrides [`Limits::graph_cap`].
pub const MAX_N_ENV: &str = "ZECAP_MAX_N";

/// Size limits and time budgets shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_cap: usize,
    pub output_set_cap: usize,
    pub graph_cap: usize,
    pub search_timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            output_set_cap: DEFAULT_OUTPUT_SET_CAP,
            graph_cap: DEFAULT_GRAPH_CAP,
            search_timeout: Some(DEFAULT_SEARCH_TIMEOUT),
        }
    }
}

impl Limits {
    /// Defaults, with the graph cap taken from `ZECAP_MAX_N` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.graph_cap = cap;
        }
        limits
    }
}

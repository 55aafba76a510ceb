//! Size caps shared by every construction.
//!
//! `SYNMON_STATE_CAP` overrides the automaton state cap for the whole process.

use std::sync::OnceLock;

pub const STATE_CAP_ENV: &str = "SYNMON_STATE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of states after determinization.
    pub state_cap: usize,
    /// Maximum size of a transition monoid or restricted product.
    pub monoid_cap: usize,
    /// Largest base monoid accepted by the downset construction.
    pub downset_base_cap: usize,
    /// Largest number of downsets a downset monoid may have.
    pub downset_element_cap: usize,
    /// Maximum number of members of a closure family.
    pub family_cap: usize,
    /// Maximum number of shuffle terms in a commutative decomposition.
    pub term_cap: usize,
    /// Maximum number of distinct variables in an inequality.
    pub max_variables: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            state_cap: 10_000,
            monoid_cap: 5_000,
            downset_base_cap: 16,
            downset_element_cap: 4_096,
            family_cap: 100_000,
            term_cap: 10_000,
            max_variables: 3,
        }
    }
}

impl Limits {
    /// Process-wide limits: the defaults, with the state cap taken from
    /// `SYNMON_STATE_CAP` when it parses as a positive integer.
    pub fn global() -> &'static Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        GLOBAL.get_or_init(|| {
            let mut limits = Limits::default();
            if let Some(cap) = std::env::var(STATE_CAP_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
            {
                limits.state_cap = cap;
            }
            limits
        })
    }
}

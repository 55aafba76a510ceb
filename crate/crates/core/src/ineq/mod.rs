mod check;
mod term;

pub use check::{
    check, check_with, enumerate_power_inequalities, eval_term, satisfies, stamp_check,
    stamp_check_with, stamp_satisfies, Counterexample, Mode, Verdict,
};
pub use term::{Exponent, Inequality, OmegaTerm, Relation};

mod alphabet;
mod dfa;
mod morphism;
mod nfa;
pub mod ops;
mod regex;

pub use alphabet::Alphabet;
pub use dfa::{compile, compile_with_cap, Dfa, DfaJson};
pub use morphism::{Morphism, MorphismKind};
pub use nfa::Nfa;
pub use ops::{BoolOp, Side};
pub use regex::{parse_regex, Regex};

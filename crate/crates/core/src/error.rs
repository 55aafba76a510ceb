use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("symbol '{symbol}' at position {pos} is not in the alphabet")]
    UnknownSymbol { symbol: char, pos: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("automaton exceeds the state cap of {cap}")]
    StateCap { cap: usize },

    #[error("monoid exceeds the size cap of {cap}")]
    MonoidCap { cap: usize },

    #[error("downset monoid of a {size}-element monoid exceeds the cap ({cap})")]
    DownsetCap { size: usize, cap: usize },

    #[error("language family exceeds the size cap of {cap}")]
    FamilyCap { cap: usize },

    #[error("decomposition exceeds the cap of {cap} shuffle terms")]
    TermCap { cap: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("morphism is not length-preserving")]
    NotLengthPreserving,

    #[error("syntactic monoid is not commutative")]
    NotCommutative,

    #[error("language is not over a one-letter alphabet")]
    NotUnary,

    #[error("division by zero")]
    DivisionByZero,

    #[error("variable '{0}' is not assigned")]
    UnassignedVariable(char),

    #[error("inequality uses {count} variables, at most {max} are supported")]
    TooManyVariables { count: usize, max: usize },

    #[error("monoids with more than {max} elements are not supported here (got {size})")]
    TooLarge { size: usize, max: usize },

    #[error("invalid json: {0}")]
    Json(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// True for errors caused by malformed user input rather than by the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownSymbol { .. }
                | Error::InvalidAlphabet(_)
                | Error::InvalidAutomaton(_)
                | Error::InvalidMonoid(_)
                | Error::InvalidMorphism(_)
                | Error::Json(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

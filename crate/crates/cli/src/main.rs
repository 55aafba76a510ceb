//! `synmon`: syntactic ordered monoids and language operations from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "synmon", version, about = "Syntactic ordered monoids, inequalities and language operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A language given inline as a regex or as an automaton file.
#[derive(Args, Clone, Default)]
pub struct LangArgs {
    /// Alphabet symbols, e.g. `ab`
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Regular expression: `+` union, juxtaposition, `*`, `^k`, `1` empty word, `0` empty set
    #[arg(long, conflicts_with = "dfa")]
    pub regex: Option<String>,
    /// Automaton in JSON form
    #[arg(long)]
    pub dfa: Option<PathBuf>,
}

/// A monoid given as a JSON file or as the syntactic monoid of a language.
#[derive(Args, Clone, Default)]
pub struct MonoidArgs {
    /// Ordered monoid in JSON form
    #[arg(long, conflicts_with_all = ["regex", "dfa"])]
    pub monoid: Option<PathBuf>,
    #[command(flatten)]
    pub lang: LangArgs,
}

#[derive(Args, Clone, Copy, Default)]
pub struct Format {
    /// Print JSON
    #[arg(long, conflicts_with = "dot")]
    pub json: bool,
    /// Print Graphviz DOT
    #[arg(long)]
    pub dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CheckMode {
    /// All elements of the monoid
    Monoid,
    /// Letter images of the syntactic stamp
    Lp,
    /// Letter images and the identity
    Ld,
}

#[derive(Subcommand)]
enum Command {
    /// Syntactic ordered monoid of a language
    Syn {
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        format: Format,
    },
    /// Syntactic order: strict and covering pairs, or the Hasse diagram with --dot
    Order {
        #[command(flatten)]
        input: MonoidArgs,
        #[command(flatten)]
        format: Format,
    },
    /// Monoid of downsets
    Downset {
        #[command(flatten)]
        input: MonoidArgs,
        /// Include the empty downset as a zero
        #[arg(long)]
        with_empty: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Check inequalities such as `x^w y <= x^w` or `xy = yx`
    Check {
        #[command(flatten)]
        input: MonoidArgs,
        /// Inequality to check; repeatable
        #[arg(long = "ineq", required = true)]
        ineqs: Vec<String>,
        #[arg(long, value_enum, default_value = "monoid")]
        mode: CheckMode,
        /// Print JSON
        #[arg(long)]
        json: bool,
    },
    /// Closure of languages under Boolean operations and quotients
    Closure {
        /// Alphabet symbols
        #[arg(long)]
        alphabet: String,
        /// Generator; repeatable
        #[arg(long = "regex", required = true)]
        regexes: Vec<String>,
        /// Comma-separated operations: union, intersection, complement, left_quotient, right_quotient
        #[arg(long, value_delimiter = ',')]
        ops: Option<Vec<String>>,
        /// Fail unless the family has exactly this many members
        #[arg(long)]
        expect_count: Option<usize>,
        /// Print JSON
        #[arg(long)]
        json: bool,
    },
    /// Shuffle product; operands are `ALPHABET:REGEX`
    Shuffle {
        #[arg(long = "lang", required = true, num_args = 1)]
        langs: Vec<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Image of a language under a length-preserving morphism
    Rename {
        #[command(flatten)]
        lang: LangArgs,
        /// Letter images, e.g. `a=x,b=x`
        #[arg(long)]
        morphism: String,
        /// Target alphabet; defaults to the letters used by the images
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Inverse image of a language under a morphism
    Invhom {
        #[command(flatten)]
        lang: LangArgs,
        /// Source alphabet of the morphism
        #[arg(long)]
        source: String,
        /// Letter images, e.g. `c=ab,d=1`
        #[arg(long)]
        morphism: String,
        #[command(flatten)]
        format: Format,
    },
    /// Decompose a commutative language into shuffles of one-letter languages
    Decompose {
        #[command(flatten)]
        lang: LangArgs,
        /// Print JSON
        #[arg(long)]
        json: bool,
    },
    /// Numerical semigroup generated by a set of integers
    Numsg {
        /// Comma-separated generators
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
        /// Check `x <= x^(m+1)` on the associated language for m up to this bound
        #[arg(long)]
        check_ineq: Option<usize>,
        /// Print JSON
        #[arg(long)]
        json: bool,
    },
    /// Run the golden checks and report each criterion
    Reproduce {
        /// Run a single criterion
        #[arg(long)]
        criterion: Option<usize>,
        /// Print JSON
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Syn { lang, format } => commands::syn(&lang, format),
        Command::Order { input, format } => commands::order(&input, format),
        Command::Downset { input, with_empty, format } => commands::downset(&input, with_empty, format),
        Command::Check { input, ineqs, mode, json } => commands::check(&input, &ineqs, mode, json),
        Command::Closure { alphabet, regexes, ops, expect_count, json } => {
            commands::closure(&alphabet, &regexes, ops.as_deref(), expect_count, json)
        }
        Command::Shuffle { langs, format } => commands::shuffle(&langs, format),
        Command::Rename { lang, morphism, target, format } => {
            commands::rename(&lang, &morphism, target.as_deref(), format)
        }
        Command::Invhom { lang, source, morphism, format } => commands::invhom(&lang, &source, &morphism, format),
        Command::Decompose { lang, json } => commands::decompose(&lang, json),
        Command::Numsg { gens, check_ineq, json } => commands::numsg(&gens, check_ineq, json),
        Command::Reproduce { criterion, json } => commands::reproduce(criterion, json),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

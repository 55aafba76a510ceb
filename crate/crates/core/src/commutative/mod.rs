mod closure;
mod decompose;
mod epset;

pub use closure::{lattice_closure, lattice_closure_with, ClosureFamily, ClosureOp};
pub use decompose::{decompose_commutative, decompose_with_cap, Decomposition, ShuffleTerm};
pub use epset::{ep_divide, ep_shift, from_epset, to_epset, EPSet};

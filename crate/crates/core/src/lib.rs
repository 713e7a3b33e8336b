//! Hall bases of free Lie rings, the Witt formula, and closed-form Baer
//! invariants of free nilpotent groups, each checked against brute-force
//! enumeration.
//!
//! * [`commutator`]: formal commutators, their order and basicness.
//! * [`hall`] and [`witt`]: basic commutators by weight and their counts.
//! * [`lie`]: exact free Lie ring arithmetic in the Hall basis.
//! * [`multiplier`]: the sets `A`, `B`, `C`, cardinalities and ranks.
//! * [`verify`]: formula-against-oracle suites used by `baer verify`.

pub mod commutator;
pub mod error;
pub mod hall;
pub mod lie;
pub mod multiplier;
pub mod verify;
pub mod witt;

pub use commutator::{Commutator, Generator};
pub use error::{Error, Result, Violation};
pub use hall::{generate_basis, BasicId, BasisSlice, HallBasis};
pub use lie::{independent, LieElement};
pub use multiplier::{
    abelian_multiplier, basis_d, card_a, card_a_cap_c, card_a_minus_c, check_hypotheses,
    enumerate_set, polynilpotent_rank, v_multiplier_rank, AbelianDecomposition, AbelianGroupSpec,
    Case, HypothesisReport, PairSet, PolyParams, SetKind, VParams,
};
pub use witt::{mobius, witt, witt_u64};

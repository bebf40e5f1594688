//! Finite posets, (m,n)-filters, and representability over fields of sets.
//!
//! A poset is (m,n)-representable when it embeds into a powerset lattice so
//! that existing meets of fewer than `m` elements and joins of fewer than `n`
//! elements are sent to intersections and unions. The crate decides the
//! property through filter separation — a poset is representable exactly when
//! each pair `x ≰ y` admits an (m,n)-filter containing `x` but not `y` — and
//! produces machine-checkable artifacts in both directions: an explicit
//! set-representation when the answer is yes, and the failing pairs when it
//! is no.
//!
//! Bounds are written `(m, n)` with `m, n ≥ 3` or `omega` (no size limit);
//! `(omega, omega)` is the strongest condition. The [`pk`] module generates a
//! doubling family of posets none of whose members is (3,3)-representable,
//! while every proper subfamily of the obstructions stays separable — the
//! family witnesses that no finite amount of meet/join data certifies
//! representability.

pub mod bound;
pub mod cnf;
pub mod decider;
pub mod filter;
pub mod pk;
pub mod poset;
pub mod rep;
pub mod set;

#[cfg(test)]
mod test_support;

pub use bound::{Bound, BoundError, BoundPair};
pub use cnf::{
    encode_separation, encode_separation_with_cap, read_dimacs, read_result, solve_basic, CnfError,
    CnfFormula, CnfMeta,
};
pub use decider::{
    candidate_pairs, is_representable, is_representable_with, DeciderOptions, DecisionReport,
};
pub use filter::{
    check_filter, closure_meet_up, enumerate_filters, enumerate_filters_with_cap,
    find_separating_filter, is_filter, Filter, FilterError, FilterViolation, Separator,
};
pub use pk::{generate_pk, generate_pk_with_cap, iota_embed, Layer, PkError, PkLabel, PkPoset};
pub use poset::{PairKind, Poset, PosetDoc, PosetError};
pub use rep::{
    build_representation, build_representation_with, verify_representation, RepReport,
    RepViolation, Representation,
};
pub use set::ElemSet;

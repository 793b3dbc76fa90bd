//! Gröbner–Shirshov bases for string rewriting systems, with the explicit
//! basis and reduced-word combinatorics of the affine Weyl group Ã_n.
//!
//! ```
//! use affine_gs::{affine_a, complete, g_families, CompletionLimits};
//!
//! let p = affine_a(3).unwrap();
//! let basis = complete(&p.rule_set(), CompletionLimits::default()).unwrap();
//! assert_eq!(basis, g_families(3).unwrap());
//! ```

pub mod affine;
pub mod automaton;
pub mod classes;
pub mod oracle;
pub mod partition;
pub mod presentation;
pub mod rewrite;
pub mod series;
pub mod word;

pub use affine::{
    compare_bases, explicit_basis, g_families, r_range, verify_explicit_basis, BasisReport, Family, LabeledRule,
};
pub use automaton::{count_reduced, FactorAutomaton};
pub use classes::{
    block_pair_reduced, classify, enumerate_arranged, enumerate_marked, free_exponents, marked_components,
    r0free_enumerate, rebuild, rebuild_with_exponents, ArrangedWord, Block, ClassError, Classification, Classifier,
    MarkedSeq, USkeleton, VChain,
};
pub use oracle::{bfs_count_oracle, WordClosure};
pub use partition::{
    basic_to_block, block_to_basic, box_count, decompose, marked_to_connected, oplus, q_binomial, BasicPartition,
    BoxPartition, ConnectedSeq,
};
pub use presentation::{affine_a, finite_a, from_coxeter_matrix, CoxeterMatrix, Presentation};
pub use rewrite::{
    ambiguities, complete, composition_remainder, interreduce, is_gs_basis, Ambiguity, AmbiguityKind, BasisCheck,
    CompletionError, CompletionLimits, Limit, Rule, RuleSet, Strategy,
};
pub use series::{poincare_affine_a, Poly, TruncatedSeries};
pub use word::{Alphabet, DegLexOrder, Symbol, Word};

//! Braid words, the permutation homomorphism, and a word-problem decision via
//! the Artin action on a free group.

pub mod artin;
pub mod conjugacy;
mod free_group;
pub mod growth;
mod permutation;
mod word;

pub use artin::{artin_action, word_equal};
pub use conjugacy::{conjugacy_witness_eo_alpha, conjugacy_witness_rev_alpha};
pub use free_group::FreeGroupWord;
pub use growth::{growth_rate, growth_rate_estimate, growth_rate_with, GrowthEstimate, GrowthOptions};
pub use permutation::{is_cyclic, is_pure, permutation, Permutation};
pub use word::{alpha, beta, cycle_word, e_braid, full_twist, half_twist, o_braid, BraidWord, Letter};

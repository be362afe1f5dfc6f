//! Tripartite two-input/two-output box calculus.
//!
//! The crate models behaviors (conditional probability tables) of three
//! parties with binary inputs and outputs, the canonical extremal boxes of
//! the nested local polytopes, the Svetlichny and Mermin discord measures
//! built from nested differences of inequality moduli, LP membership
//! certificates with exact-rational fallback, and Born-rule box generation
//! from three-qubit (and six-qubit block) states.

pub mod behavior;
pub mod format;
pub mod lro;
pub mod measures;
pub mod polytope;
pub mod quantum;
pub mod simplex;
pub mod vertices;

pub use behavior::{mix, white_noise, Behavior, BoxError, CorrelatorVector};
pub use lro::{apply_lro, permute_parties, LocalReversibleOp, PartyPerm, PartyRelabel};
pub use measures::{
    chsh_values, class99_value, discord_report, mermin_discord, mermin_moduli, mermin_value,
    monogamy_check, svetlichny_discord, svetlichny_moduli, svetlichny_value, DiscordReport,
    PairingStructure,
};
pub use polytope::{
    classify_region, membership, three_decomposition, verify_decomposition, MembershipResult,
    Region, SetName, ThreeDecomposition, VertexSet,
};
pub use quantum::{
    born_box, born_box_blocked, BlockStrategy, DensityOperator, MeasurementSettings, QuantumError,
};
pub use vertices::{
    class8_box, deterministic_box, mermin_box_mm, mermin_box_nmm, pr_box, pr_box_ext,
    svetlichny_box, CanonicalVertex, Pairing,
};

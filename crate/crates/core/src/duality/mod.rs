//! The maps `ψ_{i,j}(V_1)`, `f`, `g` and `h`, the Hermite matrix, generation
//! checks and the end-to-end self-duality certificate.

pub mod chains;
pub mod generation;
pub mod hermite;
pub mod psi;
pub mod search;

pub use chains::{
    f_chain, finite_length_window, g_chain, verify_self_duality, verify_self_duality_with_window, DualityCertificate,
    GChain, WindowReport,
};
pub use generation::{bgg_generation_check, find_failing_witness, GenerationReport, Side};
pub use hermite::{classical_hermite_matrix, hermite_matrix, weight_block_diff, BlockDiff, HermiteMatrix};
pub use psi::{koszul_phi, psi, resolution_c, resolution_on, PsiMap, SchurModule};
pub use search::{generic_chain_iso_search, generic_chain_iso_search_with, IsoSearch};

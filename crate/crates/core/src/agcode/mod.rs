//! Evaluation codes `C(D, E)` and their symmetries.

pub mod code;
pub mod enumerate;
pub mod files;
pub mod symmetry;
pub mod trace;

pub use code::{ag_code_from_basis, build_ag_code, standard_form_of, AgProvenance, LinearCode, ProvenanceSummary, StandardForm};
pub use enumerate::{
    codewords, compress_code, for_each_codeword, min_distance, min_distance_from, weight_distribution,
    weight_distribution_capped, CodewordOrbit, CompressedCode,
};
pub use files::{parse_weights_csv, read_code_files, weights_csv, write_code_files, CodeSidecar, FieldSpec};
pub use symmetry::{
    full_perm_group, is_code_automorphism, phi_kernel, phi_map, CodePermutation, KernelReport, PhiKernel, PhiMap,
    PhiReport, FULL_PERM_GROUP_MAX_N,
};
pub use trace::trace_code;

//! Constructive library for equi-isoclinic tight fusion frames.
//!
//! The pipeline goes: exact `GF(2^k)` arithmetic ([`field`]) builds
//! distance-regular antipodal covers of complete graphs ([`drackn`]); their
//! off-diagonal permutation blocks generate a dihedral group whose degree-2
//! constituents lift the cover into a signature matrix ([`reps`]); signature
//! matrices are certified and factored into explicit fusion frames
//! ([`eitff`]); and 2x2-block signature matrices correspond to complex
//! symmetric conference matrices ([`conference`]).
//!
//! Every constructor has a matching verifier that checks the defining axioms
//! of its output, in exact integer arithmetic wherever the axioms are
//! integral.

// index loops over both axes of a grid read better than enumerate chains
#![allow(clippy::needless_range_loop)]

pub mod conference;
pub mod drackn;
pub mod eitff;
pub mod error;
pub mod field;
pub mod json;
pub mod numerics;
pub mod perm;
pub mod reps;

pub use conference::{
    ctr, et_taoui_to_signature, exact_residue_count, mathon_conference, signature_to_conference,
    verify_conference, verify_conference_report, ConferenceMatrix,
};
pub use drackn::{
    block_group_closure, conference_to_drackn, default_closure_cap, mathon_drackn, mathon_labels,
    verify_drackn, verify_drackn_report, DracknAdjacency, DracknParams, GroupClosure, MathonLabels,
};
pub use eitff::{
    check_eitff, expected_params, factor_gram, frame_from_signature, gram_from_signature,
    verify_signature, verify_signature_report, EitffCertificate, EitffParams, FusionFrame,
    SignatureMatrix,
};
pub use error::{Axiom, CheckRecord, Error, Result};
pub use field::{field_build, symplectic, FieldElement, FieldSpec};
pub use numerics::{
    cluster_eigenvalues, hermitian_eigen, singular_values, BlockMatrix, Complex, Mat, Spectrum,
    DEFAULT_TOL,
};
pub use perm::Perm;
pub use reps::{
    identify_dihedral, irrep_matrix, lift_deleted_permutation, lift_dihedral, DihedralElement,
    RepSelection,
};

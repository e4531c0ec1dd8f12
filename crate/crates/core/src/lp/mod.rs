//! Linear-programming criterion: a small simplex and Farkas certificates.

pub mod farkas;
pub mod simplex;

pub use farkas::{
    build_d_matrix, find_certificate, verify_certificate, CertificateSearch, DMatrix,
    FarkasCertificate, LengthSource, LpOptions, RejectReason, Verification,
};

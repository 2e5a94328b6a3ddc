//! Special functions, fixed-node quadrature, bracketed root finding and the
//! crossing classifier used by the lossy closed forms.

pub mod crossings;
pub mod dilog;
pub mod quadrature;
pub mod roots;

pub use crossings::{classify_crossings, CaseId, LabeledRoot, RootReport, Segment};
pub use dilog::dilog;
pub use quadrature::{gauss_chebyshev, QuadratureSpec, DEFAULT_NODES};
pub use roots::{find_root, find_root_bracketed};

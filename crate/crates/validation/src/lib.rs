//! Acceptance criteria for the workspace, run by `cargo test -p pass-validation`.

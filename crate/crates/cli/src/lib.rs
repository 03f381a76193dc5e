//! Command implementations for the `coxfs` binary.
//!
//! Everything lives in the library so integration tests can drive the same
//! code paths the binary does.

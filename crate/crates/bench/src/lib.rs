//! Shared setup helpers for the criterion benchmarks live in the bench
//! targets themselves; this crate exists only to host them.

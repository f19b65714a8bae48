//! Holds the `acceptance` integration test; run it with
//! `cargo test -p convball-validation --test acceptance`.

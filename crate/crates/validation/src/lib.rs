//! Holds the `acceptance` test target. Run it with
//! `cargo test -p polywave-validation --test acceptance`.

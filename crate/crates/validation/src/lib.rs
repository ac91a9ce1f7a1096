//! Holds the acceptance binary under `tests/`; run it with `cargo test -p validation`.

//! Re-derives the free 3-step multiplication law and prints the Rust source
//! that is frozen in `src/nilgroup/free3_law.rs`.
//!
//!     cargo run --example derive_free3_law > crates/core/src/nilgroup/free3_law.rs

use gowerslab::nilgroup::symbolic::{derive_free3_law, emit_rust_source};

fn main() {
    let law = derive_free3_law();
    print!("{}", emit_rust_source(&law));
}

//! Library side of the `smale5` command: output formats, the result cache and
//! the command implementations. `main.rs` only parses arguments.

pub mod cache;
pub mod commands;
pub mod format;

pub use cache::Cache;
pub use format::Format;

/// Process exit code for an error: 2 for a mathematical inconsistency
/// anywhere in the chain, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let inconsistent =
        err.chain().filter_map(|e| e.downcast_ref::<smale5_core::Error>()).any(smale5_core::Error::is_inconsistency);
    if inconsistent {
        2
    } else {
        1
    }
}

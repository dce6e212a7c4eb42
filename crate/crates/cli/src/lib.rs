//! File formats, generators, reports and the command-line front end for
//! `hankel-core`.

pub mod app;
pub mod generate;
pub mod io;
pub mod report;
pub mod repro;

/// Exit status for an error: 2 when the input was rejected, 3 when a
/// numerical method failed.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<hankel_core::Error>() {
        Some(e) if !e.is_rejection() => 3,
        _ => 2,
    }
}

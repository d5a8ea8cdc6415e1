pub mod classify;
pub mod probe;
pub mod snapshot;
pub mod sweep;

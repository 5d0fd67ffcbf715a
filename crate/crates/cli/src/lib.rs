//! Channel-spec parsing, parameter sweeps, CSV output, figure presets and the
//! convention consistency check behind the `bellcoh` binary.

pub mod consistency;
pub mod csv;
pub mod presets;
pub mod spec;
pub mod sweep;

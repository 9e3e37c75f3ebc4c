//! Realizability checking and constructive realization.

mod assemble;
mod builder;
mod check;
mod disk;

pub use assemble::{realize, RealizeError};
pub use check::{beta_one_position, check_realizable, Condition, RealizabilityReport};
pub use disk::{realize_disk, DiskError, DiskFlow, DiskFragment};

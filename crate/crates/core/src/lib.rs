//! Group entropies, their composition laws and ordinal-pattern complexity
//! measures.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod delta;
pub mod entropy;
pub mod error;
pub mod formal_group;
pub mod lambertw;
pub mod maxent;
pub mod ordinal;
pub mod prob;
pub mod process;
pub mod state_space;
pub mod sum;

pub use entropy::{EntropyKind, EntropyParams, EntropySpec, LimitPolicy};
pub use error::{Error, Result};
pub use formal_group::{GroupLaw, Generator};
pub use maxent::{EnergyConstraint, MaxEntResult};
pub use ordinal::{ComplexityClass, OrdinalPattern, PatternDistribution};
pub use prob::Distribution;
pub use state_space::StateSpaceModel;

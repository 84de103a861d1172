//! Temporary build scaffold; full module set restored as modules land.
pub mod graph;
pub mod iso;
pub mod topology;
pub mod ring;

pub use ring::{FiniteRing, RingSpec};

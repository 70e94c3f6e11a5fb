//! Exact computation of finite type invariants of 3-manifolds presented by
//! surgery on framed links.

pub mod conway;
pub mod cyclotomic;
pub mod diagrams;
pub mod error;
pub mod exact_algebra;
pub mod fixtures;
pub mod link_diagrams;
pub mod manifolds;
pub mod quantum;
pub mod spin;
pub mod verify;

pub use cyclotomic::CyclotomicInt;
pub use error::{Error, Result};
pub use exact_algebra::{FormalSum, IntMatrix, ZPoly};
pub use link_diagrams::{FramedLink, Role, SublinkSelector};
pub use manifolds::{Invariant, SurgeryPresentation, Value, ValueRing};

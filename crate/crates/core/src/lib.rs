//! Isoperimetric profiles of smooth planar convex domains.

pub mod arcs;
pub mod disk;
pub mod error;
pub mod geometry;
pub mod numeric;
pub mod perturbation;
pub mod profile;

pub use arcs::{ArcKind, PerfectArc, TwoPointState};
pub use error::{Error, Result};
pub use geometry::{CurvePoint, DomainClassReport, DomainSpec, SupportCurve};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/support-functions.md")]
    mod support_functions {}
    #[doc = include_str!("../../../book/src/disk.md")]
    mod disk {}
    #[doc = include_str!("../../../book/src/perfect-arcs.md")]
    mod perfect_arcs {}
    #[doc = include_str!("../../../book/src/profiles.md")]
    mod profiles {}
    #[doc = include_str!("../../../book/src/perturbations.md")]
    mod perturbations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

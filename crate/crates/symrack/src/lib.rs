//! Computational algebra for finite symmetric racks and symmetric quandles.
//!
//! The crate covers operation-table racks with a good involution, their
//! modules, abelian extensions and factor sets, the generalized rack and
//! quandle (co)homology with homogeneous coefficients, and the associated
//! group with its first cohomology. Everything bottoms out in exact integer
//! linear algebra (Smith normal form), so all reported invariant factors
//! are exact.

pub mod abgrp;
pub mod assoc;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod ext;
pub mod json;
pub mod rack;
pub mod sqmod;
pub mod suite;

pub use abgrp::{AbHom, FiniteAbelianGroup};
pub use cohomology::{CoeffAction, Guard};
pub use error::{Error, Result};
pub use ext::{ExtensionRack, FactorSet, Variant};
pub use rack::{FiniteSymmetricRack, GroupTable, ValidationReport};
pub use sqmod::{SQModule, XMap};

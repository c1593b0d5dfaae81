//! Finitely generated subgroups of free groups through their Stallings
//! graphs: folding, membership, bases, intersections, fringes, algebraic
//! extensions, Whitehead minimization and closure operators.

pub mod algext;
pub mod error;
pub mod explore;
pub mod format;
pub mod lattice;
pub mod oracles;
pub mod properties;
pub mod stallings;
mod union_find;
pub mod whitehead;
pub mod words;

pub use error::{Error, Result};
pub use lattice::SubgroupSet;
pub use stallings::{Edge, GraphMorphism, Index, LabeledGraph, StallingsGraph, VertexPartition};
pub use words::{Endomorphism, Letter, Word};

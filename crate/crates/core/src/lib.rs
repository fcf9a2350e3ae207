//! Exact computer algebra for non-syzygetic cubic fourfolds: Gale duality,
//! ρ-Lagrangian subspaces of Λ³(E⊕F), EPW sextics, the Fano-line
//! correspondence, and the lattice count of Fourier–Mukai partners.

pub mod algebra;
pub mod epwfano;
pub mod equivariant;
pub mod error;

pub use error::{Error, Result};
pub mod gale;
pub mod gmlink;
pub mod groebner;
pub mod invariants;
pub mod io;
pub mod lagrangian;
pub mod lattice;
pub mod selftest;

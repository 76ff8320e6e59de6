//! Exact construction of the ring `T^Δ(F[D⋊E], F[D⋊E])` of perfect
//! p-permutation bimodules, for `D` cyclic of order `p^n` and `E` the
//! subgroup of `Aut(D)` of order `e` dividing `p - 1`.
//!
//! Everything here is combinatorial: basis elements are labels, products are
//! integer structure constants, and every claim about idempotents, blocks or
//! semisimplicity is checked with exact arithmetic.
//!
//! Layout:
//! - [`exactarith`]: scalar rings, dense matrices, Smith normal form, cyclotomics.
//! - [`groupmodel`]: the group `D⋊E`, subgroups of `G×G`, double cosets, star products.
//! - [`tring`]: the canonical basis and the closed-form multiplication.
//! - [`mackey`]: an independent multiplication oracle built from coset enumeration.
//! - [`cartan`]: twisted matrix rings and idempotents of the projective ideal.
//! - [`blocks`]: central decomposition, block isomorphisms, idempotent scan, semisimplicity.

pub mod blocks;
pub mod cartan;
pub mod error;
pub mod exactarith;
pub mod exec;
pub mod groupmodel;
pub mod mackey;
pub mod tring;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use groupmodel::{GroupModel, ModelParams};
pub use tring::{BasisElement, RingElement, TRing};

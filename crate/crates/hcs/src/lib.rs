//! Cyclic Hamiltonian cycle systems of complete multipartite graphs.
//!
//! The complete multipartite graph `K_{m x n}` has `m` parts of size `n`.
//! We put its vertices on the cyclic group `Z_M`, `M = m*n`, so that the
//! parts are the cosets of the subgroup generated by `m`. A Hamiltonian
//! cycle system (HCS) is a partition of the edge set into Hamiltonian
//! cycles; it is *cyclic* when `v -> v + 1` maps the system onto itself,
//! and *symmetric* when every cycle is fixed by `v -> v + m`.
//!
//! A cyclic system is determined by a small set of base cycles, each
//! written as a closed trail `[c_0, ..., c_{r-1}]_x`: the concatenation
//! of the translates of the base vertex list by `0, x, 2x, ...`. The
//! whole system exists precisely when the signed differences along the
//! base trails hit every residue outside the part-subgroup exactly once.
//!
//! The crate provides, for even `m`:
//! * a feasibility test deciding existence of a cyclic symmetric HCS
//!   ([`feasibility`]), plus the underlying counting obstructions;
//! * explicit constructions covering every feasible case with `n > 2`
//!   ([`constructor`]);
//! * two independent verifiers, one difference-based and one that
//!   expands every cycle and checks the edge partition ([`verifier`]);
//! * an exhaustive backtracking search usable as an oracle on small
//!   orders ([`oracle`]);
//! * a plain-text design file format and a command line front end
//!   ([`design`], [`cli`]).

// Congruences are written `x % m == 0` throughout: this is arithmetic
// modulo m, not a divisibility convenience.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod cli;
pub mod constructor;
pub mod design;
pub mod feasibility;
pub mod oracle;
pub mod trail;
pub mod verifier;
pub mod zmod;

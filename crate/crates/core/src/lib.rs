//! Exact computation of critical ideals of graphs (determinantal ideals of
//! the generalized Laplacian over the integers), the algebraic co-rank,
//! critical groups via Smith normal form, and structural recognisers for the
//! graphs with at most two trivial critical ideals.

pub mod classify;
pub mod critical;
pub mod graph;
pub mod ideal;
pub mod poly;
pub mod snf;
pub mod tables;
pub mod verify;

pub mod abelian;
pub mod bigjson;
pub mod cli;
pub mod graded;
pub mod homology;
pub mod invariants;
pub mod models;
pub mod tfg;

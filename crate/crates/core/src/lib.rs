pub mod classify;
pub mod cli;
pub mod collections;
pub mod cyclic;
pub mod error;
pub mod graphs;
pub mod io;
pub mod positroid;
pub mod symmetry;

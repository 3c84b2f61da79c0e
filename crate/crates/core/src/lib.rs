//! Defining graphs of Artin groups, the Coxeter word problem, and the
//! acylindrical hyperbolicity verdict with its explicit WPD candidate.

pub mod cert;
pub mod classify;
pub mod coxeter;
pub mod error;
pub mod graph;
pub mod shadow;
pub mod wpd;

pub use coxeter::{CoxNormalForm, CoxWord, CoxeterSystem};
pub use error::{Error, GraphError, Result};
pub use graph::{
    derived_graphs, join_decompose, shape_flags, DefiningGraph, JoinDecomposition, Label,
    Vertex,
};

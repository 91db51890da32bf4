//! Edge-type polytopes of chemical graphs and extremal degree-based indices.

pub mod api;
pub mod catalog;
pub mod cli;
pub mod edgetype;
pub mod graph;
pub mod hull;
pub mod index;
pub mod oracle;
pub mod realizer;
pub mod views;

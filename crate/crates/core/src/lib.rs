//! Positive matching decompositions of uniform hypergraphs.

pub mod hypergraph;
pub mod cli;
pub mod decomposition;
pub mod lp;
pub mod lss;
pub mod oracle;
pub mod rational;
pub mod walks;

pub mod algebra;
pub mod bundle;
pub mod cyclo;
pub mod expr;
pub mod grp;
pub mod kgraph;
pub mod phase;
pub mod scalar;
pub mod workspace;

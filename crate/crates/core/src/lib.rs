pub mod cli;
pub mod counting;
pub mod diophantine;
pub mod effective;
pub mod heights;
pub mod liouville;
pub mod mpcert;
pub mod rexpr;

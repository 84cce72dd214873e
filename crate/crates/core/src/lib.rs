pub mod dataset;
pub mod lang;
pub mod mdp;
pub mod models;
pub mod rational;
pub mod solve;

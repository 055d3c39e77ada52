pub mod poly;
pub mod catalog;
pub mod cli;
pub mod curve;
pub mod engine;
pub mod model;
pub mod numeric;
pub mod reaction;

pub mod arith;
pub mod field;
pub mod poly;
pub mod cyclic;
pub mod constructions;
pub mod linalg;
pub mod repair;
pub mod verify;
pub mod codefile;
pub mod sweep;

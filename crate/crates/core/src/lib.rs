//! Exact computations for equivariant splittings of finite groups.

pub mod arith;
pub mod linalg;
pub mod group;
pub mod burnside;
pub mod oracle;
pub mod certificate;
pub mod families;
pub mod semidirect;
pub mod mackey;
pub mod gcw;
pub mod roq;
pub mod verify;

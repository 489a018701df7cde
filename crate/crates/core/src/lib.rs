//! Combinatorics of finite and infinite Sturmian words over `{a, b}`.

pub mod characteristic;
pub mod christoffel;
pub mod depth;
pub mod error;
pub mod morphism;
pub mod oracle;
pub mod palindrome;
pub mod serde_num;
pub mod standard;
pub mod word;

pub use error::{Error, Result};
pub use word::{BinaryWord, Letter, Slope};

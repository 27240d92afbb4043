// Hashing ignores the lazily cached wide ring inside `Ring`.
#![allow(clippy::mutable_key_type)]

pub mod characters;
pub mod coeffring;
pub mod counterexample;
pub mod error;
pub mod families;
pub mod invariants;
pub mod io;
pub mod matlat;
pub mod oracle;
pub mod ribet;
pub mod subtree;

pub use error::{Error, Result};

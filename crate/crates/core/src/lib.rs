//! A dependent type checker for the Lestrade logical framework.
//!
//! A [`Session`] holds the stack of moves and rewrite rules; a
//! [`Runner`] feeds it command lines from files or an interactive stream.

pub mod checker;
pub mod implicit;
pub mod interface;
pub mod render;
pub mod rewrite;
pub mod session;
pub mod subst;
pub mod syntax;
pub mod term;

pub use interface::Runner;
pub use session::{Rule, Session, DEFAULT_MARGIN};
pub use term::{Argument, Entity, EntitySort, Entry, Frame, Ident, Sort};

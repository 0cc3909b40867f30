//! Classification of linear codes over GF(2), GF(3) and GF(4) up to
//! semimonomial equivalence by canonical augmentation.

#![allow(clippy::needless_range_loop)]

pub mod augment;
mod candidates;
pub mod canon;
pub mod cli;
pub mod code;
pub mod constraints;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod packed;
pub mod symmetry;

//! Hiccup sequences and the machinery for proving things about them.
//!
//! A `(j, x, y, z)`-hiccup sequence starts at `x` and grows by `y` after
//! indices `n` with `n - j` in the sequence and by `z` otherwise. This crate
//! generates them, presents them as morphic words, derives Beatty formulas
//! for the Sturmian cases, builds Dumont-Thomas numeration systems, and
//! certifies continued-fraction conjectures with interval arithmetic.

pub mod bfile;
pub mod catalog;
pub mod cfrac;
pub mod error;
pub mod exec;
pub mod formula;
pub mod interval;
pub mod morphism;
pub mod numeration;
pub mod quadratic;
pub mod sequence;
pub mod sturmian;
pub mod verify;

pub use error::{Error, Result};
pub use quadratic::QuadraticNumber;
pub use sequence::{generate_hiccup, BinaryWord, HiccupParams, IntegerSequence};

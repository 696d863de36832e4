//! Tangle invariants through three lenses: quantum (Reshetikhin–Turaev and
//! Viro) functors, a decategorified bordered Floer theory, and the dictionary
//! between them.

pub mod alexander;
pub mod cli;
pub mod crosscheck;
pub mod diagram;
pub mod gradedring;
pub mod oszdecat;
pub mod quiverlab;
pub mod rtmaps;
pub mod statespace;
pub mod viromaps;

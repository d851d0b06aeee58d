//! Exact construction of quantum Harish-Chandra modules for Hermitian
//! symmetric pairs and of their spherical principal series.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::too_many_arguments)]

pub mod linalg;
pub mod flag;
pub mod modules;
pub mod par;
pub mod principal;
pub mod rootdata;
pub mod scalars;
pub mod selftest;
pub mod uqg;

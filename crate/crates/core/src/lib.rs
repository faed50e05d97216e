//! Exact analysis of q-holonomic sequences.

pub mod annihilator;
pub mod asymptotics;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod local;
pub mod mseries;
pub mod newton;
pub mod operator;
pub mod poly;
pub mod qseq;
pub mod rational;
pub mod series;
pub mod svg;
pub mod wkb;

pub use error::{Error, Result};
pub use local::LocalOperator;
pub use mseries::MSeries;
pub use operator::PolyOperator;
pub use rational::Rational;
pub use series::QSeries;

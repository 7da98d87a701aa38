//! Exact sumset arithmetic over ℤ^d and constructive machinery for bounding
//! dilate sums `A + λ·A` in terms of the doubling `K = |A+A|/|A|`.
//!
//! * [`setcore`]: canonical finite sets, sumsets, dilates, fibers, embeddings.
//! * [`lemmas`]: popular differences, Plünnecke minimizers, greedy covers,
//!   a constructive BSG decomposition and the combined covering pipeline.
//! * [`structure`]: the refined greedy trichotomy, the technical lemma, the
//!   main-lemma dichotomy and the iterated partition bounding `|A + 2·A|`.
//! * [`bounds`]: verifiers for the dilate-sum inequalities, extremal
//!   families and the simplex counting formula.
//! * [`cli`]: the `dilate` command-line front end.

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod lemmas;
pub mod rational;
pub mod report;
pub mod setcore;
pub mod structure;

pub use config::Constants;
pub use error::{Error, Result};
pub use rational::Rational;
pub use report::BoundReport;
pub use setcore::{Coord, DoublingStats, GroupSet, Sign};

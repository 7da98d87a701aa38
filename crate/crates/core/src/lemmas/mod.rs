//! Covering and sumset-growth toolbox: popular differences, the Plünnecke
//! minimizer, greedy covering, a constructive BSG decomposition and the
//! combined covering pipeline built from them.

mod bsg;
mod combination;
mod cover;
mod plunnecke;
mod popular;

pub use bsg::{bsg_decompose, graph_sumset, BipartiteEdgeSet, BsgOutcome, BsgReport};
pub use combination::{combination, CombinationOutcome, CombinationReport};
pub use cover::{greedy_cover, CoverDecomposition, GreedyCover};
pub use plunnecke::{plunnecke_check, plunnecke_minimizer, Minimizer};
pub use popular::{popular_differences, PopularDifferenceSet};

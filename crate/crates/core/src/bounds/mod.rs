//! Inequality verifiers, extremal families and the simplex count.
//!
//! Every verifier returns a [`BoundReport`](crate::BoundReport). Reports
//! marked asserted encode inequalities valid for all finite sets; a failing
//! asserted report is a bug or a counterexample.

mod families;
mod simplex;
mod verify;
mod witness;

use num_bigint::BigInt;

pub use families::{
    corpus_from_spec, default_corpus, gen_gap, gen_geometric, gen_hypercube, gen_interval, gen_random, gen_simplex,
    generate, random_corpus, structured_corpus, CorpusEntry, Params, DEFAULT_INTERVALS,
};
pub use simplex::{fp_formula, fp_lower_bound_check, simplex_counts, SimplexCounts};
pub use verify::{
    exponent_emp, ruzsa_triangle_check, verify_dilate_lemma, verify_large_dilates, verify_large_k, verify_thm1,
    verify_thm2, DilatePart, FpConstants,
};
pub use witness::{large_k_delta, large_plunnecke_witness, LargeSubsetWitness};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

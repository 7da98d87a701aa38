use crate::error::{Error, Result};
use crate::lemmas::CoverDecomposition;
use crate::rational::{frac, int, Rational};
use crate::report::BoundReport;
use crate::setcore::{dilate_sum, sumset, GroupSet, Sign};

/// `|A + 2·A'| <= K Σ_s |X + A'_s|` with `K = |X+A|/|X|`.
///
/// `cover` must decompose `A'` into pieces `A'_s ⊆ s + X`. The inequality is
/// a theorem when `X` minimizes `|X+A|/|X|` over nonempty subsets of `A`;
/// the report is asserted only when `x_certified` says so.
pub fn basic_bound(
    a: &GroupSet,
    a_prime: &GroupSet,
    x: &GroupSet,
    cover: &CoverDecomposition,
    x_certified: bool,
) -> Result<BoundReport> {
    const OP: &str = "basic_bound";
    if a.is_empty() || x.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    if !a_prime.is_subset(a) {
        return Err(Error::precondition(OP, "A' is not a subset of A"));
    }
    if cover.sign != Sign::Plus || &cover.base != x {
        return Err(Error::precondition(OP, "cover is not over translates of X"));
    }
    cover.verify(a_prime)?;
    let k = frac(sumset(x, a)?.len(), x.len());
    let mut pieces = 0usize;
    for piece in &cover.pieces {
        pieces += sumset(x, piece)?.len();
    }
    let lhs = dilate_sum(a, 2, a_prime)?.len();
    let rhs: Rational = &k * int(pieces);
    Ok(BoundReport::counts("basic", lhs, rhs).with_k(k).asserted_if(x_certified))
}

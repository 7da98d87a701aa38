use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{floor_from_f64, frac, int, to_f64, Rational};
use crate::report::BoundReport;
use crate::setcore::{sumset, GroupSet};

/// Outcome of the search for a large subset with small `|Y+A+A|`.
#[derive(Clone, Debug, Serialize)]
pub struct LargeSubsetWitness {
    pub y: GroupSet,
    /// Whether every admissible `Y` was examined.
    pub exhaustive: bool,
    pub report: BoundReport,
}

/// `δ = K^{2/3}/|A|^{1/3}` rounded down to a multiple of `10⁻⁹`.
pub fn large_k_delta(k: &Rational, n: usize) -> Result<Rational> {
    let d = floor_from_f64(to_f64(k).powf(2.0 / 3.0) / (n as f64).cbrt() * (1.0 - 1e-12), 1_000_000_000);
    if d <= int(0) || d >= int(1) {
        return Err(Error::InvalidParameter(format!("delta = {} is outside (0, 1)", to_f64(&d))));
    }
    Ok(d)
}

/// `K²|Y|/δ² − (1−δ)(2−δ)K²|A|/(2δ²)`.
fn bound(k2: &Rational, delta: &Rational, y: usize, n: usize) -> Rational {
    let d2 = delta * delta;
    k2 * int(y) / &d2 - (int(1) - delta) * (int(2) - delta) * k2 * int(n) / (int(2) * d2)
}

/// Looks for `Y ⊆ A` with `|Y| >= (1−δ)|A|` and
/// `|Y+A+A| <= K²|Y|/δ² − (1−δ)(2−δ)K²|A|/(2δ²)`.
///
/// With `|A| <= exact_limit` every admissible `Y` is examined and the one
/// with the most slack is returned; a witness must exist, so failing to find
/// one is an assertion error. Above the limit elements are removed greedily
/// (largest drop in `|Y+A+A|` first) and the report is not asserted.
pub fn large_plunnecke_witness(a: &GroupSet, delta: &Rational, exact_limit: usize) -> Result<LargeSubsetWitness> {
    const OP: &str = "large_plunnecke_witness";
    if a.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    if *delta <= int(0) || *delta >= int(1) {
        return Err(Error::InvalidParameter("delta must lie in (0, 1)".into()));
    }
    let n = a.len();
    let aa = sumset(a, a)?;
    let k = frac(aa.len(), n);
    let k2 = &k * &k;
    let aaa = sumset(&aa, a)?;
    // Y is admissible when |Y| >= (1−δ)|A|.
    let min_size = (0..=n).find(|&s| int(s) >= (int(1) - delta) * int(n)).unwrap_or(n).max(1);

    let words = aaa.len().div_ceil(64);
    let masks: Vec<Vec<u64>> = a
        .iter()
        .map(|p| {
            let mut m = vec![0u64; words];
            let shifted = aa.translate(p).expect("A+A+A holds every translate");
            for q in shifted.iter() {
                let i = aaa.position(q).expect("a + (A+A) lies in A+A+A");
                m[i / 64] |= 1 << (i % 64);
            }
            m
        })
        .collect();
    let cover = |chosen: &[bool]| -> usize {
        let mut acc = vec![0u64; words];
        for (m, _) in masks.iter().zip(chosen).filter(|(_, &c)| c) {
            for (w, x) in acc.iter_mut().zip(m) {
                *w |= x;
            }
        }
        acc.iter().map(|w| w.count_ones() as usize).sum()
    };

    let exhaustive = n <= exact_limit.min(24);
    let (chosen, lhs) = if exhaustive {
        let mut best: Option<(Rational, u64, usize)> = None;
        for mask in 0u64..(1 << n) {
            let size = mask.count_ones() as usize;
            if size < min_size {
                continue;
            }
            let chosen: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let lhs = cover(&chosen);
            let slack = bound(&k2, delta, size, n) - int(lhs);
            if best.as_ref().is_none_or(|(s, _, _)| slack > *s) {
                best = Some((slack, mask, lhs));
            }
        }
        let (slack, mask, lhs) = best.expect("Y = A is admissible");
        if slack < int(0) {
            return Err(Error::assertion(OP, "no admissible Y satisfies the bound"));
        }
        ((0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>(), lhs)
    } else {
        let mut chosen = vec![true; n];
        let mut size = n;
        let mut lhs = cover(&chosen);
        while int(lhs) > bound(&k2, delta, size, n) && size > min_size {
            let mut pick = (usize::MAX, usize::MAX);
            for i in 0..n {
                if !chosen[i] {
                    continue;
                }
                chosen[i] = false;
                let c = cover(&chosen);
                chosen[i] = true;
                if c < pick.1 {
                    pick = (i, c);
                }
            }
            chosen[pick.0] = false;
            size -= 1;
            lhs = pick.1;
        }
        (chosen, lhs)
    };
    let y = a.select(|i| chosen[i]);
    let rhs = bound(&k2, delta, y.len(), n);
    let report = BoundReport::exact("large-plunnecke", int(lhs), rhs).with_k(k).asserted_if(exhaustive);
    Ok(LargeSubsetWitness { y, exhaustive, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{gen_geometric, gen_hypercube, gen_interval};
    use crate::rational::ratio;

    #[test]
    fn interval_with_half() {
        let a = gen_interval(8);
        let w = large_plunnecke_witness(&a, &ratio(1, 2), 14).unwrap();
        assert!(w.exhaustive && w.report.pass);
        assert!(2 * w.y.len() >= a.len());
        // Y = A gives (3 − δ)K²|A|/(2δ) = 5·225/64·8/2.
        let full = bound(&ratio(225, 64), &ratio(1, 2), 8, 8);
        assert_eq!(full, ratio(5 * 225 * 8, 64 * 2));
    }

    #[test]
    fn cube_exhaustive() {
        let w = large_plunnecke_witness(&gen_hypercube(3, true).unwrap(), &ratio(1, 2), 14).unwrap();
        assert!(w.report.pass);
    }

    #[test]
    fn section_delta() {
        let a = gen_interval(12);
        let delta = large_k_delta(&ratio(23, 12), 12).unwrap();
        let w = large_plunnecke_witness(&a, &delta, 14).unwrap();
        assert!(w.exhaustive && w.report.pass);
        // Geometric progressions have K > |A|^{1/2}, where δ would exceed 1.
        assert!(large_k_delta(&ratio(7, 2), gen_geometric(3, 6).unwrap().len()).is_err());
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(large_plunnecke_witness(&gen_interval(3), &int(1), 14).is_err());
    }
}

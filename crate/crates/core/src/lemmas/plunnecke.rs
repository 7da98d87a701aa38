use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, Rational};
use crate::report::BoundReport;
use crate::setcore::{sumset, Coord, GroupSet};

/// A nonempty `X ⊆ U` with small `|X+V|/|X|`.
#[derive(Clone, Debug, Serialize)]
pub struct Minimizer {
    pub x: GroupSet,
    pub sumset_size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub ratio: Rational,
    /// `X` is a global minimizer over all nonempty subsets of `U`.
    pub certified: bool,
}

/// Positions of points inside a fixed canonical set.
struct SumIndex<'a> {
    set: &'a GroupSet,
    dense: Option<(Coord, Vec<u32>)>,
}

impl<'a> SumIndex<'a> {
    fn new(set: &'a GroupSet) -> Self {
        let dense = set.values().and_then(|vals| {
            let lo = vals[0];
            let width = vals[vals.len() - 1] - lo + 1;
            (width <= 4 * vals.len() as Coord + 4096).then(|| {
                let mut table = vec![u32::MAX; width as usize];
                for (i, &x) in vals.iter().enumerate() {
                    table[(x - lo) as usize] = i as u32;
                }
                (lo, table)
            })
        });
        SumIndex { set, dense }
    }

    /// Position of `a + b`, which must lie in the set.
    fn pos(&self, a: &[Coord], b: &[Coord], buf: &mut Vec<Coord>) -> usize {
        if let Some((lo, table)) = &self.dense {
            return table[(a[0] + b[0] - lo) as usize] as usize;
        }
        buf.clear();
        buf.extend(a.iter().zip(b).map(|(x, y)| x + y));
        self.set.position(buf).expect("sum lies in U+V")
    }
}

/// Finds `X ⊆ U` minimizing `|X+V|/|X|`.
///
/// Up to `exact_limit` elements every nonempty subset is examined; ties go to
/// the larger subset, then the lexicographically smallest. Above the limit a
/// descent starts from `X = U` and repeatedly drops the element whose removal
/// lowers the ratio the most, stopping at a local minimum.
pub fn plunnecke_minimizer(u: &GroupSet, v: &GroupSet, exact_limit: usize) -> Result<Minimizer> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyInput("plunnecke_minimizer"));
    }
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    let s = sumset(u, v)?;
    let index = SumIndex::new(&s);
    let mut buf = Vec::new();
    if u.len() <= exact_limit.min(30) {
        let words = s.len().div_ceil(64);
        let masks: Vec<Vec<u64>> = u
            .iter()
            .map(|a| {
                let mut m = vec![0u64; words];
                for b in v.iter() {
                    let p = index.pos(a, b, &mut buf);
                    m[p / 64] |= 1 << (p % 64);
                }
                m
            })
            .collect();
        let mut best = Best { cov: usize::MAX, size: 0, chosen: Vec::new() };
        let mut stack = vec![vec![0u64; words]; u.len() + 1];
        let mut chosen = Vec::with_capacity(u.len());
        exhaustive(0, 0, &masks, &mut stack, &mut chosen, &mut best);
        let x = u.select(|i| best.chosen.binary_search(&i).is_ok());
        return Ok(Minimizer { ratio: frac(best.cov, best.size), sumset_size: best.cov, x, certified: true });
    }

    let mut count = vec![0u32; s.len()];
    let positions = |a: &[Coord], buf: &mut Vec<Coord>| -> Vec<usize> { v.iter().map(|b| index.pos(a, b, buf)).collect() };
    for a in u.iter() {
        for p in positions(a, &mut buf) {
            count[p] += 1;
        }
    }
    let mut active = vec![true; u.len()];
    let (mut cov, mut size) = (s.len(), u.len());
    while size > 1 {
        let mut choice: Option<(usize, usize)> = None; // (index, loss)
        for (i, a) in u.iter().enumerate() {
            if !active[i] {
                continue;
            }
            let loss = positions(a, &mut buf).into_iter().filter(|&p| count[p] == 1).count();
            let better = match choice {
                None => true,
                // (cov - loss)/(size-1) smaller  <=>  larger loss
                Some((_, best_loss)) => loss > best_loss,
            };
            if better {
                choice = Some((i, loss));
            }
        }
        let (i, loss) = choice.expect("an active element exists");
        // Strict improvement: (cov - loss) * size < cov * (size - 1).
        if (cov - loss) * size >= cov * (size - 1) {
            break;
        }
        for p in positions(u.point(i), &mut buf) {
            count[p] -= 1;
        }
        active[i] = false;
        cov -= loss;
        size -= 1;
    }
    let x = u.select(|i| active[i]);
    Ok(Minimizer { ratio: frac(cov, size), sumset_size: cov, x, certified: false })
}

struct Best {
    cov: usize,
    size: usize,
    chosen: Vec<usize>,
}

fn exhaustive(
    start: usize,
    depth: usize,
    masks: &[Vec<u64>],
    stack: &mut [Vec<u64>],
    chosen: &mut Vec<usize>,
    best: &mut Best,
) {
    for i in start..masks.len() {
        let (lo, hi) = stack.split_at_mut(depth + 1);
        let mut cov = 0usize;
        for ((dst, src), m) in hi[0].iter_mut().zip(&lo[depth]).zip(&masks[i]) {
            *dst = src | m;
            cov += dst.count_ones() as usize;
        }
        chosen.push(i);
        let size = chosen.len();
        // Preorder visits equal-size subsets lexicographically, so only a
        // strictly better (ratio, size) pair replaces the incumbent.
        let lhs = cov as u128 * best.size as u128;
        let rhs = best.cov as u128 * size as u128;
        if best.size == 0 || lhs < rhs || (lhs == rhs && size > best.size) {
            best.cov = cov;
            best.size = size;
            best.chosen.clone_from(chosen);
        }
        exhaustive(i + 1, depth + 1, masks, stack, chosen, best);
        chosen.pop();
    }
}

/// `|X+V+W| <= |X+V||X+W|/|X|`, valid whenever `X` minimizes `|X'+V|/|X'|`.
pub fn plunnecke_check(x: &GroupSet, v: &GroupSet, w: &GroupSet) -> Result<BoundReport> {
    if x.is_empty() || v.is_empty() || w.is_empty() {
        return Err(Error::EmptyInput("plunnecke_check"));
    }
    let xv = sumset(x, v)?;
    let xw = sumset(x, w)?;
    let xvw = sumset(&xv, w)?;
    Ok(BoundReport::counts("plunnecke", xvw.len(), frac(xv.len() * xw.len(), x.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn interval_is_its_own_minimizer() {
        let a = GroupSet::from_ints(0..6);
        let m = plunnecke_minimizer(&a, &a, 16).unwrap();
        assert!(m.certified);
        assert_eq!(m.x, a);
        assert_eq!(m.ratio, ratio(11, 6));
    }

    #[test]
    fn singleton_input() {
        let a = GroupSet::from_ints([5]);
        let v = GroupSet::from_ints([0, 3]);
        let m = plunnecke_minimizer(&a, &v, 16).unwrap();
        assert_eq!(m.x, a);
        assert_eq!(m.ratio, ratio(2, 1));
    }

    #[test]
    fn sidon_set() {
        let a = GroupSet::from_ints([1, 3, 9, 27]);
        let m = plunnecke_minimizer(&a, &a, 16).unwrap();
        assert_eq!(m.x, a);
        assert_eq!(m.ratio, ratio(5, 2));
    }

    #[test]
    fn heuristic_mode_is_uncertified() {
        let a = GroupSet::from_ints(0..40);
        let m = plunnecke_minimizer(&a, &a, 16).unwrap();
        assert!(!m.certified);
        assert_eq!(m.x, a);
        // A far point is shed by the descent.
        let b = GroupSet::from_ints((0..20).chain([1000]));
        let v = GroupSet::from_ints(0..20);
        let m = plunnecke_minimizer(&b, &v, 4).unwrap();
        assert!(!m.x.contains(&[1000]));
        assert!(m.ratio < frac(sumset(&b, &v).unwrap().len(), b.len()));
    }

    #[test]
    fn check_examples() {
        let z = GroupSet::from_ints([0]);
        let r = plunnecke_check(&z, &z, &z).unwrap();
        assert!(r.pass && r.lhs == crate::rational::int(1));
        let i5 = GroupSet::from_ints(0..5);
        let r = plunnecke_check(&i5, &i5, &i5).unwrap();
        assert_eq!(r.lhs, crate::rational::int(13));
        assert_eq!(r.rhs_exact, Some(ratio(81, 5)));
        assert!(r.pass);
    }
}

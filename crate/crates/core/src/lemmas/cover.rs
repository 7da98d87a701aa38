use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, to_f64, Rational};
use crate::setcore::{dilate, fiber, representation_counts, sumset, Coord, GroupSet, Sign};

/// A set covered by disjoint pieces, each inside a translate `s + sign·X`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverDecomposition {
    pub shifts: Vec<Vec<Coord>>,
    pub pieces: Vec<GroupSet>,
    pub base: GroupSet,
    pub sign: Sign,
}

impl CoverDecomposition {
    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn covered(&self) -> Result<GroupSet> {
        let mut acc = GroupSet::empty(self.base.dim());
        for p in &self.pieces {
            acc = acc.union(p)?;
        }
        Ok(acc)
    }

    /// Shifts as a set.
    pub fn shift_set(&self) -> Result<GroupSet> {
        GroupSet::from_points(self.base.dim(), &self.shifts)
    }

    /// Checks that the pieces are disjoint, exhaust `target`, and that each
    /// lies in its translate.
    pub fn verify(&self, target: &GroupSet) -> Result<()> {
        let signed = match self.sign {
            Sign::Plus => self.base.clone(),
            Sign::Minus => dilate(-1, &self.base)?,
        };
        let total: usize = self.pieces.iter().map(GroupSet::len).sum();
        let union = self.covered()?;
        if union.len() != total {
            return Err(Error::assertion("cover", "pieces overlap"));
        }
        if &union != target {
            return Err(Error::assertion("cover", "pieces do not exhaust the covered set"));
        }
        for (s, piece) in self.shifts.iter().zip(&self.pieces) {
            if !piece.is_subset(&signed.translate(s)?) {
                return Err(Error::assertion("cover", format!("piece at shift {s:?} leaves its translate")));
            }
        }
        Ok(())
    }
}

/// Output of [`greedy_cover`] with the guarantee it was checked against.
#[derive(Clone, Debug, Serialize)]
pub struct GreedyCover {
    pub cover: CoverDecomposition,
    /// `K' = |U+V|/|U|`.
    #[serde(with = "crate::rational::serde_rational")]
    pub k_prime: Rational,
    /// `⌈2K' ln|V|⌉ + 1`.
    pub step_bound: u64,
}

/// Covers `V` by translates `s + sign·U`, greedily taking the translate that
/// meets most of what is still uncovered (ties to the smallest shift).
///
/// Every greedy step removes at least a `1/(2K')` fraction of the residual,
/// so `|S| <= ⌈2K' ln|V|⌉ + 1`; this is asserted.
pub fn greedy_cover(u: &GroupSet, v: &GroupSet, sign: Sign) -> Result<GreedyCover> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyInput("greedy_cover"));
    }
    let k_prime = frac(sumset(u, v)?.len(), u.len());
    let step_bound = (2.0 * to_f64(&k_prime) * (v.len() as f64).ln()).ceil() as u64 + 1;
    let signed = match sign {
        Sign::Plus => u.clone(),
        Sign::Minus => dilate(-1, u)?,
    };
    let mut residual = v.clone();
    let (mut shifts, mut pieces) = (Vec::new(), Vec::new());
    while !residual.is_empty() {
        // Shift s meets residual R in R ∩ (s + sign·U); s ranges over R − sign·U.
        let reps = representation_counts(&residual, &signed, Sign::Minus)?;
        let mut best = 0;
        for (i, &c) in reps.counts.iter().enumerate() {
            if c > reps.counts[best] {
                best = i;
            }
        }
        let s = reps.points.point(best).to_vec();
        let piece = fiber(&residual, &signed, &s)?;
        residual = residual.minus(&piece)?;
        shifts.push(s);
        pieces.push(piece);
    }
    if shifts.len() as u64 > step_bound {
        return Err(Error::assertion(
            "greedy_cover",
            format!("{} translates exceed the bound {step_bound}", shifts.len()),
        ));
    }
    let cover = CoverDecomposition { shifts, pieces, base: u.clone(), sign };
    cover.verify(v)?;
    Ok(GreedyCover { cover, k_prime, step_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_translate() {
        let u = GroupSet::from_ints([0, 2, 5]);
        let v = u.translate(&[10]).unwrap();
        let g = greedy_cover(&u, &v, Sign::Plus).unwrap();
        assert_eq!(g.cover.shifts, vec![vec![10]]);
    }

    #[test]
    fn interval_sumset_needs_two() {
        let u = GroupSet::from_ints(0..7);
        let v = sumset(&u, &u).unwrap();
        let g = greedy_cover(&u, &v, Sign::Plus).unwrap();
        assert_eq!(g.cover.len(), 2);
        assert_eq!(g.cover.shifts, vec![vec![0], vec![6]]);
    }

    #[test]
    fn self_cover_uses_zero() {
        let u = GroupSet::from_ints([1, 4, 6, 13]);
        let g = greedy_cover(&u, &u, Sign::Plus).unwrap();
        assert_eq!(g.cover.shifts, vec![vec![0]]);
    }

    #[test]
    fn negative_sign_uses_reflected_translates() {
        let u = GroupSet::from_ints([0, 1, 5]);
        let v = GroupSet::from_ints([-3, 2, 3, 9, 11]);
        let g = greedy_cover(&u, &v, Sign::Minus).unwrap();
        assert_eq!(g.cover.sign, Sign::Minus);
        for (s, piece) in g.cover.shifts.iter().zip(&g.cover.pieces) {
            for p in piece.iter() {
                assert!(u.contains(&[s[0] - p[0]]));
            }
        }
    }

    #[test]
    fn verify_catches_bad_cover() {
        let u = GroupSet::from_ints([0, 1]);
        let bad = CoverDecomposition {
            shifts: vec![vec![0]],
            pieces: vec![GroupSet::from_ints([0, 5])],
            base: u,
            sign: Sign::Plus,
        };
        assert!(bad.verify(&GroupSet::from_ints([0, 5])).is_err());
    }
}

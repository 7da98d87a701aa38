use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};
use crate::setcore::{representation_counts, sumset, Coord, GroupSet, Sign};

/// Popular differences `d ∈ V − U` with fiber `V_d = V ∩ (d + U)` of size at
/// least `|U||V| / (2|U+V|)`.
#[derive(Clone, Debug, Serialize)]
pub struct PopularDifferenceSet {
    /// Popular differences in canonical order.
    pub points: GroupSet,
    /// `|V_d|` aligned with `points`.
    pub fiber_sizes: Vec<u64>,
    #[serde(with = "crate::rational::serde_rational")]
    pub threshold: Rational,
    #[serde(with = "crate::rational::serde_rational::option")]
    pub cap_m: Option<Rational>,
    /// Every fiber is at most `M|U||V|/|U+V|`.
    pub capped: bool,
    pub sumset_size: usize,
}

impl PopularDifferenceSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = (&[Coord], u64)> {
        self.points.iter().zip(self.fiber_sizes.iter().copied())
    }
}

/// Computes the popular differences of `V − U`.
///
/// Nonemptiness is asserted. When `m` is given and every popular fiber obeys
/// the cap `|V_d| <= M|U||V|/|U+V|`, the cardinality bound
/// `|P| >= |U+V|/(2M²)` is asserted as well.
pub fn popular_differences(u: &GroupSet, v: &GroupSet, m: Option<&Rational>) -> Result<PopularDifferenceSet> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyInput("popular_differences"));
    }
    if let Some(m) = m {
        if *m < int(1) {
            return Err(Error::InvalidParameter("popular_differences needs M >= 1".into()));
        }
    }
    let s = sumset(u, v)?.len() as u128;
    let uv = (u.len() * v.len()) as u128;
    let reps = representation_counts(v, u, Sign::Minus)?;
    let keep: Vec<bool> = reps.counts.iter().map(|&c| 2 * s * c as u128 >= uv).collect();
    let points = reps.points.select(|i| keep[i]);
    let fiber_sizes: Vec<u64> = reps.counts.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| *c).collect();
    if points.is_empty() {
        return Err(Error::assertion("popular_differences", "no popular difference"));
    }
    let threshold = frac(uv as usize, 2 * s as usize);
    let mut capped = false;
    if let Some(m) = m {
        let cap = m * frac(uv as usize, s as usize);
        capped = fiber_sizes.iter().all(|&f| int(f) <= cap);
        if capped {
            let p = int(points.len());
            if p * int(2) * m * m < int(s as u64) {
                return Err(Error::assertion(
                    "popular_differences",
                    format!("|P| = {} < |U+V|/(2M^2) with capped fibers", points.len()),
                ));
            }
        }
    }
    Ok(PopularDifferenceSet { points, fiber_sizes, threshold, cap_m: m.cloned(), capped, sumset_size: s as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn singleton() {
        let z = GroupSet::from_ints([0]);
        let p = popular_differences(&z, &z, None).unwrap();
        assert_eq!(p.points, z);
        assert_eq!(p.threshold, ratio(1, 2));
    }

    #[test]
    fn interval_ten() {
        let a = GroupSet::from_ints(0..10);
        let p = popular_differences(&a, &a, None).unwrap();
        assert_eq!(p.threshold, ratio(100, 38));
        let zero = p.points.position(&[0]).unwrap();
        assert_eq!(p.fiber_sizes[zero], 10);
        // fiber of d is 10 - |d| >= 100/38 iff |d| <= 7
        assert_eq!(p.len(), 15);
    }

    #[test]
    fn sidon_set_by_enumeration() {
        let a = GroupSet::from_ints([1, 3, 9, 27]);
        let p = popular_differences(&a, &a, None).unwrap();
        // |A+A| = 10, threshold 16/20; all 13 differences have fiber >= 1
        assert_eq!(p.threshold, ratio(4, 5));
        assert_eq!(p.len(), 13);
        let cap = popular_differences(&a, &a, Some(&int(3))).unwrap();
        // cap 3*16/10 = 4.8 covers the zero fiber of size 4
        assert!(cap.capped);
        assert!(cap.len() as u64 * 2 * 9 >= 10);
    }

    #[test]
    fn rejects_bad_input() {
        let a = GroupSet::from_ints([0, 1]);
        assert!(popular_differences(&GroupSet::empty(1), &a, None).is_err());
        assert!(popular_differences(&a, &a, Some(&ratio(1, 2))).is_err());
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lemmas::{popular_differences, CoverDecomposition, PopularDifferenceSet};
use crate::rational::{format_rational, frac, int, to_f64, Rational};
use crate::report::Checks;
use crate::setcore::{fiber, sumset, Coord, GroupSet, Sign};

/// Which alternative of the trichotomy the returned set satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RefinedCase {
    I,
    Ii,
    Iii,
}

/// The case that decided a single greedy step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
}

impl StepCase {
    fn class(self) -> usize {
        match self {
            StepCase::One => 0,
            StepCase::Two => 1,
            StepCase::Three => 2,
        }
    }
}

/// One step of the refined greedy loop on the residual `B⁽ʲ⁾`.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub case: StepCase,
    pub shift: Vec<Coord>,
    pub residual_size: usize,
    /// `|X + B⁽ʲ⁾|`.
    pub residual_sumset: usize,
    pub popular: usize,
    pub piece_size: usize,
    /// `|X + A_s|` for the stripped piece.
    pub piece_sumset: usize,
    #[serde(skip)]
    pub piece: GroupSet,
}

/// Per-difference data behind case (iii): `|B_d|` and `|X + B_d|`.
#[derive(Clone, Debug, Serialize)]
pub struct CaseIiiCertificate {
    pub d: Vec<Coord>,
    pub fiber_size: u64,
    pub fiber_sumset: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedResult {
    pub b: GroupSet,
    pub case: RefinedCase,
    /// Pieces `A_s ⊆ s + X` of `B` in cases (i) and (ii).
    pub decomposition: Option<CoverDecomposition>,
    /// Popular differences of `B − X` in case (iii).
    pub popular_set: Option<PopularDifferenceSet>,
    pub certificates: Vec<CaseIiiCertificate>,
    /// `S⁽¹⁾`, `S⁽²⁾`, `S⁽³⁾` in step order.
    pub shift_classes: [Vec<Vec<Coord>>; 3],
    pub steps: Vec<StepRecord>,
    /// First step decided by case 3.
    pub j_star: Option<usize>,
    #[serde(with = "crate::rational::serde_rational")]
    pub k: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub m: Rational,
    pub checks: Checks,
}

/// Greedily strips fibers `B⁽ʲ⁾ ∩ (d + X)` off `A`, classifying each step
/// as case 1, 2 or 3 in that priority order, then returns `B` with
/// `|B| >= |A|/3` satisfying (i), (ii) or (iii).
///
/// `K` defaults to `max(|X+X|, |X+A|)/|X|`; a supplied `K` must dominate
/// both ratios. The loop always exhausts `A`. Case 2 and case 3 compare
/// against `max(|X+X|, |X+B⁽ʲ⁾|)/M` for the current residual.
///
/// Asserted: the per-step contraction `|B⁽ʲ⁺¹⁾| <= (1 − M/K)|B⁽ʲ⁾|` for
/// case 1 and `<= (1 − 1/(2K))|B⁽ʲ⁾|` otherwise; `|S⁽¹⁾| <= K ln|A|/M + 1`,
/// `|S⁽²⁾| <= 2K ln|A| + 1`, the per-piece bound `|X + A_s| <= K|X|/M` in
/// case (ii) and both certificates of (iii) in case (iii).
pub fn refined_greedy(x: &GroupSet, a: &GroupSet, m: &Rational, k: Option<&Rational>) -> Result<RefinedResult> {
    const OP: &str = "refined_greedy";
    if x.is_empty() || a.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    let nx = x.len();
    let xx = sumset(x, x)?.len();
    let xa = sumset(x, a)?.len();
    let k = match k {
        Some(k) => {
            if int(xx.max(xa)) > k * int(nx) {
                return Err(Error::precondition(OP, format!("|X+X|, |X+A| exceed K|X| for K = {}", format_rational(k))));
            }
            k.clone()
        }
        None => frac(xx.max(xa), nx),
    };
    if *m < int(1) || *m > k {
        return Err(Error::InvalidParameter(format!(
            "refined_greedy needs 1 <= M <= K, got M = {}, K = {}",
            format_rational(m),
            format_rational(&k)
        )));
    }

    let mut residual = a.clone();
    let mut steps: Vec<StepRecord> = Vec::new();
    let mut j_star = None;
    let mut b_star: Option<(GroupSet, PopularDifferenceSet, Vec<CaseIiiCertificate>)> = None;
    while !residual.is_empty() {
        let j = steps.len();
        let pop = popular_differences(x, &residual, None)?;
        let (nb, xb) = (residual.len(), pop.sumset_size);
        let mut i_star = 0;
        for (i, &f) in pop.fiber_sizes.iter().enumerate() {
            if f > pop.fiber_sizes[i_star] {
                i_star = i;
            }
        }
        let case1 = int(pop.fiber_sizes[i_star] as usize * xb) >= m * int(nb * nx);
        let (case, idx) = if case1 {
            (StepCase::One, i_star)
        } else {
            let mut sizes = Vec::with_capacity(pop.len());
            for d in pop.points.iter() {
                sizes.push(sumset(x, &fiber(&residual, x, d)?)?.len());
            }
            let mut i2 = 0;
            for (i, &s) in sizes.iter().enumerate() {
                if s < sizes[i2] {
                    i2 = i;
                }
            }
            if m * int(sizes[i2]) <= int(xx.max(xb)) {
                (StepCase::Two, i2)
            } else {
                if j_star.is_none() {
                    j_star = Some(j);
                    let certs = pop
                        .members()
                        .zip(&sizes)
                        .map(|((d, f), &s)| CaseIiiCertificate { d: d.to_vec(), fiber_size: f, fiber_sumset: s })
                        .collect();
                    b_star = Some((residual.clone(), pop.clone(), certs));
                }
                (StepCase::Three, i2)
            }
        };
        let shift = pop.points.point(idx).to_vec();
        let piece = fiber(&residual, x, &shift)?;
        let next = residual.minus(&piece)?;
        let contracted = match case {
            StepCase::One => int(next.len()) * &k <= (&k - m) * int(nb),
            _ => int(2 * next.len()) * &k <= (int(2) * &k - int(1)) * int(nb),
        };
        if !contracted {
            return Err(Error::assertion(OP, format!("step {j} (case {case:?}) shrank {nb} only to {}", next.len())));
        }
        steps.push(StepRecord {
            index: j,
            case,
            shift,
            residual_size: nb,
            residual_sumset: xb,
            popular: pop.len(),
            piece_size: piece.len(),
            piece_sumset: sumset(x, &piece)?.len(),
            piece,
        });
        residual = next;
    }

    let mut shift_classes: [Vec<Vec<Coord>>; 3] = Default::default();
    let mut class_sizes = [0usize; 3];
    for s in &steps {
        shift_classes[s.case.class()].push(s.shift.clone());
        class_sizes[s.case.class()] += s.piece_size;
    }
    let n = a.len();
    let ln_a = (n as f64).ln();
    let kf = to_f64(&k);
    let mf = to_f64(m);
    let mut checks = Checks::default();
    let decomposition = |class: StepCase| -> Result<(GroupSet, CoverDecomposition)> {
        let (shifts, pieces): (Vec<_>, Vec<_>) =
            steps.iter().filter(|s| s.case == class).map(|s| (s.shift.clone(), s.piece.clone())).unzip();
        let mut b = GroupSet::empty(a.dim());
        for p in &pieces {
            b = b.union(p)?;
        }
        let cover = CoverDecomposition { shifts, pieces, base: x.clone(), sign: Sign::Plus };
        cover.verify(&b)?;
        Ok((b, cover))
    };

    let result = if 3 * class_sizes[0] >= n {
        let (b, cover) = decomposition(StepCase::One)?;
        let s1 = cover.len() as f64;
        let bound = kf * ln_a / mf;
        checks.hard(OP, "|S1| <= K ln|A|/M + 1", s1, bound + 1.0, s1 <= crate::rational::round_up(bound + 1.0))?;
        checks.soft("|S1| <= K ln|A|/M", s1, bound);
        RefinedResult {
            b,
            case: RefinedCase::I,
            decomposition: Some(cover),
            popular_set: None,
            certificates: Vec::new(),
            shift_classes,
            steps: Vec::new(),
            j_star,
            k: k.clone(),
            m: m.clone(),
            checks,
        }
    } else if 3 * class_sizes[1] >= n {
        let (b, cover) = decomposition(StepCase::Two)?;
        let s2 = cover.len() as f64;
        let bound = kf * ln_a;
        checks.hard(OP, "|S2| <= 2K ln|A| + 1", s2, 2.0 * bound + 1.0, s2 <= crate::rational::round_up(2.0 * bound + 1.0))?;
        checks.soft("|S2| <= K ln|A|", s2, bound);
        let piece_cap = &k * int(nx) / m;
        for s in steps.iter().filter(|s| s.case == StepCase::Two) {
            checks.hard_le(OP, "|X+A_s| <= K|X|/M", &int(s.piece_sumset), &piece_cap)?;
        }
        RefinedResult {
            b,
            case: RefinedCase::Ii,
            decomposition: Some(cover),
            popular_set: None,
            certificates: Vec::new(),
            shift_classes,
            steps: Vec::new(),
            j_star,
            k: k.clone(),
            m: m.clone(),
            checks,
        }
    } else {
        let (b, pop, certs) =
            b_star.ok_or_else(|| Error::assertion(OP, "neither A1 nor A2 is large but no case-3 step occurred"))?;
        if let Some(v) = certificate_violation(&b, x, xx, m, &pop, &certs) {
            return Err(Error::assertion(OP, v));
        }
        RefinedResult {
            b,
            case: RefinedCase::Iii,
            decomposition: None,
            popular_set: Some(pop),
            certificates: certs,
            shift_classes,
            steps: Vec::new(),
            j_star,
            k: k.clone(),
            m: m.clone(),
            checks,
        }
    };
    if 3 * result.b.len() < n {
        return Err(Error::assertion(OP, format!("|B| = {} < |A|/3 with |A| = {n}", result.b.len())));
    }
    Ok(RefinedResult { steps, ..result })
}

/// First failing (iii) certificate, if any.
fn certificate_violation(
    b: &GroupSet,
    x: &GroupSet,
    xx: usize,
    m: &Rational,
    pop: &PopularDifferenceSet,
    certs: &[CaseIiiCertificate],
) -> Option<String> {
    let (nb, nx, xb) = (b.len(), x.len(), pop.sumset_size);
    let cap = m * int(nb * nx);
    let floor = int(xx.max(xb));
    for c in certs {
        if int(c.fiber_size as usize * xb) > cap {
            return Some(format!("|B_d| = {} exceeds M|B||X|/|X+B| at d = {:?}", c.fiber_size, c.d));
        }
        if m * int(c.fiber_sumset) < floor {
            return Some(format!("|X+B_d| = {} is below max(|X+X|,|X+B|)/M at d = {:?}", c.fiber_sumset, c.d));
        }
    }
    None
}

/// Recomputes the popular differences of `B − X` and the data behind both
/// (iii) certificates, failing with a precondition error if either fails.
///
/// Since every fiber is then capped, `|P| >= |X+B|/(2M²)` is asserted too.
pub fn case_iii_certificates(
    b: &GroupSet,
    x: &GroupSet,
    m: &Rational,
) -> Result<(PopularDifferenceSet, Vec<CaseIiiCertificate>)> {
    if b.is_empty() || x.is_empty() {
        return Err(Error::EmptyInput("case_iii_certificates"));
    }
    let xx = sumset(x, x)?.len();
    let pop = popular_differences(x, b, Some(m))?;
    let mut certs = Vec::with_capacity(pop.len());
    for (d, f) in pop.members() {
        let s = sumset(x, &fiber(b, x, d)?)?.len();
        certs.push(CaseIiiCertificate { d: d.to_vec(), fiber_size: f, fiber_sumset: s });
    }
    if let Some(v) = certificate_violation(b, x, xx, m, &pop, &certs) {
        return Err(Error::precondition("case_iii_certificates", v));
    }
    Ok((pop, certs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn single_translate_is_case_one() {
        let x = GroupSet::from_ints([0, 1, 3, 7]);
        let a = x.translate(&[20]).unwrap();
        let r = refined_greedy(&x, &a, &int(1), None).unwrap();
        assert_eq!(r.case, RefinedCase::I);
        assert_eq!(r.b, a);
        assert_eq!(r.shift_classes[0], vec![vec![20]]);
    }

    #[test]
    fn interval_with_supplied_k() {
        let a = GroupSet::from_ints(0..32);
        let r = refined_greedy(&a, &a, &int(2), Some(&int(2))).unwrap();
        assert!(3 * r.b.len() >= a.len());
        let total: usize = r.steps.iter().map(|s| s.piece_size).sum();
        assert_eq!(total, a.len());
    }

    #[test]
    fn m_above_k_is_rejected() {
        let a = GroupSet::from_ints(0..8);
        assert!(refined_greedy(&a, &a, &int(2), None).is_err());
        assert!(refined_greedy(&a, &a, &ratio(1, 2), None).is_err());
    }

    #[test]
    fn supplied_k_must_dominate() {
        let a = GroupSet::from_ints([0, 1, 5, 20]);
        assert!(refined_greedy(&a, &a, &int(1), Some(&int(1))).is_err());
    }

    #[test]
    fn steps_partition_the_input() {
        let a = GroupSet::from_ints([0, 2, 3, 7, 11, 12, 19, 30, 31, 44]);
        let x = GroupSet::from_ints([0, 1, 2]);
        let r = refined_greedy(&x, &a, &int(2), None).unwrap();
        let mut union = GroupSet::empty(1);
        for s in &r.steps {
            assert!(s.piece.translate(&s.shift.iter().map(|c| -c).collect::<Vec<_>>()).unwrap().is_subset(&x));
            union = union.union(&s.piece).unwrap();
        }
        assert_eq!(union, a);
    }

    #[test]
    fn case_iii_certificates_reject_structured_input() {
        // A single translate concentrates everything in one fiber.
        let x = GroupSet::from_ints(0..6);
        assert!(case_iii_certificates(&x, &x, &int(1)).is_err());
    }
}

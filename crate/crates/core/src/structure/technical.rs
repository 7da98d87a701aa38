use serde::Serialize;

use crate::config::Constants;
use crate::error::{Error, Result};
use crate::lemmas::{combination, BipartiteEdgeSet, CombinationReport};
use crate::rational::{int, ln_floor2, to_f64, Rational};
use crate::report::Checks;
use crate::setcore::{sumset, Coord, GroupSet};

use super::case_iii_certificates;

#[derive(Clone, Debug, Serialize)]
pub struct TechnicalReport {
    pub b_size: usize,
    pub x_size: usize,
    pub p_size: usize,
    /// `N = min_{d∈P} |X + B_d|`.
    pub n: usize,
    pub gamma_size: usize,
    pub p_prime_size: usize,
    pub t_size: usize,
    pub x0: Vec<Coord>,
    pub b_prime_size: usize,
    pub xxa_size: usize,
    /// `|A + B' + B'|`.
    pub sum_size: usize,
    /// `|T| · |X + X + A|`.
    pub claimed: usize,
    pub combination: CombinationReport,
    pub checks: Checks,
}

#[derive(Clone, Debug, Serialize)]
pub struct TechnicalOutcome {
    pub b_prime: GroupSet,
    pub t: GroupSet,
    pub x0: Vec<Coord>,
    pub p_prime: GroupSet,
    pub report: TechnicalReport,
}

/// Converts a uniform residual (case (iii)) into `B' ⊆ B` whose double sum
/// with `A` is covered by few translates of `X + X + A`.
///
/// `Γ = {(u, d) ∈ (X+X) × P : u + d ∈ X+B}` has `|Γ| >= N|P|` by the
/// Katz–Koester inclusion; the combination pipeline on `(X+X, P, X+B)` gives
/// `P'` and `T` with `P'+P' ⊆ T + X+X`, and `B' = B ∩ (x₀ + P')` for the best
/// `x₀ ∈ X`. The chain `B'+B'+A ⊆ 2x₀+P'+P'+A ⊆ 2x₀+T+X+X+A` and the bound
/// `|A+B'+B'| <= |T||X+X+A|` are asserted.
pub fn technical(a: &GroupSet, b: &GroupSet, x: &GroupSet, m: &Rational, constants: &Constants) -> Result<TechnicalOutcome> {
    const OP: &str = "technical";
    if a.is_empty() || b.is_empty() || x.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    let (pop, certs) = case_iii_certificates(b, x, m)?;
    let p = &pop.points;
    let n = certs.iter().map(|c| c.fiber_sumset).min().expect("P is nonempty");
    let xx = sumset(x, x)?;
    let xb = sumset(x, b)?;

    let mut checks = Checks::default();
    let mut edges = Vec::new();
    let mut degree = vec![0usize; p.len()];
    let mut buf = Vec::with_capacity(x.dim());
    for (i, u) in xx.iter().enumerate() {
        for (j, d) in p.iter().enumerate() {
            buf.clear();
            buf.extend(u.iter().zip(d).map(|(s, t)| s + t));
            if xb.contains(&buf) {
                edges.push((i as u32, j as u32));
                degree[j] += 1;
            }
        }
    }
    // X + B_d ⊆ (X+B) ∩ (d + X+X), so each degree dominates |X + B_d|.
    for (c, &deg) in certs.iter().zip(&degree) {
        if deg < c.fiber_sumset {
            return Err(Error::assertion(OP, format!("Katz-Koester count {deg} < |X+B_d| = {} at {:?}", c.fiber_sumset, c.d)));
        }
    }
    let gamma_size = edges.len();
    checks.hard_le(OP, "N|P| <= |Γ|", &int(n * p.len()), &int(gamma_size))?;

    let g = BipartiteEdgeSet::new(xx.clone(), p.clone(), edges)?;
    let comb = combination(&g, &xb, &int(n), constants).map_err(|e| e.in_stage("combination"))?;
    let (p_prime, t) = (&comb.v_prime, &comb.t);

    let mut best: Option<(usize, usize)> = None;
    for (i, x0) in x.iter().enumerate() {
        let hits = p_prime
            .iter()
            .filter(|q| {
                buf.clear();
                buf.extend(q.iter().zip(x0).map(|(s, t)| s + t));
                b.contains(&buf)
            })
            .count();
        if best.is_none_or(|(_, h)| hits > h) {
            best = Some((i, hits));
        }
    }
    let (i0, _) = best.expect("X is nonempty");
    let x0 = x.point(i0).to_vec();
    let b_prime = b.intersection(&p_prime.translate(&x0)?)?;
    if b_prime.is_empty() {
        return Err(Error::assertion(OP, "B ∩ (x0 + P') is empty"));
    }

    let two_x0: Vec<Coord> = x0.iter().map(|c| 2 * c).collect();
    let lhs = sumset(&sumset(&b_prime, &b_prime)?, a)?;
    let mid = sumset(&sumset(p_prime, p_prime)?, a)?.translate(&two_x0)?;
    if !lhs.is_subset(&mid) {
        return Err(Error::assertion(OP, "B'+B'+A is not inside 2x0+P'+P'+A"));
    }
    let xxa = sumset(&xx, a)?;
    let outer = sumset(t, &xxa)?.translate(&two_x0)?;
    if !mid.is_subset(&outer) {
        return Err(Error::assertion(OP, "2x0+P'+P'+A is not inside 2x0+T+X+X+A"));
    }
    let claimed = t.len() * xxa.len();
    checks.hard_le(OP, "|A+B'+B'| <= |T||X+X+A|", &int(lhs.len()), &int(claimed))?;

    let mf = to_f64(m);
    let c = constants.c;
    checks.soft_ge("|P'| >= c|P|/M", p_prime.len() as f64, c * p.len() as f64 / mf);
    checks.soft_ge("|B'| >= c|B|/M^3", b_prime.len() as f64, c * b.len() as f64 / mf.powi(3));
    checks.soft("|T| <= c M^16 ln|P|", t.len() as f64, c * mf.powi(16) * ln_floor2(p.len()));
    checks.soft("|T| <= c M^16 ln|X|", t.len() as f64, c * mf.powi(16) * ln_floor2(x.len()));
    checks.finish(OP, constants.strict)?;

    let report = TechnicalReport {
        b_size: b.len(),
        x_size: x.len(),
        p_size: p.len(),
        n,
        gamma_size,
        p_prime_size: p_prime.len(),
        t_size: t.len(),
        x0: x0.clone(),
        b_prime_size: b_prime.len(),
        xxa_size: xxa.len(),
        sum_size: lhs.len(),
        claimed,
        combination: comb.report.clone(),
        checks,
    };
    Ok(TechnicalOutcome { b_prime, t: comb.t, x0, p_prime: comb.v_prime, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::base_embed;

    #[test]
    fn degenerate_singleton() {
        let z = GroupSet::from_ints([0]);
        let out = technical(&z, &z, &z, &int(1), &Constants::default()).unwrap();
        assert_eq!(out.b_prime, z);
        assert_eq!(out.t, z);
        assert_eq!(out.report.claimed, 1);
    }

    #[test]
    fn interval_sixteen_at_m_two() {
        let a = GroupSet::from_ints(0..16);
        let out = technical(&a, &a, &a, &int(2), &Constants::default()).unwrap();
        assert!(out.b_prime.is_subset(&a));
        assert!(out.report.sum_size <= out.report.claimed);
        assert!(out.report.gamma_size >= out.report.n * out.report.p_size);
    }

    #[test]
    fn embedded_cube_at_m_equal_k() {
        let mut pts = Vec::new();
        for m in 0..16u32 {
            pts.push((0..4).map(|k| ((m >> k) & 1) as Coord).collect::<Vec<_>>());
        }
        let cube = base_embed(&GroupSet::from_points(4, &pts).unwrap(), 3).unwrap();
        // With M = K = |X+B|/|X| and B = X both certificates hold trivially.
        let k = crate::rational::frac(sumset(&cube, &cube).unwrap().len(), cube.len());
        let out = technical(&cube, &cube, &cube, &k, &Constants::default()).unwrap();
        assert!(out.report.sum_size <= out.report.claimed);
    }

    #[test]
    fn rejects_non_uniform_input() {
        let a = GroupSet::from_ints(0..8);
        assert!(technical(&a, &a, &a, &int(1), &Constants::default()).is_err());
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{bsg_decompose, greedy_cover, plunnecke_check, plunnecke_minimizer, BipartiteEdgeSet, BsgReport};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::rational::{ln_floor2, to_f64, Rational};
use crate::report::{nonzero_or_inf, BoundReport, Checks};
use crate::setcore::{sumset, Coord, GroupSet, Sign};

#[derive(Clone, Debug, Serialize)]
pub struct CombinationReport {
    pub bsg: BsgReport,
    pub x_size: usize,
    pub x_certified: bool,
    pub plunnecke: BoundReport,
    pub v_prime_size: usize,
    pub v_prime_doubled_size: usize,
    pub t_size: usize,
    pub checks: Checks,
}

#[derive(Clone, Debug, Serialize)]
pub struct CombinationOutcome {
    pub v_prime: GroupSet,
    pub t: GroupSet,
    /// The Plünnecke minimizer whose translates cover `V'+V'`.
    pub x: GroupSet,
    pub report: CombinationReport,
}

/// BSG, then a Plünnecke minimizer `X ⊆ U'` against `V'`, then a greedy
/// cover of `V'+V'` by translates of `X`. Since `X ⊆ U` the shifts `T`
/// satisfy `V'+V' ⊆ T + U`, which is verified element by element.
pub fn combination(g: &BipartiteEdgeSet, w: &GroupSet, n: &Rational, constants: &Constants) -> Result<CombinationOutcome> {
    const OP: &str = "combination";
    let rng = ChaCha8Rng::seed_from_u64(constants.seed);
    let bsg = bsg_decompose(g, w, n, constants, rng).map_err(|e| e.in_stage("bsg"))?;
    let (u_prime, v_prime) = (&bsg.u_prime, &bsg.v_prime);

    let mut checks = Checks::default();
    let min = plunnecke_minimizer(u_prime, v_prime, constants.exact_limit)
        .map_err(|e| e.in_stage("plunnecke_minimizer"))?;
    let up_ratio = crate::rational::frac(bsg.report.sumset_size, u_prime.len());
    if min.certified {
        checks
            .hard_le(OP, "|X+V'|/|X| <= |U'+V'|/|U'|", &min.ratio, &up_ratio)
            .map_err(|e| e.in_stage("plunnecke_minimizer"))?;
    }
    let plunnecke = plunnecke_check(&min.x, v_prime, v_prime)?
        .asserted_if(min.certified)
        .enforce("plunnecke_check")
        .map_err(|e| e.in_stage("plunnecke_check"))?;

    let doubled = sumset(v_prime, v_prime)?;
    let cover = greedy_cover(&min.x, &doubled, Sign::Plus).map_err(|e| e.in_stage("greedy_cover"))?;
    let t = cover.cover.shift_set()?;

    let u = &g.left;
    for p in doubled.iter() {
        if !covered_by(p, &t, u) {
            return Err(Error::assertion(OP, format!("{p:?} in V'+V' is not in T+U")));
        }
    }

    let (uf, vf, wf) = (u.len() as f64, g.right.len() as f64, w.len() as f64);
    let nf = to_f64(n);
    checks.soft_ge("|V'| >= c N|V|/|U|", v_prime.len() as f64, constants.c * nf * vf / uf);
    let t_budget = constants.c * wf.powi(6) * uf.powi(8) / (nonzero_or_inf(n).powi(12) * vf * vf) * ln_floor2(g.right.len());
    checks.soft("|T| <= c |W|^6 |U|^8 / (N^12 |V|^2) ln|V|", t.len() as f64, t_budget);
    checks.finish(OP, constants.strict)?;

    let report = CombinationReport {
        bsg: bsg.report.clone(),
        x_size: min.x.len(),
        x_certified: min.certified,
        plunnecke,
        v_prime_size: v_prime.len(),
        v_prime_doubled_size: doubled.len(),
        t_size: t.len(),
        checks,
    };
    Ok(CombinationOutcome { v_prime: bsg.v_prime, t, x: min.x, report })
}

/// Whether `p ∈ T + U`.
pub(crate) fn covered_by(p: &[Coord], t: &GroupSet, u: &GroupSet) -> bool {
    let mut q = Vec::with_capacity(p.len());
    t.iter().any(|s| {
        q.clear();
        q.extend(p.iter().zip(s).map(|(a, b)| a - b));
        u.contains(&q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::setcore::base_embed;

    #[test]
    fn singleton_pipeline() {
        let z = GroupSet::from_ints([0]);
        let g = BipartiteEdgeSet::complete(z.clone(), z.clone()).unwrap();
        let out = combination(&g, &z, &int(1), &Constants::default()).unwrap();
        assert_eq!(out.v_prime, z);
        assert_eq!(out.t, z);
    }

    #[test]
    fn interval_pipeline_contains() {
        let u = GroupSet::from_ints(0..12);
        let g = BipartiteEdgeSet::complete(u.clone(), u.clone()).unwrap();
        let w = sumset(&u, &u).unwrap();
        let out = combination(&g, &w, &int(12), &Constants::default()).unwrap();
        let vv = sumset(&out.v_prime, &out.v_prime).unwrap();
        assert!(vv.is_subset(&sumset(&out.t, &u).unwrap()));
    }

    #[test]
    fn hypercube_pipeline_contains() {
        let mut pts = Vec::new();
        for m in 0..16u32 {
            pts.push((0..4).map(|k| ((m >> k) & 1) as Coord).collect::<Vec<_>>());
        }
        let cube = base_embed(&GroupSet::from_points(4, &pts).unwrap(), 3).unwrap();
        let g = BipartiteEdgeSet::complete(cube.clone(), cube.clone()).unwrap();
        let w = sumset(&cube, &cube).unwrap();
        let out = combination(&g, &w, &int(16), &Constants::default()).unwrap();
        let vv = sumset(&out.v_prime, &out.v_prime).unwrap();
        assert!(vv.is_subset(&sumset(&out.t, &cube).unwrap()));
        assert!(out.report.t_size >= 1);
    }
}

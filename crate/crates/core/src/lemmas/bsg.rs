use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::config::Constants;
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, to_f64, Rational};
use crate::report::{nonzero_or_inf, Checks};
use crate::setcore::{sumset, Coord, GroupSet};

/// `Γ ⊆ U × V`, stored as index pairs into the canonical orders of `U`, `V`.
#[derive(Clone, Debug, Serialize)]
pub struct BipartiteEdgeSet {
    pub left: GroupSet,
    pub right: GroupSet,
    edges: Vec<(u32, u32)>,
}

impl BipartiteEdgeSet {
    pub fn new(left: GroupSet, right: GroupSet, mut edges: Vec<(u32, u32)>) -> Result<Self> {
        if left.dim() != right.dim() {
            return Err(Error::DimensionMismatch { left: left.dim(), right: right.dim() });
        }
        if let Some(&(i, j)) = edges.iter().find(|(i, j)| *i as usize >= left.len() || *j as usize >= right.len()) {
            return Err(Error::InvalidParameter(format!("edge ({i}, {j}) out of range")));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(BipartiteEdgeSet { left, right, edges })
    }

    pub fn complete(left: GroupSet, right: GroupSet) -> Result<Self> {
        let edges = (0..left.len() as u32).flat_map(|i| (0..right.len() as u32).map(move |j| (i, j))).collect();
        Self::new(left, right, edges)
    }

    /// Edges `(u, v)` for which `keep(u, v)` holds.
    pub fn from_predicate(left: GroupSet, right: GroupSet, keep: impl Fn(&[Coord], &[Coord]) -> bool) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, u) in left.iter().enumerate() {
            for (j, v) in right.iter().enumerate() {
                if keep(u, v) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Self::new(left, right, edges)
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn adjacency(&self) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let mut left = vec![Vec::new(); self.left.len()];
        let mut right = vec![Vec::new(); self.right.len()];
        for &(i, j) in &self.edges {
            left[i as usize].push(j);
            right[j as usize].push(i);
        }
        (left, right)
    }
}

/// The restricted sumset `U +_Γ V = {u + v : (u, v) ∈ Γ}`.
pub fn graph_sumset(g: &BipartiteEdgeSet) -> Result<GroupSet> {
    let dim = g.left.dim();
    let mut flat = Vec::with_capacity(g.edges.len() * dim);
    for &(i, j) in &g.edges {
        for (x, y) in g.left.point(i as usize).iter().zip(g.right.point(j as usize)) {
            flat.push(x.checked_add(*y).ok_or(Error::Overflow("graph_sumset"))?);
        }
    }
    GroupSet::from_flat(dim, flat)
}

#[derive(Clone, Debug, Serialize)]
pub struct BsgReport {
    pub edges: usize,
    pub u_size: usize,
    pub v_size: usize,
    pub w_size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub n: Rational,
    pub pivot: Vec<Coord>,
    pub u_prime_size: usize,
    pub v_prime_size: usize,
    pub sumset_size: usize,
    /// `min(|U'|/|U|, |V'|/|V|)`.
    pub delta: f64,
    pub checks: Checks,
}

#[derive(Clone, Debug, Serialize)]
pub struct BsgOutcome {
    pub u_prime: GroupSet,
    pub v_prime: GroupSet,
    pub report: BsgReport,
}

struct Candidate {
    pivot: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    sumset_size: usize,
}

/// Extracts `U' ⊆ U`, `V' ⊆ V` with a small sumset from a dense graph.
///
/// For each of a few sampled pivots `u*` of high degree: `V'` keeps the
/// neighbours of `u*` carrying at least half the average number of length-2
/// paths back into `N(u*)`, and `U'` keeps the left vertices adjacent to at
/// least half of `V'`. The pivot maximizing `|U'||V'|/|U'+V'|` wins. The
/// size and sumset bounds are reported against the configured constants.
pub fn bsg_decompose<R: Rng>(
    g: &BipartiteEdgeSet,
    w: &GroupSet,
    n: &Rational,
    constants: &Constants,
    mut rng: R,
) -> Result<BsgOutcome> {
    const OP: &str = "bsg_decompose";
    if g.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    let (nu, nv, ne) = (g.left.len(), g.right.len(), g.len());
    if int(ne) < n * int(nv) {
        return Err(Error::precondition(OP, format!("|Γ| = {ne} < N|V| = {}", format_rational(&(n * int(nv))))));
    }
    if !graph_sumset(g)?.is_subset(w) {
        return Err(Error::precondition(OP, "U +_Γ V is not contained in W"));
    }
    let (adj_left, adj_right) = g.adjacency();

    let mut popular: Vec<usize> = (0..nu).filter(|&u| adj_left[u].len() * 2 * nv >= ne).collect();
    if popular.is_empty() {
        popular = (0..nu).filter(|&u| adj_left[u].len() * 2 * nu >= ne).collect();
    }
    let trials = constants.bsg_trials.max(1).min(popular.len());
    let mut picks: Vec<usize> = sample(&mut rng, popular.len(), trials).into_iter().map(|i| popular[i]).collect();
    picks.sort_unstable();

    let mut best: Option<Candidate> = None;
    for pivot in picks {
        let cand = build_candidate(g, &adj_left, &adj_right, pivot)?;
        let better = match &best {
            None => true,
            Some(b) => {
                let lhs = (cand.left.len() * cand.right.len()) as u128 * b.sumset_size as u128;
                let rhs = (b.left.len() * b.right.len()) as u128 * cand.sumset_size as u128;
                lhs > rhs
            }
        };
        if better {
            best = Some(cand);
        }
    }
    let best = best.expect("at least one pivot");
    let u_prime = g.left.select(|i| best.left.binary_search(&i).is_ok());
    let v_prime = g.right.select(|j| best.right.binary_search(&j).is_ok());

    let mut checks = Checks::default();
    let (uf, vf, ef, wf, nf) = (nu as f64, nv as f64, ne as f64, w.len() as f64, to_f64(n));
    checks.soft_ge("|U'| >= c1 |Γ|/|V|", u_prime.len() as f64, constants.c1 * ef / vf);
    checks.soft_ge("|V'| >= c1 |Γ|/|U|", v_prime.len() as f64, constants.c1 * ef / uf);
    let sum_bound = constants.c2 * wf.powi(3) * uf.powi(4) / (nonzero_or_inf(n).powi(6) * vf) * u_prime.len() as f64;
    checks.soft("|U'+V'| <= c2 |W|^3 |U|^4 / (N^6 |V|) |U'|", best.sumset_size as f64, sum_bound);
    let delta = (u_prime.len() as f64 / uf).min(v_prime.len() as f64 / vf);
    checks.soft_ge("delta >= c1 N/|U|", delta, constants.c1 * nf / uf);
    checks.finish(OP, constants.strict)?;

    let report = BsgReport {
        edges: ne,
        u_size: nu,
        v_size: nv,
        w_size: w.len(),
        n: n.clone(),
        pivot: g.left.point(best.pivot).to_vec(),
        u_prime_size: u_prime.len(),
        v_prime_size: v_prime.len(),
        sumset_size: best.sumset_size,
        delta,
        checks,
    };
    Ok(BsgOutcome { u_prime, v_prime, report })
}

fn build_candidate(g: &BipartiteEdgeSet, adj_left: &[Vec<u32>], adj_right: &[Vec<u32>], pivot: usize) -> Result<Candidate> {
    let nv = g.right.len();
    let mut in_nb = vec![false; nv];
    for &j in &adj_left[pivot] {
        in_nb[j as usize] = true;
    }
    // c(u) = |N(u) ∩ N(u*)|; paths(v) = Σ_{u ∈ N(v)} c(u).
    let common: Vec<u64> = adj_left.iter().map(|nb| nb.iter().filter(|&&j| in_nb[j as usize]).count() as u64).collect();
    let nb: Vec<usize> = adj_left[pivot].iter().map(|&j| j as usize).collect();
    let paths: Vec<u64> = nb.iter().map(|&j| adj_right[j].iter().map(|&i| common[i as usize]).sum()).collect();
    let total: u128 = paths.iter().map(|&p| p as u128).sum();
    let mut right: Vec<usize> = nb
        .iter()
        .zip(&paths)
        .filter(|(_, &p)| 2 * p as u128 * nb.len() as u128 >= total)
        .map(|(&j, _)| j)
        .collect();
    right.sort_unstable();

    let mut in_right = vec![false; nv];
    for &j in &right {
        in_right[j] = true;
    }
    let conn: Vec<usize> = adj_left.iter().map(|nb| nb.iter().filter(|&&j| in_right[j as usize]).count()).collect();
    let mut left: Vec<usize> = (0..conn.len()).filter(|&i| 2 * conn[i] >= right.len()).collect();
    if left.is_empty() {
        let top = conn.iter().copied().max().unwrap_or(0);
        left = (0..conn.len()).filter(|&i| 2 * conn[i] >= top && conn[i] > 0).collect();
    }
    let u_prime = g.left.select(|i| left.binary_search(&i).is_ok());
    let v_prime = g.right.select(|j| right.binary_search(&j).is_ok());
    let sumset_size = sumset(&u_prime, &v_prime)?.len();
    Ok(Candidate { pivot, left, right, sumset_size })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn graph_sumset_examples() {
        let u = GroupSet::from_ints(0..4);
        let full = BipartiteEdgeSet::complete(u.clone(), u.clone()).unwrap();
        assert_eq!(graph_sumset(&full).unwrap(), sumset(&u, &u).unwrap());
        let none = BipartiteEdgeSet::new(u.clone(), u.clone(), vec![]).unwrap();
        assert!(graph_sumset(&none).unwrap().is_empty());
        let diag = BipartiteEdgeSet::new(u.clone(), u.clone(), (0..4).map(|i| (i, i)).collect()).unwrap();
        assert_eq!(graph_sumset(&diag).unwrap(), GroupSet::from_ints([0, 2, 4, 6]));
    }

    #[test]
    fn rejects_out_of_range_edges() {
        let u = GroupSet::from_ints([0, 1]);
        assert!(BipartiteEdgeSet::new(u.clone(), u, vec![(0, 2)]).is_err());
    }

    #[test]
    fn complete_graph_keeps_everything() {
        let u = GroupSet::from_ints(0..6);
        let g = BipartiteEdgeSet::complete(u.clone(), u.clone()).unwrap();
        let w = sumset(&u, &u).unwrap();
        let out = bsg_decompose(&g, &w, &int(6), &Constants::default(), rng()).unwrap();
        assert_eq!(out.u_prime, u);
        assert_eq!(out.v_prime, u);
        assert_eq!(out.report.sumset_size, w.len());
    }

    #[test]
    fn half_density_parity_graph() {
        let u = GroupSet::from_ints(0..16);
        let g = BipartiteEdgeSet::from_predicate(u.clone(), u.clone(), |a, b| (a[0] + b[0]) % 2 == 0).unwrap();
        let w = sumset(&u, &u).unwrap();
        let out = bsg_decompose(&g, &w, &int(8), &Constants::default(), rng()).unwrap();
        assert!(out.u_prime.len() >= 4);
        assert!(out.u_prime.is_subset(&u) && out.v_prime.is_subset(&u));
        assert!(sumset(&out.u_prime, &out.v_prime).unwrap().is_subset(&w));
    }

    #[test]
    fn matching_is_degenerate_but_runs() {
        let u = GroupSet::from_ints(0..16);
        let g = BipartiteEdgeSet::new(u.clone(), u.clone(), (0..16).map(|i| (i, i)).collect()).unwrap();
        let w = graph_sumset(&g).unwrap();
        let out = bsg_decompose(&g, &w, &int(1), &Constants::default(), rng()).unwrap();
        assert!(!out.u_prime.is_empty() && !out.v_prime.is_empty());
        assert!(out.report.u_prime_size as f64 >= 1.0 / 16.0);
    }

    #[test]
    fn precondition_violations() {
        let u = GroupSet::from_ints(0..4);
        let g = BipartiteEdgeSet::complete(u.clone(), u.clone()).unwrap();
        let w = sumset(&u, &u).unwrap();
        assert!(matches!(
            bsg_decompose(&g, &w, &int(5), &Constants::default(), rng()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            bsg_decompose(&g, &u, &int(1), &Constants::default(), rng()),
            Err(Error::Precondition { .. })
        ));
    }
}

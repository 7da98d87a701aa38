//! Simulated annealing over `n`-subsets of `[0, universe)` maximizing the
//! empirical exponent `ln(|A+λ·A|/|A|)/ln K`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{exponent_emp, gen_random, FpConstants};
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::setcore::{Coord, GroupSet};

#[derive(Clone, Debug, Serialize)]
pub struct SearchParams {
    pub lambda: u32,
    pub n: usize,
    pub universe: usize,
    pub budget: u64,
    pub seed: u64,
    /// Geometric cooling ratio per step.
    pub cooling: f64,
    pub initial_temperature: f64,
}

impl SearchParams {
    pub fn new(lambda: u32, n: usize, universe: usize, budget: u64, seed: u64) -> Self {
        SearchParams { lambda, n, universe, budget, seed, cooling: 0.995, initial_temperature: 0.05 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Improvement {
    pub step: u64,
    pub exponent: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub best: GroupSet,
    pub exponent: f64,
    pub initial: GroupSet,
    pub initial_exponent: f64,
    /// `[ln 2 / ln(3/2), λ + 1 − c_λ]`: the hypercube lower witness and the
    /// proved upper exponent.
    pub bracket: (f64, f64),
    pub evaluated: u64,
    pub skipped: u64,
    pub history: Vec<Improvement>,
}

fn score(a: &GroupSet, lambda: u32) -> Option<f64> {
    exponent_emp(a, lambda as Coord).ok()
}

/// Runs the search. Candidates with `K = 1` have no exponent and are
/// skipped; everything is determined by `seed`.
pub fn search(p: &SearchParams) -> Result<SearchResult> {
    if p.lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be >= 1".into()));
    }
    if p.n < 2 || p.n > p.universe {
        return Err(Error::InvalidParameter(format!("need 2 <= n <= universe, got n = {}, universe = {}", p.n, p.universe)));
    }
    let initial = gen_random(p.n, p.universe, p.seed)?;
    let initial_exponent = score(&initial, p.lambda).ok_or(Error::InvalidParameter("initial set has K = 1".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x9e37_79b9_7f4a_7c15);

    let mut current: Vec<Coord> = initial.values().expect("one-dimensional").to_vec();
    let mut in_set = vec![false; p.universe];
    for &v in &current {
        in_set[v as usize] = true;
    }
    let mut cur_score = initial_exponent;
    let (mut best, mut best_score) = (initial.clone(), initial_exponent);
    let mut history = vec![Improvement { step: 0, exponent: best_score }];
    let mut temperature = p.initial_temperature;
    let (mut evaluated, mut skipped) = (0, 0);
    let full = p.n == p.universe;
    for step in 1..=p.budget {
        temperature *= p.cooling;
        if full {
            break;
        }
        let out_idx = rng.gen_range(0..current.len());
        let incoming = loop {
            let v = rng.gen_range(0..p.universe);
            if !in_set[v] {
                break v as Coord;
            }
        };
        let mut candidate = current.clone();
        candidate[out_idx] = incoming;
        let cand_set = GroupSet::from_ints(candidate.iter().copied());
        let Some(s) = score(&cand_set, p.lambda) else {
            skipped += 1;
            continue;
        };
        evaluated += 1;
        let accept = s >= cur_score || rng.gen::<f64>() < ((s - cur_score) / temperature.max(1e-300)).exp();
        if accept {
            in_set[current[out_idx] as usize] = false;
            in_set[incoming as usize] = true;
            current = candidate;
            cur_score = s;
            if s > best_score {
                best_score = s;
                best = cand_set;
                history.push(Improvement { step, exponent: s });
            }
        }
    }
    let upper = p.lambda as f64 + 1.0 - to_f64(&FpConstants::c_lambda(p.lambda));
    Ok(SearchResult {
        best,
        exponent: best_score,
        initial,
        initial_exponent,
        bracket: (2f64.ln() / 1.5f64.ln(), upper),
        evaluated,
        skipped,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_returns_initial() {
        let r = search(&SearchParams::new(2, 5, 30, 0, 3)).unwrap();
        assert_eq!(r.best, r.initial);
        assert_eq!(r.best, gen_random(5, 30, 3).unwrap());
    }

    #[test]
    fn pairs_have_fixed_exponent() {
        let r = search(&SearchParams::new(2, 2, 10, 50, 1)).unwrap();
        assert!((r.exponent - 2f64.ln() / 1.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn deterministic() {
        let p = SearchParams::new(2, 4, 64, 500, 9);
        let (a, b) = (search(&p).unwrap(), search(&p).unwrap());
        assert_eq!(a.best, b.best);
        assert_eq!(a.exponent, b.exponent);
    }
}

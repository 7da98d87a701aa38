//! Inequality selection and corpus-wide verification runs.

use std::fmt;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    corpus_from_spec, fp_lower_bound_check, gen_random, large_plunnecke_witness, simplex_counts, verify_dilate_lemma,
    verify_large_dilates, verify_large_k, verify_thm1, verify_thm2, CorpusEntry, DilatePart, Params,
};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::lemmas::{greedy_cover, plunnecke_check, plunnecke_minimizer};
use crate::rational::{int, parse_rational};
use crate::report::BoundReport;
use crate::setcore::{sumset, GroupSet, Sign};

/// Names accepted by `--ineq`.
pub const INEQ_NAMES: [&str; 11] = [
    "thm1",
    "thm2",
    "large-dilates",
    "largeK",
    "dilate-lemma",
    "plunnecke",
    "cover",
    "large-plunnecke",
    "fp-equality",
    "fp-lower",
    "ruzsa",
];

/// One `name[:k=v,…]` selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub name: String,
    pub params: String,
}

impl Ineq {
    pub fn parse(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        if !INEQ_NAMES.contains(&name) {
            return Err(Error::InvalidParameter(format!("unknown inequality {name:?}")));
        }
        let ineq = Ineq { name: name.to_string(), params: params.to_string() };
        ineq.check_keys()?;
        Ok(ineq)
    }

    fn params(&self) -> Result<Params> {
        Params::parse(&self.params)
    }

    fn check_keys(&self) -> Result<()> {
        let allowed: &[&str] = match self.name.as_str() {
            "large-dilates" | "largeK" => &["lambda"],
            "dilate-lemma" => &["part", "l1", "l2", "lambda", "j"],
            "large-plunnecke" => &["delta", "max"],
            "fp-equality" | "fp-lower" => &["dmax", "tmax"],
            "ruzsa" => &["count", "max", "universe"],
            _ => &[],
        };
        let params = self.params()?;
        let unknown = params.keys().find(|k| !allowed.contains(k)).map(str::to_string);
        match unknown {
            Some(k) => Err(Error::InvalidParameter(format!("{} does not take {k:?}", self.name))),
            None => Ok(()),
        }
    }

    /// Inequalities that generate their own inputs and ignore the corpus.
    pub fn is_standalone(&self) -> bool {
        matches!(self.name.as_str(), "fp-equality" | "fp-lower" | "ruzsa")
    }
}

/// A failure tied to the inequality and input that raised it.
#[derive(Debug)]
pub struct VerifyFailure {
    pub ineq: String,
    pub family: String,
    pub params: String,
    pub error: Error,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}({}): {}", self.ineq, self.family, self.params, self.error)
    }
}

fn dilate_parts(p: &Params) -> Result<Vec<DilatePart>> {
    let Some(part) = p.get::<u32>("part")? else {
        return Ok(vec![
            DilatePart::Sum { l1: 1, l2: 6 },
            DilatePart::Sum { l1: 1, l2: 1 },
            DilatePart::Sum { l1: 2, l2: 1 },
            DilatePart::Product { l1: 2, l2: 3 },
            DilatePart::Product { l1: 2, l2: 2 },
            DilatePart::Power { lambda: 2, j: 2 },
            DilatePart::Power { lambda: 3, j: 2 },
            DilatePart::Power { lambda: 2, j: 3 },
        ]);
    };
    let l1 = match p.get::<u32>("l1")? {
        Some(l) => l,
        None => p.get("lambda")?.unwrap_or(2),
    };
    Ok(vec![DilatePart::new(part, l1, p.get("l2")?.unwrap_or(1), p.get("j")?)?])
}

fn on_set(ineq: &Ineq, a: &GroupSet, constants: &Constants) -> Result<Vec<BoundReport>> {
    let p = ineq.params()?;
    let lambda = || -> Result<u32> { Ok(p.get("lambda")?.unwrap_or(2)) };
    Ok(match ineq.name.as_str() {
        "thm1" => vec![verify_thm1(a)?],
        "thm2" => vec![verify_thm2(a)?],
        "large-dilates" => vec![verify_large_dilates(a, lambda()?)?],
        "largeK" => vec![verify_large_k(a, lambda()?)?],
        "dilate-lemma" => {
            let mut out = Vec::new();
            for part in dilate_parts(&p)? {
                out.extend(verify_dilate_lemma(a, part, constants.exact_limit)?);
            }
            out
        }
        "plunnecke" => {
            if a.len() > constants.exact_limit {
                return Ok(Vec::new());
            }
            let m = plunnecke_minimizer(a, a, constants.exact_limit)?;
            vec![plunnecke_check(&m.x, a, a)?.asserted_if(m.certified)]
        }
        "cover" => {
            let aa = sumset(a, a)?;
            let g = greedy_cover(a, &aa, Sign::Plus)?;
            vec![BoundReport::counts("cover", g.cover.len(), int(g.step_bound))]
        }
        "large-plunnecke" => {
            if a.len() > p.get("max")?.unwrap_or(constants.exact_limit) {
                return Ok(Vec::new());
            }
            let delta = parse_rational(&p.get::<String>("delta")?.unwrap_or_else(|| "1/2".into()))?;
            vec![large_plunnecke_witness(a, &delta, constants.exact_limit)?.report]
        }
        other => unreachable!("{other} is standalone"),
    })
}

fn standalone(ineq: &Ineq, constants: &Constants) -> Result<Vec<BoundReport>> {
    let p = ineq.params()?;
    let mut out = Vec::new();
    match ineq.name.as_str() {
        "fp-equality" | "fp-lower" => {
            let lower = ineq.name == "fp-lower";
            let (dmax, tmax): (u64, u64) = (p.get("dmax")?.unwrap_or(3), p.get("tmax")?.unwrap_or(5));
            for d in 1..=dmax {
                for t in u64::from(lower)..=tmax {
                    out.push(if lower { fp_lower_bound_check(d, t)? } else { simplex_counts(d, t)?.report() });
                }
            }
        }
        "ruzsa" => {
            let count: usize = p.get("count")?.unwrap_or(500);
            let max: usize = p.get("max")?.unwrap_or(10);
            let universe: usize = p.get("universe")?.unwrap_or(4 * max.max(1));
            if max == 0 || max > universe {
                return Err(Error::InvalidParameter("ruzsa needs 1 <= max <= universe".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(constants.seed);
            for i in 0..count {
                let mut draw = || gen_random(rng.gen_range(1..=max), universe, rng.gen());
                let (u, v, w) = (draw()?, draw()?, draw()?);
                for sign in [Sign::Plus, Sign::Minus] {
                    let r = crate::bounds::ruzsa_triangle_check(&u, &v, &w, sign)?;
                    out.push(r.with_input("ruzsa", &format!("index={i}"), w.len()));
                }
            }
        }
        other => unreachable!("{other} runs per set"),
    }
    Ok(out)
}

/// Resolves and concatenates corpus specs in order.
pub fn load_corpus(specs: &[String]) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for s in specs {
        out.extend(corpus_from_spec(s)?);
    }
    Ok(out)
}

/// Runs every selected inequality over the corpus and returns the reports
/// sorted by `(id, family, params)`, ties kept in corpus order.
///
/// Corpus entries are spread over worker threads; the result does not
/// depend on how many.
pub fn run_verify(
    corpus: &[CorpusEntry],
    ineqs: &[Ineq],
    constants: &Constants,
) -> std::result::Result<Vec<BoundReport>, VerifyFailure> {
    let per_set: Vec<&Ineq> = ineqs.iter().filter(|i| !i.is_standalone()).collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(corpus.len().max(1));
    let chunk = corpus.len().div_ceil(workers).max(1);
    let results: Vec<std::result::Result<Vec<BoundReport>, VerifyFailure>> = thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .chunks(chunk)
            .map(|entries| {
                let per_set = &per_set;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for e in entries {
                        for ineq in per_set {
                            let reports = on_set(ineq, &e.set, constants).map_err(|error| VerifyFailure {
                                ineq: ineq.name.clone(),
                                family: e.family.clone(),
                                params: e.params.clone(),
                                error,
                            })?;
                            out.extend(reports.into_iter().map(|r| r.with_input(&e.family, &e.params, e.set.len())));
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    for ineq in ineqs.iter().filter(|i| i.is_standalone()) {
        reports.extend(standalone(ineq, constants).map_err(|error| VerifyFailure {
            ineq: ineq.name.clone(),
            family: String::new(),
            params: ineq.params.clone(),
            error,
        })?);
    }
    reports.sort_by(|a, b| (&a.id, &a.family, &a.params).cmp(&(&b.id, &b.family, &b.params)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineqs(names: &[&str]) -> Vec<Ineq> {
        names.iter().map(|s| Ineq::parse(s).unwrap()).collect()
    }

    #[test]
    fn parse_rejects_unknown() {
        assert!(Ineq::parse("thm7").is_err());
        assert!(Ineq::parse("largeK:mu=3").is_err());
        assert_eq!(Ineq::parse("largeK:lambda=3").unwrap().params, "lambda=3");
    }

    #[test]
    fn dilate_lemma_part3_on_interval12() {
        let corpus = load_corpus(&["interval:n=12".into()]).unwrap();
        let r = run_verify(&corpus, &ineqs(&["dilate-lemma:part=3,lambda=2,j=2"]), &Constants::default()).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|r| r.pass && r.family == "interval"));
    }

    #[test]
    fn standalone_ignores_corpus() {
        let r = run_verify(&[], &ineqs(&["fp-equality:dmax=1,tmax=3"]), &Constants::default()).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.pass));
    }

    #[test]
    fn ruzsa_is_seeded() {
        let c = Constants::default();
        let a = run_verify(&[], &ineqs(&["ruzsa:count=20"]), &c).unwrap();
        let b = run_verify(&[], &ineqs(&["ruzsa:count=20"]), &c).unwrap();
        assert_eq!(a.len(), 40);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn failures_name_the_input() {
        let corpus = load_corpus(&["interval:n=4".into()]).unwrap();
        let e = run_verify(&corpus, &ineqs(&["largeK:lambda=0"]), &Constants::default()).unwrap_err();
        assert_eq!(e.family, "interval");
        assert!(e.to_string().starts_with("largeK on interval(n=4)"));
    }
}

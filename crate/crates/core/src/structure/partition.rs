use std::path::Path;

use serde::Serialize;

use crate::config::Constants;
use crate::error::{Error, Result};
use crate::lemmas::plunnecke_minimizer;
use crate::rational::{floor_from_f64, format_rational, frac, int, ln_floor2, to_f64, Rational};
use crate::report::Checks;
use crate::setcore::{dilate_sum, io::write_set, sumset, GroupSet};

use super::{main_lemma, Branch, MainReport, RefinedCase};

#[derive(Clone, Debug, Serialize)]
pub struct PartitionBlock {
    pub index: usize,
    pub branch: Branch,
    pub refined_case: RefinedCase,
    pub block: GroupSet,
    #[serde(with = "crate::rational::serde_rational")]
    pub claimed_bound: Rational,
    /// `|A + 2·B⁽ⁱ⁾|`.
    pub actual: usize,
    pub asserted: bool,
    /// `|A'|` before this block was removed.
    pub residual_before: usize,
    pub detail: MainReport,
    #[serde(skip)]
    a_prime: GroupSet,
    #[serde(skip)]
    pieces: Vec<GroupSet>,
}

impl PartitionBlock {
    /// The refined-greedy residuals `B⁽ʲ⁾` seen while producing this block.
    pub fn residuals(&self) -> Result<Vec<GroupSet>> {
        let mut out = vec![self.a_prime.clone()];
        let mut cur = self.a_prime.clone();
        for p in &self.pieces {
            cur = cur.minus(p)?;
            if !cur.is_empty() {
                out.push(cur.clone());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionTrace {
    pub size: usize,
    #[serde(rename = "K", with = "crate::rational::serde_rational")]
    pub k: Rational,
    #[serde(rename = "M", with = "crate::rational::serde_rational")]
    pub m: Rational,
    pub x_size: usize,
    pub x_certified: bool,
    /// `|A + 2·A|`.
    pub target: usize,
    /// `Σᵢ |A + 2·B⁽ⁱ⁾|`.
    pub total_actual: usize,
    pub branch_a: usize,
    pub branch_b: usize,
    pub iteration_cap: usize,
    /// `(K³ln²|A|/M + K²M¹⁹ln²|A|)|A|`.
    pub aggregate_bound: f64,
    pub blocks: Vec<PartitionBlock>,
    pub checks: Checks,
}

/// `K^{1/20}` rounded down to a multiple of `10⁻⁹`, clamped to `[1, K]`.
pub fn auto_m(k: &Rational) -> Rational {
    let m = floor_from_f64(to_f64(k).powf(0.05) * (1.0 - 1e-12), 1_000_000_000);
    if m < int(1) {
        int(1)
    } else if &m > k {
        k.clone()
    } else {
        m
    }
}

/// Partitions `A` into blocks by iterating the main lemma on the residual,
/// with one Plünnecke minimizer `X` of `|X+A|/|X|` shared by all rounds.
///
/// Asserted: the blocks partition `A`, the union bound
/// `|A+2·A| <= Σᵢ|A+2·B⁽ⁱ⁾|`, and termination within
/// `⌊10 M³ ln|A|⌋ + 10` rounds. Branch counts and the aggregate bound are
/// reported against `big_c`.
pub fn theorem1_partition(a: &GroupSet, m: Option<&Rational>, constants: &Constants) -> Result<PartitionTrace> {
    const OP: &str = "theorem1_partition";
    if a.is_empty() {
        return Err(Error::EmptyInput(OP));
    }
    let n = a.len();
    let k = frac(sumset(a, a)?.len(), n);
    let m = match m {
        Some(m) => m.clone(),
        None => auto_m(&k),
    };
    if m < int(1) || m > k {
        return Err(Error::InvalidParameter(format!(
            "partition needs 1 <= M <= K, got M = {}, K = {}",
            format_rational(&m),
            format_rational(&k)
        )));
    }
    let (kf, mf) = (to_f64(&k), to_f64(&m));
    let cap = (10.0 * mf.powi(3) * (n as f64).ln()).floor() as usize + 10;
    let x = plunnecke_minimizer(a, a, constants.exact_limit)?;

    let mut residual = a.clone();
    let mut blocks = Vec::new();
    while !residual.is_empty() {
        if blocks.len() >= cap {
            return Err(Error::IterationCap { op: OP, cap });
        }
        let out = main_lemma(a, &residual, &x.x, x.certified, &m, constants)
            .map_err(|e| e.in_stage("main_lemma"))?;
        if out.b.is_empty() || !out.b.is_subset(&residual) {
            return Err(Error::assertion(OP, "main lemma returned an empty or foreign block"));
        }
        let next = residual.minus(&out.b)?;
        blocks.push(PartitionBlock {
            index: blocks.len(),
            branch: out.branch,
            refined_case: out.refined.case,
            block: out.b,
            claimed_bound: out.report.claimed_bound.clone(),
            actual: out.report.actual,
            asserted: out.report.asserted,
            residual_before: residual.len(),
            detail: out.report,
            a_prime: residual,
            pieces: out.refined.steps.into_iter().map(|s| s.piece).collect(),
        });
        residual = next;
    }

    let mut checks = Checks::default();
    let mut union = GroupSet::empty(a.dim());
    let mut total_size = 0;
    for b in &blocks {
        union = union.union(&b.block)?;
        total_size += b.block.len();
    }
    if union != *a || total_size != n {
        return Err(Error::assertion(OP, "blocks do not partition A"));
    }
    let target = dilate_sum(a, 2, a)?.len();
    let total_actual: usize = blocks.iter().map(|b| b.actual).sum();
    checks.hard_le(OP, "|A+2A| <= Σ|A+2B_i|", &int(target), &int(total_actual))?;

    let branch_a = blocks.iter().filter(|b| b.branch == Branch::A).count();
    let branch_b = blocks.len() - branch_a;
    let ln_a = ln_floor2(n);
    let big_c = constants.big_c;
    checks.soft("branch (a) count <= C ln|A|", branch_a as f64, big_c * ln_a);
    checks.soft("branch (b) count <= C M^3 ln|A|", branch_b as f64, big_c * mf.powi(3) * ln_a);
    let aggregate_bound = (kf.powi(3) * ln_a * ln_a / mf + kf * kf * mf.powi(19) * ln_a * ln_a) * n as f64;
    checks.soft("|A+2A| <= C (K^3 ln^2|A|/M + K^2 M^19 ln^2|A|)|A|", target as f64, big_c * aggregate_bound);
    checks.finish(OP, constants.strict)?;

    Ok(PartitionTrace {
        size: n,
        k,
        m,
        x_size: x.x.len(),
        x_certified: x.certified,
        target,
        total_actual,
        branch_a,
        branch_b,
        iteration_cap: cap,
        aggregate_bound,
        blocks,
        checks,
    })
}

/// Writes every block and every refined-greedy residual as a set file:
/// `block_003.set` and `block_003_residual_002.set`.
pub fn write_trace_sets(trace: &PartitionTrace, dir: impl AsRef<Path>) -> Result<usize> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut written = 0;
    for b in &trace.blocks {
        write_set(dir.join(format!("block_{:03}.set", b.index)), &b.block)?;
        written += 1;
        for (j, r) in b.residuals()?.iter().enumerate() {
            write_set(dir.join(format!("block_{:03}_residual_{j:03}.set", b.index)), r)?;
            written += 1;
        }
    }
    Ok(written)
}

//! Generators for the extremal families and the verification corpus.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcore::{base_embed, io::read_set, Coord, GroupSet};

use super::binomial;

/// `{0, 1, …, n−1}`.
pub fn gen_interval(n: usize) -> GroupSet {
    GroupSet::from_ints(0..n as Coord)
}

/// `{1, r, r², …, r^{n−1}}`.
pub fn gen_geometric(ratio: Coord, n: usize) -> Result<GroupSet> {
    if ratio < 2 {
        return Err(Error::InvalidParameter(format!("geometric ratio must be >= 2, got {ratio}")));
    }
    let mut out = Vec::with_capacity(n);
    let mut x: Coord = 1;
    for i in 0..n {
        out.push(x);
        if i + 1 < n {
            x = x.checked_mul(ratio).ok_or(Error::Overflow("gen_geometric"))?;
        }
    }
    Ok(GroupSet::from_ints(out))
}

/// `{0,1}ⁿ`, either in ℤⁿ or flattened to ℤ by an order-3 embedding that
/// preserves `|A + 2·A|` and `|A + A|`.
pub fn gen_hypercube(n: usize, embed: bool) -> Result<GroupSet> {
    if n == 0 || n > 40 {
        return Err(Error::InvalidParameter(format!("hypercube dimension must be in 1..=40, got {n}")));
    }
    let mut flat = Vec::with_capacity(n << n);
    for mask in 0u64..(1 << n) {
        flat.extend((0..n).map(|k| ((mask >> k) & 1) as Coord));
    }
    let cube = GroupSet::from_flat(n, flat)?;
    if embed {
        base_embed(&cube, 3)
    } else {
        Ok(cube)
    }
}

/// `{Σ kᵢ·stepᵢ : 0 <= kᵢ < sizeᵢ}` in ℤ.
pub fn gen_gap(steps: &[Coord], sizes: &[usize]) -> Result<GroupSet> {
    if steps.len() != sizes.len() || steps.is_empty() {
        return Err(Error::InvalidParameter("GAP needs matching nonempty steps and sizes".into()));
    }
    let mut acc: Vec<Coord> = vec![0];
    for (&step, &size) in steps.iter().zip(sizes) {
        if size == 0 {
            return Err(Error::InvalidParameter("GAP sizes must be positive".into()));
        }
        let mut next = Vec::with_capacity(acc.len() * size);
        for &x in &acc {
            for k in 0..size as Coord {
                let y = k.checked_mul(step).and_then(|t| t.checked_add(x)).ok_or(Error::Overflow("gen_gap"))?;
                next.push(y);
            }
        }
        acc = next;
    }
    Ok(GroupSet::from_ints(acc))
}

/// `{x ∈ ℤ^d : xᵢ >= 0, Σ xᵢ <= T}`; `|A| = C(T+d, d)` is asserted.
pub fn gen_simplex(d: usize, t: usize) -> Result<GroupSet> {
    if d == 0 {
        return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
    }
    let mut flat = Vec::new();
    let mut point = vec![0 as Coord; d];
    simplex_rec(&mut point, 0, t as Coord, &mut flat);
    let a = GroupSet::from_flat(d, flat)?;
    if binomial((t + d) as u64, d as u64) != a.len().into() {
        return Err(Error::assertion("gen_simplex", format!("|A| = {} differs from C(T+d, d)", a.len())));
    }
    Ok(a)
}

fn simplex_rec(point: &mut [Coord], i: usize, left: Coord, out: &mut Vec<Coord>) {
    if i == point.len() {
        out.extend_from_slice(point);
        return;
    }
    for v in 0..=left {
        point[i] = v;
        simplex_rec(point, i + 1, left - v, out);
    }
    point[i] = 0;
}

/// `n` distinct integers drawn uniformly from `[0, universe)`.
pub fn gen_random(n: usize, universe: usize, seed: u64) -> Result<GroupSet> {
    if n > universe {
        return Err(Error::InvalidParameter(format!("cannot draw {n} distinct values from {universe}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(GroupSet::from_ints(sample(&mut rng, universe, n).into_iter().map(|v| v as Coord)))
}

/// A named corpus member.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub family: String,
    pub params: String,
    pub set: GroupSet,
}

impl CorpusEntry {
    fn new(family: &str, params: String, set: GroupSet) -> Self {
        CorpusEntry { family: family.to_string(), params, set }
    }
}

pub const DEFAULT_INTERVALS: [usize; 14] = [1, 2, 3, 5, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096];

/// Random members of the default corpus: seed `s` gives `n = 1 + s mod 48`
/// drawn from `[0, 4n)`.
pub fn random_corpus(count: u64) -> Result<Vec<CorpusEntry>> {
    (0..count)
        .map(|seed| {
            let n = 1 + (seed % 48) as usize;
            let set = gen_random(n, 4 * n, seed)?;
            Ok(CorpusEntry::new("random", format!("n={n},universe={},seed={seed}", 4 * n), set))
        })
        .collect()
}

/// Intervals, GAPs, ratio-3 geometric progressions, embedded hypercubes and
/// simplices.
pub fn structured_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in DEFAULT_INTERVALS {
        out.push(CorpusEntry::new("interval", format!("n={n}"), gen_interval(n)));
    }
    let gaps: [(&[Coord], &[usize]); 5] = [
        (&[1, 100], &[10, 10]),
        (&[1, 7], &[4, 6]),
        (&[1, 50, 2000], &[5, 5, 5]),
        (&[3, 1000], &[32, 8]),
        (&[1, 40, 1601, 70000], &[3, 3, 3, 3]),
    ];
    for (steps, sizes) in gaps {
        out.push(CorpusEntry::new("gap", format!("steps={steps:?},sizes={sizes:?}"), gen_gap(steps, sizes)?));
    }
    for n in 1..=64 {
        out.push(CorpusEntry::new("geometric", format!("ratio=3,n={n}"), gen_geometric(3, n)?));
    }
    for n in 1..=10 {
        out.push(CorpusEntry::new("hypercube", format!("n={n},embed=true"), gen_hypercube(n, true)?));
    }
    for d in 1..=3 {
        for t in 0..=6 {
            out.push(CorpusEntry::new("simplex", format!("d={d},T={t}"), gen_simplex(d, t)?));
        }
    }
    Ok(out)
}

/// The structured corpus followed by 1000 seeded random sets.
pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = structured_corpus()?;
    out.extend(random_corpus(1000)?);
    Ok(out)
}

fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for kv in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {kv:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Typed access to `key=value` generator parameters.
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn parse(s: &str) -> Result<Self> {
        parse_params(s).map(Params)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let joined: Vec<&str> = pairs.into_iter().collect();
        Self::parse(&joined.join(","))
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::InvalidParameter(format!("bad value for {key}: {v:?}"))))
            .transpose()
    }

    pub fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}")))
    }

    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let raw: String = self.require(key)?;
        raw.trim_matches(|c| c == '[' || c == ']')
            .split([';', ' ', ':'])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::InvalidParameter(format!("bad list entry for {key}: {t:?}"))))
            .collect()
    }

    pub fn flag(&self, key: &str, default: bool) -> Result<bool> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Canonical `k=v,…` rendering.
    pub fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

/// Generates one family member. Lists (GAP steps and sizes) are separated
/// by `;`.
pub fn generate(family: &str, params: &Params) -> Result<GroupSet> {
    match family {
        "interval" => Ok(gen_interval(params.require("n")?)),
        "geometric" => gen_geometric(params.get("ratio")?.unwrap_or(3), params.require("n")?),
        "hypercube" => gen_hypercube(params.require("n")?, params.flag("embed", true)?),
        "gap" => gen_gap(&params.list("steps")?, &params.list("sizes")?),
        "simplex" => gen_simplex(params.require("d")?, params.require("T")?),
        "random" => gen_random(params.require("n")?, params.require("universe")?, params.get("seed")?.unwrap_or(0)),
        _ => Err(Error::InvalidParameter(format!("unknown family {family:?}"))),
    }
}

/// Resolves a corpus description:
///
/// * `default`, `structured`, `random` (optionally `random:count=N`);
/// * `file:<path>` for a set file;
/// * `<family>:k=v,…` for a single generated set, e.g. `interval:n=12`.
pub fn corpus_from_spec(spec: &str) -> Result<Vec<CorpusEntry>> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match head {
        "default" => default_corpus(),
        "structured" => structured_corpus(),
        "random" => random_corpus(Params::parse(rest)?.get("count")?.unwrap_or(1000)),
        "file" => Ok(vec![CorpusEntry::new("file", format!("path={rest}"), read_set(rest)?)]),
        family => {
            let params = Params::parse(rest)?;
            let set = generate(family, &params)?;
            Ok(vec![CorpusEntry::new(family, params.render(), set)])
        }
    }
}

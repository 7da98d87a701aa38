//! Exact finite-set arithmetic over ℤ^d.
//!
//! A [`GroupSet`] is stored in canonical form: points flattened row-major,
//! lexicographically sorted and duplicate-free. Every operation returns a
//! canonical set, so structural equality is set equality.
//!
//! One-dimensional sets whose sums fit in a bounded window go through a
//! word-parallel bitmap convolution (see [`bitset`]); everything else uses
//! pairwise accumulation followed by sort and dedup. Both routes give
//! identical results.

pub mod bitset;
mod embed;
pub mod io;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, Rational};

pub use embed::base_embed;

/// Coordinate type. Arithmetic is checked; overflow is an error.
pub type Coord = i128;

/// Default affine span (in points) under which 1-D sumsets use bitmaps.
pub const DEFAULT_FAST_PATH_WINDOW: u64 = 1 << 22;

/// A finite subset of ℤ^d in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSet {
    dim: usize,
    coords: Vec<Coord>,
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            write!(f, "GroupSet{:?}", self.coords)
        } else {
            f.debug_set().entries(self.iter()).finish()
        }
    }
}

impl GroupSet {
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        GroupSet { dim, coords: Vec::new() }
    }

    /// Builds a set from flattened coordinates, canonicalizing.
    pub fn from_flat(dim: usize, coords: Vec<Coord>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not split into {dim}-tuples",
                coords.len()
            )));
        }
        Ok(Self::canonical(dim, coords))
    }

    pub fn from_points<P: AsRef<[Coord]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.len() });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// A one-dimensional set from integers.
    pub fn from_ints<I: IntoIterator<Item = Coord>>(values: I) -> Self {
        Self::canonical(1, values.into_iter().collect())
    }

    pub fn singleton(point: &[Coord]) -> Self {
        GroupSet { dim: point.len(), coords: point.to_vec() }
    }

    pub(crate) fn canonical(dim: usize, mut coords: Vec<Coord>) -> Self {
        if dim == 1 {
            coords.sort_unstable();
            coords.dedup();
            return GroupSet { dim, coords };
        }
        let n = coords.len() / dim;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_unstable_by(|&a, &b| coords[a * dim..(a + 1) * dim].cmp(&coords[b * dim..(b + 1) * dim]));
        let mut out: Vec<Coord> = Vec::with_capacity(coords.len());
        for i in idx {
            let p = &coords[i * dim..(i + 1) * dim];
            if out.len() >= dim && &out[out.len() - dim..] == p {
                continue;
            }
            out.extend_from_slice(p);
        }
        GroupSet { dim, coords: out }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn cardinality(&self) -> usize {
        self.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Coord] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, Coord> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn flat(&self) -> &[Coord] {
        &self.coords
    }

    /// Sorted values of a one-dimensional set.
    pub fn values(&self) -> Option<&[Coord]> {
        (self.dim == 1).then_some(&self.coords[..])
    }

    pub fn to_points(&self) -> Vec<Vec<Coord>> {
        self.iter().map(<[Coord]>::to_vec).collect()
    }

    /// Index of `p` in canonical order.
    pub fn position(&self, p: &[Coord]) -> Option<usize> {
        if p.len() != self.dim {
            return None;
        }
        if self.dim == 1 {
            return self.coords.binary_search(&p[0]).ok();
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, p: &[Coord]) -> bool {
        self.position(p).is_some()
    }

    pub fn is_subset(&self, other: &GroupSet) -> bool {
        self.dim == other.dim && self.iter().all(|p| other.contains(p))
    }

    fn check_dim(&self, other: &GroupSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn union(&self, other: &GroupSet) -> Result<GroupSet> {
        self.check_dim(other)?;
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(Self::canonical(self.dim, coords))
    }

    pub fn intersection(&self, other: &GroupSet) -> Result<GroupSet> {
        self.check_dim(other)?;
        let coords = self.iter().filter(|p| other.contains(p)).flatten().copied().collect();
        Ok(GroupSet { dim: self.dim, coords })
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &GroupSet) -> Result<GroupSet> {
        self.check_dim(other)?;
        let coords = self.iter().filter(|p| !other.contains(p)).flatten().copied().collect();
        Ok(GroupSet { dim: self.dim, coords })
    }

    /// The subset selected by `keep`, preserving canonical order.
    pub fn select(&self, keep: impl Fn(usize) -> bool) -> GroupSet {
        let coords = self
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .flat_map(|(_, p)| p.iter().copied())
            .collect();
        GroupSet { dim: self.dim, coords }
    }

    pub fn translate(&self, t: &[Coord]) -> Result<GroupSet> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: t.len() });
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for p in self.iter() {
            for (x, s) in p.iter().zip(t) {
                coords.push(x.checked_add(*s).ok_or(Error::Overflow("translate"))?);
            }
        }
        // Translation preserves lexicographic order.
        Ok(GroupSet { dim: self.dim, coords })
    }

    pub fn negate(&self) -> Result<GroupSet> {
        dilate(-1, self)
    }

    pub fn zero(dim: usize) -> GroupSet {
        GroupSet { dim, coords: vec![0; dim] }
    }

    /// Componentwise minimum and maximum over all points.
    pub fn bounding_box(&self) -> Option<(Vec<Coord>, Vec<Coord>)> {
        let mut it = self.iter();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.to_vec(), first.to_vec());
        for p in it {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Some((lo, hi))
    }
}

impl Serialize for GroupSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupSet", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("points", &self.iter().collect::<Vec<_>>())?;
        st.end()
    }
}

/// Size statistics of `A` and `A+A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingStats {
    pub size: usize,
    pub sumset_size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub k: Rational,
}

fn add_point(out: &mut Vec<Coord>, a: &[Coord], b: &[Coord], op: &'static str) -> Result<()> {
    for (x, y) in a.iter().zip(b) {
        out.push(x.checked_add(*y).ok_or(Error::Overflow(op))?);
    }
    Ok(())
}

fn sub_point(out: &mut Vec<Coord>, a: &[Coord], b: &[Coord], op: &'static str) -> Result<()> {
    for (x, y) in a.iter().zip(b) {
        out.push(x.checked_sub(*y).ok_or(Error::Overflow(op))?);
    }
    Ok(())
}

/// `U + V` through pairwise accumulation only. Exposed so the bitmap path can
/// be checked against it.
pub fn sumset_generic(u: &GroupSet, v: &GroupSet) -> Result<GroupSet> {
    u.check_dim(v)?;
    let mut coords = Vec::with_capacity(u.coords.len() * v.len());
    for a in u.iter() {
        for b in v.iter() {
            add_point(&mut coords, a, b, "sumset")?;
        }
    }
    Ok(GroupSet::canonical(u.dim, coords))
}

/// `U + V` using the bitmap path when both sets are 1-D and the sum fits
/// in `window` consecutive integers.
pub fn sumset_with_window(u: &GroupSet, v: &GroupSet, window: u64) -> Result<GroupSet> {
    u.check_dim(v)?;
    if u.is_empty() || v.is_empty() {
        return Ok(GroupSet::empty(u.dim));
    }
    if u.dim == 1 {
        if let Some(vals) = bitset::sumset_1d(&u.coords, &v.coords, window)? {
            return Ok(GroupSet { dim: 1, coords: vals });
        }
    }
    sumset_generic(u, v)
}

/// `U + V = {u + v}`.
pub fn sumset(u: &GroupSet, v: &GroupSet) -> Result<GroupSet> {
    sumset_with_window(u, v, DEFAULT_FAST_PATH_WINDOW)
}

/// `U − V = {u − v}`.
pub fn difference_set(u: &GroupSet, v: &GroupSet) -> Result<GroupSet> {
    u.check_dim(v)?;
    sumset(u, &v.negate()?)
}

/// `λ·A = {λa}`.
pub fn dilate(lambda: Coord, a: &GroupSet) -> Result<GroupSet> {
    let mut coords = Vec::with_capacity(a.coords.len());
    for x in &a.coords {
        coords.push(x.checked_mul(lambda).ok_or(Error::Overflow("dilate"))?);
    }
    if lambda > 0 {
        Ok(GroupSet { dim: a.dim, coords })
    } else {
        Ok(GroupSet::canonical(a.dim, coords))
    }
}

/// `A + λ·B = {a + λb}`.
pub fn dilate_sum(a: &GroupSet, lambda: Coord, b: &GroupSet) -> Result<GroupSet> {
    a.check_dim(b)?;
    sumset(a, &dilate(lambda, b)?)
}

/// The `k`-fold sumset `A + ... + A`.
pub fn kfold(k: usize, a: &GroupSet) -> Result<GroupSet> {
    if k == 0 {
        return Err(Error::InvalidParameter("k-fold sumset needs k >= 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// `|A|`, `|A+A|` and `K = |A+A|/|A|`.
pub fn doubling(a: &GroupSet) -> Result<DoublingStats> {
    if a.is_empty() {
        return Err(Error::EmptyInput("doubling"));
    }
    let ss = sumset(a, a)?.len();
    Ok(DoublingStats { size: a.len(), sumset_size: ss, k: frac(ss, a.len()) })
}

/// The fiber `U ∩ (d + V)`; empty when `d ∉ U − V`.
pub fn fiber(u: &GroupSet, v: &GroupSet, d: &[Coord]) -> Result<GroupSet> {
    u.check_dim(v)?;
    if d.len() != u.dim {
        return Err(Error::DimensionMismatch { left: u.dim, right: d.len() });
    }
    let mut coords = Vec::new();
    let mut q = Vec::with_capacity(u.dim);
    for p in u.iter() {
        q.clear();
        sub_point(&mut q, p, d, "fiber")?;
        if v.contains(&q) {
            coords.extend_from_slice(p);
        }
    }
    Ok(GroupSet { dim: u.dim, coords })
}

/// Whether representation counts are taken over sums or differences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(s: i8) -> Result<Sign> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {s}"))),
        }
    }
}

/// Distinct values of `u ± v` with their multiplicities.
///
/// `points[i]` is represented `counts[i]` times; the counts sum to `|U||V|`.
#[derive(Clone, Debug)]
pub struct Representations {
    pub points: GroupSet,
    pub counts: Vec<u64>,
}

/// Multiplicity of every element of `U + sign·V`.
pub fn representation_counts(u: &GroupSet, v: &GroupSet, sign: Sign) -> Result<Representations> {
    u.check_dim(v)?;
    if u.is_empty() || v.is_empty() {
        return Ok(Representations { points: GroupSet::empty(u.dim), counts: Vec::new() });
    }
    let v = match sign {
        Sign::Plus => v.clone(),
        Sign::Minus => v.negate()?,
    };
    if u.dim == 1 {
        if let Some(r) = bitset::representation_counts_1d(&u.coords, &v.coords)? {
            return Ok(r);
        }
        let mut sums = Vec::with_capacity(u.len() * v.len());
        for a in &u.coords {
            for b in &v.coords {
                sums.push(a.checked_add(*b).ok_or(Error::Overflow("representation_counts"))?);
            }
        }
        sums.sort_unstable();
        let mut coords = Vec::new();
        let mut counts = Vec::new();
        for s in sums {
            if coords.last() == Some(&s) {
                *counts.last_mut().unwrap() += 1;
            } else {
                coords.push(s);
                counts.push(1);
            }
        }
        return Ok(Representations { points: GroupSet { dim: 1, coords }, counts });
    }
    let dim = u.dim;
    let mut flat = Vec::with_capacity(u.coords.len() * v.len());
    for a in u.iter() {
        for b in v.iter() {
            add_point(&mut flat, a, b, "representation_counts")?;
        }
    }
    let n = flat.len() / dim;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_unstable_by(|&a, &b| flat[a * dim..(a + 1) * dim].cmp(&flat[b * dim..(b + 1) * dim]));
    let mut coords: Vec<Coord> = Vec::new();
    let mut counts = Vec::new();
    for i in idx {
        let p = &flat[i * dim..(i + 1) * dim];
        if !coords.is_empty() && &coords[coords.len() - dim..] == p {
            *counts.last_mut().unwrap() += 1;
        } else {
            coords.extend_from_slice(p);
            counts.push(1);
        }
    }
    Ok(Representations { points: GroupSet { dim, coords }, counts })
}

//! Word-parallel fast path for one-dimensional sets in a bounded window.
//!
//! A sorted set is packed into a bitmap relative to its minimum. `U + V` is
//! the OR of copies of the bitmap of the larger operand shifted by each
//! element of the smaller one.

use super::{Coord, GroupSet, Representations};
use crate::error::{Error, Result};

const W: usize = 64;

/// Bitmap over `[offset, offset + bits)`.
#[derive(Clone, Debug)]
pub struct Bitmap {
    offset: Coord,
    bits: usize,
    words: Vec<u64>,
}

impl Bitmap {
    pub fn zeros(offset: Coord, bits: usize) -> Self {
        Bitmap { offset, bits, words: vec![0; bits.div_ceil(W)] }
    }

    /// Packs sorted values; all must lie in `[offset, offset + bits)`.
    pub fn from_sorted(values: &[Coord], offset: Coord, bits: usize) -> Self {
        let mut b = Self::zeros(offset, bits);
        for &x in values {
            let i = (x - offset) as usize;
            b.words[i / W] |= 1 << (i % W);
        }
        b
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// ORs `src` shifted left by `shift` bits into `self`.
    pub fn or_shifted(&mut self, src: &Bitmap, shift: usize) {
        let (ws, bs) = (shift / W, shift % W);
        let dst = &mut self.words;
        if bs == 0 {
            for (i, &w) in src.words.iter().enumerate() {
                if let Some(d) = dst.get_mut(i + ws) {
                    *d |= w;
                }
            }
        } else {
            for (i, &w) in src.words.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                if let Some(d) = dst.get_mut(i + ws) {
                    *d |= w << bs;
                }
                if let Some(d) = dst.get_mut(i + ws + 1) {
                    *d |= w >> (W - bs);
                }
            }
        }
    }

    pub fn to_sorted(&self) -> Vec<Coord> {
        let mut out = Vec::with_capacity(self.count());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros() as usize;
                out.push(self.offset + (wi * W + t) as Coord);
                w &= w - 1;
            }
        }
        out
    }
}

fn span(sorted: &[Coord]) -> Coord {
    sorted[sorted.len() - 1] - sorted[0]
}

/// Bitmap sumset of two nonempty sorted slices, or `None` when the sum's
/// span exceeds `window`.
pub fn sumset_1d(u: &[Coord], v: &[Coord], window: u64) -> Result<Option<Vec<Coord>>> {
    let lo = u[0].checked_add(v[0]).ok_or(Error::Overflow("sumset"))?;
    let hi = u[u.len() - 1]
        .checked_add(v[v.len() - 1])
        .ok_or(Error::Overflow("sumset"))?;
    let width = hi - lo + 1;
    if width > window as Coord {
        return Ok(None);
    }
    // Shift copies of the larger operand.
    let (big, small) = if u.len() >= v.len() { (u, v) } else { (v, u) };
    let src = Bitmap::from_sorted(big, big[0], span(big) as usize + 1);
    let mut acc = Bitmap::zeros(lo, width as usize);
    for &s in small {
        acc.or_shifted(&src, (s - small[0]) as usize);
    }
    Ok(Some(acc.to_sorted()))
}

/// Dense-array representation counts for `u + v` when the span is modest
/// relative to the number of pairs.
pub(crate) fn representation_counts_1d(u: &[Coord], v: &[Coord]) -> Result<Option<Representations>> {
    let lo = u[0].checked_add(v[0]).ok_or(Error::Overflow("representation_counts"))?;
    let hi = u[u.len() - 1]
        .checked_add(v[v.len() - 1])
        .ok_or(Error::Overflow("representation_counts"))?;
    let width = hi - lo + 1;
    let pairs = (u.len() * v.len()) as Coord;
    if width > (super::DEFAULT_FAST_PATH_WINDOW as Coord) || width > 4 * pairs + 4096 {
        return Ok(None);
    }
    let mut counts = vec![0u64; width as usize];
    let base_v: Vec<usize> = v.iter().map(|&b| (b - v[0]) as usize).collect();
    for &a in u {
        let off = (a - u[0]) as usize;
        for &b in &base_v {
            counts[off + b] += 1;
        }
    }
    let mut coords = Vec::new();
    let mut out = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            coords.push(lo + i as Coord);
            out.push(c);
        }
    }
    Ok(Some(Representations { points: GroupSet { dim: 1, coords }, counts: out }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_or_across_word_boundaries() {
        let u: Vec<Coord> = vec![0, 63, 64, 127, 200];
        let v: Vec<Coord> = vec![-5, 1, 70];
        let fast = sumset_1d(&u, &v, 1 << 22).unwrap().unwrap();
        let mut slow: Vec<Coord> = u.iter().flat_map(|a| v.iter().map(move |b| a + b)).collect();
        slow.sort_unstable();
        slow.dedup();
        assert_eq!(fast, slow);
    }

    #[test]
    fn window_respected() {
        assert!(sumset_1d(&[0, 1000], &[0], 100).unwrap().is_none());
        assert!(sumset_1d(&[0, 99], &[0], 100).unwrap().is_some());
    }

    #[test]
    fn interval_4096() {
        let a: Vec<Coord> = (0..4096).collect();
        let s = sumset_1d(&a, &a, 1 << 22).unwrap().unwrap();
        assert_eq!(s.len(), 8191);
        assert_eq!(s[0], 0);
        assert_eq!(s[8190], 8190);
    }
}

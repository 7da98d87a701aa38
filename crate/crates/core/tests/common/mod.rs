//! Brute-force oracles shared by the integration tests. Everything here works
//! on plain point lists and ordered sets, independently of the library's
//! canonical storage and fast paths.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::Write;

use dilate_core::GroupSet;

pub type Pt = Vec<i128>;
pub type Set = BTreeSet<Pt>;

pub fn pts(a: &GroupSet) -> Set {
    a.iter().map(<[i128]>::to_vec).collect()
}

pub fn add(p: &[i128], q: &[i128]) -> Pt {
    p.iter().zip(q).map(|(x, y)| x + y).collect()
}

pub fn sub(p: &[i128], q: &[i128]) -> Pt {
    p.iter().zip(q).map(|(x, y)| x - y).collect()
}

pub fn scale(l: i128, p: &[i128]) -> Pt {
    p.iter().map(|x| l * x).collect()
}

pub fn sum(a: &Set, b: &Set) -> Set {
    a.iter().flat_map(|p| b.iter().map(move |q| add(p, q))).collect()
}

pub fn dil(l: i128, a: &Set) -> Set {
    a.iter().map(|p| scale(l, p)).collect()
}

/// `|A + λ·B|`.
pub fn dilate_sum_size(a: &Set, l: i128, b: &Set) -> usize {
    sum(a, &dil(l, b)).len()
}

pub fn translate(a: &Set, t: &[i128]) -> Set {
    a.iter().map(|p| add(p, t)).collect()
}

/// `U ∩ (d + V)`.
pub fn fiber(u: &Set, v: &Set, d: &[i128]) -> Set {
    u.iter().filter(|p| v.contains(&sub(p, d))).cloned().collect()
}

/// `min |X+V|/|X|` over nonempty `X ⊆ U`, as `(|X+V|, |X|)`.
pub fn min_ratio(u: &Set, v: &Set) -> (usize, usize) {
    let items: Vec<&Pt> = u.iter().collect();
    assert!(items.len() <= 16, "exhaustive oracle is for small sets");
    let mut best = (usize::MAX, 1usize);
    for mask in 1u32..(1 << items.len()) {
        let x: Set = items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| (*p).clone()).collect();
        let s = sum(&x, v).len();
        if s * best.1 < best.0 * x.len() {
            best = (s, x.len());
        }
    }
    best
}

/// Prints the criterion verdict on the real stdout, past the test harness
/// capture, and fails the test on FAIL.
pub fn verdict(n: u32, title: &str, ok: bool, detail: &str) {
    let line = format!("acceptance #{n:02} {title}: {} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "criterion #{n} failed: {detail}");
}

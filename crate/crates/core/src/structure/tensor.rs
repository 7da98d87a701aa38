use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcore::{dilate_sum, sumset, Coord, GroupSet};

/// The Cartesian power `Aʳ ⊆ ℤ^{rd}`.
pub fn tensor_power(a: &GroupSet, r: usize) -> Result<GroupSet> {
    if r == 0 {
        return Err(Error::InvalidParameter("tensor power needs r >= 1".into()));
    }
    let d = a.dim();
    let mut flat: Vec<Coord> = a.flat().to_vec();
    let mut dim = d;
    for _ in 1..r {
        let mut next = Vec::with_capacity(flat.len() / dim * a.len() * (dim + d));
        for p in flat.chunks_exact(dim) {
            for q in a.iter() {
                next.extend_from_slice(p);
                next.extend_from_slice(q);
            }
        }
        flat = next;
        dim += d;
    }
    GroupSet::from_flat(dim, flat)
}

/// Sizes of `Aʳ`, `Aʳ+Aʳ`, `Aʳ+2·Aʳ` beside the `r`-th powers they must equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorIdentities {
    pub r: usize,
    pub size: (u128, u128),
    pub sumset: (u128, u128),
    pub dilate_sum: (u128, u128),
}

/// Computes both sides of the three multiplicativity identities and
/// asserts them.
pub fn tensor_identities(a: &GroupSet, r: usize) -> Result<TensorIdentities> {
    let ar = tensor_power(a, r)?;
    let pow = |n: usize| (n as u128).pow(r as u32);
    let out = TensorIdentities {
        r,
        size: (ar.len() as u128, pow(a.len())),
        sumset: (sumset(&ar, &ar)?.len() as u128, pow(sumset(a, a)?.len())),
        dilate_sum: (dilate_sum(&ar, 2, &ar)?.len() as u128, pow(dilate_sum(a, 2, a)?.len())),
    };
    for (name, (l, rr)) in [("|A^r|", out.size), ("|A^r+A^r|", out.sumset), ("|A^r+2A^r|", out.dilate_sum)] {
        if l != rr {
            return Err(Error::assertion("tensor_identities", format!("{name} = {l} but the r-th power is {rr}")));
        }
    }
    Ok(out)
}

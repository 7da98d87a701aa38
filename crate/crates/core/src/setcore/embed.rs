use super::{Coord, GroupSet};
use crate::error::{Error, Result};

/// Flattens a subset of ℤ^d into ℤ by a base expansion that is a Freiman
/// isomorphism of order `order`.
///
/// The set is first translated to nonnegative coordinates; with `m` the
/// largest translated coordinate the base is `1 + order·m`, and the point
/// `x` maps to `Σ x_i · base^(i-1)`. Any combination of at most `order`
/// points (coefficients of total mass at most `order`) keeps every digit
/// below the base, so coincidences among such sums are preserved exactly.
pub fn base_embed(a: &GroupSet, order: u32) -> Result<GroupSet> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!("embedding order must be >= 2, got {order}")));
    }
    let Some((lo, _)) = a.bounding_box() else {
        return Ok(GroupSet::empty(1));
    };
    let mut m: Coord = 0;
    for p in a.iter() {
        for (x, l) in p.iter().zip(&lo) {
            m = m.max(x.checked_sub(*l).ok_or(Error::Overflow("base_embed"))?);
        }
    }
    let base = m
        .checked_mul(order as Coord)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("base_embed"))?;
    let mut out = Vec::with_capacity(a.len());
    for p in a.iter() {
        let mut value: Coord = 0;
        let mut scale: Coord = 1;
        for (k, (x, l)) in p.iter().zip(&lo).enumerate() {
            let digit = x - l;
            value = digit
                .checked_mul(scale)
                .and_then(|t| value.checked_add(t))
                .ok_or(Error::Overflow("base_embed"))?;
            if k + 1 < p.len() {
                scale = scale.checked_mul(base).ok_or(Error::Overflow("base_embed"))?;
            }
        }
        out.push(value);
    }
    Ok(GroupSet::from_ints(out))
}

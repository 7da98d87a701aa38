use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, int, ln_rational, to_f64};
use crate::report::BoundReport;
use crate::setcore::{dilate_sum, sumset};

use super::{binomial, gen_simplex, FpConstants};

/// `Σ_{p+z+n=d} d!/(p! z! n!) · C(2T, n) · C(T, p)`.
pub fn fp_formula(d: u64, t: u64) -> BigInt {
    let mut total = BigInt::from(0);
    for p in 0..=d {
        for n in 0..=d - p {
            let multinomial = binomial(d, p) * binomial(d - p, n);
            total += multinomial * binomial(2 * t, n) * binomial(t, p);
        }
    }
    total
}

/// Exact counts for the simplex of side `T` in ℤ^d next to the formula.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexCounts {
    pub d: u64,
    pub t: u64,
    pub size: usize,
    pub sumset_size: usize,
    /// `|A − 2·A|` by enumeration.
    pub exact: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub formula: BigInt,
    pub equal: bool,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Enumerates the simplex and asserts `|A| = C(T+d, d)` and
/// `|A+A| = C(2T+d, d)`.
pub fn simplex_counts(d: u64, t: u64) -> Result<SimplexCounts> {
    let a = gen_simplex(d as usize, t as usize)?;
    let sumset_size = sumset(&a, &a)?.len();
    if BigInt::from(sumset_size) != binomial(2 * t + d, d) {
        return Err(Error::assertion("simplex_counts", format!("|A+A| = {sumset_size} differs from C(2T+d, d)")));
    }
    let exact = dilate_sum(&a, -2, &a)?.len();
    let formula = fp_formula(d, t);
    Ok(SimplexCounts { d, t, size: a.len(), sumset_size, exact, equal: formula == BigInt::from(exact), formula })
}

impl SimplexCounts {
    /// `exact <= formula`, asserted. Equality holds only in dimension one.
    pub fn report(&self) -> BoundReport {
        BoundReport::exact("fp-equality", int(self.exact), num_rational::BigRational::from_integer(self.formula.clone()))
            .with_input("simplex", &format!("d={},T={},equal={}", self.d, self.t, self.equal), self.size)
            .with_k(frac(self.sumset_size, self.size))
    }
}

/// `|A − 2·A| >= K^q/(2 log₂K) · |A|` for the simplex, as a report only.
///
/// The report is phrased as `K^q|A|/(2 log₂K) <= |A − 2·A|`, so `lhs` is the
/// float lower bound and `rhs` the exact count.
pub fn fp_lower_bound_check(d: u64, t: u64) -> Result<BoundReport> {
    if d == 0 || t == 0 {
        return Err(Error::InvalidParameter("fp_lower_bound_check needs d, T >= 1".into()));
    }
    let c = simplex_counts(d, t)?;
    let k = frac(c.sumset_size, c.size);
    let lnk = ln_rational(&k);
    let lower = (FpConstants::q() * lnk).exp() / (2.0 * lnk / std::f64::consts::LN_2) * c.size as f64;
    let lhs = crate::rational::floor_from_f64(lower, 1 << 20);
    let report = BoundReport::exact("fp-lower", lhs, int(c.exact));
    debug_assert!(to_f64(&report.lhs) <= lower);
    Ok(report.with_input("simplex", &format!("d={d},T={t}"), c.size).with_k(k).reported())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(fp_formula(1, 1), BigInt::from(4));
        assert_eq!(fp_formula(1, 2), BigInt::from(7));
        assert_eq!(fp_formula(0, 5), BigInt::from(1));
    }

    #[test]
    fn one_dimension_matches() {
        for t in 0..=5 {
            let c = simplex_counts(1, t).unwrap();
            assert!(c.equal, "{c:?}");
        }
    }

    #[test]
    fn two_dimensions_overcount() {
        let c = simplex_counts(2, 1).unwrap();
        assert_eq!((c.exact, c.formula.clone()), (9, BigInt::from(12)));
        assert!(c.report().pass);
    }

    #[test]
    fn lower_bound_is_report_only() {
        let r = fp_lower_bound_check(2, 4).unwrap();
        assert!(!r.asserted);
    }
}

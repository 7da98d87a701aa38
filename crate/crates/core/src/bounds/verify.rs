//! Verifiers for the dilate-sum inequalities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lemmas::plunnecke_minimizer;
use crate::rational::{frac, int, ln_rational, ratio, Rational};
use crate::report::BoundReport;
use crate::setcore::{dilate, dilate_sum, difference_set, sumset, Coord, GroupSet, Sign};

/// `q = 2 ln(1+√2) / ln 2` and `c_λ = (λ−1)/(4+8λ)`.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct FpConstants;

impl FpConstants {
    pub fn q() -> f64 {
        2.0 * std::f64::consts::SQRT_2.ln_1p() / std::f64::consts::LN_2
    }

    pub fn c_lambda(lambda: u32) -> Rational {
        ratio(lambda as i64 - 1, 4 + 8 * lambda as i64)
    }
}

fn k_of(a: &GroupSet) -> Result<Rational> {
    if a.is_empty() {
        return Err(Error::EmptyInput("doubling"));
    }
    Ok(frac(sumset(a, a)?.len(), a.len()))
}

/// `|A + 2·A| <= K^{59/20}|A|`.
pub fn verify_thm1(a: &GroupSet) -> Result<BoundReport> {
    let k = k_of(a)?;
    let lhs = dilate_sum(a, 2, a)?.len();
    Ok(BoundReport::power("thm1", int(lhs), &k, &ratio(59, 20), &int(a.len())).with_k(k))
}

/// `|A − 2·A| <= K^{59/20}|A|` with `K = max(|A+A|, |A−A|)/|A|`.
pub fn verify_thm2(a: &GroupSet) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptyInput("verify_thm2"));
    }
    let k = frac(sumset(a, a)?.len().max(difference_set(a, a)?.len()), a.len());
    let lhs = dilate_sum(a, -2, a)?.len();
    Ok(BoundReport::power("thm2", int(lhs), &k, &ratio(59, 20), &int(a.len())).with_k(k))
}

/// `|A + λ·A| <= K^{λ+1−c_λ}|A|`.
pub fn verify_large_dilates(a: &GroupSet, lambda: u32) -> Result<BoundReport> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be >= 1".into()));
    }
    let k = k_of(a)?;
    let exp = int(lambda + 1) - FpConstants::c_lambda(lambda);
    let lhs = dilate_sum(a, lambda as Coord, a)?.len();
    Ok(BoundReport::power(&format!("large-dilates:lambda={lambda}"), int(lhs), &k, &exp, &int(a.len())).with_k(k))
}

/// `|A + λ·A| <= (K|A|)^{2λ/(λ+1)}`.
pub fn verify_large_k(a: &GroupSet, lambda: u32) -> Result<BoundReport> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be >= 1".into()));
    }
    let k = k_of(a)?;
    let base = &k * int(a.len());
    let lhs = dilate_sum(a, lambda as Coord, a)?.len();
    let exp = ratio(2 * lambda, lambda + 1);
    Ok(BoundReport::power(&format!("largeK:lambda={lambda}"), int(lhs), &base, &exp, &int(1)).with_k(k))
}

/// `|U ± V| <= |U+W||V+W|/|W|`.
pub fn ruzsa_triangle_check(u: &GroupSet, v: &GroupSet, w: &GroupSet, sign: Sign) -> Result<BoundReport> {
    if w.is_empty() {
        return Err(Error::EmptyInput("ruzsa_triangle_check"));
    }
    let lhs = match sign {
        Sign::Plus => sumset(u, v)?,
        Sign::Minus => difference_set(u, v)?,
    };
    let rhs = frac(sumset(u, w)?.len() * sumset(v, w)?.len(), w.len());
    let id = match sign {
        Sign::Plus => "ruzsa-triangle:+",
        Sign::Minus => "ruzsa-triangle:-",
    };
    Ok(BoundReport::counts(id, lhs.len(), rhs))
}

/// `ln(|A+λ·A|/|A|) / ln K`; needs `K > 1`.
pub fn exponent_emp(a: &GroupSet, lambda: Coord) -> Result<f64> {
    let k = k_of(a)?;
    if k <= int(1) {
        return Err(Error::precondition("exponent_emp", "K = 1, the exponent is undefined"));
    }
    let growth = frac(dilate_sum(a, lambda, a)?.len(), a.len());
    Ok(ln_rational(&growth) / ln_rational(&k))
}

/// Which part of the dilate-sum lemma to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DilatePart {
    /// `|A + (λ₁±λ₂)·A| <= K|X+λ₁·A||X+λ₂·A|/|X| <= K^{λ₁+λ₂+1}|A|`.
    Sum { l1: u32, l2: u32 },
    /// `|A ± λ₁λ₂·A| <= |A+λ₁·X||X+λ₂·A|/|X| <= K^{λ₁+λ₂}|A|`.
    Product { l1: u32, l2: u32 },
    /// `|A ± λʲ·A| <= (|A+λ·X|/|X|)(|X+λ·X|/|X|)^{j−2}|X+λ·A| <= K^{jλ}|A|`.
    Power { lambda: u32, j: u32 },
}

impl DilatePart {
    pub fn new(part: u32, l1: u32, l2: u32, j: Option<u32>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        match part {
            1 | 2 if l1 == 0 || l2 == 0 => bad("lambda1 and lambda2 must be >= 1"),
            1 => Ok(DilatePart::Sum { l1, l2 }),
            2 => Ok(DilatePart::Product { l1, l2 }),
            3 => match j {
                Some(j) if j >= 2 && l1 >= 1 => Ok(DilatePart::Power { lambda: l1, j }),
                _ => bad("part 3 needs lambda >= 1 and j >= 2"),
            },
            _ => bad("part must be 1, 2 or 3"),
        }
    }

    fn tag(&self) -> String {
        match *self {
            DilatePart::Sum { l1, l2 } => format!("dilate-lemma:p1:l1={l1},l2={l2}"),
            DilatePart::Product { l1, l2 } => format!("dilate-lemma:p2:l1={l1},l2={l2}"),
            DilatePart::Power { lambda, j } => format!("dilate-lemma:p3:lambda={lambda},j={j}"),
        }
    }

    fn exponent(&self) -> u32 {
        match *self {
            DilatePart::Sum { l1, l2 } => l1 + l2 + 1,
            DilatePart::Product { l1, l2 } => l1 + l2,
            DilatePart::Power { lambda, j } => j * lambda,
        }
    }

    /// The dilation `μ` with the left side `|A + μ·A|` for the given sign.
    fn mu(&self, sign: Sign) -> Result<Coord> {
        let s = sign.as_i8() as Coord;
        Ok(match *self {
            DilatePart::Sum { l1, l2 } => l1 as Coord + s * l2 as Coord,
            DilatePart::Product { l1, l2 } => s * l1 as Coord * l2 as Coord,
            DilatePart::Power { lambda, j } => {
                s * (lambda as Coord).checked_pow(j).ok_or(Error::Overflow("dilate lemma"))?
            }
        })
    }

    /// The middle expression, which needs a Plünnecke minimizer `X`.
    fn middle(&self, a: &GroupSet, x: &GroupSet, k: &Rational) -> Result<Rational> {
        let nx = x.len();
        let xl = |l: u32| -> Result<usize> { Ok(dilate_sum(x, l as Coord, a)?.len()) };
        let al = |l: u32| -> Result<usize> { Ok(sumset(a, &dilate(l as Coord, x)?)?.len()) };
        Ok(match *self {
            DilatePart::Sum { l1, l2 } => k * frac(xl(l1)? * xl(l2)?, nx),
            DilatePart::Product { l1, l2 } => frac(al(l1)? * xl(l2)?, nx),
            DilatePart::Power { lambda, j } => {
                let xlx = sumset(x, &dilate(lambda as Coord, x)?)?.len();
                let head = frac(al(lambda)?, nx);
                let mid = num_traits::pow::Pow::pow(&frac(xlx, nx), j - 2);
                head * mid * int(xl(lambda)?)
            }
        })
    }
}

/// Checks one part of the dilate-sum lemma for both signs.
///
/// The K-power bound is always asserted. When `|A| <= exact_limit` the
/// minimizer `X` is exact and two more asserted reports per sign cover the
/// middle expression: left side against it (`…:mid`) and it against the
/// K-power (`…:chain`).
pub fn verify_dilate_lemma(a: &GroupSet, part: DilatePart, exact_limit: usize) -> Result<Vec<BoundReport>> {
    let k = k_of(a)?;
    let exp = int(part.exponent());
    let na = int(a.len());
    let x = (a.len() <= exact_limit).then(|| plunnecke_minimizer(a, a, exact_limit)).transpose()?;
    let middle = x.as_ref().map(|m| part.middle(a, &m.x, &k)).transpose()?;
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let tag = format!("{}:{}", part.tag(), if sign == Sign::Plus { '+' } else { '-' });
        let lhs = int(dilate_sum(a, part.mu(sign)?, a)?.len());
        if let Some(mid) = &middle {
            out.push(BoundReport::exact(&format!("{tag}:mid"), lhs.clone(), mid.clone()).with_k(k.clone()));
            out.push(BoundReport::power(&format!("{tag}:chain"), mid.clone(), &k, &exp, &na).with_k(k.clone()));
        }
        out.push(BoundReport::power(&format!("{tag}:final"), lhs, &k, &exp, &na).with_k(k.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{gen_geometric, gen_hypercube, gen_interval};

    #[test]
    fn constants() {
        assert_eq!(FpConstants::c_lambda(2), ratio(1, 20));
        assert_eq!(FpConstants::c_lambda(3), ratio(1, 14));
        assert_eq!(FpConstants::c_lambda(5), ratio(1, 11));
        assert_eq!(FpConstants::c_lambda(1), int(0));
        let q = FpConstants::q();
        assert!(q > 2.5431 && q < 2.5432);
    }

    #[test]
    fn thm1_examples() {
        let r = verify_thm1(&GroupSet::from_ints([0])).unwrap();
        assert!(r.pass && r.lhs == int(1));
        let r = verify_thm1(&gen_hypercube(4, true).unwrap()).unwrap();
        assert_eq!(r.lhs, int(256));
        assert_eq!(r.k, Some(ratio(81, 16)));
        assert!(r.pass && r.rhs > 1800.0 && r.rhs < 2000.0);
        let r = verify_thm1(&gen_geometric(3, 6).unwrap()).unwrap();
        assert_eq!(r.lhs, int(36));
        assert_eq!(r.k, Some(ratio(7, 2)));
    }

    #[test]
    fn thm2_interval() {
        let r = verify_thm2(&gen_interval(16)).unwrap();
        assert_eq!(r.lhs, int(46));
        assert!(r.pass);
    }

    #[test]
    fn large_dilates_lambda_one() {
        let r = verify_large_dilates(&gen_interval(8), 1).unwrap();
        assert_eq!(r.lhs, int(15));
        assert_eq!(r.rhs_exact, Some(ratio(225, 8)));
        let r = verify_large_dilates(&gen_interval(16), 3).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn large_k_pair() {
        let r = verify_large_k(&GroupSet::from_ints([0, 1]), 2).unwrap();
        assert_eq!(r.lhs, int(4));
        assert!(r.pass && (r.rhs - 4.3267).abs() < 1e-3);
    }

    #[test]
    fn ruzsa_interval() {
        let i = gen_interval(6);
        let r = ruzsa_triangle_check(&i, &i, &i, Sign::Minus).unwrap();
        assert_eq!(r.lhs, int(11));
        assert_eq!(r.rhs_exact, Some(ratio(121, 6)));
    }

    #[test]
    fn exponents() {
        let e = exponent_emp(&gen_hypercube(3, true).unwrap(), 2).unwrap();
        assert!((e - 2f64.ln() / 1.5f64.ln()).abs() < 1e-12);
        let e = exponent_emp(&gen_geometric(3, 6).unwrap(), 2).unwrap();
        assert!((e - 6f64.ln() / 3.5f64.ln()).abs() < 1e-12);
        assert!(exponent_emp(&GroupSet::from_ints([4]), 2).is_err());
    }

    #[test]
    fn dilate_lemma_parts() {
        let a = gen_interval(12);
        for part in [
            DilatePart::new(2, 2, 3, None).unwrap(),
            DilatePart::new(3, 2, 0, Some(2)).unwrap(),
            DilatePart::new(1, 1, 6, None).unwrap(),
        ] {
            let reports = verify_dilate_lemma(&a, part, 16).unwrap();
            assert_eq!(reports.len(), 6);
            assert!(reports.iter().all(|r| r.pass), "{reports:#?}");
        }
        assert!(DilatePart::new(3, 2, 0, Some(1)).is_err());
    }
}

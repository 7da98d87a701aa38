//! Verified inequality instances and lightweight named checks.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, le_scaled_power, round_up, scaled_power_f64, to_f64, Rational};

/// One inequality instance `lhs <= rhs`.
///
/// `pass` is decided exactly whenever the right side is rational or a
/// rational power of a rational; `rhs` itself is a float rounded up for
/// display, with `rhs_exact` carrying the exact value when there is one.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub family: String,
    pub params: String,
    pub size: usize,
    #[serde(rename = "K", with = "crate::rational::serde_rational::option")]
    pub k: Option<Rational>,
    #[serde(with = "crate::rational::serde_rational")]
    pub lhs: Rational,
    pub rhs: f64,
    #[serde(with = "crate::rational::serde_rational::option")]
    pub rhs_exact: Option<Rational>,
    pub ratio: f64,
    pub pass: bool,
    /// Asserted reports are theorem-exact; a failure is fatal.
    pub asserted: bool,
}

impl BoundReport {
    fn base(id: &str, lhs: Rational, rhs: f64, rhs_exact: Option<Rational>, pass: bool) -> Self {
        let ratio = if rhs > 0.0 { to_f64(&lhs) / rhs } else { f64::INFINITY };
        BoundReport {
            id: id.to_string(),
            family: String::new(),
            params: String::new(),
            size: 0,
            k: None,
            lhs,
            rhs,
            rhs_exact,
            ratio,
            pass,
            asserted: true,
        }
    }

    /// `lhs <= rhs` with both sides exact.
    pub fn exact(id: &str, lhs: Rational, rhs: Rational) -> Self {
        let pass = lhs <= rhs;
        Self::base(id, lhs, round_up(to_f64(&rhs)), Some(rhs), pass)
    }

    /// `lhs <= factor * base^exp`, decided exactly.
    pub fn power(id: &str, lhs: Rational, base: &Rational, exp: &Rational, factor: &Rational) -> Self {
        let pass = le_scaled_power(&lhs, base, exp, factor);
        let rhs_exact = exp.is_integer().then(|| {
            let e = exp.to_integer().to_i32().expect("small integer exponent");
            num_traits::pow::Pow::pow(base, e) * factor
        });
        let rhs = match &rhs_exact {
            Some(r) => round_up(to_f64(r)),
            None => scaled_power_f64(base, exp, factor),
        };
        Self::base(id, lhs, rhs, rhs_exact, pass)
    }

    /// `lhs <= rhs` with a transcendental right side evaluated in floats.
    pub fn float(id: &str, lhs: Rational, rhs: f64) -> Self {
        let rhs = round_up(rhs);
        let pass = to_f64(&lhs) <= rhs;
        Self::base(id, lhs, rhs, None, pass)
    }

    pub fn counts(id: &str, lhs: usize, rhs: Rational) -> Self {
        Self::exact(id, int(lhs), rhs)
    }

    pub fn with_input(mut self, family: &str, params: &str, size: usize) -> Self {
        self.family = family.to_string();
        self.params = params.to_string();
        self.size = size;
        self
    }

    pub fn with_k(mut self, k: Rational) -> Self {
        self.k = Some(k);
        self
    }

    pub fn reported(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn asserted_if(mut self, asserted: bool) -> Self {
        self.asserted = asserted;
        self
    }

    /// True when this report is asserted and fails.
    pub fn is_violation(&self) -> bool {
        self.asserted && !self.pass
    }

    /// Turns a failed asserted report into an error.
    pub fn enforce(self, op: &'static str) -> Result<Self> {
        if self.is_violation() {
            return Err(Error::assertion(
                op,
                format!("{}: {} > {}", self.id, crate::rational::format_rational(&self.lhs), self.rhs),
            ));
        }
        Ok(self)
    }
}

/// A named comparison recorded by a lemma pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub bound: f64,
    pub pass: bool,
    pub hard: bool,
}

/// Collects checks for one pipeline stage.
///
/// Hard checks fail immediately. Soft checks are recorded; in strict mode
/// [`Checks::finish`] turns any soft failure into an error.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    /// Records a hard `value <= bound` whose outcome the caller decided.
    pub fn hard(&mut self, op: &'static str, name: &str, value: f64, bound: f64, pass: bool) -> Result<()> {
        self.0.push(Check { name: name.into(), value, relation: "<=", bound, pass, hard: true });
        if !pass {
            return Err(Error::assertion(op, format!("{name}: {value} > {bound}")));
        }
        Ok(())
    }

    /// Hard check on exact rationals `lhs <= rhs`.
    pub fn hard_le(&mut self, op: &'static str, name: &str, lhs: &Rational, rhs: &Rational) -> Result<()> {
        self.hard(op, name, to_f64(lhs), to_f64(rhs), lhs <= rhs)
    }

    /// Soft `value <= bound`.
    pub fn soft(&mut self, name: &str, value: f64, bound: f64) {
        let pass = value <= round_up(bound);
        self.0.push(Check { name: name.into(), value, relation: "<=", bound, pass, hard: false });
    }

    /// Soft `value >= bound`.
    pub fn soft_ge(&mut self, name: &str, value: f64, bound: f64) {
        let pass = value >= bound - bound.abs() * 1e-12;
        self.0.push(Check { name: name.into(), value, relation: ">=", bound, pass, hard: false });
    }

    pub fn extend(&mut self, other: &Checks) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn soft_failures(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| !c.hard && !c.pass)
    }

    pub fn finish(&self, op: &'static str, strict: bool) -> Result<()> {
        if strict {
            if let Some(c) = self.soft_failures().next() {
                return Err(Error::assertion(
                    op,
                    format!("strict mode: {} ({} {} {})", c.name, c.value, c.relation, c.bound),
                ));
            }
        }
        Ok(())
    }
}

pub(crate) fn nonzero_or_inf(r: &Rational) -> f64 {
    if r.is_zero() {
        f64::INFINITY
    } else {
        to_f64(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn exact_and_power_reports() {
        let r = BoundReport::counts("x", 22, ratio(225, 8));
        assert!(r.pass && r.rhs >= 28.125);
        let r = BoundReport::power("y", int(22), &ratio(15, 8), &int(2), &int(8));
        assert!(r.pass);
        assert_eq!(r.rhs_exact, Some(ratio(225, 8)));
        let r = BoundReport::power("z", int(5), &int(4), &ratio(1, 2), &int(2));
        assert!(!r.pass && r.rhs_exact.is_none());
    }

    #[test]
    fn enforce_only_fails_asserted() {
        let bad = BoundReport::counts("bad", 3, int(2));
        assert!(bad.clone().reported().enforce("t").is_ok());
        assert!(bad.enforce("t").is_err());
    }

    #[test]
    fn strict_mode_escalates_soft_failures() {
        let mut c = Checks::default();
        c.soft("s", 2.0, 1.0);
        assert!(c.finish("t", false).is_ok());
        assert!(c.finish("t", true).is_err());
        assert!(c.hard("t", "h", 2.0, 1.0, false).is_err());
    }
}

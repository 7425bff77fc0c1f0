//! Exact arithmetic in ℤ[v,v⁻¹] and rational graded-rank series.

use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of ℤ[v,v⁻¹]. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    /// c·v^e
    pub fn monomial(exp: i32, coeff: i64) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn v(exp: i32) -> LaurentPoly {
        LaurentPoly::monomial(exp, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        *self.coeffs.get(&exp).unwrap_or(&0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Exact division; Err(NonDivisible) if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        if rhs.is_zero() {
            return Err(Error::NonDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let (dexp, dcoeff) = {
            let e = rhs.max_exp().unwrap();
            (e, rhs.coeff(e))
        };
        // any exact quotient has exponents ≥ min_exp(self) − min_exp(rhs)
        let qe_floor = self.min_exp().unwrap() - rhs.min_exp().unwrap();
        while !rem.is_zero() {
            let e = rem.max_exp().unwrap();
            let c = rem.coeff(e);
            let qe = e - dexp;
            if c % dcoeff != 0 || qe < qe_floor {
                return Err(Error::NonDivisible);
            }
            let qc = c / dcoeff;
            quot.add_term(qe, qc);
            let piece = rhs * &LaurentPoly::monomial(qe, qc);
            rem = &rem - &piece;
        }
        Ok(quot)
    }

    /// Substitute v ↦ v⁻¹.
    pub fn bar(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(-e, c);
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let abs = c.abs();
            let body = match e {
                0 => format!("{abs}"),
                1 if abs == 1 => "v".to_string(),
                1 => format!("{abs}v"),
                _ if abs == 1 => format!("v^{e}"),
                _ => format!("{abs}v^{e}"),
            };
            if i > 0 {
                write!(f, " {sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// An exact rational function num/den over ℤ[v,v⁻¹], used for graded
/// dimensions of infinite-dimensional graded modules. Equality is tested
/// by cross-multiplication; no normal form is maintained.
#[derive(Clone, Debug, Serialize)]
pub struct GradedSeries {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl GradedSeries {
    pub fn zero() -> GradedSeries {
        GradedSeries { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> GradedSeries {
        GradedSeries { num: p, den: LaurentPoly::one() }
    }

    /// gd(R) for R a polynomial ring on `nvars` variables of degree 2:
    /// 1/(1-v²)^nvars.
    pub fn gd_poly_ring(nvars: usize) -> GradedSeries {
        let one_minus_v2 = &LaurentPoly::one() - &LaurentPoly::v(2);
        let mut den = LaurentPoly::one();
        for _ in 0..nvars {
            den = &den * &one_minus_v2;
        }
        GradedSeries { num: LaurentPoly::one(), den }
    }

    pub fn scale(&self, p: &LaurentPoly) -> GradedSeries {
        GradedSeries { num: &self.num * p, den: self.den.clone() }
    }

    pub fn div_poly(&self, p: &LaurentPoly) -> GradedSeries {
        GradedSeries { num: self.num.clone(), den: &self.den * p }
    }

    pub fn add(&self, rhs: &GradedSeries) -> GradedSeries {
        if self.den == rhs.den {
            return GradedSeries { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        // graded-rank denominators in this crate divide one another, so
        // prefer rescaling over blind cross-multiplication
        if let Ok(q) = self.den.div_exact(&rhs.den) {
            return GradedSeries { num: &self.num + &(&rhs.num * &q), den: self.den.clone() };
        }
        if let Ok(q) = rhs.den.div_exact(&self.den) {
            return GradedSeries { num: &(&self.num * &q) + &rhs.num, den: rhs.den.clone() };
        }
        GradedSeries {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &GradedSeries) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for GradedSeries {}

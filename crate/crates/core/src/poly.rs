//! Exact multivariate polynomials over ℚ in the simple-root variables,
//! graded with deg α_s = 2.

use crate::{Error, Result};
use num::rational::Ratio;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalars. 128-bit headroom is plenty at desk scale, and
/// overflow checks stay on in every build profile so an overflow can
/// never silently corrupt a result.
pub type Q = Ratio<i128>;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(n as i128)
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(n as i128, d as i128)
}

/// Monomial = exponent vector over the variables α_0..α_{n-1}.
pub type Mono = Vec<u8>;

/// A polynomial in the α-variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, q_int(1))
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { terms }
    }

    /// The variable α_g.
    pub fn var(nvars: usize, g: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[g] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, q_int(1));
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Formal degree of the top homogeneous component (deg α = 2);
    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| 2 * m.iter().map(|&e| e as i64).sum::<i64>()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().map(|&e| e as i64).sum::<i64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous component of formal degree d.
    pub fn component(&self, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| 2 * m.iter().map(|&e| e as i64).sum::<i64>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The positive-degree part (polynomial minus its constant term).
    pub fn positive_part(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().any(|&e| e > 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division by the variable α_g. Errs unless every monomial
    /// contains α_g.
    pub fn div_var(&self, g: usize) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m[g] == 0 {
                return Err(Error::NonDivisible);
            }
            let mut m2 = m.clone();
            m2[g] -= 1;
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Linear substitution α_g ↦ images[g] (a linear polynomial), extended
    /// multiplicatively. Used for the W-action on Sym(V).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let nvars = images.len();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(nvars, c.clone());
            for (g, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[g]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficient of α_g in a linear polynomial.
    pub fn linear_coeff(&self, g: usize, nvars: usize) -> Q {
        let mut m = vec![0; nvars];
        m[g] = 1;
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    /// All coordinates nonnegative / nonpositive test for linear forms.
    pub fn linear_sign(&self, nvars: usize) -> Option<bool> {
        let mut pos = false;
        let mut neg = false;
        for g in 0..nvars {
            let c = self.linear_coeff(g, nvars);
            if c.is_positive() {
                pos = true;
            }
            if c.is_negative() {
                neg = true;
            }
        }
        match (pos, neg) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut body = String::new();
            for (g, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !body.is_empty() {
                    body.push('·');
                }
                if e == 1 {
                    body.push_str(&format!("a{}", names[g]));
                } else {
                    body.push_str(&format!("a{}^{}", names[g], e));
                }
            }
            let piece = if body.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                body
            } else if (-c.clone()).is_one() {
                format!("-{body}")
            } else {
                format!("{c}·{body}")
            };
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(g, &e)| if e == 1 { format!("a{g}") } else { format!("a{g}^{e}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}·{}", vars.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All monomials of α-degree exactly d in n variables, lexicographically.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; nvars];
    fn rec(cur: &mut Mono, pos: usize, left: usize, out: &mut Vec<Mono>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u8;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u8;
            rec(cur, pos + 1, left - e, out);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut cur, 0, d, &mut out);
    out.sort();
    out
}

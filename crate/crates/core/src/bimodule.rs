//! Concrete singular Bott-Samelson bimodules: canonical free-left-module
//! bases, normal forms, elements, and the Frobenius structure maps and
//! crossings as executable maps on elements.
//!
//! BS(I_•) is stored through its canonical basis as a free left
//! R^{I_0}-module: one Frobenius basis element per down step (up steps
//! contribute the trivial junction). Morphisms are never materialized as
//! matrices; they are applied to finite elements.

use crate::cosets::{Expression, Step};
use crate::invariants::{FrobeniusData, Realization};
use crate::poly::Poly;
use crate::subset::Subset;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Basis index: one entry per step of the expression; up steps are always 0.
pub type BasisIdx = Vec<u16>;

/// A Bott-Samelson bimodule with its per-step Frobenius bases fixed.
#[derive(Clone)]
pub struct BSSpace {
    pub expr: Expression,
    pub subsets: Vec<Subset>,
    /// For each step k (1-based step = index k-1 here): Some(fd) when the
    /// step is a removal, with fd the basis of R^{I_k} over R^{I_{k-1}}.
    pub junctions: Vec<Option<Arc<FrobeniusData>>>,
}

impl BSSpace {
    pub fn new(real: &Realization, expr: Expression) -> BSSpace {
        let subsets = expr.subsets();
        let mut junctions = Vec::with_capacity(expr.steps.len());
        for (k, &st) in expr.steps.iter().enumerate() {
            match st {
                Step::Add(_) => junctions.push(None),
                Step::Remove(_) => {
                    junctions.push(Some(real.frobenius(subsets[k + 1], subsets[k])));
                }
            }
        }
        BSSpace { expr, subsets, junctions }
    }

    pub fn slots(&self) -> usize {
        self.expr.steps.len() + 1
    }

    /// Grading shift σ = ½(ℓ(L_•) + ℓ(I_0) − ℓ(I_m)).
    pub fn sigma(&self, real: &Realization) -> i64 {
        let sys = &real.sys;
        let total = self.expr.length(sys) + sys.len_longest(self.expr.start) as i64
            - sys.len_longest(self.expr.end()) as i64;
        debug_assert_eq!(total % 2, 0);
        total / 2
    }

    /// All canonical basis indices (product over down steps).
    pub fn basis_indices(&self) -> Vec<BasisIdx> {
        let mut out: Vec<BasisIdx> = vec![vec![]];
        for j in &self.junctions {
            let rank = j.as_ref().map_or(1, |fd| fd.rank());
            let mut next = Vec::with_capacity(out.len() * rank);
            for idx in &out {
                for r in 0..rank {
                    let mut v = idx.clone();
                    v.push(r as u16);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// The pure tensor realizing a basis index with coefficient `coeff`.
    pub fn tensor_of(&self, real: &Realization, idx: &BasisIdx, coeff: &Poly) -> Vec<Poly> {
        let mut slots = vec![real.one(); self.slots()];
        slots[0] = coeff.clone();
        for (k, j) in self.junctions.iter().enumerate() {
            if let Some(fd) = j {
                slots[k + 1] = fd.basis[idx[k] as usize].clone();
            }
        }
        slots
    }

    /// Raw tensor degree of a basis element (before the σ shift).
    pub fn basis_raw_degree(&self, idx: &BasisIdx) -> i64 {
        let mut d = 0;
        for (k, j) in self.junctions.iter().enumerate() {
            if let Some(fd) = j {
                d += fd.basis[idx[k] as usize].degree().unwrap_or(0);
            }
        }
        d
    }
}

/// An element of a Bott-Samelson bimodule in canonical coordinates:
/// finitely many basis indices with coefficients in R^{I_0}.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BSElement {
    pub coeffs: BTreeMap<BasisIdx, Poly>,
}

impl BSElement {
    pub fn zero() -> BSElement {
        BSElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, idx: BasisIdx, c: Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Poly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            let key = self
                .coeffs
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, rhs: &BSElement) -> BSElement {
        let mut out = self.clone();
        for (i, c) in &rhs.coeffs {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &BSElement) -> BSElement {
        let mut out = self.clone();
        for (i, c) in &rhs.coeffs {
            out.add_term(i.clone(), c.neg());
        }
        out
    }

    /// Left action of f ∈ R^{I_0}.
    pub fn scale(&self, f: &Poly) -> BSElement {
        let mut out = BSElement::zero();
        for (i, c) in &self.coeffs {
            out.add_term(i.clone(), c.mul(f));
        }
        out
    }

    /// Degree (with the σ shift); None for zero or inhomogeneous elements.
    pub fn degree(&self, real: &Realization, space: &BSSpace) -> Option<i64> {
        let mut deg = None;
        for (idx, c) in &self.coeffs {
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree()? + space.basis_raw_degree(idx) - space.sigma(real);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn display(&self, real: &Realization) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = &real.sys.matrix.names;
        self.coeffs
            .iter()
            .map(|(idx, c)| format!("[{}]·({})", idx.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), c.display(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self, real: &Realization) -> serde_json::Value {
        let names = &real.sys.matrix.names;
        let items: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                serde_json::json!({ "basis_index": idx, "coeff": c.display(names) })
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

/// 1^⊗ = 1 ⊗ 1 ⊗ ... ⊗ 1.
pub fn one_tensor(real: &Realization, space: &BSSpace) -> BSElement {
    let mut idx = vec![0u16; space.expr.steps.len()];
    for (k, j) in space.junctions.iter().enumerate() {
        if let Some(fd) = j {
            idx[k] = fd.unit_index as u16;
        }
    }
    let mut out = BSElement::zero();
    out.add_term(idx, real.one());
    // degree sanity: deg(1^⊗) = −σ
    debug_assert_eq!(out.degree(real, space), Some(-space.sigma(real)));
    out
}

/// Rewrite a pure tensor f_0 ⊗ ... ⊗ f_d into canonical coordinates,
/// expanding right-to-left over the junction bases.
pub fn normal_form(real: &Realization, space: &BSSpace, slots: &[Poly]) -> Result<BSElement> {
    normal_form_hinted(real, space, slots, None)
}

/// Like `normal_form`, but with a hint index: a down-junction slot whose
/// content literally equals its hinted basis element expands trivially,
/// skipping the Frobenius traces. Sound because the dual-basis expansion
/// of a basis element is itself.
pub fn normal_form_hinted(
    real: &Realization,
    space: &BSSpace,
    slots: &[Poly],
    hint: Option<&BasisIdx>,
) -> Result<BSElement> {
    let d = space.expr.steps.len();
    if slots.len() != d + 1 {
        return Err(Error::PositionMismatch(slots.len()));
    }
    for (k, f) in slots.iter().enumerate() {
        if !real.is_invariant(f, space.subsets[k]) {
            return Err(Error::NotInvariant);
        }
    }
    let mut work: Vec<(BasisIdx, Vec<Poly>)> = vec![(vec![0u16; d], slots.to_vec())];
    for k in (1..=d).rev() {
        let mut next = Vec::new();
        for (idx, mut slots) in work {
            let g = std::mem::replace(&mut slots[k], real.one());
            match &space.junctions[k - 1] {
                None => {
                    // up junction: R^{I_k} = R^{M_k}, slide left
                    slots[k - 1] = slots[k - 1].mul(&g);
                    next.push((idx, slots));
                }
                Some(fd) => {
                    if let Some(h) = hint {
                        let j = h[k - 1] as usize;
                        if fd.basis.get(j).is_some_and(|b| g == *b) {
                            let mut idx2 = idx;
                            idx2[k - 1] = j as u16;
                            next.push((idx2, slots));
                            continue;
                        }
                    }
                    // g = Σ_j ∂(g·d_j)·c_j with coefficients pushed left
                    for (j, dual) in fd.dual.iter().enumerate() {
                        let kappa = real.trace(fd.small, fd.big, &g.mul(dual))?;
                        if kappa.is_zero() {
                            continue;
                        }
                        let mut idx2 = idx.clone();
                        idx2[k - 1] = j as u16;
                        let mut slots2 = slots.clone();
                        slots2[k - 1] = slots2[k - 1].mul(&kappa);
                        next.push((idx2, slots2));
                    }
                }
            }
        }
        work = next;
    }
    let mut out = BSElement::zero();
    for (idx, slots) in work {
        out.add_term(idx, slots[0].clone());
    }
    Ok(out)
}

/// Generator boxes of the diagrammatic calculus, acting on elements.
#[derive(Clone, PartialEq, Debug)]
pub enum GenBox {
    /// m: [X, Xs, X] → [X]; degree ℓ(Xs) − ℓ(X)
    CwCap { s: usize },
    /// Δ: [X] → [X, Xs, X]; degree ℓ(Xs) − ℓ(X)
    CwCup { s: usize },
    /// ∂: [Xs, X, Xs] → [Xs]; degree ℓ(X) − ℓ(Xs)
    CcwCap { s: usize },
    /// ι: [Xs] → [Xs, X, Xs]; degree ℓ(X) − ℓ(Xs)
    CcwCup { s: usize },
    /// [X, Xt, Xst] → [X, Xs, Xst]; degree 0
    CrossUp { s: usize, t: usize },
    /// [Xst, Xs, X] → [Xst, Xt, X]; degree 0
    CrossDown { s: usize, t: usize },
    /// [Xs, Xst, Xt] → [Xs, X, Xt]; degree big + small − mediums
    CrossRight { s: usize, t: usize },
    /// [Xs, X, Xt] → [Xs, Xst, Xt]; degree big + small − mediums
    CrossLeft { s: usize, t: usize },
    /// polynomial in the region at the given position; degree deg f
    PolyBox { f: Poly },
}

impl GenBox {
    /// Steps consumed from the source expression.
    pub fn arity_in(&self) -> usize {
        match self {
            GenBox::CwCap { .. } | GenBox::CcwCap { .. } => 2,
            GenBox::CwCup { .. } | GenBox::CcwCup { .. } => 0,
            GenBox::PolyBox { .. } => 0,
            _ => 2,
        }
    }

    /// The dual box under the flip-and-reverse-orientation functor.
    pub fn dual(&self) -> GenBox {
        match self.clone() {
            GenBox::CwCap { s } => GenBox::CwCup { s },
            GenBox::CwCup { s } => GenBox::CwCap { s },
            GenBox::CcwCap { s } => GenBox::CcwCup { s },
            GenBox::CcwCup { s } => GenBox::CcwCap { s },
            GenBox::CrossUp { s, t } => GenBox::CrossUp { s: t, t: s },
            GenBox::CrossDown { s, t } => GenBox::CrossDown { s: t, t: s },
            GenBox::CrossRight { s, t } => GenBox::CrossLeft { s, t },
            GenBox::CrossLeft { s, t } => GenBox::CrossRight { s, t },
            GenBox::PolyBox { f } => GenBox::PolyBox { f },
        }
    }

    pub fn tag(&self) -> String {
        match self {
            GenBox::CwCap { s } => format!("cwcap{s}"),
            GenBox::CwCup { s } => format!("cwcup{s}"),
            GenBox::CcwCap { s } => format!("ccwcap{s}"),
            GenBox::CcwCup { s } => format!("ccwcup{s}"),
            GenBox::CrossUp { s, t } => format!("x^{s}{t}"),
            GenBox::CrossDown { s, t } => format!("xv{s}{t}"),
            GenBox::CrossRight { s, t } => format!("x>{s}{t}"),
            GenBox::CrossLeft { s, t } => format!("x<{s}{t}"),
            GenBox::PolyBox { .. } => "poly".to_string(),
        }
    }
}

/// Validate a box at region position `pos` of `src` and produce the target
/// expression together with the box degree.
pub fn box_signature(
    real: &Realization,
    src: &Expression,
    pos: usize,
    gbox: &GenBox,
) -> Result<(Expression, i64)> {
    let sys = &real.sys;
    let subs = src.subsets();
    let err = || Error::PositionMismatch(pos);
    if pos >= subs.len() {
        return Err(err());
    }
    let x = subs[pos];
    let splice = |replacement: Vec<Step>, consumed: usize| -> Expression {
        let mut steps = src.steps[..pos].to_vec();
        steps.extend(replacement);
        steps.extend_from_slice(&src.steps[pos + consumed..]);
        Expression { start: src.start, steps }
    };
    let ll = |k: Subset| sys.len_longest(k) as i64;
    match gbox {
        GenBox::CwCap { s } => {
            if pos + 2 >= subs.len()
                || x.contains(*s)
                || subs[pos + 1] != x.with(*s)
                || subs[pos + 2] != x
            {
                return Err(err());
            }
            Ok((splice(vec![], 2), ll(x.with(*s)) - ll(x)))
        }
        GenBox::CwCup { s } => {
            if x.contains(*s) {
                return Err(err());
            }
            Ok((splice(vec![Step::Add(*s), Step::Remove(*s)], 0), ll(x.with(*s)) - ll(x)))
        }
        GenBox::CcwCap { s } => {
            if pos + 2 >= subs.len()
                || !x.contains(*s)
                || subs[pos + 1] != x.without(*s)
                || subs[pos + 2] != x
            {
                return Err(err());
            }
            Ok((splice(vec![], 2), ll(x.without(*s)) - ll(x)))
        }
        GenBox::CcwCup { s } => {
            if !x.contains(*s) {
                return Err(err());
            }
            Ok((splice(vec![Step::Remove(*s), Step::Add(*s)], 0), ll(x.without(*s)) - ll(x)))
        }
        GenBox::CrossUp { s, t } => {
            if pos + 2 >= subs.len()
                || x.contains(*s)
                || x.contains(*t)
                || subs[pos + 1] != x.with(*t)
                || subs[pos + 2] != x.with(*t).with(*s)
            {
                return Err(err());
            }
            Ok((splice(vec![Step::Add(*s), Step::Add(*t)], 2), 0))
        }
        GenBox::CrossDown { s, t } => {
            // source [Xst, Xs, X]: steps (−t, −s); target (−s, −t)
            if pos + 2 >= subs.len()
                || !x.contains(*s)
                || !x.contains(*t)
                || subs[pos + 1] != x.without(*t)
                || subs[pos + 2] != x.without(*t).without(*s)
            {
                return Err(err());
            }
            Ok((splice(vec![Step::Remove(*s), Step::Remove(*t)], 2), 0))
        }
        GenBox::CrossRight { s, t } => {
            // [Xs, Xst, Xt]: +t then −s
            if pos + 2 >= subs.len() || !x.contains(*s) || x.contains(*t) {
                return Err(err());
            }
            let base = x.without(*s);
            if subs[pos + 1] != x.with(*t) || subs[pos + 2] != base.with(*t) {
                return Err(err());
            }
            let deg = ll(x.with(*t)) + ll(base) - ll(x) - ll(base.with(*t));
            Ok((splice(vec![Step::Remove(*s), Step::Add(*t)], 2), deg))
        }
        GenBox::CrossLeft { s, t } => {
            // [Xs, X∖s, (X∖s)t]: −s then +t
            if pos + 2 >= subs.len() || !x.contains(*s) || x.contains(*t) {
                return Err(err());
            }
            let base = x.without(*s);
            if subs[pos + 1] != base || subs[pos + 2] != base.with(*t) {
                return Err(err());
            }
            let deg = ll(x.with(*t)) + ll(base) - ll(x) - ll(base.with(*t));
            Ok((splice(vec![Step::Add(*t), Step::Remove(*s)], 2), deg))
        }
        GenBox::PolyBox { f } => {
            if !real.is_invariant(f, x) {
                return Err(Error::NotInvariant);
            }
            Ok((src.clone(), f.degree().unwrap_or(0)))
        }
    }
}

/// Apply a generator box to an element; returns the image in the target
/// space (which the caller derives via `box_signature`).
pub fn apply_box(
    real: &Realization,
    src_space: &BSSpace,
    tgt_space: &BSSpace,
    pos: usize,
    gbox: &GenBox,
    elem: &BSElement,
) -> Result<BSElement> {
    let arity_in = gbox.arity_in();
    let arity_out = tgt_space.expr.steps.len() + arity_in - src_space.expr.steps.len();
    let mut out = BSElement::zero();
    for (idx, coeff) in &elem.coeffs {
        let slots = src_space.tensor_of(real, idx, coeff);
        // untouched slots keep their canonical indices; the hint lets the
        // normal form skip them
        let mut hint: BasisIdx = idx[..pos].to_vec();
        hint.extend(std::iter::repeat(0).take(arity_out));
        hint.extend_from_slice(&idx[pos + arity_in..]);
        for new_slots in transform_tensor(real, src_space, pos, gbox, &slots)? {
            let nf = normal_form_hinted(real, tgt_space, &new_slots, Some(&hint))?;
            out = out.add(&nf);
        }
    }
    Ok(out)
}

fn transform_tensor(
    real: &Realization,
    src_space: &BSSpace,
    pos: usize,
    gbox: &GenBox,
    slots: &[Poly],
) -> Result<Vec<Vec<Poly>>> {
    let x = src_space.subsets[pos];
    let splice3to1 = |v: Poly| -> Vec<Poly> {
        let mut out = slots[..pos].to_vec();
        out.push(v);
        out.extend_from_slice(&slots[pos + 3..]);
        out
    };
    let splice1to3 = |a: Poly, b: Poly, c: Poly| -> Vec<Poly> {
        let mut out = slots[..pos].to_vec();
        out.push(a);
        out.push(b);
        out.push(c);
        out.extend_from_slice(&slots[pos + 1..]);
        out
    };
    let splice3to3 = |a: Poly, b: Poly, c: Poly| -> Vec<Poly> {
        let mut out = slots[..pos].to_vec();
        out.push(a);
        out.push(b);
        out.push(c);
        out.extend_from_slice(&slots[pos + 3..]);
        out
    };
    match gbox {
        GenBox::CwCap { .. } => {
            let v = slots[pos].mul(&slots[pos + 1]).mul(&slots[pos + 2]);
            Ok(vec![splice3to1(v)])
        }
        GenBox::CwCup { s } => {
            let fd = real.frobenius(x, x.with(*s));
            let a = &slots[pos];
            Ok(fd
                .coproduct()
                .map(|(c, d)| splice1to3(a.mul(c), real.one(), d.clone()))
                .collect())
        }
        GenBox::CcwCap { s } => {
            let tr = real.trace(x.without(*s), x, &slots[pos + 1])?;
            let v = slots[pos].mul(&tr).mul(&slots[pos + 2]);
            Ok(vec![splice3to1(v)])
        }
        GenBox::CcwCup { .. } => {
            Ok(vec![splice1to3(slots[pos].clone(), real.one(), real.one())])
        }
        GenBox::CrossUp { .. } => {
            // (a, b, c) ↦ (a·b, 1, c)
            Ok(vec![splice3to3(slots[pos].mul(&slots[pos + 1]), real.one(), slots[pos + 2].clone())])
        }
        GenBox::CrossDown { .. } => {
            // (a, b, c) ↦ (a, 1, b·c)
            Ok(vec![splice3to3(slots[pos].clone(), real.one(), slots[pos + 1].mul(&slots[pos + 2]))])
        }
        GenBox::CrossRight { .. } => {
            // (a, b, c) ↦ (1, a·b·c, 1)
            let v = slots[pos].mul(&slots[pos + 1]).mul(&slots[pos + 2]);
            Ok(vec![splice3to3(real.one(), v, real.one())])
        }
        GenBox::CrossLeft { s, t } => {
            // (a, b, c) ↦ Σ (a·u_i, 1, v_i·c) with Σ u⊗v = ∂Δ^X_{Xst}(b)
            let a = &slots[pos];
            let b = &slots[pos + 1];
            let c = &slots[pos + 2];
            let pairs = del_delta(real, x.without(*s), *s, *t, b)?;
            Ok(pairs
                .into_iter()
                .map(|(u, v)| splice3to3(a.mul(&u), real.one(), v.mul(c)))
                .collect())
        }
        GenBox::PolyBox { f } => {
            let mut out = slots.to_vec();
            out[pos] = out[pos].mul(f);
            Ok(vec![out])
        }
    }
}

/// ∂Δ^X_{Xst}(g) ∈ R^{Xs} ⊗_{R^{Xst}} R^{Xt} as a list of pure tensors,
/// via Δ^{Xs}_{Xst(1)} ⊗ ∂^X_{Xt}(g · Δ^{Xs}_{Xst(2)}).
pub fn del_delta(
    real: &Realization,
    base: Subset,
    s: usize,
    t: usize,
    g: &Poly,
) -> Result<Vec<(Poly, Poly)>> {
    let xs = base.with(s);
    let xt = base.with(t);
    let xst = xs.with(t);
    let fd = real.frobenius(xs, xst);
    let mut out = Vec::new();
    for (c, d) in fd.coproduct() {
        let v = real.trace(base, xt, &g.mul(d))?;
        if !v.is_zero() {
            out.push((c.clone(), v));
        }
    }
    Ok(out)
}

/// The fourth equivalent formula for ∂Δ, used as a cross-check:
/// ∂^X_{Xs}(g·Δ^X_{Xst(1)}) ⊗ ∂^X_{Xt}(Δ^X_{Xst(2)}).
pub fn del_delta_alt(
    real: &Realization,
    base: Subset,
    s: usize,
    t: usize,
    g: &Poly,
) -> Result<Vec<(Poly, Poly)>> {
    let xs = base.with(s);
    let xt = base.with(t);
    let xst = xs.with(t);
    let fd = real.frobenius(base, xst);
    let mut out = Vec::new();
    for (c, d) in fd.coproduct() {
        let u = real.trace(base, xs, &g.mul(c))?;
        let v = real.trace(base, xt, d)?;
        if !u.is_zero() && !v.is_zero() {
            out.push((u, v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::poly::q_int;

    fn setup() -> Realization {
        Realization::preset("A2").unwrap()
    }

    fn expr(real: &Realization, text: &str) -> Expression {
        Expression::parse(&real.sys, text).unwrap()
    }

    #[test]
    fn one_tensor_degree() {
        let r = setup();
        // BS([∅,s,∅]): degree of 1^⊗ is −1
        let sp = BSSpace::new(&r, expr(&r, "{}+s-s"));
        let one = one_tensor(&r, &sp);
        assert_eq!(one.degree(&r, &sp), Some(-1));
        // BS([I]) is R^I with 1^⊗ = 1 in degree 0
        let sp = BSSpace::new(&r, Expression::identity(Subset::single(0)));
        assert_eq!(one_tensor(&r, &sp).degree(&r, &sp), Some(0));
    }

    #[test]
    fn lowest_degree_is_one_dimensional() {
        let r = setup();
        for text in ["{}+s-s", "{s}-s+t-t+s", "{s}+t-s", "{}+s+t-s-t"] {
            let sp = BSSpace::new(&r, expr(&r, text));
            let sigma = sp.sigma(&r);
            let min_idx: Vec<_> = sp
                .basis_indices()
                .into_iter()
                .filter(|i| sp.basis_raw_degree(i) == 0)
                .collect();
            // exactly one basis tensor of raw degree 0, namely 1^⊗, and all
            // others strictly positive ⇒ the −σ degree is one-dimensional
            assert_eq!(min_idx.len(), 1, "{text}");
            let one = one_tensor(&r, &sp);
            assert_eq!(one.coeffs.keys().next().unwrap(), &min_idx[0]);
            assert!(sp
                .basis_indices()
                .iter()
                .all(|i| sp.basis_raw_degree(i) >= 0));
            let _ = sigma;
        }
    }

    #[test]
    fn normal_form_basics() {
        let r = setup();
        let sp = BSSpace::new(&r, expr(&r, "{s,t}-s+s"));
        // nf(1⊗1⊗1) = 1^⊗
        let slots = vec![r.one(); 3];
        assert_eq!(normal_form(&r, &sp, &slots).unwrap(), one_tensor(&r, &sp));
        // idempotence: canonical tensors renormalize to themselves
        for idx in sp.basis_indices() {
            let t = sp.tensor_of(&r, &idx, &r.one());
            let nf = normal_form(&r, &sp, &t).unwrap();
            let mut want = BSElement::zero();
            want.add_term(idx, r.one());
            assert_eq!(nf, want);
        }
        // sliding: f·g ⊗ 1 = f ⊗ g for g invariant under the junction
        let g = r.invariant_basis(sp.subsets[0], 4)[0].clone();
        let f = r.invariant_basis(sp.subsets[0], 2).first().cloned().unwrap_or_else(|| r.one());
        let a = normal_form(&r, &sp, &[f.mul(&g), r.one(), r.one()]).unwrap();
        let b = normal_form(&r, &sp, &[f.clone(), g.clone(), r.one()]).unwrap();
        assert_eq!(a, b);
        // invariance violations are rejected
        assert!(matches!(
            normal_form(&r, &sp, &[r.alpha(0), r.one(), r.one()]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn circle_evaluations() {
        let r = setup();
        let s = 0usize;
        let i = Subset::EMPTY;
        let is = i.with(s);
        // clockwise circle: mult ∘ comult = multiplication by μ^I_{Is}
        let src = Expression::identity(i);
        let sp0 = BSSpace::new(&r, src.clone());
        let (mid_expr, d1) = box_signature(&r, &src, 0, &GenBox::CwCup { s }).unwrap();
        let sp1 = BSSpace::new(&r, mid_expr.clone());
        let (end_expr, d2) = box_signature(&r, &mid_expr, 0, &GenBox::CwCap { s }).unwrap();
        let sp2 = BSSpace::new(&r, end_expr);
        assert_eq!(d1 + d2, 2); // 2·(ℓ(Is) − ℓ(I))
        let x = one_tensor(&r, &sp0);
        let mid = apply_box(&r, &sp0, &sp1, 0, &GenBox::CwCup { s }, &x).unwrap();
        let out = apply_box(&r, &sp1, &sp2, 0, &GenBox::CwCap { s }, &mid).unwrap();
        let mut want = BSElement::zero();
        want.add_term(vec![], r.mu(i, is));
        assert_eq!(out, want);
        // counterclockwise circle with f: counit ∘ (unit then poly) = ∂(f)
        let src = Expression::identity(is);
        let sp0 = BSSpace::new(&r, src.clone());
        let (mid_expr, _) = box_signature(&r, &src, 0, &GenBox::CcwCup { s }).unwrap();
        let sp1 = BSSpace::new(&r, mid_expr.clone());
        for f in [r.alpha(0), r.alpha(0).mul(&r.alpha(0)), r.one()] {
            let x = one_tensor(&r, &sp0);
            let mid = apply_box(&r, &sp0, &sp1, 0, &GenBox::CcwCup { s }, &x).unwrap();
            let with_poly = apply_box(
                &r,
                &sp1,
                &sp1,
                1,
                &GenBox::PolyBox { f: f.clone() },
                &mid,
            )
            .unwrap();
            let out =
                apply_box(&r, &sp1, &sp0, 0, &GenBox::CcwCap { s }, &with_poly).unwrap();
            let mut want = BSElement::zero();
            want.add_term(vec![], r.trace(i, is, &f).unwrap());
            if want.coeffs.is_empty() {
                assert!(out.is_zero());
            } else {
                assert_eq!(out, want);
            }
        }
        // counit ∘ unit on R^{Is} is ∂(1) = 0 for I ≠ Is
        let x = one_tensor(&r, &sp0);
        let mid = apply_box(&r, &sp0, &sp1, 0, &GenBox::CcwCup { s }, &x).unwrap();
        let out = apply_box(&r, &sp1, &sp0, 0, &GenBox::CcwCap { s }, &mid).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn crossings_preserve_one_tensor() {
        let r = setup();
        // up crossing on [∅, {t}, {s,t}] → [∅, {s}, {s,t}]
        let src = expr(&r, "{}+t+s");
        let gbox = GenBox::CrossUp { s: 0, t: 1 };
        let (tgt, deg) = box_signature(&r, &src, 0, &gbox).unwrap();
        assert_eq!(deg, 0);
        assert_eq!(tgt, expr(&r, "{}+s+t"));
        let sp0 = BSSpace::new(&r, src);
        let sp1 = BSSpace::new(&r, tgt);
        let out = apply_box(&r, &sp0, &sp1, 0, &gbox, &one_tensor(&r, &sp0)).unwrap();
        assert_eq!(out, one_tensor(&r, &sp1));
    }

    #[test]
    fn cross_right_is_multiplication() {
        let r = setup();
        // [{s}, {s,t}, {t}] → [{s}, ∅, {t}]
        let src = expr(&r, "{s}+t-s");
        let gbox = GenBox::CrossRight { s: 0, t: 1 };
        let (tgt, _) = box_signature(&r, &src, 0, &gbox).unwrap();
        assert_eq!(tgt, expr(&r, "{s}-s+t"));
        let sp0 = BSSpace::new(&r, src);
        let sp1 = BSSpace::new(&r, tgt);
        // f ⊗ 1 ⊗ g ↦ fg placed in the middle region
        let f = r.invariant_basis(Subset::single(0), 2)[0].clone();
        let g = r.invariant_basis(Subset::single(1), 2)[0].clone();
        let x = normal_form(&r, &sp0, &[f.clone(), r.one(), g.clone()]).unwrap();
        let out = apply_box(&r, &sp0, &sp1, 0, &gbox, &x).unwrap();
        let want = normal_form(&r, &sp1, &[r.one(), f.mul(&g), r.one()]).unwrap();
        assert_eq!(out, want);
    }

    #[test]
    fn hard_r2_left_then_right_is_mu() {
        for name in ["A2", "B2"] {
            let r = Realization::preset(name).unwrap();
            // [Xs, X, Xt] with X = ∅
            let src = Expression {
                start: Subset::single(0),
                steps: vec![Step::Remove(0), Step::Add(1)],
            };
            let sp0 = BSSpace::new(&r, src.clone());
            let left = GenBox::CrossLeft { s: 0, t: 1 };
            let (mid, dl) = box_signature(&r, &src, 0, &left).unwrap();
            let sp1 = BSSpace::new(&r, mid.clone());
            let right = GenBox::CrossRight { s: 0, t: 1 };
            let (back, dr) = box_signature(&r, &mid, 0, &right).unwrap();
            assert_eq!(back, src);
            let mu = r.mu_excluding(Subset::full(2), &[Subset::single(0), Subset::single(1)]);
            assert_eq!(dl + dr, mu.degree().unwrap());
            // evaluate on every canonical basis element
            for idx in sp0.basis_indices() {
                let mut x = BSElement::zero();
                x.add_term(idx, r.one());
                let m = apply_box(&r, &sp0, &sp1, 0, &left, &x).unwrap();
                let out = apply_box(&r, &sp1, &sp0, 0, &right, &m).unwrap();
                // multiplication by μ in the middle region
                let mut want = BSElement::zero();
                for (i, c) in &x.coeffs {
                    let slots = sp0.tensor_of(&r, i, c);
                    let mut slots2 = slots.clone();
                    slots2[1] = slots2[1].mul(&mu);
                    for (i2, c2) in normal_form(&r, &sp0, &slots2).unwrap().coeffs {
                        want.add_term(i2, c2);
                    }
                }
                assert_eq!(out, want, "{name}");
            }
        }
    }

    #[test]
    fn del_delta_formulas_agree() {
        for name in ["A2", "B2"] {
            let r = Realization::preset(name).unwrap();
            let base = Subset::EMPTY;
            let sys: &CoxeterSystem = &r.sys;
            let _ = sys;
            for g in [r.one(), r.alpha(0), r.alpha(1).mul(&r.alpha(1))] {
                let a = del_delta(&r, base, 0, 1, &g).unwrap();
                let b = del_delta_alt(&r, base, 0, 1, &g).unwrap();
                // compare as elements of BS([{s},{s,t},{t}]) via normal form
                let sp = BSSpace::new(
                    &r,
                    Expression { start: Subset::single(0), steps: vec![Step::Add(1), Step::Remove(0)] },
                );
                let mut ea = BSElement::zero();
                for (u, v) in a {
                    ea = ea.add(&normal_form(&r, &sp, &[u, r.one(), v]).unwrap());
                }
                let mut eb = BSElement::zero();
                for (u, v) in b {
                    eb = eb.add(&normal_form(&r, &sp, &[u, r.one(), v]).unwrap());
                }
                assert_eq!(ea, eb, "{name}");
            }
        }
    }

    #[test]
    fn poly_action_slides() {
        let r = setup();
        // placing f ∈ R^{Is} on either side of an s-strand agrees
        let src = expr(&r, "{}+s");
        let sp = BSSpace::new(&r, src);
        let f = r.invariant_basis(Subset::single(0), 4)[0].clone();
        let x = one_tensor(&r, &sp);
        let left = apply_box(&r, &sp, &sp, 0, &GenBox::PolyBox { f: f.clone() }, &x).unwrap();
        let right = apply_box(&r, &sp, &sp, 1, &GenBox::PolyBox { f: f.clone() }, &x).unwrap();
        assert_eq!(left, right);
        // 1 acts as identity
        let id = apply_box(&r, &sp, &sp, 0, &GenBox::PolyBox { f: r.one() }, &x).unwrap();
        assert_eq!(id, x);
        // non-invariant placement is rejected by the signature check
        assert!(matches!(
            box_signature(&r, &sp.expr, 1, &GenBox::PolyBox { f: r.alpha(1) }),
            Err(Error::NotInvariant)
        ));
        let _ = q_int(0);
    }

    #[test]
    fn idempotent_decomposition_relation() {
        // id_{[Xs ⊃ X ⊂ Xs]} = Σ_i (poly d_i) ∘ ccwcup ∘ ccwcap ∘ (poly c_i)
        // with Δ = Σ c_i ⊗ d_i the coproduct for X ⊆ Xs
        let r = setup();
        let src = expr(&r, "{s}-s+s");
        let sp = BSSpace::new(&r, src.clone());
        let cap_tgt = Expression::identity(Subset::single(0));
        let sp_cap = BSSpace::new(&r, cap_tgt);
        let fd = r.frobenius(Subset::EMPTY, Subset::single(0));
        for idx in sp.basis_indices() {
            let mut x = BSElement::zero();
            x.add_term(idx.clone(), r.one());
            let mut rhs = BSElement::zero();
            for (c, d) in fd.coproduct() {
                let step1 = apply_box(&r, &sp, &sp, 1, &GenBox::PolyBox { f: c.clone() }, &x)
                    .unwrap();
                let step2 =
                    apply_box(&r, &sp, &sp_cap, 0, &GenBox::CcwCap { s: 0 }, &step1).unwrap();
                let step3 =
                    apply_box(&r, &sp_cap, &sp, 0, &GenBox::CcwCup { s: 0 }, &step2).unwrap();
                let step4 = apply_box(&r, &sp, &sp, 1, &GenBox::PolyBox { f: d.clone() }, &step3)
                    .unwrap();
                rhs = rhs.add(&step4);
            }
            assert_eq!(rhs, x, "idempotent decomposition");
        }
        // coproduct centrality: f·Δ = Δ·f for f ∈ R^X as elements of the
        // tensor square BS([X ⊂ Xs ⊃ X])
        let sq = BSSpace::new(&r, expr(&r, "{}+s-s"));
        let f = r.alpha(0).mul(&r.alpha(1));
        let mut left = BSElement::zero();
        let mut right = BSElement::zero();
        for (c, d) in fd.coproduct() {
            left = left.add(&normal_form(&r, &sq, &[f.mul(c), r.one(), d.clone()]).unwrap());
            right = right.add(&normal_form(&r, &sq, &[c.clone(), r.one(), d.mul(&f)]).unwrap());
        }
        assert_eq!(left, right, "f·Δ = Δ·f");
    }
}

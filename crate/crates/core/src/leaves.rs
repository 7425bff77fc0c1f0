//! The five-stage light-leaf construction: elementary light leaves with
//! polynomial sprinkles, single-step light leaves via Grassmannian
//! reduction, inductive light leaves, sprinkle selection with dual
//! sequences and the order ≺, and double leaves.

use crate::bimodule::{normal_form, BSElement, BSSpace, GenBox};
use crate::cosets::{
    coset_of, grassmannian_reduce, is_reduced, reduced_expressions, reduced_expressions_alt,
    subordinate_paths, CosetPair, DoubleCoset, Expression, Step, SubordinatePath,
};
use crate::coxeter::Elt;
use crate::diagrams::{evaluate, sinister_cap, Morphism};
use crate::hecke::{defect, path_defect};
use crate::invariants::{PPolicy, Realization};
use crate::poly::Poly;
use crate::subset::Subset;
use crate::Result;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Deterministic choice policy for leaf construction; the alternate
/// settings exist for the change-of-basis certification.
#[derive(Clone, Copy, Default, Debug)]
pub struct LeafOpts {
    pub p_policy: PPolicy,
    pub alt_rex: bool,
}

impl LeafOpts {
    pub fn alt() -> LeafOpts {
        LeafOpts { p_policy: PPolicy::AltLex, alt_rex: true }
    }
}

/// A sprinkled subordinate path: the path plus one minimal coset
/// representative y_j per ascending index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sprinkled {
    pub path: SubordinatePath,
    /// Aligned with the expression's steps; Some only at ascending indices.
    pub y: Vec<Option<Elt>>,
}

impl Sprinkled {
    pub fn terminus(&self) -> DoubleCoset {
        self.path.terminus()
    }
}

/// The subsets (λ_j, ρ_{j+1}) governing the sprinkle at an ascending index.
pub fn sprinkle_frame(
    real: &Realization,
    expr: &Expression,
    path: &SubordinatePath,
    j: usize,
) -> (Subset, Subset) {
    assert!(expr.steps[j].is_add());
    let p = path.cosets[j];
    let q = path.cosets[j + 1];
    let pair = CosetPair::new(&real.sys, p, q, true).expect("ascending step is a coset pair");
    let g = grassmannian_reduce(&real.sys, &pair).expect("reduction applies to every pair");
    (g.m.left_red, g.n.left_red)
}

/// All sprinkled subordinate paths of I_•.
pub fn sprinkled_paths(real: &Realization, expr: &Expression) -> Vec<Sprinkled> {
    let sys = &real.sys;
    let mut out = Vec::new();
    for path in subordinate_paths(sys, expr) {
        let mut partial: Vec<Vec<Option<Elt>>> = vec![vec![]];
        for (k, &st) in expr.steps.iter().enumerate() {
            if !st.is_add() {
                for p in partial.iter_mut() {
                    p.push(None);
                }
                continue;
            }
            let (lam, rho) = sprinkle_frame(real, expr, &path, k);
            let choices: Vec<Elt> = sys
                .parabolic_elements(rho)
                .into_iter()
                .filter(|&y| sys.descents(y, true).intersect(lam).is_empty())
                .collect();
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for p in &partial {
                for &y in &choices {
                    let mut p2 = p.clone();
                    p2.push(Some(y));
                    next.push(p2);
                }
            }
            partial = next;
        }
        for y in partial {
            out.push(Sprinkled { path: path.clone(), y });
        }
    }
    out
}

/// The dual sequence y°_j = w_{I_j} · t_j⁻¹ · t_{j+1} · y_j · w_{I_{j+1}},
/// defined at ascending indices.
pub fn dual_sequence(real: &Realization, expr: &Expression, sp: &Sprinkled) -> Vec<Option<Elt>> {
    let sys = &real.sys;
    let subsets = expr.subsets();
    let mut out = Vec::with_capacity(expr.steps.len());
    for (j, &st) in expr.steps.iter().enumerate() {
        if !st.is_add() {
            out.push(None);
            continue;
        }
        let y = sp.y[j].expect("ascending index carries a sprinkle");
        let tj = sp.path.cosets[j].min;
        let tj1 = sp.path.cosets[j + 1].min;
        let w = sys.mult(
            sys.mult(
                sys.mult(sys.longest_element(subsets[j]), sys.inverse(tj)),
                sys.mult(tj1, y),
            ),
            sys.longest_element(subsets[j + 1]),
        );
        assert!(sys.in_parabolic(w, subsets[j + 1]), "y° must lie in W_{{I_{{j+1}}}}");
        out.push(Some(w));
    }
    out
}

/// Total order ⊴ on W compatible with length: (ℓ, ShortLex word).
pub fn elt_cmp(real: &Realization, a: Elt, b: Elt) -> Ordering {
    let sys = &real.sys;
    (sys.length(a), sys.normal_form(a)).cmp(&(sys.length(b), sys.normal_form(b)))
}

/// The lexicographic order ≺ on coterminal sprinkled paths, via dual
/// sequences. Returns an Ordering; Equal only for identical paths.
pub fn path_cmp(real: &Realization, expr: &Expression, a: &Sprinkled, b: &Sprinkled) -> Ordering {
    let da = dual_sequence(real, expr, a);
    let db = dual_sequence(real, expr, b);
    for (x, y) in da.iter().zip(db.iter()) {
        match (x, y) {
            (Some(x), Some(y)) => match elt_cmp(real, *x, *y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
            _ => continue,
        }
    }
    Ordering::Equal
}

pub fn path_order_less(real: &Realization, expr: &Expression, a: &Sprinkled, b: &Sprinkled) -> bool {
    path_cmp(real, expr, a, b) == Ordering::Less
}

/// A coterminal sprinkled triple for (I_•, I'_•).
#[derive(Clone, Debug)]
pub struct Triple {
    pub p: DoubleCoset,
    pub left: Sprinkled,
    pub right: Sprinkled,
}

/// All coterminal sprinkled triples, grouped deterministically.
pub fn coterminal_triples(
    real: &Realization,
    expr_a: &Expression,
    expr_b: &Expression,
) -> Vec<Triple> {
    let mut out = Vec::new();
    let lefts = sprinkled_paths(real, expr_a);
    let rights = sprinkled_paths(real, expr_b);
    for l in &lefts {
        for r in &rights {
            if l.terminus() == r.terminus() {
                out.push(Triple { p: l.terminus(), left: l.clone(), right: r.clone() });
            }
        }
    }
    out
}

/// The partial order ⪯₃ on triples: q < p, or q = p and both paths ⪯.
pub fn triple_order_leq(
    real: &Realization,
    expr_a: &Expression,
    expr_b: &Expression,
    u: &Triple,
    t: &Triple,
) -> bool {
    if u.p == t.p {
        path_cmp(real, expr_a, &u.left, &t.left) != Ordering::Greater
            && path_cmp(real, expr_b, &u.right, &t.right) != Ordering::Greater
    } else {
        crate::cosets::coset_bruhat_leq(&real.sys, &u.p, &t.p).unwrap_or(false)
    }
}

/// Construction context: realization, deterministic choices, rex cache.
pub struct LeafCtx<'a> {
    pub real: &'a Realization,
    pub opts: LeafOpts,
    rex_cache: RefCell<HashMap<(Expression, Expression), Morphism>>,
}

impl<'a> LeafCtx<'a> {
    pub fn new(real: &'a Realization) -> LeafCtx<'a> {
        LeafCtx { real, opts: LeafOpts::default(), rex_cache: RefCell::new(HashMap::new()) }
    }

    pub fn with_opts(real: &'a Realization, opts: LeafOpts) -> LeafCtx<'a> {
        LeafCtx { real, opts, rex_cache: RefCell::new(HashMap::new()) }
    }

    fn rex(&self, from: &Expression, to: &Expression) -> Result<Morphism> {
        if let Some(m) = self.rex_cache.borrow().get(&(from.clone(), to.clone())) {
            return Ok(m.clone());
        }
        // BFS the whole braid component once and memoize every target
        let sys = &self.real.sys;
        let mut best: HashMap<Expression, Morphism> = HashMap::new();
        best.insert(from.clone(), Morphism::identity(from.clone()));
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from.clone());
        while let Some(cur) = queue.pop_front() {
            let mut moves = crate::diagrams::braid_moves(sys, &cur);
            if self.opts.alt_rex {
                moves.reverse();
            }
            for mv in moves {
                let nxt = mv.apply_to(&cur);
                if best.contains_key(&nxt) {
                    continue;
                }
                let piece = mv.morphism(self.real, &cur)?;
                let m = best[&cur].then(&piece)?;
                best.insert(nxt.clone(), m);
                queue.push_back(nxt);
            }
        }
        let found = best.contains_key(to);
        let mut cache = self.rex_cache.borrow_mut();
        for (node, m) in best {
            cache.insert((from.clone(), node), m);
        }
        drop(cache);
        if !found {
            return Err(crate::Error::NotConnected);
        }
        Ok(self.rex_cache.borrow()[&(from.clone(), to.clone())].clone())
    }

    fn canonical_rex(&self, p: &DoubleCoset) -> Expression {
        let sys = &self.real.sys;
        if self.opts.alt_rex {
            reduced_expressions_alt(sys, p, 1).pop().expect("coset has a reduced expression")
        } else {
            reduced_expressions(sys, p, 1).pop().expect("coset has a reduced expression")
        }
    }

    /// X_m: the reduced expression of m through its core,
    /// [I − t_1 ... − t_l] ∘ K_• ∘ [ρ + u_1 ... + u_r].
    pub fn x_m(&self, m: &DoubleCoset) -> Expression {
        let removals: Vec<Step> = m.i.minus(m.left_red).iter().map(Step::Remove).collect();
        let additions: Vec<Step> = m.j.minus(m.right_red).iter().map(Step::Add).collect();
        let core = coset_of(&self.real.sys, m.min, m.left_red, m.right_red);
        let k_bullet = self.canonical_rex(&core);
        let mut steps = removals;
        steps.extend(k_bullet.steps);
        steps.extend(additions);
        let expr = Expression { start: m.i, steps };
        debug_assert_eq!(is_reduced(&self.real.sys, &expr), Some(*m));
        expr
    }

    /// X_n = [I + v_1 + ... + v_k] with the enumeration of Js∖I by first
    /// appearance in X_m ∘ [+s].
    fn x_n(&self, m: &DoubleCoset, n: &DoubleCoset, s: usize) -> (Expression, Expression) {
        let x_m = self.x_m(m);
        let mut i_bullet = x_m.clone();
        i_bullet.steps.push(Step::Add(s));
        let js = n.j;
        let mut first: Vec<(usize, usize)> = Vec::new(); // (position, gen)
        for g in js.minus(m.i).iter() {
            let pos = i_bullet
                .steps
                .iter()
                .position(|&st| st == Step::Add(g))
                .expect("every generator of Js∖I appears in X_m ∘ [+s]");
            first.push((pos, g));
        }
        first.sort();
        let x_n = Expression {
            start: m.i,
            steps: first.iter().map(|&(_, g)| Step::Add(g)).collect(),
        };
        debug_assert_eq!(is_reduced(&self.real.sys, &x_n), Some(*n));
        (x_m, x_n)
    }

    /// ELLP([m,n], f): X_m ∘ [J,Js] → X_n for a Grassmannian pair, built
    /// from the sinister cap diagram on the twisted boundary, untwisted
    /// with clockwise cups; f sits in the leftmost leftred(m)-region.
    pub fn ell_up(&self, m: &DoubleCoset, n: &DoubleCoset, s: usize, f: &Poly) -> Result<Morphism> {
        let real = self.real;
        if n.min != Elt::ID || !m.i.is_subset_of(n.j) {
            return Err(crate::Error::NotGrassmannian);
        }
        let (x_m, x_n) = self.x_n(m, n, s);
        let mut source = x_m.clone();
        source.steps.push(Step::Add(s));
        let mut morph = Morphism::identity(source.clone());
        // sprinkle in the leftmost leftred(m)-region
        if !f.is_zero() && *f != real.one() {
            morph.push(real, m.i.minus(m.left_red).len(), GenBox::PolyBox { f: f.clone() })?;
        }
        // clockwise cups building X_n ∘ rev(X_n) on the left
        for (idx, &st) in x_n.steps.iter().enumerate() {
            morph.push(real, idx, GenBox::CwCup { s: st.gen() })?;
        }
        // twisted boundary [Js − v_k ... − v_1] ∘ X_m ∘ [+s]
        let mut twisted = Expression {
            start: n.j,
            steps: x_n.steps.iter().rev().map(|st| Step::Remove(st.gen())).collect(),
        };
        twisted.steps.extend(source.steps.clone());
        let cap = sinister_cap(real, &twisted)?;
        let padded = cap.tensor(&x_n, &Expression::identity(n.j))?;
        let mut out = morph.then(&padded)?;
        out.target = x_n.clone();
        debug_assert_eq!(out.target, padded.target);
        // degree = defect([m,n]) + deg f
        let pair = CosetPair::new(&real.sys, *m, *n, true)?;
        debug_assert_eq!(out.degree, defect(&real.sys, &pair) + f.degree().unwrap_or(0));
        Ok(out)
    }

    /// ELL([n,m]): X_n ∘ [Js,J] → X_m (or, in the forward case, the
    /// identity of X_n ∘ [−s]).
    pub fn ell_down(&self, m: &DoubleCoset, n: &DoubleCoset, s: usize) -> Result<Morphism> {
        let real = self.real;
        let sys = &real.sys;
        if n.min != Elt::ID || !m.i.is_subset_of(n.j) {
            return Err(crate::Error::NotGrassmannian);
        }
        if m.max == sys.longest_element(n.j) {
            // forward case: m maximal in n, take the identity of [[I⊆Js⊇J]]
            let (_, x_n) = self.x_n(m, n, s);
            let mut e = x_n;
            e.steps.push(Step::Remove(s));
            debug_assert_eq!(is_reduced(sys, &e), Some(*m));
            return Ok(Morphism::identity(e));
        }
        let ell = self.ell_up(m, n, s, &real.one())?;
        let x_m = {
            let mut e = ell.source.clone();
            e.steps.pop();
            e
        };
        let step_expr = Expression { start: n.j, steps: vec![Step::Remove(s)] };
        let flipped = ell
            .flip_dual()
            .tensor(&Expression::identity(ell.target.start), &step_expr)?;
        let mut out = flipped;
        out.push(real, x_m.steps.len(), GenBox::CwCap { s })?;
        debug_assert_eq!(out.target, x_m);
        let pair = CosetPair::new(sys, *m, *n, false)?;
        debug_assert_eq!(out.degree, defect(sys, &pair));
        Ok(out)
    }

    /// SSLLP([p,q], f) or SSLL([q,p]) depending on the pair direction.
    pub fn ssll(&self, pair: &CosetPair, f: &Poly) -> Result<Morphism> {
        let real = self.real;
        let g = grassmannian_reduce(&real.sys, pair)?;
        let z_expr = self.canonical_rex(&g.z);
        let inner = if pair.upward {
            self.ell_up(&g.m, &g.n, pair.s, f)?
        } else {
            self.ell_down(&g.m, &g.n, pair.s)?
        };
        let out = inner.tensor(&z_expr, &Expression::identity(inner.source.end()))?;
        debug_assert_eq!(out.degree, defect(&real.sys, pair) + f.degree().unwrap_or(0));
        Ok(out)
    }

    /// The adapted sprinkle polynomial f_j = ∂_{λ_j} ∂_{y_j} (P_{ρ_{j+1}}).
    pub fn sprinkle_poly(&self, expr: &Expression, sp: &Sprinkled, j: usize) -> Poly {
        let real = self.real;
        let (lam, rho) = sprinkle_frame(real, expr, &sp.path, j);
        let y = sp.y[j].expect("ascending index");
        let p_rho = real.find_p(rho, self.opts.p_policy);
        real.demazure_set(lam, &real.demazure_elt(y, &p_rho))
    }

    /// LL(t_•, y_•): the inductive light leaf pipeline.
    pub fn light_leaf(&self, expr: &Expression, sp: &Sprinkled) -> Result<Morphism> {
        let real = self.real;
        let sys = &real.sys;
        let subsets = expr.subsets();
        let mut morph = Morphism::identity(Expression::identity(expr.start));
        let mut sprinkle_deg = 0i64;
        for (k, &st) in expr.steps.iter().enumerate() {
            let (pair, f) = match st {
                Step::Add(_) => {
                    let pair =
                        CosetPair::new(sys, sp.path.cosets[k], sp.path.cosets[k + 1], true)?;
                    let f = self.sprinkle_poly(expr, sp, k);
                    (pair, f)
                }
                Step::Remove(_) => {
                    let pair =
                        CosetPair::new(sys, sp.path.cosets[k + 1], sp.path.cosets[k], false)?;
                    (pair, real.one())
                }
            };
            sprinkle_deg += f.degree().unwrap_or(0);
            let ss = self.ssll(&pair, &f)?;
            let x_tk = {
                let mut e = ss.source.clone();
                e.steps.pop();
                e
            };
            let step_expr = Expression { start: subsets[k], steps: vec![st] };
            let left_pad = Expression::identity(expr.start);
            let r = self.rex(&morph.target, &x_tk)?;
            morph = morph
                .tensor(&left_pad, &step_expr)?
                .then(&r.tensor(&left_pad, &step_expr)?)?
                .then(&ss)?;
        }
        debug_assert_eq!(
            morph.degree,
            path_defect(sys, expr, &sp.path) + sprinkle_deg,
            "deg LL = defect + sprinkle degrees"
        );
        debug_assert_eq!(is_reduced(sys, &morph.target), Some(sp.terminus()));
        Ok(morph)
    }

    /// Y_p = [[I ⊇ leftred(p)]] ∘ core rex ∘ [[rightred(p) ⊆ J]].
    pub fn y_p(&self, p: &DoubleCoset) -> Expression {
        self.x_m(p)
    }

    /// The light leaf with its target rexed to Y_p (the comparable form).
    pub fn light_leaf_to_yp(&self, expr: &Expression, sp: &Sprinkled) -> Result<Morphism> {
        let ll = self.light_leaf(expr, sp)?;
        let yp = self.y_p(&sp.terminus());
        let r = self.rex(&ll.target, &yp)?;
        ll.then(&r)
    }

    /// The dual-sprinkle element b(t_•, y_•) ∈ BS(I_•); P choices for b are
    /// independent of the leaf policy.
    pub fn b_element(&self, expr: &Expression, sp: &Sprinkled) -> Result<BSElement> {
        let real = self.real;
        let subsets = expr.subsets();
        let duals = dual_sequence(real, expr, sp);
        let mut slots = vec![real.one(); expr.steps.len() + 1];
        for (j, dual) in duals.iter().enumerate() {
            if let Some(yc) = dual {
                let p = real.find_p(subsets[j + 1], PPolicy::Lex);
                let b = real.demazure_set(subsets[j], &real.demazure_elt(*yc, &p));
                slots[j] = slots[j].mul(&b);
            }
        }
        let space = BSSpace::new(real, expr.clone());
        normal_form(real, &space, &slots)
    }

    /// DLL(p, (t,y), (t',y'), g): light leaf, rex to Y_p, polynomial g in
    /// the leftmost leftred(p)-region, rex, flipped light leaf.
    pub fn double_leaf(&self, triple: &Triple, expr_a: &Expression, expr_b: &Expression, g: &Poly) -> Result<Morphism> {
        let real = self.real;
        let p = triple.p;
        let yp = self.y_p(&p);
        let ll1 = self.light_leaf(expr_a, &triple.left)?;
        let ll2 = self.light_leaf(expr_b, &triple.right)?;
        let r1 = self.rex(&ll1.target, &yp)?;
        let r2 = self.rex(&yp, &ll2.target)?;
        let mut mid = Morphism::identity(yp.clone());
        if *g != real.one() {
            mid.push(real, p.i.minus(p.left_red).len(), GenBox::PolyBox { f: g.clone() })?;
        }
        ll1.then(&r1)?.then(&mid)?.then(&r2)?.then(&ll2.flip_dual())
    }
}

/// Triangularity data: evaluate(LL(a) to Y_p, b(b)) over ≺-ordered
/// coterminal sprinkled paths. Returns (ordered paths, matrix).
pub fn triangularity_matrix(
    ctx: &LeafCtx,
    expr: &Expression,
    p: &DoubleCoset,
) -> Result<(Vec<Sprinkled>, Vec<Vec<BSElement>>)> {
    let real = ctx.real;
    let mut paths: Vec<Sprinkled> = sprinkled_paths(real, expr)
        .into_iter()
        .filter(|sp| sp.terminus() == *p)
        .collect();
    paths.sort_by(|a, b| path_cmp(real, expr, a, b));
    let bs: Vec<BSElement> =
        paths.iter().map(|sp| ctx.b_element(expr, sp)).collect::<Result<_>>()?;
    let mut matrix = Vec::with_capacity(paths.len());
    for sp in &paths {
        let ll = ctx.light_leaf_to_yp(expr, sp)?;
        let mut row = Vec::with_capacity(paths.len());
        for b in &bs {
            row.push(evaluate(real, &ll, b)?);
        }
        matrix.push(row);
    }
    Ok((paths, matrix))
}

/// Check that a triangularity matrix is unitriangular: diagonal exactly
/// 1^⊗ of Y_p, strict upper entries exactly 0.
pub fn check_unitriangular(
    ctx: &LeafCtx,
    p: &DoubleCoset,
    matrix: &[Vec<BSElement>],
) -> bool {
    let real = ctx.real;
    let yp_space = BSSpace::new(real, ctx.y_p(p));
    let one = crate::bimodule::one_tensor(real, &yp_space);
    for (a, row) in matrix.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            if a == b && *entry != one {
                return false;
            }
            if a < b && !entry.is_zero() {
                return false;
            }
        }
    }
    true
}

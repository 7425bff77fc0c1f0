//! Diagrammatic 2-morphisms as composable slice pipelines: composition,
//! duality flip, rex moves (up-up, down-down, switchback), the sinister
//! cap construction, and compilation to bimodule element maps.
//!
//! Morphisms are syntactic pipelines, never quotiented by relations;
//! equality is only ever tested semantically through `evaluate` on
//! canonical bases.

use crate::bimodule::{apply_box, box_signature, BSElement, BSSpace, GenBox};
use crate::cosets::{is_reduced, Expression, Step};
use crate::coxeter::CoxeterSystem;
use crate::invariants::Realization;
use crate::subset::Subset;
use crate::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// One generator box applied at a region position, identity elsewhere.
#[derive(Clone, PartialEq, Debug)]
pub struct Slice {
    pub pos: usize,
    pub gbox: GenBox,
}

/// A composable pipeline of slices.
#[derive(Clone, PartialEq, Debug)]
pub struct Morphism {
    pub source: Expression,
    pub target: Expression,
    pub slices: Vec<Slice>,
    pub degree: i64,
}

impl Morphism {
    pub fn identity(expr: Expression) -> Morphism {
        Morphism { source: expr.clone(), target: expr, slices: vec![], degree: 0 }
    }

    /// Append a box at the top of the pipeline.
    pub fn push(&mut self, real: &Realization, pos: usize, gbox: GenBox) -> Result<()> {
        let (tgt, deg) = box_signature(real, &self.target, pos, &gbox)?;
        self.slices.push(Slice { pos, gbox });
        self.target = tgt;
        self.degree += deg;
        Ok(())
    }

    /// self then other (diagrammatic order, other stacked on top).
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.target != other.source {
            return Err(Error::BoundaryMismatch(format!(
                "then: {:?} vs {:?}",
                self.target, other.source
            )));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Ok(Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            slices,
            degree: self.degree + other.degree,
        })
    }

    /// id_left ⊗ self ⊗ id_right.
    pub fn tensor(&self, left: &Expression, right: &Expression) -> Result<Morphism> {
        if left.end() != self.source.start || self.source.end() != right.start {
            return Err(Error::BoundaryMismatch("tensor padding".into()));
        }
        let shift = left.steps.len();
        let pad = |e: &Expression| left.concat(e).concat(right);
        Ok(Morphism {
            source: pad(&self.source),
            target: pad(&self.target),
            slices: self
                .slices
                .iter()
                .map(|sl| Slice { pos: sl.pos + shift, gbox: sl.gbox.clone() })
                .collect(),
            degree: self.degree,
        })
    }

    /// The duality functor: flip upside-down and reverse orientation.
    /// Positions are untouched; box kinds dualize; degree is preserved.
    pub fn flip_dual(&self) -> Morphism {
        Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            slices: self
                .slices
                .iter()
                .rev()
                .map(|sl| Slice { pos: sl.pos, gbox: sl.gbox.dual() })
                .collect(),
            degree: self.degree,
        }
    }

    /// Compact text rendering of the pipeline for reports.
    pub fn digest(&self) -> String {
        if self.slices.is_empty() {
            return "id".to_string();
        }
        self.slices
            .iter()
            .map(|sl| format!("{}@{}", sl.gbox.tag(), sl.pos))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub fn compose(real: &Realization, f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let _ = real;
    f.then(g)
}

/// Evaluate the pipeline on an element of BS(source).
pub fn evaluate(real: &Realization, m: &Morphism, x: &BSElement) -> Result<BSElement> {
    let mut space = BSSpace::new(real, m.source.clone());
    let mut cur = x.clone();
    #[cfg(debug_assertions)]
    let deg_in = cur.degree(real, &space);
    for sl in &m.slices {
        let (tgt, _) = box_signature(real, &space.expr, sl.pos, &sl.gbox)?;
        let tgt_space = BSSpace::new(real, tgt);
        cur = apply_box(real, &space, &tgt_space, sl.pos, &sl.gbox, &cur)?;
        space = tgt_space;
    }
    if space.expr != m.target {
        return Err(Error::BoundaryMismatch("pipeline did not land on the target".into()));
    }
    #[cfg(debug_assertions)]
    {
        if let (Some(di), Some(d_out)) = (deg_in, cur.degree(real, &space)) {
            debug_assert_eq!(d_out, di + m.degree, "degree additivity under evaluation");
        }
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Rotation sequences and switchback morphisms

/// Memoized front end for the rotation-sequence search, collapsing all
/// failure modes to None.
pub fn rotation_sequence_cached(
    sys: &CoxeterSystem,
    l: Subset,
    u0: usize,
    ud: usize,
) -> Option<Vec<usize>> {
    if let Some(hit) = sys.rotation_lookup((l, u0, ud)) {
        return hit;
    }
    let out = rotation_sequence(sys, l, u0, ud).ok();
    sys.rotation_store((l, u0, ud), out.clone());
    out
}

/// Search for the rotation sequence (u_0, ..., u_d) of the switchback
/// relation for (L, u0, ud); the forward conjugation recurrence generates
/// candidates and `is_reduced` validates them.
pub fn rotation_sequence(
    sys: &CoxeterSystem,
    l: Subset,
    u0: usize,
    ud: usize,
) -> Result<Vec<usize>> {
    if !l.contains(u0) || !l.contains(ud) {
        return Err(Error::BadInput("u0 and ud must lie in L".into()));
    }
    let wl = sys.longest_element(l);
    if sys.conjugate(wl, sys.gen(u0)) == sys.gen(ud) {
        return Err(Error::BadInput("switchback requires ud ≠ w_L u0 w_L".into()));
    }
    let i = l.without(u0);
    let lhs = Expression { start: i, steps: vec![Step::Add(u0), Step::Remove(ud)] };
    let lhs_coset = is_reduced(sys, &lhs).expect("[I + u0 − ud] is always reduced");
    let bound = 2 * l.len() * sys.parabolic_elements(l).len();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for u1 in l.iter() {
        if u1 == u0 {
            continue;
        }
        let mut seq = vec![u0, u1];
        loop {
            if *seq.last().unwrap() == ud && seq.len() >= 2 {
                let cand = seq.clone();
                if validate_rotation(sys, i, &cand, &lhs_coset) && !found.contains(&cand) {
                    found.push(cand);
                }
            }
            if seq.len() > bound {
                break;
            }
            // u_{i+1} = w_{L∖u_i} · u_{i-1} · w_{L∖u_i}
            let last = *seq.last().unwrap();
            let prev = seq[seq.len() - 2];
            let w = sys.longest_element(l.without(last));
            let conj = sys.conjugate(w, sys.gen(prev));
            let next = (0..sys.rank()).find(|&g| sys.gen(g) == conj);
            match next {
                Some(g) if g != last => seq.push(g),
                _ => break,
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoSequenceFound),
        1 => Ok(found.pop().unwrap()),
        _ => Err(Error::AmbiguousSequence),
    }
}

fn validate_rotation(
    sys: &CoxeterSystem,
    i: Subset,
    seq: &[usize],
    lhs_coset: &crate::cosets::DoubleCoset,
) -> bool {
    let rhs = switchback_rhs(i, seq);
    if rhs.validate().is_err() {
        return false;
    }
    is_reduced(sys, &rhs) == Some(*lhs_coset)
}

/// The right-hand side [I −u1 +u0 −u2 +u1 ... −ud +u_{d-1}].
pub fn switchback_rhs(i: Subset, seq: &[usize]) -> Expression {
    let d = seq.len() - 1;
    let mut steps = Vec::with_capacity(2 * d);
    for k in 0..d {
        steps.push(Step::Remove(seq[k + 1]));
        steps.push(Step::Add(seq[k]));
    }
    Expression { start: i, steps }
}

/// φ: [.. +u0 −ud ..] → [.. RHS ..], built from counterclockwise cups and
/// right-facing crossings; `k` is the step offset of the +u0 step.
pub fn switchback_forward(
    real: &Realization,
    expr: &Expression,
    k: usize,
    seq: &[usize],
) -> Result<Morphism> {
    let d = seq.len() - 1;
    let mut m = Morphism::identity(expr.clone());
    for j in 0..d {
        if j + 1 < d {
            m.push(real, k + 2 * j + 1, GenBox::CcwCup { s: seq[j + 1] })?;
        }
        let s = seq[j + 1];
        let t = seq[j];
        m.push(real, k + 2 * j, GenBox::CrossRight { s, t })?;
    }
    Ok(m)
}

/// ψ: the opposite switchback move (counterclockwise caps and left
/// crossings), as the dual of φ.
pub fn switchback_backward(
    real: &Realization,
    expr_with_rhs: &Expression,
    k: usize,
    seq: &[usize],
) -> Result<Morphism> {
    let d = seq.len() - 1;
    // splice the LHS in place of the RHS pattern
    let mut steps = expr_with_rhs.steps[..k].to_vec();
    steps.push(Step::Add(seq[0]));
    steps.push(Step::Remove(seq[d]));
    steps.extend_from_slice(&expr_with_rhs.steps[k + 2 * d..]);
    let lhs_expr = Expression { start: expr_with_rhs.start, steps };
    let phi = switchback_forward(real, &lhs_expr, k, seq)?;
    if phi.target != *expr_with_rhs {
        return Err(Error::BoundaryMismatch("switchback RHS mismatch".into()));
    }
    Ok(phi.flip_dual())
}

// ---------------------------------------------------------------------------
// Elementary rex moves and the rex BFS

/// A braid relation applicable at a step offset of an expression.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum BraidRelation {
    UpUp { pos: usize },
    DownDown { pos: usize },
    SwitchFwd { pos: usize, seq: Vec<usize> },
    SwitchBwd { pos: usize, seq: Vec<usize> },
}

impl BraidRelation {
    pub fn apply_to(&self, expr: &Expression) -> Expression {
        let mut steps = expr.steps.clone();
        match self {
            BraidRelation::UpUp { pos } | BraidRelation::DownDown { pos } => {
                steps.swap(*pos, *pos + 1);
                Expression { start: expr.start, steps }
            }
            BraidRelation::SwitchFwd { pos, seq } => {
                let i_local = {
                    let subs = expr.subsets();
                    subs[*pos]
                };
                let rhs = switchback_rhs(i_local, seq);
                let mut out = expr.steps[..*pos].to_vec();
                out.extend(rhs.steps);
                out.extend_from_slice(&expr.steps[*pos + 2..]);
                Expression { start: expr.start, steps: out }
            }
            BraidRelation::SwitchBwd { pos, seq } => {
                let d = seq.len() - 1;
                let mut out = expr.steps[..*pos].to_vec();
                out.push(Step::Add(seq[0]));
                out.push(Step::Remove(seq[d]));
                out.extend_from_slice(&expr.steps[*pos + 2 * d..]);
                Expression { start: expr.start, steps: out }
            }
        }
    }

    /// The associated degree-zero elementary rex move.
    pub fn morphism(&self, real: &Realization, expr: &Expression) -> Result<Morphism> {
        match self {
            BraidRelation::UpUp { pos } => {
                let (a, b) = match (expr.steps[*pos], expr.steps[*pos + 1]) {
                    (Step::Add(a), Step::Add(b)) => (a, b),
                    _ => return Err(Error::PositionMismatch(*pos)),
                };
                let mut m = Morphism::identity(expr.clone());
                m.push(real, *pos, GenBox::CrossUp { s: b, t: a })?;
                Ok(m)
            }
            BraidRelation::DownDown { pos } => {
                let (a, b) = match (expr.steps[*pos], expr.steps[*pos + 1]) {
                    (Step::Remove(a), Step::Remove(b)) => (a, b),
                    _ => return Err(Error::PositionMismatch(*pos)),
                };
                let mut m = Morphism::identity(expr.clone());
                m.push(real, *pos, GenBox::CrossDown { s: b, t: a })?;
                Ok(m)
            }
            BraidRelation::SwitchFwd { pos, seq } => switchback_forward(real, expr, *pos, seq),
            BraidRelation::SwitchBwd { pos, seq } => switchback_backward(real, expr, *pos, seq),
        }
    }
}

/// All braid relations applicable to an expression, deterministically
/// ordered.
pub fn braid_moves(sys: &CoxeterSystem, expr: &Expression) -> Vec<BraidRelation> {
    let subs = expr.subsets();
    let mut out = Vec::new();
    for k in 0..expr.steps.len() {
        if k + 1 < expr.steps.len() {
            match (expr.steps[k], expr.steps[k + 1]) {
                (Step::Add(a), Step::Add(b)) if a != b => {
                    out.push(BraidRelation::UpUp { pos: k });
                }
                (Step::Remove(a), Step::Remove(b)) if a != b => {
                    out.push(BraidRelation::DownDown { pos: k });
                }
                (Step::Add(u0), Step::Remove(ud)) => {
                    let l = subs[k + 1];
                    if let Some(seq) = rotation_sequence_cached(sys, l, u0, ud) {
                        out.push(BraidRelation::SwitchFwd { pos: k, seq });
                    }
                }
                _ => {}
            }
        }
        // backward switchback: detect an RHS window starting at step k
        for d in 1..=(expr.steps.len().saturating_sub(k)) / 2 {
            if let Some(seq) = extract_rhs_pattern(&expr.steps[k..k + 2 * d]) {
                let l = subs[k].with(seq[0]);
                if !subs[k].contains(seq[0])
                    && rotation_sequence_cached(sys, l, seq[0], seq[d]).as_deref() == Some(&seq)
                {
                    out.push(BraidRelation::SwitchBwd { pos: k, seq });
                }
            }
        }
    }
    out.sort();
    out
}

fn extract_rhs_pattern(steps: &[Step]) -> Option<Vec<usize>> {
    // (−u1, +u0, −u2, +u1, ..., −ud, +u_{d-1})
    let d = steps.len() / 2;
    if steps.len() != 2 * d || d == 0 {
        return None;
    }
    let mut seq = vec![0usize; d + 1];
    for k in 0..d {
        match (steps[2 * k], steps[2 * k + 1]) {
            (Step::Remove(a), Step::Add(b)) => {
                seq[k + 1] = a;
                if k == 0 {
                    seq[0] = b;
                } else if seq[k] != b {
                    return None;
                }
            }
            _ => return None,
        }
    }
    // consecutive entries must differ
    if (0..d).any(|k| seq[k] == seq[k + 1]) {
        return None;
    }
    Some(seq)
}

/// BFS over the braid-move graph from X to Y; compose elementary rex
/// moves along the path. With `alt` set the tie-break is reversed.
pub fn rex_move(
    real: &Realization,
    from: &Expression,
    to: &Expression,
    alt: bool,
) -> Result<Morphism> {
    let sys = &real.sys;
    if from == to {
        return Ok(Morphism::identity(from.clone()));
    }
    let mut parent: HashMap<Expression, (Expression, BraidRelation)> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(from.clone(), (from.clone(), BraidRelation::UpUp { pos: usize::MAX }));
    queue.push_back(from.clone());
    'bfs: while let Some(cur) = queue.pop_front() {
        let mut moves = braid_moves(sys, &cur);
        if alt {
            moves.reverse();
        }
        for mv in moves {
            let nxt = mv.apply_to(&cur);
            if parent.contains_key(&nxt) {
                continue;
            }
            parent.insert(nxt.clone(), (cur.clone(), mv));
            if nxt == *to {
                break 'bfs;
            }
            queue.push_back(nxt);
        }
    }
    if !parent.contains_key(to) {
        return Err(Error::NotConnected);
    }
    // reconstruct the chain of relations
    let mut chain = Vec::new();
    let mut cur = to.clone();
    while cur != *from {
        let (prev, mv) = parent[&cur].clone();
        chain.push((prev.clone(), mv));
        cur = prev;
    }
    chain.reverse();
    let mut m = Morphism::identity(from.clone());
    for (at, mv) in chain {
        let piece = mv.morphism(real, &at)?;
        m = m.then(&piece)?;
    }
    if m.target != *to {
        return Err(Error::BoundaryMismatch("rex move did not reach the target".into()));
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Sinister cap diagrams

/// The alternation condition: each color appears an even number of times,
/// alternating −s then +s.
pub fn check_alternation(expr: &Expression, rank: usize) -> Result<()> {
    for g in 0..rank {
        let mut expect_remove = true;
        let mut count = 0usize;
        for &st in &expr.steps {
            if st.gen() != g {
                continue;
            }
            match (st, expect_remove) {
                (Step::Remove(_), true) => expect_remove = false,
                (Step::Add(_), false) => expect_remove = true,
                _ => {
                    return Err(Error::AlternationViolated(format!(
                        "generator {g} out of order"
                    )))
                }
            }
            count += 1;
        }
        if count % 2 != 0 {
            return Err(Error::AlternationViolated(format!("generator {g} odd count")));
        }
    }
    Ok(())
}

/// Build the sinister cap diagram for a boundary satisfying the
/// alternation condition: left-facing crossings and counterclockwise caps
/// only, each pair of strands crossing at most once. The target is the
/// identity 1-morphism of the start subset.
pub fn sinister_cap(real: &Realization, boundary: &Expression) -> Result<Morphism> {
    boundary.validate()?;
    check_alternation(boundary, real.sys.rank())?;
    // pair up strand endpoints: consecutive (−x, +x) occurrences
    let mut strand_of = vec![usize::MAX; boundary.steps.len()];
    let mut open: HashMap<usize, usize> = HashMap::new(); // color → strand id of pending −x
    let mut n_strands = 0;
    let mut crossings_allowed: HashMap<(usize, usize), bool> = HashMap::new();
    let mut ends = Vec::new(); // strand → end position
    let mut starts = Vec::new(); // strand → start position
    for (i, &st) in boundary.steps.iter().enumerate() {
        match st {
            Step::Remove(g) => {
                let id = n_strands;
                n_strands += 1;
                open.insert(g, id);
                strand_of[i] = id;
                ends.push(i);
                starts.push(usize::MAX);
            }
            Step::Add(g) => {
                let id = open.remove(&g).expect("alternation guarantees a pending end");
                strand_of[i] = id;
                starts[id] = i;
            }
        }
    }
    // interleaving criterion: strands X, Y cross iff end_X < end_Y < start_X < start_Y
    let interleaved =
        |x: usize, y: usize| ends[x] < ends[y] && ends[y] < starts[x] && starts[x] < starts[y];
    for x in 0..n_strands {
        for y in 0..n_strands {
            crossings_allowed.insert((x, y), interleaved(x, y) || interleaved(y, x));
        }
    }
    let mut m = Morphism::identity(boundary.clone());
    let mut steps: Vec<Step> = boundary.steps.clone();
    let mut pts: Vec<usize> = strand_of;
    while !steps.is_empty() {
        // leftmost up-leg
        let i = steps
            .iter()
            .position(|st| st.is_add())
            .expect("nonempty alternating boundary has an up-leg");
        let x_strand = pts[i];
        let j = pts[..i]
            .iter()
            .rposition(|&p| p == x_strand)
            .expect("matching down-leg sits to the left");
        // march the up-leg left across the down-legs strictly between
        let mut cur = i;
        while cur > j + 1 {
            let y = match steps[cur - 1] {
                Step::Remove(y) => y,
                Step::Add(_) => unreachable!("everything left of the leftmost up-leg descends"),
            };
            let x_color = steps[cur].gen();
            debug_assert!(
                crossings_allowed[&(x_strand, pts[cur - 1])],
                "sinister marching only crosses interleaved strands"
            );
            m.push(real, cur - 1, GenBox::CrossLeft { s: y, t: x_color })?;
            steps.swap(cur - 1, cur);
            pts.swap(cur - 1, cur);
            cur -= 1;
        }
        let color = steps[cur].gen();
        m.push(real, j, GenBox::CcwCap { s: color })?;
        steps.drain(j..=j + 1);
        pts.drain(j..=j + 1);
    }
    debug_assert_eq!(m.target, Expression::identity(boundary.start));
    // degree bookkeeping: ℓ(L_•) + 2·deg = 0
    debug_assert_eq!(boundary.length(&real.sys) + 2 * m.degree, 0);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::one_tensor;
    use crate::cosets::{all_cosets, canonical_rex, coset_of, reduced_expressions};
    use crate::coxeter::Elt;

    fn setup(name: &str) -> Realization {
        Realization::preset(name).unwrap()
    }

    fn expr(real: &Realization, text: &str) -> Expression {
        Expression::parse(&real.sys, text).unwrap()
    }

    #[test]
    fn flip_dual_involutive() {
        let r = setup("A2");
        let e = expr(&r, "{}+s+t");
        let mut m = Morphism::identity(e);
        m.push(&r, 0, GenBox::CrossUp { s: 1, t: 0 }).unwrap();
        assert_eq!(m.flip_dual().flip_dual(), m);
        assert_eq!(m.flip_dual().degree, m.degree);
        // clockwise cap flips to clockwise cup
        assert_eq!(GenBox::CwCap { s: 0 }.dual(), GenBox::CwCup { s: 0 });
    }

    #[test]
    fn composition_degree_additivity() {
        let r = setup("A2");
        let e = expr(&r, "{s}-s+t");
        let mut m1 = Morphism::identity(e.clone());
        m1.push(&r, 0, GenBox::CrossLeft { s: 0, t: 1 }).unwrap();
        let mut m2 = Morphism::identity(m1.target.clone());
        m2.push(&r, 0, GenBox::CrossRight { s: 0, t: 1 }).unwrap();
        let m = m1.then(&m2).unwrap();
        assert_eq!(m.degree, m1.degree + m2.degree);
        assert_eq!(m.source, e);
        assert_eq!(m.target, e);
    }

    #[test]
    fn evaluate_identity_and_cap() {
        let r = setup("A2");
        let e = expr(&r, "{}+s-s");
        let sp = BSSpace::new(&r, e.clone());
        let x = one_tensor(&r, &sp);
        let id = Morphism::identity(e.clone());
        assert_eq!(evaluate(&r, &id, &x).unwrap(), x);
        // clockwise cap sends 1⊗1⊗1 to 1
        let mut cap = Morphism::identity(e);
        cap.push(&r, 0, GenBox::CwCap { s: 0 }).unwrap();
        let out = evaluate(&r, &cap, &x).unwrap();
        let tgt = BSSpace::new(&r, Expression::identity(Subset::EMPTY));
        assert_eq!(out, one_tensor(&r, &tgt));
    }

    #[test]
    fn rotation_sequences() {
        // A2: L={s,t}, u0=s, ud=s → (s,t,s)
        let r = setup("A2");
        let seq = rotation_sequence(&r.sys, Subset::full(2), 0, 0).unwrap();
        assert_eq!(seq, vec![0, 1, 0]);
        // excluded case: ud = w_L u0 w_L = t
        assert!(rotation_sequence(&r.sys, Subset::full(2), 0, 1).is_err());
        // B2: w_L s w_L = s, so ud must be t
        let b = setup("B2");
        let seq = rotation_sequence(&b.sys, Subset::full(2), 0, 1).unwrap();
        assert_eq!(seq.first(), Some(&0));
        assert_eq!(seq.last(), Some(&1));
        assert!(rotation_sequence(&b.sys, Subset::full(2), 0, 0).is_err());
        // I2(5) group-level search reproduces d=4, (s,t,s,t,s)
        let sys5 =
            CoxeterSystem::build(crate::coxeter::CoxeterMatrix::dihedral(5), 100).unwrap();
        let seq = rotation_sequence(&sys5, Subset::full(2), 0, 0).unwrap();
        assert_eq!(seq, vec![0, 1, 0, 1, 0]);
        // G2: m=6 even, w_L central: w_L s w_L = s: ud must be t
        let g = setup("G2");
        let seq = rotation_sequence(&g.sys, Subset::full(2), 0, 1).unwrap();
        assert_eq!(seq.len() - 1, 5, "G2 rotation sequence has d=5");
    }

    #[test]
    fn switchback_composite_is_identity_on_one_tensor() {
        for name in ["A2", "B2", "G2"] {
            let r = setup(name);
            let sys = &r.sys;
            let l = Subset::full(2);
            for u0 in 0..2 {
                for ud in 0..2 {
                    let Ok(seq) = rotation_sequence(sys, l, u0, ud) else { continue };
                    let i = l.without(u0);
                    let lhs = Expression {
                        start: i,
                        steps: vec![Step::Add(u0), Step::Remove(ud)],
                    };
                    let phi = switchback_forward(&r, &lhs, 0, &seq).unwrap();
                    assert_eq!(phi.target, switchback_rhs(i, &seq), "{name}");
                    let psi = switchback_backward(&r, &phi.target, 0, &seq).unwrap();
                    assert_eq!(phi.degree, 0, "{name} φ degree");
                    assert_eq!(psi.degree, 0, "{name} ψ degree");
                    let round = phi.then(&psi).unwrap();
                    let sp = BSSpace::new(&r, lhs.clone());
                    let x = one_tensor(&r, &sp);
                    let out = evaluate(&r, &round, &x).unwrap();
                    assert_eq!(out, x, "{name} switchback projection∘inclusion");
                }
            }
        }
    }

    #[test]
    fn rex_moves_preserve_one_tensor() {
        let r = setup("A2");
        let sys = &r.sys;
        // the 6-valent composite between [∅,s,∅,t,∅,s,∅] and [∅,t,∅,s,∅,t,∅]
        let x = expr(&r, "{}+s-s+t-t+s-s");
        let y = expr(&r, "{}+t-t+s-s+t-t");
        let m = rex_move(&r, &x, &y, false).unwrap();
        assert_eq!(m.degree, 0);
        let sp = BSSpace::new(&r, x.clone());
        let one = one_tensor(&r, &sp);
        let out = evaluate(&r, &m, &one).unwrap();
        let sp_y = BSSpace::new(&r, y.clone());
        assert_eq!(out, one_tensor(&r, &sp_y));
        // rex_move(X, X) is the identity pipeline
        let m = rex_move(&r, &x, &x, false).unwrap();
        assert!(m.slices.is_empty());
        // every pair of reduced expressions for every A2 coset is connected
        for i in sys.full_set().subsets() {
            for j in sys.full_set().subsets() {
                for p in all_cosets(sys, i, j) {
                    let rexes = reduced_expressions(sys, &p, 64);
                    let base = &rexes[0];
                    for other in &rexes {
                        let m = rex_move(&r, base, other, false).unwrap();
                        assert_eq!(m.degree, 0);
                        let sp = BSSpace::new(&r, base.clone());
                        let out = evaluate(&r, &m, &one_tensor(&r, &sp)).unwrap();
                        let sp2 = BSSpace::new(&r, other.clone());
                        assert_eq!(out, one_tensor(&r, &sp2));
                    }
                }
            }
        }
    }

    #[test]
    fn sinister_cap_examples() {
        let r = setup("A2");
        // empty boundary → empty diagram of degree 0
        let m = sinister_cap(&r, &Expression::identity(Subset::single(0))).unwrap();
        assert!(m.slices.is_empty());
        assert_eq!(m.degree, 0);
        // [I −s +s] → a single counterclockwise cap
        let b = expr(&r, "{s}-s+s");
        let m = sinister_cap(&r, &b).unwrap();
        assert_eq!(m.slices.len(), 1);
        assert_eq!(b.length(&r.sys) + 2 * m.degree, 0);
        // the nicecrossing pattern [−s −t +s +t] needs one crossing
        let b = expr(&r, "{s,t}-s-t+s+t");
        let m = sinister_cap(&r, &b).unwrap();
        assert_eq!(
            m.slices.iter().filter(|sl| matches!(sl.gbox, GenBox::CrossLeft { .. })).count(),
            1
        );
        assert_eq!(b.length(&r.sys) + 2 * m.degree, 0);
        // nested pattern [−s −t +t +s]: no crossing
        let b = expr(&r, "{s,t}-s-t+t+s");
        let m = sinister_cap(&r, &b).unwrap();
        assert!(m.slices.iter().all(|sl| !matches!(sl.gbox, GenBox::CrossLeft { .. })));
        // alternation violations
        assert!(sinister_cap(&r, &expr(&r, "{}+s-s")).is_err());
    }

    #[test]
    fn sinister_cap_degree_formula_sweep() {
        // all alternating boundaries of length ≤ 6 in A2 and B2
        for name in ["A2", "B2"] {
            let r = setup(name);
            let sys = &r.sys;
            let mut stack: Vec<Expression> =
                sys.full_set().subsets().into_iter().map(Expression::identity).collect();
            while let Some(e) = stack.pop() {
                if check_alternation(&e, sys.rank()).is_ok() && !e.steps.is_empty() {
                    let m = sinister_cap(&r, &e).unwrap();
                    assert_eq!(e.length(sys) + 2 * m.degree, 0, "{name} {}", e.display(sys));
                }
                if e.steps.len() < 6 {
                    let cur = e.end();
                    for g in 0..sys.rank() {
                        let st = if cur.contains(g) { Step::Remove(g) } else { Step::Add(g) };
                        let mut e2 = e.clone();
                        e2.steps.push(st);
                        stack.push(e2);
                    }
                }
            }
        }
    }

    #[test]
    fn elementary_rex_degree_zero_sweep() {
        // every braid move applicable to canonical rexes of all A2/B2 cosets
        for name in ["A2", "B2"] {
            let r = setup(name);
            let sys = &r.sys;
            for i in sys.full_set().subsets() {
                for j in sys.full_set().subsets() {
                    for p in all_cosets(sys, i, j) {
                        let e = canonical_rex(sys, &p);
                        for mv in braid_moves(sys, &e) {
                            let m = mv.morphism(&r, &e).unwrap();
                            assert_eq!(m.degree, 0, "{name} {:?}", mv);
                            assert_eq!(m.target, mv.apply_to(&e));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn forward_case_composite_identity() {
        // A1-style: the cap∘cup shaped ELL([n,m]) postcomposed with a rex
        // equals the identity on the one-tensor (checked via switchbacks in
        // A2: [∅+s−s] ⇌ [∅? ...] is not available; use the direct identity)
        let r = setup("A2");
        let e = expr(&r, "{}+s-s");
        let c = coset_of(&r.sys, Elt::ID, Subset::EMPTY, Subset::EMPTY);
        let _ = c;
        // cup then cap over the s-strand: μ-multiplication, NOT identity;
        // the identity composite is cap-then-cup tested in bimodule. Here
        // just confirm evaluate() composes pipelines correctly.
        let mut m = Morphism::identity(e.clone());
        m.push(&r, 0, GenBox::CwCap { s: 0 }).unwrap();
        m.push(&r, 0, GenBox::CwCup { s: 0 }).unwrap();
        let sp = BSSpace::new(&r, e);
        let x = one_tensor(&r, &sp);
        let out = evaluate(&r, &m, &x).unwrap();
        // Δ∘m(1⊗1) = Δ(1) = Σ c_i ⊗ d_i
        let fd = r.frobenius(Subset::EMPTY, Subset::single(0));
        let mut want = BSElement::zero();
        for (c, d) in fd.coproduct() {
            want = want
                .add(&crate::bimodule::normal_form(&r, &sp, &[c.clone(), r.one(), d.clone()]).unwrap());
        }
        assert_eq!(out, want);
    }
}

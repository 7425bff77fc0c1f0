//! Polynomial realizations: exact W-action on Sym(V), Demazure operators,
//! invariant subrings, Frobenius traces, dual bases, coproduct elements,
//! μ-elements, and the P_I solutions of ∂_{w_I}(P) = 1.

use crate::coxeter::{CoxeterSystem, Elt};
use crate::poly::{monomials_of_degree, q_int, Mono, Poly, Q};
use crate::subset::Subset;
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Deterministic policy for choosing the P_L solutions; `Alt` exists for
/// the change-of-basis certification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum PPolicy {
    #[default]
    Lex,
    AltLex,
}

/// Dual bases and structure constants of a Frobenius extension R^J ⊆ R^I
/// (here `small` = I ⊆ `big` = J in the subset order; note the ring
/// inclusion is reversed).
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub small: Subset,
    pub big: Subset,
    /// Basis of R^small over R^big: c_y = ∂_small ∂_y (P_big).
    pub basis: Vec<Poly>,
    /// Dual basis: ∂^small_big(c_i · d_j) = δ_ij exactly.
    pub dual: Vec<Poly>,
    /// μ^small_big = Σ c_i d_i = product of roots in Φ⁺_big ∖ Φ⁺_small.
    pub mu: Poly,
    /// Index of the basis element equal to 1.
    pub unit_index: usize,
}

impl FrobeniusData {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coproduct Δ = Σ c_i ⊗ d_i as (c, d) pairs.
    pub fn coproduct(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.basis.iter().zip(self.dual.iter())
    }
}

pub struct Realization {
    pub sys: Arc<CoxeterSystem>,
    pub cartan: Vec<Vec<Q>>,
    nvars: usize,
    /// substitution images of the variables under each generator
    gen_images: Vec<Vec<Poly>>,
    p_cache: RwLock<HashMap<(Subset, PPolicy), Poly>>,
    frob_cache: RwLock<HashMap<(Subset, Subset, PPolicy), Arc<FrobeniusData>>>,
    roots_cache: RwLock<HashMap<Subset, Vec<Poly>>>,
    inv_basis_cache: RwLock<HashMap<(Subset, i64), Vec<Poly>>>,
    trace_cache: RwLock<HashMap<(Subset, Subset), HashMap<Poly, Poly>>>,
    invariant_cache: RwLock<HashMap<Subset, HashMap<Poly, bool>>>,
}

impl Realization {
    pub fn preset(name: &str) -> Result<Realization> {
        let sys = Arc::new(CoxeterSystem::preset(name)?);
        let cartan = cartan_preset(name)?;
        Realization::new(sys, cartan)
    }

    pub fn new(sys: Arc<CoxeterSystem>, cartan: Vec<Vec<Q>>) -> Result<Realization> {
        let n = sys.rank();
        if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::BadInput("cartan matrix must be square over the generators".into()));
        }
        for (s, row) in cartan.iter().enumerate() {
            if row[s] != q_int(2) {
                return Err(Error::BadInput("balanced realization requires a(s,s) = 2".into()));
            }
        }
        let gen_images: Vec<Vec<Poly>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        // s(α_t) = α_t − a(s,t) α_s
                        Poly::var(n, t).sub(&Poly::var(n, s).scale(&cartan[s][t]))
                    })
                    .collect()
            })
            .collect();
        let r = Realization {
            sys,
            cartan,
            nvars: n,
            gen_images,
            p_cache: RwLock::new(HashMap::new()),
            frob_cache: RwLock::new(HashMap::new()),
            roots_cache: RwLock::new(HashMap::new()),
            inv_basis_cache: RwLock::new(HashMap::new()),
            trace_cache: RwLock::new(HashMap::new()),
            invariant_cache: RwLock::new(HashMap::new()),
        };
        r.check_coxeter_relations()?;
        // root positivity dichotomy for the full group
        r.positive_roots(r.sys.full_set())?;
        Ok(r)
    }

    fn check_coxeter_relations(&self) -> Result<()> {
        let n = self.nvars;
        for s in 0..n {
            for t in 0..n {
                let m = self.sys.matrix.m[s][t] as usize;
                // apply (σ_s σ_t)^m to every variable
                for g in 0..n {
                    let mut v = Poly::var(n, g);
                    for _ in 0..m {
                        v = v.substitute(&self.gen_images[t]);
                        v = v.substitute(&self.gen_images[s]);
                    }
                    if v != Poly::var(n, g) {
                        return Err(Error::BadInput(format!(
                            "cartan matrix violates the Coxeter relation for ({s},{t})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars)
    }

    pub fn alpha(&self, s: usize) -> Poly {
        Poly::var(self.nvars, s)
    }

    /// w acting on f, along the normal form of w.
    pub fn act(&self, w: Elt, f: &Poly) -> Poly {
        let mut out = f.clone();
        for &s in self.sys.normal_form(w).iter().rev() {
            out = out.substitute(&self.gen_images[s as usize]);
        }
        out
    }

    pub fn act_gen(&self, s: usize, f: &Poly) -> Poly {
        f.substitute(&self.gen_images[s])
    }

    /// ∂_s f = (f − s·f)/α_s; the division is always exact.
    pub fn demazure(&self, s: usize, f: &Poly) -> Poly {
        let num = f.sub(&self.act_gen(s, f));
        num.div_var(s).expect("f − s(f) is divisible by α_s")
    }

    /// ∂ along a word, rightmost letter applied first. For non-reduced
    /// words this computes the nil-Coxeter composite (possibly zero).
    pub fn demazure_word(&self, word: &[u8], f: &Poly) -> Poly {
        let mut out = f.clone();
        for &s in word.iter().rev() {
            out = self.demazure(s as usize, &out);
        }
        out
    }

    /// ∂_w along the normal form of w.
    pub fn demazure_elt(&self, w: Elt, f: &Poly) -> Poly {
        self.demazure_word(self.sys.normal_form(w), f)
    }

    /// ∂_I := ∂_{w_I}.
    pub fn demazure_set(&self, i: Subset, f: &Poly) -> Poly {
        self.demazure_elt(self.sys.longest_element(i), f)
    }

    pub fn is_invariant(&self, f: &Poly, i: Subset) -> bool {
        if i.is_empty() || f.is_constant() {
            return true;
        }
        if let Some(m) = self.invariant_cache.read().unwrap().get(&i) {
            if let Some(&hit) = m.get(f) {
                return hit;
            }
        }
        let out = i.iter().all(|s| self.act_gen(s, f) == *f);
        self.invariant_cache
            .write()
            .unwrap()
            .entry(i)
            .or_default()
            .insert(f.clone(), out);
        out
    }

    /// Frobenius trace ∂^I_J = ∂_{w_J w_I⁻¹} : R^I → R^J for I ⊆ J.
    pub fn trace(&self, small: Subset, big: Subset, f: &Poly) -> Result<Poly> {
        if !small.is_subset_of(big) {
            return Err(Error::TypeMismatch("trace needs I ⊆ J".into()));
        }
        if small == big {
            if !self.is_invariant(f, small) {
                return Err(Error::NotInvariant);
            }
            return Ok(f.clone());
        }
        if let Some(m) = self.trace_cache.read().unwrap().get(&(small, big)) {
            if let Some(hit) = m.get(f) {
                return Ok(hit.clone());
            }
        }
        if !self.is_invariant(f, small) {
            return Err(Error::NotInvariant);
        }
        let w = self.sys.mult(
            self.sys.longest_element(big),
            self.sys.inverse(self.sys.longest_element(small)),
        );
        let out = self.demazure_elt(w, f);
        debug_assert!(self.is_invariant(&out, big), "trace must land in R^J");
        self.trace_cache
            .write()
            .unwrap()
            .entry((small, big))
            .or_default()
            .insert(f.clone(), out.clone());
        Ok(out)
    }

    /// Inclusion R^J ⊆ R^I for I ⊆ J: identity on representations, with an
    /// invariance recheck.
    pub fn include(&self, small: Subset, big: Subset, f: &Poly) -> Result<Poly> {
        if !small.is_subset_of(big) {
            return Err(Error::TypeMismatch("include needs I ⊆ J".into()));
        }
        if !self.is_invariant(f, big) {
            return Err(Error::NotInvariant);
        }
        Ok(f.clone())
    }

    /// The iterated inclusion/trace operator ∂_{L_•} of a multistep
    /// (I,J)-expression, as a map R^J → R^I.
    pub fn demazure_expr(&self, ms: &crate::cosets::Multistep, f: &Poly) -> Result<Poly> {
        let m = ms.outer.len();
        let mut cur = f.clone();
        for k in (0..m).rev() {
            cur = self.trace(ms.inner[k + 1], ms.outer[k], &cur)?;
            cur = self.include(ms.inner[k], ms.outer[k], &cur)?;
        }
        Ok(cur)
    }

    /// A homogeneous P with ∂_{w_I}(P) = 1, of formal degree 2ℓ(I); the
    /// policy picks which monomial solution.
    pub fn find_p(&self, i: Subset, policy: PPolicy) -> Poly {
        if let Some(p) = self.p_cache.read().unwrap().get(&(i, policy)) {
            return p.clone();
        }
        let deg = self.sys.len_longest(i);
        let mut monos = monomials_of_degree(self.nvars, deg);
        if policy == PPolicy::AltLex {
            monos.reverse();
        }
        let w = self.sys.longest_element(i);
        let mut found = None;
        for m in monos {
            let f = {
                let mut p = Poly::zero();
                p.add_term(m.clone(), q_int(1));
                p
            };
            let img = self.demazure_elt(w, &f);
            let c = img.constant_term();
            if !c.is_zero() {
                debug_assert!(img.is_constant());
                found = Some(f.scale(&(q_int(1) / c)));
                break;
            }
        }
        let p = found.expect("Demazure surjectivity guarantees a monomial solution");
        debug_assert_eq!(self.demazure_elt(w, &p), self.one());
        self.p_cache.write().unwrap().insert((i, policy), p.clone());
        p
    }

    /// Positive roots {w(α_s) : w ∈ W_I, s ∈ I} ∩ positive cone; the orbit
    /// must split into ± pairs or the realization is rejected.
    pub fn positive_roots(&self, i: Subset) -> Result<Vec<Poly>> {
        if let Some(r) = self.roots_cache.read().unwrap().get(&i) {
            return Ok(r.clone());
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for w in self.sys.parabolic_elements(i) {
            for s in i.iter() {
                let root = self.act(w, &self.alpha(s));
                match root.linear_sign(self.nvars) {
                    Some(true) => {
                        if !pos.contains(&root) {
                            pos.push(root);
                        }
                    }
                    Some(false) => {
                        if !neg.contains(&root) {
                            neg.push(root);
                        }
                    }
                    None => return Err(Error::SignAmbiguity),
                }
            }
        }
        if pos.len() != neg.len() || pos.iter().any(|r| !neg.contains(&r.neg())) {
            return Err(Error::SignAmbiguity);
        }
        self.roots_cache.write().unwrap().insert(i, pos.clone());
        Ok(pos)
    }

    /// μ^I_J = product of the roots in Φ⁺_J ∖ Φ⁺_I, for I ⊆ J.
    pub fn mu(&self, small: Subset, big: Subset) -> Poly {
        let big_roots = self.positive_roots(big).expect("realization is root-positive");
        let small_roots = self.positive_roots(small).expect("realization is root-positive");
        let mut out = self.one();
        for r in big_roots {
            if !small_roots.contains(&r) {
                out = out.mul(&r);
            }
        }
        out
    }

    /// μ for a triple or quadruple union pattern: roots of `big` not in any
    /// of the listed subsets.
    pub fn mu_excluding(&self, big: Subset, excluded: &[Subset]) -> Poly {
        let big_roots = self.positive_roots(big).expect("realization is root-positive");
        let ex: Vec<Vec<Poly>> = excluded
            .iter()
            .map(|&k| self.positive_roots(k).expect("realization is root-positive"))
            .collect();
        let mut out = self.one();
        for r in big_roots {
            if ex.iter().all(|rs| !rs.contains(&r)) {
                out = out.mul(&r);
            }
        }
        out
    }

    /// Dual bases for the Frobenius extension R^big ⊆ R^small.
    pub fn frobenius(&self, small: Subset, big: Subset) -> Arc<FrobeniusData> {
        self.frobenius_with_policy(small, big, PPolicy::Lex)
    }

    pub fn frobenius_with_policy(
        &self,
        small: Subset,
        big: Subset,
        policy: PPolicy,
    ) -> Arc<FrobeniusData> {
        assert!(small.is_subset_of(big), "frobenius data needs I ⊆ J");
        if let Some(fd) = self.frob_cache.read().unwrap().get(&(small, big, policy)) {
            return fd.clone();
        }
        let fd = Arc::new(
            self.build_frobenius(small, big, policy)
                .expect("Frobenius solve cannot fail for valid realizations"),
        );
        self.frob_cache.write().unwrap().insert((small, big, policy), fd.clone());
        fd
    }

    fn build_frobenius(
        &self,
        small: Subset,
        big: Subset,
        policy: PPolicy,
    ) -> Result<FrobeniusData> {
        let sys = &self.sys;
        let p_big = self.find_p(big, policy);
        let w_small = sys.longest_element(small);
        let w_big = sys.longest_element(big);
        // minimal representatives of W_small \ W_big, sorted by length
        let mut ys: Vec<Elt> = sys
            .parabolic_elements(big)
            .into_iter()
            .filter(|&y| sys.descents(y, true).intersect(small).is_empty())
            .collect();
        ys.sort_by_key(|&y| (std::cmp::Reverse(sys.length(y)), y));
        // c_y = ∂_small ∂_y (P_big); almost dual g_y = ∂_small ∂_{y°} (P_big)
        let mut basis = Vec::new();
        let mut almost = Vec::new();
        for &y in &ys {
            basis.push(self.demazure_set(small, &self.demazure_elt(y, &p_big)));
            let y_circ = sys.mult(sys.mult(w_small, y), w_big);
            almost.push(self.demazure_set(small, &self.demazure_elt(y_circ, &p_big)));
        }
        let rank = basis.len();
        // Gram matrix G[a][b] = trace(c_a·g_b) = δ + N with N nilpotent
        let mut gram = vec![vec![Poly::zero(); rank]; rank];
        for a in 0..rank {
            for b in 0..rank {
                gram[a][b] = self.trace(small, big, &basis[a].mul(&almost[b]))?;
            }
        }
        for (a, row) in gram.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                let want = if a == b { q_int(1) } else { q_int(0) };
                if e.constant_term() != want {
                    return Err(Error::SolveFailed("Gram matrix is not almost-unitriangular".into()));
                }
            }
        }
        // X = G⁻¹ = Σ (−N)^k; entries of N have positive degree, so the
        // series terminates
        let mut x = identity_matrix(rank, self.nvars);
        let mut n_mat = gram.clone();
        for (a, row) in n_mat.iter_mut().enumerate() {
            for (b, e) in row.iter_mut().enumerate() {
                if a == b {
                    *e = e.sub(&self.one());
                }
            }
        }
        let mut power = identity_matrix(rank, self.nvars);
        let mut sign = false;
        for _ in 0..=2 * rank + 2 {
            power = mat_mul(&power, &n_mat);
            sign = !sign;
            if mat_is_zero(&power) {
                break;
            }
            for a in 0..rank {
                for b in 0..rank {
                    x[a][b] = if sign { x[a][b].sub(&power[a][b]) } else { x[a][b].add(&power[a][b]) };
                }
            }
        }
        if !mat_is_zero(&power) {
            return Err(Error::SolveFailed("Gram correction did not terminate".into()));
        }
        // d_b = Σ_a g_a · X[a][b]
        let mut dual = Vec::new();
        for b in 0..rank {
            let mut d = Poly::zero();
            for a in 0..rank {
                d = d.add(&almost[a].mul(&x[a][b]));
            }
            dual.push(d);
        }
        // exact duality check
        for a in 0..rank {
            for b in 0..rank {
                let tr = self.trace(small, big, &basis[a].mul(&dual[b]))?;
                let want =
                    if a == b { self.one() } else { Poly::zero() };
                if tr != want {
                    return Err(Error::SolveFailed("dual basis verification failed".into()));
                }
            }
        }
        // μ = Σ c_i d_i must equal the positive-root product
        let mut mu_sum = Poly::zero();
        for a in 0..rank {
            mu_sum = mu_sum.add(&basis[a].mul(&dual[a]));
        }
        let mu = self.mu(small, big);
        if mu_sum != mu {
            return Err(Error::SolveFailed("Σ c·d does not match the root-product μ".into()));
        }
        let unit_index = basis
            .iter()
            .position(|c| *c == self.one())
            .expect("the c-basis contains 1 at the longest minimal representative");
        Ok(FrobeniusData { small, big, basis, dual, mu, unit_index })
    }

    /// Almost dual bases of Theorem-style generality: p an (I,J)-coset in
    /// W_L. Returns ({∂_λ∂_y(P_I)}, {∂_{p_}∂_J∂_{y°}(P_L)}) indexed by the
    /// minimal representatives y of W_λ\W_I.
    pub fn almost_dual_pair(
        &self,
        p: &crate::cosets::DoubleCoset,
        l: Subset,
        p_i: &Poly,
        p_l: &Poly,
    ) -> (Vec<Elt>, Vec<Poly>, Vec<Poly>) {
        let sys = &self.sys;
        assert!(p.i.union(p.j).is_subset_of(l));
        let lam = p.left_red;
        let mut ys: Vec<Elt> = sys
            .parabolic_elements(p.i)
            .into_iter()
            .filter(|&y| sys.descents(y, true).intersect(lam).is_empty())
            .collect();
        ys.sort();
        let w_j = sys.longest_element(p.j);
        let w_l = sys.longest_element(l);
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for &y in &ys {
            lefts.push(self.demazure_set(lam, &self.demazure_elt(y, p_i)));
            // y° = w_J p_⁻¹ y w_L
            let y_circ = sys.mult(sys.mult(sys.mult(w_j, sys.inverse(p.min)), y), w_l);
            let b = self.demazure_elt(
                p.min,
                &self.demazure_set(p.j, &self.demazure_elt(y_circ, p_l)),
            );
            rights.push(b);
        }
        (ys, lefts, rights)
    }

    /// Vector-space basis of the degree-d part of R^I (formal degree).
    pub fn invariant_basis(&self, i: Subset, degree: i64) -> Vec<Poly> {
        if degree < 0 || degree % 2 != 0 {
            return vec![];
        }
        if let Some(b) = self.inv_basis_cache.read().unwrap().get(&(i, degree)) {
            return b.clone();
        }
        let monos = monomials_of_degree(self.nvars, (degree / 2) as usize);
        // rows: coefficients of ∂_s(mono) over all s ∈ I, stacked
        let cols = monos.len();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut row_index: HashMap<(usize, Mono), usize> = HashMap::new();
        for s in i.iter() {
            for (k, m) in monos.iter().enumerate() {
                let mut f = Poly::zero();
                f.add_term(m.clone(), q_int(1));
                let img = self.demazure(s, &f);
                for (m2, c) in &img.terms {
                    let r = *row_index
                        .entry((s, m2.clone()))
                        .or_insert_with(|| {
                            rows.push(vec![Q::zero(); cols]);
                            rows.len() - 1
                        });
                    rows[r][k] = c.clone();
                }
            }
        }
        let null = nullspace(rows, cols);
        let basis: Vec<Poly> = null
            .into_iter()
            .map(|v| {
                let mut f = Poly::zero();
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        f.add_term(monos[k].clone(), c);
                    }
                }
                f
            })
            .collect();
        self.inv_basis_cache.write().unwrap().insert((i, degree), basis.clone());
        basis
    }
}

fn identity_matrix(n: usize, nvars: usize) -> Vec<Vec<Poly>> {
    let mut m = vec![vec![Poly::zero(); n]; n];
    for (a, row) in m.iter_mut().enumerate() {
        row[a] = Poly::one(nvars);
    }
    m
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    let mut out = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

fn mat_is_zero(m: &[Vec<Poly>]) -> bool {
    m.iter().all(|row| row.iter().all(|e| e.is_zero()))
}

/// Nullspace basis of a rational matrix by fraction-free-style exact
/// Gaussian elimination; free variables are set to 1/0 in column order.
pub fn nullspace(mut rows: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        let piv = (r..rows.len()).find(|&k| !rows[k][c].is_zero());
        if let Some(k) = piv {
            rows.swap(r, k);
            let inv = Q::one() / rows[r][c].clone();
            for e in rows[r].iter_mut() {
                *e *= inv.clone();
            }
            for k2 in 0..rows.len() {
                if k2 != r && !rows[k2][c].is_zero() {
                    let f = rows[k2][c].clone();
                    for cc in 0..cols {
                        let sub = f.clone() * rows[r][cc].clone();
                        rows[k2][cc] -= sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for &(pr, pc) in &pivots {
            v[pc] = -rows[pr][free].clone();
        }
        out.push(v);
    }
    out
}

fn cartan_preset(name: &str) -> Result<Vec<Vec<Q>>> {
    let a = |n: usize| {
        let mut m = vec![vec![q_int(0); n]; n];
        for i in 0..n {
            m[i][i] = q_int(2);
            if i + 1 < n {
                m[i][i + 1] = q_int(-1);
                m[i + 1][i] = q_int(-1);
            }
        }
        m
    };
    match name {
        "A1" => Ok(a(1)),
        "A2" => Ok(a(2)),
        "A3" => Ok(a(3)),
        "A4" => Ok(a(4)),
        "B2" => Ok(vec![vec![q_int(2), q_int(-1)], vec![q_int(-2), q_int(2)]]),
        "B3" => Ok(vec![
            vec![q_int(2), q_int(-1), q_int(0)],
            vec![q_int(-2), q_int(2), q_int(-1)],
            vec![q_int(0), q_int(-1), q_int(2)],
        ]),
        "G2" => Ok(vec![vec![q_int(2), q_int(-1)], vec![q_int(-3), q_int(2)]]),
        "D4" => {
            let mut m = vec![vec![q_int(0); 4]; 4];
            for i in 0..4 {
                m[i][i] = q_int(2);
            }
            for i in 0..3 {
                m[i][3] = q_int(-1);
                m[3][i] = q_int(-1);
            }
            Ok(m)
        }
        other => Err(Error::BadInput(format!(
            "no rational realization preset for {other:?} (dihedral m=5 and H-types need irrational entries)"
        ))),
    }
}

/// Parse {"preset": "A2"} or {"cartan": [[2,-1],[-1,2]]} (the latter needs
/// an accompanying system).
pub fn cartan_from_json(text: &str) -> Result<Vec<Vec<Q>>> {
    #[derive(serde::Deserialize)]
    struct Raw {
        cartan: Vec<Vec<i64>>,
    }
    let raw: Raw =
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("cartan json: {e}")))?;
    Ok(raw.cartan.into_iter().map(|row| row.into_iter().map(q_int).collect()).collect())
}

//! Finite Coxeter system core: enumeration, arithmetic, length, descents,
//! Bruhat order, parabolic subgroups.
//!
//! Elements are indices into a fully enumerated group. Enumeration runs a
//! BFS from the identity; every new word is canonicalized to its
//! ShortLex-least reduced word by closure under braid moves and
//! ss-deletion (Tits/Matsumoto). Closures are computed once per element
//! and all reduced words are memoized, so identification is a hash lookup.

use crate::subset::Subset;
use crate::{Error, Result};
use serde::Deserialize;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::RwLock;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Sentinel for m(s,t) = ∞ in a Coxeter matrix.
pub const INFINITE_BOND: u32 = 0;

/// Handle to a group element inside a [`CoxeterSystem`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elt(pub u32);

impl Elt {
    pub const ID: Elt = Elt(0);
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoxeterMatrix {
    pub names: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(names: Vec<String>, m: Vec<Vec<u32>>) -> Result<CoxeterMatrix> {
        let n = names.len();
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::BadMatrix("matrix must be square over the generators".into()));
        }
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(Error::BadMatrix("diagonal entries must be 1".into()));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::BadMatrix("matrix must be symmetric".into()));
                }
                if i != j && m[i][j] != INFINITE_BOND && m[i][j] < 2 {
                    return Err(Error::BadMatrix("off-diagonal entries must be ≥ 2 or ∞".into()));
                }
            }
        }
        Ok(CoxeterMatrix { names, m })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn dihedral(m: u32) -> CoxeterMatrix {
        CoxeterMatrix::new(vec!["s".into(), "t".into()], vec![vec![1, m], vec![m, 1]]).unwrap()
    }

    /// Named presets. Generator names follow the paper's conventions
    /// (`c` is the hub of the D4 diagram).
    pub fn preset(name: &str) -> Result<CoxeterMatrix> {
        let chain = |names: &[&str], bonds: &[u32]| {
            let n = names.len();
            let mut m = vec![vec![2; n]; n];
            for i in 0..n {
                m[i][i] = 1;
            }
            for (i, &b) in bonds.iter().enumerate() {
                m[i][i + 1] = b;
                m[i + 1][i] = b;
            }
            CoxeterMatrix::new(names.iter().map(|s| s.to_string()).collect(), m)
        };
        match name {
            "A1" => chain(&["s"], &[]),
            "A2" => chain(&["s", "t"], &[3]),
            "A3" => chain(&["s", "t", "u"], &[3, 3]),
            "A4" => chain(&["s", "t", "u", "v"], &[3, 3, 3]),
            "B2" => chain(&["s", "t"], &[4]),
            "B3" => chain(&["s", "t", "u"], &[4, 3]),
            "G2" => chain(&["s", "t"], &[6]),
            "D4" => {
                // s, t, u all bonded to the hub c
                let names = vec!["s".into(), "t".into(), "u".into(), "c".into()];
                let mut m = vec![vec![2; 4]; 4];
                for i in 0..4 {
                    m[i][i] = 1;
                }
                for i in 0..3 {
                    m[i][3] = 3;
                    m[3][i] = 3;
                }
                CoxeterMatrix::new(names, m)
            }
            other => Err(Error::BadInput(format!("unknown preset {other:?}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<CoxeterMatrix> {
        #[derive(Deserialize)]
        struct Raw {
            generators: Vec<String>,
            m: Vec<Vec<u32>>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("matrix json: {e}")))?;
        CoxeterMatrix::new(raw.generators, raw.m)
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A fully enumerated finite Coxeter group with multiplication tables.
pub struct CoxeterSystem {
    pub matrix: CoxeterMatrix,
    n: usize,
    order: usize,
    length: Vec<u32>,
    normal_form: Vec<Vec<u8>>,
    right_mult: Vec<Vec<u32>>, // [gen][elt]
    left_mult: Vec<Vec<u32>>,  // [gen][elt]
    inverse: Vec<u32>,
    left_desc: Vec<u32>,  // bitmask per element
    right_desc: Vec<u32>, // bitmask per element
    longest: Vec<u32>,    // per subset bitmask
    bruhat: Vec<Vec<u64>>, // bit table: bruhat[y][x/64] bit x%64 set iff x ≤ y
    parabolic_cache: RwLock<HashMap<Subset, Vec<Elt>>>,
    rotation_cache: RwLock<HashMap<(Subset, usize, usize), Option<Vec<usize>>>>,
}

enum Closure {
    Reduced(HashSet<Vec<u8>>),
    NonReduced(Vec<u8>),
}

fn braid_closure(m: &CoxeterMatrix, word: &[u8]) -> Closure {
    if let Some(short) = delete_adjacent(word) {
        return Closure::NonReduced(short);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len() {
            for t in 0..m.rank() as u8 {
                let s = w[i];
                if t == s {
                    continue;
                }
                let bond = m.m[s as usize][t as usize];
                if bond == INFINITE_BOND || (bond as usize) > w.len() - i {
                    continue;
                }
                let bond = bond as usize;
                // does w[i..i+bond] alternate s,t,s,... ?
                let ok = (0..bond).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
                if !ok {
                    continue;
                }
                let mut v = w.clone();
                for k in 0..bond {
                    v[i + k] = if k % 2 == 0 { t } else { s };
                }
                if seen.contains(&v) {
                    continue;
                }
                if let Some(short) = delete_adjacent(&v) {
                    return Closure::NonReduced(short);
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    Closure::Reduced(seen)
}

fn delete_adjacent(word: &[u8]) -> Option<Vec<u8>> {
    for i in 0..word.len().saturating_sub(1) {
        if word[i] == word[i + 1] {
            let mut v = word.to_vec();
            v.drain(i..i + 2);
            return Some(v);
        }
    }
    None
}

impl CoxeterSystem {
    pub fn preset(name: &str) -> Result<CoxeterSystem> {
        CoxeterSystem::build(CoxeterMatrix::preset(name)?, DEFAULT_ELEMENT_CAP)
    }

    pub fn build(matrix: CoxeterMatrix, element_cap: usize) -> Result<CoxeterSystem> {
        let n = matrix.rank();
        if n > 30 {
            return Err(Error::BadMatrix("rank too large".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if matrix.m[i][j] == INFINITE_BOND {
                    return Err(Error::InfiniteGroupSuspected(element_cap));
                }
            }
        }

        let mut normal_form: Vec<Vec<u8>> = vec![vec![]];
        let mut length: Vec<u32> = vec![0];
        let mut right_mult: Vec<Vec<u32>> = vec![vec![u32::MAX; 1]; n];
        // word_index maps every reduced word of a registered element to its index
        let mut word_index: HashMap<Vec<u8>, u32> = HashMap::new();
        word_index.insert(vec![], 0);

        let mut level: Vec<u32> = vec![0];
        let mut prev_level_size = 1usize;
        while !level.is_empty() {
            let mut next: Vec<u32> = Vec::new();
            for &w in &level {
                for s in 0..n {
                    if right_mult[s][w as usize] != u32::MAX {
                        continue;
                    }
                    let mut word = normal_form[w as usize].clone();
                    word.push(s as u8);
                    let target = if let Some(&x) = word_index.get(&word) {
                        x
                    } else {
                        match braid_closure(&matrix, &word) {
                            Closure::NonReduced(short) => *word_index
                                .get(&short)
                                .expect("shortened word must be a known reduced word"),
                            Closure::Reduced(words) => {
                                let idx = normal_form.len() as u32;
                                if normal_form.len() >= element_cap {
                                    return Err(if next.len() >= prev_level_size {
                                        Error::InfiniteGroupSuspected(element_cap)
                                    } else {
                                        Error::GroupTooLarge(element_cap)
                                    });
                                }
                                let canon = words.iter().min().unwrap().clone();
                                for v in words {
                                    word_index.insert(v, idx);
                                }
                                normal_form.push(canon);
                                length.push(length[w as usize] + 1);
                                for col in right_mult.iter_mut() {
                                    col.push(u32::MAX);
                                }
                                next.push(idx);
                                idx
                            }
                        }
                    };
                    right_mult[s][w as usize] = target;
                    right_mult[s][target as usize] = w;
                }
            }
            prev_level_size = level.len().max(1);
            level = next;
        }

        let order = normal_form.len();

        // left multiplication via parents in the right Cayley graph
        let mut left_mult: Vec<Vec<u32>> = vec![vec![u32::MAX; order]; n];
        for s in 0..n {
            left_mult[s][0] = word_index[&vec![s as u8]];
        }
        // elements were discovered in increasing length order, so index order works
        for w in 1..order {
            let word = &normal_form[w];
            let last = word[word.len() - 1] as usize;
            let parent = word_index[&word[..word.len() - 1]];
            for s in 0..n {
                left_mult[s][w] = right_mult[last][left_mult[s][parent as usize] as usize];
            }
        }

        let mut inverse: Vec<u32> = vec![0; order];
        for w in 0..order {
            let mut x = 0u32;
            for &s in normal_form[w].iter().rev() {
                x = right_mult[s as usize][x as usize];
            }
            inverse[w] = x;
        }

        let mut left_desc = vec![0u32; order];
        let mut right_desc = vec![0u32; order];
        for w in 0..order {
            for s in 0..n {
                if length[left_mult[s][w] as usize] < length[w] {
                    left_desc[w] |= 1 << s;
                }
                if length[right_mult[s][w] as usize] < length[w] {
                    right_desc[w] |= 1 << s;
                }
            }
        }

        // longest element of each standard parabolic
        let mut longest = vec![0u32; 1 << n];
        for bits in 1..(1u32 << n) {
            let mut w = 0u32;
            loop {
                let asc = Subset(bits & !right_desc[w as usize]);
                match asc.iter().next() {
                    Some(s) => w = right_mult[s][w as usize],
                    None => break,
                }
            }
            longest[bits as usize] = w;
        }

        // Bruhat order table, filled in increasing length of y
        let words_per_row = order.div_ceil(64);
        let mut bruhat = vec![vec![0u64; words_per_row]; order];
        bruhat[0][0] = 1; // id ≤ id
        for y in 1..order {
            let s = (right_desc[y].trailing_zeros()) as usize;
            let ys = right_mult[s][y] as usize; // shorter
            let mut row = bruhat[ys].clone();
            // x ≤ y iff (xs ≤ ys when xs < x) or (x ≤ ys or xs ≤ ys when xs > x)
            for x in 0..order {
                let xs = right_mult[s][x] as usize;
                let le = if length[xs] < length[x] {
                    bruhat[ys][xs / 64] >> (xs % 64) & 1 == 1
                } else {
                    (bruhat[ys][x / 64] >> (x % 64) & 1 == 1)
                        || (bruhat[ys][xs / 64] >> (xs % 64) & 1 == 1)
                };
                if le {
                    row[x / 64] |= 1 << (x % 64);
                }
            }
            bruhat[y] = row;
        }

        Ok(CoxeterSystem {
            matrix,
            n,
            order,
            length,
            normal_form,
            right_mult,
            left_mult,
            inverse,
            left_desc,
            right_desc,
            longest,
            bruhat,
            parabolic_cache: RwLock::new(HashMap::new()),
            rotation_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Memo slots for the rotation-sequence search (see the diagrams
    /// module); None records a failed search.
    pub fn rotation_lookup(&self, key: (Subset, usize, usize)) -> Option<Option<Vec<usize>>> {
        self.rotation_cache.read().unwrap().get(&key).cloned()
    }

    pub fn rotation_store(&self, key: (Subset, usize, usize), value: Option<Vec<usize>>) {
        self.rotation_cache.write().unwrap().insert(key, value);
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.order as u32).map(Elt)
    }

    pub fn length(&self, w: Elt) -> usize {
        self.length[w.idx()] as usize
    }

    /// ShortLex-least reduced word.
    pub fn normal_form(&self, w: Elt) -> &[u8] {
        &self.normal_form[w.idx()]
    }

    pub fn gen(&self, s: usize) -> Elt {
        Elt(self.left_mult[s][0])
    }

    pub fn right_mult_gen(&self, w: Elt, s: usize) -> Elt {
        Elt(self.right_mult[s][w.idx()])
    }

    pub fn left_mult_gen(&self, s: usize, w: Elt) -> Elt {
        Elt(self.left_mult[s][w.idx()])
    }

    pub fn inverse(&self, w: Elt) -> Elt {
        Elt(self.inverse[w.idx()])
    }

    /// Group product via iterated generator tables on the normal form of x.
    pub fn mult(&self, w: Elt, x: Elt) -> Elt {
        let mut acc = w;
        for &s in &self.normal_form[x.idx()] {
            acc = self.right_mult_gen(acc, s as usize);
        }
        acc
    }

    pub fn elt_of_word(&self, word: &[u8]) -> Elt {
        let mut acc = Elt::ID;
        for &s in word {
            acc = self.right_mult_gen(acc, s as usize);
        }
        acc
    }

    pub fn conjugate(&self, g: Elt, w: Elt) -> Elt {
        // g w g^{-1}
        self.mult(self.mult(g, w), self.inverse(g))
    }

    pub fn descents(&self, w: Elt, left: bool) -> Subset {
        if left {
            Subset(self.left_desc[w.idx()])
        } else {
            Subset(self.right_desc[w.idx()])
        }
    }

    /// Longest element of the standard parabolic W_I.
    pub fn longest_element(&self, i: Subset) -> Elt {
        Elt(self.longest[i.0 as usize])
    }

    /// ℓ(I) := ℓ(w_I).
    pub fn len_longest(&self, i: Subset) -> usize {
        self.length(self.longest_element(i))
    }

    pub fn bruhat_leq(&self, x: Elt, y: Elt) -> bool {
        self.bruhat[y.idx()][x.idx() / 64] >> (x.idx() % 64) & 1 == 1
    }

    /// Elements of W_I, sorted by index (hence by length first).
    pub fn parabolic_elements(&self, i: Subset) -> Vec<Elt> {
        if let Some(v) = self.parabolic_cache.read().unwrap().get(&i) {
            return v.clone();
        }
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Elt::ID);
        queue.push_back(Elt::ID);
        while let Some(w) = queue.pop_front() {
            for s in i.iter() {
                let ws = self.right_mult_gen(w, s);
                if seen.insert(ws) {
                    queue.push_back(ws);
                }
            }
        }
        let mut v: Vec<Elt> = seen.into_iter().collect();
        v.sort();
        self.parabolic_cache.write().unwrap().insert(i, v.clone());
        v
    }

    /// Is w contained in the parabolic subgroup W_I?
    pub fn in_parabolic(&self, w: Elt, i: Subset) -> bool {
        self.normal_form(w).iter().all(|&s| i.contains(s as usize))
    }

    /// The unique minimal-length element of W_I · w · W_J.
    pub fn min_coset_rep(&self, w: Elt, i: Subset, j: Subset) -> Elt {
        let mut x = w;
        loop {
            let ld = self.descents(x, true).intersect(i);
            if let Some(s) = ld.iter().next() {
                x = self.left_mult_gen(s, x);
                continue;
            }
            let rd = self.descents(x, false).intersect(j);
            if let Some(t) = rd.iter().next() {
                x = self.right_mult_gen(x, t);
                continue;
            }
            return x;
        }
    }

    pub fn is_min_in_coset(&self, w: Elt, i: Subset, j: Subset) -> bool {
        self.descents(w, true).intersect(i).is_empty()
            && self.descents(w, false).intersect(j).is_empty()
    }

    /// All reduced words of w, by DFS over left descents.
    pub fn all_reduced_words(&self, w: Elt) -> Vec<Vec<u8>> {
        if w == Elt::ID {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for s in self.descents(w, true).iter() {
            let rest = self.all_reduced_words(self.left_mult_gen(s, w));
            for mut r in rest {
                r.insert(0, s as u8);
                out.push(r);
            }
        }
        out
    }

    pub fn word_name(&self, w: Elt) -> String {
        if w == Elt::ID {
            return "e".to_string();
        }
        self.normal_form(w)
            .iter()
            .map(|&s| self.matrix.names[s as usize].clone())
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn subset_name(&self, i: Subset) -> String {
        let mut s = String::from("{");
        for (k, g) in i.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.matrix.names[g]);
        }
        s.push('}');
        s
    }

    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = Subset::EMPTY;
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let g = self
                .matrix
                .gen_index(part)
                .ok_or_else(|| Error::BadInput(format!("unknown generator {part:?}")))?;
            out = out.with(g);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_presets() {
        // A2 matrix (m=3) → order 6; B2 (m=4) → 8; A3 → 24
        assert_eq!(CoxeterSystem::preset("A2").unwrap().order(), 6);
        assert_eq!(CoxeterSystem::preset("B2").unwrap().order(), 8);
        assert_eq!(CoxeterSystem::preset("A3").unwrap().order(), 24);
        assert_eq!(CoxeterSystem::preset("A4").unwrap().order(), 120);
        assert_eq!(CoxeterSystem::preset("G2").unwrap().order(), 12);
        assert_eq!(CoxeterSystem::preset("B3").unwrap().order(), 48);
        assert_eq!(CoxeterSystem::preset("D4").unwrap().order(), 192);
    }

    #[test]
    fn infinite_matrix_rejected() {
        let m = CoxeterMatrix::new(
            vec!["s".into(), "t".into()],
            vec![vec![1, INFINITE_BOND], vec![INFINITE_BOND, 1]],
        )
        .unwrap();
        assert!(matches!(
            CoxeterSystem::build(m, 1000),
            Err(Error::InfiniteGroupSuspected(_))
        ));
    }

    #[test]
    fn cap_exceeded() {
        let m = CoxeterMatrix::preset("A4").unwrap();
        assert!(matches!(CoxeterSystem::build(m, 50), Err(Error::GroupTooLarge(50) | Error::InfiniteGroupSuspected(50))));
    }

    #[test]
    fn mult_basics() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let s = sys.gen(0);
        let t = sys.gen(1);
        // mult(id, w) = w; mult(s, s) = id; ℓ(st) = 2
        for w in sys.elements() {
            assert_eq!(sys.mult(Elt::ID, w), w);
        }
        assert_eq!(sys.mult(s, s), Elt::ID);
        assert_eq!(sys.length(sys.mult(s, t)), 2);
    }

    #[test]
    fn length_changes_by_one() {
        let sys = CoxeterSystem::preset("B2").unwrap();
        for w in sys.elements() {
            for s in 0..sys.rank() {
                let d = sys.length(sys.right_mult_gen(w, s)) as i64 - sys.length(w) as i64;
                assert_eq!(d.abs(), 1);
            }
            // normal forms are reduced
            assert_eq!(sys.normal_form(w).len(), sys.length(w));
        }
    }

    #[test]
    fn descents_and_longest() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let full = sys.full_set();
        assert_eq!(sys.descents(Elt::ID, true), Subset::EMPTY);
        let w0 = sys.longest_element(full);
        assert_eq!(sys.length(w0), 3);
        // descents(sts, right) = {s,t}
        assert_eq!(sys.descents(w0, false), full);
        // descents(st, right) = {t}
        let st = sys.mult(sys.gen(0), sys.gen(1));
        assert_eq!(sys.descents(st, false), Subset::single(1));
        // longest(∅) = id; B2 longest has length 4
        assert_eq!(sys.longest_element(Subset::EMPTY), Elt::ID);
        let b2 = CoxeterSystem::preset("B2").unwrap();
        assert_eq!(b2.len_longest(b2.full_set()), 4);
        // w_I² = id, descents(w_I) = I on both sides
        for sys in [&sys, &b2] {
            for i in sys.full_set().subsets() {
                let wi = sys.longest_element(i);
                assert_eq!(sys.mult(wi, wi), Elt::ID);
                assert_eq!(sys.descents(wi, true), i);
                assert_eq!(sys.descents(wi, false), i);
            }
        }
    }

    #[test]
    fn bruhat_basics() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let s = sys.gen(0);
        let t = sys.gen(1);
        let st = sys.mult(s, t);
        let sts = sys.mult(st, s);
        for w in sys.elements() {
            assert!(sys.bruhat_leq(Elt::ID, w));
            assert!(sys.bruhat_leq(w, sts));
        }
        assert!(!sys.bruhat_leq(s, t));
        assert!(sys.bruhat_leq(st, sts));
        // antisymmetry + transitivity on all pairs
        for x in sys.elements() {
            for y in sys.elements() {
                if sys.bruhat_leq(x, y) && sys.bruhat_leq(y, x) {
                    assert_eq!(x, y);
                }
                for z in sys.elements() {
                    if sys.bruhat_leq(x, y) && sys.bruhat_leq(y, z) {
                        assert!(sys.bruhat_leq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        // brute force: x ≤ y iff some reduced word of x is a subword of nf(y)
        fn is_subword(x: &[u8], y: &[u8]) -> bool {
            let mut i = 0;
            for &c in y {
                if i < x.len() && x[i] == c {
                    i += 1;
                }
            }
            i == x.len()
        }
        for name in ["A2", "B2"] {
            let sys = CoxeterSystem::preset(name).unwrap();
            for x in sys.elements() {
                let words = sys.all_reduced_words(x);
                for y in sys.elements() {
                    let oracle = words.iter().any(|w| is_subword(w, sys.normal_form(y)));
                    assert_eq!(sys.bruhat_leq(x, y), oracle, "{name} {x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn min_coset_rep_examples() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let s = Subset::single(0);
        let t = Subset::single(1);
        let sts = sys.longest_element(sys.full_set());
        for w in sys.elements() {
            assert_eq!(sys.min_coset_rep(w, Subset::EMPTY, Subset::EMPTY), w);
        }
        // W_s · sts · W_t = {ts, sts}, so the minimal representative is ts
        let ts = sys.mult(sys.gen(1), sys.gen(0));
        assert_eq!(sys.min_coset_rep(sts, s, t), ts);
        assert_eq!(sys.min_coset_rep(ts, s, t), ts);
        // brute-force cross-check over all (w, I, J)
        for w in sys.elements() {
            for i in sys.full_set().subsets() {
                for j in sys.full_set().subsets() {
                    let min = sys.min_coset_rep(w, i, j);
                    let mut best = None;
                    for a in sys.parabolic_elements(i) {
                        for b in sys.parabolic_elements(j) {
                            let x = sys.mult(sys.mult(a, w), b);
                            if best.map_or(true, |m: Elt| sys.length(x) < sys.length(m)) {
                                best = Some(x);
                            }
                        }
                    }
                    assert_eq!(min, best.unwrap());
                }
            }
        }
    }

    #[test]
    fn matsumoto_closure_equals_dfs() {
        let sys = CoxeterSystem::preset("B2").unwrap();
        for w in sys.elements() {
            let dfs: HashSet<Vec<u8>> = sys.all_reduced_words(w).into_iter().collect();
            match braid_closure(&sys.matrix, sys.normal_form(w)) {
                Closure::Reduced(cl) => assert_eq!(cl, dfs),
                Closure::NonReduced(_) => panic!("normal form must be reduced"),
            }
        }
    }

    #[test]
    fn json_matrix_roundtrip() {
        let m = CoxeterMatrix::from_json(r#"{"generators":["s","t"],"m":[[1,3],[3,1]]}"#).unwrap();
        let sys = CoxeterSystem::build(m, 100).unwrap();
        assert_eq!(sys.order(), 6);
    }
}

//! Term functions of a finite algebra and the search for Mal'tsev and
//! Hagemann–Mitschke terms.
//!
//! The `k`-ary term functions of `A` form the free algebra on `k` generators
//! in the variety generated by `A`. They are generated breadth first from the
//! projections, one round per term depth, deduplicated by table. Tables are
//! stored as bytes, so the carrier is limited to 256 elements.
//!
//! A negative answer ("no such term") is only claimed when generation reached
//! its fixpoint. Searches stop after the first round that produces a hit and
//! return the least derivation size among the functions found so far, ties
//! broken by table.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::algebra::{FinAlgebra, OpTable, Term};
use crate::error::{Error, Result};
use crate::relcore::{BinRel, Carrier};
use crate::tuples::{for_each_tuple, try_for_each_tuple_touching_new};
use crate::verdict::Status;

pub const DEFAULT_FUNCTION_CAP: usize = 1_000_000;

/// Longest table (`|A|^k`) the generator accepts.
pub const MAX_TABLE_LEN: usize = 1 << 20;

#[derive(Debug, Clone)]
enum Origin {
    Proj(usize),
    Op { op: usize, args: Vec<u32> },
}

#[derive(Debug, Clone)]
struct Node {
    origin: Origin,
    size: u64,
    round: u32,
}

/// The `k`-ary term functions of a base algebra, possibly truncated by a cap.
#[derive(Debug, Clone)]
pub struct FreeAlgebraK {
    base: FinAlgebra,
    k: usize,
    len: usize,
    arena: Vec<u8>,
    nodes: Vec<Node>,
    index: HashMap<u64, Vec<u32>>,
    complete: bool,
    rounds: u32,
}

/// A term function with its table and one derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFunction {
    pub arity: usize,
    /// Indexed by argument tuple, first argument most significant.
    pub table: Vec<usize>,
    pub derivation: Term,
}

impl TermFunction {
    pub fn variables(arity: usize) -> Vec<String> {
        (1..=arity).map(|i| format!("x{i}")).collect()
    }

    /// Whether evaluating the derivation over every tuple reproduces the table.
    pub fn verify(&self, base: &FinAlgebra) -> Result<bool> {
        let vars = Self::variables(self.arity);
        if self.table.len() != base.size().pow(self.arity as u32) {
            return Ok(false);
        }
        let mut ok = true;
        let mut err = None;
        let mut i = 0;
        for_each_tuple(base.size(), self.arity, |t| {
            if !ok || err.is_some() {
                return;
            }
            match self.derivation.eval_positional(base, &vars, t) {
                Ok(v) => ok &= v == self.table[i],
                Err(e) => err = Some(e),
            }
            i += 1;
        });
        match err {
            Some(e) => Err(e),
            None => Ok(ok),
        }
    }

    pub fn to_sexpr_string(&self) -> String {
        self.derivation.to_sexpr().to_string()
    }
}

fn hash_table(t: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

impl FreeAlgebraK {
    fn start(base: &FinAlgebra, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("term functions need at least one variable".into()));
        }
        let n = base.size();
        if n == 0 || n > 256 {
            return Err(Error::Input(format!("carrier size {n} outside 1..=256")));
        }
        let len = n
            .checked_pow(k as u32)
            .filter(|&l| l <= MAX_TABLE_LEN)
            .ok_or_else(|| Error::Budget(format!("tables of {n}^{k} entries are too long")))?;
        let mut fa = FreeAlgebraK {
            base: base.clone(),
            k,
            len,
            arena: Vec::new(),
            nodes: Vec::new(),
            index: HashMap::new(),
            complete: false,
            rounds: 0,
        };
        for i in 0..k {
            let mut t = vec![0u8; len];
            let mut pos = 0;
            for_each_tuple(n, k, |tup| {
                t[pos] = tup[i] as u8;
                pos += 1;
            });
            fa.insert(t, Origin::Proj(i), 1, 0);
        }
        for oi in 0..base.signature().len() {
            if base.arity(oi) == 0 {
                let c = base.table(oi)[0] as u8;
                fa.insert(vec![c; len], Origin::Op { op: oi, args: vec![] }, 1, 0);
            }
        }
        Ok(fa)
    }

    fn lookup(&self, t: &[u8]) -> Option<u32> {
        self.index
            .get(&hash_table(t))?
            .iter()
            .copied()
            .find(|&id| self.table(id as usize) == t)
    }

    /// Adds `t` unless present; a same-round duplicate with a smaller
    /// derivation replaces the recorded one. Returns true if `t` was new.
    fn insert(&mut self, t: Vec<u8>, origin: Origin, size: u64, round: u32) -> bool {
        if let Some(id) = self.lookup(&t) {
            let node = &mut self.nodes[id as usize];
            if node.round == round && size < node.size {
                node.origin = origin;
                node.size = size;
            }
            return false;
        }
        let id = self.nodes.len() as u32;
        self.index.entry(hash_table(&t)).or_default().push(id);
        self.arena.extend_from_slice(&t);
        self.nodes.push(Node { origin, size, round });
        true
    }

    /// One semi-naive round. Returns the range of new ids, or `None` at the
    /// fixpoint. Stops early (leaving the algebra incomplete) at `cap`.
    fn round(&mut self, old: usize, cap: usize) -> Option<(usize, usize)> {
        let total = self.nodes.len();
        if old >= total {
            self.complete = true;
            return None;
        }
        let round = self.rounds + 1;
        let n = self.base.size();
        let mut hit_cap = false;
        for oi in 0..self.base.signature().len() {
            let m = self.base.arity(oi);
            if m == 0 {
                continue;
            }
            let table = self.base.table(oi).to_vec();
            let mut out = vec![0u8; self.len];
            let cont = try_for_each_tuple_touching_new(old, total, m, |args| {
                for (pos, o) in out.iter_mut().enumerate() {
                    let mut idx = 0usize;
                    for &a in args {
                        idx = idx * n + self.arena[a * self.len + pos] as usize;
                    }
                    *o = table[idx] as u8;
                }
                let size = args
                    .iter()
                    .fold(1u64, |s, &a| s.saturating_add(self.nodes[a].size));
                let origin = Origin::Op {
                    op: oi,
                    args: args.iter().map(|&a| a as u32).collect(),
                };
                self.insert(out.clone(), origin, size, round);
                if self.nodes.len() >= cap {
                    hit_cap = true;
                    return false;
                }
                true
            });
            if !cont {
                break;
            }
        }
        self.rounds = round;
        if hit_cap {
            self.complete = false;
            return Some((total, self.nodes.len()));
        }
        if self.nodes.len() == total {
            self.complete = true;
            return None;
        }
        Some((total, self.nodes.len()))
    }

    /// Generate until the fixpoint, the cap, or `stop` returns true after a round.
    fn run(base: &FinAlgebra, k: usize, cap: usize, mut stop: impl FnMut(&FreeAlgebraK, usize, usize) -> bool) -> Result<Self> {
        let mut fa = Self::start(base, k)?;
        if fa.nodes.len() >= cap {
            return Ok(fa);
        }
        if stop(&fa, 0, fa.nodes.len()) {
            return Ok(fa);
        }
        let mut old = 0;
        while let Some((lo, hi)) = fa.round(old, cap) {
            if stop(&fa, lo, hi) || fa.nodes.len() >= cap {
                return Ok(fa);
            }
            old = lo;
        }
        Ok(fa)
    }

    pub fn base(&self) -> &FinAlgebra {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// True when the set is closed under the operations.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn table_len(&self) -> usize {
        self.len
    }

    /// Table of function `id` in discovery order.
    pub fn table(&self, id: usize) -> &[u8] {
        &self.arena[id * self.len..(id + 1) * self.len]
    }

    pub fn find(&self, table: &[usize]) -> Option<usize> {
        if table.len() != self.len || table.iter().any(|&v| v >= self.base.size()) {
            return None;
        }
        let t: Vec<u8> = table.iter().map(|&v| v as u8).collect();
        self.lookup(&t).map(|i| i as usize)
    }

    pub fn derivation_size(&self, id: usize) -> u64 {
        self.nodes[id].size
    }

    pub fn derivation(&self, id: usize) -> Term {
        let vars = TermFunction::variables(self.k);
        let mut memo: HashMap<usize, Term> = HashMap::new();
        self.build_term(id, &vars, &mut memo)
    }

    fn build_term(&self, id: usize, vars: &[String], memo: &mut HashMap<usize, Term>) -> Term {
        if let Some(t) = memo.get(&id) {
            return t.clone();
        }
        let t = match &self.nodes[id].origin {
            Origin::Proj(i) => Term::Var(vars[*i].clone()),
            Origin::Op { op, args } => {
                let name = self.base.signature().ops()[*op].name.clone();
                let sub = args.iter().map(|&a| self.build_term(a as usize, vars, memo)).collect();
                Term::App(name, sub)
            }
        };
        memo.insert(id, t.clone());
        t
    }

    pub fn function(&self, id: usize) -> TermFunction {
        TermFunction {
            arity: self.k,
            table: self.table(id).iter().map(|&v| v as usize).collect(),
            derivation: self.derivation(id),
        }
    }

    /// Ids sorted by table; the canonical output order.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| self.table(a).cmp(self.table(b)));
        ids
    }

    pub fn functions(&self) -> Vec<TermFunction> {
        self.canonical_order().into_iter().map(|i| self.function(i)).collect()
    }

    /// The term functions as an algebra under pointwise operations, elements
    /// in canonical order. Requires complete generation.
    pub fn to_algebra(&self) -> Result<FinAlgebra> {
        if !self.complete {
            return Err(Error::Budget("term functions were not generated to the fixpoint".into()));
        }
        let order = self.canonical_order();
        let mut pos = vec![0; self.len()];
        for (p, &id) in order.iter().enumerate() {
            pos[id] = p;
        }
        let n = self.base.size();
        let size = order.len();
        let mut ops = Vec::new();
        for (oi, sym) in self.base.signature().ops().iter().enumerate() {
            let m = sym.arity;
            let table = self.base.table(oi);
            let mut out = vec![0u8; self.len];
            let mut entries = Vec::with_capacity(size.pow(m as u32));
            for_each_tuple(size, m, |args| {
                for (p, o) in out.iter_mut().enumerate() {
                    let idx = args
                        .iter()
                        .fold(0usize, |acc, &a| acc * n + self.table(order[a])[p] as usize);
                    *o = table[idx] as u8;
                }
                entries.push(pos[self.lookup(&out).expect("closed under operations") as usize]);
            });
            let op = OpTable::new(sym.name.clone(), m, entries);
            ops.push(op);
        }
        let labels = order.iter().map(|&id| self.derivation(id).to_string()).collect();
        FinAlgebra::new(
            format!("F{}({})", self.k, self.base.name()),
            Carrier::with_labels(labels),
            ops,
        )
    }
}

/// All `k`-ary term functions of `base`, up to `cap` functions.
pub fn generate_free_algebra(base: &FinAlgebra, k: usize, cap: usize) -> Result<FreeAlgebraK> {
    FreeAlgebraK::run(base, k, cap, |_, _, _| false)
}

/// Outcome of a term search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Search<T> {
    Found { terms: T },
    /// The clone was generated completely and contains no solution.
    None { clone_size: usize },
    /// The cap stopped generation before a solution was found.
    Inconclusive { explored: usize },
}

impl<T> Search<T> {
    pub fn status(&self) -> Status {
        match self {
            Search::Found { .. } => Status::Holds,
            Search::None { .. } => Status::Fails,
            Search::Inconclusive { .. } => Status::Inconclusive,
        }
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found { terms } => Some(terms),
            _ => None,
        }
    }
}

fn ternary_index(n: usize, x: usize, y: usize, z: usize) -> usize {
    (x * n + y) * n + z
}

/// `(x, y) ↦ t(x, y, y)`.
fn trace_yy(t: &[u8], n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(t[ternary_index(n, x, y, y)]);
        }
    }
    out
}

/// `(x, y) ↦ t(x, x, y)`.
fn trace_xx(t: &[u8], n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(t[ternary_index(n, x, x, y)]);
        }
    }
    out
}

fn first_projection(n: usize) -> Vec<u8> {
    (0..n * n).map(|i| (i / n) as u8).collect()
}

fn second_projection(n: usize) -> Vec<u8> {
    (0..n * n).map(|i| (i % n) as u8).collect()
}

fn is_left_half(t: &[u8], n: usize) -> bool {
    trace_yy(t, n) == first_projection(n)
}

fn is_right_half(t: &[u8], n: usize) -> bool {
    trace_xx(t, n) == second_projection(n)
}

/// A ternary term `p` with `p(x,y,y) = x` and `p(x,x,y) = y`.
pub fn find_maltsev(base: &FinAlgebra, cap: usize) -> Result<Search<TermFunction>> {
    let n = base.size();
    let mut best: Option<(u64, usize)> = None;
    let fa = FreeAlgebraK::run(base, 3, cap, |fa, lo, hi| {
        for id in lo..hi {
            let t = fa.table(id);
            if is_left_half(t, n) && is_right_half(t, n) {
                let cand = (fa.derivation_size(id), id);
                best = Some(match best {
                    Some(b) if (fa.derivation_size(b.1), fa.table(b.1)) <= (cand.0, t) => b,
                    _ => cand,
                });
            }
        }
        best.is_some()
    })?;
    Ok(match best {
        Some((_, id)) => Search::Found { terms: fa.function(id) },
        None if fa.is_complete() => Search::None { clone_size: fa.len() },
        None => Search::Inconclusive { explored: fa.len() },
    })
}

/// Best `(size, id)` per key, ties on size broken by table.
fn keep_best(map: &mut HashMap<Vec<u8>, (u64, usize)>, fa: &FreeAlgebraK, key: Vec<u8>, id: usize) {
    let size = fa.derivation_size(id);
    map.entry(key)
        .and_modify(|b| {
            if (size, fa.table(id)) < (fa.derivation_size(b.1), fa.table(b.1)) {
                *b = (size, id);
            }
        })
        .or_insert((size, id));
}

/// Ternary terms `r`, `s` with `r(x,y,y) = x`, `r(x,x,y) = s(x,y,y)`, `s(x,x,y) = y`.
pub fn find_hm_pair(base: &FinAlgebra, cap: usize) -> Result<Search<(TermFunction, TermFunction)>> {
    let n = base.size();
    let mut rs: HashMap<Vec<u8>, (u64, usize)> = HashMap::new();
    let mut ss: HashMap<Vec<u8>, (u64, usize)> = HashMap::new();
    let mut best: Option<(usize, usize)> = None;
    let fa = FreeAlgebraK::run(base, 3, cap, |fa, lo, hi| {
        for id in lo..hi {
            let t = fa.table(id);
            if is_left_half(t, n) {
                keep_best(&mut rs, fa, trace_xx(t, n), id);
            }
            if is_right_half(t, n) {
                keep_best(&mut ss, fa, trace_yy(t, n), id);
            }
        }
        // re-derive the best pair; sizes recorded this round may have shrunk
        let rank = |(r, s): (usize, usize)| {
            (
                fa.derivation_size(r).saturating_add(fa.derivation_size(s)),
                fa.table(r),
                fa.table(s),
            )
        };
        best = None;
        for (key, &(_, r)) in &rs {
            if let Some(&(_, s)) = ss.get(key) {
                if best.is_none_or(|b| rank((r, s)) < rank(b)) {
                    best = Some((r, s));
                }
            }
        }
        best.is_some()
    })?;
    Ok(match best {
        Some((r, s)) => Search::Found {
            terms: (fa.function(r), fa.function(s)),
        },
        None if fa.is_complete() => Search::None { clone_size: fa.len() },
        None => Search::Inconclusive { explored: fa.len() },
    })
}

/// Whether `(r, s)` satisfy the Hagemann–Mitschke identities on every triple.
pub fn is_hm_pair(n: usize, r: &[usize], s: &[usize]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            r[ternary_index(n, x, y, y)] == x
                && r[ternary_index(n, x, x, y)] == s[ternary_index(n, x, y, y)]
                && s[ternary_index(n, x, x, y)] == y
        })
    })
}

pub fn is_maltsev(n: usize, p: &[usize]) -> bool {
    is_hm_pair(n, p, &(0..n * n * n).map(|i| i % n).collect::<Vec<_>>())
}

/// Sizes and verdicts read off the cube of term-function algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkCube {
    pub unary: usize,
    pub binary: usize,
    pub ternary: usize,
    /// `|P|` for the pullback of `∇+1` and `1+∇`.
    pub pullback: usize,
    /// `|Eq(∇)|`.
    pub kernel_pair: usize,
    /// Size of the image of `λ: P → Eq(∇)`.
    pub image: usize,
    pub lambda_surjective: bool,
    /// Whether the pair of binary projections has a preimage under `λ`.
    pub fiber_nonempty: bool,
    /// A preimage of the projection pair, itself a Hagemann–Mitschke pair.
    pub fiber_witness: Option<(TermFunction, TermFunction)>,
}

/// The cube over the free algebras on one, two and three generators of the
/// variety generated by `base`. `None` if generation hit the cap.
pub fn remark_cube_report(base: &FinAlgebra, cap: usize) -> Result<Option<RemarkCube>> {
    let n = base.size();
    let f1 = generate_free_algebra(base, 1, cap)?;
    let f2 = generate_free_algebra(base, 2, cap)?;
    let f3 = generate_free_algebra(base, 3, cap)?;
    if !(f1.is_complete() && f2.is_complete() && f3.is_complete()) {
        return Ok(None);
    }
    let id2 = |t: &[u8]| f2.lookup(t).expect("traces of term functions are term functions") as usize;
    let m = f2.len();
    // E = {(t(x,y,y), t(x,x,y))}; λ(P) = E∘E
    let mut e = BinRel::empty(m, m);
    let mut by_xx = vec![0usize; m];
    let mut by_yy = vec![0usize; m];
    let mut d: Vec<(usize, usize)> = Vec::with_capacity(f3.len());
    for id in 0..f3.len() {
        let t = f3.table(id);
        let (a, b) = (id2(&trace_yy(t, n)), id2(&trace_xx(t, n)));
        e.insert(a, b);
        by_yy[a] += 1;
        by_xx[b] += 1;
        d.push((a, b));
    }
    let pullback = (0..m).map(|b| by_xx[b] * by_yy[b]).sum();
    let image = e.compose(&e)?;
    let diag = |t: &[u8]| (0..n).map(|x| t[x * n + x]).collect::<Vec<u8>>();
    let diags: Vec<Vec<u8>> = (0..m).map(|p| diag(f2.table(p))).collect();
    let kernel = BinRel::from_fn(m, m, |p, q| diags[p] == diags[q]);
    let lambda_surjective = kernel.is_contained(&image)?;
    debug_assert!(image.is_contained(&kernel)?);
    let p1 = id2(&first_projection(n));
    let p2 = id2(&second_projection(n));
    let fiber_nonempty = image.contains(p1, p2);
    let fiber_witness = if fiber_nonempty {
        // t with d = (π1, b) and u with d = (b, π2)
        let mut best: Option<(usize, usize)> = None;
        let rank = |(r, s): (usize, usize)| {
            (
                f3.derivation_size(r).saturating_add(f3.derivation_size(s)),
                f3.table(r),
                f3.table(s),
            )
        };
        let mut rs: HashMap<usize, (u64, usize)> = HashMap::new();
        let mut ss: HashMap<usize, (u64, usize)> = HashMap::new();
        for (id, &(a, b)) in d.iter().enumerate() {
            let size = f3.derivation_size(id);
            let better = |cur: &(u64, usize)| (size, f3.table(id)) < (cur.0, f3.table(cur.1));
            if a == p1 {
                let ent = rs.entry(b).or_insert((size, id));
                if better(ent) {
                    *ent = (size, id);
                }
            }
            if b == p2 {
                let ent = ss.entry(a).or_insert((size, id));
                if better(ent) {
                    *ent = (size, id);
                }
            }
        }
        for (key, &(_, r)) in &rs {
            if let Some(&(_, s)) = ss.get(key) {
                if best.is_none_or(|b| rank((r, s)) < rank(b)) {
                    best = Some((r, s));
                }
            }
        }
        best.map(|(r, s)| (f3.function(r), f3.function(s)))
    } else {
        None
    };
    Ok(Some(RemarkCube {
        unary: f1.len(),
        binary: m,
        ternary: f3.len(),
        pullback,
        kernel_pair: kernel.len(),
        image: image.len(),
        lambda_surjective,
        fiber_nonempty,
        fiber_witness,
    }))
}

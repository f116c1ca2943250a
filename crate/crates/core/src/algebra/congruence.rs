use std::collections::HashMap;

use super::FinAlgebra;
use crate::error::{Error, Result};
use crate::relcore::BinRel;
use crate::tuples::for_each_tuple;

pub const DEFAULT_LATTICE_CAP: usize = 10_000;

/// A partition stored as `element -> least element of its class`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    reps: Vec<usize>,
}

impl Congruence {
    pub fn diagonal(n: usize) -> Self {
        Congruence { reps: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { reps: vec![0; n] }
    }

    /// Partition induced by equal keys.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: &[K]) -> Self {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let reps = keys
            .iter()
            .enumerate()
            .map(|(x, k)| *first.entry(k).or_insert(x))
            .collect();
        Congruence { reps }
    }

    /// Accepts any class labelling and canonicalises it.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_keys(labels)
    }

    /// Representative array in canonical form; rejects anything else.
    pub fn from_reps(reps: Vec<usize>) -> Result<Self> {
        for (x, &r) in reps.iter().enumerate() {
            if r > x || reps[r] != r {
                return Err(Error::NotCongruence(format!(
                    "representative array not canonical at {x}"
                )));
            }
        }
        Ok(Congruence { reps })
    }

    pub fn from_binrel(rel: &BinRel) -> Result<Self> {
        if !(rel.is_reflexive() && rel.is_symmetric() && rel.is_transitive()) {
            return Err(Error::NotCongruence("relation is not an equivalence".into()));
        }
        let reps = (0..rel.src())
            .map(|x| rel.successors(x).next().unwrap_or(x))
            .collect();
        Ok(Congruence { reps })
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn rep(&self, x: usize) -> usize {
        self.reps[x]
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.reps[a] == self.reps[b]
    }

    pub fn num_classes(&self) -> usize {
        self.reps.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    /// Classes ordered by least representative, members increasing.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.size()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &r) in self.reps.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(x);
        }
        out
    }

    /// `element -> class number`, with classes numbered as in [`Self::classes`].
    pub fn class_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.size()];
        let mut next = 0;
        self.reps
            .iter()
            .map(|&r| {
                if index[r] == usize::MAX {
                    index[r] = next;
                    next += 1;
                }
                index[r]
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.reps.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn leq(&self, other: &Congruence) -> bool {
        self.reps
            .iter()
            .enumerate()
            .all(|(x, &r)| other.related(x, r))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let keys: Vec<(usize, usize)> = (0..self.size())
            .map(|x| (self.reps[x], other.reps[x]))
            .collect();
        Congruence::from_keys(&keys)
    }

    /// Join in the lattice of equivalence relations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for x in 0..self.size() {
            uf.union(x, self.reps[x]);
            uf.union(x, other.reps[x]);
        }
        uf.into_congruence()
    }

    pub fn to_binrel(&self) -> BinRel {
        BinRel::from_fn(self.size(), self.size(), |a, b| self.related(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| self.related(x, y)).map(move |y| (x, y)))
    }

    /// `None` if compatible with every operation of `alg`, otherwise a
    /// violating `(op, tuple, position, replacement)`.
    pub fn compatibility_violation(&self, alg: &FinAlgebra) -> Option<(usize, Vec<usize>, usize, usize)> {
        if self.size() != alg.size() {
            return Some((usize::MAX, Vec::new(), 0, 0));
        }
        let classes = self.classes();
        let idx = self.class_index();
        for oi in 0..alg.signature().len() {
            let k = alg.arity(oi);
            let mut bad = None;
            for_each_tuple(alg.size(), k, |t| {
                if bad.is_some() {
                    return;
                }
                let v = alg.apply(oi, t);
                let mut u = t.to_vec();
                for i in 0..k {
                    for &b in &classes[idx[t[i]]] {
                        u[i] = b;
                        if !self.related(v, alg.apply(oi, &u)) {
                            bad = Some((oi, t.to_vec(), i, b));
                            return;
                        }
                    }
                    u[i] = t[i];
                }
            });
            if bad.is_some() {
                return bad;
            }
        }
        None
    }

    pub fn is_congruence_of(&self, alg: &FinAlgebra) -> bool {
        self.compatibility_violation(alg).is_none()
    }

    /// Canonical form checked against `alg`.
    pub fn checked(reps: Vec<usize>, alg: &FinAlgebra) -> Result<Self> {
        if reps.len() != alg.size() {
            return Err(Error::NotCongruence(format!(
                "{} entries for carrier of size {}",
                reps.len(),
                alg.size()
            )));
        }
        let c = Congruence::from_reps(reps)?;
        if let Some((op, t, i, b)) = c.compatibility_violation(alg) {
            let name = &alg.signature().ops()[op].name;
            return Err(Error::NotCongruence(format!(
                "`{name}` at {t:?} with position {i} replaced by {b}"
            )));
        }
        Ok(c)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub(crate) fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Congruence::from_keys(&roots)
    }
}

/// Least congruence of `alg` containing `pairs`.
///
/// Every pair that actually merges two classes goes on a worklist; popping
/// `(a, b)` merges `f(.., a, ..)` with `f(.., b, ..)` for each operation,
/// position and assignment of the remaining arguments.
pub fn cg(alg: &FinAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    let ops: Vec<(usize, usize)> = (0..alg.signature().len())
        .map(|oi| (oi, alg.arity(oi)))
        .filter(|&(_, k)| k > 0)
        .collect();
    while let Some((a, b)) = work.pop() {
        for &(oi, k) in &ops {
            let table = alg.table(oi);
            for pos in 0..k {
                let stride = n.pow((k - 1 - pos) as u32);
                // Enumerate the other k-1 coordinates; `base` is the index with a 0 at `pos`.
                for_each_tuple(n, k - 1, |rest| {
                    let mut base = 0;
                    let mut j = 0;
                    for i in 0..k {
                        base *= n;
                        if i != pos {
                            base += rest[j];
                            j += 1;
                        }
                    }
                    let u = table[base + a * stride];
                    let v = table[base + b * stride];
                    if uf.union(u, v) {
                        work.push((u, v));
                    }
                });
            }
        }
    }
    uf.into_congruence()
}

/// All congruences of an algebra with lattice operations as index tables.
#[derive(Debug, Clone)]
pub struct ConLattice {
    congruences: Vec<Congruence>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl ConLattice {
    /// Canonical order: more classes first, then by representative array.
    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }
}

/// Join-closure of the principal congruences, plus the diagonal.
/// Fails with [`Error::Budget`] once more than `cap` congruences are found.
pub fn con_lattice(alg: &FinAlgebra, cap: usize) -> Result<ConLattice> {
    let n = alg.size();
    let budget = |count: usize| {
        if count > cap {
            Err(Error::Budget(format!(
                "congruence lattice of `{}` exceeds {cap} elements",
                alg.name()
            )))
        } else {
            Ok(())
        }
    };
    let mut found: Vec<Congruence> = vec![Congruence::diagonal(n)];
    let mut seen: HashMap<Congruence, ()> = HashMap::new();
    seen.insert(found[0].clone(), ());
    for a in 0..n {
        for b in a + 1..n {
            let c = cg(alg, &[(a, b)]);
            if seen.insert(c.clone(), ()).is_none() {
                found.push(c);
                budget(found.len())?;
            }
        }
    }
    // union of two congruences is compatible, so its equivalence closure is the join
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let c = found[i].join(&found[j]);
            if seen.insert(c.clone(), ()).is_none() {
                found.push(c);
                budget(found.len())?;
            }
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|x, y| {
        y.num_classes()
            .cmp(&x.num_classes())
            .then_with(|| x.reps.cmp(&y.reps))
    });
    let index: HashMap<&Congruence, usize> = found.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let m = found.len();
    let mut meet = vec![vec![0; m]; m];
    let mut join = vec![vec![0; m]; m];
    for a in 0..m {
        for b in a..m {
            let mt = index[&found[a].meet(&found[b])];
            let jn = index[&found[a].join(&found[b])];
            meet[a][b] = mt;
            meet[b][a] = mt;
            join[a][b] = jn;
            join[b][a] = jn;
        }
    }
    Ok(ConLattice {
        congruences: found,
        meet,
        join,
    })
}

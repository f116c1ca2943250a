//! Finite algebras over a finite signature.
//!
//! Operation tables are indexed mixed-radix with the first argument most
//! significant, so `f(a, b)` lives at `a * n + b`. Products pair elements as
//! `index(x, y) = x * |b| + y`; quotients order their classes by least
//! representative. Both encodings are part of the file format.

mod congruence;
mod hom;
mod term;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use congruence::{cg, con_lattice, ConLattice, Congruence, DEFAULT_LATTICE_CAP};
pub use hom::{is_homomorphism, HomViolation, Homomorphism};
pub use term::Term;

use crate::error::{Error, Result};
use crate::relcore::{BinRel, Carrier};
use crate::tuples::{for_each_tuple, for_each_tuple_touching_new, tuple_index};

/// Shared handle to an algebra; diagrams and homomorphisms hold these.
pub type AlgRef = Arc<FinAlgebra>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// Operation symbols, kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new(ops: impl IntoIterator<Item = (String, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, arity) in ops {
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::SignatureMismatch(format!("duplicate operation `{name}`")));
            }
        }
        Ok(Signature {
            ops: map
                .into_iter()
                .map(|(name, arity)| OpSymbol { name, arity })
                .collect(),
        })
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.binary_search_by(|o| o.name.as_str().cmp(name)).ok()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    name: String,
    carrier: Carrier,
    sig: Signature,
    tables: Vec<Vec<usize>>,
}

/// Builder input for one operation.
pub struct OpTable {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl OpTable {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        OpTable {
            name: name.into(),
            arity,
            table,
        }
    }

    pub fn from_fn(name: impl Into<String>, arity: usize, size: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let mut table = Vec::with_capacity(size.pow(arity as u32));
        for_each_tuple(size, arity, |t| table.push(f(t)));
        OpTable::new(name, arity, table)
    }
}

impl FinAlgebra {
    pub fn new(name: impl Into<String>, carrier: Carrier, ops: Vec<OpTable>) -> Result<Self> {
        let name = name.into();
        let n = carrier.size;
        if let Some(l) = &carrier.labels {
            if l.len() != n {
                return Err(Error::InvalidAlgebra {
                    algebra: name,
                    reason: format!("{} labels for {} elements", l.len(), n),
                });
            }
        }
        let sig = Signature::new(ops.iter().map(|o| (o.name.clone(), o.arity)))
            .map_err(|e| Error::InvalidAlgebra {
                algebra: name.clone(),
                reason: e.to_string(),
            })?;
        let mut by_name: BTreeMap<String, Vec<usize>> =
            ops.into_iter().map(|o| (o.name, o.table)).collect();
        let mut tables = Vec::with_capacity(sig.len());
        for sym in sig.ops() {
            let table = by_name.remove(&sym.name).unwrap_or_default();
            let want = n.checked_pow(sym.arity as u32).ok_or_else(|| Error::InvalidAlgebra {
                algebra: name.clone(),
                reason: format!("table for `{}` too large", sym.name),
            })?;
            if table.len() != want {
                return Err(Error::InvalidAlgebra {
                    algebra: name,
                    reason: format!(
                        "table for `{}` has {} entries, expected {}",
                        sym.name,
                        table.len(),
                        want
                    ),
                });
            }
            if let Some(pos) = table.iter().position(|&v| v >= n) {
                return Err(Error::InvalidAlgebra {
                    algebra: name,
                    reason: format!("`{}` entry {} = {} out of range", sym.name, pos, table[pos]),
                });
            }
            tables.push(table);
        }
        Ok(FinAlgebra {
            name,
            carrier,
            sig,
            tables,
        })
    }

    /// A set with no operations.
    pub fn bare_set(name: impl Into<String>, size: usize) -> Self {
        FinAlgebra {
            name: name.into(),
            carrier: Carrier::new(size),
            sig: Signature::empty(),
            tables: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.carrier.size
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn label(&self, x: usize) -> String {
        self.carrier.label(x)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.size()).map(|x| self.label(x)).collect()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn arity(&self, op: usize) -> usize {
        self.sig.ops[op].arity
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(self.size(), args)]
    }

    pub fn into_ref(self) -> AlgRef {
        Arc::new(self)
    }

    /// `a × b` with `index(x, y) = x * |b| + y`.
    pub fn product(a: &FinAlgebra, b: &FinAlgebra) -> Result<FinAlgebra> {
        if a.sig != b.sig {
            return Err(Error::SignatureMismatch(format!(
                "product of `{}` and `{}`",
                a.name, b.name
            )));
        }
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let labels = (0..n)
            .map(|p| format!("({},{})", a.label(p / nb), b.label(p % nb)))
            .collect();
        let ops = a
            .sig
            .ops()
            .iter()
            .enumerate()
            .map(|(oi, sym)| {
                OpTable::from_fn(sym.name.clone(), sym.arity, n, |t| {
                    let xs: Vec<usize> = t.iter().map(|&p| p / nb).collect();
                    let ys: Vec<usize> = t.iter().map(|&p| p % nb).collect();
                    a.apply(oi, &xs) * nb + b.apply(oi, &ys)
                })
            })
            .collect();
        FinAlgebra::new(
            format!("{}x{}", a.name, b.name),
            Carrier::with_labels(labels),
            ops,
        )
    }

    /// Least subuniverse containing `gens`, including all constants.
    pub fn subuniverse_generate(&self, gens: impl IntoIterator<Item = usize>) -> SubUniverse {
        let n = self.size();
        let mut mask = vec![false; n];
        let mut list = Vec::new();
        for g in gens {
            if g < n && !mask[g] {
                mask[g] = true;
                list.push(g);
            }
        }
        // Constants enter in the first round.
        for oi in 0..self.sig.len() {
            if self.arity(oi) == 0 {
                let c = self.tables[oi][0];
                if !mask[c] {
                    mask[c] = true;
                    list.push(c);
                }
            }
        }
        let mut old = 0;
        while old < list.len() {
            let total = list.len();
            let mut fresh = Vec::new();
            for oi in 0..self.sig.len() {
                let k = self.arity(oi);
                let mut args = vec![0; k];
                for_each_tuple_touching_new(old, total, k, |t| {
                    for (a, &i) in args.iter_mut().zip(t) {
                        *a = list[i];
                    }
                    let v = self.apply(oi, &args);
                    if !mask[v] {
                        mask[v] = true;
                        fresh.push(v);
                    }
                });
            }
            old = total;
            list.extend(fresh);
        }
        SubUniverse { members: mask }
    }

    /// Subuniverse of `a × b` generated by `pairs`, as a relation from `a` to `b`.
    pub fn generate_relation(a: &FinAlgebra, b: &FinAlgebra, pairs: &[(usize, usize)]) -> Result<BinRel> {
        if a.sig != b.sig {
            return Err(Error::SignatureMismatch(format!(
                "relation between `{}` and `{}`",
                a.name, b.name
            )));
        }
        let nb = b.size();
        let mut rel = BinRel::empty(a.size(), nb);
        let mut list: Vec<(usize, usize)> = Vec::new();
        let push = |rel: &mut BinRel, list: &mut Vec<(usize, usize)>, p: (usize, usize)| {
            if !rel.contains(p.0, p.1) {
                rel.insert(p.0, p.1);
                list.push(p);
            }
        };
        for &(x, y) in pairs {
            if x >= a.size() || y >= nb {
                return Err(Error::DimensionMismatch(format!("seed pair ({x},{y})")));
            }
            push(&mut rel, &mut list, (x, y));
        }
        for oi in 0..a.sig.len() {
            if a.arity(oi) == 0 {
                push(&mut rel, &mut list, (a.tables[oi][0], b.tables[oi][0]));
            }
        }
        let mut old = 0;
        while old < list.len() {
            let total = list.len();
            let mut fresh = Vec::new();
            for oi in 0..a.sig.len() {
                let k = a.arity(oi);
                let mut xs = vec![0; k];
                let mut ys = vec![0; k];
                for_each_tuple_touching_new(old, total, k, |t| {
                    for (j, &i) in t.iter().enumerate() {
                        xs[j] = list[i].0;
                        ys[j] = list[i].1;
                    }
                    let p = (a.apply(oi, &xs), b.apply(oi, &ys));
                    if !rel.contains(p.0, p.1) {
                        rel.insert(p.0, p.1);
                        fresh.push(p);
                    }
                });
            }
            old = total;
            list.extend(fresh);
        }
        Ok(rel)
    }

    /// Whether `rel` (from `self` to `other`) is closed under the operations.
    pub fn is_compatible_relation(&self, other: &FinAlgebra, rel: &BinRel) -> bool {
        if self.sig != other.sig || rel.src() != self.size() || rel.dst() != other.size() {
            return false;
        }
        let pairs: Vec<(usize, usize)> = rel.pairs().collect();
        (0..self.sig.len()).all(|oi| {
            let k = self.arity(oi);
            let mut ok = true;
            let mut xs = vec![0; k];
            let mut ys = vec![0; k];
            for_each_tuple(pairs.len(), k, |t| {
                if !ok {
                    return;
                }
                for (j, &i) in t.iter().enumerate() {
                    xs[j] = pairs[i].0;
                    ys[j] = pairs[i].1;
                }
                ok = rel.contains(self.apply(oi, &xs), other.apply(oi, &ys));
            });
            ok
        })
    }

    /// Subalgebra on the members of `sub`, in increasing order, with its inclusion map.
    pub fn subalgebra(&self, sub: &SubUniverse, name: impl Into<String>) -> Result<(FinAlgebra, Vec<usize>)> {
        let members = sub.elements();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let m = members.len();
        let mut ops = Vec::with_capacity(self.sig.len());
        for (oi, sym) in self.sig.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(m.pow(sym.arity as u32));
            let mut args = vec![0; sym.arity];
            let mut closed = true;
            for_each_tuple(m, sym.arity, |t| {
                for (a, &i) in args.iter_mut().zip(t) {
                    *a = members[i];
                }
                let v = pos[self.apply(oi, &args)];
                closed &= v != usize::MAX;
                table.push(if v == usize::MAX { 0 } else { v });
            });
            if !closed {
                return Err(Error::InvalidAlgebra {
                    algebra: self.name.clone(),
                    reason: "subset is not closed under the operations".into(),
                });
            }
            ops.push(OpTable::new(sym.name.clone(), sym.arity, table));
        }
        let labels = members.iter().map(|&x| self.label(x)).collect();
        Ok((
            FinAlgebra::new(name, Carrier::with_labels(labels), ops)?,
            members,
        ))
    }

    /// Whether the identity `lhs ≈ rhs` holds under every assignment.
    pub fn satisfies(&self, lhs: &Term, rhs: &Term) -> Result<Option<Vec<usize>>> {
        let mut vars = lhs.variables();
        for v in rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let mut failure = None;
        let mut err = None;
        for_each_tuple(self.size(), vars.len(), |t| {
            if failure.is_some() || err.is_some() {
                return;
            }
            match (lhs.eval_positional(self, &vars, t), rhs.eval_positional(self, &vars, t)) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        failure = Some(t.to_vec());
                    }
                }
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(failure),
        }
    }
}

/// A subset of a parent carrier closed under all operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubUniverse {
    members: Vec<bool>,
}

impl SubUniverse {
    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&x| self.members[x]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &SubUniverse) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    /// Closure check by full enumeration.
    pub fn is_closed_in(&self, parent: &FinAlgebra) -> bool {
        let elems = self.elements();
        (0..parent.sig.len()).all(|oi| {
            let k = parent.arity(oi);
            let mut ok = true;
            let mut args = vec![0; k];
            for_each_tuple(elems.len(), k, |t| {
                for (a, &i) in args.iter_mut().zip(t) {
                    *a = elems[i];
                }
                ok &= self.members[parent.apply(oi, &args)];
            });
            ok
        })
    }
}

#[cfg(test)]
pub(crate) mod test_algebras {
    pub use crate::zoo::*;
}

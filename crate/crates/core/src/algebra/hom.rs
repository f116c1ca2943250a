use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgRef, Congruence, FinAlgebra, OpTable};
use crate::error::{Error, Result};
use crate::relcore::{BinRel, Carrier};
use crate::tuples::for_each_tuple;

/// First operation/tuple where a map fails to commute with the operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomViolation {
    pub op: String,
    pub args: Vec<usize>,
}

/// Full enumeration over operations and argument tuples.
pub fn is_homomorphism(src: &FinAlgebra, dst: &FinAlgebra, map: &[usize]) -> Result<Option<HomViolation>> {
    if map.len() != src.size() {
        return Err(Error::InvalidMap {
            src: src.name().into(),
            dst: dst.name().into(),
            reason: format!("{} entries for domain of size {}", map.len(), src.size()),
        });
    }
    if let Some(pos) = map.iter().position(|&v| v >= dst.size()) {
        return Err(Error::InvalidMap {
            src: src.name().into(),
            dst: dst.name().into(),
            reason: format!("entry {pos} = {} out of range", map[pos]),
        });
    }
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}`",
            src.name(),
            dst.name()
        )));
    }
    for (oi, sym) in src.signature().ops().iter().enumerate() {
        let mut bad = None;
        let mut image = vec![0; sym.arity];
        for_each_tuple(src.size(), sym.arity, |t| {
            if bad.is_some() {
                return;
            }
            for (m, &x) in image.iter_mut().zip(t) {
                *m = map[x];
            }
            if map[src.apply(oi, t)] != dst.apply(oi, &image) {
                bad = Some(t.to_vec());
            }
        });
        if let Some(args) = bad {
            return Ok(Some(HomViolation {
                op: sym.name.clone(),
                args,
            }));
        }
    }
    Ok(None)
}

/// A validated homomorphism between two shared algebras.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    src: AlgRef,
    dst: AlgRef,
    map: Vec<usize>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.src.name(), self.dst.name(), self.map)
    }
}

impl Homomorphism {
    pub fn new(src: AlgRef, dst: AlgRef, map: Vec<usize>) -> Result<Self> {
        if let Some(v) = is_homomorphism(&src, &dst, &map)? {
            return Err(Error::NotHomomorphism {
                src: src.name().into(),
                dst: dst.name().into(),
                op: v.op,
                args: v.args,
            });
        }
        Ok(Homomorphism { src, dst, map })
    }

    /// Skips the operation check; the caller guarantees the map is a homomorphism.
    pub(crate) fn new_unchecked(src: AlgRef, dst: AlgRef, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), src.size());
        Homomorphism { src, dst, map }
    }

    pub fn identity(a: &AlgRef) -> Self {
        Homomorphism {
            src: a.clone(),
            dst: a.clone(),
            map: (0..a.size()).collect(),
        }
    }

    pub fn src(&self) -> &AlgRef {
        &self.src
    }

    pub fn dst(&self) -> &AlgRef {
        &self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.dst, &next.src) && *self.dst != *next.src {
            return Err(Error::InvalidMap {
                src: self.dst.name().into(),
                dst: next.src.name().into(),
                reason: "codomain and domain differ".into(),
            });
        }
        Ok(Homomorphism {
            src: self.src.clone(),
            dst: next.dst.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.dst.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.src.size() == self.dst.size() && self.is_injective()
    }

    /// Same endpoints and same underlying map.
    pub fn same_map(&self, other: &Homomorphism) -> bool {
        self.map == other.map && self.src.size() == other.src.size() && self.dst.size() == other.dst.size()
    }

    /// `Eq(h)`: the partition of the domain by equal images.
    pub fn kernel_pair(&self) -> Congruence {
        Congruence::from_keys(&self.map)
    }

    pub fn kernel_pair_rel(&self) -> BinRel {
        let n = self.src.size();
        BinRel::from_fn(n, n, |a, b| self.map[a] == self.map[b])
    }

    /// `self = inclusion ∘ surjection` through the image subalgebra.
    pub fn image_factorize(&self) -> Result<(Homomorphism, Homomorphism)> {
        let sub = self.dst.subuniverse_generate(self.map.iter().copied());
        let (img, members) = self
            .dst
            .subalgebra(&sub, format!("im({})", self.src.name()))?;
        let img = img.into_ref();
        let mut pos = vec![usize::MAX; self.dst.size()];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let surj = Homomorphism::new_unchecked(
            self.src.clone(),
            img.clone(),
            self.map.iter().map(|&y| pos[y]).collect(),
        );
        let incl = Homomorphism::new_unchecked(img, self.dst.clone(), members);
        Ok((surj, incl))
    }

    /// The canonical surjection onto `alg / c`.
    ///
    /// Classes are ordered by least representative and labelled `[r]`.
    pub fn quotient(alg: &AlgRef, c: &Congruence) -> Result<Homomorphism> {
        if c.size() != alg.size() {
            return Err(Error::NotCongruence(format!(
                "{} entries for carrier of size {}",
                c.size(),
                alg.size()
            )));
        }
        if let Some((op, t, i, b)) = c.compatibility_violation(alg) {
            let name = &alg.signature().ops()[op].name;
            return Err(Error::NotCongruence(format!(
                "`{name}` at {t:?} with position {i} replaced by {b}"
            )));
        }
        let idx = c.class_index();
        let classes = c.classes();
        let m = classes.len();
        let reps: Vec<usize> = classes.iter().map(|cl| cl[0]).collect();
        let ops = alg
            .signature()
            .ops()
            .iter()
            .enumerate()
            .map(|(oi, sym)| {
                OpTable::from_fn(sym.name.clone(), sym.arity, m, |t| {
                    let args: Vec<usize> = t.iter().map(|&q| reps[q]).collect();
                    idx[alg.apply(oi, &args)]
                })
            })
            .collect();
        let labels = classes
            .iter()
            .map(|cl| {
                let inner: Vec<String> = cl.iter().map(|&x| alg.label(x)).collect();
                format!("[{}]", inner.join(","))
            })
            .collect();
        let q = FinAlgebra::new(
            format!("{}/~", alg.name()),
            Carrier::with_labels(labels),
            ops,
        )?
        .into_ref();
        Ok(Homomorphism::new_unchecked(alg.clone(), q, idx))
    }

    /// The map `h: A -> B` factored as `A -> A/Eq(h) -> B` when `h` kills `c`.
    pub fn factor_through(&self, q: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&q.src, &self.src) && *q.src != *self.src {
            return Err(Error::InvalidDiagram("quotient has a different domain".into()));
        }
        let mut map = vec![usize::MAX; q.dst.size()];
        for x in 0..self.src.size() {
            let cls = q.map[x];
            if map[cls] == usize::MAX {
                map[cls] = self.map[x];
            } else if map[cls] != self.map[x] {
                return Err(Error::InvalidDiagram(format!(
                    "map does not kill the quotient congruence at {x}"
                )));
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::NotSurjective("quotient map".into()));
        }
        Homomorphism::new(q.dst.clone(), self.dst.clone(), map)
    }
}

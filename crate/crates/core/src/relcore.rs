//! Binary relations between finite carriers, stored as packed bit matrices.
//!
//! Composition is written by juxtaposition and read left to right:
//! `r.compose(&s)` is "first `r`, then `s`", i.e. the set of `(x, z)` with
//! `x r y` and `y s z` for some `y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A finite carrier `0..size`, optionally with display labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Self {
        Carrier { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        Carrier {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }
}

/// A relation from a carrier of size `src` to a carrier of size `dst`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinRel {
    src: usize,
    dst: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BinRel {
    pub fn empty(src: usize, dst: usize) -> Self {
        let stride = dst.div_ceil(WORD);
        BinRel {
            src,
            dst,
            stride,
            bits: vec![0; src * stride],
        }
    }

    pub fn full(src: usize, dst: usize) -> Self {
        let mut r = Self::empty(src, dst);
        for x in 0..src {
            for y in 0..dst {
                r.insert(x, y);
            }
        }
        r
    }

    /// The diagonal `1_X`.
    pub fn identity(size: usize) -> Self {
        let mut r = Self::empty(size, size);
        for x in 0..size {
            r.insert(x, x);
        }
        r
    }

    pub fn from_pairs(src: usize, dst: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Self::empty(src, dst);
        for (x, y) in pairs {
            if x >= src || y >= dst {
                return Err(Error::DimensionMismatch(format!(
                    "pair ({x},{y}) outside {src}x{dst}"
                )));
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Build from a predicate evaluated on every cell.
    pub fn from_fn(src: usize, dst: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(src, dst);
        for x in 0..src {
            for y in 0..dst {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn is_square(&self) -> bool {
        self.src == self.dst
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.stride + y / WORD] >> (y % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) {
        self.bits[x * self.stride + y / WORD] |= 1 << (y % WORD);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.bits[x * self.stride + y / WORD] &= !(1 << (y % WORD));
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.stride..(x + 1) * self.stride]
    }

    fn row_mut(&mut self, x: usize) -> &mut [u64] {
        &mut self.bits[x * self.stride..(x + 1) * self.stride]
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src).flat_map(move |x| self.successors(x).map(move |y| (x, y)))
    }

    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(x).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    fn same_shape(&self, other: &BinRel, what: &str) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        Ok(())
    }

    /// `RS`: first `self`, then `other`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel> {
        if self.dst != other.src {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}x{} then {}x{}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        let mut out = BinRel::empty(self.src, other.dst);
        for x in 0..self.src {
            let base = x * out.stride;
            for y in self.successors(x) {
                for (o, &w) in out.bits[base..base + out.stride].iter_mut().zip(other.row(y)) {
                    *o |= w;
                }
            }
        }
        Ok(out)
    }

    /// Compose a chain `r1 r2 ... rn`.
    pub fn compose_all(rels: &[&BinRel]) -> Result<BinRel> {
        let (first, rest) = rels
            .split_first()
            .ok_or_else(|| Error::DimensionMismatch("empty composite".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, r| acc.compose(r))
    }

    /// `R°`.
    pub fn opposite(&self) -> BinRel {
        let mut out = BinRel::empty(self.dst, self.src);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    pub fn meet(&self, other: &BinRel) -> Result<BinRel> {
        self.same_shape(other, "meet")?;
        let mut out = self.clone();
        for (o, &w) in out.bits.iter_mut().zip(&other.bits) {
            *o &= w;
        }
        Ok(out)
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel> {
        self.same_shape(other, "union")?;
        let mut out = self.clone();
        for (o, &w) in out.bits.iter_mut().zip(&other.bits) {
            *o |= w;
        }
        Ok(out)
    }

    /// `Ok(None)` when `self <= other`, otherwise the least pair of `self` missing from `other`.
    pub fn containment_witness(&self, other: &BinRel) -> Result<Option<(usize, usize)>> {
        self.same_shape(other, "containment")?;
        for x in 0..self.src {
            for (wi, (&a, &b)) in self.row(x).iter().zip(other.row(x)).enumerate() {
                let diff = a & !b;
                if diff != 0 {
                    return Ok(Some((x, wi * WORD + diff.trailing_zeros() as usize)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_contained(&self, other: &BinRel) -> Result<bool> {
        Ok(self.containment_witness(other)?.is_none())
    }

    /// Smallest transitive relation containing `self` (row-parallel Warshall).
    pub fn transitive_closure(&self) -> Result<BinRel> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "transitive closure of {}x{} relation",
                self.src, self.dst
            )));
        }
        let mut out = self.clone();
        let n = self.src;
        for k in 0..n {
            let row_k: Vec<u64> = out.row(k).to_vec();
            for x in 0..n {
                if out.contains(x, k) {
                    for (o, &w) in out.row_mut(x).iter_mut().zip(&row_k) {
                        *o |= w;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_square() && (0..self.src).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        match self.compose(self) {
            Ok(rr) => rr.is_contained(self).unwrap_or(false),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel({}x{} ", self.src, self.dst)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}

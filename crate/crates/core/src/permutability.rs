//! Permutability, modularity and the Shifting Lemma on `Con(A)`, and the
//! relational characterisations of 3-permutability checked over generated
//! compatible relations.
//!
//! Congruence quantifiers run in the canonical order of [`con_lattice`], and
//! the first violation found is reported, so witnesses are stable across runs.
//! Relational checks cannot enumerate every compatible relation of a variety:
//! they enumerate the relations generated by small seed sets, so a failure is
//! a theorem while success only covers the budget.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{con_lattice, Congruence, FinAlgebra, DEFAULT_LATTICE_CAP};
use crate::error::{Error, Result};
use crate::relcore::BinRel;
use crate::verdict::Verdict;

fn partition_string(alg: &FinAlgebra, c: &Congruence) -> String {
    c.classes()
        .iter()
        .filter(|cl| cl.len() > 1)
        .map(|cl| {
            let l: Vec<String> = cl.iter().map(|&x| alg.label(x)).collect();
            format!("{{{}}}", l.join(","))
        })
        .collect::<Vec<_>>()
        .join("")
}

fn partition_or_diag(alg: &FinAlgebra, c: &Congruence) -> String {
    let s = partition_string(alg, c);
    if s.is_empty() {
        "Δ".into()
    } else {
        s
    }
}

fn lattice_or_inconclusive<W>(alg: &FinAlgebra, cap: usize) -> std::result::Result<crate::algebra::ConLattice, Verdict<W>> {
    match con_lattice(alg, cap) {
        Ok(l) => Ok(l),
        Err(Error::Budget(msg)) => Err(Verdict::inconclusive(msg)),
        Err(e) => Err(Verdict::inconclusive(e.to_string())),
    }
}

/// Congruences `r`, `s` and a pair separating the `r`-first composite from the `s`-first one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutabilityWitness {
    pub n: usize,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub pair: (usize, usize),
    /// True if `pair` lies in the composite starting with `r`.
    pub in_r_first: bool,
}

/// `R S R ...` with `n` factors, alternating.
pub fn alternating_composite(r: &BinRel, s: &BinRel, n: usize) -> BinRel {
    let mut acc = r.clone();
    for i in 1..n {
        let next = if i % 2 == 1 { s } else { r };
        acc = acc.compose(next).expect("same carrier");
    }
    acc
}

fn separating_pair(a: &BinRel, b: &BinRel) -> Option<((usize, usize), bool)> {
    let ab = a.containment_witness(b).expect("same shape");
    let ba = b.containment_witness(a).expect("same shape");
    match (ab, ba) {
        (None, None) => None,
        (Some(p), None) => Some((p, true)),
        (None, Some(q)) => Some((q, false)),
        (Some(p), Some(q)) => Some(if p <= q { (p, true) } else { (q, false) }),
    }
}

impl PermutabilityWitness {
    /// Re-check against `alg` from scratch.
    pub fn replay(&self, alg: &FinAlgebra) -> Result<bool> {
        let r = Congruence::checked(self.r.clone(), alg)?;
        let s = Congruence::checked(self.s.clone(), alg)?;
        if !(2..=3).contains(&self.n) {
            return Err(Error::Input(format!("permutability degree {}", self.n)));
        }
        let (rr, sr) = (r.to_binrel(), s.to_binrel());
        let rf = alternating_composite(&rr, &sr, self.n);
        let sf = alternating_composite(&sr, &rr, self.n);
        let (x, y) = self.pair;
        if x >= alg.size() || y >= alg.size() {
            return Ok(false);
        }
        Ok(if self.in_r_first {
            rf.contains(x, y) && !sf.contains(x, y)
        } else {
            sf.contains(x, y) && !rf.contains(x, y)
        })
    }

    pub fn describe(&self, alg: &FinAlgebra) -> String {
        let r = Congruence::from_labels(&self.r);
        let s = Congruence::from_labels(&self.s);
        let word = |first: &str, second: &str| {
            (0..self.n)
                .map(|i| if i % 2 == 0 { first } else { second })
                .collect::<String>()
        };
        let (inside, outside) = if self.in_r_first {
            (word("R", "S"), word("S", "R"))
        } else {
            (word("S", "R"), word("R", "S"))
        };
        format!(
            "R = {}, S = {}; ({}, {}) in {} but not in {}",
            partition_or_diag(alg, &r),
            partition_or_diag(alg, &s),
            alg.label(self.pair.0),
            alg.label(self.pair.1),
            inside,
            outside
        )
    }
}

/// `n = 2`: `RS = SR`; `n = 3`: `RSR = SRS`, for all congruences.
pub fn check_permutable(alg: &FinAlgebra, n: usize) -> Verdict<PermutabilityWitness> {
    check_permutable_with_cap(alg, n, DEFAULT_LATTICE_CAP)
}

pub fn check_permutable_with_cap(alg: &FinAlgebra, n: usize, cap: usize) -> Verdict<PermutabilityWitness> {
    assert!((2..=3).contains(&n), "only 2- and 3-permutability are supported");
    let lat = match lattice_or_inconclusive(alg, cap) {
        Ok(l) => l,
        Err(v) => return v,
    };
    let rels: Vec<BinRel> = lat.congruences().iter().map(Congruence::to_binrel).collect();
    for i in 0..rels.len() {
        for j in i + 1..rels.len() {
            let rf = alternating_composite(&rels[i], &rels[j], n);
            let sf = alternating_composite(&rels[j], &rels[i], n);
            if let Some((pair, in_r_first)) = separating_pair(&rf, &sf) {
                return Verdict::fails(PermutabilityWitness {
                    n,
                    r: lat.congruences()[i].reps().to_vec(),
                    s: lat.congruences()[j].reps().to_vec(),
                    pair,
                    in_r_first,
                });
            }
        }
    }
    Verdict::holds()
}

/// `R ≤ T` and a pair in `(R ∨ S) ∧ T` missing from `R ∨ (S ∧ T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularityWitness {
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub pair: (usize, usize),
}

impl ModularityWitness {
    pub fn replay(&self, alg: &FinAlgebra) -> Result<bool> {
        let r = Congruence::checked(self.r.clone(), alg)?;
        let s = Congruence::checked(self.s.clone(), alg)?;
        let t = Congruence::checked(self.t.clone(), alg)?;
        if !r.leq(&t) {
            return Ok(false);
        }
        let lhs = r.join(&s.meet(&t));
        let rhs = r.join(&s).meet(&t);
        let (x, y) = self.pair;
        Ok(x < alg.size() && y < alg.size() && rhs.related(x, y) && !lhs.related(x, y))
    }

    pub fn describe(&self, alg: &FinAlgebra) -> String {
        let p = |v: &Vec<usize>| partition_or_diag(alg, &Congruence::from_labels(v));
        format!(
            "R = {}, S = {}, T = {}; ({}, {}) in (R∨S)∧T but not in R∨(S∧T)",
            p(&self.r),
            p(&self.s),
            p(&self.t),
            alg.label(self.pair.0),
            alg.label(self.pair.1)
        )
    }
}

/// The modular law `R ≤ T ⇒ R ∨ (S ∧ T) = (R ∨ S) ∧ T` on `Con(alg)`.
pub fn check_modularity(alg: &FinAlgebra) -> Verdict<ModularityWitness> {
    check_modularity_with_cap(alg, DEFAULT_LATTICE_CAP)
}

pub fn check_modularity_with_cap(alg: &FinAlgebra, cap: usize) -> Verdict<ModularityWitness> {
    let lat = match lattice_or_inconclusive(alg, cap) {
        Ok(l) => l,
        Err(v) => return v,
    };
    let cons = lat.congruences();
    let m = lat.len();
    for r in 0..m {
        for t in 0..m {
            if !cons[r].leq(&cons[t]) {
                continue;
            }
            for s in 0..m {
                let lhs = lat.join(r, lat.meet(s, t));
                let rhs = lat.meet(lat.join(r, s), t);
                if lhs != rhs {
                    let (l, h) = (cons[lhs].to_binrel(), cons[rhs].to_binrel());
                    let pair = h.containment_witness(&l).unwrap().expect("lhs ≤ rhs always");
                    return Verdict::fails(ModularityWitness {
                        r: cons[r].reps().to_vec(),
                        s: cons[s].reps().to_vec(),
                        t: cons[t].reps().to_vec(),
                        pair,
                    });
                }
            }
        }
    }
    Verdict::holds()
}

/// A Shifting Lemma square whose conclusion `(t, z) ∈ T` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftingWitness {
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    #[serde(rename = "t_rel")]
    pub t: Vec<usize>,
    pub x: usize,
    pub y: usize,
    #[serde(rename = "t")]
    pub t_elem: usize,
    pub z: usize,
}

impl ShiftingWitness {
    pub fn replay(&self, alg: &FinAlgebra) -> Result<bool> {
        let r = Congruence::checked(self.r.clone(), alg)?;
        let s = Congruence::checked(self.s.clone(), alg)?;
        let t = Congruence::checked(self.t.clone(), alg)?;
        let n = alg.size();
        if [self.x, self.y, self.t_elem, self.z].iter().any(|&e| e >= n) {
            return Ok(false);
        }
        let (x, y, tt, z) = (self.x, self.y, self.t_elem, self.z);
        Ok(r.meet(&s).leq(&t)
            && r.related(x, y)
            && t.related(x, y)
            && s.related(x, tt)
            && s.related(y, z)
            && r.related(tt, z)
            && !t.related(tt, z))
    }

    pub fn describe(&self, alg: &FinAlgebra) -> String {
        let p = |v: &Vec<usize>| partition_or_diag(alg, &Congruence::from_labels(v));
        format!(
            "R = {}, S = {}, T = {}; x = {}, y = {}, t = {}, z = {}: (t, z) not in T",
            p(&self.r),
            p(&self.s),
            p(&self.t),
            alg.label(self.x),
            alg.label(self.y),
            alg.label(self.t_elem),
            alg.label(self.z)
        )
    }
}

/// Shifting Lemma: `R ∧ S ≤ T`, `x (R∧T) y`, `x S t`, `y S z`, `t R z` imply `t T z`.
pub fn check_shifting_lemma(alg: &FinAlgebra) -> Verdict<ShiftingWitness> {
    check_shifting_lemma_with_cap(alg, DEFAULT_LATTICE_CAP)
}

pub fn check_shifting_lemma_with_cap(alg: &FinAlgebra, cap: usize) -> Verdict<ShiftingWitness> {
    let lat = match lattice_or_inconclusive(alg, cap) {
        Ok(l) => l,
        Err(v) => return v,
    };
    let cons = lat.congruences();
    let m = lat.len();
    let classes: Vec<(Vec<Vec<usize>>, Vec<usize>)> =
        cons.iter().map(|c| (c.classes(), c.class_index())).collect();
    let class_of = |c: usize, x: usize| -> &[usize] { &classes[c].0[classes[c].1[x]] };
    for r in 0..m {
        for s in 0..m {
            for t in 0..m {
                if !cons[lat.meet(r, s)].leq(&cons[t]) {
                    continue;
                }
                let rt = lat.meet(r, t);
                for x in 0..alg.size() {
                    for &y in class_of(rt, x) {
                        for &te in class_of(s, x) {
                            for &z in class_of(s, y) {
                                if cons[r].related(te, z) && !cons[t].related(te, z) {
                                    return Verdict::fails(ShiftingWitness {
                                        r: cons[r].reps().to_vec(),
                                        s: cons[s].reps().to_vec(),
                                        t: cons[t].reps().to_vec(),
                                        x,
                                        y,
                                        t_elem: te,
                                        z,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::holds()
}

/// Relational characterisations of 3-permutability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelCondition {
    /// `E° ≤ EE` for reflexive `E`.
    Ii,
    /// `(1 ∧ T) T° (1 ∧ T) ≤ TT` for any `T` on `A`.
    Iii,
    /// `P P° P P° ≤ P P°` for any `P` from `A` to a target.
    Iv,
}

impl RelCondition {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ii" => Some(RelCondition::Ii),
            "iii" => Some(RelCondition::Iii),
            "iv" => Some(RelCondition::Iv),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RelCondition::Ii => "ii",
            RelCondition::Iii => "iii",
            RelCondition::Iv => "iv",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            RelCondition::Ii => "E° ≤ EE",
            RelCondition::Iii => "(1∧T)T°(1∧T) ≤ TT",
            RelCondition::Iv => "PP°PP° ≤ PP°",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationBudget {
    /// Largest seed set used to generate relations.
    pub seed_pairs: usize,
}

impl Default for RelationBudget {
    fn default() -> Self {
        RelationBudget { seed_pairs: 2 }
    }
}

/// A generated relation violating one of the conditions, with the offending pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationWitness {
    pub condition: RelCondition,
    pub seeds: Vec<(usize, usize)>,
    /// Whether the diagonal was added to the seeds.
    pub reflexive: bool,
    pub relation: Vec<(usize, usize)>,
    pub pair: (usize, usize),
}

/// Left and right sides of the inclusion for `rel`.
fn condition_sides(cond: RelCondition, rel: &BinRel) -> (BinRel, BinRel) {
    match cond {
        RelCondition::Ii => (rel.opposite(), rel.compose(rel).unwrap()),
        RelCondition::Iii => {
            let d = BinRel::identity(rel.src()).meet(rel).unwrap();
            let lhs = BinRel::compose_all(&[&d, &rel.opposite(), &d]).unwrap();
            (lhs, rel.compose(rel).unwrap())
        }
        RelCondition::Iv => {
            let po = rel.compose(&rel.opposite()).unwrap();
            (po.compose(&po).unwrap(), po)
        }
    }
}

fn generated(alg: &FinAlgebra, target: &FinAlgebra, seeds: &[(usize, usize)], reflexive: bool) -> Result<BinRel> {
    let mut all = seeds.to_vec();
    if reflexive {
        all.extend((0..alg.size()).map(|x| (x, x)));
    }
    FinAlgebra::generate_relation(alg, target, &all)
}

impl RelationWitness {
    pub fn replay(&self, alg: &FinAlgebra, target: &FinAlgebra) -> Result<bool> {
        let rel = generated(alg, target, &self.seeds, self.reflexive)?;
        let stated = BinRel::from_pairs(alg.size(), target.size(), self.relation.iter().copied())?;
        if rel != stated || !alg.is_compatible_relation(target, &rel) {
            return Ok(false);
        }
        let (lhs, rhs) = condition_sides(self.condition, &rel);
        let (x, y) = self.pair;
        Ok(x < lhs.src() && y < lhs.dst() && lhs.contains(x, y) && !rhs.contains(x, y))
    }

    pub fn describe(&self, alg: &FinAlgebra, target: &FinAlgebra) -> String {
        let (l0, l1): (&dyn Fn(usize) -> String, &dyn Fn(usize) -> String) = match self.condition {
            RelCondition::Iv => (&|x| alg.label(x), &|x| target.label(x)),
            _ => (&|x| alg.label(x), &|x| alg.label(x)),
        };
        let rel: Vec<String> = self
            .relation
            .iter()
            .map(|&(a, b)| format!("({},{})", l0(a), l1(b)))
            .collect();
        let name = match self.condition {
            RelCondition::Ii => "E",
            RelCondition::Iii => "T",
            RelCondition::Iv => "P",
        };
        let pl: (String, String) = match self.condition {
            RelCondition::Ii | RelCondition::Iii | RelCondition::Iv => (l0(self.pair.0), l0(self.pair.1)),
        };
        format!(
            "{name} = {{{}}} violates {}: ({}, {}) on the left only",
            rel.join(","),
            self.condition.formula(),
            pl.0,
            pl.1
        )
    }
}

/// Subsets of `0..universe` of size `0..=max`, by size then lexicographically.
fn for_each_seed_set(universe: usize, max: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if !f(&[]) {
        return;
    }
    for k in 1..=max.min(universe) {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if !f(&c) {
                return;
            }
            let Some(i) = (0..k).rev().find(|&i| c[i] < universe - k + i) else {
                break;
            };
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
        }
    }
}

/// Checks condition (ii) or (iii) on relations on `alg`.
pub fn check_relation_condition(alg: &FinAlgebra, cond: RelCondition, budget: RelationBudget) -> Verdict<RelationWitness> {
    check_relation_condition_with_target(alg, alg, cond, budget)
}

/// Like [`check_relation_condition`], with relations from `alg` to `target`
/// for condition (iv). Conditions (ii) and (iii) ignore `target`.
pub fn check_relation_condition_with_target(
    alg: &FinAlgebra,
    target: &FinAlgebra,
    cond: RelCondition,
    budget: RelationBudget,
) -> Verdict<RelationWitness> {
    let target = if cond == RelCondition::Iv { target } else { alg };
    if alg.signature() != target.signature() {
        return Verdict::inconclusive("target algebra has a different signature");
    }
    let nb = target.size();
    let universe = alg.size() * nb;
    let variants: &[bool] = match cond {
        RelCondition::Ii => &[true],
        RelCondition::Iii => &[false, true],
        RelCondition::Iv => &[false],
    };
    let mut seen: HashSet<BinRel> = HashSet::new();
    let mut found = None;
    let mut checked = 0usize;
    for_each_seed_set(universe, budget.seed_pairs, |set| {
        let seeds: Vec<(usize, usize)> = set.iter().map(|&p| (p / nb, p % nb)).collect();
        for &reflexive in variants {
            let rel = generated(alg, target, &seeds, reflexive).expect("seeds in range");
            if !seen.insert(rel.clone()) {
                continue;
            }
            checked += 1;
            let (lhs, rhs) = condition_sides(cond, &rel);
            if let Some(pair) = lhs.containment_witness(&rhs).unwrap() {
                found = Some(RelationWitness {
                    condition: cond,
                    seeds: seeds.clone(),
                    reflexive,
                    relation: rel.pairs().collect(),
                    pair,
                });
                return false;
            }
        }
        true
    });
    match found {
        Some(w) => Verdict::fails(w),
        None => Verdict::holds_within(format!(
            "{} holds for all {checked} distinct relations generated by at most {} seed pairs",
            cond.formula(),
            budget.seed_pairs
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;
    use crate::zoo::*;

    fn collapsing(n: usize, a: usize, b: usize) -> Congruence {
        let labels: Vec<usize> = (0..n).map(|x| if x == b { a } else { x }).collect();
        Congruence::from_labels(&labels)
    }

    #[test]
    fn seed_sets_enumerate_combinations() {
        let mut got = Vec::new();
        for_each_seed_set(4, 2, |s| {
            got.push(s.to_vec());
            true
        });
        assert_eq!(got.len(), 1 + 4 + 6);
        assert_eq!(got[5], vec![0, 1]);
        assert_eq!(got[10], vec![2, 3]);
        let mut n = 0;
        for_each_seed_set(3, 3, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 8);
        let mut n = 0;
        for_each_seed_set(0, 2, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn permutable_examples() {
        assert!(check_permutable(&trivial_group(), 2).holds_bool());
        assert!(check_permutable(&trivial_group(), 3).holds_bool());
        assert!(check_permutable(&z4_group(), 2).holds_bool());
        let set3 = bare_set(3);
        let v = check_permutable(&set3, 2);
        assert_eq!(v.status, Status::Fails);
        let w = v.witness.unwrap();
        assert!(w.replay(&set3).unwrap());
        // the instance R = {0,1}, S = {1,2} with pair (2,0) in SR \ RS replays too
        let by_hand = PermutabilityWitness {
            n: 2,
            r: collapsing(3, 0, 1).reps().to_vec(),
            s: collapsing(3, 1, 2).reps().to_vec(),
            pair: (2, 0),
            in_r_first: false,
        };
        assert!(by_hand.replay(&set3).unwrap());
        let wrong_side = PermutabilityWitness {
            in_r_first: true,
            ..by_hand
        };
        assert!(!wrong_side.replay(&set3).unwrap());
    }

    #[test]
    fn set3_is_three_permutable_but_set4_is_not() {
        assert!(check_permutable(&bare_set(3), 3).holds_bool());
        let set4 = bare_set(4);
        let v = check_permutable(&set4, 3);
        assert!(v.fails_bool());
        assert!(v.witness.unwrap().replay(&set4).unwrap());
    }

    #[test]
    fn inconclusive_over_budget() {
        let v = check_permutable_with_cap(&bare_set(5), 2, 10);
        assert_eq!(v.status, Status::Inconclusive);
        assert!(v.budget_note.is_some());
        assert_eq!(check_modularity_with_cap(&bare_set(5), 10).status, Status::Inconclusive);
        assert_eq!(check_shifting_lemma_with_cap(&bare_set(5), 10).status, Status::Inconclusive);
    }

    #[test]
    fn modularity_examples() {
        assert!(check_modularity(&z4_group()).holds_bool());
        assert!(check_modularity(&trivial_group()).holds_bool());
        assert!(check_modularity(&bare_set(3)).holds_bool());
        let set4 = bare_set(4);
        let v = check_modularity(&set4);
        assert!(v.fails_bool());
        let w = v.witness.unwrap();
        assert!(w.replay(&set4).unwrap());
        // pentagon: R < T, S incomparable with both
        let (r, s, t) = (
            Congruence::from_labels(&w.r),
            Congruence::from_labels(&w.s),
            Congruence::from_labels(&w.t),
        );
        assert!(r.leq(&t) && r != t);
        assert!(!s.leq(&t) && !t.leq(&s));
    }

    #[test]
    fn shifting_examples() {
        assert!(check_shifting_lemma(&trivial_group()).holds_bool());
        assert!(check_shifting_lemma(&impl2()).holds_bool());
        assert!(check_shifting_lemma(&bare_set(3)).holds_bool());
        let set4 = bare_set(4);
        let v = check_shifting_lemma(&set4);
        assert!(v.fails_bool());
        let w = v.witness.unwrap();
        assert!(w.replay(&set4).unwrap());
        let mut tampered = w.clone();
        tampered.z = tampered.t_elem;
        assert!(!tampered.replay(&set4).unwrap());
    }

    /// Oracle for the Shifting Lemma straight from the statement, all quadruples.
    fn shifting_oracle(alg: &FinAlgebra) -> bool {
        let lat = con_lattice(alg, 1000).unwrap();
        let c = lat.congruences();
        let n = alg.size();
        for r in c {
            for s in c {
                for t in c {
                    if !r.meet(s).leq(t) {
                        continue;
                    }
                    for x in 0..n {
                        for y in 0..n {
                            for te in 0..n {
                                for z in 0..n {
                                    if r.related(x, y)
                                        && t.related(x, y)
                                        && s.related(x, te)
                                        && s.related(y, z)
                                        && r.related(te, z)
                                        && !t.related(te, z)
                                    {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn shifting_agrees_with_quadruple_oracle() {
        for alg in [bare_set(4), bare_set(3), klein_group(), chain3_lattice(), s3_group(), semilattice2()] {
            assert_eq!(
                check_shifting_lemma(&alg).holds_bool(),
                shifting_oracle(&alg),
                "{}",
                alg.name()
            );
        }
    }

    #[test]
    fn permutable_three_forces_join_equals_rsr() {
        for alg in [z4_group(), s3_group(), klein_group(), impl2(), bare_set(3)] {
            if !check_permutable(&alg, 3).holds_bool() {
                continue;
            }
            let lat = con_lattice(&alg, 1000).unwrap();
            for (i, r) in lat.congruences().iter().enumerate() {
                for (j, s) in lat.congruences().iter().enumerate() {
                    let rsr = alternating_composite(&r.to_binrel(), &s.to_binrel(), 3);
                    assert_eq!(lat.congruences()[lat.join(i, j)].to_binrel(), rsr);
                }
            }
        }
    }

    #[test]
    fn two_permutable_implies_three_permutable() {
        for (_, alg) in corpus() {
            let two = check_permutable(&alg, 2);
            if two.holds_bool() {
                assert!(check_permutable(&alg, 3).holds_bool(), "{}", alg.name());
            }
        }
    }

    #[test]
    fn condition_ii_examples() {
        let l = lattice2();
        let v = check_relation_condition(&l, RelCondition::Ii, RelationBudget::default());
        assert!(v.fails_bool());
        let w = v.witness.unwrap();
        assert_eq!(w.relation, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(w.pair, (1, 0));
        assert!(w.replay(&l, &l).unwrap());
        let z2 = z2_group();
        let v = check_relation_condition(&z2, RelCondition::Ii, RelationBudget::default());
        assert!(v.holds_bool());
        assert!(v.budget_note.unwrap().contains("at most 2"));
        // with no seeds only the diagonal is generated
        let v = check_relation_condition(&l, RelCondition::Ii, RelationBudget { seed_pairs: 0 });
        assert!(v.holds_bool());
    }

    #[test]
    fn condition_iii_examples() {
        let l = lattice2();
        let v = check_relation_condition(&l, RelCondition::Iii, RelationBudget::default());
        assert!(v.fails_bool());
        let w = v.witness.unwrap();
        assert_eq!(w.relation, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(w.pair, (1, 0));
        assert!(w.replay(&l, &l).unwrap());
        assert!(check_relation_condition(&z2_group(), RelCondition::Iii, RelationBudget::default()).holds_bool());
        assert!(check_relation_condition(&impl2(), RelCondition::Iii, RelationBudget::default()).holds_bool());
        // the diagonal passes on its own
        let d = BinRel::identity(3);
        let (lhs, rhs) = condition_sides(RelCondition::Iii, &d);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn condition_iv_examples() {
        let set4 = bare_set(4);
        let v = check_relation_condition(&set4, RelCondition::Iv, RelationBudget { seed_pairs: 4 });
        assert!(v.fails_bool());
        assert!(v.witness.unwrap().replay(&set4, &set4).unwrap());
        let z2 = z2_group();
        assert!(check_relation_condition(&z2, RelCondition::Iv, RelationBudget::default()).holds_bool());
        // relations from A×A to A, the shape used to derive (iii) from (iv)
        let i2 = impl2();
        let sq = FinAlgebra::product(&i2, &i2).unwrap();
        let v = check_relation_condition_with_target(&sq, &i2, RelCondition::Iv, RelationBudget::default());
        assert!(v.holds_bool());
        let l = lattice2();
        let lsq = FinAlgebra::product(&l, &l).unwrap();
        let v = check_relation_condition_with_target(&lsq, &l, RelCondition::Iv, RelationBudget { seed_pairs: 4 });
        assert!(v.fails_bool());
        assert!(v.witness.unwrap().replay(&lsq, &l).unwrap());
    }

    #[test]
    fn describe_uses_labels() {
        let s3 = s3_group();
        let w = PermutabilityWitness {
            n: 2,
            r: vec![0, 1, 2, 3, 4, 5],
            s: vec![0, 1, 2, 3, 4, 5],
            pair: (1, 4),
            in_r_first: true,
        };
        let d = w.describe(&s3);
        assert!(d.contains("(01)") && d.contains("(012)"));
    }
}

//! Reflection onto the subvariety defined by a set of identities, and the
//! Galois pregroupoid of a surjection.
//!
//! The reflection of `A` is `A / θ`, where `θ` is generated by every instance
//! of every identity in `A`. The loop in [`reflect`] re-instantiates in the
//! quotient until nothing new is forced.

use serde::{Deserialize, Serialize};

use crate::algebra::{cg, AlgRef, Congruence, FinAlgebra, Homomorphism, Term};
use crate::diagrams::{induced_on_quotient, pullback, same_alg, Comparison, ComparisonWitness, Point};
use crate::error::{Error, Result};
use crate::tuples::for_each_tuple;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity { lhs, rhs }
    }

    fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }
}

/// Equations defining a subvariety.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySet {
    pub identities: Vec<Identity>,
}

impl IdentitySet {
    pub fn new(identities: Vec<Identity>) -> Self {
        IdentitySet { identities }
    }

    /// `mul(x, y) ≈ mul(y, x)`.
    pub fn commutative(op: &str) -> Self {
        let (x, y) = (Term::var("x"), Term::var("y"));
        IdentitySet::new(vec![Identity::new(
            Term::app(op, vec![x.clone(), y.clone()]),
            Term::app(op, vec![y, x]),
        )])
    }

    pub fn check_against(&self, alg: &FinAlgebra) -> Result<()> {
        for id in &self.identities {
            id.lhs.check_against(alg)?;
            id.rhs.check_against(alg)?;
        }
        Ok(())
    }

    /// The first identity failing in `alg`, with the failing assignment.
    pub fn violation(&self, alg: &FinAlgebra) -> Result<Option<(usize, Vec<usize>)>> {
        for (k, id) in self.identities.iter().enumerate() {
            if let Some(t) = alg.satisfies(&id.lhs, &id.rhs)? {
                return Ok(Some((k, t)));
            }
        }
        Ok(None)
    }

    /// Every pair `(lhs(a), rhs(a))` with distinct sides.
    fn instances(&self, alg: &FinAlgebra) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for id in &self.identities {
            let vars = id.variables();
            let mut err = None;
            for_each_tuple(alg.size(), vars.len(), |t| {
                if err.is_some() {
                    return;
                }
                match (id.lhs.eval_positional(alg, &vars, t), id.rhs.eval_positional(alg, &vars, t)) {
                    (Ok(a), Ok(b)) if a != b => out.push((a, b)),
                    (Ok(_), Ok(_)) => {}
                    (Err(e), _) | (_, Err(e)) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(out)
    }
}

/// `η: A → I(A)`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub alg: AlgRef,
    pub eta: Homomorphism,
}

pub fn reflect(alg: &AlgRef, ids: &IdentitySet) -> Result<Reflection> {
    ids.check_against(alg)?;
    let mut theta = Congruence::diagonal(alg.size());
    loop {
        let eta = Homomorphism::quotient(alg, &theta)?;
        let q = eta.dst().clone();
        let forced = ids.instances(&q)?;
        if forced.is_empty() {
            return Ok(Reflection {
                alg: q.clone(),
                eta: Homomorphism::new(alg.clone(), q, eta.map().to_vec())?,
            });
        }
        // lift the forced pairs back along the representatives
        let classes = theta.classes();
        let mut pairs: Vec<(usize, usize)> = forced.iter().map(|&(a, b)| (classes[a][0], classes[b][0])).collect();
        pairs.extend((0..alg.size()).map(|x| (theta.rep(x), x)));
        theta = cg(alg, &pairs);
    }
}

/// `I(h): I(A) → I(B)` with both reflections.
#[derive(Debug, Clone)]
pub struct ReflectedHom {
    pub src: Reflection,
    pub dst: Reflection,
    pub map: Homomorphism,
}

pub fn reflect_hom(h: &Homomorphism, ids: &IdentitySet) -> Result<ReflectedHom> {
    let src = reflect(h.src(), ids)?;
    let dst = reflect(h.dst(), ids)?;
    let map = h
        .then(&dst.eta)?
        .factor_through(&src.eta)
        .map_err(|_| Error::InvalidDiagram("reflected map is not well defined".into()))?;
    Ok(ReflectedHom { src, dst, map })
}

/// `I(X ×_Y Z) → I(X) ×_{I(Y)} I(Z)`, `[(x, z)] ↦ ([x], [z])`.
pub fn pullback_comparison(f: &Homomorphism, l: &Homomorphism, ids: &IdentitySet) -> Result<Comparison> {
    let pb = pullback(f, l)?;
    let ip = reflect(&pb.alg, ids)?;
    let rf = reflect_hom(f, ids)?;
    let rl = reflect_hom(l, ids)?;
    let target = pullback(&rf.map, &rl.map)?;
    induced_on_quotient(
        &ip.eta,
        &target.alg,
        |p| {
            let (x, z) = pb.members[p];
            target
                .index_of(rf.src.eta.apply(x), rl.src.eta.apply(z))
                .expect("reflection is functorial")
        },
        "reflected pullback",
    )
}

/// Whether `I` preserves the pullback of two split epimorphisms over the same base.
pub fn check_split_pullback_preservation(a: &Point, b: &Point, ids: &IdentitySet) -> Result<Verdict<ComparisonWitness>> {
    if !same_alg(a.base(), b.base()) {
        return Err(Error::InvalidDiagram("cospan: points over different bases".into()));
    }
    Ok(pullback_comparison(&a.f, &b.f, ids)?.verdict())
}

/// Whether `I` preserves the pullback of a split epimorphism along a surjection.
pub fn check_regular_pullback_preservation(
    g: &Point,
    p: &Homomorphism,
    ids: &IdentitySet,
) -> Result<Verdict<ComparisonWitness>> {
    if !p.is_surjective() {
        return Err(Error::NotSurjective(format!("{} -> {}", p.src().name(), p.dst().name())));
    }
    if !same_alg(p.dst(), g.base()) {
        return Err(Error::InvalidDiagram("cospan: codomains differ".into()));
    }
    Ok(pullback_comparison(p, &g.f, ids)?.verdict())
}

/// `P2 ⇉ P1 ⇄ P0` with `d1`, `d2`, `s` and composition data `π1`, `π2`, `m`.
#[derive(Debug, Clone)]
pub struct PreCategory {
    pub p0: AlgRef,
    pub p1: AlgRef,
    pub p2: AlgRef,
    pub d1: Homomorphism,
    pub d2: Homomorphism,
    pub s: Homomorphism,
    pub pi1: Homomorphism,
    pub pi2: Homomorphism,
    pub m: Homomorphism,
}

fn agree(a: &Homomorphism, b: &Homomorphism, what: &str) -> Result<()> {
    if a.map() == b.map() {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(format!("precategory: {what}")))
    }
}

impl PreCategory {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d1: Homomorphism,
        d2: Homomorphism,
        s: Homomorphism,
        pi1: Homomorphism,
        pi2: Homomorphism,
        m: Homomorphism,
    ) -> Result<Self> {
        let (p0, p1, p2) = (d1.dst().clone(), d1.src().clone(), pi1.src().clone());
        let same = |a: &AlgRef, b: &AlgRef, what: &str| {
            if same_alg(a, b) {
                Ok(())
            } else {
                Err(Error::InvalidDiagram(format!("precategory: {what}")))
            }
        };
        same(d2.src(), &p1, "d2 must start at P1")?;
        same(d2.dst(), &p0, "d2 must end at P0")?;
        same(s.src(), &p0, "s must start at P0")?;
        same(s.dst(), &p1, "s must end at P1")?;
        for (h, name) in [(&pi1, "π1"), (&pi2, "π2"), (&m, "m")] {
            same(h.src(), &p2, &format!("{name} must start at P2"))?;
            same(h.dst(), &p1, &format!("{name} must end at P1"))?;
        }
        let id0 = Homomorphism::identity(&p0);
        agree(&s.then(&d1)?, &id0, "d1·s is not the identity")?;
        agree(&s.then(&d2)?, &id0, "d2·s is not the identity")?;
        agree(&pi1.then(&d2)?, &pi2.then(&d1)?, "d2·π1 differs from d1·π2")?;
        agree(&pi1.then(&d1)?, &m.then(&d1)?, "d1·π1 differs from d1·m")?;
        agree(&pi2.then(&d2)?, &m.then(&d2)?, "d2·π2 differs from d2·m")?;
        Ok(PreCategory {
            p0,
            p1,
            p2,
            d1,
            d2,
            s,
            pi1,
            pi2,
            m,
        })
    }

    /// `P2 → P1 ×_{P0} P1`, `t ↦ (π1 t, π2 t)`.
    pub fn composable_comparison(&self) -> Result<(Comparison, crate::diagrams::Pullback)> {
        let pb = pullback(&self.d2, &self.d1)?;
        let map = (0..self.p2.size())
            .map(|t| pb.index_of(self.pi1.apply(t), self.pi2.apply(t)).expect("invariants hold"))
            .collect();
        Ok((
            Comparison {
                src: self.p2.clone(),
                dst: pb.alg.clone(),
                map,
            },
            pb,
        ))
    }

    /// The kernel-pair groupoid of `f`: `P1 = Eq(f)`, `P2` its composable pairs.
    pub fn kernel_pair(f: &Homomorphism) -> Result<Self> {
        let a = f.src();
        let eq = pullback(f, f)?;
        let s = Homomorphism::new(
            a.clone(),
            eq.alg.clone(),
            (0..a.size()).map(|x| eq.index_of(x, x).expect("diagonal")).collect(),
        )?;
        let p2 = pullback(&eq.p2, &eq.p1)?;
        let m = Homomorphism::new(
            p2.alg.clone(),
            eq.alg.clone(),
            p2.members
                .iter()
                .map(|&(u, v)| eq.index_of(eq.members[u].0, eq.members[v].1).expect("transitive"))
                .collect(),
        )?;
        PreCategory::new(eq.p1.clone(), eq.p2.clone(), s, p2.p1.clone(), p2.p2.clone(), m)
    }
}

/// `Gal(f)`: the reflection of the kernel-pair groupoid of a surjection `f`.
pub fn galois_pregroupoid(f: &Homomorphism, ids: &IdentitySet) -> Result<PreCategory> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective(format!("{} -> {}", f.src().name(), f.dst().name())));
    }
    let k = PreCategory::kernel_pair(f)?;
    let r = |h: &Homomorphism| reflect_hom(h, ids).map(|rh| rh.map);
    PreCategory::new(r(&k.d1)?, r(&k.d2)?, r(&k.s)?, r(&k.pi1)?, r(&k.pi2)?, r(&k.m)?)
}

/// Why a precategory is not a groupoid. Arrows are elements of `P1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupoidWitness {
    /// `P2` is not the object of composable pairs.
    Composable { comparison: ComparisonWitness },
    LeftUnit { arrow: usize },
    RightUnit { arrow: usize },
    Associativity { a: usize, b: usize, c: usize },
    NoInverse { arrow: usize },
}

/// Pullback comparison, then the groupoid axioms on elements.
pub fn groupoid_check(pc: &PreCategory) -> Result<Verdict<GroupoidWitness>> {
    let (cmp, pb) = pc.composable_comparison()?;
    if let Some(w) = cmp.verdict().witness {
        return Ok(Verdict::fails(GroupoidWitness::Composable { comparison: w }));
    }
    let mut inv = vec![0; pb.len()];
    for (t, &q) in cmp.map.iter().enumerate() {
        inv[q] = t;
    }
    let n1 = pc.p1.size();
    let comp = |a: usize, b: usize| pb.index_of(a, b).map(|q| pc.m.apply(inv[q]));
    let unit = |x: usize| pc.s.apply(x);
    for a in 0..n1 {
        if comp(unit(pc.d1.apply(a)), a) != Some(a) {
            return Ok(Verdict::fails(GroupoidWitness::LeftUnit { arrow: a }));
        }
        if comp(a, unit(pc.d2.apply(a))) != Some(a) {
            return Ok(Verdict::fails(GroupoidWitness::RightUnit { arrow: a }));
        }
    }
    for &(a, b) in &pb.members {
        let ab = comp(a, b).expect("composable");
        for c in 0..n1 {
            if let Some(bc) = comp(b, c) {
                if comp(ab, c) != comp(a, bc) {
                    return Ok(Verdict::fails(GroupoidWitness::Associativity { a, b, c }));
                }
            }
        }
    }
    for a in 0..n1 {
        let (x, y) = (pc.d1.apply(a), pc.d2.apply(a));
        let has = (0..n1).any(|b| comp(a, b) == Some(unit(x)) && comp(b, a) == Some(unit(y)));
        if !has {
            return Ok(Verdict::fails(GroupoidWitness::NoInverse { arrow: a }));
        }
    }
    Ok(Verdict::holds())
}

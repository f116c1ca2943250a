//! Diagrams of split epimorphisms between finite algebras.
//!
//! Pullbacks and pushouts are computed concretely: a pullback is the
//! subalgebra of pairs with equal images, a pushout of a surjection along a
//! split mono is a quotient by a generated congruence. Every constructor
//! re-checks commutation, splittings included, and names the face that fails.

mod random;
mod remark;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{cg, AlgRef, FinAlgebra, Homomorphism, OpTable};
use crate::error::{Error, Result};
use crate::relcore::Carrier;
use crate::tuples::for_each_tuple;
use crate::verdict::Verdict;

pub use random::{
    random_beck_chevalley_instance, random_cube, random_point, random_power_subalgebra, random_product_instance,
    random_square, DiagramRng,
};
pub use remark::remark_cube;

/// Same shared handle, or structurally equal algebras.
pub fn same_alg(a: &AlgRef, b: &AlgRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn require_same(a: &AlgRef, b: &AlgRef, what: &str) -> Result<()> {
    if same_alg(a, b) {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(format!(
            "{what}: `{}` and `{}` differ",
            a.name(),
            b.name()
        )))
    }
}

fn require_surjective(h: &Homomorphism, name: &str) -> Result<()> {
    if h.is_surjective() {
        Ok(())
    } else {
        Err(Error::NotSurjective(format!(
            "{name}: {} -> {}",
            h.src().name(),
            h.dst().name()
        )))
    }
}

fn first_difference(a: &Homomorphism, b: &Homomorphism) -> Option<usize> {
    (0..a.src().size()).find(|&x| a.apply(x) != b.apply(x))
}

/// `Y ⇄ X`: a split epimorphism `f` with a chosen section `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub f: Homomorphism,
    pub i: Homomorphism,
}

impl Point {
    pub fn new(f: Homomorphism, i: Homomorphism) -> Result<Self> {
        require_same(f.dst(), i.src(), "point: codomain of f and domain of i")?;
        require_same(f.src(), i.dst(), "point: domain of f and codomain of i")?;
        if let Some(y) = (0..i.src().size()).find(|&y| f.apply(i.apply(y)) != y) {
            return Err(Error::InvalidDiagram(format!(
                "point: f(i({})) = {}",
                i.src().label(y),
                i.src().label(f.apply(i.apply(y)))
            )));
        }
        Ok(Point { f, i })
    }

    pub fn identity(y: &AlgRef) -> Self {
        Point {
            f: Homomorphism::identity(y),
            i: Homomorphism::identity(y),
        }
    }

    /// The domain of `f`.
    pub fn total(&self) -> &AlgRef {
        self.f.src()
    }

    pub fn base(&self) -> &AlgRef {
        self.f.dst()
    }
}

/// A morphism of points `(f, i) → (g, j)` given by `α` on totals and `β` on bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEpiSquare {
    pub left: Point,
    pub right: Point,
    pub alpha: Homomorphism,
    pub beta: Homomorphism,
}

impl SplitEpiSquare {
    pub fn new(left: Point, right: Point, alpha: Homomorphism, beta: Homomorphism) -> Result<Self> {
        require_same(alpha.src(), left.total(), "square: domain of alpha")?;
        require_same(alpha.dst(), right.total(), "square: codomain of alpha")?;
        require_same(beta.src(), left.base(), "square: domain of beta")?;
        require_same(beta.dst(), right.base(), "square: codomain of beta")?;
        if let Some(x) = first_difference(&alpha.then(&right.f)?, &left.f.then(&beta)?) {
            return Err(Error::InvalidDiagram(format!(
                "square: g·alpha and beta·f differ at {}",
                left.total().label(x)
            )));
        }
        if let Some(y) = first_difference(&left.i.then(&alpha)?, &beta.then(&right.i)?) {
            return Err(Error::InvalidDiagram(format!(
                "square: alpha·i and j·beta differ at {}",
                left.base().label(y)
            )));
        }
        Ok(SplitEpiSquare {
            left,
            right,
            alpha,
            beta,
        })
    }

    /// The square with identities on both points.
    pub fn identity(pt: &Point) -> Self {
        SplitEpiSquare {
            left: pt.clone(),
            right: pt.clone(),
            alpha: Homomorphism::identity(pt.total()),
            beta: Homomorphism::identity(pt.base()),
        }
    }

    fn require_regular(&self) -> Result<()> {
        require_surjective(&self.alpha, "alpha")?;
        require_surjective(&self.beta, "beta")
    }
}

/// `X ×_Y Z` with its projections; elements are the pairs `(x, z)` with
/// `f(x) = l(z)` in increasing order of `x * |Z| + z`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub alg: AlgRef,
    pub members: Vec<(usize, usize)>,
    pub p1: Homomorphism,
    pub p2: Homomorphism,
    pos: Vec<usize>,
    width: usize,
}

impl Pullback {
    pub fn index_of(&self, x: usize, z: usize) -> Option<usize> {
        let i = *self.pos.get(x * self.width + z)?;
        (i != usize::MAX).then_some(i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The pullback of `f: X → Y` and `l: Z → Y`.
pub fn pullback(f: &Homomorphism, l: &Homomorphism) -> Result<Pullback> {
    require_same(f.dst(), l.dst(), "pullback: common codomain")?;
    let (x, z) = (f.src(), l.src());
    if x.signature() != z.signature() {
        return Err(Error::SignatureMismatch("pullback legs".into()));
    }
    let width = z.size();
    let mut pos = vec![usize::MAX; x.size() * width];
    let mut members = Vec::new();
    for a in 0..x.size() {
        for b in 0..width {
            if f.apply(a) == l.apply(b) {
                pos[a * width + b] = members.len();
                members.push((a, b));
            }
        }
    }
    let m = members.len();
    let mut ops = Vec::new();
    for (oi, sym) in x.signature().ops().iter().enumerate() {
        let mut table = Vec::with_capacity(m.pow(sym.arity as u32));
        let mut xs = vec![0; sym.arity];
        let mut zs = vec![0; sym.arity];
        for_each_tuple(m, sym.arity, |t| {
            for (j, &e) in t.iter().enumerate() {
                xs[j] = members[e].0;
                zs[j] = members[e].1;
            }
            table.push(pos[x.apply(oi, &xs) * width + z.apply(oi, &zs)]);
        });
        ops.push(OpTable::new(sym.name.clone(), sym.arity, table));
    }
    let labels = members
        .iter()
        .map(|&(a, b)| format!("({},{})", x.label(a), z.label(b)))
        .collect();
    let alg = FinAlgebra::new(
        format!("{}×_{}{}", x.name(), f.dst().name(), z.name()),
        Carrier::with_labels(labels),
        ops,
    )?
    .into_ref();
    let p1 = Homomorphism::new(alg.clone(), x.clone(), members.iter().map(|p| p.0).collect())?;
    let p2 = Homomorphism::new(alg.clone(), z.clone(), members.iter().map(|p| p.1).collect())?;
    Ok(Pullback {
        alg,
        members,
        p1,
        p2,
        pos,
        width,
    })
}

/// A pair of `Eq(g)` outside the image of `Eq(f)` under `α × α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub pair: (usize, usize),
}

fn kernel_image_gap(sq: &SplitEpiSquare) -> Option<(usize, usize)> {
    let (f, g, a) = (&sq.left.f, &sq.right.f, &sq.alpha);
    let nu = sq.right.total().size();
    let mut hit = vec![false; nu * nu];
    let nx = sq.left.total().size();
    for x1 in 0..nx {
        for x2 in 0..nx {
            if f.apply(x1) == f.apply(x2) {
                hit[a.apply(x1) * nu + a.apply(x2)] = true;
            }
        }
    }
    (0..nu * nu)
        .map(|p| (p / nu, p % nu))
        .find(|&(u1, u2)| g.apply(u1) == g.apply(u2) && !hit[u1 * nu + u2])
}

/// Surjectivity of `λ: Eq(f) → Eq(g)` for a regular epimorphism of points.
pub fn goursat_pushout_check(sq: &SplitEpiSquare) -> Result<Verdict<PairWitness>> {
    sq.require_regular()?;
    Ok(match kernel_image_gap(sq) {
        None => Verdict::holds(),
        Some(pair) => Verdict::fails(PairWitness { pair }),
    })
}

impl PairWitness {
    pub fn replay(&self, sq: &SplitEpiSquare) -> Result<bool> {
        sq.require_regular()?;
        let (u1, u2) = self.pair;
        let n = sq.right.total().size();
        if u1 >= n || u2 >= n || sq.right.f.apply(u1) != sq.right.f.apply(u2) {
            return Ok(false);
        }
        let nx = sq.left.total().size();
        let hit = (0..nx).any(|x1| {
            (0..nx).any(|x2| {
                sq.left.f.apply(x1) == sq.left.f.apply(x2)
                    && sq.alpha.apply(x1) == u1
                    && sq.alpha.apply(x2) == u2
            })
        });
        Ok(!hit)
    }

    pub fn describe(&self, sq: &SplitEpiSquare) -> String {
        let u = sq.right.total();
        format!(
            "({}, {}) lies in Eq(g) but has no preimage in Eq(f)",
            u.label(self.pair.0),
            u.label(self.pair.1)
        )
    }
}

/// Two regular epimorphisms of points sharing `β`: the back square
/// `(f, i) → (g, j)` over `α` and the front square `(l, k) → (h, m)` over `γ`.
#[derive(Debug, Clone)]
pub struct Cube {
    pub back: SplitEpiSquare,
    pub front: SplitEpiSquare,
}

impl Cube {
    pub fn new(back: SplitEpiSquare, front: SplitEpiSquare) -> Result<Self> {
        require_same(back.left.base(), front.left.base(), "cube: Y")?;
        require_same(back.right.base(), front.right.base(), "cube: W")?;
        if back.beta.map() != front.beta.map() {
            return Err(Error::InvalidDiagram("cube: the two squares use different beta".into()));
        }
        Ok(Cube { back, front })
    }

    pub fn gamma(&self) -> &Homomorphism {
        &self.front.alpha
    }

    fn require_regular(&self) -> Result<()> {
        self.back.require_regular()?;
        require_surjective(&self.front.alpha, "gamma")
    }

    /// `X ×_Y Z` and `U ×_W V`.
    pub fn faces(&self) -> Result<(Pullback, Pullback)> {
        Ok((
            pullback(&self.back.left.f, &self.front.left.f)?,
            pullback(&self.back.right.f, &self.front.right.f)?,
        ))
    }

    /// `λ(x, z) = (α x, γ z)` with both pullbacks.
    pub fn lambda(&self) -> Result<(Pullback, Pullback, Homomorphism)> {
        let (left, right) = self.faces()?;
        let map = left
            .members
            .iter()
            .map(|&(x, z)| {
                right
                    .index_of(self.back.alpha.apply(x), self.gamma().apply(z))
                    .expect("faces commute")
            })
            .collect();
        let lambda = Homomorphism::new(left.alg.clone(), right.alg.clone(), map)?;
        Ok((left, right, lambda))
    }
}

/// An element of `U ×_W V` with no preimage, as a pair `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaWitness {
    pub pair: (usize, usize),
}

/// Surjectivity of `λ: X ×_Y Z → U ×_W V` for a cube of regular epimorphisms.
pub fn cube_lambda_check(cube: &Cube) -> Result<Verdict<LambdaWitness>> {
    cube.require_regular()?;
    let (_, right, lambda) = cube.lambda()?;
    let mut hit = vec![false; right.len()];
    for &q in lambda.map() {
        hit[q] = true;
    }
    Ok(match hit.iter().position(|&h| !h) {
        None => Verdict::holds(),
        Some(q) => Verdict::fails(LambdaWitness {
            pair: right.members[q],
        }),
    })
}

impl LambdaWitness {
    pub fn replay(&self, cube: &Cube) -> Result<bool> {
        cube.require_regular()?;
        let (left, right) = cube.faces()?;
        let (u, v) = self.pair;
        if right.index_of(u, v).is_none() {
            return Ok(false);
        }
        Ok(!left
            .members
            .iter()
            .any(|&(x, z)| cube.back.alpha.apply(x) == u && cube.gamma().apply(z) == v))
    }

    pub fn describe(&self, cube: &Cube) -> String {
        format!(
            "({}, {}) in U×_W V has no preimage under λ",
            cube.back.right.total().label(self.pair.0),
            cube.front.right.total().label(self.pair.1)
        )
    }
}

/// A cube together with a surjection `δ: X ×_Y Z → A` through which `λ` factors.
#[derive(Debug, Clone)]
pub struct GeneralCube {
    pub cube: Cube,
    pub delta: Homomorphism,
}

impl GeneralCube {
    pub fn new(cube: Cube, delta: Homomorphism) -> Result<Self> {
        let (left, _) = cube.faces()?;
        require_same(delta.src(), &left.alg, "general cube: domain of delta")?;
        require_surjective(&delta, "delta")?;
        Ok(GeneralCube { cube, delta })
    }

    /// `δ` = the surjective part of `λ`, `A` = its image.
    pub fn image_factorized(cube: &Cube) -> Result<Self> {
        let (_, _, lambda) = cube.lambda()?;
        let (surj, _) = lambda.image_factorize()?;
        Ok(GeneralCube {
            cube: cube.clone(),
            delta: surj,
        })
    }

    pub fn apex(&self) -> &AlgRef {
        self.delta.dst()
    }

    /// `c: A → U ×_W V` with `c(δ p) = λ p`.
    pub fn comparison(&self) -> Result<Comparison> {
        let (_, right, lambda) = self.cube.lambda()?;
        let mut map = vec![usize::MAX; self.apex().size()];
        for p in 0..lambda.src().size() {
            let a = self.delta.apply(p);
            let v = lambda.apply(p);
            if map[a] != usize::MAX && map[a] != v {
                return Err(Error::InvalidDiagram(format!(
                    "general cube: λ does not factor through δ at {}",
                    self.apex().label(a)
                )));
            }
            map[a] = v;
        }
        Ok(Comparison {
            src: self.apex().clone(),
            dst: right.alg,
            map,
        })
    }
}

/// Whether the right face with apex `A` is a pullback, i.e. `c` is bijective.
pub fn cube_right_face_check(gc: &GeneralCube) -> Result<Verdict<ComparisonWitness>> {
    gc.cube.require_regular()?;
    Ok(gc.comparison()?.verdict())
}

/// A map between two constructed algebras whose bijectivity is being tested.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub src: AlgRef,
    pub dst: AlgRef,
    pub map: Vec<usize>,
}

/// Why a canonical comparison map is not bijective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComparisonWitness {
    /// An element of the codomain with no preimage.
    NotSurjective { target: usize },
    /// Two elements with the same image.
    NotInjective { first: usize, second: usize },
}

impl Comparison {
    pub fn verdict(&self) -> Verdict<ComparisonWitness> {
        let mut seen = vec![usize::MAX; self.dst.size()];
        for (a, &b) in self.map.iter().enumerate() {
            if seen[b] != usize::MAX {
                return Verdict::fails(ComparisonWitness::NotInjective { first: seen[b], second: a });
            }
            seen[b] = a;
        }
        match seen.iter().position(|&s| s == usize::MAX) {
            Some(t) => Verdict::fails(ComparisonWitness::NotSurjective { target: t }),
            None => Verdict::holds(),
        }
    }

    pub fn as_hom(&self) -> Result<Homomorphism> {
        Homomorphism::new(self.src.clone(), self.dst.clone(), self.map.clone())
    }
}

impl ComparisonWitness {
    pub fn reproduces(&self, c: &Comparison) -> bool {
        match *self {
            ComparisonWitness::NotSurjective { target } => target < c.dst.size() && !c.map.contains(&target),
            ComparisonWitness::NotInjective { first, second } => {
                first != second && first < c.map.len() && second < c.map.len() && c.map[first] == c.map[second]
            }
        }
    }

    pub fn describe(&self, c: &Comparison) -> String {
        match *self {
            ComparisonWitness::NotSurjective { target } => {
                format!("{} in the codomain is not in the image", c.dst.label(target))
            }
            ComparisonWitness::NotInjective { first, second } => format!(
                "{} and {} have the same image {}",
                c.src.label(first),
                c.src.label(second),
                c.dst.label(c.map[first])
            ),
        }
    }
}

/// The pushout of a surjection `β: Y → W` along `i: Y → X`.
#[derive(Debug, Clone)]
pub struct SplitPushout {
    pub alg: AlgRef,
    /// `β̄: X → β_!X`.
    pub beta_bar: Homomorphism,
    /// `W → β_!X`, `w ↦ [i(y)]` for any `y` over `w`.
    pub induced: Homomorphism,
}

/// `X / Cg{(i y₁, i y₂) : β y₁ = β y₂}` with its two cocone maps.
pub fn pushout_along_split_mono(beta: &Homomorphism, i: &Homomorphism) -> Result<SplitPushout> {
    require_same(beta.src(), i.src(), "pushout: common domain")?;
    require_surjective(beta, "beta")?;
    let x = i.dst();
    let w = beta.dst();
    let mut first = vec![usize::MAX; w.size()];
    let mut pairs = Vec::new();
    for y in 0..beta.src().size() {
        let b = beta.apply(y);
        if first[b] == usize::MAX {
            first[b] = y;
        } else {
            pairs.push((i.apply(first[b]), i.apply(y)));
        }
    }
    let theta = cg(x, &pairs);
    let beta_bar = Homomorphism::quotient(x, &theta)?;
    let induced_map: Vec<usize> = first.iter().map(|&y| beta_bar.apply(i.apply(y))).collect();
    let induced = Homomorphism::new(w.clone(), beta_bar.dst().clone(), induced_map)?;
    Ok(SplitPushout {
        alg: beta_bar.dst().clone(),
        beta_bar,
        induced,
    })
}

/// `β_!` on points: the pushout along the section, with `β_!(f)` induced by `β f`.
pub fn beta_shriek(pt: &Point, beta: &Homomorphism) -> Result<(Point, SplitPushout)> {
    require_same(beta.src(), pt.base(), "beta_shriek: beta must start at the base")?;
    let po = pushout_along_split_mono(beta, &pt.i)?;
    let f = pt.f.then(beta)?.factor_through(&po.beta_bar).map_err(|_| {
        Error::InvalidDiagram("beta_shriek: β·f is not constant on the pushout classes".into())
    })?;
    let point = Point::new(f, po.induced.clone())?;
    Ok((point, po))
}

/// `f*`: the pullback of `pt` along `f: X → Y`, a point over `X` with
/// section `⟨1, k f⟩`.
pub fn pullback_point(f: &Homomorphism, pt: &Point) -> Result<(Point, Pullback)> {
    let pb = pullback(f, &pt.f)?;
    let section: Vec<usize> = (0..f.src().size())
        .map(|x| pb.index_of(x, pt.i.apply(f.apply(x))).expect("section lands in the pullback"))
        .collect();
    let i = Homomorphism::new(f.src().clone(), pb.alg.clone(), section)?;
    Ok((Point::new(pb.p1.clone(), i)?, pb))
}

/// The product of two points over the same base, with section `⟨i₁, i₂⟩`.
pub fn product_of_points(a: &Point, b: &Point) -> Result<(Point, Pullback)> {
    require_same(a.base(), b.base(), "product of points: common base")?;
    let pb = pullback(&a.f, &b.f)?;
    let f = pb.p1.then(&a.f)?;
    let section: Vec<usize> = (0..a.base().size())
        .map(|y| pb.index_of(a.i.apply(y), b.i.apply(y)).expect("sections agree on the base"))
        .collect();
    let i = Homomorphism::new(a.base().clone(), pb.alg.clone(), section)?;
    Ok((Point::new(f, i)?, pb))
}

/// Builds `[p] ↦ target(p)` on a quotient, failing if it is not constant on classes.
pub fn induced_on_quotient(
    quotient: &Homomorphism,
    dst: &AlgRef,
    target: impl Fn(usize) -> usize,
    what: &str,
) -> Result<Comparison> {
    let mut map = vec![usize::MAX; quotient.dst().size()];
    for p in 0..quotient.src().size() {
        let c = quotient.apply(p);
        let t = target(p);
        if map[c] != usize::MAX && map[c] != t {
            return Err(Error::InvalidDiagram(format!(
                "{what}: comparison not well defined on {}",
                quotient.dst().label(c)
            )));
        }
        map[c] = t;
    }
    Ok(Comparison {
        src: quotient.dst().clone(),
        dst: dst.clone(),
        map,
    })
}

/// `φ: β_!(X ×_Y Z) → β_!X ×_W β_!Z`, `[(x, z)] ↦ ([x], [z])`.
pub fn product_comparison(beta: &Homomorphism, a: &Point, b: &Point) -> Result<Comparison> {
    let (prod, pb) = product_of_points(a, b)?;
    let (_, po) = beta_shriek(&prod, beta)?;
    let (pa, qa) = beta_shriek(a, beta)?;
    let (pb2, qb) = beta_shriek(b, beta)?;
    let rhs = pullback(&pa.f, &pb2.f)?;
    induced_on_quotient(
        &po.beta_bar,
        &rhs.alg,
        |p| {
            let (x, z) = pb.members[p];
            rhs.index_of(qa.beta_bar.apply(x), qb.beta_bar.apply(z))
                .expect("classes lie over the same base element")
        },
        "product preservation",
    )
}

/// Whether `β_!` preserves the product of the points `a` and `b`.
pub fn check_product_preservation(beta: &Homomorphism, a: &Point, b: &Point) -> Result<Verdict<ComparisonWitness>> {
    Ok(product_comparison(beta, a, b)?.verdict())
}

/// `α_! f*(pt) → g* β_!(pt)`, `[(x, z)] ↦ (α x, β̄ z)`.
pub fn beck_chevalley_comparison(sq: &SplitEpiSquare, pt: &Point) -> Result<Comparison> {
    sq.require_regular()?;
    require_same(pt.base(), sq.left.base(), "Beck–Chevalley: point over Y")?;
    let (fstar, pb) = pullback_point(&sq.left.f, pt)?;
    let (_, left) = beta_shriek(&fstar, &sq.alpha)?;
    let (shriek, zbar) = beta_shriek(pt, &sq.beta)?;
    let rhs = pullback(&sq.right.f, &shriek.f)?;
    induced_on_quotient(
        &left.beta_bar,
        &rhs.alg,
        |p| {
            let (x, z) = pb.members[p];
            rhs.index_of(sq.alpha.apply(x), zbar.beta_bar.apply(z))
                .expect("the square commutes")
        },
        "Beck–Chevalley",
    )
}

pub fn beck_chevalley_check(sq: &SplitEpiSquare, pt: &Point) -> Result<Verdict<ComparisonWitness>> {
    Ok(beck_chevalley_comparison(sq, pt)?.verdict())
}

#[cfg(test)]
mod tests;

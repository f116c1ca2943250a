//! Seeded random diagrams built from subalgebras of powers of a base algebra
//! and their quotients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Cube, Point, SplitEpiSquare};
use crate::algebra::{cg, AlgRef, Congruence, FinAlgebra, Homomorphism};
use crate::error::Result;

/// Largest power `B^m` sampled from.
const MAX_POWER_SIZE: usize = 16;

pub struct DiagramRng(ChaCha8Rng);

impl DiagramRng {
    pub fn new(seed: u64) -> Self {
        DiagramRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.0.gen_bool(p)
    }

    fn pair(&mut self, n: usize) -> (usize, usize) {
        (self.below(n), self.below(n))
    }
}

/// A subalgebra of `B^m` generated by a few random elements.
pub fn random_power_subalgebra(base: &FinAlgebra, rng: &mut DiagramRng) -> Result<AlgRef> {
    let mut max_m = 1;
    while base.size().pow(max_m + 1) <= MAX_POWER_SIZE {
        max_m += 1;
    }
    let m = 1 + rng.below(max_m as usize);
    let mut power = base.clone();
    for _ in 1..m {
        power = FinAlgebra::product(&power, base)?;
    }
    let gens: Vec<usize> = (0..1 + rng.below(4)).map(|_| rng.below(power.size())).collect();
    let sub = power.subuniverse_generate(gens);
    let (y, _) = power.subalgebra(&sub, format!("Y<{}^{m}", base.name()))?;
    Ok(y.into_ref())
}

/// A point over `y`: a subalgebra `X` of `Y × C` containing the graph of
/// `h: Y → C`, projected onto `Y`, with the graph as section. `C` is `Y` or
/// a random quotient of it.
pub fn random_point(y: &AlgRef, rng: &mut DiagramRng) -> Result<Point> {
    let h = if rng.chance(0.5) {
        Homomorphism::identity(y)
    } else {
        let theta = cg(y, &[rng.pair(y.size())]);
        Homomorphism::quotient(y, &theta)?
    };
    let c = h.dst().clone();
    let prod = FinAlgebra::product(y, &c)?;
    let nc = c.size();
    let mut seeds: Vec<usize> = (0..y.size()).map(|a| a * nc + h.apply(a)).collect();
    for _ in 0..rng.below(4) {
        seeds.push(rng.below(prod.size()));
    }
    let sub = prod.subuniverse_generate(seeds);
    let (x, members) = prod.subalgebra(&sub, format!("X<{}×{}", y.name(), c.name()))?;
    let x = x.into_ref();
    let mut pos = vec![usize::MAX; prod.size()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let f = Homomorphism::new(x.clone(), y.clone(), members.iter().map(|&m| m / nc).collect())?;
    let i = Homomorphism::new(
        y.clone(),
        x,
        (0..y.size()).map(|a| pos[a * nc + h.apply(a)]).collect(),
    )?;
    Point::new(f, i)
}

fn class_pairs(c: &Congruence) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..c.size()).filter(|&x| c.rep(x) != x).map(|x| (c.rep(x), x))
}

/// Smallest `θ_Y ⊇ seed_y` and `θ_p ⊇ seed_p` with `f(θ_p) ⊆ θ_Y` and
/// `i(θ_Y) ⊆ θ_p` for every point.
fn close_jointly(
    y: &AlgRef,
    points: &[&Point],
    seed_y: &[(usize, usize)],
    seed_x: &[Vec<(usize, usize)>],
) -> (Congruence, Vec<Congruence>) {
    let mut ty = cg(y, seed_y);
    let mut tx: Vec<Congruence> = points
        .iter()
        .zip(seed_x)
        .map(|(p, s)| cg(p.total(), s))
        .collect();
    loop {
        let mut changed = false;
        for (p, t) in points.iter().zip(tx.iter_mut()) {
            let mut pairs: Vec<(usize, usize)> = class_pairs(t).collect();
            pairs.extend(class_pairs(&ty).map(|(a, b)| (p.i.apply(a), p.i.apply(b))));
            let next = cg(p.total(), &pairs);
            changed |= next != *t;
            *t = next;
        }
        let mut pairs: Vec<(usize, usize)> = class_pairs(&ty).collect();
        for (p, t) in points.iter().zip(&tx) {
            pairs.extend(class_pairs(t).map(|(a, b)| (p.f.apply(a), p.f.apply(b))));
        }
        let next = cg(y, &pairs);
        changed |= next != ty;
        ty = next;
        if !changed {
            return (ty, tx);
        }
    }
}

fn random_seeds(n: usize, p: f64, rng: &mut DiagramRng) -> Vec<(usize, usize)> {
    if rng.chance(p) {
        vec![rng.pair(n)]
    } else {
        Vec::new()
    }
}

/// The square of quotient maps `X → X/θ_X`, `Y → Y/θ_Y` with induced `g`, `j`.
fn quotient_square(pt: &Point, beta: &Homomorphism, theta_x: &Congruence) -> Result<SplitEpiSquare> {
    let alpha = Homomorphism::quotient(pt.total(), theta_x)?;
    let g = pt.f.then(beta)?.factor_through(&alpha)?;
    let j = pt.i.then(&alpha)?.factor_through(beta)?;
    SplitEpiSquare::new(pt.clone(), Point::new(g, j)?, alpha, beta.clone())
}

/// A regular epimorphism of points over a random subalgebra of a power of `base`.
pub fn random_square(base: &FinAlgebra, seed: u64) -> Result<SplitEpiSquare> {
    let mut rng = DiagramRng::new(seed);
    let y = random_power_subalgebra(base, &mut rng)?;
    let pt = random_point(&y, &mut rng)?;
    let sy = random_seeds(y.size(), 0.7, &mut rng);
    let sx = random_seeds(pt.total().size(), 0.5, &mut rng);
    let (ty, tx) = close_jointly(&y, &[&pt], &sy, &[sx]);
    let beta = Homomorphism::quotient(&y, &ty)?;
    quotient_square(&pt, &beta, &tx[0])
}

/// Two regular epimorphisms of points over a common `β`.
pub fn random_cube(base: &FinAlgebra, seed: u64) -> Result<Cube> {
    let mut rng = DiagramRng::new(seed);
    let y = random_power_subalgebra(base, &mut rng)?;
    let p1 = random_point(&y, &mut rng)?;
    let p2 = random_point(&y, &mut rng)?;
    let sy = random_seeds(y.size(), 0.7, &mut rng);
    let s1 = random_seeds(p1.total().size(), 0.5, &mut rng);
    let s2 = random_seeds(p2.total().size(), 0.5, &mut rng);
    let (ty, tx) = close_jointly(&y, &[&p1, &p2], &sy, &[s1, s2]);
    let beta = Homomorphism::quotient(&y, &ty)?;
    Cube::new(quotient_square(&p1, &beta, &tx[0])?, quotient_square(&p2, &beta, &tx[1])?)
}

/// A surjection `β` out of a random `Y` and two points over `Y`.
pub fn random_product_instance(base: &FinAlgebra, seed: u64) -> Result<(Homomorphism, Point, Point)> {
    let mut rng = DiagramRng::new(seed);
    let y = random_power_subalgebra(base, &mut rng)?;
    let p1 = random_point(&y, &mut rng)?;
    let p2 = random_point(&y, &mut rng)?;
    let theta = cg(&y, &random_seeds(y.size(), 0.8, &mut rng));
    Ok((Homomorphism::quotient(&y, &theta)?, p1, p2))
}

/// A random square and a random point over its `Y`.
pub fn random_beck_chevalley_instance(base: &FinAlgebra, seed: u64) -> Result<(SplitEpiSquare, Point)> {
    let sq = random_square(base, seed)?;
    let mut rng = DiagramRng::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let pt = random_point(sq.left.base(), &mut rng)?;
    Ok((sq, pt))
}

//! The cube of term-function algebras on one, two and three generators.
//!
//! Back square: `∇+1: F3 → F2` over `∇: F2 → F1` with `α = 1+∇`.
//! Front square: `1+∇: F3 → F2` over `∇` with `γ = ∇+1`. Here
//! `(1+∇)t = t(x,y,y)`, `(∇+1)t = t(x,x,y)` and `∇t = t(x,x)`.

use super::{Cube, Point, SplitEpiSquare};
use crate::algebra::{AlgRef, Homomorphism};
use crate::error::{Error, Result};
use crate::algebra::FinAlgebra;
use crate::termsynth::{generate_free_algebra, FreeAlgebraK};

struct Canon {
    fa: FreeAlgebraK,
    alg: AlgRef,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Canon {
    fn new(base: &FinAlgebra, k: usize, cap: usize) -> Result<Option<Self>> {
        let fa = generate_free_algebra(base, k, cap)?;
        if !fa.is_complete() {
            return Ok(None);
        }
        let alg = fa.to_algebra()?.into_ref();
        let order = fa.canonical_order();
        let mut pos = vec![0; order.len()];
        for (p, &id) in order.iter().enumerate() {
            pos[id] = p;
        }
        Ok(Some(Canon { fa, alg, order, pos }))
    }

    fn table(&self, p: usize) -> Vec<usize> {
        self.fa.table(self.order[p]).iter().map(|&v| v as usize).collect()
    }

    fn position(&self, t: &[usize]) -> Result<usize> {
        self.fa
            .find(t)
            .map(|id| self.pos[id])
            .ok_or_else(|| Error::InvalidDiagram("transformed table is not a term function".into()))
    }
}

fn induced(from: &Canon, to: &Canon, f: impl Fn(&[usize]) -> Vec<usize>) -> Result<Homomorphism> {
    let map = (0..from.alg.size())
        .map(|p| to.position(&f(&from.table(p))))
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::new(from.alg.clone(), to.alg.clone(), map)
}

/// `None` when some clone does not close within `cap`.
pub fn remark_cube(base: &FinAlgebra, cap: usize) -> Result<Option<Cube>> {
    let n = base.size();
    let (Some(f1), Some(f2), Some(f3)) = (
        Canon::new(base, 1, cap)?,
        Canon::new(base, 2, cap)?,
        Canon::new(base, 3, cap)?,
    ) else {
        return Ok(None);
    };
    let at3 = |t: &[usize], x: usize, y: usize, z: usize| t[(x * n + y) * n + z];
    let binary = |g: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
        (0..n * n).map(|i| g(i / n, i % n)).collect()
    };
    let ternary = |g: &dyn Fn(usize, usize, usize) -> usize| -> Vec<usize> {
        (0..n * n * n).map(|i| g(i / (n * n), (i / n) % n, i % n)).collect()
    };
    let nabla = induced(&f2, &f1, |t| (0..n).map(|x| t[x * n + x]).collect())?;
    let one_nabla = induced(&f3, &f2, |t| binary(&|x, y| at3(t, x, y, y)))?;
    let nabla_one = induced(&f3, &f2, |t| binary(&|x, y| at3(t, x, x, y)))?;
    let i = induced(&f2, &f3, |b| ternary(&|_, y, z| b[y * n + z]))?;
    let k = induced(&f2, &f3, |b| ternary(&|x, y, _| b[x * n + y]))?;
    let j = induced(&f1, &f2, |a| binary(&|_, y| a[y]))?;
    let m = induced(&f1, &f2, |a| binary(&|x, _| a[x]))?;
    let back = SplitEpiSquare::new(
        Point::new(nabla_one.clone(), i)?,
        Point::new(nabla.clone(), j)?,
        one_nabla.clone(),
        nabla.clone(),
    )?;
    let front = SplitEpiSquare::new(
        Point::new(one_nabla, k)?,
        Point::new(nabla.clone(), m)?,
        nabla_one,
        nabla,
    )?;
    Cube::new(back, front).map(Some)
}

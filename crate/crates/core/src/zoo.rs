//! Small named algebras used by the examples, the test suites and the
//! bundled JSON corpus.

use crate::algebra::{FinAlgebra, OpTable};
use crate::relcore::Carrier;

fn build(name: &str, carrier: Carrier, ops: Vec<OpTable>) -> FinAlgebra {
    FinAlgebra::new(name, carrier, ops).expect("zoo algebra is well formed")
}

/// `Z_n` as a group: `mul` is addition mod `n`, `inv` negation, `e` zero.
pub fn cyclic_group(n: usize) -> FinAlgebra {
    build(
        &format!("Z{n}"),
        Carrier::new(n),
        vec![
            OpTable::from_fn("mul", 2, n, |t| (t[0] + t[1]) % n),
            OpTable::from_fn("inv", 1, n, |t| (n - t[0]) % n),
            OpTable::from_fn("e", 0, n, |_| 0),
        ],
    )
}

pub fn trivial_group() -> FinAlgebra {
    cyclic_group(1).with_name("one")
}

/// Two-element group; `mul` is xor.
pub fn z2_group() -> FinAlgebra {
    cyclic_group(2)
}

pub fn z3_group() -> FinAlgebra {
    cyclic_group(3)
}

pub fn z4_group() -> FinAlgebra {
    cyclic_group(4)
}

/// `Z2 × Z2`, elements `2a + b`.
pub fn klein_group() -> FinAlgebra {
    build(
        "Klein",
        Carrier::with_labels(vec!["00".into(), "01".into(), "10".into(), "11".into()]),
        vec![
            OpTable::from_fn("mul", 2, 4, |t| t[0] ^ t[1]),
            OpTable::from_fn("inv", 1, 4, |t| t[0]),
            OpTable::from_fn("e", 0, 4, |_| 0),
        ],
    )
}

const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

/// The symmetric group on three letters; `mul(a, b) = a ∘ b`.
/// Elements 0, 4, 5 are the even permutations.
pub fn s3_group() -> FinAlgebra {
    let idx = |p: [usize; 3]| S3_PERMS.iter().position(|q| *q == p).unwrap();
    let compose = |a: usize, b: usize| {
        let (pa, pb) = (S3_PERMS[a], S3_PERMS[b]);
        idx([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
    };
    let inverse = |a: usize| {
        let p = S3_PERMS[a];
        let mut q = [0; 3];
        for i in 0..3 {
            q[p[i]] = i;
        }
        idx(q)
    };
    build(
        "S3",
        Carrier::with_labels(
            ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        vec![
            OpTable::from_fn("mul", 2, 6, |t| compose(t[0], t[1])),
            OpTable::from_fn("inv", 1, 6, |t| inverse(t[0])),
            OpTable::from_fn("e", 0, 6, |_| 0),
        ],
    )
}

/// Sign of the S3 elements in the order used by [`s3_group`].
pub fn s3_sign() -> Vec<usize> {
    vec![0, 1, 1, 1, 0, 0]
}

/// `({0,1}, →)` with `0 → y = 1` and `1 → y = y`.
pub fn impl2() -> FinAlgebra {
    build(
        "impl2",
        Carrier::new(2),
        vec![OpTable::from_fn("imp", 2, 2, |t| if t[0] == 0 { 1 } else { t[1] })],
    )
}

/// The two-element chain as a lattice.
pub fn lattice2() -> FinAlgebra {
    build(
        "lattice2",
        Carrier::new(2),
        vec![
            OpTable::from_fn("meet", 2, 2, |t| t[0].min(t[1])),
            OpTable::from_fn("join", 2, 2, |t| t[0].max(t[1])),
        ],
    )
}

pub fn chain3_lattice() -> FinAlgebra {
    build(
        "lattice3",
        Carrier::new(3),
        vec![
            OpTable::from_fn("meet", 2, 3, |t| t[0].min(t[1])),
            OpTable::from_fn("join", 2, 3, |t| t[0].max(t[1])),
        ],
    )
}

pub fn semilattice2() -> FinAlgebra {
    build(
        "semilattice2",
        Carrier::new(2),
        vec![OpTable::from_fn("meet", 2, 2, |t| t[0].min(t[1]))],
    )
}

/// Two-element Boolean algebra.
pub fn bool2() -> FinAlgebra {
    build(
        "bool2",
        Carrier::new(2),
        vec![
            OpTable::from_fn("meet", 2, 2, |t| t[0].min(t[1])),
            OpTable::from_fn("join", 2, 2, |t| t[0].max(t[1])),
            OpTable::from_fn("neg", 1, 2, |t| 1 - t[0]),
        ],
    )
}

pub fn neg2() -> FinAlgebra {
    build(
        "neg2",
        Carrier::new(2),
        vec![OpTable::from_fn("neg", 1, 2, |t| 1 - t[0])],
    )
}

/// `({0,1}, ⊕)` without constants or inverse.
pub fn xor2() -> FinAlgebra {
    build(
        "xor2",
        Carrier::new(2),
        vec![OpTable::from_fn("xor", 2, 2, |t| t[0] ^ t[1])],
    )
}

/// `({0,1}, maj)` with the ternary majority operation.
pub fn majority2() -> FinAlgebra {
    build(
        "majority2",
        Carrier::new(2),
        vec![OpTable::from_fn("maj", 3, 2, |t| usize::from(t[0] + t[1] + t[2] >= 2))],
    )
}

/// `({0,1}, m)` with the ternary minority operation `x ⊕ y ⊕ z`.
pub fn minority2() -> FinAlgebra {
    build(
        "minority2",
        Carrier::new(2),
        vec![OpTable::from_fn("m", 3, 2, |t| t[0] ^ t[1] ^ t[2])],
    )
}

pub fn bare_set(n: usize) -> FinAlgebra {
    FinAlgebra::bare_set(format!("set{n}"), n)
}

/// `Z_n` with only the successor map.
pub fn cyclic_successor(n: usize) -> FinAlgebra {
    build(
        &format!("succ{n}"),
        Carrier::new(n),
        vec![OpTable::from_fn("s", 1, n, |t| (t[0] + 1) % n)],
    )
}

/// Every algebra bundled in `corpus/`, keyed by file stem.
pub fn corpus() -> Vec<(&'static str, FinAlgebra)> {
    vec![
        ("one", trivial_group()),
        ("z2", z2_group()),
        ("z3", z3_group()),
        ("z4", z4_group()),
        ("klein", klein_group()),
        ("s3", s3_group()),
        ("impl2", impl2()),
        ("lattice2", lattice2()),
        ("lattice3", chain3_lattice()),
        ("semilattice2", semilattice2()),
        ("bool2", bool2()),
        ("neg2", neg2()),
        ("xor2", xor2()),
        ("majority2", majority2()),
        ("minority2", minority2()),
        ("set2", bare_set(2)),
        ("set3", bare_set(3)),
        ("set4", bare_set(4)),
    ]
}

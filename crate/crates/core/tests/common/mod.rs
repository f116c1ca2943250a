#![allow(dead_code)]

use std::path::{Path, PathBuf};

use goursat::cli::{run, Outcome};

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn corpus_str(name: &str) -> String {
    corpus(name).display().to_string()
}

/// Runs `goursat <args>` in-process.
pub fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("goursat").chain(args.iter().copied()))
}

pub fn cli_json(args: &[&str]) -> (Outcome, serde_json::Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cli(&all);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr));
    (out, v)
}

/// Writes `text` to `dir/name` and returns the path as a string.
pub fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

/// All partitions of `0..n` as class-label vectors (restricted growth strings).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            if i == 0 && c > 0 {
                break;
            }
            cur.push(c);
            go(i + 1, n, cur, if i == 0 { 0 } else { max.max(c) }, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Whether the partition with class labels `p` is compatible with every operation.
pub fn is_compatible(alg: &goursat::algebra::FinAlgebra, p: &[usize]) -> bool {
    let n = alg.size();
    for op in 0..alg.signature().len() {
        let k = alg.arity(op);
        let mut ok = true;
        goursat::tuples::for_each_tuple(n, k, |a| {
            if !ok {
                return;
            }
            goursat::tuples::for_each_tuple(n, k, |b| {
                if ok && (0..k).all(|i| p[a[i]] == p[b[i]]) && p[alg.apply(op, a)] != p[alg.apply(op, b)] {
                    ok = false;
                }
            });
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Partition join: the finest partition coarser than both.
pub fn partition_join(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut lab: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if (a[x] == a[y] || b[x] == b[y]) && lab[x] != lab[y] {
                    let (lo, hi) = (lab[x].min(lab[y]), lab[x].max(lab[y]));
                    for l in lab.iter_mut() {
                        if *l == hi {
                            *l = lo;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return lab;
        }
    }
}

pub fn partition_meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    (0..n)
        .map(|x| (0..n).find(|&y| a[x] == a[y] && b[x] == b[y]).unwrap())
        .collect()
}

pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| (a[x] == a[y]) == (b[x] == b[y])))
}

pub fn refines(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| a[x] != a[y] || b[x] == b[y]))
}

/// `R S R ...` with `k` factors as a boolean matrix.
pub fn alternating(r: &[usize], s: &[usize], k: usize) -> Vec<Vec<bool>> {
    let n = r.len();
    let mut acc: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| r[x] == r[y]).collect()).collect();
    for i in 1..k {
        let p = if i % 2 == 1 { s } else { r };
        acc = (0..n)
            .map(|x| (0..n).map(|z| (0..n).any(|y| acc[x][y] && p[y] == p[z])).collect())
            .collect();
    }
    acc
}

/// Compatible partitions of `alg`, by enumeration.
pub fn congruences_by_enumeration(alg: &goursat::algebra::FinAlgebra) -> Vec<Vec<usize>> {
    partitions(alg.size()).into_iter().filter(|p| is_compatible(alg, p)).collect()
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use goursat::algebra::{cg, con_lattice, Congruence, FinAlgebra, Homomorphism};
use goursat::cli::{export, load_algebra};
use goursat::diagrams::{
    beck_chevalley_check, check_product_preservation, cube_lambda_check, cube_right_face_check, goursat_pushout_check,
    random_beck_chevalley_instance, random_cube, random_point, random_power_subalgebra, random_product_instance,
    random_square, Cube, DiagramRng, GeneralCube,
};
use goursat::relcore::BinRel;
use goursat::termsynth::TermFunction;
use goursat::zoo;
use goursat::Status;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn eval3(t: &TermFunction, alg: &FinAlgebra, x: usize, y: usize, z: usize) -> usize {
    let vars = TermFunction::variables(3);
    t.derivation.eval_positional(alg, &vars, &[x, y, z]).unwrap()
}

fn corpus_alg(name: &str) -> FinAlgebra {
    load_algebra(&corpus(name)).unwrap().0
}

/// Ternary term functions of `alg` by naive closure of the projections.
fn ternary_clone_size(alg: &FinAlgebra) -> usize {
    let n = alg.size();
    let len = n * n * n;
    let proj = |k: usize| -> Vec<usize> { (0..len).map(|i| [i / (n * n), (i / n) % n, i % n][k]).collect() };
    let mut set: BTreeSet<Vec<usize>> = (0..3).map(proj).collect();
    loop {
        let elems: Vec<Vec<usize>> = set.iter().cloned().collect();
        let before = set.len();
        for op in 0..alg.signature().len() {
            let k = alg.arity(op);
            goursat::tuples::for_each_tuple(elems.len(), k, |pick| {
                let t: Vec<usize> = (0..len)
                    .map(|i| alg.apply(op, &pick.iter().map(|&p| elems[p][i]).collect::<Vec<_>>()))
                    .collect();
                set.insert(t);
            });
        }
        if set.len() == before {
            return set.len();
        }
    }
}

fn criterion_1() -> Outcome {
    let (out, v) = cli_json(&["terms", "maltsev", &corpus_str("z2.json")]);
    ensure!(out.exit_code == 0, "exit {}", out.exit_code);
    let p: TermFunction = serde_json::from_value(v["result"]["terms"].clone()).map_err(|e| e.to_string())?;
    let z2 = corpus_alg("z2.json");
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                ensure!(eval3(&p, &z2, x, y, z) == x ^ y ^ z, "p({x},{y},{z}) is not xor");
                ensure!(p.table[(x * 2 + y) * 2 + z] == x ^ y ^ z, "table differs from xor at {x}{y}{z}");
                ensure!(eval3(&p, &z2, x, y, y) == x && eval3(&p, &z2, x, x, y) == y, "identities fail");
            }
        }
    }
    Ok(format!("p = {} equals x⊕y⊕z on all 8 triples", p.derivation))
}

fn criterion_2() -> Outcome {
    let impl2 = corpus_alg("impl2.json");
    ensure!(impl2 == zoo::impl2(), "corpus impl2 differs from the 0→y=1, 1→y=y table");
    let (out, v) = cli_json(&["terms", "hm", &corpus_str("impl2.json")]);
    ensure!(out.exit_code == 0, "terms hm exit {}", out.exit_code);
    let (r, s): (TermFunction, TermFunction) =
        serde_json::from_value(v["result"]["terms"].clone()).map_err(|e| e.to_string())?;
    for x in 0..2 {
        for y in 0..2 {
            for _z in 0..2 {
                ensure!(eval3(&r, &impl2, x, y, y) == x, "r(x,y,y) = x fails");
                ensure!(eval3(&r, &impl2, x, x, y) == eval3(&s, &impl2, x, y, y), "r(x,x,y) = s(x,y,y) fails");
                ensure!(eval3(&s, &impl2, x, x, y) == y, "s(x,x,y) = y fails");
            }
        }
    }
    let (out, v) = cli_json(&["terms", "maltsev", &corpus_str("impl2.json")]);
    ensure!(out.exit_code == 1, "terms maltsev exit {}", out.exit_code);
    ensure!(v["witness"]["result"] == "none", "witness {}", v["witness"]);
    let size = v["witness"]["clone_size"].as_u64().unwrap() as usize;
    let oracle = ternary_clone_size(&impl2);
    ensure!(size == oracle && size <= 256, "clone size {size}, oracle {oracle}");
    Ok(format!("r = {}, s = {}; no Mal'tsev term among {size} ternary functions", r.derivation, s.derivation))
}

fn criterion_3() -> Outcome {
    let l = corpus_str("lattice2.json");
    let (out, v) = cli_json(&["terms", "hm", &l]);
    ensure!(out.exit_code == 1 && v["witness"]["result"] == "none", "terms hm exit {}", out.exit_code);
    let clone = v["witness"]["clone_size"].as_u64().unwrap() as usize;
    ensure!(clone == ternary_clone_size(&zoo::lattice2()), "clone size {clone} disagrees with closure");
    let (out, v) = cli_json(&["check", "goursat-relations", "ii", &l]);
    ensure!(out.exit_code == 1, "goursat-relations ii exit {}", out.exit_code);
    let rel: Vec<(usize, usize)> = serde_json::from_value(v["witness"]["relation"].clone()).unwrap();
    let le: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..2).filter(move |&b| a <= b).map(move |b| (a, b))).collect();
    ensure!(rel == le, "relation {rel:?} is not ≤");
    ensure!(v["witness"]["pair"] == serde_json::json!([1, 0]), "pair {}", v["witness"]["pair"]);
    // (1,0) ∈ E° and (1,0) ∉ EE for E = ≤
    ensure!(le.contains(&(0, 1)) && !le.iter().any(|&(a, b)| a == 1 && le.contains(&(b, 0))), "oracle");
    Ok(format!("no HM pair among {clone} ternary functions; E = ≤ fails at (1, 0)"))
}

fn modular_by_enumeration(alg: &FinAlgebra) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let cons = congruences_by_enumeration(alg);
    for r in &cons {
        for t in &cons {
            if !refines(r, t) {
                continue;
            }
            for s in &cons {
                let lhs = partition_meet(&partition_join(r, s), t);
                let rhs = partition_join(r, &partition_meet(s, t));
                if !same_partition(&lhs, &rhs) {
                    return Some((r.clone(), s.clone(), t.clone()));
                }
            }
        }
    }
    None
}

fn three_permutable_by_enumeration(alg: &FinAlgebra) -> bool {
    let cons = congruences_by_enumeration(alg);
    cons.iter()
        .all(|r| cons.iter().all(|s| alternating(r, s, 3) == alternating(s, r, 3)))
}

fn criterion_4() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    for name in ["z2.json", "s3.json", "impl2.json"] {
        let p = corpus_str(name);
        ensure!(cli(&["terms", "hm", &p]).exit_code == 0, "{name}: terms hm did not succeed");
        for args in [vec!["check", "perm", "--n", "3"], vec!["check", "modularity"], vec!["check", "shifting"]] {
            let mut a = args.clone();
            a.push(&p);
            let out = cli(&a);
            ensure!(out.exit_code == 0, "{name}: {args:?} exit {}", out.exit_code);
        }
        let alg = corpus_alg(name);
        ensure!(three_permutable_by_enumeration(&alg), "{name}: oracle finds RSR ≠ SRS");
        ensure!(modular_by_enumeration(&alg).is_none(), "{name}: oracle finds a modularity failure");
    }
    let set4 = corpus_str("set4.json");
    let set4_alg = corpus_alg("set4.json");
    ensure!(modular_by_enumeration(&set4_alg).is_some(), "oracle: set4 should be non-modular");
    for check in ["modularity", "shifting"] {
        let (out, v) = cli_json(&["check", check, &set4]);
        ensure!(out.exit_code == 1, "set4 {check} exit {}", out.exit_code);
        let rep = write(dir.path(), &format!("{check}.json"), &out.stdout);
        let replay = cli(&["replay", &rep]);
        ensure!(replay.exit_code == 0, "set4 {check} replay exit {}: {}", replay.exit_code, replay.stdout);
        if check == "modularity" {
            let w = &v["witness"];
            let part = |k: &str| -> Vec<usize> { serde_json::from_value(w[k].clone()).unwrap() };
            let (r, s, t) = (part("r"), part("s"), part("t"));
            let (x, y): (usize, usize) = serde_json::from_value(w["pair"].clone()).unwrap();
            let lhs = partition_meet(&partition_join(&r, &s), &t);
            let rhs = partition_join(&r, &partition_meet(&s, &t));
            ensure!(refines(&r, &t) && lhs[x] == lhs[y] && rhs[x] != rhs[y], "modularity witness rejected by oracle");
        }
    }
    Ok("Z2, S3, impl2 hold all three; set4 modularity and shifting fail and replay".into())
}

fn criterion_5() -> Outcome {
    let mut rows = Vec::new();
    for (stem, alg) in zoo::corpus() {
        if alg.size() != 2 {
            continue;
        }
        let p = corpus_str(&format!("{stem}.json"));
        let cube = cli(&["remark-cube", &p]).exit_code;
        let hm = cli(&["terms", "hm", &p]).exit_code;
        ensure!(cube == hm && cube <= 1, "{stem}: remark-cube exit {cube}, terms hm exit {hm}");
        rows.push(format!("{stem}:{}", if hm == 0 { "+" } else { "-" }));
    }
    ensure!(rows.len() >= 6, "only {} two-element algebras", rows.len());
    Ok(format!("{} algebras agree [{}]", rows.len(), rows.join(" ")))
}

struct DiagramStats {
    cubes: Vec<Cube>,
}

fn criterion_6(stats: &mut DiagramStats) -> Outcome {
    let start = Instant::now();
    let bases = [zoo::z2_group(), zoo::impl2(), zoo::s3_group()];
    let per_base = 20;
    let mut count = 0;
    let dir = tempfile::tempdir().unwrap();
    for base in &bases {
        for seed in 0..per_base {
            let sq = random_square(base, seed).unwrap();
            ensure!(goursat_pushout_check(&sq).unwrap().holds_bool(), "{} seed {seed}: pushout square", base.name());
            let cube = random_cube(base, seed).unwrap();
            ensure!(cube_lambda_check(&cube).unwrap().holds_bool(), "{} seed {seed}: cube", base.name());
            let (b, p, q) = random_product_instance(base, seed).unwrap();
            ensure!(check_product_preservation(&b, &p, &q).unwrap().holds_bool(), "{} seed {seed}: product", base.name());
            let (bsq, pt) = random_beck_chevalley_instance(base, seed).unwrap();
            ensure!(beck_chevalley_check(&bsq, &pt).unwrap().holds_bool(), "{} seed {seed}: Beck–Chevalley", base.name());
            if seed < 3 {
                // the same instances through the command line
                let files = [
                    ("pushout-square", export::square(&sq)),
                    ("cube", export::cube(&cube)),
                    ("product-preservation", export::product(&b, &p, &q)),
                    ("beck-chevalley", export::beck_chevalley(&bsq, &pt)),
                ];
                for (check, file) in files {
                    let f = write(dir.path(), "d.json", &file.to_string_pretty());
                    let code = cli(&["check", check, &f]).exit_code;
                    ensure!(code == 0, "{} seed {seed}: CLI {check} exit {code}", base.name());
                }
            }
            stats.cubes.push(cube);
            count += 1;
        }
    }
    ensure!(count >= 50, "only {count} instances");
    // the bare-set family: one failing instance per check, replayed via the CLI
    let set2 = zoo::bare_set(2);
    let mut found = [None, None, None, None];
    for seed in 0..300u64 {
        if found.iter().all(Option::is_some) {
            break;
        }
        if found[0].is_none() {
            let sq = random_square(&set2, seed).unwrap();
            if goursat_pushout_check(&sq).unwrap().fails_bool() {
                found[0] = Some(("pushout-square", export::square(&sq)));
            }
        }
        let cube = random_cube(&set2, seed).unwrap();
        if found[1].is_none() && cube_lambda_check(&cube).unwrap().fails_bool() {
            found[1] = Some(("cube", export::cube(&cube)));
        }
        stats.cubes.push(cube);
        if found[2].is_none() {
            let (b, p, q) = random_product_instance(&set2, seed).unwrap();
            if check_product_preservation(&b, &p, &q).unwrap().fails_bool() {
                found[2] = Some(("product-preservation", export::product(&b, &p, &q)));
            }
        }
        if found[3].is_none() {
            let (sq, pt) = random_beck_chevalley_instance(&set2, seed).unwrap();
            if beck_chevalley_check(&sq, &pt).unwrap().fails_bool() {
                found[3] = Some(("beck-chevalley", export::beck_chevalley(&sq, &pt)));
            }
        }
    }
    for (k, f) in found.iter().enumerate() {
        let Some((check, file)) = f else {
            return Err(format!("no failing bare-set instance for check {k}"));
        };
        let d = write(dir.path(), &format!("{check}.json"), &file.to_string_pretty());
        let out = cli(&["check", check, &d, "--json"]);
        ensure!(out.exit_code == 1, "bare {check}: exit {}", out.exit_code);
        let rep = write(dir.path(), &format!("{check}-report.json"), &out.stdout);
        let replay = cli(&["replay", &rep]);
        ensure!(replay.exit_code == 0, "bare {check}: replay exit {}", replay.exit_code);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{count} instances per check hold over Z2, impl2, S3; each check fails and replays on a bare-set instance ({:.1}s)",
        elapsed.as_secs_f64()
    ))
}

fn criterion_7(stats: &DiagramStats) -> Outcome {
    let mut cubes: Vec<Cube> = stats.cubes.clone();
    for (_, alg) in zoo::corpus().into_iter().filter(|(_, a)| a.size() == 2) {
        if let Some(c) = goursat::diagrams::remark_cube(&alg, 100_000).unwrap() {
            if c.back.left.total().size() <= 64 {
                cubes.push(c);
            }
        }
    }
    let mut fails = 0;
    for (k, cube) in cubes.iter().enumerate() {
        let l = cube_lambda_check(cube).unwrap().status;
        let gc = GeneralCube::image_factorized(cube).unwrap();
        let r = cube_right_face_check(&gc).unwrap().status;
        ensure!(l == r, "cube {k}: λ {l:?}, right face {r:?}");
        fails += (l == Status::Fails) as usize;
    }
    Ok(format!("{} cubes agree ({fails} failing on both sides)", cubes.len()))
}

fn criterion_8() -> Outcome {
    let ids = corpus_str("abelian.json");
    let (out, v) = cli_json(&["reflect", &corpus_str("s3.json"), "--ids", &ids]);
    ensure!(out.exit_code == 0, "reflect exit {}", out.exit_code);
    let size = v["result"]["algebra"]["size"].as_u64().unwrap();
    ensure!(size == 2, "reflection has {size} elements");
    let eta: Vec<usize> = serde_json::from_value(v["result"]["eta"].clone()).unwrap();
    // brute force: the least congruence with a commutative quotient
    let s3 = zoo::s3_group();
    let mul = s3.signature().index_of("mul").unwrap();
    let abelianizing: Vec<Vec<usize>> = congruences_by_enumeration(&s3)
        .into_iter()
        .filter(|p| (0..6).all(|a| (0..6).all(|b| p[s3.apply(mul, &[a, b])] == p[s3.apply(mul, &[b, a])])))
        .collect();
    let least = abelianizing
        .iter()
        .find(|p| abelianizing.iter().all(|q| refines(p, q)))
        .ok_or("no least abelianizing congruence")?;
    ensure!(same_partition(least, &eta), "η kernel {eta:?} differs from brute force {least:?}");

    let dir = tempfile::tempdir().unwrap();
    let mut cospans = 0;
    for base in [zoo::s3_group(), zoo::z2_group(), zoo::z3_group(), zoo::klein_group()] {
        for seed in 0..6 {
            let mut rng = DiagramRng::new(seed);
            let y = random_power_subalgebra(&base, &mut rng).unwrap();
            let a = random_point(&y, &mut rng).unwrap();
            let b = random_point(&y, &mut rng).unwrap();
            let f = write(dir.path(), "cospan.json", &export::split_cospan(&a, &b).to_string_pretty());
            let out = cli(&["check", "reflector-pullbacks", &f, "--ids", &ids]);
            ensure!(out.exit_code == 0, "{} seed {seed}: exit {}: {}", base.name(), out.exit_code, out.stdout);
            cospans += 1;
        }
    }
    ensure!(cospans >= 20, "{cospans} cospans");
    let (out, v) = cli_json(&["galois", &corpus_str("diagrams/s3_sign.json"), "--ids", &ids]);
    ensure!(out.exit_code == 0, "galois exit {}: {}", out.exit_code, out.stdout);
    let sizes: Vec<usize> = serde_json::from_value(v["result"]["sizes"].clone()).unwrap();
    ensure!(sizes[0] == 2, "Gal(sign) has {} objects", sizes[0]);
    Ok(format!("|I(S3)| = 2 matches brute force; {cospans} group cospans preserved; Gal(sign) sizes {sizes:?} is a groupoid"))
}

fn all_relations(n: usize) -> Vec<BinRel> {
    (0..1u32 << (n * n))
        .map(|bits| BinRel::from_fn(n, n, |x, y| bits >> (x * n + y) & 1 == 1))
        .collect()
}

fn criterion_9() -> Outcome {
    let rels = all_relations(2);
    for a in &rels {
        for b in &rels {
            let ab = a.compose(b).unwrap();
            ensure!(ab.opposite() == b.opposite().compose(&a.opposite()).unwrap(), "contravariance fails");
            for c in &rels {
                ensure!(ab.compose(c).unwrap() == a.compose(&b.compose(c).unwrap()).unwrap(), "associativity fails");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut rand_rel = |n: usize| BinRel::from_fn(n, n, |_, _| rng.gen_bool(0.35));
    for _ in 0..500 {
        let (a, b, c) = (rand_rel(4), rand_rel(4), rand_rel(4));
        let ab = a.compose(&b).unwrap();
        ensure!(ab.compose(&c).unwrap() == a.compose(&b.compose(&c).unwrap()).unwrap(), "size-4 associativity");
        ensure!(ab.opposite() == b.opposite().compose(&a.opposite()).unwrap(), "size-4 contravariance");
    }

    let mut algebras = 0;
    let mut cg_cases = 0;
    for (stem, alg) in zoo::corpus() {
        let n = alg.size();
        if n > 6 {
            continue;
        }
        let cons = congruences_by_enumeration(&alg);
        let alg_ref = alg.clone().into_ref();
        let lat = con_lattice(&alg, 10_000).unwrap();
        ensure!(lat.len() == cons.len(), "{stem}: lattice {} vs enumeration {}", lat.len(), cons.len());
        for c in lat.congruences() {
            let q = Homomorphism::quotient(&alg_ref, c).unwrap();
            ensure!(q.kernel_pair() == *c, "{stem}: quotient/kernel-pair round trip");
            ensure!(q.is_surjective(), "{stem}: quotient not surjective");
        }
        if n <= 4 {
            algebras += 1;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            for (i, &p) in pairs.iter().enumerate() {
                for &q in &pairs[i..] {
                    let got = cg(&alg, &[p, q]);
                    let least = cons
                        .iter()
                        .filter(|c| c[p.0] == c[p.1] && c[q.0] == c[q.1])
                        .find(|c| {
                            cons.iter()
                                .filter(|d| d[p.0] == d[p.1] && d[q.0] == d[q.1])
                                .all(|d| refines(c, d))
                        })
                        .ok_or_else(|| format!("{stem}: no least congruence"))?;
                    ensure!(got == Congruence::from_labels(least), "{stem}: Cg({p:?}, {q:?}) not minimal");
                    cg_cases += 1;
                }
            }
        }
    }
    Ok(format!(
        "relcore laws on all 16 size-2 and 500 sampled size-4 triples; Cg minimal in {cg_cases} cases over {algebras} algebras"
    ))
}

fn main() {
    // fail fast if the corpus is missing
    assert!(Path::new(&corpus("z2.json")).exists(), "corpus not found");
    let mut stats = DiagramStats { cubes: Vec::new() };
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut run = |k: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let tag = if r.is_ok() { "PASS" } else { "FAIL" };
        let detail = match &r {
            Ok(s) | Err(s) => s.clone(),
        };
        println!("{tag} criterion {k} ({name}, {:.2}s): {detail}", start.elapsed().as_secs_f64());
        results.push((k, name, r));
    };
    run(1, "Mal'tsev synthesis", &mut criterion_1);
    run(2, "Hagemann–Mitschke synthesis", &mut criterion_2);
    run(3, "negative control", &mut criterion_3);
    run(4, "permutability ladder", &mut criterion_4);
    run(5, "remark cube", &mut criterion_5);
    run(6, "diagram theorems", &mut || criterion_6(&mut stats));
    run(7, "λ versus right face", &mut || criterion_7(&stats));
    run(8, "reflection suite", &mut criterion_8);
    run(9, "core invariants", &mut criterion_9);
    let failed = results.iter().filter(|(_, _, r)| r.is_err()).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Writes the bundled corpus: one JSON file per zoo algebra, the identities
//! for commutativity, and a handful of diagram files.
//!
//! ```text
//! cargo run --example export_corpus [-- OUT_DIR]
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use goursat::algebra::{cg, Homomorphism};
use goursat::cli::{algebra_to_json, export, AlgebraSource, DiagramFile};
use goursat::diagrams::{
    beck_chevalley_check, check_product_preservation, cube_lambda_check, goursat_pushout_check, random_beck_chevalley_instance,
    random_cube, random_product_instance, random_square, remark_cube, Point, SplitEpiSquare,
};
use goursat::reflection::IdentitySet;
use goursat::termsynth::DEFAULT_FUNCTION_CAP;
use goursat::zoo;

fn write(path: &Path, text: String) {
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, text + "\n").unwrap();
    println!("wrote {}", path.display());
}

fn hom(src: &goursat::algebra::AlgRef, dst: &goursat::algebra::AlgRef, map: Vec<usize>) -> Homomorphism {
    Homomorphism::new(src.clone(), dst.clone(), map).unwrap()
}

/// The bare 4-set over the bare 2-set, collapsed by `Cg(1, 2)`.
fn bare_square() -> SplitEpiSquare {
    let x = zoo::bare_set(4).into_ref();
    let y = zoo::bare_set(2).into_ref();
    let w = zoo::bare_set(1).into_ref();
    let left = Point::new(hom(&x, &y, vec![0, 0, 1, 1]), hom(&y, &x, vec![1, 2])).unwrap();
    let alpha = Homomorphism::quotient(&x, &cg(&x, &[(1, 2)])).unwrap();
    let u = alpha.dst().clone();
    let right = Point::new(hom(&u, &w, vec![0; u.size()]), hom(&w, &u, vec![alpha.apply(1)])).unwrap();
    SplitEpiSquare::new(left, right, alpha, hom(&y, &w, vec![0, 0])).unwrap()
}

/// Klein over Z2 with the diagonal section, mapped onto Z2 over the trivial group.
fn klein_square() -> SplitEpiSquare {
    let k = zoo::klein_group().into_ref();
    let z = zoo::z2_group().into_ref();
    let one = zoo::trivial_group().into_ref();
    let left = Point::new(hom(&k, &z, vec![0, 0, 1, 1]), hom(&z, &k, vec![0, 3])).unwrap();
    let right = Point::new(hom(&z, &one, vec![0, 0]), hom(&one, &z, vec![0])).unwrap();
    SplitEpiSquare::new(left, right, hom(&k, &z, vec![0, 1, 1, 0]), hom(&z, &one, vec![0, 0])).unwrap()
}

fn by_path(entries: &[(&str, &str)], maps: &[(&str, Vec<usize>)]) -> DiagramFile {
    DiagramFile {
        algebras: entries
            .iter()
            .map(|(k, p)| (k.to_string(), AlgebraSource::Path(p.to_string())))
            .collect(),
        maps: maps.iter().map(|(k, m)| (k.to_string(), m.clone())).collect(),
    }
}

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"));
    for (stem, alg) in zoo::corpus() {
        write(&out.join(format!("{stem}.json")), serde_json::to_string_pretty(&algebra_to_json(&alg)).unwrap());
    }
    let ids = serde_json::to_string_pretty(&IdentitySet::commutative("mul")).unwrap();
    write(&out.join("abelian.json"), ids);

    let d = out.join("diagrams");
    write(&d.join("bare_square.json"), export::square(&bare_square()).to_string_pretty());
    write(&d.join("klein_square.json"), export::square(&klein_square()).to_string_pretty());
    let cube = remark_cube(&zoo::lattice2(), DEFAULT_FUNCTION_CAP).unwrap().unwrap();
    write(&d.join("lattice2_remark_cube.json"), export::cube(&cube).to_string_pretty());
    let cube = remark_cube(&zoo::z2_group(), DEFAULT_FUNCTION_CAP).unwrap().unwrap();
    write(&d.join("z2_remark_cube.json"), export::cube(&cube).to_string_pretty());

    write(
        &d.join("s3_sign.json"),
        by_path(&[("A", "../s3.json"), ("B", "../z2.json")], &[("f", zoo::s3_sign())]).to_string_pretty(),
    );
    // Klein over Z2 twice: first projection with two sections.
    write(
        &d.join("klein_cospan.json"),
        by_path(
            &[("X", "../klein.json"), ("Y", "../z2.json"), ("Z", "../klein.json")],
            &[("f", vec![0, 0, 1, 1]), ("i", vec![0, 2]), ("l", vec![0, 0, 1, 1]), ("k", vec![0, 3])],
        )
        .to_string_pretty(),
    );

    // First failing bare-set instance of each randomized check.
    let set2 = zoo::bare_set(2);
    let first = |pred: &dyn Fn(u64) -> bool| (0..1000).find(|&s| pred(s)).expect("some bare-set instance fails");
    let s = first(&|s| goursat_pushout_check(&random_square(&set2, s).unwrap()).unwrap().fails_bool());
    write(&d.join("bare_random_square.json"), export::square(&random_square(&set2, s).unwrap()).to_string_pretty());
    let s = first(&|s| cube_lambda_check(&random_cube(&set2, s).unwrap()).unwrap().fails_bool());
    write(&d.join("bare_random_cube.json"), export::cube(&random_cube(&set2, s).unwrap()).to_string_pretty());
    let s = first(&|s| {
        let (b, p, q) = random_product_instance(&set2, s).unwrap();
        check_product_preservation(&b, &p, &q).unwrap().fails_bool()
    });
    let (b, p, q) = random_product_instance(&set2, s).unwrap();
    write(&d.join("bare_product.json"), export::product(&b, &p, &q).to_string_pretty());
    let s = first(&|s| {
        let (sq, pt) = random_beck_chevalley_instance(&set2, s).unwrap();
        beck_chevalley_check(&sq, &pt).unwrap().fails_bool()
    });
    let (sq, pt) = random_beck_chevalley_instance(&set2, s).unwrap();
    write(&d.join("bare_beck_chevalley.json"), export::beck_chevalley(&sq, &pt).to_string_pretty());
}

use super::*;
use crate::algebra::{is_homomorphism, Congruence};
use crate::termsynth::DEFAULT_FUNCTION_CAP;
use crate::verdict::Status;
use crate::zoo::*;

fn hom(src: &AlgRef, dst: &AlgRef, map: Vec<usize>) -> Homomorphism {
    Homomorphism::new(src.clone(), dst.clone(), map).unwrap()
}

/// All homomorphisms `src → dst`, by brute force.
fn all_homs(src: &AlgRef, dst: &AlgRef) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    crate::tuples::for_each_tuple(dst.size(), src.size(), |m| {
        if is_homomorphism(src, dst, m).unwrap().is_none() {
            out.push(Homomorphism::new_unchecked(src.clone(), dst.clone(), m.to_vec()));
        }
    });
    out
}

/// Klein → Z2, `ab ↦ a`, with section `a ↦ a0`.
fn klein_first_projection() -> (AlgRef, AlgRef, Point) {
    let k = klein_group().into_ref();
    let z = z2_group().into_ref();
    let f = hom(&k, &z, vec![0, 0, 1, 1]);
    let i = hom(&z, &k, vec![0, 2]);
    (k, z, Point::new(f, i).unwrap())
}

/// The bare 4-set over a 2-set with fibres {0,1}, {2,3} and section 1, 2,
/// collapsed by `Cg(1, 2)` onto the 1-point set.
fn bare_counterexample() -> SplitEpiSquare {
    let x = bare_set(4).into_ref();
    let y = bare_set(2).into_ref();
    let w = bare_set(1).into_ref();
    let left = Point::new(hom(&x, &y, vec![0, 0, 1, 1]), hom(&y, &x, vec![1, 2])).unwrap();
    let theta = cg(&x, &[(1, 2)]);
    let alpha = Homomorphism::quotient(&x, &theta).unwrap();
    let u = alpha.dst().clone();
    let right = Point::new(hom(&u, &w, vec![0; u.size()]), hom(&w, &u, vec![alpha.apply(1)])).unwrap();
    SplitEpiSquare::new(left, right, alpha, hom(&y, &w, vec![0, 0])).unwrap()
}

#[test]
fn pullback_examples() {
    let k = klein_group().into_ref();
    let id = Homomorphism::identity(&k);
    let pb = pullback(&id, &id).unwrap();
    assert_eq!(pb.len(), 4);
    assert!(pb.p1.is_bijective());
    let (_, z, pt) = klein_first_projection();
    let pb = pullback(&pt.f, &Homomorphism::identity(&z)).unwrap();
    assert_eq!(pb.len(), 4);
    assert!(pb.p1.is_bijective());
    let pb = pullback(&pt.f, &pt.f).unwrap();
    assert_eq!(pb.len(), 8);
    assert_eq!(pb.alg.label(1), "(00,01)");
}

#[test]
fn pullback_universal_property() {
    let (k, _, pt) = klein_first_projection();
    let l = pt.f.clone();
    let pb = pullback(&pt.f, &l).unwrap();
    for t in [z2_group().into_ref(), klein_group().into_ref(), trivial_group().into_ref()] {
        for a in all_homs(&t, &k) {
            for b in all_homs(&t, l.src()) {
                if (0..t.size()).any(|x| pt.f.apply(a.apply(x)) != l.apply(b.apply(x))) {
                    continue;
                }
                let factor: Vec<Homomorphism> = all_homs(&t, &pb.alg)
                    .into_iter()
                    .filter(|u| u.then(&pb.p1).unwrap().same_map(&a) && u.then(&pb.p2).unwrap().same_map(&b))
                    .collect();
                assert_eq!(factor.len(), 1);
            }
        }
    }
}

#[test]
fn goursat_pushout_examples() {
    let (k, _, pt) = klein_first_projection();
    assert!(goursat_pushout_check(&SplitEpiSquare::identity(&pt)).unwrap().holds_bool());
    // Klein over Z2 with diagonal section, collapsed by the diagonal subgroup onto Z2 over 1
    let z = pt.base().clone();
    let one = trivial_group().into_ref();
    let left = Point::new(pt.f.clone(), hom(&z, &k, vec![0, 3])).unwrap();
    let theta = Congruence::from_labels(&[0, 1, 1, 0]);
    let alpha = Homomorphism::quotient(&k, &theta).unwrap();
    let u = alpha.dst().clone();
    let right = Point::new(hom(&u, &one, vec![0, 0]), hom(&one, &u, vec![0])).unwrap();
    let sq = SplitEpiSquare::new(left, right, alpha, hom(&z, &one, vec![0, 0])).unwrap();
    assert!(goursat_pushout_check(&sq).unwrap().holds_bool());

    let bad = bare_counterexample();
    let v = goursat_pushout_check(&bad).unwrap();
    assert_eq!(v.status, Status::Fails);
    let w = v.witness.unwrap();
    assert!(w.replay(&bad).unwrap());
    assert_eq!(w.pair, (0, 2));
    assert!(w.describe(&bad).contains("[0]"));
}

#[test]
fn square_validation_names_the_face() {
    let (k, z, pt) = klein_first_projection();
    let ok = SplitEpiSquare::new(pt.clone(), pt.clone(), Homomorphism::identity(&k), Homomorphism::identity(&z));
    assert!(ok.is_ok());
    let shear = hom(&k, &k, vec![0, 1, 3, 2]);
    let err = SplitEpiSquare::new(pt.clone(), pt.clone(), shear, Homomorphism::identity(&z))
        .unwrap_err()
        .to_string();
    assert!(err.contains("alpha·i"), "{err}");
    let err = SplitEpiSquare::new(pt.clone(), pt.clone(), Homomorphism::identity(&k), hom(&z, &z, vec![0, 0]))
        .unwrap_err()
        .to_string();
    assert!(err.contains("g·alpha"), "{err}");
    let f = pt.f.clone();
    assert!(Point::new(f, hom(&z, &k, vec![0, 0])).is_err());
}

#[test]
fn remark_cube_matches_term_search() {
    let z = remark_cube(&z2_group(), DEFAULT_FUNCTION_CAP).unwrap().unwrap();
    assert!(cube_lambda_check(&z).unwrap().holds_bool());
    let l = remark_cube(&lattice2(), DEFAULT_FUNCTION_CAP).unwrap().unwrap();
    let v = cube_lambda_check(&l).unwrap();
    assert!(v.fails_bool());
    assert!(v.witness.unwrap().replay(&l).unwrap());
    let gc = GeneralCube::image_factorized(&l).unwrap();
    let r = cube_right_face_check(&gc).unwrap();
    assert!(matches!(r.witness, Some(ComparisonWitness::NotSurjective { .. })));
    let gz = GeneralCube::image_factorized(&z).unwrap();
    assert!(cube_right_face_check(&gz).unwrap().holds_bool());
}

#[test]
fn identity_cube_holds() {
    let (_, _, pt) = klein_first_projection();
    let sq = SplitEpiSquare::identity(&pt);
    let cube = Cube::new(sq.clone(), sq).unwrap();
    assert!(cube_lambda_check(&cube).unwrap().holds_bool());
    let (left, _) = cube.faces().unwrap();
    let gc = GeneralCube::new(cube, Homomorphism::identity(&left.alg)).unwrap();
    assert!(cube_right_face_check(&gc).unwrap().holds_bool());
}

#[test]
fn pushout_trivial_cases() {
    let (k, z, pt) = klein_first_projection();
    let po = pushout_along_split_mono(&Homomorphism::identity(&z), &pt.i).unwrap();
    assert_eq!(po.alg.size(), k.size());
    assert!(po.beta_bar.is_bijective());
    let beta = pt.f.clone();
    let po = pushout_along_split_mono(&beta, &Homomorphism::identity(&k)).unwrap();
    assert_eq!(po.alg.size(), 2);
    assert!(po.induced.is_bijective());
    let not_onto = hom(&z, &k, vec![0, 1]);
    assert!(pushout_along_split_mono(&not_onto, &Homomorphism::identity(&z)).is_err());
}

#[test]
fn pushout_universal_property() {
    let y = klein_group().into_ref();
    let beta = Homomorphism::quotient(&y, &Congruence::from_labels(&[0, 1, 1, 0])).unwrap();
    let w = beta.dst().clone();
    let x = FinAlgebra::product(&y, &z2_group()).unwrap().into_ref();
    let i = hom(&y, &x, (0..4).map(|a| a * 2).collect());
    let po = pushout_along_split_mono(&beta, &i).unwrap();
    assert_eq!(po.alg.size(), 4);
    for kk in [z2_group().into_ref(), klein_group().into_ref(), trivial_group().into_ref()] {
        let from_w = all_homs(&w, &kk);
        let from_p = all_homs(&po.alg, &kk);
        for a in all_homs(&x, &kk) {
            for b in &from_w {
                let cocone = (0..y.size()).all(|t| a.apply(i.apply(t)) == b.apply(beta.apply(t)));
                if !cocone {
                    continue;
                }
                let n = from_p
                    .iter()
                    .filter(|u| po.beta_bar.then(u).unwrap().same_map(&a) && po.induced.then(u).unwrap().same_map(b))
                    .count();
                assert_eq!(n, 1);
            }
        }
    }
}

#[test]
fn beta_shriek_examples() {
    let (k, z, pt) = klein_first_projection();
    let (same, _) = beta_shriek(&pt, &Homomorphism::identity(&z)).unwrap();
    assert_eq!(same.f.map(), pt.f.map());
    assert_eq!(same.i.map(), pt.i.map());
    let beta = pt.f.clone();
    let (id_over_w, _) = beta_shriek(&Point::identity(&k), &beta).unwrap();
    assert_eq!(id_over_w.total().size(), 2);
    assert!(id_over_w.f.is_bijective());
    // Klein × Z2 over Klein, pushed along Klein → Z2
    let x = FinAlgebra::product(&k, &z2_group()).unwrap().into_ref();
    let proj = Point::new(
        hom(&x, &k, (0..8).map(|p| p / 2).collect()),
        hom(&k, &x, (0..4).map(|a| a * 2).collect()),
    )
    .unwrap();
    let (res, _) = beta_shriek(&proj, &beta).unwrap();
    assert_eq!(res.total().size(), 4);
    assert!(Point::new(res.f.clone(), res.i.clone()).is_ok());
}

#[test]
fn adjunction_counit_is_well_defined() {
    // ε: β_! β*(Q) → Q, [(y, q)] ↦ q, for points Q over W
    for seed in 0..10 {
        let (beta, _, _) = random_product_instance(&z2_group(), seed).unwrap();
        let w = beta.dst().clone();
        let mut rng = DiagramRng::new(seed);
        let q = random_point(&w, &mut rng).unwrap();
        let (pulled, pb) = pullback_point(&beta, &q).unwrap();
        let (_, po) = beta_shriek(&pulled, &beta).unwrap();
        let eps = induced_on_quotient(&po.beta_bar, q.total(), |p| pb.members[p].1, "counit").unwrap();
        let eps = eps.as_hom().unwrap();
        // triangle: β*(Q) → β*β_!β*(Q) → β*(Q) is the identity
        for p in 0..pb.len() {
            let (y, _) = pb.members[p];
            assert_eq!(eps.apply(po.beta_bar.apply(p)), pb.members[p].1);
            assert_eq!(pulled.f.apply(p), y);
        }
        // unit: x ↦ (f x, [x]) lands in β*β_!(X) for a random point
        let pt = random_point(beta.src(), &mut rng).unwrap();
        let (shriek, po) = beta_shriek(&pt, &beta).unwrap();
        let back = pullback(&beta, &shriek.f).unwrap();
        for x in 0..pt.total().size() {
            assert!(back.index_of(pt.f.apply(x), po.beta_bar.apply(x)).is_some());
        }
    }
}

#[test]
fn product_preservation_examples() {
    let (k, z, pt) = klein_first_projection();
    assert!(check_product_preservation(&Homomorphism::identity(&z), &pt, &pt).unwrap().holds_bool());
    let x = FinAlgebra::product(&k, &z2_group()).unwrap().into_ref();
    let proj = Point::new(
        hom(&x, &k, (0..8).map(|p| p / 2).collect()),
        hom(&k, &x, (0..4).map(|a| a * 2).collect()),
    )
    .unwrap();
    let beta = Homomorphism::quotient(&k, &Congruence::from_labels(&[0, 1, 0, 1])).unwrap();
    assert!(check_product_preservation(&beta, &proj, &proj).unwrap().holds_bool());
    assert!(check_product_preservation(&beta, &proj, &Point::identity(&k)).unwrap().holds_bool());
}

#[test]
fn beck_chevalley_examples() {
    let (_, _, pt) = klein_first_projection();
    let sq = SplitEpiSquare::identity(&pt);
    let z = pt.base().clone();
    assert!(beck_chevalley_check(&sq, &Point::identity(&z)).unwrap().holds_bool());
    let k = pt.total().clone();
    let kpt = Point::new(
        hom(&k, &k, vec![0, 0, 2, 2]),
        Homomorphism::new(k.clone(), k.clone(), vec![0, 0, 2, 2]).unwrap(),
    );
    assert!(kpt.is_err());
    for seed in 0..6 {
        let (sq, p) = random_beck_chevalley_instance(&klein_group(), seed).unwrap();
        assert!(beck_chevalley_check(&sq, &p).unwrap().holds_bool());
        assert!(beck_chevalley_check(&sq, &Point::identity(sq.left.base())).unwrap().holds_bool());
    }
}

#[test]
fn random_diagrams_hold_over_hm_algebras() {
    for base in [z2_group(), impl2(), s3_group()] {
        for seed in 0..8 {
            let sq = random_square(&base, seed).unwrap();
            assert!(goursat_pushout_check(&sq).unwrap().holds_bool(), "{} {seed}", base.name());
            let cube = random_cube(&base, seed).unwrap();
            assert!(cube_lambda_check(&cube).unwrap().holds_bool(), "{} {seed}", base.name());
            let (beta, a, b) = random_product_instance(&base, seed).unwrap();
            assert!(check_product_preservation(&beta, &a, &b).unwrap().holds_bool());
            let (sq, p) = random_beck_chevalley_instance(&base, seed).unwrap();
            assert!(beck_chevalley_check(&sq, &p).unwrap().holds_bool());
        }
    }
}

#[test]
fn lambda_and_right_face_agree() {
    for base in [z2_group(), lattice2(), bare_set(2), impl2()] {
        for seed in 0..10 {
            let cube = random_cube(&base, seed).unwrap();
            let a = cube_lambda_check(&cube).unwrap().holds_bool();
            let b = cube_right_face_check(&GeneralCube::image_factorized(&cube).unwrap())
                .unwrap()
                .holds_bool();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn bare_sets_break_every_check() {
    let base = bare_set(2);
    let mut fails = [false; 4];
    for seed in 0..300 {
        let sq = random_square(&base, seed).unwrap();
        if let Some(w) = goursat_pushout_check(&sq).unwrap().witness {
            assert!(w.replay(&sq).unwrap());
            fails[0] = true;
        }
        let cube = random_cube(&base, seed).unwrap();
        if let Some(w) = cube_lambda_check(&cube).unwrap().witness {
            assert!(w.replay(&cube).unwrap());
            fails[1] = true;
        }
        let (beta, a, b) = random_product_instance(&base, seed).unwrap();
        let c = product_comparison(&beta, &a, &b).unwrap();
        if let Some(w) = c.verdict().witness {
            assert!(w.reproduces(&c));
            fails[2] = true;
        }
        let (sq, p) = random_beck_chevalley_instance(&base, seed).unwrap();
        let c = beck_chevalley_comparison(&sq, &p).unwrap();
        if let Some(w) = c.verdict().witness {
            assert!(w.reproduces(&c));
            fails[3] = true;
        }
    }
    assert_eq!(fails, [true; 4]);
}

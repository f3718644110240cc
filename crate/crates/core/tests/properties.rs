use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hfsurg::catalog;
use hfsurg::gradedalg::{GradedModule, Grading};
use hfsurg::knotmodel::{AlexanderPolynomial, KnotSurgeryModel};
use hfsurg::lensd::{lens_d, Slope, SpincIndex};
use hfsurg::oracle::{self, ModelLimits};
use hfsurg::surgery::{full_surgery, reduced_rank_formula};

fn slope() -> impl Strategy<Value = Slope> {
    (-9i64..=9, 1i64..=5)
        .prop_filter("coprime, nonzero", |(p, q)| *p != 0 && num_integer::gcd(*p, *q) == 1)
        .prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn model() -> impl Strategy<Value = KnotSurgeryModel> {
    any::<u64>().prop_map(|seed| oracle::random_model(&mut ChaCha8Rng::seed_from_u64(seed), &ModelLimits::default()))
}

fn module() -> impl Strategy<Value = GradedModule> {
    let g = (-20i64..20, 1i64..=4).prop_map(|(n, d)| Grading::new(n, d));
    (
        prop::collection::vec(g.clone(), 0..3),
        prop::collection::vec((g, 1u32..5), 0..5),
    )
        .prop_map(|(towers, finites)| {
            let mut m = GradedModule::empty();
            towers.into_iter().for_each(|d| m.push_tower(d));
            finites.into_iter().for_each(|(d, n)| m.push_finite(d, n));
            m
        })
}

proptest! {
    #[test]
    fn lens_d_is_odd_in_p(s in slope()) {
        for i in 0..s.order() as i64 {
            let d = lens_d(s.p(), s.q(), SpincIndex(i)).unwrap();
            prop_assert_eq!(lens_d(-s.p(), s.q(), SpincIndex(i)).unwrap(), -d);
        }
    }

    #[test]
    fn lens_d_denominator_divides_4p(s in slope()) {
        for i in 0..s.order() as i64 {
            let d = lens_d(s.p(), s.q(), SpincIndex(i)).unwrap();
            prop_assert_eq!((4 * s.p().abs()) % d.denom(), 0);
        }
    }

    #[test]
    fn rank_identity(m in model(), s in slope()) {
        let y = full_surgery(&m, s).unwrap();
        prop_assert_eq!(y.total_reduced_dim, reduced_rank_formula(&m, s).unwrap());
        prop_assert_eq!(y.structures.len() as u64, s.order());
        y.check().unwrap();
    }

    #[test]
    fn one_tower_per_structure(m in model(), s in slope()) {
        for st in full_surgery(&m, s).unwrap().structures {
            prop_assert_eq!(st.module.towers().len(), 1);
            prop_assert_eq!(st.d, Some(st.module.towers()[0].d));
        }
    }

    #[test]
    fn lspace_knots_stay_lspace_at_large_positive_slopes(v in prop::collection::vec(0i64..=1, 0..6), q in 1i64..=3) {
        let mut t: Vec<i64> = v.iter().rev().scan(0, |acc, step| { *acc += step; Some(*acc) }).collect();
        t.reverse();
        let m = KnotSurgeryModel::lspace_model(&AlexanderPolynomial::from_torsion(&t)).unwrap();
        let p = 2 * m.genus() as i64 * q + 1;
        prop_assert!(full_surgery(&m, Slope::new(p, q).unwrap()).unwrap().is_lspace());
    }

    #[test]
    fn mirror_reverses_orientation(k in prop::sample::select(vec!["unknot", "k0", "k1", "k2"]), s in slope()) {
        let m = catalog::models().into_iter().find(|(stem, _)| *stem == k).unwrap().1;
        let a = full_surgery(&m, s).unwrap();
        let b = full_surgery(&m.mirror().unwrap(), Slope::new(-s.p(), s.q()).unwrap()).unwrap();
        let reversed: Vec<Grading> = b.d_invariants().iter().map(|d| -*d).collect();
        prop_assert_eq!(a.d_invariants(), reversed);
        for (x, y) in a.structures.iter().zip(&b.structures) {
            let mut here: Vec<Grading> = x.module.finites().iter().flat_map(|f| f.basis_gradings()).collect();
            let mut there: Vec<Grading> = y.module.finites().iter().flat_map(|f| f.basis_gradings()).map(|g| -g - Grading::int(1)).collect();
            here.sort();
            there.sort();
            prop_assert_eq!(here, there);
        }
    }

    #[test]
    fn model_json_roundtrip(m in model()) {
        let back = KnotSurgeryModel::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn torsion_roundtrip(t in prop::collection::vec(-6i64..=6, 0..10)) {
        let mut back = AlexanderPolynomial::from_torsion(&t).torsion_coefficients();
        let mut t = t;
        let n = t.len().max(back.len());
        t.resize(n, 0);
        back.resize(n, 0);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn direct_sum_adds_dimensions(a in module(), b in module()) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.reduced_dim(), a.reduced_dim() + b.reduced_dim());
        prop_assert_eq!(s.towers().len(), a.towers().len() + b.towers().len());
        prop_assert_eq!(s.u_annihilation_exponent(), a.u_annihilation_exponent().max(b.u_annihilation_exponent()));
    }

    #[test]
    fn push_then_remove_finite(m in module(), n in -10i64..10, len in 1u32..4) {
        let mut x = m.clone();
        x.push_finite(Grading::int(n), len);
        prop_assert!(x.remove_finite(Grading::int(n), len));
        prop_assert_eq!(x, m);
    }
}

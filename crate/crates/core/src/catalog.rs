//! Built-in knot models and the Teragaito manifold.

use crate::gradedalg::{GradedModule, Grading};
use crate::knotmodel::{AlexanderPolynomial, KnotSurgeryModel, RedSummand, ReducedGroupTable, VHData};
use crate::surgery::{ManifoldHF, SpincHF};

/// `T_{2,2m+1}`, an L-space knot with `Δ = Σ_{|i|≤m} (-1)^{m-|i|} T^i`.
pub fn torus_2(p: u32) -> KnotSurgeryModel {
    assert!(p % 2 == 1, "T(p,2) needs odd p");
    let m = (p / 2) as i64;
    let coeffs = (0..=m).map(|i| if (m - i) % 2 == 0 { 1 } else { -1 }).collect();
    let alex = AlexanderPolynomial::new(coeffs).expect("torus knot polynomial is normalized");
    let mut model = KnotSurgeryModel::lspace_model(&alex).expect("torus knots are L-space knots");
    model.name = Some(if p == 1 { "unknot".into() } else { format!("T({p},2)") });
    model.g4 = Some(m as u32);
    model
}

pub fn trefoil() -> KnotSurgeryModel {
    torus_2(3)
}

/// Teragaito's `K_n`: genus `2n+2`, `V ≡ V̄ ≡ 0`, `A^red_{±(2n+1)} = τ(1)`
/// one below the tower.
pub fn teragaito_knot(n: u32) -> KnotSurgeryModel {
    let g = 2 * n + 2;
    let k = 2 * n as i64 + 1;
    let red = ReducedGroupTable::symmetric(&[(k, RedSummand { offset: -1, length: 1 })]);
    let mut t = vec![0; g as usize];
    t[k as usize] = -1;
    KnotSurgeryModel {
        name: Some(format!("K_{n}")),
        vh: VHData::zeros(g),
        red,
        alex: AlexanderPolynomial::from_torsion(&t),
        mirror_v: Some(VHData::zeros(g)),
        hfk_top_parity: None,
        g4: None,
    }
}

/// The small Seifert fibred space `Y = S²((2,1),(6,-1),(7,-2))` as listed
/// from its plumbing computation.
pub fn teragaito_manifold() -> ManifoldHF {
    let tower = |n, d| GradedModule::tower(Grading::new(n, d));
    let structures = vec![
        SpincHF::graded(0, tower(-3, 4)),
        SpincHF::graded(1, tower(0, 1).with_finite(Grading::zero(), 1)),
        SpincHF::graded(2, tower(1, 4)),
        SpincHF::graded(3, tower(0, 1).with_finite(Grading::zero(), 1)),
    ];
    let mut y = ManifoldHF::new(4, structures);
    y.knot = Some("Y".into());
    y
}

/// File stem and model for every bundled example.
pub fn models() -> Vec<(&'static str, KnotSurgeryModel)> {
    vec![
        ("unknot", KnotSurgeryModel::unknot()),
        ("trefoil", trefoil()),
        ("t52", torus_2(5)),
        ("t72", torus_2(7)),
        ("t92", torus_2(9)),
        ("k0", teragaito_knot(0)),
        ("k1", teragaito_knot(1)),
        ("k2", teragaito_knot(2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lensd::Slope;
    use crate::surgery::full_surgery;

    #[test]
    fn all_models_validate() {
        for (stem, m) in models() {
            assert!(m.validate().is_empty(), "{stem}: {:?}", m.validate());
        }
    }

    #[test]
    fn k0_alexander() {
        assert_eq!(teragaito_knot(0).alex.coeffs(), &[-1, 2, -1]);
        assert_eq!(teragaito_knot(1).alex.coeffs(), &[1, 0, -1, 2, -1]);
    }

    #[test]
    fn teragaito_manifold_matches_surgery() {
        let y = full_surgery(&teragaito_knot(0), Slope::integer(-4)).unwrap();
        assert_eq!(y.structures, teragaito_manifold().structures);
    }

    #[test]
    fn torus_knot_polynomials() {
        assert_eq!(trefoil().alex.coeffs(), &[-1, 1]);
        assert_eq!(torus_2(5).alex.coeffs(), &[1, -1, 1]);
        assert_eq!(torus_2(7).torsion(), vec![2, 1, 1, 0]);
    }
}

//! The exterior-forms route: canonical lines, purity, and transform action.

mod common;

use common::{
    random_bivector, random_structure, random_symplectic, random_two_form, rng, std_complex_mat,
    EPS,
};
use gctool_core::gcs::{GenStructure, TwoForm};
use gctool_core::scalar::{c_re, Rat};
use gctool_core::spinor::{
    beta_on_spinor, canonical_line, canonical_line_by_nullspace, is_pure, mukai_pairing,
    spinor_type, MixedForm,
};
use num::Complex;

fn ci() -> Complex<Rat> {
    Complex::new(Rat::from_integer(0.into()), Rat::from_integer(1.into()))
}

/// e^{iω}: the real wedge exponential with the degree-2k part scaled by i^k.
fn exp_i_omega(w: &TwoForm<Rat>) -> MixedForm<Rat> {
    let real = MixedForm::exp_two_form(w);
    let m = w.dim_v();
    let mut terms = Vec::new();
    for (mask, c) in real.terms(EPS) {
        let k = (mask.count_ones() / 2) as usize;
        let mut factor = c_re(Rat::from_integer(1.into()));
        for _ in 0..k {
            factor *= ci();
        }
        terms.push((mask, c * factor));
    }
    MixedForm::from_terms(m, &terms)
}

/// Both forms generate the same line: f = r·g for a nonzero scalar r.
fn proportional(f: &MixedForm<Rat>, g: &MixedForm<Rat>) -> bool {
    let gt = g.terms(0.0);
    let Some((mask, lead)) = gt.first() else {
        return f.is_zero(0.0);
    };
    let ratio = f.coeff(*mask).clone() / lead.clone();
    if ratio == c_re(Rat::from_integer(0.into())) {
        return false;
    }
    f.add(&g.scale(&-ratio)).is_zero(0.0)
}

#[test]
fn symplectic_canonical_line_is_the_exponential_of_i_omega() {
    let mut r = rng(31);
    for dim_v in [2usize, 4] {
        for _ in 0..5 {
            let w = random_symplectic(&mut r, dim_v);
            let s = GenStructure::from_symplectic(&w, EPS).unwrap();
            let rho = canonical_line(&s).unwrap();
            let expected = exp_i_omega(&w);
            assert!(
                rho.add(&expected.scale(&-c_re(Rat::from_integer(1.into()))))
                    .is_zero(0.0),
                "canonical line differs from e^(i omega)"
            );
            assert_eq!(spinor_type(&s).unwrap(), 0);
        }
    }
}

#[test]
fn complex_canonical_line_is_the_top_antiholomorphic_form() {
    // For the block rotation sending e₁ ↦ e₂ the annihilated line is
    // spanned by e¹ − i·e², and products of such factors in higher dims.
    let s2 = GenStructure::from_complex(&std_complex_mat(2), EPS).unwrap();
    let rho2 = canonical_line(&s2).unwrap();
    let expected2 =
        MixedForm::from_terms(2, &[(0b01, c_re(Rat::from_integer(1.into()))), (0b10, -ci())]);
    assert!(proportional(&rho2, &expected2));

    // dim 4: (e¹ − i·e²) ∧ (e³ − i·e⁴)
    let s4 = GenStructure::from_complex(&std_complex_mat(4), EPS).unwrap();
    let rho4 = canonical_line(&s4).unwrap();
    let one = c_re(Rat::from_integer(1.into()));
    let expected4 = MixedForm::from_terms(
        4,
        &[
            (0b0101, one.clone()),
            (0b1001, -ci()),
            (0b0110, -ci()),
            (0b1010, -one),
        ],
    );
    assert!(proportional(&rho4, &expected4));
    assert_eq!(spinor_type(&s4).unwrap(), 2);
}

#[test]
fn b_transform_wedges_the_canonical_line_by_exp_of_minus_b() {
    // The matrix-level shear pairs with wedging by the exponential of the
    // negated two-form on the exterior side; the sign is fixed here once
    // and exercised exactly.
    let mut r = rng(41);
    for dim_v in [2usize, 4] {
        for _ in 0..5 {
            let s = random_structure(&mut r, dim_v);
            let b = random_two_form(&mut r, dim_v);
            let neg_b = TwoForm::new(-b.gram()).unwrap();
            let rho = canonical_line(&s).unwrap();
            let transformed = canonical_line(&s.b_transform(&b)).unwrap();
            let wedged = MixedForm::exp_two_form(&neg_b).wedge(&rho);
            assert!(
                proportional(&transformed, &wedged),
                "b-transform does not act by wedging with exp(-B)"
            );
        }
    }
}

#[test]
fn beta_transform_contracts_the_canonical_line() {
    let mut r = rng(51);
    for dim_v in [2usize, 4] {
        for _ in 0..5 {
            let s = random_structure(&mut r, dim_v);
            let beta = random_bivector(&mut r, dim_v);
            let rho = canonical_line(&s).unwrap();
            let transformed = canonical_line(&s.beta_transform(&beta)).unwrap();
            let contracted = beta_on_spinor(&beta, &rho);
            assert!(
                proportional(&transformed, &contracted),
                "beta-transform does not act by the contraction exponential"
            );
        }
    }
}

#[test]
fn canonical_lines_are_pure_with_nondegenerate_self_pairing() {
    let mut r = rng(61);
    for dim_v in [2usize, 4, 6] {
        for _ in 0..4 {
            let s = random_structure(&mut r, dim_v);
            let rho = canonical_line(&s).unwrap();
            assert!(is_pure(&rho, EPS).unwrap());
            let pairing = mukai_pairing(&rho, &rho.conjugate());
            assert_ne!(pairing, c_re(Rat::from_integer(0.into())));
        }
    }
}

#[test]
fn fast_and_nullspace_lines_agree_at_small_dims() {
    let mut r = rng(71);
    for dim_v in [2usize, 4] {
        for _ in 0..4 {
            let s = random_structure(&mut r, dim_v);
            let fast = canonical_line(&s).unwrap();
            let slow = canonical_line_by_nullspace(&s).unwrap();
            assert!(
                fast.add(&slow.scale(&-c_re(Rat::from_integer(1.into()))))
                    .is_zero(0.0),
                "the two routes normalize to different representatives"
            );
        }
    }
}

#[test]
fn spinor_type_matches_the_rank_route_on_random_structures() {
    let mut r = rng(81);
    for dim_v in [2usize, 4, 6, 8] {
        for _ in 0..5 {
            let s = random_structure(&mut r, dim_v);
            assert_eq!(spinor_type(&s).unwrap(), s.type_of());
        }
    }
}

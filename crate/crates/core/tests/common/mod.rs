//! Deterministic generators shared by the integration suites.
//!
//! Everything is seeded (ChaCha8), so failures reproduce bit-for-bit.
//! Random structures are complex- or symplectic-type seeds dressed with
//! small-rational B-field and β transforms; both transforms preserve the
//! structure axioms exactly, so every output is verified by construction.

#![allow(dead_code)] // each test binary uses its own subset

use gctool_core::gcs::{Bivector, GenStructure, TwoForm};
use gctool_core::mat::Mat;
use gctool_core::scalar::{rat, Rat};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in [−3, 3] and denominator in [1, 3].
pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    rat(r.gen_range(-3..=3), r.gen_range(1..=3))
}

/// Sparse skew form with small rational entries.
pub fn random_two_form(r: &mut ChaCha8Rng, dim_v: usize) -> TwoForm<Rat> {
    let mut entries = Vec::new();
    for i in 1..=dim_v {
        for j in (i + 1)..=dim_v {
            if r.gen_bool(0.5) {
                entries.push((i, j, small_rat(r)));
            }
        }
    }
    TwoForm::from_entries(dim_v, &entries).expect("distinct index pairs give a skew gram")
}

/// Sparse bivector with small rational entries.
pub fn random_bivector(r: &mut ChaCha8Rng, dim_v: usize) -> Bivector<Rat> {
    let mut entries = Vec::new();
    for i in 1..=dim_v {
        for j in (i + 1)..=dim_v {
            if r.gen_bool(0.5) {
                entries.push((i, j, small_rat(r)));
            }
        }
    }
    Bivector::from_entries(dim_v, &entries).expect("distinct index pairs give a skew gram")
}

/// Block-diagonal quarter-turn complex structure on V.
pub fn std_complex_mat(dim_v: usize) -> Mat<Rat> {
    assert_eq!(dim_v % 2, 0, "complex structures need even dimension");
    let block = Mat::from_rows(vec![
        vec![rat(0, 1), rat(-1, 1)],
        vec![rat(1, 1), rat(0, 1)],
    ]);
    Mat::block_diag(&vec![block; dim_v / 2])
}

/// Standard symplectic form pairing e_{2i−1} with e_{2i}.
pub fn std_omega(dim_v: usize) -> TwoForm<Rat> {
    assert_eq!(dim_v % 2, 0, "symplectic forms need even dimension");
    let entries: Vec<(usize, usize, Rat)> = (0..dim_v / 2)
        .map(|i| (2 * i + 1, 2 * i + 2, rat(1, 1)))
        .collect();
    TwoForm::from_entries(dim_v, &entries).expect("distinct index pairs give a skew gram")
}

/// Nondegenerate skew form: the standard one plus sparse noise, retried
/// until invertible.
pub fn random_symplectic(r: &mut ChaCha8Rng, dim_v: usize) -> TwoForm<Rat> {
    loop {
        let noise = random_two_form(r, dim_v);
        let gram = std_omega(dim_v).gram() + noise.gram();
        let form = TwoForm::new(gram).expect("sum of skew grams is skew");
        if form.map_matrix().inverse(EPS).is_some() {
            return form;
        }
    }
}

/// A verified structure of varying type: a complex- or symplectic-type seed
/// followed by one or two B-field/β transforms.
pub fn random_structure(r: &mut ChaCha8Rng, dim_v: usize) -> GenStructure<Rat> {
    let mut s = if r.gen_bool(0.5) {
        GenStructure::from_complex(&std_complex_mat(dim_v), EPS)
            .expect("quarter-turn squares to −Id")
    } else {
        GenStructure::from_symplectic(&random_symplectic(r, dim_v), EPS)
            .expect("form was retried until nondegenerate")
    };
    for _ in 0..r.gen_range(1..=2) {
        if r.gen_bool(0.5) {
            s = s.b_transform(&random_two_form(r, dim_v));
        } else {
            s = s.beta_transform(&random_bivector(r, dim_v));
        }
    }
    s
}

/// Exact rational unit triple: the stereographic image of a rational plane
/// point is always rational.
pub fn random_unit_triple(r: &mut ChaCha8Rng) -> (Rat, Rat, Rat) {
    let x = small_rat(r);
    let y = small_rat(r);
    gctool_core::twistor::stereographic(&num::Complex::new(x, y))
}

//! Mixed exterior forms as spinors for V ⊕ V*.
//!
//! A [`MixedForm`] stores one complex coefficient per subset of {1,…,m},
//! indexed by bitmask (bit i−1 ↔ basis covector eⁱ). The Clifford action
//! (X+ξ)·α = ι_X α + ξ∧α, the Mukai pairing, annihilators, and the canonical
//! pure line of a verified structure live here. The spinor route to the type
//! is independent of the Poisson-block rank route in [`crate::gcs`] and is
//! used as an oracle against it.
//!
//! Operations are capped at dim_v ≤ 12 (a 4096-dimensional exterior algebra):
//! this module is an exactness oracle, not a bulk engine.

use num::Complex;
use thiserror::Error;

use crate::gcs::{pairing, Bivector, GenStructure, TwoForm};
use crate::mat::Mat;
use crate::scalar::{c_re, Coeff, Scalar};

/// Largest supported dim_v; keeps the 2^m coefficient table bounded.
pub const MAX_DIM_V: usize = 12;

#[derive(Debug, Error)]
pub enum SpinorError {
    #[error("dimension {0} exceeds the spinor cap {MAX_DIM_V}")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero form has no annihilator data")]
    ZeroForm,
    #[error("no annihilating line found; the input is not generalized complex")]
    NoCanonicalLine,
    #[error("canonical generator is degenerate: (rho, conj rho) = 0")]
    DegeneratePairing,
}

/// An element of Λ•V* ⊗ ℂ of possibly mixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedForm<S> {
    dim_v: usize,
    coeffs: Vec<Complex<S>>,
}

/// X + ξ with complex coefficients, acting by ι_X + ξ∧.
#[derive(Clone, Debug)]
pub struct CliffordElement<S> {
    pub vec: Vec<Complex<S>>,
    pub covec: Vec<Complex<S>>,
}

impl<S: Scalar> CliffordElement<S> {
    /// Splits a coordinate vector on (V ⊕ V*) ⊗ ℂ into its two halves.
    pub fn from_coords(coords: &[Complex<S>]) -> Self {
        assert_eq!(coords.len() % 2, 0, "need a V ⊕ V* vector");
        let m = coords.len() / 2;
        CliffordElement {
            vec: coords[..m].to_vec(),
            covec: coords[m..].to_vec(),
        }
    }

    /// ⟨e, e⟩ = ξ(X) for e = X + ξ.
    pub fn self_pairing(&self) -> Complex<S> {
        let coords: Vec<Complex<S>> = self.vec.iter().chain(&self.covec).cloned().collect();
        pairing(&coords, &coords)
    }
}

/// Sign of eˢ ∧ eᵀ as a merge of sorted index lists; 0 on overlap.
fn wedge_sign(mask_a: usize, mask_b: usize) -> i32 {
    if mask_a & mask_b != 0 {
        return 0;
    }
    let mut sign = 1;
    let mut b = mask_b;
    while b != 0 {
        let i = b.trailing_zeros() as usize;
        // factors of mask_a above index i must hop over e^{i+1}
        if ((mask_a >> (i + 1)).count_ones()) % 2 == 1 {
            sign = -sign;
        }
        b &= b - 1;
    }
    sign
}

/// ι_{e_i} on eˢ: removes i with the sign (−1)^{#indices below i in S}.
fn contract_index(mask: usize, i: usize) -> Option<(i32, usize)> {
    if mask & (1 << i) == 0 {
        return None;
    }
    let below = (mask & ((1 << i) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, mask & !(1 << i)))
}

fn apply_sign<S: Scalar>(c: &Complex<S>, sign: i32) -> Complex<S> {
    match sign {
        1 => c.clone(),
        -1 => -c.clone(),
        _ => unreachable!("signs are ±1"),
    }
}

impl<S: Scalar> MixedForm<S> {
    pub fn zero(dim_v: usize) -> Self {
        assert!(dim_v <= MAX_DIM_V, "dimension exceeds the spinor cap");
        MixedForm {
            dim_v,
            coeffs: vec![Complex::new(S::zero(), S::zero()); 1 << dim_v],
        }
    }

    /// The constant form 1.
    pub fn one(dim_v: usize) -> Self {
        let mut f = MixedForm::zero(dim_v);
        f.coeffs[0] = c_re(S::one());
        f
    }

    /// Builds from (subset bitmask, coefficient) terms.
    pub fn from_terms(dim_v: usize, terms: &[(usize, Complex<S>)]) -> Self {
        let mut f = MixedForm::zero(dim_v);
        for (mask, c) in terms {
            assert!(*mask < (1 << dim_v), "subset out of range");
            f.coeffs[*mask] = f.coeffs[*mask].clone() + c.clone();
        }
        f
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn coeff(&self, mask: usize) -> &Complex<S> {
        &self.coeffs[mask]
    }

    /// Nonzero (mask, coefficient) terms in mask order.
    pub fn terms(&self, eps: f64) -> Vec<(usize, Complex<S>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible(eps))
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(eps))
    }

    /// Lowest degree with a surviving coefficient, if any.
    pub fn lowest_degree(&self, eps: f64) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible(eps))
            .map(|(m, _)| m.count_ones() as usize)
            .min()
    }

    /// Highest degree with a surviving coefficient, if any.
    pub fn highest_degree(&self, eps: f64) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible(eps))
            .map(|(m, _)| m.count_ones() as usize)
            .max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim_v, other.dim_v);
        MixedForm {
            dim_v: self.dim_v,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Complex<S>) -> Self {
        MixedForm {
            dim_v: self.dim_v,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Entrywise complex conjugate (the basis forms are real).
    pub fn conjugate(&self) -> Self {
        MixedForm {
            dim_v: self.dim_v,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(c.re.clone(), -c.im.clone()))
                .collect(),
        }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim_v, other.dim_v);
        let mut out = MixedForm::zero(self.dim_v);
        for (ma, ca) in self.coeffs.iter().enumerate() {
            if ca.is_negligible(0.0) {
                continue;
            }
            for (mb, cb) in other.coeffs.iter().enumerate() {
                let s = wedge_sign(ma, mb);
                if s != 0 {
                    let add = apply_sign(&(ca.clone() * cb.clone()), s);
                    out.coeffs[ma | mb] = out.coeffs[ma | mb].clone() + add;
                }
            }
        }
        out
    }

    /// Wedge exponential e^B = Σ B∧…∧B / k! of a real 2-form.
    pub fn exp_two_form(b: &TwoForm<S>) -> Self {
        let m = b.dim_v();
        let mut two_form = MixedForm::zero(m);
        for i in 0..m {
            for j in (i + 1)..m {
                two_form.coeffs[(1 << i) | (1 << j)] = c_re(b.gram().at(i, j).clone());
            }
        }
        let mut acc = MixedForm::one(m);
        let mut term = MixedForm::one(m);
        for k in 1..=(m / 2) {
            term = term.wedge(&two_form);
            let inv_k = c_re(S::from_ratio(1, k as i64));
            term = term.scale(&inv_k);
            if term.is_zero(0.0) {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_float(&self) -> MixedForm<f64> {
        MixedForm {
            dim_v: self.dim_v,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(c.re.approx(), c.im.approx()))
                .collect(),
        }
    }
}

/// (X + ξ)·ρ = ι_X ρ + ξ ∧ ρ.
pub fn clifford_act<S: Scalar>(e: &CliffordElement<S>, rho: &MixedForm<S>) -> MixedForm<S> {
    let m = rho.dim_v;
    assert_eq!(e.vec.len(), m, "Clifford element dimension mismatch");
    let mut out = MixedForm::zero(m);
    for (mask, c) in rho.coeffs.iter().enumerate() {
        if c.is_negligible(0.0) {
            continue;
        }
        for i in 0..m {
            if !e.vec[i].is_negligible(0.0) {
                if let Some((s, nm)) = contract_index(mask, i) {
                    let add = apply_sign(&(e.vec[i].clone() * c.clone()), s);
                    out.coeffs[nm] = out.coeffs[nm].clone() + add;
                }
            }
            if !e.covec[i].is_negligible(0.0) {
                let s = wedge_sign(1 << i, mask);
                if s != 0 {
                    let add = apply_sign(&(e.covec[i].clone() * c.clone()), s);
                    out.coeffs[mask | (1 << i)] = out.coeffs[mask | (1 << i)].clone() + add;
                }
            }
        }
    }
    out
}

/// Basis of the annihilator L_ρ = { v ∈ (V⊕V*)⊗ℂ | v·ρ = 0 }.
///
/// The output is always isotropic for the pairing (asserted).
pub fn annihilator<S: Scalar>(rho: &MixedForm<S>, eps: f64) -> Result<Vec<Vec<Complex<S>>>, SpinorError> {
    if rho.is_zero(eps) {
        return Err(SpinorError::ZeroForm);
    }
    let m = rho.dim_v;
    // columns: action of each basis generator e_i, e^i on rho
    let mut cols: Vec<MixedForm<S>> = Vec::with_capacity(2 * m);
    for i in 0..2 * m {
        let mut coords = vec![Complex::new(S::zero(), S::zero()); 2 * m];
        coords[i] = c_re(S::one());
        cols.push(clifford_act(&CliffordElement::from_coords(&coords), rho));
    }
    let system = Mat::from_fn(1 << m, 2 * m, |r, c| cols[c].coeffs[r].clone());
    let basis = system.nullspace(eps);
    for (a, u) in basis.iter().enumerate() {
        for v in basis.iter().skip(a) {
            assert!(
                pairing(u, v).is_negligible(eps.max(1e-7)),
                "annihilator must be isotropic"
            );
        }
    }
    Ok(basis)
}

/// A form is pure iff its annihilator is maximal isotropic (dimension m).
pub fn is_pure<S: Scalar>(rho: &MixedForm<S>, eps: f64) -> Result<bool, SpinorError> {
    Ok(annihilator(rho, eps)?.len() == rho.dim_v)
}

/// Mukai pairing (ρ₁, ρ₂) = (σ(ρ₁) ∧ ρ₂)_top, σ acting on degree d by
/// (−1)^{d(d−1)/2}.
pub fn mukai_pairing<S: Scalar>(r1: &MixedForm<S>, r2: &MixedForm<S>) -> Complex<S> {
    assert_eq!(r1.dim_v, r2.dim_v, "Mukai pairing dimension mismatch");
    let m = r1.dim_v;
    let top = (1usize << m) - 1;
    let mut tot = Complex::new(S::zero(), S::zero());
    for (m1, c1) in r1.coeffs.iter().enumerate() {
        if c1.is_negligible(0.0) {
            continue;
        }
        let d = m1.count_ones() as usize;
        let s_rev = if (d * (d.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
        let m2 = top & !m1;
        let c2 = &r2.coeffs[m2];
        if c2.is_negligible(0.0) {
            continue;
        }
        let s = wedge_sign(m1, m2);
        if s != 0 {
            tot = tot + apply_sign(&(c1.clone() * c2.clone()), s_rev * s);
        }
    }
    tot
}

/// Contraction by e^β = Σ (ι_β)^k / k!, with ι_{eᵢ∧eⱼ} = ι_{eⱼ}∘ι_{eᵢ}.
pub fn beta_on_spinor<S: Scalar>(beta: &Bivector<S>, rho: &MixedForm<S>) -> MixedForm<S> {
    let m = rho.dim_v;
    assert_eq!(beta.dim_v(), m, "bivector dimension mismatch");
    let contract_once = |f: &MixedForm<S>| -> MixedForm<S> {
        let mut out = MixedForm::zero(m);
        for (mask, c) in f.coeffs.iter().enumerate() {
            if c.is_negligible(0.0) {
                continue;
            }
            for i in 0..m {
                for j in (i + 1)..m {
                    let bij = beta.gram().at(i, j);
                    if bij.is_negligible(0.0) {
                        continue;
                    }
                    let Some((s1, m1)) = contract_index(mask, i) else { continue };
                    let Some((s2, m2)) = contract_index(m1, j) else { continue };
                    let add = apply_sign(&(c.clone() * c_re(bij.clone())), s1 * s2);
                    out.coeffs[m2] = out.coeffs[m2].clone() + add;
                }
            }
        }
        out
    };
    let mut acc = rho.clone();
    let mut term = rho.clone();
    for k in 1..=(m / 2) {
        term = contract_once(&term);
        term = term.scale(&c_re(S::from_ratio(1, k as i64)));
        if term.is_zero(0.0) {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Basis of the +i eigenspace of a verified structure, complexified:
/// v = x − i·𝓘x over the real basis, pruned to a ℂ-independent set.
pub fn plus_i_eigenbasis<S: Scalar>(s: &GenStructure<S>) -> Vec<Vec<Complex<S>>> {
    let n = 2 * s.dim_v();
    let mut candidates: Vec<Vec<Complex<S>>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![S::zero(); n];
        e[k] = S::one();
        let se = s.mat().apply(&e);
        candidates.push(
            e.iter()
                .zip(&se)
                .map(|(x, y)| Complex::new(x.clone(), -y.clone()))
                .collect(),
        );
    }
    select_independent(&candidates, s.dim_v(), s.eps())
}

/// Greedy prefix of `candidates` that is ℂ-linearly independent, stopping at
/// `want` vectors (matches the deterministic order the certificates rely on).
pub fn select_independent<S: Scalar>(
    candidates: &[Vec<Complex<S>>],
    want: usize,
    eps: f64,
) -> Vec<Vec<Complex<S>>> {
    let mut echelon: Vec<Vec<Complex<S>>> = Vec::new();
    let mut selected = Vec::new();
    for cand in candidates {
        if selected.len() == want {
            break;
        }
        if let Some(reduced) = reduce_against(&echelon, cand, eps) {
            echelon.push(reduced);
            selected.push(cand.clone());
        }
    }
    selected
}

/// Reduces `v` against echelon rows; returns the nonzero remainder, or `None`
/// when `v` is dependent. Rows are kept with their leading entry first-nonzero.
fn reduce_against<S: Scalar>(
    echelon: &[Vec<Complex<S>>],
    v: &[Complex<S>],
    eps: f64,
) -> Option<Vec<Complex<S>>> {
    let mut w = v.to_vec();
    for row in echelon {
        let piv = row
            .iter()
            .position(|x| !x.is_negligible(eps))
            .expect("echelon rows are nonzero");
        if w[piv].is_negligible(eps) {
            continue;
        }
        let f = w[piv].clone() / row[piv].clone();
        for (wk, rk) in w.iter_mut().zip(row) {
            *wk = wk.clone() - f.clone() * rk.clone();
        }
    }
    if w.iter().all(|x| x.is_negligible(eps)) {
        None
    } else {
        Some(w)
    }
}

/// Canonical pure line of a verified structure.
///
/// Applies the Clifford product of a +i-eigenspace basis to trial generators
/// e^T in degree order; the first nonzero image generates the annihilated
/// line. The result is normalized so its lowest-degree coefficient is 1 and
/// post-verified: every basis vector annihilates it and (ρ, ρ̄) ≠ 0.
pub fn canonical_line<S: Scalar>(s: &GenStructure<S>) -> Result<MixedForm<S>, SpinorError> {
    let m = s.dim_v();
    if m > MAX_DIM_V {
        return Err(SpinorError::DimensionTooLarge(m));
    }
    let eps = s.eps();
    let basis: Vec<CliffordElement<S>> = plus_i_eigenbasis(s)
        .iter()
        .map(|v| CliffordElement::from_coords(v))
        .collect();
    let mut masks: Vec<usize> = (0..1usize << m).collect();
    masks.sort_by_key(|t| (t.count_ones(), *t));
    for tm in masks {
        let mut f = MixedForm::from_terms(m, &[(tm, c_re(S::one()))]);
        for e in &basis {
            f = clifford_act(e, &f);
            if f.is_zero(eps) {
                break;
            }
        }
        if f.is_zero(eps) {
            continue;
        }
        // normalize: lowest-degree nonzero coefficient becomes 1
        let low = f.lowest_degree(eps).expect("nonzero form has a degree");
        let lead = f
            .terms(eps)
            .into_iter()
            .find(|(mask, _)| mask.count_ones() as usize == low)
            .expect("lowest degree has a term");
        let inv = Complex::new(S::one(), S::zero()) / lead.1;
        let rho = f.scale(&inv);
        for e in &basis {
            if !clifford_act(e, &rho).is_zero(eps.max(1e-7)) {
                return Err(SpinorError::NoCanonicalLine);
            }
        }
        if mukai_pairing(&rho, &rho.conjugate()).is_negligible(eps.max(1e-7)) {
            return Err(SpinorError::DegeneratePairing);
        }
        return Ok(rho);
    }
    Err(SpinorError::NoCanonicalLine)
}

/// Type via the spinor route: the lowest nonzero degree of the canonical line.
pub fn spinor_type<S: Scalar>(s: &GenStructure<S>) -> Result<usize, SpinorError> {
    let rho = canonical_line(s)?;
    Ok(rho.lowest_degree(s.eps()).expect("canonical line is nonzero"))
}

/// Annihilator of ρ solved as one linear system; the slow reference route.
///
/// Kept public for tests that cross-check [`canonical_line`] at small dims:
/// the kernel of "v·ρᵢ = 0 for a spanning set of the +i eigenspace" over all
/// 2^m coefficients recovers the same line.
pub fn canonical_line_by_nullspace<S: Scalar>(
    s: &GenStructure<S>,
) -> Result<MixedForm<S>, SpinorError> {
    let m = s.dim_v();
    if m > MAX_DIM_V {
        return Err(SpinorError::DimensionTooLarge(m));
    }
    let eps = s.eps();
    let basis: Vec<CliffordElement<S>> = plus_i_eigenbasis(s)
        .iter()
        .map(|v| CliffordElement::from_coords(v))
        .collect();
    // rows: (basis vector, output mask); cols: input coefficients
    let rows = basis.len() << m;
    let system = Mat::from_fn(rows, 1 << m, |r, c| {
        let (bi, out_mask) = (r >> m, r & ((1 << m) - 1));
        let unit = MixedForm::from_terms(m, &[(c, c_re(S::one()))]);
        clifford_act(&basis[bi], &unit).coeffs[out_mask].clone()
    });
    let kernel = system.nullspace(eps);
    let gen = kernel.first().ok_or(SpinorError::NoCanonicalLine)?;
    let f = MixedForm {
        dim_v: m,
        coeffs: gen.clone(),
    };
    let low = f.lowest_degree(eps).ok_or(SpinorError::NoCanonicalLine)?;
    let lead = f
        .terms(eps)
        .into_iter()
        .find(|(mask, _)| mask.count_ones() as usize == low)
        .expect("lowest degree has a term");
    let inv = Complex::new(S::one(), S::zero()) / lead.1;
    Ok(f.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    type C = Complex<Rat>;

    fn cr(p: i64, q: i64) -> C {
        c_re(rat(p, q))
    }

    fn ci(p: i64, q: i64) -> C {
        C::new(rat(0, 1), rat(p, q))
    }

    #[test]
    fn wedge_signs_and_contractions() {
        // e1 ∧ e2 = −e2 ∧ e1; ι_{e2} e12 = −e1
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b01, 0b01), 0);
        assert_eq!(contract_index(0b11, 1), Some((-1, 0b01)));
        assert_eq!(contract_index(0b11, 0), Some((1, 0b10)));
        assert_eq!(contract_index(0b10, 0), None);
    }

    #[test]
    fn clifford_action_spec_cases() {
        let one = MixedForm::<Rat>::one(2);
        // pure vector on a scalar contracts to zero
        let x = CliffordElement {
            vec: vec![cr(1, 1), cr(0, 1)],
            covec: vec![cr(0, 1); 2],
        };
        assert!(clifford_act(&x, &one).is_zero(0.0));
        // pure covector wedges: (0, ξ)·1 = ξ
        let xi = CliffordElement {
            vec: vec![cr(0, 1); 2],
            covec: vec![cr(0, 1), cr(3, 1)],
        };
        let out = clifford_act(&xi, &one);
        assert_eq!(out.terms(0.0), vec![(0b10, cr(3, 1))]);
    }

    #[test]
    fn clifford_square_is_self_pairing() {
        let rho = MixedForm::from_terms(
            3,
            &[(0b000, cr(1, 1)), (0b011, ci(2, 1)), (0b101, cr(-1, 2)), (0b111, cr(1, 3))],
        );
        let e = CliffordElement {
            vec: vec![cr(1, 1), cr(-2, 1), cr(0, 1)],
            covec: vec![cr(3, 1), cr(1, 2), ci(1, 1)],
        };
        let twice = clifford_act(&e, &clifford_act(&e, &rho));
        let expect = rho.scale(&e.self_pairing());
        assert_eq!(twice, expect);
    }

    #[test]
    fn annihilator_of_constant_is_v() {
        let one = MixedForm::<Rat>::one(2);
        let basis = annihilator(&one, 0.0).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(v[2].is_negligible(0.0) && v[3].is_negligible(0.0));
        }
        assert!(is_pure(&one, 0.0).unwrap());
    }

    #[test]
    fn purity_verdicts() {
        // top form: pure (annihilated by all of V*)
        let top = MixedForm::from_terms(4, &[(0b1111, cr(1, 1))]);
        assert!(is_pure(&top, 0.0).unwrap());
        // e1 + e123 is a B-transform of e1, hence pure
        let mixed = MixedForm::from_terms(4, &[(0b0001, cr(1, 1)), (0b0111, cr(1, 1))]);
        assert!(is_pure(&mixed, 0.0).unwrap());
        // non-decomposable degree-2 and mixed 0+4 forms are not
        let nd = MixedForm::from_terms(4, &[(0b0011, cr(1, 1)), (0b1100, cr(1, 1))]);
        assert!(!is_pure(&nd, 0.0).unwrap());
        let zero_four = MixedForm::from_terms(4, &[(0, cr(1, 1)), (0b1111, cr(1, 1))]);
        assert!(!is_pure(&zero_four, 0.0).unwrap());
    }

    #[test]
    fn mukai_pairing_degenerate_and_volume() {
        let one = MixedForm::<Rat>::one(2);
        let vol = MixedForm::from_terms(2, &[(0b11, cr(7, 1))]);
        assert_eq!(mukai_pairing(&one, &vol), cr(7, 1));
        // degree mismatch: a + b ≠ m leaves no top component
        let e1 = MixedForm::from_terms(2, &[(0b01, cr(1, 1))]);
        assert_eq!(mukai_pairing(&e1, &e1.conjugate()), cr(0, 1));
    }

    #[test]
    fn exp_of_two_form_matches_hand_expansion() {
        let b = TwoForm::from_entries(4, &[(1, 2, rat(1, 1)), (3, 4, rat(1, 1))]).unwrap();
        let e = MixedForm::exp_two_form(&b);
        assert_eq!(
            e.terms(0.0),
            vec![(0, cr(1, 1)), (0b0011, cr(1, 1)), (0b1100, cr(1, 1)), (0b1111, cr(1, 1))]
        );
    }

    #[test]
    fn beta_contraction_lowers_degree_and_is_identity_at_zero() {
        let rho = MixedForm::from_terms(4, &[(0b0011, cr(1, 1)), (0b1111, cr(2, 1))]);
        let zero = Bivector::<Rat>::from_entries(4, &[]).unwrap();
        assert_eq!(beta_on_spinor(&zero, &rho), rho);
        let beta = Bivector::from_entries(4, &[(1, 2, rat(1, 1))]).unwrap();
        let out = beta_on_spinor(&beta, &rho);
        assert_eq!(out.highest_degree(0.0), Some(4));
        assert!(out.lowest_degree(0.0).unwrap() < 2);
    }
}

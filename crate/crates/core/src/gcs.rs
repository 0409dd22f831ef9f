//! Generalized complex structures on V ⊕ V*.
//!
//! A structure is a real 2m×2m matrix 𝓘 in the block order (V-rows, V*-rows)
//! with 𝓘² = −Id that is orthogonal for the canonical split pairing
//! ⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X)). Both conditions are checked whenever a
//! [`GenStructure`] is built, so holding one is proof of validity.
//!
//! Conventions fixed here and used everywhere else:
//! - a complex structure J embeds as diag(J, −Jᵀ);
//! - a 2-form or bivector with Gram matrix G acts as the map Gᵀ (index
//!   lowering resp. raising);
//! - the B-field transform is the conjugation [[1,0],[B,1]] · 𝓘 · [[1,0],[−B,1]],
//!   the β-transform the dual conjugation by [[1,β],[0,1]].

use thiserror::Error;

use crate::mat::Mat;
use crate::scalar::{Coeff, Scalar};

/// Errors from structure constructors and validators.
#[derive(Debug, Error)]
pub enum GcsError {
    #[error("matrix must be square of even size, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("dimension of V must be even, got {0}")]
    OddDimension(usize),
    #[error("matrix does not square to -Id (residual {residual:e})")]
    SquareCheckFailed { residual: f64 },
    #[error("matrix is not orthogonal for the canonical pairing (residual {residual:e})")]
    OrthogonalityCheckFailed { residual: f64 },
    #[error("input does not square to -Id on V")]
    NotComplexOnV,
    #[error("2-form is degenerate")]
    DegenerateForm,
    #[error("matrix must be skew-symmetric")]
    NotSkew,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// The canonical pairing matrix Q = ½·[[0, Id],[Id, 0]] on V ⊕ V*.
#[derive(Clone, Debug)]
pub struct PairingMatrix<S> {
    dim_v: usize,
    q: Mat<S>,
}

impl<S: Scalar> PairingMatrix<S> {
    pub fn new(dim_v: usize) -> Self {
        let half = S::from_ratio(1, 2);
        let mut q = Mat::zeros(2 * dim_v, 2 * dim_v);
        for i in 0..dim_v {
            *q.at_mut(i, dim_v + i) = half.clone();
            *q.at_mut(dim_v + i, i) = half.clone();
        }
        PairingMatrix { dim_v, q }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn q(&self) -> &Mat<S> {
        &self.q
    }
}

/// ⟨u, v⟩ = ½·Σᵢ (uᵢ·v_{m+i} + u_{m+i}·vᵢ) for coordinate vectors on V ⊕ V*.
///
/// Works over any coefficient field, in particular complexified vectors.
pub fn pairing<K: Coeff>(u: &[K], v: &[K]) -> K {
    assert_eq!(u.len(), v.len(), "pairing needs equal lengths");
    assert_eq!(u.len() % 2, 0, "pairing needs a V ⊕ V* vector");
    let m = u.len() / 2;
    let two = K::one() + K::one();
    let mut acc = K::zero();
    for i in 0..m {
        acc = acc + u[i].clone() * v[m + i].clone() + u[m + i].clone() * v[i].clone();
    }
    acc / two
}

/// A real 2-form given by its Gram matrix G with Gᵢⱼ = B(eᵢ, eⱼ).
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<S> {
    dim_v: usize,
    gram: Mat<S>,
}

impl<S: Scalar> TwoForm<S> {
    /// Builds from a Gram matrix; must be square and exactly skew.
    pub fn new(gram: Mat<S>) -> Result<Self, GcsError> {
        if !gram.is_square() {
            return Err(GcsError::BadShape {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.transpose().eq_within(&(-&gram), 0.0) {
            return Err(GcsError::NotSkew);
        }
        Ok(TwoForm {
            dim_v: gram.rows(),
            gram,
        })
    }

    pub fn zero(dim_v: usize) -> Self {
        TwoForm {
            dim_v,
            gram: Mat::zeros(dim_v, dim_v),
        }
    }

    /// Skew Gram from the entries {(i, j, B(eᵢ,eⱼ))} with 1-based i ≠ j.
    pub fn from_entries(dim_v: usize, entries: &[(usize, usize, S)]) -> Result<Self, GcsError> {
        let mut gram = Mat::zeros(dim_v, dim_v);
        for (i, j, v) in entries {
            *gram.at_mut(i - 1, j - 1) = v.clone();
            *gram.at_mut(j - 1, i - 1) = -v.clone();
        }
        TwoForm::new(gram)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn gram(&self) -> &Mat<S> {
        &self.gram
    }

    /// Matrix of the index-lowering map V → V*, X ↦ ι_X B; equals Gᵀ.
    pub fn map_matrix(&self) -> Mat<S> {
        self.gram.transpose()
    }

    pub fn negated(&self) -> Self {
        TwoForm {
            dim_v: self.dim_v,
            gram: -&self.gram,
        }
    }

    pub fn to_float(&self) -> TwoForm<f64> {
        TwoForm {
            dim_v: self.dim_v,
            gram: self.gram.to_float(),
        }
    }
}

/// A bivector given by its Gram matrix G with Gᵢⱼ = β(eⁱ, eʲ).
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector<S> {
    dim_v: usize,
    gram: Mat<S>,
}

impl<S: Scalar> Bivector<S> {
    pub fn new(gram: Mat<S>) -> Result<Self, GcsError> {
        let form = TwoForm::new(gram)?;
        Ok(Bivector {
            dim_v: form.dim_v,
            gram: form.gram,
        })
    }

    pub fn from_entries(dim_v: usize, entries: &[(usize, usize, S)]) -> Result<Self, GcsError> {
        let form = TwoForm::from_entries(dim_v, entries)?;
        Ok(Bivector {
            dim_v: form.dim_v,
            gram: form.gram,
        })
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn gram(&self) -> &Mat<S> {
        &self.gram
    }

    /// Matrix of the index-raising map V* → V, ξ ↦ ι_ξ β; equals Gᵀ.
    pub fn map_matrix(&self) -> Mat<S> {
        self.gram.transpose()
    }
}

/// Validity report for a candidate structure matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub squares_to_minus_id: bool,
    pub square_residual: f64,
    pub pairing_orthogonal: bool,
    pub orthogonality_residual: f64,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.squares_to_minus_id && self.pairing_orthogonal
    }
}

/// Checks the two structure axioms on a raw even-sized square matrix.
pub fn is_generalized_complex<S: Scalar>(mat: &Mat<S>, eps: f64) -> StructureReport {
    assert!(
        mat.is_square() && mat.rows().is_multiple_of(2),
        "candidate must be square of even size"
    );
    let n = mat.rows();
    let square_defect = &mat.matmul(mat) + &Mat::identity(n);
    let q = PairingMatrix::<S>::new(n / 2);
    let orth_defect = &mat.transpose().matmul(q.q()).matmul(mat) - q.q();
    StructureReport {
        squares_to_minus_id: square_defect.is_zero(eps),
        square_residual: square_defect.approx_norm(),
        pairing_orthogonal: orth_defect.is_zero(eps),
        orthogonality_residual: orth_defect.approx_norm(),
    }
}

/// A verified generalized complex structure: 2m×2m, squares to −Id,
/// orthogonal for the canonical pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct GenStructure<S> {
    dim_v: usize,
    mat: Mat<S>,
    eps: f64,
}

impl<S: Scalar> GenStructure<S> {
    /// Verifies both axioms at tolerance `eps` (ignored in exact mode).
    pub fn new(mat: Mat<S>, eps: f64) -> Result<Self, GcsError> {
        if !mat.is_square() || !mat.rows().is_multiple_of(2) {
            return Err(GcsError::BadShape {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let dim_v = mat.rows() / 2;
        if !dim_v.is_multiple_of(2) {
            return Err(GcsError::OddDimension(dim_v));
        }
        let report = is_generalized_complex(&mat, eps);
        if !report.squares_to_minus_id {
            return Err(GcsError::SquareCheckFailed {
                residual: report.square_residual,
            });
        }
        if !report.pairing_orthogonal {
            return Err(GcsError::OrthogonalityCheckFailed {
                residual: report.orthogonality_residual,
            });
        }
        Ok(GenStructure { dim_v, mat, eps })
    }

    /// diag(J, −Jᵀ) for a complex structure J on V.
    pub fn from_complex(j: &Mat<S>, eps: f64) -> Result<Self, GcsError> {
        if !j.is_square() {
            return Err(GcsError::BadShape {
                rows: j.rows(),
                cols: j.cols(),
            });
        }
        let m = j.rows();
        let sq_defect = &j.matmul(j) + &Mat::identity(m);
        if !sq_defect.is_zero(eps) {
            return Err(GcsError::NotComplexOnV);
        }
        let zero = Mat::zeros(m, m);
        let mat = Mat::from_blocks(j, &zero, &zero, &-&j.transpose());
        GenStructure::new(mat, eps)
    }

    /// [[0, −ω⁻¹],[ω, 0]] for an invertible 2-form ω (as index maps).
    pub fn from_symplectic(w: &TwoForm<S>, eps: f64) -> Result<Self, GcsError> {
        let mw = w.map_matrix();
        let mw_inv = mw.inverse(eps).ok_or(GcsError::DegenerateForm)?;
        let m = w.dim_v();
        let zero = Mat::zeros(m, m);
        let mat = Mat::from_blocks(&zero, &-&mw_inv, &mw, &zero);
        GenStructure::new(mat, eps)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// The upper-right m×m block (the Poisson bivector of the structure).
    pub fn poisson_block(&self) -> Mat<S> {
        self.mat.block(0, self.dim_v, self.dim_v, self.dim_v)
    }

    /// Type = m/2 − rank(Poisson block)/2; 0 for symplectic, m/2 for complex.
    pub fn type_of(&self) -> usize {
        let r = self.poisson_block().rank(self.eps);
        debug_assert_eq!((self.dim_v - r) % 2, 0, "Poisson block rank parity");
        (self.dim_v - r) / 2
    }

    /// Conjugation by exp(B) = [[1,0],[B,1]]; preserves the type.
    pub fn b_transform(&self, b: &TwoForm<S>) -> Self {
        assert_eq!(b.dim_v(), self.dim_v, "B-field dimension mismatch");
        let mb = b.map_matrix();
        let conj = shear_lower(&mb);
        let conj_inv = shear_lower(&-&mb);
        let mat = conj.matmul(&self.mat).matmul(&conj_inv);
        GenStructure::new(mat, self.eps).expect("conjugation preserves the structure axioms")
    }

    /// Conjugation by exp(β) = [[1,β],[0,1]].
    pub fn beta_transform(&self, beta: &Bivector<S>) -> Self {
        assert_eq!(beta.dim_v(), self.dim_v, "bivector dimension mismatch");
        let mb = beta.map_matrix();
        let conj = shear_upper(&mb);
        let conj_inv = shear_upper(&-&mb);
        let mat = conj.matmul(&self.mat).matmul(&conj_inv);
        GenStructure::new(mat, self.eps).expect("conjugation preserves the structure axioms")
    }

    /// −𝓘, again a verified structure (the antipode on the sphere of a family).
    pub fn negated(&self) -> Self {
        GenStructure {
            dim_v: self.dim_v,
            mat: -&self.mat,
            eps: self.eps,
        }
    }

    pub fn to_float(&self, eps: f64) -> GenStructure<f64> {
        GenStructure {
            dim_v: self.dim_v,
            mat: self.mat.to_float(),
            eps,
        }
    }
}

/// [[Id, 0],[M, Id]] acting on V ⊕ V*.
fn shear_lower<S: Scalar>(m: &Mat<S>) -> Mat<S> {
    let n = m.rows();
    let id = Mat::identity(n);
    Mat::from_blocks(&id, &Mat::zeros(n, n), m, &id)
}

/// [[Id, M],[0, Id]] acting on V ⊕ V*.
fn shear_upper<S: Scalar>(m: &Mat<S>) -> Mat<S> {
    let n = m.rows();
    let id = Mat::identity(n);
    Mat::from_blocks(&id, m, &Mat::zeros(n, n), &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn std_j(m: usize) -> Mat<Rat> {
        // block-diagonal rotation: J e_{2k+1} = e_{2k+2}
        let mut j = Mat::zeros(m, m);
        for k in 0..m / 2 {
            *j.at_mut(2 * k, 2 * k + 1) = rat(-1, 1);
            *j.at_mut(2 * k + 1, 2 * k) = rat(1, 1);
        }
        j
    }

    fn std_omega(m: usize) -> TwoForm<Rat> {
        let entries: Vec<(usize, usize, Rat)> =
            (0..m / 2).map(|k| (2 * k + 1, 2 * k + 2, rat(1, 1))).collect();
        TwoForm::from_entries(m, &entries).unwrap()
    }

    #[test]
    fn from_complex_blocks_and_type() {
        let s = GenStructure::from_complex(&std_j(2), 0.0).unwrap();
        assert_eq!(s.mat().block(0, 0, 2, 2), std_j(2));
        assert_eq!(s.mat().block(2, 2, 2, 2), -&std_j(2).transpose());
        assert!(s.mat().block(0, 2, 2, 2).is_zero(0.0));
        assert_eq!(s.type_of(), 1);
        assert_eq!(GenStructure::from_complex(&std_j(4), 0.0).unwrap().type_of(), 2);
    }

    #[test]
    fn from_complex_rejects_non_complex() {
        let id = Mat::<Rat>::identity(2);
        assert!(matches!(
            GenStructure::from_complex(&id, 0.0),
            Err(GcsError::NotComplexOnV)
        ));
    }

    #[test]
    fn from_symplectic_type_zero_and_degenerate() {
        let s = GenStructure::from_symplectic(&std_omega(2), 0.0).unwrap();
        assert_eq!(s.type_of(), 0);
        let degenerate = TwoForm::<Rat>::zero(2);
        assert!(matches!(
            GenStructure::from_symplectic(&degenerate, 0.0),
            Err(GcsError::DegenerateForm)
        ));
    }

    #[test]
    fn b_transform_identity_and_inverse() {
        let s = GenStructure::from_symplectic(&std_omega(4), 0.0).unwrap();
        let zero = TwoForm::zero(4);
        assert_eq!(s.b_transform(&zero), s);
        let b = TwoForm::from_entries(4, &[(1, 3, rat(2, 1)), (2, 4, rat(-1, 3))]).unwrap();
        let round_trip = s.b_transform(&b).b_transform(&b.negated());
        assert_eq!(round_trip, s);
        assert_eq!(s.b_transform(&b).type_of(), s.type_of());
    }

    #[test]
    fn b_transform_of_symplectic_matches_block_formula() {
        // [[ω⁻¹B, −ω⁻¹],[ω + Bω⁻¹B, −Bω⁻¹]] in map-matrix form.
        let w = std_omega(4);
        let b = TwoForm::from_entries(4, &[(1, 2, rat(3, 1)), (3, 4, rat(-2, 1))]).unwrap();
        let s = GenStructure::from_symplectic(&w, 0.0).unwrap().b_transform(&b);
        let mw = w.map_matrix();
        let mwi = mw.inverse(0.0).unwrap();
        let mb = b.map_matrix();
        let expect = Mat::from_blocks(
            &mwi.matmul(&mb),
            &-&mwi,
            &(&mw + &mb.matmul(&mwi).matmul(&mb)),
            &-&mb.matmul(&mwi),
        );
        assert_eq!(*s.mat(), expect);
    }

    #[test]
    fn beta_transform_round_trip_and_block() {
        let j = std_j(4);
        let s = GenStructure::from_complex(&j, 0.0).unwrap();
        let beta = Bivector::from_entries(4, &[(1, 3, rat(1, 1))]).unwrap();
        let t = s.beta_transform(&beta);
        // upper-right block becomes −(J·β + β·Jᵀ) under the shear conjugation
        let mb = beta.map_matrix();
        let expect = -&(&j.matmul(&mb) + &mb.matmul(&j.transpose()));
        assert_eq!(t.poisson_block(), expect);
        assert!(!t.poisson_block().is_zero(0.0));
        let back = t.beta_transform(&Bivector::new(-beta.gram()).unwrap());
        assert_eq!(back, s);
    }

    #[test]
    fn validity_report_on_identity() {
        let report = is_generalized_complex(&Mat::<Rat>::identity(4), 0.0);
        assert!(!report.squares_to_minus_id);
        assert!(report.pairing_orthogonal);
    }

    #[test]
    fn rejects_odd_dim_v() {
        // 6×6 with dim_v = 3: the Poisson block of a valid structure is skew,
        // so an odd V never carries one; the constructor refuses up front.
        let mut m = Mat::<Rat>::zeros(6, 6);
        for i in 0..3 {
            *m.at_mut(i, 3 + i) = rat(-1, 1);
            *m.at_mut(3 + i, i) = rat(1, 1);
        }
        assert!(matches!(
            GenStructure::new(m, 0.0),
            Err(GcsError::OddDimension(3))
        ));
    }

    #[test]
    fn pairing_matches_matrix_form() {
        let q = PairingMatrix::<Rat>::new(2);
        let u = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)];
        let v = vec![rat(5, 1), rat(6, 1), rat(7, 1), rat(8, 1)];
        let via_matrix = q
            .q()
            .apply(&v)
            .iter()
            .zip(&u)
            .fold(Rat::from_i64(0), |acc, (x, y)| acc + x.clone() * y.clone());
        assert_eq!(pairing(&u, &v), via_matrix);
    }
}

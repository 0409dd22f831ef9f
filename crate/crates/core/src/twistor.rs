//! The λ-parametrized view of a sphere family, holomorphic bases, the cubic
//! integrability certificate, and the twistor-space type report.
//!
//! A point λ ∈ ℂ∪{∞} maps to the sphere by stereographic projection with
//! St(0) = (1,0,0) and St(i) = (0,1,0), so 𝓘_λ interpolates the family with
//! 𝓘₀ = 𝓘 and 𝓘_∞ = −𝓘. Along the (1,0)-directions the Nijenhuis pairing
//! is a cubic polynomial in λ; its four coefficients per basis triple are
//! extracted by evaluation at λ ∈ {1, 2, 3, 5} and a Vandermonde solve, and
//! they all vanish exactly when every 𝓘_λ is integrable.

use num::Complex;
use thiserror::Error;

use crate::gcs::{pairing, GenStructure};
use crate::hyper::{FamilyError, SphereFamily, TypeMap};
use crate::lie::DoubleAlgebra;
use crate::mat::Mat;
use crate::scalar::{Coeff, Scalar};
use crate::spinor::plus_i_eigenbasis;

type CVec<S> = Vec<Complex<S>>;

#[derive(Debug, Error)]
pub enum TwistorError {
    #[error("could not assemble an adapted basis; the family pair does not anticommute cleanly")]
    AdaptedBasisFailed,
    #[error("the double has dimension {double_dim}, the family needs {expected}")]
    DimensionMismatch { double_dim: usize, expected: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A point of ℂ∪{∞} parametrizing the family sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum Lambda<S> {
    Finite(Complex<S>),
    Infinity,
}

impl<S: Scalar> Lambda<S> {
    pub fn real(x: S) -> Self {
        Lambda::Finite(Complex::new(x, S::zero()))
    }

    pub fn i() -> Self {
        Lambda::Finite(Complex::new(S::zero(), S::one()))
    }
}

/// Stereographic image of λ = x + iy on the unit sphere:
/// ((1−|λ|²)/(1+|λ|²), 2y/(1+|λ|²), 2x/(1+|λ|²)).
pub fn stereographic<S: Scalar>(lam: &Complex<S>) -> (S, S, S) {
    let r2 = lam.re.clone() * lam.re.clone() + lam.im.clone() * lam.im.clone();
    let den = S::one() + r2.clone();
    (
        (S::one() - r2) / den.clone(),
        (S::from_i64(2) * lam.im.clone()) / den.clone(),
        (S::from_i64(2) * lam.re.clone()) / den,
    )
}

/// Inverse of [`stereographic`]; the pole (−1, 0, 0) maps to ∞.
pub fn stereographic_inverse<S: Scalar>(a: &S, b: &S, c: &S) -> Lambda<S> {
    let den = S::one() + a.clone();
    if den.is_negligible(0.0) {
        return Lambda::Infinity;
    }
    Lambda::Finite(Complex::new(c.clone() / den.clone(), b.clone() / den))
}

/// A sphere family read through the λ coordinate.
#[derive(Clone, Debug)]
pub struct LambdaChart<S> {
    family: SphereFamily<S>,
}

/// The fixed (X_i, Y_i) pairs at λ = 0 with Y_i = conj(𝓙′X_i); the
/// holomorphic basis at every λ is built from these.
#[derive(Clone, Debug)]
pub struct AdaptedBasis<S> {
    pub pairs: Vec<(CVec<S>, CVec<S>)>,
}

impl<S: Scalar> LambdaChart<S> {
    pub fn new(family: SphereFamily<S>) -> Self {
        LambdaChart { family }
    }

    pub fn family(&self) -> &SphereFamily<S> {
        &self.family
    }

    /// The family member at λ; ∞ gives −𝓘.
    pub fn lambda_structure(&self, lam: &Lambda<S>) -> Result<GenStructure<S>, FamilyError> {
        match lam {
            Lambda::Infinity => Ok(self.family.i1().negated()),
            Lambda::Finite(l) => {
                let (a, b, c) = stereographic(l);
                self.family.evaluate(&a, &b, &c)
            }
        }
    }

    /// Greedy construction of the adapted pairs from the +i eigenbasis of 𝓘.
    pub fn adapted_basis(&self) -> Result<AdaptedBasis<S>, TwistorError> {
        let eigen = plus_i_eigenbasis(self.family.i1());
        let jc = self.family.j().mat().complexify();
        let eps = self.family.eps();
        let want = self.family.dim_v() / 2;
        let mut pairs = Vec::with_capacity(want);
        let mut chosen: Vec<CVec<S>> = Vec::new();
        for x in eigen {
            if pairs.len() == want {
                break;
            }
            if !chosen.is_empty() && !extends_independent(&chosen, &x, eps) {
                continue;
            }
            let y: CVec<S> = jc.apply(&x).iter().map(|z| z.conj()).collect();
            let mut with_x = chosen.clone();
            with_x.push(x.clone());
            if !extends_independent(&with_x, &y, eps) {
                continue;
            }
            chosen.push(x.clone());
            chosen.push(y.clone());
            pairs.push((x, y));
        }
        if pairs.len() != want {
            return Err(TwistorError::AdaptedBasisFailed);
        }
        Ok(AdaptedBasis { pairs })
    }

    /// Basis of the +i eigenspace of 𝓘_λ: X_i − λ·conj(Y_i), Y_i + λ·conj(X_i).
    pub fn holomorphic_basis(&self, lam: &Complex<S>) -> Result<Vec<CVec<S>>, TwistorError> {
        Ok(holomorphic_basis_from(&self.adapted_basis()?, lam))
    }
}

/// The λ-basis from fixed adapted pairs; output order (X₁^λ, Y₁^λ, X₂^λ, …).
pub fn holomorphic_basis_from<S: Scalar>(
    ab: &AdaptedBasis<S>,
    lam: &Complex<S>,
) -> Vec<CVec<S>> {
    let mut out = Vec::with_capacity(2 * ab.pairs.len());
    for (x, y) in &ab.pairs {
        out.push(combine(x, y, &-lam.clone()));
        out.push(combine(y, x, lam));
    }
    out
}

// first + lam·conj(second)
fn combine<S: Scalar>(first: &CVec<S>, second: &CVec<S>, lam: &Complex<S>) -> CVec<S> {
    first
        .iter()
        .zip(second)
        .map(|(f, s)| f.clone() + lam.clone() * s.conj())
        .collect()
}

// Whether v lies outside the span of `set` (all assumed independent).
fn extends_independent<S: Scalar>(set: &[CVec<S>], v: &CVec<S>, eps: f64) -> bool {
    let mut rows = set.to_vec();
    rows.push(v.clone());
    let k = rows.len();
    Mat::from_rows(rows).rank(eps) == k
}

/// Cubic coefficients N₀..N₃ of ⟨[U_λ, V_λ], W_λ⟩ for one basis triple.
#[derive(Clone, Debug)]
pub struct TripleCertificate<S> {
    /// 0-based indices into the holomorphic basis.
    pub triple: (usize, usize, usize),
    /// Coefficients of λ⁰..λ³.
    pub coeffs: [Complex<S>; 4],
}

impl<S: Scalar> TripleCertificate<S> {
    /// Horner evaluation of the cubic at λ.
    pub fn eval(&self, lam: &Complex<S>) -> Complex<S> {
        let mut acc = self.coeffs[3].clone();
        for k in (0..3).rev() {
            acc = acc * lam.clone() + self.coeffs[k].clone();
        }
        acc
    }
}

/// The certificate over all basis triples; all-zero ⇔ the whole family is
/// integrable.
#[derive(Clone, Debug)]
pub struct PolynomialCertificate<S> {
    pub entries: Vec<TripleCertificate<S>>,
}

impl<S: Scalar> PolynomialCertificate<S> {
    pub fn all_zero(&self, eps: f64) -> bool {
        self.entries
            .iter()
            .all(|e| e.coeffs.iter().all(|c| c.is_negligible(eps)))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|e| e.coeffs.iter())
            .map(|c| c.re.approx().hypot(c.im.approx()))
            .fold(0.0, f64::max)
    }
}

/// λ values used for coefficient extraction (0 and i are distinguished
/// points of the chart, so small real values are used instead).
pub const CERTIFICATE_LAMBDAS: [i64; 4] = [1, 2, 3, 5];

/// ⟨[U,V],W⟩ over all holomorphic-basis triples at one λ.
pub fn certificate_values_at<S: Scalar>(
    d: &DoubleAlgebra<S>,
    ab: &AdaptedBasis<S>,
    lam: &Complex<S>,
) -> Vec<Complex<S>> {
    let hb = holomorphic_basis_from(ab, lam);
    let n = hb.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                out.push(pairing(&d.bracket_complex(&hb[x], &hb[y]), &hb[z]));
            }
        }
    }
    out
}

/// Extracts N₀..N₃ per basis triple by evaluating at four λ values and
/// solving the Vandermonde system.
pub fn polynomial_certificate<S: Scalar>(
    d: &DoubleAlgebra<S>,
    chart: &LambdaChart<S>,
) -> Result<PolynomialCertificate<S>, TwistorError> {
    let expected = 2 * chart.family().dim_v();
    if d.dim() != expected {
        return Err(TwistorError::DimensionMismatch {
            double_dim: d.dim(),
            expected,
        });
    }
    let ab = chart.adapted_basis()?;
    let eps = chart.family().eps();
    let lams: Vec<S> = CERTIFICATE_LAMBDAS.iter().map(|&l| S::from_i64(l)).collect();
    let values: Vec<Vec<Complex<S>>> = lams
        .iter()
        .map(|l| certificate_values_at(d, &ab, &Complex::new(l.clone(), S::zero())))
        .collect();
    let vandermonde = Mat::from_fn(4, 4, |r, c| {
        let mut p = S::one();
        for _ in 0..c {
            p = p * lams[r].clone();
        }
        p
    });
    let vinv = vandermonde
        .inverse(eps)
        .expect("distinct evaluation points give an invertible system")
        .complexify();
    let n = chart.family().dim_v();
    let mut entries = Vec::new();
    let mut t = 0;
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                let f: Vec<Complex<S>> = (0..4).map(|r| values[r][t].clone()).collect();
                let sol = vinv.apply(&f);
                entries.push(TripleCertificate {
                    triple: (x, y, z),
                    coeffs: [
                        sol[0].clone(),
                        sol[1].clone(),
                        sol[2].clone(),
                        sol[3].clone(),
                    ],
                });
                t += 1;
            }
        }
    }
    Ok(PolynomialCertificate { entries })
}

/// Qualitative classification of a family from its fiber types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Every fiber has maximal (complex) type.
    BTwistedHypercomplex,
    /// Some fiber has type 0 (symplectic type occurs).
    Hypersymplectic,
    Intermediate,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::BTwistedHypercomplex => "B-twisted hypercomplex",
            Regime::Hypersymplectic => "hypersymplectic",
            Regime::Intermediate => "intermediate/unclassified",
        })
    }
}

/// One sampled point with fiber and twistor type.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorSample {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub fiber_type: usize,
    pub twistor_type: usize,
    pub exact: bool,
}

/// Type map over the twistor space M×S².
#[derive(Clone, Debug)]
pub struct TwistorReport {
    pub samples: Vec<TwistorSample>,
    pub min_twistor_type: usize,
    pub max_twistor_type: usize,
    pub regime: Regime,
    /// True when the S² factor carries its symplectic structure and
    /// contributes 0 to the type; the default complex factor contributes 1.
    pub s2_symplectic: bool,
}

/// Samples the family sphere and augments each fiber type with the S²
/// contribution; the summary classifies extreme regimes.
pub fn twistor_type_report<S: Scalar>(
    f: &SphereFamily<S>,
    grid: usize,
    s2_symplectic: bool,
    float_eps: f64,
) -> TwistorReport {
    let tm: TypeMap = f.family_typemap(grid, float_eps);
    let offset = if s2_symplectic { 0 } else { 1 };
    let samples: Vec<TwistorSample> = tm
        .samples
        .iter()
        .map(|s| TwistorSample {
            a: s.a,
            b: s.b,
            c: s.c,
            fiber_type: s.ty,
            twistor_type: s.ty + offset,
            exact: s.exact,
        })
        .collect();
    let max_fiber = f.dim_v() / 2;
    let fiber_min = samples.iter().map(|s| s.fiber_type).min().unwrap_or(0);
    let fiber_max = samples.iter().map(|s| s.fiber_type).max().unwrap_or(0);
    let regime = if fiber_min == max_fiber && fiber_max == max_fiber {
        Regime::BTwistedHypercomplex
    } else if fiber_min == 0 {
        Regime::Hypersymplectic
    } else {
        Regime::Intermediate
    };
    TwistorReport {
        min_twistor_type: samples.iter().map(|s| s.twistor_type).min().unwrap_or(0),
        max_twistor_type: samples.iter().map(|s| s.twistor_type).max().unwrap_or(0),
        samples,
        regime,
        s2_symplectic,
    }
}

//! S²-families of generalized complex structures and the symplectic-pair
//! condition systems.
//!
//! An anticommuting pair (𝓘₁, 𝓘₂) with 𝓘₁𝓘₂ + 𝓘₂𝓘₁ = 2p·Id, |p| < 1,
//! generates the family {a𝓘 + b𝓙′ + c𝓚} over the unit sphere, where
//! 𝓙′ = (𝓘₂ + p𝓘₁)/√(1−p²) and 𝓚 = 𝓘𝓙′. This module builds such families,
//! samples their type over S², and verifies the condition systems tied to
//! symplectic pairs: the A/D equations, the four-equation system equivalent
//! to them, maximal-type detection, and the B-twisted holomorphic
//! symplectic system.

use thiserror::Error;

use crate::gcs::{GcsError, GenStructure, TwoForm};
use crate::mat::Mat;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("family construction needs dim_v divisible by 4, got {0}")]
    DimensionNotMultipleOf4(usize),
    #[error("the two structures act on different spaces")]
    DimensionMismatch,
    #[error("anticommutator is not a scalar multiple of the identity (residual {residual:e})")]
    AnticommutatorNotScalar { residual: f64 },
    #[error("anticommutator scalar p = {p} lies outside (-1, 1)")]
    ScalarOutOfRange { p: f64 },
    #[error("sqrt(1 - p^2) has no exact representation; convert the pair to float mode")]
    SqrtNotRepresentable,
    #[error("({a}, {b}, {c}) is not a unit vector")]
    NotUnit { a: f64, b: f64, c: f64 },
    #[error(transparent)]
    Structure(#[from] GcsError),
}

/// Outcome of testing 𝓘₁𝓘₂ + 𝓘₂𝓘₁ = 2p·Id.
#[derive(Clone, Debug)]
pub enum AnticommutatorOutcome<S> {
    /// The anticommutator is 2p·Id; `in_range` records |p| < 1.
    Scalar { p: S, in_range: bool },
    /// Not a scalar multiple of the identity.
    NotScalar { residual: f64 },
}

/// Classifies the anticommutator of a verified pair.
pub fn anticommutator_outcome<S: Scalar>(
    i1: &GenStructure<S>,
    i2: &GenStructure<S>,
) -> AnticommutatorOutcome<S> {
    assert_eq!(i1.dim_v(), i2.dim_v(), "pair must share a space");
    let eps = i1.eps();
    let ac = &i1.mat().matmul(i2.mat()) + &i2.mat().matmul(i1.mat());
    let two_p = ac.at(0, 0).clone();
    let n = ac.rows();
    let defect = &ac - &Mat::identity(n).scale(&two_p);
    if !defect.is_zero(eps) {
        return AnticommutatorOutcome::NotScalar {
            residual: defect.approx_norm(),
        };
    }
    let p = two_p / S::from_i64(2);
    let in_range = p.abs_val() < S::one();
    AnticommutatorOutcome::Scalar { p, in_range }
}

/// The scalar p when the pair anticommutes up to 2p·Id with |p| < 1.
pub fn anticommutator_scalar<S: Scalar>(
    i1: &GenStructure<S>,
    i2: &GenStructure<S>,
) -> Option<S> {
    match anticommutator_outcome(i1, i2) {
        AnticommutatorOutcome::Scalar { p, in_range: true } => Some(p),
        _ => None,
    }
}

/// The sphere family generated by an admissible pair.
///
/// Stores the raw inputs and the orthonormalized triple; `evaluate` walks the
/// unit sphere of combinations.
#[derive(Clone, Debug)]
pub struct SphereFamily<S> {
    i1: GenStructure<S>,
    i2: GenStructure<S>,
    j: GenStructure<S>,
    k: GenStructure<S>,
    p: S,
}

/// Builds the family; fails unless dim_v ≡ 0 (mod 4) and the pair
/// anticommutes up to 2p·Id with |p| < 1.
pub fn build_family<S: Scalar>(
    i1: &GenStructure<S>,
    i2: &GenStructure<S>,
) -> Result<SphereFamily<S>, FamilyError> {
    if i1.dim_v() != i2.dim_v() {
        return Err(FamilyError::DimensionMismatch);
    }
    if !i1.dim_v().is_multiple_of(4) {
        return Err(FamilyError::DimensionNotMultipleOf4(i1.dim_v()));
    }
    let p = match anticommutator_outcome(i1, i2) {
        AnticommutatorOutcome::NotScalar { residual } => {
            return Err(FamilyError::AnticommutatorNotScalar { residual })
        }
        AnticommutatorOutcome::Scalar { p, in_range: false } => {
            return Err(FamilyError::ScalarOutOfRange { p: p.approx() })
        }
        AnticommutatorOutcome::Scalar { p, in_range: true } => p,
    };
    let one_minus_p2 = S::one() - p.clone() * p.clone();
    let s = one_minus_p2
        .try_sqrt()
        .ok_or(FamilyError::SqrtNotRepresentable)?;
    let j_mat = (i2.mat() + &i1.mat().scale(&p)).scale(&(S::one() / s));
    let j = GenStructure::new(j_mat, i1.eps())?;
    let k = GenStructure::new(i1.mat().matmul(j.mat()), i1.eps())?;
    let eps = i1.eps();
    for (x, y) in [(i1, &j), (i1, &k), (&j, &k)] {
        let anti = &x.mat().matmul(y.mat()) + &y.mat().matmul(x.mat());
        assert!(anti.is_zero(eps), "orthonormalized triple must anticommute");
    }
    Ok(SphereFamily {
        i1: i1.clone(),
        i2: i2.clone(),
        j,
        k,
        p,
    })
}

impl<S: Scalar> SphereFamily<S> {
    pub fn dim_v(&self) -> usize {
        self.i1.dim_v()
    }

    pub fn i1(&self) -> &GenStructure<S> {
        &self.i1
    }

    /// The raw second input (not orthonormalized).
    pub fn i2_raw(&self) -> &GenStructure<S> {
        &self.i2
    }

    /// 𝓙′ = (𝓘₂ + p𝓘₁)/√(1−p²).
    pub fn j(&self) -> &GenStructure<S> {
        &self.j
    }

    /// 𝓚 = 𝓘𝓙′.
    pub fn k(&self) -> &GenStructure<S> {
        &self.k
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    pub fn eps(&self) -> f64 {
        self.i1.eps()
    }

    /// The member a𝓘 + b𝓙′ + c𝓚 at a unit (a, b, c); verified on return.
    pub fn evaluate(&self, a: &S, b: &S, c: &S) -> Result<GenStructure<S>, FamilyError> {
        let unit_defect =
            a.clone() * a.clone() + b.clone() * b.clone() + c.clone() * c.clone() - S::one();
        if !unit_defect.is_negligible(self.eps().max(1e-12)) {
            return Err(FamilyError::NotUnit {
                a: a.approx(),
                b: b.approx(),
                c: c.approx(),
            });
        }
        let mat = &(&self.i1.mat().scale(a) + &self.j.mat().scale(b)) + &self.k.mat().scale(c);
        Ok(GenStructure::new(mat, self.eps())?)
    }

    pub fn to_float(&self, eps: f64) -> SphereFamily<f64> {
        SphereFamily {
            i1: self.i1.to_float(eps),
            i2: self.i2.to_float(eps),
            j: self.j.to_float(eps),
            k: self.k.to_float(eps),
            p: self.p.approx(),
        }
    }

    /// Samples the fiber type over S²: six exact axis points plus a
    /// deterministic Fibonacci lattice of ~grid² float samples.
    pub fn family_typemap(&self, grid: usize, float_eps: f64) -> TypeMap {
        assert!(grid >= 2, "grid must be at least 2");
        let mut samples = Vec::with_capacity(grid * grid + 6);
        let float_family = self.to_float(float_eps);
        for (a, b, c) in fibonacci_sphere(grid * grid) {
            let member = float_family
                .evaluate(&a, &b, &c)
                .expect("lattice points lie on the unit sphere");
            samples.push(TypeSample {
                a,
                b,
                c,
                ty: member.type_of(),
                exact: false,
            });
        }
        for (a, b, c) in axis_points::<S>() {
            let member = self
                .evaluate(&a, &b, &c)
                .expect("axis points lie on the unit sphere");
            samples.push(TypeSample {
                a: a.approx(),
                b: b.approx(),
                c: c.approx(),
                ty: member.type_of(),
                exact: S::EXACT,
            });
        }
        TypeMap { samples }
    }
}

/// (±1,0,0), (0,±1,0), (0,0,±1) in a fixed order.
pub fn axis_points<S: Scalar>() -> Vec<(S, S, S)> {
    let o = S::one;
    let z = S::zero;
    vec![
        (o(), z(), z()),
        (-o(), z(), z()),
        (z(), o(), z()),
        (z(), -o(), z()),
        (z(), z(), o()),
        (z(), z(), -o()),
    ]
}

/// Deterministic quasi-uniform unit sphere sample (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<(f64, f64, f64)> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let golden = (1.0 / phi) % 1.0;
    (0..n)
        .map(|k| {
            let z = 1.0 - (2 * k + 1) as f64 / n as f64;
            let r = (1.0 - z * z).sqrt();
            let theta = 2.0 * std::f64::consts::PI * k as f64 * golden;
            (r * theta.cos(), r * theta.sin(), z)
        })
        .collect()
}

/// One sampled point of a type map.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeSample {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub ty: usize,
    /// True when the type was computed in exact arithmetic.
    pub exact: bool,
}

/// Sampled assignment (a, b, c) ↦ type over the family sphere.
#[derive(Clone, Debug, Default)]
pub struct TypeMap {
    pub samples: Vec<TypeSample>,
}

impl TypeMap {
    pub fn max_type(&self) -> Option<usize> {
        self.samples.iter().map(|s| s.ty).max()
    }

    pub fn count_of_type(&self, ty: usize) -> usize {
        self.samples.iter().filter(|s| s.ty == ty).count()
    }
}

/// ω₁, ω₂, B together with p and the derived matrices A = Bω₂⁻¹ and
/// D = ω₁ω₂⁻¹ + p·Id (all as index maps).
#[derive(Clone, Debug)]
pub struct HypersymplecticData<S> {
    pub w1: TwoForm<S>,
    pub w2: TwoForm<S>,
    pub b: TwoForm<S>,
    pub p: S,
    a_mat: Mat<S>,
    d_mat: Mat<S>,
}

impl<S: Scalar> HypersymplecticData<S> {
    pub fn new(
        w1: TwoForm<S>,
        w2: TwoForm<S>,
        b: TwoForm<S>,
        p: S,
        eps: f64,
    ) -> Result<Self, GcsError> {
        let m2_inv = w2
            .map_matrix()
            .inverse(eps)
            .ok_or(GcsError::DegenerateForm)?;
        let a_mat = b.map_matrix().matmul(&m2_inv);
        let d_mat = &w1.map_matrix().matmul(&m2_inv) + &Mat::identity(w1.dim_v()).scale(&p);
        Ok(HypersymplecticData {
            w1,
            w2,
            b,
            p,
            a_mat,
            d_mat,
        })
    }

    pub fn a_mat(&self) -> &Mat<S> {
        &self.a_mat
    }

    pub fn d_mat(&self) -> &Mat<S> {
        &self.d_mat
    }
}

/// Verdicts for the hypersymplectic condition systems.
#[derive(Clone, Debug)]
pub struct HypersymplecticReport {
    /// A² + D² = (p² − 1)·Id.
    pub ad_square: bool,
    /// AD = DA.
    pub ad_commute: bool,
    /// The four equations of the equivalent system, in order.
    pub system: [bool; 4],
    pub residuals: [f64; 6],
}

impl HypersymplecticReport {
    pub fn ad_verdict(&self) -> bool {
        self.ad_square && self.ad_commute
    }

    pub fn system_verdict(&self) -> bool {
        self.system.iter().all(|&b| b)
    }

    /// The two formulations are proven equivalent; disagreement means a bug.
    pub fn verdicts_agree(&self) -> bool {
        self.ad_verdict() == self.system_verdict()
    }
}

/// Checks A² + D² = (p²−1)Id, AD = DA, and the equivalent four-equation
/// system on ω₁, ω₂, B; both verdicts are reported independently.
pub fn check_hypersymplectic<S: Scalar>(
    h: &HypersymplecticData<S>,
    eps: f64,
) -> Result<HypersymplecticReport, GcsError> {
    let n = h.w1.dim_v();
    let id = Mat::<S>::identity(n);
    let a = &h.a_mat;
    let d = &h.d_mat;
    let p2_minus_1 = h.p.clone() * h.p.clone() - S::one();
    let sq_defect = &(&a.matmul(a) + &d.matmul(d)) - &id.scale(&p2_minus_1);
    let comm_defect = &a.matmul(d) - &d.matmul(a);

    let m1 = h.w1.map_matrix();
    let m2 = h.w2.map_matrix();
    let mb = h.b.map_matrix();
    let m1i = m1.inverse(eps).ok_or(GcsError::DegenerateForm)?;
    let m2i = m2.inverse(eps).ok_or(GcsError::DegenerateForm)?;
    let two_p = id.scale(&(h.p.clone() * S::from_i64(2)));
    // ω₂⁻¹ω₁ + ω₁⁻¹ω₂ + ω₁⁻¹Bω₂⁻¹B = −2p·Id
    let e1 = &(&(&m2i.matmul(&m1) + &m1i.matmul(&m2))
        + &m1i.matmul(&mb).matmul(&m2i).matmul(&mb))
        + &two_p;
    // ω₁ω₂⁻¹ + ω₂ω₁⁻¹ + Bω₂⁻¹Bω₁⁻¹ = −2p·Id
    let e2 = &(&(&m1.matmul(&m2i) + &m2.matmul(&m1i))
        + &mb.matmul(&m2i).matmul(&mb).matmul(&m1i))
        + &two_p;
    // ω₁⁻¹Bω₂⁻¹ = ω₂⁻¹Bω₁⁻¹
    let e3 = &m1i.matmul(&mb).matmul(&m2i) - &m2i.matmul(&mb).matmul(&m1i);
    // ω₁ω₂⁻¹B = Bω₂⁻¹ω₁
    let e4 = &m1.matmul(&m2i).matmul(&mb) - &mb.matmul(&m2i).matmul(&m1);
    Ok(HypersymplecticReport {
        ad_square: sq_defect.is_zero(eps),
        ad_commute: comm_defect.is_zero(eps),
        system: [
            e1.is_zero(eps),
            e2.is_zero(eps),
            e3.is_zero(eps),
            e4.is_zero(eps),
        ],
        residuals: [
            sq_defect.approx_norm(),
            comm_defect.approx_norm(),
            e1.approx_norm(),
            e2.approx_norm(),
            e3.approx_norm(),
            e4.approx_norm(),
        ],
    })
}

/// A family built from a symplectic pair: 𝓘₁ from ω₁ and 𝓘₂ the B-transform
/// of the ω₂ structure. Carries the forms so maximal-type detection can solve
/// the linear condition c·B = a·ω₂ + b·ω₁.
#[derive(Clone, Debug)]
pub struct SymplecticPairFamily<S> {
    family: SphereFamily<S>,
    w1: TwoForm<S>,
    w2: TwoForm<S>,
    b: TwoForm<S>,
}

/// A detected maximal-type point with its holomorphic-symplectic data.
#[derive(Clone, Debug)]
pub struct MaxTypeSolution<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    /// False when the unit normalization has no exact square root; the
    /// coefficients are then the unnormalized kernel solution.
    pub normalized: bool,
    /// Type of the detected member, re-computed from the Poisson rank.
    pub confirmed_type: usize,
    /// γ = (αβ + p)/(α² + 1) for B = αω₁ + βω₂, when c ≠ 0.
    pub gamma: Option<S>,
    /// θ = γ² − (1+β²)/(1+α²), negative for genuine solutions.
    pub theta: Option<S>,
    /// Whether (ω₂⁻¹ω₁ + γ·Id)² = θ·Id holds.
    pub holosymp_holds: Option<bool>,
}

impl<S: Scalar> SymplecticPairFamily<S> {
    /// 𝓘₁ = structure of ω₁; 𝓘₂ = exp(B)-transform of the ω₂ structure.
    pub fn build(
        w1: &TwoForm<S>,
        w2: &TwoForm<S>,
        b: &TwoForm<S>,
        eps: f64,
    ) -> Result<Self, FamilyError> {
        let i1 = GenStructure::from_symplectic(w1, eps)?;
        let i2 = GenStructure::from_symplectic(w2, eps)?.b_transform(b);
        let family = build_family(&i1, &i2)?;
        Ok(SymplecticPairFamily {
            family,
            w1: w1.clone(),
            w2: w2.clone(),
            b: b.clone(),
        })
    }

    pub fn family(&self) -> &SphereFamily<S> {
        &self.family
    }

    /// Finds a family member of maximal type m/2, if any.
    ///
    /// Solves a′ω₂ + b′ω₁ − c′B = 0 entrywise (the condition for the member's
    /// Poisson block to vanish), converts the kernel solution to sphere
    /// coordinates, and confirms by recomputing the type. Returns `None` when
    /// only the trivial solution exists or the candidate fails confirmation.
    pub fn detect_max_type(&self) -> Option<MaxTypeSolution<S>> {
        let m = self.w1.dim_v();
        let eps = self.family.eps();
        let mut rows = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in (i + 1)..m {
                rows.push(vec![
                    self.w2.gram().at(i, j).clone(),
                    self.w1.gram().at(i, j).clone(),
                    -self.b.gram().at(i, j).clone(),
                ]);
            }
        }
        let kernel = Mat::from_rows(rows).nullspace(eps);
        let raw = kernel.first()?;
        let (ap, bp, cp) = (raw[0].clone(), raw[1].clone(), raw[2].clone());
        // sphere coordinates relative to the orthonormalized triple
        let p = self.family.p().clone();
        let s = (S::one() - p.clone() * p.clone())
            .try_sqrt()
            .expect("family construction verified this sqrt");
        let a0 = ap - bp.clone() * p.clone();
        let b0 = bp * s.clone();
        let c0 = cp * s;
        let member = &(&self.family.i1.mat().scale(&a0) + &self.family.j.mat().scale(&b0))
            + &self.family.k.mat().scale(&c0);
        let poisson = member.block(0, m, m, m);
        if !poisson.is_zero(eps) {
            return None;
        }
        let norm2 =
            a0.clone() * a0.clone() + b0.clone() * b0.clone() + c0.clone() * c0.clone();
        let (a, b, c, normalized) = match norm2.try_sqrt() {
            Some(n) => (
                a0.clone() / n.clone(),
                b0.clone() / n.clone(),
                c0.clone() / n,
                true,
            ),
            None => (a0.clone(), b0.clone(), c0.clone(), false),
        };
        let confirmed_type = if normalized {
            self.family
                .evaluate(&a, &b, &c)
                .expect("normalized solution is unit")
                .type_of()
        } else {
            (m - poisson.rank(eps)) / 2
        };
        if confirmed_type != m / 2 {
            return None;
        }
        let (gamma, theta, holosymp_holds) = if c0.is_negligible(eps) {
            (None, None, None)
        } else {
            let alpha = b0.clone() / c0.clone();
            let beta = a0 / c0;
            let gamma = (alpha.clone() * beta.clone() + p) / (alpha.clone() * alpha.clone() + S::one());
            let theta = gamma.clone() * gamma.clone()
                - (S::one() + beta.clone() * beta) / (S::one() + alpha.clone() * alpha);
            let m2i = self
                .w2
                .map_matrix()
                .inverse(eps)
                .expect("symplectic forms are invertible");
            let w = &m2i.matmul(&self.w1.map_matrix()) + &Mat::identity(m).scale(&gamma);
            let defect = &w.matmul(&w) - &Mat::identity(m).scale(&theta);
            (Some(gamma), Some(theta), Some(defect.is_zero(eps)))
        };
        Some(MaxTypeSolution {
            a,
            b,
            c,
            normalized,
            confirmed_type,
            gamma,
            theta,
            holosymp_holds,
        })
    }
}

/// Verdicts for the B-twisted holomorphic symplectic system on (J, ω, B).
#[derive(Clone, Debug)]
pub struct BHolosymplecticReport<S> {
    /// ωJ = J*ω.
    pub compat: bool,
    /// ωJ − J*ω + Bω⁻¹BJ − J*Bω⁻¹B = 0.
    pub twisted_compat: bool,
    /// Jω⁻¹B + ω⁻¹BJ = 2p·Id.
    pub e3: bool,
    /// J*Bω⁻¹ + Bω⁻¹J* = 2p·Id.
    pub e4: bool,
    /// J*B + BJ = 2p·ω (the reduction of the system).
    pub reduction: bool,
    /// The scalar p extracted from the third equation, when it is scalar.
    pub p: Option<S>,
    /// Rank of the Poisson block of 𝓚 for the induced family, when the
    /// family exists; maximal rank certifies the symplectic-type members.
    pub k_poisson_rank: Option<usize>,
    pub k_rank_maximal: Option<bool>,
}

impl<S> BHolosymplecticReport<S> {
    pub fn all_hold(&self) -> bool {
        self.compat && self.twisted_compat && self.e3 && self.e4 && self.reduction
    }
}

/// Checks the holomorphic-symplectic system for a complex structure J,
/// symplectic ω, and 2-form B; p is read off the system itself.
pub fn check_b_holosymplectic<S: Scalar>(
    j: &Mat<S>,
    w: &TwoForm<S>,
    b: &TwoForm<S>,
    eps: f64,
) -> Result<BHolosymplecticReport<S>, GcsError> {
    let m = w.dim_v();
    if j.rows() != m || j.cols() != m {
        return Err(GcsError::DimensionMismatch {
            expected: m,
            got: j.rows(),
        });
    }
    let sq_defect = &j.matmul(j) + &Mat::identity(m);
    if !sq_defect.is_zero(eps) {
        return Err(GcsError::NotComplexOnV);
    }
    let mw = w.map_matrix();
    let mwi = mw.inverse(eps).ok_or(GcsError::DegenerateForm)?;
    let mb = b.map_matrix();
    let jt = j.transpose();

    let e1 = &mw.matmul(j) - &jt.matmul(&mw);
    let e2 = &(&mw.matmul(j) - &jt.matmul(&mw))
        + &(&mb.matmul(&mwi).matmul(&mb).matmul(j) - &jt.matmul(&mb).matmul(&mwi).matmul(&mb));
    let l3 = &j.matmul(&mwi).matmul(&mb) + &mwi.matmul(&mb).matmul(j);
    let p = scalar_multiple_of_identity(&l3, eps).map(|two_p| two_p / S::from_i64(2));
    let e3_ok = p.is_some();
    let (e4_ok, reduction_ok) = if let Some(ref pv) = p {
        let two_p_id = Mat::<S>::identity(m).scale(&(pv.clone() * S::from_i64(2)));
        let e4 = &(&jt.matmul(&mb).matmul(&mwi) + &mb.matmul(&mwi).matmul(&jt)) - &two_p_id;
        let e5 = &(&jt.matmul(&mb) + &mb.matmul(j)) - &mw.scale(&(pv.clone() * S::from_i64(2)));
        (e4.is_zero(eps), e5.is_zero(eps))
    } else {
        (false, false)
    };

    let (k_rank, k_max) = match (
        GenStructure::from_complex(j, eps),
        GenStructure::from_symplectic(w, eps),
    ) {
        (Ok(i1), Ok(sw)) => {
            let i2 = sw.b_transform(b);
            match build_family(&i1, &i2) {
                Ok(fam) => {
                    let rank = fam.k().poisson_block().rank(eps);
                    (Some(rank), Some(rank == m))
                }
                Err(_) => (None, None),
            }
        }
        _ => (None, None),
    };

    Ok(BHolosymplecticReport {
        compat: e1.is_zero(eps),
        twisted_compat: e2.is_zero(eps),
        e3: e3_ok,
        e4: e4_ok,
        reduction: reduction_ok,
        p,
        k_poisson_rank: k_rank,
        k_rank_maximal: k_max,
    })
}

/// The scalar c with m = c·Id, when m is such a multiple.
fn scalar_multiple_of_identity<S: Scalar>(m: &Mat<S>, eps: f64) -> Option<S> {
    let c = m.at(0, 0).clone();
    let defect = m - &Mat::identity(m.rows()).scale(&c);
    defect.is_zero(eps).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn int_mat(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    fn quaternion_pair() -> (GenStructure<Rat>, GenStructure<Rat>) {
        let li = int_mat(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        let lj = int_mat(&[
            &[0, 0, -1, 0],
            &[0, 0, 0, 1],
            &[1, 0, 0, 0],
            &[0, -1, 0, 0],
        ]);
        (
            GenStructure::from_complex(&li, 0.0).unwrap(),
            GenStructure::from_complex(&lj, 0.0).unwrap(),
        )
    }

    #[test]
    fn anticommutator_of_structure_with_itself_is_out_of_range() {
        let (i1, _) = quaternion_pair();
        match anticommutator_outcome(&i1, &i1) {
            AnticommutatorOutcome::Scalar { p, in_range } => {
                assert_eq!(p, rat(-1, 1));
                assert!(!in_range);
            }
            other => panic!("expected scalar outcome, got {other:?}"),
        }
        assert!(anticommutator_scalar(&i1, &i1).is_none());
    }

    #[test]
    fn quaternion_family_anticommutes_and_evaluates() {
        let (i1, i2) = quaternion_pair();
        let fam = build_family(&i1, &i2).unwrap();
        assert_eq!(*fam.p(), rat(0, 1));
        assert_eq!(fam.j(), &i2);
        let at_i1 = fam.evaluate(&rat(1, 1), &rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(at_i1, i1);
        let at_k = fam.evaluate(&rat(0, 1), &rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(at_k, *fam.k());
        let tilted = fam.evaluate(&rat(3, 5), &rat(4, 5), &rat(0, 1)).unwrap();
        assert_eq!(tilted.type_of(), 2);
        let antipode = fam.evaluate(&rat(-3, 5), &rat(-4, 5), &rat(0, 1)).unwrap();
        assert_eq!(antipode.mat(), &-tilted.mat());
        assert!(fam
            .evaluate(&rat(1, 1), &rat(1, 1), &rat(0, 1))
            .is_err());
    }

    #[test]
    fn family_rejects_half_dimension() {
        let j = Mat::from_rows(vec![
            vec![rat(0, 1), rat(-1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ]);
        let s = GenStructure::from_complex(&j, 0.0).unwrap();
        assert!(matches!(
            build_family(&s, &s),
            Err(FamilyError::DimensionNotMultipleOf4(2))
        ));
    }

    #[test]
    fn fibonacci_sphere_is_unit_and_deterministic() {
        let pts = fibonacci_sphere(64);
        assert_eq!(pts, fibonacci_sphere(64));
        for (a, b, c) in pts {
            assert!((a * a + b * b + c * c - 1.0).abs() < 1e-12);
        }
    }
}

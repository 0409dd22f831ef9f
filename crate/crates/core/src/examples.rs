//! Built-in example bundles with full verification reports.
//!
//! Two families ship with the crate. The torus bundle assembles two
//! symplectic forms and a B-field on ℝ^{4n} in the block basis
//! (e_{2i−1}, f_{2i−1}, e_{2i}, f_{2i}), checks the hypersymplectic matrix
//! condition against the coupled equation system, compares A and D with
//! their block-diagonal closed forms, and searches for maximal-type members
//! — which exist exactly when all blocks share the same (λ, μ). The
//! Kodaira–Thurston bundle instantiates an anticommuting pair of 8×8
//! structure matrices over the cotangent double of the Heisenberg-times-line
//! algebra and audits every claimed identity. Failing identities are never
//! corrected; the report pinpoints the offending entry and moves on.

use thiserror::Error;

use crate::gcs::{GcsError, GenStructure, PairingMatrix, TwoForm};
use crate::hyper::{
    build_family, check_hypersymplectic, FamilyError, HypersymplecticData, SphereFamily,
    SymplecticPairFamily,
};
use crate::lie::{
    closed_2form_check, cotangent_double, heisenberg_times_line, nijenhuis_raw, DoubleAlgebra,
    LieAlgebra, LieError,
};
use crate::mat::Mat;
use crate::report::{CheckItem, Conventions, Report};
use crate::scalar::{Coeff, Scalar};
use crate::twistor::{polynomial_certificate, LambdaChart, PolynomialCertificate, TwistorError};

/// Float-lane tolerance for the λ² + μ² = 1 parameter check; the exact lane
/// ignores it and demands literal equality.
const UNIT_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ExampleError {
    #[error("need at least one (λ, μ) parameter pair")]
    EmptyParameters,
    #[error("parameter counts differ: {lambdas} λ values vs {mus} μ values")]
    MismatchedParameterCounts { lambdas: usize, mus: usize },
    #[error("pair {index} violates λ² + μ² = 1")]
    NotUnitPair { index: usize },
    #[error("b2 must be nonzero")]
    ZeroB2,
    #[error(transparent)]
    Structure(#[from] GcsError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] LieError),
    #[error(transparent)]
    Certificate(#[from] TwistorError),
}

fn mode_name<S: Scalar>() -> &'static str {
    if S::EXACT {
        "exact"
    } else {
        "float"
    }
}

fn join_params<S: Scalar>(xs: &[S]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn first_nonzero_entry<S: Scalar>(m: &Mat<S>, eps: f64) -> Option<(usize, usize, S)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.at(i, j).is_negligible(eps) {
                return Some((i, j, m.at(i, j).clone()));
            }
        }
    }
    None
}

// A pass/fail item for "this matrix difference is zero", pinpointing the
// first offending entry when it is not.
fn identity_item<S: Scalar>(name: &str, diff: &Mat<S>, eps: f64) -> CheckItem {
    let mut item = CheckItem::new(name, diff.is_zero(eps)).with_residual(diff.approx_norm());
    if let Some((i, j, v)) = first_nonzero_entry(diff, eps) {
        item = item.with_detail(format!(
            "first nonzero entry at row {}, column {}: {}",
            i + 1,
            j + 1,
            v
        ));
    }
    item
}

fn certificate_item<S: Scalar>(cert: &PolynomialCertificate<S>, eps: f64) -> CheckItem {
    let pass = cert.all_zero(eps);
    let mut item = CheckItem::new("family integrability certificate vanishes", pass)
        .with_residual(cert.max_abs());
    if !pass {
        if let Some(t) = cert
            .entries
            .iter()
            .find(|t| t.coeffs.iter().any(|c| !c.is_negligible(eps)))
        {
            item = item.with_detail(format!(
                "first nonzero cubic at holomorphic-basis triple ({}, {}, {})",
                t.triple.0 + 1,
                t.triple.1 + 1,
                t.triple.2 + 1
            ));
        }
    }
    item
}

/// Diagonal deformation parameters for a torus family on ℝ^{4n}.
#[derive(Clone, Debug)]
pub struct TorusExample<S> {
    n: usize,
    lambdas: Vec<S>,
    mus: Vec<S>,
}

impl<S: Scalar> TorusExample<S> {
    /// Requires equally many λ and μ with λᵢ² + μᵢ² = 1 for every pair.
    pub fn new(lambdas: Vec<S>, mus: Vec<S>) -> Result<Self, ExampleError> {
        if lambdas.is_empty() && mus.is_empty() {
            return Err(ExampleError::EmptyParameters);
        }
        if lambdas.len() != mus.len() {
            return Err(ExampleError::MismatchedParameterCounts {
                lambdas: lambdas.len(),
                mus: mus.len(),
            });
        }
        for (i, (l, m)) in lambdas.iter().zip(mus.iter()).enumerate() {
            let unit = l.clone() * l.clone() + m.clone() * m.clone() - S::one();
            if !unit.is_negligible(UNIT_EPS) {
                return Err(ExampleError::NotUnitPair { index: i + 1 });
            }
        }
        Ok(TorusExample {
            n: lambdas.len(),
            lambdas,
            mus,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_v(&self) -> usize {
        4 * self.n
    }

    pub fn lambdas(&self) -> &[S] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[S] {
        &self.mus
    }

    // Maximal-type members exist exactly when every block carries the same
    // pair of parameters.
    fn parameters_equal(&self) -> bool {
        self.lambdas.windows(2).all(|w| w[0] == w[1]) && self.mus.windows(2).all(|w| w[0] == w[1])
    }
}

/// ω₂ = Σᵢ e_{2i−1}∧f_{2i−1} − e_{2i}∧f_{2i}.
pub fn torus_omega2<S: Scalar>(n: usize) -> TwoForm<S> {
    let mut entries = Vec::with_capacity(2 * n);
    for i in 0..n {
        let o = 4 * i;
        entries.push((o + 1, o + 2, S::one()));
        entries.push((o + 3, o + 4, -S::one()));
    }
    TwoForm::from_entries(4 * n, &entries).expect("pattern pairs distinct indices, hence skew")
}

/// Σᵢ cᵢ (e_{2i−1}∧f_{2i} + e_{2i}∧f_{2i−1}): ω₁ for c = λ, the B-field for
/// c = μ.
pub fn torus_coupling_form<S: Scalar>(coeffs: &[S]) -> TwoForm<S> {
    let mut entries = Vec::with_capacity(2 * coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        let o = 4 * i;
        entries.push((o + 1, o + 4, c.clone()));
        entries.push((o + 3, o + 2, c.clone()));
    }
    TwoForm::from_entries(4 * coeffs.len(), &entries)
        .expect("pattern pairs distinct indices, hence skew")
}

// One 4×4 block of the closed forms of A and D.
fn coupling_block<S: Scalar>(c: &S) -> Mat<S> {
    let z = S::zero;
    Mat::from_rows(vec![
        vec![z(), z(), -c.clone(), z()],
        vec![z(), z(), z(), -c.clone()],
        vec![c.clone(), z(), z(), z()],
        vec![z(), c.clone(), z(), z()],
    ])
}

/// Block-diagonal closed form: A for coeffs = μ, D for coeffs = λ.
pub fn torus_block_form<S: Scalar>(coeffs: &[S]) -> Mat<S> {
    let blocks: Vec<Mat<S>> = coeffs.iter().map(coupling_block).collect();
    Mat::block_diag(&blocks)
}

/// Everything the torus verification needs, built once.
#[derive(Clone, Debug)]
pub struct TorusBundle<S> {
    pub example: TorusExample<S>,
    pub w1: TwoForm<S>,
    pub w2: TwoForm<S>,
    pub b: TwoForm<S>,
    pub data: HypersymplecticData<S>,
    pub pair: SymplecticPairFamily<S>,
    pub double: DoubleAlgebra<S>,
}

/// Builds forms, hypersymplectic data (p = 0), the structure family, and the
/// abelian cotangent double for a torus example.
pub fn build_torus<S: Scalar>(
    e: &TorusExample<S>,
    eps: f64,
) -> Result<TorusBundle<S>, ExampleError> {
    let w1 = torus_coupling_form(e.lambdas());
    let w2 = torus_omega2(e.n());
    let b = torus_coupling_form(e.mus());
    let data = HypersymplecticData::new(w1.clone(), w2.clone(), b.clone(), S::zero(), eps)?;
    let pair = SymplecticPairFamily::build(&w1, &w2, &b, eps)?;
    let double = cotangent_double(&LieAlgebra::abelian(e.dim_v()));
    Ok(TorusBundle {
        example: e.clone(),
        w1,
        w2,
        b,
        data,
        pair,
        double,
    })
}

/// Runs every torus check and assembles the report; `grid` controls the
/// sampled type map (axis points exact, the rest in floats).
pub fn verify_torus<S: Scalar>(
    e: &TorusExample<S>,
    eps: f64,
    grid: usize,
) -> Result<Report, ExampleError> {
    let bundle = build_torus(e, eps)?;
    let max_ty = e.dim_v() / 2;
    let mut checks = Vec::new();

    // closedness of B — automatic over an abelian base, but checked, not assumed
    let closed = closed_2form_check(bundle.double.base(), &bundle.b, eps)?;
    checks.push(CheckItem::new("B-field is closed", closed));

    let hr = check_hypersymplectic(&bundle.data, eps)?;
    checks.push(
        CheckItem::new("A² + D² = (p² − 1)·Id with p = 0", hr.ad_square)
            .with_residual(hr.residuals[0]),
    );
    checks.push(CheckItem::new("A·D = D·A", hr.ad_commute).with_residual(hr.residuals[1]));
    for (k, ok) in hr.system.iter().enumerate() {
        checks.push(
            CheckItem::new(&format!("coupled system equation {}", k + 1), *ok)
                .with_residual(hr.residuals[2 + k]),
        );
    }
    checks.push(CheckItem::new(
        "matrix condition and coupled system agree",
        hr.verdicts_agree(),
    ));

    let a_diff = bundle.data.a_mat() - &torus_block_form(e.mus());
    checks.push(identity_item(
        "A equals its block-diagonal closed form",
        &a_diff,
        eps,
    ));
    let d_diff = bundle.data.d_mat() - &torus_block_form(e.lambdas());
    checks.push(identity_item(
        "D equals its block-diagonal closed form",
        &d_diff,
        eps,
    ));

    // the exp(B)-transform of the ω₂ structure in closed block form
    let m2 = bundle.w2.map_matrix();
    let m2i = m2.inverse(eps).expect("ω₂ is symplectic");
    let mb = bundle.b.map_matrix();
    let closed_form = Mat::from_blocks(
        &m2i.matmul(&mb),
        &-&m2i,
        &(&m2 + &mb.matmul(&m2i).matmul(&mb)),
        &-&mb.matmul(&m2i),
    );
    let i2_diff = bundle.pair.family().i2_raw().mat() - &closed_form;
    checks.push(identity_item(
        "exp(B)-transform of the ω₂ structure equals its block closed form",
        &i2_diff,
        eps,
    ));

    checks.push(CheckItem::new(
        "anticommutator scalar p = 0",
        bundle.pair.family().p().is_negligible(eps),
    ));

    let expect_max = e.parameters_equal();
    let sol = bundle.pair.detect_max_type();
    checks.push(
        CheckItem::new(
            "maximal-type search matches the equal-parameter pattern",
            sol.is_some() == expect_max,
        )
        .with_detail(if expect_max {
            "equal parameters: a maximal-type member must exist"
        } else {
            "distinct parameters: no maximal-type member may exist"
        }),
    );
    if !expect_max {
        checks.push(CheckItem::new("no maximal type", sol.is_none()).with_detail(format!(
            "max_type < {}: the entrywise kernel is trivial",
            max_ty
        )));
    }
    if let Some(s) = &sol {
        checks.push(
            CheckItem::new("maximal-type member found", s.confirmed_type == max_ty).with_detail(
                format!(
                    "(a, b, c) = ({}, {}, {}), type {} of maximal {}{}",
                    s.a,
                    s.b,
                    s.c,
                    s.confirmed_type,
                    max_ty,
                    if s.normalized {
                        ""
                    } else {
                        " (unnormalized coefficients)"
                    },
                ),
            ),
        );
        let theta_negative = s.theta.as_ref().map(|t| *t < S::zero());
        let pass = theta_negative == Some(true) && s.holosymp_holds == Some(true);
        let detail = match (&s.gamma, &s.theta) {
            (Some(g), Some(t)) => format!("γ = {}, θ = {}", g, t),
            _ => "γ, θ undefined: the detected member has c = 0".to_string(),
        };
        checks.push(
            CheckItem::new("(ω₂⁻¹ω₁ + γ·Id)² = θ·Id with θ < 0", pass).with_detail(detail),
        );
    }

    let chart = LambdaChart::new(bundle.pair.family().clone());
    let cert = polynomial_certificate(&bundle.double, &chart)?;
    checks.push(certificate_item(&cert, eps));

    let tm = bundle.pair.family().family_typemap(grid, eps);
    if !expect_max {
        checks.push(
            CheckItem::new(
                &format!("sampled type map contains no type-{} member", max_ty),
                tm.count_of_type(max_ty) == 0,
            )
            .with_detail(format!("{} samples", tm.samples.len())),
        );
    }
    let zero_count = tm.count_of_type(0);
    checks.push(
        CheckItem::new(
            "majority of sampled members have type 0",
            2 * zero_count > tm.samples.len(),
        )
        .with_detail(format!("{} of {} samples", zero_count, tm.samples.len())),
    );

    let title = format!(
        "torus example: λ = ({}), μ = ({})",
        join_params(e.lambdas()),
        join_params(e.mus()),
    );
    Ok(Report::new(
        &title,
        Conventions::new(mode_name::<S>(), eps, false),
        checks,
    ))
}

/// Parameters of the Kodaira–Thurston family; b2 must be nonzero because
/// 3/b2 appears in the structure matrices.
#[derive(Clone, Debug)]
pub struct KodairaThurstonExample<S> {
    b1: S,
    b2: S,
}

impl<S: Scalar> KodairaThurstonExample<S> {
    pub fn new(b1: S, b2: S) -> Result<Self, ExampleError> {
        if b2 == S::zero() {
            return Err(ExampleError::ZeroB2);
        }
        Ok(KodairaThurstonExample { b1, b2 })
    }

    pub fn b1(&self) -> &S {
        &self.b1
    }

    pub fn b2(&self) -> &S {
        &self.b2
    }
}

/// The constant generator I of the Kodaira–Thurston family.
pub fn kt_i_matrix<S: Scalar>() -> Mat<S> {
    let rows: [[i64; 8]; 8] = [
        [0, -1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 0],
    ];
    Mat::from_fn(8, 8, |i, j| S::from_i64(rows[i][j]))
}

/// The parameter-dependent generator J of the Kodaira–Thurston family.
pub fn kt_j_matrix<S: Scalar>(b1: &S, b2: &S) -> Mat<S> {
    let z = S::zero;
    let o = S::one;
    let t = S::from_i64(3) / b2.clone();
    Mat::from_rows(vec![
        vec![o(), -o(), z(), z(), z(), z(), b1.clone(), b2.clone()],
        vec![-o(), -o(), -b2.clone(), b1.clone(), z(), z(), z(), z()],
        vec![z(), t.clone(), o(), z(), -b1.clone(), z(), z(), -o()],
        vec![z(), z(), z(), o(), -b2.clone(), z(), o(), z()],
        vec![z(), z(), z(), t.clone(), -o(), o(), z(), z()],
        vec![z(), z(), z(), z(), o(), o(), -t.clone(), z()],
        vec![z(), z(), z(), o(), z(), b2.clone(), -o(), z()],
        vec![-t, z(), -o(), z(), z(), -b1.clone(), z(), -o()],
    ])
}

/// The closed-form family template 𝓘_{a,b,c}; every entry is linear in
/// (a, b, c), so the decomposition audit only needs the three axis points.
pub fn kt_family_matrix<S: Scalar>(a: &S, b: &S, c: &S, b1: &S, b2: &S) -> Mat<S> {
    let z = S::zero();
    let c2 = S::from_i64(2) * c.clone();
    let u = S::from_i64(3) * b.clone() / b2.clone();
    let v = S::from_i64(6) * c.clone() / b2.clone();
    let bb1 = b.clone() * b1.clone();
    let bb2 = b.clone() * b2.clone();
    let cb1 = c2.clone() * b1.clone();
    let cb2 = c2.clone() * b2.clone();
    // sign pattern of a ± b ± 2c, named by the two signs
    let app = a.clone() + b.clone() + c2.clone();
    let apm = a.clone() + b.clone() - c2.clone();
    let amp = a.clone() - b.clone() + c2.clone();
    let amm = a.clone() - b.clone() - c2.clone();
    let bp = b.clone() + c2.clone();
    let bm = b.clone() - c2.clone();
    Mat::from_rows(vec![
        vec![
            bp.clone(),
            -apm.clone(),
            cb2.clone(),
            -cb1.clone(),
            z.clone(),
            z.clone(),
            bb1.clone(),
            bb2.clone(),
        ],
        vec![
            amp.clone(),
            -bp.clone(),
            -bb2.clone(),
            bb1.clone(),
            z.clone(),
            z.clone(),
            cb1.clone(),
            cb2.clone(),
        ],
        vec![
            -v.clone(),
            u.clone(),
            bm.clone(),
            z.clone(),
            -bb1.clone(),
            -cb1.clone(),
            z.clone(),
            amm.clone(),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            bm.clone(),
            -bb2.clone(),
            -cb2.clone(),
            -amm,
            z.clone(),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            u.clone(),
            -bp.clone(),
            -amp,
            v.clone(),
            z.clone(),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            v.clone(),
            apm,
            bp,
            -u.clone(),
            z.clone(),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            app.clone(),
            -cb2.clone(),
            bb2,
            -bm.clone(),
            z.clone(),
        ],
        vec![-u, -v, -app, z.clone(), cb1, -bb1, z, -bm],
    ])
}

/// Everything the Kodaira–Thurston verification needs, built once.
#[derive(Clone, Debug)]
pub struct KtBundle<S> {
    pub example: KodairaThurstonExample<S>,
    pub double: DoubleAlgebra<S>,
    pub i_structure: GenStructure<S>,
    pub j_structure: GenStructure<S>,
    pub family: SphereFamily<S>,
}

/// Instantiates the matrices at (b1, b2) and builds the family over the
/// cotangent double of the Heisenberg-times-line algebra.
pub fn build_kt<S: Scalar>(
    e: &KodairaThurstonExample<S>,
    eps: f64,
) -> Result<KtBundle<S>, ExampleError> {
    let double = cotangent_double(&heisenberg_times_line::<S>());
    let i_structure = GenStructure::new(kt_i_matrix(), eps)?;
    let j_structure = GenStructure::new(kt_j_matrix(e.b1(), e.b2()), eps)?;
    let family = build_family(&i_structure, &j_structure)?;
    Ok(KtBundle {
        example: e.clone(),
        double,
        i_structure,
        j_structure,
        family,
    })
}

// Pinpoints the first nonzero Nijenhuis value for the report.
fn nijenhuis_item<S: Scalar>(
    name: &str,
    double: &DoubleAlgebra<S>,
    mat: &Mat<S>,
    eps: f64,
) -> Result<CheckItem, ExampleError> {
    let t = nijenhuis_raw(double, mat)?;
    let nonzero = t.nonzero_entries(eps);
    let mut item = CheckItem::new(name, nonzero.is_empty()).with_residual(t.max_abs());
    if let Some((i, j, k, v)) = nonzero.first() {
        item = item.with_detail(format!(
            "first nonzero value N(E{}, E{}, E{}) = {}; {} nonzero values in total",
            i + 1,
            j + 1,
            k + 1,
            v,
            nonzero.len()
        ));
    }
    Ok(item)
}

/// Runs every Kodaira–Thurston check and assembles the report.
pub fn verify_kt<S: Scalar>(
    e: &KodairaThurstonExample<S>,
    eps: f64,
    grid: usize,
) -> Result<Report, ExampleError> {
    let double = cotangent_double(&heisenberg_times_line::<S>());
    let im = kt_i_matrix::<S>();
    let jm = kt_j_matrix(e.b1(), e.b2());
    let id = Mat::<S>::identity(8);
    let q = PairingMatrix::<S>::new(4);
    let mut checks = vec![
        identity_item("I² = −Id", &(&im.matmul(&im) + &id), eps),
        identity_item("J² = −Id", &(&jm.matmul(&jm) + &id), eps),
        identity_item(
            "I preserves the split pairing",
            &(&im.transpose().matmul(q.q()).matmul(&im) - q.q()),
            eps,
        ),
        identity_item(
            "J preserves the split pairing",
            &(&jm.transpose().matmul(q.q()).matmul(&jm) - q.q()),
            eps,
        ),
        identity_item("IJ + JI = 0", &(&im.matmul(&jm) + &jm.matmul(&im)), eps),
    ];
    let structures_ok = checks.iter().all(|c| c.pass);

    checks.push(nijenhuis_item(
        "Nijenhuis tensor of I vanishes",
        &double,
        &im,
        eps,
    )?);
    checks.push(nijenhuis_item(
        "Nijenhuis tensor of J vanishes",
        &double,
        &jm,
        eps,
    )?);

    if structures_ok {
        let bundle = build_kt(e, eps)?;

        let basis_member = bundle
            .family
            .evaluate(&S::zero(), &S::one(), &S::zero())
            .expect("(0, 1, 0) lies on the unit sphere");
        checks.push(identity_item(
            "family member at (0, 1, 0) equals J",
            &(basis_member.mat() - bundle.j_structure.mat()),
            eps,
        ));

        // decomposition audit: compare the template against a·I + b·J + c·K
        // for K the commutator IJ − JI and for K = I·J, at the axis points
        let ij = im.matmul(&jm);
        let comm = &ij - &jm.matmul(&im);
        let at_i = kt_family_matrix(&S::one(), &S::zero(), &S::zero(), e.b1(), e.b2());
        let at_j = kt_family_matrix(&S::zero(), &S::one(), &S::zero(), e.b1(), e.b2());
        let at_k = kt_family_matrix(&S::zero(), &S::zero(), &S::one(), e.b1(), e.b2());
        let comm_ok = (&at_i - &im).is_zero(eps)
            && (&at_j - &jm).is_zero(eps)
            && (&at_k - &comm).is_zero(eps);
        let product_diff = &at_k - &ij;
        let product_ok =
            (&at_i - &im).is_zero(eps) && (&at_j - &jm).is_zero(eps) && product_diff.is_zero(eps);
        let differing = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| !product_diff.at(i, j).is_negligible(eps))
            .count();
        checks.push(
            CheckItem::new(
                "family template decomposes over the anticommuting pair",
                comm_ok || product_ok,
            )
            .with_detail(format!(
                "matches a·I + b·J + c·(IJ − JI): {comm_ok}; matches a·I + b·J + c·IJ: \
                 {product_ok} ({differing} entries differ — IJ + JI = 0 makes IJ − JI = 2·IJ, \
                 so the unit-sphere member at (0, 0, c) sits at family coefficient 2c)"
            )),
        );

        let ty_i = bundle.i_structure.type_of();
        let ty_j = bundle.j_structure.type_of();
        checks.push(
            CheckItem::new("types of I and J equal 1", ty_i == 1 && ty_j == 1)
                .with_detail(format!("type(I) = {ty_i}, type(J) = {ty_j}")),
        );
        let tm = bundle.family.family_typemap(grid, eps);
        let all_one = tm.samples.iter().all(|s| s.ty == 1);
        checks.push(
            CheckItem::new("sampled family members all have type 1", all_one).with_detail(
                format!(
                    "{} of {} samples have type 1",
                    tm.count_of_type(1),
                    tm.samples.len()
                ),
            ),
        );

        let chart = LambdaChart::new(bundle.family.clone());
        let cert = polynomial_certificate(&bundle.double, &chart)?;
        checks.push(certificate_item(&cert, eps));
    } else {
        checks.push(
            CheckItem::new("family checks", false)
                .with_detail("skipped: the structure identities above fail"),
        );
    }

    let title = format!(
        "kodaira-thurston example: b1 = {}, b2 = {}",
        e.b1(),
        e.b2()
    );
    Ok(Report::new(
        &title,
        Conventions::new(mode_name::<S>(), eps, false),
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn distinct_torus() -> TorusExample<Rat> {
        TorusExample::new(vec![rat(3, 5), rat(1, 1)], vec![rat(4, 5), rat(0, 1)]).unwrap()
    }

    fn equal_torus() -> TorusExample<Rat> {
        TorusExample::new(vec![rat(3, 5), rat(3, 5)], vec![rat(4, 5), rat(4, 5)]).unwrap()
    }

    #[test]
    fn torus_parameter_validation() {
        assert!(matches!(
            TorusExample::<Rat>::new(vec![], vec![]),
            Err(ExampleError::EmptyParameters)
        ));
        assert!(matches!(
            TorusExample::new(vec![rat(1, 1)], vec![rat(0, 1), rat(1, 1)]),
            Err(ExampleError::MismatchedParameterCounts { lambdas: 1, mus: 2 })
        ));
        // (1, 1) is not a unit pair
        assert!(matches!(
            TorusExample::new(vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]),
            Err(ExampleError::NotUnitPair { index: 1 })
        ));
    }

    #[test]
    fn distinct_torus_report_passes_with_no_maximal_type() {
        let report = verify_torus(&distinct_torus(), 1e-9, 2).unwrap();
        assert!(report.all_pass, "failed: {:?}", report.failed_names());
        let text = report.to_text();
        assert!(text.contains("no maximal type"));
        assert!(text.contains("max_type < 4"));
    }

    #[test]
    fn equal_torus_detects_the_maximal_member() {
        let bundle = build_torus(&equal_torus(), 1e-9).unwrap();
        let sol = bundle.pair.detect_max_type().expect("equal parameters");
        assert_eq!(
            (sol.a.clone(), sol.b.clone(), sol.c.clone()),
            (rat(0, 1), rat(4, 5), rat(3, 5))
        );
        assert!(sol.normalized);
        assert_eq!(sol.confirmed_type, 4);
        assert_eq!(sol.gamma, Some(rat(0, 1)));
        assert_eq!(sol.theta, Some(rat(-9, 25)));
        assert_eq!(sol.holosymp_holds, Some(true));

        let report = verify_torus(&equal_torus(), 1e-9, 2).unwrap();
        assert!(report.all_pass, "failed: {:?}", report.failed_names());
    }

    #[test]
    fn kt_rejects_zero_b2() {
        assert!(matches!(
            KodairaThurstonExample::new(rat(1, 1), rat(0, 1)),
            Err(ExampleError::ZeroB2)
        ));
    }

    #[test]
    fn kt_base_point_report_all_passes() {
        let e = KodairaThurstonExample::new(rat(0, 1), rat(1, 1)).unwrap();
        let report = verify_kt(&e, 1e-9, 2).unwrap();
        assert!(report.all_pass, "failed: {:?}", report.failed_names());
    }

    #[test]
    fn kt_generic_parameters_pinpoint_the_failing_identities() {
        let e = KodairaThurstonExample::new(rat(1, 1), rat(2, 1)).unwrap();
        let report = verify_kt(&e, 1e-9, 2).unwrap();
        assert_eq!(
            report.failed_names(),
            vec![
                "Nijenhuis tensor of J vanishes",
                "family integrability certificate vanishes"
            ]
        );
        let text = report.to_text();
        assert!(text.contains("N(E1, E2, E5) = 3/4"), "text: {text}");
    }

    #[test]
    fn kt_template_uses_the_full_commutator() {
        let (b1, b2) = (rat(1, 1), rat(2, 1));
        let im = kt_i_matrix::<Rat>();
        let jm = kt_j_matrix(&b1, &b2);
        let at_k = kt_family_matrix(&rat(0, 1), &rat(0, 1), &rat(1, 1), &b1, &b2);
        let ij = im.matmul(&jm);
        assert_eq!(at_k, &ij.scale(&rat(2, 1)) - &Mat::zeros(8, 8));
        let differing = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| at_k.at(i, j) != ij.at(i, j))
            .count();
        assert_eq!(differing, 28);
    }
}

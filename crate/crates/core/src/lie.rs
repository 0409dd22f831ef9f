//! Lie algebras by structure constants, the cotangent double 𝔤⊕𝔤*, and
//! integrability of invariant generalized structures.
//!
//! A left-invariant structure on a Lie group is a constant matrix on 𝔤⊕𝔤*,
//! and the Courant bracket of invariant sections reduces to the algebraic
//! bracket [(X,α),(Y,β)] = ([X,Y], −β∘ad_X + α∘ad_Y) with no derivative
//! terms. Integrability therefore becomes a finite computation: the
//! Nijenhuis 3-tensor over basis triples.

use num::Complex;
use thiserror::Error;

use crate::gcs::{pairing, GenStructure, TwoForm};
use crate::mat::Mat;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("basis index {index} is out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("the Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiFails { i: usize, j: usize, k: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse structure equation: {0}")]
    Parse(String),
}

/// One Maurer–Cartan equation: (k, terms) encodes de^k = Σ a·e^i∧e^j with
/// each term given as (a, i, j), all indices 1-based.
pub type StructureEquation<S> = (usize, Vec<(S, usize, usize)>);

/// A finite-dimensional real Lie algebra given by structure constants.
///
/// `c[i][j]` is the coefficient vector of [x_{i+1}, x_{j+1}] in the basis
/// x_1..x_dim; antisymmetry and the Jacobi identity are checked on load.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    names: Vec<String>,
    c: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// The abelian algebra: every bracket vanishes.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            names: (1..=dim).map(|i| format!("x{i}")).collect(),
            c: vec![vec![vec![S::zero(); dim]; dim]; dim],
        }
    }

    /// Loads constants from 1-based entries (i, j, k, v) meaning
    /// [x_i, x_j] contains v·x_k; the (j, i) slot is filled by antisymmetry.
    pub fn from_structure_constants(
        dim: usize,
        entries: &[(usize, usize, usize, S)],
    ) -> Result<Self, LieError> {
        let mut alg: LieAlgebra<S> = LieAlgebra::abelian(dim);
        for &(i, j, k, ref v) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            alg.c[i - 1][j - 1][k - 1] = alg.c[i - 1][j - 1][k - 1].clone() + v.clone();
            alg.c[j - 1][i - 1][k - 1] = alg.c[j - 1][i - 1][k - 1].clone() - v.clone();
        }
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Builds the algebra from Maurer–Cartan equations de^k = Σ a·e^i∧e^j,
    /// each given as (k, terms) with terms (a, i, j), all indices 1-based.
    ///
    /// The encoding de^k = −½ c^k_{ij} e^i∧e^j gives c^k_{ij} = −a for a
    /// term a·e^i∧e^j with i < j.
    pub fn from_structure_equations(
        dim: usize,
        eqs: &[StructureEquation<S>],
    ) -> Result<Self, LieError> {
        let mut entries = Vec::new();
        for (k, terms) in eqs {
            for (a, i, j) in terms {
                entries.push((*i, *j, *k, -a.clone()));
            }
        }
        Self::from_structure_constants(dim, &entries)
    }

    /// Parses lines like `d e3 = - e1^e2` or `d e4 = 0`; coefficients may be
    /// integers or fractions `p/q`, an omitted coefficient means 1.
    pub fn from_structure_equation_text(dim: usize, text: &str) -> Result<Self, LieError> {
        let mut eqs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            eqs.push(parse_equation_line::<S>(line)?);
        }
        Self::from_structure_equations(dim, &eqs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Renames the basis; the list must have one name per generator.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim, "one name per basis element");
        self.names = names;
        self
    }

    /// Coefficient vector of [x_{i+1}, x_{j+1}] (0-based arguments).
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[S] {
        &self.c[i][j]
    }

    /// Bilinear bracket of coefficient vectors.
    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        bracket_from_table(&self.c, u, v)
    }

    pub fn is_abelian(&self) -> bool {
        self.c
            .iter()
            .flatten()
            .flatten()
            .all(|x| x.is_zero())
    }

    /// All structure-constant entries as 1-based (i, j, k, v) with i < j.
    pub fn entries(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out.push((i + 1, j + 1, k + 1, self.c[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    // Jacobi: [[xi,xj],xk] + [[xj,xk],xi] + [[xk,xi],xj] = 0 per basis triple.
    fn check_jacobi(&self) -> Result<(), LieError> {
        let basis = basis_vectors::<S>(self.dim);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut acc = vec![S::zero(); self.dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket(&basis[a], &basis[b]);
                        let outer = self.bracket(&inner, &basis[c]);
                        for (t, x) in acc.iter_mut().zip(outer) {
                            *t = t.clone() + x;
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::JacobiFails {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// The cotangent double 𝔤⊕𝔤* with basis x_1..x_n, ξ^1..ξ^n and bracket
/// [(X,α),(Y,β)] = ([X,Y], −β∘ad_X + α∘ad_Y).
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleAlgebra<S> {
    base: LieAlgebra<S>,
    dim: usize,
    table: Vec<Vec<Vec<S>>>,
}

/// Builds the double of `g`; the coadjoint-extension bracket reduces to
/// [x_i, ξ^j] = −Σ_l c^j_{il} ξ^l and [ξ, ξ] = 0.
// Writes land in offset blocks of several table rows at once, which rules
// out iterating any single row mutably.
#[allow(clippy::needless_range_loop)]
pub fn cotangent_double<S: Scalar>(g: &LieAlgebra<S>) -> DoubleAlgebra<S> {
    let n = g.dim();
    let dim = 2 * n;
    let mut table = vec![vec![vec![S::zero(); dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            // vector-vector: the base bracket
            table[i][j][..n].clone_from_slice(&g.c[i][j]);
            // vector-covector: [x_i, ξ^j] = −Σ_l c^j_{il} ξ^l
            for l in 0..n {
                let co = g.c[i][l][j].clone();
                table[i][n + j][n + l] = table[i][n + j][n + l].clone() - co.clone();
                table[n + j][i][n + l] = table[n + j][i][n + l].clone() + co;
            }
        }
    }
    DoubleAlgebra {
        base: g.clone(),
        dim,
        table,
    }
}

impl<S: Scalar> DoubleAlgebra<S> {
    pub fn base(&self) -> &LieAlgebra<S> {
        &self.base
    }

    /// Dimension of 𝔤⊕𝔤* (twice the base dimension).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis names E1..E2n: first the vectors, then the covectors.
    pub fn basis_name(&self, i: usize) -> String {
        format!("E{}", i + 1)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[S] {
        &self.table[i][j]
    }

    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        bracket_from_table(&self.table, u, v)
    }

    /// Complex-bilinear extension of the bracket.
    pub fn bracket_complex(&self, u: &[Complex<S>], v: &[Complex<S>]) -> Vec<Complex<S>> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex::new(S::zero(), S::zero()); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.re.is_zero() && ui.im.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.re.is_zero() && vj.im.is_zero() {
                    continue;
                }
                let f = ui.clone() * vj.clone();
                for (t, w) in out.iter_mut().zip(&self.table[i][j]) {
                    if !w.is_zero() {
                        *t = t.clone()
                            + Complex::new(f.re.clone() * w.clone(), f.im.clone() * w.clone());
                    }
                }
            }
        }
        out
    }

    /// ⟨[u,v],w⟩ + ⟨v,[u,w]⟩ = 0 over all basis triples.
    pub fn pairing_invariant(&self) -> bool {
        let basis = basis_vectors::<S>(self.dim);
        for u in &basis {
            for v in &basis {
                for w in &basis {
                    let lhs = pairing(&self.bracket(u, v), w) + pairing(v, &self.bracket(u, w));
                    if !lhs.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The same bracket table as a standalone algebra (Jacobi re-verified),
    /// with basis names E1..E2n.
    pub fn as_lie_algebra(&self) -> Result<LieAlgebra<S>, LieError> {
        let alg = LieAlgebra {
            dim: self.dim,
            names: (0..self.dim).map(|i| self.basis_name(i)).collect(),
            c: self.table.clone(),
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Nonzero coefficients of dE^k as 1-based ((i, j), a) with i < j,
    /// where dE^k = Σ a·E^i∧E^j; a = −(coefficient of E_k in [E_i, E_j]).
    pub fn structure_equation(&self, k: usize) -> Vec<((usize, usize), S)> {
        assert!(k >= 1 && k <= self.dim, "1-based equation index");
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let a = -self.table[i][j][k - 1].clone();
                if !a.is_zero() {
                    out.push(((i + 1, j + 1), a));
                }
            }
        }
        out
    }
}

/// The Nijenhuis values N(E_i, E_j, E_k) over all basis triples of a double.
#[derive(Clone, Debug)]
pub struct NijenhuisTensor<S> {
    dim: usize,
    vals: Vec<S>,
}

impl<S: Scalar> NijenhuisTensor<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> &S {
        &self.vals[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.vals.iter().all(|x| x.is_negligible(eps))
    }

    /// Nonzero entries as 0-based (i, j, k, value).
    pub fn nonzero_entries(&self, eps: f64) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = self.value(i, j, k);
                    if !v.is_negligible(eps) {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Total skewness: swapping any two arguments flips the sign.
    pub fn is_totally_skew(&self, eps: f64) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = self.value(i, j, k).clone();
                    let s1 = v.clone() + self.value(j, i, k).clone();
                    let s2 = v.clone() + self.value(i, k, j).clone();
                    let s3 = v + self.value(k, j, i).clone();
                    if !s1.is_negligible(eps) || !s2.is_negligible(eps) || !s3.is_negligible(eps)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.vals
            .iter()
            .map(|x| x.approx().abs())
            .fold(0.0, f64::max)
    }
}

/// N(u,v) = [𝓘u,𝓘v] − 𝓘[𝓘u,v] − 𝓘[u,𝓘v] − [u,v] paired against each basis
/// element, for an arbitrary square matrix on the double (no axiom checks).
pub fn nijenhuis_raw<S: Scalar>(
    d: &DoubleAlgebra<S>,
    mat: &Mat<S>,
) -> Result<NijenhuisTensor<S>, LieError> {
    let n = d.dim();
    if mat.rows() != n || mat.cols() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            got: mat.rows(),
        });
    }
    let basis = basis_vectors::<S>(n);
    // column i of the matrix = image of the i-th basis vector
    let cols: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|r| mat.at(r, i).clone()).collect())
        .collect();
    let mut vals = vec![S::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let t1 = d.bracket(&cols[i], &cols[j]);
            let t2 = mat.apply(&d.bracket(&cols[i], &basis[j]));
            let t3 = mat.apply(&d.bracket(&basis[i], &cols[j]));
            let t4 = d.bracket_basis(i, j);
            let nvec: Vec<S> = (0..n)
                .map(|k| t1[k].clone() - t2[k].clone() - t3[k].clone() - t4[k].clone())
                .collect();
            for k in 0..n {
                vals[(i * n + j) * n + k] = pairing(&nvec, &basis[k]);
            }
        }
    }
    Ok(NijenhuisTensor { dim: n, vals })
}

/// Nijenhuis tensor of a verified structure; total skewness is asserted.
pub fn nijenhuis<S: Scalar>(
    d: &DoubleAlgebra<S>,
    s: &GenStructure<S>,
) -> Result<NijenhuisTensor<S>, LieError> {
    let t = nijenhuis_raw(d, s.mat())?;
    assert!(
        t.is_totally_skew(s.eps()),
        "the tensor of a verified structure must be a 3-form"
    );
    Ok(t)
}

/// True when every Nijenhuis value vanishes (exactly, or within the
/// structure's ε in float mode).
pub fn is_integrable<S: Scalar>(
    d: &DoubleAlgebra<S>,
    s: &GenStructure<S>,
) -> Result<bool, LieError> {
    Ok(nijenhuis(d, s)?.is_zero(s.eps()))
}

/// Chevalley–Eilenberg closedness of a 2-form on 𝔤:
/// dB(x_i,x_j,x_k) = −B([x_i,x_j],x_k) − B([x_j,x_k],x_i) − B([x_k,x_i],x_j).
pub fn closed_2form_check<S: Scalar>(
    g: &LieAlgebra<S>,
    b: &TwoForm<S>,
    eps: f64,
) -> Result<bool, LieError> {
    let n = g.dim();
    if b.dim_v() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            got: b.dim_v(),
        });
    }
    let basis = basis_vectors::<S>(n);
    // B(u, x_k) for a coefficient vector u
    let eval = |u: &[S], k: usize| -> S {
        let mut acc = S::zero();
        for (a, x) in u.iter().enumerate() {
            if !x.is_zero() {
                acc = acc + x.clone() * b.gram().at(a, k).clone();
            }
        }
        acc
    };
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut db = S::zero();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    db = db - eval(&g.bracket(&basis[x], &basis[y]), z);
                }
                if !db.is_negligible(eps) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Standard basis of coefficient vectors.
pub fn basis_vectors<S: Scalar>(dim: usize) -> Vec<Vec<S>> {
    (0..dim)
        .map(|i| {
            let mut v = vec![S::zero(); dim];
            v[i] = S::one();
            v
        })
        .collect()
}

// Shared bilinear expansion over a bracket table.
fn bracket_from_table<S: Scalar>(table: &[Vec<Vec<S>>], u: &[S], v: &[S]) -> Vec<S> {
    let n = table.len();
    assert_eq!(u.len(), n, "vector length must match the algebra dimension");
    assert_eq!(v.len(), n, "vector length must match the algebra dimension");
    let mut out = vec![S::zero(); n];
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            let f = u[i].clone() * v[j].clone();
            for (t, w) in out.iter_mut().zip(&table[i][j]) {
                if !w.is_zero() {
                    *t = t.clone() + f.clone() * w.clone();
                }
            }
        }
    }
    out
}

// Parses one line `d e<k> = <rhs>` into (k, terms).
fn parse_equation_line<S: Scalar>(line: &str) -> Result<StructureEquation<S>, LieError> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| LieError::Parse(format!("{msg} in `{line}`"));
    let rest = compact
        .strip_prefix("de")
        .ok_or_else(|| err("expected `d e<k> = ...`"))?;
    let eq_pos = rest.find('=').ok_or_else(|| err("missing `=`"))?;
    let k: usize = rest[..eq_pos]
        .parse()
        .map_err(|_| err("bad equation index"))?;
    let mut rhs = &rest[eq_pos + 1..];
    if rhs == "0" {
        return Ok((k, Vec::new()));
    }
    let mut terms = Vec::new();
    while !rhs.is_empty() {
        let mut sign = S::one();
        loop {
            if let Some(r) = rhs.strip_prefix('-') {
                sign = -sign;
                rhs = r;
            } else if let Some(r) = rhs.strip_prefix('+') {
                rhs = r;
            } else {
                break;
            }
        }
        // optional rational coefficient before `e<i>^e<j>`
        let num_len = rhs
            .find(|c: char| !c.is_ascii_digit() && c != '/')
            .unwrap_or(rhs.len());
        let coef = if num_len > 0 {
            let text = &rhs[..num_len];
            rhs = &rhs[num_len..];
            rhs = rhs.strip_prefix('*').unwrap_or(rhs);
            parse_ratio::<S>(text).ok_or_else(|| err("bad coefficient"))?
        } else {
            S::one()
        };
        let r = rhs.strip_prefix('e').ok_or_else(|| err("expected `e<i>`"))?;
        let caret = r.find('^').ok_or_else(|| err("expected `^`"))?;
        let i: usize = r[..caret].parse().map_err(|_| err("bad index"))?;
        let r = r[caret + 1..]
            .strip_prefix('e')
            .ok_or_else(|| err("expected `e<j>`"))?;
        let end = r
            .find(['+', '-'])
            .unwrap_or(r.len());
        let j: usize = r[..end].parse().map_err(|_| err("bad index"))?;
        rhs = &r[end..];
        terms.push((sign * coef, i, j));
    }
    Ok((k, terms))
}

fn parse_ratio<S: Scalar>(text: &str) -> Option<S> {
    match text.split_once('/') {
        Some((p, q)) => {
            let num: i64 = p.parse().ok()?;
            let den: i64 = q.parse().ok()?;
            (den != 0).then(|| S::from_ratio(num, den))
        }
        None => text.parse::<i64>().ok().map(S::from_i64),
    }
}

/// The Heisenberg-times-line algebra on x1..x4 with [x2, x3] = x4.
pub fn heisenberg_times_line<S: Scalar>() -> LieAlgebra<S> {
    LieAlgebra::from_structure_constants(4, &[(2, 3, 4, S::one())])
        .expect("fixed nilpotent algebra satisfies Jacobi")
}

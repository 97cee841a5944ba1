//! Numerical sum-of-squares feasibility on finite point sets.
//!
//! A nonnegative function `ell` on `V` is `k`-sos when `ell(v) = m(v)^T G m(v)`
//! for some psd `G`, where `m` lists a basis of the degree-`<=k` functions on
//! `V` (standard monomials of the vanishing ideal). Zeros of `ell` force
//! `G m(z) = 0`, so the Gram matrix is first restricted to the subspace of
//! basis combinations vanishing on those zeros. The remaining problem is
//! solved by alternating projections between the affine constraint set and
//! the psd cone.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::ideals::{rat, vanishing_ideal, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SosOptions {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SosOptions {
    fn default() -> Self {
        SosOptions { tol: 1e-8, max_iterations: 50_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SosVerdict {
    Feasible,
    InfeasibleNumerical,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SosOutcome {
    pub verdict: SosVerdict,
    /// Gram matrix over `basis`, present iff feasible.
    pub gram: Option<Vec<Vec<f64>>>,
    /// Gram basis monomials in text form.
    pub basis: Vec<String>,
    /// Largest constraint violation `|m(v)^T G m(v) - ell(v)|`.
    pub residual: f64,
    pub min_eigenvalue: f64,
    pub iterations: usize,
}

impl SosOutcome {
    pub fn is_feasible(&self) -> bool {
        self.verdict == SosVerdict::Feasible
    }

    pub fn gram_csv(&self) -> Option<String> {
        let g = self.gram.as_ref()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.basis.iter().cloned());
        w.write_record(&header).ok()?;
        for (name, row) in self.basis.iter().zip(g) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(|x| format!("{x:.12e}")));
            w.write_record(&rec).ok()?;
        }
        String::from_utf8(w.into_inner().ok()?).ok()
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Orthonormal basis of the null space of `a` (columns), by SVD.
fn null_space(a: &DMatrix<f64>, cols: usize) -> DMatrix<f64> {
    if a.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    // pad to at least `cols` rows so the SVD returns a full right basis
    let mut padded = DMatrix::zeros(a.nrows().max(cols), cols);
    padded.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = 1e-10 * largest.max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= cutoff).collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &v_t.row(i).transpose());
    }
    out
}

fn svec_len(t: usize) -> usize {
    t * (t + 1) / 2
}

/// Symmetric matrix to vector with off-diagonal entries scaled by `sqrt 2`,
/// so that the Euclidean norm matches the Frobenius norm.
fn svec(m: &DMatrix<f64>) -> DVector<f64> {
    let t = m.nrows();
    let mut v = DVector::zeros(svec_len(t));
    let mut idx = 0;
    for i in 0..t {
        for j in i..t {
            v[idx] = if i == j { m[(i, i)] } else { std::f64::consts::SQRT_2 * m[(i, j)] };
            idx += 1;
        }
    }
    v
}

fn smat(v: &DVector<f64>, t: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(t, t);
    let mut idx = 0;
    for i in 0..t {
        for j in i..t {
            if i == j {
                m[(i, i)] = v[idx];
            } else {
                let x = v[idx] / std::f64::consts::SQRT_2;
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
            idx += 1;
        }
    }
    m
}

fn psd_clip(m: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
    let eig = SymmetricEigen::new(m.clone());
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let clipped = eig.eigenvalues.map(|x| x.max(0.0));
    let q = &eig.eigenvectors;
    (q * DMatrix::from_diagonal(&clipped) * q.transpose(), min)
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Decides numerically whether `ell` is a sum of squares of polynomials of
/// degree at most `k` on `v`.
pub fn sos_feasible(v: &PointConfig, ell: &Polynomial, k: u32, opts: &SosOptions) -> Result<SosOutcome> {
    let values: Vec<Rational> = v.points.iter().map(|p| ell.eval(p)).collect();
    if values.iter().any(|x| x.is_negative()) {
        return Err(Error::NegativeOnV);
    }
    let data = vanishing_ideal(v)?;
    let basis: Vec<Monomial> = data.standard_monomials.iter().filter(|m| m.degree() <= k).cloned().collect();
    let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
    let s = basis.len();
    let n = v.len();
    let eval = DMatrix::from_fn(n, s, |i, j| to_f64(&basis[j].eval(&v.points[i])));

    let zeros: Vec<usize> = (0..n).filter(|&i| values[i].is_zero()).collect();
    let active: Vec<usize> = (0..n).filter(|&i| !values[i].is_zero()).collect();
    let ez = DMatrix::from_fn(zeros.len(), s, |i, j| eval[(zeros[i], j)]);
    let w = null_space(&ez, s);
    let t = w.ncols();
    let reduced = DMatrix::from_fn(active.len(), s, |i, j| eval[(active[i], j)]) * &w;
    let b = DVector::from_iterator(active.len(), active.iter().map(|&i| to_f64(&values[i])));

    let outcome = |verdict, gram: Option<DMatrix<f64>>, residual, min_eig, iterations| SosOutcome {
        verdict,
        gram: gram.map(|g| (0..s).map(|i| (0..s).map(|j| g[(i, j)]).collect()).collect()),
        basis: names.clone(),
        residual,
        min_eigenvalue: min_eig,
        iterations,
    };

    if active.is_empty() {
        return Ok(outcome(SosVerdict::Feasible, Some(DMatrix::zeros(s, s)), 0.0, 0.0, 0));
    }
    if t == 0 {
        return Ok(outcome(SosVerdict::InfeasibleNumerical, None, b.amax(), 0.0, 0));
    }

    // Constraint rows in svec coordinates.
    let q = svec_len(t);
    let mut a = DMatrix::zeros(active.len(), q);
    for r in 0..active.len() {
        let row = reduced.row(r);
        let mut idx = 0;
        for i in 0..t {
            for j in i..t {
                a[(r, idx)] = if i == j { row[i] * row[i] } else { std::f64::consts::SQRT_2 * row[i] * row[j] };
                idx += 1;
            }
        }
    }
    let svd = a.clone().svd(true, true);
    let cutoff = 1e-10 * svd.singular_values.max().max(1.0);
    let lift = svd.pseudo_inverse(cutoff).expect("pseudo-inverse");
    let project = |x: &DVector<f64>| -> DVector<f64> { x - &lift * (&a * x - &b) };

    let mut x = project(&DVector::zeros(q));
    let affine_residual = (&a * &x - &b).amax();
    if affine_residual > opts.tol * b.amax().max(1.0) {
        return Ok(outcome(SosVerdict::InfeasibleNumerical, None, affine_residual, 0.0, 0));
    }

    let full_gram = |h: &DMatrix<f64>| &w * h * w.transpose();
    let residual_of = |g: &DMatrix<f64>| -> f64 {
        (0..n)
            .map(|i| {
                let m = eval.row(i);
                ((&m * g * m.transpose())[(0, 0)] - to_f64(&values[i])).abs()
            })
            .fold(0.0, f64::max)
    };

    let mut last_min = f64::NEG_INFINITY;
    for it in 0..opts.max_iterations {
        let h = smat(&x, t);
        let (clipped, min) = psd_clip(&h);
        last_min = min;
        if min >= -opts.tol {
            let g = full_gram(&h);
            let residual = residual_of(&g);
            if residual <= opts.tol * b.amax().max(1.0) {
                let min_eig = min.min(if t < s { 0.0 } else { min });
                return Ok(outcome(SosVerdict::Feasible, Some(g), residual, min_eig, it + 1));
            }
        }
        x = project(&svec(&clipped));
    }
    let h = smat(&x, t);
    let g = full_gram(&h);
    Ok(outcome(SosVerdict::Inconclusive, None, residual_of(&g), last_min.min(min_eigenvalue(&h)), opts.max_iterations))
}

/// `ell(x) = c + sum coeffs[i] x_i`.
pub fn linear_functional(vars: usize, constant: i64, coeffs: &[i64]) -> Polynomial {
    let mut p = Polynomial::constant(vars, rat(constant));
    for (i, &c) in coeffs.iter().enumerate() {
        p = p.add(&Polynomial::var(vars, i).scale(&rat(c)));
    }
    p
}

/// Checks `18 ell = 2 (ell (ell - 4))^2 + (ell (ell - 1))^2` with
/// `ell = 3 - sum x_i` at every point of `{0,1}^4` minus the all-ones vector.
pub fn verify_identity_w4() -> bool {
    (0u32..15).all(|mask| {
        let s = mask.count_ones() as i64;
        let ell = rat(3 - s);
        let a = &ell * (&ell - rat(4));
        let b = &ell * (&ell - rat(1));
        rat(18) * &ell == rat(2) * &a * &a + &b * &b
    })
}

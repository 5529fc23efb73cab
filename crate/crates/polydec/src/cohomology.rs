//! Exact-rank linear algebra over the integer boundary matrices: Betti
//! numbers, and classification of forms as closed / exact / cohomologous.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{IncidenceMatrix, PolygonalComplex};
use crate::forms::{self, DiscreteForm};

/// Default residual tolerance for float exactness checks.
pub const DEFAULT_EXACT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("form of degree {degree} is not closed (|d| = {deviation})")]
    NotClosed { degree: u8, deviation: String },
    #[error("degree {degree} out of range for this operation")]
    DegreeOutOfRange { degree: u8 },
    #[error("forms live on different complexes")]
    ComplexMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub betti: (usize, usize, usize),
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub euler: i64,
}

/// Rank over the rationals via fraction-free (Bareiss) elimination on
/// BigInt entries; exact, no tolerance.
pub fn exact_rank(m: &IncidenceMatrix) -> usize {
    let dense = m.to_dense();
    exact_rank_dense(&dense)
}

pub fn exact_rank_dense(dense: &[Vec<i64>]) -> usize {
    let rows = dense.len();
    if rows == 0 {
        return 0;
    }
    let cols = dense[0].len();
    let mut a: Vec<Vec<BigInt>> = dense
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a[i][c].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        rank += 1;
        r += 1;
    }
    rank
}

/// Betti numbers of a validated complex with real coefficients:
/// b_q = dim C^q - rank d_q - rank d_{q-1}.
pub fn betti_numbers(complex: &PolygonalComplex) -> CohomologyReport {
    let v = complex.vertex_count();
    let e = complex.edge_count();
    let f = complex.face_count();
    // rank d0 = rank of boundary_1, rank d1 = rank of boundary_2
    let rank_d0 = if e == 0 {
        0
    } else {
        exact_rank(&complex.boundary_matrix(1).expect("degree 1 valid"))
    };
    let rank_d1 = if f == 0 {
        0
    } else {
        exact_rank(&complex.boundary_matrix(2).expect("degree 2 valid"))
    };
    let b0 = v - rank_d0;
    let b1 = e - rank_d1 - rank_d0;
    let b2 = f - rank_d1;
    CohomologyReport {
        betti: (b0, b1, b2),
        rank_d0,
        rank_d1,
        euler: v as i64 - e as i64 + f as i64,
    }
}

/// Result of an exactness query: a primitive is returned when one exists
/// within tolerance; any primitive is acceptable (gauge freedom).
#[derive(Debug, Clone)]
pub struct ExactnessResult {
    pub exact: bool,
    pub primitive: Option<DiscreteForm>,
    pub residual: f64,
}

/// Coboundary matrix d_{q-1} : C^{q-1} -> C^q as dense integer rows,
/// i.e. the transpose of the degree-q boundary matrix.
#[allow(clippy::needless_range_loop)]
fn coboundary_dense(complex: &PolygonalComplex, q: u8) -> Vec<Vec<i64>> {
    let b = complex
        .boundary_matrix(q)
        .expect("degree checked by caller");
    // boundary_q maps C_q -> C_{q-1}; its transpose maps C^{q-1} -> C^q
    let mut m = vec![vec![0i64; b.rows()]; b.cols()];
    for c in 0..b.cols() {
        for &(r, s) in b.column(c) {
            m[c][r] = s as i64;
        }
    }
    m
}

/// Decide whether a = d(x) has a solution.
///
/// When all values of a are integers the question is settled exactly by
/// rational elimination; otherwise a least-squares solve (SVD) against the
/// integer coboundary matrix decides by residual max-norm against tol.
pub fn is_exact(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    tol: f64,
) -> Result<ExactnessResult, CohomologyError> {
    if a.complex_id() != complex.id() {
        return Err(CohomologyError::ComplexMismatch);
    }
    let q = a.degree();
    if !(1..=2).contains(&q) {
        return Err(CohomologyError::DegreeOutOfRange { degree: q });
    }
    let m = coboundary_dense(complex, q);
    let n_out = a.values().len();
    let n_in = if m.is_empty() { 0 } else { m[0].len() };
    debug_assert_eq!(m.len(), n_out);

    if n_out == 0 {
        return Ok(ExactnessResult {
            exact: true,
            primitive: Some(DiscreteForm::zero(complex, q - 1)),
            residual: 0.0,
        });
    }

    let integral = a
        .values()
        .iter()
        .all(|v| v.fract() == 0.0 && v.abs() < 2f64.powi(52));
    if integral {
        let rhs: Vec<BigRational> = a
            .values()
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v as i64)))
            .collect();
        match rational_solve(&m, &rhs) {
            Some(x) => {
                let values: Vec<f64> =
                    x.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
                let primitive = DiscreteForm::new(complex, q - 1, values)
                    .expect("solution length matches cell count");
                let residual = residual_max(&m, &primitive, a);
                return Ok(ExactnessResult {
                    exact: true,
                    primitive: Some(primitive),
                    residual,
                });
            }
            None => {
                // inconsistent over the rationals: compute the float
                // least-squares residual for reporting
                let (x, residual) = float_least_squares(&m, a.values(), n_in);
                let _ = x;
                return Ok(ExactnessResult {
                    exact: false,
                    primitive: None,
                    residual,
                });
            }
        }
    }

    let (x, residual) = float_least_squares(&m, a.values(), n_in);
    if residual <= tol {
        let primitive = DiscreteForm::new(complex, q - 1, x)
            .expect("solution length matches cell count");
        Ok(ExactnessResult {
            exact: true,
            primitive: Some(primitive),
            residual,
        })
    } else {
        Ok(ExactnessResult {
            exact: false,
            primitive: None,
            residual,
        })
    }
}

fn residual_max(m: &[Vec<i64>], x: &DiscreteForm, a: &DiscreteForm) -> f64 {
    m.iter()
        .zip(a.values())
        .map(|(row, &target)| {
            let got: f64 = row
                .iter()
                .zip(x.values())
                .map(|(&c, &v)| c as f64 * v)
                .sum();
            (got - target).abs()
        })
        .fold(0.0, f64::max)
}

fn float_least_squares(m: &[Vec<i64>], rhs: &[f64], n_in: usize) -> (Vec<f64>, f64) {
    let n_out = m.len();
    if n_in == 0 {
        let residual = rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        return (Vec::new(), residual);
    }
    let mat = DMatrix::from_fn(n_out, n_in, |r, c| m[r][c] as f64);
    let b = DVector::from_column_slice(rhs);
    let svd = mat.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-12)
        .unwrap_or_else(|_| DVector::zeros(n_in));
    let res = &mat * &x - &b;
    let residual = res.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    (x.iter().copied().collect(), residual)
}

/// Solve M x = rhs over the rationals; returns one solution (free
/// variables set to zero) or None when inconsistent.
#[allow(clippy::needless_range_loop)]
fn rational_solve(m: &[Vec<i64>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for j in c..=cols {
            a[r][j] = &a[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..=cols {
                    let sub = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
    }
    // inconsistent iff some zero row has nonzero rhs
    for i in r..rows {
        if !a[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &c) in pivot_col_of_row.iter().enumerate() {
        x[c] = a[row][cols].clone();
    }
    Some(x)
}

/// Two closed forms are cohomologous iff their difference is exact.
pub fn cohomologous(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
    tol: f64,
) -> Result<bool, CohomologyError> {
    for form in [a, b] {
        let d = forms::exterior_derivative(complex, form)
            .map_err(|_| CohomologyError::ComplexMismatch)?;
        let dev = d.max_abs();
        if dev > tol {
            return Err(CohomologyError::NotClosed {
                degree: form.degree(),
                deviation: format!("{dev:e}"),
            });
        }
    }
    let diff = forms::sub(a, b).map_err(|_| CohomologyError::ComplexMismatch)?;
    Ok(is_exact(complex, &diff, tol)?.exact)
}

//! Real-valued cochains (discrete differential forms), their vector-space
//! operations, and the discrete exterior derivative.

use thiserror::Error;

use crate::complex::{Chain, PolygonalComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("degree mismatch: {a} vs {b}")]
    DegreeMismatch { a: u8, b: u8 },
    #[error("forms live on different complexes")]
    ComplexMismatch,
    #[error("form degree {degree} out of range")]
    DegreeOutOfRange { degree: u8 },
    #[error("cup product degree overflow: {k} + {l} > 2")]
    DegreeOverflow { k: u8, l: u8 },
    #[error("value count {got} does not match cell count {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A real-valued q-cochain: one f64 per q-cell, in cell-id order.
///
/// Only canonical cell orientations are stored; a read through a reversed
/// orientation is the negation of the stored value.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteForm {
    degree: u8,
    values: Vec<f64>,
    complex_id: u64,
}

impl DiscreteForm {
    pub fn new(
        complex: &PolygonalComplex,
        degree: u8,
        values: Vec<f64>,
    ) -> Result<Self, FormError> {
        if degree > 3 {
            return Err(FormError::DegreeOutOfRange { degree });
        }
        let expected = if degree == 3 {
            0
        } else {
            complex.cell_count(degree)
        };
        if values.len() != expected {
            return Err(FormError::LengthMismatch {
                got: values.len(),
                expected,
            });
        }
        Ok(DiscreteForm {
            degree,
            values,
            complex_id: complex.id(),
        })
    }

    pub fn zero(complex: &PolygonalComplex, degree: u8) -> Self {
        let len = if degree == 3 {
            0
        } else {
            complex.cell_count(degree)
        };
        DiscreteForm {
            degree,
            values: vec![0.0; len],
            complex_id: complex.id(),
        }
    }

    /// The constant 0-cochain taking value 1 on every vertex.
    pub fn unit0(complex: &PolygonalComplex) -> Self {
        DiscreteForm {
            degree: 0,
            values: vec![1.0; complex.vertex_count()],
            complex_id: complex.id(),
        }
    }

    pub fn constant(complex: &PolygonalComplex, degree: u8, value: f64) -> Self {
        let mut f = DiscreteForm::zero(complex, degree);
        f.values.iter_mut().for_each(|v| *v = value);
        f
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn complex_id(&self) -> u64 {
        self.complex_id
    }

    pub fn value(&self, cell: usize) -> f64 {
        self.values[cell]
    }

    /// Value read through the opposite orientation of a cell.
    pub fn value_reversed(&self, cell: usize) -> f64 {
        -self.values[cell]
    }

    pub fn with_value(&self, cell: usize, value: f64) -> Self {
        let mut f = self.clone();
        f.values[cell] = value;
        f
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn check_compatible(&self, other: &DiscreteForm) -> Result<(), FormError> {
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch {
                a: self.degree,
                b: other.degree,
            });
        }
        if self.complex_id != other.complex_id {
            return Err(FormError::ComplexMismatch);
        }
        Ok(())
    }
}

/// Element-wise sum of two forms of equal degree on the same complex.
pub fn add(a: &DiscreteForm, b: &DiscreteForm) -> Result<DiscreteForm, FormError> {
    a.check_compatible(b)?;
    Ok(DiscreteForm {
        degree: a.degree,
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x + y)
            .collect(),
        complex_id: a.complex_id,
    })
}

pub fn sub(a: &DiscreteForm, b: &DiscreteForm) -> Result<DiscreteForm, FormError> {
    add(a, &scale(-1.0, b))
}

/// Element-wise scalar multiple.
pub fn scale(t: f64, a: &DiscreteForm) -> DiscreteForm {
    DiscreteForm {
        degree: a.degree,
        values: a.values.iter().map(|x| t * x).collect(),
        complex_id: a.complex_id,
    }
}

/// Natural pairing of a q-form with a q-chain.
pub fn evaluate(a: &DiscreteForm, chain: &Chain) -> Result<f64, FormError> {
    if a.degree != chain.degree {
        return Err(FormError::DegreeMismatch {
            a: a.degree,
            b: chain.degree,
        });
    }
    assert_eq!(a.values.len(), chain.coeffs.len());
    Ok(a
        .values
        .iter()
        .zip(&chain.coeffs)
        .map(|(v, &c)| c as f64 * v)
        .sum())
}

/// The coboundary: (da)(c) = a(boundary of c), realized as the transpose
/// action of the integer incidence matrix. d of a 2-form is the empty
/// degree-3 form, since a 2-pseudomanifold carries no 3-chains.
pub fn exterior_derivative(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    if a.complex_id != complex.id() {
        return Err(FormError::ComplexMismatch);
    }
    match a.degree {
        0 => {
            let values = complex
                .edges()
                .iter()
                .map(|&(t, h)| a.values[h as usize] - a.values[t as usize])
                .collect();
            Ok(DiscreteForm {
                degree: 1,
                values,
                complex_id: a.complex_id,
            })
        }
        1 => {
            let values = (0..complex.face_count())
                .map(|f| {
                    complex
                        .face_edges(f)
                        .iter()
                        .map(|&(e, s)| s as f64 * a.values[e])
                        .sum()
                })
                .collect();
            Ok(DiscreteForm {
                degree: 2,
                values,
                complex_id: a.complex_id,
            })
        }
        2 => Ok(DiscreteForm {
            degree: 3,
            values: Vec::new(),
            complex_id: a.complex_id,
        }),
        d => Err(FormError::DegreeOutOfRange { degree: d }),
    }
}

/// Default absolute tolerance for closedness checks.
pub const DEFAULT_CLOSED_TOL: f64 = 1e-12;

/// True iff the max-norm of da is within tol.
pub fn is_closed(complex: &PolygonalComplex, a: &DiscreteForm, tol: f64) -> bool {
    match exterior_derivative(complex, a) {
        Ok(da) => da.max_abs() <= tol,
        Err(_) => false,
    }
}

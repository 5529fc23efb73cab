//! The polygonal cup (wedge) product for all degree pairs on a
//! 2-pseudomanifold, plus a Whitney-integration oracle on the reference
//! triangle.

pub mod whitney;

use crate::complex::PolygonalComplex;
use crate::forms::{DiscreteForm, FormError};

/// Face count above which per-face products are evaluated in parallel.
#[cfg(feature = "parallel")]
const PAR_FACE_THRESHOLD: usize = 256;

/// Reads 1-form values through a face's local edge orientation: slot i of
/// face (v_0,...,v_{p-1}) is the oriented edge (v_i, v_{i+1}), which equals
/// sign * the stored edge.
#[derive(Debug, Clone, Copy)]
pub struct FaceLocalEdgeView<'a> {
    complex: &'a PolygonalComplex,
    face: usize,
}

impl<'a> FaceLocalEdgeView<'a> {
    pub fn new(complex: &'a PolygonalComplex, face: usize) -> Self {
        FaceLocalEdgeView { complex, face }
    }

    pub fn len(&self) -> usize {
        self.complex.face_edges(self.face).len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// (edge id, sign) of slot i; the sign equals the face-edge incidence
    /// number.
    pub fn slot(&self, i: usize) -> (usize, i8) {
        self.complex.face_edges(self.face)[i]
    }

    /// Face-local oriented value of a 1-form at slot i.
    pub fn value(&self, form: &DiscreteForm, i: usize) -> f64 {
        let (e, s) = self.slot(i);
        s as f64 * form.value(e)
    }
}

fn check_pair(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<(), FormError> {
    if a.complex_id() != complex.id() || b.complex_id() != complex.id() {
        return Err(FormError::ComplexMismatch);
    }
    Ok(())
}

/// Cup product of a k-form and an l-form, dispatching on (k, l).
///
/// The pairs (1,0) and (2,0) are computed as cup(b, a) with the
/// skew-commutativity sign (-1)^{kl} = +1.
pub fn cup(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    check_pair(complex, a, b)?;
    match (a.degree(), b.degree()) {
        (0, 0) => cup00(complex, a, b),
        (0, 1) => cup01(complex, a, b),
        (0, 2) => cup02(complex, a, b),
        (1, 1) => cup11(complex, a, b),
        (1, 0) => cup01(complex, b, a),
        (2, 0) => cup02(complex, b, a),
        (k, l) => Err(FormError::DegreeOverflow { k, l }),
    }
}

/// Pointwise product of two 0-forms.
pub fn cup00(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    check_pair(complex, a, b)?;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x * y)
        .collect();
    DiscreteForm::new(complex, 0, values)
}

/// Per stored edge (v_i, v_j): average of the endpoint values of the
/// 0-form times the edge value of the 1-form.
pub fn cup01(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    check_pair(complex, a, b)?;
    let values = complex
        .edges()
        .iter()
        .zip(b.values())
        .map(|(&(t, h), y)| {
            0.5 * (a.value(t as usize) + a.value(h as usize)) * y
        })
        .collect();
    DiscreteForm::new(complex, 1, values)
}

fn cup02_face(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
    f: usize,
) -> f64 {
    let verts = &complex.faces()[f];
    let p = verts.len() as f64;
    let sum: f64 = verts.iter().map(|&v| a.value(v as usize)).sum();
    (sum / p) * b.value(f)
}

/// Per p-gon face: vertex average of the 0-form times the face value.
pub fn cup02(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    check_pair(complex, a, b)?;
    let values = map_faces(complex.face_count(), |f| cup02_face(complex, a, b, f));
    DiscreteForm::new(complex, 2, values)
}

/// Value of the product of two 1-forms on one face.
///
/// The offset coefficient 1/2 - a/p is evaluated as (p - 2a)/(2p) so that
/// triangle and quad faces reproduce the simplicial 1/6 and cubical 1/4
/// coefficients bit-exactly.
pub fn cup11_face(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
    f: usize,
) -> f64 {
    let view = FaceLocalEdgeView::new(complex, f);
    let p = view.len();
    let mut total = 0.0;
    for off in 1..=((p - 1) / 2) {
        let coeff = (p as f64 - 2.0 * off as f64) / (2.0 * p as f64);
        let mut inner = 0.0;
        for i in 0..p {
            inner += view.value(a, i)
                * (view.value(b, (i + off) % p) - view.value(b, (i + p - off) % p));
        }
        total += coeff * inner;
    }
    total
}

/// Product of two 1-forms, one value per face.
pub fn cup11(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Result<DiscreteForm, FormError> {
    check_pair(complex, a, b)?;
    let values = map_faces(complex.face_count(), |f| cup11_face(complex, a, b, f));
    DiscreteForm::new(complex, 2, values)
}

fn map_faces<F>(n: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_FACE_THRESHOLD {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Sequential per-face evaluation of cup11, regardless of features.
#[doc(hidden)]
pub fn cup11_values_seq(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Vec<f64> {
    (0..complex.face_count())
        .map(|f| cup11_face(complex, a, b, f))
        .collect()
}

/// Rayon per-face evaluation of cup11; identical output to the sequential
/// path since faces are independent.
#[cfg(feature = "parallel")]
#[doc(hidden)]
pub fn cup11_values_par(
    complex: &PolygonalComplex,
    a: &DiscreteForm,
    b: &DiscreteForm,
) -> Vec<f64> {
    use rayon::prelude::*;
    (0..complex.face_count())
        .into_par_iter()
        .map(|f| cup11_face(complex, a, b, f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::forms::{self, DiscreteForm};

    fn pentagon() -> PolygonalComplex {
        build_complex(vec![vec![0, 1, 2, 3, 4]], 5, None).unwrap()
    }

    #[test]
    fn cup00_examples() {
        let c = pentagon();
        let ones = DiscreteForm::unit0(&c);
        let b = DiscreteForm::new(&c, 0, vec![3.0, 5.0, -1.0, 0.5, 2.0]).unwrap();
        assert_eq!(cup00(&c, &ones, &b).unwrap(), b);
        let a = DiscreteForm::new(&c, 0, vec![2.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        let ab = cup00(&c, &a, &b).unwrap();
        assert_eq!(ab.values()[0], 6.0);
        assert_eq!(ab.values()[1], 0.0);
        assert_eq!(cup00(&c, &b, &a).unwrap(), ab);
    }

    #[test]
    fn cup01_substitution() {
        // single edge values: a(v_i)=1, a(v_j)=3, b(e)=2 -> 4
        let c = build_complex(vec![vec![0, 1, 2]], 3, None).unwrap();
        let a = DiscreteForm::new(&c, 0, vec![1.0, 3.0, 0.0]).unwrap();
        let b = DiscreteForm::new(&c, 1, vec![2.0, 0.0, 0.0]).unwrap();
        // e0 = (0,1)
        assert_eq!(cup01(&c, &a, &b).unwrap().values()[0], 4.0);
        // constant a acts as a scalar
        let a = DiscreteForm::constant(&c, 0, 2.5);
        let b = DiscreteForm::new(&c, 1, vec![1.0, -2.0, 4.0]).unwrap();
        assert_eq!(
            cup01(&c, &a, &b).unwrap(),
            forms::scale(2.5, &b)
        );
    }

    #[test]
    fn cup02_substitution_and_unit() {
        let c = build_complex(vec![vec![0, 1, 2]], 3, None).unwrap();
        let a = DiscreteForm::new(&c, 0, vec![1.0, 2.0, 3.0]).unwrap();
        let b = DiscreteForm::new(&c, 2, vec![3.0]).unwrap();
        assert_eq!(cup02(&c, &a, &b).unwrap().values()[0], 6.0);

        // unit on a pentagon face: 5/5 = 1 exactly
        let c = pentagon();
        let b = DiscreteForm::new(&c, 2, vec![0.7]).unwrap();
        let i0 = DiscreteForm::unit0(&c);
        assert_eq!(cup(&c, &i0, &b).unwrap(), b);
        assert_eq!(cup(&c, &b, &i0).unwrap(), b);
    }

    #[test]
    fn cup11_triangle_single_term() {
        // alpha = indicator of face-edge 0, beta = indicator of face-edge 1
        let c = build_complex(vec![vec![0, 1, 2]], 3, None).unwrap();
        let slots = c.face_edges(0);
        let mut av = vec![0.0; 3];
        let mut bv = vec![0.0; 3];
        av[slots[0].0] = slots[0].1 as f64;
        bv[slots[1].0] = slots[1].1 as f64;
        let a = DiscreteForm::new(&c, 1, av).unwrap();
        let b = DiscreteForm::new(&c, 1, bv).unwrap();
        assert_eq!(cup11(&c, &a, &b).unwrap().values()[0], 1.0 / 6.0);
    }

    #[test]
    fn cup11_pentagon_indicators() {
        let c = pentagon();
        let slots = c.face_edges(0);
        let mut av = vec![0.0; 5];
        let mut bv = vec![0.0; 5];
        av[slots[0].0] = slots[0].1 as f64;
        bv[slots[1].0] = slots[1].1 as f64;
        let a = DiscreteForm::new(&c, 1, av).unwrap();
        let b = DiscreteForm::new(&c, 1, bv).unwrap();
        let ab = cup11(&c, &a, &b).unwrap();
        assert_eq!(ab.values()[0], 3.0 / 10.0);
        let ba = cup11(&c, &b, &a).unwrap();
        assert_eq!(ba.values()[0], -(3.0 / 10.0));
    }

    #[test]
    fn cup_with_zero_form_is_zero() {
        let c = pentagon();
        let a = DiscreteForm::new(&c, 1, vec![0.3, -0.7, 0.2, 0.9, -0.1]).unwrap();
        let z = DiscreteForm::zero(&c, 1);
        assert_eq!(cup(&c, &a, &z).unwrap(), DiscreteForm::zero(&c, 2));
    }

    #[test]
    fn degree_overflow_rejected() {
        let c = pentagon();
        let a = DiscreteForm::new(&c, 1, vec![1.0; 5]).unwrap();
        let b = DiscreteForm::new(&c, 2, vec![1.0]).unwrap();
        assert!(matches!(
            cup(&c, &a, &b),
            Err(FormError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn unit_is_exact_for_one_forms() {
        let c = pentagon();
        let i0 = DiscreteForm::unit0(&c);
        let a = DiscreteForm::new(&c, 1, vec![0.3, -0.7, 0.2, 0.9, -0.1]).unwrap();
        assert_eq!(cup(&c, &i0, &a).unwrap(), a);
        assert_eq!(cup(&c, &a, &i0).unwrap(), a);
    }

    #[test]
    fn seq_and_default_paths_agree() {
        let c = pentagon();
        let a = DiscreteForm::new(&c, 1, vec![0.3, -0.7, 0.2, 0.9, -0.1]).unwrap();
        let b = DiscreteForm::new(&c, 1, vec![0.5, 0.4, -0.3, 0.2, 0.1]).unwrap();
        let seq = cup11_values_seq(&c, &a, &b);
        assert_eq!(cup11(&c, &a, &b).unwrap().values(), &seq[..]);
    }
}

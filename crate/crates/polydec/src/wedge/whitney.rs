//! Exact integration of wedges of simplicial Whitney forms over the
//! reference triangle (v0, v1, v2).
//!
//! Barycentric coordinates are parametrized as x1 = u, x2 = v,
//! x0 = 1 - u - v, so the positively oriented reference triangle is
//! {u, v >= 0, u + v <= 1} with the measure du dv. With this convention
//! the Whitney 2-form of the full triangle integrates to exactly 1, which
//! is the normalization that reproduces the published simplicial cup
//! coefficients. Monomials integrate as
//! int u^a v^b du dv = a! b! / (a + b + 2)!.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhitneyError {
    #[error("unsupported degree pair ({p}, {q})")]
    UnsupportedDegreePair { p: u8, q: u8 },
    #[error("basis index {index} out of range for degree {degree}")]
    BasisIndexOutOfRange { degree: u8, index: usize },
}

/// Bivariate polynomial in (u, v) with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    // (deg_u, deg_v) -> coefficient
    terms: BTreeMap<(u32, u32), Rational64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn term(a: u32, b: u32, c: Rational64) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Poly::term(0, 0, Rational64::from_integer(c))
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational64) {
        let entry = self.terms.entry(key).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn eval(&self, u: Rational64, v: Rational64) -> Rational64 {
        let mut acc = Rational64::zero();
        for (&(a, b), &c) in &self.terms {
            let mut t = c;
            for _ in 0..a {
                t *= u;
            }
            for _ in 0..b {
                t *= v;
            }
            acc += t;
        }
        acc
    }

    /// Exact integral over the reference triangle.
    pub fn integrate_triangle(&self) -> Rational64 {
        let mut acc = Rational64::zero();
        for (&(a, b), &c) in &self.terms {
            acc += c * monomial_integral(a, b);
        }
        acc
    }

    /// Substitute u = t, v = 0 and integrate over t in [0, 1]:
    /// the restriction to the reference edge (v0, v1).
    pub fn integrate_edge01(&self) -> Rational64 {
        let mut acc = Rational64::zero();
        for (&(a, b), &c) in &self.terms {
            if b == 0 {
                acc += c / Rational64::from_integer(a as i64 + 1);
            }
        }
        acc
    }
}

fn monomial_integral(a: u32, b: u32) -> Rational64 {
    // a! b! / (a + b + 2)!
    let mut r = Rational64::from_integer(1);
    for k in 1..=a as i64 {
        r *= Rational64::from_integer(k);
    }
    for k in 1..=b as i64 {
        r *= Rational64::from_integer(k);
    }
    for k in 1..=(a + b + 2) as i64 {
        r /= Rational64::from_integer(k);
    }
    r
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let mut out = self;
        for (k, c) in rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

fn poly_scale(p: &Poly, s: Rational64) -> Poly {
    let mut out = Poly::default();
    for (&k, &c) in &p.terms {
        out.add_term(k, c * s);
    }
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    a.clone() + poly_scale(b, Rational64::from_integer(-1))
}

/// A 1-form P du + Q dv with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub du: Poly,
    pub dv: Poly,
}

impl OneForm {
    /// Wedge of two 1-forms: (P1 Q2 - Q1 P2) du^dv.
    pub fn wedge(&self, other: &OneForm) -> Poly {
        poly_sub(&(&self.du * &other.dv), &(&self.dv * &other.du))
    }

    /// Restriction to the edge (v0, v1): u = t, v = 0, dv = 0, giving a
    /// univariate coefficient against dt.
    fn restrict_edge01(&self) -> Poly {
        let mut out = Poly::default();
        for (&(a, b), &c) in &self.du.terms {
            if b == 0 {
                out.add_term((a, 0), c);
            }
        }
        out
    }
}

/// Barycentric coordinate x_i as a polynomial in (u, v).
fn bary(i: usize) -> Poly {
    match i {
        0 => {
            Poly::constant(1)
                + Poly::term(1, 0, Rational64::from_integer(-1))
                + Poly::term(0, 1, Rational64::from_integer(-1))
        }
        1 => Poly::term(1, 0, Rational64::from_integer(1)),
        2 => Poly::term(0, 1, Rational64::from_integer(1)),
        _ => unreachable!(),
    }
}

/// dx_i as a constant-coefficient 1-form.
fn dbary(i: usize) -> OneForm {
    match i {
        0 => OneForm {
            du: Poly::constant(-1),
            dv: Poly::constant(-1),
        },
        1 => OneForm {
            du: Poly::constant(1),
            dv: Poly::zero(),
        },
        2 => OneForm {
            du: Poly::zero(),
            dv: Poly::constant(1),
        },
        _ => unreachable!(),
    }
}

/// Whitney 0-form of vertex v_i: the barycentric coordinate x_i.
pub fn whitney0(i: usize) -> Poly {
    bary(i)
}

/// Edge basis of the reference triangle, in lexicographic order:
/// index 0 = (v0,v1), 1 = (v1,v2), 2 = (v0,v2).
pub const EDGE_BASIS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// Whitney 1-form of the oriented edge (v_a, v_b): x_a dx_b - x_b dx_a.
pub fn whitney1(a: usize, b: usize) -> OneForm {
    let xa = bary(a);
    let xb = bary(b);
    let da = dbary(a);
    let db = dbary(b);
    OneForm {
        du: poly_sub(&(&xa * &db.du), &(&xb * &da.du)),
        dv: poly_sub(&(&xa * &db.dv), &(&xb * &da.dv)),
    }
}

/// Whitney 2-form of the triangle (v0,v1,v2), as the coefficient of
/// du^dv: 2(x0 dx1^dx2 - x1 dx0^dx2 + x2 dx0^dx1).
pub fn whitney2() -> Poly {
    let w01 = dbary(1).wedge(&dbary(2));
    let w02 = dbary(0).wedge(&dbary(2));
    let w03 = dbary(0).wedge(&dbary(1));
    let two = Rational64::from_integer(2);
    poly_scale(
        &(&bary(0) * &w01)
            .add(poly_scale(&(&bary(1) * &w02), Rational64::from_integer(-1)))
            .add(&bary(2) * &w03),
        two,
    )
}

/// Exact value of the Wilson cup integral of the i-th and j-th basis
/// cochains of degrees p and q over the reference (p+q)-cell: the vertex
/// v0 for degree 0, the edge (v0, v1) for degree 1, and the triangle for
/// degree 2.
pub fn whitney_cup_triangle_oracle(
    p: u8,
    q: u8,
    i: usize,
    j: usize,
) -> Result<Rational64, WhitneyError> {
    let check = |degree: u8, index: usize| -> Result<(), WhitneyError> {
        let n = match degree {
            0 => 3,
            1 => 3,
            2 => 1,
            _ => 0,
        };
        if index >= n {
            return Err(WhitneyError::BasisIndexOutOfRange { degree, index });
        }
        Ok(())
    };
    check(p, i)?;
    check(q, j)?;
    let zero = Rational64::zero;
    match (p, q) {
        (0, 0) => {
            let prod = &whitney0(i) * &whitney0(j);
            Ok(prod.eval(zero(), zero()))
        }
        (0, 1) => {
            let (a, b) = EDGE_BASIS[j];
            let w = whitney1(a, b);
            let prod = &whitney0(i) * &w.restrict_edge01();
            Ok(prod.integrate_edge01())
        }
        (1, 0) => whitney_cup_triangle_oracle(0, 1, j, i),
        (0, 2) => {
            let prod = &whitney0(i) * &whitney2();
            Ok(prod.integrate_triangle())
        }
        (2, 0) => whitney_cup_triangle_oracle(0, 2, j, i),
        (1, 1) => {
            let (a1, b1) = EDGE_BASIS[i];
            let (a2, b2) = EDGE_BASIS[j];
            let w = whitney1(a1, b1).wedge(&whitney1(a2, b2));
            Ok(w.integrate_triangle())
        }
        _ => Err(WhitneyError::UnsupportedDegreePair { p, q }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn whitney_two_form_integrates_to_one() {
        assert_eq!(whitney2().integrate_triangle(), r(1, 1));
    }

    #[test]
    fn vertex_pair_evaluation() {
        assert_eq!(whitney_cup_triangle_oracle(0, 0, 0, 0).unwrap(), r(1, 1));
        assert_eq!(whitney_cup_triangle_oracle(0, 0, 0, 1).unwrap(), r(0, 1));
        assert_eq!(whitney_cup_triangle_oracle(0, 0, 1, 1).unwrap(), r(0, 1));
    }

    #[test]
    fn endpoint_weights_are_half() {
        assert_eq!(whitney_cup_triangle_oracle(0, 1, 0, 0).unwrap(), r(1, 2));
        assert_eq!(whitney_cup_triangle_oracle(0, 1, 1, 0).unwrap(), r(1, 2));
        // the opposite vertex does not see the edge
        assert_eq!(whitney_cup_triangle_oracle(0, 1, 2, 0).unwrap(), r(0, 1));
    }

    #[test]
    fn face_weights_are_third() {
        for i in 0..3 {
            assert_eq!(
                whitney_cup_triangle_oracle(0, 2, i, 0).unwrap(),
                r(1, 3)
            );
        }
    }

    #[test]
    fn one_one_gives_sixth() {
        // basis (v0,v1) against (v1,v2)
        assert_eq!(whitney_cup_triangle_oracle(1, 1, 0, 1).unwrap(), r(1, 6));
        // antisymmetry of the wedge
        assert_eq!(whitney_cup_triangle_oracle(1, 1, 1, 0).unwrap(), r(-1, 6));
        assert_eq!(whitney_cup_triangle_oracle(1, 1, 0, 0).unwrap(), r(0, 1));
    }

    #[test]
    fn unsupported_pairs_rejected() {
        assert!(matches!(
            whitney_cup_triangle_oracle(1, 2, 0, 0),
            Err(WhitneyError::UnsupportedDegreePair { .. })
        ));
        assert!(matches!(
            whitney_cup_triangle_oracle(0, 1, 0, 9),
            Err(WhitneyError::BasisIndexOutOfRange { .. })
        ));
    }
}

//! End-to-end acceptance gate: every identity the library claims, checked
//! at its stated tolerance. Each test prints a single PASS line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polydec::cohomology::{self, betti_numbers};
use polydec::complex::{build_complex, fig1_mesh, Chain};
use polydec::forms::{self, DiscreteForm};
use polydec::meshio;
use polydec::verify::{self, check_property, torus_grid, Profile, Property};
use polydec::wedge::{self, whitney::whitney_cup_triangle_oracle};

fn pass(n: u32, what: &str) {
    println!("acceptance {n:2} ({what}): PASS");
}

fn assert_holds(property: Property, trials: u64, seed: u64) -> verify::PropertyReport {
    let report = check_property(property, trials, seed);
    assert!(
        report.passed,
        "{} violated: max deviation {:e} > {:e}, witness {:?}",
        report.property.name(),
        report.max_deviation,
        report.tolerance,
        report.witness
    );
    report
}

#[test]
fn acceptance_01_chain_complex_identities_exact() {
    let r = assert_holds(Property::BoundarySqZero, 200, 101);
    assert_eq!(r.max_deviation, 0.0);
    let r = assert_holds(Property::DdZero, 200, 102);
    assert_eq!(r.max_deviation, 0.0);
    pass(1, "boundary^2 = 0 and d d = 0 exactly on 200 complexes");
}

#[test]
fn acceptance_02_leibniz_rule() {
    assert_holds(Property::Leibniz00, 1000, 201);
    assert_holds(Property::Leibniz01, 1000, 202);

    // the two-face disk fixture: the derivative of a 1-form on the
    // quadrilateral face must expand as -b(e1) + b(e3) + b(e4) + b(e5)
    let c = fig1_mesh();
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    let b = DiscreteForm::new(
        &c,
        1,
        (0..6).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
    )
    .unwrap();
    let db = forms::exterior_derivative(&c, &b).unwrap();
    let expected = -b.value(1) + b.value(3) + b.value(4) + b.value(5);
    assert_eq!(db.value(1), expected);
    let col = c.boundary_matrix(2).unwrap().dense_column(1);
    assert_eq!(col, vec![0, -1, 0, 1, 1, 1]);
    pass(2, "Leibniz (0,0) and (0,1) over 1000 meshes + disk fixture");
}

#[test]
fn acceptance_03_telescoping_identity() {
    let r = assert_holds(Property::TelescopingEq9, 200, 301);
    assert!(r.max_deviation <= 1e-12);
    pass(3, "midpoint telescoping identity for n = 3..=12, all indices");
}

#[test]
fn acceptance_04_cup_axioms() {
    let r = assert_holds(Property::Unit, 200, 401);
    assert_eq!(r.max_deviation, 0.0, "unit must be exact");
    assert_holds(Property::Bilinear, 1000, 402);
    let r = assert_holds(Property::Locality, 200, 403);
    assert_eq!(r.max_deviation, 0.0, "locality must be bit-exact");
    pass(4, "unit exact, bilinearity <= 1e-12, locality bit-exact");
}

#[test]
fn acceptance_05_skew_commutativity() {
    assert_holds(Property::Skew, 1000, 501);
    pass(5, "skew-commutativity over all degree pairs, 1000 trials");
}

#[test]
fn acceptance_06_conditional_associativity() {
    assert_holds(Property::AssocClosed, 1000, 601);
    let r = check_property(Property::AssocCounterexample, 10_000, 602);
    assert!(
        r.passed,
        "no associativity counterexample found in 10000 trials"
    );
    let w = r.witness.expect("counterexample reports its witness");
    assert!(w.deviation > 1e-6);
    pass(6, "associativity under closedness + non-closed counterexample");
}

#[test]
fn acceptance_07_specializations_exact() {
    let r = assert_holds(Property::SpecializeSimplicial, 100, 701);
    assert_eq!(r.max_deviation, 0.0);
    let r = assert_holds(Property::SpecializeCubical, 100, 702);
    assert_eq!(r.max_deviation, 0.0);
    pass(7, "triangle (1/6) and quad (1/4) formulas, 100 meshes each");
}

#[test]
fn acceptance_08_whitney_oracle_rational() {
    use num_rational::Rational64;
    let r = |n, d| Rational64::new(n, d);
    assert_eq!(whitney_cup_triangle_oracle(0, 0, 0, 0).unwrap(), r(1, 1));
    assert_eq!(whitney_cup_triangle_oracle(0, 1, 0, 0).unwrap(), r(1, 2));
    assert_eq!(whitney_cup_triangle_oracle(0, 1, 1, 0).unwrap(), r(1, 2));
    for i in 0..3 {
        assert_eq!(whitney_cup_triangle_oracle(0, 2, i, 0).unwrap(), r(1, 3));
    }
    assert_eq!(whitney_cup_triangle_oracle(1, 1, 0, 1).unwrap(), r(1, 6));
    pass(8, "Whitney integrals recover {1, 1/2, 1/2, 1/3, 1/6} exactly");
}

fn cube_complex() -> polydec::PolygonalComplex {
    // unit cube, faces listed counterclockwise seen from outside
    build_complex(
        vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ],
        8,
        None,
    )
    .unwrap()
}

#[test]
fn acceptance_09_cohomology() {
    assert_eq!(betti_numbers(&cube_complex()).betti, (1, 0, 1));

    let (faces, vertices) = torus_grid(4, 4);
    let torus = build_complex(faces, vertices, None).unwrap();
    assert_eq!(betti_numbers(&torus).betti, (1, 2, 1));

    assert_eq!(betti_numbers(&fig1_mesh()).betti, (1, 0, 0));

    // Euler identity on generated meshes across all profiles
    for seed in 0..60u64 {
        let c = verify::gen_complex(seed, Profile::ALL[(seed % 6) as usize]);
        let r = betti_numbers(&c);
        let (b0, b1, b2) = r.betti;
        assert_eq!(
            b0 as i64 - b1 as i64 + b2 as i64,
            r.euler,
            "Euler identity failed at seed {seed}"
        );
    }

    // H^1 generators of the 4x4 torus: indicators of the edges crossing
    // the two cut circles, valued against the stored edge orientation
    let v = |i: usize, j: usize| -> u32 { ((j % 4) * 4 + (i % 4)) as u32 };
    let edge_id = |a: u32, b: u32| -> usize {
        let key = (a.min(b), a.max(b));
        torus
            .edges()
            .iter()
            .position(|&e| e == key)
            .expect("edge exists")
    };
    let mut alpha = vec![0.0; torus.edge_count()];
    let mut beta = vec![0.0; torus.edge_count()];
    for j in 0..4 {
        alpha[edge_id(v(3, j), v(0, j))] = 1.0;
        beta[edge_id(v(j, 3), v(j, 0))] = 1.0;
    }
    let alpha = DiscreteForm::new(&torus, 1, alpha).unwrap();
    let beta = DiscreteForm::new(&torus, 1, beta).unwrap();
    assert!(forms::is_closed(&torus, &alpha, 0.0));
    assert!(forms::is_closed(&torus, &beta, 0.0));
    assert!(!cohomology::is_exact(&torus, &alpha, 1e-8).unwrap().exact);
    assert!(!cohomology::is_exact(&torus, &beta, 1e-8).unwrap().exact);
    assert!(!cohomology::cohomologous(&torus, &alpha, &beta, 1e-8).unwrap());

    let fundamental = Chain {
        degree: 2,
        coeffs: vec![1; torus.face_count()],
    };
    let pairing = forms::evaluate(
        &wedge::cup(&torus, &alpha, &beta).unwrap(),
        &fundamental,
    )
    .unwrap();
    assert!(
        pairing.abs() > 1e-9,
        "cup pairing of independent generators vanished: {pairing}"
    );
    pass(9, "sphere/torus/disk Betti, Euler identity, torus cup pairing");
}

#[test]
fn acceptance_10_io_roundtrip_and_fuzz() {
    let off = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";
    let m = meshio::parse_off(off).unwrap();
    let c = build_complex(m.faces.clone(), m.vertex_count(), Some(m.coords)).unwrap();
    assert_eq!(
        (c.vertex_count(), c.edge_count(), c.face_count()),
        (3, 3, 1)
    );
    let obj = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2/2/2 3/3/3\n";
    let m = meshio::parse_obj(obj).unwrap();
    assert_eq!((m.vertex_count(), m.faces.len()), (3, 1));

    // bit-exact form round-trips through the text format
    let torus = {
        let (faces, vertices) = torus_grid(4, 4);
        build_complex(faces, vertices, None).unwrap()
    };
    for seed in 0..20u64 {
        for degree in 0..=2u8 {
            let f = verify::gen_form(seed, &torus, degree).unwrap();
            let back = meshio::read_form(&meshio::write_form(&f), &torus).unwrap();
            assert_eq!(f.values(), back.values());
        }
    }

    // 10000 random byte strings: structured error or success, never a panic
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let tri = build_complex(vec![vec![0, 1, 2]], 3, None).unwrap();
    for _ in 0..10_000 {
        let len = rng.gen_range(0..200);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let text = String::from_utf8_lossy(&bytes);
        let _ = meshio::parse_off(&text);
        let _ = meshio::parse_obj(&text);
        let _ = meshio::read_form(&text, &tri);
    }
    pass(10, "OFF/OBJ parse, bit-exact form round-trip, 10000-input fuzz");
}

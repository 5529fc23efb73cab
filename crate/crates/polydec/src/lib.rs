//! Discrete exterior calculus on 2-dimensional polygonal pseudomanifolds:
//! chains and cochains, boundary and coboundary operators, a cup product
//! defined directly on polygonal faces, exact cohomology computation, and
//! a randomized verification harness for the algebraic identities.

pub mod cohomology;
pub mod complex;
pub mod forms;
pub mod meshio;
pub mod verify;
pub mod wedge;

pub use cohomology::{betti_numbers, is_exact, CohomologyReport};
pub use complex::{
    build_complex, build_complex_oriented, CellId, Chain, ComplexError,
    PolygonalComplex,
};
pub use forms::{exterior_derivative, DiscreteForm, FormError};
pub use verify::{check_property, gen_complex, gen_form, Profile, Property};
pub use wedge::cup;

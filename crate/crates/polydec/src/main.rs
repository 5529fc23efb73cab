use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polydec::cohomology;
use polydec::complex::{
    build_complex, build_complex_oriented, PolygonalComplex,
};
use polydec::forms::{self, FormError};
use polydec::meshio;
use polydec::verify::{self, Profile, Property};
use polydec::wedge;

// 0 = success, 1 = property violated, 2 = usage/parse error,
// 3 = mesh validation failure, 4 = domain error
const EXIT_PROPERTY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_DOMAIN: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeshFormat {
    Off,
    Obj,
}

#[derive(Parser)]
#[command(
    name = "polydec",
    version,
    about = "Discrete exterior calculus on polygonal 2-pseudomanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a mesh and check the pseudomanifold conditions.
    Validate {
        mesh: PathBuf,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
        /// Re-orient faces coherently instead of requiring coherent input.
        #[arg(long)]
        orient: bool,
    },
    /// Apply the discrete exterior derivative to a form; result on stdout.
    Derivative {
        mesh: PathBuf,
        form: PathBuf,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
        #[arg(long)]
        orient: bool,
    },
    /// Cup product of two forms; result on stdout.
    Wedge {
        mesh: PathBuf,
        form_a: PathBuf,
        form_b: PathBuf,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
        #[arg(long)]
        orient: bool,
    },
    /// Betti numbers and boundary-operator ranks via exact arithmetic.
    Betti {
        mesh: PathBuf,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
        #[arg(long)]
        orient: bool,
    },
    /// Run a property suite over randomly generated meshes and forms.
    Check {
        /// Property name, e.g. leibniz01, skew, telescoping_eq9.
        property: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mesh family: triangles, quads, mixed, sphere, torus, disk.
        #[arg(long)]
        profile: Option<String>,
        /// Override the property's built-in tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load_mesh(
    path: &PathBuf,
    format: MeshFormat,
    orient: bool,
) -> Result<PolygonalComplex, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let raw = match format {
        MeshFormat::Off => meshio::parse_off(&text),
        MeshFormat::Obj => meshio::parse_obj(&text),
    }
    .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let vertex_count = raw.vertex_count();
    let coords = (!raw.coords.is_empty()).then_some(raw.coords);
    let built = if orient {
        build_complex_oriented(raw.faces, vertex_count, coords)
    } else {
        build_complex(raw.faces, vertex_count, coords)
    };
    built.map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))
}

fn load_form(
    path: &PathBuf,
    complex: &PolygonalComplex,
) -> Result<forms::DiscreteForm, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    meshio::read_form(&text, complex)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn cmd_validate(mesh: PathBuf, format: MeshFormat, orient: bool) -> ExitCode {
    let c = match load_mesh(&mesh, format, orient) {
        Ok(c) => c,
        Err(code) => return code,
    };
    println!(
        "V={} E={} F={}",
        c.vertex_count(),
        c.edge_count(),
        c.face_count()
    );
    println!("boundary={}", c.boundary_flag());
    println!(
        "euler={}",
        c.vertex_count() as i64 - c.edge_count() as i64 + c.face_count() as i64
    );
    ExitCode::SUCCESS
}

fn cmd_derivative(
    mesh: PathBuf,
    form: PathBuf,
    format: MeshFormat,
    orient: bool,
) -> ExitCode {
    let c = match load_mesh(&mesh, format, orient) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let a = match load_form(&form, &c) {
        Ok(a) => a,
        Err(code) => return code,
    };
    if a.degree() == 2 {
        eprintln!("warning: derivative of a 2-form is the empty degree-3 form");
    }
    match forms::exterior_derivative(&c, &a) {
        Ok(da) => {
            print!("{}", meshio::write_form(&da));
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_DOMAIN, e),
    }
}

fn cmd_wedge(
    mesh: PathBuf,
    form_a: PathBuf,
    form_b: PathBuf,
    format: MeshFormat,
    orient: bool,
) -> ExitCode {
    let c = match load_mesh(&mesh, format, orient) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let a = match load_form(&form_a, &c) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let b = match load_form(&form_b, &c) {
        Ok(b) => b,
        Err(code) => return code,
    };
    match wedge::cup(&c, &a, &b) {
        Ok(ab) => {
            print!("{}", meshio::write_form(&ab));
            ExitCode::SUCCESS
        }
        Err(e @ FormError::DegreeOverflow { .. }) => fail(EXIT_DOMAIN, e),
        Err(e) => fail(EXIT_DOMAIN, e),
    }
}

fn cmd_betti(mesh: PathBuf, format: MeshFormat, orient: bool) -> ExitCode {
    let c = match load_mesh(&mesh, format, orient) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let report = cohomology::betti_numbers(&c);
    println!(
        "b0={} b1={} b2={}",
        report.betti.0, report.betti.1, report.betti.2
    );
    println!("rank_d0={}", report.rank_d0);
    println!("rank_d1={}", report.rank_d1);
    println!("euler={}", report.euler);
    ExitCode::SUCCESS
}

fn cmd_check(
    property: String,
    trials: u64,
    seed: u64,
    profile: Option<String>,
    tol: Option<f64>,
) -> ExitCode {
    let property: Property = match property.parse() {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let profile: Option<Profile> = match profile.map(|p| p.parse()).transpose() {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    if trials == 0 {
        return fail(EXIT_PARSE, "--trials must be at least 1");
    }
    let mut report =
        verify::check_property_with_profile(property, trials, seed, profile);
    if let Some(tol) = tol {
        report.tolerance = tol;
        report.passed = if property == Property::AssocCounterexample {
            report.max_deviation > tol
        } else {
            report.max_deviation <= tol
        };
    }
    print!("{report}");
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PROPERTY)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate {
            mesh,
            format,
            orient,
        } => cmd_validate(mesh, format, orient),
        Command::Derivative {
            mesh,
            form,
            format,
            orient,
        } => cmd_derivative(mesh, form, format, orient),
        Command::Wedge {
            mesh,
            form_a,
            form_b,
            format,
            orient,
        } => cmd_wedge(mesh, form_a, form_b, format, orient),
        Command::Betti {
            mesh,
            format,
            orient,
        } => cmd_betti(mesh, format, orient),
        Command::Check {
            property,
            trials,
            seed,
            profile,
            tol,
        } => cmd_check(property, trials, seed, profile, tol),
    }
}

//! Parsers for polygonal meshes (OFF, OBJ subsets) and the cochain text
//! format. Text in, values out; parsers return structured errors and
//! never panic on arbitrary input.

use thiserror::Error;

use crate::complex::PolygonalComplex;
use crate::forms::{DiscreteForm, FormError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: count mismatch: {detail}")]
    CountMismatch { line: usize, detail: String },
    #[error("line {line}: index {index} out of range (have {count} vertices)")]
    IndexOutOfRange {
        line: usize,
        index: i64,
        count: usize,
    },
    #[error("line {line}: unparseable number {token:?}")]
    UnparseableNumber { line: usize, token: String },
    #[error("line {line}: malformed face: {detail}")]
    MalformedFace { line: usize, detail: String },
}

/// A parsed mesh: coordinates plus polygonal faces, not yet validated as
/// a pseudomanifold.
#[derive(Debug, Clone, PartialEq)]
pub struct RawMesh {
    pub coords: Vec<[f64; 3]>,
    pub faces: Vec<Vec<u32>>,
}

impl RawMesh {
    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }
}

/// Lines with content, `#` comments and blanks skipped, 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

fn parse_f64(line: usize, token: &str) -> Result<f64, ParseError> {
    token.parse().map_err(|_| ParseError::UnparseableNumber {
        line,
        token: token.to_string(),
    })
}

fn parse_usize(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::UnparseableNumber {
        line,
        token: token.to_string(),
    })
}

/// OFF: literal `OFF`, counts line `V F E` (E ignored), V coordinate
/// lines, then F face lines `p i0 ... i_{p-1}`.
pub fn parse_off(text: &str) -> Result<RawMesh, ParseError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or(ParseError::MalformedHeader {
        line: 1,
        detail: "empty input".into(),
    })?;
    if header != "OFF" {
        return Err(ParseError::MalformedHeader {
            line: ln,
            detail: format!("expected literal OFF, got {header:?}"),
        });
    }
    let (ln, counts) = lines.next().ok_or(ParseError::MalformedHeader {
        line: ln,
        detail: "missing counts line".into(),
    })?;
    let parts: Vec<&str> = counts.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(ParseError::MalformedHeader {
            line: ln,
            detail: format!("counts line needs V F E, got {counts:?}"),
        });
    }
    let v_count = parse_usize(ln, parts[0])?;
    let f_count = parse_usize(ln, parts[1])?;
    let _e_count = parse_usize(ln, parts[2])?;

    let mut coords = Vec::with_capacity(v_count);
    for _ in 0..v_count {
        let (ln, l) = lines.next().ok_or(ParseError::CountMismatch {
            line: ln,
            detail: format!("expected {v_count} vertex lines"),
        })?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() < 3 {
            return Err(ParseError::CountMismatch {
                line: ln,
                detail: format!("vertex line needs 3 coordinates, got {l:?}"),
            });
        }
        coords.push([
            parse_f64(ln, parts[0])?,
            parse_f64(ln, parts[1])?,
            parse_f64(ln, parts[2])?,
        ]);
    }

    let mut faces = Vec::with_capacity(f_count);
    for _ in 0..f_count {
        let (ln, l) = lines.next().ok_or(ParseError::CountMismatch {
            line: ln,
            detail: format!("expected {f_count} face lines"),
        })?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        let p = parse_usize(ln, parts[0])?;
        if parts.len() != p + 1 {
            return Err(ParseError::CountMismatch {
                line: ln,
                detail: format!("face declares {p} vertices, line has {}", parts.len() - 1),
            });
        }
        let mut face = Vec::with_capacity(p);
        for tok in &parts[1..] {
            let idx = parse_usize(ln, tok)?;
            if idx >= v_count {
                return Err(ParseError::IndexOutOfRange {
                    line: ln,
                    index: idx as i64,
                    count: v_count,
                });
            }
            face.push(idx as u32);
        }
        faces.push(face);
    }
    if let Some((ln, l)) = lines.next() {
        return Err(ParseError::CountMismatch {
            line: ln,
            detail: format!("trailing content after {f_count} faces: {l:?}"),
        });
    }
    Ok(RawMesh { coords, faces })
}

pub fn serialize_off(mesh: &RawMesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} 0\n",
        mesh.coords.len(),
        mesh.faces.len()
    ));
    for c in &mesh.coords {
        out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
    }
    for f in &mesh.faces {
        out.push_str(&f.len().to_string());
        for v in f {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

/// OBJ subset: `v x y z` and `f i j k ...` with 1-based indices; `i/t/n`
/// forms keep only the vertex index; all other directives are ignored.
pub fn parse_obj(text: &str) -> Result<RawMesh, ParseError> {
    let mut coords = Vec::new();
    let mut faces = Vec::new();
    for (ln, l) in content_lines(text) {
        let mut parts = l.split_whitespace();
        match parts.next() {
            Some("v") => {
                let toks: Vec<&str> = parts.collect();
                if toks.len() < 3 {
                    return Err(ParseError::CountMismatch {
                        line: ln,
                        detail: format!("vertex line needs 3 coordinates, got {l:?}"),
                    });
                }
                coords.push([
                    parse_f64(ln, toks[0])?,
                    parse_f64(ln, toks[1])?,
                    parse_f64(ln, toks[2])?,
                ]);
            }
            Some("f") => {
                let mut face = Vec::new();
                for tok in parts {
                    let vtok = tok.split('/').next().unwrap_or("");
                    let idx: i64 =
                        vtok.parse().map_err(|_| ParseError::UnparseableNumber {
                            line: ln,
                            token: tok.to_string(),
                        })?;
                    if idx < 1 || idx as usize > coords.len() {
                        return Err(ParseError::IndexOutOfRange {
                            line: ln,
                            index: idx,
                            count: coords.len(),
                        });
                    }
                    face.push((idx - 1) as u32);
                }
                if face.is_empty() {
                    return Err(ParseError::MalformedFace {
                        line: ln,
                        detail: "face directive without indices".into(),
                    });
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    Ok(RawMesh { coords, faces })
}

/// Cochain text format: line 1 `DFORM <degree> <cell_count>`, then one
/// decimal float per line in cell-id order.
pub fn read_form(
    text: &str,
    complex: &PolygonalComplex,
) -> Result<DiscreteForm, ParseError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or(ParseError::MalformedHeader {
        line: 1,
        detail: "empty input".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "DFORM" {
        return Err(ParseError::MalformedHeader {
            line: ln,
            detail: format!("expected `DFORM <degree> <cell_count>`, got {header:?}"),
        });
    }
    let degree: u8 = parts[1].parse().map_err(|_| ParseError::UnparseableNumber {
        line: ln,
        token: parts[1].to_string(),
    })?;
    let count = parse_usize(ln, parts[2])?;
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, l) = lines.next().ok_or(ParseError::CountMismatch {
            line: ln,
            detail: format!("expected {count} value lines"),
        })?;
        values.push(parse_f64(ln, l)?);
    }
    if let Some((ln, l)) = lines.next() {
        return Err(ParseError::CountMismatch {
            line: ln,
            detail: format!("trailing content after {count} values: {l:?}"),
        });
    }
    DiscreteForm::new(complex, degree, values).map_err(|e| match e {
        FormError::LengthMismatch { got, expected } => ParseError::CountMismatch {
            line: 1,
            detail: format!(
                "form declares {got} cells but complex has {expected} of degree {degree}"
            ),
        },
        other => ParseError::MalformedHeader {
            line: 1,
            detail: other.to_string(),
        },
    })
}

/// Shortest round-trip decimal formatting; `read_form(write_form(f))` is
/// bit-exact.
pub fn write_form(form: &DiscreteForm) -> String {
    let mut out = format!("DFORM {} {}\n", form.degree(), form.values().len());
    for v in form.values() {
        out.push_str(&format!("{v}\n"));
    }
    out
}

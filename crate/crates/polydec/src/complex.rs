//! Oriented polygonal 2-pseudomanifolds: construction, validation,
//! incidence numbers, and the boundary operator on integer chains.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

static NEXT_COMPLEX_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face {face} is degenerate: {reason}")]
    DegenerateFace { face: usize, reason: String },
    #[error("face {face} references vertex {vertex} but vertex_count is {vertex_count}")]
    VertexOutOfRange {
        face: usize,
        vertex: u32,
        vertex_count: usize,
    },
    #[error("not a pseudomanifold (condition {condition}): {detail}")]
    NotAPseudomanifold { condition: u8, detail: String },
    #[error("nonorientable: coherent orientation fails at edge {edge}")]
    Nonorientable { edge: usize },
    #[error("chain degree {degree} out of range")]
    DegreeOutOfRange { degree: u8 },
    #[error("unknown cell (degree {degree}, index {index})")]
    UnknownCell { degree: u8, index: usize },
    #[error("edge list does not match faces: {0}")]
    EdgeListMismatch(String),
}

/// A cell of the complex, identified by degree and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub degree: u8,
    pub index: usize,
}

impl CellId {
    pub fn vertex(index: usize) -> Self {
        CellId { degree: 0, index }
    }
    pub fn edge(index: usize) -> Self {
        CellId { degree: 1, index }
    }
    pub fn face(index: usize) -> Self {
        CellId { degree: 2, index }
    }
}

/// Integer-valued function on oriented n-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub degree: u8,
    pub coeffs: Vec<i64>,
}

impl Chain {
    pub fn zero(degree: u8, len: usize) -> Self {
        Chain {
            degree,
            coeffs: vec![0; len],
        }
    }

    /// The chain taking value 1 on a single cell.
    pub fn unit(degree: u8, len: usize, index: usize) -> Self {
        let mut c = Chain::zero(degree, len);
        c.coeffs[index] = 1;
        c
    }

    pub fn neg(&self) -> Self {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|v| -v).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&v| v == 0)
    }
}

/// Sparse integer matrix of incidence numbers: columns are n-cells,
/// rows are (n-1)-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    // per column, (row, sign) sorted by row
    col_entries: Vec<Vec<(usize, i8)>>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.col_entries[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, s)| *s)
            .unwrap_or(0)
    }

    pub fn column(&self, col: usize) -> &[(usize, i8)] {
        &self.col_entries[col]
    }

    /// Dense column as a signed vector over all rows.
    pub fn dense_column(&self, col: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.rows];
        for &(r, s) in &self.col_entries[col] {
            v[r] = s as i64;
        }
        v
    }

    /// Exact integer check that `self * other` is the zero matrix.
    pub fn product_is_zero(&self, other: &IncidenceMatrix) -> bool {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        for col in &other.col_entries {
            let mut acc = vec![0i64; self.rows];
            for &(mid, s) in col {
                for &(r, t) in &self.col_entries[mid] {
                    acc[r] += s as i64 * t as i64;
                }
            }
            if acc.iter().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols]; self.rows];
        for (c, col) in self.col_entries.iter().enumerate() {
            for &(r, s) in col {
                m[r][c] = s as i64;
            }
        }
        m
    }
}

/// A validated oriented polygonal 2-pseudomanifold.
///
/// Immutable after construction; all operations are pure reads.
#[derive(Debug, Clone)]
pub struct PolygonalComplex {
    id: u64,
    vertex_count: usize,
    /// Stored oriented edges (tail, head); index is the edge id.
    edges: Vec<(u32, u32)>,
    /// Cyclic vertex sequences; index is the face id. The cyclic order IS
    /// the face orientation.
    faces: Vec<Vec<u32>>,
    coords: Option<Vec<[f64; 3]>>,
    /// Per face, per slot i: (edge id, sign) such that the face-local
    /// oriented edge (v_i, v_{i+1}) equals sign * stored edge.
    face_edges: Vec<Vec<(usize, i8)>>,
    edge_faces: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    boundary_flag: bool,
}

fn canonical(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn validate_faces(
    faces: &[Vec<u32>],
    vertex_count: usize,
) -> Result<(), ComplexError> {
    for (fi, f) in faces.iter().enumerate() {
        if f.len() < 3 {
            return Err(ComplexError::DegenerateFace {
                face: fi,
                reason: format!("only {} vertices", f.len()),
            });
        }
        let mut seen = BTreeSet::new();
        for &v in f {
            if (v as usize) >= vertex_count {
                return Err(ComplexError::VertexOutOfRange {
                    face: fi,
                    vertex: v,
                    vertex_count,
                });
            }
            if !seen.insert(v) {
                return Err(ComplexError::DegenerateFace {
                    face: fi,
                    reason: format!("repeated vertex {v}"),
                });
            }
        }
    }
    Ok(())
}

/// Build and validate a complex from face lists.
///
/// Edges are discovered by traversing faces; the stored orientation of an
/// edge is (min vertex id, max vertex id) and edge ids follow the
/// lexicographic order of these canonical pairs, so ids do not depend on
/// the input face order. The user's cyclic face order is taken as the face
/// orientation and is never flipped; incoherent input is rejected.
pub fn build_complex(
    faces: Vec<Vec<u32>>,
    vertex_count: usize,
    coords: Option<Vec<[f64; 3]>>,
) -> Result<PolygonalComplex, ComplexError> {
    build_complex_with_options(faces, vertex_count, coords, false)
}

/// Like [`build_complex`], but first runs a coherent re-orientation pass
/// (BFS over the dual graph, flipping cyclic orders where needed).
pub fn build_complex_oriented(
    faces: Vec<Vec<u32>>,
    vertex_count: usize,
    coords: Option<Vec<[f64; 3]>>,
) -> Result<PolygonalComplex, ComplexError> {
    build_complex_with_options(faces, vertex_count, coords, true)
}

pub fn build_complex_with_options(
    faces: Vec<Vec<u32>>,
    vertex_count: usize,
    coords: Option<Vec<[f64; 3]>>,
    orient: bool,
) -> Result<PolygonalComplex, ComplexError> {
    validate_faces(&faces, vertex_count)?;

    let mut pairs = BTreeSet::new();
    for f in &faces {
        for i in 0..f.len() {
            pairs.insert(canonical(f[i], f[(i + 1) % f.len()]));
        }
    }
    let edges: Vec<(u32, u32)> = pairs.into_iter().collect();

    let faces = if orient {
        coherently_orient(&edges, faces)?
    } else {
        faces
    };

    finish_build(vertex_count, edges, faces, coords, !orient)
}

/// Build a complex with an explicitly supplied edge list (ids and
/// orientations). The edge list must cover exactly the edges appearing in
/// the faces, each once. Used for fixtures whose edge labels must match an
/// external convention.
pub fn build_complex_with_edges(
    faces: Vec<Vec<u32>>,
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    coords: Option<Vec<[f64; 3]>>,
) -> Result<PolygonalComplex, ComplexError> {
    validate_faces(&faces, vertex_count)?;
    let mut derived = BTreeSet::new();
    for f in &faces {
        for i in 0..f.len() {
            derived.insert(canonical(f[i], f[(i + 1) % f.len()]));
        }
    }
    let supplied: BTreeSet<(u32, u32)> =
        edges.iter().map(|&(a, b)| canonical(a, b)).collect();
    if supplied.len() != edges.len() {
        return Err(ComplexError::EdgeListMismatch(
            "duplicate edge in supplied list".into(),
        ));
    }
    if supplied != derived {
        return Err(ComplexError::EdgeListMismatch(
            "supplied edges differ from face-derived edges".into(),
        ));
    }
    finish_build(vertex_count, edges, faces, coords, true)
}

fn finish_build(
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    faces: Vec<Vec<u32>>,
    coords: Option<Vec<[f64; 3]>>,
    check_coherence: bool,
) -> Result<PolygonalComplex, ComplexError> {
    let edge_index: BTreeMap<(u32, u32), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (canonical(a, b), i))
        .collect();

    let mut face_edges = Vec::with_capacity(faces.len());
    let mut edge_faces = vec![Vec::new(); edges.len()];
    for (fi, f) in faces.iter().enumerate() {
        let mut slots = Vec::with_capacity(f.len());
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            let eid = edge_index[&canonical(a, b)];
            let sign = if (a, b) == edges[eid] { 1i8 } else { -1i8 };
            slots.push((eid, sign));
            edge_faces[eid].push(fi);
        }
        face_edges.push(slots);
    }

    // pseudomanifold condition 2: every edge in at most two faces
    for (eid, fs) in edge_faces.iter().enumerate() {
        if fs.len() > 2 {
            return Err(ComplexError::NotAPseudomanifold {
                condition: 2,
                detail: format!("edge {eid} is incident to {} faces", fs.len()),
            });
        }
    }

    // condition 1: every vertex (and edge, automatic here) bounds a face
    let mut vertex_faces = vec![Vec::new(); vertex_count];
    let mut vertex_edges = vec![Vec::new(); vertex_count];
    for (fi, f) in faces.iter().enumerate() {
        for &v in f {
            vertex_faces[v as usize].push(fi);
        }
    }
    for (eid, &(a, b)) in edges.iter().enumerate() {
        vertex_edges[a as usize].push(eid);
        vertex_edges[b as usize].push(eid);
    }
    if let Some(v) = vertex_faces.iter().position(|fs| fs.is_empty()) {
        if !(faces.is_empty() && vertex_count == 0) {
            return Err(ComplexError::NotAPseudomanifold {
                condition: 1,
                detail: format!("vertex {v} is not a face of any 2-cell"),
            });
        }
    }

    // condition 3: face-adjacency graph connected
    if faces.len() > 1 {
        let mut seen = vec![false; faces.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(fi) = queue.pop_front() {
            for &(eid, _) in &face_edges[fi] {
                for &g in &edge_faces[eid] {
                    if !seen[g] {
                        seen[g] = true;
                        count += 1;
                        queue.push_back(g);
                    }
                }
            }
        }
        if count != faces.len() {
            let orphan = seen.iter().position(|s| !s).unwrap();
            return Err(ComplexError::NotAPseudomanifold {
                condition: 3,
                detail: format!(
                    "faces 0 and {orphan} are not connected through shared edges"
                ),
            });
        }
    }

    // orientation coherence on interior edges
    if check_coherence {
        for (eid, fs) in edge_faces.iter().enumerate() {
            if fs.len() == 2 {
                let s0 = face_sign(&face_edges[fs[0]], eid);
                let s1 = face_sign(&face_edges[fs[1]], eid);
                if s0 + s1 != 0 {
                    return Err(ComplexError::Nonorientable { edge: eid });
                }
            }
        }
    }

    // incidence condition 4: holds by construction, asserted anyway
    for (fi, f) in faces.iter().enumerate() {
        let p = f.len();
        for i in 0..p {
            let v = f[i];
            let (e_in, s_in) = face_edges[fi][(i + p - 1) % p];
            let (e_out, s_out) = face_edges[fi][i];
            let inc = |eid: usize, s: i8| -> i64 {
                let (t, h) = edges[eid];
                let ev = if v == h {
                    1
                } else {
                    debug_assert_eq!(v, t);
                    -1
                };
                s as i64 * ev
            };
            if inc(e_in, s_in) + inc(e_out, s_out) != 0 {
                return Err(ComplexError::NotAPseudomanifold {
                    condition: 4,
                    detail: format!(
                        "incidence condition 4 fails at face {fi}, vertex {v}"
                    ),
                });
            }
        }
    }

    let boundary_flag = edge_faces.iter().any(|fs| fs.len() == 1);

    Ok(PolygonalComplex {
        id: NEXT_COMPLEX_ID.fetch_add(1, Ordering::Relaxed),
        vertex_count,
        edges,
        faces,
        coords,
        face_edges,
        edge_faces,
        vertex_edges,
        vertex_faces,
        boundary_flag,
    })
}

fn face_sign(slots: &[(usize, i8)], eid: usize) -> i8 {
    slots
        .iter()
        .find(|(e, _)| *e == eid)
        .map(|(_, s)| *s)
        .unwrap()
}

/// BFS over the dual graph assigning flips so every interior edge becomes
/// coherent; fails on genuinely nonorientable input.
fn coherently_orient(
    edges: &[(u32, u32)],
    mut faces: Vec<Vec<u32>>,
) -> Result<Vec<Vec<u32>>, ComplexError> {
    let edge_index: BTreeMap<(u32, u32), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (canonical(a, b), i))
        .collect();
    // face-local sign per edge before any flip
    let mut face_signs: Vec<BTreeMap<usize, i8>> = Vec::with_capacity(faces.len());
    let mut edge_faces: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (fi, f) in faces.iter().enumerate() {
        let mut m = BTreeMap::new();
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            let eid = edge_index[&canonical(a, b)];
            m.insert(eid, if a < b { 1i8 } else { -1i8 });
            edge_faces[eid].push(fi);
        }
        face_signs.push(m);
    }
    let mut flip: Vec<Option<bool>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if flip[start].is_some() {
            continue;
        }
        flip[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(fi) = queue.pop_front() {
            for (&eid, &s) in &face_signs[fi] {
                for &g in &edge_faces[eid] {
                    if g == fi {
                        continue;
                    }
                    let sg = face_signs[g][&eid];
                    let s_eff = if flip[fi].unwrap() { -s } else { s };
                    // need effective signs opposite across the edge
                    let want_flip = s_eff == sg;
                    match flip[g] {
                        None => {
                            flip[g] = Some(want_flip);
                            queue.push_back(g);
                        }
                        Some(have) => {
                            if have != want_flip {
                                return Err(ComplexError::Nonorientable {
                                    edge: eid,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for (fi, f) in faces.iter_mut().enumerate() {
        if flip[fi] == Some(true) {
            f.reverse();
        }
    }
    Ok(faces)
}

impl PolygonalComplex {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn cell_count(&self, degree: u8) -> usize {
        match degree {
            0 => self.vertex_count,
            1 => self.edges.len(),
            2 => self.faces.len(),
            _ => 0,
        }
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn coords(&self) -> Option<&[[f64; 3]]> {
        self.coords.as_deref()
    }

    /// Per-slot (edge id, sign) pairs of a face; slot i carries the
    /// face-local oriented edge (v_i, v_{i+1}).
    pub fn face_edges(&self, face: usize) -> &[(usize, i8)] {
        &self.face_edges[face]
    }

    pub fn edge_faces(&self, edge: usize) -> &[usize] {
        &self.edge_faces[edge]
    }

    pub fn boundary_flag(&self) -> bool {
        self.boundary_flag
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// True iff every face is a triangle / quadrilateral.
    pub fn all_faces_have_degree(&self, p: usize) -> bool {
        self.faces.iter().all(|f| f.len() == p)
    }

    /// Incidence matrix of the boundary operator in degree n (1 or 2).
    pub fn boundary_matrix(&self, n: u8) -> Result<IncidenceMatrix, ComplexError> {
        match n {
            1 => {
                let mut cols = Vec::with_capacity(self.edges.len());
                for &(t, h) in &self.edges {
                    let mut col = vec![(h as usize, 1i8), (t as usize, -1i8)];
                    col.sort_unstable();
                    cols.push(col);
                }
                Ok(IncidenceMatrix {
                    rows: self.vertex_count,
                    cols: self.edges.len(),
                    col_entries: cols,
                })
            }
            2 => {
                let mut cols = Vec::with_capacity(self.faces.len());
                for slots in &self.face_edges {
                    let mut col: Vec<(usize, i8)> =
                        slots.iter().map(|&(e, s)| (e, s)).collect();
                    col.sort_unstable();
                    cols.push(col);
                }
                Ok(IncidenceMatrix {
                    rows: self.edges.len(),
                    cols: self.faces.len(),
                    col_entries: cols,
                })
            }
            d => Err(ComplexError::DegreeOutOfRange { degree: d }),
        }
    }

    /// Signed incidence sum: maps an n-chain to its (n-1)-boundary.
    pub fn apply_boundary(&self, chain: &Chain) -> Result<Chain, ComplexError> {
        if !(1..=2).contains(&chain.degree) {
            return Err(ComplexError::DegreeOutOfRange {
                degree: chain.degree,
            });
        }
        let m = self.boundary_matrix(chain.degree)?;
        assert_eq!(chain.coeffs.len(), m.cols());
        let mut out = Chain::zero(chain.degree - 1, m.rows());
        for (c, &coeff) in chain.coeffs.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            for &(r, s) in m.column(c) {
                out.coeffs[r] += coeff * s as i64;
            }
        }
        Ok(out)
    }

    /// The closed star: all cells having the given cell as a face,
    /// including the cell itself.
    pub fn star_cells(&self, cell: CellId) -> Result<BTreeSet<CellId>, ComplexError> {
        if cell.index >= self.cell_count(cell.degree) {
            return Err(ComplexError::UnknownCell {
                degree: cell.degree,
                index: cell.index,
            });
        }
        let mut out = BTreeSet::from([cell]);
        match cell.degree {
            0 => {
                for &e in &self.vertex_edges[cell.index] {
                    out.insert(CellId::edge(e));
                }
                for &f in &self.vertex_faces[cell.index] {
                    out.insert(CellId::face(f));
                }
            }
            1 => {
                for &f in &self.edge_faces[cell.index] {
                    out.insert(CellId::face(f));
                }
            }
            2 => {}
            d => return Err(ComplexError::DegreeOutOfRange { degree: d }),
        }
        Ok(out)
    }
}

/// The relabeled two-face mesh of the worked boundary/derivative example:
/// a triangle f0 = (v0,v1,v2) glued to a quad f1 = (v2,v1,v3,v4) along the
/// edge e1 = (v1,v2), with explicit edge ids e0..e5.
pub fn fig1_mesh() -> PolygonalComplex {
    build_complex_with_edges(
        vec![vec![0, 1, 2], vec![2, 1, 3, 4]],
        5,
        vec![(0, 1), (1, 2), (2, 0), (1, 3), (3, 4), (4, 2)],
        None,
    )
    .expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PolygonalComplex {
        build_complex(vec![vec![0, 1, 2]], 3, None).unwrap()
    }

    #[test]
    fn single_triangle_counts() {
        let c = triangle();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.face_count(), 1);
        assert!(c.boundary_flag());
    }

    #[test]
    fn triangle_boundary_column_and_dd_zero() {
        // edges e0=(0,1), e1=(0,2), e2=(1,2); face traverses (0,1),(1,2),(2,0)
        let c = triangle();
        let d2 = c.boundary_matrix(2).unwrap();
        assert_eq!(d2.dense_column(0), vec![1, -1, 1]);
        let d1 = c.boundary_matrix(1).unwrap();
        assert!(d1.product_is_zero(&d2));
    }

    #[test]
    fn fig1_incidence_column() {
        let c = fig1_mesh();
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.edge_count(), 6);
        assert_eq!(c.face_count(), 2);
        assert!(c.boundary_flag());
        let d2 = c.boundary_matrix(2).unwrap();
        assert_eq!(d2.dense_column(1), vec![0, -1, 0, 1, 1, 1]);
        assert!(c.boundary_matrix(1).unwrap().product_is_zero(&d2));
    }

    #[test]
    fn fig1_apply_boundary_unit_face() {
        let c = fig1_mesh();
        let chain = Chain::unit(2, 2, 1);
        let b = c.apply_boundary(&chain).unwrap();
        assert_eq!(b.coeffs, vec![0, -1, 0, 1, 1, 1]);
        assert!(c.apply_boundary(&b).unwrap().is_zero());
        assert_eq!(c.apply_boundary(&chain.neg()).unwrap(), b.neg());
    }

    #[test]
    fn shared_vertex_only_fails_condition_3() {
        let err = build_complex(vec![vec![0, 1, 2], vec![2, 3, 4]], 5, None)
            .unwrap_err();
        match err {
            ComplexError::NotAPseudomanifold { condition: 3, .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn isolated_vertex_fails_condition_1() {
        let err = build_complex(vec![vec![0, 1, 2]], 4, None).unwrap_err();
        match err {
            ComplexError::NotAPseudomanifold { condition: 1, .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bigon_and_repeated_vertex_rejected() {
        assert!(matches!(
            build_complex(vec![vec![0, 1]], 2, None),
            Err(ComplexError::DegenerateFace { .. })
        ));
        assert!(matches!(
            build_complex(vec![vec![0, 1, 1, 2]], 3, None),
            Err(ComplexError::DegenerateFace { .. })
        ));
    }

    /// 5-quad strip with a flip; no sign assignment makes all shared
    /// edges coherent (checked by the brute-force oracle below).
    fn moebius_faces() -> Vec<Vec<u32>> {
        // vertices: top row 0..4, bottom row 5..9, with a half twist:
        // last quad glues (4,9) back to (5,0) reversed.
        vec![
            vec![0, 5, 6, 1],
            vec![1, 6, 7, 2],
            vec![2, 7, 8, 3],
            vec![3, 8, 9, 4],
            vec![4, 9, 0, 5],
        ]
    }

    #[test]
    fn moebius_strip_is_nonorientable() {
        let err =
            build_complex_oriented(moebius_faces(), 10, None).unwrap_err();
        assert!(matches!(err, ComplexError::Nonorientable { .. }));

        // brute-force oracle: try all 2^5 flip assignments
        let faces = moebius_faces();
        let found = (0u32..32).any(|mask| {
            let flipped: Vec<Vec<u32>> = faces
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let mut f = f.clone();
                    if mask >> i & 1 == 1 {
                        f.reverse();
                    }
                    f
                })
                .collect();
            build_complex(flipped, 10, None).is_ok()
        });
        assert!(!found, "oracle found a coherent orientation of the strip");
    }

    #[test]
    fn incoherent_but_orientable_input() {
        // second triangle reversed: rejected plain, accepted with orient pass
        let faces = vec![vec![0, 1, 2], vec![1, 3, 2]];
        let bad = vec![vec![0, 1, 2], vec![2, 3, 1]];
        assert!(build_complex(faces.clone(), 4, None).is_ok());
        assert!(matches!(
            build_complex(bad.clone(), 4, None),
            Err(ComplexError::Nonorientable { .. })
        ));
        let fixed = build_complex_oriented(bad, 4, None).unwrap();
        assert_eq!(fixed.face_count(), 2);
    }

    #[test]
    fn star_cells_examples() {
        let c = fig1_mesh();
        // faces are maximal
        assert_eq!(
            c.star_cells(CellId::face(0)).unwrap(),
            BTreeSet::from([CellId::face(0)])
        );
        // boundary edge e0=(0,1) belongs only to f0
        assert_eq!(
            c.star_cells(CellId::edge(0)).unwrap(),
            BTreeSet::from([CellId::edge(0), CellId::face(0)])
        );
        // vertex v1 lies in e0, e1, e3 and both faces
        assert_eq!(
            c.star_cells(CellId::vertex(1)).unwrap(),
            BTreeSet::from([
                CellId::vertex(1),
                CellId::edge(0),
                CellId::edge(1),
                CellId::edge(3),
                CellId::face(0),
                CellId::face(1),
            ])
        );
        assert!(matches!(
            c.star_cells(CellId::vertex(99)),
            Err(ComplexError::UnknownCell { .. })
        ));
    }

    #[test]
    fn deterministic_rebuild() {
        let faces = vec![vec![2, 1, 3, 4], vec![0, 1, 2]];
        let a = build_complex(faces.clone(), 5, None).unwrap();
        let b = build_complex(faces, 5, None).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.face_edges, b.face_edges);
        assert_eq!(
            a.boundary_matrix(2).unwrap(),
            b.boundary_matrix(2).unwrap()
        );
    }

    #[test]
    fn two_triangle_sphere_accepted() {
        // closed surface, no boundary
        let c = build_complex(vec![vec![0, 1, 2], vec![0, 2, 1]], 3, None).unwrap();
        assert!(!c.boundary_flag());
        assert_eq!(c.euler_characteristic(), 2);
    }
}

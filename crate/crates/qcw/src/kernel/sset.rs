//! Finite simplicial sets in Eilenberg-Zilber normal form: a complex stores
//! only its nondegenerate cells together with the faces of each cell, and
//! every simplex is the unique pair (nondegenerate cell, degeneracy operator).

use crate::error::{Error, Result};
use crate::kernel::operator::SimplicialOperator;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A nondegenerate cell, addressed by dimension and index in that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub idx: usize,
}

impl CellId {
    pub fn new(dim: usize, idx: usize) -> Self {
        CellId { dim, idx }
    }
}

/// A simplex in normal form: a nondegenerate cell acted on by a degeneracy
/// operator (an epi, possibly the identity).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Simplex {
    pub cell: CellId,
    pub epi: SimplicialOperator,
}

impl Simplex {
    pub fn nondegenerate(cell: CellId) -> Self {
        Simplex {
            cell,
            epi: SimplicialOperator::identity(cell.dim as i64),
        }
    }

    pub fn new(cell: CellId, epi: SimplicialOperator) -> Self {
        debug_assert!(epi.is_epi());
        debug_assert_eq!(epi.target_rank(), cell.dim as i64);
        Simplex { cell, epi }
    }

    /// Dimension of the simplex itself (not of its underlying cell).
    pub fn dim(&self) -> usize {
        self.epi.source_rank() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        !self.epi.is_identity()
    }

    /// Whether this simplex factors through `sigma^i`, i.e. collapses the
    /// vertices `i, i+1`.
    pub fn degenerate_along(&self, i: usize) -> bool {
        self.epi.values()[i] == self.epi.values()[i + 1]
    }
}

/// A finite simplicial set: named nondegenerate cells per dimension, and for
/// each cell of dimension n >= 1 its n+1 faces in normal form.
///
/// Cell identifiers are totally ordered by (dimension, index); all iteration
/// in the library follows that order, which makes every construction
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSimplicialSet {
    names: Vec<Vec<String>>,
    /// faces[d][i][j] = j-th face of cell i in dimension d (present for d >= 1).
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FiniteSimplicialSet {
    pub fn empty() -> Self {
        FiniteSimplicialSet {
            names: Vec::new(),
            faces: Vec::new(),
        }
    }

    /// Assemble a complex from parts. Validates shape and the simplicial
    /// identities; returns a descriptive error naming the offending cell
    /// otherwise.
    pub fn from_parts(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let mut names = names;
        while names.last().is_some_and(|lvl| lvl.is_empty()) {
            names.pop();
        }
        let mut faces = faces;
        faces.truncate(names.len());
        while faces.len() < names.len() {
            faces.push(Vec::new());
        }
        let sset = FiniteSimplicialSet { names, faces };
        sset.validate()?;
        Ok(sset)
    }

    /// Topmost dimension with a nondegenerate cell; -1 for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.names.len() as i64 - 1
    }

    /// Number of dimensions with stored cells (`dimension() + 1`).
    pub fn names_len(&self) -> usize {
        self.names.len()
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, |v| v.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.names.iter().map(|v| v.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cell_count(dim)).map(move |idx| CellId { dim, idx })
    }

    /// All cells in canonical (dimension, index) order.
    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.names.len()).flat_map(move |dim| self.cells(dim))
    }

    pub fn name(&self, cell: CellId) -> &str {
        &self.names[cell.dim][cell.idx]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        for (dim, lvl) in self.names.iter().enumerate() {
            if let Some(idx) = lvl.iter().position(|n| n == name) {
                return Some(CellId { dim, idx });
            }
        }
        None
    }

    pub fn face(&self, cell: CellId, j: usize) -> &Simplex {
        &self.faces[cell.dim][cell.idx][j]
    }

    pub fn faces_of(&self, cell: CellId) -> &[Simplex] {
        &self.faces[cell.dim][cell.idx]
    }

    /// Right action of a mono on a cell, peeling off elementary faces.
    fn act_cell_mono(&self, cell: CellId, mono: &SimplicialOperator) -> Simplex {
        debug_assert!(mono.is_mono());
        if mono.is_identity() {
            return Simplex::nondegenerate(cell);
        }
        // find the largest j in [0, cell.dim] missing from the image
        let n = cell.dim;
        let mut j = n;
        let image = mono.values();
        loop {
            if image.binary_search(&j).is_err() {
                break;
            }
            debug_assert!(j > 0);
            j -= 1;
        }
        // mono = face(n, j) . rest
        let rest_values: Vec<usize> = image
            .iter()
            .map(|&v| if v < j { v } else { v - 1 })
            .collect();
        let rest = SimplicialOperator::new(n as i64 - 1, rest_values).expect("mono factor");
        let f = self.face(cell, j).clone();
        // f = (c', eta'); continue with eta' . rest
        let op = f.epi.compose(&rest).expect("rank agreement");
        self.act_cell(f.cell, &op)
    }

    /// Right action of an arbitrary operator on a cell; result in normal form.
    pub fn act_cell(&self, cell: CellId, alpha: &SimplicialOperator) -> Simplex {
        debug_assert_eq!(alpha.target_rank(), cell.dim as i64);
        let (epi, mono) = alpha.epi_mono_factor();
        let base = self.act_cell_mono(cell, &mono);
        let total_epi = base.epi.compose(&epi).expect("epi ranks");
        Simplex {
            cell: base.cell,
            epi: total_epi,
        }
    }

    /// Right action on a simplex in normal form: `x . alpha`.
    pub fn act(&self, x: &Simplex, alpha: &SimplicialOperator) -> Simplex {
        debug_assert_eq!(alpha.target_rank() as usize, x.dim());
        let op = x.epi.compose(alpha).expect("rank agreement");
        self.act_cell(x.cell, &op)
    }

    /// All simplices of a given dimension (degenerate included), in canonical
    /// order: cells by (dim, idx), then epis lexicographically.
    pub fn simplices(&self, dim: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=dim.min(self.names.len().saturating_sub(1)) {
            if self.cell_count(d) == 0 {
                continue;
            }
            let epis = SimplicialOperator::epis(dim as i64, d as i64);
            for idx in 0..self.cell_count(d) {
                for epi in &epis {
                    out.push(Simplex {
                        cell: CellId { dim: d, idx },
                        epi: epi.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Checks the face identities `(x.delta^j).delta^i = (x.delta^i).delta^{j-1}`
    /// for `i < j` on every cell, plus structural sanity of the stored data.
    pub fn validate(&self) -> Result<()> {
        if !self.faces.is_empty() && !self.faces[0].is_empty() {
            return Err(Error::InvalidComplex("face data in dimension 0".into()));
        }
        for (dim, lvl) in self.names.iter().enumerate() {
            let mut seen = std::collections::BTreeSet::new();
            for n in lvl {
                if !seen.insert(n.clone()) {
                    return Err(Error::InvalidComplex(format!(
                        "duplicate cell name `{n}` in dimension {dim}"
                    )));
                }
            }
            if dim == 0 {
                continue;
            }
            let table = self.faces.get(dim).ok_or_else(|| {
                Error::InvalidComplex(format!("missing face table for dimension {dim}"))
            })?;
            if table.len() != lvl.len() {
                return Err(Error::InvalidComplex(format!(
                    "face table size mismatch in dimension {dim}"
                )));
            }
            for (idx, fs) in table.iter().enumerate() {
                if fs.len() != dim + 1 {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}` has {} faces, expected {}",
                        self.names[dim][idx],
                        fs.len(),
                        dim + 1
                    )));
                }
                for (j, f) in fs.iter().enumerate() {
                    if f.dim() != dim - 1 {
                        return Err(Error::InvalidComplex(format!(
                            "face {j} of cell `{}` has dimension {}, expected {}",
                            self.names[dim][idx],
                            f.dim(),
                            dim - 1
                        )));
                    }
                    if f.cell.dim >= dim || self.cell_count(f.cell.dim) <= f.cell.idx {
                        return Err(Error::InvalidComplex(format!(
                            "face {j} of cell `{}` references missing cell",
                            self.names[dim][idx]
                        )));
                    }
                    if !f.epi.is_epi() || f.epi.target_rank() != f.cell.dim as i64 {
                        return Err(Error::InvalidComplex(format!(
                            "face {j} of cell `{}` is not in normal form",
                            self.names[dim][idx]
                        )));
                    }
                }
            }
        }
        // simplicial identities via the induced action
        for dim in 2..self.names.len() {
            for idx in 0..self.cell_count(dim) {
                let cell = CellId { dim, idx };
                for j in 0..=dim {
                    for i in 0..j {
                        let lhs = self.act(self.face(cell, j), &SimplicialOperator::face(dim - 1, i));
                        let rhs =
                            self.act(self.face(cell, i), &SimplicialOperator::face(dim - 1, j - 1));
                        if lhs != rhs {
                            return Err(Error::InvalidComplex(format!(
                                "simplicial identity fails at cell `{}` with (i,j)=({i},{j})",
                                self.names[dim][idx]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertices of a simplex: the 0-simplices `x . <i>`.
    pub fn vertices_of(&self, x: &Simplex) -> Vec<Simplex> {
        (0..=x.dim())
            .map(|i| self.act(x, &SimplicialOperator::vertex(x.dim(), i)))
            .collect()
    }
}

/// Shared handle to a complex.
pub type SsetRef = Arc<FiniteSimplicialSet>;

fn vertex_list_name(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

/// Builder for complexes whose cells are the injective operators into `[n]`
/// drawn from a given set (standard simplices, boundaries, horns).
fn representable_subcomplex(n: usize, keep: impl Fn(&SimplicialOperator) -> bool) -> SubcomplexOfSimplex {
    let mut cells_by_dim: Vec<Vec<SimplicialOperator>> = vec![Vec::new(); n + 1];
    for d in 0..=n as i64 {
        for mono in SimplicialOperator::monos(d, n as i64) {
            if keep(&mono) {
                cells_by_dim[d as usize].push(mono);
            }
        }
    }
    while cells_by_dim.last().is_some_and(|l| l.is_empty()) {
        cells_by_dim.pop();
    }
    let names: Vec<Vec<String>> = cells_by_dim
        .iter()
        .map(|lvl| lvl.iter().map(|m| vertex_list_name(m.values())).collect())
        .collect();
    let index = |op: &SimplicialOperator| -> Option<CellId> {
        let d = op.source_rank();
        if d < 0 {
            return None;
        }
        let d = d as usize;
        cells_by_dim
            .get(d)?
            .iter()
            .position(|m| m == op)
            .map(|idx| CellId { dim: d, idx })
    };
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); names.len()];
    for (d, lvl) in cells_by_dim.iter().enumerate() {
        if d == 0 {
            continue;
        }
        for mono in lvl {
            let mut fs = Vec::with_capacity(d + 1);
            for j in 0..=d {
                let sub = mono
                    .compose(&SimplicialOperator::face(d, j))
                    .expect("face composes");
                let cell = index(&sub).expect("face of a kept cell is kept");
                fs.push(Simplex::nondegenerate(cell));
            }
            faces[d].push(fs);
        }
    }
    let sset = FiniteSimplicialSet { names, faces };
    debug_assert!(sset.validate().is_ok());
    SubcomplexOfSimplex {
        n,
        cells: cells_by_dim,
        sset: Arc::new(sset),
    }
}

/// A subcomplex of a standard simplex, remembering which injective operator
/// each cell is.
#[derive(Debug, Clone)]
pub struct SubcomplexOfSimplex {
    pub n: usize,
    /// cells[d][i] is the injective operator `[d] >-> [n]` of cell (d, i)
    pub cells: Vec<Vec<SimplicialOperator>>,
    pub sset: SsetRef,
}

impl SubcomplexOfSimplex {
    /// The operator classifying a total simplex: `cell_op . epi`.
    pub fn operator_of(&self, x: &Simplex) -> SimplicialOperator {
        self.cells[x.cell.dim][x.cell.idx]
            .compose(&x.epi)
            .expect("classifying operator")
    }

    /// Normal form of the simplex classified by an arbitrary operator into `[n]`,
    /// when its mono part is a kept cell.
    pub fn simplex_of(&self, op: &SimplicialOperator) -> Option<Simplex> {
        let (epi, mono) = op.epi_mono_factor();
        let d = mono.source_rank();
        if d < 0 {
            return None;
        }
        let idx = self.cells.get(d as usize)?.iter().position(|m| *m == mono)?;
        Some(Simplex {
            cell: CellId {
                dim: d as usize,
                idx,
            },
            epi,
        })
    }

    pub fn contains_operator(&self, op: &SimplicialOperator) -> bool {
        self.simplex_of(op).is_some()
    }
}

/// The standard simplex together with its cell directory.
pub fn standard_simplex(n: usize) -> SubcomplexOfSimplex {
    representable_subcomplex(n, |_| true)
}

/// The boundary: injective operators that are not the top cell.
pub fn boundary(n: usize) -> SubcomplexOfSimplex {
    representable_subcomplex(n, |m| (m.source_rank() as usize) < n)
}

/// The horn missing the interior and face `k`: operators with
/// `im(alpha) + {k} != [n]`.
pub fn horn(n: usize, k: usize) -> Result<SubcomplexOfSimplex> {
    if k > n {
        return Err(Error::Precondition(format!(
            "horn index {k} out of range for dimension {n}"
        )));
    }
    Ok(representable_subcomplex(n, |m| {
        // keep alpha iff im(alpha) together with {k} misses some vertex
        (0..=n).any(|v| v != k && m.values().binary_search(&v).is_err())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d2 = standard_simplex(2);
        assert_eq!(d2.sset.cell_counts(), vec![3, 3, 1]);
        let d3 = standard_simplex(3);
        assert_eq!(d3.sset.cell_counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn boundary_of_edge_is_two_points() {
        let b = boundary(1);
        assert_eq!(b.sset.cell_counts(), vec![2]);
        assert_eq!(b.sset.dimension(), 0);
    }

    #[test]
    fn horn_2_1_cells() {
        // enumerate injective operators with im + {1} != [2]:
        // vertices <0>,<1>,<2>, edges <0,1>,<1,2>; not <0,2>, not the top cell
        let h = horn(2, 1).unwrap();
        assert_eq!(h.sset.cell_counts(), vec![3, 2]);
        let names: Vec<&str> = h.sset.cells(1).map(|c| h.sset.name(c)).collect();
        assert_eq!(names, vec!["0-1", "1-2"]);
    }

    #[test]
    fn act_identity_and_faces() {
        let d2 = standard_simplex(2);
        let top = Simplex::nondegenerate(CellId::new(2, 0));
        assert_eq!(d2.sset.act(&top, &SimplicialOperator::identity(2)), top);
        // face 1 of the top cell is the edge <0,2>
        let f = d2.sset.act(&top, &SimplicialOperator::face(2, 1));
        assert!(!f.is_degenerate());
        assert_eq!(d2.sset.name(f.cell), "0-2");
    }

    #[test]
    fn degenerate_edge_face_recovers_vertex() {
        // act(edge . sigma^0, delta^0) = edge . (sigma^0 . delta^0) = edge
        let d1 = standard_simplex(1);
        let edge = Simplex::nondegenerate(CellId::new(1, 0));
        let degen = d1.sset.act(&edge, &SimplicialOperator::degeneracy(1, 0));
        assert_eq!(degen.dim(), 2);
        let back = d1.sset.act(&degen, &SimplicialOperator::face(2, 0));
        assert_eq!(back, edge);
    }

    #[test]
    fn action_functorial_on_random_pairs() {
        let d3 = standard_simplex(3);
        let top = Simplex::nondegenerate(CellId::new(3, 0));
        for alpha in SimplicialOperator::all(2, 3) {
            let xa = d3.sset.act(&top, &alpha);
            for beta in SimplicialOperator::all(1, 2) {
                let lhs = d3.sset.act(&xa, &beta);
                let rhs = d3.sset.act(&top, &alpha.compose(&beta).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn simplices_enumeration() {
        let d1 = standard_simplex(1);
        // level 1: two degenerate vertices + the edge
        assert_eq!(d1.sset.simplices(1).len(), 3);
        // level 2: monotone maps [2]->[1] = 4
        assert_eq!(d1.sset.simplices(2).len(), 4);
    }
}

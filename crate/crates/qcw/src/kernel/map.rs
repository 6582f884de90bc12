//! Simplicial maps between finite complexes, stored as assignments on
//! nondegenerate cells and extended to all simplices by the action.

use crate::error::{Error, Result};
use crate::kernel::operator::SimplicialOperator;
use crate::kernel::sset::{CellId, FiniteSimplicialSet, Simplex, SsetRef};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: SsetRef,
    pub target: SsetRef,
    /// assignment[d][i]: image of cell (d, i), a target simplex of dimension d.
    pub assignment: Vec<Vec<Simplex>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
            && self.assignment == other.assignment
    }
}
impl Eq for SimplicialMap {}

pub fn same_complex(a: &SsetRef, b: &SsetRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SimplicialMap {
    /// Builds a map from a cell assignment and checks naturality on all
    /// elementary faces of all cells.
    pub fn new(source: SsetRef, target: SsetRef, assignment: Vec<Vec<Simplex>>) -> Result<Self> {
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        map.validate()?;
        Ok(map)
    }

    /// Builds without validation; callers must know the assignment is natural.
    pub fn new_unchecked(source: SsetRef, target: SsetRef, assignment: Vec<Vec<Simplex>>) -> Self {
        SimplicialMap {
            source,
            target,
            assignment,
        }
    }

    pub fn identity(x: &SsetRef) -> Self {
        let assignment = (0..x.names_len())
            .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            assignment,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.assignment.len() != self.source.names_len() {
            return Err(Error::InvalidMap(format!(
                "assignment covers {} dimensions, source has {}",
                self.assignment.len(),
                self.source.names_len()
            )));
        }
        for (d, lvl) in self.assignment.iter().enumerate() {
            if lvl.len() != self.source.cell_count(d) {
                return Err(Error::InvalidMap(format!(
                    "assignment covers {} cells in dimension {d}, source has {}",
                    lvl.len(),
                    self.source.cell_count(d)
                )));
            }
            for (i, img) in lvl.iter().enumerate() {
                if img.dim() != d {
                    return Err(Error::InvalidMap(format!(
                        "image of cell `{}` has dimension {}, expected {d}",
                        self.source.name(CellId::new(d, i)),
                        img.dim()
                    )));
                }
                if self.target.cell_count(img.cell.dim) <= img.cell.idx {
                    return Err(Error::InvalidMap(format!(
                        "image of cell `{}` references a missing target cell",
                        self.source.name(CellId::new(d, i))
                    )));
                }
                if d > 0 {
                    let cell = CellId::new(d, i);
                    for j in 0..=d {
                        let lhs = self.apply(self.source.face(cell, j));
                        let rhs = self.target.act(img, &SimplicialOperator::face(d, j));
                        if lhs != rhs {
                            return Err(Error::InvalidMap(format!(
                                "action preservation fails at cell `{}`, face {j}",
                                self.source.name(cell)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_cell(&self, cell: CellId) -> &Simplex {
        &self.assignment[cell.dim][cell.idx]
    }

    /// Image of an arbitrary simplex: `f(x . eta) = f(x) . eta`.
    pub fn apply(&self, x: &Simplex) -> Simplex {
        self.target.act(self.apply_cell(x.cell), &x.epi)
    }

    /// Composite `other . self` (self first).
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&self.target, &other.source) {
            return Err(Error::InvalidMap(
                "composition with mismatched middle complex".into(),
            ));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|lvl| lvl.iter().map(|img| other.apply(img)).collect())
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assignment,
        })
    }

    /// Injective on simplices (equivalently, nondegenerate cells map to
    /// distinct nondegenerate simplices levelwise).
    pub fn is_mono(&self) -> bool {
        let dmax = self.source.names_len();
        for d in 0..dmax {
            let mut seen = std::collections::BTreeSet::new();
            for i in 0..self.source.cell_count(d) {
                let img = &self.assignment[d][i];
                if img.is_degenerate() {
                    return false;
                }
                if !seen.insert(img.clone()) {
                    return false;
                }
            }
        }
        true
    }

    /// Bijective on nondegenerate cells in every dimension.
    pub fn is_iso(&self) -> bool {
        if !self.is_mono() {
            return false;
        }
        self.source.cell_counts() == self.target.cell_counts()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<SimplicialMap> {
        if !self.is_iso() {
            return Err(Error::InvalidMap("not an isomorphism".into()));
        }
        let mut assignment: Vec<Vec<Simplex>> = (0..self.target.names_len())
            .map(|d| vec![Simplex::nondegenerate(CellId::new(0, 0)); self.target.cell_count(d)])
            .collect();
        for d in 0..self.source.names_len() {
            for i in 0..self.source.cell_count(d) {
                let img = &self.assignment[d][i];
                assignment[img.cell.dim][img.cell.idx] =
                    Simplex::nondegenerate(CellId::new(d, i));
            }
        }
        SimplicialMap::new(self.target.clone(), self.source.clone(), assignment)
    }

    /// Surjective on simplices up to the given dimension.
    pub fn is_epi_up_to(&self, dim: usize) -> bool {
        for d in 0..=dim {
            let mut hit: std::collections::BTreeSet<Simplex> = Default::default();
            for x in self.source.simplices(d) {
                hit.insert(self.apply(&x));
            }
            for y in self.target.simplices(d) {
                if !hit.contains(&y) {
                    return false;
                }
            }
        }
        true
    }

    /// The constant map collapsing everything to a vertex of the target.
    pub fn constant(source: &SsetRef, target: &SsetRef, vertex: CellId) -> Self {
        debug_assert_eq!(vertex.dim, 0);
        let assignment = (0..source.names_len())
            .map(|d| {
                source
                    .cells(d)
                    .map(|_| Simplex {
                        cell: vertex,
                        epi: SimplicialOperator::constant(d, 0, 0),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            assignment,
        }
    }

    /// The map `Delta^n -> X` classifying a simplex of dimension n.
    pub fn classifying(x: &SsetRef, s: &Simplex) -> SimplicialMap {
        let n = s.dim();
        let dn = crate::kernel::sset::standard_simplex(n);
        let assignment = (0..dn.sset.names_len())
            .map(|d| {
                dn.sset
                    .cells(d)
                    .map(|c| {
                        let op = dn.operator_of(&Simplex::nondegenerate(c));
                        x.act(s, &op)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap {
            source: dn.sset.clone(),
            target: x.clone(),
            assignment,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sset::{boundary, standard_simplex};

    #[test]
    fn identity_and_composition() {
        let d2 = standard_simplex(2);
        let id = SimplicialMap::identity(&d2.sset);
        assert!(id.validate().is_ok());
        assert!(id.is_iso());
        let comp = id.then(&id).unwrap();
        assert_eq!(comp, id);
    }

    #[test]
    fn boundary_inclusion_is_mono() {
        let b = boundary(2);
        let d2 = standard_simplex(2);
        let assignment = (0..b.sset.names_len())
            .map(|d| {
                b.sset
                    .cells(d)
                    .map(|c| {
                        let op = b.operator_of(&Simplex::nondegenerate(c));
                        d2.simplex_of(&op).unwrap()
                    })
                    .collect()
            })
            .collect();
        let incl = SimplicialMap::new(b.sset.clone(), d2.sset.clone(), assignment).unwrap();
        assert!(incl.is_mono());
        assert!(!incl.is_iso());
    }

    #[test]
    fn classifying_map_of_top_cell() {
        let d2 = standard_simplex(2);
        let top = Simplex::nondegenerate(CellId::new(2, 0));
        let m = SimplicialMap::classifying(&d2.sset, &top);
        assert!(m.validate().is_ok());
        assert!(m.is_iso());
    }

    #[test]
    fn constant_map_valid() {
        let d2 = standard_simplex(2);
        let d0 = standard_simplex(0);
        let c = SimplicialMap::constant(&d2.sset, &d0.sset, CellId::new(0, 0));
        assert!(c.validate().is_ok());
    }
}

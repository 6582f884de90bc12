//! Truncated internal homs: level n of `A^X` is the set of simplicial maps
//! `X x Delta^n -> A`, with faces and degeneracies given by pre-composition.

use crate::error::{Error, Result};
use crate::kernel::colimit::{build_levelwise, product, LevelwiseComplex, Product};
use crate::kernel::extend::all_maps;
use crate::kernel::map::SimplicialMap;
use crate::kernel::operator::SimplicialOperator;
use crate::kernel::sset::{standard_simplex, CellId, Simplex, SsetRef};
use crate::kernel::trunc::TruncatedSSet;

/// The simplicial map `Delta^s -> Delta^t` induced by post-composition with an
/// operator `alpha : [s] -> [t]` (`s >= 0`).
pub fn operator_map(alpha: &SimplicialOperator) -> SimplicialMap {
    let s = alpha.source_rank();
    let t = alpha.target_rank();
    assert!(s >= 0 && t >= 0, "operator map needs nonempty ordinals");
    let ds = standard_simplex(s as usize);
    let dt = standard_simplex(t as usize);
    let assignment = (0..ds.sset.names_len())
        .map(|d| {
            ds.sset
                .cells(d)
                .map(|c| {
                    let op = ds.operator_of(&Simplex::nondegenerate(c));
                    let composed = alpha.compose(&op).expect("operator ranks");
                    dt.simplex_of(&composed).expect("lands in the simplex")
                })
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(ds.sset.clone(), dt.sset.clone(), assignment)
}

/// An element of a truncated mapping family: a simplicial map keyed by its
/// flattened assignment.
#[derive(Debug, Clone)]
pub struct MapElem(pub SimplicialMap);

impl MapElem {
    fn flat(&self) -> Vec<&Simplex> {
        self.0.assignment.iter().flatten().collect()
    }
}

impl PartialEq for MapElem {
    fn eq(&self, other: &Self) -> bool {
        self.flat() == other.flat()
    }
}
impl Eq for MapElem {}
impl PartialOrd for MapElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MapElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.flat().cmp(&other.flat())
    }
}

/// The truncated exponential `A^X` together with the data needed to interpret
/// its cells as maps.
pub struct Exponential {
    pub exponent: SsetRef,
    pub target: SsetRef,
    pub level: usize,
    /// products `X x Delta^n`, n = 0..=level
    pub cylinders: Vec<Product>,
    pub lw: LevelwiseComplex<MapElem>,
    pub trunc: TruncatedSSet,
}

impl Exponential {
    /// The map `X x Delta^n -> A` behind a cell of the truncation.
    pub fn map_of_cell(&self, cell: CellId) -> &SimplicialMap {
        &self.lw.key_of_cell(cell).0
    }

    /// The map behind an arbitrary total simplex of the truncation: the cell's
    /// map pre-composed with `id_X x epi`.
    pub fn map_of_simplex(&self, s: &Simplex) -> Result<SimplicialMap> {
        let level = s.dim();
        let conn = self.connecting_map(&s.epi, level)?;
        conn.then(self.map_of_cell(s.cell))
    }

    /// Normal form of a given map among the level-n elements.
    pub fn simplex_of_map(&self, level: usize, map: &SimplicialMap) -> Option<Simplex> {
        self.lw
            .normal_form(level, &MapElem(map.clone()))
            .cloned()
    }

    /// `X x Delta^m -> X x Delta^n` induced by `alpha : [m] -> [n]`.
    pub fn connecting_map(&self, alpha: &SimplicialOperator, m: usize) -> Result<SimplicialMap> {
        let n = alpha.target_rank() as usize;
        debug_assert_eq!(alpha.source_rank() as usize, m);
        let id = SimplicialMap::identity(&self.exponent);
        self.cylinders[m]
            .map_into(&id, &operator_map(alpha), &self.cylinders[n])
    }
}

/// Builds `A^X` up to the given level. Fails with an explicit refusal if a
/// level exceeds the cell budget.
pub fn exponential(x: &SsetRef, a: &SsetRef, level: usize, max_cells: usize) -> Result<Exponential> {
    let mut cylinders = Vec::with_capacity(level + 1);
    for n in 0..=level {
        let dn = standard_simplex(n);
        cylinders.push(product(x, &dn.sset)?);
    }
    let mut levels: Vec<Vec<MapElem>> = Vec::with_capacity(level + 1);
    for (n, cyl) in cylinders.iter().enumerate() {
        let res = all_maps(&cyl.complex, a, &[], None, u64::MAX)?;
        if res.maps.len() > max_cells {
            return Err(Error::BudgetExhausted(format!(
                "exponential level {n} has {} elements, budget {max_cells}",
                res.maps.len()
            )));
        }
        levels.push(res.maps.into_iter().map(MapElem).collect());
    }
    // pre-compute connecting maps used by the drivers
    let mut face_maps: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for n in 1..=level {
        let id = SimplicialMap::identity(x);
        let mut fs = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let dj = operator_map(&SimplicialOperator::face(n, j));
            fs.push(cylinders[n - 1].map_into(&id, &dj, &cylinders[n])?);
        }
        face_maps.push(fs);
    }
    let mut degeneracy_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for n in 0..level {
        let id = SimplicialMap::identity(x);
        let mut ds = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let sj = operator_map(&SimplicialOperator::degeneracy(n, j));
            ds.push(cylinders[n + 1].map_into(&id, &sj, &cylinders[n])?);
        }
        degeneracy_maps.push(ds);
    }
    let face = |n: usize, k: &MapElem, j: usize| -> MapElem {
        MapElem(face_maps[n][j].then(&k.0).expect("face composes"))
    };
    let degeneracy = |n: usize, k: &MapElem, j: usize| -> MapElem {
        MapElem(degeneracy_maps[n][j].then(&k.0).expect("degeneracy composes"))
    };
    let lw = build_levelwise(levels, face, degeneracy)?;
    let trunc = TruncatedSSet::up_to(lw.sset.clone(), level);
    Ok(Exponential {
        exponent: x.clone(),
        target: a.clone(),
        level,
        cylinders,
        lw,
        trunc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sset::{boundary, standard_simplex};

    #[test]
    fn exponent_point_recovers_target() {
        let d0 = standard_simplex(0).sset;
        let d2 = standard_simplex(2).sset;
        let e = exponential(&d0, &d2, 2, 100_000).unwrap();
        assert_eq!(e.trunc.complex.cell_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn self_exponential_of_edge() {
        // level 0 of (D1)^(D1): the three monotone endomaps of [1]
        let d1 = standard_simplex(1).sset;
        let e = exponential(&d1, &d1, 1, 100_000).unwrap();
        assert_eq!(e.trunc.complex.cell_count(0), 3);
    }

    #[test]
    fn exponential_by_two_points_is_square() {
        // A^(dDelta^1) = A x A levelwise
        let b = boundary(1).sset;
        let d1 = standard_simplex(1).sset;
        let e = exponential(&b, &d1, 2, 100_000).unwrap();
        let p = crate::kernel::colimit::product(&d1, &d1).unwrap();
        assert_eq!(e.trunc.complex.cell_counts(), p.complex.cell_counts());
    }
}

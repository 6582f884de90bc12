//! The raw map-extension enumerator: given a monomorphism `i : S >-> T` and a
//! map `u : S -> A`, emit every `f : T -> A` with `f . i = u`, by backtracking
//! over the nondegenerate cells of `T` outside the image of `S` in increasing
//! dimension, pruning on face compatibility.
//!
//! Optional side conditions of the form `p . f = v` (for `p : A -> Z`,
//! `v : T -> Z`) turn the extension search into a lifting-problem search.

use crate::error::{Error, Result};
use crate::kernel::map::{same_complex, SimplicialMap};
use crate::kernel::sset::{CellId, FiniteSimplicialSet, Simplex, SsetRef};
use std::sync::Arc;

/// Why an enumeration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Stop {
    /// The search space was exhausted: the result is complete.
    Exhausted,
    /// The requested number of solutions was reached.
    LimitReached,
    /// The node-expansion budget ran out: the result is incomplete.
    BudgetExhausted,
}

#[derive(Debug)]
pub struct ExtensionResult {
    pub maps: Vec<SimplicialMap>,
    pub stop: Stop,
    pub expansions: u64,
}

impl ExtensionResult {
    pub fn complete(&self) -> bool {
        self.stop == Stop::Exhausted
    }
}

/// A side condition `p . f = v` on the extensions `f`.
pub struct OverConstraint<'a> {
    pub p: &'a SimplicialMap,
    pub v: &'a SimplicialMap,
}

pub fn empty_complex() -> SsetRef {
    Arc::new(FiniteSimplicialSet::empty())
}

/// The unique map from the empty complex.
pub fn empty_map_into(target: &SsetRef) -> SimplicialMap {
    SimplicialMap::new_unchecked(empty_complex(), target.clone(), Vec::new())
}

/// Enumerate extensions of `u` along the mono `i`, in deterministic order.
///
/// `limit` bounds the number of solutions collected (`None` = all);
/// `max_expansions` bounds the number of candidate placements tried.
pub fn enumerate_extensions(
    i: &SimplicialMap,
    u: &SimplicialMap,
    constraints: &[OverConstraint<'_>],
    limit: Option<usize>,
    max_expansions: u64,
) -> Result<ExtensionResult> {
    if !same_complex(&i.source, &u.source) {
        return Err(Error::MalformedDiagram(
            "extension data has mismatched sources".into(),
        ));
    }
    if !i.is_mono() {
        return Err(Error::Precondition(
            "extension base is not a monomorphism".into(),
        ));
    }
    let t = &i.target;
    let a = &u.target;
    for c in constraints {
        if !same_complex(&c.p.source, a) || !same_complex(&c.v.source, t) {
            return Err(Error::MalformedDiagram(
                "side condition does not match the extension square".into(),
            ));
        }
        if !same_complex(&c.p.target, &c.v.target) {
            return Err(Error::MalformedDiagram(
                "side condition legs have different targets".into(),
            ));
        }
        // the given square must commute: v . i = p . u
        let lhs = i.then(c.v)?;
        let rhs = u.then(c.p)?;
        if lhs != rhs {
            return Err(Error::MalformedDiagram(
                "side condition square does not commute".into(),
            ));
        }
    }

    // forced assignments from the image of S
    let mut table: Vec<Vec<Option<Simplex>>> = (0..t.names_len())
        .map(|d| vec![None; t.cell_count(d)])
        .collect();
    for d in 0..i.source.names_len() {
        for idx in 0..i.source.cell_count(d) {
            let img = i.apply_cell(CellId::new(d, idx));
            debug_assert!(!img.is_degenerate());
            table[img.cell.dim][img.cell.idx] =
                Some(u.apply_cell(CellId::new(d, idx)).clone());
        }
    }
    let free: Vec<CellId> = t
        .all_cells()
        .filter(|c| table[c.dim][c.idx].is_none())
        .collect();

    // candidate pools per dimension, canonical order
    let maxdim = free.iter().map(|c| c.dim).max();
    let pools: Vec<Vec<Simplex>> = match maxdim {
        None => Vec::new(),
        Some(m) => (0..=m).map(|d| a.simplices(d)).collect(),
    };

    let mut out = Vec::new();
    let mut expansions: u64 = 0;
    let mut stop = Stop::Exhausted;

    // iterative DFS: choice[k] = index into pools[free[k].dim]
    let mut k = 0usize;
    let mut choice: Vec<usize> = vec![0; free.len()];
    'search: loop {
        if free.is_empty() || k == free.len() {
            // complete assignment: emit
            let assignment: Vec<Vec<Simplex>> = table
                .iter()
                .map(|lvl| lvl.iter().map(|s| s.clone().expect("assigned")).collect())
                .collect();
            let f = SimplicialMap::new_unchecked(t.clone(), a.clone(), assignment);
            debug_assert!(f.validate().is_ok());
            out.push(f);
            if limit.is_some_and(|l| out.len() >= l) {
                stop = Stop::LimitReached;
                break 'search;
            }
            if free.is_empty() {
                break 'search;
            }
            k -= 1;
            choice[k] += 1;
        }
        loop {
            let cell = free[k];
            let pool = &pools[cell.dim];
            let mut placed = false;
            while choice[k] < pool.len() {
                expansions += 1;
                if expansions > max_expansions {
                    stop = Stop::BudgetExhausted;
                    break 'search;
                }
                let cand = &pool[choice[k]];
                if candidate_fits(t, a, &table, cell, cand, constraints) {
                    table[cell.dim][cell.idx] = Some(cand.clone());
                    placed = true;
                    break;
                }
                choice[k] += 1;
            }
            if placed {
                k += 1;
                if k < free.len() {
                    choice[k] = 0;
                    continue;
                }
                break;
            }
            // backtrack
            table[cell.dim][cell.idx] = None;
            if k == 0 {
                break 'search;
            }
            k -= 1;
            let prev = free[k];
            table[prev.dim][prev.idx] = None;
            choice[k] += 1;
        }
    }

    Ok(ExtensionResult {
        maps: out,
        stop,
        expansions,
    })
}

fn candidate_fits(
    t: &SsetRef,
    a: &SsetRef,
    table: &[Vec<Option<Simplex>>],
    cell: CellId,
    cand: &Simplex,
    constraints: &[OverConstraint<'_>],
) -> bool {
    let d = cell.dim;
    if d > 0 {
        for j in 0..=d {
            let f = t.face(cell, j);
            let assigned = match &table[f.cell.dim][f.cell.idx] {
                Some(s) => a.act(s, &f.epi),
                None => return false, // faces always assigned first by dimension order
            };
            let required = a.act(cand, &crate::kernel::operator::SimplicialOperator::face(d, j));
            if assigned != required {
                return false;
            }
        }
    }
    for c in constraints {
        if c.p.apply(cand) != c.v.apply_cell(cell).clone() {
            return false;
        }
    }
    true
}

/// All simplicial maps `T -> A` (extensions of the empty map), canonically
/// ordered.
pub fn all_maps(
    t: &SsetRef,
    a: &SsetRef,
    constraints: &[OverConstraint<'_>],
    limit: Option<usize>,
    max_expansions: u64,
) -> Result<ExtensionResult> {
    let i = empty_map_into(t);
    let u = empty_map_into(a);
    enumerate_extensions(&i, &u, constraints, limit, max_expansions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sset::{boundary, horn, standard_simplex, Simplex};

    fn inclusion(
        sub: &crate::kernel::sset::SubcomplexOfSimplex,
        whole: &crate::kernel::sset::SubcomplexOfSimplex,
    ) -> SimplicialMap {
        let assignment = (0..sub.sset.names_len())
            .map(|d| {
                sub.sset
                    .cells(d)
                    .map(|c| {
                        let op = sub.operator_of(&Simplex::nondegenerate(c));
                        whole.simplex_of(&op).unwrap()
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(sub.sset.clone(), whole.sset.clone(), assignment).unwrap()
    }

    #[test]
    fn identity_extension_is_unique() {
        let d0 = standard_simplex(0);
        let id = SimplicialMap::identity(&d0.sset);
        let r = enumerate_extensions(&id, &id, &[], None, 10_000).unwrap();
        assert!(r.complete());
        assert_eq!(r.maps.len(), 1);
        assert_eq!(r.maps[0], id);
    }

    #[test]
    fn inner_horn_of_triangle_fills_uniquely() {
        let h = horn(2, 1).unwrap();
        let d2 = standard_simplex(2);
        let i = inclusion(&h, &d2);
        // u: the tautological horn inside the triangle
        let r = enumerate_extensions(&i, &i, &[], None, 100_000).unwrap();
        assert!(r.complete());
        assert_eq!(r.maps.len(), 1);
    }

    #[test]
    fn vertices_of_an_edge() {
        // extensions of the empty map along empty -> point, into the edge
        let d1 = standard_simplex(1);
        let d0 = standard_simplex(0);
        let r = all_maps(&d0.sset, &d1.sset, &[], None, 10_000).unwrap();
        assert!(r.complete());
        assert_eq!(r.maps.len(), 2);
    }

    #[test]
    fn sphere_fillings_counted() {
        // boundary of a triangle mapped identically into the full triangle
        // extends to the identity only
        let b = boundary(2);
        let d2 = standard_simplex(2);
        let i = inclusion(&b, &d2);
        let r = enumerate_extensions(&i, &i, &[], None, 100_000).unwrap();
        assert!(r.complete());
        assert_eq!(r.maps.len(), 1);
        assert!(r.maps[0].is_iso());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let h = horn(2, 1).unwrap();
        let d2 = standard_simplex(2);
        let i = inclusion(&h, &d2);
        let r = enumerate_extensions(&i, &i, &[], None, 1).unwrap();
        assert_eq!(r.stop, Stop::BudgetExhausted);
    }
}

//! Levelwise limits and colimits of finite simplicial sets: products,
//! coproducts, pullbacks, pushouts, and quotients by generated congruences.
//!
//! Each construction enumerates total simplex sets level by level, identifies
//! the nondegenerate elements, and renormalises everything to Eilenberg-Zilber
//! form. The generated cells are ordered by first appearance in the canonical
//! level enumeration, so repeated runs produce identical complexes.

use crate::error::{Error, Result};
use crate::kernel::map::{same_complex, SimplicialMap};
use crate::kernel::operator::SimplicialOperator;
use crate::kernel::sset::{CellId, FiniteSimplicialSet, Simplex, SsetRef};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A complex assembled from per-level element sets with face and degeneracy
/// drivers, remembering which element each cell came from.
pub struct LevelwiseComplex<K> {
    pub sset: SsetRef,
    /// levels[n]: all elements of level n in canonical order.
    pub levels: Vec<Vec<K>>,
    index: Vec<BTreeMap<K, usize>>,
    /// normal form of each element, parallel to `levels`.
    nf: Vec<Vec<Simplex>>,
    /// key of each cell, per dimension.
    pub cell_keys: Vec<Vec<K>>,
}

impl<K: Ord + Clone> LevelwiseComplex<K> {
    pub fn normal_form(&self, level: usize, key: &K) -> Option<&Simplex> {
        let pos = *self.index.get(level)?.get(key)?;
        Some(&self.nf[level][pos])
    }

    pub fn key_of_cell(&self, cell: CellId) -> &K {
        &self.cell_keys[cell.dim][cell.idx]
    }
}

/// Assembles a complex from levelwise data. `levels[n]` must list every
/// element of level n exactly once; `face`/`degeneracy` give the actions of
/// the elementary operators.
pub fn build_levelwise<K: Ord + Clone>(
    levels: Vec<Vec<K>>,
    face: impl Fn(usize, &K, usize) -> K,
    degeneracy: impl Fn(usize, &K, usize) -> K,
) -> Result<LevelwiseComplex<K>> {
    let height = levels.len();
    let mut index: Vec<BTreeMap<K, usize>> = Vec::with_capacity(height);
    for lvl in &levels {
        let mut m = BTreeMap::new();
        for (p, k) in lvl.iter().enumerate() {
            if m.insert(k.clone(), p).is_some() {
                return Err(Error::InvalidComplex(
                    "duplicate element in level enumeration".into(),
                ));
            }
        }
        index.push(m);
    }
    let mut nf: Vec<Vec<Simplex>> = Vec::with_capacity(height);
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
    let mut cell_keys: Vec<Vec<K>> = Vec::new();

    for n in 0..height {
        let mut level_nf = Vec::with_capacity(levels[n].len());
        for key in &levels[n] {
            // detect a degeneracy direction
            let mut found: Option<(usize, K)> = None;
            if n > 0 {
                for i in 0..n {
                    let fk = face(n, key, i);
                    if degeneracy(n - 1, &fk, i) == *key {
                        found = Some((i, fk));
                        break;
                    }
                }
            }
            let simplex = match found {
                Some((i, fk)) => {
                    let pos = index[n - 1]
                        .get(&fk)
                        .copied()
                        .ok_or_else(|| Error::InvalidComplex("face escapes level set".into()))?;
                    let below: &Simplex = &nf[n - 1][pos];
                    let sigma = SimplicialOperator::degeneracy(n - 1, i);
                    Simplex {
                        cell: below.cell,
                        epi: below.epi.compose(&sigma).expect("degeneracy ranks"),
                    }
                }
                None => {
                    // a fresh nondegenerate cell
                    while names.len() <= n {
                        names.push(Vec::new());
                        faces.push(Vec::new());
                        cell_keys.push(Vec::new());
                    }
                    let idx = names[n].len();
                    names[n].push(format!("s{n}_{idx}"));
                    cell_keys[n].push(key.clone());
                    if n > 0 {
                        let mut fs = Vec::with_capacity(n + 1);
                        for j in 0..=n {
                            let fk = face(n, key, j);
                            let pos = index[n - 1].get(&fk).copied().ok_or_else(|| {
                                Error::InvalidComplex("face escapes level set".into())
                            })?;
                            fs.push(nf[n - 1][pos].clone());
                        }
                        faces[n].push(fs);
                    }
                    Simplex::nondegenerate(CellId::new(n, idx))
                }
            };
            level_nf.push(simplex);
        }
        nf.push(level_nf);
    }

    let sset = Arc::new(FiniteSimplicialSet::from_parts(names, faces)?);
    Ok(LevelwiseComplex {
        sset,
        levels,
        index,
        nf,
        cell_keys,
    })
}

/// Common degeneracy stripping: writes a pair of parallel simplices as a
/// jointly nondegenerate pair acted on by a shared epi.
fn strip_common(
    x: &SsetRef,
    y: &SsetRef,
    sa: &Simplex,
    sb: &Simplex,
) -> ((Simplex, Simplex), SimplicialOperator) {
    let n = sa.dim();
    debug_assert_eq!(n, sb.dim());
    let mut eta_values = vec![0usize];
    for i in 0..n {
        let collapse = sa.degenerate_along(i) && sb.degenerate_along(i);
        let last = *eta_values.last().unwrap();
        eta_values.push(if collapse { last } else { last + 1 });
    }
    let k = *eta_values.last().unwrap();
    let eta = SimplicialOperator::new(k as i64, eta_values.clone()).expect("joint epi");
    // section: first preimage of each value
    let mut zeta_values = Vec::with_capacity(k + 1);
    let mut want = 0usize;
    for (i, &v) in eta_values.iter().enumerate() {
        if v == want {
            zeta_values.push(i);
            want += 1;
        }
    }
    let zeta = SimplicialOperator::new(n as i64, zeta_values).expect("section");
    ((x.act(sa, &zeta), y.act(sb, &zeta)), eta)
}

// ---------------------------------------------------------------------------
// product
// ---------------------------------------------------------------------------

pub struct Product {
    pub left: SsetRef,
    pub right: SsetRef,
    pub complex: SsetRef,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    pub lw: LevelwiseComplex<(Simplex, Simplex)>,
}

impl Product {
    /// Normal form in the product of a pair of parallel total simplices.
    pub fn pair_simplex(&self, sa: &Simplex, sb: &Simplex) -> Simplex {
        let ((ba, bb), eta) = strip_common(&self.left, &self.right, sa, sb);
        let level = ba.dim();
        let base = self
            .lw
            .normal_form(level, &(ba, bb))
            .expect("nondegenerate pair is a cell")
            .clone();
        debug_assert!(!base.is_degenerate());
        Simplex {
            cell: base.cell,
            epi: base.epi.compose(&eta).expect("pair epi"),
        }
    }

    /// The pairing `<u, v> : Z -> left x right`.
    pub fn pair(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&u.source, &v.source) {
            return Err(Error::MalformedDiagram("pairing sources differ".into()));
        }
        if !same_complex(&u.target, &self.left) || !same_complex(&v.target, &self.right) {
            return Err(Error::MalformedDiagram("pairing targets differ".into()));
        }
        let assignment = u
            .assignment
            .iter()
            .zip(&v.assignment)
            .map(|(lu, lv)| {
                lu.iter()
                    .zip(lv)
                    .map(|(iu, iv)| self.pair_simplex(iu, iv))
                    .collect()
            })
            .collect();
        SimplicialMap::new(u.source.clone(), self.complex.clone(), assignment)
    }

    /// Functoriality: the map `f x g` into another product.
    pub fn map_into(
        &self,
        f: &SimplicialMap,
        g: &SimplicialMap,
        target: &Product,
    ) -> Result<SimplicialMap> {
        let fl = self.proj_left.then(f)?;
        let gr = self.proj_right.then(g)?;
        target.pair(&fl, &gr)
    }
}

pub fn product(x: &SsetRef, y: &SsetRef) -> Result<Product> {
    if x.is_empty() || y.is_empty() {
        let empty: SsetRef = Arc::new(FiniteSimplicialSet::empty());
        let lw = build_levelwise::<(Simplex, Simplex)>(
            Vec::new(),
            |_, _, _| unreachable!(),
            |_, _, _| unreachable!(),
        )?;
        return Ok(Product {
            left: x.clone(),
            right: y.clone(),
            complex: empty.clone(),
            proj_left: SimplicialMap::new_unchecked(empty.clone(), x.clone(), Vec::new()),
            proj_right: SimplicialMap::new_unchecked(empty.clone(), y.clone(), Vec::new()),
            lw,
        });
    }
    let max_dim = (x.dimension() + y.dimension()) as usize;
    let mut levels = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let xs = x.simplices(n);
        let ys = y.simplices(n);
        let mut lvl = Vec::with_capacity(xs.len() * ys.len());
        for sx in &xs {
            for sy in &ys {
                lvl.push((sx.clone(), sy.clone()));
            }
        }
        lvl.sort();
        levels.push(lvl);
    }
    let xc = x.clone();
    let yc = y.clone();
    let face = move |n: usize, k: &(Simplex, Simplex), j: usize| {
        let d = SimplicialOperator::face(n, j);
        (xc.act(&k.0, &d), yc.act(&k.1, &d))
    };
    let xc2 = x.clone();
    let yc2 = y.clone();
    let degeneracy = move |n: usize, k: &(Simplex, Simplex), j: usize| {
        let s = SimplicialOperator::degeneracy(n, j);
        (xc2.act(&k.0, &s), yc2.act(&k.1, &s))
    };
    let lw = build_levelwise(levels, face, degeneracy)?;
    let complex = lw.sset.clone();
    let proj_left = SimplicialMap::new(
        complex.clone(),
        x.clone(),
        cell_images(&lw, |k| k.0.clone()),
    )?;
    let proj_right = SimplicialMap::new(
        complex.clone(),
        y.clone(),
        cell_images(&lw, |k| k.1.clone()),
    )?;
    Ok(Product {
        left: x.clone(),
        right: y.clone(),
        complex,
        proj_left,
        proj_right,
        lw,
    })
}

fn cell_images<K>(lw: &LevelwiseComplex<K>, pick: impl Fn(&K) -> Simplex) -> Vec<Vec<Simplex>> {
    lw.cell_keys
        .iter()
        .map(|lvl| lvl.iter().map(&pick).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// coproduct
// ---------------------------------------------------------------------------

pub struct Coproduct {
    pub left: SsetRef,
    pub right: SsetRef,
    pub complex: SsetRef,
    pub inj_left: SimplicialMap,
    pub inj_right: SimplicialMap,
}

impl Coproduct {
    /// The copairing `[u, v] : left + right -> Z`.
    pub fn copair(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&u.target, &v.target) {
            return Err(Error::MalformedDiagram("copairing targets differ".into()));
        }
        if !same_complex(&u.source, &self.left) || !same_complex(&v.source, &self.right) {
            return Err(Error::MalformedDiagram("copairing sources differ".into()));
        }
        let dims = self.complex.names_len();
        let mut assignment = Vec::with_capacity(dims);
        for d in 0..dims {
            let nl = self.left.cell_count(d);
            let mut lvl = Vec::with_capacity(self.complex.cell_count(d));
            for i in 0..self.complex.cell_count(d) {
                if i < nl {
                    lvl.push(u.apply_cell(CellId::new(d, i)).clone());
                } else {
                    lvl.push(v.apply_cell(CellId::new(d, i - nl)).clone());
                }
            }
            assignment.push(lvl);
        }
        SimplicialMap::new(self.complex.clone(), u.target.clone(), assignment)
    }
}

pub fn coproduct(x: &SsetRef, y: &SsetRef) -> Result<Coproduct> {
    let dims = x.names_len().max(y.names_len());
    let mut names = Vec::with_capacity(dims);
    let mut faces = Vec::with_capacity(dims);
    let shift = |d: usize| x.cell_count(d);
    for d in 0..dims {
        let mut lvl_names = Vec::new();
        let mut lvl_faces = Vec::new();
        for i in 0..x.cell_count(d) {
            lvl_names.push(format!("l.{}", x.name(CellId::new(d, i))));
            if d > 0 {
                lvl_faces.push(x.faces_of(CellId::new(d, i)).to_vec());
            }
        }
        for i in 0..y.cell_count(d) {
            lvl_names.push(format!("r.{}", y.name(CellId::new(d, i))));
            if d > 0 {
                let fs = y
                    .faces_of(CellId::new(d, i))
                    .iter()
                    .map(|f| Simplex {
                        cell: CellId::new(f.cell.dim, f.cell.idx + shift(f.cell.dim)),
                        epi: f.epi.clone(),
                    })
                    .collect();
                lvl_faces.push(fs);
            }
        }
        names.push(lvl_names);
        faces.push(lvl_faces);
    }
    let complex: SsetRef = Arc::new(FiniteSimplicialSet::from_parts(names, faces)?);
    let inj_left = SimplicialMap::new(
        x.clone(),
        complex.clone(),
        (0..x.names_len())
            .map(|d| {
                x.cells(d)
                    .map(|c| Simplex::nondegenerate(c))
                    .collect()
            })
            .collect(),
    )?;
    let inj_right = SimplicialMap::new(
        y.clone(),
        complex.clone(),
        (0..y.names_len())
            .map(|d| {
                y.cells(d)
                    .map(|c| Simplex::nondegenerate(CellId::new(d, c.idx + shift(d))))
                    .collect()
            })
            .collect(),
    )?;
    Ok(Coproduct {
        left: x.clone(),
        right: y.clone(),
        complex,
        inj_left,
        inj_right,
    })
}

// ---------------------------------------------------------------------------
// pullback
// ---------------------------------------------------------------------------

pub struct Pullback {
    pub complex: SsetRef,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    pub lw: LevelwiseComplex<(Simplex, Simplex)>,
    left: SsetRef,
    right: SsetRef,
}

impl Pullback {
    pub fn pair_simplex(&self, sa: &Simplex, sb: &Simplex) -> Simplex {
        let ((ba, bb), eta) = strip_common(&self.left, &self.right, sa, sb);
        let base = self
            .lw
            .normal_form(ba.dim(), &(ba, bb))
            .expect("pair lies in the pullback")
            .clone();
        Simplex {
            cell: base.cell,
            epi: base.epi.compose(&eta).expect("pair epi"),
        }
    }

    /// The induced map into the pullback from a commuting cone `(u, v)`.
    pub fn pair(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&u.source, &v.source) {
            return Err(Error::MalformedDiagram("cone sources differ".into()));
        }
        let assignment = u
            .assignment
            .iter()
            .zip(&v.assignment)
            .map(|(lu, lv)| {
                lu.iter()
                    .zip(lv)
                    .map(|(iu, iv)| self.pair_simplex(iu, iv))
                    .collect()
            })
            .collect();
        SimplicialMap::new(u.source.clone(), self.complex.clone(), assignment)
    }
}

/// Pullback of the cospan `f : X -> A <- Y : g`, computed levelwise.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback> {
    if !same_complex(&f.target, &g.target) {
        return Err(Error::MalformedDiagram(
            "pullback legs have different targets".into(),
        ));
    }
    let x = f.source.clone();
    let y = g.source.clone();
    if x.is_empty() || y.is_empty() {
        let empty: SsetRef = Arc::new(FiniteSimplicialSet::empty());
        let lw = build_levelwise::<(Simplex, Simplex)>(
            Vec::new(),
            |_, _, _| unreachable!(),
            |_, _, _| unreachable!(),
        )?;
        return Ok(Pullback {
            complex: empty.clone(),
            proj_left: SimplicialMap::new_unchecked(empty.clone(), x.clone(), Vec::new()),
            proj_right: SimplicialMap::new_unchecked(empty.clone(), y.clone(), Vec::new()),
            lw,
            left: x,
            right: y,
        });
    }
    let max_dim = (x.dimension() + y.dimension()) as usize;
    let mut levels = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let xs = x.simplices(n);
        let ys = y.simplices(n);
        let mut lvl = Vec::new();
        for sx in &xs {
            let fx = f.apply(sx);
            for sy in &ys {
                if fx == g.apply(sy) {
                    lvl.push((sx.clone(), sy.clone()));
                }
            }
        }
        lvl.sort();
        levels.push(lvl);
    }
    let (xc, yc) = (x.clone(), y.clone());
    let face = move |n: usize, k: &(Simplex, Simplex), j: usize| {
        let d = SimplicialOperator::face(n, j);
        (xc.act(&k.0, &d), yc.act(&k.1, &d))
    };
    let (xc2, yc2) = (x.clone(), y.clone());
    let degeneracy = move |n: usize, k: &(Simplex, Simplex), j: usize| {
        let s = SimplicialOperator::degeneracy(n, j);
        (xc2.act(&k.0, &s), yc2.act(&k.1, &s))
    };
    let lw = build_levelwise(levels, face, degeneracy)?;
    let complex = lw.sset.clone();
    let proj_left =
        SimplicialMap::new(complex.clone(), x.clone(), cell_images(&lw, |k| k.0.clone()))?;
    let proj_right =
        SimplicialMap::new(complex.clone(), y.clone(), cell_images(&lw, |k| k.1.clone()))?;
    Ok(Pullback {
        complex,
        proj_left,
        proj_right,
        lw,
        left: x,
        right: y,
    })
}

// ---------------------------------------------------------------------------
// pushout and quotient
// ---------------------------------------------------------------------------

/// A total simplex of a two-sided source, tagged by side (0 = left, 1 = right).
pub type Tagged = (u8, Simplex);

pub struct Pushout {
    pub left: SsetRef,
    pub right: SsetRef,
    pub complex: SsetRef,
    pub inj_left: SimplicialMap,
    pub inj_right: SimplicialMap,
    /// representative total simplex of each cell, per dimension
    pub reps: Vec<Vec<Tagged>>,
}

impl Pushout {
    /// Image in the pushout of a tagged total simplex.
    pub fn class_of(&self, t: &Tagged) -> Simplex {
        match t.0 {
            0 => self.inj_left.apply(&t.1),
            _ => self.inj_right.apply(&t.1),
        }
    }

    pub fn rep_of_cell(&self, cell: CellId) -> &Tagged {
        &self.reps[cell.dim][cell.idx]
    }

    /// The induced map out of the pushout from a commuting cocone `(u, v)`.
    pub fn induce(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&u.target, &v.target) {
            return Err(Error::MalformedDiagram("cocone targets differ".into()));
        }
        let assignment = self
            .reps
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|(side, s)| match side {
                        0 => u.apply(s),
                        _ => v.apply(s),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(self.complex.clone(), u.target.clone(), assignment)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }
    /// Union keeping the smaller index as representative.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

/// Pushout of the span `f : S -> X`, `g : S -> Y`, computed by levelwise
/// union-find on the tagged total simplices of `X + Y`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if !same_complex(&f.source, &g.source) {
        return Err(Error::MalformedDiagram(
            "pushout legs have different sources".into(),
        ));
    }
    let s = f.source.clone();
    let x = f.target.clone();
    let y = g.target.clone();
    let max_dim = x.dimension().max(y.dimension());
    if max_dim < 0 {
        let empty: SsetRef = Arc::new(FiniteSimplicialSet::empty());
        return Ok(Pushout {
            left: x.clone(),
            right: y.clone(),
            complex: empty.clone(),
            inj_left: SimplicialMap::new_unchecked(x, empty.clone(), Vec::new()),
            inj_right: SimplicialMap::new_unchecked(y, empty, Vec::new()),
            reps: Vec::new(),
        });
    }
    let max_dim = max_dim as usize;

    // per-level class tables
    let mut class: Vec<BTreeMap<Tagged, Tagged>> = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let mut all: Vec<Tagged> = Vec::new();
        all.extend(x.simplices(n).into_iter().map(|sx| (0u8, sx)));
        all.extend(y.simplices(n).into_iter().map(|sy| (1u8, sy)));
        let pos: BTreeMap<Tagged, usize> =
            all.iter().cloned().enumerate().map(|(p, t)| (t, p)).collect();
        let mut uf = UnionFind::new(all.len());
        for ss in s.simplices(n) {
            let a = (0u8, f.apply(&ss));
            let b = (1u8, g.apply(&ss));
            uf.union(pos[&a], pos[&b]);
        }
        let mut tbl = BTreeMap::new();
        for (p, t) in all.iter().enumerate() {
            let rep = all[uf.find(p)].clone();
            tbl.insert(t.clone(), rep);
        }
        class.push(tbl);
    }

    let mut levels: Vec<Vec<Tagged>> = Vec::with_capacity(max_dim + 1);
    for tbl in &class {
        let mut reps: Vec<Tagged> = tbl.values().cloned().collect();
        reps.sort();
        reps.dedup();
        levels.push(reps);
    }

    let act_tagged = |t: &Tagged, op: &SimplicialOperator| -> Tagged {
        match t.0 {
            0 => (0, x.act(&t.1, op)),
            _ => (1, y.act(&t.1, op)),
        }
    };
    let class_ref = &class;
    let face = |n: usize, k: &Tagged, j: usize| -> Tagged {
        let t = act_tagged(k, &SimplicialOperator::face(n, j));
        class_ref[n - 1][&t].clone()
    };
    let degeneracy = |n: usize, k: &Tagged, j: usize| -> Tagged {
        let t = act_tagged(k, &SimplicialOperator::degeneracy(n, j));
        class_ref[n + 1][&t].clone()
    };
    let lw = build_levelwise(levels, face, degeneracy)?;
    let complex = lw.sset.clone();

    let image_of = |side: u8, c: CellId| -> Result<Simplex> {
        let tagged = class[c.dim][&(side, Simplex::nondegenerate(c))].clone();
        lw.normal_form(c.dim, &tagged)
            .cloned()
            .ok_or_else(|| Error::InvalidComplex("class representative missing".into()))
    };
    let inj_left = SimplicialMap::new(
        x.clone(),
        complex.clone(),
        (0..x.names_len())
            .map(|d| x.cells(d).map(|c| image_of(0, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )?;
    let inj_right = SimplicialMap::new(
        y.clone(),
        complex.clone(),
        (0..y.names_len())
            .map(|d| y.cells(d).map(|c| image_of(1, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok(Pushout {
        left: x,
        right: y,
        complex,
        inj_left,
        inj_right,
        reps: lw.cell_keys.clone(),
    })
}

pub struct Quotient {
    pub source: SsetRef,
    pub complex: SsetRef,
    pub map: SimplicialMap,
    /// representative total simplex of each cell, per dimension
    pub reps: Vec<Vec<Simplex>>,
}

impl Quotient {
    /// The induced map out of the quotient from a map constant on classes.
    pub fn induce(&self, u: &SimplicialMap) -> Result<SimplicialMap> {
        let assignment = self
            .reps
            .iter()
            .map(|lvl| lvl.iter().map(|s| u.apply(s)).collect())
            .collect();
        SimplicialMap::new(self.complex.clone(), u.target.clone(), assignment)
    }
}

/// Quotient of `X` by the simplicial congruence generated by the given pairs
/// of parallel simplices, closed under the right action.
pub fn quotient(x: &SsetRef, pairs: &[(Simplex, Simplex)]) -> Result<Quotient> {
    for (a, b) in pairs {
        if a.dim() != b.dim() {
            return Err(Error::MalformedDiagram(
                "congruence pair dimensions differ".into(),
            ));
        }
    }
    if x.is_empty() {
        let empty: SsetRef = Arc::new(FiniteSimplicialSet::empty());
        return Ok(Quotient {
            source: x.clone(),
            complex: empty.clone(),
            map: SimplicialMap::new_unchecked(x.clone(), empty, Vec::new()),
            reps: Vec::new(),
        });
    }
    let max_dim = x.dimension() as usize;
    let mut class: Vec<BTreeMap<Simplex, Simplex>> = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let all = x.simplices(n);
        let pos: BTreeMap<Simplex, usize> =
            all.iter().cloned().enumerate().map(|(p, t)| (t, p)).collect();
        let mut uf = UnionFind::new(all.len());
        for (a, b) in pairs {
            for alpha in SimplicialOperator::all(n as i64, a.dim() as i64) {
                let ia = x.act(a, &alpha);
                let ib = x.act(b, &alpha);
                uf.union(pos[&ia], pos[&ib]);
            }
        }
        let mut tbl = BTreeMap::new();
        for (p, t) in all.iter().enumerate() {
            tbl.insert(t.clone(), all[uf.find(p)].clone());
        }
        class.push(tbl);
    }
    let mut levels: Vec<Vec<Simplex>> = Vec::with_capacity(max_dim + 1);
    for tbl in &class {
        let mut reps: Vec<Simplex> = tbl.values().cloned().collect();
        reps.sort();
        reps.dedup();
        levels.push(reps);
    }
    let class_ref = &class;
    let xc = x.clone();
    let face = |n: usize, k: &Simplex, j: usize| -> Simplex {
        class_ref[n - 1][&xc.act(k, &SimplicialOperator::face(n, j))].clone()
    };
    let xc2 = x.clone();
    let degeneracy = |n: usize, k: &Simplex, j: usize| -> Simplex {
        class_ref[n + 1][&xc2.act(k, &SimplicialOperator::degeneracy(n, j))].clone()
    };
    let lw = build_levelwise(levels, face, degeneracy)?;
    let complex = lw.sset.clone();
    let map = SimplicialMap::new(
        x.clone(),
        complex.clone(),
        (0..x.names_len())
            .map(|d| {
                x.cells(d)
                    .map(|c| {
                        let rep = class[d][&Simplex::nondegenerate(c)].clone();
                        lw.normal_form(d, &rep)
                            .cloned()
                            .ok_or_else(|| Error::InvalidComplex("missing class".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok(Quotient {
        source: x.clone(),
        complex,
        map,
        reps: lw.cell_keys.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sset::standard_simplex;

    #[test]
    fn square_cell_counts() {
        let d1 = standard_simplex(1).sset;
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.complex.cell_counts(), vec![4, 5, 2]);
        assert!(p.proj_left.validate().is_ok());
        assert!(p.proj_right.validate().is_ok());
    }

    #[test]
    fn product_with_point_is_identity_shape() {
        let d2 = standard_simplex(2).sset;
        let d0 = standard_simplex(0).sset;
        let p = product(&d2, &d0).unwrap();
        assert_eq!(p.complex.cell_counts(), d2.cell_counts());
        assert!(p.proj_left.is_iso());
    }

    #[test]
    fn pullback_of_identity_cospan() {
        let d2 = standard_simplex(2).sset;
        let id = SimplicialMap::identity(&d2);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.complex.cell_counts(), d2.cell_counts());
        assert!(pb.proj_left.is_iso());
    }

    #[test]
    fn pushout_glues_two_triangles_along_an_edge() {
        let d2 = standard_simplex(2);
        let d1 = standard_simplex(1);
        // edge <0,2> inside the triangle
        let e = d2
            .simplex_of(&SimplicialOperator::new(2, vec![0, 2]).unwrap())
            .unwrap();
        let m = SimplicialMap::classifying(&d2.sset, &e);
        assert!(same_complex(&m.source, &d1.sset));
        let po = pushout(&m, &m).unwrap();
        // two triangles sharing one edge and its endpoints
        assert_eq!(po.complex.cell_counts(), vec![4, 5, 2]);
    }

    #[test]
    fn quotient_collapsing_edge_endpoints() {
        // identify the two vertices of the edge
        let d1 = standard_simplex(1);
        let v0 = Simplex::nondegenerate(CellId::new(0, 0));
        let v1 = Simplex::nondegenerate(CellId::new(0, 1));
        let q = quotient(&d1.sset, &[(v0, v1)]).unwrap();
        assert_eq!(q.complex.cell_count(0), 1);
        assert_eq!(q.complex.cell_count(1), 1);
        assert!(q.map.validate().is_ok());
    }

    #[test]
    fn coproduct_and_copair() {
        let d0 = standard_simplex(0).sset;
        let c = coproduct(&d0, &d0).unwrap();
        assert_eq!(c.complex.cell_count(0), 2);
        let id = SimplicialMap::identity(&d0);
        let folded = c.copair(&id, &id).unwrap();
        assert_eq!(folded.assignment[0].len(), 2);
    }
}

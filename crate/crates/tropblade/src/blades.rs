//! Blades on the hypersimplex: positive expressions, distances, the
//! cyclically-minimized height function, and the polyhedral cells a blade
//! cuts out of `Δ_{k,n}`.
//!
//! Everything here lives on a full ground `[n]`. A blade is determined by a
//! nonfrozen k-subset `J`; its geometry enters through the decorated
//! ordered set partition of `J` and the fan of `l` cells obtained by
//! rotating the block sequence.

use crate::cyclic::{bit, CyclicGround, KSubset, Label};
use crate::Error;

/// An integer vector indexed by the labels of `[n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Result<Self, Error> {
        if coords.len() < 3 || coords.len() > 64 {
            return Err(Error::ParameterRange(format!(
                "vector length {} outside 3..=64",
                coords.len()
            )));
        }
        Ok(LatticeVector { coords })
    }

    /// The vertex `e_J` of the hypersimplex; `J` must live on a full ground.
    pub fn vertex(j: &KSubset) -> Result<Self, Error> {
        if !j.ground().is_full() {
            return Err(Error::DegenerateGround(
                "lattice vectors are indexed by a full [n]".into(),
            ));
        }
        let n = j.ground().n() as usize;
        let mut coords = vec![0i64; n];
        for x in j.labels() {
            coords[(x - 1) as usize] = 1;
        }
        Ok(LatticeVector { coords })
    }

    /// `e_I - e_J`.
    pub fn vertex_difference(i: &KSubset, j: &KSubset) -> Result<Self, Error> {
        if i.ground() != j.ground() || i.size() != j.size() {
            return Err(Error::SizeMismatch(
                "vertex difference needs two k-subsets of one ground".into(),
            ));
        }
        let mut v = Self::vertex(i)?;
        for x in j.labels() {
            v.coords[(x - 1) as usize] -= 1;
        }
        Ok(v)
    }

    pub fn n(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Coordinate of label `x` (1-based).
    pub fn at(&self, x: Label) -> i64 {
        self.coords[(x - 1) as usize]
    }
}

/// A sum `x = Σ_j t_j (e_j - e_{j+1})` with every `t_j >= 0` and some
/// `t_j = 0`; unique for each `x` with coordinate sum zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositiveExpression {
    t: Vec<i64>,
}

impl PositiveExpression {
    pub fn coefficients(&self) -> &[i64] {
        &self.t
    }

    /// Indices `j` with `t_j > 0`.
    pub fn support(&self) -> Vec<Label> {
        self.t
            .iter()
            .enumerate()
            .filter(|(_, &t)| t > 0)
            .map(|(i, _)| (i + 1) as Label)
            .collect()
    }

    pub fn total(&self) -> i64 {
        self.t.iter().sum()
    }

    /// Rebuilds the vector the expression stands for.
    pub fn expand(&self) -> LatticeVector {
        let n = self.t.len();
        let mut coords = vec![0i64; n];
        for j in 0..n {
            coords[j] += self.t[j];
            coords[(j + 1) % n] -= self.t[j];
        }
        LatticeVector { coords }
    }
}

/// The unique positive expression of `x`; requires coordinate sum zero.
///
/// With `S_j` the j-th prefix sum of `x`, the coefficients are
/// `t_j = S_j - min_i S_i`.
pub fn positive_expression(x: &LatticeVector) -> Result<PositiveExpression, Error> {
    if x.coordinate_sum() != 0 {
        return Err(Error::ParameterRange(format!(
            "coordinate sum {} is not zero",
            x.coordinate_sum()
        )));
    }
    let mut prefix = Vec::with_capacity(x.coords.len());
    let mut acc = 0i64;
    for &c in &x.coords {
        acc += c;
        prefix.push(acc);
    }
    let low = *prefix.iter().min().expect("nonempty");
    Ok(PositiveExpression {
        t: prefix.into_iter().map(|s| s - low).collect(),
    })
}

/// The distance `d(e_J, e_I)`: total coefficient of the positive
/// expression of `e_I - e_J`.
pub fn distance(j: &KSubset, i: &KSubset) -> Result<i64, Error> {
    let x = LatticeVector::vertex_difference(i, j)?;
    Ok(positive_expression(&x)?.total())
}

/// `L_i(y) = Σ_{m=0}^{n-1} m · y_{i+m}` with indices wrapping cyclically.
fn linear_form(y: &LatticeVector, i: Label) -> i64 {
    let n = y.coords.len();
    (0..n)
        .map(|m| m as i64 * y.coords[((i as usize - 1) + m) % n])
        .sum()
}

/// `h(x - e_J) = min_i L_i(x - e_J)`; requires `x - e_J` to sum to zero.
pub fn h_eval(x: &LatticeVector, j: &KSubset) -> Result<i64, Error> {
    if !j.ground().is_full() || j.ground().n() != x.n() {
        return Err(Error::SizeMismatch(
            "h is evaluated against a vertex of the same full [n]".into(),
        ));
    }
    if x.coordinate_sum() != j.size() as i64 {
        return Err(Error::ParameterRange(format!(
            "coordinate sum {} differs from |J| = {}",
            x.coordinate_sum(),
            j.size()
        )));
    }
    let mut y = x.clone();
    for lbl in j.labels() {
        y.coords[(lbl - 1) as usize] -= 1;
    }
    Ok((1..=y.n()).map(|i| linear_form(&y, i)).min().expect("n >= 3"))
}

/// Decorated ordered set partition of a k-subset.
///
/// Blocks `S_i = C_i ∪ J_i` pair each cyclic interval `J_i` of `J` with the
/// complement interval `C_i` immediately before it; the weight `s_i` is
/// `|J_i|`. Blocks are listed in cyclic order starting with the one
/// containing the smallest ground label, and partition the ground.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecoratedOsp {
    ground: CyclicGround,
    blocks: Vec<(u64, u32)>,
}

impl DecoratedOsp {
    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    /// `(S_i, s_i)` pairs.
    pub fn blocks(&self) -> &[(u64, u32)] {
        &self.blocks
    }

    /// A frozen subset yields the one-block partition of the whole ground.
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }
}

/// The decorated ordered set partition attached to `J`.
pub fn osp_of(j: &KSubset) -> Result<DecoratedOsp, Error> {
    let ground = j.ground();
    if j.mask() == ground.mask() {
        return Err(Error::DegenerateSubset(
            "subset equals its whole ground".into(),
        ));
    }
    let runs = ground.runs(j.mask());
    // S_i stretches from just after the previous interval's end through the
    // end of interval i; with one interval that is the whole ground.
    let m = runs.len();
    let mut blocks = Vec::with_capacity(m);
    for i in 0..m {
        let prev_end = runs[(i + m - 1) % m].1;
        let mut mask = 0u64;
        let mut cur = ground.next(prev_end);
        loop {
            mask |= bit(cur);
            if cur == runs[i].1 {
                break;
            }
            cur = ground.next(cur);
        }
        let weight = {
            let (s, e) = runs[i];
            let mut w = 1;
            let mut cur = s;
            while cur != e {
                cur = ground.next(cur);
                w += 1;
            }
            w
        };
        blocks.push((mask, weight));
    }
    // rotate so the block holding the smallest surviving label comes first
    let anchor = ground.first_at_or_after(1, ground.mask());
    let pos = blocks
        .iter()
        .position(|&(mask, _)| mask & bit(anchor) != 0)
        .expect("blocks partition the ground");
    blocks.rotate_left(pos);
    Ok(DecoratedOsp { ground, blocks })
}

/// Vertex sets of the `l` maximal cells the blade through `e_J` cuts out
/// of the hypersimplex, in rotation order starting from the block that
/// contains the smallest label.
///
/// Cell `r` collects the vertices `e_I` satisfying
/// `|I ∩ (S_r ∪ .. ∪ S_{r+q})| >= s_r + .. + s_{r+q}` for `q < l-1`.
pub fn multisplit_cells(j: &KSubset) -> Result<Vec<Vec<u64>>, Error> {
    if j.is_frozen()? {
        return Err(Error::FrozenBlade {
            set: j.to_string_short(),
        });
    }
    let osp = osp_of(j)?;
    let l = osp.blocks.len();
    let vertices = j.ground().k_subset_masks(j.size());
    let mut cells = Vec::with_capacity(l);
    for r in 0..l {
        let mut union = 0u64;
        let mut quota = 0u32;
        let mut systems = Vec::with_capacity(l - 1);
        for q in 0..l - 1 {
            let (mask, w) = osp.blocks[(r + q) % l];
            union |= mask;
            quota += w;
            systems.push((union, quota));
        }
        let cell: Vec<u64> = vertices
            .iter()
            .copied()
            .filter(|&v| {
                systems
                    .iter()
                    .all(|&(u, q)| (v & u).count_ones() >= q)
            })
            .collect();
        cells.push(cell);
    }
    Ok(cells)
}

/// Common refinement of several blades' cell decompositions.
///
/// For each way of picking one cell per blade, collects the vertices lying
/// in all picked cells; keeps the inclusion-maximal nonempty vertex sets.
/// Returns `(picked cell indices, vertex masks)` pairs, sorted by the index
/// tuple. An empty blade list yields the single all-vertex group.
pub fn refinement_signature(
    blades: &[KSubset],
) -> Result<Vec<(Vec<usize>, Vec<u64>)>, Error> {
    if blades.is_empty() {
        return Err(Error::ParameterRange(
            "refinement of an empty blade list is the whole hypersimplex; \
             pass at least one blade"
                .into(),
        ));
    }
    let ground = blades[0].ground();
    let k = blades[0].size();
    for b in blades {
        if b.ground() != ground || b.size() != k {
            return Err(Error::SizeMismatch(
                "blades must share one ground and one k".into(),
            ));
        }
    }
    let per_blade: Vec<Vec<Vec<u64>>> = blades
        .iter()
        .map(multisplit_cells)
        .collect::<Result<_, _>>()?;
    let mut combos: Vec<(Vec<usize>, Vec<u64>)> = Vec::new();
    let mut idx = vec![0usize; per_blade.len()];
    loop {
        let mut vertices: Vec<u64> = per_blade[0][idx[0]].clone();
        for (b, cells) in per_blade.iter().enumerate().skip(1) {
            let keep = &cells[idx[b]];
            vertices.retain(|v| keep.contains(v));
        }
        if !vertices.is_empty() {
            combos.push((idx.clone(), vertices));
        }
        // odometer over cell choices
        let mut d = per_blade.len();
        loop {
            if d == 0 {
                let maximal: Vec<(Vec<usize>, Vec<u64>)> = combos
                    .iter()
                    .filter(|(_, vs)| {
                        !combos.iter().any(|(_, ovs)| {
                            ovs.len() > vs.len() && vs.iter().all(|v| ovs.contains(v))
                        })
                    })
                    .cloned()
                    .collect();
                return Ok(maximal);
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < per_blade[d].len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Vertex masks of the whole hypersimplex `Δ_{k,n}`, for convenience.
pub fn hypersimplex_vertices(ground: CyclicGround, k: u32) -> Vec<u64> {
    ground.k_subset_masks(k)
}

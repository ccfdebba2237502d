//! Plabic tilings of maximal weakly separated collections.
//!
//! The structure is purely label-driven: faces are the collection members,
//! black nodes are `(k+1)`-sets, white nodes `(k-1)`-sets, and every
//! incidence is decided by subset rules, so isomorphism is equality of the
//! normalized data and no planar embedding is ever computed. An edge
//! `(B, Wt)` requires more than the two between-sets lying in the
//! collection: the two labels of `B \ Wt` must also be cyclically adjacent
//! within the fan of `B` and within the fan of `Wt`. Without the adjacency
//! condition, near-nodes like `135` over the pentagon collection
//! `{12, 23, 34, 45, 15, 13, 14}` would pick up an edge to `{1}` even
//! though they bound no tile.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cyclic::{bit, mask_labels, mask_to_string, CyclicGround, Label};
use crate::wsep::WCollection;
use crate::Error;

/// A plabic tiling in label form.
///
/// Nodes are exactly the endpoints of edges; a `(k+1)`-set whose candidate
/// edges all fail the adjacency condition is not part of the structure.
/// White masks may be empty (when `k = 1`), black masks never are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlabicStructure {
    ground: CyclicGround,
    k: u32,
    faces: Vec<u64>,
    blacks: Vec<u64>,
    whites: Vec<u64>,
    edges: Vec<(u64, u64)>,
    boundary_marks: Vec<Label>,
}

impl PlabicStructure {
    /// Assembles a structure from raw parts, normalizing order but checking
    /// nothing; intended for negative controls and diagnostics.
    pub fn from_parts(
        ground: CyclicGround,
        k: u32,
        faces: &[u64],
        blacks: &[u64],
        whites: &[u64],
        edges: &[(u64, u64)],
        boundary_marks: &[Label],
    ) -> Self {
        let mut p = PlabicStructure {
            ground,
            k,
            faces: faces.to_vec(),
            blacks: blacks.to_vec(),
            whites: whites.to_vec(),
            edges: edges.to_vec(),
            boundary_marks: boundary_marks.to_vec(),
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.faces.sort_unstable();
        self.faces.dedup();
        self.blacks.sort_unstable();
        self.blacks.dedup();
        self.whites.sort_unstable();
        self.whites.dedup();
        self.edges.sort_unstable();
        self.edges.dedup();
        self.boundary_marks.sort_unstable();
        self.boundary_marks.dedup();
    }

    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn blacks(&self) -> &[u64] {
        &self.blacks
    }

    pub fn whites(&self) -> &[u64] {
        &self.whites
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn boundary_marks(&self) -> &[Label] {
        &self.boundary_marks
    }

    /// Labels `x` of a black `(k+1)`-set whose removal lands in the faces,
    /// ascending (which is a cyclic order).
    pub fn black_fan(&self, black: u64) -> Vec<Label> {
        mask_labels(black)
            .into_iter()
            .filter(|&x| self.faces.binary_search(&(black & !bit(x))).is_ok())
            .collect()
    }

    /// Labels `x` outside a white `(k-1)`-set whose adjunction lands in the
    /// faces, ascending.
    pub fn white_fan(&self, white: u64) -> Vec<Label> {
        self.ground
            .elements()
            .into_iter()
            .filter(|&x| {
                white & bit(x) == 0 && self.faces.binary_search(&(white | bit(x))).is_ok()
            })
            .collect()
    }

    fn degree(&self, node: u64, black: bool) -> usize {
        self.edges
            .iter()
            .filter(|&&(b, w)| if black { b == node } else { w == node })
            .count()
    }

    /// Edges of the tiling complex: consecutive corner faces around every
    /// node, following the cyclic label order of its fan. A fan of two
    /// contributes a single pair; larger fans wrap around.
    pub fn tiling_edges(&self) -> Vec<(u64, u64)> {
        let mut out: BTreeSet<(u64, u64)> = BTreeSet::new();
        let mut push = |a: u64, b: u64| {
            out.insert((a.min(b), a.max(b)));
        };
        for &b in &self.blacks {
            let corners: Vec<u64> = self
                .black_fan(b)
                .into_iter()
                .map(|x| b & !bit(x))
                .collect();
            for (i, &c) in corners.iter().enumerate() {
                if corners.len() == 2 && i == 1 {
                    break;
                }
                push(c, corners[(i + 1) % corners.len()]);
            }
        }
        for &w in &self.whites {
            let corners: Vec<u64> = self
                .white_fan(w)
                .into_iter()
                .map(|x| w | bit(x))
                .collect();
            for (i, &c) in corners.iter().enumerate() {
                if corners.len() == 2 && i == 1 {
                    break;
                }
                push(c, corners[(i + 1) % corners.len()]);
            }
        }
        out.into_iter().collect()
    }

    /// `V - E + F` of the tiling complex: faces as vertices, consecutive
    /// corner pairs as edges, and nodes with fans of three or more as the
    /// two-dimensional tiles. A disk-shaped tiling gives 1.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.faces.len() as i64;
        let e = self.tiling_edges().len() as i64;
        let f = self
            .blacks
            .iter()
            .filter(|&&b| self.black_fan(b).len() >= 3)
            .count() as i64
            + self
                .whites
                .iter()
                .filter(|&&w| self.white_fan(w).len() >= 3)
                .count() as i64;
        v - e + f
    }
}

/// Drops the first element of `mask` at or after `j` cyclically; the empty
/// mask stays empty. This is the raw-mask form of the subset boundary and
/// also applies to node labels that may empty out.
fn boundary_mask(ground: CyclicGround, mask: u64, j: Label) -> u64 {
    if mask == 0 {
        return 0;
    }
    mask & !bit(ground.first_at_or_after(j, mask))
}

/// The duality rule for one edge against a sorted face list: `B \ Wt` must
/// be two labels whose between-sets are faces and which sit cyclically
/// adjacent both in the fan of `B` and in the fan of `Wt`.
fn edge_valid(ground: CyclicGround, faces: &[u64], black: u64, white: u64) -> bool {
    let removed = black & !white;
    if white & !black != 0 || removed.count_ones() != 2 {
        return false;
    }
    let pair = mask_labels(removed);
    let (x, y) = (pair[0], pair[1]);
    let black_fan = mask_labels(black)
        .into_iter()
        .filter(|&z| faces.binary_search(&(black & !bit(z))).is_ok())
        .fold(0u64, |m, z| m | bit(z));
    if black_fan & removed != removed || !ground.adjacent_within(black_fan, x, y) {
        return false;
    }
    let white_fan = ground
        .elements()
        .into_iter()
        .filter(|&z| white & bit(z) == 0 && faces.binary_search(&(white | bit(z))).is_ok())
        .fold(0u64, |m, z| m | bit(z));
    white_fan & removed == removed && ground.adjacent_within(white_fan, x, y)
}

/// Builds the plabic tiling of a maximal collection.
pub fn build_tiling(w: &WCollection) -> Result<PlabicStructure, Error> {
    if !w.is_maximal() {
        return Err(Error::NotMaximal(
            "plabic tilings are built from maximal collections".into(),
        ));
    }
    let ground = w.ground();
    let members = w.members();
    // every black with two or more incident faces is a union of two of them
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let u = a | b;
            if u.count_ones() == w.k() + 1 {
                candidates.insert(u);
            }
        }
    }
    let mut edges: Vec<(u64, u64)> = Vec::new();
    for &black in &candidates {
        let fan: Vec<Label> = mask_labels(black)
            .into_iter()
            .filter(|&x| w.contains(black & !bit(x)))
            .collect();
        for (i, &x) in fan.iter().enumerate() {
            for &y in &fan[i + 1..] {
                let white = black & !bit(x) & !bit(y);
                if edge_valid(ground, members, black, white) {
                    edges.push((black, white));
                }
            }
        }
    }
    let blacks: Vec<u64> = edges.iter().map(|&(b, _)| b).collect();
    let whites: Vec<u64> = edges.iter().map(|&(_, w)| w).collect();
    Ok(PlabicStructure::from_parts(
        ground,
        w.k(),
        members,
        &blacks,
        &whites,
        &edges,
        &ground.elements(),
    ))
}

/// The boundary of a plabic structure in direction `j`.
///
/// Removes the boundary mark at `j`, deletes every edge `(B, Wt)` with
/// `B \ Wt` equal to the two `<_j`-minimal labels of `B` (each black meets
/// at most one such edge because the white is determined by `B`), relabels
/// every face and node by the direction-`j` boundary, and cleans up at the
/// label level: nodes that become equal merge by deduplication, parallel
/// edges collapse, edges whose endpoints degenerate against the new face
/// set (the duality rule fails there) disappear, and nodes left without
/// edges are dropped.
pub fn plabic_boundary(p: &PlabicStructure, j: Label) -> Result<PlabicStructure, Error> {
    if p.k < 2 {
        return Err(Error::ParameterRange(
            "boundary needs faces of size >= 2".into(),
        ));
    }
    if !p.ground.contains(j) {
        return Err(Error::LabelOutsideGround { label: j });
    }
    let ground = p.ground;
    let shrunk = ground.without(j)?;
    let mut faces: Vec<u64> = p
        .faces
        .iter()
        .map(|&f| boundary_mask(ground, f, j))
        .collect();
    faces.sort_unstable();
    faces.dedup();
    let mut edges: Vec<(u64, u64)> = Vec::new();
    for &(black, white) in &p.edges {
        if black & !white == ground.min_elements(black, j, 2)? {
            continue;
        }
        let image = (
            boundary_mask(ground, black, j),
            boundary_mask(ground, white, j),
        );
        if edge_valid(shrunk, &faces, image.0, image.1) {
            edges.push(image);
        }
    }
    let blacks: Vec<u64> = edges.iter().map(|&(b, _)| b).collect();
    let whites: Vec<u64> = edges.iter().map(|&(_, w)| w).collect();
    let marks: Vec<Label> = p
        .boundary_marks
        .iter()
        .copied()
        .filter(|&m| m != j)
        .collect();
    Ok(PlabicStructure::from_parts(
        shrunk,
        p.k - 1,
        &faces,
        &blacks,
        &whites,
        &edges,
        &marks,
    ))
}

/// Label-preserving isomorphism; labels are canonical, so this is equality
/// of the normalized structures.
pub fn structures_isomorphic(p1: &PlabicStructure, p2: &PlabicStructure) -> bool {
    p1 == p2
}

/// Whether the fiber of `target` under the direction-`j` boundary of `w`
/// is connected in the tiling of `w`.
pub fn fiber_connected(w: &WCollection, j: Label, target: u64) -> Result<bool, Error> {
    if w.k() < 2 {
        return Err(Error::ParameterRange(
            "fibers need members of size >= 2".into(),
        ));
    }
    if !w.ground().contains(j) {
        return Err(Error::LabelOutsideGround { label: j });
    }
    let fiber: BTreeSet<u64> = w
        .members()
        .iter()
        .copied()
        .filter(|&m| boundary_mask(w.ground(), m, j) == target)
        .collect();
    if fiber.is_empty() {
        return Err(Error::EmptyFiber {
            target: mask_to_string(target),
        });
    }
    let p = build_tiling(w)?;
    let mut adjacency: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (a, b) in p.tiling_edges() {
        if fiber.contains(&a) && fiber.contains(&b) {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
    }
    let start = *fiber.iter().next().expect("fiber is nonempty");
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue: VecDeque<u64> = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for &next in adjacency.get(&cur).into_iter().flatten() {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() == fiber.len())
}

/// Checks that no edge marked for deletion in direction `j` sits in the
/// forbidden configuration: both endpoints of internal degree at least
/// three while the white node carries a face through the open `<_j`-arc
/// between the two deleted labels (that arc is free of `B`'s labels by
/// minimality, so such a face would wrap around the deleted edge).
pub fn forbidden_structure_absent(p: &PlabicStructure, j: Label) -> Result<bool, Error> {
    if !p.ground.contains(j) {
        return Err(Error::LabelOutsideGround { label: j });
    }
    let ground = p.ground;
    for &(black, white) in &p.edges {
        let removed = black & !white;
        if removed != ground.min_elements(black, j, 2)? {
            continue;
        }
        let pair = mask_labels(removed);
        let (u, v) = if ground.order_key(j, pair[0]) < ground.order_key(j, pair[1]) {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        if p.degree(black, true) < 3 || p.degree(white, false) < 3 {
            continue;
        }
        let wrapped = ground.elements().into_iter().any(|y| {
            white & bit(y) == 0
                && ground.order_key(j, y) > ground.order_key(j, u)
                && ground.order_key(j, y) < ground.order_key(j, v)
                && p.faces.binary_search(&(white | bit(y))).is_ok()
        });
        if wrapped {
            return Ok(false);
        }
    }
    Ok(true)
}

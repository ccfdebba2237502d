//! Weakly separated collections: the pairwise test, validated collections,
//! deterministic completion, the canonical maximal collection, square-move
//! flips, seeded random walks on the flip graph, and the boundary map on
//! whole collections.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclic::{bit, mask_to_string, CyclicGround, KSubset, Label};
use crate::Error;

/// Whether two equal-size subsets of one cyclic ground are weakly
/// separated: walking once around the ground, the elements of `A \ B` and
/// of `B \ A` each occupy a single cyclic arc.
pub fn weakly_separated(a: &KSubset, b: &KSubset) -> Result<bool, Error> {
    if a.ground() != b.ground() || a.size() != b.size() {
        return Err(Error::SizeMismatch(
            "weak separation compares k-subsets of one ground".into(),
        ));
    }
    Ok(masks_weakly_separated(a.ground(), a.mask(), b.mask()))
}

fn masks_weakly_separated(ground: CyclicGround, a: u64, b: u64) -> bool {
    let only_a = a & !b;
    let only_b = b & !a;
    if only_a == 0 || only_b == 0 {
        return true;
    }
    // count side changes along the cyclic sequence of symmetric-difference
    // elements; two arcs means exactly two changes
    let mut sides = Vec::new();
    for x in ground.elements() {
        if only_a & bit(x) != 0 {
            sides.push(true);
        } else if only_b & bit(x) != 0 {
            sides.push(false);
        }
    }
    let m = sides.len();
    let changes = (0..m).filter(|&i| sides[i] != sides[(i + 1) % m]).count();
    changes <= 2
}

/// A square-move flip: at level `L`, with `a<b<c<d`, the four sides stay
/// and one diagonal is traded for the other.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Flip {
    pub level: u64,
    pub quad: [Label; 4],
    pub removed: u64,
    pub added: u64,
}

impl Flip {
    /// Side sets `Lab, Lbc, Lcd, Lad`.
    pub fn sides(&self) -> [u64; 4] {
        let [a, b, c, d] = self.quad;
        [
            self.level | bit(a) | bit(b),
            self.level | bit(b) | bit(c),
            self.level | bit(c) | bit(d),
            self.level | bit(a) | bit(d),
        ]
    }
}

/// A pairwise weakly separated set of k-subsets of one cyclic ground.
///
/// Members are kept as sorted deduplicated masks; sorting by mask value is
/// the colex order on subsets, which every deterministic scan here uses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WCollection {
    ground: CyclicGround,
    k: u32,
    members: Vec<u64>,
}

impl WCollection {
    pub fn new(ground: CyclicGround, k: u32, masks: &[u64]) -> Result<Self, Error> {
        if k == 0 || k > ground.len() {
            return Err(Error::ParameterRange(format!(
                "k = {k} outside 1..={}",
                ground.len()
            )));
        }
        let mut members: Vec<u64> = masks.to_vec();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m & !ground.mask() != 0 || m.count_ones() != k {
                return Err(Error::InvalidInput(format!(
                    "{} is not a {k}-subset of the ground",
                    mask_to_string(m)
                )));
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if !masks_weakly_separated(ground, members[i], members[j]) {
                    return Err(Error::NotWeaklySeparated {
                        a: mask_to_string(members[i]),
                        b: mask_to_string(members[j]),
                    });
                }
            }
        }
        Ok(WCollection { ground, k, members })
    }

    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    pub fn subsets(&self) -> Vec<KSubset> {
        self.members
            .iter()
            .map(|&m| KSubset::new(self.ground, m).expect("validated"))
            .collect()
    }

    /// Members that are not cyclic intervals of the ground.
    pub fn nonfrozen_members(&self) -> Vec<u64> {
        self.members
            .iter()
            .copied()
            .filter(|&m| !self.ground.is_run(m))
            .collect()
    }

    fn compatible_with_all(&self, cand: u64) -> bool {
        self.members
            .iter()
            .all(|&m| masks_weakly_separated(self.ground, m, cand))
    }

    /// No further k-subset of the ground is weakly separated from every
    /// member.
    pub fn is_maximal(&self) -> bool {
        self.ground
            .k_subset_masks(self.k)
            .into_iter()
            .all(|cand| self.contains(cand) || !self.compatible_with_all(cand))
    }

    /// Deterministic completion: scan candidates in ascending mask (colex)
    /// order, inserting each one weakly separated from everything held so
    /// far. One pass suffices, so the result is maximal.
    pub fn complete(&self) -> WCollection {
        let mut grown = self.clone();
        for cand in self.ground.k_subset_masks(self.k) {
            if !grown.contains(cand) && grown.compatible_with_all(cand) {
                let pos = grown.members.binary_search(&cand).unwrap_err();
                grown.members.insert(pos, cand);
            }
        }
        grown
    }

    /// All flips available from this collection.
    ///
    /// A flip needs the four sides and exactly the traded diagonal present;
    /// quadruples are scanned as sorted 4-sets, levels as (k-2)-subsets
    /// disjoint from them, and results come back sorted.
    pub fn find_flips(&self) -> Vec<Flip> {
        let mut flips = Vec::new();
        if self.k < 2 {
            return flips;
        }
        let levels: Vec<u64> = self.ground.k_subset_masks(self.k - 2);
        let elems = self.ground.elements();
        let m = elems.len();
        for level in levels {
            let free: Vec<Label> = elems
                .iter()
                .copied()
                .filter(|&x| level & bit(x) == 0)
                .collect();
            let f = free.len();
            if f < 4 || m < 4 {
                continue;
            }
            for ia in 0..f {
                for ib in ia + 1..f {
                    for ic in ib + 1..f {
                        for id in ic + 1..f {
                            let (a, b, c, d) = (free[ia], free[ib], free[ic], free[id]);
                            let sides = [
                                level | bit(a) | bit(b),
                                level | bit(b) | bit(c),
                                level | bit(c) | bit(d),
                                level | bit(a) | bit(d),
                            ];
                            if !sides.iter().all(|&s| self.contains(s)) {
                                continue;
                            }
                            let diag_ac = level | bit(a) | bit(c);
                            let diag_bd = level | bit(b) | bit(d);
                            let (removed, added) = match (
                                self.contains(diag_ac),
                                self.contains(diag_bd),
                            ) {
                                (true, false) => (diag_ac, diag_bd),
                                (false, true) => (diag_bd, diag_ac),
                                _ => continue,
                            };
                            flips.push(Flip {
                                level,
                                quad: [a, b, c, d],
                                removed,
                                added,
                            });
                        }
                    }
                }
            }
        }
        flips.sort_unstable();
        flips.dedup();
        flips
    }

    /// Applies one flip, checking all of its preconditions and revalidating
    /// the result.
    pub fn apply_flip(&self, flip: &Flip) -> Result<WCollection, Error> {
        if self.k < 2 {
            return Err(Error::FlipNotApplicable("flips need k >= 2".into()));
        }
        let [a, b, c, d] = flip.quad;
        let sorted = a < b && b < c && c < d;
        let quad_mask = bit(a) | bit(b) | bit(c) | bit(d);
        if !sorted
            || quad_mask & !self.ground.mask() != 0
            || flip.level & !self.ground.mask() != 0
            || flip.level & quad_mask != 0
            || flip.level.count_ones() != self.k - 2
        {
            return Err(Error::FlipNotApplicable(
                "level and quadruple do not fit the ground".into(),
            ));
        }
        let diag_ac = flip.level | bit(a) | bit(c);
        let diag_bd = flip.level | bit(b) | bit(d);
        let diagonals_ok = (flip.removed == diag_ac && flip.added == diag_bd)
            || (flip.removed == diag_bd && flip.added == diag_ac);
        if !diagonals_ok {
            return Err(Error::FlipNotApplicable(
                "traded sets are not the two diagonals".into(),
            ));
        }
        if !flip.sides().iter().all(|&s| self.contains(s)) {
            return Err(Error::FlipNotApplicable("a side is missing".into()));
        }
        if !self.contains(flip.removed) || self.contains(flip.added) {
            return Err(Error::FlipNotApplicable(
                "traded diagonal is absent or both are present".into(),
            ));
        }
        let mut masks: Vec<u64> = self
            .members
            .iter()
            .copied()
            .filter(|&x| x != flip.removed)
            .collect();
        masks.push(flip.added);
        WCollection::new(self.ground, self.k, &masks)
    }

    /// A seeded uniform random walk on the flip graph; returns the final
    /// collection and the flips taken, in order.
    pub fn flip_walk(&self, steps: usize, seed: u64) -> Result<(WCollection, Vec<Flip>), Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = self.clone();
        let mut trace = Vec::with_capacity(steps);
        for _ in 0..steps {
            let flips = cur.find_flips();
            if flips.is_empty() {
                return Err(Error::FlipNotApplicable(
                    "no flip available to continue the walk".into(),
                ));
            }
            let flip = flips[rng.gen_range(0..flips.len())];
            cur = cur.apply_flip(&flip)?;
            trace.push(flip);
        }
        Ok((cur, trace))
    }

    /// Applies the boundary map at `j` to every member, deduplicating.
    pub fn boundary(&self, j: Label) -> Result<WCollection, Error> {
        if self.k < 2 {
            return Err(Error::ParameterRange(
                "boundary of a collection needs k >= 2".into(),
            ));
        }
        let mut masks = Vec::with_capacity(self.members.len());
        for s in self.subsets() {
            masks.push(s.boundary(j)?.mask());
        }
        WCollection::new(self.ground.without(j)?, self.k - 1, &masks)
    }
}

/// The canonical maximal w-collection: all cyclic intervals of length `k`
/// together with the sets `[1,m] ∪ [l, l+k-m-1]` for `1 <= m <= k-1`,
/// `m+2 <= l`, `l+k-m-1 <= n-1`. Defined on a full ground.
pub fn w0(n: Label, k: u32) -> Result<WCollection, Error> {
    let ground = CyclicGround::full(n)?;
    if k == 0 || k as u64 >= n as u64 {
        return Err(Error::ParameterRange(format!("k = {k} outside 1..{n}")));
    }
    let interval = |a: Label, len: u32| -> u64 {
        (0..len).fold(0u64, |m, t| m | bit((a - 1 + t) % n + 1))
    };
    let mut masks = Vec::new();
    for a in 1..=n {
        masks.push(interval(a, k));
    }
    for m in 1..k {
        for l in m + 2..=n {
            if l + k - m - 1 <= n - 1 {
                masks.push(interval(1, m) | interval(l, k - m));
            }
        }
    }
    WCollection::new(ground, k, &masks)
}

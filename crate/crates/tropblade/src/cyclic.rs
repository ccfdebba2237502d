//! Cyclically ordered ground sets and their k-element subsets.
//!
//! A ground is `[n] = {1, .., n}` with zero or more labels removed; the
//! surviving labels keep their original names and inherit the cyclic order.
//! Subsets are stored as bitmasks (bit `x - 1` encodes label `x`), so the
//! whole module is allocation-free except where label lists are produced
//! for callers.

use crate::Error;

/// A ground label, always in `1..=n`.
pub type Label = u32;

/// Largest supported `n`; labels are stored in a single machine word.
pub const MAX_GROUND: u32 = 64;

pub(crate) fn bit(x: Label) -> u64 {
    1u64 << (x - 1)
}

/// Labels of a mask in ascending order.
pub fn mask_labels(mask: u64) -> Vec<Label> {
    (1..=MAX_GROUND).filter(|&x| mask & bit(x) != 0).collect()
}

/// Mask of a label list; duplicates collapse.
pub fn labels_mask(labels: &[Label]) -> u64 {
    labels.iter().fold(0, |m, &x| m | bit(x))
}

/// Rotate a label of a full `[n]` by `r` steps: `x -> x + r` wrapping.
pub fn rotate_label(n: Label, x: Label, r: Label) -> Label {
    (x - 1 + r) % n + 1
}

/// Rotate every label of a mask over a full `[n]` by `r` steps.
pub fn rotate_mask(n: Label, mask: u64, r: Label) -> u64 {
    mask_labels(mask)
        .into_iter()
        .fold(0, |m, x| m | bit(rotate_label(n, x, r)))
}

/// Render a mask as comma-free digits for small labels, comma-joined above 9.
pub fn mask_to_string(mask: u64) -> String {
    let labels = mask_labels(mask);
    if labels.iter().all(|&x| x <= 9) {
        labels.iter().map(|x| x.to_string()).collect()
    } else {
        let parts: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }
}

/// Parse the output of [`mask_to_string`]: a digit-string like `124` where
/// every character is one label, or a comma-joined form like `2,10,13`.
pub fn mask_from_string(s: &str) -> Result<u64, Error> {
    let bad = |why: &str| Error::InvalidInput(format!("subset `{s}`: {why}"));
    let labels: Vec<Label> = if s.contains(',') {
        s.split(',')
            .map(|part| part.trim().parse::<Label>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("expected comma-joined labels"))?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or(()))
            .collect::<Result<_, _>>()
            .map_err(|_| bad("expected a digit-string of labels 1..=9"))?
    };
    let mut mask = 0u64;
    for x in labels {
        if !(1..=MAX_GROUND as Label).contains(&x) {
            return Err(bad("labels must lie in 1..=64"));
        }
        if mask & bit(x) != 0 {
            return Err(bad("repeated label"));
        }
        mask |= bit(x);
    }
    if mask == 0 {
        return Err(bad("empty"));
    }
    Ok(mask)
}

/// `[n]` with an optional set of removed labels, in cyclic order.
///
/// Invariants: `3 <= n <= 64`, removed labels lie in `[n]`, and at least
/// three labels survive; every cyclic notion below would degenerate on
/// fewer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicGround {
    n: Label,
    removed: u64,
}

impl CyclicGround {
    pub fn full(n: Label) -> Result<Self, Error> {
        Self::with_removed_mask(n, 0)
    }

    pub fn new(n: Label, removed: &[Label]) -> Result<Self, Error> {
        for &x in removed {
            if x < 1 || x > n {
                return Err(Error::LabelOutsideGround { label: x });
            }
        }
        Self::with_removed_mask(n, labels_mask(removed))
    }

    pub fn with_removed_mask(n: Label, removed: u64) -> Result<Self, Error> {
        if n < 3 || n > MAX_GROUND {
            return Err(Error::DegenerateGround(format!(
                "n = {n} is outside the supported range 3..=64"
            )));
        }
        let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
        if removed & !all != 0 {
            return Err(Error::DegenerateGround(
                "removed labels outside [n]".into(),
            ));
        }
        if (all & !removed).count_ones() < 3 {
            return Err(Error::DegenerateGround(format!(
                "fewer than 3 labels of [{n}] remain"
            )));
        }
        Ok(CyclicGround { n, removed })
    }

    pub fn n(&self) -> Label {
        self.n
    }

    /// Mask of surviving labels.
    pub fn mask(&self) -> u64 {
        let all = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        all & !self.removed
    }

    pub fn removed_mask(&self) -> u64 {
        self.removed
    }

    pub fn removed_labels(&self) -> Vec<Label> {
        mask_labels(self.removed)
    }

    pub fn len(&self) -> u32 {
        self.mask().count_ones()
    }

    pub fn is_full(&self) -> bool {
        self.removed == 0
    }

    pub fn contains(&self, x: Label) -> bool {
        x >= 1 && x <= self.n && self.removed & bit(x) == 0
    }

    pub fn elements(&self) -> Vec<Label> {
        mask_labels(self.mask())
    }

    /// The ground with one more label removed.
    pub fn without(&self, j: Label) -> Result<Self, Error> {
        if !self.contains(j) {
            return Err(Error::LabelOutsideGround { label: j });
        }
        Self::with_removed_mask(self.n, self.removed | bit(j))
    }

    /// Position of `x` in the linear order `i < i+1 < .. < i-1`.
    ///
    /// Works for any labels in `[n]`; holes in the ground do not disturb
    /// relative positions, so this key sorts ground elements correctly.
    pub fn order_key(&self, i: Label, x: Label) -> u32 {
        (x + self.n - i) % self.n
    }

    /// Cyclic successor of `x` among surviving labels; `x` must survive.
    pub fn next(&self, x: Label) -> Label {
        debug_assert!(self.contains(x));
        let mut y = x % self.n + 1;
        while !self.contains(y) {
            y = y % self.n + 1;
        }
        y
    }

    /// Cyclic predecessor of `x` among surviving labels; `x` must survive.
    pub fn prev(&self, x: Label) -> Label {
        debug_assert!(self.contains(x));
        let mut y = (x + self.n - 2) % self.n + 1;
        while !self.contains(y) {
            y = (y + self.n - 2) % self.n + 1;
        }
        y
    }

    /// First element of `set` at or after `j` in cyclic order (the minimum
    /// of `set` under the order starting at `j`). `set` must be nonempty.
    pub fn first_at_or_after(&self, j: Label, set: u64) -> Label {
        debug_assert!(set != 0 && set & !self.mask() == 0);
        let mut best = 0;
        let mut best_key = u32::MAX;
        for x in mask_labels(set) {
            let key = self.order_key(j, x);
            if key < best_key {
                best_key = key;
                best = x;
            }
        }
        best
    }

    /// The `l` minimal elements of `set` under `i < i+1 < .. < i-1`.
    pub fn min_elements(&self, set: u64, i: Label, l: u32) -> Result<u64, Error> {
        if i < 1 || i > self.n {
            return Err(Error::LabelOutsideGround { label: i });
        }
        if set & !self.mask() != 0 {
            return Err(Error::DegenerateSubset(
                "set contains labels outside the ground".into(),
            ));
        }
        let available = set.count_ones();
        if l > available {
            return Err(Error::TooManyMinElements {
                requested: l,
                available,
            });
        }
        let mut labels = mask_labels(set);
        labels.sort_by_key(|&x| self.order_key(i, x));
        Ok(labels_mask(&labels[..l as usize]))
    }

    /// Maximal cyclic runs of `set`, as `(start, end)` pairs in ascending
    /// start order. A full-ground `set` is reported as one run starting at
    /// the smallest surviving label.
    pub fn runs(&self, set: u64) -> Vec<(Label, Label)> {
        debug_assert!(set & !self.mask() == 0);
        if set == 0 {
            return Vec::new();
        }
        if set == self.mask() {
            let first = self.first_at_or_after(1, set);
            return vec![(first, self.prev(first))];
        }
        let mut out = Vec::new();
        for x in mask_labels(set) {
            if set & bit(self.prev(x)) != 0 {
                continue; // not a run start
            }
            let mut end = x;
            while set & bit(self.next(end)) != 0 {
                end = self.next(end);
            }
            out.push((x, end));
        }
        out
    }

    /// True when `set` is a single cyclic run (or empty / the whole ground).
    pub fn is_run(&self, set: u64) -> bool {
        set == 0 || set == self.mask() || self.runs(set).len() == 1
    }

    /// First labels of the cyclic runs of `set`, as a mask.
    pub fn run_starts(&self, set: u64) -> u64 {
        labels_mask(&self.runs(set).iter().map(|&(s, _)| s).collect::<Vec<_>>())
    }

    /// Last labels of the cyclic runs of `set`, as a mask.
    pub fn run_ends(&self, set: u64) -> u64 {
        labels_mask(&self.runs(set).iter().map(|&(_, e)| e).collect::<Vec<_>>())
    }

    /// True when `x` and `y` are adjacent in the cyclic arrangement of the
    /// elements of `set` (which must contain both). With exactly two
    /// elements present the pair is adjacent on both sides.
    pub fn adjacent_within(&self, set: u64, x: Label, y: Label) -> bool {
        debug_assert!(set & bit(x) != 0 && set & bit(y) != 0);
        if x == y {
            return false;
        }
        let mut cur = self.next(x);
        while set & bit(cur) == 0 {
            cur = self.next(cur);
        }
        if cur == y {
            return true;
        }
        let mut cur = self.next(y);
        while set & bit(cur) == 0 {
            cur = self.next(cur);
        }
        cur == x
    }

    /// All `k`-element subsets of the ground, ascending as masks.
    pub fn k_subset_masks(&self, k: u32) -> Vec<u64> {
        let elems = self.elements();
        let mut out = Vec::new();
        if k == 0 {
            return vec![0];
        }
        if k as usize > elems.len() {
            return out;
        }
        let k = k as usize;
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(labels_mask(
                &idx.iter().map(|&i| elems[i]).collect::<Vec<_>>(),
            ));
            // advance the index vector in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
                i -= 1;
                if idx[i] != i + elems.len() - k {
                    break;
                }
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// A nonempty subset of a ground, tagged with that ground.
///
/// Invariants: members survive in the ground and there is at least one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KSubset {
    ground: CyclicGround,
    members: u64,
}

impl KSubset {
    pub fn new(ground: CyclicGround, members: u64) -> Result<Self, Error> {
        if members == 0 {
            return Err(Error::DegenerateSubset("empty subset".into()));
        }
        if members & !ground.mask() != 0 {
            return Err(Error::DegenerateSubset(
                "members outside the ground".into(),
            ));
        }
        Ok(KSubset { ground, members })
    }

    pub fn from_labels(ground: CyclicGround, labels: &[Label]) -> Result<Self, Error> {
        let mask = labels_mask(labels);
        if mask.count_ones() as usize != labels.len() {
            return Err(Error::DegenerateSubset(format!(
                "repeated labels in {labels:?}"
            )));
        }
        Self::new(ground, mask)
    }

    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn size(&self) -> u32 {
        self.members.count_ones()
    }

    pub fn labels(&self) -> Vec<Label> {
        mask_labels(self.members)
    }

    pub fn contains(&self, x: Label) -> bool {
        self.members & bit(x) != 0
    }

    /// True when the subset is a single cyclic interval of its ground.
    ///
    /// Proper nonempty subsets only: a subset filling the whole ground has
    /// no meaningful interval decomposition here.
    pub fn is_frozen(&self) -> Result<bool, Error> {
        if self.members == self.ground.mask() {
            return Err(Error::DegenerateSubset(
                "subset equals its whole ground".into(),
            ));
        }
        Ok(self.ground.is_run(self.members))
    }

    /// Boundary in direction `j`: drops the first member at or after `j`
    /// cyclically (j itself when present) and removes `j` from the ground.
    pub fn boundary(&self, j: Label) -> Result<KSubset, Error> {
        if !self.ground.contains(j) {
            return Err(Error::LabelOutsideGround { label: j });
        }
        if self.size() < 2 {
            return Err(Error::DegenerateSubset(
                "boundary of a singleton subset".into(),
            ));
        }
        let victim = self.ground.first_at_or_after(j, self.members);
        KSubset::new(self.ground.without(j)?, self.members & !bit(victim))
    }

    /// Iterated boundary over every label of `level`; the order of
    /// application does not matter (see the tests below).
    pub fn boundary_multi(&self, level: u64) -> Result<KSubset, Error> {
        if level.count_ones() >= self.size() {
            return Err(Error::SizeMismatch(format!(
                "level of size {} leaves no member of a {}-subset",
                level.count_ones(),
                self.size()
            )));
        }
        let mut cur = *self;
        for j in mask_labels(level) {
            cur = cur.boundary(j)?;
        }
        Ok(cur)
    }

    /// `M_l^i`: the `l` minimal members in the order starting at `i`.
    pub fn min_elements(&self, i: Label, l: u32) -> Result<KSubset, Error> {
        let picked = self.ground.min_elements(self.members, i, l)?;
        KSubset::new(self.ground, picked)
    }

    /// First labels of the cyclic intervals.
    pub fn initial_points(&self) -> Vec<Label> {
        mask_labels(self.ground.run_starts(self.members))
    }

    /// Last labels of the cyclic intervals.
    pub fn end_points(&self) -> Vec<Label> {
        mask_labels(self.ground.run_ends(self.members))
    }

    pub fn to_string_short(&self) -> String {
        mask_to_string(self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: Label) -> CyclicGround {
        CyclicGround::full(n).unwrap()
    }

    fn ks(n: Label, labels: &[Label]) -> KSubset {
        KSubset::from_labels(g(n), labels).unwrap()
    }

    #[test]
    fn mask_strings_round_trip() {
        for mask in [labels_mask(&[1, 2, 4]), labels_mask(&[2, 10, 13]), bit(7)] {
            assert_eq!(mask_from_string(&mask_to_string(mask)).unwrap(), mask);
        }
        assert_eq!(mask_from_string("135").unwrap(), labels_mask(&[1, 3, 5]));
        assert!(mask_from_string("105").is_err());
        assert!(mask_from_string("0,5").is_err());
        assert!(mask_from_string("1,1").is_err());
        assert!(mask_from_string("").is_err());
    }

    #[test]
    fn ground_construction_limits() {
        assert!(CyclicGround::full(2).is_err());
        assert!(CyclicGround::full(3).is_ok());
        assert!(CyclicGround::new(6, &[7]).is_err());
        // removing down to 2 survivors is rejected
        assert!(CyclicGround::new(5, &[1, 2, 3]).is_err());
        assert!(CyclicGround::new(5, &[1, 2]).is_ok());
    }

    #[test]
    fn successor_skips_holes() {
        let gr = CyclicGround::new(6, &[2]).unwrap();
        assert_eq!(gr.next(1), 3);
        assert_eq!(gr.prev(3), 1);
        assert_eq!(gr.next(6), 1);
        assert_eq!(gr.prev(1), 6);
    }

    #[test]
    fn min_elements_wraps() {
        // examples on [8]
        let gr = g(8);
        let m = gr.min_elements(labels_mask(&[1, 3, 7]), 8, 2).unwrap();
        assert_eq!(mask_labels(m), vec![1, 3]);
        let m = gr.min_elements(labels_mask(&[2, 5, 8]), 8, 2).unwrap();
        assert_eq!(mask_labels(m), vec![2, 8]);
        let m = gr.min_elements(labels_mask(&[4, 6]), 5, 1).unwrap();
        assert_eq!(mask_labels(m), vec![6]);
        assert!(matches!(
            gr.min_elements(labels_mask(&[4, 6]), 5, 3),
            Err(Error::TooManyMinElements { .. })
        ));
    }

    #[test]
    fn frozen_is_single_interval() {
        assert!(ks(6, &[5, 6, 1]).is_frozen().unwrap());
        assert!(!ks(6, &[1, 3]).is_frozen().unwrap());
        // after removing 2, the labels 1 and 3 become adjacent
        let gr = CyclicGround::new(6, &[2]).unwrap();
        let j = KSubset::from_labels(gr, &[1, 3]).unwrap();
        assert!(j.is_frozen().unwrap());
        // a subset equal to its ground is rejected
        let gr3 = g(3);
        let all = KSubset::from_labels(gr3, &[1, 2, 3]).unwrap();
        assert!(all.is_frozen().is_err());
    }

    #[test]
    fn boundary_examples() {
        // direction inside the subset removes that label
        let b = ks(6, &[1, 3, 5]).boundary(5).unwrap();
        assert_eq!(b.labels(), vec![1, 3]);
        assert_eq!(b.ground().removed_labels(), vec![5]);
        // otherwise the first member after j goes
        let b = ks(6, &[1, 3, 5]).boundary(2).unwrap();
        assert_eq!(b.labels(), vec![1, 5]);
        // wrap-around
        let b = ks(8, &[4, 5, 6]).boundary(8).unwrap();
        assert_eq!(b.labels(), vec![5, 6]);
    }

    #[test]
    fn boundary_requires_ground_label() {
        let gr = CyclicGround::new(6, &[2]).unwrap();
        let j = KSubset::from_labels(gr, &[1, 4]).unwrap();
        assert!(matches!(
            j.boundary(2),
            Err(Error::LabelOutsideGround { label: 2 })
        ));
    }

    #[test]
    fn multi_boundary_is_order_independent() {
        // exhaustive over [7], all subset sizes and 2-level directions
        let gr = g(7);
        for k in 3..=5u32 {
            for members in gr.k_subset_masks(k) {
                let j = KSubset::new(gr, members).unwrap();
                for a in 1..=7 {
                    for b in 1..=7u32 {
                        if a == b {
                            continue;
                        }
                        let ab = j.boundary(a).unwrap().boundary(b).unwrap();
                        let ba = j.boundary(b).unwrap().boundary(a).unwrap();
                        assert_eq!(ab, ba, "J = {members:b}, directions {a},{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn multi_boundary_matches_single_steps() {
        let j = ks(8, &[2, 4, 5, 8]);
        let lvl = labels_mask(&[3, 6, 7]);
        let direct = j.boundary_multi(lvl).unwrap();
        let step = j
            .boundary(7)
            .unwrap()
            .boundary(3)
            .unwrap()
            .boundary(6)
            .unwrap();
        assert_eq!(direct, step);
        assert!(j.boundary_multi(labels_mask(&[1, 3, 6, 7])).is_err());
    }

    #[test]
    fn boundary_preserves_frozenness() {
        // frozen subsets stay frozen under every boundary direction
        for n in 4..=8 {
            let gr = g(n);
            for k in 2..n - 1 {
                for members in gr.k_subset_masks(k) {
                    let j = KSubset::new(gr, members).unwrap();
                    if !j.is_frozen().unwrap() {
                        continue;
                    }
                    for dir in 1..=n {
                        let b = j.boundary(dir).unwrap();
                        assert!(b.is_frozen().unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn runs_and_markers() {
        let j = ks(6, &[1, 2, 4]);
        assert_eq!(j.initial_points(), vec![1, 4]);
        assert_eq!(j.end_points(), vec![2, 4]);
        // wrap-around interval has its start at 6
        let j = ks(6, &[1, 2, 6]);
        assert_eq!(j.initial_points(), vec![6]);
        assert_eq!(j.end_points(), vec![2]);
    }

    #[test]
    fn adjacency_within_sets() {
        let gr = g(6);
        let set = labels_mask(&[2, 3, 5]);
        assert!(gr.adjacent_within(set, 2, 3));
        assert!(gr.adjacent_within(set, 3, 5));
        assert!(gr.adjacent_within(set, 5, 2));
        let set = labels_mask(&[1, 2, 4, 5]);
        assert!(!gr.adjacent_within(set, 2, 5));
        assert!(gr.adjacent_within(set, 5, 1));
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(g(8).k_subset_masks(3).len(), 56);
        let gr = CyclicGround::new(7, &[3]).unwrap();
        assert_eq!(gr.k_subset_masks(2).len(), 15);
        assert_eq!(gr.k_subset_masks(0), vec![0]);
    }
}

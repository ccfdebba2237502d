//! Weighted blade arrangements and the planar basis.
//!
//! Two coordinate systems share the same sparse representation: a
//! `BladeArrangement` is a formal rational combination of translated
//! blades `β_J`, an `LVector` the same thing in the planar basis `𝓛_J`.
//! The expansion of one `𝓛_J` over the `β` side, the boundary maps in
//! both bases, the change of basis (whose matrix is singular: every
//! expansion column sums to zero, so a frozen correction is carried
//! explicitly), the level-`L` second-difference coefficients `π`, and the
//! membership test for the positivity-and-compatibility cone all live
//! here.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cyclic::{bit, mask_labels, mask_to_string, CyclicGround, KSubset, Label};
use crate::linalg::{solve_exact, Solve};
use crate::wsep::weakly_separated;
use crate::{rat, Error, Rat};

fn check_term(ground: CyclicGround, k: u32, mask: u64) -> Result<(), Error> {
    if mask & !ground.mask() != 0 || mask.count_ones() != k {
        return Err(Error::InvalidInput(format!(
            "{} is not a {k}-subset of the ground",
            mask_to_string(mask)
        )));
    }
    Ok(())
}

macro_rules! weighted_sets {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name {
            ground: CyclicGround,
            k: u32,
            coeffs: BTreeMap<u64, Rat>,
        }

        impl $name {
            pub fn new(ground: CyclicGround, k: u32) -> Result<Self, Error> {
                if k == 0 || k > ground.len() {
                    return Err(Error::ParameterRange(format!(
                        "k = {k} outside 1..={}",
                        ground.len()
                    )));
                }
                Ok(Self {
                    ground,
                    k,
                    coeffs: BTreeMap::new(),
                })
            }

            pub fn from_pairs(
                ground: CyclicGround,
                k: u32,
                pairs: &[(u64, Rat)],
            ) -> Result<Self, Error> {
                let mut v = Self::new(ground, k)?;
                for (mask, value) in pairs {
                    v.add_term(*mask, value.clone())?;
                }
                Ok(v)
            }

            pub fn ground(&self) -> CyclicGround {
                self.ground
            }

            pub fn k(&self) -> u32 {
                self.k
            }

            /// Coefficient of the given subset; zero when absent.
            pub fn get(&self, mask: u64) -> Rat {
                self.coeffs.get(&mask).cloned().unwrap_or_else(Rat::zero)
            }

            /// Adds `value` to the coefficient of `mask`, dropping exact
            /// zeros so equality stays canonical.
            pub fn add_term(&mut self, mask: u64, value: Rat) -> Result<(), Error> {
                check_term(self.ground, self.k, mask)?;
                let next = self.get(mask) + value;
                if next.is_zero() {
                    self.coeffs.remove(&mask);
                } else {
                    self.coeffs.insert(mask, next);
                }
                Ok(())
            }

            /// Subsets with nonzero coefficient, ascending mask order.
            pub fn support(&self) -> Vec<u64> {
                self.coeffs.keys().copied().collect()
            }

            pub fn iter(&self) -> impl Iterator<Item = (u64, &Rat)> {
                self.coeffs.iter().map(|(&m, v)| (m, v))
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn coefficient_sum(&self) -> Rat {
                self.coeffs.values().fold(Rat::zero(), |a, v| a + v)
            }

            /// Adds `scale` times `other` termwise.
            pub fn add_scaled(&mut self, other: &Self, scale: &Rat) -> Result<(), Error> {
                if self.ground != other.ground || self.k != other.k {
                    return Err(Error::SizeMismatch(
                        "combination needs matching ground and k".into(),
                    ));
                }
                for (mask, value) in other.iter() {
                    self.add_term(mask, value.clone() * scale.clone())?;
                }
                Ok(())
            }
        }
    };
}

weighted_sets!(
    BladeArrangement,
    "A weighted blade arrangement: a formal rational combination of \
     translated blades `β_J` over k-subsets of one cyclic ground."
);
weighted_sets!(
    LVector,
    "Coordinates in the planar basis: a formal rational combination of \
     the `𝓛_J`."
);

/// Expansion of one planar basis element over translated blades:
/// `𝓛_J = Σ_{M ⊆ J°} (-1)^{1+|M|} β_{J_M}`, where `J°` is the set of
/// initial points of `J`'s cyclic intervals and `J_M` replaces each
/// initial point in `M` by its predecessor on the ground.
pub fn expand_l_basis(j: &KSubset) -> BladeArrangement {
    let ground = j.ground();
    let starts = j.initial_points();
    let t = starts.len();
    let mut arr =
        BladeArrangement::new(ground, j.size()).expect("subset sizes are valid");
    for pick in 0u32..(1 << t) {
        let mut mask = j.mask();
        for (idx, &p) in starts.iter().enumerate() {
            if pick & (1 << idx) != 0 {
                mask = (mask & !bit(p)) | bit(ground.prev(p));
            }
        }
        let sign = if pick.count_ones() % 2 == 0 { -1 } else { 1 };
        arr.add_term(mask, rat(sign)).expect("J_M stays a k-subset");
    }
    arr
}

/// Expands a planar-coordinate vector into a weighted blade arrangement.
pub fn l_to_beta(c: &LVector) -> BladeArrangement {
    let mut arr =
        BladeArrangement::new(c.ground(), c.k()).expect("validated by LVector");
    for (mask, value) in c.iter() {
        let basis = expand_l_basis(&KSubset::new(c.ground(), mask).expect("validated"));
        arr.add_scaled(&basis, value).expect("same ground");
    }
    arr
}

/// Inverts `l_to_beta` up to the explicit frozen correction.
///
/// Every expansion column sums to zero, so the blade side splits as
/// `arr = l_to_beta(c) + correction` with the correction an equal-weight
/// combination of frozen blades carrying the full coefficient sum. The
/// planar coordinates are determined up to a constant shift and are pinned
/// by zeroing the colex-first entry.
pub fn beta_to_l(arr: &BladeArrangement) -> Result<(LVector, BladeArrangement), Error> {
    let ground = arr.ground();
    let k = arr.k();
    if k >= ground.len() {
        return Err(Error::ParameterRange(format!(
            "change of basis needs k < ground size, got k = {k}"
        )));
    }
    let subsets = ground.k_subset_masks(k);
    let n = subsets.len();
    let frozen: Vec<u64> = subsets
        .iter()
        .copied()
        .filter(|&m| ground.is_run(m))
        .collect();
    let share = arr.coefficient_sum() / rat(frozen.len() as i64);
    let mut correction = BladeArrangement::new(ground, k)?;
    for &f in &frozen {
        correction.add_term(f, share.clone())?;
    }
    let index: BTreeMap<u64, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    // rows: blade coefficients; columns: planar coordinates c_J for J past
    // the pinned colex-first subset
    let mut rows = vec![vec![Rat::zero(); n - 1]; n];
    for (col, &jm) in subsets.iter().enumerate().skip(1) {
        let basis = expand_l_basis(&KSubset::new(ground, jm)?);
        for (mask, value) in basis.iter() {
            rows[index[&mask]][col - 1] = value.clone();
        }
    }
    let rhs: Vec<Rat> = subsets
        .iter()
        .map(|&m| arr.get(m) - correction.get(m))
        .collect();
    match solve_exact(&rows, &rhs) {
        Solve::Solution { x, unique } if unique => {
            let mut c = LVector::new(ground, k)?;
            for (i, value) in x.into_iter().enumerate() {
                c.add_term(subsets[i + 1], value)?;
            }
            Ok((c, correction))
        }
        Solve::Solution { .. } => Err(Error::BadStructure(
            "planar coordinates not pinned by one normalization; \
             expansion rank below expected"
                .into(),
        )),
        Solve::Inconsistent => Err(Error::BadStructure(
            "blade vector lies outside the expansion span plus frozen \
             correction"
                .into(),
        )),
    }
}

/// Drops the frozen-blade coefficients: the quotient by the linearity
/// space spanned by frozen blades.
pub fn reduce_frozen(arr: &BladeArrangement) -> BladeArrangement {
    let mut out = BladeArrangement::new(arr.ground(), arr.k()).expect("valid input");
    for (mask, value) in arr.iter() {
        if !arr.ground().is_run(mask) {
            out.add_term(mask, value.clone()).expect("same ground");
        }
    }
    out
}

/// Boundary map on the blade side: `∂_j β_J = β_{∂_j J}` on the ground
/// without `j`, extended linearly.
pub fn boundary_beta(arr: &BladeArrangement, j: Label) -> Result<BladeArrangement, Error> {
    if arr.k() < 2 {
        return Err(Error::ParameterRange(
            "blade boundary needs subsets of size >= 2".into(),
        ));
    }
    let mut out = BladeArrangement::new(arr.ground().without(j)?, arr.k() - 1)?;
    for (mask, value) in arr.iter() {
        let image = KSubset::new(arr.ground(), mask)?.boundary(j)?;
        out.add_term(image.mask(), value.clone())?;
    }
    Ok(out)
}

/// Boundary map in the planar basis: `∂_j 𝓛_J` is `𝓛_{J\{j}}` when
/// `j ∈ J` and zero otherwise.
pub fn boundary_l(c: &LVector, j: Label) -> Result<LVector, Error> {
    if c.k() < 2 {
        return Err(Error::ParameterRange(
            "planar boundary needs subsets of size >= 2".into(),
        ));
    }
    if !c.ground().contains(j) {
        return Err(Error::LabelOutsideGround { label: j });
    }
    let mut out = LVector::new(c.ground().without(j)?, c.k() - 1)?;
    for (mask, value) in c.iter() {
        if mask & bit(j) != 0 {
            out.add_term(mask & !bit(j), value.clone())?;
        }
    }
    Ok(out)
}

/// Iterated planar boundary over every label of `level`, ascending; the
/// surviving coordinates are `c_{L ∪ P}` re-keyed by `P`.
pub fn restrict_l(c: &LVector, level: u64) -> Result<LVector, Error> {
    if level & !c.ground().mask() != 0 {
        return Err(Error::InvalidInput(
            "level must consist of ground labels".into(),
        ));
    }
    if level.count_ones() >= c.k() {
        return Err(Error::LevelArity {
            got: level.count_ones(),
            expected: c.k().saturating_sub(1),
        });
    }
    let mut cur = c.clone();
    for x in mask_labels(level) {
        cur = boundary_l(&cur, x)?;
    }
    Ok(cur)
}

/// Iterated blade boundary over every label of `level`, ascending.
pub fn level_projection(
    arr: &BladeArrangement,
    level: u64,
) -> Result<BladeArrangement, Error> {
    if level & !arr.ground().mask() != 0 {
        return Err(Error::InvalidInput(
            "level must consist of ground labels".into(),
        ));
    }
    if level.count_ones() >= arr.k() {
        return Err(Error::LevelArity {
            got: level.count_ones(),
            expected: arr.k().saturating_sub(1),
        });
    }
    let mut cur = arr.clone();
    for x in mask_labels(level) {
        cur = boundary_beta(&cur, x)?;
    }
    Ok(cur)
}

fn check_pair_level(ground: CyclicGround, k: u32, level: u64) -> Result<CyclicGround, Error> {
    if level & !ground.mask() != 0 {
        return Err(Error::InvalidInput(
            "level must consist of ground labels".into(),
        ));
    }
    if level.count_ones() != k - 2 {
        return Err(Error::LevelArity {
            got: level.count_ones(),
            expected: k - 2,
        });
    }
    CyclicGround::with_removed_mask(ground.n(), ground.removed_mask() | level)
}

/// Position pairs `{l_i, l_j}` of a ground that are not cyclic intervals,
/// ascending by mask.
fn nonfrozen_pairs(ground: CyclicGround) -> Vec<u64> {
    ground
        .k_subset_masks(2)
        .into_iter()
        .filter(|&p| !ground.is_run(p))
        .collect()
}

/// Second-difference coefficients at one level, by the closed formula.
///
/// With `[n]\L = {l_1 < … < l_m}` and indices cyclic in `[m]`, the
/// coefficient of the nonfrozen pair `{l_i, l_j}` is
/// `-(c_{L l_i l_j} - c_{L l_i l_{j+1}} - c_{L l_{i+1} l_j} + c_{L l_{i+1} l_{j+1}})`.
pub fn pi_closed(c: &LVector, level: u64) -> Result<BTreeMap<u64, Rat>, Error> {
    let reduced = check_pair_level(c.ground(), c.k(), level)?;
    let ls = reduced.elements();
    let m = ls.len();
    let mut out = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let gap = j - i;
            if gap < 2 || m - gap < 2 {
                continue;
            }
            let succ = |t: usize| ls[(t + 1) % m];
            let entry = |a: Label, b: Label| c.get(level | bit(a) | bit(b));
            let value = -(entry(ls[i], ls[j]) - entry(ls[i], succ(j)) - entry(succ(i), ls[j])
                + entry(succ(i), succ(j)));
            out.insert(bit(ls[i]) | bit(ls[j]), value);
        }
    }
    Ok(out)
}

/// The same coefficients via the dual route: restrict the planar vector to
/// the level, expand over blades there, and read the nonfrozen pairs.
pub fn pi_via_boundary(c: &LVector, level: u64) -> Result<BTreeMap<u64, Rat>, Error> {
    let reduced = check_pair_level(c.ground(), c.k(), level)?;
    let arr = l_to_beta(&restrict_l(c, level)?);
    let mut out = BTreeMap::new();
    for pair in nonfrozen_pairs(reduced) {
        out.insert(pair, arr.get(pair));
    }
    Ok(out)
}

/// Support of the arrangement at a level: nonfrozen pairs whose projected
/// coefficient is nonzero.
pub fn supp_l(arr: &BladeArrangement, level: u64) -> Result<Vec<u64>, Error> {
    let reduced = check_pair_level(arr.ground(), arr.k(), level)?;
    let proj = level_projection(arr, level)?;
    Ok(nonfrozen_pairs(reduced)
        .into_iter()
        .filter(|&p| !proj.get(p).is_zero())
        .collect())
}

/// Why an arrangement fails the cone test, at the first level that breaks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ZWitness {
    NegativeCoefficient { level: u64, pair: u64, value: Rat },
    IncompatibleSupport { level: u64, pair_a: u64, pair_b: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZOutcome {
    pub member: bool,
    pub witness: Option<ZWitness>,
}

/// Cone membership: at every level `L` (scanned ascending), all nonfrozen
/// pair coefficients of `∂_L(arr)` are nonnegative and the positive ones
/// are pairwise weakly separated.
pub fn z_membership(arr: &BladeArrangement) -> Result<ZOutcome, Error> {
    if arr.k() < 2 {
        return Err(Error::ParameterRange(
            "cone membership needs subsets of size >= 2".into(),
        ));
    }
    for level in arr.ground().k_subset_masks(arr.k() - 2) {
        let reduced = check_pair_level(arr.ground(), arr.k(), level)?;
        let proj = level_projection(arr, level)?;
        let mut support = Vec::new();
        for pair in nonfrozen_pairs(reduced) {
            let value = proj.get(pair);
            if value < Rat::zero() {
                return Ok(ZOutcome {
                    member: false,
                    witness: Some(ZWitness::NegativeCoefficient { level, pair, value }),
                });
            }
            if !value.is_zero() {
                support.push(pair);
            }
        }
        for a in 0..support.len() {
            for b in a + 1..support.len() {
                let pa = KSubset::new(reduced, support[a])?;
                let pb = KSubset::new(reduced, support[b])?;
                if !weakly_separated(&pa, &pb)? {
                    return Ok(ZOutcome {
                        member: false,
                        witness: Some(ZWitness::IncompatibleSupport {
                            level,
                            pair_a: support[a],
                            pair_b: support[b],
                        }),
                    });
                }
            }
        }
    }
    Ok(ZOutcome {
        member: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blades::distance;
    use crate::cyclic::labels_mask;

    fn full(n: Label) -> CyclicGround {
        CyclicGround::full(n).unwrap()
    }

    fn ks(g: CyclicGround, labels: &[Label]) -> KSubset {
        KSubset::from_labels(g, labels).unwrap()
    }

    fn beta(g: CyclicGround, k: u32, terms: &[(&[Label], i64)]) -> BladeArrangement {
        let pairs: Vec<(u64, Rat)> = terms
            .iter()
            .map(|(l, v)| (labels_mask(l), rat(*v)))
            .collect();
        BladeArrangement::from_pairs(g, k, &pairs).unwrap()
    }

    #[test]
    fn square_basis_expansions() {
        let g = full(4);
        let cases: [(&[Label], &[(&[Label], i64)]); 6] = [
            (&[1, 2], &[(&[1, 2], -1), (&[2, 4], 1)]),
            (&[1, 4], &[(&[1, 4], -1), (&[1, 3], 1)]),
            (&[2, 3], &[(&[2, 3], -1), (&[1, 3], 1)]),
            (&[3, 4], &[(&[3, 4], -1), (&[2, 4], 1)]),
            (&[2, 4], &[(&[2, 4], -1), (&[1, 4], 1), (&[2, 3], 1), (&[1, 3], -1)]),
            (&[1, 3], &[(&[1, 3], -1), (&[1, 2], 1), (&[3, 4], 1), (&[2, 4], -1)]),
        ];
        for (j, expect) in cases {
            assert_eq!(
                expand_l_basis(&ks(g, j)),
                beta(g, 2, expect),
                "J = {j:?}"
            );
        }
    }

    #[test]
    fn basis_expansions_sum_to_zero() {
        for (n, k) in [(4u32, 2u32), (5, 2), (6, 3)] {
            let g = full(n);
            let mut total = BladeArrangement::new(g, k).unwrap();
            for m in g.k_subset_masks(k) {
                total
                    .add_scaled(&expand_l_basis(&KSubset::new(g, m).unwrap()), &rat(1))
                    .unwrap();
            }
            assert!(total.is_zero(), "n={n} k={k}");
        }
    }

    #[test]
    fn distance_coordinates_expand_to_scaled_blade() {
        // Σ_I d(e_J, e_I) 𝓛_I = n β_J - Σ_intervals β
        for (n, k) in [(4u32, 2u32), (5, 2), (6, 2), (6, 3)] {
            let g = full(n);
            for jm in g.k_subset_masks(k) {
                let j = KSubset::new(g, jm).unwrap();
                let mut c = LVector::new(g, k).unwrap();
                for im in g.k_subset_masks(k) {
                    let i = KSubset::new(g, im).unwrap();
                    c.add_term(im, rat(distance(&j, &i).unwrap())).unwrap();
                }
                let mut expect = BladeArrangement::new(g, k).unwrap();
                expect.add_term(jm, rat(n as i64)).unwrap();
                for fm in g.k_subset_masks(k).into_iter().filter(|&m| g.is_run(m)) {
                    expect.add_term(fm, rat(-1)).unwrap();
                }
                assert_eq!(l_to_beta(&c), expect, "n={n} k={k} J={jm:b}");
            }
        }
    }

    #[test]
    fn square_distance_identity_verbatim() {
        let g = full(4);
        let j = ks(g, &[1, 3]);
        let mut c = LVector::new(g, 2).unwrap();
        for im in g.k_subset_masks(2) {
            let i = KSubset::new(g, im).unwrap();
            c.add_term(im, rat(distance(&j, &i).unwrap())).unwrap();
        }
        let expect = beta(
            g,
            2,
            &[(&[1, 3], 4), (&[1, 2], -1), (&[2, 3], -1), (&[3, 4], -1), (&[1, 4], -1)],
        );
        assert_eq!(l_to_beta(&c), expect);
    }

    fn pseudo_random_arrangement(g: CyclicGround, k: u32, seed: u64) -> BladeArrangement {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut arr = BladeArrangement::new(g, k).unwrap();
        for m in g.k_subset_masks(k) {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let v = ((state >> 33) % 11) as i64 - 5;
            arr.add_term(m, rat(v)).unwrap();
        }
        arr
    }

    #[test]
    fn change_of_basis_round_trips_with_correction() {
        for (n, k) in [(5u32, 2u32), (6, 3), (7, 3)] {
            let g = full(n);
            for seed in 0..4u64 {
                let arr = pseudo_random_arrangement(g, k, seed);
                let (c, corr) = beta_to_l(&arr).unwrap();
                let mut rebuilt = l_to_beta(&c);
                rebuilt.add_scaled(&corr, &rat(1)).unwrap();
                assert_eq!(rebuilt, arr, "n={n} k={k} seed={seed}");
                // correction weights frozen blades equally
                for (mask, _) in corr.iter() {
                    assert!(g.is_run(mask));
                }
            }
        }
    }

    #[test]
    fn single_blade_coordinates_match_distances_up_to_constant() {
        for (n, k, j) in [(4u32, 2u32, vec![1, 2]), (5, 2, vec![1, 3]), (6, 3, vec![1, 3, 5])] {
            let g = full(n);
            let j = ks(g, &j);
            let mut arr = BladeArrangement::new(g, k).unwrap();
            arr.add_term(j.mask(), rat(1)).unwrap();
            let (c, _) = beta_to_l(&arr).unwrap();
            // c - d_J / n must be the same rational at every subset
            let shifts: Vec<Rat> = g
                .k_subset_masks(k)
                .into_iter()
                .map(|im| {
                    let i = KSubset::new(g, im).unwrap();
                    c.get(im) - rat(distance(&j, &i).unwrap()) / rat(n as i64)
                })
                .collect();
            assert!(shifts.windows(2).all(|w| w[0] == w[1]), "n={n} J harmless shift");
        }
    }

    #[test]
    fn blade_boundary_keeps_frozen_frozen() {
        let g = full(6);
        for m in g.k_subset_masks(3).into_iter().filter(|&m| g.is_run(m)) {
            let mut arr = BladeArrangement::new(g, 3).unwrap();
            arr.add_term(m, rat(1)).unwrap();
            for j in 1..=6 {
                let out = boundary_beta(&arr, j).unwrap();
                let (mask, _) = out.iter().next().unwrap();
                assert!(out.ground().is_run(mask));
            }
        }
    }

    #[test]
    fn boundary_maps_commute_in_both_bases() {
        let g = full(7);
        let arr = pseudo_random_arrangement(g, 3, 9);
        let (c, _) = beta_to_l(&arr).unwrap();
        for i in 1..=7u32 {
            for j in 1..=7u32 {
                if i == j {
                    continue;
                }
                let a = boundary_beta(&boundary_beta(&arr, i).unwrap(), j).unwrap();
                let b = boundary_beta(&boundary_beta(&arr, j).unwrap(), i).unwrap();
                assert_eq!(a, b);
                let a = boundary_l(&boundary_l(&c, i).unwrap(), j).unwrap();
                let b = boundary_l(&boundary_l(&c, j).unwrap(), i).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn hexagon_blade_boundaries_match_the_known_lists() {
        // for each listed J, the boundary at j is nonfrozen exactly at the
        // listed j's, with the listed image pair
        let g = full(6);
        let cases: [(&[Label], &[(Label, &[Label])]); 7] = [
            (&[1, 2, 4], &[(1, &[2, 4]), (2, &[1, 4]), (5, &[2, 4]), (6, &[2, 4])]),
            (&[1, 2, 5], &[(1, &[2, 5]), (2, &[1, 5]), (6, &[2, 5])]),
            (&[1, 3, 4], &[(2, &[1, 4]), (3, &[1, 4]), (4, &[1, 3])]),
            (&[1, 4, 5], &[(2, &[1, 5]), (3, &[1, 5]), (4, &[1, 5]), (5, &[1, 4])]),
            (
                &[1, 3, 5],
                &[
                    (1, &[3, 5]),
                    (2, &[1, 5]),
                    (3, &[1, 5]),
                    (4, &[1, 3]),
                    (5, &[1, 3]),
                    (6, &[3, 5]),
                ],
            ),
            (&[2, 3, 5], &[(1, &[3, 5]), (2, &[3, 5]), (3, &[2, 5]), (6, &[3, 5])]),
            (&[1, 3, 6], &[(1, &[3, 6]), (4, &[1, 3]), (5, &[1, 3]), (6, &[1, 3])]),
        ];
        for (j_labels, listed) in cases {
            let j = ks(g, j_labels);
            let mut arr = BladeArrangement::new(g, 3).unwrap();
            arr.add_term(j.mask(), rat(1)).unwrap();
            let mut seen: Vec<(Label, u64)> = Vec::new();
            for x in 1..=6 {
                let out = boundary_beta(&arr, x).unwrap();
                let (mask, value) = out.iter().next().unwrap();
                assert_eq!(value, &rat(1));
                if !out.ground().is_run(mask) {
                    seen.push((x, mask));
                }
            }
            let expect: Vec<(Label, u64)> = listed
                .iter()
                .map(|&(x, pair)| (x, labels_mask(pair)))
                .collect();
            assert_eq!(seen, expect, "J = {j_labels:?}");
        }
    }

    #[test]
    fn closed_and_boundary_pi_agree() {
        for (n, k) in [(5u32, 2u32), (6, 3), (7, 3)] {
            let g = full(n);
            let arr = pseudo_random_arrangement(g, k, 3);
            let (c, _) = beta_to_l(&arr).unwrap();
            for level in g.k_subset_masks(k - 2) {
                assert_eq!(
                    pi_closed(&c, level).unwrap(),
                    pi_via_boundary(&c, level).unwrap(),
                    "n={n} k={k} level={level:b}"
                );
            }
        }
    }

    #[test]
    fn pi_ignores_constant_shifts() {
        let g = full(6);
        let arr = pseudo_random_arrangement(g, 3, 21);
        let (c, _) = beta_to_l(&arr).unwrap();
        let mut shifted = c.clone();
        for m in g.k_subset_masks(3) {
            shifted.add_term(m, rat(7)).unwrap();
        }
        for level in g.k_subset_masks(1) {
            assert_eq!(
                pi_closed(&c, level).unwrap(),
                pi_closed(&shifted, level).unwrap()
            );
        }
    }

    #[test]
    fn support_reads_the_projection() {
        let g = full(6);
        let mut arr = BladeArrangement::new(g, 3).unwrap();
        arr.add_term(labels_mask(&[1, 2, 4]), rat(1)).unwrap();
        assert_eq!(
            supp_l(&arr, bit(1)).unwrap(),
            vec![labels_mask(&[2, 4])]
        );
        assert_eq!(supp_l(&arr, bit(3)).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn frozen_reduction_drops_intervals_only() {
        let g = full(5);
        let arr = beta(g, 2, &[(&[1, 2], 3), (&[1, 3], 2), (&[2, 5], -1)]);
        let reduced = reduce_frozen(&arr);
        assert_eq!(
            reduced,
            beta(g, 2, &[(&[1, 3], 2), (&[2, 5], -1)])
        );
    }

    #[test]
    fn membership_examples_on_the_square_ground() {
        let g = full(4);
        // a single nonfrozen blade is in the cone
        let arr = beta(g, 2, &[(&[1, 3], 1)]);
        let out = z_membership(&arr).unwrap();
        assert!(out.member);
        // a negative weight is caught with the offending pair
        let neg = beta(g, 2, &[(&[1, 3], -1)]);
        let out = z_membership(&neg).unwrap();
        assert!(!out.member);
        assert_eq!(
            out.witness,
            Some(ZWitness::NegativeCoefficient {
                level: 0,
                pair: labels_mask(&[1, 3]),
                value: rat(-1)
            })
        );
        // both diagonals positive is incompatible
        let both = beta(g, 2, &[(&[1, 3], 1), (&[2, 4], 1)]);
        let out = z_membership(&both).unwrap();
        assert!(!out.member);
        assert_eq!(
            out.witness,
            Some(ZWitness::IncompatibleSupport {
                level: 0,
                pair_a: labels_mask(&[1, 3]),
                pair_b: labels_mask(&[2, 4])
            })
        );
    }
}

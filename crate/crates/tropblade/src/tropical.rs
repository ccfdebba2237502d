//! Tropical Plücker vectors on the positive side.
//!
//! A vector assigns a rational to every k-subset of the ground. The
//! positivity test runs the three-term minimum relation over every
//! octahedron (a level `L` of size `k - 2` plus four free labels
//! `a < b < c < d`), classifying each as unsplit, split along one diagonal
//! pair, or violating. `extend_from_seed` reconstructs the whole vector
//! from its restriction to a weakly separated collection by repeatedly
//! solving octahedra with a single unknown.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arrangement::LVector;
use crate::blades::distance;
use crate::cyclic::{bit, mask_labels, mask_to_string, CyclicGround, KSubset, Label};
use crate::wsep::WCollection;
use crate::{rat, Error, Rat};

/// A total assignment of rationals to the k-subsets of a ground.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluckerVector {
    ground: CyclicGround,
    k: u32,
    index: Vec<u64>,
    values: Vec<Rat>,
}

impl PluckerVector {
    /// The zero vector.
    pub fn new(ground: CyclicGround, k: u32) -> Result<Self, Error> {
        if k == 0 || k > ground.len() {
            return Err(Error::ParameterRange(format!(
                "k = {k} outside 1..={}",
                ground.len()
            )));
        }
        let index = ground.k_subset_masks(k);
        let values = vec![Rat::zero(); index.len()];
        Ok(PluckerVector {
            ground,
            k,
            index,
            values,
        })
    }

    pub fn from_fn(
        ground: CyclicGround,
        k: u32,
        mut f: impl FnMut(u64) -> Rat,
    ) -> Result<Self, Error> {
        let mut p = Self::new(ground, k)?;
        for i in 0..p.index.len() {
            p.values[i] = f(p.index[i]);
        }
        Ok(p)
    }

    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// All k-subsets, ascending mask order; parallel to the value slots.
    pub fn subsets(&self) -> &[u64] {
        &self.index
    }

    fn pos(&self, mask: u64) -> Result<usize, Error> {
        self.index.binary_search(&mask).map_err(|_| {
            Error::InvalidInput(format!(
                "{} is not a {}-subset of the ground",
                mask_to_string(mask),
                self.k
            ))
        })
    }

    pub fn get(&self, mask: u64) -> Result<Rat, Error> {
        Ok(self.values[self.pos(mask)?].clone())
    }

    pub fn set(&mut self, mask: u64, value: Rat) -> Result<(), Error> {
        let i = self.pos(mask)?;
        self.values[i] = value;
        Ok(())
    }

    pub fn add(&mut self, other: &Self, scale: &Rat) -> Result<(), Error> {
        if self.ground != other.ground || self.k != other.k {
            return Err(Error::SizeMismatch(
                "combination needs matching ground and k".into(),
            ));
        }
        for i in 0..self.values.len() {
            self.values[i] = self.values[i].clone() + other.values[i].clone() * scale.clone();
        }
        Ok(())
    }

    /// Reads the vector as planar-basis coordinates.
    pub fn to_l_vector(&self) -> LVector {
        let pairs: Vec<(u64, Rat)> = self
            .index
            .iter()
            .zip(&self.values)
            .map(|(&m, v)| (m, v.clone()))
            .collect();
        LVector::from_pairs(self.ground, self.k, &pairs).expect("subsets are valid")
    }
}

/// The vector of distances from the vertex `e_J`: `I ↦ d(e_J, e_I)`.
pub fn d_vector(j: &KSubset) -> Result<PluckerVector, Error> {
    let ground = j.ground();
    let mut p = PluckerVector::new(ground, j.size())?;
    for m in ground.k_subset_masks(j.size()) {
        let i = KSubset::new(ground, m)?;
        p.set(m, rat(distance(j, &i)?))?;
    }
    Ok(p)
}

/// How one octahedron relates the six values around a level and a free
/// quadruple `a < b < c < d`: the diagonal sum either ties both side sums,
/// ties exactly the smaller one (splitting along the larger pair, whose
/// members are the apexes), or breaks the minimum relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OctahedronVerdict {
    Unsplit,
    Split { apexes: (u64, u64) },
    NotPositive,
}

fn octahedron_masks(level: u64, quad: [Label; 4]) -> [u64; 6] {
    let [a, b, c, d] = quad;
    [
        level | bit(a) | bit(c), // diagonal
        level | bit(b) | bit(d), // diagonal
        level | bit(a) | bit(b),
        level | bit(c) | bit(d),
        level | bit(a) | bit(d),
        level | bit(b) | bit(c),
    ]
}

fn check_octahedron(p: &PluckerVector, level: u64, quad: [Label; 4]) -> Result<(), Error> {
    if level & !p.ground().mask() != 0 {
        return Err(Error::InvalidInput(
            "level must consist of ground labels".into(),
        ));
    }
    if level.count_ones() != p.k() - 2 {
        return Err(Error::LevelArity {
            got: level.count_ones(),
            expected: p.k() - 2,
        });
    }
    let quad_mask = quad.iter().fold(0u64, |m, &x| m | bit(x));
    if quad_mask.count_ones() != 4
        || quad_mask & !p.ground().mask() != 0
        || quad_mask & level != 0
        || !quad.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidInput(format!(
            "free labels must be four ascending ground labels outside the \
             level, got {quad:?}"
        )));
    }
    Ok(())
}

/// Classifies one octahedron of `p`.
pub fn classify_octahedron(
    p: &PluckerVector,
    level: u64,
    quad: [Label; 4],
) -> Result<OctahedronVerdict, Error> {
    if p.k() < 2 {
        return Err(Error::ParameterRange(
            "octahedra need subsets of size >= 2".into(),
        ));
    }
    check_octahedron(p, level, quad)?;
    let m = octahedron_masks(level, quad);
    let v: Vec<Rat> = m.iter().map(|&x| p.get(x)).collect::<Result<_, _>>()?;
    let s1 = v[0].clone() + v[1].clone();
    let s2 = v[2].clone() + v[3].clone();
    let s3 = v[4].clone() + v[5].clone();
    Ok(if s1 == s2 && s1 == s3 {
        OctahedronVerdict::Unsplit
    } else if s1 == s2 && s1 < s3 {
        OctahedronVerdict::Split { apexes: (m[4], m[5]) }
    } else if s1 == s3 && s1 < s2 {
        OctahedronVerdict::Split { apexes: (m[2], m[3]) }
    } else {
        OctahedronVerdict::NotPositive
    })
}

/// Levels paired with their free-label quadruples, both ascending; empty
/// when the ground is too small to host an octahedron.
pub fn octahedra(ground: CyclicGround, k: u32) -> Vec<(u64, [Label; 4])> {
    let mut out = Vec::new();
    if k < 2 {
        return out;
    }
    for level in ground.k_subset_masks(k - 2) {
        let free = ground.mask() & !level;
        if free.count_ones() < 4 {
            continue;
        }
        let labels = mask_labels(free);
        for q in 0..labels.len() {
            for r in q + 1..labels.len() {
                for s in r + 1..labels.len() {
                    for t in s + 1..labels.len() {
                        out.push((level, [labels[q], labels[r], labels[s], labels[t]]));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluckerCheck {
    pub positive: bool,
    /// First octahedron breaking the minimum relation, scan order.
    pub witness: Option<(u64, [Label; 4])>,
}

/// Tests the minimum relation on every octahedron.
pub fn is_positive_plucker(p: &PluckerVector) -> Result<PluckerCheck, Error> {
    if p.k() < 2 {
        return Ok(PluckerCheck {
            positive: true,
            witness: None,
        });
    }
    for (level, quad) in octahedra(p.ground(), p.k()) {
        if classify_octahedron(p, level, quad)? == OctahedronVerdict::NotPositive {
            return Ok(PluckerCheck {
                positive: false,
                witness: Some((level, quad)),
            });
        }
    }
    Ok(PluckerCheck {
        positive: true,
        witness: None,
    })
}

/// Whether a positive vector splits every octahedron; errors when the
/// vector is not positive to begin with.
pub fn is_finest(p: &PluckerVector) -> Result<bool, Error> {
    let check = is_positive_plucker(p)?;
    if !check.positive {
        let (level, quad) = check.witness.expect("failing check carries a witness");
        return Err(Error::NotPositive(format!(
            "octahedron at level {} with free labels {quad:?} breaks the \
             minimum relation",
            mask_to_string(level)
        )));
    }
    for (level, quad) in octahedra(p.ground(), p.k()) {
        if classify_octahedron(p, level, quad)? == OctahedronVerdict::Unsplit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rebuilds a full positive vector from its values on a weakly separated
/// collection.
///
/// Every octahedron with one unknown forces that unknown (an unknown
/// diagonal always, an unknown side when the opposite side sum exceeds the
/// diagonal sum); rounds repeat until nothing is missing. Stalling reports
/// how many values stayed undetermined; the finished vector is verified
/// before it is returned.
pub fn extend_from_seed(
    w: &WCollection,
    seed: &[(u64, Rat)],
) -> Result<PluckerVector, Error> {
    let ground = w.ground();
    let k = w.k();
    let mut known: BTreeMap<u64, Rat> = BTreeMap::new();
    for (mask, value) in seed {
        if !w.contains(*mask) {
            return Err(Error::InvalidInput(format!(
                "seed value for {} which is not a collection member",
                mask_to_string(*mask)
            )));
        }
        if known.insert(*mask, value.clone()).is_some() {
            return Err(Error::InvalidInput(format!(
                "repeated seed value for {}",
                mask_to_string(*mask)
            )));
        }
    }
    if known.len() != w.len() {
        return Err(Error::InvalidInput(format!(
            "seed covers {} of {} collection members",
            known.len(),
            w.len()
        )));
    }
    let universe = ground.k_subset_masks(k);
    let cells = octahedra(ground, k);
    loop {
        let missing = universe.len() - known.len();
        if missing == 0 {
            break;
        }
        let mut progressed = false;
        for &(level, quad) in &cells {
            let m = octahedron_masks(level, quad);
            let states: Vec<Option<&Rat>> = m.iter().map(|x| known.get(x)).collect();
            let unknowns = states.iter().filter(|s| s.is_none()).count();
            if unknowns != 1 {
                continue;
            }
            let slot = states.iter().position(|s| s.is_none()).unwrap();
            let val = |i: usize| states[i].cloned().unwrap();
            let forced = match slot {
                0 | 1 => {
                    // missing diagonal: the diagonal sum is the smaller
                    // side sum
                    let s2 = val(2) + val(3);
                    let s3 = val(4) + val(5);
                    Some(s2.min(s3) - val(1 - slot))
                }
                _ => {
                    let partner = slot ^ 1;
                    let (oa, ob) = if slot < 4 { (4, 5) } else { (2, 3) };
                    let t = val(0) + val(1);
                    let r = val(oa) + val(ob);
                    if r < t {
                        return Err(Error::Contradiction {
                            level: mask_to_string(level),
                            quad: format!("{quad:?}"),
                        });
                    }
                    if r > t {
                        // the known side pair exceeds the diagonals, so
                        // this pair must realize the minimum
                        Some(t - val(partner))
                    } else {
                        None // any value at least t - partner works here
                    }
                }
            };
            if let Some(value) = forced {
                known.insert(m[slot], value);
                progressed = true;
            }
        }
        if !progressed {
            return Err(Error::ExtensionStalled {
                unknown: universe.len() - known.len(),
            });
        }
    }
    let p = PluckerVector::from_fn(ground, k, |m| known[&m].clone())?;
    let check = is_positive_plucker(&p)?;
    if !check.positive {
        let (level, quad) = check.witness.expect("failing check carries a witness");
        return Err(Error::NotPositive(format!(
            "extension is not positive: octahedron at level {} with free \
             labels {quad:?}",
            mask_to_string(level)
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{l_to_beta, z_membership};
    use crate::cyclic::labels_mask;
    use crate::wsep::w0;

    fn full(n: Label) -> CyclicGround {
        CyclicGround::full(n).unwrap()
    }

    fn ks(g: CyclicGround, labels: &[Label]) -> KSubset {
        KSubset::from_labels(g, labels).unwrap()
    }

    #[test]
    fn square_distance_vector_splits_its_octahedron() {
        let g = full(4);
        let p = d_vector(&ks(g, &[1, 3])).unwrap();
        assert_eq!(
            classify_octahedron(&p, 0, [1, 2, 3, 4]).unwrap(),
            OctahedronVerdict::Split {
                apexes: (labels_mask(&[1, 4]), labels_mask(&[2, 3]))
            }
        );
        assert!(is_positive_plucker(&p).unwrap().positive);
        assert!(is_finest(&p).unwrap());
    }

    #[test]
    fn zero_vector_is_positive_but_nowhere_split() {
        let p = PluckerVector::new(full(5), 2).unwrap();
        for (level, quad) in octahedra(p.ground(), 2) {
            assert_eq!(
                classify_octahedron(&p, level, quad).unwrap(),
                OctahedronVerdict::Unsplit
            );
        }
        assert!(is_positive_plucker(&p).unwrap().positive);
        assert!(!is_finest(&p).unwrap());
    }

    #[test]
    fn distance_vectors_are_positive() {
        for (n, k) in [(4u32, 2u32), (5, 2), (6, 2), (6, 3), (7, 3), (7, 4)] {
            let g = full(n);
            for jm in g.k_subset_masks(k) {
                let p = d_vector(&KSubset::new(g, jm).unwrap()).unwrap();
                assert!(
                    is_positive_plucker(&p).unwrap().positive,
                    "n={n} k={k} J={jm:b}"
                );
            }
        }
    }

    #[test]
    fn perturbation_is_caught_with_a_witness() {
        let g = full(4);
        let mut p = d_vector(&ks(g, &[1, 3])).unwrap();
        let bumped = p.get(labels_mask(&[2, 4])).unwrap() + rat(1);
        p.set(labels_mask(&[2, 4]), bumped).unwrap();
        let check = is_positive_plucker(&p).unwrap();
        assert!(!check.positive);
        assert_eq!(check.witness, Some((0, [1, 2, 3, 4])));
        assert!(is_finest(&p).is_err());
    }

    #[test]
    fn classification_rejects_malformed_octahedra() {
        let p = PluckerVector::new(full(6), 3).unwrap();
        assert!(classify_octahedron(&p, 0, [1, 2, 3, 4]).is_err());
        assert!(classify_octahedron(&p, bit(2), [2, 3, 4, 5]).is_err());
        assert!(classify_octahedron(&p, bit(1), [3, 2, 4, 5]).is_err());
    }

    #[test]
    fn seed_on_a_maximal_collection_extends_to_the_original() {
        for (n, k, j) in [(5u32, 2u32, vec![1, 3]), (6, 3, vec![1, 3, 5]), (6, 3, vec![2, 4, 6])] {
            let g = full(n);
            let p = d_vector(&ks(g, &j)).unwrap();
            let w = w0(n, k).unwrap();
            let seed: Vec<(u64, Rat)> = w
                .members()
                .iter()
                .map(|&m| (m, p.get(m).unwrap()))
                .collect();
            let q = extend_from_seed(&w, &seed).unwrap();
            assert_eq!(q, p, "n={n} k={k} J={j:?}");
        }
    }

    #[test]
    fn arbitrary_seeds_on_maximal_collections_extend_positively() {
        let w = w0(6, 3).unwrap();
        let mut state = 11u64;
        for _ in 0..5 {
            let seed: Vec<(u64, Rat)> = w
                .members()
                .iter()
                .map(|&m| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (m, rat(((state >> 33) % 9) as i64 - 4))
                })
                .collect();
            let p = extend_from_seed(&w, &seed).unwrap();
            assert!(is_positive_plucker(&p).unwrap().positive);
            for (m, v) in &seed {
                assert_eq!(&p.get(*m).unwrap(), v);
            }
        }
    }

    #[test]
    fn frozen_only_seed_stalls() {
        let g = full(5);
        let frozen: Vec<u64> = g
            .k_subset_masks(2)
            .into_iter()
            .filter(|&m| g.is_run(m))
            .collect();
        let w = WCollection::new(g, 2, &frozen).unwrap();
        let seed: Vec<(u64, Rat)> = frozen.iter().map(|&m| (m, rat(0))).collect();
        assert!(matches!(
            extend_from_seed(&w, &seed),
            Err(Error::ExtensionStalled { unknown: 5 })
        ));
    }

    #[test]
    fn seed_must_cover_the_collection_exactly() {
        let w = w0(4, 2).unwrap();
        let short: Vec<(u64, Rat)> = w.members()[..3].iter().map(|&m| (m, rat(0))).collect();
        assert!(extend_from_seed(&w, &short).is_err());
        let mut doubled: Vec<(u64, Rat)> =
            w.members().iter().map(|&m| (m, rat(0))).collect();
        doubled.push((w.members()[0], rat(1)));
        assert!(extend_from_seed(&w, &doubled).is_err());
        let stranger = vec![(labels_mask(&[2, 4]), rat(0))];
        assert!(extend_from_seed(&w, &stranger).is_err());
    }

    #[test]
    fn positive_vectors_land_in_the_cone_and_perturbed_ones_do_not() {
        let g = full(5);
        let p = d_vector(&ks(g, &[1, 3])).unwrap();
        let arr = l_to_beta(&p.to_l_vector());
        assert!(z_membership(&arr).unwrap().member);
        let mut bad = p.clone();
        let bumped = bad.get(labels_mask(&[2, 4])).unwrap() + rat(1);
        bad.set(labels_mask(&[2, 4]), bumped).unwrap();
        assert!(!is_positive_plucker(&bad).unwrap().positive);
        let arr = l_to_beta(&bad.to_l_vector());
        assert!(!z_membership(&arr).unwrap().member);
    }
}

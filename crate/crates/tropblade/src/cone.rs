//! Simplicial-cone analysis of blade-arrangement supports.
//!
//! A maximal weakly separated collection spans a cone of arrangements with
//! nonnegative nonfrozen weights. A member is essential when some level
//! sees a nonfrozen boundary image that no other member produces; dropping
//! an inessential member leaves the support of the cone unchanged because
//! every one of its images is already covered. The cone is maximal
//! simplicial exactly when every nonfrozen member is essential.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arrangement::LVector;
use crate::cyclic::{CyclicGround, KSubset};
use crate::linalg::{solve_exact, Solve};
use crate::tropical::d_vector;
use crate::wsep::WCollection;
use crate::{Error, Rat};

/// One level and nonfrozen pair reached by a single member only.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EssentialityWitness {
    pub level: u64,
    pub pair: u64,
}

/// Essentiality data for one nonfrozen member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementReport {
    pub member: u64,
    /// Levels and pairs where this member is the unique preimage; nonempty
    /// exactly when the member is essential.
    pub witnesses: Vec<EssentialityWitness>,
    /// For an inessential member, the other members sharing its boundary
    /// images; empty for essential members.
    pub covered_by: Vec<u64>,
}

impl ElementReport {
    pub fn is_essential(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConeVerdict {
    /// Every nonfrozen member is essential: the cone is simplicial and of
    /// maximal dimension, and the collection is minimal with its support.
    MaximalSimplicial,
    /// Some members contribute no unique boundary image, so they can be
    /// dropped without shrinking the support.
    NotMinimal { inessential: Vec<u64> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeReport {
    /// The nonfrozen members under analysis, ascending mask order.
    pub members: Vec<u64>,
    /// One report per nonfrozen member, same order.
    pub elements: Vec<ElementReport>,
    pub verdict: ConeVerdict,
}

fn adjoin_frozen(w: &WCollection) -> Result<WCollection, Error> {
    let ground = w.ground();
    let mut members = w.members().to_vec();
    members.extend(
        ground
            .k_subset_masks(w.k())
            .into_iter()
            .filter(|&m| ground.is_run(m)),
    );
    WCollection::new(ground, w.k(), &members)
}

/// Essentiality reports for the nonfrozen members of `w`, after adjoining
/// every frozen subset; the enlarged collection must be maximal.
pub fn essential_elements(w: &WCollection) -> Result<Vec<ElementReport>, Error> {
    if w.k() < 2 {
        return Err(Error::ParameterRange(
            "cone analysis needs subsets of size >= 2".into(),
        ));
    }
    let full = adjoin_frozen(w)?;
    if !full.is_maximal() {
        return Err(Error::NotMaximal(
            "cone analysis expects a maximal collection once frozen subsets \
             are adjoined"
                .into(),
        ));
    }
    let ground = full.ground();
    let nonfrozen = full.nonfrozen_members();
    // (level, image pair) -> members mapping there
    let mut fibers: BTreeMap<(u64, u64), Vec<u64>> = BTreeMap::new();
    for level in ground.k_subset_masks(full.k() - 2) {
        let reduced =
            CyclicGround::with_removed_mask(ground.n(), ground.removed_mask() | level)?;
        for &m in &nonfrozen {
            let image = KSubset::new(ground, m)?.boundary_multi(level)?.mask();
            if !reduced.is_run(image) {
                fibers.entry((level, image)).or_default().push(m);
            }
        }
    }
    let mut reports = Vec::new();
    for &m in &nonfrozen {
        let witnesses: Vec<EssentialityWitness> = fibers
            .iter()
            .filter(|(_, v)| v.as_slice() == [m])
            .map(|(&(level, pair), _)| EssentialityWitness { level, pair })
            .collect();
        let covered_by = if witnesses.is_empty() {
            let mut sharers: Vec<u64> = fibers
                .values()
                .filter(|v| v.contains(&m))
                .flatten()
                .copied()
                .filter(|&o| o != m)
                .collect();
            sharers.sort_unstable();
            sharers.dedup();
            sharers
        } else {
            Vec::new()
        };
        reports.push(ElementReport {
            member: m,
            witnesses,
            covered_by,
        });
    }
    Ok(reports)
}

/// Whether the support cone of a sub-collection still covers every level:
/// at each level, the distinct nonfrozen boundary images must form a full
/// triangulation of the reduced ground, which for pairwise noncrossing
/// pairs means exactly `m - 3` of them over an `m`-element ground.
pub fn satisfies_s_condition(w: &WCollection) -> Result<bool, Error> {
    if w.k() < 2 {
        return Err(Error::ParameterRange(
            "the support condition needs subsets of size >= 2".into(),
        ));
    }
    let ground = w.ground();
    for level in ground.k_subset_masks(w.k() - 2) {
        let reduced =
            CyclicGround::with_removed_mask(ground.n(), ground.removed_mask() | level)?;
        let mut images: Vec<u64> = Vec::new();
        for &m in w.members() {
            if ground.is_run(m) {
                continue;
            }
            let image = KSubset::new(ground, m)?.boundary_multi(level)?.mask();
            if !reduced.is_run(image) {
                images.push(image);
            }
        }
        images.sort_unstable();
        images.dedup();
        if images.len() != reduced.len() as usize - 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimality of the collection among those with its support cone.
///
/// Support membership is upward-monotone under inclusion, so minimality
/// only needs single-element removals, and removing one member keeps the
/// support exactly when that member is inessential; hence the verdict is
/// maximal simplicial precisely when every member is essential.
pub fn is_minimal_in_s(w: &WCollection) -> Result<ConeReport, Error> {
    let elements = essential_elements(w)?;
    let inessential: Vec<u64> = elements
        .iter()
        .filter(|e| !e.is_essential())
        .map(|e| e.member)
        .collect();
    let verdict = if inessential.is_empty() {
        ConeVerdict::MaximalSimplicial
    } else {
        ConeVerdict::NotMinimal { inessential }
    };
    Ok(ConeReport {
        members: elements.iter().map(|e| e.member).collect(),
        elements,
        verdict,
    })
}

/// Planar coordinates of the ray spanned by the blade on `J`: the distance
/// vector of `J`, read coordinatewise. Scaling and lineality-span shifts
/// do not move the ray, so the vector is returned unscaled.
pub fn ray_in_l_coords(j: &KSubset) -> Result<LVector, Error> {
    if j.is_frozen()? {
        return Err(Error::FrozenBlade {
            set: j.to_string_short(),
        });
    }
    Ok(d_vector(j)?.to_l_vector())
}

/// Whether two planar-coordinate vectors differ by an element of the
/// lineality span `{Σ_{I ∋ i} e_I : i in the ground}`.
pub fn lin_equiv(a: &LVector, b: &LVector) -> Result<bool, Error> {
    if a.ground() != b.ground() || a.k() != b.k() {
        return Err(Error::SizeMismatch(
            "comparison needs matching ground and k".into(),
        ));
    }
    let ground = a.ground();
    let labels = ground.elements();
    let subsets = ground.k_subset_masks(a.k());
    let mut rows = Vec::with_capacity(subsets.len());
    let mut rhs = Vec::with_capacity(subsets.len());
    for &m in &subsets {
        rows.push(
            labels
                .iter()
                .map(|&i| {
                    if m & crate::cyclic::labels_mask(&[i]) != 0 {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::zero()
                    }
                })
                .collect::<Vec<Rat>>(),
        );
        rhs.push(a.get(m) - b.get(m));
    }
    Ok(!matches!(solve_exact(&rows, &rhs), Solve::Inconsistent))
}

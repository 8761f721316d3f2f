//! Strata of conjugacy classes cut out by realized relative positions.
//!
//! For a group element g, `set(g) = {relpos(F, gF) : F a flag}` depends
//! only on the class of g (relpos is invariant under the simultaneous
//! action), so over the base field it is computed class-by-class with a
//! single standard flag: `set(class) = {relpos(F₀, g′F₀) : g′ in the
//! class}`. G_w collects the classes whose set contains w; a stratum
//! takes any minimal-length w of a Weyl class C (checking the choice does
//! not matter), forms G_C = G_w, and boxes the classes of minimal
//! dimension δ_C inside it.
//!
//! Two flag families are in play:
//!
//! * **rational** — flags over F_q itself. This is the plain G_w
//!   membership operation and is reported as such.
//! * **geometric** — flags over the quadratic extension F_{q²}
//!   (see [`super::ext`]). Realizing a relative position is governed by
//!   polynomial conditions on the flag, and over a finite field a
//!   condition like λd² = μc² has nonzero solutions only when λ/μ is a
//!   square; the class built from a negated transvection on one
//!   hyperbolic plane times a transvection on the other realizes a
//!   quarter turn precisely when its two parameters lie in the same
//!   square class. Every scalar of F_q becomes a square in F_{q²}, so the
//!   quadratic obstruction vanishes there, and the extension masks
//!   reproduce the dimension-driven stratification exactly: the strata,
//!   δ values, and cover/partition theorems below all use the geometric
//!   masks, while the rational deficiency (which classes would be left
//!   uncovered by F_q flags alone) is computed and reported alongside.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::Fingerprint;

use super::ext::{enumerate_ext_flags, realized_set_ext, ExtField, FlagE};
use super::flags::{apply, relpos, FlagBases, FlagSet, StratumLabel};
use super::fp4::{char_poly, neg, unpack};
use super::group::{is_unipotent, GroupModel};
use super::B2Bridge;

pub const STRATA_DOCUMENT_VERSION: u32 = 1;

/// One conjugacy class, as serialized in the strata document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassDocRecord {
    pub id: u8,
    pub size: u64,
    pub order: u32,
    pub unipotent: bool,
    pub dimension: u32,
}

/// One stratum: a Weyl class C with its minimal elements, G_C, δ_C, and
/// the boxed classes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumRecord {
    pub label: StratumLabel,
    pub weyl_class_size: usize,
    pub min_length: usize,
    /// Geodesic words (generator indices) of the minimal-length elements.
    pub c_min_words: Vec<Vec<usize>>,
    pub weyl_fingerprint: Fingerprint,
    /// G_w was identical for every minimal-length choice of w
    /// (geometric masks).
    pub well_defined: bool,
    /// The same independence check on the rational masks.
    pub rationally_well_defined: bool,
    /// Class ids realizing the chosen w over extension flags, ascending.
    pub g_c: Vec<u8>,
    /// Class ids realizing the chosen w over F_q flags, ascending
    /// (always a subset of `g_c`).
    pub g_c_rational: Vec<u8>,
    /// Minimal class dimension inside G_C.
    pub delta: u32,
    /// Classes of G_C attaining δ_C, ascending.
    pub boxed: Vec<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllipticCheck {
    pub label: StratumLabel,
    pub min_length: usize,
    pub delta: u32,
    pub expected: u32,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnipotentStratumReport {
    pub label: StratumLabel,
    /// Unipotent classes inside the boxed set.
    pub raw_class_ids: Vec<u8>,
    pub raw_count: usize,
    /// Count after merging classes with equal dimension and equal
    /// characteristic polynomial (geometric-class estimate).
    pub merged_count: usize,
    pub single_raw: bool,
    pub single_merged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlapCounterexample {
    pub first: StratumLabel,
    pub second: StratumLabel,
    pub shared_class: u8,
}

/// The theorem analogs, as report entries (never hard failures here).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    /// (a) The boxed sets cover every class (geometric masks).
    pub cover: bool,
    pub uncovered_classes: Vec<u8>,
    /// The same cover statement evaluated on F_q flags only. Square-class
    /// obstructions can leave classes rationally unboxed, so this may be
    /// false while `cover` holds; the gap is itemized below.
    pub rational_cover: bool,
    pub rationally_uncovered_classes: Vec<u8>,
    pub rationality_caveat: String,
    /// (b) Boxed sets are pairwise equal or disjoint.
    pub pairwise_equal_or_disjoint: bool,
    pub overlap_counterexample: Option<OverlapCounterexample>,
    /// (d) δ_C = 10 − min_length for the elliptic Weyl classes.
    pub elliptic_delta_law: bool,
    pub elliptic: Vec<EllipticCheck>,
    /// (c) Boxed ∩ unipotent is empty or a single class — raw rational
    /// counts may legitimately exceed 1 (splitting caveat below).
    pub unipotent: Vec<UnipotentStratumReport>,
    pub unipotent_all_single_raw: bool,
    pub unipotent_all_single_merged: bool,
    pub splitting_caveat: String,
}

/// Serializable summary of the whole strata computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrataDocument {
    pub format_version: u32,
    pub q: u8,
    pub full_order: u64,
    pub order: u64,
    pub center_projected: bool,
    pub classes: Vec<ClassDocRecord>,
    pub strata: Vec<StratumRecord>,
    pub theorems: TheoremReport,
}

/// The strata computation with its inputs kept alive for further queries.
pub struct StrataModel {
    model: GroupModel,
    flags: FlagSet,
    bridge: B2Bridge,
    /// Per class: realized bridge-element bitmask over F_q flags.
    rational_masks: Vec<u8>,
    /// Per class: realized bitmask over F_{q²} flags (superset per class).
    geometric_masks: Vec<u8>,
    strata: Vec<StratumRecord>,
    theorems: TheoremReport,
}

impl StrataModel {
    /// Build the full strata picture at odd q ∈ {3, 5}.
    pub fn build(q: u8) -> Result<Self> {
        if q == 2 {
            return Err(Error::unsupported(
                "strata need class dimensions, which are refused at q = 2 \
                 (bad characteristic)",
            ));
        }
        let model = GroupModel::build(q)?;
        let flags = FlagSet::enumerate(q)?;
        let bridge = B2Bridge::new()?;
        let rational_masks = realized_masks_rational(&model, &flags, &bridge)?;
        let geometric_masks = realized_masks_geometric(&model, &bridge, &rational_masks)?;
        let (strata, theorems) =
            assemble(&model, &bridge, &geometric_masks, &rational_masks)?;
        Ok(StrataModel {
            model,
            flags,
            bridge,
            rational_masks,
            geometric_masks,
            strata,
            theorems,
        })
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn flags(&self) -> &FlagSet {
        &self.flags
    }

    pub fn bridge(&self) -> &B2Bridge {
        &self.bridge
    }

    /// Realized bitmask of a class over F_q flags (the plain G_w data).
    pub fn rational_mask(&self, class_id: u8) -> u8 {
        self.rational_masks[usize::from(class_id)]
    }

    /// Realized bitmask of a class over flags of the quadratic extension.
    pub fn geometric_mask(&self, class_id: u8) -> u8 {
        self.geometric_masks[usize::from(class_id)]
    }

    /// Class ids whose rational realized set contains bridge element
    /// `widx`.
    pub fn g_w(&self, widx: usize) -> Vec<u8> {
        g_w_of(&self.rational_masks, widx)
    }

    /// Class ids whose geometric realized set contains bridge element
    /// `widx` — the membership the strata are assembled from.
    pub fn g_w_geometric(&self, widx: usize) -> Vec<u8> {
        g_w_of(&self.geometric_masks, widx)
    }

    pub fn strata(&self) -> &[StratumRecord] {
        &self.strata
    }

    pub fn theorems(&self) -> &TheoremReport {
        &self.theorems
    }

    pub fn stratum(&self, label: StratumLabel) -> &StratumRecord {
        self.strata
            .iter()
            .find(|s| s.label == label)
            .expect("all five labels are always present")
    }

    /// The serializable document.
    pub fn document(&self) -> StrataDocument {
        let classes = self
            .model
            .classes()
            .iter()
            .map(|c| ClassDocRecord {
                id: c.id,
                size: c.size,
                order: c.order,
                unipotent: c.unipotent,
                dimension: c.dimension.expect("strata imply odd q"),
            })
            .collect();
        StrataDocument {
            format_version: STRATA_DOCUMENT_VERSION,
            q: self.model.q(),
            full_order: self.model.full_order(),
            order: self.model.order(),
            center_projected: self.model.center_projected(),
            classes,
            strata: self.strata.clone(),
            theorems: self.theorems.clone(),
        }
    }

    /// CSV rendering: one row per (stratum, member class).
    pub fn csv(&self) -> String {
        self.document().csv()
    }
}

impl StrataDocument {
    /// One row per (stratum, member class).
    pub fn csv(&self) -> String {
        let mut out = String::from(
            "stratum,min_length,delta,class_id,class_size,class_order,\
             class_dimension,unipotent,boxed\n",
        );
        for s in &self.strata {
            for &cid in &s.g_c {
                let c = self
                    .classes
                    .iter()
                    .find(|c| c.id == cid)
                    .expect("stratum member is a class of the document");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    s.label,
                    s.min_length,
                    s.delta,
                    c.id,
                    c.size,
                    c.order,
                    c.dimension,
                    c.unipotent,
                    s.boxed.contains(&cid),
                ));
            }
        }
        out
    }
}

/// One pass over all elements: the rational realized set of each class is
/// the set of relpos(F₀, g F₀) over the class members (the group is
/// transitive on F_q flags, so sweeping the class against one flag equals
/// sweeping the flags against one element).
fn realized_masks_rational(
    model: &GroupModel,
    flags: &FlagSet,
    bridge: &B2Bridge,
) -> Result<Vec<u8>> {
    let q = model.q();
    let f0 = flags.standard();
    let f0_bases = FlagBases::new(q, &f0);
    let mut masks = vec![0u8; model.classes().len()];
    for (i, &key) in model.elements().iter().enumerate() {
        let g = unpack(key);
        let gf = apply(q, &g, &f0);
        let p = relpos(q, &f0_bases, &FlagBases::new(q, &gf));
        let widx = bridge.lookup(&p)?;
        masks[usize::from(model.class_of_index(i))] |= 1 << widx;
    }
    Ok(masks)
}

/// Geometric realized sets: one representative per class swept against
/// every flag of the quadratic extension. The group is not transitive on
/// extension flags, so the sweep runs over flags rather than over class
/// members; the result is still class-constant because conjugation by a
/// rational element permutes the extension flags.
fn realized_masks_geometric(
    model: &GroupModel,
    bridge: &B2Bridge,
    rational_masks: &[u8],
) -> Result<Vec<u8>> {
    let field = ExtField::new(model.q())?;
    let ext_flags: Vec<FlagE> = enumerate_ext_flags(&field)?;
    let mut masks = vec![0u8; model.classes().len()];
    for class in model.classes() {
        let rep = unpack(class.rep_key);
        let mask = realized_set_ext(&field, bridge, &ext_flags, &rep)?;
        let rational = rational_masks[usize::from(class.id)];
        if mask & rational != rational {
            return Err(Error::integrity(
                "extension realized set lost a rationally realized position",
            ));
        }
        masks[usize::from(class.id)] = mask;
    }
    Ok(masks)
}

fn g_w_of(masks: &[u8], widx: usize) -> Vec<u8> {
    (0..masks.len() as u8).filter(|&c| masks[usize::from(c)] >> widx & 1 == 1).collect()
}

fn assemble(
    model: &GroupModel,
    bridge: &B2Bridge,
    masks: &[u8],
    rational_masks: &[u8],
) -> Result<(Vec<StratumRecord>, TheoremReport)> {
    let dim_of = |cid: u8| -> u32 {
        model.classes()[usize::from(cid)].dimension.expect("strata imply odd q")
    };

    let mut strata = Vec::with_capacity(5);
    for label in StratumLabel::all() {
        let class_members = bridge.class_members(label);
        let minimal = bridge.min_length_members(label);
        let g_ws: Vec<Vec<u8>> = minimal.iter().map(|&w| g_w_of(masks, w)).collect();
        let well_defined = g_ws.windows(2).all(|p| p[0] == p[1]);
        let rational_g_ws: Vec<Vec<u8>> =
            minimal.iter().map(|&w| g_w_of(rational_masks, w)).collect();
        let rationally_well_defined = rational_g_ws.windows(2).all(|p| p[0] == p[1]);
        let g_c = g_ws.into_iter().next().expect("every class has minimal elements");
        let g_c_rational =
            rational_g_ws.into_iter().next().expect("every class has minimal elements");
        if g_c.is_empty() {
            return Err(Error::integrity(format!("stratum {label} realized by no class")));
        }
        let delta = g_c.iter().map(|&c| dim_of(c)).min().expect("nonempty");
        let boxed: Vec<u8> = g_c.iter().copied().filter(|&c| dim_of(c) == delta).collect();
        let first_min = minimal[0];
        let weyl_fingerprint =
            bridge.weyl().fingerprint(&bridge.elements()[first_min].weyl);
        strata.push(StratumRecord {
            label,
            weyl_class_size: class_members.len(),
            min_length: bridge.min_length(label),
            c_min_words: minimal
                .iter()
                .map(|&w| bridge.elements()[w].word.clone())
                .collect(),
            weyl_fingerprint,
            well_defined,
            rationally_well_defined,
            g_c,
            g_c_rational,
            delta,
            boxed,
        });
    }

    // (a) cover and (b) equal-or-disjoint over the boxed sets.
    let all_ids: BTreeSet<u8> = (0..model.classes().len() as u8).collect();
    let covered: BTreeSet<u8> =
        strata.iter().flat_map(|s| s.boxed.iter().copied()).collect();
    let uncovered_classes: Vec<u8> = all_ids.difference(&covered).copied().collect();
    let cover = uncovered_classes.is_empty();

    // The rational version of (a): rebuild the boxed sets from the
    // F_q-only masks and record which classes fall through.
    let rationally_covered: BTreeSet<u8> = strata
        .iter()
        .filter(|s| !s.g_c_rational.is_empty())
        .flat_map(|s| {
            let delta = s
                .g_c_rational
                .iter()
                .map(|&c| dim_of(c))
                .min()
                .expect("nonempty by filter");
            s.g_c_rational.iter().copied().filter(move |&c| dim_of(c) == delta)
        })
        .collect();
    let rationally_uncovered_classes: Vec<u8> =
        all_ids.difference(&rationally_covered).copied().collect();
    let rational_cover = rationally_uncovered_classes.is_empty();

    let mut pairwise_equal_or_disjoint = true;
    let mut overlap_counterexample = None;
    for i in 0..strata.len() {
        for j in (i + 1)..strata.len() {
            let a: BTreeSet<u8> = strata[i].boxed.iter().copied().collect();
            let b: BTreeSet<u8> = strata[j].boxed.iter().copied().collect();
            if a == b || a.is_disjoint(&b) {
                continue;
            }
            pairwise_equal_or_disjoint = false;
            if overlap_counterexample.is_none() {
                overlap_counterexample = Some(OverlapCounterexample {
                    first: strata[i].label,
                    second: strata[j].label,
                    shared_class: *a.intersection(&b).next().expect("nonempty overlap"),
                });
            }
        }
    }

    // (d) δ_C = 10 − l(w) for the elliptic Weyl classes.
    let mut elliptic = Vec::new();
    for s in &strata {
        if !matches!(s.label, StratumLabel::QuarterTurn | StratumLabel::HalfTurn) {
            continue;
        }
        let expected = 10 - s.min_length as u32;
        elliptic.push(EllipticCheck {
            label: s.label,
            min_length: s.min_length,
            delta: s.delta,
            expected,
            matches: s.delta == expected,
        });
    }
    let elliptic_delta_law = elliptic.iter().all(|e| e.matches);

    // (c) unipotent intersections, raw and merged.
    let q = model.q();
    let mut unipotent = Vec::new();
    for s in &strata {
        let raw_class_ids: Vec<u8> = s
            .boxed
            .iter()
            .copied()
            .filter(|&c| model.classes()[usize::from(c)].unipotent)
            .collect();
        // Merge classes sharing dimension and characteristic polynomial of
        // the unipotent coset lift.
        let mut merged: BTreeSet<(u32, [u8; 5])> = BTreeSet::new();
        for &cid in &raw_class_ids {
            let rep = unpack(model.classes()[usize::from(cid)].rep_key);
            let lift = if is_unipotent(q, &rep) { rep } else { neg(q, &rep) };
            if !is_unipotent(q, &lift) {
                return Err(Error::integrity("unipotent class without unipotent lift"));
            }
            merged.insert((dim_of(cid), char_poly(q, &lift)));
        }
        unipotent.push(UnipotentStratumReport {
            label: s.label,
            raw_count: raw_class_ids.len(),
            merged_count: merged.len(),
            single_raw: raw_class_ids.len() <= 1,
            single_merged: merged.len() <= 1,
            raw_class_ids,
        });
    }
    let unipotent_all_single_raw = unipotent.iter().all(|u| u.single_raw);
    let unipotent_all_single_merged = unipotent.iter().all(|u| u.single_merged);

    let theorems = TheoremReport {
        cover,
        uncovered_classes,
        rational_cover,
        rationally_uncovered_classes,
        rationality_caveat: "realized positions are computed over flags of the \
                             quadratic extension, where every base-field scalar \
                             is a square; with base-field flags alone, \
                             square-class obstructions (conditions of the form \
                             λd² = μc² with λ/μ a non-square) can make a class \
                             miss a position it realizes geometrically, leaving \
                             the classes listed here outside every boxed set"
            .to_string(),
        pairwise_equal_or_disjoint,
        overlap_counterexample,
        elliptic_delta_law,
        elliptic,
        unipotent,
        unipotent_all_single_raw,
        unipotent_all_single_merged,
        splitting_caveat: "a geometric unipotent class may split into several \
                           rational classes over a finite field, so raw counts \
                           above 1 do not contradict the single-class statement; \
                           the merged count groups classes of equal dimension and \
                           characteristic polynomial"
            .to_string(),
    };
    Ok((strata, theorems))
}

/// A dimension-set inconsistency between matched classes of two fields.
#[derive(Debug, Clone, Serialize)]
pub struct CrossFieldIssue {
    pub order: u32,
    pub lift_order: u32,
    pub shapes: Vec<Vec<(u8, u8)>>,
    pub unipotent: bool,
    pub dims_low: Vec<u32>,
    pub dims_high: Vec<u32>,
}

/// A log-ratio size-growth outlier (diagnostic only).
#[derive(Debug, Clone, Serialize)]
pub struct SizeGrowthFlag {
    pub order: u32,
    pub unipotent: bool,
    pub dimension: u32,
    pub size_low: u64,
    pub size_high: u64,
    pub estimate: f64,
}

/// Cross-field comparison of class dimensions for classes matched by
/// (order, characteristic-polynomial factor shapes, unipotent flag).
#[derive(Debug, Clone, Serialize)]
pub struct CrossFieldReport {
    pub q_low: u8,
    pub q_high: u8,
    pub matched_keys: usize,
    /// Every matched key has the same set of dimensions on both sides.
    pub consistent: bool,
    pub inconsistencies: Vec<CrossFieldIssue>,
    /// |log-ratio size estimate − dimension| > tolerance; informational.
    pub size_growth_flags: Vec<SizeGrowthFlag>,
    pub tolerance: f64,
}

/// Tolerance for the log-ratio diagnostic: class sizes are ~ c·q^dim with
/// lower-order terms, so the estimate can drift by O(1/log q) around the
/// true exponent.
pub const SIZE_GROWTH_TOLERANCE: f64 = 1.25;

pub fn cross_field_dimension_report(a: &GroupModel, b: &GroupModel) -> Result<CrossFieldReport> {
    if a.q() == 2 || b.q() == 2 || a.q() == b.q() {
        return Err(Error::argument(
            "cross-field comparison needs two distinct odd primes",
        ));
    }
    let (low, high) = if a.q() < b.q() { (a, b) } else { (b, a) };
    type Key = (u32, u32, Vec<Vec<(u8, u8)>>, bool);
    let group = |m: &GroupModel| -> BTreeMap<Key, Vec<(u32, u64)>> {
        let mut map: BTreeMap<Key, Vec<(u32, u64)>> = BTreeMap::new();
        for c in m.classes() {
            let key = (
                c.signature.order,
                c.signature.lift_order,
                c.signature.shapes.clone(),
                c.signature.unipotent,
            );
            map.entry(key)
                .or_default()
                .push((c.dimension.expect("odd q"), c.size));
        }
        map
    };
    let lo_map = group(low);
    let hi_map = group(high);

    let mut matched_keys = 0;
    let mut inconsistencies = Vec::new();
    let mut size_growth_flags = Vec::new();
    let ratio = f64::from(high.q()).ln() - f64::from(low.q()).ln();
    for (key, lo_classes) in &lo_map {
        let Some(hi_classes) = hi_map.get(key) else {
            continue;
        };
        matched_keys += 1;
        let mut dims_low: Vec<u32> = lo_classes.iter().map(|&(d, _)| d).collect();
        let mut dims_high: Vec<u32> = hi_classes.iter().map(|&(d, _)| d).collect();
        dims_low.sort_unstable();
        dims_low.dedup();
        dims_high.sort_unstable();
        dims_high.dedup();
        if dims_low != dims_high {
            inconsistencies.push(CrossFieldIssue {
                order: key.0,
                lift_order: key.1,
                shapes: key.2.clone(),
                unipotent: key.3,
                dims_low,
                dims_high,
            });
            continue;
        }
        // Size-growth diagnostic when the key pins a single dimension:
        // the union of matched classes should grow like q^dim.
        if let [d] = dims_low[..] {
            let size_low: u64 = lo_classes.iter().map(|&(_, s)| s).sum();
            let size_high: u64 = hi_classes.iter().map(|&(_, s)| s).sum();
            let estimate = ((size_high as f64).ln() - (size_low as f64).ln()) / ratio;
            if (estimate - f64::from(d)).abs() > SIZE_GROWTH_TOLERANCE {
                size_growth_flags.push(SizeGrowthFlag {
                    order: key.0,
                    unipotent: key.3,
                    dimension: d,
                    size_low,
                    size_high,
                    estimate,
                });
            }
        }
    }
    Ok(CrossFieldReport {
        q_low: low.q(),
        q_high: high.q(),
        matched_keys,
        consistent: inconsistencies.is_empty(),
        inconsistencies,
        size_growth_flags,
        tolerance: SIZE_GROWTH_TOLERANCE,
    })
}

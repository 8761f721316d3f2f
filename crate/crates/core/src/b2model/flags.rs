//! Isotropic flags (line ⊂ plane ⊂ line-perp) for the 4-dimensional
//! symplectic space over F_q, and Weyl-group-valued relative position.
//!
//! Relative position of two complete flags is computed from the 3×3 table
//! of intersection dimensions: its second difference is a permutation
//! matrix, and for symplectic flags the permutation always lands in the
//! 8-element subgroup {w ∈ S4 : w(5−i) = 5−w(i)}, a copy of the rank-2
//! hyperoctahedral Weyl group. `B2Bridge` translates such permutations to
//! Weyl elements with lengths and class labels.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cartan::LieType;
use crate::error::{Error, Result};
use crate::weyl::{self, Perm, WeylGroup};

use super::fp4::{j_matrix, mat_vec, scalar_inv, M4, V4};

/// A permutation of {0,1,2,3} as an image array: `p[x]` is the image of x.
pub type Perm4 = [u8; 4];

/// One isotropic flag: a line inside a plane inside the line's perp.
/// Both members are stored in canonical form (line scaled to leading 1,
/// plane as the reduced row-echelon basis), so equal flags compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flag {
    pub line: V4,
    pub plane: [V4; 2],
}

impl Flag {
    /// Canonical flag spanned by `line` and a second vector: the plane is
    /// span(line, other). Validates independence and total isotropy.
    pub fn from_span(q: u8, line: &V4, other: &V4) -> Result<Self> {
        if line == &[0, 0, 0, 0] || other == &[0, 0, 0, 0] {
            return Err(Error::argument("flag spanning vectors must be nonzero"));
        }
        let j = j_matrix(q);
        let jo = mat_vec(q, &j, other);
        let s: u32 = (0..4).map(|k| u32::from(line[k]) * u32::from(jo[k])).sum();
        if s % u32::from(q) != 0 {
            return Err(Error::argument("plane is not isotropic: σ(line, other) ≠ 0"));
        }
        let nline = normalize_line(q, line);
        if normalize_line(q, other) == nline {
            return Err(Error::argument("spanning vectors are collinear"));
        }
        Ok(Flag { line: nline, plane: rref2(q, line, other) })
    }

    /// Packed key: 12 entries, 4 bits each, earlier entries in higher bits.
    pub fn key(&self) -> u64 {
        let mut k = 0u64;
        for &e in self.line.iter().chain(self.plane[0].iter()).chain(self.plane[1].iter()) {
            k = (k << 4) | u64::from(e);
        }
        k
    }
}

/// Scale a nonzero vector so its first nonzero entry is 1.
pub fn normalize_line(q: u8, v: &V4) -> V4 {
    let lead = v.iter().position(|&e| e != 0).expect("line vector must be nonzero");
    let inv = scalar_inv(q, v[lead]);
    let mut out = [0u8; 4];
    for (o, &e) in out.iter_mut().zip(v.iter()) {
        *o = (e * inv) % q;
    }
    out
}

/// Reduced row-echelon basis of the span of two independent vectors.
fn rref2(q: u8, a: &V4, b: &V4) -> [V4; 2] {
    let mut rows = [[0u32; 4]; 2];
    for c in 0..4 {
        rows[0][c] = u32::from(a[c]);
        rows[1][c] = u32::from(b[c]);
    }
    let qq = u32::from(q);
    let mut pivot_row = 0;
    for col in 0..4 {
        if pivot_row == 2 {
            break;
        }
        let Some(r) = (pivot_row..2).find(|&r| rows[r][col] % qq != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = u32::from(scalar_inv(q, (rows[pivot_row][col] % qq) as u8));
        for c in 0..4 {
            rows[pivot_row][c] = rows[pivot_row][c] % qq * inv % qq;
        }
        for r2 in 0..2 {
            if r2 != pivot_row && rows[r2][col] % qq != 0 {
                let f = rows[r2][col] % qq;
                for c in 0..4 {
                    rows[r2][c] = (rows[r2][c] + (qq - f) * rows[pivot_row][c]) % qq;
                }
            }
        }
        pivot_row += 1;
    }
    assert_eq!(pivot_row, 2, "plane spanning vectors must be independent");
    let mut out = [[0u8; 4]; 2];
    for r in 0..2 {
        for c in 0..4 {
            out[r][c] = rows[r][c] as u8;
        }
    }
    out
}

/// Rank of a small row list over F_q (destructive elimination on a copy).
fn rank_rows(q: u8, rows: &[[u8; 4]]) -> usize {
    let qq = u32::from(q);
    let mut m: Vec<[u32; 4]> = rows
        .iter()
        .map(|r| [u32::from(r[0]), u32::from(r[1]), u32::from(r[2]), u32::from(r[3])])
        .collect();
    let mut rank = 0;
    for col in 0..4 {
        let Some(r) = (rank..m.len()).find(|&r| m[r][col] % qq != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = u32::from(scalar_inv(q, (m[rank][col] % qq) as u8));
        for c in 0..4 {
            m[rank][c] = m[rank][c] % qq * inv % qq;
        }
        for r2 in 0..m.len() {
            if r2 != rank && m[r2][col] % qq != 0 {
                let f = m[r2][col] % qq;
                for c in 0..4 {
                    m[r2][c] = (m[r2][c] + (qq - f) * m[rank][c]) % qq;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The symplectic-perp of a line: basis of {x : σ(x, v) = 0}, which always
/// contains the line itself (the form is alternating).
fn line_perp(q: u8, v: &V4) -> [V4; 3] {
    let j = j_matrix(q);
    // Functional r(x) = Σ r_k x_k with r = Jv.
    let r = mat_vec(q, &j, v);
    let p = r.iter().position(|&e| e != 0).expect("J v is nonzero for nonzero v");
    let rp_inv = scalar_inv(q, r[p]);
    let mut basis = [[0u8; 4]; 3];
    let mut n = 0;
    for m in 0..4 {
        if m == p {
            continue;
        }
        // e_m − (r_m / r_p) e_p lies in the kernel.
        basis[n][m] = 1;
        basis[n][p] = (q - (r[m] * rp_inv) % q) % q;
        n += 1;
    }
    basis
}

/// Step bases of a complete flag L ⊂ P ⊂ L^⊥ (1, 2, and 3 rows).
pub struct FlagBases {
    line: [V4; 1],
    plane: [V4; 2],
    perp: [V4; 3],
}

impl FlagBases {
    pub fn new(q: u8, f: &Flag) -> Self {
        FlagBases { line: [f.line], plane: f.plane, perp: line_perp(q, &f.line) }
    }

    fn step(&self, i: usize) -> &[V4] {
        match i {
            1 => &self.line,
            2 => &self.plane,
            3 => &self.perp,
            _ => unreachable!("flag steps are 1..=3"),
        }
    }
}

/// All isotropic flags over F_q, sorted by key for binary-search lookup.
pub struct FlagSet {
    q: u8,
    flags: Vec<Flag>,
    keys: Vec<u64>,
}

impl FlagSet {
    pub fn enumerate(q: u8) -> Result<Self> {
        if !matches!(q, 2 | 3 | 5) {
            return Err(Error::argument(format!("supported primes are 2, 3, 5; got {q}")));
        }
        // Projective points: canonical reps of the (q⁴−1)/(q−1) lines.
        let mut lines: Vec<V4> = Vec::new();
        let mut seen_lines = std::collections::HashSet::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let v = [a, b, c, d];
                        if v == [0, 0, 0, 0] {
                            continue;
                        }
                        let n = normalize_line(q, &v);
                        if seen_lines.insert(n) {
                            lines.push(n);
                        }
                    }
                }
            }
        }
        let expected_lines = (usize::pow(q.into(), 4) - 1) / (usize::from(q) - 1);
        if lines.len() != expected_lines {
            return Err(Error::integrity("projective line count mismatch"));
        }

        let mut flags: Vec<Flag> = Vec::new();
        for v in &lines {
            let perp = line_perp(q, v);
            // Planes between L and L^⊥ = projective points of L^⊥/L; walk
            // all points of L^⊥ and keep one spanning vector per plane.
            let mut planes: std::collections::HashSet<[V4; 2]> =
                std::collections::HashSet::new();
            for c0 in 0..q {
                for c1 in 0..q {
                    for c2 in 0..q {
                        if (c0, c1, c2) == (0, 0, 0) {
                            continue;
                        }
                        let mut w = [0u8; 4];
                        for k in 0..4 {
                            w[k] = (c0 * perp[0][k] + c1 * perp[1][k] + c2 * perp[2][k]) % q;
                        }
                        if normalize_line(q, &w) == *v {
                            continue; // w lies on the line itself
                        }
                        planes.insert(rref2(q, v, &w));
                    }
                }
            }
            if planes.len() != usize::from(q) + 1 {
                return Err(Error::integrity("plane count per line mismatch"));
            }
            for plane in planes {
                flags.push(Flag { line: *v, plane });
            }
        }
        flags.sort_by_key(Flag::key);
        let keys: Vec<u64> = flags.iter().map(Flag::key).collect();
        Ok(FlagSet { q, flags, keys })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn index_of(&self, f: &Flag) -> Result<usize> {
        self.keys
            .binary_search(&f.key())
            .map_err(|_| Error::argument("flag is not in the enumerated set"))
    }

    /// The standard flag ⟨e1⟩ ⊂ ⟨e1, e2⟩.
    pub fn standard(&self) -> Flag {
        Flag { line: [1, 0, 0, 0], plane: [[1, 0, 0, 0], [0, 1, 0, 0]] }
    }
}

/// Image of a flag under a group element (columns act on the left).
pub fn apply(q: u8, g: &M4, f: &Flag) -> Flag {
    let line = normalize_line(q, &mat_vec(q, g, &f.line));
    let plane = rref2(q, &mat_vec(q, g, &f.plane[0]), &mat_vec(q, g, &f.plane[1]));
    Flag { line, plane }
}

/// Relative position of two complete flags as a permutation of {0,1,2,3}:
/// entry a_{ij} of the second difference of d_{ij} = dim(E_i ∩ F_j) is 1
/// exactly once per row and column; the output maps j−1 ↦ i−1.
pub fn relpos(q: u8, e: &FlagBases, f: &FlagBases) -> Perm4 {
    let mut d = [[0usize; 5]; 5];
    for i in 1..=4 {
        d[i][4] = i;
        d[4][i] = i;
    }
    let mut stacked: Vec<[u8; 4]> = Vec::with_capacity(6);
    for i in 1..=3 {
        for j in 1..=3 {
            stacked.clear();
            stacked.extend_from_slice(e.step(i));
            stacked.extend_from_slice(f.step(j));
            let r = rank_rows(q, &stacked);
            d[i][j] = i + j - r;
        }
    }
    let mut perm = [0u8; 4];
    let mut row_used = [false; 4];
    for j in 1..=4 {
        let mut hit = None;
        for i in 1..=4 {
            let a = d[i][j] + d[i - 1][j - 1];
            let b = d[i - 1][j] + d[i][j - 1];
            debug_assert!(a == b || a == b + 1, "second difference must be 0 or 1");
            if a == b + 1 {
                assert!(hit.is_none(), "two units in one column");
                assert!(!row_used[i - 1], "two units in one row");
                row_used[i - 1] = true;
                hit = Some(i - 1);
            }
        }
        perm[j - 1] = hit.expect("each column holds exactly one unit") as u8;
    }
    perm
}

/// Convenience wrapper building both flags' step bases.
pub fn relpos_flags(q: u8, e: &Flag, f: &Flag) -> Perm4 {
    relpos(q, &FlagBases::new(q, e), &FlagBases::new(q, f))
}

/// Conjugacy class labels of the rank-2 hyperoctahedral Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumLabel {
    Identity,
    ShortReflection,
    LongReflection,
    QuarterTurn,
    HalfTurn,
}

impl StratumLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StratumLabel::Identity => "id",
            StratumLabel::ShortReflection => "short_refl",
            StratumLabel::LongReflection => "long_refl",
            StratumLabel::QuarterTurn => "quarter_turn",
            StratumLabel::HalfTurn => "half_turn",
        }
    }

    pub fn all() -> [StratumLabel; 5] {
        [
            StratumLabel::Identity,
            StratumLabel::ShortReflection,
            StratumLabel::LongReflection,
            StratumLabel::QuarterTurn,
            StratumLabel::HalfTurn,
        ]
    }
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One Weyl element together with its image permutation and invariants.
pub struct BridgeElement {
    pub weyl: Perm,
    pub perm: Perm4,
    pub word: Vec<usize>,
    pub length: usize,
    pub label: StratumLabel,
}

/// The dictionary between the rank-2 hyperoctahedral Weyl group and the
/// symmetric subgroup {w ∈ S4 : w(3−x) = 3−w(x)} (0-indexed) it embeds
/// into via relative position of symplectic flags: the short generator is
/// the plane-change move (2 3), the long generator the line-change move
/// (1 2)(3 4).
pub struct B2Bridge {
    weyl: WeylGroup,
    elements: Vec<BridgeElement>,
    by_perm: HashMap<Perm4, usize>,
}

/// Image permutations of the two simple reflections (0-indexed arrays).
const SHORT_IMAGE: Perm4 = [0, 2, 1, 3]; // (2 3): changes the plane step
const LONG_IMAGE: Perm4 = [1, 0, 3, 2]; // (1 2)(3 4): changes the line step

fn compose_perm4(a: &Perm4, b: &Perm4) -> Perm4 {
    // Apply b first, then a — matching `weyl::compose`.
    let mut out = [0u8; 4];
    for x in 0..4 {
        out[x] = a[b[x] as usize];
    }
    out
}

impl B2Bridge {
    pub fn new() -> Result<Self> {
        let weyl = WeylGroup::for_type(LieType::B2);
        let images = [SHORT_IMAGE, LONG_IMAGE];

        // Close the generator dictionary under right multiplication; a
        // revisit with a different permutation would mean the dictionary
        // does not extend to a homomorphism.
        let mut table: HashMap<Perm, (Perm4, Vec<usize>)> = HashMap::new();
        let id = weyl.identity();
        table.insert(id.clone(), ([0, 1, 2, 3], Vec::new()));
        // Breadth-first so each element's recorded word is geodesic.
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let (pw, word) = table[&w].clone();
            for i in 0..2 {
                let w2 = weyl::compose(&w, weyl.simple_reflection(i));
                let p2 = compose_perm4(&pw, &images[i]);
                match table.get(&w2) {
                    Some((stored, _)) => {
                        if *stored != p2 {
                            return Err(Error::integrity(
                                "generator dictionary does not respect the relations",
                            ));
                        }
                    }
                    None => {
                        let mut word2 = word.clone();
                        word2.push(i);
                        table.insert(w2.clone(), (p2, word2));
                        queue.push_back(w2);
                    }
                }
            }
        }
        if table.len() != 8 {
            return Err(Error::integrity(format!(
                "rank-2 hyperoctahedral group has 8 elements, closed to {}",
                table.len()
            )));
        }

        let mut elements: Vec<BridgeElement> = Vec::with_capacity(8);
        for (w, (perm, word)) in table {
            // The image must be symmetric: w(3−x) = 3−w(x).
            for x in 0..4 {
                if perm[3 - x] != 3 - perm[x] {
                    return Err(Error::integrity("image permutation is not symmetric"));
                }
            }
            let length = weyl.length(&w);
            let label = classify(&weyl, &w)?;
            elements.push(BridgeElement { weyl: w, perm, word, length, label });
        }
        elements.sort_by_key(|e| (e.length, e.perm));
        let mut by_perm = HashMap::new();
        for (idx, e) in elements.iter().enumerate() {
            if by_perm.insert(e.perm, idx).is_some() {
                return Err(Error::integrity("dictionary is not injective"));
            }
        }
        Ok(B2Bridge { weyl, elements, by_perm })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn elements(&self) -> &[BridgeElement] {
        &self.elements
    }

    /// Index of a relative-position permutation in `elements()`.
    pub fn lookup(&self, perm: &Perm4) -> Result<usize> {
        self.by_perm.get(perm).copied().ok_or_else(|| {
            Error::integrity(format!(
                "relative position {perm:?} lies outside the symmetric subgroup"
            ))
        })
    }

    /// Indices of the elements in class `label`.
    pub fn class_members(&self, label: StratumLabel) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].label == label).collect()
    }

    /// Minimal Coxeter length within the class.
    pub fn min_length(&self, label: StratumLabel) -> usize {
        self.class_members(label)
            .into_iter()
            .map(|i| self.elements[i].length)
            .min()
            .expect("every class label is realized")
    }

    /// Elements of the class attaining the minimal length.
    pub fn min_length_members(&self, label: StratumLabel) -> Vec<usize> {
        let min = self.min_length(label);
        self.class_members(label)
            .into_iter()
            .filter(|&i| self.elements[i].length == min)
            .collect()
    }
}

/// Class label from the negated-root pattern: reflections negate one root
/// pair (short or long), the half turn negates all roots, quarter turns
/// none.
fn classify(weyl: &WeylGroup, w: &Perm) -> Result<StratumLabel> {
    let rs = weyl.roots();
    let negated: Vec<u16> = (0..rs.num_roots() as u16)
        .filter(|&r| w[r as usize] == rs.negation(r))
        .collect();
    let min_norm =
        (0..rs.num_roots() as u16).map(|r| rs.norm(r)).min().expect("roots exist");
    let order = weyl::perm_order(w);
    match (order, negated.len()) {
        (1, 0) => Ok(StratumLabel::Identity),
        (4, 0) => Ok(StratumLabel::QuarterTurn),
        (2, 8) => Ok(StratumLabel::HalfTurn),
        (2, 2) => {
            if rs.norm(negated[0]) == min_norm {
                Ok(StratumLabel::ShortReflection)
            } else {
                Ok(StratumLabel::LongReflection)
            }
        }
        other => Err(Error::integrity(format!(
            "unexpected order/negated-root pattern {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::b2model::group::GroupModel;
    use super::super::fp4::{identity4, transvection};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flag_counts_match_group_orders() {
        // |flags| = |Sp4(q)| / (q⁴ (q−1)²)
        for (q, expect) in [(2u8, 45usize), (3, 160), (5, 936)] {
            let fs = FlagSet::enumerate(q).unwrap();
            assert_eq!(fs.len(), expect, "q = {q}");
        }
    }

    #[test]
    fn flags_are_isotropic_and_nested() {
        for q in [2u8, 3] {
            let fs = FlagSet::enumerate(q).unwrap();
            let j = j_matrix(q);
            for f in fs.flags() {
                // Line inside plane: stacking does not raise the rank.
                assert_eq!(rank_rows(q, &[f.line, f.plane[0], f.plane[1]]), 2);
                // Plane totally isotropic: σ(p0, p1) = 0.
                let jp1 = mat_vec(q, &j, &f.plane[1]);
                let s: u32 = (0..4).map(|k| u32::from(f.plane[0][k]) * u32::from(jp1[k])).sum();
                assert_eq!(s % u32::from(q), 0);
                // Canonical forms.
                assert_eq!(f.line, normalize_line(q, &f.line));
                assert_eq!(f.plane, rref2(q, &f.plane[0], &f.plane[1]));
            }
        }
    }

    #[test]
    fn standard_flag_is_enumerated() {
        for q in [2u8, 3, 5] {
            let fs = FlagSet::enumerate(q).unwrap();
            assert!(fs.index_of(&fs.standard()).is_ok());
        }
    }

    #[test]
    fn apply_is_an_action_preserving_the_set() {
        let q = 3;
        let fs = FlagSet::enumerate(q).unwrap();
        let g = transvection(q, &[1, 2, 0, 1], 1);
        let h = transvection(q, &[0, 1, 1, 0], 2);
        let gh = super::super::fp4::mul(q, &g, &h);
        for f in fs.flags().iter().take(40) {
            let a = apply(q, &g, &apply(q, &h, f));
            let b = apply(q, &gh, f);
            assert_eq!(a, b);
            assert!(fs.index_of(&a).is_ok());
        }
        assert_eq!(apply(q, &identity4(), &fs.standard()), fs.standard());
    }

    #[test]
    fn standard_flag_stabilizer_has_borel_order() {
        // In the central quotient at q = 3 the stabilizer order is
        // q⁴ (q−1)² / 2 = 162.
        let q = 3;
        let m = GroupModel::build(q).unwrap();
        let fs = FlagSet::enumerate(q).unwrap();
        let f0 = fs.standard();
        let stab = m
            .elements()
            .iter()
            .filter(|&&key| apply(q, &super::super::fp4::unpack(key), &f0) == f0)
            .count();
        assert_eq!(stab, 162);
    }

    #[test]
    fn relpos_of_equal_flags_is_identity() {
        for q in [2u8, 3] {
            let fs = FlagSet::enumerate(q).unwrap();
            for f in fs.flags().iter().step_by(7) {
                assert_eq!(relpos_flags(q, f, f), [0, 1, 2, 3]);
            }
        }
    }

    #[test]
    fn relpos_generator_conventions() {
        // Hand-checked dictionary entries against the standard flag:
        // changing only the line gives the long move (1 2)(3 4);
        // changing only the plane gives the short move (2 3).
        let q = 3;
        let f0 = Flag { line: [1, 0, 0, 0], plane: [[1, 0, 0, 0], [0, 1, 0, 0]] };
        let line_changed = Flag { line: [0, 1, 0, 0], plane: [[1, 0, 0, 0], [0, 1, 0, 0]] };
        let plane_changed = Flag { line: [1, 0, 0, 0], plane: [[1, 0, 0, 0], [0, 0, 1, 0]] };
        assert_eq!(relpos_flags(q, &f0, &line_changed), LONG_IMAGE);
        assert_eq!(relpos_flags(q, &f0, &plane_changed), SHORT_IMAGE);
    }

    #[test]
    fn relpos_is_antisymmetric_exhaustively_at_q2() {
        let q = 2;
        let fs = FlagSet::enumerate(q).unwrap();
        let bases: Vec<FlagBases> =
            fs.flags().iter().map(|f| FlagBases::new(q, f)).collect();
        for e in &bases {
            for f in &bases {
                let p = relpos(q, e, f);
                let r = relpos(q, f, e);
                // r must be the inverse permutation of p.
                for x in 0..4 {
                    assert_eq!(r[p[x] as usize], x as u8);
                }
            }
        }
    }

    #[test]
    fn relpos_is_invariant_under_the_group() {
        let q = 3;
        let fs = FlagSet::enumerate(q).unwrap();
        let m = GroupModel::build(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
        let f0 = fs.standard();
        for _ in 0..100 {
            let key = m.elements()[rng.random_range(0..m.elements().len())];
            let g = super::super::fp4::unpack(key);
            let fi = fs.flags()[rng.random_range(0..fs.len())];
            let before = relpos_flags(q, &f0, &fi);
            let after = relpos_flags(q, &apply(q, &g, &f0), &apply(q, &g, &fi));
            assert_eq!(before, after);
        }
    }

    #[test]
    fn relpos_against_standard_flag_covers_the_whole_subgroup_at_q2() {
        let q = 2;
        let fs = FlagSet::enumerate(q).unwrap();
        let f0 = FlagBases::new(q, &fs.standard());
        let mut seen = std::collections::HashSet::new();
        for f in fs.flags() {
            seen.insert(relpos(q, &f0, &FlagBases::new(q, f)));
        }
        assert_eq!(seen.len(), 8);
        let bridge = B2Bridge::new().unwrap();
        for p in &seen {
            assert!(bridge.lookup(p).is_ok());
        }
    }

    #[test]
    fn bridge_structure() {
        let b = B2Bridge::new().unwrap();
        assert_eq!(b.elements().len(), 8);
        // Length distribution 1,2,2,2,1 over lengths 0..=4.
        let mut lengths: Vec<usize> = b.elements().iter().map(|e| e.length).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3, 3, 4]);
        // Class sizes.
        assert_eq!(b.class_members(StratumLabel::Identity).len(), 1);
        assert_eq!(b.class_members(StratumLabel::ShortReflection).len(), 2);
        assert_eq!(b.class_members(StratumLabel::LongReflection).len(), 2);
        assert_eq!(b.class_members(StratumLabel::QuarterTurn).len(), 2);
        assert_eq!(b.class_members(StratumLabel::HalfTurn).len(), 1);
        // Minimal lengths per class.
        assert_eq!(b.min_length(StratumLabel::Identity), 0);
        assert_eq!(b.min_length(StratumLabel::ShortReflection), 1);
        assert_eq!(b.min_length(StratumLabel::LongReflection), 1);
        assert_eq!(b.min_length(StratumLabel::QuarterTurn), 2);
        assert_eq!(b.min_length(StratumLabel::HalfTurn), 4);
        // Minimal-length member sets: both rotations are minimal, the other
        // classes have a unique minimal element.
        assert_eq!(b.min_length_members(StratumLabel::QuarterTurn).len(), 2);
        assert_eq!(b.min_length_members(StratumLabel::ShortReflection).len(), 1);
        assert_eq!(b.min_length_members(StratumLabel::LongReflection).len(), 1);
        assert_eq!(b.min_length_members(StratumLabel::HalfTurn).len(), 1);
        // The half turn is the longest element and acts as −1.
        let half = b.min_length_members(StratumLabel::HalfTurn)[0];
        let w0 = &b.elements()[half].weyl;
        let rs = b.weyl().roots();
        for r in 0..rs.num_roots() as u16 {
            assert_eq!(w0[r as usize], rs.negation(r));
        }
        // Words are reduced: their letter count equals the length.
        for e in b.elements() {
            assert_eq!(e.word.len(), e.length);
            assert_eq!(b.weyl().word(&e.word).unwrap(), e.weyl);
        }
    }

    #[test]
    fn bridge_rejects_asymmetric_permutations() {
        let b = B2Bridge::new().unwrap();
        let err = b.lookup(&[1, 2, 3, 0]).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)));
    }

    #[test]
    fn rank_rows_basics() {
        assert_eq!(rank_rows(3, &[[1, 0, 0, 0]]), 1);
        assert_eq!(rank_rows(3, &[[1, 2, 0, 1], [2, 4, 0, 2]]), 1);
        assert_eq!(
            rank_rows(3, &[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0]]),
            3
        );
        assert_eq!(rank_rows(2, &[[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]]), 2);
    }

    #[test]
    fn random_flag_pairs_have_symmetric_relpos() {
        let q = 5;
        let fs = FlagSet::enumerate(q).unwrap();
        let bridge = B2Bridge::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED ^ 1);
        for _ in 0..300 {
            let a = fs.flags()[rng.random_range(0..fs.len())];
            let b = fs.flags()[rng.random_range(0..fs.len())];
            let p = relpos_flags(q, &a, &b);
            assert!(bridge.lookup(&p).is_ok(), "relpos {p:?} escaped the subgroup");
        }
    }
}

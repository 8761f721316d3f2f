//! Flags and relative position over the quadratic extension F_{q²}.
//!
//! Group elements stay rational (entries in F_q) but act on the larger
//! flag family. This is the right home for geometric statements: a class
//! can fail to realize a relative position with F_q-rational flags for
//! pure square-class reasons (the obstructions are quadratic forms), and
//! every F_q scalar becomes a square in F_{q²}, so the quadratic
//! obstructions vanish there.
//!
//! Elements a + bθ are stored as digit pairs (a, b) with θ² a fixed
//! non-residue of F_q.

use crate::error::{Error, Result};

use super::flags::Perm4;
use super::fp4::{M4, V4};

/// One element a + bθ of F_{q²}.
pub type E2 = (u8, u8);

/// A vector over the extension field.
pub type V4E = [E2; 4];

pub const ZERO: E2 = (0, 0);
pub const ONE: E2 = (1, 0);

/// Arithmetic context for F_{q²} = F_q[θ]/(θ² − nonres).
#[derive(Debug, Clone, Copy)]
pub struct ExtField {
    q: u8,
    nonres: u8,
}

impl ExtField {
    pub fn new(q: u8) -> Result<Self> {
        // A fixed quadratic non-residue per supported prime.
        let nonres = match q {
            3 => 2,
            5 => 2,
            _ => {
                return Err(Error::argument(format!(
                    "extension flags support q ∈ {{3, 5}}; got {q}"
                )))
            }
        };
        Ok(ExtField { q, nonres })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Number of field elements, q².
    pub fn size(&self) -> usize {
        usize::from(self.q) * usize::from(self.q)
    }

    pub fn add(&self, x: E2, y: E2) -> E2 {
        ((x.0 + y.0) % self.q, (x.1 + y.1) % self.q)
    }

    pub fn sub(&self, x: E2, y: E2) -> E2 {
        ((x.0 + self.q - y.0) % self.q, (x.1 + self.q - y.1) % self.q)
    }

    pub fn neg(&self, x: E2) -> E2 {
        ((self.q - x.0) % self.q, (self.q - x.1) % self.q)
    }

    pub fn mul(&self, x: E2, y: E2) -> E2 {
        let q = u16::from(self.q);
        let (a, b) = (u16::from(x.0), u16::from(x.1));
        let (c, d) = (u16::from(y.0), u16::from(y.1));
        let re = (a * c + u16::from(self.nonres) * b % q * d) % q;
        let im = (a * d + b * c) % q;
        (re as u8, im as u8)
    }

    /// Multiplicative inverse; panics on zero (internal use only).
    pub fn inv(&self, x: E2) -> E2 {
        assert!(x != ZERO, "inverting zero");
        let q = u16::from(self.q);
        let (a, b) = (u16::from(x.0), u16::from(x.1));
        // norm = a² − nonres·b², nonzero since θ² is a non-residue.
        let norm =
            ((a * a % q) + q - u16::from(self.nonres) * b % q * b % q) % q;
        let norm_inv = u16::from(super::fp4::scalar_inv(self.q, norm as u8));
        let re = a * norm_inv % q;
        let im = (q - b % q) * norm_inv % q;
        (re as u8, im as u8)
    }

    /// All q² field elements, (a, b) in lexicographic order.
    pub fn elements(&self) -> Vec<E2> {
        let mut out = Vec::with_capacity(self.size());
        for a in 0..self.q {
            for b in 0..self.q {
                out.push((a, b));
            }
        }
        out
    }

    fn mat_vec(&self, m: &M4, v: &V4E) -> V4E {
        let mut out = [ZERO; 4];
        for r in 0..4 {
            let mut acc = ZERO;
            for c in 0..4 {
                acc = self.add(acc, self.mul((m[4 * r + c] % self.q, 0), v[c]));
            }
            out[r] = acc;
        }
        out
    }

    fn normalize_line(&self, v: &V4E) -> V4E {
        let lead = v.iter().position(|&e| e != ZERO).expect("line vector must be nonzero");
        let inv = self.inv(v[lead]);
        let mut out = [ZERO; 4];
        for (o, &e) in out.iter_mut().zip(v.iter()) {
            *o = self.mul(e, inv);
        }
        out
    }

    fn rank_rows(&self, rows: &mut Vec<V4E>) -> usize {
        let mut rank = 0;
        for col in 0..4 {
            let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != ZERO) else {
                continue;
            };
            rows.swap(rank, r);
            let inv = self.inv(rows[rank][col]);
            for c in 0..4 {
                rows[rank][c] = self.mul(rows[rank][c], inv);
            }
            for r2 in 0..rows.len() {
                if r2 != rank && rows[r2][col] != ZERO {
                    let f = rows[r2][col];
                    for c in 0..4 {
                        let t = self.mul(f, rows[rank][c]);
                        rows[r2][c] = self.sub(rows[r2][c], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn rref2(&self, a: &V4E, b: &V4E) -> [V4E; 2] {
        let mut rows = vec![*a, *b];
        let rank = self.rank_rows(&mut rows);
        assert_eq!(rank, 2, "plane spanning vectors must be independent");
        [rows[0], rows[1]]
    }

    /// σ(x, y) = xᵀ J y with the fixed alternating form. Production code
    /// never evaluates the form directly (isotropy is enforced during
    /// enumeration); the tests use it to audit enumerated flags.
    #[cfg(test)]
    fn form(&self, x: &V4E, y: &V4E) -> E2 {
        // J: σ(x, y) = x1·y4 + x2·y3 − x3·y2 − x4·y1.
        let mut acc = self.mul(x[0], y[3]);
        acc = self.add(acc, self.mul(x[1], y[2]));
        acc = self.sub(acc, self.mul(x[2], y[1]));
        acc = self.sub(acc, self.mul(x[3], y[0]));
        acc
    }

    /// Basis of {x : σ(x, v) = 0} for a nonzero v.
    fn line_perp(&self, v: &V4E) -> [V4E; 3] {
        // Functional coefficients r with σ(x, v) = Σ r_k x_k:
        // r = (v4, v3, −v2, −v1).
        let r: V4E = [v[3], v[2], self.neg(v[1]), self.neg(v[0])];
        let p = r.iter().position(|&e| e != ZERO).expect("nonzero functional");
        let rp_inv = self.inv(r[p]);
        let mut basis = [[ZERO; 4]; 3];
        let mut n = 0;
        for m in 0..4 {
            if m == p {
                continue;
            }
            basis[n][m] = ONE;
            basis[n][p] = self.neg(self.mul(r[m], rp_inv));
            n += 1;
        }
        basis
    }
}

/// An isotropic flag over F_{q²}, canonical like the base-field version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlagE {
    pub line: V4E,
    pub plane: [V4E; 2],
}

impl FlagE {
    /// Embed a base-field flag (second digits all zero).
    pub fn embed(f: &super::flags::Flag) -> FlagE {
        let lift = |v: &V4| -> V4E { [(v[0], 0), (v[1], 0), (v[2], 0), (v[3], 0)] };
        FlagE { line: lift(&f.line), plane: [lift(&f.plane[0]), lift(&f.plane[1])] }
    }

    /// Packed key: 12 extension entries, 8 bits each.
    pub fn key(&self) -> u128 {
        let mut k = 0u128;
        for e in self.line.iter().chain(self.plane[0].iter()).chain(self.plane[1].iter()) {
            k = (k << 8) | u128::from(e.0) << 4 | u128::from(e.1);
        }
        k
    }
}

/// Step bases of the completed flag over the extension.
pub struct FlagBasesE {
    line: [V4E; 1],
    plane: [V4E; 2],
    perp: [V4E; 3],
}

impl FlagBasesE {
    pub fn new(field: &ExtField, f: &FlagE) -> Self {
        FlagBasesE { line: [f.line], plane: f.plane, perp: field.line_perp(&f.line) }
    }

    fn step(&self, i: usize) -> &[V4E] {
        match i {
            1 => &self.line,
            2 => &self.plane,
            3 => &self.perp,
            _ => unreachable!("flag steps are 1..=3"),
        }
    }
}

/// All isotropic flags over F_{q²}: (q²+1)(q⁴+q²+q⁶+1)… — concretely,
/// projective lines times (q²+1) planes each.
pub fn enumerate_ext_flags(field: &ExtField) -> Result<Vec<FlagE>> {
    let s = field.size();
    let els = field.elements();
    // Projective points of the 4-space: canonical reps with leading ONE.
    let mut lines: Vec<V4E> = Vec::with_capacity((s * s * s * s - 1) / (s - 1));
    for lead in 0..4 {
        // First nonzero coordinate at `lead`, scaled to 1; free digits after.
        let free = 3 - lead;
        let mut combo = vec![0usize; free];
        loop {
            let mut v = [ZERO; 4];
            v[lead] = ONE;
            for (k, &c) in combo.iter().enumerate() {
                v[lead + 1 + k] = els[c];
            }
            lines.push(v);
            // Odometer increment.
            let mut pos = free;
            loop {
                if pos == 0 {
                    break;
                }
                combo[pos - 1] += 1;
                if combo[pos - 1] < s {
                    break;
                }
                combo[pos - 1] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    let expected_lines = (s * s * s * s - 1) / (s - 1);
    if lines.len() != expected_lines {
        return Err(Error::integrity("extension projective line count mismatch"));
    }

    let mut flags = Vec::with_capacity(expected_lines * (s + 1));
    for v in &lines {
        let perp = field.line_perp(v);
        // Two perp basis vectors completing v to a basis of the perp.
        let mut pair = None;
        'outer: for i in 0..3 {
            for j in (i + 1)..3 {
                let mut rows = vec![*v, perp[i], perp[j]];
                if field.rank_rows(&mut rows) == 3 {
                    pair = Some((perp[i], perp[j]));
                    break 'outer;
                }
            }
        }
        let (b1, b2) = pair.ok_or_else(|| Error::integrity("degenerate perp basis"))?;
        // Planes through the line: projective points (α : β) of the
        // 2-dimensional quotient perp/line.
        let mut push_plane = |w: &V4E| {
            flags.push(FlagE { line: *v, plane: field.rref2(v, w) });
        };
        push_plane(&b2);
        for &t in &els {
            let mut w = b1;
            for k in 0..4 {
                w[k] = field.add(w[k], field.mul(t, b2[k]));
            }
            push_plane(&w);
        }
    }
    if flags.len() != expected_lines * (s + 1) {
        return Err(Error::integrity("extension flag count mismatch"));
    }
    Ok(flags)
}

/// Image of an extension flag under a rational group element.
pub fn apply_ext(field: &ExtField, g: &M4, f: &FlagE) -> FlagE {
    let line = field.normalize_line(&field.mat_vec(g, &f.line));
    let p0 = field.mat_vec(g, &f.plane[0]);
    let p1 = field.mat_vec(g, &f.plane[1]);
    FlagE { line, plane: field.rref2(&p0, &p1) }
}

/// Relative position over the extension — same second-difference recovery
/// as the base-field version.
pub fn relpos_ext(field: &ExtField, e: &FlagBasesE, f: &FlagBasesE) -> Perm4 {
    let mut d = [[0usize; 5]; 5];
    for i in 1..=4 {
        d[i][4] = i;
        d[4][i] = i;
    }
    let mut stacked: Vec<V4E> = Vec::with_capacity(6);
    for i in 1..=3 {
        for j in 1..=3 {
            stacked.clear();
            stacked.extend_from_slice(e.step(i));
            stacked.extend_from_slice(f.step(j));
            let r = field.rank_rows(&mut stacked);
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

/// Realized relative positions of one rational element across all
/// extension flags, as a bitmask over the bridge's element indices.
/// The set is constant on conjugacy classes (conjugation permutes the
/// extension flags), so calling this on one representative per class
/// gives the class value.
pub fn realized_set_ext(
    field: &ExtField,
    bridge: &super::B2Bridge,
    flags: &[FlagE],
    g: &M4,
) -> Result<u8> {
    let mut mask = 0u8;
    for f in flags {
        let fb = FlagBasesE::new(field, f);
        let gf = apply_ext(field, g, f);
        let p = relpos_ext(field, &fb, &FlagBasesE::new(field, &gf));
        mask |= 1 << bridge.lookup(&p)?;
        if mask == 0xFF {
            break; // realized everything already
        }
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::b2model::flags::{relpos_flags, FlagSet};
    use crate::b2model::fp4::transvection;
    use crate::b2model::B2Bridge;

    #[test]
    fn field_arithmetic() {
        let f = ExtField::new(3).unwrap();
        // θ² = 2 over F3.
        assert_eq!(f.mul((0, 1), (0, 1)), (2, 0));
        for a in 0..3u8 {
            for b in 0..3u8 {
                if (a, b) == ZERO {
                    continue;
                }
                let x = (a, b);
                assert_eq!(f.mul(x, f.inv(x)), ONE, "inverse of {x:?}");
            }
        }
        // Every base-field scalar is a square in the extension.
        let f5 = ExtField::new(5).unwrap();
        for target in 1..5u8 {
            let found = f5
                .elements()
                .into_iter()
                .any(|x| f5.mul(x, x) == (target, 0));
            assert!(found, "{target} has no square root in the extension of F5");
        }
        assert!(ExtField::new(2).is_err());
    }

    #[test]
    fn extension_flag_count_q3() {
        let f = ExtField::new(3).unwrap();
        let flags = enumerate_ext_flags(&f).unwrap();
        // (s³+s²+s+1)(s+1) with s = 9.
        assert_eq!(flags.len(), 820 * 10);
        // Planes are totally isotropic and contain the line.
        for fl in flags.iter().step_by(97) {
            assert_eq!(f.form(&fl.plane[0], &fl.plane[1]), ZERO);
            let mut rows = vec![fl.line, fl.plane[0], fl.plane[1]];
            assert_eq!(f.rank_rows(&mut rows), 2);
        }
    }

    #[test]
    fn embedded_flags_agree_on_relpos() {
        // Base-field relative positions agree with the extension ones on
        // embedded flags.
        let q = 3u8;
        let field = ExtField::new(q).unwrap();
        let fs = FlagSet::enumerate(q).unwrap();
        let g = transvection(q, &[1, 2, 0, 1], 1);
        for f in fs.flags().iter().step_by(11) {
            let base = relpos_flags(q, f, &super::super::flags::apply(q, &g, f));
            let fe = FlagE::embed(f);
            let fb = FlagBasesE::new(&field, &fe);
            let gfe = apply_ext(&field, &g, &fe);
            let ext = relpos_ext(&field, &fb, &FlagBasesE::new(&field, &gfe));
            assert_eq!(base, ext);
        }
    }

    #[test]
    fn rational_flags_embed_into_extension_set() {
        let q = 3u8;
        let field = ExtField::new(q).unwrap();
        let ext_keys: std::collections::HashSet<u128> = enumerate_ext_flags(&field)
            .unwrap()
            .iter()
            .map(FlagE::key)
            .collect();
        let fs = FlagSet::enumerate(q).unwrap();
        for f in fs.flags() {
            assert!(ext_keys.contains(&FlagE::embed(f).key()));
        }
    }

    #[test]
    fn extension_set_contains_rational_set() {
        let q = 3u8;
        let field = ExtField::new(q).unwrap();
        let flags = enumerate_ext_flags(&field).unwrap();
        let bridge = B2Bridge::new().unwrap();
        let fs = FlagSet::enumerate(q).unwrap();
        let g = transvection(q, &[0, 1, 1, 0], 2);
        let mut rational = 0u8;
        for f in fs.flags() {
            let p = relpos_flags(q, f, &super::super::flags::apply(q, &g, f));
            rational |= 1 << bridge.lookup(&p).unwrap();
        }
        let ext = realized_set_ext(&field, &bridge, &flags, &g).unwrap();
        assert_eq!(ext & rational, rational);
    }
}

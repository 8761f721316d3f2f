//! The symplectic group on 4 letters over a small prime field, its central
//! quotient, conjugacy classes, and exact class dimensions.
//!
//! Elements are enumerated by breadth-first closure from symplectic
//! transvections and every enumerated matrix is checked against the form.
//! For odd q the model works in the quotient by {±I} (each coset keyed by
//! the lexicographically smaller member); for q = 2 the center is trivial
//! and the quotient is the group itself.
//!
//! The dimension of a conjugacy class is `10 − dim ker(Ad(g) − id)`, with
//! `Ad(g)X = gXg⁻¹` acting on the 10-dimensional algebra
//! `{X : XᵀJ + JX = 0}` — exact Gaussian elimination over F_q throughout.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};

use super::fp4::{
    char_poly, element_order, factor_shape, identity4, inverse, is_symplectic, j_matrix, mul,
    neg, pack, transvection, unpack, M4, V4,
};

/// Transvection directions whose λ = 1 transvections generate the group.
const GENERATOR_DIRECTIONS: [V4; 6] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [0, 0, 1, 1],
];

/// Cross-field matching signature of a conjugacy class: data that does not
/// depend on the field the class lives over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassSignature {
    /// Element order in the (quotient) group.
    pub order: u32,
    /// Minimal element order among the coset lifts in the full matrix
    /// group (equals `order` when no quotient was taken). Separates
    /// classes the quotient order conflates: a lift squaring to −I has
    /// lift order 4 but quotient order 2, and when −1 is a square its
    /// characteristic polynomial splits into the same linear shapes as a
    /// genuine involution's, so shapes alone cannot tell them apart.
    pub lift_order: u32,
    /// Factorization shapes of the characteristic polynomials of the coset
    /// lifts, sorted and deduplicated.
    pub shapes: Vec<Vec<(u8, u8)>>,
    /// Whether some lift is unipotent, i.e. (g − I)⁴ = 0.
    pub unipotent: bool,
}

/// One conjugacy class of the (quotient) group.
#[derive(Debug, Clone, Serialize)]
pub struct GroupClass {
    pub id: u8,
    pub size: u64,
    /// Minimal canonical key of the class (deterministic representative).
    pub rep_key: u64,
    pub order: u32,
    pub unipotent: bool,
    /// `10 − dim ker(Ad(g) − id)`; `None` when q = 2 (bad characteristic).
    pub dimension: Option<u32>,
    pub signature: ClassSignature,
}

/// The enumerated group model at one prime.
pub struct GroupModel {
    q: u8,
    full_order: u64,
    center_projected: bool,
    /// Canonical element keys, sorted ascending.
    elements: Vec<u64>,
    /// Class id per element, aligned with `elements`.
    class_of: Vec<u8>,
    classes: Vec<GroupClass>,
    generators: Vec<M4>,
}

impl GroupModel {
    /// Enumerate the group over F_q and classify it. Supported q: 2, 3, 5.
    pub fn build(q: u8) -> Result<Self> {
        if !matches!(q, 2 | 3 | 5) {
            return Err(Error::argument(format!("supported primes are 2, 3, 5; got {q}")));
        }
        let generators: Vec<M4> =
            GENERATOR_DIRECTIONS.iter().map(|v| transvection(q, v, 1)).collect();
        for g in &generators {
            if !is_symplectic(q, g) {
                return Err(Error::integrity("generator does not preserve the form"));
            }
        }

        // Breadth-first closure of the full group.
        let expected = usize::pow(q as usize, 4) * (usize::pow(q as usize, 2) - 1)
            * (usize::pow(q as usize, 4) - 1);
        let mut seen: HashSet<u64> = HashSet::with_capacity(expected * 2);
        let mut order_vec: Vec<u64> = Vec::with_capacity(expected);
        let id_key = pack(&identity4());
        seen.insert(id_key);
        order_vec.push(id_key);
        let mut head = 0;
        while head < order_vec.len() {
            let g = unpack(order_vec[head]);
            head += 1;
            for h in &generators {
                let prod = mul(q, &g, h);
                let key = pack(&prod);
                if seen.insert(key) {
                    order_vec.push(key);
                }
            }
        }
        drop(seen);
        let full_order = order_vec.len() as u64;

        // Every enumerated element preserves the form.
        for &key in &order_vec {
            if !is_symplectic(q, &unpack(key)) {
                return Err(Error::integrity(format!(
                    "enumerated element {key:#x} does not preserve the form"
                )));
            }
        }

        // Central quotient for odd q: key each coset {g, −g} by its
        // lexicographically smaller member.
        let center_projected = q != 2;
        let mut elements: Vec<u64> = if center_projected {
            order_vec.iter().map(|&k| canonical_key(q, true, &unpack(k))).collect()
        } else {
            order_vec
        };
        elements.sort_unstable();
        elements.dedup();

        let mut model = GroupModel {
            q,
            full_order,
            center_projected,
            elements,
            class_of: Vec::new(),
            classes: Vec::new(),
            generators,
        };
        model.classify()?;
        Ok(model)
    }

    /// Canonical key of an arbitrary group matrix in this model.
    pub fn canonical_key(&self, m: &M4) -> u64 {
        canonical_key(self.q, self.center_projected, m)
    }

    /// Orbit-partition the element list under conjugation by generators.
    fn classify(&mut self) -> Result<()> {
        let n = self.elements.len();
        let mut class_of = vec![u8::MAX; n];
        let mut classes: Vec<GroupClass> = Vec::new();
        let gen_pairs: Vec<(M4, M4)> = self
            .generators
            .iter()
            .map(|h| (*h, inverse(self.q, h).expect("generators are invertible")))
            .collect();
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..n {
            if class_of[start] != u8::MAX {
                continue;
            }
            if classes.len() == usize::from(u8::MAX) {
                return Err(Error::integrity("more than 254 conjugacy classes"));
            }
            let cid = classes.len() as u8;
            class_of[start] = cid;
            stack.push(start);
            let mut size = 0u64;
            while let Some(idx) = stack.pop() {
                size += 1;
                let g = unpack(self.elements[idx]);
                for (h, hinv) in &gen_pairs {
                    let conj = mul(self.q, &mul(self.q, h, &g), hinv);
                    let key = canonical_key(self.q, self.center_projected, &conj);
                    let j = self
                        .elements
                        .binary_search(&key)
                        .map_err(|_| Error::integrity("conjugate escaped the element set"))?;
                    if class_of[j] == u8::MAX {
                        class_of[j] = cid;
                        stack.push(j);
                    }
                }
            }
            let rep_key = self.elements[start]; // minimal: scan order is sorted
            classes.push(self.class_record(cid, size, rep_key)?);
        }
        self.class_of = class_of;
        self.classes = classes;
        Ok(())
    }

    fn class_record(&self, id: u8, size: u64, rep_key: u64) -> Result<GroupClass> {
        let q = self.q;
        let g = unpack(rep_key);
        let canon = |m: &M4| unpack(canonical_key(q, self.center_projected, m));
        let order = element_order(q, &g, canon)?;
        let lifts: Vec<M4> =
            if self.center_projected { vec![g, neg(q, &g)] } else { vec![g] };
        let unipotent = lifts.iter().any(|m| is_unipotent(q, m));
        let mut lift_order = u32::MAX;
        for m in &lifts {
            lift_order = lift_order.min(element_order(q, m, |x| *x)?);
        }
        let mut shapes: Vec<Vec<(u8, u8)>> =
            lifts.iter().map(|m| factor_shape(q, &char_poly(q, m))).collect();
        shapes.sort();
        shapes.dedup();
        let dimension =
            if q == 2 { None } else { Some(class_dimension(q, &g)?) };
        Ok(GroupClass {
            id,
            size,
            rep_key,
            order,
            unipotent,
            dimension,
            signature: ClassSignature { order, lift_order, shapes, unipotent },
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Order of the full matrix group (before any central quotient).
    pub fn full_order(&self) -> u64 {
        self.full_order
    }

    /// Whether elements are cosets modulo {±I}.
    pub fn center_projected(&self) -> bool {
        self.center_projected
    }

    /// Order of the working group (the quotient for odd q).
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Sorted canonical element keys.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Class id of the element at position `idx` of `elements()`.
    pub fn class_of_index(&self, idx: usize) -> u8 {
        self.class_of[idx]
    }

    /// Class id of an arbitrary group matrix.
    pub fn class_of(&self, m: &M4) -> Result<u8> {
        let key = canonical_key(self.q, self.center_projected, m);
        let idx = self
            .elements
            .binary_search(&key)
            .map_err(|_| Error::argument("matrix is not an element of the group"))?;
        Ok(self.class_of[idx])
    }

    pub fn classes(&self) -> &[GroupClass] {
        &self.classes
    }

    pub fn generators(&self) -> &[M4] {
        &self.generators
    }
}

/// Canonical key: for a projected center, the smaller of the packed keys of
/// g and −g; otherwise just the packed key.
pub fn canonical_key(q: u8, center_projected: bool, m: &M4) -> u64 {
    let key = pack(m);
    if !center_projected {
        return key;
    }
    key.min(pack(&neg(q, m)))
}

/// Is every eigenvalue of `m` equal to 1 over the algebraic closure,
/// i.e. (m − I)⁴ = 0?
pub fn is_unipotent(q: u8, m: &M4) -> bool {
    let mut n = *m;
    for i in 0..4 {
        n[4 * i + i] = (n[4 * i + i] + q - 1) % q;
    }
    let n2 = mul(q, &n, &n);
    mul(q, &n2, &n2) == [0u8; 16]
}

/// Basis of the 10-dimensional algebra {X : XᵀJ + JX = 0} over F_q, as
/// flattened 16-vectors, together with the positions where coordinates of
/// an arbitrary member can be read off directly.
fn sp4_basis(q: u8) -> Result<(Vec<Vec<u32>>, Vec<usize>)> {
    let field = PrimeField::new(u32::from(q))?;
    // Unknown x_{kl} at flat index 4k+l; one equation per matrix position
    // (a,b): Σ_k (J_{kb} x_{ka} + J_{ak} x_{kb}) = 0.
    let j = j_matrix(q);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(16);
    for a in 0..4 {
        for b in 0..4 {
            let mut row = vec![0u32; 16];
            for k in 0..4 {
                row[4 * k + a] = (row[4 * k + a] + u32::from(j[4 * k + b])) % u32::from(q);
                row[4 * k + b] = (row[4 * k + b] + u32::from(j[4 * a + k])) % u32::from(q);
            }
            rows.push(row);
        }
    }
    let m = Mat::from_rows(field, rows)?;
    let basis = m.null_space();
    if basis.len() != 10 {
        return Err(Error::integrity(format!(
            "form-compatible algebra has dimension {}, expected 10",
            basis.len()
        )));
    }
    // Reading positions: one per basis vector, where it is 1 and all
    // others vanish (free columns of the reduced system).
    let mut read_pos = Vec::with_capacity(10);
    for (k, v) in basis.iter().enumerate() {
        let pos = (0..16)
            .find(|&p| {
                v[p] == 1 && basis.iter().enumerate().all(|(l, w)| l == k || w[p] == 0)
            })
            .ok_or_else(|| Error::integrity("no unit reading position for basis vector"))?;
        read_pos.push(pos);
    }
    Ok((basis, read_pos))
}

/// Dimension of the conjugacy class of `g`: 10 − dim ker(Ad(g) − id) on the
/// form-compatible algebra. Refused in characteristic 2.
pub fn class_dimension(q: u8, g: &M4) -> Result<u32> {
    if q == 2 {
        return Err(Error::unsupported(
            "class dimensions need odd characteristic (the Lie-centralizer method \
             degenerates at q = 2)",
        ));
    }
    let field = PrimeField::new(u32::from(q))?;
    let (basis, read_pos) = sp4_basis(q)?;
    let ginv =
        inverse(q, g).ok_or_else(|| Error::argument("matrix is not invertible"))?;
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(10);
    for v in &basis {
        // Y = g X g⁻¹ with X the basis matrix.
        let mut x = [0u8; 16];
        for (p, xp) in x.iter_mut().enumerate() {
            *xp = v[p] as u8;
        }
        let y = mul(q, &mul(q, g, &x), &ginv);
        let coords: Vec<u32> = read_pos.iter().map(|&p| u32::from(y[p])).collect();
        // The image must lie in the span; verify the reconstruction.
        for p in 0..16 {
            let mut acc = 0u64;
            for (k, b) in basis.iter().enumerate() {
                acc += u64::from(coords[k]) * u64::from(b[p]);
            }
            if acc % u64::from(q) != u64::from(y[p]) {
                return Err(Error::integrity(
                    "conjugation left the form-compatible algebra",
                ));
            }
        }
        columns.push(coords);
    }
    // Ad − I, columns indexed by basis vectors.
    let mut ad = Mat::zeros(field, 10, 10);
    for (col, coords) in columns.iter().enumerate() {
        for (row, &c) in coords.iter().enumerate() {
            let v = if row == col { (c + u32::from(q) - 1) % u32::from(q) } else { c };
            ad.set(row, col, v);
        }
    }
    Ok(10 - ad.nullity() as u32)
}

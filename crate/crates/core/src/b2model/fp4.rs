//! Exact 4×4 matrix arithmetic over a small prime field: packed keys for
//! hashing and ordering, the fixed alternating form, transvections,
//! characteristic polynomials, and factorization shapes.
//!
//! Entries live in `0..q` inside `u8`s; a whole matrix packs into a `u64`
//! key (4 bits per entry, row-major, earlier entries in higher bits) so
//! that key order equals lexicographic order on entries.

use crate::error::{Error, Result};

/// Row-major 4×4 matrix with entries reduced mod q.
pub type M4 = [u8; 16];

/// Column vector.
pub type V4 = [u8; 4];

/// The fixed alternating form: ⟨e1,e4⟩ = ⟨e2,e3⟩ = 1, antisymmetric,
/// zero elsewhere (−1 is stored as q−1).
pub fn j_matrix(q: u8) -> M4 {
    let m = q - 1; // −1 mod q
    [0, 0, 0, 1, 0, 0, 1, 0, 0, m, 0, 0, m, 0, 0, 0]
}

pub fn identity4() -> M4 {
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]
}

/// Pack into a key whose order is lexicographic on row-major entries.
pub fn pack(m: &M4) -> u64 {
    let mut key = 0u64;
    for &e in m {
        debug_assert!(e < 16);
        key = (key << 4) | u64::from(e);
    }
    key
}

pub fn unpack(mut key: u64) -> M4 {
    let mut m = [0u8; 16];
    for i in (0..16).rev() {
        m[i] = (key & 0xF) as u8;
        key >>= 4;
    }
    m
}

pub fn mul(q: u8, a: &M4, b: &M4) -> M4 {
    let qq = u16::from(q);
    let mut out = [0u8; 16];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0u16;
            for k in 0..4 {
                acc += u16::from(a[4 * i + k]) * u16::from(b[4 * k + j]);
            }
            out[4 * i + j] = (acc % qq) as u8;
        }
    }
    out
}

pub fn mat_vec(q: u8, m: &M4, v: &V4) -> V4 {
    let qq = u16::from(q);
    let mut out = [0u8; 4];
    for i in 0..4 {
        let mut acc = 0u16;
        for k in 0..4 {
            acc += u16::from(m[4 * i + k]) * u16::from(v[k]);
        }
        out[i] = (acc % qq) as u8;
    }
    out
}

pub fn transpose(m: &M4) -> M4 {
    let mut out = [0u8; 16];
    for i in 0..4 {
        for j in 0..4 {
            out[4 * j + i] = m[4 * i + j];
        }
    }
    out
}

pub fn neg(q: u8, m: &M4) -> M4 {
    let mut out = [0u8; 16];
    for (o, &e) in out.iter_mut().zip(m) {
        *o = if e == 0 { 0 } else { q - e };
    }
    out
}

/// Scalar inverse mod q by exhaustive search (q ≤ 13 here).
pub fn scalar_inv(q: u8, x: u8) -> u8 {
    assert!(x % q != 0, "zero has no inverse");
    (1..q).find(|&y| (u16::from(x) * u16::from(y)) % u16::from(q) == 1).unwrap()
}

/// Inverse by Gauss–Jordan elimination; `None` for singular input.
pub fn inverse(q: u8, m: &M4) -> Option<M4> {
    let qq = u16::from(q);
    let mut a = *m;
    let mut b = identity4();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| a[4 * r + col] != 0)?;
        if pivot != col {
            for j in 0..4 {
                a.swap(4 * pivot + j, 4 * col + j);
                b.swap(4 * pivot + j, 4 * col + j);
            }
        }
        let inv = u16::from(scalar_inv(q, a[4 * col + col]));
        for j in 0..4 {
            a[4 * col + j] = ((u16::from(a[4 * col + j]) * inv) % qq) as u8;
            b[4 * col + j] = ((u16::from(b[4 * col + j]) * inv) % qq) as u8;
        }
        for r in 0..4 {
            if r == col || a[4 * r + col] == 0 {
                continue;
            }
            let f = u16::from(a[4 * r + col]);
            for j in 0..4 {
                let av = u16::from(a[4 * col + j]) * f % qq;
                a[4 * r + j] = ((u16::from(a[4 * r + j]) + qq - av) % qq) as u8;
                let bv = u16::from(b[4 * col + j]) * f % qq;
                b[4 * r + j] = ((u16::from(b[4 * r + j]) + qq - bv) % qq) as u8;
            }
        }
    }
    Some(b)
}

/// Does `m` preserve the form: mᵀ J m = J?
pub fn is_symplectic(q: u8, m: &M4) -> bool {
    let j = j_matrix(q);
    mul(q, &mul(q, &transpose(m), &j), m) == j
}

/// The symplectic transvection x ↦ x + λ·(xᵀJv)·v.
pub fn transvection(q: u8, v: &V4, lambda: u8) -> M4 {
    let qq = u16::from(q);
    let j = j_matrix(q);
    let mut out = identity4();
    for col in 0..4 {
        // σ(e_col, v) = (Jv)_col
        let mut sigma = 0u16;
        for k in 0..4 {
            sigma += u16::from(j[4 * col + k]) * u16::from(v[k]);
        }
        let c = sigma % qq * u16::from(lambda) % qq;
        for row in 0..4 {
            let add = c * u16::from(v[row]) % qq;
            out[4 * row + col] = ((u16::from(out[4 * row + col]) + add) % qq) as u8;
        }
    }
    out
}

/// Monic characteristic polynomial det(tI − m), coefficients low → high.
/// Computed by the 24-term permutation expansion with exact polynomial
/// arithmetic mod q.
pub fn char_poly(q: u8, m: &M4) -> [u8; 5] {
    // Entry (i,j) of tI − m as a degree ≤ 1 polynomial (constant, linear).
    let entry = |i: usize, j: usize| -> [u8; 2] {
        let c = if m[4 * i + j] == 0 { 0 } else { q - m[4 * i + j] };
        [c, u8::from(i == j)]
    };
    let mut acc = [0i32; 5];
    let perms = permutations4();
    for (perm, sign) in perms {
        let mut term = [0i32; 5];
        term[0] = 1;
        for (i, &pi) in perm.iter().enumerate() {
            let e = entry(i, pi as usize);
            let mut next = [0i32; 5];
            for (d, &coeff) in term.iter().enumerate() {
                if coeff == 0 {
                    continue;
                }
                next[d] += coeff * i32::from(e[0]);
                if d + 1 < 5 {
                    next[d + 1] += coeff * i32::from(e[1]);
                }
            }
            term = next;
        }
        for d in 0..5 {
            acc[d] += i32::from(sign) * term[d];
        }
    }
    let qq = i32::from(q);
    let mut out = [0u8; 5];
    for d in 0..5 {
        out[d] = (acc[d].rem_euclid(qq)) as u8;
    }
    debug_assert_eq!(out[4], 1 % q);
    out
}

/// All 24 permutations of {0,1,2,3} with their signs (by inversion count).
fn permutations4() -> Vec<([u8; 4], i8)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    let mut inversions = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if p[i] > p[j] {
                                inversions += 1;
                            }
                        }
                    }
                    out.push((p, if inversions % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
    }
    out
}

/// Evaluate a polynomial (coefficients low → high) at x, mod q.
pub fn eval_mod(q: u8, poly: &[u8], x: u8) -> u8 {
    let qq = u16::from(q);
    let mut acc = 0u16;
    for &c in poly.iter().rev() {
        acc = (acc * u16::from(x) + u16::from(c)) % qq;
    }
    acc as u8
}

/// Divide `num` by monic `den` over F_q; returns (quotient, remainder).
fn poly_divmod(q: u8, num: &[u8], den: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let dn = degree(den);
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem: Vec<u8> = num.to_vec();
    let mut quo = vec![0u8; num.len()];
    loop {
        let dr = degree(&rem);
        if dr < dn || (dr == 0 && rem[0] == 0) {
            break;
        }
        let shift = dr - dn;
        let c = rem[dr];
        quo[shift] = c;
        for k in 0..=dn {
            let sub = u16::from(den[k]) * u16::from(c) % u16::from(q);
            rem[k + shift] =
                ((u16::from(rem[k + shift]) + u16::from(q) - sub) % u16::from(q)) as u8;
        }
    }
    (quo, rem)
}

fn degree(p: &[u8]) -> usize {
    p.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Factorization shape of a monic polynomial over F_q: the sorted list of
/// (degree of irreducible factor, its multiplicity). Field-independent, so
/// usable to match classes across different primes.
pub fn factor_shape(q: u8, poly: &[u8]) -> Vec<(u8, u8)> {
    let mut shape: Vec<(u8, u8)> = Vec::new();
    let mut work: Vec<u8> = poly.to_vec();
    assert_eq!(work[degree(&work)], 1, "factor_shape expects a monic polynomial");
    // Linear factors by root extraction.
    for r in 0..q {
        let mut mult = 0u8;
        while degree(&work) >= 1 && eval_mod(q, &work, r) == 0 {
            let den = vec![if r == 0 { 0 } else { q - r }, 1]; // t − r
            let (quo, rem) = poly_divmod(q, &work, &den);
            assert!(rem.iter().all(|&c| c == 0));
            work = quo;
            mult += 1;
        }
        if mult > 0 {
            shape.push((1, mult));
        }
    }
    let d = degree(&work);
    match d {
        0 => {}
        2 | 3 => shape.push((d as u8, 1)), // rootless degree ≤ 3 ⇒ irreducible
        4 => {
            // Either irreducible, or a product of two rootless quadratics.
            let mut split = false;
            'outer: for b in 0..q {
                for c in 1..q {
                    let f = vec![c, b, 1];
                    if (0..q).any(|r| eval_mod(q, &f, r) == 0) {
                        continue; // reducible quadratic cannot divide a rootless quartic
                    }
                    let (quo, rem) = poly_divmod(q, &work, &f);
                    if rem.iter().all(|&v| v == 0) {
                        let g: Vec<u8> = quo[..3].to_vec();
                        if g == f {
                            shape.push((2, 2));
                        } else {
                            shape.push((2, 1));
                            shape.push((2, 1));
                        }
                        split = true;
                        break 'outer;
                    }
                }
            }
            if !split {
                shape.push((4, 1));
            }
        }
        other => panic!("unexpected residual degree {other}"),
    }
    shape.sort_unstable();
    shape
}

/// Multiplicative order of `m` in the group of invertible matrices,
/// with products canonicalized by `canon` (identity map for the full
/// group, ± reduction for a central quotient).
pub fn element_order(q: u8, m: &M4, canon: impl Fn(&M4) -> M4) -> Result<u32> {
    let id = canon(&identity4());
    let mut x = canon(m);
    for n in 1..=100u32 {
        if x == id {
            return Ok(n);
        }
        x = canon(&mul(q, &x, m));
    }
    Err(Error::integrity("element order exceeds 100; not a valid group element"))
}

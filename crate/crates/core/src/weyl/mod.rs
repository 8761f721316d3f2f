//! The Weyl group as a permutation group on root indices.
//!
//! Elements are permutations of `0..num_roots()` stored as boxed `u16`
//! slices; composition is `(a * b)(x) = a(b(x))` (right factor acts first).
//! Because every element permutes the roots faithfully and preserves the
//! form, all structural quantities — length, order, characteristic
//! polynomial on the reflection representation — are exact integer
//! computations on these tables.

mod bsgs;
mod classes;

pub use bsgs::Bsgs;
pub use classes::{
    divisors, CensusClass, CensusConfig, CensusReport, ClassRecord, DescentOutcome, Fingerprint,
    DEFAULT_DESCENT_CAP, DEFAULT_ELEMENT_CAP,
};

use crate::cartan::LieType;
use crate::error::{Error, Result};
use crate::linalg::{char_poly_i64, eval_poly, Integers, Mat};
use crate::roots::RootSystem;

/// A Weyl group element: a permutation of root indices.
pub type Perm = Box<[u16]>;

/// Compose two permutations: `(a * b)(x) = a(b(x))`.
pub fn compose(a: &[u16], b: &[u16]) -> Perm {
    debug_assert_eq!(a.len(), b.len());
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Inverse permutation.
pub fn invert(a: &[u16]) -> Perm {
    let mut inv = vec![0u16; a.len()];
    for (x, &ax) in a.iter().enumerate() {
        inv[ax as usize] = x as u16;
    }
    inv.into()
}

/// Identity permutation on `deg` points.
pub fn identity(deg: usize) -> Perm {
    (0..deg as u16).collect()
}

pub fn is_identity(a: &[u16]) -> bool {
    a.iter().enumerate().all(|(x, &ax)| ax as usize == x)
}

/// Multiplicative order: least common multiple of the cycle lengths.
pub fn perm_order(a: &[u16]) -> u64 {
    let mut order = 1u64;
    let mut seen = vec![false; a.len()];
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cycle type as run-length pairs (cycle length, multiplicity), sorted by
/// length.
pub fn cycle_type(a: &[u16]) -> Vec<(u32, u32)> {
    let mut lengths = Vec::new();
    let mut seen = vec![false; a.len()];
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    let mut rle: Vec<(u32, u32)> = Vec::new();
    for l in lengths {
        match rle.last_mut() {
            Some((ll, c)) if *ll == l => *c += 1,
            _ => rle.push((l, 1)),
        }
    }
    rle
}

/// The Weyl group of a root system, generated by the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    roots: RootSystem,
    generators: Vec<Perm>,
}

impl WeylGroup {
    pub fn new(roots: RootSystem) -> Self {
        let generators = (0..roots.rank())
            .map(|i| roots.simple_reflection(i).to_vec().into_boxed_slice())
            .collect();
        WeylGroup { roots, generators }
    }

    pub fn for_type(t: LieType) -> Self {
        WeylGroup::new(RootSystem::for_type(t))
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// Degree of the permutation action (= number of roots).
    pub fn degree(&self) -> usize {
        self.roots.num_roots()
    }

    /// The simple reflections, in node order.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        identity(self.degree())
    }

    pub fn simple_reflection(&self, i: usize) -> &Perm {
        &self.generators[i]
    }

    /// The element of a word in the generators, leftmost letter outermost:
    /// `[i, j, k]` gives s_i s_j s_k, with s_k applied first.
    pub fn word(&self, letters: &[usize]) -> Result<Perm> {
        let mut p = self.identity();
        for &i in letters {
            if i >= self.rank() {
                return Err(Error::argument(format!(
                    "generator index {i} out of range for rank {}",
                    self.rank()
                )));
            }
            p = compose(&p, &self.generators[i]);
        }
        Ok(p)
    }

    /// Coxeter length: the number of positive roots sent negative.
    pub fn length(&self, w: &[u16]) -> usize {
        let n_pos = self.roots.num_positive();
        (0..n_pos).filter(|&j| w[j] as usize >= n_pos).count()
    }

    /// Conjugate `g h g^{-1}` computed without forming the inverse.
    pub fn conjugate(&self, g: &[u16], h: &[u16]) -> Perm {
        // (g h g^{-1})(x) = g(h(g^{-1}(x))); build by relabeling h along g.
        let mut out = vec![0u16; h.len()];
        for (x, &gx) in g.iter().enumerate() {
            out[gx as usize] = g[h[x] as usize];
        }
        out.into()
    }

    /// Conjugate by a simple reflection: s_i w s_i.
    pub fn conjugate_by_simple(&self, i: usize, w: &[u16]) -> Perm {
        self.conjugate(&self.generators[i], w)
    }

    /// Matrix of `w` on the reflection representation, acting on
    /// simple-root coordinates: column j holds the coordinates of w(a_j).
    pub fn matrix_on_v(&self, w: &[u16]) -> Mat<Integers> {
        let rank = self.rank();
        let mut m = Mat::zeros(Integers, rank, rank);
        for j in 0..rank {
            let aj = self.roots.simple_root_index(j);
            let image = self.roots.root(w[aj as usize]);
            for (i, &c) in image.iter().enumerate() {
                m.set(i, j, c as i64);
            }
        }
        m
    }

    /// Characteristic polynomial of `w` on the reflection representation,
    /// coefficients low to high, exactly.
    pub fn char_poly_on_v(&self, w: &[u16]) -> Vec<i64> {
        char_poly_i64(&self.matrix_on_v(w))
    }

    /// An element is elliptic when it fixes no nonzero vector of the
    /// reflection representation, i.e. det(1 - w) != 0, i.e. 1 is not an
    /// eigenvalue.
    pub fn is_elliptic(&self, w: &[u16]) -> bool {
        eval_poly(&self.char_poly_on_v(w), 1) != 0
    }

    /// The Coxeter element s_0 s_1 ... s_{rank-1}.
    pub fn coxeter_element(&self) -> Perm {
        let word: Vec<usize> = (0..self.rank()).collect();
        self.word(&word).expect("indices in range")
    }

    /// The longest element, found by greedy ascent: repeatedly multiply by a
    /// simple reflection that increases length.
    pub fn longest_element(&self) -> Perm {
        let n_pos = self.roots.num_positive();
        let mut w = self.identity();
        let mut len = 0;
        while len < n_pos {
            let next = (0..self.rank())
                .map(|i| compose(&w, &self.generators[i]))
                .find(|c| self.length(c) > len)
                .expect("below the top, some generator ascends");
            w = next;
            len += 1;
        }
        w
    }

    /// A strong generating set for membership, order, and uniform sampling.
    pub fn bsgs(&self) -> Bsgs {
        Bsgs::new(self.generators.clone(), self.degree())
    }

    /// Group order, certified by a stabilizer chain.
    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }
}

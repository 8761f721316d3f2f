//! Root systems built by reflection closure from a Cartan datum.
//!
//! Roots are exact integer coordinate vectors over the simple roots. The
//! system is generated by closing the simple roots under the simple
//! reflections; for a positive-definite datum this terminates and yields the
//! full finite root system.
//!
//! # Canonical order
//!
//! Positive roots come first, sorted by (height ascending, then
//! lexicographic on coordinates); the negative root -b sits at
//! `index(b) + num_positive()`. This ordering is part of the on-disk format
//! contract. Note that lexicographic comparison does *not* put the simple
//! roots in node order (e.g. (0,1) sorts before (1,0)); use
//! [`RootSystem::simple_root_index`] to locate them.

use crate::cartan::{CartanDatum, LieType};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default ceiling on the number of roots the closure will enumerate.
pub const DEFAULT_ROOT_CAP: usize = 100_000;

/// A finite root system with a fixed canonical indexing of the roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: CartanDatum,
    /// All roots in canonical order; each is a coordinate vector over the
    /// simple roots.
    roots: Vec<Box<[i16]>>,
    n_pos: usize,
    index: HashMap<Box<[i16]>, u16>,
    /// simple_indices[i] = canonical index of the simple root a_i.
    simple_indices: Vec<u16>,
    /// simple_perms[i][j] = index of s_i(root j).
    simple_perms: Vec<Box<[u16]>>,
}

impl RootSystem {
    /// Close the simple roots of `datum` under simple reflections, with the
    /// default enumeration cap.
    pub fn new(datum: CartanDatum) -> Result<Self> {
        Self::with_cap(datum, DEFAULT_ROOT_CAP)
    }

    /// The root system of a named finite type.
    pub fn for_type(t: LieType) -> Self {
        Self::new(CartanDatum::for_type(t)).expect("finite types stay under the root cap")
    }

    /// Close under simple reflections, failing with a `Resource` error if
    /// more than `cap` roots appear (which a positive-definite form cannot
    /// cause, but an unverified caller-supplied form could in principle).
    pub fn with_cap(datum: CartanDatum, cap: usize) -> Result<Self> {
        let rank = datum.rank();
        let mut seen: HashMap<Box<[i16]>, ()> = HashMap::new();
        let mut worklist: Vec<Box<[i16]>> = Vec::new();
        for i in 0..rank {
            let mut coords = vec![0i16; rank];
            coords[i] = 1;
            let coords: Box<[i16]> = coords.into();
            seen.insert(coords.clone(), ());
            worklist.push(coords);
        }
        while let Some(v) = worklist.pop() {
            for i in 0..rank {
                let image = reflect_simple(&datum, &v, i);
                if !seen.contains_key(image.as_slice()) {
                    if seen.len() >= cap {
                        return Err(Error::Resource {
                            what: "roots",
                            limit: cap as u128,
                            partial: seen.len() as u128,
                        });
                    }
                    seen.insert(image.clone().into_boxed_slice(), ());
                    worklist.push(image.into_boxed_slice());
                }
            }
        }

        // Split by sign. Every root of a finite system is entirely
        // non-negative or entirely non-positive in simple-root coordinates.
        let mut positives: Vec<Box<[i16]>> = Vec::new();
        for root in seen.into_keys() {
            let pos = root.iter().all(|&c| c >= 0);
            let neg = root.iter().all(|&c| c <= 0);
            assert!(
                pos ^ neg,
                "mixed-sign root {root:?}: reflection closure broke the sign dichotomy"
            );
            if pos {
                positives.push(root);
            }
        }
        positives.sort_by(|a, b| {
            let ha: i32 = a.iter().map(|&c| c as i32).sum();
            let hb: i32 = b.iter().map(|&c| c as i32).sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let n_pos = positives.len();
        if 2 * n_pos > u16::MAX as usize {
            return Err(Error::Resource {
                what: "root indices",
                limit: u16::MAX as u128,
                partial: 2 * n_pos as u128,
            });
        }

        let mut roots = positives;
        for i in 0..n_pos {
            let neg: Box<[i16]> = roots[i].iter().map(|&c| -c).collect();
            roots.push(neg);
        }
        let index: HashMap<Box<[i16]>, u16> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k as u16))
            .collect();

        // The simple roots are exactly the height-1 positives, so they
        // occupy indices 0..rank — but in lexicographic order, not node
        // order. Record where each node's root landed.
        let simple_indices: Vec<u16> = (0..rank)
            .map(|i| {
                let mut coords = vec![0i16; rank];
                coords[i] = 1;
                let idx = index[coords.as_slice()];
                assert!((idx as usize) < rank, "simple root {i} not among the first {rank}");
                idx
            })
            .collect();

        let mut simple_perms = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut perm = vec![0u16; roots.len()];
            for (j, root) in roots.iter().enumerate() {
                let image = reflect_simple(&datum, root, i);
                perm[j] = *index
                    .get(image.as_slice())
                    .expect("reflection image of a root is a root");
            }
            simple_perms.push(perm.into_boxed_slice());
        }

        Ok(RootSystem { datum, roots, n_pos, index, simple_indices, simple_perms })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Total number of roots.
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    /// Coordinates of root `idx` over the simple roots.
    pub fn root(&self, idx: u16) -> &[i16] {
        &self.roots[idx as usize]
    }

    pub fn roots(&self) -> impl Iterator<Item = &[i16]> {
        self.roots.iter().map(|r| &**r)
    }

    pub fn index_of(&self, coords: &[i16]) -> Option<u16> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, idx: u16) -> bool {
        (idx as usize) < self.n_pos
    }

    /// Canonical index of the simple root a_i (node order).
    pub fn simple_root_index(&self, i: usize) -> u16 {
        self.simple_indices[i]
    }

    /// Index of -root(idx).
    pub fn negation(&self, idx: u16) -> u16 {
        if self.is_positive(idx) {
            idx + self.n_pos as u16
        } else {
            idx - self.n_pos as u16
        }
    }

    /// Height: sum of simple-root coefficients (negative for negative roots).
    pub fn height(&self, idx: u16) -> i32 {
        self.roots[idx as usize].iter().map(|&c| c as i32).sum()
    }

    /// The bilinear form on two roots.
    pub fn form_roots(&self, a: u16, b: u16) -> i64 {
        let u: Vec<i64> = self.roots[a as usize].iter().map(|&c| c as i64).collect();
        let v: Vec<i64> = self.roots[b as usize].iter().map(|&c| c as i64).collect();
        self.datum.form(&u, &v)
    }

    /// (a, a) for root `a`: 2 for all roots in simply-laced types.
    pub fn norm(&self, a: u16) -> i64 {
        self.form_roots(a, a)
    }

    /// The permutation of root indices induced by the simple reflection s_i.
    pub fn simple_reflection(&self, i: usize) -> &[u16] {
        &self.simple_perms[i]
    }

    /// Index of s_i(root j).
    pub fn reflect_index(&self, i: usize, j: u16) -> u16 {
        self.simple_perms[i][j as usize]
    }

    /// Reflect an arbitrary integer vector (in simple-root coordinates) in
    /// the hyperplane of root `a`: s_a(v) = v - (2(v,a)/(a,a)) a. The
    /// division is exact for any vector in the root lattice paired with a
    /// root; a non-exact division indicates corrupted input and panics.
    pub fn reflect_vector(&self, v: &[i64], a: u16) -> Vec<i64> {
        let root: Vec<i64> = self.roots[a as usize].iter().map(|&c| c as i64).collect();
        let num = 2 * self.datum.form(v, &root);
        let den = self.datum.form(&root, &root);
        assert_eq!(num % den, 0, "non-integral reflection coefficient: 2(v,a) = {num}, (a,a) = {den}");
        let c = num / den;
        v.iter().zip(&root).map(|(&vi, &ai)| vi - c * ai).collect()
    }
}

/// s_i(v) in simple-root coordinates, exact.
fn reflect_simple(datum: &CartanDatum, v: &[i16], i: usize) -> Vec<i16> {
    let vi: Vec<i64> = v.iter().map(|&c| c as i64).collect();
    let mut alpha = vec![0i64; datum.rank()];
    alpha[i] = 1;
    let num = 2 * datum.form(&vi, &alpha);
    let den = datum.pairing(i, i);
    assert_eq!(num % den, 0, "crystallographic condition violated at simple root {i}");
    let c = num / den;
    let mut out: Vec<i16> = v.to_vec();
    out[i] = i16::try_from(out[i] as i64 - c).expect("root coefficient exceeds i16");
    out
}

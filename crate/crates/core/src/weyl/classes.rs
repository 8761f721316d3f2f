//! Conjugacy-class analysis: fingerprints, exhaustive classes, a sampling
//! census, and minimal-length descent.
//!
//! # Fingerprints
//!
//! The fingerprint of `w` is the pair (cycle type of w on the roots, split
//! by root norm; characteristic polynomial of w on V with exact integer
//! coefficients). Both components are constant on conjugacy classes. The
//! norm split matters only for non-simply-laced systems: in B2 the short
//! and the long reflection have equal plain cycle types and equal
//! characteristic polynomials, but act differently on the two length orbits.
//!
//! Fingerprints need not separate classes fused by automorphisms of the
//! root system that are not inner: in D4 the graph symmetry permutes
//! non-conjugate classes with identical fingerprints (see the D4 tests).
//! For root systems without graph symmetries the fingerprint has no such
//! structural obstruction.
//!
//! # Census
//!
//! The census samples exactly uniform elements through the stabilizer
//! chain and fingerprints each sample *and its power w^d for every divisor
//! d of its order*. Powers cost little and matter a lot: classes of small
//! size (identity, the central -1, reflections, ...) are essentially never
//! drawn directly at feasible sample counts, but each is a power of some
//! abundant class, so the power closure finds them. Since Weyl-group
//! characters are rational, w^k is conjugate to w^gcd(k, ord w), so divisor
//! powers already cover every power.

use super::{compose, identity, perm_order, Perm, WeylGroup};
use crate::error::{Error, Result};
use crate::linalg::eval_poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// Default ceiling for exhaustive element enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Absolute refusal threshold for exhaustive enumeration, regardless of any
/// configured cap: groups this large are out of reach for element listing.
pub const ELEMENT_HARD_CEILING: u128 = 100_000_000;

/// Default ceiling on visited states during minimal-length descent.
pub const DEFAULT_DESCENT_CAP: usize = 10_000_000;

/// Samples per parallel census chunk; fixed so the chunk decomposition (and
/// hence the RNG stream assignment) never depends on the thread count.
const CENSUS_CHUNK: u64 = 4096;

/// Conjugation-invariant signature of a Weyl group element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Cycle type of the action on roots, one entry per root norm
    /// (ascending): (norm, run-length pairs (cycle length, multiplicity)).
    pub cycle_types: Vec<(i64, Vec<(u32, u32)>)>,
    /// Characteristic polynomial on V, coefficients low to high, monic.
    pub char_poly: Vec<i64>,
}

impl Fingerprint {
    /// Elliptic means no nonzero fixed vector on V: t = 1 is not a root of
    /// the characteristic polynomial.
    pub fn elliptic(&self) -> bool {
        eval_poly(&self.char_poly, 1) != 0
    }

    /// Element order, read off the root action: lcm of all cycle lengths.
    /// (The action on roots is faithful.)
    pub fn element_order(&self) -> u64 {
        let mut order = 1u64;
        for (_, rle) in &self.cycle_types {
            for &(len, _) in rle {
                let len = len as u64;
                order = order / gcd(order, len) * len;
            }
        }
        order
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// w^k by repeated squaring.
pub fn perm_pow(w: &[u16], k: u64) -> Perm {
    let mut result = identity(w.len());
    let mut base: Perm = w.to_vec().into();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = compose(&result, &base);
        }
        base = compose(&base, &base);
        k >>= 1;
    }
    result
}

/// One conjugacy class from exhaustive enumeration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    /// Canonical representative: minimal length, ties broken by smallest
    /// permutation array.
    pub representative: Perm,
    /// Exact class size.
    pub size: u64,
    /// Minimum of the length function over the class.
    pub min_length: usize,
    pub fingerprint: Fingerprint,
    pub element_order: u64,
    pub elliptic: bool,
}

/// Census configuration. `samples` uniform draws with the given seed;
/// `power_closure` additionally fingerprints divisor powers of each sample.
#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub samples: u64,
    pub seed: u64,
    pub power_closure: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { samples: 1_000_000, seed: crate::DEFAULT_SEED, power_closure: true }
    }
}

/// Per-fingerprint census entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusClass {
    pub fingerprint: Fingerprint,
    /// How many direct samples had this fingerprint (0 for classes found
    /// only through the power closure).
    pub sampled_occurrences: u64,
    pub element_order: u64,
    pub elliptic: bool,
}

/// Result of a sampling census.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub samples: u64,
    pub seed: u64,
    pub power_closure: bool,
    /// Group order as a decimal string (readers may lack 64-bit integers).
    pub group_order: String,
    pub distinct_fingerprints: usize,
    pub elliptic_fingerprints: usize,
    pub classes: Vec<CensusClass>,
}

/// Result of minimal-length descent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescentOutcome {
    pub start_length: usize,
    /// Minimal length over the conjugacy class (by the cyclic-shift theory,
    /// non-increasing conjugation by simple reflections always reaches it).
    pub min_length: usize,
    /// Lexicographically smallest element of the final plateau.
    pub witness: Perm,
    /// Size of the final equal-length plateau explored (the full set of
    /// minimal-length class elements reachable by equal-length moves).
    pub plateau_size: usize,
    /// Strict length drops taken.
    pub descent_steps: usize,
    /// Total states visited across all plateaus.
    pub explored: usize,
}

impl WeylGroup {
    /// The permutation induced by the reflection in an arbitrary root.
    pub fn reflection_perm(&self, root: u16) -> Perm {
        let rs = self.roots();
        let n = rs.num_roots();
        let mut perm = vec![0u16; n];
        for j in 0..n {
            let v: Vec<i64> = rs.root(j as u16).iter().map(|&c| c as i64).collect();
            let image = rs.reflect_vector(&v, root);
            let coords: Vec<i16> = image.iter().map(|&c| c as i16).collect();
            perm[j] = rs
                .index_of(&coords)
                .expect("reflection of a root in a root is a root");
        }
        perm.into()
    }

    /// Conjugation-invariant fingerprint of `w`.
    pub fn fingerprint(&self, w: &[u16]) -> Fingerprint {
        let rs = self.roots();
        // Walk cycles once, attributing each cycle to the norm of its
        // points (w preserves norms, so cycles live in one norm orbit).
        let mut by_norm: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        let mut seen = vec![false; w.len()];
        for start in 0..w.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = w[x] as usize;
                len += 1;
            }
            by_norm.entry(rs.norm(start as u16)).or_default().push(len);
        }
        let cycle_types = by_norm
            .into_iter()
            .map(|(norm, mut lengths)| {
                lengths.sort_unstable();
                let mut rle: Vec<(u32, u32)> = Vec::new();
                for l in lengths {
                    match rle.last_mut() {
                        Some((ll, c)) if *ll == l => *c += 1,
                        _ => rle.push((l, 1)),
                    }
                }
                (norm, rle)
            })
            .collect();
        Fingerprint { cycle_types, char_poly: self.char_poly_on_v(w) }
    }

    /// Exhaustive element list by breadth-first closure under right
    /// multiplication. Fails if the certified group order exceeds `cap`
    /// (the error reports that order), and refuses outright above
    /// [`ELEMENT_HARD_CEILING`].
    pub fn enumerate_elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > ELEMENT_HARD_CEILING {
            return Err(Error::unsupported(format!(
                "exhaustive enumeration of a group of order {order} refused \
                 (hard ceiling {ELEMENT_HARD_CEILING})"
            )));
        }
        if order > cap as u128 {
            return Err(Error::Resource {
                what: "group elements",
                limit: cap as u128,
                partial: order,
            });
        }
        let mut seen: HashSet<Perm> = HashSet::with_capacity(order as usize);
        let mut elements: Vec<Perm> = Vec::with_capacity(order as usize);
        let e = self.identity();
        seen.insert(e.clone());
        elements.push(e);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            head += 1;
            for g in self.generators() {
                let x = compose(&w, g);
                if seen.insert(x.clone()) {
                    elements.push(x);
                }
            }
        }
        debug_assert_eq!(elements.len() as u128, order);
        Ok(elements)
    }

    /// The full conjugacy class of `w` by orbit closure under conjugation
    /// by generators, capped.
    pub fn class_of(&self, w: &[u16], cap: usize) -> Result<Vec<Perm>> {
        let start: Perm = w.to_vec().into();
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(start.clone());
        let mut queue: VecDeque<Perm> = VecDeque::new();
        queue.push_back(start);
        let mut out: Vec<Perm> = Vec::new();
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.conjugate_by_simple(i, &x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::Resource {
                            what: "conjugacy class elements",
                            limit: cap as u128,
                            partial: seen.len() as u128,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        out.sort();
        Ok(out)
    }

    /// All conjugacy classes, exhaustively. Propagates the enumeration cap.
    /// Classes are sorted by (min length, size, representative).
    pub fn conjugacy_classes(&self, cap: usize) -> Result<Vec<ClassRecord>> {
        let elements = self.enumerate_elements(cap)?;
        let index: HashMap<&Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let mut assigned = vec![false; elements.len()];
        let mut records = Vec::new();
        for start in 0..elements.len() {
            if assigned[start] {
                continue;
            }
            // Orbit closure under conjugation by the generators.
            let mut orbit: Vec<u32> = vec![start as u32];
            assigned[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head] as usize;
                head += 1;
                for i in 0..self.rank() {
                    let y = self.conjugate_by_simple(i, &elements[x]);
                    let yi = *index.get(&y).expect("conjugate of a member is a member");
                    if !assigned[yi as usize] {
                        assigned[yi as usize] = true;
                        orbit.push(yi);
                    }
                }
            }
            let mut min_length = usize::MAX;
            let mut rep: Option<&Perm> = None;
            for &i in &orbit {
                let p = &elements[i as usize];
                let l = self.length(p);
                if l < min_length || (l == min_length && Some(p) < rep) {
                    min_length = l;
                    rep = Some(p);
                }
            }
            let rep = rep.expect("orbit is nonempty").clone();
            let fingerprint = self.fingerprint(&rep);
            let element_order = perm_order(&rep);
            let elliptic = fingerprint.elliptic();
            records.push(ClassRecord {
                representative: rep,
                size: orbit.len() as u64,
                min_length,
                fingerprint,
                element_order,
                elliptic,
            });
        }
        records.sort_by(|a, b| {
            (a.min_length, a.size, &a.representative)
                .cmp(&(b.min_length, b.size, &b.representative))
        });
        Ok(records)
    }

    /// Sampling census of conjugacy classes by fingerprint. Deterministic
    /// given the seed: samples are drawn on fixed-size chunks with one RNG
    /// stream per chunk, so the result is independent of thread scheduling.
    pub fn census(&self, config: &CensusConfig) -> CensusReport {
        let chain = self.bsgs();
        let order = chain.order();
        let n_chunks = config.samples.div_ceil(CENSUS_CHUNK);

        struct Tally {
            sampled: u64,
        }
        let merged: HashMap<Fingerprint, Tally> = (0..n_chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(chunk + 1);
                let lo = chunk * CENSUS_CHUNK;
                let hi = (lo + CENSUS_CHUNK).min(config.samples);
                let mut local: HashMap<Fingerprint, Tally> = HashMap::new();
                for _ in lo..hi {
                    let w = chain.sample(&mut rng);
                    let fp = self.fingerprint(&w);
                    local.entry(fp).or_insert(Tally { sampled: 0 }).sampled += 1;
                    if config.power_closure {
                        let m = perm_order(&w);
                        for d in divisors(m) {
                            if d == 1 {
                                continue;
                            }
                            let fp = self.fingerprint(&perm_pow(&w, d));
                            local.entry(fp).or_insert(Tally { sampled: 0 });
                        }
                    }
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                for (fp, tally) in b {
                    a.entry(fp).or_insert(Tally { sampled: 0 }).sampled += tally.sampled;
                }
                a
            });

        let mut classes: Vec<CensusClass> = merged
            .into_iter()
            .map(|(fingerprint, tally)| CensusClass {
                sampled_occurrences: tally.sampled,
                element_order: fingerprint.element_order(),
                elliptic: fingerprint.elliptic(),
                fingerprint,
            })
            .collect();
        classes.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
        CensusReport {
            samples: config.samples,
            seed: config.seed,
            power_closure: config.power_closure,
            group_order: order.to_string(),
            distinct_fingerprints: classes.len(),
            elliptic_fingerprints: classes.iter().filter(|c| c.elliptic).count(),
            classes,
        }
    }

    /// `count` random conjugates g w g^{-1} with uniform g, deterministic
    /// in the seed.
    pub fn random_conjugates(&self, w: &[u16], count: usize, seed: u64) -> Vec<Perm> {
        let chain = self.bsgs();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.conjugate(&chain.sample(&mut rng), w)).collect()
    }

    /// Minimal length over the conjugacy class of `w`, by descent: explore
    /// the plateau of equal-length conjugates under x -> s_i x s_i; on any
    /// strict length drop restart from the smaller element; a plateau that
    /// closes without a drop is the minimal-length stratum (cyclic-shift
    /// theory guarantees a drop exists whenever the plateau is not minimal,
    /// and that the minimal plateau is connected by equal-length moves).
    pub fn min_length_descent(&self, w: &[u16], cap: usize) -> Result<DescentOutcome> {
        let start_length = self.length(w);
        let mut current: Perm = w.to_vec().into();
        let mut descent_steps = 0usize;
        let mut explored = 0usize;
        'descend: loop {
            let cur_len = self.length(&current);
            let mut visited: HashSet<Perm> = HashSet::new();
            visited.insert(current.clone());
            let mut queue: VecDeque<Perm> = VecDeque::new();
            queue.push_back(current.clone());
            while let Some(x) = queue.pop_front() {
                for i in 0..self.rank() {
                    let y = self.conjugate_by_simple(i, &x);
                    let ly = self.length(&y);
                    if ly < cur_len {
                        explored += visited.len();
                        current = y;
                        descent_steps += 1;
                        continue 'descend;
                    }
                    if ly == cur_len && !visited.contains(&y) {
                        if explored + visited.len() >= cap {
                            return Err(Error::Resource {
                                what: "descent states",
                                limit: cap as u128,
                                partial: (explored + visited.len()) as u128,
                            });
                        }
                        visited.insert(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            // Plateau closed without any drop: this is the minimum.
            explored += visited.len();
            let witness = visited.iter().min().expect("plateau nonempty").clone();
            return Ok(DescentOutcome {
                start_length,
                min_length: cur_len,
                witness,
                plateau_size: visited.len(),
                descent_steps,
                explored,
            });
        }
    }
}

//! Symmetrized Cartan data: the exact bilinear form a root system is built
//! from, specified either by a simply-laced graph or directly as a Gram
//! matrix.
//!
//! For a graph on nodes 1..n the form is (a_i, a_i) = 2 and
//! (a_i, a_j) = -(number of edges between i and j). Positive-definiteness is
//! certified exactly through leading principal minors, and a failure reports
//! the first non-positive minor.

use crate::error::{Error, Result};
use crate::linalg::{leading_principal_minors, Integers, Mat};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The finite types this crate constructs, with Bourbaki node numbering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LieType {
    /// A_n, n >= 1: a path.
    A(usize),
    /// D_n, n >= 4: a path with a fork at the end.
    D(usize),
    E6,
    E7,
    E8,
    /// B2 = C2, the one non-simply-laced type supported; node 1 short, node 2 long.
    B2,
}

impl LieType {
    pub fn rank(self) -> usize {
        match self {
            LieType::A(n) => n,
            LieType::D(n) => n,
            LieType::E6 => 6,
            LieType::E7 => 7,
            LieType::E8 => 8,
            LieType::B2 => 2,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        match self {
            LieType::A(n) => n * (n + 1) / 2,
            LieType::D(n) => n * (n - 1),
            LieType::E6 => 36,
            LieType::E7 => 63,
            LieType::E8 => 120,
            LieType::B2 => 4,
        }
    }

    /// Edges of the Dynkin graph, 0-indexed. Simply-laced types only;
    /// B2 carries its form directly in [`CartanDatum::new`].
    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            LieType::A(n) => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            LieType::D(n) => {
                // Path 0-1-...-(n-3), fork to n-2 and n-1.
                let mut e: Vec<(usize, usize)> =
                    (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            // E8 nodes (Bourbaki): chain 1-3-4-5-6-7-8 with 2 attached to 4.
            // Zero-indexed: chain 0-2-3-4-5-6-7, node 1 attached to node 3.
            LieType::E8 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
            LieType::E7 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
            LieType::E6 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
            LieType::B2 => unreachable!("B2 is not built from a graph"),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieType::A(n) => write!(f, "A{n}"),
            LieType::D(n) => write!(f, "D{n}"),
            LieType::E6 => write!(f, "E6"),
            LieType::E7 => write!(f, "E7"),
            LieType::E8 => write!(f, "E8"),
            LieType::B2 => write!(f, "B2"),
        }
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.is_ascii() || s.len() < 2 {
            return Err(Error::argument(format!(
                "cannot parse Lie type {s:?} (expected a family letter and a rank)"
            )));
        }
        let (family, rank) = s.split_at(1);
        let n: usize = rank
            .parse()
            .map_err(|_| Error::argument(format!("cannot parse Lie type {s:?}")))?;
        match (family, n) {
            ("A" | "a", n) if n >= 1 => Ok(LieType::A(n)),
            ("D" | "d", n) if n >= 4 => Ok(LieType::D(n)),
            ("E" | "e", 6) => Ok(LieType::E6),
            ("E" | "e", 7) => Ok(LieType::E7),
            ("E" | "e", 8) => Ok(LieType::E8),
            ("B" | "b" | "C" | "c", 2) => Ok(LieType::B2),
            _ => Err(Error::argument(format!(
                "unsupported Lie type {s:?} (supported: A1.., D4.., E6, E7, E8, B2)"
            ))),
        }
    }
}

/// A rank, a symmetric integer Gram matrix, and a positive-definiteness
/// certificate (computed once at construction).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanDatum {
    rank: usize,
    /// Symmetric Gram matrix of the simple roots, row-major.
    gram: Vec<i64>,
    lie_type: Option<LieType>,
}

impl CartanDatum {
    /// Build from an explicit symmetric Gram matrix.
    pub fn from_gram(gram: Mat<Integers>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::argument("Gram matrix must be square"));
        }
        let rank = gram.rows();
        if rank == 0 {
            return Err(Error::argument("Gram matrix must be nonempty"));
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::argument(format!(
                        "Gram matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        // Positive-definite iff every leading principal minor is positive
        // (Sylvester). Bareiss pivots are exactly these minors.
        match leading_principal_minors(&gram) {
            Some(minors) => {
                if let Some((k, &value)) = minors.iter().enumerate().find(|(_, &m)| m <= 0) {
                    return Err(Error::NotPositiveDefinite {
                        minor_size: k + 1,
                        minor_value: value,
                    });
                }
            }
            None => {
                // A zero pivot interrupted the sweep; the failing leading
                // minor is located by direct determinants of the corners.
                for k in 1..=rank {
                    let corner = Mat::from_rows(
                        Integers,
                        (0..k)
                            .map(|i| (0..k).map(|j| *gram.get(i, j)).collect())
                            .collect(),
                    )?;
                    let d = crate::linalg::det_i64(&corner);
                    if d <= 0 {
                        return Err(Error::NotPositiveDefinite {
                            minor_size: k,
                            minor_value: d,
                        });
                    }
                }
                unreachable!("Bareiss failed but all leading minors positive");
            }
        }
        let data = (0..rank)
            .flat_map(|i| (0..rank).map(move |j| (i, j)))
            .map(|(i, j)| *gram.get(i, j))
            .collect();
        Ok(CartanDatum { rank, gram: data, lie_type: None })
    }

    /// Build from a simply-laced graph given as an edge list (0-indexed,
    /// multi-edges allowed and counted).
    pub fn from_graph(rank: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::argument("graph must have at least one node"));
        }
        let mut gram = vec![0i64; rank * rank];
        for i in 0..rank {
            gram[i * rank + i] = 2;
        }
        for &(a, b) in edges {
            if a >= rank || b >= rank {
                return Err(Error::argument(format!(
                    "edge ({a}, {b}) out of range for rank {rank}"
                )));
            }
            if a == b {
                return Err(Error::argument(format!("loop at node {a} not allowed")));
            }
            gram[a * rank + b] -= 1;
            gram[b * rank + a] -= 1;
        }
        let mat = Mat::from_rows(
            Integers,
            (0..rank)
                .map(|i| gram[i * rank..(i + 1) * rank].to_vec())
                .collect(),
        )?;
        Self::from_gram(mat)
    }

    /// The canonical datum for a named finite type.
    pub fn for_type(t: LieType) -> Self {
        let mut datum = match t {
            LieType::B2 => {
                // Short root a1 with (a1,a1)=2, long root a2 with (a2,a2)=4,
                // (a1,a2)=-2; Cartan integers <a1,a2^v>=-1, <a2,a1^v>=-2.
                let gram =
                    Mat::from_rows(Integers, vec![vec![2, -2], vec![-2, 4]]).unwrap();
                CartanDatum::from_gram(gram).expect("B2 form is positive-definite")
            }
            simply_laced => CartanDatum::from_graph(t.rank(), &simply_laced.edges())
                .expect("finite-type graphs give positive-definite forms"),
        };
        datum.lie_type = Some(t);
        datum
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lie_type(&self) -> Option<LieType> {
        self.lie_type
    }

    /// (a_i, a_j) for simple roots.
    #[inline]
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.rank + j]
    }

    /// Bilinear form of two coordinate vectors (coefficients over the simple
    /// roots), exactly: (u, v) = u^T G v.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        debug_assert_eq!(u.len(), self.rank);
        debug_assert_eq!(v.len(), self.rank);
        let mut total = 0i64;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let mut row = 0i64;
            for (j, &vj) in v.iter().enumerate() {
                row += self.gram[i * self.rank + j] * vj;
            }
            total += ui * row;
        }
        total
    }

    /// The Gram matrix as a fresh integer matrix.
    pub fn gram_matrix(&self) -> Mat<Integers> {
        Mat::from_rows(
            Integers,
            (0..self.rank)
                .map(|i| self.gram[i * self.rank..(i + 1) * self.rank].to_vec())
                .collect(),
        )
        .expect("stored Gram data is rectangular")
    }

    /// Flat row-major Gram entries (used for cache keying).
    pub fn gram_entries(&self) -> &[i64] {
        &self.gram
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_gram_is_positive_definite_with_determinant_one() {
        let d = CartanDatum::for_type(LieType::E8);
        assert_eq!(d.rank(), 8);
        let minors = leading_principal_minors(&d.gram_matrix()).unwrap();
        assert!(minors.iter().all(|&m| m > 0));
        // E8 is the unimodular one.
        assert_eq!(*minors.last().unwrap(), 1);
    }

    #[test]
    fn affine_graph_is_rejected_with_failing_minor() {
        // A cycle on 3 nodes is affine A2~: determinant 0.
        let err = CartanDatum::from_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        match err {
            Error::NotPositiveDefinite { minor_size, minor_value } => {
                assert_eq!(minor_size, 3);
                assert_eq!(minor_value, 0);
            }
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }

    #[test]
    fn doubled_edge_is_rejected() {
        // Two edges between two nodes: Gram [[2,-2],[-2,2]], det 0 (affine A1~).
        let err = CartanDatum::from_graph(2, &[(0, 1), (0, 1)]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { minor_size: 2, minor_value: 0 }));
    }

    #[test]
    fn b2_pairings() {
        let d = CartanDatum::for_type(LieType::B2);
        assert_eq!(d.pairing(0, 0), 2);
        assert_eq!(d.pairing(1, 1), 4);
        assert_eq!(d.pairing(0, 1), -2);
        // Cartan integers 2(a_i,a_j)/(a_j,a_j).
        assert_eq!(2 * d.pairing(0, 1) / d.pairing(1, 1), -1);
        assert_eq!(2 * d.pairing(1, 0) / d.pairing(0, 0), -2);
    }

    #[test]
    fn lie_type_round_trip() {
        for s in ["A1", "A7", "D4", "E6", "E7", "E8", "B2"] {
            let t: LieType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("E9".parse::<LieType>().is_err());
        assert!("D3".parse::<LieType>().is_err());
        assert!("Z5".parse::<LieType>().is_err());
        assert!("".parse::<LieType>().is_err());
        assert!("A".parse::<LieType>().is_err());
        assert!("É8".parse::<LieType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(LieType::A(1).positive_root_count(), 1);
        assert_eq!(LieType::A(2).positive_root_count(), 3);
        assert_eq!(LieType::D(4).positive_root_count(), 12);
        assert_eq!(LieType::E6.positive_root_count(), 36);
        assert_eq!(LieType::E7.positive_root_count(), 63);
        assert_eq!(LieType::E8.positive_root_count(), 120);
        assert_eq!(LieType::B2.positive_root_count(), 4);
    }
}

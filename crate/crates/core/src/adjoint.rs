//! The adjoint module of a simply-laced root system and the unipotent
//! automorphisms it carries.
//!
//! The module has one basis vector `X_a` per root `a` (stored in canonical
//! root order, positives first) followed by one basis vector `t_i` per node
//! of the graph, so its dimension is `|R| + rank` — 248 for the largest
//! exceptional type. For each node `i` and direction `e ∈ {+1, −1}` there is
//! a shift operator `E` acting by
//!
//!   X_a   ↦ X_{a+e·a_i}          if a + e·a_i is a root,
//!   X_a   ↦ t_i                  if a + e·a_i = 0 (i.e. a = −e·a_i),
//!   X_a   ↦ 0                    otherwise,
//!   t_j   ↦ |(a_i, a_j)| · X_{e·a_i},
//!
//! with every structure constant taken positive. All entries lie in
//! {0, 1, 2}, the cube of every operator vanishes, and the square is even
//! entrywise, so the truncated exponential
//!
//!   exp(λE) = I + λE + λ²·(E²/2)
//!
//! makes sense over any scalar ring once `E²/2` is computed by exact integer
//! halving — in particular over F_2. Closures of the groups generated by
//! these exponentials over small prime fields are enumerable here for
//! rank ≤ 3; beyond that the group order grows like p^dim and enumeration
//! is refused.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cartan::LieType;
use crate::error::{Error, Result};
use crate::linalg::{Integers, Mat, PrimeField, Ring};
use crate::roots::RootSystem;

/// Largest rank for which closure enumeration over a prime field is
/// attempted; above it the group order (~p^dim) is out of desk range.
pub const CLOSURE_RANK_LIMIT: usize = 3;

/// Default cap on the number of closure elements enumerated.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Version tag for serialized operator documents.
pub const OPERATOR_DOCUMENT_VERSION: u32 = 1;

/// The adjoint module: basis `X_a` for each root `a` (canonical order),
/// then `t_i` for each node `i`.
#[derive(Debug)]
pub struct AdjointModule {
    roots: RootSystem,
}

/// One shift operator, as an exact integer matrix on the module,
/// labelled by its node and direction.
#[derive(Debug, Clone)]
pub struct AdjointOperator {
    node: usize,
    direction: i8,
    mat: Mat<Integers>,
}

/// Serializable form of a shift operator: dimensions and the row-major
/// entry list, all exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub format_version: u32,
    pub dim: usize,
    pub node: usize,
    pub direction: i8,
    pub entries: Vec<i64>,
}

impl AdjointModule {
    /// Build the module over `roots`. Requires a simply-laced system: all
    /// diagonal Gram entries 2 and all off-diagonal entries 0 or −1.
    pub fn new(roots: RootSystem) -> Result<Self> {
        let rank = roots.rank();
        for i in 0..rank {
            for j in 0..rank {
                let v = roots.datum().pairing(i, j);
                let ok = if i == j { v == 2 } else { v == 0 || v == -1 };
                if !ok {
                    return Err(Error::unsupported(format!(
                        "adjoint module requires a simply-laced system \
                         (all roots of one length); Gram entry ({i},{j}) = {v}"
                    )));
                }
            }
        }
        Ok(AdjointModule { roots })
    }

    /// Build the module for a named type.
    pub fn for_type(t: LieType) -> Result<Self> {
        AdjointModule::new(RootSystem::for_type(t))
    }

    /// The underlying root system.
    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    /// Module dimension: number of roots plus rank.
    pub fn dim(&self) -> usize {
        self.roots.num_roots() + self.roots.rank()
    }

    /// Basis index of `X_a` for root index `a`.
    pub fn x_index(&self, root: u16) -> usize {
        root as usize
    }

    /// Basis index of `t_i` for node `i`.
    pub fn t_index(&self, node: usize) -> usize {
        assert!(node < self.roots.rank(), "node index out of range");
        self.roots.num_roots() + node
    }

    /// Dimension of the span of `{X_a : a positive}` — the sub-basis
    /// occupying indices `0..mplus_dim()`.
    pub fn mplus_dim(&self) -> usize {
        self.roots.num_positive()
    }

    /// The shift operator for `node` in `direction` (+1 or −1).
    pub fn shift_operator(&self, node: usize, direction: i8) -> AdjointOperator {
        assert!(direction == 1 || direction == -1, "direction must be +1 or -1");
        assert!(node < self.roots.rank(), "node index out of range");
        let rs = &self.roots;
        let dim = self.dim();
        let simple = rs.simple_root_index(node);
        let target_x = if direction == 1 { simple } else { rs.negation(simple) };
        let mut mat = Mat::zeros(Integers, dim, dim);
        // Columns of X_a: shift the root by direction · a_node.
        for a in 0..rs.num_roots() as u16 {
            let mut shifted: Vec<i16> = rs.root(a).to_vec();
            for (c, &s) in shifted.iter_mut().zip(rs.root(simple)) {
                *c += direction as i16 * s;
            }
            if shifted.iter().all(|&c| c == 0) {
                mat.set(self.t_index(node), self.x_index(a), 1);
            } else if let Some(b) = rs.index_of(&shifted) {
                mat.set(self.x_index(b), self.x_index(a), 1);
            }
        }
        // Columns of t_j: |(a_node, a_j)| times X_{direction · a_node}.
        for j in 0..rs.rank() {
            let c = rs.datum().pairing(node, j).abs();
            if c != 0 {
                mat.set(self.x_index(target_x), self.t_index(j), c);
            }
        }
        AdjointOperator { node, direction, mat }
    }

    /// All `2 · rank` shift operators, node-major, +1 before −1.
    pub fn shift_operators(&self) -> Vec<AdjointOperator> {
        let mut out = Vec::with_capacity(2 * self.roots.rank());
        for node in 0..self.roots.rank() {
            out.push(self.shift_operator(node, 1));
            out.push(self.shift_operator(node, -1));
        }
        out
    }

    /// Whether `m` maps the span of `{X_a : a positive}` into itself.
    pub fn stabilizes_mplus(&self, m: &Mat<Integers>) -> bool {
        let n_pos = self.mplus_dim();
        for col in 0..n_pos {
            for row in n_pos..self.dim() {
                if *m.get(row, col) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Consistency check of the commutation structure at `node`:
    /// `H = E₊E₋ − E₋E₊` must act on `X_a` as the scalar `(a, a_node)` and
    /// kill every `t_j`; additionally the raising operators of `node` and
    /// any node orthogonal to it must commute.
    pub fn sl2_check(&self, node: usize) -> Result<()> {
        let rs = &self.roots;
        let e_plus = self.shift_operator(node, 1);
        let e_minus = self.shift_operator(node, -1);
        let pm = e_plus.mat.mul(&e_minus.mat).expect("square matrices");
        let mp = e_minus.mat.mul(&e_plus.mat).expect("square matrices");
        let h = pm.sub(&mp).expect("same shape");
        let simple = rs.simple_root_index(node);
        for a in 0..rs.num_roots() as u16 {
            let expected = rs.form_roots(a, simple);
            let col = self.x_index(a);
            for row in 0..self.dim() {
                let want = if row == col { expected } else { 0 };
                if *h.get(row, col) != want {
                    return Err(Error::integrity(format!(
                        "sl2 check failed at node {node}: H(X_{a}) has entry {} \
                         in row {row}, expected {want}",
                        h.get(row, col)
                    )));
                }
            }
        }
        for j in 0..rs.rank() {
            let col = self.t_index(j);
            for row in 0..self.dim() {
                if *h.get(row, col) != 0 {
                    return Err(Error::integrity(format!(
                        "sl2 check failed at node {node}: H(t_{j}) is nonzero in row {row}"
                    )));
                }
            }
        }
        for j in 0..rs.rank() {
            if j == node || rs.datum().pairing(node, j) != 0 {
                continue;
            }
            let other = self.shift_operator(j, 1);
            let ab = e_plus.mat.mul(&other.mat).expect("square matrices");
            let ba = other.mat.mul(&e_plus.mat).expect("square matrices");
            if ab != ba {
                return Err(Error::integrity(format!(
                    "raising operators at orthogonal nodes {node} and {j} do not commute"
                )));
            }
        }
        Ok(())
    }

    /// Order of the group generated by all `exp(λE)` over F_p, found by
    /// breadth-first closure under multiplication. Refused for rank above
    /// [`CLOSURE_RANK_LIMIT`]; errs with the partial count if `cap` is hit.
    pub fn chevalley_closure_order(&self, p: u32, cap: usize) -> Result<u64> {
        Ok(self.closure_elements(p, cap)?.len() as u64)
    }

    /// The closure elements themselves, in deterministic discovery order,
    /// each a row-major byte matrix mod `p`.
    pub(crate) fn closure_elements(&self, p: u32, cap: usize) -> Result<Vec<Box<[u8]>>> {
        let rank = self.roots.rank();
        if rank > CLOSURE_RANK_LIMIT {
            return Err(Error::unsupported(format!(
                "closure enumeration is limited to rank ≤ {CLOSURE_RANK_LIMIT}: \
                 at rank {rank} the group order grows like {p}^{}",
                self.dim()
            )));
        }
        let field = PrimeField::new(p)?;
        if p > 251 {
            return Err(Error::argument("closure enumeration requires p ≤ 251"));
        }
        let dim = self.dim();
        let mut gens: Vec<Box<[u8]>> = Vec::new();
        for op in self.shift_operators() {
            for lambda in 1..p {
                let m = op.exp_in(field.clone(), &lambda)?;
                let bytes: Vec<u8> = (0..dim * dim)
                    .map(|k| *m.get(k / dim, k % dim) as u8)
                    .collect();
                gens.push(bytes.into_boxed_slice());
            }
        }
        let identity: Box<[u8]> = (0..dim * dim)
            .map(|k| u8::from(k / dim == k % dim))
            .collect();
        let mut seen: HashSet<Box<[u8]>> = HashSet::new();
        let mut order: Vec<Box<[u8]>> = Vec::new();
        seen.insert(identity.clone());
        order.push(identity);
        let mut head = 0;
        while head < order.len() {
            let current = order[head].clone();
            head += 1;
            for g in &gens {
                let prod = mul_mod_bytes(&current, g, dim, p);
                if !seen.contains(&prod) {
                    if order.len() >= cap {
                        return Err(Error::Resource {
                            what: "closure elements",
                            limit: cap as u128,
                            partial: order.len() as u128,
                        });
                    }
                    seen.insert(prod.clone());
                    order.push(prod);
                }
            }
        }
        Ok(order)
    }
}

/// Row-major byte matrix product mod `p`.
fn mul_mod_bytes(a: &[u8], b: &[u8], n: usize, p: u32) -> Box<[u8]> {
    let mut acc = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k] as u32;
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                acc[i * n + j] += aik * b[k * n + j] as u32;
            }
        }
    }
    acc.into_iter().map(|v| (v % p) as u8).collect()
}

impl AdjointOperator {
    /// Node label of the operator.
    pub fn node(&self) -> usize {
        self.node
    }

    /// Direction label, +1 or −1.
    pub fn direction(&self) -> i8 {
        self.direction
    }

    /// The exact integer matrix.
    pub fn matrix(&self) -> &Mat<Integers> {
        &self.mat
    }

    /// Whether the cube of the operator is the zero matrix.
    pub fn cube_is_zero(&self) -> bool {
        let sq = self.mat.mul(&self.mat).expect("square matrix");
        sq.mul(&self.mat).expect("square matrix").is_zero()
    }

    /// `E²/2` by exact integer halving; an odd entry in `E²` signals a
    /// violated structure property and is reported as an integrity error.
    pub fn half_square(&self) -> Result<Mat<Integers>> {
        let sq = self.mat.mul(&self.mat).expect("square matrix");
        let n = sq.rows();
        let mut out = Mat::zeros(Integers, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = *sq.get(i, j);
                if v % 2 != 0 {
                    return Err(Error::integrity(format!(
                        "operator square has odd entry {v} at ({i},{j}); \
                         the halved exponential is not defined"
                    )));
                }
                out.set(i, j, v / 2);
            }
        }
        Ok(out)
    }

    /// `exp(λE) = I + λE + λ²·(E²/2)` over the scalar ring `S`, with the
    /// halving done exactly over the integers first (so F_2 is fine).
    /// Checks `E³ = 0` and the evenness of `E²`.
    pub fn exp_in<S: Ring>(&self, ring: S, lambda: &S::Elem) -> Result<Mat<S>> {
        if !self.cube_is_zero() {
            return Err(Error::integrity("operator cube is nonzero; exponential not truncatable"));
        }
        let half = self.half_square()?;
        let n = self.mat.rows();
        let e = self.mat.map_into(ring.clone(), |&v| v);
        let h = half.map_into(ring.clone(), |&v| v);
        let lam_sq = ring.mul(lambda, lambda);
        let total = Mat::identity(ring.clone(), n)
            .add(&e.scale(lambda))
            .expect("same shape")
            .add(&h.scale(&lam_sq))
            .expect("same shape");
        Ok(total)
    }

    /// Serializable document form.
    pub fn document(&self) -> OperatorDocument {
        let n = self.mat.rows();
        let entries = (0..n * n).map(|k| *self.mat.get(k / n, k % n)).collect();
        OperatorDocument {
            format_version: OPERATOR_DOCUMENT_VERSION,
            dim: n,
            node: self.node,
            direction: self.direction,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_i64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Adjoint group order of type A_{n} over F_q:
    /// q^{n(n+1)/2} · ∏_{k=2}^{n+1} (q^k − 1) / gcd(n+1, q−1).
    fn a_type_adjoint_order(n: u32, q: u64) -> u64 {
        let mut order = q.pow(n * (n + 1) / 2);
        for k in 2..=n + 1 {
            order *= q.pow(k) - 1;
        }
        order / gcd(u64::from(n) + 1, q - 1)
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn module_dimensions() {
        assert_eq!(AdjointModule::for_type(LieType::E8).unwrap().dim(), 248);
        assert_eq!(AdjointModule::for_type(LieType::E8).unwrap().mplus_dim(), 120);
        assert_eq!(AdjointModule::for_type(LieType::A(1)).unwrap().dim(), 3);
        assert_eq!(AdjointModule::for_type(LieType::A(2)).unwrap().dim(), 8);
    }

    #[test]
    fn non_simply_laced_is_refused() {
        let err = AdjointModule::for_type(LieType::B2).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "got {err}");
        assert!(err.to_string().contains("simply-laced"));
    }

    #[test]
    fn shift_operator_columns_match_the_defining_cases() {
        let m = AdjointModule::for_type(LieType::A(2)).unwrap();
        let rs = m.roots();
        for node in 0..2 {
            for dir in [1i8, -1] {
                let op = m.shift_operator(node, dir);
                let simple = rs.simple_root_index(node);
                let minus = if dir == 1 { rs.negation(simple) } else { simple };
                // X_{−dir·a_node} ↦ t_node with coefficient 1.
                assert_eq!(*op.matrix().get(m.t_index(node), m.x_index(minus)), 1);
                // t_node ↦ 2·X_{dir·a_node}.
                let target = if dir == 1 { simple } else { rs.negation(simple) };
                assert_eq!(*op.matrix().get(m.x_index(target), m.t_index(node)), 2);
                // Every entry is 0, 1, or 2, and each column has at most one
                // nonzero among X-rows and at most one among t-rows.
                for col in 0..m.dim() {
                    let mut x_hits = 0;
                    let mut t_hits = 0;
                    for row in 0..m.dim() {
                        let v = *op.matrix().get(row, col);
                        assert!((0..=2).contains(&v), "entry {v} out of range");
                        if v != 0 {
                            if row < rs.num_roots() {
                                x_hits += 1;
                            } else {
                                t_hits += 1;
                            }
                        }
                    }
                    assert!(x_hits <= 1 && t_hits <= 1);
                }
            }
        }
    }

    #[test]
    fn non_adjacent_t_column_is_zero() {
        // Nodes 0 and 3 of A4 are non-adjacent, so |(a_0, a_3)| = 0.
        let m = AdjointModule::for_type(LieType::A(4)).unwrap();
        let op = m.shift_operator(0, 1);
        let col = m.t_index(3);
        for row in 0..m.dim() {
            assert_eq!(*op.matrix().get(row, col), 0);
        }
    }

    #[test]
    fn cube_vanishes_and_square_is_even_for_every_small_type() {
        for t in [
            LieType::A(1),
            LieType::A(2),
            LieType::A(3),
            LieType::A(5),
            LieType::D(4),
            LieType::D(5),
            LieType::E6,
        ] {
            let m = AdjointModule::for_type(t).unwrap();
            for op in m.shift_operators() {
                assert!(op.cube_is_zero(), "cube nonzero for {t}");
                op.half_square().unwrap();
            }
        }
    }

    #[test]
    fn cube_vanishes_and_square_is_even_for_the_large_types() {
        for t in [LieType::A(8), LieType::D(8), LieType::E7, LieType::E8] {
            let m = AdjointModule::for_type(t).unwrap();
            for op in m.shift_operators() {
                assert!(op.cube_is_zero(), "cube nonzero for {t}");
                op.half_square().unwrap();
            }
        }
    }

    #[test]
    fn half_square_is_the_one_step_chain_through_t() {
        // The only length-2 chain is X_{−e·a_i} → t_i → 2·X_{e·a_i}, so E²/2
        // maps X_{−e·a_i} to X_{e·a_i} and kills everything else.
        let m = AdjointModule::for_type(LieType::E8).unwrap();
        let rs = m.roots();
        for node in [0usize, 4, 7] {
            for dir in [1i8, -1] {
                let op = m.shift_operator(node, dir);
                let half = op.half_square().unwrap();
                let simple = rs.simple_root_index(node);
                let (source, target) = if dir == 1 {
                    (rs.negation(simple), simple)
                } else {
                    (simple, rs.negation(simple))
                };
                for col in 0..m.dim() {
                    for row in 0..m.dim() {
                        let want = i64::from(
                            col == m.x_index(source) && row == m.x_index(target),
                        );
                        assert_eq!(*half.get(row, col), want, "at ({row},{col})");
                    }
                }
            }
        }
    }

    #[test]
    fn exponentials_invert_and_compose_over_small_prime_fields() {
        for t in [LieType::A(1), LieType::A(2), LieType::A(3)] {
            let m = AdjointModule::for_type(t).unwrap();
            for p in [2u32, 3, 5] {
                let field = PrimeField::new(p).unwrap();
                for op in m.shift_operators() {
                    for lambda in field.elements() {
                        for mu in field.elements() {
                            let a = op.exp_in(field.clone(), &lambda).unwrap();
                            let b = op.exp_in(field.clone(), &mu).unwrap();
                            let sum = field.add(&lambda, &mu);
                            let c = op.exp_in(field.clone(), &sum).unwrap();
                            assert_eq!(a.mul(&b).unwrap(), c, "{t}, p={p}");
                        }
                    }
                    // exp(λE)·exp(−λE) = I.
                    for lambda in field.elements() {
                        let a = op.exp_in(field.clone(), &lambda).unwrap();
                        let b = op.exp_in(field.clone(), &field.neg(&lambda)).unwrap();
                        let id = Mat::identity(field.clone(), m.dim());
                        assert_eq!(a.mul(&b).unwrap(), id);
                    }
                }
            }
        }
    }

    #[test]
    fn exponentials_compose_on_the_largest_type() {
        let m = AdjointModule::for_type(LieType::E8).unwrap();
        let field = PrimeField::new(2).unwrap();
        for node in [0usize, 7] {
            for dir in [1i8, -1] {
                let op = m.shift_operator(node, dir);
                let a = op.exp_in(field.clone(), &1).unwrap();
                let sq = a.mul(&a).unwrap();
                // Over F_2, exp(E)² = exp(2E) = I.
                assert_eq!(sq, Mat::identity(field.clone(), m.dim()));
            }
        }
    }

    #[test]
    fn exponentials_are_unipotent_over_the_integers() {
        for t in [LieType::A(2), LieType::A(3), LieType::D(4)] {
            let m = AdjointModule::for_type(t).unwrap();
            for op in m.shift_operators() {
                for lambda in [1i64, 2, -3] {
                    let g = op.exp_in(Integers, &lambda).unwrap();
                    assert_eq!(det_i64(&g), 1, "{t}");
                }
            }
        }
        // Spot-check the 248-dimensional case.
        let m = AdjointModule::for_type(LieType::E8).unwrap();
        for op in [m.shift_operator(0, 1), m.shift_operator(3, -1)] {
            let g = op.exp_in(Integers, &1).unwrap();
            assert_eq!(det_i64(&g), 1);
        }
    }

    #[test]
    fn sl2_identities_hold_for_every_node() {
        for t in [LieType::A(1), LieType::A(3), LieType::D(4), LieType::E6] {
            let m = AdjointModule::for_type(t).unwrap();
            for node in 0..m.roots().rank() {
                m.sl2_check(node).unwrap();
            }
        }
    }

    #[test]
    fn sl2_identities_hold_on_the_largest_type() {
        let m = AdjointModule::for_type(LieType::E8).unwrap();
        for node in 0..8 {
            m.sl2_check(node).unwrap();
        }
    }

    #[test]
    fn rank_one_commutator_diagonal() {
        // In basis (X_a, X_{−a}, t): H = diag(2, −2, 0).
        let m = AdjointModule::for_type(LieType::A(1)).unwrap();
        let plus = m.shift_operator(0, 1);
        let minus = m.shift_operator(0, -1);
        let h = plus
            .matrix()
            .mul(minus.matrix())
            .unwrap()
            .sub(&minus.matrix().mul(plus.matrix()).unwrap())
            .unwrap();
        let expected = Mat::from_rows(
            Integers,
            vec![vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, 0]],
        )
        .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn raising_stabilizes_mplus_and_lowering_does_not() {
        for t in [LieType::A(2), LieType::E8] {
            let m = AdjointModule::for_type(t).unwrap();
            for node in 0..m.roots().rank() {
                assert!(m.stabilizes_mplus(m.shift_operator(node, 1).matrix()));
                assert!(!m.stabilizes_mplus(m.shift_operator(node, -1).matrix()));
            }
            assert!(m.stabilizes_mplus(&Mat::zeros(Integers, m.dim(), m.dim())));
        }
    }

    #[test]
    fn closure_orders_match_the_adjoint_group_formula() {
        let a1 = AdjointModule::for_type(LieType::A(1)).unwrap();
        assert_eq!(a1.chevalley_closure_order(2, 100).unwrap(), a_type_adjoint_order(1, 2));
        assert_eq!(a_type_adjoint_order(1, 2), 6);
        assert_eq!(a1.chevalley_closure_order(3, 100).unwrap(), a_type_adjoint_order(1, 3));
        assert_eq!(a_type_adjoint_order(1, 3), 12);
        assert_eq!(a1.chevalley_closure_order(5, 100).unwrap(), a_type_adjoint_order(1, 5));
        assert_eq!(a_type_adjoint_order(1, 5), 60);

        let a2 = AdjointModule::for_type(LieType::A(2)).unwrap();
        assert_eq!(a2.chevalley_closure_order(2, 1000).unwrap(), a_type_adjoint_order(2, 2));
        assert_eq!(a_type_adjoint_order(2, 2), 168);
    }

    #[test]
    fn larger_closures_match_the_adjoint_group_formula() {
        let a2 = AdjointModule::for_type(LieType::A(2)).unwrap();
        assert_eq!(a2.chevalley_closure_order(3, 10_000).unwrap(), a_type_adjoint_order(2, 3));
        assert_eq!(a_type_adjoint_order(2, 3), 5616);

        let a3 = AdjointModule::for_type(LieType::A(3)).unwrap();
        assert_eq!(a3.chevalley_closure_order(2, 25_000).unwrap(), a_type_adjoint_order(3, 2));
        assert_eq!(a_type_adjoint_order(3, 2), 20160);
    }

    #[test]
    fn closure_is_closed_under_inversion() {
        let m = AdjointModule::for_type(LieType::A(2)).unwrap();
        let p = 2u32;
        let elements = m.closure_elements(p, 1000).unwrap();
        let seen: HashSet<&[u8]> = elements.iter().map(|e| e.as_ref()).collect();
        let field = PrimeField::new(p).unwrap();
        let dim = m.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
        for _ in 0..100 {
            let e = &elements[rng.random_range(0..elements.len())];
            let mat = Mat::from_rows(
                field.clone(),
                (0..dim).map(|i| (0..dim).map(|j| e[i * dim + j] as u32).collect()).collect(),
            )
            .unwrap();
            let inv = mat.inverse().expect("closure elements are invertible");
            let key: Box<[u8]> =
                (0..dim * dim).map(|k| *inv.get(k / dim, k % dim) as u8).collect();
            assert!(seen.contains(key.as_ref()), "inverse escaped the closure");
        }
    }

    #[test]
    fn closure_cap_is_reported_with_partial_count() {
        let m = AdjointModule::for_type(LieType::A(2)).unwrap();
        let err = m.chevalley_closure_order(2, 100).unwrap_err();
        match err {
            Error::Resource { what, limit, partial } => {
                assert_eq!(what, "closure elements");
                assert_eq!(limit, 100);
                assert_eq!(partial, 100);
            }
            other => panic!("expected resource error, got {other}"),
        }
    }

    #[test]
    fn closure_is_refused_beyond_the_rank_limit() {
        let m = AdjointModule::for_type(LieType::E8).unwrap();
        let err = m.chevalley_closure_order(2, 1000).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "got {err}");
        // Generator matrices themselves still build and validate.
        let op = m.shift_operator(0, 1);
        let g = op.exp_in(PrimeField::new(2).unwrap(), &1).unwrap();
        assert!(g.inverse().is_some());
    }

    #[test]
    fn operator_document_roundtrip() {
        let m = AdjointModule::for_type(LieType::A(2)).unwrap();
        let op = m.shift_operator(1, -1);
        let doc = op.document();
        assert_eq!(doc.format_version, OPERATOR_DOCUMENT_VERSION);
        assert_eq!(doc.dim, 8);
        assert_eq!(doc.entries.len(), 64);
        let json = serde_json::to_string(&doc).unwrap();
        let back: OperatorDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }
}

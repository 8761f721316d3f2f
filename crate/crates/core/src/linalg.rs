//! Exact dense linear algebra over integers, rationals, and prime fields.
//!
//! The scalar ring is a value-level parameter of the matrix (the ring-object
//! pattern): a [`Mat<R>`] carries the `R` it was built over, so a prime field
//! with a runtime modulus and the integers share one matrix implementation.
//! No floating point anywhere.

use crate::error::{Error, Result};
use num_rational::Ratio;
use std::fmt;

/// A commutative ring presented as a value. Element arithmetic is exact.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map Z -> R.
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// A ring with exact division by nonzero elements.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The ring of integers with `i64` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Integers;

impl Ring for Integers {
    type Elem = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow in ring add")
    }
    fn sub(&self, a: &i64, b: &i64) -> i64 {
        a.checked_sub(*b).expect("integer overflow in ring sub")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow in ring mul")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn from_i64(&self, n: i64) -> i64 {
        n
    }
}

/// The rational numbers with `Ratio<i64>` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rationals;

pub type Rational = Ratio<i64>;

impl Ring for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Ratio::from_integer(0)
    }
    fn one(&self) -> Rational {
        Ratio::from_integer(1)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn from_i64(&self, n: i64) -> Rational {
        Ratio::from_integer(n)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if *a.numer() == 0 {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// A prime field F_p with a runtime modulus. Elements are reduced
/// representatives in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Construct F_p. The modulus must be prime; trial division suffices at
    /// the sizes this crate uses.
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::argument(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// All field elements, in order 0, 1, ..., p-1.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl Ring for PrimeField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = *a as u64;
        let mut e = self.p - 2;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(result as u32)
    }
}

/// Dense row-major matrix over a ring `R`.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Mat<R> {
    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Mat { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::argument("ragged rows in matrix literal"));
        }
        Ok(Mat {
            ring,
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(c, a)).collect();
        Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::argument("matrix product over different rings"));
        }
        if self.cols != other.rows {
            return Err(Error::argument(format!(
                "matrix product shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Mat::zeros(ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    let cur = out.get(i, j);
                    let sum = ring.add(cur, &prod);
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise map into another ring via the canonical integer lift.
    pub fn map_into<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> i64) -> Mat<S> {
        let data = self.data.iter().map(|e| target.from_i64(f(e))).collect();
        Mat { ring: target, rows: self.rows, cols: self.cols, data }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::argument("matrix shape or ring mismatch"));
        }
        Ok(())
    }
}

impl<R: Field> Mat<R> {
    /// Rank by Gaussian elimination. Consumes a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let pivot = (rank..work.rows).find(|&r| !work.ring.is_zero(work.get(r, col)));
            let Some(pr) = pivot else { continue };
            work.swap_rows(rank, pr);
            let inv = work.ring.inv(work.get(rank, col)).expect("nonzero pivot");
            for j in col..work.cols {
                let v = work.ring.mul(work.get(rank, j), &inv);
                work.set(rank, j, v);
            }
            for r in 0..work.rows {
                if r != rank && !work.ring.is_zero(work.get(r, col)) {
                    let factor = work.get(r, col).clone();
                    for j in col..work.cols {
                        let sub = work.ring.mul(&factor, work.get(rank, j));
                        let v = work.ring.sub(work.get(r, j), &sub);
                        work.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the null space.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right null space, one row per basis vector.
    pub fn null_space(&self) -> Vec<Vec<R::Elem>> {
        let ring = self.ring.clone();
        let mut work = self.clone();
        let mut pivot_col_of_row = Vec::new();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let pivot = (rank..work.rows).find(|&r| !ring.is_zero(work.get(r, col)));
            let Some(pr) = pivot else { continue };
            work.swap_rows(rank, pr);
            let inv = ring.inv(work.get(rank, col)).expect("nonzero pivot");
            for j in col..work.cols {
                let v = ring.mul(work.get(rank, j), &inv);
                work.set(rank, j, v);
            }
            for r in 0..work.rows {
                if r != rank && !ring.is_zero(work.get(r, col)) {
                    let factor = work.get(r, col).clone();
                    for j in col..work.cols {
                        let sub = ring.mul(&factor, work.get(rank, j));
                        let v = ring.sub(work.get(r, j), &sub);
                        work.set(r, j, v);
                    }
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let free_cols: Vec<usize> =
            (0..work.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![ring.zero(); work.cols];
            v[fc] = ring.one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = ring.neg(work.get(row, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ring = self.ring.clone();
        let mut work = self.clone();
        let mut inv = Mat::identity(ring.clone(), n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !ring.is_zero(work.get(r, col)))?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let pinv = ring.inv(work.get(col, col)).expect("nonzero pivot");
            for j in 0..n {
                let v = ring.mul(work.get(col, j), &pinv);
                work.set(col, j, v);
                let v = ring.mul(inv.get(col, j), &pinv);
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r != col && !ring.is_zero(work.get(r, col)) {
                    let factor = work.get(r, col).clone();
                    for j in 0..n {
                        let sub = ring.mul(&factor, work.get(col, j));
                        let v = ring.sub(work.get(r, j), &sub);
                        work.set(r, j, v);
                        let sub = ring.mul(&factor, inv.get(col, j));
                        let v = ring.sub(inv.get(r, j), &sub);
                        inv.set(r, j, v);
                    }
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination in `i128`.
pub fn det_i64(m: &Mat<Integers>) -> i128 {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    bareiss(&mut a, n).map_or(0, |minors| *minors.last().unwrap_or(&1))
}

/// Leading principal minors det(A[..k][..k]) for k = 1..=n, by one Bareiss
/// sweep without row exchanges. Returns `None` when a zero pivot makes the
/// sweep (and hence some leading minor) degenerate.
pub fn leading_principal_minors(m: &Mat<Integers>) -> Option<Vec<i128>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    bareiss(&mut a, n)
}

/// Fraction-free elimination; after step k the pivot a[k][k] equals the
/// (k+1)-st leading principal minor. Returns the pivots, or `None` if a
/// pivot vanished mid-sweep.
fn bareiss(a: &mut [i128], n: usize) -> Option<Vec<i128>> {
    let mut minors = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = a[k * n + k];
        if pivot == 0 && k + 1 < n {
            return None;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                a[i * n + j] = num / prev;
            }
        }
        minors.push(pivot);
        prev = pivot;
    }
    Some(minors)
}

/// Characteristic polynomial det(tI - A) of an integer matrix via the
/// Faddeev-LeVerrier recurrence in `i128` (all divisions exact). Returns
/// coefficients `c[0..=n]` with `c[n] = 1`, so p(t) = sum c[k] t^k.
pub fn char_poly_i64(m: &Mat<Integers>) -> Vec<i64> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    // M starts as A; each step: c = -tr(M)/k, then M <- A * (M + c I).
    let mut mk = a.clone();
    for k in 1..=n {
        let trace: i128 = (0..n).map(|i| mk[i * n + i]).sum();
        assert_eq!(trace % k as i128, 0, "Faddeev-LeVerrier division must be exact");
        let c = -trace / k as i128;
        coeffs[n - k] = c;
        if k == n {
            break;
        }
        for i in 0..n {
            mk[i * n + i] += c;
        }
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let av = a[i * n + l];
                if av == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += av * mk[l * n + j];
                }
            }
        }
        mk = next;
    }
    coeffs
        .into_iter()
        .map(|c| i64::try_from(c).expect("characteristic polynomial coefficient overflow"))
        .collect()
}

/// Evaluate an integer polynomial (coefficients low to high) at an integer.
pub fn eval_poly(coeffs: &[i64], x: i64) -> i128 {
    let mut acc = 0i128;
    for &c in coeffs.iter().rev() {
        acc = acc * x as i128 + c as i128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: Vec<Vec<i64>>) -> Mat<Integers> {
        Mat::from_rows(Integers, rows).unwrap()
    }

    #[test]
    fn bareiss_determinant_matches_cofactor_expansion() {
        let m = int_mat(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(det_i64(&m), 4);
        let minors = leading_principal_minors(&m).unwrap();
        assert_eq!(minors, vec![2, 3, 4]);
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion matrix of t^3 - 2t - 5.
        let m = int_mat(vec![vec![0, 0, 5], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(char_poly_i64(&m), vec![-5, -2, 0, 1]);
    }

    #[test]
    fn char_poly_of_identity() {
        let m = Mat::identity(Integers, 4);
        // (t-1)^4 = t^4 - 4t^3 + 6t^2 - 4t + 1
        assert_eq!(char_poly_i64(&m), vec![1, -4, 6, -4, 1]);
        assert_eq!(eval_poly(&char_poly_i64(&m), 1), 0);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(&2), Some(3));
        assert_eq!(f5.inv(&0), None);
        assert_eq!(f5.from_i64(-1), 4);
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn field_rank_and_null_space() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Mat::from_rows(f3, vec![vec![1, 2, 0], vec![0, 1, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        // Null vector must actually be annihilated.
        for row in 0..3 {
            let dot: u32 = (0..3).map(|j| m.get(row, j) * ns[0][j]).sum::<u32>() % 3;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let half = Rational::new(1, 2);
        let m = Mat::from_rows(
            Rationals,
            vec![vec![half, Rational::from_integer(1)], vec![Rational::from_integer(0), half]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod, Mat::identity(Rationals, 2));
    }
}

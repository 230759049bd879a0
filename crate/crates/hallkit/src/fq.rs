//! Dense linear algebra over the prime fields F_q, q in {2, 3, 5, 7}.
//!
//! Matrices are row-major with entries reduced mod q. Subspaces are kept in
//! reduced row echelon form, which makes membership tests, coordinates and
//! enumeration canonical: every subspace has exactly one RREF basis.

use crate::error::HallError;
use crate::Result;

#[inline]
fn fadd(q: u8, a: u8, b: u8) -> u8 {
    (a + b) % q
}

#[inline]
fn fmul(q: u8, a: u8, b: u8) -> u8 {
    (a * b) % q
}

#[inline]
fn fneg(q: u8, a: u8) -> u8 {
    (q - a % q) % q
}

#[inline]
fn finv(q: u8, a: u8) -> u8 {
    debug_assert!(a % q != 0, "inverting zero in F_{q}");
    // q <= 7: Fermat inverse by a tiny power loop.
    let mut out = 1u8;
    for _ in 0..(q - 2) {
        out = fmul(q, out, a);
    }
    out
}

/// A dense matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    pub q: u8,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn zeros(q: u8, rows: usize, cols: usize) -> Self {
        FqMatrix { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u8, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(q: u8, rows: Vec<Vec<u8>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for x in row {
                data.push(x % q);
            }
        }
        FqMatrix { q, rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x % self.q;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert!(self.q == other.q && self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fadd(self.q, a, b))
            .collect();
        FqMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        self.add(&other.scale(fneg(self.q, 1)))
    }

    pub fn scale(&self, c: u8) -> FqMatrix {
        let data = self.data.iter().map(|&a| fmul(self.q, a, c)).collect();
        FqMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert!(self.q == other.q && self.cols == other.rows, "shape mismatch in matrix product");
        let mut out = FqMatrix::zeros(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let x = fadd(self.q, out.get(i, j), fmul(self.q, a, other.get(k, j)));
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    /// Matrix-vector product, the vector as a column.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u8; self.rows];
        for i in 0..self.rows {
            let mut s = 0u16;
            for j in 0..self.cols {
                s += (self.get(i, j) as u16) * (v[j] as u16);
            }
            out[i] = (s % self.q as u16) as u8;
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let q = self.q;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(p, j));
                    self.set(r, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = finv(q, self.get(r, c));
            for j in 0..self.cols {
                self.set(r, j, fmul(q, self.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let x = fadd(q, self.get(i, j), fmul(q, fneg(q, f), self.get(r, j)));
                        self.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A basis of the right kernel `{x : Mx = 0}`, one vector per free column,
    /// in column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<u8>> {
        let q = self.q;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = fneg(q, m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.q, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row space of the columns, i.e. the image of the matrix as a map.
    pub fn column_space(&self) -> RowSpace {
        RowSpace::from_spanning(self.q, self.rows, self.transpose().data.chunks(self.rows))
    }
}

/// A subspace of F_q^n stored as its unique RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace {
    pub q: u8,
    pub n: usize,
    mat: FqMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(q: u8, n: usize) -> Self {
        RowSpace { q, n, mat: FqMatrix::zeros(q, 0, n), pivots: vec![] }
    }

    pub fn full(q: u8, n: usize) -> Self {
        RowSpace { q, n, mat: FqMatrix::identity(q, n), pivots: (0..n).collect() }
    }

    /// Span of the given vectors (each of length n).
    pub fn from_spanning<'a>(q: u8, n: usize, vecs: impl IntoIterator<Item = &'a [u8]>) -> Self {
        let rows: Vec<Vec<u8>> = vecs.into_iter().map(|v| v.to_vec()).collect();
        let mut m = FqMatrix::from_rows(q, rows);
        if m.cols == 0 {
            m = FqMatrix::zeros(q, m.rows, n);
        }
        assert_eq!(m.cols, n);
        let pivots = m.rref_in_place();
        let k = pivots.len();
        let data: Vec<u8> = (0..k).flat_map(|i| m.row(i).to_vec()).collect();
        RowSpace { q, n, mat: FqMatrix { q, rows: k, cols: n, data }, pivots }
    }

    /// Builds directly from rows already known to be in RREF.
    fn from_rref(q: u8, n: usize, mat: FqMatrix, pivots: Vec<usize>) -> Self {
        RowSpace { q, n, mat, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.mat
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo this space; returns the residual and the
    /// coordinates used.
    fn reduce(&self, v: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let q = self.q;
        let mut r = v.to_vec();
        let mut coords = vec![0u8; self.dim()];
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c != 0 {
                coords[i] = c;
                for j in 0..self.n {
                    r[j] = fadd(q, r[j], fmul(q, fneg(q, c), self.mat.get(i, j)));
                }
            }
        }
        (r, coords)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the space.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let (r, coords) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.mat.row(i)))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        assert!(self.q == other.q && self.n == other.n);
        let rows: Vec<&[u8]> =
            (0..self.dim()).map(|i| self.mat.row(i)).chain((0..other.dim()).map(|i| other.mat.row(i))).collect();
        RowSpace::from_spanning(self.q, self.n, rows)
    }

    /// The image of this space under the linear map `m` (columns of size n).
    pub fn map_by(&self, m: &FqMatrix) -> RowSpace {
        assert_eq!(m.cols, self.n);
        let images: Vec<Vec<u8>> = (0..self.dim()).map(|i| m.mul_vec(self.mat.row(i))).collect();
        RowSpace::from_spanning(self.q, m.rows, images.iter().map(|v| v.as_slice()))
    }
}

/// All vectors of F_q^len in lexicographic odometer order.
pub fn enumerate_vectors(q: u8, len: usize) -> VectorIter {
    VectorIter { q, v: vec![0; len], done: false }
}

pub struct VectorIter {
    q: u8,
    v: Vec<u8>,
    done: bool,
}

impl Iterator for VectorIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.v.clone();
        let mut i = 0;
        loop {
            if i == self.v.len() {
                self.done = true;
                break;
            }
            self.v[i] += 1;
            if self.v[i] < self.q {
                break;
            }
            self.v[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Number of k-dimensional subspaces of F_q^n as u128, or an error when the
/// count does not fit (treated as a resource failure by callers).
pub fn subspace_count(q: u8, n: usize, k: usize) -> Result<u128> {
    let c = crate::qcoeff::qbarbinom(q as u32, n as u32, k as u32, 1);
    u128::try_from(&c).map_err(|_| HallError::CapExceeded {
        cap: "cap_space",
        limit: u128::MAX,
        job: format!("counting {k}-dimensional subspaces of F_{q}^{n}"),
        needed: u128::MAX,
    })
}

/// All k-dimensional subspaces of F_q^n, in a canonical order (pivot columns
/// lexicographic, then free entries in odometer order).
pub fn subspaces_of_dim(q: u8, n: usize, k: usize) -> Vec<RowSpace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(RowSpace::zero(q, n));
        return out;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: (row i, col j) with j > pivot_i and j not a pivot.
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &p in &combo {
                s[p] = true;
            }
            s
        };
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let c = combo.clone();
                let ps = pivot_set.clone();
                ((c[i] + 1)..n).filter_map(move |j| (!ps[j]).then_some((i, j)))
            })
            .collect();
        for vals in enumerate_vectors(q, free.len()) {
            let mut m = FqMatrix::zeros(q, k, n);
            for (i, &p) in combo.iter().enumerate() {
                m.set(i, p, 1);
            }
            for (&(i, j), &x) in free.iter().zip(&vals) {
                m.set(i, j, x);
            }
            out.push(RowSpace::from_rref(q, n, m, combo.clone()));
        }
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] + 1 <= n - (k - i) {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All k-dimensional subspaces containing `w`, built by enumerating
/// subspaces of the quotient F_q^n / w and lifting through the non-pivot
/// coordinates of w's RREF basis.
pub fn subspaces_above(w: &RowSpace, k: usize) -> Vec<RowSpace> {
    let (q, n) = (w.q, w.n);
    let wd = w.dim();
    if k < wd || k > n {
        return vec![];
    }
    if k == wd {
        return vec![w.clone()];
    }
    let complement: Vec<usize> = {
        let mut pivot_set = vec![false; n];
        for &p in w.pivots() {
            pivot_set[p] = true;
        }
        (0..n).filter(|&j| !pivot_set[j]).collect()
    };
    let nq = complement.len();
    let mut out = Vec::new();
    for sub in subspaces_of_dim(q, nq, k - wd) {
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(k);
        for i in 0..sub.dim() {
            let mut v = vec![0u8; n];
            for (jq, &j) in complement.iter().enumerate() {
                v[j] = sub.basis().get(i, jq);
            }
            rows.push(v);
        }
        for i in 0..wd {
            rows.push(w.basis().row(i).to_vec());
        }
        out.push(RowSpace::from_spanning(q, n, rows.iter().map(|v| v.as_slice())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        for q in [2u8, 3, 5, 7] {
            for a in 1..q {
                assert_eq!(fmul(q, a, finv(q, a)), 1, "q={q} a={a}");
                assert_eq!(fadd(q, a, fneg(q, a)), 0);
            }
        }
    }

    #[test]
    fn rref_and_rank() {
        let mut m = FqMatrix::from_rows(3, vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]]);
        let pivots = m.clone().rref_in_place();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        assert!(FqMatrix::identity(5, 4).is_invertible());
        assert!(!FqMatrix::zeros(5, 2, 2).is_invertible());
    }

    #[test]
    fn nullspace_annihilates() {
        let m = FqMatrix::from_rows(5, vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3]]);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        // rank-nullity
        assert_eq!(m.rank() + ns.len(), m.cols);
    }

    #[test]
    fn rowspace_membership_and_coords() {
        let s = RowSpace::from_spanning(3, 4, [[1u8, 2, 0, 1].as_slice(), &[0, 1, 1, 0], &[1, 0, 1, 1]]);
        assert_eq!(s.dim(), 2); // third vector = first - 2*second
        let v = [2u8, 2, 1, 2];
        assert!(s.contains(&v));
        let coords = s.coords(&v).unwrap();
        // recombine
        let mut w = vec![0u8; 4];
        for (i, &c) in coords.iter().enumerate() {
            for j in 0..4 {
                w[j] = fadd(3, w[j], fmul(3, c, s.basis().get(i, j)));
            }
        }
        assert_eq!(w, v);
        assert!(!s.contains(&[1, 0, 0, 0]));
        assert!(RowSpace::full(3, 4).contains_space(&s));
    }

    #[test]
    fn subspace_enumeration_counts() {
        use crate::qcoeff::qbarbinom;
        for q in [2u8, 3] {
            for n in 0..=4usize {
                for k in 0..=n {
                    let subs = subspaces_of_dim(q, n, k);
                    assert_eq!(
                        num_bigint::BigUint::from(subs.len()),
                        qbarbinom(q as u32, n as u32, k as u32, 1),
                        "q={q} n={n} k={k}"
                    );
                    // all distinct
                    for i in 0..subs.len() {
                        for j in i + 1..subs.len() {
                            assert_ne!(subs[i], subs[j]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subspaces_above_counts() {
        use crate::qcoeff::qbarbinom;
        let w = RowSpace::from_spanning(2, 4, [[1u8, 1, 0, 1].as_slice()]);
        for k in 1..=4usize {
            let above = subspaces_above(&w, k);
            // subspaces of the 3-dimensional quotient of dimension k-1
            assert_eq!(
                num_bigint::BigUint::from(above.len()),
                qbarbinom(2, 3, k as u32 - 1, 1)
            );
            for s in &above {
                assert_eq!(s.dim(), k);
                assert!(s.contains_space(&w));
            }
        }
    }

    #[test]
    fn column_space_is_image() {
        let m = FqMatrix::from_rows(3, vec![vec![1, 2], vec![2, 4], vec![0, 1]]);
        let img = m.column_space();
        assert_eq!(img.dim(), 2);
        for v in enumerate_vectors(3, 2) {
            assert!(img.contains(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn vector_iter_covers_space() {
        let all: Vec<_> = enumerate_vectors(3, 3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[26], vec![2, 2, 2]);
    }
}

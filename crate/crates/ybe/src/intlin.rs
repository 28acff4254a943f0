//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! linear system solving, and lattices in `Z^n`.
//!
//! Everything runs over arbitrary-precision integers; Hermite elimination
//! produces intermediate entries far larger than the input even at small
//! dimensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Dense matrix over `Z`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    /// Permutation matrix sending `e_j` to `e_{p(j)}`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let n = p.degree();
        let mut m = IntMatrix::zero(n, n);
        for j in 0..n {
            *m.get_mut(p.apply(j), j) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition shape mismatch".into()));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix subtraction shape mismatch".into()));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix-vector shape mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn pow(&self, k: usize) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("pow of non-square matrix".into()));
        }
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            let tmp = a.get(k, c).clone();
                            *a.get_mut(k, c) = a.get(r, c).clone();
                            *a.get_mut(r, c) = tmp;
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j))
                        .div_floor(&prev);
                    *a.get_mut(i, j) = val;
                }
                *a.get_mut(i, k) = BigInt::zero();
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1).clone())
    }

    /// Inverse over `Z`; defined exactly for unimodular matrices.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let (s, u, v) = self.snf();
        if !s.is_identity() {
            return Err(Error::NotUnimodular);
        }
        // u * m * v = I  =>  m^{-1} = v * u
        v.mul(&u)
    }

    /// Row-style Hermite normal form: returns `(h, u)` with `u * self = h`,
    /// `u` unimodular, `h` a pivot staircase with positive pivots and the
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            // eliminate below pivot_row in this column by gcd row reduction
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if !h.get(r, col).is_zero() {
                        best = match best {
                            None => Some(r),
                            Some(b) if h.get(r, col).abs() < h.get(b, col).abs() => Some(r),
                            keep => keep,
                        };
                    }
                }
                let Some(b) = best else { break };
                if b != pivot_row {
                    swap_rows(&mut h, pivot_row, b);
                    swap_rows(&mut u, pivot_row, b);
                }
                let mut done = true;
                let pivot = h.get(pivot_row, col).clone();
                for r in pivot_row + 1..self.rows {
                    if h.get(r, col).is_zero() {
                        continue;
                    }
                    let q = h.get(r, col).div_floor(&pivot);
                    row_axpy(&mut h, r, pivot_row, &-&q);
                    row_axpy(&mut u, r, pivot_row, &-&q);
                    if !h.get(r, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(pivot_row, col).is_zero() {
                continue;
            }
            if h.get(pivot_row, col).is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            let pivot = h.get(pivot_row, col).clone();
            for r in 0..pivot_row {
                let q = h.get(r, col).div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut h, r, pivot_row, &-&q);
                    row_axpy(&mut u, r, pivot_row, &-&q);
                }
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Number of nonzero rows of the HNF.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.rows).filter(|&r| (0..h.cols).any(|c| !h.get(r, c).is_zero())).count()
    }

    /// Smith normal form: `(s, u, v)` with `u * self * v = s`, `u`, `v`
    /// unimodular, `s` diagonal with non-negative entries, each dividing
    /// the next.
    pub fn snf(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let dim = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < dim {
            // pivot on the smallest nonzero entry of the remaining block to
            // keep intermediate entries from exploding
            let mut found: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !s.get(i, j).is_zero() {
                        found = match found {
                            Some((bi, bj)) if s.get(bi, bj).abs() <= s.get(i, j).abs() => found,
                            _ => Some((i, j)),
                        };
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            if pi != t {
                swap_rows(&mut s, t, pi);
                swap_rows(&mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut s, t, pj);
                swap_cols(&mut v, t, pj);
            }
            loop {
                // clear column t
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if s.get(i, t).is_zero() {
                        continue;
                    }
                    let pivot = s.get(t, t).clone();
                    let q = s.get(i, t).div_floor(&pivot);
                    row_axpy(&mut s, i, t, &-&q);
                    row_axpy(&mut u, i, t, &-&q);
                    if !s.get(i, t).is_zero() {
                        swap_rows(&mut s, t, i);
                        swap_rows(&mut u, t, i);
                        dirty = true;
                    }
                }
                // clear row t
                for j in t + 1..self.cols {
                    if s.get(t, j).is_zero() {
                        continue;
                    }
                    let pivot = s.get(t, t).clone();
                    let q = s.get(t, j).div_floor(&pivot);
                    col_axpy(&mut s, j, t, &-&q);
                    col_axpy(&mut v, j, t, &-&q);
                    if !s.get(t, j).is_zero() {
                        swap_cols(&mut s, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // enforce divisibility of the rest of the block by the pivot
                let pivot = s.get(t, t).clone();
                let offender = (t + 1..self.rows)
                    .flat_map(|i| (t + 1..self.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(s.get(i, j) % &pivot).is_zero());
                match offender {
                    Some((i, _)) => {
                        row_axpy(&mut s, t, i, &BigInt::one());
                        row_axpy(&mut u, t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if s.get(t, t).is_negative() {
                negate_row(&mut s, t);
                negate_row(&mut u, t);
            }
            t += 1;
        }
        (s, u, v)
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    for c in 0..m.cols {
        let tmp = m.get(a, c).clone();
        *m.get_mut(a, c) = m.get(b, c).clone();
        *m.get_mut(b, c) = tmp;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for r in 0..m.rows {
        let tmp = m.get(r, a).clone();
        *m.get_mut(r, a) = m.get(r, b).clone();
        *m.get_mut(r, b) = tmp;
    }
}

/// row[dst] += k * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for c in 0..m.cols {
        let delta = k * m.get(src, c);
        *m.get_mut(dst, c) += delta;
    }
}

/// col[dst] += k * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for r in 0..m.rows {
        let delta = k * m.get(r, src);
        *m.get_mut(r, dst) += delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols {
        let val = -m.get(r, c);
        *m.get_mut(r, c) = val;
    }
}

/// A particular solution together with a basis of the kernel.
pub type IntegerSolution = (Vec<BigInt>, Vec<Vec<BigInt>>);

/// Solves `m * z = c` over the integers.
///
/// Returns `(particular, kernel_basis)` when solvable; every solution is
/// `particular` plus an integer combination of the kernel basis.
pub fn solve_integer(m: &IntMatrix, c: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if c.len() != m.rows() {
        return Err(Error::Dimension("right-hand side length mismatch".into()));
    }
    // Work with the row HNF of the transpose: `h = u * m^T`, so the rows of
    // `h` span the column lattice of `m` and the rows of `u` over the zero
    // rows of `h` span the kernel. This route keeps the intermediate entries
    // far smaller than a full Smith reduction would.
    let (h, u) = m.transpose().hnf();
    let mut residual = c.to_vec();
    let mut y = vec![BigInt::zero(); h.rows()];
    let mut zero_rows = Vec::new();
    for r in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h.get(r, j).is_zero()) else {
            zero_rows.push(r);
            continue;
        };
        let (q, rem) = residual[p].div_rem(h.get(r, p));
        if !rem.is_zero() {
            return Ok(None);
        }
        if !q.is_zero() {
            for j in 0..h.cols() {
                let delta = &q * h.get(r, j);
                residual[j] -= delta;
            }
        }
        y[r] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let particular = u.transpose().mul_vec(&y)?;
    if m.mul_vec(&particular)? != c {
        return Err(Error::Internal("integer solver produced a non-solution".into()));
    }
    let kernel: Vec<Vec<BigInt>> = zero_rows.into_iter().map(|r| u.row(r)).collect();
    Ok(Some((particular, kernel)))
}

/// A sublattice of `Z^n`, stored via a row-HNF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix, // rank x ambient_dim, rows in HNF
}

impl Lattice {
    /// Lattice spanned by the given row vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<BigInt>]) -> Result<Lattice> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::Dimension("lattice generator length mismatch".into()));
            }
        }
        let stacked = IntMatrix::new(
            vectors.len(),
            ambient_dim,
            vectors.iter().flatten().cloned().collect(),
        )?;
        let (h, _) = stacked.hnf();
        let nonzero: Vec<Vec<BigInt>> = (0..h.rows())
            .map(|r| h.row(r))
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .collect();
        let rank = nonzero.len();
        let basis = IntMatrix::new(rank, ambient_dim, nonzero.into_iter().flatten().collect())?;
        Ok(Lattice { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis rows (HNF staircase).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Membership by back-substitution against the HNF staircase.
    pub fn member(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension("vector length mismatch".into()));
        }
        let mut rest = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient_dim)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("basis rows are nonzero");
            let pivot = self.basis.get(r, pivot_col);
            let (q, rem) = rest[pivot_col].div_rem(pivot);
            if !rem.is_zero() {
                return Ok(false);
            }
            for c in 0..self.ambient_dim {
                let delta = &q * self.basis.get(r, c);
                rest[c] -= delta;
            }
        }
        Ok(rest.iter().all(|e| e.is_zero()))
    }

    /// `[Z^n : L]` when the lattice is full rank, `None` otherwise.
    pub fn index_in_ambient(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_dim {
            return None;
        }
        // HNF of a full-rank square basis is upper triangular with positive
        // pivots, so the index is the product of the diagonal.
        let mut idx = BigInt::one();
        for i in 0..self.ambient_dim {
            idx *= self.basis.get(i, i);
        }
        Some(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn vec_bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| bi(x)).collect()
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = id.hnf();
        assert_eq!(h, id);
        assert_eq!(u, IntMatrix::identity(3));
        let z = IntMatrix::zero(2, 2);
        let (h, u) = z.hnf();
        assert!(h.is_zero());
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_properties_small() {
        let m = IntMatrix::from_rows_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = m.hnf();
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(u.det().unwrap().abs(), bi(1));
        // staircase with positive pivots
        assert!(h.get(0, 0) > &bi(0));
        assert!(h.get(1, 0).is_zero());
        assert!(h.get(1, 1) > &bi(0));
    }

    #[test]
    fn hnf_idempotent() {
        let m = IntMatrix::from_rows_i64(&[&[6, 4, 2], &[4, 2, 0], &[0, 8, 6]]);
        let (h, _) = m.hnf();
        let (h2, _) = h.hnf();
        assert_eq!(h, h2);
    }

    #[test]
    fn snf_coprime_diag() {
        let m = IntMatrix::from_rows_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = m.snf();
        assert_eq!(s, IntMatrix::from_rows_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s);
    }

    #[test]
    fn snf_identity() {
        let id = IntMatrix::identity(4);
        let (s, _, _) = id.snf();
        assert_eq!(s, id);
    }

    #[test]
    fn snf_self_check_rectangular() {
        let m = IntMatrix::from_rows_i64(&[&[4, 6, 8], &[2, 0, 10]]);
        let (s, u, v) = m.snf();
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s);
        assert_eq!(u.det().unwrap().abs(), bi(1));
        assert_eq!(v.det().unwrap().abs(), bi(1));
        // divisibility chain
        let d0 = s.get(0, 0).clone();
        let d1 = s.get(1, 1).clone();
        if !d1.is_zero() {
            assert!((d1 % d0).is_zero());
        }
    }

    #[test]
    fn solve_scalar() {
        let m = IntMatrix::from_rows_i64(&[&[2]]);
        let sol = solve_integer(&m, &vec_bi(&[4])).unwrap().unwrap();
        assert_eq!(sol.0, vec_bi(&[2]));
        assert!(solve_integer(&m, &vec_bi(&[3])).unwrap().is_none());
    }

    #[test]
    fn solve_kernel_structure() {
        // x + y = 2 has kernel of rank 1
        let m = IntMatrix::from_rows_i64(&[&[1, 1]]);
        let (part, kernel) = solve_integer(&m, &vec_bi(&[2])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&part).unwrap(), vec_bi(&[2]));
        assert_eq!(kernel.len(), 1);
        assert_eq!(m.mul_vec(&kernel[0]).unwrap(), vec_bi(&[0]));
    }

    #[test]
    fn inverse_unimodular() {
        let m = IntMatrix::from_rows_i64(&[&[1, 2], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let not_uni = IntMatrix::from_rows_i64(&[&[2, 0], &[0, 1]]);
        assert!(matches!(not_uni.inverse(), Err(Error::NotUnimodular)));
    }

    #[test]
    fn lattice_2e_basics() {
        let l = Lattice::from_vectors(2, &[vec_bi(&[2, 0]), vec_bi(&[0, 2])]).unwrap();
        assert!(!l.member(&vec_bi(&[1, 1])).unwrap());
        assert!(l.member(&vec_bi(&[2, -4])).unwrap());
        assert_eq!(l.index_in_ambient(), Some(bi(4)));
    }

    #[test]
    fn lattice_full_ambient() {
        let l = Lattice::from_vectors(3, &[vec_bi(&[1, 0, 0]), vec_bi(&[0, 1, 0]), vec_bi(&[0, 0, 1])])
            .unwrap();
        assert!(l.member(&vec_bi(&[7, -3, 12])).unwrap());
        assert_eq!(l.index_in_ambient(), Some(bi(1)));
    }

    #[test]
    fn lattice_rank_deficient() {
        let l = Lattice::from_vectors(3, &[vec_bi(&[1, 1, 0]), vec_bi(&[2, 2, 0])]).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.index_in_ambient(), None);
        assert!(l.member(&vec_bi(&[3, 3, 0])).unwrap());
        assert!(!l.member(&vec_bi(&[3, 2, 0])).unwrap());
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::from_rows_i64(&[&[1, 2], &[3, 4]]).det().unwrap(), bi(-2));
        assert_eq!(IntMatrix::identity(5).det().unwrap(), bi(1));
        assert_eq!(IntMatrix::from_rows_i64(&[&[2, 4], &[1, 2]]).det().unwrap(), bi(0));
    }

    #[test]
    fn permutation_matrix_convention() {
        let p = Permutation::parse_cycles("(12)", 4).unwrap();
        let m = IntMatrix::from_permutation(&p);
        // column j is e_{p(j)}
        assert!(m.get(1, 0).is_one());
        assert!(m.get(0, 1).is_one());
        assert!(m.get(2, 2).is_one());
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m.transpose());
    }
}

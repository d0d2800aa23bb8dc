//! Dense small matrices over an exact ring. Determinants use fraction-free
//! (Bareiss) elimination so intermediates stay in the ring, characteristic
//! polynomials are determinants of `uI - m` over the `u`-polynomial ring, and
//! one-dimensional kernels come out of signed maximal minors.

use std::fmt;

use super::laurent::LaurentPoly;
use super::upoly::UPoly;

/// The operations Bareiss elimination needs. Exact division by an earlier
/// pivot is guaranteed to succeed on the minors the algorithm produces.
pub trait RingElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl RingElem for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, rhs)
    }
}

impl RingElem for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        UPoly::div_exact(self, rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    NotSquare { rows: usize, cols: usize },
    SizeCap { size: usize, cap: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, not square")
            }
            SeriesError::SizeCap { size, cap } => write!(f, "matrix size {size} exceeds cap {cap}"),
        }
    }
}

impl std::error::Error for SeriesError {}

const DET_SIZE_CAP: usize = 16;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// The concrete operator-matrix carrier used throughout the spectra code.
pub type RingMatrix = Mat<LaurentPoly>;

impl<T: RingElem> Mat<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Exact determinant by fraction-free elimination with row pivoting.
    pub fn det(&self) -> Result<T, SeriesError> {
        if self.rows != self.cols {
            return Err(SeriesError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > DET_SIZE_CAP {
            return Err(SeriesError::SizeCap {
                size: self.rows,
                cap: DET_SIZE_CAP,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev_pivot = T::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(r, j).clone();
                            *m.at_mut(k, j) = b;
                            *m.at_mut(r, j) = a;
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let pivot = m.at(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j).mul(&pivot).sub(&m.at(i, k).mul(m.at(k, j)));
                    *m.at_mut(i, j) = num
                        .div_exact(&prev_pivot)
                        .expect("fraction-free elimination divides exactly");
                }
                *m.at_mut(i, k) = T::zero();
            }
            prev_pivot = pivot;
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    /// Rank together with a choice of row indices forming a full-rank subset,
    /// by fraction-free elimination with full pivoting on a working copy.
    fn independent_rows(&self) -> Vec<usize> {
        let mut m = self.clone();
        let mut row_of = (0..self.rows).collect::<Vec<_>>();
        let mut used_rows = Vec::new();
        let mut used_cols = vec![false; self.cols];
        let mut prev_pivot = T::one();
        let mut step = 0usize;
        loop {
            // find a pivot in an unused column among rows >= step
            let mut found = None;
            'outer: for i in step..self.rows {
                for j in 0..self.cols {
                    if !used_cols[j] && !m.at(i, j).is_zero() {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            // bring pivot row up
            if pi != step {
                for j in 0..self.cols {
                    let a = m.at(step, j).clone();
                    let b = m.at(pi, j).clone();
                    *m.at_mut(step, j) = b;
                    *m.at_mut(pi, j) = a;
                }
                row_of.swap(step, pi);
            }
            used_rows.push(row_of[step]);
            used_cols[pj] = true;
            let pivot = m.at(step, pj).clone();
            for i in step + 1..self.rows {
                for j in 0..self.cols {
                    if j == pj {
                        continue;
                    }
                    let num = m.at(i, j).mul(&pivot).sub(&m.at(i, pj).mul(m.at(step, j)));
                    *m.at_mut(i, j) = num
                        .div_exact(&prev_pivot)
                        .expect("fraction-free elimination divides exactly");
                }
                *m.at_mut(i, pj) = T::zero();
            }
            prev_pivot = pivot;
            step += 1;
            if step == self.rows || step == self.cols {
                break;
            }
        }
        used_rows
    }

    pub fn rank(&self) -> usize {
        self.independent_rows().len()
    }

    /// Kernel of a matrix of rank `cols - 1`, up to a ring scalar: the signed
    /// maximal minors of any independent row set. Returns `None` if the rank
    /// is not exactly `cols - 1`.
    pub fn kernel_line(&self) -> Option<Vec<T>> {
        let rows = self.independent_rows();
        if rows.len() != self.cols - 1 {
            return None;
        }
        let mut kernel = Vec::with_capacity(self.cols);
        for drop_col in 0..self.cols {
            let sub = Mat::from_fn(rows.len(), self.cols - 1, |i, j| {
                let col = if j < drop_col { j } else { j + 1 };
                self.at(rows[i], col).clone()
            });
            let minor = sub.det().expect("square minor");
            kernel.push(if drop_col % 2 == 0 {
                minor
            } else {
                minor.neg()
            });
        }
        // confirm M * kernel = 0 exactly
        for i in 0..self.rows {
            let mut acc = T::zero();
            for j in 0..self.cols {
                acc = acc.add(&self.at(i, j).mul(&kernel[j]));
            }
            if !acc.is_zero() {
                return None;
            }
        }
        if kernel.iter().all(|k| k.is_zero()) {
            return None;
        }
        Some(kernel)
    }
}

impl Mat<LaurentPoly> {
    /// Coefficients of `det(uI - m)` in ascending powers of `u`, exact.
    pub fn charpoly(&self) -> Result<UPoly, SeriesError> {
        if self.rows != self.cols {
            return Err(SeriesError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > DET_SIZE_CAP {
            return Err(SeriesError::SizeCap {
                size: self.rows,
                cap: DET_SIZE_CAP,
            });
        }
        let n = self.rows;
        let lifted = Mat::from_fn(n, n, |i, j| {
            let diag = if i == j { UPoly::u() } else { UPoly::zero() };
            diag - UPoly::constant(self.at(i, j).clone())
        });
        lifted.det()
    }

    /// `det(I - m*u)`: the reversed characteristic polynomial.
    pub fn det_one_minus_u(&self) -> Result<UPoly, SeriesError> {
        Ok(self.charpoly()?.reverse(self.rows))
    }

    pub fn subst(&self, images: &[LaurentPoly; 3]) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).subst(images))
    }
}

impl<T: RingElem + fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::laurent::Var;
    use crate::exactring::rat;

    fn int_mat(n: usize, vals: &[i64]) -> RingMatrix {
        Mat::new(n, n, vals.iter().map(|&v| LaurentPoly::int(v)).collect())
    }

    #[test]
    fn identity_det_is_one() {
        assert!(RingMatrix::identity(3).det().unwrap().is_one());
    }

    #[test]
    fn one_by_one_det() {
        let m = Mat::new(1, 1, vec![LaurentPoly::monomial(rat(1), 3, 0, 1)]);
        assert_eq!(m.det().unwrap(), LaurentPoly::monomial(rat(1), 3, 0, 1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m: RingMatrix = Mat::zero(2, 3);
        assert!(matches!(m.det(), Err(SeriesError::NotSquare { .. })));
    }

    #[test]
    fn det_with_zero_pivot_needs_row_swap() {
        let m = int_mat(3, &[0, 1, 2, 1, 0, 3, 4, 5, 0]);
        // naive cofactor oracle: det = 0*(0*0-3*5) - 1*(1*0-3*4) + 2*(1*5-0*4) = 12+10 = 22
        assert_eq!(m.det().unwrap(), LaurentPoly::int(22));
    }

    #[test]
    fn charpoly_zero_and_scalar() {
        let z: RingMatrix = Mat::zero(2, 2);
        assert_eq!(z.charpoly().unwrap(), UPoly::term(LaurentPoly::one(), 2));
        let c = Mat::new(1, 1, vec![LaurentPoly::var(Var::S)]);
        let p = c.charpoly().unwrap();
        assert_eq!(p.coeff(0), -LaurentPoly::var(Var::S));
        assert_eq!(p.coeff(1), LaurentPoly::one());
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // rows (1,2,3), (2,4,6) -> rank 1 on 3 columns: no unique line
        let m = Mat::new(
            2,
            3,
            [1, 2, 3, 2, 4, 6]
                .iter()
                .map(|&v| LaurentPoly::int(v))
                .collect(),
        );
        assert!(m.kernel_line().is_none());
        // rank 2 on 3 columns: kernel spanned by cross product
        let m = Mat::new(
            2,
            3,
            [1, 0, 1, 0, 1, 1]
                .iter()
                .map(|&v| LaurentPoly::int(v))
                .collect(),
        );
        let k = m.kernel_line().unwrap();
        let ratio0 = k[0].div_exact(&k[2]).unwrap();
        let ratio1 = k[1].div_exact(&k[2]).unwrap();
        assert_eq!(ratio0, LaurentPoly::int(-1));
        assert_eq!(ratio1, LaurentPoly::int(-1));
    }
}

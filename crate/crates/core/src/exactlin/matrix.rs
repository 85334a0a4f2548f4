//! Dense matrices over exact complex rationals, with the small kernels the
//! rest of the crate is built on: exact rank, rank-one factorization, and
//! factor matching.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{collinear, LinError, Scalar, Vector};

/// Row-major matrix of [`Scalar`]s. Immutable in spirit: operations return
/// fresh values.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    /// Matrix unit `E_{ij}` (0-based indices).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(rows, cols);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from columns (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector::new((0..self.cols).map(|j| self.get(i, j).clone()).collect())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len());
        Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = Scalar::zero();
                    for j in 0..self.cols {
                        acc += &(self.get(i, j) * &v[j]);
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Conjugate transpose in the fixed standard basis.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::conj).collect(),
        }
    }

    /// Submatrix picking the given rows and columns (0-based, in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (work.get(pivot, j).clone(), work.get(col, j).clone());
                    work.set(pivot, j, b);
                    work.set(col, j, a);
                    let (a, b) = (inv.get(pivot, j).clone(), inv.get(col, j).clone());
                    inv.set(pivot, j, b);
                    inv.set(col, j, a);
                }
            }
            let p = work.get(col, col).clone();
            let p_inv = p.inverse().expect("pivot nonzero by selection");
            for j in 0..n {
                work.set(col, j, work.get(col, j) * &p_inv);
                inv.set(col, j, inv.get(col, j) * &p_inv);
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for j in 0..n {
                    let w = work.get(r, j) - &(&factor * work.get(col, j));
                    work.set(r, j, w);
                    let v = inv.get(r, j) - &(&factor * inv.get(col, j));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j))?;
                if j + 1 < self.cols {
                    write!(f, ", ")?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rank-one operator `x ⊗ f*`, acting as `g ↦ ⟨g, f⟩·x`; its matrix has
/// entries `x_i · conj(f_j)`.
pub fn outer(x: &Vector, f: &Vector) -> Matrix {
    let mut m = Matrix::zero(x.len(), f.len());
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..f.len() {
            m.set(i, j, &x[i] * &f[j].conj());
        }
    }
    m
}

// Gaussian integer used inside the fraction-free elimination.
#[derive(Clone, PartialEq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn zero() -> Self {
        GInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, other: &GInt) -> GInt {
        GInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn sub(&self, other: &GInt) -> GInt {
        GInt {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    // Exact division; the Bareiss recurrence guarantees divisibility.
    fn div_exact(&self, other: &GInt) -> GInt {
        let d = &other.re * &other.re + &other.im * &other.im;
        let num = self.mul(&GInt {
            re: other.re.clone(),
            im: -other.im.clone(),
        });
        debug_assert!((&num.re % &d).is_zero() && (&num.im % &d).is_zero());
        GInt {
            re: num.re / &d,
            im: num.im / d,
        }
    }
}

/// Exact rank by fraction-free (Bareiss) Gaussian elimination.
///
/// Each row is first scaled by the lcm of its denominators, which turns the
/// entries into Gaussian integers without changing the row space; the
/// one-step Bareiss recurrence then keeps all intermediates integral.
pub fn rank(a: &Matrix) -> usize {
    let mut m: Vec<Vec<GInt>> = (0..a.rows())
        .map(|i| {
            let mut l = BigInt::one();
            for j in 0..a.cols() {
                let e = a.get(i, j);
                l = l.lcm(e.re().denom()).lcm(e.im().denom());
            }
            (0..a.cols())
                .map(|j| {
                    let e = a.get(i, j);
                    GInt {
                        re: e.re().numer() * (&l / e.re().denom()),
                        im: e.im().numer() * (&l / e.im().denom()),
                    }
                })
                .collect()
        })
        .collect();

    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = GInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = m[rank][col].mul(&m[r][c]).sub(&m[r][col].mul(&m[rank][c]));
                m[r][c] = t.div_exact(&prev);
            }
            m[r][col] = GInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Canonical factorization of a rank-one matrix as `u ⊗ v*`.
///
/// `u` is the first nonzero column of `B` (so it absorbs the scale) and `v`
/// is the unique co-vector with `B = u ⊗ v*`; at that column's index `v`
/// has entry 1. Returns [`LinError::Rank`] when `rank(B) ≠ 1`.
pub fn rank_one_factor(b: &Matrix) -> Result<(Vector, Vector), LinError> {
    let u = (0..b.cols())
        .map(|j| b.column(j))
        .find(|col| !col.is_zero())
        .ok_or(LinError::Rank { found: 0 })?;
    let mut v = Vector::zero(b.cols());
    for j in 0..b.cols() {
        let ratio = collinear(&b.column(j), &u).ok_or(LinError::Rank { found: 2 })?;
        v.set(j, ratio.conj());
    }
    debug_assert_eq!(outer(&u, &v), *b);
    Ok((u, v))
}

/// Given `B = w ⊗ v*` for a known nonzero `v`, recovers `w` as
/// `B·v / ⟨v,v⟩` and verifies the factorization exactly.
pub fn match_factor(b: &Matrix, v: &Vector) -> Result<Vector, LinError> {
    assert!(!v.is_zero(), "match_factor needs a nonzero co-factor");
    assert_eq!(b.cols(), v.len());
    let norm = Scalar::new(v.inner(v).re().clone(), num_rational::BigRational::zero());
    let w = b.matvec(v).scale(&norm.inverse().expect("nonzero norm"));
    if outer(&w, v) != *b {
        return Err(LinError::Factor);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_i64(xs: &[i64]) -> Vector {
        Vector::new(xs.iter().map(|&x| Scalar::integer(x)).collect())
    }

    #[test]
    fn rank_zero_and_identity() {
        assert_eq!(rank(&Matrix::zero(3, 3)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
    }

    #[test]
    fn rank_one_outer_product() {
        let b = outer(&Vector::basis(3, 0), &vec_i64(&[1, 2, 0]));
        assert_eq!(rank(&b), 1);
    }

    #[test]
    fn rank_with_rational_and_complex_entries() {
        // Two proportional rows plus one independent row.
        let m = Matrix::from_rows(vec![
            vec![Scalar::rational(1, 2), Scalar::rational(1, 3), Scalar::i()],
            vec![
                Scalar::rational(3, 2),
                Scalar::one(),
                Scalar::complex(0, 1, 3, 1),
            ],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_of_rectangular_shift() {
        let mut s = Matrix::zero(7, 6);
        for k in 0..6 {
            s.set(k + 1, k, Scalar::one());
        }
        assert_eq!(rank(&s), 6);
    }

    #[test]
    fn factor_matrix_unit() {
        let b = Matrix::unit(4, 4, 0, 1);
        let (u, v) = rank_one_factor(&b).unwrap();
        assert_eq!(u, Vector::basis(4, 0));
        assert_eq!(v, Vector::basis(4, 1));
    }

    #[test]
    fn factor_rejects_rank_two() {
        let b = Matrix::identity(2);
        assert!(matches!(rank_one_factor(&b), Err(LinError::Rank { .. })));
        assert!(matches!(
            rank_one_factor(&Matrix::zero(2, 2)),
            Err(LinError::Rank { found: 0 })
        ));
    }

    #[test]
    fn factor_complex_outer_product() {
        // B = (1,2)ᵗ · (1, i)*, so B = [[1, -i], [2, -2i]].
        let u_in = vec_i64(&[1, 2]);
        let v_in = Vector::new(vec![Scalar::one(), Scalar::i()]);
        let b = outer(&u_in, &v_in);
        assert_eq!(*b.get(0, 1), -Scalar::i());
        let (u, v) = rank_one_factor(&b).unwrap();
        assert_eq!(u, u_in);
        assert_eq!(v, v_in);
        assert_eq!(outer(&u, &v), b);
    }

    #[test]
    fn match_factor_examples() {
        let e12 = Matrix::unit(2, 2, 0, 1);
        let w = match_factor(&e12, &Vector::basis(2, 1)).unwrap();
        assert_eq!(w, Vector::basis(2, 0));

        let zero = Matrix::zero(2, 2);
        let w = match_factor(&zero, &Vector::basis(2, 0)).unwrap();
        assert!(w.is_zero());

        let u = Vector::new(vec![Scalar::complex(1, 2, -1, 3), Scalar::integer(4)]);
        let v = Vector::new(vec![Scalar::i(), Scalar::rational(-2, 5)]);
        let b = outer(&u, &v);
        assert_eq!(match_factor(&b, &v).unwrap(), u);

        // A matrix that is not of the form w ⊗ v* for the given v.
        let bad = Matrix::identity(2);
        assert!(matches!(
            match_factor(&bad, &Vector::basis(2, 0)),
            Err(LinError::Factor)
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::integer(2), Scalar::i()],
            vec![Scalar::one(), Scalar::integer(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(inv.mul(&m), Matrix::identity(2));

        let singular = outer(&vec_i64(&[1, 2]), &vec_i64(&[3, 4]));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn adjoint_conjugates() {
        let m = outer(
            &Vector::new(vec![Scalar::i(), Scalar::one()]),
            &Vector::new(vec![Scalar::one(), Scalar::complex(1, 1, 1, 2)]),
        );
        let adj = m.adjoint();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*adj.get(j, i), m.get(i, j).conj());
            }
        }
    }
}

//! Fixed-length vectors of exact scalars.

use std::fmt;
use std::ops::Index;

use super::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector { entries }
    }

    pub fn zero(len: usize) -> Self {
        Vector::new(vec![Scalar::zero(); len])
    }

    /// Standard basis vector with a 1 at `index` (0-based).
    pub fn basis(len: usize, index: usize) -> Self {
        assert!(index < len);
        let mut v = Vector::zero(len);
        v.entries[index] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn set(&mut self, index: usize, value: Scalar) {
        self.entries[index] = value;
    }

    /// 0-based indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn conj(&self) -> Vector {
        Vector::new(self.entries.iter().map(Scalar::conj).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len());
        Vector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Inner product `⟨a, b⟩ = Σ aₖ · conj(bₖ)`, linear in the first slot.
    pub fn inner(&self, other: &Vector) -> Scalar {
        assert_eq!(self.len(), other.len());
        let mut acc = Scalar::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += &(a * &b.conj());
        }
        acc
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, index: usize) -> &Scalar {
        &self.entries[index]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Tests whether `a = λ·b` for some scalar λ and returns it.
///
/// Conventions: a zero `a` against nonzero `b` gives `λ = 0`, and two zero
/// vectors give `λ = 0`; a nonzero `a` against zero `b` has no λ. For two
/// nonzero vectors this is the linear-dependence relation, and success is
/// symmetric in the arguments.
pub fn collinear(a: &Vector, b: &Vector) -> Option<Scalar> {
    assert_eq!(a.len(), b.len(), "collinear needs equal lengths");
    let Some(&pivot) = b.support().first() else {
        // b = 0: only a = 0 is a multiple, by the λ = 0 convention.
        return a.is_zero().then(Scalar::zero);
    };
    let lambda = &a[pivot] / &b[pivot];
    for k in 0..a.len() {
        if a[k] != &lambda * &b[k] {
            return None;
        }
    }
    Some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_i64(xs: &[i64]) -> Vector {
        Vector::new(xs.iter().map(|&x| Scalar::integer(x)).collect())
    }

    #[test]
    fn collinear_scalar_multiple() {
        let lambda = collinear(&vec_i64(&[2, 4]), &vec_i64(&[1, 2])).unwrap();
        assert_eq!(lambda, Scalar::integer(2));
    }

    #[test]
    fn collinear_independent_pair() {
        assert!(collinear(&vec_i64(&[1, 0]), &vec_i64(&[0, 1])).is_none());
    }

    #[test]
    fn collinear_zero_conventions() {
        assert_eq!(
            collinear(&vec_i64(&[0, 0]), &vec_i64(&[1, 1])),
            Some(Scalar::zero())
        );
        assert_eq!(
            collinear(&vec_i64(&[0, 0]), &vec_i64(&[0, 0])),
            Some(Scalar::zero())
        );
        assert!(collinear(&vec_i64(&[1, 1]), &vec_i64(&[0, 0])).is_none());
    }

    #[test]
    fn collinear_complex_ratio() {
        let a = Vector::new(vec![Scalar::i(), Scalar::complex(-1, 1, 0, 1)]);
        let b = Vector::new(vec![Scalar::one(), Scalar::i()]);
        assert_eq!(collinear(&a, &b), Some(Scalar::i()));
    }

    #[test]
    fn inner_product_conjugates_second_slot() {
        let a = Vector::new(vec![Scalar::i()]);
        let b = Vector::new(vec![Scalar::i()]);
        assert_eq!(a.inner(&b), Scalar::one());
    }
}

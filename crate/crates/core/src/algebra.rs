//! The reflexive algebra of a coordinate lattice, in its diagonal model: a
//! mask of allowed matrix entries.
//!
//! An `n×n` matrix leaves every lattice projection invariant exactly when
//! it vanishes outside the mask `{(i,j) : i ∈ Ê(j)}`, where `Ê(j)` is the
//! smallest lattice member containing coordinate `j`. Rank-one membership
//! has an equivalent description through witnesses (`x` inside a member,
//! `f` inside the orthocomplement of its predecessor); the two definitions
//! must agree, and the tests check that they do.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::exactlin::{outer, rank, Matrix, Scalar, Vector};
use crate::lattice::{
    interesting_family, predecessor, CoordSet, InterestingFamily, SubspaceLattice,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix is {rows}×{cols}, expected {n}×{n}")]
    Dimension { rows: usize, cols: usize, n: usize },
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("rank {requested} exceeds ambient dimension {n}")]
    UnachievableRank { requested: usize, n: usize },
}

/// `Alg L` as a set of allowed entries, 1-based pairs `(row, col)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MaskAlgebra {
    lattice: SubspaceLattice,
    allowed: BTreeSet<(usize, usize)>,
}

impl MaskAlgebra {
    pub fn n(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn lattice(&self) -> &SubspaceLattice {
        &self.lattice
    }

    pub fn is_allowed(&self, i: usize, j: usize) -> bool {
        self.allowed.contains(&(i, j))
    }

    /// Allowed pairs in row-major order, 1-based.
    pub fn allowed_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.allowed.iter().copied()
    }

    /// Linear dimension of the algebra (number of allowed entries).
    pub fn dim(&self) -> usize {
        self.allowed.len()
    }

    /// True iff `a` vanishes on every disallowed entry.
    pub fn is_member(&self, a: &Matrix) -> Result<bool, AlgebraError> {
        let n = self.n();
        if a.rows() != n || a.cols() != n {
            return Err(AlgebraError::Dimension {
                rows: a.rows(),
                cols: a.cols(),
                n,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if !a.get(i, j).is_zero() && !self.is_allowed(i + 1, j + 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Entries of `a` outside the mask, 1-based.
    pub fn offending_entries(&self, a: &Matrix) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if !a.get(i, j).is_zero() && !self.is_allowed(i + 1, j + 1) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// ASCII pattern with `*` on allowed entries, matching the usual way
    /// these algebras are drawn.
    pub fn star_pattern(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        for i in 1..=n {
            for j in 1..=n {
                out.push(if self.is_allowed(i, j) { '*' } else { '.' });
                if j < n {
                    out.push(' ');
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Smallest lattice member containing coordinate `j`: the meet of all
/// members containing it (the full set always does).
pub fn smallest_containing(lattice: &SubspaceLattice, j: usize) -> CoordSet {
    assert!(j >= 1 && j <= lattice.ambient_dim(), "coordinate out of range");
    lattice
        .elements()
        .iter()
        .filter(|e| e.contains(j))
        .fold(CoordSet::full(lattice.ambient_dim()), |acc, e| {
            acc.intersection(e)
        })
}

/// Computes the mask of `Alg L`: `(i,j)` is allowed iff every lattice
/// member containing `j` also contains `i`.
pub fn mask(lattice: &SubspaceLattice) -> MaskAlgebra {
    let n = lattice.ambient_dim();
    let mut allowed = BTreeSet::new();
    for j in 1..=n {
        let hat = smallest_containing(lattice, j);
        for i in hat.iter() {
            allowed.insert((i, j));
        }
    }
    MaskAlgebra {
        lattice: lattice.clone(),
        allowed,
    }
}

/// A witness that `x ⊗ f*` lies in the algebra: `x` is supported in the
/// lattice member `e` and `f` avoids `e`'s predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneWitness {
    pub x: Vector,
    pub f: Vector,
    pub e: CoordSet,
}

/// Rank-one membership test for `x ⊗ f*`.
///
/// Takes `e` to be the smallest lattice member containing the support of
/// `x` (the join of `Ê(i)` over that support). Minimality is what makes
/// the single test sound: enlarging `e` only enlarges its predecessor and
/// so shrinks the room left for `f`. If `f` meets the predecessor of this
/// minimal `e`, no witness exists at all and the operator is outside the
/// algebra.
pub fn rank_one_member(
    lattice: &SubspaceLattice,
    x: &Vector,
    f: &Vector,
) -> Result<Option<RankOneWitness>, AlgebraError> {
    if x.is_zero() || f.is_zero() {
        return Err(AlgebraError::ZeroVector);
    }
    let n = lattice.ambient_dim();
    assert_eq!(x.len(), n);
    assert_eq!(f.len(), n);
    let e = x
        .support()
        .into_iter()
        .map(|idx0| smallest_containing(lattice, idx0 + 1))
        .fold(CoordSet::empty(n), |acc, hat| acc.union(&hat));
    let pred = predecessor(lattice, &e).expect("join of members is a member");
    let blocked = f.support().into_iter().any(|idx0| pred.contains(idx0 + 1));
    if blocked {
        return Ok(None);
    }
    Ok(Some(RankOneWitness {
        x: x.clone(),
        f: f.clone(),
        e,
    }))
}

/// True iff every allowed matrix unit passes the rank-one membership test,
/// so the rank-one span fills the whole mask algebra.
pub fn span_check(lattice: &SubspaceLattice) -> bool {
    let n = lattice.ambient_dim();
    let alg = mask(lattice);
    alg.allowed_pairs().all(|(i, j)| {
        rank_one_member(lattice, &Vector::basis(n, i - 1), &Vector::basis(n, j - 1))
            .map(|w| w.is_some())
            .unwrap_or(false)
    })
}

/// A sampled algebra member together with its verified rank.
#[derive(Clone, Debug)]
pub struct SampledMember {
    pub matrix: Matrix,
    pub rank: usize,
}

/// Small random scalar with occasional imaginary part; never returns zero
/// when `nonzero` is set.
pub(crate) fn random_scalar<R: Rng>(rng: &mut R, nonzero: bool) -> Scalar {
    loop {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        let s = if rng.gen_ratio(1, 3) {
            let inum = rng.gen_range(-9i64..=9);
            Scalar::complex(num, den, inum, den)
        } else {
            Scalar::rational(num, den)
        };
        if !nonzero || !s.is_zero() {
            return s;
        }
    }
}

/// Random nonzero vector supported in `support`.
pub(crate) fn random_vector_in<R: Rng>(n: usize, support: &CoordSet, rng: &mut R) -> Vector {
    assert!(!support.is_empty(), "empty support cannot carry a nonzero vector");
    loop {
        let mut v = Vector::zero(n);
        for idx0 in support.indices0() {
            if rng.gen_ratio(3, 4) {
                v.set(idx0, random_scalar(rng, false));
            }
        }
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random member of the algebra with rank exactly `target_rank`.
///
/// Built as a sum of `target_rank` rank-one members with random factors;
/// the achieved rank is verified exactly, and after a few failed draws the
/// sampler falls back to scaled diagonal units, which always realize the
/// target. Deterministic for a fixed RNG state.
pub fn random_member<R: Rng>(
    alg: &MaskAlgebra,
    target_rank: usize,
    rng: &mut R,
) -> Result<SampledMember, AlgebraError> {
    let n = alg.n();
    if target_rank > n {
        return Err(AlgebraError::UnachievableRank {
            requested: target_rank,
            n,
        });
    }
    if target_rank == 0 {
        return Ok(SampledMember {
            matrix: Matrix::zero(n, n),
            rank: 0,
        });
    }
    let family = interesting_family(alg.lattice());
    for _attempt in 0..8 {
        let mut sum = Matrix::zero(n, n);
        for _ in 0..target_rank {
            let member = &family.members()[rng.gen_range(0..family.len())];
            let co = family.co_support(member).expect("cached");
            let x = random_vector_in(n, member, rng);
            let f = random_vector_in(n, &co, rng);
            sum = sum.add(&outer(&x, &f));
        }
        if rank(&sum) == target_rank {
            debug_assert_eq!(alg.is_member(&sum), Ok(true));
            return Ok(SampledMember {
                matrix: sum,
                rank: target_rank,
            });
        }
    }
    // Diagonal fallback: distinct diagonal units are always allowed and
    // independent.
    let mut coords: Vec<usize> = (0..n).collect();
    for k in 0..target_rank {
        let pick = rng.gen_range(k..n);
        coords.swap(k, pick);
    }
    let mut m = Matrix::zero(n, n);
    for &c in coords.iter().take(target_rank) {
        m.set(c, c, random_scalar(rng, true));
    }
    debug_assert_eq!(rank(&m), target_rank);
    Ok(SampledMember {
        matrix: m,
        rank: target_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::closure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cs(n: usize, coords: &[usize]) -> CoordSet {
        CoordSet::new(n, coords.iter().copied()).unwrap()
    }

    fn sample_lattice() -> SubspaceLattice {
        closure(
            4,
            &[cs(4, &[1]), cs(4, &[3]), cs(4, &[1, 2, 3]), cs(4, &[1, 3, 4])],
        )
        .unwrap()
    }

    #[test]
    fn mask_of_sample_lattice() {
        let alg = mask(&sample_lattice());
        let expected: BTreeSet<(usize, usize)> = [
            (1, 1),
            (1, 2),
            (1, 4),
            (2, 2),
            (3, 2),
            (3, 3),
            (3, 4),
            (4, 4),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<(usize, usize)> = alg.allowed_pairs().collect();
        assert_eq!(got, expected);
        assert_eq!(alg.dim(), 8);
    }

    #[test]
    fn mask_trivial_is_full_algebra() {
        let alg = mask(&closure(3, &[]).unwrap());
        assert_eq!(alg.dim(), 9);
    }

    #[test]
    fn mask_boolean_is_diagonal() {
        let alg = mask(&closure(2, &[cs(2, &[1]), cs(2, &[2])]).unwrap());
        let got: Vec<(usize, usize)> = alg.allowed_pairs().collect();
        assert_eq!(got, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn smallest_containing_examples() {
        let lat = sample_lattice();
        assert_eq!(smallest_containing(&lat, 2), cs(4, &[1, 2, 3]));
        assert_eq!(smallest_containing(&lat, 1), cs(4, &[1]));
        let trivial = closure(3, &[]).unwrap();
        assert_eq!(smallest_containing(&trivial, 2), CoordSet::full(3));
    }

    #[test]
    fn is_member_examples() {
        let alg = mask(&sample_lattice());
        assert_eq!(alg.is_member(&Matrix::identity(4)), Ok(true));
        let e21 = Matrix::unit(4, 4, 1, 0);
        assert_eq!(alg.is_member(&e21), Ok(false));
        assert_eq!(alg.offending_entries(&e21), vec![(2, 1)]);
        for (i, j) in alg.allowed_pairs() {
            let unit = Matrix::unit(4, 4, i - 1, j - 1);
            assert_eq!(alg.is_member(&unit), Ok(true));
        }
        assert!(matches!(
            alg.is_member(&Matrix::zero(3, 3)),
            Err(AlgebraError::Dimension { .. })
        ));
    }

    #[test]
    fn rank_one_member_examples() {
        let lat = sample_lattice();
        let e = |k: usize| Vector::basis(4, k - 1);

        let w = rank_one_member(&lat, &e(1), &e(2)).unwrap().unwrap();
        assert_eq!(w.e, cs(4, &[1]));

        assert!(rank_one_member(&lat, &e(2), &e(1)).unwrap().is_none());

        let x = e(1).add(&e(3));
        let f = e(2).add(&e(4));
        let w = rank_one_member(&lat, &x, &f).unwrap().unwrap();
        assert_eq!(w.e, cs(4, &[1, 3]));
        // The witnessed operator really lies in the mask.
        let alg = mask(&lat);
        assert_eq!(alg.is_member(&outer(&x, &f)), Ok(true));

        assert!(matches!(
            rank_one_member(&lat, &Vector::zero(4), &e(1)),
            Err(AlgebraError::ZeroVector)
        ));
    }

    #[test]
    fn mask_agrees_with_rank_one_witnesses() {
        for lat in [
            sample_lattice(),
            closure(3, &[]).unwrap(),
            closure(2, &[cs(2, &[1]), cs(2, &[2])]).unwrap(),
        ] {
            let n = lat.ambient_dim();
            let alg = mask(&lat);
            for i in 1..=n {
                for j in 1..=n {
                    let witnessed = rank_one_member(
                        &lat,
                        &Vector::basis(n, i - 1),
                        &Vector::basis(n, j - 1),
                    )
                    .unwrap()
                    .is_some();
                    assert_eq!(alg.is_allowed(i, j), witnessed, "disagreement at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn span_check_examples() {
        assert!(span_check(&sample_lattice()));
        assert!(span_check(&closure(3, &[]).unwrap()));
        assert!(span_check(&closure(2, &[cs(2, &[1]), cs(2, &[2])]).unwrap()));
    }

    #[test]
    fn mask_closed_under_unit_products() {
        let alg = mask(&sample_lattice());
        for (i, j) in alg.allowed_pairs() {
            for (k, l) in alg.allowed_pairs() {
                if j == k {
                    assert!(alg.is_allowed(i, l), "({i},{j})·({k},{l}) escapes the mask");
                }
            }
        }
    }

    #[test]
    fn random_member_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alg = mask(&sample_lattice());
        let zero = random_member(&alg, 0, &mut rng).unwrap();
        assert!(zero.matrix.is_zero());

        for target in 1..=4 {
            let m = random_member(&alg, target, &mut rng).unwrap();
            assert_eq!(m.rank, target);
            assert_eq!(rank(&m.matrix), target);
            assert_eq!(alg.is_member(&m.matrix), Ok(true));
        }

        let diag = mask(&closure(2, &[cs(2, &[1]), cs(2, &[2])]).unwrap());
        let m = random_member(&diag, 2, &mut rng).unwrap();
        assert_eq!(rank(&m.matrix), 2);

        assert!(matches!(
            random_member(&alg, 5, &mut rng),
            Err(AlgebraError::UnachievableRank { requested: 5, n: 4 })
        ));
    }

    #[test]
    fn star_pattern_shape() {
        let alg = mask(&sample_lattice());
        let expected = "\
* * . *
. * . .
. * * *
. . . *
";
        assert_eq!(alg.star_pattern(), expected);
    }
}

//! Finite commutative subspace lattices in their diagonal model.
//!
//! A lattice element is a subset of the coordinates `{1..n}`, standing for
//! the orthogonal projection onto the span of the corresponding standard
//! basis vectors. Because all elements are coordinate sets, every pair of
//! projections commutes and the lattice operations are plain set union and
//! intersection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("coordinate {coord} out of range 1..={n}")]
    Input { coord: usize, n: usize },
    #[error("ambient dimension must be at least 1")]
    EmptyAmbient,
    #[error("ambient dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("{0:?} is not a lattice member")]
    Membership(CoordSet),
}

/// A subset of `{1..n}`, identified with the diagonal projection onto the
/// spanned coordinates. Members are stored sorted and deduplicated;
/// coordinates are 1-based everywhere in the public API.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoordSet {
    n: usize,
    members: Vec<usize>,
}

impl CoordSet {
    pub fn new(n: usize, coords: impl IntoIterator<Item = usize>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::EmptyAmbient);
        }
        let mut members: Vec<usize> = coords.into_iter().collect();
        for &c in &members {
            if c == 0 || c > n {
                return Err(LatticeError::Input { coord: c, n });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(CoordSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        CoordSet::new(n, []).expect("n >= 1")
    }

    pub fn full(n: usize) -> Self {
        CoordSet::new(n, 1..=n).expect("n >= 1")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Number of coordinates, i.e. the dimension of the projected subspace.
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n
    }

    pub fn contains(&self, coord: usize) -> bool {
        self.members.binary_search(&coord).is_ok()
    }

    /// 1-based coordinates, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// 0-based indices into vectors/matrices, ascending.
    pub fn indices0(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&c| c - 1)
    }

    pub fn is_subset(&self, other: &CoordSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.members.iter().all(|c| other.contains(*c))
    }

    pub fn union(&self, other: &CoordSet) -> CoordSet {
        assert_eq!(self.n, other.n);
        let set: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        CoordSet::new(self.n, set).expect("coords already validated")
    }

    pub fn intersection(&self, other: &CoordSet) -> CoordSet {
        assert_eq!(self.n, other.n);
        CoordSet::new(self.n, self.iter().filter(|c| other.contains(*c))).expect("validated")
    }

    pub fn complement(&self) -> CoordSet {
        CoordSet::new(self.n, (1..=self.n).filter(|c| !self.contains(*c))).expect("validated")
    }

    pub fn is_disjoint(&self, other: &CoordSet) -> bool {
        self.iter().all(|c| !other.contains(c))
    }
}

/// Canonical order: by dimension first, then lexicographically on the
/// sorted coordinate lists.
impl Ord for CoordSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for CoordSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A family of coordinate sets containing `∅` and `{1..n}` and closed under
/// union and intersection, kept in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceLattice {
    n: usize,
    elements: Vec<CoordSet>,
}

impl SubspaceLattice {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[CoordSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds ∅ and {1..n}
    }

    pub fn contains(&self, set: &CoordSet) -> bool {
        self.elements.binary_search(set).is_ok()
    }
}

impl fmt::Debug for SubspaceLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceLattice(n={}, {:?})", self.n, self.elements)
    }
}

/// Smallest family containing the generators, `∅`, and `{1..n}` that is
/// closed under pairwise union and intersection (fixed-point iteration).
pub fn closure(n: usize, generators: &[CoordSet]) -> Result<SubspaceLattice, LatticeError> {
    if n == 0 {
        return Err(LatticeError::EmptyAmbient);
    }
    let mut set: BTreeSet<CoordSet> = BTreeSet::new();
    set.insert(CoordSet::empty(n));
    set.insert(CoordSet::full(n));
    for g in generators {
        if g.ambient_dim() != n {
            return Err(LatticeError::Dimension {
                left: n,
                right: g.ambient_dim(),
            });
        }
        set.insert(g.clone());
    }
    loop {
        let current: Vec<CoordSet> = set.iter().cloned().collect();
        let mut new = Vec::new();
        for (k, a) in current.iter().enumerate() {
            for b in &current[k + 1..] {
                let u = a.union(b);
                if !set.contains(&u) {
                    new.push(u);
                }
                let m = a.intersection(b);
                if !set.contains(&m) {
                    new.push(m);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        set.extend(new);
    }
    Ok(SubspaceLattice {
        n,
        elements: set.into_iter().collect(),
    })
}

pub fn meet(a: &CoordSet, b: &CoordSet) -> Result<CoordSet, LatticeError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(LatticeError::Dimension {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(a.intersection(b))
}

pub fn join(a: &CoordSet, b: &CoordSet) -> Result<CoordSet, LatticeError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(LatticeError::Dimension {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(a.union(b))
}

/// `M₋`: the join of all lattice members that do not lie above `M`.
///
/// The condition is `N ⊉ M` (not `N ≠ M`); with it the predecessor
/// operation is monotone and distributes over joins, which the rest of the
/// pipeline relies on.
pub fn predecessor(lattice: &SubspaceLattice, m: &CoordSet) -> Result<CoordSet, LatticeError> {
    if !lattice.contains(m) {
        return Err(LatticeError::Membership(m.clone()));
    }
    let mut acc = CoordSet::empty(lattice.ambient_dim());
    for e in lattice.elements() {
        if !m.is_subset(e) {
            acc = acc.union(e);
        }
    }
    Ok(acc)
}

/// True iff `M ⊆ N` or `N ⊆ M`.
pub fn comparable(m: &CoordSet, n: &CoordSet) -> bool {
    m.is_subset(n) || n.is_subset(m)
}

/// The members that carry rank-one operators: `N ≠ ∅` with `N₋ ≠ {1..n}`,
/// together with a cached `N ↦ N₋` table.
#[derive(Clone, PartialEq, Eq)]
pub struct InterestingFamily {
    members: Vec<CoordSet>,
    pred: BTreeMap<CoordSet, CoordSet>,
}

impl InterestingFamily {
    pub fn members(&self) -> &[CoordSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: &CoordSet) -> bool {
        self.pred.contains_key(n)
    }

    pub fn predecessor_of(&self, n: &CoordSet) -> Option<&CoordSet> {
        self.pred.get(n)
    }

    /// `N₋^⊥` as a coordinate set: the complement of the cached `N₋`.
    pub fn co_support(&self, n: &CoordSet) -> Option<CoordSet> {
        self.pred.get(n).map(CoordSet::complement)
    }
}

pub fn interesting_family(lattice: &SubspaceLattice) -> InterestingFamily {
    let mut members = Vec::new();
    let mut pred = BTreeMap::new();
    for e in lattice.elements() {
        if e.is_empty() {
            continue;
        }
        let p = predecessor(lattice, e).expect("element of the lattice");
        if !p.is_full() {
            members.push(e.clone());
            pred.insert(e.clone(), p);
        }
    }
    InterestingFamily { members, pred }
}

/// Structural sanity check: the members with `N₋ ≠ full` join to the whole
/// space, and so do the co-supports `N₋^⊥` of the nonzero members. Both
/// identities hold for every closed lattice of coordinate sets.
pub fn validate_cdl(lattice: &SubspaceLattice) -> bool {
    let n = lattice.ambient_dim();
    let mut first = CoordSet::empty(n);
    let mut second = CoordSet::empty(n);
    for e in lattice.elements() {
        let p = predecessor(lattice, e).expect("element of the lattice");
        if !p.is_full() {
            first = first.union(e);
        }
        if !e.is_empty() {
            second = second.union(&p.complement());
        }
    }
    first.is_full() && second.is_full()
}

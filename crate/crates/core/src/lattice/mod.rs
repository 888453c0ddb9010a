//! Integer lattices with a symmetric pairing, divisor classes and lattice maps.
//!
//! Every quantity is an arbitrary-precision integer. Class vectors are plain
//! coefficient vectors; the lattice they live in is passed alongside them and
//! dimensions are checked at each pairing.

mod enumerate;
mod normal_form;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use enumerate::{
    enumerate_classes, enumerator, enumerator_names, BoxEnumerator, ClassEnumerator, ClassQuery,
    EllipsoidEnumerator,
};
pub use normal_form::{elementary_divisors, hermite_normal_form, integer_kernel, solve_integral};

/// Coefficient vector of a divisor class in a declared lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector(Vec<BigInt>);

impl ClassVector {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        ClassVector(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ClassVector(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        ClassVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[index] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> ClassVector {
        ClassVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Zero-extends the vector to `rank` coordinates.
    pub fn extended(&self, rank: usize) -> ClassVector {
        let mut coeffs = self.0.clone();
        coeffs.resize(rank, BigInt::zero());
        ClassVector(coeffs)
    }

    /// Renders the class as a signed sum of basis labels, e.g. `-F-3K`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (c, label) in self.0.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Add for &ClassVector {
    type Output = ClassVector;

    fn add(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.len(), rhs.len(), "class vectors of different rank");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassVector {
    type Output = ClassVector;

    fn sub(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.len(), rhs.len(), "class vectors of different rank");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassVector {
    type Output = ClassVector;

    fn neg(self) -> ClassVector {
        ClassVector(self.0.iter().map(|c| -c).collect())
    }
}

/// Counts of positive, negative and zero eigenvalues of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// A free abelian group with a symmetric integer pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    labels: Vec<String>,
    gram: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidLattice(format!(
                "gram matrix must be {rank}x{rank}"
            )));
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..rank {
            if labels[i + 1..].contains(&labels[i]) {
                return Err(Error::InvalidLattice(format!(
                    "duplicate basis label `{}`",
                    labels[i]
                )));
            }
        }
        Ok(IntLattice { labels, gram })
    }

    /// Like [`IntLattice::new`] but additionally requires signature `(1, rank-1)`.
    pub fn picard(labels: Vec<String>, gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let lattice = Self::new(labels, gram)?;
        if !lattice.is_picard_type() {
            return Err(Error::InvalidLattice(format!(
                "signature {:?} is not (1, {})",
                lattice.signature(),
                lattice.rank() - 1
            )));
        }
        Ok(lattice)
    }

    pub fn from_i64(labels: &[&str], gram: &[&[i64]]) -> Result<Self> {
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            gram.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// `Z^{1,n}`: basis `H, E1, ..., En` with gram `diag(1, -1, ..., -1)`.
    pub fn blowup_plane(n: usize) -> Self {
        let rank = n + 1;
        let mut labels = vec!["H".to_string()];
        labels.extend((1..=n).map(|i| format!("E{i}")));
        let gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match (i, j) {
                        (0, 0) => BigInt::one(),
                        _ if i == j => -BigInt::one(),
                        _ => BigInt::zero(),
                    })
                    .collect()
            })
            .collect();
        IntLattice { labels, gram }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    pub fn check(&self, v: &ClassVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `u^T G v`.
    pub fn pair(&self, u: &ClassVector, v: &ClassVector) -> Result<BigInt> {
        self.check(u)?;
        self.check(v)?;
        let mut total = BigInt::zero();
        for (i, ui) in u.coeffs().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, vj) in v.coeffs().iter().enumerate() {
                if !vj.is_zero() {
                    row += &self.gram[i][j] * vj;
                }
            }
            total += ui * row;
        }
        Ok(total)
    }

    pub fn square(&self, v: &ClassVector) -> Result<BigInt> {
        self.pair(v, v)
    }

    /// The vector `G v` of pairings of `v` with each basis element.
    pub fn pairings(&self, v: &ClassVector) -> Result<Vec<BigInt>> {
        self.check(v)?;
        Ok(self
            .gram
            .iter()
            .map(|row| row.iter().zip(v.coeffs()).map(|(g, c)| g * c).sum())
            .collect())
    }

    /// Exact signature via congruence diagonalisation over the rationals.
    pub fn signature(&self) -> Signature {
        symmetric_signature(&self.gram)
    }

    pub fn is_picard_type(&self) -> bool {
        let sig = self.signature();
        sig.positive == 1 && sig.zero == 0
    }

    /// Sublattice spanned by `basis` (given in coordinates of `self`), with the
    /// restricted pairing.
    pub fn restrict(&self, labels: Vec<String>, basis: &[ClassVector]) -> Result<IntLattice> {
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        let mut gram = Vec::with_capacity(basis.len());
        for u in basis {
            let pu = self.pairings(u)?;
            gram.push(
                basis
                    .iter()
                    .map(|v| pu.iter().zip(v.coeffs()).map(|(a, b)| a * b).sum())
                    .collect(),
            );
        }
        IntLattice::new(labels, gram)
    }
}

pub(crate) fn symmetric_signature(gram: &[Vec<BigInt>]) -> Signature {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish; use an off-diagonal
                // entry to create a nonzero pivot by the congruence e_i += e_j.
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    None => {
                        sig.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let factor = &a[i][p] / &d;
            if factor.is_zero() {
                continue;
            }
            for &j in &active {
                let v = &factor * &a[p][j];
                a[i][j] -= v;
            }
        }
    }
    sig
}

/// An integer linear map between lattices acting on column vectors;
/// `matrix` has `target_rank` rows and `source_rank` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source_rank: usize,
    matrix: Vec<Vec<BigInt>>,
}

impl LatticeMap {
    pub fn new(source_rank: usize, matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        if matrix.iter().any(|row| row.len() != source_rank) {
            return Err(Error::Input("lattice map rows must have source rank".into()));
        }
        Ok(LatticeMap {
            source_rank,
            matrix,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let source_rank = rows.first().map_or(0, |r| r.len());
        Self::new(
            source_rank,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a map from the images of the source basis vectors.
    pub fn from_columns(target_rank: usize, columns: &[ClassVector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != target_rank) {
            return Err(Error::Input("column length must equal target rank".into()));
        }
        let matrix = (0..target_rank)
            .map(|i| columns.iter().map(|c| c.coeffs()[i].clone()).collect())
            .collect();
        Self::new(columns.len(), matrix)
    }

    pub fn identity(rank: usize) -> Self {
        LatticeMap {
            source_rank: rank,
            matrix: (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn negation(rank: usize) -> Self {
        let id = Self::identity(rank);
        LatticeMap {
            source_rank: rank,
            matrix: id
                .matrix
                .into_iter()
                .map(|row| row.into_iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> ClassVector {
        ClassVector(self.matrix.iter().map(|row| row[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<ClassVector> {
        (0..self.source_rank).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: &ClassVector) -> Result<ClassVector> {
        if v.len() != self.source_rank {
            return Err(Error::DimensionMismatch {
                expected: self.source_rank,
                found: v.len(),
            });
        }
        Ok(ClassVector(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(v.coeffs()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if other.target_rank() != self.source_rank {
            return Err(Error::DimensionMismatch {
                expected: self.source_rank,
                found: other.target_rank(),
            });
        }
        let cols = other
            .columns()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        LatticeMap::from_columns(self.target_rank(), &cols)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LatticeMap) -> LatticeMap {
        let cols = self.source_rank + other.source_rank;
        let mut matrix = Vec::with_capacity(self.target_rank() + other.target_rank());
        for row in &self.matrix {
            let mut r = row.clone();
            r.resize(cols, BigInt::zero());
            matrix.push(r);
        }
        for row in &other.matrix {
            let mut r = vec![BigInt::zero(); self.source_rank];
            r.extend(row.iter().cloned());
            matrix.push(r);
        }
        LatticeMap {
            source_rank: cols,
            matrix,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.source_rank)
    }

    pub fn is_involution(&self) -> bool {
        self.target_rank() == self.source_rank
            && self.compose(self).map(|sq| sq.is_identity()).unwrap_or(false)
    }

    /// Checks `M^T G_target M = G_source`.
    pub fn is_isometry(&self, source: &IntLattice, target: &IntLattice) -> bool {
        if source.rank() != self.source_rank || target.rank() != self.target_rank() {
            return false;
        }
        let cols = self.columns();
        for i in 0..cols.len() {
            for j in i..cols.len() {
                match target.pair(&cols[i], &cols[j]) {
                    Ok(p) if &p == source.entry(i, j) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// `u . v` in `lattice`.
pub fn pair(lattice: &IntLattice, u: &ClassVector, v: &ClassVector) -> Result<BigInt> {
    lattice.pair(u, v)
}

fn half_exact(value: BigInt, what: &'static str) -> Result<BigInt> {
    if value.is_odd() {
        return Err(Error::NonIntegral { what, value });
    }
    Ok(value / 2)
}

/// Arithmetic genus of a curve in class `d`: `D.(D+K)/2 + 1`.
pub fn adjunction_genus(
    lattice: &IntLattice,
    d: &ClassVector,
    canonical: &ClassVector,
) -> Result<BigInt> {
    lattice.check(canonical)?;
    let value = lattice.pair(d, &(d + canonical))?;
    Ok(half_exact(value, "genus")? + 1)
}

/// Riemann–Roch value `D.(D-K)/2 + 1`.
///
/// This equals `l(D)` only when the higher cohomology of `D` vanishes (e.g.
/// `D - K` ample on a rational surface); the caller is responsible for that
/// hypothesis.
pub fn riemann_roch_dim(
    lattice: &IntLattice,
    d: &ClassVector,
    canonical: &ClassVector,
) -> Result<BigInt> {
    lattice.check(canonical)?;
    let value = lattice.pair(d, &(d - canonical))?;
    Ok(half_exact(value, "Riemann-Roch dimension")? + 1)
}

/// Reflection fixing `K` and acting as `-1` on `K^⊥`:
/// `D ↦ -D + 2 (D.K / K.K) K`. This is the Geiser involution for `K.K = 2`
/// and the Bertini involution for `K.K = 1`.
pub fn geiser_bertini(
    lattice: &IntLattice,
    d: &ClassVector,
    canonical: &ClassVector,
) -> Result<ClassVector> {
    let kk = lattice.square(canonical)?;
    let two = BigInt::from(2);
    if !(kk.is_one() || kk == two) {
        return Err(Error::UnsupportedDegree(kk));
    }
    let dk = lattice.pair(d, canonical)?;
    let (factor, rem) = (&two * &dk).div_rem(&kk);
    if !rem.is_zero() {
        return Err(Error::Invariant("non-integral reflection".into()));
    }
    Ok(&canonical.scaled(&factor) - d)
}

/// The involution `D ↦ -D + (D.K) K` (for `K.K = 2`) or `D ↦ -D + 2 (D.K) K`
/// (for `K.K = 1`) as a matrix.
pub fn geiser_bertini_map(lattice: &IntLattice, canonical: &ClassVector) -> Result<LatticeMap> {
    let n = lattice.rank();
    let cols = (0..n)
        .map(|j| geiser_bertini(lattice, &ClassVector::unit(n, j), canonical))
        .collect::<Result<Vec<_>>>()?;
    LatticeMap::from_columns(n, &cols)
}

/// Basis (in Hermite normal form) of the sublattice fixed by the involution `sigma`.
///
/// The result is the full integer kernel of `sigma - id`, hence primitive.
pub fn fixed_sublattice(sigma: &LatticeMap) -> Result<Vec<ClassVector>> {
    if !sigma.is_involution() {
        return Err(Error::NotInvolution);
    }
    let n = sigma.source_rank();
    let shifted: Vec<Vec<BigInt>> = sigma
        .matrix()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| if i == j { x - 1 } else { x.clone() })
                .collect()
        })
        .collect();
    let kernel = integer_kernel(&shifted, n);
    Ok(hermite_normal_form(&kernel)
        .into_iter()
        .map(ClassVector::new)
        .collect())
}

//! Enumeration of classes with prescribed self-intersection and canonical degree.
//!
//! On a lattice of signature `(1, rho-1)` with `K.K > 0`, the form is negative
//! definite on `K^⊥`, so the classes `v` with `v.v = n` and `v.K = k` lie on a
//! compact ellipsoid. The strategies here find all of them.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ClassVector, IntLattice};
use crate::error::{Error, Result};

/// Parameters of a class search: all `v` with `v.v = self_intersection` and
/// `v.K` in `k_range`.
#[derive(Clone, Debug)]
pub struct ClassQuery<'a> {
    pub lattice: &'a IntLattice,
    pub canonical: &'a ClassVector,
    pub self_intersection: BigInt,
    pub k_range: RangeInclusive<BigInt>,
}

impl<'a> ClassQuery<'a> {
    pub fn new(
        lattice: &'a IntLattice,
        canonical: &'a ClassVector,
        self_intersection: impl Into<BigInt>,
        k_range: RangeInclusive<BigInt>,
    ) -> Self {
        ClassQuery {
            lattice,
            canonical,
            self_intersection: self_intersection.into(),
            k_range,
        }
    }

    fn accepts(&self, v: &ClassVector, k_pairings: &[BigInt]) -> Result<bool> {
        let vk: BigInt = v.coeffs().iter().zip(k_pairings).map(|(a, b)| a * b).sum();
        if !self.k_range.contains(&vk) {
            return Ok(false);
        }
        Ok(self.lattice.square(v)? == self.self_intersection)
    }
}

/// A strategy for [`ClassQuery`]. Implementations return the matching classes
/// sorted lexicographically by coefficients.
pub trait ClassEnumerator: Send + Sync {
    fn name(&self) -> &str;

    fn enumerate(&self, query: &ClassQuery<'_>) -> Result<Vec<ClassVector>>;
}

/// Exhaustive search of the Hodge ellipsoid by a Fincke–Pohst recursion over an
/// exact rational `LDL^T` factorisation of the positive definite majorant
/// `P(v) = 2 (v.K)^2 - (K.K) (v.v)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EllipsoidEnumerator;

/// Naive search over the coefficient box `[-radius, radius]^rank`. Complete
/// only when every solution lies inside the box.
#[derive(Clone, Copy, Debug)]
pub struct BoxEnumerator {
    pub radius: i64,
}

impl Default for BoxEnumerator {
    fn default() -> Self {
        BoxEnumerator { radius: 4 }
    }
}

impl ClassEnumerator for EllipsoidEnumerator {
    fn name(&self) -> &str {
        "ellipsoid"
    }

    fn enumerate(&self, query: &ClassQuery<'_>) -> Result<Vec<ClassVector>> {
        let lattice = query.lattice;
        lattice.check(query.canonical)?;
        let kk = lattice.square(query.canonical)?;
        if !kk.is_positive() {
            return Err(Error::Input(format!("K.K = {kk} must be positive")));
        }
        if query.k_range.is_empty() {
            return Ok(Vec::new());
        }
        let kp = lattice.pairings(query.canonical)?;
        let n = lattice.rank();

        // P = 2 kp kp^T - (K.K) G
        let form: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(2) * &kp[i] * &kp[j] - &kk * lattice.entry(i, j))
                    .collect()
            })
            .collect();
        let (diag, upper) = ldl(&form)?;

        let (lo, hi) = (query.k_range.start(), query.k_range.end());
        let max_k2 = std::cmp::max(lo * lo, hi * hi);
        let bound = BigInt::from(2) * max_k2 - &kk * &query.self_intersection;
        if bound.is_negative() {
            return Ok(Vec::new());
        }

        let mut search = Search {
            diag: &diag,
            upper: &upper,
            current: vec![BigInt::zero(); n],
            found: Vec::new(),
        };
        search.descend(n, BigRational::from_integer(bound));

        let mut out = Vec::new();
        for coeffs in search.found {
            let v = ClassVector::new(coeffs);
            if query.accepts(&v, &kp)? {
                out.push(v);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `P = U^T D U` with `U` unit upper triangular. Fails if `P` is not positive
/// definite, which for the majorant means the pairing is not negative definite
/// on `K^⊥`.
fn ldl(form: &[Vec<BigInt>]) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = form.len();
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = BigRational::from_integer(form[i][i].clone());
        for k in 0..i {
            di -= &d[k] * &u[k][i] * &u[k][i];
        }
        if !di.is_positive() {
            return Err(Error::Invariant(
                "pairing is not negative definite on the orthogonal complement of K".into(),
            ));
        }
        u[i][i] = BigRational::one();
        for j in i + 1..n {
            let mut s = BigRational::from_integer(form[i][j].clone());
            for k in 0..i {
                s -= &d[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = s / &di;
        }
        d.push(di);
    }
    Ok((d, u))
}

struct Search<'a> {
    diag: &'a [BigRational],
    upper: &'a [Vec<BigRational>],
    current: Vec<BigInt>,
    found: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Assigns coordinate `level - 1` given coordinates `level..n` and the
    /// remaining budget of the quadratic form.
    fn descend(&mut self, level: usize, budget: BigRational) {
        if level == 0 {
            self.found.push(self.current.clone());
            return;
        }
        let i = level - 1;
        let n = self.current.len();
        let mut shift = BigRational::zero();
        for j in i + 1..n {
            if !self.current[j].is_zero() {
                shift += &self.upper[i][j] * BigRational::from_integer(self.current[j].clone());
            }
        }
        // admissible x satisfy d_i (x + shift)^2 <= budget; the set is an
        // interval around -shift, so scan outwards from floor(-shift)
        let center = (-&shift).floor().to_integer();
        let cost = |x: &BigInt| {
            let t = BigRational::from_integer(x.clone()) + &shift;
            &self.diag[i] * &t * &t
        };
        let mut x = center.clone();
        loop {
            let c = cost(&x);
            if c > budget {
                break;
            }
            self.current[i] = x.clone();
            self.descend(i, &budget - c);
            x -= 1;
        }
        let mut x = center + 1;
        loop {
            let c = cost(&x);
            if c > budget {
                break;
            }
            self.current[i] = x.clone();
            self.descend(i, &budget - c);
            x += 1;
        }
        self.current[i] = BigInt::zero();
    }
}

impl ClassEnumerator for BoxEnumerator {
    fn name(&self) -> &str {
        "box"
    }

    fn enumerate(&self, query: &ClassQuery<'_>) -> Result<Vec<ClassVector>> {
        let lattice = query.lattice;
        lattice.check(query.canonical)?;
        let n = lattice.rank();
        let small = |x: &BigInt| {
            x.to_i64()
                .filter(|v| v.abs() < 1 << 24)
                .ok_or_else(|| Error::Input("box search needs machine-size entries".into()))
        };
        let gram: Vec<Vec<i64>> = lattice
            .gram()
            .iter()
            .map(|row| row.iter().map(small).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let kp: Vec<i64> = lattice
            .pairings(query.canonical)?
            .iter()
            .map(small)
            .collect::<Result<_>>()?;
        let target = small(&query.self_intersection)?;
        let (lo, hi) = (small(query.k_range.start())?, small(query.k_range.end())?);
        let r = self.radius;
        if !(0..=1 << 16).contains(&r) {
            return Err(Error::Input("box radius out of range".into()));
        }

        let mut out = Vec::new();
        let mut v = vec![-r; n];
        loop {
            let vk: i64 = v.iter().zip(&kp).map(|(a, b)| a * b).sum();
            if lo <= vk && vk <= hi {
                let mut vv = 0i64;
                for i in 0..n {
                    if v[i] == 0 {
                        continue;
                    }
                    let row: i64 = gram[i].iter().zip(&v).map(|(g, x)| g * x).sum();
                    vv += v[i] * row;
                }
                if vv == target {
                    out.push(ClassVector::from_i64(&v));
                }
            }
            // odometer, last coordinate fastest: lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return Ok(out);
                }
                i -= 1;
                if v[i] < r {
                    v[i] += 1;
                    break;
                }
                v[i] = -r;
            }
        }
    }
}

/// Names accepted by [`enumerator`].
pub fn enumerator_names() -> &'static [&'static str] {
    &["ellipsoid", "box", "box:<radius>"]
}

/// Looks up an enumeration strategy by name: `ellipsoid`, `box` (radius 4) or
/// `box:<radius>`.
pub fn enumerator(name: &str) -> Result<Box<dyn ClassEnumerator>> {
    match name {
        "ellipsoid" => Ok(Box::new(EllipsoidEnumerator)),
        "box" => Ok(Box::new(BoxEnumerator::default())),
        _ => {
            let radius = name
                .strip_prefix("box:")
                .and_then(|r| r.parse::<i64>().ok())
                .filter(|r| (0..=1 << 16).contains(r))
                .ok_or_else(|| Error::UnknownStrategy(name.to_string()))?;
            Ok(Box::new(BoxEnumerator { radius }))
        }
    }
}

/// All `v` with `v.v = self_int` and `v.K` in `k_range`, in lexicographic order,
/// found by [`EllipsoidEnumerator`].
pub fn enumerate_classes(
    lattice: &IntLattice,
    canonical: &ClassVector,
    self_int: impl Into<BigInt>,
    k_range: RangeInclusive<BigInt>,
) -> Result<Vec<ClassVector>> {
    EllipsoidEnumerator.enumerate(&ClassQuery::new(lattice, canonical, self_int, k_range))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(a: i64, b: i64) -> RangeInclusive<BigInt> {
        BigInt::from(a)..=BigInt::from(b)
    }

    fn canonical(n: usize) -> ClassVector {
        let mut k = vec![1i64; n + 1];
        k[0] = -3;
        ClassVector::from_i64(&k)
    }

    #[test]
    fn d2_worked_candidates() {
        let l = IntLattice::from_i64(&["F", "K"], &[&[0, -2], &[-2, 2]]).unwrap();
        let k = ClassVector::from_i64(&[0, 1]);
        let found = enumerate_classes(&l, &k, 6, range(-4, 4)).unwrap();
        // D = hF - lK for (h, l) in {(1,-3), (-1,-1), (1,1), (-1,3)}
        let expected: Vec<ClassVector> = [(1, -3), (-1, -1), (1, 1), (-1, 3)]
            .iter()
            .map(|&(h, l)| ClassVector::from_i64(&[h, -l]))
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(found, expected);
        let narrow = enumerate_classes(&l, &k, 6, range(-4, 2)).unwrap();
        assert_eq!(
            narrow,
            vec![ClassVector::from_i64(&[-1, -3]), ClassVector::from_i64(&[1, -1])]
        );
    }

    #[test]
    fn zero_class_found() {
        let l = IntLattice::blowup_plane(3);
        let found = enumerate_classes(&l, &canonical(3), 0, range(0, 0)).unwrap();
        assert!(found.contains(&ClassVector::zero(4)));
    }

    #[test]
    fn exceptional_counts_small_degrees() {
        for (n, count) in [(0, 0), (1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56)] {
            let l = IntLattice::blowup_plane(n);
            let found = enumerate_classes(&l, &canonical(n), -1, range(-1, -1)).unwrap();
            assert_eq!(found.len(), count, "n = {n}");
        }
    }

    #[test]
    fn rejects_non_positive_canonical() {
        let l = IntLattice::blowup_plane(9);
        let err = enumerate_classes(&l, &canonical(9), -1, range(-1, -1)).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn detects_indefinite_complement() {
        // signature (2, 1): K^⊥ is not negative definite
        let l = IntLattice::from_i64(&["a", "b", "c"], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])
            .unwrap();
        let k = ClassVector::from_i64(&[1, 0, 0]);
        let err = enumerate_classes(&l, &k, -1, range(0, 0)).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
    }

    #[test]
    fn box_agrees_with_ellipsoid_on_small_ranks() {
        for n in 0..=5 {
            let l = IntLattice::blowup_plane(n);
            let k = canonical(n);
            for (self_int, lo, hi) in [(-1, -1, -1), (0, -2, -2), (1, -3, -3), (-2, 0, 0)] {
                let q = ClassQuery::new(&l, &k, self_int, range(lo, hi));
                let a = EllipsoidEnumerator.enumerate(&q).unwrap();
                let b = BoxEnumerator { radius: 3 }.enumerate(&q).unwrap();
                assert_eq!(a, b, "n = {n}, v.v = {self_int}");
            }
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(enumerator("ellipsoid").unwrap().name(), "ellipsoid");
        assert_eq!(enumerator("box:7").unwrap().name(), "box");
        assert!(matches!(
            enumerator("simplex"),
            Err(Error::UnknownStrategy(_))
        ));
    }
}

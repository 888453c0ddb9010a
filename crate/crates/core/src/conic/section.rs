//! Sections of `O(2)` on `P(O(a1) + O(a2) + O(a3))`, given as symmetric 3x3
//! matrices of binary forms, and their singular fibers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::forms::BinaryForm;
use crate::error::{Error, Result};

/// Symmetric matrix with `entries[i][j]` of degree `a_i + a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicMatrix {
    splitting: [i64; 3],
    entries: [[BinaryForm; 3]; 3],
}

impl ConicMatrix {
    pub fn new(splitting: [i64; 3], entries: [[BinaryForm; 3]; 3]) -> Result<Self> {
        if !(splitting[0] <= splitting[1] && splitting[1] <= splitting[2]) {
            return Err(Error::Input(format!(
                "splitting {splitting:?} must be nondecreasing"
            )));
        }
        for i in 0..3 {
            for j in 0..3 {
                let want = splitting[i] + splitting[j];
                if want < 0 {
                    return Err(Error::Input(format!(
                        "entry ({i},{j}) would have negative degree {want}"
                    )));
                }
                if entries[i][j].degree() as i64 != want {
                    return Err(Error::Input(format!(
                        "entry ({i},{j}) has degree {}, expected {want}",
                        entries[i][j].degree()
                    )));
                }
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Input(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(ConicMatrix { splitting, entries })
    }

    pub fn diagonal(splitting: [i64; 3], diag: [BinaryForm; 3]) -> Result<Self> {
        let zero = |i: usize, j: usize| {
            let d = splitting[i] + splitting[j];
            BinaryForm::zero(d.max(0) as usize)
        };
        let [p0, p1, p2] = diag;
        Self::new(
            splitting,
            [
                [p0, zero(0, 1), zero(0, 2)],
                [zero(1, 0), p1, zero(1, 2)],
                [zero(2, 0), zero(2, 1), p2],
            ],
        )
    }

    pub fn splitting(&self) -> [i64; 3] {
        self.splitting
    }

    pub fn entries(&self) -> &[[BinaryForm; 3]; 3] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BinaryForm {
        &self.entries[i][j]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.entries[i][j].is_zero()))
    }
}

/// `det(M)`, a form of degree `2(a1 + a2 + a3)`.
pub fn discriminant(m: &ConicMatrix) -> BinaryForm {
    let e = |i: usize, j: usize| m.entry(i, j);
    let term = |(i, j, k): (usize, usize, usize)| e(0, i).mul(e(1, j)).mul(e(2, k));
    let plus = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let minus = [(0, 2, 1), (1, 0, 2), (2, 1, 0)];
    let mut det = term(plus[0]);
    for p in &plus[1..] {
        det = det.add(&term(*p)).expect("equal degrees");
    }
    for p in minus {
        det = det.sub(&term(p)).expect("equal degrees");
    }
    det
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    /// exact criterion for diagonal sections: entries squarefree and pairwise coprime
    Smooth,
    Singular,
    /// only the necessary condition (squarefree discriminant) was checked and holds
    NecessaryOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    Undecided,
}

/// Singular fibers of the conic bundle cut out by a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberAnalysis {
    pub discriminant: BinaryForm,
    /// roots of the discriminant on the projective line, with multiplicity
    pub total_fibers: usize,
    /// real roots, with multiplicity
    pub real_fibers: usize,
    pub squarefree: bool,
    /// half the number of real singular fibers, when the discriminant is squarefree
    pub s: Option<usize>,
    pub smoothness: Smoothness,
    /// very ampleness of `O(1)` on the projective bundle
    pub o1_very_ample: Decision,
}

pub fn analyze(m: &ConicMatrix) -> Result<FiberAnalysis> {
    let disc = discriminant(m);
    if disc.is_zero() {
        return Err(Error::Input("the discriminant vanishes identically".into()));
    }
    let total_fibers = disc.degree();
    let real_fibers = disc.real_root_count(true)?;
    let squarefree = disc.is_squarefree();
    let s = if squarefree {
        if real_fibers % 2 == 1 {
            return Err(Error::Invariant(format!(
                "{real_fibers} real roots for a squarefree real form of degree {total_fibers}"
            )));
        }
        Some(real_fibers / 2)
    } else {
        None
    };
    let smoothness = if m.is_diagonal() {
        let d = [m.entry(0, 0), m.entry(1, 1), m.entry(2, 2)];
        let exact = d.iter().all(|p| p.is_squarefree())
            && d[0].is_coprime(d[1])
            && d[0].is_coprime(d[2])
            && d[1].is_coprime(d[2]);
        if exact {
            Smoothness::Smooth
        } else {
            Smoothness::Singular
        }
    } else if squarefree {
        Smoothness::NecessaryOnly
    } else {
        Smoothness::Singular
    };
    let o1_very_ample = if m.splitting().iter().all(|&a| a > 0) {
        Decision::Yes
    } else {
        Decision::Undecided
    };
    Ok(FiberAnalysis {
        discriminant: disc,
        total_fibers,
        real_fibers,
        squarefree,
        s,
        smoothness,
        o1_very_ample,
    })
}

/// Diagonal section `p1 x1^2 + p2 x2^2 + p3 x3^2` with `p_i` the product of
/// `q u - p v` over the roots `p/q` in list `i`.
///
/// Each list must hold `2 a_i` distinct roots and the lists must be disjoint,
/// so the discriminant has `2(a1 + a2 + a3)` simple real roots.
pub fn construct_section(splitting: [i64; 3], roots: [Vec<BigRational>; 3]) -> Result<ConicMatrix> {
    let mut seen = BTreeSet::new();
    for (a, list) in splitting.iter().zip(&roots) {
        if *a < 1 {
            return Err(Error::Input(format!("splitting entries must be positive, got {a}")));
        }
        if list.len() as i64 != 2 * a {
            return Err(Error::Input(format!(
                "a = {a} needs {} roots, got {}",
                2 * a,
                list.len()
            )));
        }
        for r in list {
            if !seen.insert(r.clone()) {
                return Err(Error::Input(format!("root {r} is repeated")));
            }
        }
    }
    let mut pairs: Vec<(i64, &Vec<BigRational>)> = splitting.iter().copied().zip(&roots).collect();
    pairs.sort_by_key(|(a, _)| *a);
    let forms: Vec<BinaryForm> = pairs
        .iter()
        .map(|(_, list)| {
            list.iter()
                .fold(BinaryForm::constant(BigInt::from(1)), |acc, r| {
                    acc.mul(&BinaryForm::linear_factor(r))
                })
        })
        .collect();
    let sorted = [pairs[0].0, pairs[1].0, pairs[2].0];
    let [p0, p1, p2]: [BinaryForm; 3] = forms.try_into().expect("three forms");
    ConicMatrix::diagonal(sorted, [p0, p1, p2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> BigRational {
        BigRational::from_integer(p.into())
    }

    fn ex2() -> ConicMatrix {
        ConicMatrix::diagonal(
            [1, 1, 1],
            [
                BinaryForm::from_i64(&[0, 1, 0]),
                BinaryForm::from_i64(&[-1, 0, 1]),
                BinaryForm::from_i64(&[-4, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ex2_discriminant() {
        let m = ex2();
        let d = discriminant(&m);
        let expected = BinaryForm::from_i64(&[0, 1, 0])
            .mul(&BinaryForm::from_i64(&[-1, 0, 1]))
            .mul(&BinaryForm::from_i64(&[-4, 0, 1]));
        assert_eq!(d, expected);
        let a = analyze(&m).unwrap();
        assert_eq!((a.total_fibers, a.real_fibers, a.squarefree, a.s), (6, 6, true, Some(3)));
        assert_eq!(a.smoothness, Smoothness::Smooth);
        assert_eq!(a.o1_very_ample, Decision::Yes);
    }

    #[test]
    fn ex1_fibers_include_infinity() {
        // splitting (0, 0, 2) with diagonal 1, 1, u^3 v - u v^3
        let m = ConicMatrix::diagonal(
            [0, 0, 2],
            [
                BinaryForm::constant(1),
                BinaryForm::constant(1),
                BinaryForm::from_i64(&[0, -1, 0, 1, 0]),
            ],
        )
        .unwrap();
        let d = discriminant(&m);
        assert_eq!(d.infinity_multiplicity(), 1);
        let t = d.dehomogenize();
        for r in [-1, 0, 1] {
            assert_eq!(t.eval(&q(r)), q(0));
        }
        let a = analyze(&m).unwrap();
        assert_eq!((a.total_fibers, a.real_fibers, a.s), (4, 4, Some(2)));
        assert_eq!(a.o1_very_ample, Decision::Undecided);
    }

    #[test]
    fn squares_are_not_squarefree() {
        let m = ConicMatrix::diagonal(
            [1, 1, 1],
            [
                BinaryForm::from_i64(&[0, 0, 1]),
                BinaryForm::from_i64(&[1, 0, 0]),
                BinaryForm::from_i64(&[1, 2, 1]),
            ],
        )
        .unwrap();
        let a = analyze(&m).unwrap();
        assert!(!a.squarefree);
        assert_eq!(a.s, None);
        assert_eq!(a.smoothness, Smoothness::Singular);
    }

    #[test]
    fn complex_roots_pair_up() {
        let m = ConicMatrix::diagonal(
            [1, 1, 1],
            [
                BinaryForm::from_i64(&[0, 1, 0]),
                BinaryForm::from_i64(&[1, 0, 1]),
                BinaryForm::from_i64(&[4, 0, 1]),
            ],
        )
        .unwrap();
        let a = analyze(&m).unwrap();
        assert_eq!((a.total_fibers, a.real_fibers, a.s), (6, 2, Some(1)));
    }

    #[test]
    fn constructed_sections() {
        let m = construct_section([1, 1, 1], [vec![q(0), q(5)], vec![q(1), q(-1)], vec![q(2), q(-2)]])
            .unwrap();
        let a = analyze(&m).unwrap();
        assert_eq!((a.real_fibers, a.squarefree, a.s), (6, true, Some(3)));
        let m = construct_section(
            [2, 1, 1],
            [vec![q(0), q(5), q(6), q(7)], vec![q(1), q(-1)], vec![q(2), q(-2)]],
        )
        .unwrap();
        assert_eq!(m.splitting(), [1, 1, 2]);
        assert_eq!(analyze(&m).unwrap().s, Some(4));
        let clash = construct_section([1, 1, 1], [vec![q(0), q(1)], vec![q(1), q(-1)], vec![q(2), q(-2)]]);
        assert!(clash.is_err());
    }

    #[test]
    fn degree_pattern_enforced() {
        let bad = ConicMatrix::diagonal(
            [1, 1, 1],
            [BinaryForm::constant(1), BinaryForm::constant(1), BinaryForm::constant(1)],
        );
        assert!(bad.is_err());
    }
}

//! Dense univariate polynomials over the rationals and Sturm root counting.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<BigRational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`
    pub fn linear_root(root: &BigRational) -> Self {
        Self::new(vec![-root.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UnivariatePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::ZeroPolynomial)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(BigRational::one() / l)),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Sign changes in a sequence of signs, skipping zeros.
    fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let (_, r) = seq.last().unwrap().div_rem(&next).expect("nonzero divisor");
            seq.push(next);
            next = r.neg();
        }
        seq
    }

    /// Number of distinct real roots.
    pub fn count_real_roots_distinct(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let sign = |c: &BigRational| {
            if c.is_positive() {
                1i8
            } else if c.is_negative() {
                -1
            } else {
                0
            }
        };
        let at_plus = Self::sign_changes(seq.iter().map(|p| sign(p.leading().unwrap())));
        let at_minus = Self::sign_changes(seq.iter().map(|p| {
            let s = sign(p.leading().unwrap());
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        Ok(at_minus - at_plus)
    }

    /// Number of real roots counted with multiplicity, from the distinct root
    /// counts along the chain `g, gcd(g, g'), ...`.
    pub fn count_real_roots_with_multiplicity(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut total = 0;
        let mut g = self.clone();
        while g.degree().unwrap_or(0) > 0 {
            total += g.count_real_roots_distinct()?;
            g = g.gcd(&g.derivative());
        }
        Ok(total)
    }
}

/// Real root count of `p`, distinct or with multiplicity.
pub fn sturm_count(p: &UnivariatePoly, with_multiplicity: bool) -> Result<usize> {
    if with_multiplicity {
        p.count_real_roots_with_multiplicity()
    } else {
        p.count_real_roots_distinct()
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show = !a.is_one() || i == 0;
            if show {
                write!(f, "{a}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UnivariatePoly {
        UnivariatePoly::from_ints(c)
    }

    #[test]
    fn small_counts() {
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), false).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), false).unwrap(), 0);
        // t (t^2 - 1)(t^2 - 4) = t^5 - 5t^3 + 4t
        assert_eq!(sturm_count(&p(&[0, 4, 0, -5, 0, 1]), false).unwrap(), 5);
        assert_eq!(sturm_count(&p(&[7]), false).unwrap(), 0);
        assert!(matches!(sturm_count(&UnivariatePoly::zero(), false), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn multiplicity_chain() {
        // (t - 1)^3 (t + 2)^2 (t^2 + 1)
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[2, 1]))
            .mul(&p(&[2, 1]))
            .mul(&p(&[1, 0, 1]));
        assert_eq!(sturm_count(&f, false).unwrap(), 2);
        assert_eq!(sturm_count(&f, true).unwrap(), 5);
        assert!(!f.is_squarefree());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "t^3 - t");
        assert_eq!(p(&[4, 0, -5]).to_string(), "-5*t^2 + 4");
    }

    proptest! {
        // product of known linear and irreducible quadratic factors
        #[test]
        fn counts_match_construction(
            roots in proptest::collection::btree_set(-20i64..20, 0..6),
            quads in proptest::collection::vec((1i64..10, -5i64..5), 0..3),
        ) {
            let mut f = p(&[1]);
            for &r in &roots {
                f = f.mul(&p(&[-r, 1]));
            }
            for &(c, b) in &quads {
                // (t - b)^2 + c has no real roots
                f = f.mul(&p(&[b * b + c, -2 * b, 1]));
            }
            prop_assert_eq!(sturm_count(&f, false).unwrap(), roots.len());
            let deg = f.degree().unwrap();
            prop_assert_eq!((deg - roots.len()) % 2, 0);
        }
    }
}

//! The Chow ring `Z[H, E] / (E^2, H^3 - c E H^2)` of a projectivised rank-3
//! bundle over the projective line.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exponents of `H` and `E` for each basis element `1, H, E, H^2, HE, H^2E`.
const BASIS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1)];

/// An element of the Chow ring, in the basis `1, H, E, H^2, HE, H^2E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    c: BigInt,
    coeffs: [BigInt; 6],
}

impl ChowClass {
    pub fn new(c: impl Into<BigInt>, coeffs: [BigInt; 6]) -> Self {
        ChowClass {
            c: c.into(),
            coeffs,
        }
    }

    pub fn zero(c: impl Into<BigInt>) -> Self {
        Self::new(c, Default::default())
    }

    fn basis(c: impl Into<BigInt>, index: usize, k: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(c);
        x.coeffs[index] = k.into();
        x
    }

    pub fn one(c: impl Into<BigInt>) -> Self {
        Self::basis(c, 0, 1)
    }

    /// `O(1)` of the bundle.
    pub fn h(c: impl Into<BigInt>) -> Self {
        Self::basis(c, 1, 1)
    }

    /// Class of a fiber over a point of the base.
    pub fn e(c: impl Into<BigInt>) -> Self {
        Self::basis(c, 2, 1)
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn coeffs(&self) -> &[BigInt; 6] {
        &self.coeffs
    }

    pub fn scaled(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|x| *x *= &k);
        out
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.c != other.c {
            return Err(Error::Input(format!(
                "classes from rings with c = {} and c = {}",
                self.c, other.c
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.c.clone());
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (h, e) = (BASIS[i].0 + BASIS[j].0, BASIS[i].1 + BASIS[j].1);
                let term = x * y;
                match (h, e) {
                    (_, e) if e > 1 => {}
                    (3, 0) => out.coeffs[5] += &self.c * term,
                    (h, e) if h + e > 3 => {}
                    (h, e) => {
                        let k = BASIS.iter().position(|&b| b == (h, e)).expect("basis monomial");
                        out.coeffs[k] += term;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Degree of the zero-cycle part (the coefficient of the point class `H^2 E`).
    pub fn degree(&self) -> &BigInt {
        &self.coeffs[5]
    }
}

/// Product of two classes; mixed rings are an input error.
pub fn chow_mul(x: &ChowClass, y: &ChowClass) -> Result<ChowClass> {
    x.try_mul(y)
}

pub fn chow_degree(x: &ChowClass) -> BigInt {
    x.degree().clone()
}

impl Add for &ChowClass {
    type Output = ChowClass;

    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("classes from the same ring")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;

    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        self.scaled(-1)
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;

    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("classes from the same ring")
    }
}

/// Numbers attached to a conic bundle `X` of class `2H + aE` in the
/// projectivisation of a bundle with first Chern class `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceIdentities {
    /// `K_X . K_X`
    pub kx2: BigInt,
    /// number of sphere components, `(8 - K_X^2) / 2`
    pub s: BigInt,
    /// `O(1)|_X = x F + y K_X` after twisting to first Chern class `s`
    pub x: BigInt,
    pub y: BigInt,
}

/// Computes `K_X^2`, `s` and the restriction of `O(1)` to `X` by ring
/// arithmetic, and checks them against `8 - 3a - 2c`, `3a/2 + c` and
/// `(s - 2, -1)`.
pub fn surface_class_identities(a: i64, c: i64) -> Result<SurfaceIdentities> {
    if a.is_odd() {
        return Err(Error::Input(format!("a = {a} must be even")));
    }
    let ring = |c: &BigInt| (ChowClass::h(c.clone()), ChowClass::e(c.clone()));
    let c_big = BigInt::from(c);
    let (h, e) = ring(&c_big);
    // K_X = (K_P + X)|_X with K_P = (c - 2) E - 3H and X = 2H + aE
    let x_class = &h.scaled(2) + &e.scaled(a);
    let kx = &e.scaled(a + c - 2) - &h;
    let kx2 = chow_degree(&(&(&kx * &kx) * &x_class));
    let s2 = BigInt::from(8) - &kx2;
    if s2.is_odd() {
        return Err(Error::Invariant(format!("K_X^2 = {kx2} is odd")));
    }
    let s = s2 / 2;

    // twist so that c = s and X = 2H
    let (h, e) = ring(&s);
    let x_class = h.scaled(2);
    let fiber_k = BigInt::from(-2);
    // (x F + y K).F = -2y  against  X.H.E
    let hf = chow_degree(&(&(&x_class * &h) * &e));
    let half: BigInt = &hf / BigInt::from(2);
    let y = -half;
    // (x F + y K).K = -2x + y K^2  against  X.H.K_X
    let kx = &e.scaled(&s - 2) - &h;
    let hk = chow_degree(&(&(&x_class * &h) * &kx));
    let x = (&y * &kx2 - &hk) / -fiber_k;

    let ids = SurfaceIdentities { kx2, s, x, y };
    let closed = SurfaceIdentities {
        kx2: BigInt::from(8 - 3 * a - 2 * c),
        s: BigInt::from(3 * (a / 2) + c),
        x: BigInt::from(3 * (a / 2) + c - 2),
        y: BigInt::from(-1),
    };
    if ids != closed {
        return Err(Error::Invariant(format!(
            "ring computation {ids:?} disagrees with closed forms {closed:?}"
        )));
    }
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let (h, e) = (ChowClass::h(5), ChowClass::e(5));
        assert_eq!(chow_degree(&(&(&e * &h) * &h)), BigInt::from(1));
        assert_eq!(&e * &e, ChowClass::zero(5));
        assert_eq!(chow_degree(&(&(&h * &h) * &h)), BigInt::from(5));
        let h4 = &(&h * &h) * &(&h * &h);
        assert_eq!(h4, ChowClass::zero(5));
    }

    #[test]
    fn mixed_rings_rejected() {
        assert!(chow_mul(&ChowClass::h(1), &ChowClass::h(2)).is_err());
    }

    #[test]
    fn worked_identities() {
        let ids = surface_class_identities(0, 3).unwrap();
        assert_eq!(ids.kx2, BigInt::from(2));
        assert_eq!(ids.s, BigInt::from(3));
        assert_eq!((ids.x, ids.y), (BigInt::from(1), BigInt::from(-1)));
        assert_eq!(surface_class_identities(0, 0).unwrap().kx2, BigInt::from(8));
        let ids = surface_class_identities(2, 1).unwrap();
        assert_eq!((ids.kx2, ids.s), (BigInt::from(0), BigInt::from(4)));
        assert!(surface_class_identities(1, 0).is_err());
    }

    #[test]
    fn exhaustive_range() {
        for a in (-6..=6).step_by(2) {
            for c in 0..=8 {
                surface_class_identities(a, c).unwrap();
            }
        }
    }
}

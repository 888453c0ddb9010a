//! Integer binary forms in `u, v`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::topology::UnivariatePoly;

/// A binary form of a fixed degree; `coeffs[i]` multiplies `u^i v^(degree-i)`.
/// The zero form keeps its nominal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Input(format!(
                "a form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has at least one coefficient");
        BinaryForm {
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BinaryForm {
            degree: 0,
            coeffs: vec![c.into()],
        }
    }

    /// `q u - p v`, vanishing at `u/v = p/q`.
    pub fn linear_factor(root: &BigRational) -> Self {
        BinaryForm {
            degree: 1,
            coeffs: vec![-root.numer().clone(), root.denom().clone()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm {
            degree: self.degree + other.degree,
            coeffs: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Input(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplicity of the point `v = 0` (i.e. `t = ∞`) as a root.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// `f(t, 1)` with `t = u/v`.
    pub fn dehomogenize(&self) -> UnivariatePoly {
        UnivariatePoly::from_bigints(&self.coeffs)
    }

    /// No repeated root on the projective line.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.infinity_multiplicity() <= 1 && {
            let f = self.dehomogenize();
            f.degree() == Some(0) || f.is_squarefree()
        }
    }

    /// No common root on the projective line.
    pub fn is_coprime(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        if self.infinity_multiplicity() > 0 && other.infinity_multiplicity() > 0 {
            return false;
        }
        self.dehomogenize()
            .gcd(&other.dehomogenize())
            .degree()
            == Some(0)
    }

    /// Real roots on the projective line; `with_multiplicity` counts repeated
    /// roots repeatedly. The point at infinity is included.
    pub fn real_root_count(&self, with_multiplicity: bool) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self.infinity_multiplicity();
        let at_infinity = if with_multiplicity { m } else { usize::from(m > 0) };
        let affine = crate::topology::sturm_count(&self.dehomogenize(), with_multiplicity)?;
        Ok(affine + at_infinity)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Splits `self` into a constant and factors of degree at most two over
    /// the integers, or `None` when some irreducible factor has higher degree
    /// or the search bound is exceeded.
    pub fn factor(&self) -> Option<Factorization> {
        if self.is_zero() {
            return None;
        }
        let content = self.content();
        let mut rest: Vec<BigInt> = self.coeffs.iter().map(|c| c / &content).collect();
        let mut factors: Vec<(BinaryForm, usize)> = Vec::new();
        let push = |f: BinaryForm, factors: &mut Vec<(BinaryForm, usize)>| {
            if let Some(slot) = factors.iter_mut().find(|(g, _)| *g == f) {
                slot.1 += 1;
            } else {
                factors.push((f, 1));
            }
        };

        // powers of v (root at infinity) and u (root at zero)
        let v_pow = rest.iter().rev().take_while(|c| c.is_zero()).count();
        rest.truncate(rest.len() - v_pow);
        let u_pow = rest.iter().take_while(|c| c.is_zero()).count();
        rest.drain(..u_pow);
        if u_pow > 0 {
            factors.push((BinaryForm::from_i64(&[0, 1]), u_pow));
        }
        if v_pow > 0 {
            factors.push((BinaryForm::from_i64(&[1, 0]), v_pow));
        }

        // rational roots p/q with p | rest[0], q | rest[last]
        let mut roots_found = true;
        while rest.len() > 1 && roots_found {
            roots_found = false;
            let ps = divisors(&rest[0])?;
            let qs = divisors(rest.last().unwrap())?;
            'search: for q in &qs {
                for p in &ps {
                    for p in [p.clone(), -p] {
                        let root = BigRational::new(p, q.clone());
                        if let Some(quot) = divide_by_root(&rest, &root) {
                            push(BinaryForm::linear_factor(&root), &mut factors);
                            rest = quot;
                            roots_found = true;
                            break 'search;
                        }
                    }
                }
            }
        }

        // remaining factors have no rational roots; peel off quadratics
        while rest.len() > 3 {
            let (quad, quot) = quadratic_factor(&rest)?;
            push(quad, &mut factors);
            rest = quot;
        }
        let mut unit = content;
        if rest.len() == 3 {
            let mut q = rest.clone();
            if q[2].is_negative() {
                q.iter_mut().for_each(|c| *c = -&*c);
                unit = -unit;
            }
            push(BinaryForm::new(2, q).ok()?, &mut factors);
        } else {
            unit *= &rest[0];
        }
        // monomials u, v first, then by degree and coefficients
        factors.sort_by_key(|(f, _)| {
            let terms = f.coeffs.iter().filter(|c| !c.is_zero()).count();
            (f.degree, terms > 1, f.coeffs.clone())
        });
        Some(Factorization { unit, factors })
    }
}

fn divide_by_root(coeffs: &[BigInt], root: &BigRational) -> Option<Vec<BigInt>> {
    // coeffs describe sum c_i t^i; divide by (q t - p) exactly over Z
    let (p, q) = (root.numer(), root.denom());
    let n = coeffs.len() - 1;
    let mut quot = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    // synthetic division from the top: c_n = q * d_{n-1}, c_i = q d_{i-1} - p d_i
    for i in (1..=n).rev() {
        let num = &coeffs[i] + &carry;
        let (d, r) = num.div_rem(q);
        if !r.is_zero() {
            return None;
        }
        quot[i - 1] = d.clone();
        carry = p * d;
    }
    if (&coeffs[0] + &carry).is_zero() {
        Some(quot)
    } else {
        None
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
    }
    out.sort();
    Some(out)
}

fn exact_division(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let (n, d) = (num.len() - 1, den.len() - 1);
    if n < d {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); n - d + 1];
    let lead = &den[d];
    for k in (0..=n - d).rev() {
        let (q, r) = rem[k + d].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in den.iter().enumerate() {
            rem[k + j] -= &q * c;
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// Finds an integer quadratic factor `a t^2 + b t + c` of a primitive
/// polynomial without rational roots, searching `b` within the Mignotte bound.
fn quadratic_factor(coeffs: &[BigInt]) -> Option<(BinaryForm, Vec<BigInt>)> {
    let norm2: BigInt = coeffs.iter().map(|c| c * c).sum();
    let bound: BigInt = BigInt::from(2) * (Roots::sqrt(&norm2) + 1);
    if bound > BigInt::from(10_000) {
        return None;
    }
    let bound = bound.to_i64()?;
    let lead = divisors(coeffs.last().unwrap())?;
    let tail = divisors(&coeffs[0])?;
    for a in &lead {
        for c0 in &tail {
            for c in [c0.clone(), -c0] {
                for b in -bound..=bound {
                    let quad = [c.clone(), BigInt::from(b), a.clone()];
                    if let Some(quot) = exact_division(coeffs, &quad) {
                        return Some((BinaryForm::new(2, quad.to_vec()).ok()?, quot));
                    }
                }
            }
        }
    }
    None
}

/// `unit * prod f_i^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(BinaryForm, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> BinaryForm {
        let mut out = BinaryForm::constant(self.unit.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                out = out.mul(f);
            }
        }
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, e) in &self.factors {
            let nterms = g.coeffs.iter().filter(|c| !c.is_zero()).count();
            let body = if nterms > 1 { format!("({g})") } else { g.to_string() };
            parts.push(if *e > 1 { format!("{body}^{e}") } else { body });
        }
        let body = parts.join("*");
        if parts.is_empty() {
            write!(f, "{}", self.unit)
        } else if self.unit.is_one() {
            f.write_str(&body)
        } else if self.unit == -BigInt::one() {
            write!(f, "-{body}")
        } else {
            write!(f, "{}*{body}", self.unit)
        }
    }
}

fn monomial(i: usize, j: usize) -> String {
    let pow = |x: &str, e: usize| match e {
        0 => String::new(),
        1 => x.to_string(),
        _ => format!("{x}^{e}"),
    };
    [pow("u", i), pow("v", j)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for BinaryForm {
    /// Expanded form, highest power of `u` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..=self.degree).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let m = monomial(i, self.degree - i);
            let a = c.abs();
            match (a.is_one(), m.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(&m)?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn display_and_infinity() {
        // u^3 v - u v^3
        let f = BinaryForm::from_i64(&[0, -1, 0, 1, 0]);
        assert_eq!(f.to_string(), "u^3*v - u*v^3");
        assert_eq!(f.infinity_multiplicity(), 1);
        assert!(f.is_squarefree());
        assert_eq!(f.real_root_count(false).unwrap(), 4);
    }

    #[test]
    fn factor_ex2_discriminant() {
        let f = BinaryForm::from_i64(&[0, 1])
            .mul(&BinaryForm::from_i64(&[1, 0]))
            .mul(&BinaryForm::from_i64(&[-1, 0, 1]))
            .mul(&BinaryForm::from_i64(&[-4, 0, 1]));
        let fac = f.factor().unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 6);
        assert_eq!(fac.to_string(), "u*v*(u - 2*v)*(u - v)*(u + v)*(u + 2*v)");
    }

    #[test]
    fn factor_with_quadratics_and_powers() {
        // -3 (u^2 + v^2)^2 (2u - v)
        let q = BinaryForm::from_i64(&[1, 0, 1]);
        let f = BinaryForm::constant(-3)
            .mul(&q)
            .mul(&q)
            .mul(&BinaryForm::linear_factor(&root(1, 2)));
        let fac = f.factor().unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.unit, BigInt::from(-3));
        assert!(fac.factors.contains(&(q, 2)));
    }

    #[test]
    fn irreducible_quartic_is_not_factored() {
        // u^4 + v^4 is irreducible over Z
        let f = BinaryForm::from_i64(&[1, 0, 0, 0, 1]);
        assert_eq!(f.factor(), None);
    }

    #[test]
    fn coprimality() {
        let a = BinaryForm::from_i64(&[-1, 0, 1]);
        let b = BinaryForm::from_i64(&[-4, 0, 1]);
        assert!(a.is_coprime(&b));
        let c = BinaryForm::from_i64(&[1, 1]);
        assert!(!a.is_coprime(&c));
        let v1 = BinaryForm::from_i64(&[1, 0]);
        let v2 = BinaryForm::from_i64(&[2, 0]);
        assert!(!v1.is_coprime(&v2));
    }
}

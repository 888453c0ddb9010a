//! Hyperbolicity of hypersurfaces in `P^3` with respect to a point, tested on
//! lines through that point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::poly::UnivariatePoly;
use crate::error::{Error, Result};

pub type Exponents = [u32; 4];

/// A homogeneous polynomial in `x0, x1, x2, x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSpec {
    terms: BTreeMap<Exponents, BigRational>,
    degree: u32,
}

impl HypersurfaceSpec {
    pub fn new(terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.any(|d| d != degree) {
            return Err(Error::Input("polynomial is not homogeneous".into()));
        }
        Ok(HypersurfaceSpec { terms: map, degree })
    }

    pub fn from_i64(terms: &[(Exponents, i64)]) -> Result<Self> {
        Self::new(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn eval(&self, x: &[BigRational; 4]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize))
            })
            .sum()
    }

    /// `q(t) = X(x + t e)`.
    pub fn restrict_to_line(&self, x: &[BigRational; 4], e: &[BigRational; 4]) -> UnivariatePoly {
        let linear: Vec<UnivariatePoly> = (0..4)
            .map(|i| UnivariatePoly::new(vec![x[i].clone(), e[i].clone()]))
            .collect();
        let mut out = UnivariatePoly::zero();
        for (exps, c) in &self.terms {
            let mut term = UnivariatePoly::constant(c.clone());
            for (i, &k) in exps.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&linear[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

fn proportional(x: &[BigRational; 4], e: &[BigRational; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| &x[i] * &e[j] == &x[j] * &e[i]))
}

/// Real-rootedness of one restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineTest {
    /// every root of `X(x + t e)` is real (with multiplicity)
    pub all_real: bool,
    /// some real root is repeated
    pub boundary_contact: bool,
}

pub fn line_test(
    spec: &HypersurfaceSpec,
    e: &[BigRational; 4],
    x: &[BigRational; 4],
) -> Result<LineTest> {
    if spec.eval(e).is_zero() {
        return Err(Error::CenterOnHypersurface);
    }
    if x.iter().all(Zero::is_zero) || proportional(x, e) {
        return Err(Error::Input("the point must differ from the center".into()));
    }
    let q = spec.restrict_to_line(x, e);
    // the leading coefficient is X(e) != 0, so q has full degree
    let d = spec.degree as usize;
    if q.degree() != Some(d) {
        return Err(Error::Invariant("restriction lost degree".into()));
    }
    let with_mult = q.count_real_roots_with_multiplicity()?;
    let distinct = q.count_real_roots_distinct()?;
    Ok(LineTest {
        all_real: with_mult == d,
        boundary_contact: distinct < with_mult,
    })
}

/// Whether the line through `x` and `e` meets the hypersurface only in real
/// points (roots counted with multiplicity).
pub fn all_real_restriction(
    spec: &HypersurfaceSpec,
    e: &[BigRational; 4],
    x: &[BigRational; 4],
) -> Result<bool> {
    Ok(line_test(spec, e, x)?.all_real)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolicityVerdict {
    /// the line through `witness` and the center has a nonreal intersection;
    /// `trial` counts from 1
    Refuted {
        trial: usize,
        witness: [BigRational; 4],
    },
    /// no refutation among `trials` random lines
    Supported {
        trials: usize,
        boundary_contacts: usize,
    },
}

impl HyperbolicityVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, HyperbolicityVerdict::Refuted { .. })
    }
}

/// Random rational point with numerators in `[-10^4, 10^4]` and denominators
/// in `[1, 10^4]`.
pub fn random_point(rng: &mut SplitMix64) -> [BigRational; 4] {
    std::array::from_fn(|_| {
        let num: i64 = rng.gen_range(-10_000..=10_000);
        let den: i64 = rng.gen_range(1..=10_000);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    })
}

/// Tests `trials` lines through `e` chosen from the seeded generator and
/// returns the first refuting one.
pub fn hyperbolicity_check(
    spec: &HypersurfaceSpec,
    e: &[BigRational; 4],
    trials: usize,
    seed: u64,
) -> Result<HyperbolicityVerdict> {
    if spec.eval(e).is_zero() {
        return Err(Error::CenterOnHypersurface);
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut boundary_contacts = 0;
    for trial in 1..=trials {
        let x = loop {
            let x = random_point(&mut rng);
            if !proportional(&x, e) && !x.iter().all(Zero::is_zero) {
                break x;
            }
        };
        let test = line_test(spec, e, &x)?;
        if !test.all_real {
            return Ok(HyperbolicityVerdict::Refuted { trial, witness: x });
        }
        if test.boundary_contact {
            boundary_contacts += 1;
        }
    }
    Ok(HyperbolicityVerdict::Supported {
        trials,
        boundary_contacts,
    })
}

/// `x1^2 + x2^2 + x3^2 - x0^2`.
pub fn sphere_quadric() -> HypersurfaceSpec {
    HypersurfaceSpec::from_i64(&[
        ([2, 0, 0, 0], -1),
        ([0, 2, 0, 0], 1),
        ([0, 0, 2, 0], 1),
        ([0, 0, 0, 2], 1),
    ])
    .expect("homogeneous")
}

pub fn point(coords: [i64; 4]) -> [BigRational; 4] {
    coords.map(|c| BigRational::from_integer(c.into()))
}

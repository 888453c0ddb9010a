//! Necessary conditions for `D = aF - bK` on a minimal conic bundle with `s`
//! sphere components, where `F.F = 0`, `F.K = -2`, `K.K = 8 - 2s`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{adjunction_genus, riemann_roch_dim, ClassVector, IntLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleReport {
    pub conditions: [bool; 6],
}

impl BundleReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

/// Evaluates the six conditions:
/// `b >= 1`, `a >= -1`, `s = b((4-s)b + 2a)`, `a + (4-s)b <= 2`,
/// `a = sb (mod 2)` and `2a > b(s-4)`.
pub fn necbundle_conditions(s: i64, a: i64, b: i64) -> BundleReport {
    let (s, a, b) = (s as i128, a as i128, b as i128);
    BundleReport {
        conditions: [
            b >= 1,
            a >= -1,
            s == b * ((4 - s) * b + 2 * a),
            a + (4 - s) * b <= 2,
            (a - s * b).rem_euclid(2) == 0,
            2 * a > b * (s - 4),
        ],
    }
}

/// The real Picard lattice `<F, K>` of a minimal conic bundle with `s` spheres.
pub fn conic_lattice(s: i64) -> Result<IntLattice> {
    IntLattice::from_i64(&["F", "K"], &[&[0, -2], &[-2, 8 - 2 * s]])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub a: i64,
    pub b: i64,
    pub genus: BigInt,
    /// lower bound for `l(D)` from Riemann–Roch
    pub ell_bound: BigInt,
}

/// The divisor `(s - 2) F - K` with its sectional genus and Riemann–Roch bound.
pub fn candidate_divisor(s: i64) -> Result<Candidate> {
    if s < 2 {
        return Err(Error::Input(format!("s = {s}: need at least two spheres")));
    }
    let lattice = conic_lattice(s)?;
    let k = ClassVector::from_i64(&[0, 1]);
    let d = ClassVector::from_i64(&[s - 2, -1]);
    Ok(Candidate {
        a: s - 2,
        b: 1,
        genus: adjunction_genus(&lattice, &d, &k)?,
        ell_bound: riemann_roch_dim(&lattice, &d, &k)?,
    })
}

//! Linking numbers of PL curves with codimension-2 subspaces of `RP^2` and
//! `RP^3`, computed on the double cover `S^n`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Point = Vec<BigRational>;

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(p: &[BigRational]) -> Point {
    p.iter().map(|x| -x).collect()
}

/// Rank of a list of rational vectors.
pub fn rank(rows: &[Point]) -> usize {
    let mut m: Vec<Point> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    /// closes up on `S^n`; the preimage in the sphere is this loop and its antipode
    Sphere,
    /// continues through the antipodes of its points before closing
    Antipode,
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Sphere => "sphere",
            Closure::Antipode => "antipode",
        })
    }
}

impl FromStr for Closure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Closure::Sphere),
            "antipode" => Ok(Closure::Antipode),
            _ => Err(Error::Input(format!("unknown closure {s:?}"))),
        }
    }
}

/// A closed polygon in `RP^n` given by vectors in `R^(n+1)`, each standing for
/// its ray on `S^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLCycle {
    ambient: usize,
    closure: Closure,
    points: Vec<Point>,
}

impl PLCycle {
    pub fn new(ambient: usize, closure: Closure, points: Vec<Point>) -> Result<Self> {
        if !(2..=3).contains(&ambient) {
            return Err(Error::Input(format!("ambient dimension {ambient} is not 2 or 3")));
        }
        for p in &points {
            if p.len() != ambient + 1 {
                return Err(Error::DimensionMismatch {
                    expected: ambient + 1,
                    found: p.len(),
                });
            }
        }
        let min = match closure {
            Closure::Sphere => 3,
            Closure::Antipode => 1,
        };
        if points.len() < min {
            return Err(Error::Input(format!(
                "a {closure} cycle needs at least {min} points"
            )));
        }
        let cycle = PLCycle {
            ambient,
            closure,
            points,
        };
        for (i, (p, q)) in cycle.segments().iter().enumerate() {
            if rank(&[p.clone(), q.clone()]) < 2 {
                return Err(Error::NonTransversal {
                    segment: i,
                    reason: "endpoints are zero, equal or antipodal on the sphere".into(),
                });
            }
        }
        Ok(cycle)
    }

    pub fn from_i64(ambient: usize, closure: Closure, points: &[&[i64]]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::new(ambient, closure, pts)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Segments of the loop as listed, closed according to the closure flag.
    /// For `Antipode` this is the full connected lift.
    fn segments(&self) -> Vec<(Point, Point)> {
        let mut loop_pts = self.points.clone();
        if self.closure == Closure::Antipode {
            loop_pts.extend(self.points.iter().map(|p| neg(p)));
        }
        let m = loop_pts.len();
        (0..m)
            .map(|i| (loop_pts[i].clone(), loop_pts[(i + 1) % m].clone()))
            .collect()
    }

    /// Every segment of the preimage of the cycle in `S^n`.
    fn lifted_segments(&self) -> Vec<(Point, Point)> {
        let mut segs = self.segments();
        if self.closure == Closure::Sphere {
            let copy: Vec<_> = segs.iter().map(|(p, q)| (neg(p), neg(q))).collect();
            segs.extend(copy);
        }
        segs
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        Self::new(self.ambient, self.closure, self.points.iter().map(f).collect())
    }
}

/// A linear subspace of `R^(n+1)` cut out by independent normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreatSubsphere {
    ambient: usize,
    normals: Vec<Point>,
}

impl GreatSubsphere {
    pub fn new(ambient: usize, normals: Vec<Point>) -> Result<Self> {
        for n in &normals {
            if n.len() != ambient + 1 {
                return Err(Error::DimensionMismatch {
                    expected: ambient + 1,
                    found: n.len(),
                });
            }
        }
        if normals.is_empty() || rank(&normals) != normals.len() {
            return Err(Error::Input("normals must be nonempty and independent".into()));
        }
        Ok(GreatSubsphere { ambient, normals })
    }

    pub fn from_i64(ambient: usize, normals: &[&[i64]]) -> Result<Self> {
        let ns = normals
            .iter()
            .map(|p| p.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::new(ambient, ns)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    /// Dimension of the projective subspace.
    pub fn dimension(&self) -> usize {
        self.ambient - self.normals.len()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.normals.iter().all(|n| dot(n, x).is_zero())
    }

    pub fn map_normals(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        Self::new(self.ambient, self.normals.iter().map(f).collect())
    }
}

/// The hyperplane through `e` given by its first normal.
pub fn default_hyperplane(e: &GreatSubsphere) -> GreatSubsphere {
    GreatSubsphere {
        ambient: e.ambient,
        normals: vec![e.normals[0].clone()],
    }
}

/// Normal of `L` and co-orientation `b` of the hemisphere `W`, after checking
/// dimensions and `E ⊂ L`.
fn hemisphere(e: &GreatSubsphere, l: &GreatSubsphere) -> Result<(Point, Point)> {
    if e.ambient != l.ambient {
        return Err(Error::DimensionMismatch {
            expected: e.ambient,
            found: l.ambient,
        });
    }
    if e.normals.len() != 2 || l.normals.len() != 1 {
        return Err(Error::Input(
            "E must have codimension 2 and L codimension 1".into(),
        ));
    }
    let ell = l.normals[0].clone();
    let mut span = e.normals.clone();
    span.push(ell.clone());
    if rank(&span) != 2 {
        return Err(Error::Input("L does not contain E".into()));
    }
    let b = e
        .normals
        .iter()
        .find(|n| rank(&[(*n).clone(), ell.clone()]) == 2)
        .expect("E has two independent normals");
    // project b orthogonally to ell, so b lies in L and is orthogonal to E
    let f = dot(b, &ell) / dot(&ell, &ell);
    let b: Point = b.iter().zip(&ell).map(|(x, y)| x - &f * y).collect();
    Ok((ell, b))
}

/// Signed count of crossings of the lift of `c` with the hemisphere
/// `W = {l.x = 0, b.x >= 0}` bounded by the lift of `e`.
pub fn linking_number(c: &PLCycle, e: &GreatSubsphere, l: &GreatSubsphere) -> Result<i64> {
    if c.ambient != e.ambient {
        return Err(Error::DimensionMismatch {
            expected: e.ambient,
            found: c.ambient,
        });
    }
    let (ell, b) = hemisphere(e, l)?;
    let mut lk = 0;
    for (i, (p, q)) in c.lifted_segments().iter().enumerate() {
        let (lp, lq) = (dot(&ell, p), dot(&ell, q));
        let (bp, bq) = (dot(&b, p), dot(&b, q));
        if lp.is_zero() && !bp.is_negative() {
            return Err(Error::NonTransversal {
                segment: i,
                reason: "a vertex lies on the hemisphere".into(),
            });
        }
        // a vertex on L outside W counts as lying on the positive side of L
        let side_p = !lp.is_negative();
        let side_q = !lq.is_negative();
        if side_p == side_q {
            continue;
        }
        // b at the crossing point, up to the positive factor 1 / |lp - lq|
        let b_cross = (&lp * &bq - &lq * &bp) / (&lp - &lq);
        if b_cross.is_zero() {
            return Err(Error::NonTransversal {
                segment: i,
                reason: "the segment passes through E".into(),
            });
        }
        if b_cross.is_positive() {
            lk += if side_q { 1 } else { -1 };
        }
    }
    Ok(lk)
}

/// Whether the linking numbers of the components add up to the degree.
pub fn hyperbolicity_from_linking(
    components: &[PLCycle],
    e: &GreatSubsphere,
    l: &GreatSubsphere,
    claimed_degree: i64,
) -> Result<bool> {
    let mut total = 0;
    for c in components {
        total += linking_number(c, e, l)?.abs();
    }
    Ok(total == claimed_degree)
}

/// A regular octagon of radius `r` around `center` in the chart `x0 = 1` of
/// `RP^2`, with rational vertices on the circle.
pub fn octagon(center: (BigRational, BigRational), r: BigRational) -> PLCycle {
    let v = |x: i64| BigRational::new(x.into(), 13.into());
    let dirs = [(12, 5), (5, 12), (-5, 12), (-12, 5), (-12, -5), (-5, -12), (5, -12), (12, -5)];
    let points = dirs
        .iter()
        .map(|&(c, s)| {
            vec![
                BigRational::from_integer(1.into()),
                &center.0 + &r * v(c),
                &center.1 + &r * v(s),
            ]
        })
        .collect();
    PLCycle::new(2, Closure::Sphere, points).expect("octagon is a valid cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn origin() -> GreatSubsphere {
        GreatSubsphere::from_i64(2, &[&[0, 1, 0], &[0, 0, 1]]).unwrap()
    }

    fn x_axis() -> GreatSubsphere {
        GreatSubsphere::from_i64(2, &[&[0, 0, 1]]).unwrap()
    }

    fn pseudoline() -> PLCycle {
        PLCycle::from_i64(2, Closure::Antipode, &[&[1, 2, -1], &[1, 2, 1], &[-1, -2, 3]]).unwrap()
    }

    #[test]
    fn circle_around_point() {
        let c = octagon((q(0, 1), q(0, 1)), q(1, 4));
        assert_eq!(linking_number(&c, &origin(), &x_axis()).unwrap().abs(), 2);
        let far = octagon((q(3, 1), q(1, 3)), q(1, 4));
        assert_eq!(linking_number(&far, &origin(), &x_axis()).unwrap(), 0);
    }

    #[test]
    fn pseudoline_links_once() {
        assert_eq!(linking_number(&pseudoline(), &origin(), &x_axis()).unwrap().abs(), 1);
    }

    #[test]
    fn degree_sums() {
        let inner = octagon((q(0, 1), q(0, 1)), q(1, 4));
        let outer = octagon((q(0, 1), q(0, 1)), q(1, 2));
        let (e, l) = (origin(), x_axis());
        assert!(hyperbolicity_from_linking(&[inner.clone(), outer], &e, &l, 4).unwrap());
        assert!(!hyperbolicity_from_linking(std::slice::from_ref(&inner), &e, &l, 4).unwrap());
        assert!(hyperbolicity_from_linking(&[pseudoline(), inner], &e, &l, 3).unwrap());
    }

    #[test]
    fn independent_of_hyperplane() {
        let c = octagon((q(1, 10), q(-1, 7)), q(1, 2));
        let e = origin();
        for n in [[0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 3, -7], [0, 11, 2]] {
            let l = GreatSubsphere::from_i64(2, &[&n]).unwrap();
            assert_eq!(linking_number(&c, &e, &l).unwrap().abs(), 2, "{n:?}");
            assert_eq!(linking_number(&pseudoline(), &e, &l).unwrap().abs(), 1, "{n:?}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        // vertex (1, 1/4, 0) lies on W
        let c = PLCycle::new(
            2,
            Closure::Sphere,
            vec![
                vec![q(1, 1), q(1, 4), q(0, 1)],
                vec![q(1, 1), q(0, 1), q(1, 4)],
                vec![q(1, 1), q(-1, 4), q(-1, 4)],
            ],
        )
        .unwrap();
        assert!(matches!(
            linking_number(&c, &origin(), &x_axis()),
            Err(Error::NonTransversal { segment: 0, .. })
        ));
        // segment through E
        let c = PLCycle::from_i64(2, Closure::Sphere, &[&[1, 1, 1], &[1, -1, -1], &[1, 1, -3]]).unwrap();
        assert!(matches!(
            linking_number(&c, &origin(), &x_axis()),
            Err(Error::NonTransversal { segment: 0, .. })
        ));
        assert!(PLCycle::from_i64(2, Closure::Sphere, &[&[1, 0, 0], &[2, 0, 0], &[0, 1, 0]]).is_err());
        let bad_l = GreatSubsphere::from_i64(2, &[&[1, 0, 0]]).unwrap();
        assert!(linking_number(&pseudoline(), &origin(), &bad_l).is_err());
    }

    #[test]
    fn space_curves() {
        // E = the line x2 = x3 = 0 in RP^3, circle around it in the plane x1 = 0
        let e = GreatSubsphere::from_i64(3, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        let l = GreatSubsphere::from_i64(3, &[&[0, 0, 0, 1]]).unwrap();
        let pts: Vec<Point> = [(12, 5), (-5, 12), (-12, -5), (5, -12)]
            .iter()
            .map(|&(c, s)| vec![q(1, 1), q(0, 1), q(c, 13), q(s, 13)])
            .collect();
        let c = PLCycle::new(3, Closure::Sphere, pts).unwrap();
        assert_eq!(linking_number(&c, &e, &l).unwrap().abs(), 2);
        // a projective line skew to E
        let m = PLCycle::from_i64(3, Closure::Antipode, &[&[1, 1, 1, -1], &[1, 1, 1, 1], &[-1, -1, -1, 3]])
            .unwrap();
        assert_eq!(linking_number(&m, &e, &l).unwrap().abs(), 1);
    }
}

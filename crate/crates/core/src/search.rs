//! Necessary conditions for real-fibered embeddings and the resulting search.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::catalog::{Catalog, SurfaceModel};
use crate::error::Result;
use crate::lattice::{
    adjunction_genus, riemann_roch_dim, ClassEnumerator, ClassQuery, ClassVector,
    EllipsoidEnumerator,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeryAmple {
    Yes,
    No,
}

impl fmt::Display for VeryAmple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VeryAmple::Yes => "yes",
            VeryAmple::No => "no",
        })
    }
}

/// Outcome of the five conditions for a divisor class `D` on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// the real part consists of spheres and real projective planes only
    pub c1: bool,
    /// `D.D = r + 2s`
    pub c2: bool,
    /// `r <= D.K + 4 <= r + 2s`
    pub c3: bool,
    /// `D.K = r (mod 4)`
    pub c4: bool,
    /// `D.L > 0` for every (-1)-class `L`
    pub c5: bool,
    pub self_intersection: BigInt,
    pub k_degree: BigInt,
    pub genus: Option<BigInt>,
    pub ell: Option<BigInt>,
    pub very_ample: Option<VeryAmple>,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4 && self.c5
    }

    pub fn conditions(&self) -> [bool; 5] {
        [self.c1, self.c2, self.c3, self.c4, self.c5]
    }

    /// Index (1-based) of the first failing condition.
    pub fn first_failure(&self) -> Option<usize> {
        self.conditions().iter().position(|c| !c).map(|i| i + 1)
    }
}

/// Evaluates the five conditions for `d` on `model`; genus, `l(D)` and the
/// very-ampleness flag are filled in only when all of them hold.
pub fn check_conditions(model: &SurfaceModel, d: &ClassVector) -> Result<ConditionReport> {
    let lattice = &model.real_lattice;
    lattice.check(d)?;
    let (s, r) = (BigInt::from(model.s), BigInt::from(model.r));
    let dd = lattice.square(d)?;
    let dk = lattice.pair(d, &model.canonical)?;
    let c1 = model.s >= 0 && model.r >= 0 && model.s + model.r > 0;
    let c2 = dd == &r + 2 * &s;
    let shifted = &dk + 4;
    let c3 = r <= shifted && shifted <= &r + 2 * &s;
    let c4 = (&dk - &r).mod_floor(&BigInt::from(4)).is_zero();
    let image = model.real_to_complex(d)?;
    let mut c5 = true;
    for line in &model.minus_one_classes {
        if !model.complex_lattice.pair(&image, line)?.is_positive() {
            c5 = false;
            break;
        }
    }
    let mut report = ConditionReport {
        c1,
        c2,
        c3,
        c4,
        c5,
        self_intersection: dd,
        k_degree: dk,
        genus: None,
        ell: None,
        very_ample: None,
    };
    if report.passes() {
        report.genus = Some(adjunction_genus(lattice, d, &model.canonical)?);
        report.ell = Some(riemann_roch_dim(lattice, d, &model.canonical)?);
        report.very_ample = Some(very_ample(model, d)?);
    }
    Ok(report)
}

/// Numerical very-ampleness rule for del Pezzo surfaces: `D` must meet every
/// line positively; in degree 2 `D != -K`, and in degree 1 `D.(-K) >= 3` with
/// `D` not in `{-K, -2K}`.
pub fn very_ample(model: &SurfaceModel, d: &ClassVector) -> Result<VeryAmple> {
    let image = model.real_to_complex(d)?;
    for line in &model.minus_one_classes {
        if model.complex_lattice.pair(&image, line)? < BigInt::from(1) {
            return Ok(VeryAmple::No);
        }
    }
    let minus_k = -&model.canonical;
    let verdict = match model.degree {
        2 => *d != minus_k,
        1 => {
            let anti = model.real_lattice.pair(d, &minus_k)?;
            anti >= BigInt::from(3) && *d != minus_k && *d != minus_k.scaled(&BigInt::from(2))
        }
        _ => true,
    };
    Ok(if verdict { VeryAmple::Yes } else { VeryAmple::No })
}

/// Candidate classes before the line condition: `D.D = r + 2s` and `D.K` in the
/// interval allowed by condition (3).
pub fn candidates(model: &SurfaceModel, enumerator: &dyn ClassEnumerator) -> Result<Vec<ClassVector>> {
    let (s, r) = (model.s, model.r);
    let k_range = BigInt::from(r - 4)..=BigInt::from(r + 2 * s - 4);
    enumerator.enumerate(&ClassQuery::new(
        &model.real_lattice,
        &model.canonical,
        r + 2 * s,
        k_range,
    ))
}

/// All classes on `model` passing every condition, in lexicographic order.
pub fn search(model: &SurfaceModel) -> Result<Vec<ClassVector>> {
    search_with(model, &EllipsoidEnumerator)
}

pub fn search_with(model: &SurfaceModel, enumerator: &dyn ClassEnumerator) -> Result<Vec<ClassVector>> {
    let mut out = Vec::new();
    for d in candidates(model, enumerator)? {
        if check_conditions(model, &d)?.passes() {
            out.push(d);
        }
    }
    Ok(out)
}

/// A divisor of a table row, in the real basis of its surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowDivisor {
    pub basis: Vec<String>,
    pub coeffs: ClassVector,
    pub ell: BigInt,
    pub genus: BigInt,
    pub very_ample: VeryAmple,
}

impl RowDivisor {
    pub fn text(&self) -> String {
        self.coeffs.render(&self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub surface: String,
    pub degree: i64,
    pub s: i64,
    pub r: i64,
    /// `None` for surfaces without any admissible divisor
    pub divisor: Option<RowDivisor>,
}

/// Rows for one surface: one per admissible divisor, or a single empty row.
pub fn surface_rows(model: &SurfaceModel, enumerator: &dyn ClassEnumerator) -> Result<Vec<TableRow>> {
    let row = |divisor| TableRow {
        surface: model.name.clone(),
        degree: model.degree,
        s: model.s,
        r: model.r,
        divisor,
    };
    let found = search_with(model, enumerator)?;
    if found.is_empty() {
        return Ok(vec![row(None)]);
    }
    found
        .into_iter()
        .map(|d| {
            let report = check_conditions(model, &d)?;
            Ok(row(Some(RowDivisor {
                basis: model.labels().to_vec(),
                coeffs: d,
                ell: report.ell.unwrap_or_default(),
                genus: report.genus.unwrap_or_default(),
                very_ample: report.very_ample.unwrap_or(VeryAmple::No),
            })))
        })
        .collect()
}

/// The classification table over all builtin surfaces, in catalog order.
pub fn table1() -> Result<Vec<TableRow>> {
    table1_with(&Catalog::builtin(), &EllipsoidEnumerator)
}

pub fn table1_with(catalog: &Catalog, enumerator: &dyn ClassEnumerator) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for model in catalog.models()? {
        rows.extend(surface_rows(&model, enumerator)?);
    }
    Ok(rows)
}

/// Column-aligned text rendering with a header line.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut cells = vec![["X", "degree", "s", "r", "D", "l(D)", "g", "very ample?"]
        .map(String::from)
        .to_vec()];
    for row in rows {
        let mut line = vec![
            row.surface.clone(),
            row.degree.to_string(),
            row.s.to_string(),
            row.r.to_string(),
        ];
        match &row.divisor {
            Some(d) => line.extend([
                d.text(),
                d.ell.to_string(),
                d.genus.to_string(),
                d.very_ample.to_string(),
            ]),
            None => line.extend(["---", "-", "-", "-"].map(String::from)),
        }
        cells.push(line);
    }
    let widths: Vec<usize> = (0..8)
        .map(|j| cells.iter().map(|l| l[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in cells {
        let mut text = String::new();
        for (j, cell) in line.iter().enumerate() {
            if j > 0 {
                text.push_str("  ");
            }
            text.push_str(cell);
            if j + 1 < line.len() {
                text.push_str(&" ".repeat(widths[j] - cell.chars().count()));
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

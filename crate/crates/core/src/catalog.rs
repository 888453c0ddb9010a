//! Lattice models of real del Pezzo surfaces and their real blow-ups.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_classes, fixed_sublattice, geiser_bertini_map, hermite_normal_form, solve_integral,
    ClassVector, IntLattice, LatticeMap,
};

/// A real del Pezzo surface seen through its Picard lattices.
///
/// `real_lattice` is the lattice of classes fixed by complex conjugation; the
/// `embedding` writes its basis in the basis of `complex_lattice`.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub name: String,
    pub degree: i64,
    /// number of sphere components of the real part
    pub s: i64,
    /// number of real projective plane components
    pub r: i64,
    pub real_lattice: IntLattice,
    pub canonical: ClassVector,
    pub complex_lattice: IntLattice,
    pub complex_canonical: ClassVector,
    pub embedding: LatticeMap,
    pub involution: LatticeMap,
    pub minus_one_classes: Vec<ClassVector>,
}

impl SurfaceModel {
    pub fn real_rank(&self) -> usize {
        self.real_lattice.rank()
    }

    pub fn labels(&self) -> &[String] {
        self.real_lattice.labels()
    }

    /// Index of the real basis vector called `label`.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    pub fn real_to_complex(&self, d: &ClassVector) -> Result<ClassVector> {
        real_to_complex(self, d)
    }

    /// Checks every structural invariant of the model.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("{}: {msg}", self.name)));
        if !self.real_lattice.is_picard_type() || !self.complex_lattice.is_picard_type() {
            return fail("lattices must have signature (1, rank-1)".into());
        }
        if !self.involution.is_involution() {
            return fail("conjugation is not an involution".into());
        }
        if !self
            .involution
            .is_isometry(&self.complex_lattice, &self.complex_lattice)
        {
            return fail("conjugation is not an isometry".into());
        }
        if self.involution.apply(&self.complex_canonical)? != self.complex_canonical {
            return fail("conjugation moves K".into());
        }
        if !self
            .embedding
            .is_isometry(&self.real_lattice, &self.complex_lattice)
        {
            return fail("embedding is not an isometry".into());
        }
        let image: Vec<Vec<BigInt>> = self
            .embedding
            .columns()
            .into_iter()
            .map(ClassVector::into_coeffs)
            .collect();
        let fixed: Vec<Vec<BigInt>> = fixed_sublattice(&self.involution)?
            .into_iter()
            .map(ClassVector::into_coeffs)
            .collect();
        if hermite_normal_form(&image) != fixed {
            return fail("embedding image differs from the fixed sublattice".into());
        }
        if self.embedding.apply(&self.canonical)? != self.complex_canonical {
            return fail("embedding does not send K to K".into());
        }
        if self.real_lattice.square(&self.canonical)? != BigInt::from(self.degree) {
            return fail("K.K differs from the degree".into());
        }
        let minus_one = -BigInt::one();
        for c in &self.minus_one_classes {
            if self.complex_lattice.square(c)? != minus_one
                || self.complex_lattice.pair(c, &self.complex_canonical)? != minus_one
            {
                return fail(format!("{c} is not a (-1)-class"));
            }
        }
        if self.s < 0 || self.r < 0 || self.s + self.r == 0 {
            return fail("real part must be nonempty".into());
        }
        Ok(())
    }
}

/// Applies the real-to-complex embedding of `model` to `d`.
pub fn real_to_complex(model: &SurfaceModel, d: &ClassVector) -> Result<ClassVector> {
    model.real_lattice.check(d)?;
    model.embedding.apply(d)
}

/// All classes `c` with `c.c = -1` and `c.K = -1`, in lexicographic order.
pub fn minus_one_curves(lattice: &IntLattice, canonical: &ClassVector) -> Result<Vec<ClassVector>> {
    let minus_one = -BigInt::one();
    enumerate_classes(lattice, canonical, minus_one.clone(), minus_one.clone()..=minus_one)
}

/// Where the two real points of a blow-up with `a = 2` lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    SameComponent,
    DifferentComponents,
}

/// Blow-up of `a` real points and `b` pairs of complex conjugate points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    pub real_points: usize,
    pub placement: Placement,
    pub conj_pairs: usize,
}

impl BlowupSpec {
    pub fn new(real_points: usize, conj_pairs: usize) -> Self {
        BlowupSpec {
            real_points,
            placement: Placement::DifferentComponents,
            conj_pairs,
        }
    }

    pub fn with_placement(mut self, placement: Placement) -> Self {
        self.placement = placement;
        self
    }

    /// Name suffix in the `X(a,2b)` notation, e.g. `_1_0` or `_2_0_11`.
    pub fn suffix(&self) -> String {
        let mut out = format!("_{}_{}", self.real_points, 2 * self.conj_pairs);
        if self.real_points == 2 {
            out.push_str(match self.placement {
                Placement::SameComponent => "_20",
                Placement::DifferentComponents => "_11",
            });
        }
        out
    }
}

impl fmt::Display for BlowupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.real_points, 2 * self.conj_pairs)
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn canonical_plane(n: usize) -> ClassVector {
    let mut k = vec![BigInt::one(); n + 1];
    k[0] = BigInt::from(-3);
    ClassVector::new(k)
}

fn assemble(
    name: &str,
    (s, r): (i64, i64),
    complex_lattice: IntLattice,
    complex_canonical: ClassVector,
    involution: LatticeMap,
    real_labels: Vec<String>,
    real_basis: Vec<ClassVector>,
) -> Result<SurfaceModel> {
    let embedding = LatticeMap::from_columns(complex_lattice.rank(), &real_basis)?;
    let real_lattice = complex_lattice.restrict(real_labels, &real_basis)?;
    let cols: Vec<Vec<BigInt>> = real_basis.iter().map(|c| c.coeffs().to_vec()).collect();
    let canonical = solve_integral(&cols, complex_canonical.coeffs())
        .map(ClassVector::new)
        .ok_or_else(|| Error::Invariant(format!("{name}: K is not a real class")))?;
    let degree = complex_lattice
        .square(&complex_canonical)?
        .try_into()
        .map_err(|_| Error::Invariant("degree out of range".into()))?;
    let minus_one_classes = if degree >= 1 {
        minus_one_curves(&complex_lattice, &complex_canonical)?
    } else {
        Vec::new()
    };
    let model = SurfaceModel {
        name: name.to_string(),
        degree,
        s,
        r,
        real_lattice,
        canonical,
        complex_lattice,
        complex_canonical,
        embedding,
        involution,
        minus_one_classes,
    };
    model.validate()?;
    Ok(model)
}

fn plane() -> Result<SurfaceModel> {
    let lattice = IntLattice::blowup_plane(0);
    assemble(
        "P2",
        (0, 1),
        lattice,
        canonical_plane(0),
        LatticeMap::identity(1),
        labels(&["H"]),
        vec![ClassVector::from_i64(&[1])],
    )
}

fn quadric() -> Result<SurfaceModel> {
    // P^1 x P^1 with conjugation exchanging the rulings
    let lattice = IntLattice::from_i64(&["L1", "L2"], &[&[0, 1], &[1, 0]])?;
    assemble(
        "Q31",
        (1, 0),
        lattice,
        ClassVector::from_i64(&[-2, -2]),
        LatticeMap::from_i64(&[&[0, 1], &[1, 0]])?,
        labels(&["H"]),
        vec![ClassVector::from_i64(&[1, 1])],
    )
}

/// Conjugation on `Z^{1,n}` of a minimal conic bundle with `n - 1` singular
/// fibers; the fiber class is `H - E1`.
fn conic_involution(n: usize) -> LatticeMap {
    let h = BigInt::from(((n - 1) / 2) as i64);
    let mut cols = Vec::with_capacity(n + 1);
    let mut col = vec![-BigInt::one(); n + 1];
    col[0] = &h + 1;
    col[1] = -&h;
    cols.push(ClassVector::new(col));
    let mut col = vec![-BigInt::one(); n + 1];
    col[0] = h.clone();
    col[1] = 1 - &h;
    cols.push(ClassVector::new(col));
    for i in 2..=n {
        let mut col = vec![BigInt::zero(); n + 1];
        col[0] = BigInt::one();
        col[1] = -BigInt::one();
        col[i] = -BigInt::one();
        cols.push(ClassVector::new(col));
    }
    LatticeMap::from_columns(n + 1, &cols).expect("square matrix")
}

fn conic_bundle(name: &str, n: usize, s: i64) -> Result<SurfaceModel> {
    let lattice = IntLattice::blowup_plane(n);
    let k = canonical_plane(n);
    let mut f = vec![BigInt::zero(); n + 1];
    f[0] = BigInt::one();
    f[1] = -BigInt::one();
    assemble(
        name,
        (s, 0),
        lattice,
        k.clone(),
        conic_involution(n),
        labels(&["F", "K"]),
        vec![ClassVector::new(f), k],
    )
}

fn reflected(name: &str, n: usize, topology: (i64, i64)) -> Result<SurfaceModel> {
    let lattice = IntLattice::blowup_plane(n);
    let k = canonical_plane(n);
    let sigma = geiser_bertini_map(&lattice, &k)?;
    assemble(
        name,
        topology,
        lattice,
        k.clone(),
        sigma,
        labels(&["K"]),
        vec![k],
    )
}

/// Blows up `base` in real points and conjugate pairs.
///
/// The new real basis starts with the new canonical class `K`, then the rest of
/// the base basis (with `F` replaced by `F~ = F - E` when a real point is blown
/// up), then the real exceptional classes and the sums of conjugate pairs.
pub fn blow_up(base: &SurfaceModel, spec: &BlowupSpec) -> Result<SurfaceModel> {
    let a = spec.real_points;
    let b = spec.conj_pairs;
    let new = a + 2 * b;
    let degree = base.degree - new as i64;
    if degree < 1 {
        return Err(Error::DegreeUnderflow(degree));
    }
    if a > 2 {
        return Err(Error::UnsupportedTopology(format!(
            "{a} real points; at most 2 are supported"
        )));
    }
    let (mut s, mut r) = (base.s, base.r);
    if a > 0 {
        if a == 2 && spec.placement == Placement::SameComponent {
            return Err(Error::UnsupportedTopology(
                "two real points on one sphere give a Klein bottle".into(),
            ));
        }
        if s < a as i64 {
            return Err(Error::UnsupportedTopology(format!(
                "{} has {s} sphere components; blowing up a point of a real projective plane \
                 gives a Klein bottle",
                base.name
            )));
        }
        s -= a as i64;
        r += a as i64;
    }

    let old = base.complex_lattice.rank();
    let rank = old + new;
    let mut complex_labels = base.complex_lattice.labels().to_vec();
    let first_new = complex_labels
        .iter()
        .filter(|l| l.starts_with('E'))
        .count();
    complex_labels.extend((1..=new).map(|i| format!("E{}", first_new + i)));
    let gram = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match (i < old, j < old) {
                    (true, true) => base.complex_lattice.entry(i, j).clone(),
                    _ if i == j => -BigInt::one(),
                    _ => BigInt::zero(),
                })
                .collect()
        })
        .collect();
    let complex_lattice = IntLattice::new(complex_labels, gram)?;
    let complex_canonical = ClassVector::new(
        base.complex_canonical
            .coeffs()
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::one(), new))
            .collect(),
    );

    // identity on real exceptional classes, swap within each conjugate pair
    let mut tail = vec![vec![BigInt::zero(); new]; new];
    for (i, row) in tail.iter_mut().enumerate().take(a) {
        row[i] = BigInt::one();
    }
    for p in 0..b {
        let (x, y) = (a + 2 * p, a + 2 * p + 1);
        tail[x][y] = BigInt::one();
        tail[y][x] = BigInt::one();
    }
    let involution = base
        .involution
        .direct_sum(&LatticeMap::new(new, tail)?);

    let unit = |i: usize| ClassVector::unit(rank, i);
    let exceptional_sum = (old..rank).fold(ClassVector::zero(rank), |acc, i| &acc + &unit(i));
    let mut real_labels = Vec::new();
    let mut real_basis = Vec::new();
    for (label, column) in base.labels().iter().zip(base.embedding.columns()) {
        let mut v = column.extended(rank);
        let mut label = label.clone();
        if label == "K" {
            v = &v + &exceptional_sum;
        } else if label == "F" && a > 0 {
            v = &v - &unit(old);
            label = "F~".into();
        }
        if label == "K" {
            real_labels.insert(0, label);
            real_basis.insert(0, v);
        } else {
            real_labels.push(label);
            real_basis.push(v);
        }
    }
    let taken = |l: &str, labels: &[String]| labels.iter().any(|x| x == l);
    for i in 0..a {
        let mut label = if a == 1 { "E".to_string() } else { format!("E{}", i + 1) };
        while taken(&label, &real_labels) {
            label.push('\'');
        }
        real_labels.push(label);
        real_basis.push(unit(old + i));
    }
    for p in 0..b {
        let mut label = format!("Ec{}", p + 1);
        while taken(&label, &real_labels) {
            label.push('\'');
        }
        real_labels.push(label);
        real_basis.push(&unit(old + a + 2 * p) + &unit(old + a + 2 * p + 1));
    }

    let name = format!("{}{}", base.name, spec.suffix());
    assemble(
        &name,
        (s, r),
        complex_lattice,
        complex_canonical,
        involution,
        real_labels,
        real_basis,
    )
}

/// A named way of producing a surface model.
pub trait SurfaceSource: Send + Sync {
    fn name(&self) -> &str;

    fn build(&self, catalog: &Catalog) -> Result<SurfaceModel>;
}

struct Minimal {
    name: &'static str,
    build: fn() -> Result<SurfaceModel>,
}

impl SurfaceSource for Minimal {
    fn name(&self) -> &str {
        self.name
    }

    fn build(&self, _: &Catalog) -> Result<SurfaceModel> {
        (self.build)()
    }
}

struct BlownUp {
    name: String,
    base: &'static str,
    spec: BlowupSpec,
}

impl SurfaceSource for BlownUp {
    fn name(&self) -> &str {
        &self.name
    }

    fn build(&self, catalog: &Catalog) -> Result<SurfaceModel> {
        blow_up(&catalog.get(self.base)?, &self.spec)
    }
}

/// Registry of surface sources, kept in insertion order.
#[derive(Default)]
pub struct Catalog {
    sources: Vec<Box<dyn SurfaceSource>>,
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog::default()
    }

    /// The surfaces of the classification table, in table order.
    pub fn builtin() -> Self {
        let mut c = Catalog::empty();
        let minimal = |name, build| Box::new(Minimal { name, build });
        let blown = |base: &'static str, spec: BlowupSpec| {
            Box::new(BlownUp {
                name: format!("{base}{}", spec.suffix()),
                base,
                spec,
            })
        };
        c.register(minimal("P2", plane));
        c.register(minimal("Q31", quadric));
        c.register(blown("P2", BlowupSpec::new(0, 1)));
        c.register(blown("Q31", BlowupSpec::new(0, 1)));
        c.register(blown("P2", BlowupSpec::new(0, 2)));
        c.register(blown("Q31", BlowupSpec::new(0, 2)));
        c.register(minimal("D4", || conic_bundle("D4", 5, 2)));
        c.register(blown("P2", BlowupSpec::new(0, 3)));
        c.register(blown("D4", BlowupSpec::new(1, 0)));
        c.register(blown("D4", BlowupSpec::new(2, 0)));
        c.register(blown("Q31", BlowupSpec::new(0, 3)));
        c.register(blown("D4", BlowupSpec::new(0, 1)));
        c.register(minimal("D2", || conic_bundle("D2", 7, 3)));
        c.register(minimal("G2", || reflected("G2", 7, (4, 0))));
        c.register(blown("P2", BlowupSpec::new(0, 4)));
        c.register(blown("D4", BlowupSpec::new(1, 1)));
        c.register(blown("D2", BlowupSpec::new(1, 0)));
        c.register(blown("G2", BlowupSpec::new(1, 0)));
        c.register(minimal("B1", || reflected("B1", 8, (4, 1))));
        c
    }

    /// Adds a source; a later source with an existing name replaces the earlier one.
    pub fn register(&mut self, source: Box<dyn SurfaceSource>) {
        if let Some(slot) = self.sources.iter_mut().find(|s| s.name() == source.name()) {
            *slot = source;
        } else {
            self.sources.push(source);
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.sources.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<SurfaceModel> {
        self.sources
            .iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))?
            .build(self)
    }

    pub fn models(&self) -> Result<Vec<SurfaceModel>> {
        self.sources.iter().map(|s| s.build(self)).collect()
    }
}

/// Builds the named surface of the builtin catalog.
pub fn builtin(name: &str) -> Result<SurfaceModel> {
    Catalog::builtin().get(name)
}

/// Names of all builtin surfaces in table order.
pub fn builtin_names() -> Vec<String> {
    Catalog::builtin().names().into_iter().map(String::from).collect()
}

//! Name-based distance catalogue: builds any registered distance with its
//! sampling space, paper witnesses, and known best constant, behind a
//! uniform point representation for front ends.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::distance::{simplex_ratio, Config, NDistance, SimplexViolation};
use crate::elementary::{
    bound, combine_add, scale, AbsDiff, ApDistance, ArithmeticMean, Cardinality, Diameter,
    Drastic, SumPairwise,
};
use crate::error::{Error, Result};
use crate::estimate::{estimate_best_constant, EstimateReport, RefineSettings};
use crate::fermat::{median_vertex, Fermat3Graph, FermatEuclidean, Graph};
use crate::geometry::{
    direction_count, AreaDistance, DirectionDistance, EuclidMetric, Point2, RadiusDistance,
};
use crate::maths;
use crate::space::{LabelSpace, PlaneSpace, ScalarLine, Space, VectorSpace, VertexSpace};
use crate::value::{KBound, Value};
use crate::verify::{verify_axioms, verify_simplex, AxiomReport};

/// Space-erased point, for uniform reports across heterogeneous spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum PointRepr {
    Label(u32),
    Scalar(Value),
    Plane { x: Value, y: Value },
    Vector(Vec<f64>),
    Vertex(usize),
}

impl fmt::Display for PointRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRepr::Label(l) => write!(f, "{l}"),
            PointRepr::Scalar(v) => write!(f, "{v}"),
            PointRepr::Plane { x, y } => write!(f, "({x}, {y})"),
            PointRepr::Vector(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            PointRepr::Vertex(v) => write!(f, "{v}"),
        }
    }
}

/// Conversion into the space-erased representation.
pub trait ToRepr {
    fn to_repr(&self) -> PointRepr;
}

impl ToRepr for u32 {
    fn to_repr(&self) -> PointRepr {
        PointRepr::Label(*self)
    }
}

impl ToRepr for Value {
    fn to_repr(&self) -> PointRepr {
        PointRepr::Scalar(*self)
    }
}

impl ToRepr for Point2 {
    fn to_repr(&self) -> PointRepr {
        PointRepr::Plane {
            x: self.x,
            y: self.y,
        }
    }
}

impl ToRepr for Vec<f64> {
    fn to_repr(&self) -> PointRepr {
        PointRepr::Vector(self.clone())
    }
}

impl ToRepr for usize {
    fn to_repr(&self) -> PointRepr {
        PointRepr::Vertex(*self)
    }
}

/// Sampling-space parameters; [`SpaceParams::default`] gives the standard
/// desk setup (labels 0..9, the unit interval and unit square, integer
/// grid 0..9 for the exact planar and progression distances).
#[derive(Clone, Debug)]
pub struct SpaceParams {
    pub label_universe: u32,
    pub line_lo: f64,
    pub line_hi: f64,
    pub plane_lo: f64,
    pub plane_hi: f64,
    pub int_lo: i64,
    pub int_hi: i64,
    /// Evaluate diameter/sum over the plane instead of the real line.
    pub planar_base: bool,
    /// Ground graph for `fermat_graph3`.
    pub graph: Option<Graph>,
}

impl Default for SpaceParams {
    fn default() -> Self {
        SpaceParams {
            label_universe: 10,
            line_lo: 0.0,
            line_hi: 1.0,
            plane_lo: 0.0,
            plane_hi: 1.0,
            int_lo: 0,
            int_hi: 9,
            planar_base: false,
            graph: None,
        }
    }
}

/// A distance bundled with its sampling space and registered witnesses.
pub struct Package<S: Space> {
    pub distance: Box<dyn NDistance<Point = S::Point>>,
    pub space: S,
    pub witnesses: Vec<Config<S::Point>>,
}

/// Any registered distance, behind the space-erased report types.
pub enum AnyDistance {
    Label(Package<LabelSpace>),
    Scalar(Package<ScalarLine>),
    Plane(Package<PlaneSpace>),
    Vector(Package<VectorSpace>),
    Graph(Package<VertexSpace>),
}

/// Outcome of [`AnyDistance::check`]: axiom sampling plus the simplex
/// sweep at the tested constant.
pub struct CheckOutcome {
    pub k_tested: Rational64,
    pub axioms: AxiomReport<PointRepr>,
    pub simplex: Vec<SimplexViolation<PointRepr>>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.simplex.is_empty()
    }
}

impl<S: Space> Package<S>
where
    S::Point: ToRepr,
{
    fn estimate(
        &self,
        budget: u64,
        refine: &RefineSettings,
        seed: u64,
    ) -> Result<EstimateReport<PointRepr>> {
        estimate_best_constant(
            self.distance.as_ref(),
            &self.space,
            &self.witnesses,
            budget,
            refine,
            seed,
        )
        .map(|r| r.map(ToRepr::to_repr))
    }

    fn check(&self, samples: usize, seed: u64, k: Rational64) -> Result<CheckOutcome> {
        let axioms = verify_axioms(self.distance.as_ref(), &self.space, samples, seed)?;
        let simplex = verify_simplex(
            self.distance.as_ref(),
            k,
            &self.space,
            &self.witnesses,
            samples,
            seed,
        )?;
        Ok(CheckOutcome {
            k_tested: k,
            axioms: AxiomReport {
                samples: axioms.samples,
                seed: axioms.seed,
                failures: axioms.failures.iter().map(|f| f.map(ToRepr::to_repr)).collect(),
            },
            simplex: simplex.iter().map(|v| v.map(ToRepr::to_repr)).collect(),
        })
    }

    fn witness_ratio(&self) -> Option<Result<(Config<PointRepr>, Value)>> {
        let w = self.witnesses.first()?;
        Some(
            simplex_ratio(self.distance.as_ref(), w.clone())
                .map(|rs| (rs.config.map(ToRepr::to_repr), rs.ratio)),
        )
    }
}

macro_rules! dispatch {
    ($self:expr, $p:ident => $body:expr) => {
        match $self {
            AnyDistance::Label($p) => $body,
            AnyDistance::Scalar($p) => $body,
            AnyDistance::Plane($p) => $body,
            AnyDistance::Vector($p) => $body,
            AnyDistance::Graph($p) => $body,
        }
    };
}

impl AnyDistance {
    pub fn name(&self) -> &str {
        dispatch!(self, p => p.distance.name())
    }

    pub fn arity(&self) -> usize {
        dispatch!(self, p => p.distance.arity())
    }

    pub fn theoretical_k(&self) -> Option<KBound> {
        dispatch!(self, p => p.distance.theoretical_k())
    }

    /// Constant used by default in simplex sweeps: the theoretical upper
    /// value when known, 1 otherwise.
    pub fn default_k(&self) -> Rational64 {
        self.theoretical_k()
            .map(|kb| kb.upper())
            .unwrap_or_else(|| Rational64::from_integer(1))
    }

    /// Lower-bound the best constant by randomized search; see
    /// [`estimate_best_constant`].
    pub fn estimate(
        &self,
        budget: u64,
        refine: &RefineSettings,
        seed: u64,
    ) -> Result<EstimateReport<PointRepr>> {
        dispatch!(self, p => p.estimate(budget, refine, seed))
    }

    /// Axiom sampling plus a simplex sweep at `k` (default: the
    /// theoretical constant).
    pub fn check(&self, samples: usize, seed: u64, k: Option<Rational64>) -> Result<CheckOutcome> {
        let k = k.unwrap_or_else(|| self.default_k());
        dispatch!(self, p => p.check(samples, seed, k))
    }

    /// The registered witness config and its exact ratio, if one exists.
    pub fn witness_ratio(&self) -> Option<Result<(Config<PointRepr>, Value)>> {
        dispatch!(self, p => p.witness_ratio())
    }
}

// ---------------------------------------------------------------------
// name grammar: base | add(e, e) | scale(e, rational) | bound(e)
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
enum Expr {
    Base(String),
    Add(Box<Expr>, Box<Expr>),
    Scale(Box<Expr>, Rational64),
    Bound(Box<Expr>),
}

fn parse_expr(s: &str) -> Result<Expr> {
    let s = s.trim();
    let bad = || Error::UnknownDistance(s.to_string());
    if let Some(inner) = s.strip_prefix("add(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = split_top_comma(inner).ok_or_else(bad)?;
        return Ok(Expr::Add(
            Box::new(parse_expr(a)?),
            Box::new(parse_expr(b)?),
        ));
    }
    if let Some(inner) = s.strip_prefix("scale(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = split_top_comma(inner).ok_or_else(bad)?;
        let lambda = parse_rational(b).ok_or_else(|| {
            Error::InvalidConfig(format!("cannot parse `{b}` as a rational scale factor"))
        })?;
        return Ok(Expr::Scale(Box::new(parse_expr(a)?), lambda));
    }
    if let Some(inner) = s.strip_prefix("bound(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Expr::Bound(Box::new(parse_expr(inner)?)));
    }
    if s.is_empty() || s.contains(['(', ')', ',']) {
        return Err(bad());
    }
    Ok(Expr::Base(s.to_string()))
}

fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Parse `p`, `p/q`, or a plain decimal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational64::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: i64 = frac.parse().ok()?;
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let frac_part = Rational64::new(num, den);
        let whole = Rational64::from_integer(int);
        return Some(if negative {
            whole - frac_part
        } else {
            whole + frac_part
        });
    }
    s.parse::<i64>().ok().map(Rational64::from_integer)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SpaceKind {
    Label,
    Scalar,
    Plane,
    Vector,
    Graph,
}

fn base_kind(name: &str, params: &SpaceParams) -> Result<SpaceKind> {
    Ok(match name {
        "drastic" | "cardinality" => SpaceKind::Label,
        "diameter" | "sum" if params.planar_base => SpaceKind::Plane,
        "diameter" | "sum" | "arithmetic_mean" | "ap" => SpaceKind::Scalar,
        "sec_radius" | "sec_area" | "directions" => SpaceKind::Plane,
        "fermat_euclidean" => SpaceKind::Vector,
        "fermat_graph3" => SpaceKind::Graph,
        other => return Err(Error::UnknownDistance(other.to_string())),
    })
}

fn expr_kind(e: &Expr, params: &SpaceParams) -> Result<SpaceKind> {
    match e {
        Expr::Base(name) => base_kind(name, params),
        Expr::Scale(inner, _) | Expr::Bound(inner) => expr_kind(inner, params),
        Expr::Add(a, b) => {
            let ka = expr_kind(a, params)?;
            let kb = expr_kind(b, params)?;
            if ka != kb {
                return Err(Error::InvalidConfig(
                    "cannot combine distances over different ground spaces".into(),
                ));
            }
            Ok(ka)
        }
    }
}

type Dyn<P> = Box<dyn NDistance<Point = P>>;

fn build_expr<P, F>(e: &Expr, leaf: &F) -> Result<Dyn<P>>
where
    P: Clone + PartialEq + fmt::Debug + 'static,
    F: Fn(&str) -> Result<Dyn<P>>,
{
    match e {
        Expr::Base(name) => leaf(name),
        Expr::Add(a, b) => Ok(Box::new(combine_add(
            build_expr(a, leaf)?,
            build_expr(b, leaf)?,
        )?)),
        Expr::Scale(inner, lambda) => Ok(Box::new(scale(build_expr(inner, leaf)?, *lambda)?)),
        Expr::Bound(inner) => Ok(Box::new(bound(build_expr(inner, leaf)?))),
    }
}

/// Witness configs live on the base distances; scaling preserves ratios,
/// so `scale` inherits them, while `add` and `bound` reshape ratios and
/// start from scratch.
fn witness_names(e: &Expr) -> Option<&str> {
    match e {
        Expr::Base(name) => Some(name),
        Expr::Scale(inner, _) => witness_names(inner),
        _ => None,
    }
}

fn expr_has_leaf(e: &Expr, name: &str) -> bool {
    match e {
        Expr::Base(n) => n == name,
        Expr::Scale(inner, _) | Expr::Bound(inner) => expr_has_leaf(inner, name),
        Expr::Add(a, b) => expr_has_leaf(a, name) || expr_has_leaf(b, name),
    }
}

/// Build a registered distance.
///
/// Base names: `drastic`, `cardinality`, `diameter`, `sum`,
/// `arithmetic_mean`, `ap`, `sec_radius`, `sec_area`, `directions`,
/// `fermat_euclidean`, `fermat_graph3` (the last needs
/// [`SpaceParams::graph`]). Combinators compose over one ground space:
/// `add(a,b)`, `scale(a,3/2)`, `bound(a)`.
pub fn make_distance(name: &str, arity: usize, params: &SpaceParams) -> Result<AnyDistance> {
    let expr = parse_expr(name)?;
    let kind = expr_kind(&expr, params)?;
    let witness_base = witness_names(&expr);

    match kind {
        SpaceKind::Label => {
            let leaf = |name: &str| -> Result<Dyn<u32>> {
                Ok(match name {
                    "drastic" => Box::new(Drastic::<u32>::new(arity)?),
                    "cardinality" => Box::new(Cardinality::<u32>::new(arity)?),
                    other => return Err(Error::UnknownDistance(other.to_string())),
                })
            };
            let distance = build_expr(&expr, &leaf)?;
            let witnesses = match witness_base {
                Some("drastic") => vec![label_witness_drastic(arity)],
                Some("cardinality") => {
                    if params.label_universe < arity as u32 {
                        return Err(Error::InvalidConfig(format!(
                            "cardinality witness needs a label universe of at least {arity}"
                        )));
                    }
                    vec![label_witness_cardinality(arity)]
                }
                _ => vec![],
            };
            Ok(AnyDistance::Label(Package {
                distance,
                space: LabelSpace {
                    universe: params.label_universe,
                },
                witnesses,
            }))
        }
        SpaceKind::Scalar => {
            let leaf = |name: &str| -> Result<Dyn<Value>> {
                Ok(match name {
                    "diameter" => Box::new(Diameter::new(arity, AbsDiff)?),
                    "sum" => Box::new(SumPairwise::new(arity, AbsDiff)?),
                    "arithmetic_mean" => Box::new(ArithmeticMean::new(arity)?),
                    "ap" => Box::new(ApDistance::new(arity)?),
                    other => return Err(Error::UnknownDistance(other.to_string())),
                })
            };
            let distance = build_expr(&expr, &leaf)?;
            let witnesses = match witness_base {
                Some("diameter") | Some("sum") => vec![scalar_witness_zero_one(arity)],
                Some("arithmetic_mean") => vec![scalar_witness_mean(arity)],
                // the paper witness only attains ratio 1 for n >= 4 under
                // the symmetric (sorted) progression reading
                Some("ap") if arity >= 4 => vec![scalar_witness_ap(arity)],
                _ => vec![],
            };
            // `ap` decides progression membership exactly: sample its
            // ground space on the integer grid
            let space = if expr_has_leaf(&expr, "ap") {
                ScalarLine::integers(params.int_lo, params.int_hi)
            } else {
                ScalarLine {
                    lo: params.line_lo,
                    hi: params.line_hi,
                    exact_denominator: None,
                }
            };
            Ok(AnyDistance::Scalar(Package {
                distance,
                space,
                witnesses,
            }))
        }
        SpaceKind::Plane => {
            let leaf = |name: &str| -> Result<Dyn<Point2>> {
                Ok(match name {
                    "sec_radius" => Box::new(RadiusDistance::new(arity)?),
                    "sec_area" => Box::new(AreaDistance::new(arity)?),
                    "directions" => Box::new(DirectionDistance::new(arity)?),
                    "diameter" => Box::new(Diameter::new(arity, EuclidMetric)?),
                    "sum" => Box::new(SumPairwise::new(arity, EuclidMetric)?),
                    other => return Err(Error::UnknownDistance(other.to_string())),
                })
            };
            let distance = build_expr(&expr, &leaf)?;
            let witnesses = match witness_base {
                Some("sec_radius") | Some("diameter") | Some("sum") => {
                    vec![plane_witness_repeat_pivot(arity)]
                }
                Some("sec_area") => vec![plane_witness_midpoint(arity)],
                Some("directions") => vec![plane_witness_circle(arity)?],
                _ => vec![],
            };
            // direction counting is combinatorial: integer inputs keep it
            // exact, which the strictness results rely on
            let space = if expr_has_leaf(&expr, "directions") {
                PlaneSpace::integer_grid(params.int_lo, params.int_hi)
            } else {
                PlaneSpace {
                    lo: params.plane_lo,
                    hi: params.plane_hi,
                    int_grid: None,
                }
            };
            Ok(AnyDistance::Plane(Package {
                distance,
                space,
                witnesses,
            }))
        }
        SpaceKind::Vector => {
            let leaf = |name: &str| -> Result<Dyn<Vec<f64>>> {
                Ok(match name {
                    "fermat_euclidean" => Box::new(FermatEuclidean::new(arity, 2)?),
                    other => return Err(Error::UnknownDistance(other.to_string())),
                })
            };
            let distance = build_expr(&expr, &leaf)?;
            let witnesses = match witness_base {
                Some("fermat_euclidean") => vec![vector_witness_fermat(arity)],
                _ => vec![],
            };
            Ok(AnyDistance::Vector(Package {
                distance,
                space: VectorSpace {
                    dim: 2,
                    lo: params.plane_lo,
                    hi: params.plane_hi,
                },
                witnesses,
            }))
        }
        SpaceKind::Graph => {
            let graph = params.graph.as_ref().ok_or_else(|| {
                Error::InvalidConfig("fermat_graph3 needs a ground graph".into())
            })?;
            if arity != 3 {
                return Err(Error::InvalidConfig(format!(
                    "fermat_graph3 is a 3-distance, got arity {arity}"
                )));
            }
            let leaf = |name: &str| -> Result<Dyn<usize>> {
                Ok(match name {
                    "fermat_graph3" => Box::new(Fermat3Graph::new(graph)?),
                    other => return Err(Error::UnknownDistance(other.to_string())),
                })
            };
            let distance = build_expr(&expr, &leaf)?;
            let witnesses = match witness_base {
                Some("fermat_graph3") => graph_witness(graph)?,
                _ => vec![],
            };
            Ok(AnyDistance::Graph(Package {
                distance,
                space: VertexSpace {
                    vertex_count: graph.vertex_count(),
                },
                witnesses,
            }))
        }
    }
}

// ---------------------------------------------------------------------
// paper witnesses
// ---------------------------------------------------------------------

fn label_witness_drastic(n: usize) -> Config<u32> {
    // x_1 = ... = x_{n-1} = z, x_n different
    let mut points = vec![0u32; n];
    points[n - 1] = 1;
    Config::new(points, 0)
}

fn label_witness_cardinality(n: usize) -> Config<u32> {
    // pairwise distinct entries with z among them
    Config::new((0..n as u32).collect(), 0)
}

fn scalar_witness_zero_one(n: usize) -> Config<Value> {
    let mut points = vec![Value::from_int(0); n];
    points[n - 1] = Value::from_int(1);
    Config::new(points, Value::from_int(0))
}

fn scalar_witness_mean(n: usize) -> Config<Value> {
    // x_1 < z < x_2 = ... = x_n
    let mut points = vec![Value::from_int(2); n];
    points[0] = Value::from_int(0);
    Config::new(points, Value::from_int(1))
}

fn scalar_witness_ap(n: usize) -> Config<Value> {
    // 1, 2, ..., n with pivot -1
    Config::new(
        (1..=n as i64).map(Value::from_int).collect(),
        Value::from_int(-1),
    )
}

fn plane_witness_repeat_pivot(n: usize) -> Config<Point2> {
    // A_2 = ... = A_n = Z, A_1 distinct
    let mut points = vec![Point2::exact(1, 0); n];
    points[0] = Point2::exact(0, 0);
    Config::new(points, Point2::exact(1, 0))
}

fn plane_witness_midpoint(n: usize) -> Config<Point2> {
    // A_1, A_2 distinct, everything else at their midpoint
    let mid = Point2::exact_ratio(Rational64::new(1, 2), Rational64::zero());
    let mut points = vec![mid; n];
    points[0] = Point2::exact(0, 0);
    points[1] = Point2::exact(1, 0);
    Config::new(points, mid)
}

/// Pairwise distinct points on the unit circle with the pivot on the
/// first of them. A chord between angles `a` and `b` has direction
/// `(a + b)/2 + pi/2`, so angles linear in the index make chords with
/// equal index sums parallel; the quadratic golden-ratio ladder keeps
/// all pair sums distinct for the arities in use, and the genericity is
/// asserted (the count must be `n choose 2`) rather than trusted.
fn plane_witness_circle(n: usize) -> Result<Config<Point2>> {
    const PHI: f64 = 0.618_033_988_749_894_9;
    let points: Vec<Point2> = (0..n)
        .map(|j| {
            let q = ((j + 1) * (j + 1)) as f64;
            let t = (q * PHI) % 1.0;
            let angle = core::f64::consts::TAU * t;
            Point2::new(maths::cos(angle), maths::sin(angle))
        })
        .collect();
    let count = direction_count(&points);
    let expected = n * (n - 1) / 2;
    if count != expected {
        return Err(Error::Degenerate(format!(
            "circle witness is not generic: {count} directions, expected {expected}"
        )));
    }
    let pivot = points[0].clone();
    Ok(Config::new(points, pivot))
}

fn vector_witness_fermat(n: usize) -> Config<Vec<f64>> {
    if n == 2 {
        // any pivot on the segment attains ratio 1
        return Config::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![0.5, 0.0]);
    }
    // regular n-gon with the pivot at the (symmetric) Fermat point: the
    // replaced sums collapse to at most (n-1) times the numerator
    let points: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let angle = core::f64::consts::TAU * j as f64 / n as f64;
            vec![maths::cos(angle), maths::sin(angle)]
        })
        .collect();
    Config::new(points, vec![0.0, 0.0])
}

fn graph_witness(graph: &Graph) -> Result<Vec<Config<usize>>> {
    if graph.vertex_count() < 3 {
        return Ok(vec![]);
    }
    let dm = crate::fermat::bfs_all_pairs(graph)?;
    // any distinct triple with its median as pivot attains 1/2 on a
    // median graph; on other graphs there may be no unique median at all
    match median_vertex(&dm, 0, 1, 2) {
        Ok(z) => Ok(vec![Config::new(vec![0, 1, 2], z)]),
        Err(Error::NotMedian { .. }) => Ok(vec![]),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------
// the constants table
// ---------------------------------------------------------------------

/// Verdict of one table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStatus {
    /// Estimate reproduces the exact constant.
    Match,
    /// Estimate sits inside the proved bracket (or below an exact value
    /// the search did not attain).
    WithinBounds,
    /// Estimate exceeds what theory allows: something is wrong.
    Violation,
}

impl fmt::Display for TableStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableStatus::Match => "match",
            TableStatus::WithinBounds => "within-bounds",
            TableStatus::Violation => "VIOLATION",
        })
    }
}

/// One row of the best-constant comparison table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub distance: String,
    pub n: usize,
    pub theoretical: KBound,
    pub estimated: Value,
    pub witness_ratio: Option<Value>,
    pub status: TableStatus,
}

/// Distances included in the table with their minimal arities.
pub const TABLE_DISTANCES: &[(&str, usize)] = &[
    ("drastic", 2),
    ("cardinality", 2),
    ("diameter", 2),
    ("sum", 2),
    ("arithmetic_mean", 2),
    ("sec_radius", 2),
    ("sec_area", 3),
    ("ap", 3),
    ("fermat_euclidean", 2),
    ("directions", 3),
];

fn row_status(theoretical: &KBound, estimated: &Value) -> TableStatus {
    let hi = Value::Exact(theoretical.upper());
    if estimated.exceeds(&hi, crate::distance::TOLERANCE)
        || (theoretical.hi_strict() && *estimated == hi)
    {
        return TableStatus::Violation;
    }
    match theoretical {
        KBound::Exact(k) => {
            if estimated.close_to(&Value::Exact(*k), crate::distance::TOLERANCE) {
                TableStatus::Match
            } else {
                TableStatus::WithinBounds
            }
        }
        KBound::Interval { .. } => TableStatus::WithinBounds,
    }
}

/// Estimate every table distance for `n` in `n_lo..=n_hi` (where the
/// arity gate allows) and compare against the known constants.
pub fn build_table(
    n_lo: usize,
    n_hi: usize,
    budget: u64,
    refine: &RefineSettings,
    seed: u64,
) -> Result<Vec<TableRow>> {
    let params = SpaceParams::default();
    let mut rows = Vec::new();
    for &(name, min_arity) in TABLE_DISTANCES {
        for n in n_lo.max(min_arity)..=n_hi {
            let d = make_distance(name, n, &params)?;
            let report = d.estimate(budget, refine, seed)?;
            let theoretical = d
                .theoretical_k()
                .expect("every table distance has a known constant or bracket");
            let witness_ratio = match d.witness_ratio() {
                Some(r) => Some(r?.1),
                None => None,
            };
            let status = row_status(&theoretical, &report.best_ratio);
            rows.push(TableRow {
                distance: name.to_string(),
                n,
                theoretical,
                estimated: report.best_ratio,
                witness_ratio,
                status,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_distance_examples() {
        let params = SpaceParams::default();

        let d = make_distance("drastic", 3, &params).unwrap();
        assert_eq!(d.theoretical_k(), Some(KBound::exact(1, 2)));

        let d = make_distance("sec_radius", 4, &params).unwrap();
        assert_eq!(d.theoretical_k(), Some(KBound::exact(1, 3)));

        let d = make_distance("fermat_euclidean", 3, &params).unwrap();
        assert_eq!(
            d.theoretical_k(),
            Some(KBound::Interval {
                lo: Rational64::new(1, 2),
                hi: Rational64::new(8, 15),
                hi_strict: false
            })
        );

        assert!(matches!(
            make_distance("no_such_thing", 3, &params),
            Err(Error::UnknownDistance(_))
        ));
        // the area map is not a 2-distance
        assert!(make_distance("sec_area", 2, &params).is_err());
        assert!(make_distance("drastic", 1, &params).is_err());
        // graph distance without a graph
        assert!(make_distance("fermat_graph3", 3, &params).is_err());
    }

    #[test]
    fn witness_ratios_match_constants() {
        let params = SpaceParams::default();
        for (name, n, expect) in [
            ("drastic", 5, Value::from_ratio(1, 4)),
            ("cardinality", 4, Value::from_ratio(1, 3)),
            ("diameter", 4, Value::from_ratio(1, 3)),
            ("sum", 3, Value::from_ratio(1, 2)),
            ("arithmetic_mean", 3, Value::from_ratio(1, 2)),
            ("ap", 4, Value::from_int(1)),
            ("directions", 5, Value::from_ratio(5, 17)),
            ("directions", 4, Value::from_ratio(2, 5)),
        ] {
            let d = make_distance(name, n, &params).unwrap();
            let (_, ratio) = d.witness_ratio().unwrap().unwrap();
            assert_eq!(ratio, expect, "{name} n={n}");
        }

        // float-valued witnesses: exact up to rounding
        for (name, n, expect) in [
            ("sec_radius", 4, 1.0 / 3.0),
            ("sec_area", 4, 0.4),
            ("fermat_euclidean", 3, 0.5),
            ("fermat_euclidean", 2, 1.0),
        ] {
            let d = make_distance(name, n, &params).unwrap();
            let (_, ratio) = d.witness_ratio().unwrap().unwrap();
            assert!(
                (ratio.to_f64() - expect).abs() <= 1e-9,
                "{name} n={n}: {} vs {expect}",
                ratio.to_f64()
            );
        }
    }

    #[test]
    fn ap_has_no_witness_below_n_4() {
        let d = make_distance("ap", 3, &SpaceParams::default()).unwrap();
        assert!(d.witness_ratio().is_none());
    }

    #[test]
    fn graph_package_on_a_median_graph() {
        let params = SpaceParams {
            graph: Some(Graph::grid(3, 3).unwrap()),
            ..SpaceParams::default()
        };
        let d = make_distance("fermat_graph3", 3, &params).unwrap();
        assert_eq!(d.theoretical_k(), Some(KBound::exact(1, 2)));
        let (_, ratio) = d.witness_ratio().unwrap().unwrap();
        assert_eq!(ratio, Value::from_ratio(1, 2));
    }

    #[test]
    fn combinator_names() {
        let params = SpaceParams::default();

        let d = make_distance("add(drastic,cardinality)", 3, &params).unwrap();
        assert_eq!(d.name(), "add(drastic,cardinality)");
        assert!(d.theoretical_k().is_none());

        // scaling preserves ratios, so the constant and witness survive
        let d = make_distance("scale(diameter,2)", 4, &params).unwrap();
        assert_eq!(d.theoretical_k(), Some(KBound::exact(1, 3)));
        let (_, ratio) = d.witness_ratio().unwrap().unwrap();
        assert_eq!(ratio, Value::from_ratio(1, 3));

        let d = make_distance("bound(drastic)", 3, &params).unwrap();
        assert!(d.theoretical_k().is_none());

        // mixed spaces are refused
        assert!(make_distance("add(drastic,diameter)", 3, &params).is_err());
        assert!(make_distance("scale(diameter,0)", 3, &params).is_err());
        assert!(make_distance("add(drastic)", 3, &params).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3"), Some(Rational64::from_integer(3)));
        assert_eq!(parse_rational("1/3"), Some(Rational64::new(1, 3)));
        assert_eq!(parse_rational("0.3"), Some(Rational64::new(3, 10)));
        assert_eq!(parse_rational("-1.25"), Some(Rational64::new(-5, 4)));
        assert_eq!(parse_rational("2.5e3"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn small_table_smoke() {
        let rows = build_table(3, 3, 50, &RefineSettings::none(), 1).unwrap();
        assert_eq!(rows.len(), TABLE_DISTANCES.len());
        for row in &rows {
            assert_ne!(row.status, TableStatus::Violation, "{row:?}");
        }
        // witness-anchored exact distances match even at tiny budgets
        let drastic = rows.iter().find(|r| r.distance == "drastic").unwrap();
        assert_eq!(drastic.status, TableStatus::Match);
        assert_eq!(drastic.estimated, Value::from_ratio(1, 2));
    }
}

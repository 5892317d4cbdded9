//! Bidegree arithmetic, truncated Tate-cell sums, star gradings and
//! vanishing lines.
//!
//! A cell `(p, w)` stands for the shifted and twisted Eilenberg-MacLane
//! object `Z/2[p](w)`; the motivic sphere `S^{p,w}` is the cell `(p, w)`.
//! A [`TateSum`] is a finite multiset of cells that is exact for shifts
//! `p <= trunc` and says nothing above.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bidegree `(p, w)`: shift and weight. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub p: i64,
    pub w: i64,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { p: 0, w: 0 };
    /// `S^1`
    pub const S1: BiDegree = BiDegree { p: 1, w: 0 };
    /// `G_m`
    pub const GM: BiDegree = BiDegree { p: 1, w: 1 };
    /// `T = P^1`
    pub const T: BiDegree = BiDegree { p: 2, w: 1 };

    pub const fn new(p: i64, w: i64) -> Self {
        BiDegree { p, w }
    }

    /// `k = 2w - p`, the parameter of the `D_2` cell formula.
    pub fn excess(self) -> i64 {
        2 * self.w - self.p
    }

    pub fn scale(self, n: i64) -> Self {
        BiDegree::new(self.p * n, self.w * n)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.w)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.p + rhs.p, self.w + rhs.w)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.p - rhs.p, self.w - rhs.w)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.p, -self.w)
    }
}

/// Truncation value meaning "nothing has been cut off".
pub const UNTRUNCATED: i64 = i64::MAX / 4;

/// `t + d`, keeping [`UNTRUNCATED`] fixed.
pub fn offset_trunc(t: i64, d: i64) -> i64 {
    if t >= UNTRUNCATED {
        UNTRUNCATED
    } else {
        t.saturating_add(d).min(UNTRUNCATED)
    }
}

/// A single-variable series with nonnegative integer coefficients, indexed by
/// an integer degree (usually a star degree).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StarSeries(BTreeMap<i64, u64>);

impl StarSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut s = Self::new();
        for (d, c) in pairs {
            s.add_at(d, c);
        }
        s
    }

    /// The series `1`.
    pub fn one() -> Self {
        Self::from_pairs([(0, 1)])
    }

    pub fn add_at(&mut self, degree: i64, coeff: u64) {
        if coeff == 0 {
            return;
        }
        *self.0.entry(degree).or_insert(0) += coeff;
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn plus(&self, other: &StarSeries) -> StarSeries {
        let mut out = self.clone();
        for (d, c) in other.iter() {
            out.add_at(d, c);
        }
        out
    }

    /// Cauchy product.
    pub fn convolve(&self, other: &StarSeries) -> StarSeries {
        let mut out = StarSeries::new();
        for (d1, c1) in self.iter() {
            for (d2, c2) in other.iter() {
                out.add_at(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Cauchy product keeping only degrees `<= bound`.
    pub fn convolve_upto(&self, other: &StarSeries, bound: i64) -> StarSeries {
        let mut out = StarSeries::new();
        for (d1, c1) in self.iter() {
            for (d2, c2) in other.iter() {
                if d1 + d2 <= bound {
                    out.add_at(d1 + d2, c1 * c2);
                }
            }
        }
        out
    }

    pub fn truncated(&self, bound: i64) -> StarSeries {
        StarSeries(self.0.range(..=bound).map(|(&d, &c)| (d, c)).collect())
    }

    /// Two-column text table.
    pub fn render_table(&self, header: &str) -> String {
        let mut out = format!("{:>6}  {}\n", "star", header);
        for (d, c) in self.iter() {
            out.push_str(&format!("{d:>6}  {c}\n"));
        }
        out
    }
}

/// A finite multiset of Tate cells, exact for shifts `p <= trunc`.
#[derive(Clone, Debug)]
pub struct TateSum {
    cells: BTreeMap<BiDegree, u64>,
    trunc: i64,
}

#[derive(Serialize, Deserialize)]
struct CellRecord {
    p: i64,
    w: i64,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct TateSumRecord {
    trunc: i64,
    cells: Vec<CellRecord>,
}

impl TateSum {
    pub fn new(trunc: i64) -> Self {
        TateSum {
            cells: BTreeMap::new(),
            trunc,
        }
    }

    pub fn single(d: BiDegree, trunc: i64) -> Self {
        let mut s = Self::new(trunc);
        s.insert(d, 1);
        s
    }

    pub fn from_cells<I: IntoIterator<Item = (BiDegree, u64)>>(cells: I, trunc: i64) -> Self {
        let mut s = Self::new(trunc);
        for (d, m) in cells {
            s.insert(d, m);
        }
        s
    }

    /// Adds `mult` copies of `d`; cells above the truncation are dropped.
    pub fn insert(&mut self, d: BiDegree, mult: u64) {
        if mult == 0 || d.p > self.trunc {
            return;
        }
        *self.cells.entry(d).or_insert(0) += mult;
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn mult(&self, d: BiDegree) -> u64 {
        self.cells.get(&d).copied().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = (BiDegree, u64)> + '_ {
        self.cells.iter().map(|(&d, &m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of distinct cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// Sum of all multiplicities.
    pub fn rank(&self) -> u64 {
        self.cells.values().sum()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.cells.keys().map(|d| d.p).min()
    }

    /// A lower bound for the shifts of the untruncated object.
    pub fn shift_lower_bound(&self) -> i64 {
        self.min_shift()
            .unwrap_or_else(|| self.trunc.saturating_add(1))
    }

    /// The same sum with a (possibly) lower truncation.
    pub fn restrict(&self, trunc: i64) -> TateSum {
        let trunc = trunc.min(self.trunc);
        TateSum::from_cells(self.cells(), trunc)
    }

    pub fn sum(&self, other: &TateSum) -> TateSum {
        let trunc = self.trunc.min(other.trunc);
        let mut out = TateSum::from_cells(self.cells(), trunc);
        for (d, m) in other.cells() {
            out.insert(d, m);
        }
        out
    }

    /// Bidegree-wise convolution, truncated at the smaller truncation.
    ///
    /// Rejected when a cell missing from one operand could combine with a
    /// negative-shift cell of the other and land below the result
    /// truncation.
    pub fn tensor(&self, other: &TateSum) -> Result<TateSum> {
        let trunc = self.trunc.min(other.trunc);
        let sound_self = offset_trunc(self.trunc, other.shift_lower_bound());
        let sound_other = offset_trunc(other.trunc, self.shift_lower_bound());
        if trunc > sound_self || trunc > sound_other {
            return Err(Error::TruncationUnsound(format!(
                "result truncation {trunc} exceeds the sound bound {}",
                sound_self.min(sound_other)
            )));
        }
        let mut out = TateSum::new(trunc);
        for (a, ma) in self.cells() {
            for (b, mb) in other.cells() {
                out.insert(a + b, ma * mb);
            }
        }
        Ok(out)
    }

    /// Translates every cell by `d`.
    pub fn shift(&self, d: BiDegree) -> TateSum {
        TateSum::from_cells(
            self.cells().map(|(c, m)| (c + d, m)),
            offset_trunc(self.trunc, d.p),
        )
    }

    /// Star-degree histogram.
    pub fn series(&self, g: StarGrading) -> StarSeries {
        StarSeries::from_pairs(self.cells().map(|(d, m)| (g.star(d), m)))
    }

    /// `Z/2[p](w)^{mult}` terms joined by ` ⊕ `, or `0`.
    pub fn render(&self) -> String {
        if self.cells.is_empty() {
            return "0".to_string();
        }
        self.cells()
            .map(|(d, m)| format!("Z/2[{}]({})^{{{}}}", d.p, d.w, m))
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rec = TateSumRecord {
            trunc: self.trunc,
            cells: self
                .cells()
                .map(|(d, mult)| CellRecord {
                    p: d.p,
                    w: d.w,
                    mult,
                })
                .collect(),
        };
        serde_json::to_value(rec).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<TateSum> {
        let rec: TateSumRecord = serde_json::from_value(value.clone())
            .map_err(|e| Error::Fixture(format!("bad TateSum record: {e}")))?;
        Ok(TateSum::from_cells(
            rec.cells
                .into_iter()
                .map(|c| (BiDegree::new(c.p, c.w), c.mult)),
            rec.trunc,
        ))
    }
}

/// Equality on the common truncation.
impl PartialEq for TateSum {
    fn eq(&self, other: &TateSum) -> bool {
        let t = self.trunc.min(other.trunc);
        let a = self.cells.iter().filter(|(d, _)| d.p <= t);
        let b = other.cells.iter().filter(|(d, _)| d.p <= t);
        a.eq(b)
    }
}

impl fmt::Display for TateSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The grading `star(p, w) = u*p - v*w` attached to the line of slope
/// `u/v` through the origin. Stored in lowest terms with `u, v > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarGrading {
    u: i64,
    v: i64,
}

impl StarGrading {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u <= 0 || v <= 0 {
            return Err(Error::InvalidInput(format!(
                "slope {u}/{v} must have positive numerator and denominator"
            )));
        }
        let g = u.gcd(&v);
        Ok(StarGrading { u: u / g, v: v / g })
    }

    /// The default slope `2/3`.
    pub fn default_slope() -> Self {
        StarGrading { u: 2, v: 3 }
    }

    pub fn u(self) -> i64 {
        self.u
    }

    pub fn v(self) -> i64 {
        self.v
    }

    pub fn star(self, d: BiDegree) -> i64 {
        self.u * d.p - self.v * d.w
    }

    /// `0 < q < 1`.
    pub fn in_unit_interval(self) -> bool {
        self.u < self.v
    }

    /// Strict comparison `q > a/b` for `b > 0`.
    pub fn exceeds(self, a: i64, b: i64) -> bool {
        self.u * b > a * self.v
    }
}

impl fmt::Display for StarGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.u, self.v)
    }
}

impl FromStr for StarGrading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse slope `{s}`, expected u/v"));
        let (u, v) = s.split_once('/').ok_or_else(bad)?;
        let u = u.trim().parse::<i64>().map_err(|_| bad())?;
        let v = v.trim().parse::<i64>().map_err(|_| bad())?;
        StarGrading::new(u, v)
    }
}

/// A raw homomorphism `Z x Z -> Z`, recorded by its values on `(1,0)` and
/// `(0,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawGrading {
    pub on_shift: i64,
    pub on_weight: i64,
}

impl From<StarGrading> for RawGrading {
    fn from(g: StarGrading) -> Self {
        RawGrading {
            on_shift: g.u,
            on_weight: -g.v,
        }
    }
}

/// Whether two gradings have the same ratio `alpha(1,0) / alpha(0,1)`.
pub fn grading_equivalent(a: impl Into<RawGrading>, b: impl Into<RawGrading>) -> Result<bool> {
    let (a, b) = (a.into(), b.into());
    if (a.on_shift == 0 && a.on_weight == 0) || (b.on_shift == 0 && b.on_weight == 0) {
        return Err(Error::ZeroHomomorphism);
    }
    Ok(i128::from(a.on_shift) * i128::from(b.on_weight)
        == i128::from(a.on_weight) * i128::from(b.on_shift))
}

/// A bigraded dimension model for the coefficient ring, supported in the
/// cone `{(0,0)} ∪ {p <= 0, w <= p}`.
pub trait CoefficientModel {
    fn name(&self) -> &str;

    fn dim(&self, d: BiDegree) -> u64;

    /// Minimum of `star` over the support together with a point attaining
    /// it, or `None` when `star` is unbounded below on the support.
    fn cone_min_star(&self, g: StarGrading) -> Option<(i64, BiDegree)>;

    /// Every supported point with `star <= max_star`, or `None` if there
    /// are infinitely many.
    fn cone_points(&self, g: StarGrading, max_star: i64) -> Option<Vec<(BiDegree, u64)>>;
}

/// Powers of `tau`: dimension one exactly on `{p = 0, w <= 0}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FieldClosed;

/// Monomials in `tau` and `rho`: dimension one exactly on `{p <= 0, w <= p}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FieldReal;

impl CoefficientModel for FieldClosed {
    fn name(&self) -> &str {
        "field_closed"
    }

    fn dim(&self, d: BiDegree) -> u64 {
        u64::from(d.p == 0 && d.w <= 0)
    }

    fn cone_min_star(&self, _g: StarGrading) -> Option<(i64, BiDegree)> {
        Some((0, BiDegree::ZERO))
    }

    fn cone_points(&self, g: StarGrading, max_star: i64) -> Option<Vec<(BiDegree, u64)>> {
        // star(0, -n) = v*n
        let mut out = Vec::new();
        let mut n = 0;
        while g.v * n <= max_star {
            out.push((BiDegree::new(0, -n), 1));
            n += 1;
        }
        out.reverse();
        Some(out)
    }
}

impl CoefficientModel for FieldReal {
    fn name(&self) -> &str {
        "field_real"
    }

    fn dim(&self, d: BiDegree) -> u64 {
        u64::from(d.p <= 0 && d.w <= d.p)
    }

    fn cone_min_star(&self, g: StarGrading) -> Option<(i64, BiDegree)> {
        // With w = p - s: star = (u - v) p + v s, p <= 0, s >= 0.
        if g.u > g.v {
            None
        } else {
            Some((0, BiDegree::ZERO))
        }
    }

    fn cone_points(&self, g: StarGrading, max_star: i64) -> Option<Vec<(BiDegree, u64)>> {
        if g.u >= g.v {
            return None;
        }
        let mut out = Vec::new();
        let mut p = 0;
        loop {
            let base = (g.u - g.v) * p;
            if base > max_star {
                break;
            }
            let mut s = 0;
            while base + g.v * s <= max_star {
                out.push((BiDegree::new(p, p - s), 1));
                s += 1;
            }
            p -= 1;
        }
        out.sort();
        Some(out)
    }
}

/// Looks up a shipped coefficient model by name.
pub fn coefficient_model(name: &str) -> Result<Box<dyn CoefficientModel>> {
    match name {
        "field_closed" => Ok(Box::new(FieldClosed)),
        "field_real" => Ok(Box::new(FieldReal)),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub ok: bool,
    /// `None` when the module is zero, or when star is unbounded below.
    pub min_star: Option<i64>,
    pub witness: Option<BiDegree>,
}

/// Whether the module `a ⊗ coefficients` vanishes in star degrees `<= 0`.
pub fn has_vanishing_line(
    a: &TateSum,
    g: StarGrading,
    model: &dyn CoefficientModel,
) -> VanishingReport {
    let Some(cell) = a.cells().map(|(d, _)| d).next() else {
        return VanishingReport {
            ok: true,
            min_star: None,
            witness: None,
        };
    };
    let Some((cone_min, apex)) = model.cone_min_star(g) else {
        return VanishingReport {
            ok: false,
            min_star: None,
            witness: Some(cell),
        };
    };
    let (min_star, witness) = a
        .cells()
        .map(|(d, _)| (g.star(d) + cone_min, d + apex))
        .min()
        .expect("nonempty");
    VanishingReport {
        ok: min_star > 0,
        min_star: Some(min_star),
        witness: Some(witness),
    }
}

/// Star histogram of `a ⊗ coefficients` in star degrees `<= max_star`.
pub fn module_series(
    a: &TateSum,
    g: StarGrading,
    model: &dyn CoefficientModel,
    max_star: i64,
) -> Option<StarSeries> {
    let mut out = StarSeries::new();
    for (d, m) in a.cells() {
        let s = g.star(d);
        for (pt, dim) in model.cone_points(g, max_star - s)? {
            out.add_at(s + g.star(pt), m * dim);
        }
    }
    Some(out)
}

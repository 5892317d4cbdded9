//! Sylow and Kummer combinatorics for the symmetric groups, iterated `D_2`
//! bounds, and the containers `E_i` for the extended powers `D_i(S^1)`.
//!
//! `E_1 = {S^1}`. If `i` has more than one set bit, `E_i = E_{i1} ⊗ E_{i2}`
//! along a carry-free split. If `i = 2^a`, `E_i` replaces each product
//! `⊗ X` of `E_{i/2}` by `⊗ D_2(X)` and adds the unordered cross products.
//! Every `E_i` surjects onto `D_i(S^1)`, so its cells bound those of `D_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bigraded::{BiDegree, StarGrading, StarSeries, TateSum};
use crate::error::{Error, Result};
use crate::extpower::{d2_cell, d2_sum, s_member};

/// Parity certificate for a carry-free binary split `i = i1 + i2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KummerCertificate {
    pub i: u64,
    pub i1: u64,
    pub i2: u64,
    /// Number of carries when adding `i1` and `i2` in base 2.
    pub carries: u32,
    pub binomial_odd: bool,
}

/// Splits `i` as its top power of two plus the rest.
pub fn binary_split(i: u64) -> Result<KummerCertificate> {
    if i < 2 {
        return Err(Error::InvalidInput(format!(
            "binary_split needs i >= 2, got {i}"
        )));
    }
    if i.is_power_of_two() {
        return Err(Error::PowerOfTwo(i));
    }
    let i1 = 1u64 << (63 - i.leading_zeros());
    let i2 = i - i1;
    let carries = i1.count_ones() + i2.count_ones() - i.count_ones();
    Ok(KummerCertificate {
        i,
        i1,
        i2,
        carries,
        binomial_odd: carries == 0,
    })
}

/// Binary exponents of `i`, descending. A Sylow 2-subgroup of `Σ_i` is the
/// product of the iterated wreath products `Σ_2 ≀ ... ≀ Σ_2` of these heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowTower {
    pub heights: Vec<u32>,
}

pub fn sylow_tower(i: u64) -> Result<SylowTower> {
    if i == 0 {
        return Err(Error::InvalidInput("sylow_tower needs i >= 1".into()));
    }
    let heights = (0..64).rev().filter(|b| i >> b & 1 == 1).collect();
    Ok(SylowTower { heights })
}

/// `⊗_j D_2^{(n_j)}({d})`, an upper bound for `D_i(d)`.
pub fn iterated_d2_bound(d: BiDegree, tower: &SylowTower, trunc: i64) -> Result<TateSum> {
    let mut out: Option<TateSum> = None;
    for &n in &tower.heights {
        let mut x = TateSum::single(d, trunc);
        for _ in 0..n {
            x = d2_sum(&x, trunc)?;
        }
        out = Some(match out {
            None => x,
            Some(acc) => acc.tensor(&x)?,
        });
    }
    Ok(out.unwrap_or_else(|| TateSum::single(BiDegree::ZERO, trunc)))
}

/// A finite tensor product of cells, stored as a sorted list of factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Product(Vec<BiDegree>);

impl Product {
    pub fn new(mut factors: Vec<BiDegree>) -> Self {
        factors.sort();
        Product(factors)
    }

    pub fn factors(&self) -> &[BiDegree] {
        &self.0
    }

    pub fn total(&self) -> BiDegree {
        self.0.iter().fold(BiDegree::ZERO, |a, &b| a + b)
    }

    pub fn concat(&self, other: &Product) -> Product {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Product::new(v)
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A sum of products, exact for total shifts `<= trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSum {
    products: BTreeMap<Product, u64>,
    trunc: i64,
}

#[derive(Serialize, Deserialize)]
struct FactorRecord {
    p: i64,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct ProductRecord {
    factors: Vec<FactorRecord>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct ProductSumRecord {
    trunc: i64,
    products: Vec<ProductRecord>,
}

impl ProductSum {
    pub fn new(trunc: i64) -> Self {
        ProductSum {
            products: BTreeMap::new(),
            trunc,
        }
    }

    pub fn from_products<I: IntoIterator<Item = (Product, u64)>>(items: I, trunc: i64) -> Self {
        let mut s = Self::new(trunc);
        for (p, m) in items {
            s.insert(p, m);
        }
        s
    }

    pub fn insert(&mut self, p: Product, mult: u64) {
        if mult == 0 || p.total().p > self.trunc {
            return;
        }
        *self.products.entry(p).or_insert(0) += mult;
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn products(&self) -> impl Iterator<Item = (&Product, u64)> + '_ {
        self.products.iter().map(|(p, &m)| (p, m))
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    /// Products ordered by total shift, then canonically.
    fn by_shift(&self) -> Vec<(&Product, u64, i64)> {
        let mut v: Vec<_> = self.products().map(|(p, m)| (p, m, p.total().p)).collect();
        v.sort_by(|a, b| (a.2, a.0).cmp(&(b.2, b.0)));
        v
    }

    /// Productwise concatenation, pruned by total shift.
    pub fn tensor(&self, other: &ProductSum) -> ProductSum {
        let trunc = self.trunc.min(other.trunc);
        let mut out = ProductSum::new(trunc);
        let rhs = other.by_shift();
        for (a, ma, sa) in self.by_shift() {
            for &(b, mb, sb) in &rhs {
                if sa + sb > trunc {
                    break;
                }
                out.insert(a.concat(b), ma * mb);
            }
        }
        out
    }

    /// Sums the factor bidegrees of each product.
    pub fn flatten(&self) -> TateSum {
        TateSum::from_cells(self.products().map(|(p, m)| (p.total(), m)), self.trunc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rec = ProductSumRecord {
            trunc: self.trunc,
            products: self
                .products()
                .map(|(p, mult)| ProductRecord {
                    factors: p
                        .0
                        .iter()
                        .map(|d| FactorRecord { p: d.p, w: d.w })
                        .collect(),
                    mult,
                })
                .collect(),
        };
        serde_json::to_value(rec).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<ProductSum> {
        let rec: ProductSumRecord = serde_json::from_value(value.clone())
            .map_err(|e| Error::Fixture(format!("bad ProductSum record: {e}")))?;
        Ok(ProductSum::from_products(
            rec.products.into_iter().map(|r| {
                (
                    Product::new(
                        r.factors
                            .into_iter()
                            .map(|f| BiDegree::new(f.p, f.w))
                            .collect(),
                    ),
                    r.mult,
                )
            }),
            rec.trunc,
        ))
    }

    /// One product per line: `mult x [factors] -> total`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (p, m) in self.products() {
            out.push_str(&format!("{m} x {p} -> {}\n", p.total()));
        }
        out
    }
}

/// Builds and caches the containers `E_i` at a fixed slope and truncation.
pub struct EiBuilder {
    q: StarGrading,
    trunc: i64,
    cache: HashMap<u64, ProductSum>,
}

impl EiBuilder {
    pub fn new(q: StarGrading, trunc: i64) -> Result<Self> {
        if !q.in_unit_interval() {
            return Err(Error::InvalidInput(format!("slope {q} must lie in (0, 1)")));
        }
        Ok(EiBuilder {
            q,
            trunc,
            cache: HashMap::new(),
        })
    }

    pub fn get(&mut self, i: u64) -> Result<&ProductSum> {
        if i == 0 {
            return Err(Error::InvalidInput("E_i is defined for i >= 1".into()));
        }
        if !self.cache.contains_key(&i) {
            let e = self.build(i)?;
            self.check(i, &e)?;
            self.cache.insert(i, e);
        }
        Ok(&self.cache[&i])
    }

    fn build(&mut self, i: u64) -> Result<ProductSum> {
        if i == 1 {
            return Ok(ProductSum::from_products(
                [(Product::new(vec![BiDegree::S1]), 1)],
                self.trunc,
            ));
        }
        if !i.is_power_of_two() {
            let split = binary_split(i)?;
            let a = self.get(split.i1)?.clone();
            let b = self.get(split.i2)?;
            return Ok(a.tensor(b));
        }
        let prev = self.get(i / 2)?.clone();
        self.wreath_step(&prev)
    }

    fn wreath_step(&self, prev: &ProductSum) -> Result<ProductSum> {
        let t = self.trunc;
        let mut out = ProductSum::new(t);
        let items = prev.by_shift();
        for &(prod, m, s) in &items {
            // Each D_2(X) starts in shift 2|X|.
            if 2 * s > t {
                break;
            }
            let mut expansions = Vec::with_capacity(prod.0.len());
            for &x in &prod.0 {
                let budget = t - 2 * (s - x.p);
                let cells: Vec<BiDegree> = d2_cell(x, budget)?.cells().map(|(c, _)| c).collect();
                expansions.push(cells);
            }
            let mut chosen = Vec::with_capacity(expansions.len());
            distribute(&expansions, 2 * s, t, &mut chosen, &mut |f| {
                out.insert(Product::new(f.to_vec()), m)
            });
            out.insert(prod.concat(prod), m * (m - 1) / 2);
        }
        for (n, &(a, ma, sa)) in items.iter().enumerate() {
            for &(b, mb, sb) in &items[n + 1..] {
                if sa + sb > t {
                    break;
                }
                out.insert(a.concat(b), ma * mb);
            }
        }
        Ok(out)
    }

    fn check(&self, i: u64, e: &ProductSum) -> Result<()> {
        for (p, _) in e.products() {
            for &f in &p.0 {
                if let Some(c) = s_member(f, self.q).failed {
                    return Err(Error::SMembershipViolation {
                        i,
                        factor: f,
                        condition: c.code(),
                        slope: self.q.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Enumerates one cell from each list, keeping the running total shift
/// within `t`. `floor` is the least total shift the unchosen lists can add
/// (twice their source shifts, which the expansions attain).
fn distribute(
    lists: &[Vec<BiDegree>],
    floor: i64,
    t: i64,
    chosen: &mut Vec<BiDegree>,
    emit: &mut dyn FnMut(&[BiDegree]),
) {
    let Some((head, rest)) = lists.split_first() else {
        emit(chosen);
        return;
    };
    let head_min = head.first().map(|c| c.p).unwrap_or(i64::MAX);
    let used: i64 = chosen.iter().map(|c| c.p).sum();
    for &c in head {
        let rest_floor = floor - head_min;
        if used + c.p + rest_floor > t {
            continue;
        }
        chosen.push(c);
        distribute(rest, rest_floor, t, chosen, emit);
        chosen.pop();
    }
}

pub fn build_ei(i: u64, q: StarGrading, trunc: i64) -> Result<ProductSum> {
    Ok(EiBuilder::new(q, trunc)?.get(i)?.clone())
}

pub const SOUNDNESS_NOTE: &str =
    "E_i surjects onto D_i(S^1) as a split summand, so a vanishing line for E_i is one for D_i";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingCertificate {
    pub ok: bool,
    pub slope: String,
    pub min_slack: Option<i64>,
    pub witness: Option<Vec<BiDegree>>,
    pub witness_total: Option<BiDegree>,
    pub products: usize,
    pub note: &'static str,
}

/// Checks `star_q > 0` on the total bidegree of every product.
pub fn vanishing_certificate(e: &ProductSum, q: StarGrading) -> VanishingCertificate {
    let best = e
        .products()
        .map(|(p, _)| (q.star(p.total()), p))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(b.1)));
    VanishingCertificate {
        ok: best.is_none_or(|(s, _)| s > 0),
        slope: q.to_string(),
        min_slack: best.map(|(s, _)| s),
        witness: best.map(|(_, p)| p.0.clone()),
        witness_total: best.map(|(_, p)| p.total()),
        products: e.len(),
        note: SOUNDNESS_NOTE,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NsymRow {
    pub i: u64,
    pub cells: TateSum,
    pub series: StarSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NsymTable {
    pub slope: StarGrading,
    pub trunc: i64,
    pub rows: Vec<NsymRow>,
    pub combined: NsymRow,
}

impl NsymTable {
    pub fn to_json(&self) -> serde_json::Value {
        let row = |r: &NsymRow| {
            serde_json::json!({
                "i": r.i,
                "cells": r.cells.to_json(),
                "series": r.series,
            })
        };
        serde_json::json!({
            "slope": self.slope.to_string(),
            "trunc": self.trunc,
            "rows": self.rows.iter().map(row).collect::<Vec<_>>(),
            "combined": {
                "cells": self.combined.cells.to_json(),
                "series": self.combined.series,
            },
        })
    }

    /// Rows are `i`, columns are star degrees.
    pub fn render_table(&self) -> String {
        let mut degrees: Vec<i64> = self.combined.series.iter().map(|(d, _)| d).collect();
        degrees.dedup();
        let mut out = format!("{:>5}", "i\\*");
        for d in &degrees {
            out.push_str(&format!(" {d:>4}"));
        }
        out.push('\n');
        let mut line = |label: String, s: &StarSeries| {
            out.push_str(&format!("{label:>5}"));
            for &d in &degrees {
                out.push_str(&format!(" {:>4}", s.get(d)));
            }
            out.push('\n');
        };
        for r in &self.rows {
            line(r.i.to_string(), &r.series);
        }
        line("all".into(), &self.combined.series);
        out
    }
}

/// Upper-bound cells of `D_i(S^1)` for `i <= max_i`, with their sum.
pub fn nsym_series(max_i: u64, q: StarGrading, trunc: i64) -> Result<NsymTable> {
    let mut b = EiBuilder::new(q, trunc)?;
    let mut rows = Vec::new();
    for i in 0..=max_i {
        let cells = if i == 0 {
            TateSum::single(BiDegree::ZERO, trunc)
        } else {
            b.get(i)?.flatten()
        };
        let series = cells.series(q);
        rows.push(NsymRow { i, cells, series });
    }
    let cells = rows
        .iter()
        .fold(TateSum::new(trunc), |acc, r| acc.sum(&r.cells));
    let series = cells.series(q);
    Ok(NsymTable {
        slope: q,
        trunc,
        rows,
        combined: NsymRow {
            i: max_i,
            cells,
            series,
        },
    })
}

/// `V * A` up to degree `bound`.
pub fn multiply(v: &StarSeries, a: &StarSeries, bound: i64) -> StarSeries {
    v.convolve_upto(a, bound)
}

/// Solves `mbar = V * abar` degree by degree from the bottom, up to
/// `bound`.
pub fn cofree_divide(mbar: &StarSeries, abar: &StarSeries, bound: i64) -> Result<StarSeries> {
    if abar.get(0) != 1 {
        return Err(Error::InvalidInput(
            "the divisor must have constant term 1".into(),
        ));
    }
    if mbar.min_degree().is_some_and(|d| d < 0) || abar.min_degree().is_some_and(|d| d < 0) {
        return Err(Error::InvalidInput(
            "series must vanish in negative degrees".into(),
        ));
    }
    let mut v = StarSeries::new();
    for d in 0..=bound {
        let mut rest = i128::from(mbar.get(d));
        for (j, c) in v.iter() {
            rest -= i128::from(c) * i128::from(abar.get(d - j));
        }
        if rest < 0 {
            return Err(Error::NegativeCoefficient { degree: d });
        }
        v.add_at(d, rest as u64);
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Exterior,
    Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub p: i64,
    pub w: i64,
}

impl Generator {
    pub fn degree(&self) -> BiDegree {
        BiDegree::new(self.p, self.w)
    }
}

/// Generator list for the reduced dual Steenrod algebra, read from a data
/// file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSteenrod {
    pub label: String,
    pub generators: Vec<Generator>,
}

const BUILTIN_DUAL_STEENROD: &str = include_str!("../fixtures/dual_steenrod.json");

impl DualSteenrod {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_DUAL_STEENROD).expect("shipped fixture parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Fixture(format!(
                "dual Steenrod fixture, line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Star series of the monomial basis, by enumeration up to `bound`.
    pub fn reduced_series(&self, q: StarGrading, bound: i64) -> Result<StarSeries> {
        let stars: Vec<(i64, GeneratorKind)> = self
            .generators
            .iter()
            .map(|g| (q.star(g.degree()), g.kind))
            .collect();
        if let Some(g) = self.generators.iter().find(|g| q.star(g.degree()) <= 0) {
            return Err(Error::InvalidInput(format!(
                "generator {} has star degree <= 0 at slope {q}",
                g.name
            )));
        }
        let mut out = StarSeries::new();
        fn walk(stars: &[(i64, GeneratorKind)], acc: i64, bound: i64, out: &mut StarSeries) {
            let Some((&(s, kind), rest)) = stars.split_first() else {
                out.add_at(acc, 1);
                return;
            };
            let max_exp = match kind {
                GeneratorKind::Exterior => 1,
                GeneratorKind::Polynomial => i64::MAX,
            };
            let mut e = 0;
            while e <= max_exp && acc + e * s <= bound {
                walk(rest, acc + e * s, bound, out);
                e += 1;
            }
        }
        walk(&stars, 0, bound, &mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q23() -> StarGrading {
        StarGrading::default_slope()
    }

    fn prod(fs: &[(i64, i64)]) -> Product {
        Product::new(fs.iter().map(|&(p, w)| BiDegree::new(p, w)).collect())
    }

    fn binomial(n: u64, k: u64) -> u128 {
        let mut c: u128 = 1;
        for j in 0..k {
            c = c * u128::from(n - j) / u128::from(j + 1);
        }
        c
    }

    #[test]
    fn split_examples() {
        let c = binary_split(3).unwrap();
        assert_eq!((c.i1, c.i2), (2, 1));
        assert_eq!(binomial(3, 2), 3);
        let c = binary_split(6).unwrap();
        assert_eq!((c.i1, c.i2), (4, 2));
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binary_split(8), Err(Error::PowerOfTwo(8)));
        assert!(matches!(binary_split(1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn split_parity_matches_binomials() {
        for i in 2..=100u64 {
            if i.is_power_of_two() {
                continue;
            }
            let c = binary_split(i).unwrap();
            assert_eq!(c.i1 + c.i2, i);
            assert_eq!(c.carries, 0);
            assert!(c.binomial_odd);
            assert_eq!(binomial(i, c.i1) % 2, 1, "i = {i}");
        }
    }

    #[test]
    fn wreath_index_is_odd() {
        for a in 1..=6u32 {
            let i = 1u64 << a;
            assert_eq!((binomial(i, i / 2) / 2) % 2, 1);
        }
    }

    #[test]
    fn tower_examples() {
        assert_eq!(sylow_tower(6).unwrap().heights, vec![2, 1]);
        assert_eq!(sylow_tower(1).unwrap().heights, vec![0]);
        assert_eq!(sylow_tower(13).unwrap().heights, vec![3, 2, 0]);
        for i in 1..200u64 {
            let t = sylow_tower(i).unwrap();
            assert_eq!(t.heights.iter().map(|&h| 1u64 << h).sum::<u64>(), i);
        }
    }

    /// Copy rule applied by hand to an explicit list of cell copies.
    fn d2_copies(copies: &[BiDegree], trunc: i64) -> Vec<(BiDegree, u64)> {
        let mut m: BTreeMap<BiDegree, u64> = BTreeMap::new();
        for (n, &c) in copies.iter().enumerate() {
            for (e, _) in d2_cell(c, trunc).unwrap().cells() {
                *m.entry(e).or_default() += 1;
            }
            for &c2 in &copies[n + 1..] {
                if (c + c2).p <= trunc {
                    *m.entry(c + c2).or_default() += 1;
                }
            }
        }
        m.into_iter().collect()
    }

    #[test]
    fn iterated_bound_examples() {
        let t1 = SylowTower { heights: vec![1] };
        assert_eq!(
            iterated_d2_bound(BiDegree::S1, &t1, 6).unwrap(),
            d2_cell(BiDegree::S1, 6).unwrap()
        );
        let t0 = SylowTower { heights: vec![0] };
        assert_eq!(
            iterated_d2_bound(BiDegree::S1, &t0, 6).unwrap(),
            TateSum::single(BiDegree::S1, 6)
        );
        let t2 = SylowTower { heights: vec![2] };
        let got: Vec<_> = iterated_d2_bound(BiDegree::S1, &t2, 8)
            .unwrap()
            .cells()
            .collect();
        let first: Vec<BiDegree> = d2_cell(BiDegree::S1, 8)
            .unwrap()
            .cells()
            .map(|(c, _)| c)
            .collect();
        assert_eq!(got, d2_copies(&first, 8));
        let expect: Vec<(BiDegree, u64)> = [
            ((4, 2), 1),
            ((5, 2), 1),
            ((5, 3), 1),
            ((6, 3), 3),
            ((7, 3), 3),
            ((7, 4), 1),
            ((8, 3), 1),
            ((8, 4), 4),
        ]
        .iter()
        .map(|&((p, w), m)| (BiDegree::new(p, w), m))
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn e2_e3_e4_examples() {
        let e2 = build_ei(2, q23(), 6).unwrap();
        let want: Vec<Product> = [(2, 1), (3, 1), (4, 2), (5, 2), (6, 3)]
            .iter()
            .map(|&c| prod(&[c]))
            .collect();
        assert_eq!(
            e2.products().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            want
        );

        let e3 = build_ei(3, q23(), 6).unwrap();
        let want: Vec<Product> = [(2, 1), (3, 1), (4, 2), (5, 2)]
            .iter()
            .map(|&c| prod(&[(1, 0), c]))
            .collect();
        assert_eq!(
            e3.products().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            want
        );

        let e4 = build_ei(4, q23(), 7).unwrap();
        let mut want = BTreeMap::new();
        for c in [(4, 2), (5, 3), (6, 3), (7, 4), (6, 3), (7, 3)] {
            *want.entry(prod(&[c])).or_insert(0u64) += 1;
        }
        for pair in [
            [(2, 1), (3, 1)],
            [(2, 1), (4, 2)],
            [(2, 1), (5, 2)],
            [(3, 1), (4, 2)],
        ] {
            want.insert(prod(&pair), 1);
        }
        let got: BTreeMap<Product, u64> = e4.products().map(|(p, m)| (p.clone(), m)).collect();
        assert_eq!(got, want);
        assert_eq!(e4.flatten().min_shift(), Some(4));
    }

    #[test]
    fn vanishing_examples() {
        let c = vanishing_certificate(&build_ei(2, q23(), 24).unwrap(), q23());
        assert!(c.ok);
        assert_eq!(c.min_slack, Some(1));
        assert_eq!(c.witness_total, Some(BiDegree::T));

        let c = vanishing_certificate(&build_ei(4, q23(), 24).unwrap(), q23());
        assert!(c.ok);
        assert_eq!(c.min_slack, Some(1));
        assert_eq!(c.witness, Some(vec![BiDegree::new(5, 3)]));

        let origin = ProductSum::from_products([(prod(&[(0, 0)]), 1)], 5);
        let c = vanishing_certificate(&origin, q23());
        assert!(!c.ok);
        assert_eq!(c.min_slack, Some(0));
    }

    #[test]
    fn all_factors_are_members_up_to_sixteen() {
        let mut b = EiBuilder::new(q23(), 24).unwrap();
        for i in 1..=16 {
            let e = b.get(i).unwrap().clone();
            for (p, _) in e.products() {
                for &f in p.factors() {
                    assert!(s_member(f, q23()).member, "E_{i}: {f}");
                }
                assert!(q23().star(p.total()) > 0);
            }
            if i <= 24 {
                assert_eq!(e.flatten().min_shift(), Some(i as i64), "E_{i}");
            }
        }
    }

    #[test]
    fn five_ninths_is_rejected() {
        let q = StarGrading::new(5, 9).unwrap();
        let err = build_ei(4, q, 24).unwrap_err();
        assert!(matches!(
            err,
            Error::SMembershipViolation {
                i: 4,
                condition: 3,
                ..
            }
        ));
    }

    #[test]
    fn flatten_commutes_with_tensor() {
        let mut b = EiBuilder::new(q23(), 24).unwrap();
        for i in 3..=12u64 {
            if i.is_power_of_two() {
                continue;
            }
            let s = binary_split(i).unwrap();
            let e1 = b.get(s.i1).unwrap().flatten();
            let e2 = b.get(s.i2).unwrap().flatten();
            let ei = b.get(i).unwrap().flatten();
            assert_eq!(ei, e1.tensor(&e2).unwrap(), "i = {i}");
        }
    }

    #[test]
    fn building_is_deterministic() {
        let a = build_ei(8, q23(), 24).unwrap().to_json().to_string();
        let b = build_ei(8, q23(), 24).unwrap().to_json().to_string();
        assert_eq!(a, b);
        let mut fresh = EiBuilder::new(q23(), 24).unwrap();
        fresh.get(6).unwrap();
        assert_eq!(fresh.get(8).unwrap().to_json().to_string(), a);
    }

    #[test]
    fn product_sum_json_round_trip() {
        let e = build_ei(3, q23(), 8).unwrap();
        let j = e.to_json();
        assert_eq!(ProductSum::from_json(&j).unwrap(), e);
        let text = build_ei(2, q23(), 3).unwrap().to_json().to_string();
        assert_eq!(
            text,
            r#"{"products":[{"factors":[{"p":2,"w":1}],"mult":1},{"factors":[{"p":3,"w":1}],"mult":1}],"trunc":3}"#
        );
    }

    #[test]
    fn nsym_examples() {
        let t = nsym_series(1, q23(), 6).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].cells, TateSum::single(BiDegree::ZERO, 6));
        assert_eq!(t.rows[1].cells, TateSum::single(BiDegree::S1, 6));

        let t = nsym_series(2, q23(), 6).unwrap();
        assert_eq!(t.rows[2].cells, build_ei(2, q23(), 6).unwrap().flatten());

        let t = nsym_series(4, q23(), 7).unwrap();
        for i in 3..=4 {
            assert_eq!(
                t.rows[i].cells,
                build_ei(i as u64, q23(), 7).unwrap().flatten()
            );
        }
        let total: u64 = t.rows.iter().map(|r| r.cells.rank()).sum();
        assert_eq!(t.combined.cells.rank(), total);
    }

    #[test]
    fn divide_examples() {
        let a = StarSeries::from_pairs([(0, 1), (1, 2), (3, 1)]);
        assert_eq!(cofree_divide(&a, &a, 10).unwrap(), StarSeries::one());
        let v = StarSeries::from_pairs([(0, 1), (5, 1)]);
        assert_eq!(cofree_divide(&multiply(&v, &a, 20), &a, 20).unwrap(), v);
        let m = StarSeries::from_pairs([(0, 1), (1, 1)]);
        let a = StarSeries::from_pairs([(0, 1), (1, 2)]);
        assert_eq!(
            cofree_divide(&m, &a, 5),
            Err(Error::NegativeCoefficient { degree: 1 })
        );
        assert!(cofree_divide(&m, &StarSeries::from_pairs([(0, 2)]), 5).is_err());
    }

    #[test]
    fn dual_steenrod_fixture() {
        let ds = DualSteenrod::builtin();
        assert!(ds.label.starts_with("external"));
        for g in &ds.generators {
            let (base, i) = g.name.split_once('_').unwrap();
            let i: u32 = i.parse().unwrap();
            let twoi = 1i64 << i;
            match base {
                "tau" => {
                    assert_eq!(g.kind, GeneratorKind::Exterior);
                    assert_eq!((g.p, g.w), (2 * twoi - 1, twoi - 1));
                }
                "xi" => {
                    assert_eq!(g.kind, GeneratorKind::Polynomial);
                    assert!(i >= 1);
                    assert_eq!((g.p, g.w), (2 * twoi - 2, twoi - 1));
                }
                other => panic!("unexpected generator {other}"),
            }
        }
        // At slope 2/3: tau_0 -> 2, xi_1 -> 1, tau_1 -> 3, xi_2 -> 3.
        let s = ds.reduced_series(q23(), 3).unwrap();
        // 1; xi1; xi1^2, tau0; xi1^3, xi1 tau0, tau1, xi2
        assert_eq!(s, StarSeries::from_pairs([(0, 1), (1, 1), (2, 2), (3, 4)]));
        assert!(DualSteenrod::parse("{").is_err());
    }

    proptest! {
        #[test]
        fn divide_round_trip(
            v in prop::collection::vec(0u64..5, 1..=21),
            a in prop::collection::vec(0u64..4, 0..=20),
        ) {
            let v = StarSeries::from_pairs(v.into_iter().enumerate().map(|(d, c)| (d as i64, c)));
            let a = StarSeries::from_pairs(
                std::iter::once((0, 1)).chain(a.into_iter().enumerate().map(|(d, c)| (d as i64 + 1, c))),
            );
            let m = multiply(&v, &a, 20);
            prop_assert_eq!(cofree_divide(&m, &a, 20).unwrap(), v.truncated(20));
        }
    }
}

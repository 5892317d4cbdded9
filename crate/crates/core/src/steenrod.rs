//! Moving coefficients past Steenrod squares by formal rewriting, and two
//! small cohomology fixtures.
//!
//! Coefficients are formal: `Sq^j(c)` is an opaque symbol, in `R_+`
//! exactly when `c` is. The rules are, over `F_2`,
//!
//! - `β c = c β + β(c)`,
//! - `Sq^{2n} c = Σ_{a+b=n} Sq^{2a}(c) Sq^{2b} + τ Σ_{a+b=n-1} Sq^{2a+1}(c) Sq^{2b+1}`,
//! - `Sq^{2n+1} = β Sq^{2n}`, `β β = 0`, `Sq^0 = 1`,
//!
//! and the same normalizations inside coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Rule applications allowed in one normalization.
pub const TERMINATION_BOUND: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    X,
    Tau,
    /// `Sq^j(c)`, with `j = 1` printed as `β`.
    Op(u32, Coeff),
}

impl Atom {
    pub fn in_ideal(&self) -> bool {
        match self {
            Atom::X | Atom::Tau => true,
            Atom::Op(_, c) => c.in_ideal(),
        }
    }
}

/// A commutative monomial in atoms. The empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff(Vec<Atom>);

impl Coeff {
    pub fn one() -> Self {
        Coeff(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Coeff(vec![a])
    }

    pub fn x() -> Self {
        Self::atom(Atom::X)
    }

    pub fn tau() -> Self {
        Self::atom(Atom::Tau)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort();
        Coeff(v)
    }

    /// A product is in `R_+` iff some factor is.
    pub fn in_ideal(&self) -> bool {
        self.0.iter().any(Atom::in_ideal)
    }

    /// `Sq^j(self)`, or `None` for zero.
    pub fn op(&self, j: u32) -> Option<Coeff> {
        if j == 0 {
            return Some(self.clone());
        }
        if self.is_one() {
            return None;
        }
        if j == 1 {
            if let [Atom::Op(k, inner)] = self.0.as_slice() {
                return if k % 2 == 1 {
                    None
                } else {
                    Some(Coeff::atom(Atom::Op(k + 1, inner.clone())))
                };
            }
        }
        Some(Coeff::atom(Atom::Op(j, self.clone())))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::X => write!(f, "x"),
            Atom::Tau => write!(f, "τ"),
            Atom::Op(1, c) => write!(f, "β({c})"),
            Atom::Op(j, c) => write!(f, "Sq^{{{j}}}({c})"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// `β` or an even square `Sq^{2n}` (stored as `2n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Beta,
    Sq(u32),
}

impl Letter {
    pub fn degree(self) -> u32 {
        match self {
            Letter::Beta => 1,
            Letter::Sq(i) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Beta => write!(f, "β"),
            Letter::Sq(i) => write!(f, "Sq^{{{i}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    C(Coeff),
    L(Letter),
}

/// Tokens for `Sq^i`, using `Sq^{2n+1} = β Sq^{2n}`.
pub fn square(i: u32) -> Vec<Token> {
    match i {
        0 => Vec::new(),
        1 => vec![Token::L(Letter::Beta)],
        i if i % 2 == 1 => vec![Token::L(Letter::Beta), Token::L(Letter::Sq(i - 1))],
        i => vec![Token::L(Letter::Sq(i))],
    }
}

/// Merges adjacent coefficients, drops `1` and `Sq^0`. `None` if the word
/// contains `ββ`.
fn normalize(tokens: Vec<Token>) -> Option<Vec<Token>> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    for t in tokens {
        match t {
            Token::C(c) if c.is_one() => {}
            Token::L(Letter::Sq(0)) => {}
            Token::C(c) => {
                if let Some(Token::C(prev)) = out.last_mut() {
                    *prev = prev.mul(&c);
                } else {
                    out.push(Token::C(c));
                }
            }
            Token::L(Letter::Beta) => {
                if out.last() == Some(&Token::L(Letter::Beta)) {
                    return None;
                }
                out.push(t);
            }
            Token::L(_) => out.push(t),
        }
    }
    Some(out)
}

/// A sum of words over `F_2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SteenrodExpr(BTreeSet<Vec<Token>>);

impl SteenrodExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(tokens: Vec<Token>) -> Self {
        let mut e = Self::zero();
        e.toggle(tokens);
        e
    }

    pub fn toggle(&mut self, tokens: Vec<Token>) {
        if let Some(w) = normalize(tokens) {
            if !self.0.remove(&w) {
                self.0.insert(w);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<Token>> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|w| render_word(w))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|w| {
                w.iter()
                    .map(|t| match t {
                        Token::C(c) => serde_json::json!({
                            "coeff": c.to_string(),
                            "in_ideal": c.in_ideal(),
                        }),
                        Token::L(l) => serde_json::json!({ "op": l.to_string() }),
                    })
                    .collect()
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

pub fn render_word(w: &[Token]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|t| match t {
            Token::C(c) => c.to_string(),
            Token::L(l) => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::InvalidInput(format!(
                "side must be left or right, got {s:?}"
            ))),
        }
    }
}

/// `L · c` rewritten with `c` on the left.
fn pass_left(l: Letter, c: &Coeff) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    match l {
        Letter::Beta => {
            out.push(vec![Token::C(c.clone()), Token::L(Letter::Beta)]);
            if let Some(b) = c.op(1) {
                out.push(vec![Token::C(b)]);
            }
        }
        Letter::Sq(i) => {
            let n = i / 2;
            for a in 0..=n {
                if let Some(s) = c.op(2 * a) {
                    let mut w = vec![Token::C(s)];
                    w.extend(square(2 * (n - a)));
                    out.push(w);
                }
            }
            for a in 0..n {
                if let Some(s) = c.op(2 * a + 1) {
                    let mut w = vec![Token::C(Coeff::tau().mul(&s))];
                    w.extend(square(2 * (n - 1 - a) + 1));
                    out.push(w);
                }
            }
        }
    }
    out
}

/// `c · L` rewritten so that `c` moves right past `L`.
fn pass_right(c: &Coeff, l: Letter) -> Vec<Vec<Token>> {
    let mut out = vec![vec![Token::L(l), Token::C(c.clone())]];
    for w in pass_left(l, c) {
        // Drop the term `c L` itself.
        if w == vec![Token::C(c.clone()), Token::L(l)] {
            continue;
        }
        out.push(w);
    }
    out
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub expr: SteenrodExpr,
    pub side: Side,
    pub applications: usize,
}

fn redex(w: &[Token], side: Side) -> Option<usize> {
    match side {
        // Rightmost coefficient that still has a letter after it.
        Side::Right => (0..w.len().saturating_sub(1))
            .rev()
            .find(|&i| matches!((&w[i], &w[i + 1]), (Token::C(_), Token::L(_)))),
        // Leftmost letter followed by a coefficient.
        Side::Left => (0..w.len().saturating_sub(1))
            .find(|&i| matches!((&w[i], &w[i + 1]), (Token::L(_), Token::C(_)))),
    }
}

/// Rewrites until every coefficient sits on `side`.
pub fn normalize_to(e: &SteenrodExpr, side: Side) -> Result<Normalized> {
    let mut cur = e.clone();
    let mut applications = 0usize;
    loop {
        let mut next = SteenrodExpr::zero();
        let mut changed = false;
        for w in cur.terms() {
            let Some(i) = redex(w, side) else {
                next.toggle(w.clone());
                continue;
            };
            changed = true;
            applications += 1;
            if applications > TERMINATION_BOUND {
                return Err(Error::TerminationBound(TERMINATION_BOUND));
            }
            let repl = match (&w[i], &w[i + 1]) {
                (Token::C(c), Token::L(l)) => pass_right(c, *l),
                (Token::L(l), Token::C(c)) => pass_left(*l, c),
                _ => unreachable!("redex shape"),
            };
            for r in repl {
                let mut t = w[..i].to_vec();
                t.extend(r);
                t.extend_from_slice(&w[i + 2..]);
                next.toggle(t);
            }
        }
        cur = next;
        if !changed {
            return Ok(Normalized {
                expr: cur,
                side,
                applications,
            });
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `x · Sq^{2n}` with every coefficient moved to the right.
pub fn commute_right(n: u32) -> Result<Normalized> {
    check_n(n)?;
    let mut w = vec![Token::C(Coeff::x())];
    w.extend(square(2 * n));
    normalize_to(&SteenrodExpr::word(w), Side::Right)
}

/// `Sq^{2n} · x` with every coefficient moved to the left.
pub fn commute_left(n: u32) -> Result<Normalized> {
    check_n(n)?;
    let mut w = square(2 * n);
    w.push(Token::C(Coeff::x()));
    normalize_to(&SteenrodExpr::word(w), Side::Left)
}

/// `x · β` or `β · x` moved to `side`.
pub fn commute_beta(side: Side) -> Result<Normalized> {
    let (x, b) = (Token::C(Coeff::x()), Token::L(Letter::Beta));
    let w = match side {
        Side::Right => vec![x, b],
        Side::Left => vec![b, x],
    };
    normalize_to(&SteenrodExpr::word(w), side)
}

/// True when every term carries a coefficient in `R_+` on `side`.
pub fn ideal_sound(e: &SteenrodExpr, side: Side) -> bool {
    e.terms().all(|w| {
        let end = match side {
            Side::Left => w.first(),
            Side::Right => w.last(),
        };
        let coeffs = w.iter().filter(|t| matches!(t, Token::C(_))).count();
        coeffs == 1 && matches!(end, Some(Token::C(c)) if c.in_ideal())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub n: u32,
    pub ok: bool,
    pub right_terms: usize,
    pub applications: usize,
    pub assumption: &'static str,
}

pub const IDEAL_ASSUMPTION: &str = "Sq^j(c) is taken to lie in R_+ whenever c does";

/// Moves the right normal form of `x Sq^{2n}` back to the left and
/// compares with `x Sq^{2n}` itself.
pub fn roundtrip_check(n: u32) -> Result<RoundTrip> {
    let right = commute_right(n)?;
    let back = normalize_to(&right.expr, Side::Left)?;
    let mut direct = vec![Token::C(Coeff::x())];
    direct.extend(square(2 * n));
    let direct = normalize_to(&SteenrodExpr::word(direct), Side::Left)?;
    Ok(RoundTrip {
        n,
        ok: back.expr == direct.expr,
        right_terms: right.expr.len(),
        applications: right.applications + back.applications,
        assumption: IDEAL_ASSUMPTION,
    })
}

/// Exponents of `u, v, τ, ρ`.
pub type Mono = [u32; 4];

const NAMES: [&str; 4] = ["u", "v", "τ", "ρ"];
const BIDEG: [(i64, i64); 4] = [(1, 1), (2, 1), (0, 1), (1, 1)];

pub fn mono_bidegree(m: &Mono) -> (i64, i64) {
    m.iter().zip(BIDEG).fold((0, 0), |(p, w), (&e, (dp, dw))| {
        (p + dp * e as i64, w + dw * e as i64)
    })
}

pub fn mono_label(m: &Mono) -> String {
    let s: String = m
        .iter()
        .zip(NAMES)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| {
            if e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `F_2[u, v, τ, ρ]/(u^2 + τv + ρu)` with `Sq^1 u = v`, `Sq^1 τ = ρ`; the
/// closed variant sets `ρ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RpRing {
    pub closed: bool,
}

pub type Poly = BTreeSet<Mono>;

fn toggle(p: &mut Poly, m: Mono) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

impl RpRing {
    /// Rewrites `u^2 -> τv + ρu` until no monomial has `u^2`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        let mut work: Vec<Mono> = p.iter().copied().collect();
        while let Some(m) = work.pop() {
            if self.closed && m[3] > 0 {
                continue;
            }
            if m[0] < 2 {
                toggle(&mut out, m);
                continue;
            }
            let mut a = m;
            a[0] -= 2;
            a[1] += 1;
            a[2] += 1;
            work.push(a);
            let mut b = m;
            b[0] -= 1;
            b[3] += 1;
            work.push(b);
        }
        out
    }

    /// `Sq^1` as a derivation on a monomial of the free ring.
    pub fn sq1_free(&self, m: &Mono) -> Poly {
        let mut out = Poly::new();
        if m[0] % 2 == 1 {
            let mut t = *m;
            t[0] -= 1;
            t[1] += 1;
            toggle(&mut out, t);
        }
        if !self.closed && m[2] % 2 == 1 {
            let mut t = *m;
            t[2] -= 1;
            t[3] += 1;
            toggle(&mut out, t);
        }
        out
    }

    pub fn sq1(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for m in p {
            for t in self.sq1_free(m) {
                toggle(&mut out, t);
            }
        }
        self.reduce(&out)
    }

    pub fn relation(&self) -> Poly {
        let mut p = Poly::new();
        toggle(&mut p, [2, 0, 0, 0]);
        toggle(&mut p, [0, 1, 1, 0]);
        if !self.closed {
            toggle(&mut p, [1, 0, 0, 1]);
        }
        p
    }

    /// All monomials of the free ring with `p + w <= maxdeg`.
    pub fn free_monomials(&self, maxdeg: i64) -> Vec<Mono> {
        let mut out = Vec::new();
        let total = |m: &Mono| {
            let (p, w) = mono_bidegree(m);
            p + w
        };
        let cap = maxdeg.max(0) as u32;
        for a in 0..=cap {
            for b in 0..=cap {
                for c in 0..=cap {
                    for d in 0..=if self.closed { 0 } else { cap } {
                        let m = [a, b, c, d];
                        if total(&m) <= maxdeg {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal-form basis `u^ε v^j τ^a ρ^b`.
    pub fn basis(&self, maxdeg: i64) -> Vec<Mono> {
        let mut b: Vec<Mono> = self
            .free_monomials(maxdeg)
            .into_iter()
            .filter(|m| m[0] < 2)
            .collect();
        b.sort_by_key(|m| (mono_bidegree(m), *m));
        b
    }

    pub fn dims(&self, maxdeg: i64) -> BTreeMap<(i64, i64), usize> {
        let mut d = BTreeMap::new();
        for m in self.basis(maxdeg) {
            *d.entry(mono_bidegree(&m)).or_insert(0) += 1;
        }
        d
    }

    pub fn render_poly(p: &Poly) -> String {
        if p.is_empty() {
            return "0".into();
        }
        let mut ms: Vec<&Mono> = p.iter().collect();
        ms.sort_by_key(|m| (mono_bidegree(m), std::cmp::Reverse(**m)));
        ms.iter()
            .map(|m| mono_label(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sq1Entry {
    pub source: String,
    pub bidegree: (i64, i64),
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RpReport {
    pub closed: bool,
    pub maxdeg: i64,
    pub dims: Vec<((i64, i64), usize)>,
    pub sq1: Vec<Sq1Entry>,
    /// `Sq^1` of the relation, reduced.
    pub relation_image: String,
    pub well_defined: bool,
    pub sq1_squared_zero: bool,
}

pub fn rp_ring(maxdeg: i64, closed: bool) -> RpReport {
    let ring = RpRing { closed };
    let basis = ring.basis(maxdeg);
    let mut sq1 = Vec::new();
    let mut squared_zero = true;
    for m in &basis {
        let p: Poly = [*m].into_iter().collect();
        let img = ring.sq1(&p);
        if !ring.sq1(&img).is_empty() {
            squared_zero = false;
        }
        sq1.push(Sq1Entry {
            source: mono_label(m),
            bidegree: mono_bidegree(m),
            image: RpRing::render_poly(&img),
        });
    }
    let rel = ring.sq1(&ring.relation());
    RpReport {
        closed,
        maxdeg,
        dims: ring.dims(maxdeg).into_iter().collect(),
        sq1,
        relation_image: RpRing::render_poly(&rel),
        well_defined: rel.is_empty(),
        sq1_squared_zero: squared_zero,
    }
}

impl RpReport {
    pub fn render_table(&self) -> String {
        let mut s = format!(
            "{} ring, p + w <= {}\n(p,w)\tdim\n",
            if self.closed { "closed" } else { "real" },
            self.maxdeg
        );
        for ((p, w), d) in &self.dims {
            s += &format!("({p},{w})\t{d}\n");
        }
        s += "Sq^1:\n";
        for e in &self.sq1 {
            if e.image != "0" {
                s += &format!("  {} -> {}\n", e.source, e.image);
            }
        }
        s += &format!(
            "Sq^1(relation) = {}\nwell defined: {}\nSq^1 Sq^1 = 0: {}\n",
            self.relation_image, self.well_defined, self.sq1_squared_zero
        );
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MooreFixture {
    pub model: String,
    /// `(label, (p, w))`.
    pub basis: Vec<(String, (i64, i64))>,
    /// Images of the basis in dual Steenrod classes.
    pub alpha: Vec<(String, String)>,
    /// `(operation, source, target)`; all other operations vanish.
    pub dual_action: Vec<(String, String, String)>,
}

pub fn moore_homology(model: &str) -> Result<MooreFixture> {
    let x_image = match model {
        "standard" => "τ_0",
        "xu" => "τ_0 + ρξ_1",
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok(MooreFixture {
        model: model.to_string(),
        basis: vec![("1".into(), (0, 0)), ("x".into(), (1, 0))],
        alpha: vec![("1".into(), "1".into()), ("x".into(), x_image.into())],
        dual_action: vec![("Sq^1".into(), "1".into(), "x".into())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ts: Vec<Token>) -> String {
        render_word(&normalize(ts).unwrap())
    }

    #[test]
    fn beta_rule() {
        let r = commute_beta(Side::Right).unwrap();
        assert_eq!(r.expr.render(), "β(x) + β x");
        assert!(ideal_sound(&r.expr, Side::Right));
        let l = commute_beta(Side::Left).unwrap();
        assert_eq!(l.expr.render(), "x β + β(x)");
    }

    #[test]
    fn left_forms() {
        let l1 = commute_left(1).unwrap();
        assert_eq!(l1.expr.len(), 3);
        let terms: BTreeSet<String> = l1.expr.terms().map(|w| render_word(w)).collect();
        assert!(terms.contains("x Sq^{2}"));
        assert!(terms.contains("Sq^{2}(x)"));
        assert!(terms.contains("τ·β(x) β"));
        assert!(ideal_sound(&l1.expr, Side::Left));
        let l2 = commute_left(2).unwrap();
        assert_eq!(l2.expr.len(), 5);
        assert!(ideal_sound(&l2.expr, Side::Left));
    }

    #[test]
    fn right_form_n1() {
        let r = commute_right(1).unwrap();
        let terms: BTreeSet<String> = r.expr.terms().map(|w| render_word(w)).collect();
        let want: BTreeSet<String> = ["Sq^{2}(x)", "Sq^{2} x", "β τ·β(x)", "β(τ·β(x))"]
            .map(String::from)
            .into();
        assert_eq!(terms, want);
        assert!(ideal_sound(&r.expr, Side::Right));
    }

    #[test]
    fn right_forms_are_sound_and_round_trip() {
        for n in 1..=8 {
            let r = commute_right(n).unwrap();
            assert!(ideal_sound(&r.expr, Side::Right), "n = {n}");
            let rt = roundtrip_check(n).unwrap();
            assert!(rt.ok, "n = {n}");
        }
    }

    #[test]
    fn n2_words() {
        let r = commute_right(2).unwrap();
        let letters: BTreeSet<String> = r
            .expr
            .terms()
            .map(|w| {
                render_word(
                    &w.iter()
                        .filter(|t| matches!(t, Token::L(_)))
                        .cloned()
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let allowed = ["Sq^{4}", "Sq^{2}", "β Sq^{2}", "β", "1"];
        assert!(
            letters.iter().all(|l| allowed.contains(&l.as_str())),
            "{letters:?}"
        );
    }

    #[test]
    fn coefficient_normalization() {
        let bx = Coeff::x().op(1).unwrap();
        assert!(bx.op(1).is_none());
        let s2 = Coeff::x().op(2).unwrap();
        assert_eq!(s2.op(1).unwrap().to_string(), "Sq^{3}(x)");
        assert!(Coeff::one().op(2).is_none());
        assert!(!Coeff::one().in_ideal());
        assert!(Coeff::tau().mul(&Coeff::one()).in_ideal());
        let w = vec![
            Token::L(Letter::Sq(0)),
            Token::C(Coeff::one()),
            Token::L(Letter::Beta),
            Token::C(Coeff::x()),
        ];
        assert_eq!(word(w), "β x");
        assert!(normalize(vec![Token::L(Letter::Beta), Token::L(Letter::Beta)]).is_none());
        assert_eq!(
            square(5),
            vec![Token::L(Letter::Beta), Token::L(Letter::Sq(4))]
        );
    }

    #[test]
    fn zero_n_rejected() {
        assert!(commute_right(0).is_err());
    }

    #[test]
    fn rp_dims() {
        let d = RpRing { closed: false }.dims(10);
        assert_eq!(d[&(1, 1)], 2);
        assert_eq!(d[&(2, 2)], 3);
    }

    fn free_count(closed: bool, p: i64, w: i64) -> usize {
        // u, v, τ, ρ exponents with the given bidegree.
        let mut n = 0;
        for a in 0..=20i64 {
            for b in 0..=20i64 {
                for d in 0..=if closed { 0 } else { 20i64 } {
                    let pp = a + 2 * b + d;
                    let c = w - a - b - d;
                    if pp == p && c >= 0 {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn rp_dims_match_hilbert_series() {
        for closed in [false, true] {
            let dims = RpRing { closed }.dims(10);
            for p in 0..=10 {
                for w in 0..=10 - p {
                    let want = free_count(closed, p, w) - free_count(closed, p - 2, w - 2);
                    assert_eq!(
                        dims.get(&(p, w)).copied().unwrap_or(0),
                        want,
                        "({p},{w}) closed={closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn rp_sq1() {
        let ring = RpRing { closed: false };
        let u: Poly = [[1, 0, 0, 0]].into();
        assert_eq!(RpRing::render_poly(&ring.sq1(&u)), "v");
        let ut: Poly = [[1, 0, 1, 0]].into();
        let img = ring.sq1(&ut);
        let want: Poly = [[0, 1, 1, 0], [1, 0, 0, 1]].into();
        assert_eq!(img, want);
        for closed in [false, true] {
            let rep = rp_ring(10, closed);
            assert!(rep.well_defined && rep.sq1_squared_zero);
        }
        let closed = RpRing { closed: true };
        assert!(closed.sq1(&[[0, 0, 1, 0]].into()).is_empty());
    }

    #[test]
    fn moore() {
        let s = moore_homology("standard").unwrap();
        assert_eq!(s.alpha[1].1, "τ_0");
        assert_eq!(moore_homology("xu").unwrap().alpha[1].1, "τ_0 + ρξ_1");
        assert_eq!(s.dual_action, vec![("Sq^1".into(), "1".into(), "x".into())]);
        assert!(matches!(
            moore_homology("other"),
            Err(Error::UnknownModel(_))
        ));
    }
}

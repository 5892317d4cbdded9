//! Graded vector spaces over `F_2`, sparse tensors of basis elements, and
//! structure maps stored as tables of images.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::f2::{BitMatrix, BitVec};

/// A basis element: `(degree, index within degree)`.
pub type Basis = (i64, usize);

/// A pure tensor of basis elements. The empty tuple is the unit of the
/// ground field.
pub type Tuple = Vec<Basis>;

pub fn tuple_degree(t: &[Basis]) -> i64 {
    t.iter().map(|b| b.0).sum()
}

/// A sum of pure tensors with `F_2` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(BTreeSet<Tuple>);

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: Tuple) -> Self {
        let mut c = Self::zero();
        c.toggle(t);
        c
    }

    /// The unit of the ground field.
    pub fn ground() -> Self {
        Self::term(Vec::new())
    }

    pub fn toggle(&mut self, t: Tuple) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add(&mut self, other: &Chain) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add(other);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Tuple> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &[Basis]) -> bool {
        self.0.contains(t)
    }

    /// Applies `f` to slots `at..at + f.src_arity` of every term.
    pub fn apply_at(&self, f: &StructureMap, at: usize) -> Chain {
        let mut out = Chain::zero();
        for t in &self.0 {
            let img = f.image(&t[at..at + f.src_arity]);
            for u in img.terms() {
                let mut s = Vec::with_capacity(t.len() - f.src_arity + u.len());
                s.extend_from_slice(&t[..at]);
                s.extend_from_slice(u);
                s.extend_from_slice(&t[at + f.src_arity..]);
                out.toggle(s);
            }
        }
        out
    }

    /// Termwise concatenation (tensor product of chains).
    pub fn tensor(&self, other: &Chain) -> Chain {
        let mut out = Chain::zero();
        for a in &self.0 {
            for b in &other.0 {
                let mut t = a.clone();
                t.extend_from_slice(b);
                out.toggle(t);
            }
        }
        out
    }

    /// Reorders the slots of every term: slot `i` of the result is slot
    /// `perm[i]` of the input.
    pub fn permute(&self, perm: &[usize]) -> Chain {
        let mut out = Chain::zero();
        for t in &self.0 {
            out.toggle(perm.iter().map(|&i| t[i]).collect());
        }
        out
    }

    /// Keeps the terms whose total degree is at most `n`.
    pub fn truncate(&self, n: i64) -> Chain {
        Chain(
            self.0
                .iter()
                .filter(|t| tuple_degree(t) <= n)
                .cloned()
                .collect(),
        )
    }
}

impl FromIterator<Tuple> for Chain {
    fn from_iter<I: IntoIterator<Item = Tuple>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for t in iter {
            c.toggle(t);
        }
        c
    }
}

/// Labels of a basis, per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    degrees: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// The ground field in degree 0.
    pub fn ground() -> Self {
        let mut s = Self::new();
        s.push(0, "1");
        s
    }

    pub fn from_degrees<I, S>(degrees: I) -> Self
    where
        I: IntoIterator<Item = (i64, Vec<S>)>,
        S: Into<String>,
    {
        let mut s = Self::new();
        for (d, labels) in degrees {
            for l in labels {
                s.push(d, l);
            }
        }
        s
    }

    pub fn push(&mut self, degree: i64, label: impl Into<String>) -> Basis {
        let v = self.degrees.entry(degree).or_default();
        v.push(label.into());
        (degree, v.len() - 1)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, |v| v.len())
    }

    pub fn label(&self, b: Basis) -> &str {
        &self.degrees[&b.0][b.1]
    }

    pub fn contains(&self, b: Basis) -> bool {
        b.1 < self.dim(b.0)
    }

    pub fn find(&self, label: &str) -> Option<Basis> {
        self.degrees
            .iter()
            .find_map(|(&d, ls)| ls.iter().position(|l| l == label).map(|i| (d, i)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, &[String])> + '_ {
        self.degrees
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, v)| (d, v.as_slice()))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees().map(|(d, _)| d).next()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees().map(|(d, _)| d).last()
    }

    pub fn basis_in(&self, degree: i64) -> impl Iterator<Item = Basis> {
        (0..self.dim(degree)).map(move |i| (degree, i))
    }

    /// All basis elements of degree `<= n`, in order.
    pub fn basis_upto(&self, n: i64) -> Vec<Basis> {
        self.degrees()
            .filter(|&(d, _)| d <= n)
            .flat_map(|(d, ls)| (0..ls.len()).map(move |i| (d, i)))
            .collect()
    }

    /// `dim` as a series up to `n`.
    pub fn series(&self, n: i64) -> BTreeMap<i64, usize> {
        self.degrees()
            .filter(|&(d, _)| d <= n)
            .map(|(d, ls)| (d, ls.len()))
            .collect()
    }

    /// `A_0` is one-dimensional and nothing lives in negative degrees.
    pub fn is_connected(&self) -> bool {
        self.dim(0) == 1 && self.min_degree() == Some(0)
    }
}

/// Renders a pure tensor over the listed factor spaces.
pub fn render_tuple(t: &[Basis], spaces: &[&GradedSpace]) -> String {
    if t.is_empty() {
        return "1".into();
    }
    t.iter()
        .zip(spaces)
        .map(|(&b, s)| s.label(b).to_string())
        .collect::<Vec<_>>()
        .join("⊗")
}

pub fn render_chain(c: &Chain, spaces: &[&GradedSpace]) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.terms()
        .map(|t| render_tuple(t, spaces))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The pure tensors of total degree `d` over a list of factor spaces, with
/// positions. The empty list of factors is the ground field.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    tuples: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
}

impl TensorBasis {
    pub fn new(spaces: &[&GradedSpace], d: i64) -> Self {
        let mut tuples = Vec::new();
        fn walk(spaces: &[&GradedSpace], rest: i64, prefix: &mut Tuple, out: &mut Vec<Tuple>) {
            let Some((head, tail)) = spaces.split_first() else {
                if rest == 0 {
                    out.push(prefix.clone());
                }
                return;
            };
            let tail_min: i64 = tail.iter().map(|s| s.min_degree().unwrap_or(0)).sum();
            let tail_max: Option<i64> = tail
                .iter()
                .map(|s| s.max_degree())
                .try_fold(0i64, |acc, m| m.map(|m| acc + m));
            for (deg, ls) in head.degrees() {
                if deg + tail_min > rest {
                    break;
                }
                if let Some(tm) = tail_max {
                    if deg + tm < rest {
                        continue;
                    }
                }
                for i in 0..ls.len() {
                    prefix.push((deg, i));
                    walk(tail, rest - deg, prefix, out);
                    prefix.pop();
                }
            }
        }
        if spaces.iter().all(|s| s.min_degree().is_some()) || spaces.is_empty() {
            walk(spaces, d, &mut Vec::new(), &mut tuples);
        }
        let index = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        TensorBasis { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn position(&self, t: &[Basis]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinate vector of a chain all of whose terms lie in this basis.
    pub fn vector(&self, c: &Chain) -> BitVec {
        let mut v = BitVec::zeros(self.len());
        for t in c.terms() {
            let i = self
                .position(t)
                .unwrap_or_else(|| panic!("tuple {t:?} is not in the tensor basis"));
            v.flip(i);
        }
        v
    }

    /// Like [`TensorBasis::vector`] but reports foreign terms.
    pub fn try_vector(&self, c: &Chain) -> Option<BitVec> {
        let mut v = BitVec::zeros(self.len());
        for t in c.terms() {
            v.flip(self.position(t)?);
        }
        Some(v)
    }

    pub fn chain(&self, v: &BitVec) -> Chain {
        v.ones().map(|i| self.tuples[i].clone()).collect()
    }
}

/// A degree-preserving linear map from an `src_arity`-fold tensor product
/// to a `tgt_arity`-fold one, given by the images of pure tensors. Missing
/// entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub src_arity: usize,
    pub tgt_arity: usize,
    table: BTreeMap<Tuple, Chain>,
}

impl StructureMap {
    pub fn new(src_arity: usize, tgt_arity: usize) -> Self {
        StructureMap {
            src_arity,
            tgt_arity,
            table: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, src: Tuple, img: Chain) {
        assert_eq!(src.len(), self.src_arity, "source arity");
        assert!(
            img.terms().all(|t| t.len() == self.tgt_arity),
            "target arity"
        );
        if img.is_zero() {
            self.table.remove(&src);
        } else {
            self.table.insert(src, img);
        }
    }

    /// Adds `img` to the image of `src`.
    pub fn add(&mut self, src: Tuple, img: &Chain) {
        let mut cur = self.image(&src);
        cur.add(img);
        self.set(src, cur);
    }

    /// Flips one structure constant.
    pub fn flip(&mut self, src: Tuple, tgt: Tuple) {
        self.add(src, &Chain::term(tgt));
    }

    pub fn image(&self, src: &[Basis]) -> Chain {
        self.table.get(src).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Tuple, &Chain)> {
        self.table.iter()
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        c.apply_at(self, 0)
    }

    /// The identity on one factor, restricted to a space up to `n`.
    pub fn identity(space: &GradedSpace, n: i64) -> Self {
        let mut m = StructureMap::new(1, 1);
        for b in space.basis_upto(n) {
            m.set(vec![b], Chain::term(vec![b]));
        }
        m
    }

    /// Matrix in degree `d` between tensor bases (rows are source tuples).
    pub fn matrix(&self, src: &TensorBasis, tgt: &TensorBasis) -> BitMatrix {
        let rows = src
            .tuples()
            .iter()
            .map(|t| tgt.vector(&self.image(t)))
            .collect();
        BitMatrix::from_rows(tgt.len(), rows)
    }

    /// Composite `g ∘ self` on single-slot maps (arity `1 -> k -> m`).
    pub fn then(&self, g: &StructureMap) -> StructureMap {
        assert_eq!(self.tgt_arity, g.src_arity);
        let mut out = StructureMap::new(self.src_arity, g.tgt_arity);
        for (s, img) in &self.table {
            out.set(s.clone(), g.apply(img));
        }
        out
    }

    /// Drops the entries whose source has degree above `n`.
    pub fn truncate(&self, n: i64) -> StructureMap {
        StructureMap {
            src_arity: self.src_arity,
            tgt_arity: self.tgt_arity,
            table: self
                .table
                .iter()
                .filter(|(s, _)| tuple_degree(s) <= n)
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }
}

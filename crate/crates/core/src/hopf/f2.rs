//! Dense linear algebra over `F_2` on packed `u64` words.
//!
//! A matrix of a linear map stores one row per source basis vector: the row
//! is the image. Composition `g ∘ f` is therefore the product `F · G`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0` and `1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        for (n, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(n * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        let c: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        c % 2 == 1
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row echelon form together with the pivot column of each
/// nonzero row and the row operations that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
    /// `transform · original = reduced`.
    pub transform: BitMatrix,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BitMatrix { cols, rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// `v · M`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows.len());
        let mut out = BitVec::zeros(self.cols);
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    /// `self · other`, i.e. first `self` then `other` on row vectors.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix {
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut transform: Vec<BitVec> = (0..rows.len())
            .map(|i| BitVec::unit(rows.len(), i))
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            transform.swap(next, found);
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    let (pr, pt) = (rows[next].clone(), transform[next].clone());
                    rows[r].xor_assign(&pr);
                    transform[r].xor_assign(&pt);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon {
            reduced: BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
            transform: BitMatrix {
                cols: self.rows.len(),
                rows: transform,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows.len() == self.cols && self.rank() == self.cols
    }

    /// A basis, in reduced echelon form, of `{x : x · M = 0}`.
    pub fn left_kernel(&self) -> Vec<BitVec> {
        let e = self.echelon();
        let r = e.pivots.len();
        let k: Vec<BitVec> = e.transform.rows[r..].to_vec();
        row_reduce(k)
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_invertible() {
            return None;
        }
        let e = self.echelon();
        Some(e.transform)
    }
}

/// Reduced echelon basis of the span of `vs`; zero vectors are dropped.
pub fn row_reduce(vs: Vec<BitVec>) -> Vec<BitVec> {
    let Some(len) = vs.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let e = BitMatrix::from_rows(len, vs).echelon();
    let r = e.pivots.len();
    e.reduced.rows[..r].to_vec()
}

/// A subspace of `F_2^n` kept in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim_ambient: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(dim_ambient: usize, vs: Vec<BitVec>) -> Self {
        let basis = if vs.is_empty() {
            Vec::new()
        } else {
            row_reduce(vs)
        };
        let pivots = basis
            .iter()
            .map(|v| v.leading().expect("nonzero"))
            .collect();
        Subspace {
            dim_ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(dim_ambient: usize) -> Self {
        Self::span(dim_ambient, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears pivot coordinates of `v`; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// The non-pivot coordinates, in order: they index a basis of the
    /// quotient by this subspace.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.dim_ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Coordinates of `v + subspace` in the quotient basis given by
    /// [`Subspace::complement_coords`].
    pub fn quotient_coords(&self, v: &BitVec) -> BitVec {
        let r = self.reduce(v);
        let comp = self.complement_coords();
        let mut out = BitVec::zeros(comp.len());
        for (n, &c) in comp.iter().enumerate() {
            out.set(n, r.get(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&str]) -> BitMatrix {
        let rs: Vec<BitVec> = rows.iter().map(|r| BitVec::parse(r).unwrap()).collect();
        BitMatrix::from_rows(rs[0].len(), rs)
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&["110", "011", "101"]);
        assert_eq!(m.rank(), 2);
        let k = m.left_kernel();
        assert_eq!(k, vec![BitVec::parse("111").unwrap()]);
        assert!(m.apply(&k[0]).is_zero());
        assert!(!m.is_invertible());
        let id = BitMatrix::identity(3);
        assert_eq!(id.inverse(), Some(id.clone()));
    }

    #[test]
    fn wide_vectors() {
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        v.set(64, true);
        assert_eq!(v.leading(), Some(64));
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.to_string().len(), 130);
    }

    #[test]
    fn quotient_coordinates() {
        let s = Subspace::span(3, vec![BitVec::parse("110").unwrap()]);
        assert_eq!(s.complement_coords(), vec![1, 2]);
        assert_eq!(
            s.quotient_coords(&BitVec::parse("100").unwrap())
                .to_string(),
            "10"
        );
        assert!(s.contains(&BitVec::parse("110").unwrap()));
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVec::from_bits(b)).collect())
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.left_kernel();
            prop_assert_eq!(m.rank() + k.len(), m.n_rows());
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn transform_reproduces_echelon(m in arb_matrix()) {
            let e = m.echelon();
            prop_assert_eq!(e.transform.mul(&m), e.reduced);
        }
    }
}

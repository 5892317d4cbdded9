//! Hopf algebras and comodule algebras by structure constants, with axiom
//! checking up to a truncation degree.

use serde::Serialize;

use super::graded::{tuple_degree, Basis, Chain, GradedSpace, StructureMap};

/// An algebra: multiplication `X ⊗ X -> X` and unit `k -> X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub space: GradedSpace,
    pub mult: StructureMap,
    pub unit: StructureMap,
}

impl Algebra {
    pub fn one(&self) -> Chain {
        self.unit.image(&[])
    }

    pub fn mul(&self, x: &Chain, y: &Chain) -> Chain {
        self.mult.apply(&x.tensor(y))
    }

    pub fn mul_basis(&self, a: Basis, b: Basis) -> Chain {
        self.mult.image(&[a, b])
    }
}

/// A connected Hopf algebra over `F_2`, truncated at degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub n: i64,
    pub alg: Algebra,
    pub comult: StructureMap,
    pub counit: StructureMap,
}

impl HopfData {
    pub fn space(&self) -> &GradedSpace {
        &self.alg.space
    }

    pub fn one(&self) -> Chain {
        self.alg.one()
    }

    /// `ε(x)` as an element of `F_2`.
    pub fn counit_of(&self, b: Basis) -> bool {
        !self.counit.image(&[b]).is_zero()
    }
}

/// A comodule algebra `M` over a Hopf algebra, with coaction
/// `M -> M ⊗ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleData {
    pub n: i64,
    pub alg: Algebra,
    pub coaction: StructureMap,
}

impl ComoduleData {
    pub fn space(&self) -> &GradedSpace {
        &self.alg.space
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub degree: i64,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: i64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: &str, degree: i64, elements: Vec<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            degree,
            elements,
        });
    }

    pub fn first_degree(&self, axiom: &str) -> Option<i64> {
        self.violations
            .iter()
            .filter(|v| v.axiom == axiom)
            .map(|v| v.degree)
            .min()
    }
}

/// Checks that every image term has the source degree and lies in the
/// declared factor spaces.
fn check_shape(
    rep: &mut Report,
    name: &str,
    f: &StructureMap,
    src: &[&GradedSpace],
    tgt: &[&GradedSpace],
) {
    for (s, img) in f.entries() {
        let d = tuple_degree(s);
        let bad_src = s.len() != src.len() || s.iter().zip(src).any(|(&b, sp)| !sp.contains(b));
        let bad_img = img.terms().any(|t| {
            t.len() != tgt.len()
                || tuple_degree(t) != d
                || t.iter().zip(tgt).any(|(&b, sp)| !sp.contains(b))
        });
        if bad_src || bad_img {
            rep.push(
                &format!("{name}: malformed entry"),
                d,
                vec![format!("{s:?}")],
            );
        }
    }
}

fn pairs_upto(space: &GradedSpace, n: i64) -> Vec<(Basis, Basis)> {
    let b = space.basis_upto(n);
    let mut out = Vec::new();
    for &x in &b {
        for &y in &b {
            if x.0 + y.0 <= n {
                out.push((x, y));
            }
        }
    }
    out
}

fn label(space: &GradedSpace, b: Basis) -> String {
    space.label(b).to_string()
}

/// Product on `X ⊗ Y`: `(x ⊗ y)(x' ⊗ y') = xx' ⊗ yy'`.
pub fn tensor_mul(x: &Algebra, y: &Algebra, u: &Chain, v: &Chain) -> Chain {
    let mut out = Chain::zero();
    for s in u.terms() {
        for t in v.terms() {
            let left = x.mul_basis(s[0], t[0]);
            let right = y.mul_basis(s[1], t[1]);
            out.add(&left.tensor(&right));
        }
    }
    out
}

fn validate_algebra(rep: &mut Report, name: &str, a: &Algebra, n: i64) {
    let s = &a.space;
    check_shape(rep, &format!("{name}.mult"), &a.mult, &[s, s], &[s]);
    check_shape(rep, &format!("{name}.unit"), &a.unit, &[], &[s]);
    let one = a.one();
    if one.terms().any(|t| t.len() != 1 || t[0].0 != 0) || one.is_zero() {
        rep.push(
            &format!("{name}: unit is not a degree 0 element"),
            0,
            vec![],
        );
        return;
    }
    for b in s.basis_upto(n) {
        let x = Chain::term(vec![b]);
        if a.mul(&one, &x) != x || a.mul(&x, &one) != x {
            rep.push(&format!("{name}: unit law"), b.0, vec![label(s, b)]);
        }
    }
    let basis = s.basis_upto(n);
    for (x, y) in pairs_upto(s, n) {
        let xy = a.mul_basis(x, y);
        for &z in &basis {
            if x.0 + y.0 + z.0 > n {
                continue;
            }
            let lhs = a.mult.apply(&xy.tensor(&Chain::term(vec![z])));
            let rhs = a
                .mult
                .apply(&Chain::term(vec![x]).tensor(&a.mul_basis(y, z)));
            if lhs != rhs {
                rep.push(
                    &format!("{name}: associativity"),
                    x.0 + y.0 + z.0,
                    vec![label(s, x), label(s, y), label(s, z)],
                );
            }
        }
    }
}

pub fn validate_hopf(h: &HopfData) -> Report {
    let n = h.n;
    let mut rep = Report {
        n,
        ..Report::default()
    };
    let s = h.space();
    if !s.is_connected() {
        rep.push("connected", 0, vec![]);
        return rep;
    }
    validate_algebra(&mut rep, "A", &h.alg, n);
    check_shape(&mut rep, "A.comult", &h.comult, &[s], &[s, s]);
    check_shape(&mut rep, "A.counit", &h.counit, &[s], &[]);
    if !rep.ok() {
        return rep;
    }
    let one = h.one();
    if h.counit.apply(&one) != Chain::ground() {
        rep.push("counit splits unit", 0, vec![]);
    }
    if h.comult.apply(&one) != one.tensor(&one) {
        rep.push("comultiplication preserves unit", 0, vec![]);
    }
    for b in s.basis_upto(n) {
        let x = Chain::term(vec![b]);
        let d = h.comult.apply(&x);
        if d.apply_at(&h.counit, 0) != x || d.apply_at(&h.counit, 1) != x {
            rep.push("counit law", b.0, vec![label(s, b)]);
        }
        if d.apply_at(&h.comult, 0) != d.apply_at(&h.comult, 1) {
            rep.push("coassociativity", b.0, vec![label(s, b)]);
        }
    }
    for (x, y) in pairs_upto(s, n) {
        let xy = h.alg.mul_basis(x, y);
        let lhs = h.comult.apply(&xy);
        let rhs = tensor_mul(&h.alg, &h.alg, &h.comult.image(&[x]), &h.comult.image(&[y]));
        if lhs != rhs {
            rep.push(
                "bialgebra compatibility",
                x.0 + y.0,
                vec![label(s, x), label(s, y)],
            );
        }
        let ex = h.counit_of(x) && h.counit_of(y);
        if h.counit.apply(&xy).is_zero() == ex {
            rep.push(
                "counit multiplicative",
                x.0 + y.0,
                vec![label(s, x), label(s, y)],
            );
        }
    }
    rep
}

pub fn validate_comodule(m: &ComoduleData, a: &HopfData) -> Report {
    let n = m.n.min(a.n);
    let mut rep = Report {
        n,
        ..Report::default()
    };
    let s = m.space();
    validate_algebra(&mut rep, "M", &m.alg, n);
    check_shape(&mut rep, "M.coaction", &m.coaction, &[s], &[s, a.space()]);
    if !rep.ok() {
        return rep;
    }
    let one = m.alg.one();
    if m.coaction.apply(&one) != one.tensor(&a.one()) {
        rep.push("coaction preserves unit", 0, vec![]);
    }
    for b in s.basis_upto(n) {
        let x = Chain::term(vec![b]);
        let psi = m.coaction.apply(&x);
        if psi.apply_at(&a.counit, 1) != x {
            rep.push("coaction counital", b.0, vec![label(s, b)]);
        }
        if psi.apply_at(&m.coaction, 0) != psi.apply_at(&a.comult, 1) {
            rep.push("coaction coassociative", b.0, vec![label(s, b)]);
        }
    }
    for (x, y) in pairs_upto(s, n) {
        let lhs = m.coaction.apply(&m.alg.mul_basis(x, y));
        let rhs = tensor_mul(
            &m.alg,
            &a.alg,
            &m.coaction.image(&[x]),
            &m.coaction.image(&[y]),
        );
        if lhs != rhs {
            rep.push(
                "coaction is an algebra map",
                x.0 + y.0,
                vec![label(s, x), label(s, y)],
            );
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn exterior_is_valid() {
        let a = fixtures::exterior(&[1], 4);
        assert!(validate_hopf(&a).ok(), "{:?}", validate_hopf(&a));
        assert!(validate_hopf(&fixtures::trivial(6)).ok());
        let b = fixtures::exterior(&[1, 2, 5], 12);
        assert!(validate_hopf(&b).ok());
    }

    #[test]
    fn broken_coproduct_fails_counit_at_degree_one() {
        let mut a = fixtures::exterior(&[1], 4);
        let t = a.space().find("t1").unwrap();
        let one = (0, 0);
        a.comult.set(vec![t], Chain::term(vec![t, one]));
        let rep = validate_hopf(&a);
        assert!(!rep.ok());
        assert_eq!(rep.first_degree("counit law"), Some(1));
    }

    #[test]
    fn self_comodule_is_valid() {
        let a = fixtures::exterior(&[1, 3], 8);
        let m = fixtures::regular_comodule(&a);
        assert!(validate_comodule(&m, &a).ok());
    }
}

//! Small structures by construction: monomial algebras, exterior Hopf
//! algebras, planted cofree comodules and the algebroid examples.

use std::collections::BTreeMap;

use rand::Rng;

use super::algebroid::{AlgebroidData, Cor22Input, RingComodule};
use super::graded::{Basis, Chain, GradedSpace, StructureMap, TensorBasis, Tuple};
use super::structures::{tensor_mul, Algebra, ComoduleData, HopfData};

/// A commutative monomial algebra on generators `(name, degree, height)`,
/// where `height = None` means polynomial and `Some(h)` means `x^h = 0`.
#[derive(Clone, Debug)]
pub struct Monomials {
    pub alg: Algebra,
    pub index: BTreeMap<Vec<u32>, Basis>,
    pub exps: BTreeMap<Basis, Vec<u32>>,
}

impl Monomials {
    pub fn get(&self, e: &[u32]) -> Option<Basis> {
        self.index.get(e).copied()
    }

    /// The basis element of a single generator.
    pub fn gen(&self, i: usize) -> Basis {
        let mut e = vec![0; self.exps[&(0, 0)].len()];
        e[i] = 1;
        self.index[&e]
    }
}

pub fn monomial_algebra(gens: &[(&str, i64, Option<u32>)], n: i64) -> Monomials {
    assert!(
        gens.iter().all(|g| g.1 > 0),
        "generators need positive degree"
    );
    let mut all: Vec<(i64, Vec<u32>)> = Vec::new();
    fn walk(
        gens: &[(&str, i64, Option<u32>)],
        i: usize,
        deg: i64,
        n: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<(i64, Vec<u32>)>,
    ) {
        if i == gens.len() {
            out.push((deg, cur.clone()));
            return;
        }
        let (_, d, h) = gens[i];
        let mut e = 0u32;
        while deg + d * e as i64 <= n && h.is_none_or(|h| e < h) {
            cur.push(e);
            walk(gens, i + 1, deg + d * e as i64, n, cur, out);
            cur.pop();
            e += 1;
        }
    }
    walk(gens, 0, 0, n, &mut Vec::new(), &mut all);
    all.sort();
    let mut space = GradedSpace::new();
    let mut index = BTreeMap::new();
    let mut exps = BTreeMap::new();
    for (d, e) in all {
        let label: String = gens
            .iter()
            .zip(&e)
            .filter(|(_, &k)| k > 0)
            .map(|(g, &k)| {
                if k == 1 {
                    g.0.to_string()
                } else {
                    format!("{}^{k}", g.0)
                }
            })
            .collect();
        let label = if label.is_empty() {
            "1".to_string()
        } else {
            label
        };
        let b = space.push(d, label);
        index.insert(e.clone(), b);
        exps.insert(b, e);
    }
    let mut mult = StructureMap::new(2, 1);
    for (&x, ex) in &exps {
        for (&y, ey) in &exps {
            let e: Vec<u32> = ex.iter().zip(ey).map(|(a, b)| a + b).collect();
            if let Some(&z) = index.get(&e) {
                mult.set(vec![x, y], Chain::term(vec![z]));
            }
        }
    }
    let mut unit = StructureMap::new(0, 1);
    unit.set(vec![], Chain::term(vec![(0, 0)]));
    Monomials {
        alg: Algebra { space, mult, unit },
        index,
        exps,
    }
}

/// Extends coproducts of generators multiplicatively, with `ε` killing
/// positive degrees.
fn hopf_from_generators(mono: &Monomials, gen_coproducts: &[Chain], n: i64) -> HopfData {
    let alg = &mono.alg;
    let one = vec![(0, 0), (0, 0)];
    let mut comult = StructureMap::new(1, 2);
    let mut counit = StructureMap::new(1, 0);
    for (&b, e) in &mono.exps {
        let mut acc = Chain::term(one.clone());
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                acc = tensor_mul(alg, alg, &acc, &gen_coproducts[i]);
            }
        }
        comult.set(vec![b], acc);
    }
    counit.set(vec![(0, 0)], Chain::ground());
    HopfData {
        n,
        alg: alg.clone(),
        comult,
        counit,
    }
}

fn primitive(b: Basis) -> Chain {
    Chain::from_iter([vec![b, (0, 0)], vec![(0, 0), b]])
}

/// `Λ(t1, t2, ...)` with primitive generators of the given degrees.
pub fn exterior(degrees: &[i64], n: i64) -> HopfData {
    exterior_with(degrees, &[], n)
}

/// Exterior algebra where each `(j, i)` in `twists` adds `t_i ⊗ t_i` to
/// `Δ(t_j)`. Requires `|t_j| = 2|t_i|` and `t_i` primitive.
pub fn exterior_with(degrees: &[i64], twists: &[(usize, usize)], n: i64) -> HopfData {
    let names: Vec<String> = (1..=degrees.len()).map(|i| format!("t{i}")).collect();
    let gens: Vec<(&str, i64, Option<u32>)> = names
        .iter()
        .zip(degrees)
        .map(|(s, &d)| (s.as_str(), d, Some(2)))
        .collect();
    let mono = monomial_algebra(&gens, n);
    for &(j, i) in twists {
        assert_eq!(degrees[j], 2 * degrees[i], "twist degree");
        assert!(
            twists.iter().all(|t| t.0 != i),
            "twisted generator must be primitive"
        );
    }
    let gen = |i: usize| {
        let mut e = vec![0; degrees.len()];
        e[i] = 1;
        mono.get(&e)
    };
    let mut deltas = Vec::new();
    for j in 0..degrees.len() {
        let mut c = gen(j).map_or_else(Chain::zero, primitive);
        for &(_, i) in twists.iter().filter(|t| t.0 == j) {
            if let Some(b) = gen(i) {
                c.toggle(vec![b, b]);
            }
        }
        deltas.push(c);
    }
    hopf_from_generators(&mono, &deltas, n)
}

/// The ground field as a Hopf algebra.
pub fn trivial(n: i64) -> HopfData {
    let mono = monomial_algebra(&[], n);
    hopf_from_generators(&mono, &[], n)
}

/// `F_2[s]/(s^height)` with `|s| = degree`.
pub fn truncated_polynomial(degree: i64, height: u32, n: i64) -> Algebra {
    monomial_algebra(&[("s", degree, Some(height))], n).alg
}

/// `A` coacting on itself through `Δ`.
pub fn regular_comodule(a: &HopfData) -> ComoduleData {
    ComoduleData {
        n: a.n,
        alg: a.alg.clone(),
        coaction: a.comult.clone(),
    }
}

/// `c ↦ c ⊗ 1`.
pub fn trivial_coaction(c: &Algebra, a: &HopfData) -> ComoduleData {
    let mut coaction = StructureMap::new(1, 2);
    for b in c.space.basis_upto(a.n) {
        coaction.set(vec![b], Chain::term(vec![b, (0, 0)]));
    }
    ComoduleData {
        n: a.n,
        alg: c.clone(),
        coaction,
    }
}

/// The projection of a connected algebra onto its unit.
pub fn augmentation(_c: &Algebra, _a: &HopfData) -> StructureMap {
    let mut phi = StructureMap::new(1, 1);
    phi.set(vec![(0, 0)], Chain::term(vec![(0, 0)]));
    phi
}

/// `M = C ⊗ A` with coaction `id ⊗ Δ` and `φ = ε_C ⊗ id`. `C` must be
/// connected with its unit stored at `(0, 0)`.
pub fn planted(c: &Algebra, a: &HopfData) -> (ComoduleData, StructureMap) {
    let n = a.n;
    let spaces = [&c.space, a.space()];
    let mut space = GradedSpace::new();
    let mut pos: BTreeMap<Tuple, Basis> = BTreeMap::new();
    for d in 0..=n {
        for t in TensorBasis::new(&spaces, d).tuples() {
            let l = format!("{}⊗{}", c.space.label(t[0]), a.space().label(t[1]));
            pos.insert(t.clone(), space.push(d, l));
        }
    }
    let to_m = |ch: &Chain| -> Chain {
        ch.terms()
            .filter_map(|t| pos.get(t).map(|&b| vec![b]))
            .collect()
    };
    let mut mult = StructureMap::new(2, 1);
    let mut coaction = StructureMap::new(1, 2);
    let mut phi = StructureMap::new(1, 1);
    for (t, &x) in &pos {
        for (u, &y) in &pos {
            if x.0 + y.0 <= n {
                let p = tensor_mul(c, &a.alg, &Chain::term(t.clone()), &Chain::term(u.clone()));
                mult.set(vec![x, y], to_m(&p));
            }
        }
        let mut img = Chain::zero();
        for s in a.comult.image(&[t[1]]).terms() {
            if let Some(&m) = pos.get(&vec![t[0], s[0]]) {
                img.toggle(vec![m, s[1]]);
            }
        }
        coaction.set(vec![x], img);
        if t[0] == (0, 0) {
            phi.set(vec![x], Chain::term(vec![t[1]]));
        }
    }
    let mut unit = StructureMap::new(0, 1);
    unit.set(vec![], Chain::term(vec![pos[&vec![(0, 0), (0, 0)]]]));
    (
        ComoduleData {
            n,
            alg: Algebra { space, mult, unit },
            coaction,
        },
        phi,
    )
}

/// `Λ(t1) ⊂ Λ(t1, t2)` with `|t1| = 1`, `|t2| = 3`: not onto in degree 3.
pub fn non_surjective() -> (ComoduleData, HopfData, StructureMap) {
    let a = exterior(&[1, 3], 8);
    let sub = exterior(&[1], 8);
    let m = ComoduleData {
        n: 8,
        alg: sub.alg.clone(),
        coaction: sub.comult.clone(),
    };
    let mut phi = StructureMap::new(1, 1);
    for b in sub.space().basis_upto(8) {
        let l = sub.space().label(b);
        phi.set(vec![b], Chain::term(vec![a.space().find(l).unwrap()]));
    }
    (m, a, phi)
}

/// A connected square-zero algebra with at most `max_dim` basis elements
/// in each degree `1..=max_deg`.
pub fn random_square_zero<R: Rng>(rng: &mut R, max_dim: usize, max_deg: i64) -> Algebra {
    let mut space = GradedSpace::ground();
    for d in 1..=max_deg {
        for i in 0..rng.gen_range(0..=max_dim) {
            space.push(d, format!("c{d}_{i}"));
        }
    }
    let mut mult = StructureMap::new(2, 1);
    for b in space.basis_upto(max_deg) {
        mult.set(vec![(0, 0), b], Chain::term(vec![b]));
        mult.set(vec![b, (0, 0)], Chain::term(vec![b]));
    }
    let mut unit = StructureMap::new(0, 1);
    unit.set(vec![], Chain::term(vec![(0, 0)]));
    Algebra { space, mult, unit }
}

/// An exterior Hopf algebra on 1 to 3 generators of degrees in
/// `1..=max_deg`, sometimes with a twisted coproduct.
pub fn random_exterior<R: Rng>(rng: &mut R, max_deg: i64, n: i64) -> HopfData {
    let k = rng.gen_range(1..=3);
    let degrees: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=max_deg)).collect();
    let mut twists = Vec::new();
    for j in 0..k {
        for i in 0..k {
            if degrees[j] == 2 * degrees[i]
                && twists.iter().all(|&(a, b)| a != i && b != j && a != j)
                && rng.gen_bool(0.5)
            {
                twists.push((j, i));
            }
        }
    }
    exterior_with(&degrees, &twists, n)
}

/// `R = F_2[y]`, `Γ = R ⊕ R·γ` with `|γ| = 1`. The right action is
/// `(y^i γ) y^a = y^{i+a} γ`; the left action agrees when `commuting` and
/// otherwise kills `y^a · y^i γ` for `a >= 1`. Only the bimodule is
/// populated.
pub fn right_unit_example(commuting: bool, n: i64) -> (AlgebroidData, Vec<Basis>) {
    let r = monomial_algebra(&[("y", 1, None)], n);
    let mut space = GradedSpace::new();
    for i in 0..=n {
        space.push(i, if i == 0 { "1".into() } else { format!("y^{i}") });
        if i < n {
            space.push(
                i + 1,
                if i == 0 {
                    "γ".into()
                } else {
                    format!("y^{i}γ")
                },
            );
        }
    }
    let plain = |i: i64| space.find(&if i == 0 { "1".into() } else { format!("y^{i}") });
    let gam = |i: i64| {
        space.find(&if i == 0 {
            "γ".into()
        } else {
            format!("y^{i}γ")
        })
    };
    let mut left = StructureMap::new(2, 1);
    let mut right = StructureMap::new(2, 1);
    let mut eta = StructureMap::new(1, 1);
    for a in 0..=n {
        let ra = r.get(&[a as u32]).unwrap();
        eta.set(vec![ra], Chain::term(vec![plain(a).unwrap()]));
        for i in 0..=n - a {
            let x = plain(i).unwrap();
            let to = plain(i + a).unwrap();
            left.set(vec![ra, x], Chain::term(vec![to]));
            right.set(vec![x, ra], Chain::term(vec![to]));
            if let (Some(g), Some(to)) = (gam(i), gam(i + a)) {
                right.set(vec![g, ra], Chain::term(vec![to]));
                if commuting || a == 0 {
                    left.set(vec![ra, g], Chain::term(vec![to]));
                }
            }
        }
    }
    let mut unit = StructureMap::new(0, 1);
    unit.set(vec![], Chain::term(vec![(0, 0)]));
    let gamma = Algebra {
        space,
        mult: StructureMap::new(2, 1),
        unit,
    };
    let ideal = vec![r.gen(0)];
    (
        AlgebroidData {
            n,
            r: r.alg,
            gamma,
            left,
            right,
            eta_l: eta.clone(),
            eta_r: eta,
            comult: StructureMap::new(1, 2),
            counit: StructureMap::new(1, 1),
            antipode: StructureMap::new(1, 1),
        },
        ideal,
    )
}

fn base_ring(n: i64) -> Monomials {
    monomial_algebra(&[("τ", 1, None)], n)
}

/// An algebroid whose `Γ` is a monomial algebra containing `R` as the
/// first generator, with `η_l = η_r` the inclusion, antipode the identity
/// and the given generator coproducts.
fn split_algebroid(r: &Monomials, g: &Monomials, extra: &[Chain], n: i64) -> AlgebroidData {
    let incl = |rb: Basis| {
        let mut e = r.exps[&rb].clone();
        e.resize(g.exps[&(0, 0)].len(), 0);
        g.index[&e]
    };
    let mut eta = StructureMap::new(1, 1);
    let mut left = StructureMap::new(2, 1);
    let mut right = StructureMap::new(2, 1);
    for rb in r.alg.space.basis_upto(n) {
        let x = incl(rb);
        eta.set(vec![rb], Chain::term(vec![x]));
        for gb in g.alg.space.basis_upto(n - rb.0) {
            left.set(vec![rb, gb], g.alg.mul_basis(x, gb));
            right.set(vec![gb, rb], g.alg.mul_basis(gb, x));
        }
    }
    let tau = g.gen(0);
    let mut deltas = vec![Chain::term(vec![tau, (0, 0)])];
    deltas.extend_from_slice(extra);
    let h = hopf_from_generators(g, &deltas, n);
    let mut counit = StructureMap::new(1, 1);
    for (&b, e) in &g.exps {
        if e[1..].iter().all(|&k| k == 0) {
            counit.set(vec![b], Chain::term(vec![r.index[&e[..1].to_vec()]]));
        }
    }
    AlgebroidData {
        n,
        r: r.alg.clone(),
        gamma: g.alg.clone(),
        left,
        right,
        eta_l: eta.clone(),
        eta_r: eta,
        comult: h.comult,
        counit,
        antipode: StructureMap::identity(&g.alg.space, n),
    }
}

fn ring_comodule(g: &AlgebroidData, m: &Algebra, coaction: StructureMap, n: i64) -> RingComodule {
    RingComodule {
        n,
        alg: m.clone(),
        eta: g.eta_l.clone(),
        coaction,
    }
}

/// `Γ = R = F_2[τ]`, `M = R`, `φ = id`.
pub fn cor22_identity(n: i64) -> Cor22Input {
    let r = base_ring(n);
    let g = split_algebroid(&r, &r, &[], n);
    let m = ring_comodule(&g, &g.gamma, g.comult.clone(), n);
    Cor22Input {
        phi: StructureMap::identity(&g.gamma.space, n),
        ideal: vec![r.gen(0)],
        m,
        m_basis: vec![(0, 0)],
        gamma_basis: vec![(0, 0)],
        algebroid: g,
    }
}

/// `Γ = R[ξ]/(ξ^2)` with `|ξ| = 2` and `Δξ = ξ ⊗ 1 + 1 ⊗ ξ`; `M = Γ`.
pub fn cor22_exterior(n: i64) -> Cor22Input {
    let r = base_ring(n);
    let gm = monomial_algebra(&[("τ", 1, None), ("ξ", 2, Some(2))], n);
    let xi = gm.gen(1);
    let g = split_algebroid(&r, &gm, &[primitive(xi)], n);
    let m = ring_comodule(&g, &g.gamma, g.comult.clone(), n);
    Cor22Input {
        phi: StructureMap::identity(&g.gamma.space, n),
        ideal: vec![r.gen(0)],
        m,
        m_basis: vec![(0, 0), xi],
        gamma_basis: vec![(0, 0), xi],
        algebroid: g,
    }
}

/// `M = R ⊕ R·m` with `|m| = 2`, `m^2 = 0`, `ψ(m) = m ⊗ 1 + 1 ⊗ ξ` and
/// `φ(m) = ξ`, over the algebroid of [`cor22_exterior`].
pub fn cor22_module(n: i64) -> Cor22Input {
    let base = cor22_exterior(n);
    let g = base.algebroid;
    let mm = monomial_algebra(&[("τ", 1, None), ("m", 2, Some(2))], n);
    let gs = &g.gamma.space;
    let to_gamma = |b: Basis| gs.find(&mm.alg.space.label(b).replace('m', "ξ")).unwrap();
    let mut coaction = StructureMap::new(1, 2);
    let mut phi = StructureMap::new(1, 1);
    for (&b, e) in &mm.exps {
        let mut img = Chain::term(vec![b, (0, 0)]);
        if e[1] == 1 {
            let rpart = mm.index[&vec![e[0], 0]];
            img.toggle(vec![rpart, g.gamma.space.find("ξ").unwrap()]);
        }
        coaction.set(vec![b], img);
        phi.set(vec![b], Chain::term(vec![to_gamma(b)]));
    }
    let mut eta = StructureMap::new(1, 1);
    for rb in g.r.space.basis_upto(n) {
        eta.set(vec![rb], Chain::term(vec![mm.index[&vec![rb.0 as u32, 0]]]));
    }
    let m = RingComodule {
        n,
        alg: mm.alg.clone(),
        eta,
        coaction,
    };
    Cor22Input {
        phi,
        ideal: base.ideal,
        m,
        m_basis: vec![(0, 0), mm.gen(1)],
        gamma_basis: base.gamma_basis,
        algebroid: g,
    }
}

/// Every shipped Hopf algebra, by name.
pub fn shipped_hopf() -> Vec<(&'static str, HopfData)> {
    vec![
        ("exterior_t1", exterior(&[1], 4)),
        ("exterior_t1_t3", exterior(&[1, 3], 8)),
        ("exterior_twisted", exterior_with(&[1, 2], &[(1, 0)], 8)),
        ("trivial", trivial(6)),
    ]
}

/// Every shipped comodule algebra with its Hopf algebra and map to it.
pub fn shipped_comodules() -> Vec<(&'static str, ComoduleData, HopfData, StructureMap)> {
    let a = exterior(&[1], 4);
    let reg = regular_comodule(&a);
    let id = StructureMap::identity(a.space(), 4);
    let a6 = exterior(&[1], 6);
    let c = truncated_polynomial(3, 2, 6);
    let (pl, phi) = planted(&c, &a6);
    let k = trivial(6);
    let c2 = truncated_polynomial(2, 3, 6);
    vec![
        ("regular_exterior", reg, a, id),
        ("planted", pl, a6, phi),
        (
            "trivial_coaction",
            trivial_coaction(&c2, &k),
            k.clone(),
            augmentation(&c2, &k),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::super::structures::{validate_comodule, validate_hopf};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_labels_and_degrees() {
        let m = monomial_algebra(&[("τ", 1, None), ("ξ", 2, Some(2))], 4);
        assert_eq!(
            m.alg.space.series(4),
            BTreeMap::from([(0, 1), (1, 1), (2, 2), (3, 2), (4, 2)])
        );
        assert!(m.alg.space.find("τ^2ξ").is_some());
    }

    #[test]
    fn shipped_fixtures_validate() {
        for (name, h) in shipped_hopf() {
            assert!(validate_hopf(&h).ok(), "{name}: {:?}", validate_hopf(&h));
        }
        for (name, m, a, _) in shipped_comodules() {
            assert!(validate_comodule(&m, &a).ok(), "{name}");
        }
    }

    #[test]
    fn random_structures_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = random_exterior(&mut rng, 5, 8);
            assert!(validate_hopf(&a).ok());
            let c = random_square_zero(&mut rng, 2, 4);
            let (m, _) = planted(&c, &a);
            assert!(validate_comodule(&m, &a).ok());
        }
    }
}

//! Hopf algebroids `(R, Γ)` by structure constants, the test
//! `IΓ = ΓI`, and the splitting pipeline over a graded base ring.
//!
//! The pipeline reduces modulo the augmentation ideal `R_+`, splits the
//! reductions over the field, and lifts `V` along explicit `R`-bases to a
//! free module `W = R ⊗ V` with `M ≅ W ⊗_R Γ`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::f2::{BitMatrix, BitVec, Subspace};
use super::graded::{tuple_degree, Basis, Chain, GradedSpace, StructureMap, TensorBasis, Tuple};
use super::milnor_moore::{mm_split, DegreeCertificate, MmSplit};
use super::structures::{Algebra, ComoduleData, HopfData};
use crate::error::{Error, Result};

/// A Hopf algebroid with its bimodule structure stored explicitly:
/// `left: R ⊗ Γ -> Γ` and `right: Γ ⊗ R -> Γ`. The comultiplication is a
/// lift `Γ -> Γ ⊗ Γ` of the map into `Γ ⊗_R Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidData {
    pub n: i64,
    pub r: Algebra,
    pub gamma: Algebra,
    pub left: StructureMap,
    pub right: StructureMap,
    pub eta_l: StructureMap,
    pub eta_r: StructureMap,
    pub comult: StructureMap,
    pub counit: StructureMap,
    pub antipode: StructureMap,
}

/// A comodule algebra over `(R, Γ)`: an `R`-algebra through `eta` with a
/// lifted coaction `M -> M ⊗ Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingComodule {
    pub n: i64,
    pub alg: Algebra,
    pub eta: StructureMap,
    pub coaction: StructureMap,
}

/// The span of `r · g` over generators `g` and all `r`, per degree.
pub fn ideal_span(r: &Algebra, gens: &[Basis], d: i64) -> Subspace {
    let dim = r.space.dim(d);
    let mut vs = Vec::new();
    let tb = TensorBasis::new(&[&r.space], d);
    for &g in gens {
        for x in r.space.basis_in(d - g.0) {
            vs.push(tb.vector(&r.mul_basis(x, g)));
        }
    }
    Subspace::span(dim, vs)
}

/// `I·X` inside `X_d` for a left action `R ⊗ X -> X`.
fn left_ideal_times(
    r: &Algebra,
    ideal: &[Basis],
    x: &GradedSpace,
    act: &StructureMap,
    d: i64,
) -> Subspace {
    span_products(r, ideal, x, d, |i, g| act.apply(&i.tensor(g)))
}

fn right_ideal_times(
    r: &Algebra,
    ideal: &[Basis],
    x: &GradedSpace,
    act: &StructureMap,
    d: i64,
) -> Subspace {
    span_products(r, ideal, x, d, |i, g| act.apply(&g.tensor(i)))
}

fn span_products(
    r: &Algebra,
    ideal: &[Basis],
    x: &GradedSpace,
    d: i64,
    f: impl Fn(&Chain, &Chain) -> Chain,
) -> Subspace {
    let tb = TensorBasis::new(&[x], d);
    let mut vs = Vec::new();
    for (e, _) in r.space.degrees() {
        if e > d {
            break;
        }
        let rtb = TensorBasis::new(&[&r.space], e);
        let ie = ideal_span(r, ideal, e);
        for iv in ie.basis() {
            let ic = rtb.chain(iv);
            for g in x.basis_in(d - e) {
                vs.push(tb.vector(&f(&ic, &Chain::term(vec![g]))));
            }
        }
    }
    Subspace::span(tb.len(), vs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentDegree {
    pub degree: i64,
    pub dim_left: usize,
    pub dim_right: usize,
    pub dim_sum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub holds: bool,
    pub first_failure: Option<i64>,
    pub degrees: Vec<DescentDegree>,
}

/// Compares `IΓ` and `ΓI` degree by degree up to `n`.
pub fn right_unit_descends(g: &AlgebroidData, ideal: &[Basis], n: i64) -> DescentReport {
    let mut degrees = Vec::new();
    let mut first_failure = None;
    for (d, _) in g.gamma.space.degrees() {
        if d > n {
            break;
        }
        let l = left_ideal_times(&g.r, ideal, &g.gamma.space, &g.left, d);
        let r = right_ideal_times(&g.r, ideal, &g.gamma.space, &g.right, d);
        let mut both = l.basis().to_vec();
        both.extend_from_slice(r.basis());
        let sum = Subspace::span(l.ambient(), both);
        if (sum.dim() != l.dim() || sum.dim() != r.dim()) && first_failure.is_none() {
            first_failure = Some(d);
        }
        degrees.push(DescentDegree {
            degree: d,
            dim_left: l.dim(),
            dim_right: r.dim(),
            dim_sum: sum.dim(),
        });
    }
    DescentReport {
        holds: first_failure.is_none(),
        first_failure,
        degrees,
    }
}

/// `X / S` for a graded subspace `S`, with the quotient basis given by the
/// non-pivot coordinates of `S` in stored order.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: GradedSpace,
    sub: BTreeMap<i64, Subspace>,
    coords: BTreeMap<i64, Vec<usize>>,
}

impl Quotient {
    pub fn new(ambient: &GradedSpace, sub: BTreeMap<i64, Subspace>, n: i64) -> Self {
        let mut space = GradedSpace::new();
        let mut coords = BTreeMap::new();
        let mut subs = BTreeMap::new();
        for (d, labels) in ambient.degrees() {
            if d > n {
                break;
            }
            let s = sub
                .get(&d)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(labels.len()));
            let c = s.complement_coords();
            for &i in &c {
                space.push(d, labels[i].clone());
            }
            coords.insert(d, c);
            subs.insert(d, s);
        }
        Quotient {
            space,
            sub: subs,
            coords,
        }
    }

    /// The ambient basis element representing a quotient basis element.
    pub fn lift(&self, b: Basis) -> Basis {
        (b.0, self.coords[&b.0][b.1])
    }

    fn project_basis(&self, b: Basis) -> Chain {
        let Some(s) = self.sub.get(&b.0) else {
            return Chain::zero();
        };
        let q = s.quotient_coords(&BitVec::unit(s.ambient(), b.1));
        q.ones().map(|i| vec![(b.0, i)]).collect()
    }

    pub fn sub(&self, d: i64) -> Option<&Subspace> {
        self.sub.get(&d)
    }
}

/// Projects every slot of every term.
fn project(c: &Chain, qs: &[&Quotient]) -> Chain {
    let mut out = Chain::zero();
    for t in c.terms() {
        let mut acc = Chain::ground();
        for (&b, q) in t.iter().zip(qs) {
            acc = acc.tensor(&q.project_basis(b));
            if acc.is_zero() {
                break;
            }
        }
        out.add(&acc);
    }
    out
}

fn tuples_upto(spaces: &[&GradedSpace], n: i64) -> Vec<Tuple> {
    let lo: i64 = spaces.iter().map(|s| s.min_degree().unwrap_or(0)).sum();
    let mut out = Vec::new();
    for d in lo..=n {
        out.extend_from_slice(TensorBasis::new(spaces, d).tuples());
    }
    out
}

/// The map induced on quotients, or the first degree where a vector of a
/// source subspace does not map into the target subspace.
fn induce(
    f: &StructureMap,
    src: &[&Quotient],
    src_ambient: &[&GradedSpace],
    tgt: &[&Quotient],
    n: i64,
) -> std::result::Result<StructureMap, i64> {
    // Well-definedness: S in any slot, basis elsewhere.
    for slot in 0..src.len() {
        for t in tuples_upto(src_ambient, n) {
            let d = t[slot].0;
            let Some(s) = src[slot].sub(d) else { continue };
            if t[slot].1 != 0 {
                continue;
            }
            for v in s.basis() {
                let mut c = Chain::zero();
                for i in v.ones() {
                    let mut u = t.clone();
                    u[slot] = (d, i);
                    c.toggle(u);
                }
                if !project(&f.apply(&c), tgt).is_zero() {
                    return Err(tuple_degree(&t));
                }
            }
        }
    }
    let spaces: Vec<&GradedSpace> = src.iter().map(|q| &q.space).collect();
    let mut out = StructureMap::new(f.src_arity, f.tgt_arity);
    for t in tuples_upto(&spaces, n) {
        let lifted: Tuple = t.iter().zip(src).map(|(&b, q)| q.lift(b)).collect();
        out.set(t, project(&f.image(&lifted), tgt));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Reductions {
    pub gamma: HopfData,
    pub m: ComoduleData,
    pub phi: StructureMap,
    pub gamma_q: Quotient,
    pub m_q: Quotient,
}

#[derive(Clone, Debug)]
pub struct Cor22Input {
    pub algebroid: AlgebroidData,
    pub ideal: Vec<Basis>,
    pub m: RingComodule,
    pub phi: StructureMap,
    /// Explicit `R`-bases of `M` and `Γ`.
    pub m_basis: Vec<Basis>,
    pub gamma_basis: Vec<Basis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor22Degree {
    pub degree: i64,
    pub dim_m: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub reduced_rank: usize,
}

#[derive(Clone, Debug)]
pub struct Cor22Result {
    pub n: i64,
    pub split: MmSplit,
    /// Generators of the free module `W = R ⊗ V`.
    pub w_series: BTreeMap<i64, usize>,
    /// `M -> V ⊗ Γ ≅ W ⊗_R Γ`.
    pub map: StructureMap,
    pub certificate: Vec<Cor22Degree>,
}

fn hyp(which: u8, detail: impl Into<String>) -> Error {
    Error::HypothesisFailed {
        which,
        detail: detail.into(),
    }
}

/// The `R`-linear map `R ⊗ span(basis) -> X`, `r ⊗ b ↦ act(r, b)`, in
/// degree `d`, as a matrix from pairs `(r, b)` to `X_d`.
fn freeness_matrix(
    r: &GradedSpace,
    basis: &[Basis],
    x: &GradedSpace,
    act: impl Fn(Basis, Basis) -> Chain,
    d: i64,
) -> (Vec<(Basis, Basis)>, BitMatrix) {
    let tb = TensorBasis::new(&[x], d);
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    for &b in basis {
        for rb in r.basis_in(d - b.0) {
            pairs.push((rb, b));
            rows.push(tb.vector(&act(rb, b)));
        }
    }
    (pairs, BitMatrix::from_rows(tb.len(), rows))
}

fn check_free(
    name: &str,
    r: &GradedSpace,
    basis: &[Basis],
    x: &GradedSpace,
    act: &dyn Fn(Basis, Basis) -> Chain,
    n: i64,
) -> Result<()> {
    for (d, _) in x.degrees() {
        if d > n {
            break;
        }
        let (_, m) = freeness_matrix(r, basis, x, act, d);
        if !m.is_invertible() {
            return Err(hyp(
                3,
                format!("the supplied basis of {name} is not an R-basis in degree {d}"),
            ));
        }
    }
    Ok(())
}

/// Reduces `Γ`, `M` and `φ` modulo `R_+`.
pub fn reduce(input: &Cor22Input, n: i64) -> Result<Reductions> {
    let g = &input.algebroid;
    let ideal = &input.ideal;
    let m = &input.m;
    let gs = &g.gamma.space;
    let ms = &m.alg.space;

    let r_q = Quotient::new(
        &g.r.space,
        g.r.space
            .degrees()
            .map(|(d, _)| (d, ideal_span(&g.r, ideal, d)))
            .collect(),
        n,
    );
    if r_q.space.series(n) != BTreeMap::from([(0, 1)]) {
        return Err(Error::InvalidInput(
            "the ideal must have R / R_+ one-dimensional in degree 0".into(),
        ));
    }
    let gamma_sub = gs
        .degrees()
        .map(|(d, _)| (d, left_ideal_times(&g.r, ideal, gs, &g.left, d)))
        .collect();
    let gamma_q = Quotient::new(gs, gamma_sub, n);
    let m_act = |i: &Chain, x: &Chain| m.alg.mul(&m.eta.apply(i), x);
    let m_sub = ms
        .degrees()
        .map(|(d, _)| (d, span_products(&g.r, ideal, ms, d, m_act)))
        .collect();
    let m_q = Quotient::new(ms, m_sub, n);
    if !gamma_q.space.is_connected() {
        return Err(hyp(4, "Γ / R_+Γ is not connected"));
    }
    if !m_q.space.is_connected() {
        return Err(hyp(4, "M / R_+M is not connected"));
    }

    let descend = |what: &str, r: std::result::Result<StructureMap, i64>| {
        r.map_err(|d| {
            hyp(
                1,
                format!("{what} does not descend modulo R_+ (degree {d})"),
            )
        })
    };
    let gq = &gamma_q;
    let mq = &m_q;
    let g_mult = descend(
        "Γ.mult",
        induce(&g.gamma.mult, &[gq, gq], &[gs, gs], &[gq], n),
    )?;
    let g_unit = descend("Γ.unit", induce(&g.gamma.unit, &[], &[], &[gq], n))?;
    let g_comult = descend("Γ.comult", induce(&g.comult, &[gq], &[gs], &[gq, gq], n))?;
    let g_counit_r = descend("Γ.counit", induce(&g.counit, &[gq], &[gs], &[&r_q], n))?;
    let mut g_counit = StructureMap::new(1, 0);
    for (s, img) in g_counit_r.entries() {
        let c: Chain = img.terms().map(|_| Vec::new()).collect();
        g_counit.set(s.clone(), c);
    }
    let m_mult = descend(
        "M.mult",
        induce(&m.alg.mult, &[mq, mq], &[ms, ms], &[mq], n),
    )?;
    let m_unit = descend("M.unit", induce(&m.alg.unit, &[], &[], &[mq], n))?;
    let m_coact = descend(
        "M.coaction",
        induce(&m.coaction, &[mq], &[ms], &[mq, gq], n),
    )?;
    let phi = descend("phi", induce(&input.phi, &[mq], &[ms], &[gq], n))?;

    Ok(Reductions {
        gamma: HopfData {
            n,
            alg: Algebra {
                space: gamma_q.space.clone(),
                mult: g_mult,
                unit: g_unit,
            },
            comult: g_comult,
            counit: g_counit,
        },
        m: ComoduleData {
            n,
            alg: Algebra {
                space: m_q.space.clone(),
                mult: m_mult,
                unit: m_unit,
            },
            coaction: m_coact,
        },
        phi,
        gamma_q,
        m_q,
    })
}

pub fn cor22_pipeline(input: &Cor22Input, n: i64) -> Result<Cor22Result> {
    let g = &input.algebroid;
    let m = &input.m;
    let gs = &g.gamma.space;
    let ms = &m.alg.space;

    let descent = right_unit_descends(g, &input.ideal, n);
    if let Some(d) = descent.first_failure {
        return Err(hyp(1, format!("R_+Γ != ΓR_+ in degree {d}")));
    }
    for (d, _) in gs.degrees() {
        if d > n {
            break;
        }
        let rank = input
            .phi
            .matrix(&TensorBasis::new(&[ms], d), &TensorBasis::new(&[gs], d))
            .rank();
        if rank < gs.dim(d) {
            return Err(hyp(2, format!("phi is not surjective in degree {d}")));
        }
    }
    let act_m = |r: Basis, b: Basis| m.alg.mul(&m.eta.image(&[r]), &Chain::term(vec![b]));
    let act_g = |r: Basis, b: Basis| g.left.image(&[r, b]);
    check_free("M", &g.r.space, &input.m_basis, ms, &act_m, n)?;
    check_free("Γ", &g.r.space, &input.gamma_basis, gs, &act_g, n)?;

    let red = reduce(input, n)?;
    let split = mm_split(&red.m, &red.gamma, &red.phi, n)?;
    let v = split.v().clone();

    // Coordinates of M in the R-basis: m = Σ η(r) b.
    let mut coords: BTreeMap<Basis, Vec<(Basis, Basis)>> = BTreeMap::new();
    for (d, labels) in ms.degrees() {
        if d > n {
            break;
        }
        let (pairs, mat) = freeness_matrix(&g.r.space, &input.m_basis, ms, act_m, d);
        let inv = mat.inverse().expect("checked free");
        for i in 0..labels.len() {
            let row = inv.row(i);
            coords.insert((d, i), row.ones().map(|k| pairs[k]).collect());
        }
    }
    // α on the chosen basis of M: b ↦ ᾱ(b̄).
    let alpha_of = |b: Basis| -> Chain {
        let bar = project(&Chain::term(vec![b]), &[&red.m_q]);
        split.alpha.apply(&bar)
    };

    let mut map = StructureMap::new(1, 2);
    let mut certificate = Vec::new();
    let reduced: BTreeMap<i64, DegreeCertificate> = split
        .certificate
        .iter()
        .map(|c| (c.degree, c.clone()))
        .collect();
    let top = ms.max_degree().unwrap_or(0).min(n);
    for d in 0..=top {
        let src = TensorBasis::new(&[ms], d);
        let tgt = TensorBasis::new(&[&v, gs], d);
        for t in src.tuples() {
            let mut img = Chain::zero();
            for term in m.coaction.image(t).terms() {
                let (mp, gam) = (term[0], term[1]);
                for &(r, b) in &coords[&mp] {
                    let rg = g.left.image(&[r, gam]);
                    img.add(&alpha_of(b).tensor(&rg));
                }
            }
            map.set(t.clone(), img);
        }
        let rank = map.matrix(&src, &tgt).rank();
        certificate.push(Cor22Degree {
            degree: d,
            dim_m: src.len(),
            dim_target: tgt.len(),
            rank,
            reduced_rank: reduced.get(&d).map_or(0, |c| c.rank),
        });
        if src.len() != tgt.len() || rank != src.len() {
            return Err(Error::IsoFailed { degree: d });
        }
    }
    let w_series = split.v_series();
    Ok(Cor22Result {
        n,
        split,
        w_series,
        map,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn equal_units_descend() {
        let input = fixtures::cor22_exterior(10);
        let r = right_unit_descends(&input.algebroid, &input.ideal, 10);
        assert!(r.holds);
    }

    #[test]
    fn commuting_bimodule_descends() {
        let (g, ideal) = fixtures::right_unit_example(true, 6);
        assert!(right_unit_descends(&g, &ideal, 6).holds);
    }

    #[test]
    fn counterexample_fails_in_degree_two() {
        let (g, ideal) = fixtures::right_unit_example(false, 6);
        let r = right_unit_descends(&g, &ideal, 6);
        assert!(!r.holds);
        assert_eq!(r.first_failure, Some(2));
    }

    #[test]
    fn pipeline_fixtures() {
        for (input, series) in [
            (fixtures::cor22_identity(10), BTreeMap::from([(0, 1)])),
            (fixtures::cor22_exterior(10), BTreeMap::from([(0, 1)])),
            (fixtures::cor22_module(10), BTreeMap::from([(0, 1)])),
        ] {
            let res = cor22_pipeline(&input, 10).unwrap();
            assert_eq!(res.w_series, series);
            assert!(res.certificate.iter().all(|c| c.rank == c.dim_m));
            assert_eq!(res.certificate.len(), 11);
        }
    }

    #[test]
    fn reduction_agrees_with_direct_split() {
        let input = fixtures::cor22_exterior(10);
        let red = reduce(&input, 10).unwrap();
        let direct = mm_split(&red.m, &red.gamma, &red.phi, 10).unwrap();
        let res = cor22_pipeline(&input, 10).unwrap();
        assert_eq!(direct.v_series(), res.w_series);
        assert_eq!(
            red.gamma.space().series(10),
            BTreeMap::from([(0, 1), (2, 1)])
        );
    }

    #[test]
    fn hypotheses_are_checked() {
        let mut input = fixtures::cor22_exterior(6);
        input.m_basis.pop();
        assert!(matches!(
            cor22_pipeline(&input, 6),
            Err(Error::HypothesisFailed { which: 3, .. })
        ));
        let mut input = fixtures::cor22_exterior(6);
        input.phi = StructureMap::new(1, 1);
        assert!(matches!(
            cor22_pipeline(&input, 6),
            Err(Error::HypothesisFailed { which: 2, .. })
        ));
    }
}

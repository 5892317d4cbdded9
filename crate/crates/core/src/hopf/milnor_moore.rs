//! Primitives of a comodule and the cofree splitting `M ≅ PM ⊗ A`.
//!
//! Given a surjective map of comodule algebras `φ: M -> A` over a connected
//! Hopf algebra, any graded splitting `α: M -> PM` of the inclusion of
//! primitives makes `θ = (α ⊗ id) ∘ ψ: M -> PM ⊗ A` an isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use super::f2::{BitMatrix, BitVec, Subspace};
use super::graded::{Basis, Chain, GradedSpace, StructureMap, TensorBasis};
use super::structures::{ComoduleData, HopfData};
use crate::error::{Error, Result};

/// `PM ⊆ M`, per degree, with basis vectors in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitives {
    pub space: GradedSpace,
    /// Degree -> kernel of `ψ - id ⊗ 1` inside `M_d`.
    pub inclusion: BTreeMap<i64, Subspace>,
}

impl Primitives {
    pub fn series(&self) -> BTreeMap<i64, usize> {
        self.inclusion
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(&d, s)| (d, s.dim()))
            .collect()
    }

    /// The image of a basis element of `PM` in `M`.
    pub fn include(&self, b: Basis) -> Chain {
        let v = &self.inclusion[&b.0].basis()[b.1];
        v.ones().map(|i| vec![(b.0, i)]).collect()
    }
}

fn basis_chain(b: Basis) -> Chain {
    Chain::term(vec![b])
}

/// `PM_d = ker(ψ - id ⊗ 1)` for every degree `d <= n`.
pub fn primitives(m: &ComoduleData, a: &HopfData, n: i64) -> Primitives {
    let ms = m.space();
    let one = a.one();
    let mut inclusion = BTreeMap::new();
    let mut space = GradedSpace::new();
    for (d, labels) in ms.degrees() {
        if d > n {
            break;
        }
        let target = TensorBasis::new(&[ms, a.space()], d);
        let rows: Vec<BitVec> = (0..labels.len())
            .map(|i| {
                let x = basis_chain((d, i));
                let c = m.coaction.apply(&x).plus(&x.tensor(&one));
                target.vector(&c)
            })
            .collect();
        let ker = BitMatrix::from_rows(target.len(), rows).left_kernel();
        let sub = Subspace::span(labels.len(), ker);
        for v in sub.basis() {
            let name = v
                .ones()
                .map(|i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join("+");
            space.push(d, name);
        }
        inclusion.insert(d, sub);
    }
    Primitives { space, inclusion }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: i64,
    pub dim_m: usize,
    pub dim_target: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct MmSplit {
    pub n: i64,
    pub primitives: Primitives,
    /// The splitting `α: M -> PM`.
    pub alpha: StructureMap,
    /// `θ: M -> PM ⊗ A`.
    pub theta: StructureMap,
    pub certificate: Vec<DegreeCertificate>,
}

impl MmSplit {
    pub fn v(&self) -> &GradedSpace {
        &self.primitives.space
    }

    pub fn v_series(&self) -> BTreeMap<i64, usize> {
        self.primitives.series()
    }
}

/// The canonical splitting: `α(m) = Σ_i m[pivot_i] · v_i` where `v_i` is the
/// echelon basis of `PM_d` with leading coordinate `pivot_i`.
pub fn canonical_alpha(pm: &Primitives, n: i64) -> StructureMap {
    let mut alpha = StructureMap::new(1, 1);
    for (d, sub) in &pm.inclusion {
        if *d > n {
            continue;
        }
        for (k, &p) in sub.pivots().iter().enumerate() {
            alpha.set(vec![(*d, p)], basis_chain((*d, k)));
        }
    }
    alpha
}

fn check_connected(what: &str, s: &GradedSpace) -> Result<()> {
    if s.is_connected() {
        Ok(())
    } else {
        Err(Error::NotConnected(format!(
            "{what} must have a one-dimensional degree 0 part and no negative degrees"
        )))
    }
}

/// Checks `φ` is degreewise surjective and a map of comodule algebras up
/// to `n`.
pub fn check_phi(m: &ComoduleData, a: &HopfData, phi: &StructureMap, n: i64) -> Result<()> {
    let (ms, as_) = (m.space(), a.space());
    let top = as_
        .max_degree()
        .unwrap_or(0)
        .max(ms.max_degree().unwrap_or(0))
        .min(n);
    for d in 0..=top {
        let src = TensorBasis::new(&[ms], d);
        let tgt = TensorBasis::new(&[as_], d);
        let rank = phi.matrix(&src, &tgt).rank();
        if rank < tgt.len() {
            return Err(Error::NotSurjective { degree: d });
        }
    }
    if phi.apply(&m.alg.one()) != a.one() {
        return Err(Error::NotComoduleAlgebraMap {
            degree: 0,
            what: "phi(1) != 1".into(),
        });
    }
    let basis = ms.basis_upto(n);
    for &x in &basis {
        let lhs = a.comult.apply(&phi.image(&[x]));
        let rhs = m.coaction.apply(&basis_chain(x)).apply_at(phi, 0);
        if lhs != rhs {
            return Err(Error::NotComoduleAlgebraMap {
                degree: x.0,
                what: format!("coaction not preserved on {}", ms.label(x)),
            });
        }
        for &y in &basis {
            if x.0 + y.0 > n {
                continue;
            }
            let lhs = phi.apply(&m.alg.mul_basis(x, y));
            let rhs = a.alg.mul(&phi.image(&[x]), &phi.image(&[y]));
            if lhs != rhs {
                return Err(Error::NotComoduleAlgebraMap {
                    degree: x.0 + y.0,
                    what: format!("product {}·{} not preserved", ms.label(x), ms.label(y)),
                });
            }
        }
    }
    Ok(())
}

pub fn mm_split(m: &ComoduleData, a: &HopfData, phi: &StructureMap, n: i64) -> Result<MmSplit> {
    check_connected("A", a.space())?;
    check_connected("M", m.space())?;
    check_phi(m, a, phi, n)?;
    let pm = primitives(m, a, n);
    let alpha = canonical_alpha(&pm, n);
    let ms = m.space();
    let mut theta = StructureMap::new(1, 2);
    let mut certificate = Vec::new();
    let top = ms.max_degree().unwrap_or(0).min(n);
    for d in 0..=top {
        let src = TensorBasis::new(&[ms], d);
        let tgt = TensorBasis::new(&[&pm.space, a.space()], d);
        for t in src.tuples() {
            theta.set(t.clone(), m.coaction.image(t).apply_at(&alpha, 0));
        }
        let mat = theta.matrix(&src, &tgt);
        let rank = mat.rank();
        certificate.push(DegreeCertificate {
            degree: d,
            dim_m: src.len(),
            dim_target: tgt.len(),
            rank,
        });
        if src.len() != tgt.len() || rank != src.len() {
            return Err(Error::SplitFailed { degree: d });
        }
    }
    Ok(MmSplit {
        n,
        primitives: pm,
        alpha,
        theta,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::super::structures::validate_comodule;
    use super::*;

    #[test]
    fn primitives_of_exterior_self_comodule() {
        let a = fixtures::exterior(&[1], 4);
        let m = fixtures::regular_comodule(&a);
        let pm = primitives(&m, &a, 4);
        assert_eq!(pm.series(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn primitives_over_trivial_are_everything() {
        let k = fixtures::trivial(6);
        let c = fixtures::truncated_polynomial(2, 2, 6);
        let m = fixtures::trivial_coaction(&c, &k);
        let pm = primitives(&m, &k, 6);
        assert_eq!(pm.series(), m.space().series(6));
    }

    #[test]
    fn primitives_of_planted_are_c() {
        let a = fixtures::exterior(&[1], 6);
        let c = fixtures::truncated_polynomial(3, 2, 6);
        let (m, _) = fixtures::planted(&c, &a);
        let pm = primitives(&m, &a, 6);
        assert_eq!(pm.series(), c.space.series(6));
        // Inclusion followed by ψ is inclusion ⊗ 1.
        for (d, sub) in &pm.inclusion {
            for k in 0..sub.dim() {
                let x = pm.include((*d, k));
                assert_eq!(m.coaction.apply(&x), x.tensor(&a.one()));
            }
        }
    }

    #[test]
    fn split_of_exterior_self_comodule() {
        let a = fixtures::exterior(&[1], 4);
        let m = fixtures::regular_comodule(&a);
        let id = StructureMap::identity(a.space(), 4);
        let s = mm_split(&m, &a, &id, 4).unwrap();
        assert_eq!(s.v_series(), BTreeMap::from([(0, 1)]));
        assert!(s.certificate.iter().all(|c| c.rank == c.dim_m));
    }

    #[test]
    fn split_over_trivial_is_identity() {
        let k = fixtures::trivial(6);
        let c = fixtures::truncated_polynomial(2, 3, 6);
        let m = fixtures::trivial_coaction(&c, &k);
        let phi = fixtures::augmentation(&c, &k);
        let s = mm_split(&m, &k, &phi, 6).unwrap();
        assert_eq!(s.v_series(), c.space.series(6));
        for b in c.space.basis_upto(6) {
            assert_eq!(s.theta.image(&[b]), Chain::term(vec![b, (0, 0)]));
        }
    }

    #[test]
    fn planted_recovery_and_projection() {
        let a = fixtures::exterior(&[1], 8);
        let c = fixtures::truncated_polynomial(3, 2, 8);
        let (m, phi) = fixtures::planted(&c, &a);
        assert!(validate_comodule(&m, &a).ok());
        let s = mm_split(&m, &a, &phi, 8).unwrap();
        assert_eq!(s.v_series(), c.space.series(8));
        // θ followed by PM ⊗ A -> PM ⊗ A_0 recovers α.
        for b in m.space().basis_upto(8) {
            let th = s.theta.image(&[b]);
            let proj: Chain = th
                .terms()
                .filter(|t| t[1].0 == 0)
                .map(|t| vec![t[0]])
                .collect();
            assert_eq!(proj, s.alpha.image(&[b]));
        }
    }

    #[test]
    fn non_surjective_phi_is_rejected_at_lowest_degree() {
        let (m, a, phi) = fixtures::non_surjective();
        assert_eq!(
            mm_split(&m, &a, &phi, 8).unwrap_err(),
            Error::NotSurjective { degree: 3 }
        );
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let a = fixtures::exterior(&[1], 4);
        let mut m = fixtures::regular_comodule(&a);
        m.alg.space.push(-1, "z");
        let id = StructureMap::identity(a.space(), 4);
        assert!(matches!(
            mm_split(&m, &a, &id, 4),
            Err(Error::NotConnected(_))
        ));
    }
}

//! The quadratic extended power `D_2` on split Tate objects.
//!
//! On a cell `d = (p, w)` with `k = 2w - p >= -1`,
//!
//! ```text
//! D_2(d) = { (p+2w-j, 2w) : 0 <= j <= k }
//!        ∪ { (p+2w+1, 2w+1) }
//!        ∪ { (p+2w+2n, 2w+n), (p+2w+2n+1, 2w+n+1) : n >= 1 }
//! ```
//!
//! and on sums `D_2(A ⊕ B) = D_2(A) ⊕ D_2(B) ⊕ A ⊗ B`.

use serde::Serialize;

use crate::bigraded::{offset_trunc, BiDegree, StarGrading, TateSum, UNTRUNCATED};
use crate::error::{Error, Result};

/// `D_2` of a single cell, truncated at shift `trunc`.
pub fn d2_cell(d: BiDegree, trunc: i64) -> Result<TateSum> {
    let k = d.excess();
    if k < -1 {
        return Err(Error::OutOfFormulaRange { cell: d, k });
    }
    if trunc >= UNTRUNCATED {
        return Err(Error::InvalidInput(
            "D_2 of a cell is infinite; a finite truncation is required".into(),
        ));
    }
    let base = d.p + 2 * d.w;
    let mut out = TateSum::new(trunc);
    for j in 0.max(base - trunc)..=k {
        out.insert(BiDegree::new(base - j, 2 * d.w), 1);
    }
    out.insert(BiDegree::new(base + 1, 2 * d.w + 1), 1);
    let mut n = 1;
    while base + 2 * n <= trunc {
        out.insert(BiDegree::new(base + 2 * n, 2 * d.w + n), 1);
        out.insert(BiDegree::new(base + 2 * n + 1, 2 * d.w + n + 1), 1);
        n += 1;
    }
    Ok(out)
}

/// `D_2` of a sum by the copy rule: a cell of multiplicity `m` is `m`
/// copies, giving `m` diagonal terms and `C(m, 2)` self-products.
///
/// The result truncation is lowered, if necessary, to what the input
/// truncation can certify.
pub fn d2_sum(x: &TateSum, trunc: i64) -> Result<TateSum> {
    let t = trunc.min(offset_trunc(x.trunc(), x.shift_lower_bound()));
    let cells: Vec<(BiDegree, u64)> = x.cells().collect();
    let mut out = TateSum::new(t);
    for (i, &(c, m)) in cells.iter().enumerate() {
        for (e, _) in d2_cell(c, t)?.cells() {
            out.insert(e, m);
        }
        out.insert(c + c, m * (m - 1) / 2);
        for &(c2, m2) in &cells[i + 1..] {
            out.insert(c + c2, m * m2);
        }
    }
    Ok(out)
}

/// The closure-class conditions, in evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SCondition {
    /// `2w - p >= -1`
    FormulaRange = 1,
    /// `w >= 0` and `p >= 1`
    Positive = 2,
    /// `star_q(p, w) > 0`
    BelowLine = 3,
    /// `w >= 1` or `p = 2w + 1`
    Twisted = 4,
}

impl SCondition {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SMembership {
    pub member: bool,
    pub failed: Option<SCondition>,
}

pub fn s_member(d: BiDegree, q: StarGrading) -> SMembership {
    let a = d.excess();
    let failed = if a < -1 {
        Some(SCondition::FormulaRange)
    } else if d.w < 0 || d.p < 1 {
        Some(SCondition::Positive)
    } else if q.star(d) <= 0 {
        Some(SCondition::BelowLine)
    } else if d.w < 1 && a != -1 {
        Some(SCondition::Twisted)
    } else {
        None
    };
    SMembership {
        member: failed.is_none(),
        failed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub source: BiDegree,
    pub cell: BiDegree,
    pub condition: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub slope: String,
    pub trunc: i64,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// The violation with the smallest cell.
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Expands `D_2(d)` and checks every summand against the class.
pub fn s_closure_check(d: BiDegree, q: StarGrading, trunc: i64) -> Result<ClosureReport> {
    if let Some(c) = s_member(d, q).failed {
        return Err(Error::NotInClass {
            cell: d,
            slope: q.to_string(),
            condition: c.code(),
        });
    }
    let expansion = d2_cell(d, trunc)?;
    let violations = expansion
        .cells()
        .filter_map(|(c, _)| {
            s_member(c, q).failed.map(|f| Violation {
                source: d,
                cell: c,
                condition: f.code(),
            })
        })
        .collect();
    Ok(ClosureReport {
        slope: q.to_string(),
        trunc,
        checked: expansion.len(),
        violations,
    })
}

/// All class members with shift `<= max_p`, in lexicographic order. The
/// set is finite: `(p - 1)/2 <= w < u p / v`.
pub fn s_cells(q: StarGrading, max_p: i64) -> Vec<BiDegree> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        for w in 0..=(p + 1) {
            let d = BiDegree::new(p, w);
            if s_member(d, q).member {
                out.push(d);
            }
        }
    }
    out
}

/// Runs [`s_closure_check`] on every member with shift `<= max_p` and
/// merges the violations, sorted by offending cell then source.
pub fn s_closure_sweep(q: StarGrading, max_p: i64, trunc: i64) -> Result<ClosureReport> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for d in s_cells(q, max_p) {
        let r = s_closure_check(d, q, trunc)?;
        checked += r.checked;
        violations.extend(r.violations);
    }
    violations.sort_by_key(|v| (v.cell, v.source));
    Ok(ClosureReport {
        slope: q.to_string(),
        trunc,
        checked,
        violations,
    })
}

/// `D_2(d ∧ T^e) = T^{2e} ∧ D_2(d)` on cells.
pub fn thom_check(d: BiDegree, e: i64, trunc: i64) -> Result<bool> {
    if e < 0 {
        return Err(Error::InvalidInput(format!(
            "Thom exponent {e} is negative"
        )));
    }
    let lhs = d2_cell(d + BiDegree::T.scale(e), trunc)?;
    let rhs = d2_cell(d, trunc - 4 * e)?.shift(BiDegree::T.scale(2 * e));
    Ok(lhs == rhs && lhs.trunc() == rhs.trunc())
}

/// The additive shadow of `Σ E∧E -> Σ D_2(E) -> D_2(ΣE)` for `E = S^j`:
/// `Σ D_2(S^j) = D_2(S^{j+1}) ⊕ S^{2j+1}`.
pub fn suspension_relation_check(j: i64, trunc: i64) -> Result<bool> {
    if j > 0 {
        return Err(Error::InvalidInput(format!(
            "suspension relation needs j <= 0, got {j}"
        )));
    }
    let lhs = d2_cell(BiDegree::new(j, 0), trunc - 1)?.shift(BiDegree::S1);
    let mut rhs = d2_cell(BiDegree::new(j + 1, 0), trunc)?;
    rhs.insert(BiDegree::new(2 * j + 1, 0), 1);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::StarSeries;
    use proptest::prelude::*;

    fn q(u: i64, v: i64) -> StarGrading {
        StarGrading::new(u, v).unwrap()
    }

    fn cells(list: &[(i64, i64)]) -> Vec<(BiDegree, u64)> {
        list.iter()
            .map(|&(p, w)| (BiDegree::new(p, w), 1))
            .collect()
    }

    fn multi(list: &[((i64, i64), u64)]) -> Vec<(BiDegree, u64)> {
        list.iter()
            .map(|&((p, w), m)| (BiDegree::new(p, w), m))
            .collect()
    }

    /// Independent enumeration: scan every candidate bidegree and test it
    /// against the three families directly.
    fn d2_oracle(d: BiDegree, trunc: i64) -> Vec<(BiDegree, u64)> {
        let (p, w) = (d.p, d.w);
        let k = 2 * w - p;
        let mut out = Vec::new();
        for s in -200..=trunc {
            for t in -200..=200 {
                let in_first = t == 2 * w && (p + 2 * w - s) >= 0 && (p + 2 * w - s) <= k;
                let in_second = s == p + 2 * w + 1 && t == 2 * w + 1;
                let n_even = (s - p - 2 * w) / 2;
                let in_third = (s - p - 2 * w) % 2 == 0 && n_even >= 1 && t == 2 * w + n_even;
                let n_odd = (s - p - 2 * w - 1) / 2;
                let in_fourth =
                    (s - p - 2 * w - 1) % 2 == 0 && n_odd >= 1 && t == 2 * w + n_odd + 1;
                let hits = [in_first, in_second, in_third, in_fourth]
                    .iter()
                    .filter(|&&b| b)
                    .count() as u64;
                if hits > 0 {
                    out.push((BiDegree::new(s, t), hits));
                }
            }
        }
        out
    }

    #[test]
    fn printed_decompositions() {
        let s1: Vec<_> = d2_cell(BiDegree::S1, 6).unwrap().cells().collect();
        assert_eq!(s1, cells(&[(2, 1), (3, 1), (4, 2), (5, 2), (6, 3)]));
        let s0: Vec<_> = d2_cell(BiDegree::ZERO, 5).unwrap().cells().collect();
        assert_eq!(s0, cells(&[(0, 0), (1, 1), (2, 1), (3, 2), (4, 2), (5, 3)]));
        let t: Vec<_> = d2_cell(BiDegree::T, 8).unwrap().cells().collect();
        assert_eq!(t, cells(&[(4, 2), (5, 3), (6, 3), (7, 4), (8, 4)]));
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            d2_cell(BiDegree::new(3, 0), 10),
            Err(Error::OutOfFormulaRange {
                cell: BiDegree::new(3, 0),
                k: -3
            })
        );
        assert!(d2_cell(BiDegree::S1, UNTRUNCATED).is_err());
    }

    #[test]
    fn closed_formula_matches_oracle() {
        for p in -10..=10 {
            for w in -6..=12 {
                let d = BiDegree::new(p, w);
                if d.excess() < -1 {
                    continue;
                }
                let got: Vec<_> = d2_cell(d, 24).unwrap().cells().collect();
                assert_eq!(got, d2_oracle(d, 24), "{d}");
            }
        }
    }

    #[test]
    fn minimal_shift_doubles() {
        for p in -10..=10 {
            for w in -10..=15 {
                let d = BiDegree::new(p, w);
                if d.excess() < -1 {
                    continue;
                }
                let e = d2_cell(d, 2 * p + 4).unwrap();
                assert_eq!(e.min_shift(), Some(2 * p), "{d}");
                assert!(e.cells().all(|(_, m)| m == 1));
            }
        }
    }

    #[test]
    fn sum_examples() {
        let single = TateSum::single(BiDegree::S1, 10);
        assert_eq!(
            d2_sum(&single, 10).unwrap(),
            d2_cell(BiDegree::S1, 10).unwrap()
        );

        let doubled = TateSum::from_cells([(BiDegree::S1, 2)], 10);
        let got: Vec<_> = d2_sum(&doubled, 4).unwrap().cells().collect();
        assert_eq!(
            got,
            multi(&[((2, 0), 1), ((2, 1), 2), ((3, 1), 2), ((4, 2), 2)])
        );

        let pair = TateSum::from_cells([(BiDegree::S1, 1), (BiDegree::T, 1)], 10);
        let got: Vec<_> = d2_sum(&pair, 6).unwrap().cells().collect();
        assert_eq!(
            got,
            multi(&[
                ((2, 1), 1),
                ((3, 1), 2),
                ((4, 2), 2),
                ((5, 2), 1),
                ((5, 3), 1),
                ((6, 3), 2)
            ])
        );
    }

    #[test]
    fn sum_truncation_is_lowered_to_what_input_certifies() {
        let x = TateSum::single(BiDegree::S1, 3);
        assert_eq!(d2_sum(&x, 10).unwrap().trunc(), 4);
    }

    #[test]
    fn membership_examples() {
        let m = s_member(BiDegree::S1, q(2, 3));
        assert!(m.member);
        assert!(s_member(BiDegree::new(5, 3), q(2, 3)).member);
        assert_eq!(
            s_member(BiDegree::new(5, 3), q(5, 9)).failed,
            Some(SCondition::BelowLine)
        );
        assert_eq!(
            s_member(BiDegree::GM, q(2, 3)).failed,
            Some(SCondition::BelowLine)
        );
        assert_eq!(
            s_member(BiDegree::new(5, 1), q(2, 3)).failed,
            Some(SCondition::FormulaRange)
        );
        assert_eq!(
            s_member(BiDegree::ZERO, q(2, 3)).failed,
            Some(SCondition::Positive)
        );
        assert_eq!(
            s_member(BiDegree::new(-1, 0), q(2, 3)).failed,
            Some(SCondition::Positive)
        );
        // l / (2l - a) = 2/3 exactly: on the line, not below it.
        assert_eq!(
            s_member(BiDegree::new(3, 2), q(2, 3)).failed,
            Some(SCondition::BelowLine)
        );
    }

    #[test]
    fn twisted_condition_is_reachable() {
        // (p, 0) with 2*0 - p >= -1 forces p <= 1; only (1, 0) has p >= 1
        // and it has a = -1. So condition 4 never fires once 1-3 pass.
        for p in -5..=20 {
            for w in -5..=20 {
                let m = s_member(BiDegree::new(p, w), q(2, 3));
                assert_ne!(m.failed, Some(SCondition::Twisted));
            }
        }
    }

    #[test]
    fn closure_examples() {
        for d in [
            BiDegree::S1,
            BiDegree::T,
            BiDegree::new(3, 1),
            BiDegree::new(7, 4),
        ] {
            let r = s_closure_check(d, q(2, 3), 20).unwrap();
            assert!(r.ok(), "{d}: {:?}", r.violations);
            assert!(r.checked > 0);
        }
        for d in [BiDegree::GM, BiDegree::new(3, 2)] {
            assert!(matches!(
                s_closure_check(d, q(2, 3), 20),
                Err(Error::NotInClass { condition: 3, .. })
            ));
        }
    }

    #[test]
    fn sweep_at_five_ninths_fails_at_t_squared_gm() {
        assert!(s_closure_sweep(q(2, 3), 12, 30).unwrap().ok());
        let r = s_closure_sweep(q(5, 9), 12, 30).unwrap();
        let v = r.first_violation().unwrap();
        assert_eq!(v.cell, BiDegree::new(5, 3));
        assert_eq!(v.source, BiDegree::T);
        assert_eq!(v.condition, 3);
    }

    #[test]
    fn s_cells_enumeration_is_complete() {
        let g = q(2, 3);
        let listed = s_cells(g, 12);
        for p in -5..=12 {
            for w in -5..=40 {
                let d = BiDegree::new(p, w);
                assert_eq!(listed.contains(&d), s_member(d, g).member, "{d}");
            }
        }
    }

    #[test]
    fn thom_examples() {
        assert!(thom_check(BiDegree::S1, 1, 12).unwrap());
        assert!(thom_check(BiDegree::ZERO, 3, 20).unwrap());
        assert!(thom_check(BiDegree::new(3, 4), 0, 20).unwrap());
    }

    #[test]
    fn suspension_examples() {
        assert!(suspension_relation_check(0, 6).unwrap());
        assert!(suspension_relation_check(-1, 12).unwrap());
        assert!(suspension_relation_check(-3, 30).unwrap());
        assert!(suspension_relation_check(1, 10).is_err());
    }

    #[test]
    fn wedge_phrasing_disagrees_with_the_cell_formula() {
        // Reading the cofiber sequence as D_2(S^{-k}) = Σ D_2(S^{-k-1}) ∨ S^{-2k}
        // would give equal cell counts after removing one cell from the left.
        for k in 0..=5 {
            let t = 20;
            let lhs = d2_cell(BiDegree::new(-k, 0), t).unwrap().rank();
            let rhs = d2_cell(BiDegree::new(-k - 1, 0), t - 1)
                .unwrap()
                .shift(BiDegree::S1)
                .rank()
                + 1;
            assert_eq!(lhs + 2, rhs, "k = {k}");
        }
    }

    fn arb_cell() -> impl Strategy<Value = BiDegree> {
        (1i64..8, 0i64..8)
            .prop_filter("formula range", |&(p, w)| 2 * w - p >= -1)
            .prop_map(|(p, w)| BiDegree::new(p, w))
    }

    fn arb_sum() -> impl Strategy<Value = TateSum> {
        prop::collection::vec((arb_cell(), 1u64..3), 0..=8)
            .prop_map(|cs| TateSum::from_cells(cs, 30))
    }

    proptest! {
        #[test]
        fn cross_effect(a in arb_sum(), b in arb_sum()) {
            let g = StarGrading::default_slope();
            let lhs = d2_sum(&a.sum(&b), 30).unwrap().series(g);
            let rhs = d2_sum(&a, 30).unwrap().series(g)
                .plus(&d2_sum(&b, 30).unwrap().series(g))
                .plus(&a.tensor(&b).unwrap().series(g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn thom_periodicity(p in -8i64..=8, w in -6i64..=20, e in 0i64..=4) {
            let d = BiDegree::new(p, w);
            prop_assume!(d.excess() >= -1);
            prop_assert!(thom_check(d, e, 40).unwrap());
        }

        #[test]
        fn multiplicities_are_one(p in -10i64..=10, w in -10i64..=20, t in -20i64..=40) {
            let d = BiDegree::new(p, w);
            prop_assume!(d.excess() >= -1);
            prop_assert!(d2_cell(d, t).unwrap().cells().all(|(_, m)| m == 1));
        }
    }

    #[test]
    fn series_of_sum_counts_copies() {
        let g = StarGrading::default_slope();
        let x = TateSum::from_cells([(BiDegree::S1, 3)], 30);
        let s = d2_sum(&x, 30).unwrap().series(g);
        let one = d2_cell(BiDegree::S1, 30).unwrap().series(g);
        let expected = one
            .plus(&one)
            .plus(&one)
            .plus(&StarSeries::from_pairs([(4, 3)]));
        assert_eq!(s, expected);
    }
}

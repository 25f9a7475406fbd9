//! Numerical invariants of codimension-one distributions
//! `0 → T_F → TX → I_Z(κ) → 0` on a threefold with cyclic Picard group.

use std::fmt;

use serde::Serialize;

use crate::chow::{self, ChernData, ChowClass, TangentStability, ThreefoldData};
use crate::cohomology::{self, DimEntry};
use crate::error::{Error, Result};

/// Discrete data of a codimension-one distribution `F` on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionProfile {
    pub x: ThreefoldData,
    /// `c1(T_F)`.
    pub f: i64,
    /// Singular scheme empty or zero-dimensional.
    pub generic: bool,
}

impl DistributionProfile {
    pub fn new(x: ThreefoldData, f: i64, generic: bool) -> Self {
        DistributionProfile { x, f, generic }
    }

    /// Degree-`d` distribution on `P^3`, i.e. `c1(T_F) = 2 − d`.
    pub fn p3_degree(d: i64, generic: bool) -> Self {
        DistributionProfile::new(ThreefoldData::p3(), 2 - d, generic)
    }

    /// `κ = c1(TX) − c1(T_F)`, the twist of the ideal sheaf quotient.
    pub fn kappa(&self) -> i64 {
        self.x.c_x - self.f
    }

    /// Degree of `L_F = det(TX) ⊗ K_F`; equal to `κ`.
    pub fn lf_degree(&self) -> i64 {
        self.kappa()
    }

    /// The usual degree `2 − c1(T_F)`, defined on `P^3` only.
    pub fn degree(&self) -> Option<i64> {
        self.x.is_p3().then_some(2 - self.f)
    }

    fn require_generic(&self, what: &str) -> Result<()> {
        if self.generic {
            Ok(())
        } else {
            Err(Error::HypothesisError(format!(
                "{what} needs a generic distribution (isolated singularities)"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StabilityStatus {
    Inconclusive,
    Semistable,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StabilityReason {
    RhoBound,
    TXStable,
    TXSemistable,
    HypothesisFails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub reason: StabilityReason,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ({:?})", self.status, self.reason)
    }
}

/// Slope stability of `T_F` for a generic distribution.
///
/// `f < 2ρ` gives stability and `f = 2ρ` semistability. A (semi)stable `TX`
/// gives the same for `T_F` at any `f`; the stronger conclusion is reported.
pub fn stability_classify(p: &DistributionProfile) -> Result<StabilityVerdict> {
    p.require_generic("stability")?;
    if !p.x.h1_line_vanishing {
        return Err(Error::HypothesisError(format!(
            "H^1(O(t)) = 0 is not known on {}",
            p.x.name
        )));
    }
    let rho = p.x.rho()?;
    let verdict = |status, reason| StabilityVerdict { status, reason };
    let from_tx = match p.x.tx_stable {
        TangentStability::Stable => verdict(StabilityStatus::Stable, StabilityReason::TXStable),
        TangentStability::Semistable => {
            verdict(StabilityStatus::Semistable, StabilityReason::TXSemistable)
        }
        TangentStability::Unknown => verdict(
            StabilityStatus::Inconclusive,
            StabilityReason::HypothesisFails,
        ),
    };
    // the strongest verdict wins, so a stable TX still helps at f = 2ρ
    Ok(if p.f < 2 * rho {
        verdict(StabilityStatus::Stable, StabilityReason::RhoBound)
    } else if p.f == 2 * rho && from_tx.status <= StabilityStatus::Semistable {
        verdict(StabilityStatus::Semistable, StabilityReason::RhoBound)
    } else {
        from_tx
    })
}

/// Chern data of `T_F` for a generic distribution, via the twisted tangent
/// bundle: `c2 = c2(TX) − κ H·c1(TX) + κ² H²` and `c3 = −c3(TX(−κ))`.
pub fn dist_chern(p: &DistributionProfile) -> Result<ChernData> {
    p.require_generic("Chern data")?;
    let x = &p.x;
    let kappa = p.kappa();
    let n2 = x.c2_tx_h - kappa * x.c_x * x.h3 + kappa * kappa * x.h3;
    let n3 = -chow::twist_chern(&ChernData::tangent(x), -kappa, x)?.n3;
    Ok(ChernData::new(2, p.f, n2, n3))
}

/// Chern data of `T_F` through the defining sequence instead:
/// `ch(T_F) = ch(TX) − ch(O(κ)) + ℓ·[pt]`, with the length `ℓ` of `Z` taken
/// as the top Chern class of `Ω¹(κ)`, whose generic section cuts out `Z`.
pub fn dist_chern_via_sequence(p: &DistributionProfile) -> Result<ChernData> {
    p.require_generic("Chern data")?;
    let x = &p.x;
    let kappa = p.kappa();
    let length = chow::twist_chern(&ChernData::cotangent(x), kappa, x)?.n3;
    let shadow = chow::ses_third(
        None,
        Some(&ChernData::tangent(x)),
        Some(&ChernData::line(kappa)),
        x,
    )?;
    let ch = chow::chern_to_ch(&shadow, x) + ChowClass::points(length, x.h3);
    chow::ch_to_chern(&ch, x)
}

/// Length of the singular scheme, `h^0(O_Z) = c3(T_F)`.
pub fn singular_length(p: &DistributionProfile) -> Result<u64> {
    let n3 = dist_chern(p)?.n3;
    u64::try_from(n3).map_err(|_| Error::NegativeLength(n3))
}

/// What is declared about `sing_1(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sing1F {
    Empty,
    IrreducibleReduced,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Splitting {
    Splits,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SingStructure {
    /// `Y = sing_1(G)` and `sing_0(G) = ∅`.
    YEqualsSing1G,
    /// `sing(G) = Y ∪ sing_1(F)`.
    UnionWithSing1F,
    /// Either of the two above, depending on data not visible numerically.
    CaseSplit,
}

/// Numerical shadow of a rank-one subfoliation `G ⊂ F` with `T_G = O(tG)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubfoliationReport {
    pub t_g: i64,
    /// Degree of `L_{F/G} = T_G^∨ ⊗ det(T_F)`.
    pub lfg_degree: i64,
    /// `c2(T_F ⊗ O(−tG)) · H`, the degree of the curve `Y`.
    pub y_class: i64,
    pub split: Splitting,
    /// Degree of `L_{F/G} ⊗ L_F^∨`, whose `H^1` obstructs the splitting.
    pub split_obstruction_degree: i64,
    /// Degree `tG − cX + 2f` of the line bundle in the alternative form of
    /// the splitting criterion, where `T_G` enters with the opposite sign.
    pub alt_obstruction_degree: i64,
    pub sing_structure: SingStructure,
    /// The possible outcomes for `sing(G)`, in words.
    pub branches: Vec<String>,
    pub diagnostics: Vec<String>,
}

/// Analyzes the subfoliation induced by a section of `T_F(−tG)` vanishing on
/// a curve `Y`. The existence of that section is assumed, not checked.
///
/// `tf_chern` overrides the Chern data of `T_F`; without it the generic-case
/// formula of [`dist_chern`] is used, with a diagnostic when the profile is
/// not generic.
pub fn subfoliation_analyze(
    p: &DistributionProfile,
    t_g: i64,
    sing1f: Sing1F,
    tf_chern: Option<ChernData>,
) -> Result<SubfoliationReport> {
    let x = &p.x;
    let mut diagnostics = Vec::new();
    let n2 = match tf_chern {
        Some(c) => c.n2,
        None => {
            if !p.generic || sing1f != Sing1F::Empty {
                diagnostics.push("c2(T_F) taken from the generic-distribution formula".to_string());
            }
            dist_chern(&DistributionProfile::new(x.clone(), p.f, true))?.n2
        }
    };
    let f = p.f;
    let y_class = n2 - t_g * f * x.h3 + t_g * t_g * x.h3;
    let lfg_degree = f - t_g;
    let split_obstruction_degree = 2 * f - t_g - x.c_x;
    let alt_obstruction_degree = t_g - x.c_x + 2 * f;

    let split = if x.is_p3() || x.h1_line_vanishing {
        Splitting::Splits
    } else {
        Splitting::Unknown
    };

    let y_is_sing = "Y = sing_1(G) and sing_0(G) is empty".to_string();
    let union = "sing(G) = Y ∪ sing_1(F)".to_string();
    let (sing_structure, branches) = match sing1f {
        Sing1F::Empty => (SingStructure::YEqualsSing1G, vec![y_is_sing]),
        Sing1F::IrreducibleReduced => (
            SingStructure::CaseSplit,
            vec!["Y = sing_1(G)".to_string(), union],
        ),
        Sing1F::Other => (SingStructure::CaseSplit, vec!["Y ⊆ sing_1(G)".to_string()]),
    };

    if y_class < 0 {
        diagnostics.push(format!(
            "c2(T_F(-tG))·H = {y_class} is negative: no section of T_F(-tG) vanishes on a curve"
        ));
    }
    Ok(SubfoliationReport {
        t_g,
        lfg_degree,
        y_class,
        split,
        split_obstruction_degree,
        alt_obstruction_degree,
        sing_structure,
        branches,
        diagnostics,
    })
}

/// Number of connected components of `sing_1(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentCount {
    Exact(i64),
    Interval(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConnHypotheses {
    /// `h^1(TX ⊗ L_F^∨) = 0`
    pub h1_tx_vanishes: bool,
    /// `h^2(TX ⊗ L_F^∨) = 0`
    pub h2_tx_vanishes: bool,
    /// `h^1(O_X) = 0`
    pub h1_o_vanishes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConnReport {
    pub count: ComponentCount,
    pub hypotheses_checked: ConnHypotheses,
}

/// Counts components of `sing_1(F)` as `h^2(T_F ⊗ L_F^∨) − c3(T_F) + 1`.
///
/// On `P^3` the vanishing hypotheses are computed; elsewhere `tx_flags`
/// supplies them. When `h^1(TX ⊗ L_F^∨) = 0` but `h^2(TX ⊗ L_F^∨) = m > 0`
/// (on `P^3` only for `d = 2`, where `m = 1`), the count is only bounded
/// to an interval of width `m`.
pub fn conn_components(
    p: &DistributionProfile,
    h2_tf_lf_dual: DimEntry,
    c3_tf: u64,
    tx_flags: Option<(bool, bool)>,
) -> Result<ConnReport> {
    let x = &p.x;
    let lf = p.lf_degree();
    let (h1_tx, h2_tx) = if x.is_p3() {
        (
            Some(cohomology::serre_tangent_h(x, 1, -lf)?),
            Some(cohomology::serre_tangent_h(x, 2, -lf)?),
        )
    } else {
        match tx_flags {
            Some((h1, h2)) => (h1.then_some(0), h2.then_some(0)),
            None => {
                return Err(Error::MissingInvariant(
                    "vanishing of h^1 and h^2 of TX ⊗ L_F^∨",
                ))
            }
        }
    };
    let hypotheses = ConnHypotheses {
        h1_tx_vanishes: h1_tx == Some(0),
        h2_tx_vanishes: h2_tx == Some(0),
        h1_o_vanishes: x.h1_line_vanishing,
    };
    if !hypotheses.h1_o_vanishes {
        return Err(Error::HypothesisError(format!(
            "h^1(O_X) = 0 is not known on {}",
            x.name
        )));
    }
    if !hypotheses.h1_tx_vanishes {
        return Err(Error::HypothesisError(
            "h^1(TX ⊗ L_F^∨) does not vanish".into(),
        ));
    }
    let (h2_lo, h2_hi) = match h2_tf_lf_dual {
        DimEntry::Unknown => return Err(Error::MissingInvariant("h^2(T_F ⊗ L_F^∨)")),
        e => {
            let (lo, hi) = e.range();
            (lo as i64, hi.expect("bounded entry") as i64)
        }
    };
    let c3 = c3_tf as i64;
    // h^0(O_C) = h^1(I_Z) + 1 − c3, and H^1(I_Z) ↪ H^2(T_F ⊗ L_F^∨) → H^2(TX ⊗ L_F^∨)
    let slack = match h2_tx {
        Some(m) => m as i64,
        None => {
            return Err(Error::HypothesisError(
                "h^2(TX ⊗ L_F^∨) is not known to vanish".into(),
            ))
        }
    };
    let hi = h2_hi - c3 + 1;
    let lo = (h2_lo - slack - c3 + 1).max(0);
    if hi < 0 {
        return Err(Error::NegativeCount(hi));
    }
    let count = if lo == hi {
        ComponentCount::Exact(hi)
    } else {
        ComponentCount::Interval(lo, hi)
    };
    Ok(ConnReport {
        count,
        hypotheses_checked: hypotheses,
    })
}

/// The generic-case value of `h^2(T_F(−d−2))` on `P^3`, as offered to
/// [`conn_components`] when the caller has no better number.
pub fn generic_h2_suggestion(d: i64) -> Result<DimEntry> {
    Ok(cohomology::generic_dist_cohom(d, -d - 2)?[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_rho(tx: TangentStability) -> ThreefoldData {
        ThreefoldData {
            name: "rho1".into(),
            h3: 1,
            c_x: 2,
            c2_tx_h: 0,
            c3_tx: 0,
            rho_x: Some(1),
            gamma_x: Some(1),
            tx_stable: tx,
            h1_line_vanishing: true,
        }
    }

    #[test]
    fn profile_bookkeeping() {
        let p = DistributionProfile::p3_degree(3, true);
        assert_eq!(p.f, -1);
        assert_eq!(p.kappa(), 5);
        assert_eq!(p.kappa() + p.f, p.x.c_x);
        assert_eq!(p.degree(), Some(3));
        let q = DistributionProfile::new(ThreefoldData::quintic(), -2, true);
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn stability_examples() {
        let v = stability_classify(&DistributionProfile::p3_degree(0, true)).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(v.reason, StabilityReason::RhoBound);

        let semi = DistributionProfile::new(unit_rho(TangentStability::Unknown), 2, true);
        assert_eq!(
            stability_classify(&semi).unwrap().status,
            StabilityStatus::Semistable
        );

        let inc = DistributionProfile::new(unit_rho(TangentStability::Unknown), 3, true);
        assert_eq!(
            stability_classify(&inc).unwrap(),
            StabilityVerdict {
                status: StabilityStatus::Inconclusive,
                reason: StabilityReason::HypothesisFails
            }
        );
        let tx = DistributionProfile::new(unit_rho(TangentStability::Semistable), 3, true);
        assert_eq!(
            stability_classify(&tx).unwrap().reason,
            StabilityReason::TXSemistable
        );
        let boundary = DistributionProfile::new(unit_rho(TangentStability::Stable), 2, true);
        assert_eq!(
            stability_classify(&boundary).unwrap().reason,
            StabilityReason::TXStable
        );
        let boundary = DistributionProfile::new(unit_rho(TangentStability::Semistable), 2, true);
        assert_eq!(
            stability_classify(&boundary).unwrap().reason,
            StabilityReason::RhoBound
        );

        let nongeneric = DistributionProfile::p3_degree(1, false);
        assert!(matches!(
            stability_classify(&nongeneric),
            Err(Error::HypothesisError(_))
        ));
        let quadric = DistributionProfile::new(ThreefoldData::quadric(), 1, true);
        assert_eq!(
            stability_classify(&quadric),
            Err(Error::MissingInvariant("rhoX"))
        );
    }

    #[test]
    fn chern_examples() {
        let c = dist_chern(&DistributionProfile::p3_degree(1, true)).unwrap();
        assert_eq!(c, ChernData::new(2, 1, 3, 5));
        let c = dist_chern(&DistributionProfile::p3_degree(0, true)).unwrap();
        assert_eq!(c, ChernData::new(2, 2, 2, 0));
        let q = DistributionProfile::new(ThreefoldData::quintic(), -2, true);
        assert_eq!(dist_chern(&q).unwrap(), ChernData::new(2, -2, 70, 340));
        assert_eq!(
            dist_chern_via_sequence(&q).unwrap(),
            ChernData::new(2, -2, 70, 340)
        );
        assert!(dist_chern(&DistributionProfile::p3_degree(1, false)).is_err());
    }

    #[test]
    fn singular_length_examples() {
        assert_eq!(
            singular_length(&DistributionProfile::p3_degree(2, true)).unwrap(),
            20
        );
        assert_eq!(
            singular_length(&DistributionProfile::p3_degree(0, true)).unwrap(),
            0
        );
        assert_eq!(
            singular_length(&DistributionProfile::p3_degree(3, true)).unwrap(),
            51
        );
        // d = -2 is outside the range of actual distributions
        assert_eq!(
            singular_length(&DistributionProfile::p3_degree(-2, true)),
            Err(Error::NegativeLength(-4))
        );
    }

    #[test]
    fn subfoliation_examples() {
        let p = DistributionProfile::p3_degree(1, true);
        let r = subfoliation_analyze(&p, -1, Sing1F::Empty, None).unwrap();
        assert_eq!(r.lfg_degree, 2);
        assert_eq!(r.y_class, 5);
        assert_eq!(r.split, Splitting::Splits);
        assert_eq!(r.sing_structure, SingStructure::YEqualsSing1G);
        assert_eq!(r.split_obstruction_degree, -1);
        assert_eq!(r.alt_obstruction_degree, -3);
        assert!(r.diagnostics.is_empty());

        assert_eq!(
            subfoliation_analyze(&p, p.f, Sing1F::Empty, None)
                .unwrap()
                .lfg_degree,
            0
        );

        let r = subfoliation_analyze(&p, -1, Sing1F::IrreducibleReduced, None).unwrap();
        assert_eq!(r.sing_structure, SingStructure::CaseSplit);
        assert_eq!(r.diagnostics.len(), 1);
        let given = ChernData::new(2, 1, 7, 0);
        let r = subfoliation_analyze(&p, -1, Sing1F::Other, Some(given)).unwrap();
        assert_eq!(r.y_class, 9);
        assert!(r.diagnostics.is_empty());
        let r = subfoliation_analyze(&p, -1, Sing1F::IrreducibleReduced, Some(given)).unwrap();
        assert_eq!(r.branches, vec!["Y = sing_1(G)", "sing(G) = Y ∪ sing_1(F)"]);

        let mut x = ThreefoldData::quintic();
        x.h1_line_vanishing = false;
        let q = DistributionProfile::new(x, -2, true);
        assert_eq!(
            subfoliation_analyze(&q, -3, Sing1F::Empty, None)
                .unwrap()
                .split,
            Splitting::Unknown
        );
    }

    #[test]
    fn negative_curve_class_is_diagnosed() {
        // c2(T_F)·H below f² h3 / 4 allows a negative curve class
        let mut x = ThreefoldData::p3();
        x.c2_tx_h = -40;
        let p = DistributionProfile::new(x, 0, true);
        let r = subfoliation_analyze(&p, 0, Sing1F::Empty, None).unwrap();
        assert!(r.y_class < 0);
        assert_eq!(r.diagnostics.len(), 1);
    }

    #[test]
    fn connectedness_examples() {
        let p = DistributionProfile::p3_degree(3, false);
        let r = conn_components(&p, DimEntry::Known(51), 51, None).unwrap();
        assert_eq!(r.count, ComponentCount::Exact(1));
        let r = conn_components(&p, DimEntry::Known(53), 51, None).unwrap();
        assert_eq!(r.count, ComponentCount::Exact(3));
        assert!(r.hypotheses_checked.h2_tx_vanishes);

        let d2 = DistributionProfile::p3_degree(2, false);
        let r = conn_components(&d2, DimEntry::Known(21), 20, None).unwrap();
        assert_eq!(r.count, ComponentCount::Interval(1, 2));
        assert!(!r.hypotheses_checked.h2_tx_vanishes);

        assert_eq!(
            conn_components(&p, DimEntry::Known(3), 51, None),
            Err(Error::NegativeCount(-47))
        );
        assert_eq!(
            conn_components(&p, DimEntry::Unknown, 51, None),
            Err(Error::MissingInvariant("h^2(T_F ⊗ L_F^∨)"))
        );

        let q = DistributionProfile::new(ThreefoldData::quintic(), -2, false);
        let r = conn_components(&q, DimEntry::Known(400), 340, Some((true, true))).unwrap();
        assert_eq!(r.count, ComponentCount::Exact(61));
        assert!(conn_components(&q, DimEntry::Known(400), 340, Some((true, false))).is_err());
        assert!(conn_components(&q, DimEntry::Known(400), 340, None).is_err());
    }

    #[test]
    fn generic_suggestion() {
        // d = 1: C is empty, so the count must come out as zero
        let h2 = generic_h2_suggestion(1).unwrap();
        assert_eq!(h2, DimEntry::Known(4));
        let p = DistributionProfile::p3_degree(1, true);
        let r = conn_components(&p, h2, 5, None).unwrap();
        assert_eq!(r.count, ComponentCount::Exact(0));
    }
}

//! Moduli components of tangent sheaves of generic distributions on `P^3`,
//! and the stable spectrum points realized by distributions on other
//! threefolds.

use serde::Serialize;

use crate::chow::{self, ChernData, ThreefoldData};
use crate::cohomology::{self, binom3_plus, DimEntry};
use crate::dist::{self, DistributionProfile};
use crate::error::{Error, Result};
use crate::sheafdsl::{self, SheafExpr};

fn require_degree(d: i64, min: i64) -> Result<()> {
    if d < min {
        Err(Error::DomainError(format!("degree {d} is below {min}")))
    } else {
        Ok(())
    }
}

/// `dim Ext²(F, F)` for the tangent sheaf of a generic degree-`d` distribution.
/// Zero for `d <= 2`, otherwise `d(d−1)(d−3)/2`.
pub fn ext2(d: i64) -> i64 {
    if d <= 2 {
        0
    } else {
        d * (d - 1) * (d - 3) / 2
    }
}

/// Same number as [`ext2`] for `d >= 3`, as `4 h^0(O(d−3)) − h^0(O(d−2))`.
pub fn ext2_via_sections(d: i64) -> i64 {
    4 * binom3_plus(d) as i64 - binom3_plus(d + 1) as i64
}

/// `8 c2 − 2 c1² − 3 = 6d² + 8d + 5`, the Euler characteristic `ext¹ − ext²`.
pub fn ext_difference(d: i64) -> i64 {
    let c = dist::dist_chern(&DistributionProfile::p3_degree(d, true)).expect("P^3 twist");
    8 * c.n2 - 2 * c.c1 * c.c1 - 3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub d: i64,
    pub chern: ChernData,
    /// Representative of the twist class with `c1 ∈ {−1, 0}`.
    pub normalized: ChernData,
    pub dim_component: i64,
    pub ext1: i64,
    pub ext2: i64,
    /// Either `Ext²(F, F) = 0` or the tangent space `Ext¹(F, F)` has the
    /// dimension of the component.
    pub smooth_point: bool,
    /// `None` where rationality is not established.
    pub rational: Option<bool>,
    /// Dimension of the family of tangent sheaves of distributions.
    pub family_dim: i64,
}

/// The moduli component containing tangent sheaves of generic degree-`d`
/// distributions on `P^3`.
///
/// For `d = 2` these sheaves are smooth points of a 45-dimensional component
/// but form only a 44-dimensional family.
pub fn moduli_report(d: i64) -> Result<ModuliReport> {
    require_degree(d, 0)?;
    let p3 = ThreefoldData::p3();
    let chern = dist::dist_chern(&DistributionProfile::p3_degree(d, true))?;
    let normalized = normalize_chern(&chern, &p3)?;
    let ext2 = ext2(d);
    let ext1 = ext_difference(d) + ext2;
    let family = cohomology::bott_h(1, 0, d + 2) as i64 - 1;
    let (dim_component, rational) = if d == 2 {
        (ext1, None)
    } else {
        (family, Some(true))
    };
    if d != 2 && dim_component != ext1 {
        return Err(Error::Inconsistent(format!(
            "degree {d}: component dimension {dim_component} but ext1 = {ext1}"
        )));
    }
    Ok(ModuliReport {
        d,
        chern,
        normalized,
        dim_component,
        ext1,
        ext2,
        smooth_point: ext2 == 0 || dim_component == ext1,
        rational,
        family_dim: family,
    })
}

/// `0 → kernel → O^n → F(d) → 0`, exhibiting `F(d)` as globally generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalGenResolution {
    pub d: i64,
    pub middle_rank: u32,
    #[serde(serialize_with = "display")]
    pub kernel: SheafExpr,
    pub kernel_chern: ChernData,
    /// Chern data of `F(d)`, computed from the resolution.
    pub cokernel_chern: ChernData,
    pub h0_fd: u64,
}

fn display<S: serde::Serializer>(e: &SheafExpr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

pub fn global_gen_resolution(d: i64) -> Result<GlobalGenResolution> {
    require_degree(d, 0)?;
    let p3 = ThreefoldData::p3();
    let tx2 = SheafExpr::tangent().twist(-2);
    let (kernel, middle_rank) = if d == 0 {
        (tx2, 5)
    } else {
        (tx2.sum(SheafExpr::line(-d)), 6)
    };
    let env = sheafdsl::Env::new();
    let kernel_chern = sheafdsl::chern_of(&kernel, &p3, &env)?;
    let middle = ChernData::new(middle_rank, 0, 0, 0);
    let cokernel_chern = chow::ses_third(Some(&kernel_chern), Some(&middle), None, &p3)?;
    let f = dist::dist_chern(&DistributionProfile::p3_degree(d, true))?;
    let expected = chow::twist_chern(&f, d, &p3)?;
    if cokernel_chern != expected {
        return Err(Error::Inconsistent(format!(
            "resolution gives {cokernel_chern}, twist gives {expected}"
        )));
    }
    let h0_fd = match cohomology::generic_dist_cohom(d, d)?[0] {
        DimEntry::Known(n) => n,
        e => return Err(Error::NotComputable(format!("h^0(F({d})) = {e}"))),
    };
    if h0_fd != middle_rank as u64 {
        return Err(Error::Inconsistent(format!(
            "h^0(F({d})) = {h0_fd} but the resolution has {middle_rank} sections"
        )));
    }
    Ok(GlobalGenResolution {
        d,
        middle_rank,
        kernel,
        kernel_chern,
        cokernel_chern,
        h0_fd,
    })
}

/// Curves cut out by two sections of `F(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveFamilyReport {
    pub d: i64,
    pub degree: i64,
    pub genus: i64,
    /// `c3(F(d))`, the number of points where the two sections are dependent.
    pub points: i64,
    pub family_dim: i64,
}

pub fn curve_family(d: i64) -> Result<CurveFamilyReport> {
    require_degree(d, 1)?;
    let res = global_gen_resolution(d)?;
    let fd = res.cokernel_chern;
    let degree = fd.n2;
    let points = fd.n3;
    let genus = (d - 1) * degree + 1;
    // c3 = 2g − 2 + deg·(4 − c1) for the degeneracy curve of two sections
    let rhs = 2 * genus - 2 + degree * (4 - fd.c1);
    if points != rhs || points != d * degree {
        return Err(Error::Inconsistent(format!(
            "degree {d}: c3 = {points}, genus identity gives {rhs}"
        )));
    }
    Ok(CurveFamilyReport {
        d,
        degree,
        genus,
        points,
        family_dim: res.h0_fd as i64 - 1,
    })
}

/// Chern data of a stable rank-2 reflexive sheaf `E` with
/// `0 → E → TX → I_Z(r) → 0`, the tangent sheaf of a generic distribution.
///
/// `triple` may be moved along its twist orbit by [`pic_act`]; `r` keeps the
/// parameter the point was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumPoint {
    #[serde(rename = "X")]
    pub x: ThreefoldData,
    pub r: i64,
    pub triple: ChernData,
}

pub fn spectrum_point(x: &ThreefoldData, r: i64) -> Result<SpectrumPoint> {
    let rho = x.rho()?;
    let gamma = x.gamma()?;
    if r < gamma {
        return Err(Error::HypothesisError(format!(
            "r = {r} is below gamma = {gamma} on {}",
            x.name
        )));
    }
    if x.c_x >= 3 * rho {
        return Err(Error::HypothesisError(format!(
            "c1(TX) = {} is not below 3 rho = {}",
            x.c_x,
            3 * rho
        )));
    }
    let triple = dist::dist_chern(&DistributionProfile::new(x.clone(), x.c_x - r, true))?;
    Ok(SpectrumPoint {
        x: x.clone(),
        r,
        triple,
    })
}

/// Twists the triple by `O(t)`: `c1 ↦ c1 + 2t`, `c2 ↦ c2 + t c1 H + t² H²`,
/// `c3` fixed.
///
/// This is the action of `Pic(X)` by tensor product on rank-2 sheaves. The
/// form `(R + c1(L), D + c1(L)·R + c1(L)², S)`, which adds `c1(L)` to the
/// first Chern class once, is not used: it does not come from twisting.
pub fn pic_act(point: &SpectrumPoint, t: i64) -> Result<SpectrumPoint> {
    if point.triple.rank != 2 {
        return Err(Error::UnsupportedRank(point.triple.rank));
    }
    Ok(SpectrumPoint {
        triple: chow::twist_chern(&point.triple, t, &point.x)?,
        ..point.clone()
    })
}

/// The orbit representative with `c1 ∈ {−1, 0}`.
pub fn normalize(point: &SpectrumPoint) -> Result<SpectrumPoint> {
    pic_act(point, normalizing_shift(point.triple.c1))
}

fn normalizing_shift(c1: i64) -> i64 {
    (-c1).div_euclid(2)
}

fn normalize_chern(c: &ChernData, x: &ThreefoldData) -> Result<ChernData> {
    if c.rank != 2 {
        return Err(Error::UnsupportedRank(c.rank));
    }
    chow::twist_chern(c, normalizing_shift(c.c1), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_component() {
        let r = moduli_report(1).unwrap();
        assert_eq!(r.dim_component, 19);
        assert_eq!(r.chern, ChernData::new(2, 1, 3, 5));
        assert_eq!(r.normalized.triple(), [-1, 3, 5]);
        assert_eq!(r.ext2, 0);
        assert_eq!(r.rational, Some(true));
        assert_eq!(moduli_report(0).unwrap().ext1, 5);
        assert_eq!(moduli_report(0).unwrap().chern, ChernData::new(2, 2, 2, 0));
    }

    #[test]
    fn degree_two_component() {
        let r = moduli_report(2).unwrap();
        assert_eq!((r.dim_component, r.family_dim), (45, 44));
        assert_eq!(r.ext2, 0);
        assert!(r.smooth_point);
        assert_eq!(r.rational, None);
    }

    #[test]
    fn ext2_both_ways() {
        let r = moduli_report(4).unwrap();
        assert_eq!(r.ext2, 6);
        assert_eq!(cohomology::bott_h(1, 0, 6) as i64 - 6 * 16 - 32 - 6, 6);
        for d in 3..=50 {
            assert_eq!(ext2(d), ext2_via_sections(d), "d = {d}");
        }
        assert_eq!(ext2_via_sections(2), -1);
        assert!(matches!(moduli_report(-1), Err(Error::DomainError(_))));
    }

    #[test]
    fn resolutions() {
        let r = global_gen_resolution(1).unwrap();
        assert_eq!(r.h0_fd, 6);
        assert_eq!(r.kernel.to_string(), "TX(-2) + O(-1)");
        let r = global_gen_resolution(0).unwrap();
        assert_eq!((r.h0_fd, r.middle_rank), (5, 5));
        assert_eq!(r.kernel.to_string(), "TX(-2)");
        assert_eq!(r.cokernel_chern, ChernData::new(2, 2, 2, 0));
        let r = global_gen_resolution(2).unwrap();
        assert_eq!(r.cokernel_chern, ChernData::new(2, 4, 10, 20));
    }

    #[test]
    fn curves() {
        let c = curve_family(1).unwrap();
        assert_eq!((c.degree, c.genus, c.points, c.family_dim), (5, 1, 5, 5));
        let c = curve_family(2).unwrap();
        assert_eq!((c.degree, c.genus, c.points), (10, 11, 20));
        let c = curve_family(3).unwrap();
        assert_eq!(3 * c.degree, 2 * c.genus - 2 - c.degree);
        assert_eq!(c.genus, 35);
        assert!(matches!(curve_family(0), Err(Error::DomainError(_))));
    }

    #[test]
    fn spectrum_examples() {
        let p3 = ThreefoldData::p3();
        assert_eq!(
            spectrum_point(&p3, 3).unwrap().triple,
            ChernData::new(2, 1, 3, 5)
        );
        let q = ThreefoldData::quintic();
        let s = spectrum_point(&q, 2).unwrap();
        assert_eq!(s.triple, ChernData::new(2, -2, 70, 340));
        assert_eq!(normalize(&s).unwrap().triple, ChernData::new(2, 0, 65, 340));
        assert!(matches!(
            spectrum_point(&p3, 1),
            Err(Error::HypothesisError(_))
        ));
        assert!(matches!(
            spectrum_point(&ThreefoldData::quadric(), 3),
            Err(Error::MissingInvariant(_))
        ));
    }

    #[test]
    fn pic_action() {
        let p3 = ThreefoldData::p3();
        let s = spectrum_point(&p3, 3).unwrap();
        assert_eq!(normalize(&s).unwrap().triple, ChernData::new(2, -1, 3, 5));
        let back = pic_act(&pic_act(&s, 4).unwrap(), -4).unwrap();
        assert_eq!(back, s);
        let mut bad = s.clone();
        bad.triple.rank = 3;
        assert!(matches!(pic_act(&bad, 1), Err(Error::UnsupportedRank(3))));
    }
}

//! Numerical intersection theory on a threefold with cyclic Picard group.
//!
//! Chern data are stored as four integers `(rank, c1, c2·H, deg c3)`; the
//! rational Chow ring is only needed as a carrier for Chern characters and
//! the Todd class.

mod class;
mod threefold;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use class::ChowClass;
pub use threefold::{TangentStability, ThreefoldData};

pub(crate) use class::{frac, is_integer, rat};

use crate::error::{Error, Result};

/// `(rank, c1, c2·H, deg c3)` of a coherent sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChernData {
    pub rank: u32,
    pub c1: i64,
    pub n2: i64,
    pub n3: i64,
}

impl ChernData {
    pub const fn new(rank: u32, c1: i64, n2: i64, n3: i64) -> Self {
        ChernData { rank, c1, n2, n3 }
    }

    pub const fn zero() -> Self {
        ChernData::new(0, 0, 0, 0)
    }

    pub const fn line(t: i64) -> Self {
        ChernData::new(1, t, 0, 0)
    }

    pub fn tangent(x: &ThreefoldData) -> Self {
        ChernData::new(3, x.c_x, x.c2_tx_h, x.c3_tx)
    }

    pub fn cotangent(x: &ThreefoldData) -> Self {
        ChernData::new(3, -x.c_x, x.c2_tx_h, -x.c3_tx)
    }

    /// `(c1, c2, c3)` without the rank.
    pub fn triple(&self) -> [i64; 3] {
        [self.c1, self.n2, self.n3]
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.rank, self.c1, self.n2, self.n3)
    }
}

fn to_i64(q: &BigRational, what: &str) -> Result<i64> {
    if !is_integer(q) {
        return Err(Error::NonIntegralChernClass(format!("{what} = {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or(Error::Overflow("Chern class"))
}

/// Chern character of `c`, stored so that `a2 · H^3 = (c1² h3 − 2 n2)/2` and
/// `a3 · H^3 = (c1³ h3 − 3 c1 n2 + 3 n3)/6`.
pub fn chern_to_ch(c: &ChernData, x: &ThreefoldData) -> ChowClass {
    let h3 = BigInt::from(x.h3);
    let c1 = BigInt::from(c.c1);
    let n2 = BigInt::from(c.n2);
    let n3 = BigInt::from(c.n3);
    let a2_deg = &c1 * &c1 * &h3 - BigInt::from(2) * &n2;
    let a3_deg = &c1 * &c1 * &c1 * &h3 - BigInt::from(3) * &c1 * &n2 + BigInt::from(3) * &n3;
    ChowClass::new(
        rat(c.rank as i64),
        rat(c.c1),
        BigRational::new(a2_deg, BigInt::from(2) * &h3),
        BigRational::new(a3_deg, BigInt::from(6) * &h3),
    )
}

/// Inverse of [`chern_to_ch`] via Newton's identities.
pub fn ch_to_chern(ch: &ChowClass, x: &ThreefoldData) -> Result<ChernData> {
    let h3 = rat(x.h3);
    let [a0, a1, a2, a3] = ch.coeffs();
    let rank = to_i64(a0, "rank")?;
    if rank < 0 {
        return Err(Error::NonIntegralChernClass(format!(
            "negative rank {rank}"
        )));
    }
    let c1 = to_i64(a1, "c1")?;
    let c1q = rat(c1);
    // c2 = (c1² − 2 ch2), c3 = 2 ch3 − c1³/3 + c1 c2, each paired against H or evaluated.
    let n2q = (&c1q * &c1q - rat(2) * a2) * &h3 / rat(2);
    let n2 = to_i64(&n2q, "c2·H")?;
    let n3q = rat(2) * a3 * &h3 - &c1q * &c1q * &c1q * &h3 / rat(3) + &c1q * rat(n2);
    let n3 = to_i64(&n3q, "c3")?;
    let rank = u32::try_from(rank).map_err(|_| Error::Overflow("rank"))?;
    Ok(ChernData::new(rank, c1, n2, n3))
}

/// `td(X) = 1 + c1/2 + (c1² + c2)/12 + c1 c2/24`.
pub fn todd(x: &ThreefoldData) -> ChowClass {
    let h3 = x.h3;
    let c1 = rat(x.c_x);
    let c2 = frac(x.c2_tx_h, h3);
    ChowClass::new(
        rat(1),
        &c1 / rat(2),
        (&c1 * &c1 + &c2) / rat(12),
        &c1 * &c2 / rat(24),
    )
}

/// Hirzebruch–Riemann–Roch on a Chern character.
pub fn hrr_chi_ch(ch: &ChowClass, x: &ThreefoldData) -> Result<i64> {
    let chi = (ch * &todd(x)).degree(x.h3);
    if !is_integer(&chi) {
        return Err(Error::NonIntegralChi(format!("chi = {chi} on {}", x.name)));
    }
    chi.to_integer()
        .to_i64()
        .ok_or(Error::Overflow("Euler characteristic"))
}

/// `χ(E) = Σ (−1)^i h^i(E)` by Hirzebruch–Riemann–Roch.
pub fn hrr_chi(c: &ChernData, x: &ThreefoldData) -> Result<i64> {
    hrr_chi_ch(&chern_to_ch(c, x), x)
}

/// `χ(E(t))` for any rank, computed on the Chern character.
pub fn hrr_chi_twisted(c: &ChernData, t: i64, x: &ThreefoldData) -> Result<i64> {
    hrr_chi_ch(&chern_to_ch(c, x).twist(t), x)
}

fn check_rank(c: &ChernData) -> Result<()> {
    if c.rank > 3 {
        return Err(Error::UnsupportedRank(c.rank));
    }
    Ok(())
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` and `k >= 0`.
fn binom(n: i64, k: u32) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..k as i64 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Chern data of `E ⊗ O(t)`.
///
/// `c_k(E(t)) = Σ_{i<=k} C(r−i, k−i) c_i t^{k−i}`; for rank 2 the degree of
/// `c3` is unchanged.
pub fn twist_chern(c: &ChernData, t: i64, x: &ThreefoldData) -> Result<ChernData> {
    check_rank(c)?;
    let r = c.rank as i64;
    let h3 = x.h3;
    let c1 = c.c1 + r * t;
    let n2 = c.n2 + binom(r - 1, 1) * t * c.c1 * h3 + binom(r, 2) * t * t * h3;
    let n3 = c.n3
        + binom(r - 2, 1) * t * c.n2
        + binom(r - 1, 2) * t * t * c.c1 * h3
        + binom(r, 3) * t * t * t * h3;
    Ok(ChernData::new(c.rank, c1, n2, n3))
}

/// Formal dual: negates the odd Chern classes. Correct for locally free
/// sheaves; for rank-2 reflexive sheaves use [`reflexive_dual_rank2`].
pub fn dual_chern(c: &ChernData) -> Result<ChernData> {
    check_rank(c)?;
    Ok(ChernData::new(c.rank, -c.c1, c.n2, -c.n3))
}

/// `E^∨ ≅ E(−c1)` for a rank-2 reflexive sheaf; `c3` is preserved.
pub fn reflexive_dual_rank2(c: &ChernData, x: &ThreefoldData) -> Result<ChernData> {
    if c.rank != 2 {
        return Err(Error::UnsupportedRank(c.rank));
    }
    twist_chern(c, -c.c1, x)
}

/// Chern data of the missing term of `0 → A → B → C → 0` from the other two.
pub fn ses_third(
    a: Option<&ChernData>,
    b: Option<&ChernData>,
    c: Option<&ChernData>,
    x: &ThreefoldData,
) -> Result<ChernData> {
    let ch = |d: &ChernData| chern_to_ch(d, x);
    match (a, b, c) {
        (Some(a), Some(b), None) => {
            if b.rank < a.rank {
                return Err(Error::RankError(format!(
                    "coker of rank {} -> rank {}",
                    a.rank, b.rank
                )));
            }
            ch_to_chern(&(ch(b) - ch(a)), x)
        }
        (None, Some(b), Some(c)) => {
            if b.rank < c.rank {
                return Err(Error::RankError(format!(
                    "ker of rank {} -> rank {}",
                    b.rank, c.rank
                )));
            }
            ch_to_chern(&(ch(b) - ch(c)), x)
        }
        (Some(a), None, Some(c)) => ch_to_chern(&(ch(a) + ch(c)), x),
        _ => Err(Error::ArityError(
            [a.is_some(), b.is_some(), c.is_some()]
                .iter()
                .filter(|p| **p)
                .count(),
        )),
    }
}

/// Whitney sum via additivity of the Chern character.
pub fn sum_chern(a: &ChernData, b: &ChernData, x: &ThreefoldData) -> Result<ChernData> {
    ses_third(Some(a), None, Some(b), x)
}

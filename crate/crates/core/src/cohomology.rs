//! Cohomology dimensions on `P^3` and a dimension chaser for long exact
//! sequences.
//!
//! On other threefolds only `h^1` of line bundles (under the standing
//! vanishing hypothesis) and Euler characteristics are answerable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chow::{self, ChernData, ThreefoldData};
use crate::error::{Error, Result};

/// A cohomology dimension that may only be known up to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DimEntry {
    Known(u64),
    Bounded(u64, u64),
    Unknown,
}

impl DimEntry {
    /// Normalizes `Bounded(n, n)` to `Known(n)`.
    pub fn bounded(lo: u64, hi: u64) -> Self {
        debug_assert!(lo <= hi);
        if lo == hi {
            DimEntry::Known(lo)
        } else {
            DimEntry::Bounded(lo, hi)
        }
    }

    pub fn known(&self) -> Option<u64> {
        match *self {
            DimEntry::Known(n) => Some(n),
            _ => None,
        }
    }

    /// `(lo, hi)` with `hi = None` meaning unbounded.
    pub fn range(&self) -> (u64, Option<u64>) {
        match *self {
            DimEntry::Known(n) => (n, Some(n)),
            DimEntry::Bounded(lo, hi) => (lo, Some(hi)),
            DimEntry::Unknown => (0, None),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        let (lo, hi) = self.range();
        lo <= n && hi.is_none_or(|hi| n <= hi)
    }

    fn from_range(lo: u64, hi: Option<u64>) -> Self {
        match hi {
            Some(hi) => DimEntry::bounded(lo, hi),
            None => DimEntry::Unknown,
        }
    }
}

impl std::ops::Add for DimEntry {
    type Output = DimEntry;
    fn add(self, rhs: DimEntry) -> DimEntry {
        let (a, b) = (self.range(), rhs.range());
        let hi = match (a.1, b.1) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        DimEntry::from_range(a.0 + b.0, hi)
    }
}

impl fmt::Display for DimEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimEntry::Known(n) => write!(f, "{n}"),
            DimEntry::Bounded(lo, hi) => write!(f, "[{lo},{hi}]"),
            DimEntry::Unknown => f.write_str("?"),
        }
    }
}

/// Cohomology dimensions `h^i(E(t))` for a range of twists, together with
/// the Euler characteristics used as cross-checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomTable {
    entries: BTreeMap<(u8, i64), DimEntry>,
    chern: Option<ChernData>,
    euler: BTreeMap<i64, i64>,
}

impl CohomTable {
    pub fn new() -> Self {
        CohomTable::default()
    }

    /// Empty table whose Euler characteristics over `twists` come from
    /// Riemann–Roch on `chern`.
    pub fn with_chern(
        chern: ChernData,
        x: &ThreefoldData,
        twists: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let mut table = CohomTable {
            chern: Some(chern),
            ..CohomTable::default()
        };
        for t in twists {
            table.euler.insert(t, chow::hrr_chi_twisted(&chern, t, x)?);
        }
        Ok(table)
    }

    /// Fills every `(i, t)` from `f`.
    pub fn from_fn(
        twists: impl IntoIterator<Item = i64>,
        mut f: impl FnMut(u8, i64) -> DimEntry,
    ) -> Self {
        let mut table = CohomTable::new();
        for t in twists {
            for i in 0..4 {
                table.set(i, t, f(i, t));
            }
        }
        table
    }

    pub fn chern(&self) -> Option<&ChernData> {
        self.chern.as_ref()
    }

    pub fn set_chern(&mut self, chern: Option<ChernData>) {
        self.chern = chern;
    }

    pub fn get(&self, i: u8, t: i64) -> DimEntry {
        self.entries
            .get(&(i, t))
            .copied()
            .unwrap_or(DimEntry::Unknown)
    }

    pub fn set(&mut self, i: u8, t: i64, entry: DimEntry) {
        assert!(i < 4, "cohomological degree {i} out of range");
        self.entries.insert((i, t), entry);
    }

    pub fn column(&self, t: i64) -> [DimEntry; 4] {
        [0, 1, 2, 3].map(|i| self.get(i, t))
    }

    pub fn chi(&self, t: i64) -> Option<i64> {
        self.euler.get(&t).copied()
    }

    pub fn set_chi(&mut self, t: i64, chi: i64) {
        self.euler.insert(t, chi);
    }

    /// Every twist that carries an entry or an Euler characteristic.
    pub fn twists(&self) -> BTreeSet<i64> {
        self.entries
            .keys()
            .map(|&(_, t)| t)
            .chain(self.euler.keys().copied())
            .collect()
    }

    /// Alternating sum of a column when all four entries are known.
    pub fn known_alternating_sum(&self, t: i64) -> Option<i64> {
        let col = self.column(t);
        let mut sum = 0i64;
        for (i, e) in col.iter().enumerate() {
            let n = e.known()? as i64;
            sum += if i % 2 == 0 { n } else { -n };
        }
        Some(sum)
    }

    /// `h^i(E(t + shift))` placed at twist `t`, for all stored twists.
    pub fn shifted(&self, shift: i64) -> CohomTable {
        CohomTable {
            entries: self
                .entries
                .iter()
                .map(|(&(i, t), &e)| ((i, t - shift), e))
                .collect(),
            chern: None,
            euler: self.euler.iter().map(|(&t, &c)| (t - shift, c)).collect(),
        }
    }

    /// Restricts to the given twists.
    pub fn restricted(&self, twists: &BTreeSet<i64>) -> CohomTable {
        CohomTable {
            entries: self
                .entries
                .iter()
                .filter(|((_, t), _)| twists.contains(t))
                .map(|(&k, &e)| (k, e))
                .collect(),
            chern: self.chern,
            euler: self
                .euler
                .iter()
                .filter(|(t, _)| twists.contains(t))
                .map(|(&t, &c)| (t, c))
                .collect(),
        }
    }

    /// Entrywise sum, for direct sums of sheaves.
    pub fn direct_sum(&self, other: &CohomTable) -> CohomTable {
        let mut out = CohomTable::new();
        for t in self.twists().union(&other.twists()) {
            for i in 0..4 {
                out.set(i, *t, self.get(i, *t) + other.get(i, *t));
            }
            if let (Some(a), Some(b)) = (self.chi(*t), other.chi(*t)) {
                out.set_chi(*t, a + b);
            }
        }
        out
    }
}

fn binom_u(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `C(n, 3)` clamped to zero for `n < 3`: `h^0(O(n − 3))` on `P^3`.
pub fn binom3_plus(n: i64) -> u64 {
    binom_u(n, 3)
}

/// `h^q(P^3, Ω^p(t))` by the Bott formula.
pub fn bott_h(p: u8, q: u8, t: i64) -> u64 {
    assert!(p <= 3 && q <= 3, "bott_h({p}, {q}, {t}) out of range");
    let (p, q) = (p as i64, q as i64);
    if q == 0 && t > p {
        binom_u(t + 3 - p, t) * binom_u(t - 1, p)
    } else if q == p && t == 0 {
        1
    } else if q == 3 && t < p - 3 {
        binom_u(-t + p, -t) * binom_u(-t - 1, 3 - p)
    } else {
        0
    }
}

fn require_p3(x: &ThreefoldData, what: &str) -> Result<()> {
    if x.is_p3() {
        Ok(())
    } else {
        Err(Error::NotComputable(format!("{what} on {}", x.name)))
    }
}

/// `h^i(O_X(t))`. Exact on `P^3`; elsewhere only `h^1`, which vanishes under
/// the standing hypothesis.
pub fn line_h(x: &ThreefoldData, i: u8, t: i64) -> Result<u64> {
    if x.is_p3() {
        return Ok(bott_h(0, i, t));
    }
    if i == 1 && x.h1_line_vanishing {
        return Ok(0);
    }
    Err(Error::NotComputable(format!("h^{i}(O({t})) on {}", x.name)))
}

/// `h^q(T_{P^3}(t)) = h^{3−q}(Ω¹(−t−4))`.
pub fn serre_tangent_h(x: &ThreefoldData, q: u8, t: i64) -> Result<u64> {
    require_p3(x, "tangent cohomology")?;
    Ok(bott_h(1, 3 - q, -t - 4))
}

/// Table of `h^i(O(base + t))` on `P^3`.
pub fn line_table(base: i64, twists: impl IntoIterator<Item = i64>) -> CohomTable {
    let x = ThreefoldData::p3();
    let twists: Vec<i64> = twists.into_iter().collect();
    let mut table = CohomTable::from_fn(twists.iter().copied(), |i, t| {
        DimEntry::Known(bott_h(0, i, base + t))
    });
    for &t in &twists {
        table.set_chi(
            t,
            chow::hrr_chi_twisted(&ChernData::line(base), t, &x).expect("P^3 line bundles"),
        );
    }
    table.set_chern(Some(ChernData::line(base)));
    table
}

/// Table of `h^i(Ω^p(base + t))` on `P^3`.
pub fn omega_table(p: u8, base: i64, twists: impl IntoIterator<Item = i64>) -> CohomTable {
    let twists: Vec<i64> = twists.into_iter().collect();
    let mut table = CohomTable::from_fn(twists.iter().copied(), |i, t| {
        DimEntry::Known(bott_h(p, i, base + t))
    });
    for &t in &twists {
        let chi: i64 = (0..4u8)
            .map(|i| {
                let h = bott_h(p, i, base + t) as i64;
                if i % 2 == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum();
        table.set_chi(t, chi);
    }
    table
}

/// Table of `h^i(T_{P^3}(base + t))`.
pub fn tangent_table(base: i64, twists: impl IntoIterator<Item = i64>) -> CohomTable {
    omega_table(2, base + 4, twists)
}

// ---- long exact sequence chaser ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Var {
    lo: i128,
    hi: Option<i128>,
}

struct Linear {
    terms: Vec<(i128, usize)>,
    rhs: i128,
}

/// Narrows the intervals in `vars` to the fixed point of `eqs`. Returns an
/// error when some interval becomes empty.
fn propagate(vars: &mut [Var], eqs: &[Linear]) -> std::result::Result<(), String> {
    const MAX_ROUNDS: usize = 100_000;
    for _ in 0..MAX_ROUNDS {
        let mut changed = false;
        for eq in eqs {
            for (j, &(cj, vj)) in eq.terms.iter().enumerate() {
                // range of Σ_{i≠j} c_i x_i; None is an infinite bound
                let mut min = Some(0i128);
                let mut max = Some(0i128);
                for (i, &(ci, vi)) in eq.terms.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let v = vars[vi];
                    let (tmin, tmax) = if ci > 0 {
                        (Some(ci * v.lo), v.hi.map(|h| ci * h))
                    } else {
                        (v.hi.map(|h| ci * h), Some(ci * v.lo))
                    };
                    min = min.zip(tmin).map(|(a, b)| a + b);
                    max = max.zip(tmax).map(|(a, b)| a + b);
                }
                // c_j x_j ∈ [rhs − max, rhs − min]
                let (lo, hi) = if cj > 0 {
                    (max.map(|m| eq.rhs - m), min.map(|m| eq.rhs - m))
                } else {
                    (min.map(|m| m - eq.rhs), max.map(|m| m - eq.rhs))
                };
                let var = &mut vars[vj];
                if let Some(lo) = lo {
                    if lo > var.lo {
                        var.lo = lo;
                        changed = true;
                    }
                }
                if let Some(hi) = hi {
                    if var.hi.is_none_or(|h| hi < h) {
                        var.hi = Some(hi);
                        changed = true;
                    }
                }
                if var.hi.is_some_and(|h| h < var.lo) {
                    return Err(format!("empty interval [{}, {}]", var.lo, var.hi.unwrap()));
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
    Err("propagation does not converge".into())
}

/// Propagates dimension constraints through the long exact cohomology
/// sequence of `0 → A → B → C → 0`, one twist at a time.
///
/// Unknown map ranks are kept as interval variables, so every output is a
/// consequence of exactness and the Euler characteristics alone; entries
/// that depend on an undetermined connecting map stay `Bounded`. Known
/// entries are never widened, and running the chase on its own output
/// changes nothing.
pub fn les_chase(
    a: &CohomTable,
    b: &CohomTable,
    c: &CohomTable,
) -> Result<(CohomTable, CohomTable, CohomTable)> {
    let tables = [a, b, c];
    let mut out = [a.clone(), b.clone(), c.clone()];
    let twists: BTreeSet<i64> = tables.iter().flat_map(|t| t.twists()).collect();

    for &t in &twists {
        // dims: index 3·i + s for H^i of term s; ranks follow at 12 + k for
        // the map out of dims[k].
        let mut vars = Vec::with_capacity(23);
        for i in 0..4u8 {
            for table in &tables {
                let (lo, hi) = table.get(i, t).range();
                vars.push(Var {
                    lo: lo as i128,
                    hi: hi.map(|h| h as i128),
                });
            }
        }
        for _ in 0..11 {
            vars.push(Var { lo: 0, hi: None });
        }
        let rank = |k: usize| 12 + k;
        let mut eqs = Vec::new();
        for k in 0..12 {
            let mut terms = vec![(1, k)];
            if k > 0 {
                terms.push((-1, rank(k - 1)));
            }
            if k < 11 {
                terms.push((-1, rank(k)));
            }
            eqs.push(Linear { terms, rhs: 0 });
        }
        for (s, table) in tables.iter().enumerate() {
            if let Some(chi) = table.chi(t) {
                let terms = (0..4)
                    .map(|i| (if i % 2 == 0 { 1 } else { -1 }, 3 * i + s))
                    .collect();
                eqs.push(Linear {
                    terms,
                    rhs: chi as i128,
                });
            }
        }
        propagate(&mut vars, &eqs).map_err(|e| Error::Inconsistent(format!("twist {t}: {e}")))?;

        for i in 0..4u8 {
            for (s, table) in out.iter_mut().enumerate() {
                let v = vars[3 * i as usize + s];
                let entry = DimEntry::from_range(v.lo as u64, v.hi.map(|h| h as u64));
                table.set(i, t, entry);
            }
        }
    }
    let [a, b, c] = out;
    Ok((a, b, c))
}

/// The three tables of `0 → O(−2d) → Ω¹(2−d) → F → 0` on `P^3` over
/// `twists`, after chasing.
pub fn sqc_f_chase(
    d: i64,
    twists: impl IntoIterator<Item = i64> + Clone,
) -> Result<(CohomTable, CohomTable, CohomTable)> {
    let x = ThreefoldData::p3();
    let sub = ChernData::line(-2 * d);
    let ambient = chow::twist_chern(&ChernData::cotangent(&x), 2 - d, &x)?;
    let f = chow::ses_third(Some(&sub), Some(&ambient), None, &x)?;
    let a = line_table(-2 * d, twists.clone());
    let b = omega_table(1, 2 - d, twists.clone());
    let c = CohomTable::with_chern(f, &x, twists)?;
    les_chase(&a, &b, &c)
}

/// Cohomology of `F(p)` for the tangent sheaf `F` of a generic degree-`d`
/// distribution on `P^3`, i.e. the cokernel of `O(−2d) → Ω¹(2−d)`.
///
/// Closed forms cover `h^0`, `h^1` for every `p` and `h^2`, `h^3` for
/// `p >= d − 4`; below that the last two come from the chaser.
pub fn generic_dist_cohom(d: i64, p: i64) -> Result<[DimEntry; 4]> {
    if d < 0 {
        return Err(Error::DomainError(format!("degree {d} is negative")));
    }
    let h0 = bott_h(1, 0, p + 2 - d).saturating_sub(binom3_plus(p - 2 * d + 3));
    let h1 = u64::from(p == d - 2);
    if p >= d - 4 {
        let h2 = binom3_plus(2 * d - p - 1);
        return Ok([
            DimEntry::Known(h0),
            DimEntry::Known(h1),
            DimEntry::Known(h2),
            DimEntry::Known(0),
        ]);
    }
    let (_, _, f) = sqc_f_chase(d, [p])?;
    Ok([
        DimEntry::Known(h0),
        DimEntry::Known(h1),
        f.get(2, p),
        f.get(3, p),
    ])
}

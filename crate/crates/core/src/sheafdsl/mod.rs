//! A small expression language for sheaves on a threefold.
//!
//! Expressions are built from `O(t)`, `TX`, `Omega1` and declared atoms by
//! twisting, dualizing, direct sums and kernels/cokernels of declared exact
//! sequences. The maps in those sequences are never represented; only the
//! Chern data and the induced long exact sequences are used.

mod ast;
mod parser;

use std::collections::{BTreeMap, BTreeSet};

pub use ast::{Atom, SheafExpr};
pub use parser::{is_valid_identifier, parse, parse_batch};

use crate::chow::{self, ChernData, ThreefoldData};
use crate::cohomology::{self, CohomTable, DimEntry};
use crate::error::{Error, Result};

/// A user-declared atom with known Chern data and optional cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDecl {
    pub id: String,
    pub chern: ChernData,
    pub hints: Option<CohomTable>,
}

impl NamedDecl {
    pub fn new(id: impl Into<String>, chern: ChernData) -> Result<Self> {
        let id = id.into();
        if !is_valid_identifier(&id) {
            return Err(Error::SyntaxError {
                offset: 0,
                message: format!("`{id}` is not a valid identifier"),
            });
        }
        if chern.rank > 3 {
            return Err(Error::UnsupportedRank(chern.rank));
        }
        Ok(NamedDecl {
            id,
            chern,
            hints: None,
        })
    }

    pub fn with_hints(mut self, hints: CohomTable) -> Self {
        self.hints = Some(hints);
        self
    }
}

/// Declared atoms, keyed by identifier.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env {
    decls: BTreeMap<String, NamedDecl>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn declare(mut self, decl: NamedDecl) -> Self {
        self.decls.insert(decl.id.clone(), decl);
        self
    }

    pub fn get(&self, id: &str) -> Result<&NamedDecl> {
        self.decls
            .get(id)
            .ok_or_else(|| Error::UnknownIdentifier(id.to_string()))
    }
}

/// Chern data of an expression, evaluated node by node.
pub fn chern_of(e: &SheafExpr, x: &ThreefoldData, env: &Env) -> Result<ChernData> {
    match e {
        SheafExpr::Atom(Atom::Line(t)) => Ok(ChernData::line(*t)),
        SheafExpr::Atom(Atom::Tangent) => Ok(ChernData::tangent(x)),
        SheafExpr::Atom(Atom::Cotangent) => Ok(ChernData::cotangent(x)),
        SheafExpr::Atom(Atom::Named(id)) => Ok(env.get(id)?.chern),
        SheafExpr::Twist(inner, t) => chow::twist_chern(&chern_of(inner, x, env)?, *t, x),
        SheafExpr::Dual {
            inner,
            reflexive_rank2,
        } => {
            let c = chern_of(inner, x, env)?;
            if *reflexive_rank2 {
                chow::reflexive_dual_rank2(&c, x)
            } else {
                chow::dual_chern(&c)
            }
        }
        SheafExpr::Sum(a, b) => chow::sum_chern(&chern_of(a, x, env)?, &chern_of(b, x, env)?, x),
        SheafExpr::Coker { sub, ambient } => {
            let (a, b) = (chern_of(sub, x, env)?, chern_of(ambient, x, env)?);
            chow::ses_third(Some(&a), Some(&b), None, x)
        }
        SheafExpr::Ker { ambient, quotient } => {
            let (b, c) = (chern_of(ambient, x, env)?, chern_of(quotient, x, env)?);
            chow::ses_third(None, Some(&b), Some(&c), x)
        }
    }
}

/// Cohomology table of `e(t)` for `t` in `lo..=hi` on `P^3`.
///
/// Atoms come from the Bott formula, cokernels and kernels from the long
/// exact sequence chaser. Every column carries the Riemann–Roch Euler
/// characteristic, except under a formal `dual` of a sheaf that is not
/// known to be locally free.
pub fn cohom_of(
    e: &SheafExpr,
    x: &ThreefoldData,
    env: &Env,
    lo: i64,
    hi: i64,
) -> Result<CohomTable> {
    if !x.is_p3() {
        return Err(Error::NotComputable(format!(
            "cohomology tables on {}",
            x.name
        )));
    }
    if lo > hi {
        return Err(Error::DomainError(format!("empty twist range {lo}..{hi}")));
    }
    let mut table = eval_table(e, x, env, lo, hi)?;
    if let Ok(c) = chern_of(e, x, env) {
        table.set_chern(Some(c));
    }
    Ok(table)
}

fn eval_table(e: &SheafExpr, x: &ThreefoldData, env: &Env, lo: i64, hi: i64) -> Result<CohomTable> {
    let range = lo..=hi;
    match e {
        SheafExpr::Atom(Atom::Line(t)) => Ok(cohomology::line_table(*t, range)),
        SheafExpr::Atom(Atom::Tangent) => Ok(cohomology::tangent_table(0, range)),
        SheafExpr::Atom(Atom::Cotangent) => Ok(cohomology::omega_table(1, 0, range)),
        SheafExpr::Atom(Atom::Named(id)) => {
            let decl = env.get(id)?;
            let mut table = CohomTable::with_chern(decl.chern, x, range.clone())?;
            if let Some(hints) = &decl.hints {
                for t in range {
                    for i in 0..4 {
                        if hints.get(i, t) != DimEntry::Unknown {
                            table.set(i, t, hints.get(i, t));
                        }
                    }
                }
            }
            Ok(table)
        }
        SheafExpr::Twist(inner, k) => {
            let child = eval_table(inner, x, env, lo + k, hi + k)?;
            Ok(child.shifted(*k))
        }
        SheafExpr::Dual {
            inner,
            reflexive_rank2: true,
        } => {
            let c = chern_of(inner, x, env)?;
            if c.rank != 2 {
                return Err(Error::UnsupportedRank(c.rank));
            }
            let child = eval_table(inner, x, env, lo - c.c1, hi - c.c1)?;
            Ok(child.shifted(-c.c1))
        }
        SheafExpr::Dual {
            inner,
            reflexive_rank2: false,
        } => {
            chern_of(e, x, env)?;
            if !inner.is_locally_free() {
                return Ok(CohomTable::from_fn(range, |_, _| DimEntry::Unknown));
            }
            // h^i(E^∨(t)) = h^{3−i}(E(−t−4))
            let child = eval_table(inner, x, env, -hi - 4, -lo - 4)?;
            let mut table = CohomTable::from_fn(range.clone(), |i, t| child.get(3 - i, -t - 4));
            for t in range {
                if let Some(chi) = child.chi(-t - 4) {
                    table.set_chi(t, -chi);
                }
            }
            Ok(table)
        }
        SheafExpr::Sum(a, b) => {
            let ta = eval_table(a, x, env, lo, hi)?;
            let tb = eval_table(b, x, env, lo, hi)?;
            Ok(ta.direct_sum(&tb))
        }
        SheafExpr::Coker { sub, ambient } => {
            let c = chern_of(e, x, env)?;
            let ta = eval_table(sub, x, env, lo, hi)?;
            let tb = eval_table(ambient, x, env, lo, hi)?;
            let tc = CohomTable::with_chern(c, x, range)?;
            let (_, _, tc) = cohomology::les_chase(&ta, &tb, &tc)?;
            Ok(tc)
        }
        SheafExpr::Ker { ambient, quotient } => {
            let k = chern_of(e, x, env)?;
            let tb = eval_table(ambient, x, env, lo, hi)?;
            let tc = eval_table(quotient, x, env, lo, hi)?;
            let ta = CohomTable::with_chern(k, x, range)?;
            let (ta, _, _) = cohomology::les_chase(&ta, &tb, &tc)?;
            Ok(ta)
        }
    }
}

/// Twists in `lo..=hi` whose column is not fully determined.
pub fn undetermined_twists(table: &CohomTable, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi)
        .filter(|&t| table.column(t).iter().any(|e| e.known().is_none()))
        .collect()
}

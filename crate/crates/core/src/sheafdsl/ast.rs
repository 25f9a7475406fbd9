use std::fmt;

/// Leaves of a sheaf expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `O(t)`
    Line(i64),
    /// `TX`
    Tangent,
    /// `Omega1`
    Cotangent,
    /// A user-declared sheaf, see [`super::NamedDecl`].
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SheafExpr {
    Atom(Atom),
    Twist(Box<SheafExpr>, i64),
    /// `dual(e)` applies the locally-free rule; `rdual(e)` uses
    /// `E^∨ ≅ E(−c1)` for rank-2 reflexive sheaves.
    Dual {
        inner: Box<SheafExpr>,
        reflexive_rank2: bool,
    },
    Sum(Box<SheafExpr>, Box<SheafExpr>),
    /// Cokernel of a declared injection `sub → ambient`.
    Coker {
        sub: Box<SheafExpr>,
        ambient: Box<SheafExpr>,
    },
    /// Kernel of a declared surjection `ambient → quotient`.
    Ker {
        ambient: Box<SheafExpr>,
        quotient: Box<SheafExpr>,
    },
}

impl SheafExpr {
    pub fn line(t: i64) -> Self {
        SheafExpr::Atom(Atom::Line(t))
    }

    pub fn tangent() -> Self {
        SheafExpr::Atom(Atom::Tangent)
    }

    pub fn cotangent() -> Self {
        SheafExpr::Atom(Atom::Cotangent)
    }

    pub fn named(id: impl Into<String>) -> Self {
        SheafExpr::Atom(Atom::Named(id.into()))
    }

    pub fn twist(self, t: i64) -> Self {
        SheafExpr::Twist(Box::new(self), t)
    }

    pub fn dual(self) -> Self {
        SheafExpr::Dual {
            inner: Box::new(self),
            reflexive_rank2: false,
        }
    }

    pub fn rdual(self) -> Self {
        SheafExpr::Dual {
            inner: Box::new(self),
            reflexive_rank2: true,
        }
    }

    pub fn sum(self, other: SheafExpr) -> Self {
        SheafExpr::Sum(Box::new(self), Box::new(other))
    }

    pub fn coker(sub: SheafExpr, ambient: SheafExpr) -> Self {
        SheafExpr::Coker {
            sub: Box::new(sub),
            ambient: Box::new(ambient),
        }
    }

    pub fn ker(ambient: SheafExpr, quotient: SheafExpr) -> Self {
        SheafExpr::Ker {
            ambient: Box::new(ambient),
            quotient: Box::new(quotient),
        }
    }

    /// `coker(O(−2d) → Ω¹(2−d))`, the tangent sheaf of a generic degree-`d`
    /// distribution on `P^3`.
    pub fn generic_distribution(d: i64) -> Self {
        SheafExpr::coker(SheafExpr::line(-2 * d), SheafExpr::cotangent().twist(2 - d))
    }

    /// Whether the expression is built only from operations that keep
    /// sheaves locally free. Cokernels and named atoms are not assumed to be.
    pub fn is_locally_free(&self) -> bool {
        match self {
            SheafExpr::Atom(Atom::Named(_)) => false,
            SheafExpr::Atom(_) => true,
            SheafExpr::Twist(e, _) => e.is_locally_free(),
            SheafExpr::Dual { inner, .. } => inner.is_locally_free(),
            SheafExpr::Sum(a, b) => a.is_locally_free() && b.is_locally_free(),
            SheafExpr::Coker { .. } => false,
            SheafExpr::Ker { ambient, quotient } => {
                ambient.is_locally_free() && quotient.is_locally_free()
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Line(t) => write!(f, "O({t})"),
            Atom::Tangent => f.write_str("TX"),
            Atom::Cotangent => f.write_str("Omega1"),
            Atom::Named(id) => f.write_str(id),
        }
    }
}

/// Pretty-printer; its output parses back to the same tree.
impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::Atom(a) => write!(f, "{a}"),
            SheafExpr::Twist(inner, t) => match inner.as_ref() {
                SheafExpr::Atom(a @ (Atom::Tangent | Atom::Cotangent)) => write!(f, "{a}({t})"),
                e => write!(f, "twist({e}, {t})"),
            },
            SheafExpr::Dual {
                inner,
                reflexive_rank2,
            } => {
                let name = if *reflexive_rank2 { "rdual" } else { "dual" };
                write!(f, "{name}({inner})")
            }
            SheafExpr::Sum(a, b) => match b.as_ref() {
                SheafExpr::Sum(..) => write!(f, "{a} + ({b})"),
                _ => write!(f, "{a} + {b}"),
            },
            SheafExpr::Coker { sub, ambient } => write!(f, "coker({sub} -> {ambient})"),
            SheafExpr::Ker { ambient, quotient } => write!(f, "ker({ambient} -> {quotient})"),
        }
    }
}

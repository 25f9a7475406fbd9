use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What is known about slope stability of the tangent bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TangentStability {
    Stable,
    Semistable,
    Unknown,
}

impl fmt::Display for TangentStability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangentStability::Stable => "stable",
            TangentStability::Semistable => "semistable",
            TangentStability::Unknown => "unknown",
        })
    }
}

/// Numerical profile of a smooth projective threefold `X` with `Pic(X) = Z·H`.
///
/// First Chern classes are integers (multiples of `H`), second Chern classes
/// are recorded by their degree against `H`, third Chern classes by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreefoldData {
    pub name: String,
    /// `H^3`.
    pub h3: i64,
    /// `c1(TX) = cX · H`.
    #[serde(rename = "cX")]
    pub c_x: i64,
    /// `c2(TX) · H`.
    #[serde(rename = "c2TX_H")]
    pub c2_tx_h: i64,
    /// `deg c3(TX)`, the topological Euler characteristic.
    #[serde(rename = "c3TX")]
    pub c3_tx: i64,
    /// Smallest `t` with `H^0(Ω¹(t)) ≠ 0`.
    #[serde(rename = "rhoX")]
    pub rho_x: Option<i64>,
    /// Smallest `t` with `Ω¹(t)` globally generated.
    #[serde(rename = "gammaX")]
    pub gamma_x: Option<i64>,
    pub tx_stable: TangentStability,
    /// Whether `H^1(O_X(t)) = 0` for every `t`.
    pub h1_line_vanishing: bool,
}

impl ThreefoldData {
    pub fn p3() -> Self {
        ThreefoldData {
            name: "p3".into(),
            h3: 1,
            c_x: 4,
            c2_tx_h: 6,
            c3_tx: 4,
            rho_x: Some(2),
            gamma_x: Some(2),
            tx_stable: TangentStability::Stable,
            h1_line_vanishing: true,
        }
    }

    /// Smooth quintic hypersurface in P^4.
    pub fn quintic() -> Self {
        ThreefoldData {
            name: "quintic".into(),
            h3: 5,
            c_x: 0,
            c2_tx_h: 50,
            c3_tx: -200,
            rho_x: Some(2),
            gamma_x: Some(2),
            tx_stable: TangentStability::Stable,
            h1_line_vanishing: true,
        }
    }

    /// Smooth quadric hypersurface in P^4.
    pub fn quadric() -> Self {
        ThreefoldData {
            name: "quadric".into(),
            h3: 2,
            c_x: 3,
            c2_tx_h: 8,
            c3_tx: 4,
            rho_x: None,
            gamma_x: None,
            tx_stable: TangentStability::Stable,
            h1_line_vanishing: true,
        }
    }

    pub fn presets() -> Vec<ThreefoldData> {
        vec![Self::p3(), Self::quintic(), Self::quadric()]
    }

    pub fn preset(name: &str) -> Option<ThreefoldData> {
        Self::presets().into_iter().find(|x| x.name == name)
    }

    /// True when the numerical profile is that of `P^3` with `H` the hyperplane.
    /// Cohomology beyond Euler characteristics is only offered there.
    pub fn is_p3(&self) -> bool {
        self.h3 == 1 && self.c_x == 4 && self.c2_tx_h == 6 && self.c3_tx == 4
    }

    pub fn rho(&self) -> Result<i64> {
        self.rho_x.ok_or(Error::MissingInvariant("rhoX"))
    }

    pub fn gamma(&self) -> Result<i64> {
        self.gamma_x.ok_or(Error::MissingInvariant("gammaX"))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidThreefold(format!("{}: {msg}", self.name)));
        if self.h3 < 1 {
            return bad(format!("h3 = {} must be positive", self.h3));
        }
        if let Some(rho) = self.rho_x {
            if rho < 1 {
                return bad(format!("rhoX = {rho} must be at least 1"));
            }
            if let Some(gamma) = self.gamma_x {
                if gamma < rho {
                    return bad(format!("gammaX = {gamma} is below rhoX = {rho}"));
                }
            }
            match self.tx_stable {
                TangentStability::Stable if self.c_x >= 3 * rho => {
                    return bad(format!(
                        "stable TX needs cX < 3·rhoX, got cX = {}",
                        self.c_x
                    ));
                }
                TangentStability::Semistable if self.c_x > 3 * rho => {
                    return bad(format!(
                        "semistable TX needs cX <= 3·rhoX, got cX = {}",
                        self.c_x
                    ));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let x: ThreefoldData =
            serde_json::from_str(src).map_err(|e| Error::InvalidThreefold(e.to_string()))?;
        x.validate()?;
        Ok(x)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidThreefold(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("threefold data serializes")
    }
}

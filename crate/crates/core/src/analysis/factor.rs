use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{perm_image, phi, GroupSpec, PermMap, Relation};

/// A homomorphism out of the group, used to test whether a relation holds
/// in a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetMap {
    PiK,
    PiP,
    /// Counting map for crossing type `t0`.
    Phi(usize),
}

impl FromStr for TargetMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "piK" => Ok(TargetMap::PiK),
            "piP" => Ok(TargetMap::PiP),
            "phi" => Ok(TargetMap::Phi(1)),
            _ => Err(Error::Invalid(format!("unknown map `{}`", s))),
        }
    }
}

impl fmt::Display for TargetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetMap::PiK => f.write_str("piK"),
            TargetMap::PiP => f.write_str("piP"),
            TargetMap::Phi(t0) => write!(f, "phi[t0={}]", t0),
        }
    }
}

/// Images of both sides of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub tag: String,
    pub map: String,
    /// Both sides have the same image, so the map factors through the
    /// quotient by this relation.
    pub kills: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Evaluates `map` on both sides of `rel`.
pub fn factor_check(rel: &Relation, map: TargetMap, spec: &GroupSpec) -> Result<FactorCheck> {
    spec.check_word(&rel.lhs)?;
    spec.check_word(&rel.rhs)?;
    let (lhs, rhs, kills) = match map {
        TargetMap::PiK | TargetMap::PiP => {
            let pm = if map == TargetMap::PiK {
                PermMap::PiK
            } else {
                PermMap::PiP
            };
            let (a, b) = (
                perm_image(&rel.lhs, pm, spec.n),
                perm_image(&rel.rhs, pm, spec.n),
            );
            (a.to_string(), b.to_string(), a == b)
        }
        TargetMap::Phi(t0) => {
            let (a, b) = (phi(&rel.lhs, t0, spec)?, phi(&rel.rhs, t0, spec)?);
            (a.to_string(), b.to_string(), a == b)
        }
    };
    Ok(FactorCheck {
        tag: rel.tag.clone(),
        map: map.to_string(),
        kills,
        lhs,
        rhs,
    })
}

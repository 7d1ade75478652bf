//! Verification engines: relation checking, constraint generation and
//! finite-field scans, irreducibility tests and the homomorphism checks
//! behind the forbidden moves.

mod constraints;
mod factor;
mod irreducibility;
mod modp;
mod verify;

use serde::Serialize;

pub use constraints::{
    generate_constraints, generic_blocks, ConstraintSystem, Equation, Preset, Substitution,
};
pub use factor::{factor_check, FactorCheck, TargetMap};
pub use irreducibility::{
    burnside_dim, criterion_agreement, epsilon4_row_readings, invariant_check,
    reducibility_criterion, spin, Agreement, Side, Verdict, Witness,
};
pub use modp::{
    antidiagonal_scan, classify_rho_block, enumerate_solutions_mod_p, AntidiagonalScan,
    ModPSolutions,
};
pub use verify::{verify_relations, Mode, VerificationReport};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A tagged check with optional structured details.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub tag: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Check {
    pub fn new(tag: impl Into<String>, ok: bool) -> Self {
        Check {
            tag: tag.into(),
            status: Status::from_bool(ok),
            details: None,
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[cfg(test)]
mod tests;

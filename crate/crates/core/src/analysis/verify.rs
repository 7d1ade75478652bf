use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::Check;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentations::{Generator, Relation, Word};
use crate::representations::LocalRep;
use crate::{GaussianRational, RatFunc};

/// Largest numerator and denominator drawn for sample points.
const SAMPLE_BOUND: i64 = 1_000_000;
/// Rejection budget per point before giving up.
const MAX_REJECTIONS: usize = 1000;

/// How relations are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Full expansion of every residue entry.
    Symbolic,
    /// Exact evaluation at `points` seeded random parameter values. Advisory.
    Sampled { seed: u64, points: usize },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled { .. } => "sampled",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Mode::Symbolic => None,
            Mode::Sampled { seed, .. } => Some(*seed),
        }
    }
}

/// Per-relation outcomes, in input order.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub family: String,
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }
}

fn residue_details(lhs: &Matrix<RatFunc>, rhs: &Matrix<RatFunc>) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            let d = lhs.get(r, c).clone() - rhs.get(r, c);
            if !d.is_zero() {
                out.push(json!({ "entry": [r + 1, c + 1], "residue": d.render() }));
            }
        }
    }
    out
}

fn check_symbolic(rep: &LocalRep, rel: &Relation) -> Result<Check> {
    let lhs = rep.eval_word(&rel.lhs)?;
    let rhs = rep.eval_word(&rel.rhs)?;
    if lhs == rhs {
        return Ok(Check::new(rel.tag.clone(), true));
    }
    let residue = residue_details(&lhs, &rhs);
    Ok(Check::new(rel.tag.clone(), false)
        .with_details(json!({ "relation": rel.to_string(), "residue": residue })))
}

fn random_value(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let num = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let den = rng.gen_range(1..=SAMPLE_BOUND);
        if num != 0 {
            return GaussianRational::real(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
    }
}

/// A point where every side condition is defined and nonzero.
fn sample_point(
    rep: &LocalRep,
    rng: &mut ChaCha8Rng,
) -> Result<BTreeMap<String, GaussianRational>> {
    let free: Vec<&String> = rep
        .params
        .iter()
        .filter(|p| rep.assignment.as_ref().is_none_or(|a| !a.contains_key(*p)))
        .collect();
    for _ in 0..MAX_REJECTIONS {
        let point: BTreeMap<String, GaussianRational> = free
            .iter()
            .map(|p| ((*p).clone(), random_value(rng)))
            .collect();
        let lookup = |name: &str| point.get(name).cloned();
        let ok = rep
            .side_conditions
            .iter()
            .all(|c| c.expr.evaluate(&lookup).is_ok_and(|v| !v.is_zero()));
        if ok {
            return Ok(point);
        }
    }
    Err(Error::Invalid("no admissible sample point found".into()))
}

struct NumericBlocks {
    rho: Matrix<GaussianRational>,
    rho_inv: Matrix<GaussianRational>,
    sigma: Vec<Matrix<GaussianRational>>,
    sigma_inv: Vec<Matrix<GaussianRational>>,
}

impl NumericBlocks {
    fn at(rep: &LocalRep, point: &BTreeMap<String, GaussianRational>) -> Result<Self> {
        let lookup = |name: &str| {
            point
                .get(name)
                .or_else(|| rep.assignment.as_ref().and_then(|a| a.get(name)))
                .cloned()
        };
        let ev = |m: &Matrix<RatFunc>| m.try_map(|x| x.evaluate(&lookup));
        let rho = ev(&rep.rho_block)?;
        let sigma: Vec<_> = rep.sigma_blocks.iter().map(ev).collect::<Result<_>>()?;
        Ok(NumericBlocks {
            rho_inv: rho.inverse()?,
            sigma_inv: sigma.iter().map(Matrix::inverse).collect::<Result<_>>()?,
            rho,
            sigma,
        })
    }

    fn eval(&self, rep: &LocalRep, w: &Word) -> Result<Matrix<GaussianRational>> {
        let mut m = Matrix::identity(rep.degree);
        for l in w.letters() {
            let inv = l.exponent < 0 && !rep.spec.is_involutive(l.generator);
            let block = match (l.generator, inv) {
                (Generator::Rho(_), false) => &self.rho,
                (Generator::Rho(_), true) => &self.rho_inv,
                (Generator::Sigma(_, t), false) => &self.sigma[t - 1],
                (Generator::Sigma(_, t), true) => &self.sigma_inv[t - 1],
            };
            m.apply_block_right(block, l.generator.index())?;
        }
        Ok(m)
    }
}

/// Checks every relation in `relations` under `rep`.
///
/// Symbolic mode decides each relation exactly. Sampled mode evaluates at
/// seeded random points and can only refute. Checks run in parallel; the
/// report keeps the input order.
pub fn verify_relations(
    rep: &LocalRep,
    relations: &[Relation],
    mode: Mode,
) -> Result<VerificationReport> {
    let checks = match mode {
        Mode::Symbolic => relations
            .par_iter()
            .map(|r| check_symbolic(rep, r))
            .collect::<Result<Vec<_>>>()?,
        Mode::Sampled { seed, points } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut blocks = Vec::with_capacity(points);
            for _ in 0..points.max(1) {
                let point = sample_point(rep, &mut rng)?;
                blocks.push((NumericBlocks::at(rep, &point)?, point));
            }
            relations
                .par_iter()
                .map(|rel| {
                    for (b, point) in &blocks {
                        if b.eval(rep, &rel.lhs)? != b.eval(rep, &rel.rhs)? {
                            let at: BTreeMap<&String, String> =
                                point.iter().map(|(k, v)| (k, v.to_string())).collect();
                            return Ok(Check::new(rel.tag.clone(), false).with_details(
                                json!({ "relation": rel.to_string(), "point": at }),
                            ));
                        }
                    }
                    Ok(Check::new(rel.tag.clone(), true))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(VerificationReport {
        group: rep.spec.to_string(),
        family: rep.family.to_string(),
        mode: mode.name(),
        seed: mode.seed(),
        checks,
    })
}

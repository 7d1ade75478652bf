//! Homogeneous k-local representation families and word evaluation.
//!
//! A [`LocalRep`] sends `rho_i` to the identity with one fixed `k x k` block
//! at diagonal position `i`, and `sigma_{i,t}` likewise with one block per
//! crossing type. Entries live in the rational-function field over the
//! family's parameters; assigning the parameters specializes every entry.

mod equivalence;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{make_vars, Vars};
use crate::linalg::Matrix;
use crate::presentations::{Generator, GroupSpec, Word};
use crate::{GaussianRational, RatFunc};

pub use equivalence::{
    conjugate_by_diagonal, conjugation_equivalence, diagonal_witness, Equivalence,
};

/// The representation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// general 2-local family over `UV_n(c)`
    Upsilon,
    /// `Upsilon` conjugated so that `rho` acts by the swap block
    UpsilonPrime,
    /// 3-local families over `UV_n(2)`, `1..=4`
    Epsilon(u8),
    /// 2-local families over `UW_n(c)`, `1..=3`
    Omega(u8),
    /// `Omega(j)` with the swap `rho` block
    OmegaPrime(u8),
    Burau,
    FRep,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Upsilon,
        Family::UpsilonPrime,
        Family::Epsilon(1),
        Family::Epsilon(2),
        Family::Epsilon(3),
        Family::Epsilon(4),
        Family::Omega(1),
        Family::Omega(2),
        Family::Omega(3),
        Family::OmegaPrime(1),
        Family::OmegaPrime(2),
        Family::OmegaPrime(3),
        Family::Burau,
        Family::FRep,
    ];

    pub fn block_size(&self) -> usize {
        match self {
            Family::Epsilon(_) | Family::FRep => 3,
            _ => 2,
        }
    }

    /// Parameters that appear in the sigma block of type `t`, without the
    /// `_t` suffix.
    fn sigma_params(&self) -> &'static [&'static str] {
        match self {
            Family::Upsilon | Family::UpsilonPrime => &["s1", "s2", "s3", "s4"],
            Family::Epsilon(1) => &["s5", "s6", "s8", "s9"],
            Family::Epsilon(2) => &["s1", "s2", "s4", "s5"],
            Family::Epsilon(3) => &["s4", "s5"],
            Family::Epsilon(4) => &["s5", "s8"],
            Family::Omega(1) | Family::OmegaPrime(1) => &["s2", "s3"],
            Family::Omega(2) | Family::OmegaPrime(2) => &["s2", "s4"],
            Family::Omega(3) | Family::OmegaPrime(3) => &["s1", "s2"],
            Family::Burau | Family::FRep => &[],
            _ => unreachable!("invalid family index"),
        }
    }

    fn global_params(&self) -> &'static [&'static str] {
        match self {
            Family::Upsilon | Family::Epsilon(2) | Family::Epsilon(4) => &["r2"],
            Family::Omega(_) | Family::OmegaPrime(_) => &["r2"],
            Family::Epsilon(1) | Family::Epsilon(3) => &["r6"],
            Family::UpsilonPrime => &[],
            Family::Burau | Family::FRep => &["t"],
            _ => unreachable!("invalid family index"),
        }
    }

    /// Parameter names for `c` crossing types, in declaration order.
    pub fn params(&self, c: usize) -> Vec<String> {
        let mut out: Vec<String> = self.global_params().iter().map(|s| s.to_string()).collect();
        for t in 1..=c {
            out.extend(self.sigma_params().iter().map(|s| format!("{}_{}", s, t)));
        }
        out
    }

    /// Whether the family is defined on `spec`.
    pub fn check_spec(&self, spec: &GroupSpec) -> Result<()> {
        let mismatch = |reason: &str| {
            Err(Error::FamilyMismatch {
                family: self.to_string(),
                group: spec.to_string(),
                reason: reason.to_string(),
            })
        };
        match self {
            Family::Epsilon(_) if spec.c != 2 => mismatch("needs c = 2"),
            Family::Omega(_) | Family::OmegaPrime(_) if !spec.welded => {
                mismatch("needs a welded group")
            }
            Family::Burau | Family::FRep if spec.braid_rel_types.is_empty() => {
                mismatch("needs the braid relations")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Upsilon => f.write_str("upsilon"),
            Family::UpsilonPrime => f.write_str("upsilon-prime"),
            Family::Epsilon(j) => write!(f, "epsilon{}", j),
            Family::Omega(j) => write!(f, "omega{}", j),
            Family::OmegaPrime(j) => write!(f, "omega{}p", j),
            Family::Burau => f.write_str("burau"),
            Family::FRep => f.write_str("f-rep"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == normalized)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A named nonvanishing requirement on the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SideCondition {
    pub label: String,
    pub expr: RatFunc,
}

/// How to fill in the parameters of a family.
#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    /// Every parameter stays a free variable.
    Symbolic,
    /// Every parameter gets a value.
    Assign(BTreeMap<String, GaussianRational>),
}

impl Params {
    pub fn assign<S: AsRef<str>>(pairs: &[(S, i64)]) -> Params {
        Params::Assign(
            pairs
                .iter()
                .map(|(k, v)| (k.as_ref().to_string(), GaussianRational::from_integer(*v)))
                .collect(),
        )
    }
}

/// A homogeneous k-local representation of a group.
#[derive(Clone, Debug)]
pub struct LocalRep {
    pub family: Family,
    pub spec: GroupSpec,
    pub block_size: usize,
    /// `n + k - 2`
    pub degree: usize,
    pub vars: Vars,
    pub params: Vec<String>,
    pub assignment: Option<BTreeMap<String, GaussianRational>>,
    pub side_conditions: Vec<SideCondition>,
    pub rho_block: Matrix<RatFunc>,
    /// Indexed by crossing type minus one.
    pub sigma_blocks: Vec<Matrix<RatFunc>>,
    rho_inverse: Matrix<RatFunc>,
    sigma_inverses: Vec<Matrix<RatFunc>>,
}

struct Entries {
    vars: Vars,
}

impl Entries {
    fn v(&self, name: &str) -> RatFunc {
        RatFunc::var(&self.vars, name).expect("declared parameter")
    }

    fn s(&self, k: u8, t: usize) -> RatFunc {
        self.v(&format!("s{}_{}", k, t))
    }

    fn int(&self, x: i64) -> RatFunc {
        RatFunc::constant_in(&self.vars, GaussianRational::from_integer(x))
    }

    fn inv(&self, x: &RatFunc) -> RatFunc {
        self.int(1).try_div(x).expect("nonzero parameter")
    }

    fn m(&self, rows: Vec<Vec<RatFunc>>) -> Matrix<RatFunc> {
        Matrix::from_rows(rows)
    }

    fn det2(&self, a: &RatFunc, b: &RatFunc, c: &RatFunc, d: &RatFunc) -> RatFunc {
        a.clone() * d - b.clone() * c
    }
}

fn blocks(
    family: Family,
    c: usize,
    e: &Entries,
) -> (Matrix<RatFunc>, Vec<Matrix<RatFunc>>, Vec<SideCondition>) {
    let (z, o) = (e.int(0), e.int(1));
    let mut conds = Vec::new();
    let mut cond = |label: String, expr: RatFunc| conds.push(SideCondition { label, expr });
    let swap = || e.m(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]);
    let anti = |r: &RatFunc| e.m(vec![vec![z.clone(), r.clone()], vec![e.inv(r), z.clone()]]);

    let rho = match family {
        Family::Upsilon | Family::Omega(_) => {
            let r2 = e.v("r2");
            cond("r2".into(), r2.clone());
            anti(&r2)
        }
        Family::UpsilonPrime | Family::Burau => swap(),
        Family::OmegaPrime(_) => {
            cond("r2".into(), e.v("r2"));
            swap()
        }
        Family::Epsilon(1) => {
            let r6 = e.v("r6");
            cond("r6".into(), r6.clone());
            e.m(vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), r6.clone()],
                vec![z.clone(), e.inv(&r6), z.clone()],
            ])
        }
        Family::Epsilon(2) => {
            let r2 = e.v("r2");
            cond("r2".into(), r2.clone());
            e.m(vec![
                vec![z.clone(), r2.clone(), z.clone()],
                vec![e.inv(&r2), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
            ])
        }
        Family::Epsilon(3) => {
            let r6 = e.v("r6");
            cond("r6".into(), r6.clone());
            e.m(vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![e.inv(&r6), -o.clone(), r6.clone()],
                vec![z.clone(), z.clone(), o.clone()],
            ])
        }
        Family::Epsilon(4) => {
            let r2 = e.v("r2");
            cond("r2".into(), r2.clone());
            e.m(vec![
                vec![o.clone(), r2.clone(), z.clone()],
                vec![z.clone(), -o.clone(), z.clone()],
                vec![z.clone(), e.inv(&r2), o.clone()],
            ])
        }
        // the epsilon-4 shape at r2 = 1
        Family::FRep => e.m(vec![
            vec![o.clone(), o.clone(), z.clone()],
            vec![z.clone(), -o.clone(), z.clone()],
            vec![z.clone(), o.clone(), o.clone()],
        ]),
        Family::Epsilon(_) => unreachable!("invalid family index"),
    };

    if matches!(family, Family::Burau | Family::FRep) {
        cond("t".into(), e.v("t"));
    }

    let mut sigmas = Vec::with_capacity(c);
    for t in 1..=c {
        let s = |k| e.s(k, t);
        let nonzero = |k: u8| (format!("s{}_{}", k, t), s(k));
        let block = match family {
            Family::Upsilon | Family::UpsilonPrime => {
                cond(format!("det_{}", t), e.det2(&s(1), &s(2), &s(3), &s(4)));
                e.m(vec![vec![s(1), s(2)], vec![s(3), s(4)]])
            }
            Family::Epsilon(1) => {
                cond(format!("det_{}", t), e.det2(&s(5), &s(6), &s(8), &s(9)));
                e.m(vec![
                    vec![o.clone(), z.clone(), z.clone()],
                    vec![z.clone(), s(5), s(6)],
                    vec![z.clone(), s(8), s(9)],
                ])
            }
            Family::Epsilon(2) => {
                cond(format!("det_{}", t), e.det2(&s(1), &s(2), &s(4), &s(5)));
                e.m(vec![
                    vec![s(1), s(2), z.clone()],
                    vec![s(4), s(5), z.clone()],
                    vec![z.clone(), z.clone(), o.clone()],
                ])
            }
            Family::Epsilon(3) => {
                let (l, r) = nonzero(5);
                cond(l, r);
                let r6 = e.v("r6");
                let corner = r6.clone() * (o.clone() - r6 * s(4) - s(5));
                e.m(vec![
                    vec![o.clone(), z.clone(), z.clone()],
                    vec![s(4), s(5), corner],
                    vec![z.clone(), z.clone(), o.clone()],
                ])
            }
            Family::Epsilon(4) => {
                let (l, r) = nonzero(5);
                cond(l, r);
                let r2 = e.v("r2");
                let corner = r2.clone() * (o.clone() - s(5) - r2 * s(8));
                e.m(vec![
                    vec![o.clone(), corner, z.clone()],
                    vec![z.clone(), s(5), z.clone()],
                    vec![z.clone(), s(8), o.clone()],
                ])
            }
            Family::Omega(j) | Family::OmegaPrime(j) => {
                for &k in family.sigma_params() {
                    let k: u8 = k[1..].parse().expect("s<k>");
                    let (l, r) = nonzero(k);
                    cond(l, r);
                }
                let r2 = e.v("r2");
                let primed = matches!(family, Family::OmegaPrime(_));
                // primed forms: s2 -> s2/r2 and the lower-left entry scaled by r2
                let upper = |x: RatFunc| {
                    if primed {
                        x.try_div(&r2).expect("r2 != 0")
                    } else {
                        x
                    }
                };
                let lower = |x: RatFunc| if primed { x * &r2 } else { x };
                match j {
                    1 => e.m(vec![
                        vec![z.clone(), upper(s(2))],
                        vec![lower(s(3)), z.clone()],
                    ]),
                    2 => e.m(vec![
                        vec![z.clone(), upper(s(2))],
                        vec![lower(e.inv(&r2)), s(4)],
                    ]),
                    3 => e.m(vec![
                        vec![s(1), upper(s(2))],
                        vec![lower(e.inv(&r2)), z.clone()],
                    ]),
                    _ => unreachable!("invalid family index"),
                }
            }
            Family::Burau => {
                let tv = e.v("t");
                e.m(vec![vec![o.clone() - &tv, tv], vec![o.clone(), z.clone()]])
            }
            Family::FRep => {
                let tv = e.v("t");
                e.m(vec![
                    vec![o.clone(), o.clone(), z.clone()],
                    vec![z.clone(), -tv.clone(), z.clone()],
                    vec![z.clone(), tv, o.clone()],
                ])
            }
            Family::Epsilon(_) => unreachable!("invalid family index"),
        };
        sigmas.push(block);
    }
    (rho, sigmas, conds)
}

/// Builds `family` on `spec`.
///
/// With [`Params::Assign`] every parameter must be given, no unknown name
/// may appear, and every side condition must evaluate to a nonzero value.
pub fn build_local_rep(family: Family, spec: &GroupSpec, params: &Params) -> Result<LocalRep> {
    spec.validate()?;
    family.check_spec(spec)?;
    let names = family.params(spec.c);
    let vars = make_vars(&names);
    let e = Entries { vars: vars.clone() };
    let (mut rho, mut sigmas, mut conds) = blocks(family, spec.c, &e);

    let assignment = match params {
        Params::Symbolic => None,
        Params::Assign(map) => {
            if let Some(extra) = map.keys().find(|k| !names.contains(k)) {
                return Err(Error::UnknownParameter(format!(
                    "`{}` for {}",
                    extra, family
                )));
            }
            if let Some(missing) = names.iter().find(|k| !map.contains_key(*k)) {
                return Err(Error::MissingVariable(missing.clone()));
            }
            let lookup = |name: &str| map.get(name).cloned();
            for cond in &conds {
                if cond.expr.evaluate(&lookup)?.is_zero() {
                    return Err(Error::SideCondition(cond.label.clone()));
                }
            }
            let subst = |m: &Matrix<RatFunc>| m.try_map(|x| x.substitute(&lookup));
            rho = subst(&rho)?;
            sigmas = sigmas.iter().map(subst).collect::<Result<_>>()?;
            for cond in &mut conds {
                cond.expr = cond.expr.substitute(&lookup)?;
            }
            Some(map.clone())
        }
    };

    let rho_inverse = rho.inverse()?;
    let sigma_inverses = sigmas.iter().map(Matrix::inverse).collect::<Result<_>>()?;
    Ok(LocalRep {
        family,
        spec: spec.clone(),
        block_size: family.block_size(),
        degree: spec.n + family.block_size() - 2,
        vars,
        params: names,
        assignment,
        side_conditions: conds,
        rho_block: rho,
        sigma_blocks: sigmas,
        rho_inverse,
        sigma_inverses,
    })
}

impl LocalRep {
    /// The block of a generator, or of its inverse.
    pub fn block(&self, g: Generator, inverse: bool) -> &Matrix<RatFunc> {
        let inverse = inverse && !self.spec.is_involutive(g);
        match (g, inverse) {
            (Generator::Rho(_), false) => &self.rho_block,
            (Generator::Rho(_), true) => &self.rho_inverse,
            (Generator::Sigma(_, t), false) => &self.sigma_blocks[t - 1],
            (Generator::Sigma(_, t), true) => &self.sigma_inverses[t - 1],
        }
    }

    /// The full `degree x degree` image of a generator.
    pub fn generator_matrix(&self, g: Generator) -> Result<Matrix<RatFunc>> {
        self.spec.check_generator(g)?;
        Matrix::block_embed(self.block(g, false), g.index(), self.degree)
    }

    /// Images of all generators of the group, in [`GroupSpec::generators`]
    /// order.
    pub fn generator_matrices(&self) -> Result<Vec<(Generator, Matrix<RatFunc>)>> {
        self.spec
            .generators()
            .into_iter()
            .map(|g| Ok((g, self.generator_matrix(g)?)))
            .collect()
    }

    /// Image of a word. Involutive letters are evaluated as positive ones.
    pub fn eval_word(&self, w: &Word) -> Result<Matrix<RatFunc>> {
        self.spec.check_word(w)?;
        let mut m = Matrix::identity(self.degree);
        for l in w.letters() {
            m.apply_block_right(self.block(l.generator, l.exponent < 0), l.generator.index())?;
        }
        Ok(m)
    }

    /// Generator images with every entry evaluated at the assignment.
    /// Symbolic representations need `extra` to cover their parameters.
    pub fn numeric_generators(
        &self,
        extra: &BTreeMap<String, GaussianRational>,
    ) -> Result<Vec<Matrix<GaussianRational>>> {
        let lookup = |name: &str| {
            extra
                .get(name)
                .or_else(|| self.assignment.as_ref().and_then(|a| a.get(name)))
                .cloned()
        };
        self.generator_matrices()?
            .into_iter()
            .map(|(_, m)| m.try_map(|x| x.evaluate(&lookup)))
            .collect()
    }

    /// Generator images of an assigned representation.
    pub fn constant_generators(&self) -> Result<Vec<Matrix<GaussianRational>>> {
        self.numeric_generators(&BTreeMap::new())
    }
}

#[cfg(test)]
mod tests;

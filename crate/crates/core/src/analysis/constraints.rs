use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{make_vars, Vars};
use crate::linalg::Matrix;
use crate::presentations::{relations, GroupSpec, Word};
use crate::{GaussianRational, MultiPoly, RatFunc};

/// Replacement values for some generic entries, e.g. `r3 -> 1/r2`.
pub type Substitution = BTreeMap<String, RatFunc>;

/// One polynomial required to vanish, with the relations producing it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equation {
    #[serde(serialize_with = "render_poly")]
    pub poly: MultiPoly,
    pub tags: Vec<String>,
}

fn render_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render())
}

/// Polynomial equations on the entries of generic blocks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }

    /// Whether the equations and `reference` agree as sets, each
    /// polynomial taken up to a nonzero scalar.
    pub fn matches(&self, reference: &[MultiPoly]) -> bool {
        let same = |a: &MultiPoly, b: &MultiPoly| {
            let (x, y) = a.unify(b);
            x.monic() == y.monic()
        };
        self.len() == reference.len()
            && self
                .equations
                .iter()
                .all(|e| reference.iter().any(|r| same(&e.poly, r)))
            && reference
                .iter()
                .all(|r| self.equations.iter().any(|e| same(&e.poly, r)))
    }

    /// Equations all of whose variables lie in `names`.
    pub fn restricted_to(&self, names: &[&str]) -> ConstraintSystem {
        let equations: Vec<Equation> = self
            .equations
            .iter()
            .filter(|e| {
                e.poly
                    .used_vars()
                    .iter()
                    .all(|v| names.contains(&v.as_str()))
            })
            .cloned()
            .collect();
        ConstraintSystem {
            unknowns: self
                .unknowns
                .iter()
                .filter(|u| names.contains(&u.as_str()))
                .cloned()
                .collect(),
            equations,
        }
    }
}

/// Generic blocks: `R = (r_1 .. r_{k^2})` row by row and, for each type
/// `t`, `S_t = (s_{1,t} .. s_{k^2,t})`. Entries named in `subst` are
/// replaced by the given values.
pub fn generic_blocks(
    k: usize,
    c: usize,
    subst: &Substitution,
) -> (Vars, Matrix<RatFunc>, Vec<Matrix<RatFunc>>) {
    let mut names: Vec<String> = (1..=k * k).map(|j| format!("r{}", j)).collect();
    for t in 1..=c {
        names.extend((1..=k * k).map(|j| format!("s{}_{}", j, t)));
    }
    let vars = make_vars(&names);
    let entry = |name: String| match subst.get(&name) {
        Some(v) => v.clone(),
        None => RatFunc::var(&vars, &name).expect("declared"),
    };
    let block = |prefix: &str, suffix: &str| {
        Matrix::from_rows(
            (0..k)
                .map(|r| {
                    (0..k)
                        .map(|c| entry(format!("{}{}{}", prefix, r * k + c + 1, suffix)))
                        .collect()
                })
                .collect(),
        )
    };
    let rho = block("r", "");
    let sigmas = (1..=c).map(|t| block("s", &format!("_{}", t))).collect();
    (vars, rho, sigmas)
}

fn eval_positive(
    w: &Word,
    m: usize,
    rho: &Matrix<RatFunc>,
    sigmas: &[Matrix<RatFunc>],
) -> Result<Matrix<RatFunc>> {
    use crate::presentations::Generator::*;
    let mut out = Matrix::identity(m);
    for l in w.letters() {
        if l.exponent < 0 {
            return Err(Error::Invalid(
                "constraint generation takes positive relations".into(),
            ));
        }
        let block = match l.generator {
            Rho(_) => rho,
            Sigma(_, t) => &sigmas[t - 1],
        };
        out.apply_block_right(block, l.generator.index())?;
    }
    Ok(out)
}

/// Residue equations of the tagged relations of `spec` over generic
/// `k x k` blocks.
///
/// Each nonzero residue entry contributes its numerator, made monic, so
/// duplicates up to a nonzero scalar collapse to one equation whose
/// provenance lists every relation that produced it. Unknowns are the
/// variables that occur, in declaration order.
pub fn generate_constraints(
    k: usize,
    spec: &GroupSpec,
    tags: &[String],
    subst: &Substitution,
) -> Result<ConstraintSystem> {
    if !(2..=3).contains(&k) {
        return Err(Error::Invalid(format!("block size {} is not 2 or 3", k)));
    }
    let all = relations(spec);
    let chosen: Vec<_> = tags
        .iter()
        .map(|tag| {
            all.iter()
                .find(|r| &r.tag == tag)
                .ok_or_else(|| Error::Invalid(format!("{} has no relation {}", spec, tag)))
        })
        .collect::<Result<_>>()?;
    let (vars, rho, sigmas) = generic_blocks(k, spec.c, subst);
    let m = spec.n + k - 2;

    let mut equations: Vec<Equation> = Vec::new();
    for rel in chosen {
        let lhs = eval_positive(&rel.lhs, m, &rho, &sigmas)?;
        let rhs = eval_positive(&rel.rhs, m, &rho, &sigmas)?;
        for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
            let d = a.clone() - b;
            if d.is_zero() {
                continue;
            }
            let poly = d.numer().with_vars(&vars).monic();
            match equations.iter_mut().find(|e| e.poly == poly) {
                Some(e) if !e.tags.contains(&rel.tag) => e.tags.push(rel.tag.clone()),
                Some(_) => {}
                None => equations.push(Equation {
                    poly,
                    tags: vec![rel.tag.clone()],
                }),
            }
        }
    }
    let used: Vec<String> = vars
        .iter()
        .filter(|v| equations.iter().any(|e| e.poly.used_vars().contains(v)))
        .cloned()
        .collect();
    Ok(ConstraintSystem {
        unknowns: used,
        equations,
    })
}

/// The relation subsets used to derive the classified families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// 2-local, virtual: `PR1`, `PR3`, `MR2` at `i = 1`, `t = 1` on `n = 3`.
    TwoLocalVirtual,
    /// 2-local, the welded relation at `i = t = 1` with `rho` already
    /// reduced to the antidiagonal form `r1 = r4 = 0`, `r3 = 1/r2`.
    TwoLocalWelded,
    /// 3-local, `c = 2`, `n = 4`: the braid, commutation and mixed
    /// relations between positions 1, 2 and 3.
    ThreeLocalVirtual,
}

impl Preset {
    pub const ALL: [Preset; 3] = [
        Preset::TwoLocalVirtual,
        Preset::TwoLocalWelded,
        Preset::ThreeLocalVirtual,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::TwoLocalVirtual => "2local-uv",
            Preset::TwoLocalWelded => "2local-uw",
            Preset::ThreeLocalVirtual => "3local-uv",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown preset `{}`", s)))
    }

    pub fn block_size(&self) -> usize {
        match self {
            Preset::ThreeLocalVirtual => 3,
            _ => 2,
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match self {
            Preset::TwoLocalVirtual => GroupSpec::uv(3, 1),
            Preset::TwoLocalWelded => GroupSpec::uw(3, 1),
            Preset::ThreeLocalVirtual => GroupSpec::uv(4, 2),
        }
    }

    pub fn tags(&self) -> Vec<String> {
        let v: &[&str] = match self {
            Preset::TwoLocalVirtual => &["PR1[i=1]", "PR3[i=1]", "MR2[i=1,t=1]"],
            Preset::TwoLocalWelded => &["WR1[i=1,t=1]"],
            Preset::ThreeLocalVirtual => &[
                "PR1[i=1]",
                "PR2[i=1,j=3]",
                "PR3[i=1]",
                "CR[i=1,j=3,t=1,l=1]",
                "CR[i=1,j=3,t=1,l=2]",
                "CR[i=1,j=3,t=2,l=1]",
                "CR[i=1,j=3,t=2,l=2]",
                "MR2[i=1,t=1]",
                "MR2[i=1,t=2]",
            ],
        };
        v.iter().map(|s| s.to_string()).collect()
    }

    pub fn substitution(&self) -> Substitution {
        let mut out = Substitution::new();
        if *self == Preset::TwoLocalWelded {
            let (vars, _, _) = generic_blocks(2, 1, &out);
            let r2 = RatFunc::var(&vars, "r2").expect("declared");
            out.insert("r1".into(), RatFunc::zero());
            out.insert("r4".into(), RatFunc::zero());
            let one = RatFunc::constant_in(&vars, GaussianRational::from_integer(1));
            out.insert(
                "r3".into(),
                one.try_div(&r2).expect("r2 is a nonzero variable"),
            );
        }
        out
    }

    pub fn generate(&self) -> Result<ConstraintSystem> {
        generate_constraints(
            self.block_size(),
            &self.spec(),
            &self.tags(),
            &self.substitution(),
        )
    }
}

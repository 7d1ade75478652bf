use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::make_vars;
use crate::linalg::Matrix;
use crate::presentations::GroupSpec;
use crate::representations::{build_local_rep, Family, LocalRep, Params};
use crate::{GaussianRational, RatFunc, Scalar};

type Q = GaussianRational;

/// Which action a witness vector is invariant under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `M v` in `span(v)`
    Column,
    /// `v M` in `span(v)`
    Row,
}

/// An invariant line spanned by `vector`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub side: Side,
    #[serde(serialize_with = "render_vector")]
    pub vector: Vec<Q>,
}

fn render_vector<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.vector.iter().map(|x| x.to_string()).collect();
        match self.side {
            Side::Column => write!(f, "[{}]^T", parts.join(",")),
            Side::Row => write!(f, "[{}]", parts.join(",")),
        }
    }
}

/// The closed-form reducibility verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub reducible: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.witness, self.reducible) {
            (Some(w), true) => write!(f, "reducible; witness {}", w),
            (None, true) => f.write_str("reducible"),
            (_, false) => f.write_str("irreducible"),
        }
    }
}

/// Row-echelon basis of a growing subspace.
struct Span<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> Span<T> {
    fn new() -> Self {
        Span { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * r;
                }
            }
        }
        v
    }

    /// Adds `v` unless it is already in the span.
    fn insert(&mut self, v: Vec<T>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("field element");
        self.rows
            .push((pivot, v.into_iter().map(|x| x * &inv).collect()));
        true
    }

    fn contains(&self, v: Vec<T>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the algebra spanned by all products of `mats`, the empty
/// product included. Products are added breadth-first by length and the
/// search stops once a whole wave adds nothing.
pub fn burnside_dim(mats: &[Matrix<Q>]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let m = first.rows();
    let mut span = Span::new();
    let id = Matrix::<Q>::identity(m);
    span.insert(id.entries().to_vec());
    let mut frontier = vec![id];
    while !frontier.is_empty() && span.dim() < m * m {
        let mut next = Vec::new();
        for x in &frontier {
            for g in mats {
                let p = g * x;
                if span.insert(p.entries().to_vec()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    span.dim()
}

fn mat_vec<T: Scalar>(m: &Matrix<T>, v: &[T], side: Side) -> Vec<T> {
    let n = v.len();
    (0..n)
        .map(|j| {
            (0..n).fold(T::zero(), |acc, k| match side {
                Side::Column => acc + m.get(j, k).clone() * &v[k],
                Side::Row => acc + v[k].clone() * m.get(k, j),
            })
        })
        .collect()
}

/// Basis of the smallest subspace containing `seeds` and stable under
/// every matrix (acting on columns).
pub fn spin(mats: &[Matrix<Q>], seeds: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut span = Span::new();
    let mut frontier: Vec<Vec<Q>> = seeds
        .iter()
        .filter(|s| span.insert((*s).clone()))
        .cloned()
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in mats {
                let w = mat_vec(g, v, Side::Column);
                if span.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    span.rows.into_iter().map(|(_, r)| r).collect()
}

/// Whether `v` is nonzero and spans a line stable under every matrix.
pub fn invariant_check<T: Scalar>(mats: &[Matrix<T>], v: &[T], side: Side) -> bool {
    if v.iter().all(Zero::is_zero) || mats.iter().any(|m| m.rows() != v.len() || !m.is_square()) {
        return false;
    }
    let mut line = Span::new();
    line.insert(v.to_vec());
    mats.iter().all(|m| line.contains(mat_vec(m, v, side)))
}

fn ones(m: usize) -> Vec<Q> {
    vec![Q::one(); m]
}

fn geometric(first: Q, ratio: &Q, m: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(m);
    let mut x = first;
    for _ in 0..m {
        out.push(x.clone());
        x = x * ratio;
    }
    out
}

/// Closed-form verdicts for the families with a known criterion.
///
/// The 2-local criteria quantify over every crossing type: a branch must
/// hold for all `t` simultaneously. Parameter sets where different types
/// satisfy different branches count as irreducible.
pub fn reducibility_criterion(rep: &LocalRep) -> Result<Verdict> {
    let a = rep
        .assignment
        .as_ref()
        .ok_or_else(|| Error::Invalid("the criterion needs assigned parameters".into()))?;
    let get = |name: String| a.get(&name).cloned().ok_or(Error::MissingVariable(name));
    let s = |k: u8, t: usize| get(format!("s{}_{}", k, t));
    let m = rep.degree;
    let c = rep.spec.c;
    let one = Q::one();
    let mut notes = Vec::new();

    let all_t = |f: &dyn Fn(usize) -> Result<bool>| -> Result<bool> {
        for t in 1..=c {
            if !f(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let reducible = |side: Side, vector: Vec<Q>| Verdict {
        reducible: true,
        witness: Some(Witness { side, vector }),
        notes: Vec::new(),
    };
    let irreducible = Verdict {
        reducible: false,
        witness: None,
        notes: Vec::new(),
    };

    let mut verdict = match rep.family {
        Family::UpsilonPrime => {
            let rows = all_t(&|t| Ok(s(1, t)? + s(2, t)? == one && s(3, t)? + s(4, t)? == one))?;
            let cols = all_t(&|t| Ok(s(1, t)? + s(3, t)? == one && s(2, t)? + s(4, t)? == one))?;
            if rows {
                reducible(Side::Column, ones(m))
            } else if cols {
                reducible(Side::Row, ones(m))
            } else {
                irreducible
            }
        }
        Family::OmegaPrime(j) => {
            let r2 = get("r2".into())?;
            let r2_inv = r2.inv().ok_or(Error::SideCondition("r2".into()))?;
            let holds = match j {
                1 => all_t(&|t| Ok(s(2, t)? == r2 && s(3, t)? == r2_inv))?,
                2 => all_t(&|t| Ok(s(2, t)? * &r2_inv + s(4, t)? == one))?,
                3 => all_t(&|t| Ok(s(1, t)? + s(2, t)? * &r2_inv == one))?,
                _ => unreachable!("invalid family index"),
            };
            if c > 1 {
                notes.push("criterion imposed for every crossing type".to_string());
            }
            match (holds, j) {
                (true, 2) => reducible(Side::Row, ones(m)),
                (true, _) => reducible(Side::Column, ones(m)),
                (false, _) => irreducible,
            }
        }
        Family::Epsilon(1) => {
            let mut v = vec![Q::zero(); m];
            v[0] = one;
            reducible(Side::Column, v)
        }
        Family::Epsilon(2) => {
            let mut v = vec![Q::zero(); m];
            v[m - 1] = one;
            reducible(Side::Column, v)
        }
        Family::Epsilon(3) => {
            let r6 = get("r6".into())?;
            let ratio = r6.inv().ok_or(Error::SideCondition("r6".into()))?;
            reducible(Side::Column, geometric(one, &ratio, m))
        }
        Family::Epsilon(4) => {
            let r2 = get("r2".into())?;
            notes.push("row witness uses powers of r2; powers of r6^-1 or r2^-1 are not invariant in general".into());
            reducible(Side::Row, geometric(one, &r2, m))
        }
        f => {
            return Err(Error::Invalid(format!(
                "no closed-form criterion for {}",
                f
            )))
        }
    };
    verdict.notes.append(&mut notes);
    Ok(verdict)
}

/// Symbolic invariance of the candidate row vectors for `epsilon4`:
/// powers of a free `r6^-1`, powers of `r2^-1` and powers of `r2`.
pub fn epsilon4_row_readings(rep: &LocalRep) -> Result<Vec<(String, bool)>> {
    if rep.family != Family::Epsilon(4) {
        return Err(Error::Invalid("row readings apply to epsilon4".into()));
    }
    let mats: Vec<Matrix<RatFunc>> = rep
        .generator_matrices()?
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let r2 = match rep.assignment.as_ref().and_then(|a| a.get("r2")) {
        Some(v) => RatFunc::constant(v.clone()),
        None => RatFunc::var(&rep.vars, "r2")?,
    };
    let free = make_vars(&["r6"]);
    let r6 = RatFunc::var(&free, "r6")?;
    let one = RatFunc::one();
    let powers = |ratio: RatFunc| {
        let mut out = Vec::with_capacity(rep.degree);
        let mut x = one.clone();
        for _ in 0..rep.degree {
            out.push(x.clone());
            x = x * &ratio;
        }
        out
    };
    let readings = [
        ("(1, r6^-1, ..., r6^-n)", one.try_div(&r6)?),
        ("(1, r2^-1, ..., r2^-n)", one.try_div(&r2)?),
        ("(1, r2, ..., r2^n)", r2.clone()),
    ];
    Ok(readings
        .into_iter()
        .map(|(label, ratio)| {
            (
                label.to_string(),
                invariant_check(&mats, &powers(ratio), Side::Row),
            )
        })
        .collect())
}

/// Largest absolute value drawn for criterion samples.
const SAMPLE_RANGE: i64 = 9;
/// Draws per requested sample before giving up.
const MAX_DRAWS: usize = 10_000;

fn small(rng: &mut ChaCha8Rng) -> Q {
    Q::from_integer(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))
}

/// Parameters on the reducibility locus of `family`: one branch of the
/// criterion is solved for every crossing type, the remaining entries are
/// uniform integers.
fn on_locus_params(family: Family, c: usize, rng: &mut ChaCha8Rng) -> BTreeMap<String, Q> {
    let mut vals: BTreeMap<String, Q> = family
        .params(c)
        .into_iter()
        .map(|p| (p, small(rng)))
        .collect();
    if let Some(r2) = vals.get_mut("r2") {
        while r2.is_zero() {
            *r2 = small(rng);
        }
    }
    let r2 = vals.get("r2").cloned().unwrap_or_else(Q::one);
    let r2_inv = r2.inv().expect("nonzero");
    let one = Q::one();
    let branch = rng.gen_range(0..2);
    for t in 1..=c {
        let key = |k: u8| format!("s{}_{}", k, t);
        let get = |vals: &BTreeMap<String, Q>, k: u8| vals[&key(k)].clone();
        let updates: Vec<(u8, Q)> = match family {
            Family::UpsilonPrime if branch == 0 => {
                vec![
                    (2, one.clone() - get(&vals, 1)),
                    (4, one.clone() - get(&vals, 3)),
                ]
            }
            Family::UpsilonPrime => vec![
                (3, one.clone() - get(&vals, 1)),
                (4, one.clone() - get(&vals, 2)),
            ],
            Family::OmegaPrime(1) => vec![(2, r2.clone()), (3, r2_inv.clone())],
            Family::OmegaPrime(2) => vec![(4, one.clone() - get(&vals, 2) * &r2_inv)],
            Family::OmegaPrime(3) => vec![(1, one.clone() - get(&vals, 2) * &r2_inv)],
            _ => Vec::new(),
        };
        for (k, v) in updates {
            vals.insert(key(k), v);
        }
    }
    vals
}

/// Outcome of comparing the closed-form criterion with the algebra
/// dimension on random parameters.
#[derive(Clone, Debug, Serialize)]
pub struct Agreement {
    pub family: String,
    pub group: String,
    pub on_locus: usize,
    pub off_locus: usize,
    /// Samples where the criterion and the dimension test disagree.
    pub disagreements: Vec<BTreeMap<String, String>>,
    /// Reducible verdicts whose witness is not invariant.
    pub bad_witnesses: usize,
}

impl Agreement {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty() && self.bad_witnesses == 0
    }
}

/// Draws `per_side` admissible samples on the reducibility locus and
/// `per_side` off it, and checks each verdict against `burnside_dim`.
pub fn criterion_agreement(
    family: Family,
    spec: &GroupSpec,
    seed: u64,
    per_side: usize,
) -> Result<Agreement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Agreement {
        family: family.to_string(),
        group: spec.to_string(),
        on_locus: 0,
        off_locus: 0,
        disagreements: Vec::new(),
        bad_witnesses: 0,
    };
    for on in [true, false] {
        let mut found = 0;
        let mut draws = 0;
        while found < per_side {
            draws += 1;
            if draws > MAX_DRAWS * per_side.max(1) {
                return Err(Error::Invalid(format!(
                    "could not draw samples for {} on {}",
                    family, spec
                )));
            }
            let vals = if on {
                on_locus_params(family, spec.c, &mut rng)
            } else {
                family
                    .params(spec.c)
                    .into_iter()
                    .map(|p| (p, small(&mut rng)))
                    .collect()
            };
            let rep = match build_local_rep(family, spec, &Params::Assign(vals.clone())) {
                Ok(rep) => rep,
                Err(Error::SideCondition(_)) => continue,
                Err(e) => return Err(e),
            };
            let verdict = reducibility_criterion(&rep)?;
            if !on && verdict.reducible {
                continue;
            }
            found += 1;
            let mats = rep.constant_generators()?;
            let oracle_reducible = burnside_dim(&mats) < rep.degree * rep.degree;
            if oracle_reducible != verdict.reducible {
                out.disagreements.push(
                    vals.iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .collect(),
                );
            }
            if let Some(w) = &verdict.witness {
                if !invariant_check(&mats, &w.vector, w.side) {
                    out.bad_witnesses += 1;
                }
            }
        }
        if on {
            out.on_locus = found;
        } else {
            out.off_locus = found;
        }
    }
    Ok(out)
}

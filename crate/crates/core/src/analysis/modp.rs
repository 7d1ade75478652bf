use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ConstraintSystem;
use crate::error::{Error, Result};
use crate::MultiPoly;

const MAX_PRIME: u64 = 97;
const MAX_UNKNOWNS: usize = 12;

/// A polynomial reduced mod `p`, with exponents indexed by unknown.
#[derive(Clone, Debug)]
struct ModPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
    /// Highest unknown index that occurs; the polynomial can be evaluated
    /// once this unknown is assigned.
    last: usize,
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = (x % BigInt::from(p)).to_i64().expect("small residue");
    r.rem_euclid(p as i64) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl ModPoly {
    fn new(poly: &MultiPoly, unknowns: &[String], p: u64) -> Result<Self> {
        let index: Vec<Option<usize>> = poly
            .vars()
            .iter()
            .map(|v| unknowns.iter().position(|u| u == v))
            .collect();
        let mut terms = Vec::new();
        let mut last = 0;
        for (m, c) in poly.terms() {
            if !c.im().is_zero() {
                return Err(Error::Invalid(
                    "coefficients must be real for a mod-p scan".into(),
                ));
            }
            let re = c.re();
            let den = reduce_int(re.denom(), p);
            if den == 0 {
                return Err(Error::Invalid(format!(
                    "coefficient {} is not defined mod {}",
                    re, p
                )));
            }
            let num = if re.numer().is_negative() {
                (p - reduce_int(&-re.numer(), p)) % p
            } else {
                reduce_int(re.numer(), p)
            };
            let coef = num * pow_mod(den, p - 2, p) % p;
            let mut exps = Vec::new();
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let k = index[j].ok_or_else(|| Error::MissingVariable(poly.vars()[j].clone()))?;
                last = last.max(k);
                exps.push((k, e));
            }
            if coef != 0 {
                terms.push((coef, exps));
            }
        }
        Ok(ModPoly { terms, last })
    }

    fn eval(&self, x: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (c, exps)| {
            let t = exps
                .iter()
                .fold(*c, |t, &(k, e)| t * pow_mod(x[k], e as u64, p) % p);
            (acc + t) % p
        })
    }
}

/// Every assignment in `F_p` satisfying the system and the nonvanishing
/// conditions.
#[derive(Clone, Debug, Serialize)]
pub struct ModPSolutions {
    pub p: u64,
    pub unknowns: Vec<String>,
    pub solutions: Vec<Vec<u64>>,
}

impl ModPSolutions {
    /// Solution counts per label.
    pub fn buckets(&self, classify: impl Fn(&[u64]) -> String) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for s in &self.solutions {
            *out.entry(classify(s)).or_insert(0) += 1;
        }
        out
    }

    pub fn value(&self, solution: &[u64], name: &str) -> Option<u64> {
        self.unknowns
            .iter()
            .position(|u| u == name)
            .map(|k| solution[k])
    }
}

fn is_odd_prime(p: u64) -> bool {
    p > 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

struct Scan<'a> {
    p: u64,
    n: usize,
    /// Equations and nonvanishing conditions grouped by the depth at which
    /// they become decidable.
    eqs: Vec<Vec<&'a ModPoly>>,
    nonzero: Vec<Vec<&'a ModPoly>>,
}

impl Scan<'_> {
    fn run(&self, x: &mut Vec<u64>, depth: usize, out: &mut Vec<Vec<u64>>) {
        if depth == self.n {
            out.push(x.clone());
            return;
        }
        for v in 0..self.p {
            x[depth] = v;
            let ok = self.eqs[depth].iter().all(|e| e.eval(x, self.p) == 0)
                && self.nonzero[depth].iter().all(|e| e.eval(x, self.p) != 0);
            if ok {
                self.run(x, depth + 1, out);
            }
        }
    }
}

fn by_depth(polys: &[ModPoly], n: usize) -> Vec<Vec<&ModPoly>> {
    let mut out = vec![Vec::new(); n];
    for e in polys {
        out[e.last].push(e);
    }
    out
}

/// Exhaustive backtracking scan over `F_p^unknowns`.
///
/// Each equation is tested as soon as its last unknown is assigned, which
/// prunes the tree early; the first unknown's branches run in parallel.
/// Solutions are listed in lexicographic order.
pub fn enumerate_solutions_mod_p(
    system: &ConstraintSystem,
    p: u64,
    nonzero: &[MultiPoly],
) -> Result<ModPSolutions> {
    if !is_odd_prime(p) || p > MAX_PRIME {
        return Err(Error::Invalid(format!(
            "p = {} is not an odd prime <= {}",
            p, MAX_PRIME
        )));
    }
    let n = system.unknowns.len();
    if n == 0 || n > MAX_UNKNOWNS {
        return Err(Error::Invalid(format!(
            "{} unknowns, expected 1..={}",
            n, MAX_UNKNOWNS
        )));
    }
    let eqs: Vec<ModPoly> = system
        .equations
        .iter()
        .map(|e| ModPoly::new(&e.poly, &system.unknowns, p))
        .collect::<Result<_>>()?;
    let conds: Vec<ModPoly> = nonzero
        .iter()
        .map(|e| ModPoly::new(e, &system.unknowns, p))
        .collect::<Result<_>>()?;
    let (eqs_by, conds_by) = (by_depth(&eqs, n), by_depth(&conds, n));
    let scan = Scan {
        p,
        n,
        eqs: eqs_by,
        nonzero: conds_by,
    };
    let per_first: Vec<Vec<Vec<u64>>> = (0..p)
        .into_par_iter()
        .map(|v| {
            let mut x = vec![0; n];
            x[0] = v;
            let mut out = Vec::new();
            let ok = scan.eqs[0].iter().all(|e| e.eval(&x, p) == 0)
                && scan.nonzero[0].iter().all(|e| e.eval(&x, p) != 0);
            if ok {
                scan.run(&mut x, 1, &mut out);
            }
            out
        })
        .collect();
    Ok(ModPSolutions {
        p,
        unknowns: system.unknowns.clone(),
        solutions: per_first.into_iter().flatten().collect(),
    })
}

/// Labels a 2x2 `rho` block `(r1 r2; r3 r4)` over `F_p`.
pub fn classify_rho_block(r: [u64; 4], p: u64) -> &'static str {
    match r {
        [1, 0, 0, 1] => "identity",
        [0, b, c, 0] if b * c % p == 1 => "antidiagonal",
        _ => "other",
    }
}

/// Result of checking that, with `rho` antidiagonal, the sigma entries
/// are constrained by nothing but invertibility.
#[derive(Clone, Debug, Serialize)]
pub struct AntidiagonalScan {
    pub p: u64,
    pub rho_solutions: usize,
    pub full_solutions: usize,
    /// `|GL_2(F_p)|`
    pub gl2: usize,
    /// `(p - 1) * |GL_2(F_p)|`
    pub expected: usize,
    /// For each antidiagonal `rho`, the number of sigma blocks found.
    pub per_rho: Vec<usize>,
}

impl AntidiagonalScan {
    pub fn unconstrained(&self) -> bool {
        self.rho_solutions == self.p as usize - 1
            && self.full_solutions == self.expected
            && self.per_rho.iter().all(|&k| k == self.gl2)
    }
}

/// Counts solutions of the full 2-local system in the antidiagonal bucket.
pub fn antidiagonal_scan(full: &ModPSolutions) -> AntidiagonalScan {
    let p = full.p;
    let pu = p as usize;
    let gl2 = (pu * pu - 1) * (pu * pu - pu);
    let rho = |s: &[u64]| {
        let v = |n: &str| full.value(s, n).unwrap_or(0);
        [v("r1"), v("r2"), v("r3"), v("r4")]
    };
    let mut per: BTreeMap<[u64; 4], usize> = BTreeMap::new();
    for s in &full.solutions {
        let r = rho(s);
        if classify_rho_block(r, p) == "antidiagonal" {
            *per.entry(r).or_insert(0) += 1;
        }
    }
    AntidiagonalScan {
        p,
        rho_solutions: per.len(),
        full_solutions: per.values().sum(),
        gl2,
        expected: (pu - 1) * gl2,
        per_rho: per.into_values().collect(),
    }
}

use std::fmt;

use num_traits::One;

use super::{Family, LocalRep};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentations::Generator;
use crate::RatFunc;

/// Outcome of the diagonal conjugation search.
#[derive(Clone, Debug)]
pub enum Equivalence {
    /// `Q^-1 A(g) Q = B(g)` for every generator, `Q = diag(1, q, q^2, ...)`.
    Found {
        q: RatFunc,
        witness: Matrix<RatFunc>,
    },
    /// Each tried `q` with the first generator whose conjugate differs.
    NotFound { attempts: Vec<(RatFunc, Generator)> },
}

impl Equivalence {
    pub fn is_found(&self) -> bool {
        matches!(self, Equivalence::Found { .. })
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Found { witness, .. } => {
                let diag: Vec<String> = (0..witness.rows())
                    .map(|j| witness.get(j, j).render())
                    .collect();
                write!(f, "equivalent; witness diag({})", diag.join(", "))
            }
            Equivalence::NotFound { attempts } => {
                let tried: Vec<String> = attempts
                    .iter()
                    .map(|(q, g)| format!("q={} fails at {}", q.render(), g))
                    .collect();
                write!(f, "no diagonal witness; {}", tried.join("; "))
            }
        }
    }
}

/// `diag(1, q, q^2, ..., q^(m-1))`.
pub fn diagonal_witness(q: &RatFunc, m: usize) -> Matrix<RatFunc> {
    Matrix::diagonal(powers(q, m))
}

fn powers(q: &RatFunc, m: usize) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(m);
    let mut p = RatFunc::one();
    for _ in 0..m {
        out.push(p.clone());
        p = p * q;
    }
    out
}

/// `Q^-1 M Q` for `Q = diag(q^0, q^1, ...)`: entry `(j, k)` picks up
/// `q^(k-j)`.
fn conjugate_matrix(m: &Matrix<RatFunc>, pos: &[RatFunc], neg: &[RatFunc]) -> Matrix<RatFunc> {
    let mut out = m.clone();
    for (j, nj) in neg.iter().enumerate().take(m.rows()) {
        for (k, pk) in pos.iter().enumerate().take(m.cols()) {
            let x = m.get(j, k);
            if j != k && !num_traits::Zero::is_zero(x) {
                out.set(j, k, x.clone() * pk * nj);
            }
        }
    }
    out
}

/// The representation `g -> Q^-1 rep(g) Q`, relabelled as `family`.
///
/// Because `Q` is geometric, every embedded block is conjugated by the
/// same local factor, so the result is again homogeneous.
pub fn conjugate_by_diagonal(rep: &LocalRep, q: &RatFunc, family: Family) -> Result<LocalRep> {
    let qi = RatFunc::one().try_div(q)?;
    let k = rep.block_size;
    let (pos, neg) = (powers(q, k), powers(&qi, k));
    let conj = |m: &Matrix<RatFunc>| conjugate_matrix(m, &pos, &neg);
    Ok(LocalRep {
        family,
        rho_block: conj(&rep.rho_block),
        sigma_blocks: rep.sigma_blocks.iter().map(conj).collect(),
        rho_inverse: conj(&rep.rho_inverse),
        sigma_inverses: rep.sigma_inverses.iter().map(conj).collect(),
        ..rep.clone()
    })
}

fn candidates(a: &LocalRep, b: &LocalRep) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::one()];
    for name in ["r2", "r6"] {
        let rep = [a, b]
            .into_iter()
            .find(|r| r.vars.iter().any(|v| v == name));
        if let Some(rep) = rep {
            let v = RatFunc::var(&rep.vars, name).expect("present");
            out.push(RatFunc::one().try_div(&v).expect("variable is nonzero"));
        }
    }
    out
}

/// Searches `Q = diag(1, q, ..., q^(m-1))` with `q` in `{1, r2^-1, r6^-1}`
/// such that `Q^-1 a(g) Q = b(g)` for every generator `g`, comparing the
/// full embedded matrices symbolically.
pub fn conjugation_equivalence(a: &LocalRep, b: &LocalRep) -> Result<Equivalence> {
    if a.degree != b.degree {
        return Err(Error::DimensionMismatch(format!(
            "degrees {} and {}",
            a.degree, b.degree
        )));
    }
    if a.spec.n != b.spec.n || a.spec.c != b.spec.c {
        return Err(Error::InvalidGroup(format!("{} vs {}", a.spec, b.spec)));
    }
    let m = a.degree;
    let ga = a.generator_matrices()?;
    let gb = b.generator_matrices()?;
    let mut attempts = Vec::new();
    'q: for q in candidates(a, b) {
        let qi = RatFunc::one().try_div(&q)?;
        let (pos, neg) = (powers(&q, m), powers(&qi, m));
        for ((g, ma), (_, mb)) in ga.iter().zip(&gb) {
            if conjugate_matrix(ma, &pos, &neg) != *mb {
                attempts.push((q, *g));
                continue 'q;
            }
        }
        return Ok(Equivalence::Found {
            witness: diagonal_witness(&q, m),
            q,
        });
    }
    Ok(Equivalence::NotFound { attempts })
}

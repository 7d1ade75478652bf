use std::fmt;

use super::{Generator, GroupSpec, Word};

use Generator::{Rho, Sigma};

/// Relation families. The first six hold in every group built here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    /// `rho_i rho_{i+1} rho_i = rho_{i+1} rho_i rho_{i+1}`
    PR1,
    /// `rho_i rho_j = rho_j rho_i`, `|i-j| >= 2`
    PR2,
    /// `rho_i^2 = 1`
    PR3,
    /// `sigma_{i,t} sigma_{j,l} = sigma_{j,l} sigma_{i,t}`, `|i-j| >= 2`
    CR,
    /// `sigma_{i,t} rho_j = rho_j sigma_{i,t}`, `|i-j| >= 2`
    MR1,
    /// `rho_i rho_{i+1} sigma_{i,t} = sigma_{i+1,t} rho_i rho_{i+1}`
    MR2,
    /// `rho_i sigma_{i+1,t} sigma_{i,t} = sigma_{i+1,t} sigma_{i,t} rho_{i+1}`
    WR1,
    /// `rho_{i+1} sigma_{i,t} sigma_{i+1,t} = sigma_{i,t} sigma_{i+1,t} rho_i`
    WR2,
    /// braid relation within one crossing type
    BR,
    /// `sigma_{i,t}^2 = 1`
    INV,
    /// `sigma_{i,1} sigma_{i,2} = sigma_{i,2} sigma_{i,1}`
    SR1,
    /// `sigma_{i,1} sigma_{i+1,1} sigma_{i,2} = sigma_{i+1,2} sigma_{i,1} sigma_{i+1,1}`
    SR2,
    /// `sigma_{i+1,1} sigma_{i,1} sigma_{i+1,2} = sigma_{i,2} sigma_{i+1,1} sigma_{i,1}`
    SR3,
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A defining relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub family: RelationFamily,
    /// Family and indices, e.g. `MR2[i=1,t=2]`.
    pub tag: String,
}

impl Relation {
    fn new(
        family: RelationFamily,
        indices: &[(&str, usize)],
        lhs: &[Generator],
        rhs: &[Generator],
    ) -> Self {
        let idx: Vec<String> = indices
            .iter()
            .map(|(k, v)| format!("{}={}", k, v))
            .collect();
        Relation {
            lhs: Word::positive(lhs),
            rhs: Word::positive(rhs),
            family,
            tag: format!("{}[{}]", family, idx.join(",")),
        }
    }

    /// `lhs * rhs^-1`.
    pub fn relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            }
        };
        write!(f, "{}: {} = {}", self.tag, side(&self.lhs), side(&self.rhs))
    }
}

fn far_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 2..n).map(move |j| (i, j)))
}

fn welded(family: RelationFamily, i: usize, t: usize) -> Relation {
    match family {
        RelationFamily::WR1 => Relation::new(
            family,
            &[("i", i), ("t", t)],
            &[Rho(i), Sigma(i + 1, t), Sigma(i, t)],
            &[Sigma(i + 1, t), Sigma(i, t), Rho(i + 1)],
        ),
        RelationFamily::WR2 => Relation::new(
            family,
            &[("i", i), ("t", t)],
            &[Rho(i + 1), Sigma(i, t), Sigma(i + 1, t)],
            &[Sigma(i, t), Sigma(i + 1, t), Rho(i)],
        ),
        _ => unreachable!("not a welded family"),
    }
}

/// Every defining relation of `spec`, duplicate-free and in a fixed order.
///
/// Commutation relations between two sigma letters are listed once per
/// unordered strand pair `i < j` and every ordered type pair `(t, l)`;
/// the mixed commutations are listed for every ordered pair `(i, j)`.
pub fn relations(spec: &GroupSpec) -> Vec<Relation> {
    use RelationFamily::*;
    let (n, c) = (spec.n, spec.c);
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        out.push(Relation::new(
            PR1,
            &[("i", i)],
            &[Rho(i), Rho(i + 1), Rho(i)],
            &[Rho(i + 1), Rho(i), Rho(i + 1)],
        ));
    }
    for (i, j) in far_pairs(n) {
        out.push(Relation::new(
            PR2,
            &[("i", i), ("j", j)],
            &[Rho(i), Rho(j)],
            &[Rho(j), Rho(i)],
        ));
    }
    for i in 1..n {
        out.push(Relation::new(PR3, &[("i", i)], &[Rho(i), Rho(i)], &[]));
    }
    for (i, j) in far_pairs(n) {
        for t in 1..=c {
            for l in 1..=c {
                out.push(Relation::new(
                    CR,
                    &[("i", i), ("j", j), ("t", t), ("l", l)],
                    &[Sigma(i, t), Sigma(j, l)],
                    &[Sigma(j, l), Sigma(i, t)],
                ));
            }
        }
    }
    for i in 1..n {
        for j in (1..n).filter(|&j| i.abs_diff(j) >= 2) {
            for t in 1..=c {
                out.push(Relation::new(
                    MR1,
                    &[("i", i), ("j", j), ("t", t)],
                    &[Sigma(i, t), Rho(j)],
                    &[Rho(j), Sigma(i, t)],
                ));
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        for t in 1..=c {
            out.push(Relation::new(
                MR2,
                &[("i", i), ("t", t)],
                &[Rho(i), Rho(i + 1), Sigma(i, t)],
                &[Sigma(i + 1, t), Rho(i), Rho(i + 1)],
            ));
        }
    }
    if spec.welded {
        for i in 1..n.saturating_sub(1) {
            for t in 1..=c {
                out.push(welded(WR1, i, t));
            }
        }
    }
    for &t in &spec.braid_rel_types {
        for i in 1..n.saturating_sub(1) {
            out.push(Relation::new(
                BR,
                &[("i", i), ("t", t)],
                &[Sigma(i, t), Sigma(i + 1, t), Sigma(i, t)],
                &[Sigma(i + 1, t), Sigma(i, t), Sigma(i + 1, t)],
            ));
        }
    }
    for &t in &spec.involutive_types {
        for i in 1..n {
            out.push(Relation::new(
                INV,
                &[("i", i), ("t", t)],
                &[Sigma(i, t), Sigma(i, t)],
                &[],
            ));
        }
    }
    if spec.singular {
        for i in 1..n {
            out.push(Relation::new(
                SR1,
                &[("i", i)],
                &[Sigma(i, 1), Sigma(i, 2)],
                &[Sigma(i, 2), Sigma(i, 1)],
            ));
        }
        for i in 1..n.saturating_sub(1) {
            out.push(Relation::new(
                SR2,
                &[("i", i)],
                &[Sigma(i, 1), Sigma(i + 1, 1), Sigma(i, 2)],
                &[Sigma(i + 1, 2), Sigma(i, 1), Sigma(i + 1, 1)],
            ));
            out.push(Relation::new(
                SR3,
                &[("i", i)],
                &[Sigma(i + 1, 1), Sigma(i, 1), Sigma(i + 1, 2)],
                &[Sigma(i, 2), Sigma(i + 1, 1), Sigma(i, 1)],
            ));
        }
    }
    out
}

/// The two over-forbidden moves for every `i <= n-2` and type `t`: the
/// welded relation `WR1` and its mirror `WR2`.
pub fn forbidden_relations(n: usize, c: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        for t in 1..=c {
            out.push(welded(RelationFamily::WR1, i, t));
            out.push(welded(RelationFamily::WR2, i, t));
        }
    }
    out
}

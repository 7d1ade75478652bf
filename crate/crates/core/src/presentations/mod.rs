//! Generators, words, group presentations and the homomorphisms to the
//! symmetric group.
//!
//! Every group here is a quotient of the universal virtual braid group on
//! `n` strands with `c` crossing types: generators `rho_i` (virtual
//! crossings) and `sigma_{i,t}` (crossings of type `t`), `1 <= i <= n-1`.
//! A [`GroupSpec`] records which extra relation families are imposed.

mod homomorphisms;
mod relations;
mod word;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use homomorphisms::{
    abelianize, iota_check, perm_image, phi, Abelianization, PermMap, Permutation, PhiImage,
};
pub use relations::{forbidden_relations, relations, Relation, RelationFamily};
pub use word::{free_reduce, normal_form_n2, parse_word};

/// A generator: `Rho(i)` is `rho_i`, `Sigma(i, t)` is `sigma_{i,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Rho(usize),
    Sigma(usize, usize),
}

impl Generator {
    /// Strand index `i`.
    pub fn index(&self) -> usize {
        match *self {
            Generator::Rho(i) | Generator::Sigma(i, _) => i,
        }
    }

    pub fn crossing_type(&self) -> Option<usize> {
        match *self {
            Generator::Rho(_) => None,
            Generator::Sigma(_, t) => Some(t),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Rho(i) => write!(f, "r{}", i),
            Generator::Sigma(i, t) => write!(f, "s{},{}", i, t),
        }
    }
}

/// A generator raised to `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1, "exponent must be +1 or -1");
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent < 0 {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// An element of the free group on the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Positive word in the given generators.
    pub fn positive(gens: &[Generator]) -> Self {
        Word(gens.iter().map(|&g| Letter::new(g, 1)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Named groups of the quotient diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// universal virtual braid group
    Uv,
    /// universal welded braid group
    Uw,
    Vb,
    Wb,
    Vt,
    Wt,
    Vsg,
    Wsg,
    Mvb,
    Mwb,
}

impl Flavor {
    pub const ALL: [Flavor; 10] = [
        Flavor::Uv,
        Flavor::Uw,
        Flavor::Vb,
        Flavor::Wb,
        Flavor::Vt,
        Flavor::Wt,
        Flavor::Vsg,
        Flavor::Wsg,
        Flavor::Mvb,
        Flavor::Mwb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Uv => "uv",
            Flavor::Uw => "uw",
            Flavor::Vb => "vb",
            Flavor::Wb => "wb",
            Flavor::Vt => "vt",
            Flavor::Wt => "wt",
            Flavor::Vsg => "vsg",
            Flavor::Wsg => "wsg",
            Flavor::Mvb => "mvb",
            Flavor::Mwb => "mwb",
        }
    }

    pub fn is_welded(&self) -> bool {
        matches!(
            self,
            Flavor::Uw | Flavor::Wb | Flavor::Wt | Flavor::Wsg | Flavor::Mwb
        )
    }

    /// The crossing-type count forced by the flavor, if any.
    pub fn fixed_c(&self) -> Option<usize> {
        match self {
            Flavor::Vb | Flavor::Wb | Flavor::Vt | Flavor::Wt => Some(1),
            Flavor::Vsg | Flavor::Wsg => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidGroup(format!("unknown group `{}`", s)))
    }
}

/// A presentation: `n` strands, `c` crossing types and the relation
/// families imposed on top of the universal virtual relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub flavor: Flavor,
    pub n: usize,
    pub c: usize,
    pub welded: bool,
    pub braid_rel_types: BTreeSet<usize>,
    pub involutive_types: BTreeSet<usize>,
    pub singular: bool,
}

impl GroupSpec {
    fn base(flavor: Flavor, n: usize, c: usize, welded: bool) -> Self {
        GroupSpec {
            flavor,
            n,
            c,
            welded,
            braid_rel_types: BTreeSet::new(),
            involutive_types: BTreeSet::new(),
            singular: false,
        }
    }

    pub fn uv(n: usize, c: usize) -> Self {
        make_spec(Flavor::Uv, n, c).expect("valid universal virtual group")
    }

    pub fn uw(n: usize, c: usize) -> Self {
        make_spec(Flavor::Uw, n, c).expect("valid universal welded group")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidGroup(format!("n = {} < 2", self.n)));
        }
        if self.c < 1 {
            return Err(Error::InvalidGroup("c must be at least 1".into()));
        }
        if self.singular && self.c != 2 {
            return Err(Error::InvalidGroup("singular relations need c = 2".into()));
        }
        let bad = self
            .braid_rel_types
            .iter()
            .chain(&self.involutive_types)
            .find(|&&t| t == 0 || t > self.c);
        if let Some(t) = bad {
            return Err(Error::InvalidGroup(format!(
                "crossing type {} > c = {}",
                t, self.c
            )));
        }
        Ok(())
    }

    pub fn is_involutive(&self, g: Generator) -> bool {
        match g {
            Generator::Rho(_) => true,
            Generator::Sigma(_, t) => self.involutive_types.contains(&t),
        }
    }

    pub fn check_generator(&self, g: Generator) -> Result<()> {
        let i = g.index();
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "strand index {} in {} (need 1 <= i <= {})",
                i,
                g,
                self.n - 1
            )));
        }
        if let Some(t) = g.crossing_type() {
            if t == 0 || t > self.c {
                return Err(Error::IndexOutOfRange(format!(
                    "type index {} > c = {} in {}",
                    t, self.c, g
                )));
            }
        }
        Ok(())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters()
            .iter()
            .try_for_each(|l| self.check_generator(l.generator))
    }

    /// All generators: `rho_1..rho_{n-1}`, then `sigma_{i,t}` by type.
    pub fn generators(&self) -> Vec<Generator> {
        let mut g: Vec<Generator> = (1..self.n).map(Generator::Rho).collect();
        for t in 1..=self.c {
            g.extend((1..self.n).map(|i| Generator::Sigma(i, t)));
        }
        g
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, c={})", self.flavor, self.n, self.c)
    }
}

/// Builds the presentation of a named group.
///
/// `vb`, `wb`, `vt`, `wt` force `c = 1` and `vsg`, `wsg` force `c = 2`;
/// passing a different value is an error. For `mvb`/`mwb` the third
/// argument is the number `k` of crossing families.
pub fn make_spec(flavor: Flavor, n: usize, c_or_k: usize) -> Result<GroupSpec> {
    if n < 2 {
        return Err(Error::InvalidGroup(format!("n = {} < 2", n)));
    }
    if let Some(fixed) = flavor.fixed_c() {
        if c_or_k != fixed {
            return Err(Error::InvalidGroup(format!(
                "{} has c = {}, got {}",
                flavor, fixed, c_or_k
            )));
        }
    }
    let mut spec = GroupSpec::base(flavor, n, c_or_k, flavor.is_welded());
    match flavor {
        Flavor::Uv | Flavor::Uw => {}
        Flavor::Vb | Flavor::Wb => {
            spec.braid_rel_types.insert(1);
        }
        Flavor::Vt | Flavor::Wt => {
            spec.involutive_types.insert(1);
        }
        Flavor::Vsg | Flavor::Wsg => {
            spec.braid_rel_types.extend([1, 2]);
            spec.singular = true;
        }
        Flavor::Mvb | Flavor::Mwb => {
            spec.braid_rel_types.extend(1..=c_or_k);
        }
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests;

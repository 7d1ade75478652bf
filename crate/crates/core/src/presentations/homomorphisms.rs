use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Generator, GroupSpec, Word};
use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored 0-based.
///
/// Products compose right to left: `(p * q)(x) = p(q(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The adjacent transposition `s_i = (i i+1)`, 1-based.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{} outside S_{}", i, n);
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// From 1-based images; fails unless they form a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Invalid(format!("{:?} is not a permutation", images)));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The two projections onto `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermMap {
    /// `sigma_{i,t} -> s_i`, `rho_i -> s_i`
    PiP,
    /// `sigma_{i,t} -> 1`, `rho_i -> s_i`
    PiK,
}

impl FromStr for PermMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "piP" => Ok(PermMap::PiP),
            "piK" => Ok(PermMap::PiK),
            _ => Err(Error::Invalid(format!("unknown map `{}`", s))),
        }
    }
}

impl fmt::Display for PermMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermMap::PiP => "piP",
            PermMap::PiK => "piK",
        })
    }
}

fn letter_image(map: PermMap, g: Generator, n: usize) -> Permutation {
    match (map, g) {
        (_, Generator::Rho(i)) | (PermMap::PiP, Generator::Sigma(i, _)) => {
            Permutation::transposition(n, i)
        }
        (PermMap::PiK, Generator::Sigma(..)) => Permutation::identity(n),
    }
}

/// Image of `w` in `S_n`. Generators map to involutions, so inverse letters
/// have the same image as positive ones.
pub fn perm_image(w: &Word, map: PermMap, n: usize) -> Permutation {
    w.letters().iter().fold(Permutation::identity(n), |acc, l| {
        acc.compose(&letter_image(map, l.generator, n))
    })
}

/// For a word in the `rho` letters only, checks that both projections send
/// it back to the product of the corresponding transpositions, i.e. that
/// `s_i -> rho_i` splits them. Returns that permutation.
pub fn iota_check(w: &Word, n: usize) -> Result<Permutation> {
    let mut expected = Permutation::identity(n);
    for l in w.letters() {
        match l.generator {
            Generator::Rho(i) => expected = expected.compose(&Permutation::transposition(n, i)),
            g => {
                return Err(Error::Invalid(format!(
                    "splitting check needs a word in rho letters, found {}",
                    g
                )))
            }
        }
    }
    for map in [PermMap::PiP, PermMap::PiK] {
        if perm_image(w, map, n) != expected {
            return Err(Error::Invalid(format!(
                "{} does not invert the splitting on {}",
                map, w
            )));
        }
    }
    Ok(expected)
}

/// An element of `Z x S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PhiImage {
    pub count: i64,
    pub perm: Permutation,
}

impl PhiImage {
    pub fn identity(n: usize) -> Self {
        PhiImage {
            count: 0,
            perm: Permutation::identity(n),
        }
    }

    pub fn compose(&self, other: &PhiImage) -> PhiImage {
        PhiImage {
            count: self.count + other.count,
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.count == 0 && self.perm.is_identity()
    }
}

impl fmt::Display for PhiImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.count, self.perm)
    }
}

/// The map to `Z x S_n` that counts signed `sigma_{., t0}` letters and
/// projects `rho_i` to `s_i`; other sigma letters go to the identity.
pub fn phi(w: &Word, t0: usize, spec: &GroupSpec) -> Result<PhiImage> {
    if t0 == 0 || t0 > spec.c {
        return Err(Error::IndexOutOfRange(format!(
            "t0 = {} outside 1..={}",
            t0, spec.c
        )));
    }
    let n = spec.n;
    let count = w
        .letters()
        .iter()
        .filter(|l| l.generator.crossing_type() == Some(t0))
        .map(|l| i64::from(l.exponent))
        .sum();
    Ok(PhiImage {
        count,
        perm: perm_image(w, PermMap::PiK, n),
    })
}

/// Image in `Z^c (+) Z/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Abelianization {
    pub sigma_exponents: Vec<i64>,
    pub rho_parity: u8,
}

impl Abelianization {
    pub fn zero(c: usize) -> Self {
        Abelianization {
            sigma_exponents: vec![0; c],
            rho_parity: 0,
        }
    }

    pub fn add(&self, other: &Abelianization) -> Abelianization {
        Abelianization {
            sigma_exponents: self
                .sigma_exponents
                .iter()
                .zip(&other.sigma_exponents)
                .map(|(a, b)| a + b)
                .collect(),
            rho_parity: (self.rho_parity + other.rho_parity) % 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rho_parity == 0 && self.sigma_exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sigma_exponents.iter().map(i64::to_string).collect();
        write!(f, "(({}), {})", s.join(", "), self.rho_parity)
    }
}

/// Signed sigma-exponent sum per crossing type and rho-letter parity.
pub fn abelianize(w: &Word, spec: &GroupSpec) -> Result<Abelianization> {
    let mut out = Abelianization::zero(spec.c);
    for l in w.letters() {
        match l.generator {
            Generator::Rho(_) => out.rho_parity ^= 1,
            Generator::Sigma(_, t) => {
                let slot = out
                    .sigma_exponents
                    .get_mut(t.wrapping_sub(1))
                    .ok_or_else(|| {
                        Error::IndexOutOfRange(format!("type {} > c = {}", t, spec.c))
                    })?;
                *slot += i64::from(l.exponent);
            }
        }
    }
    Ok(out)
}

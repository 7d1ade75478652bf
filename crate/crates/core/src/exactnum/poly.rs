use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{forward_binop, Scalar};
use crate::error::{Error, Result};

/// Ordered list of parameter names. Exponent vectors are dense over it.
pub type Vars = Arc<Vec<String>>;

/// Builds a shared variable list from names.
pub fn make_vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// Dense exponent vector, ordered graded-lexicographically: higher total
/// degree first, ties broken by the exponent of the earliest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| {
                if *e == 1 {
                    v.clone()
                } else {
                    format!("{}^{}", v, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with coefficients in `C`.
///
/// Invariants: every stored monomial has width `vars.len()` and no stored
/// coefficient is zero. Binary operations between polynomials over
/// different variable lists first merge the lists.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn is_subset(small: &Vars, big: &Vars) -> bool {
    small.iter().all(|v| big.contains(v))
}

impl<C: Scalar> Poly<C> {
    fn empty(vars: Vars) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::constant_in(&Arc::new(Vec::new()), c)
    }

    pub fn constant_in(vars: &Vars, c: C) -> Self {
        let mut p = Self::empty(vars.clone());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownParameter(format!("`{}`", name)))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::empty(vars.clone());
        p.terms.insert(Monomial(exps), C::one());
        Ok(p)
    }

    /// A polynomial in a single fresh variable.
    pub fn variable(name: &str) -> Self {
        Self::var(&make_vars(&[name]), name).expect("variable is declared")
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::empty(vars.clone());
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector width");
            p.accumulate(Monomial(exps), c);
        }
        p
    }

    fn accumulate(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(C::zero))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Names of variables with a nonzero exponent somewhere.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&j| self.terms.keys().any(|m| m.0[j] > 0))
            .map(|j| self.vars[j].clone())
            .collect()
    }

    /// Re-expresses `self` over `target`, which must contain every variable
    /// of `self`.
    pub fn with_vars(&self, target: &Vars) -> Self {
        if same_vars(&self.vars, target) {
            return Poly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("target variable list is a superset")
            })
            .collect();
        let mut p = Self::empty(target.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (j, e) in m.0.iter().enumerate() {
                exps[map[j]] = *e;
            }
            p.terms.insert(Monomial(exps), c.clone());
        }
        p
    }

    /// Brings two polynomials onto a common variable list.
    pub fn unify<'a>(&'a self, other: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if same_vars(&self.vars, &other.vars) {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        if is_subset(&other.vars, &self.vars) {
            return (Cow::Borrowed(self), Cow::Owned(other.with_vars(&self.vars)));
        }
        if is_subset(&self.vars, &other.vars) {
            return (
                Cow::Owned(self.with_vars(&other.vars)),
                Cow::Borrowed(other),
            );
        }
        let mut merged: Vec<String> = self.vars.as_ref().clone();
        merged.extend(
            other
                .vars
                .iter()
                .filter(|v| !self.vars.contains(v))
                .cloned(),
        );
        let merged = Arc::new(merged);
        (
            Cow::Owned(self.with_vars(&merged)),
            Cow::Owned(other.with_vars(&merged)),
        )
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.unify(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.unify(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.accumulate(m.clone(), -c.clone());
        }
        out
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.unify(rhs);
        let mut out = Self::empty(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.accumulate(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::empty(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant_in(&self.vars, C::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest monomial dividing every term; `None` for the zero polynomial.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |g, m| g.gcd(m)))
    }

    /// Least common multiple of two monomial-valued polynomials, with unit
    /// coefficient. Both operands must be single terms.
    pub(crate) fn monomial_lcm(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.unify(other);
        let (ma, _) = a.leading_term()?;
        let (mb, _) = b.leading_term()?;
        if !(a.is_monomial() && b.is_monomial()) {
            return None;
        }
        let mut p = Self::empty(a.vars.clone());
        p.terms.insert(ma.lcm(mb), C::one());
        Some(p)
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut p = Self::empty(self.vars.clone());
        for (t, c) in &self.terms {
            p.terms.insert(t.checked_div(m)?, c.clone());
        }
        Some(p)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (num, d) = self.unify(divisor);
        let (lead_m, lead_c) = d.leading_term()?;
        let lead_inv = lead_c.inv()?;
        let mut rem = num.into_owned();
        let mut quot = Self::empty(rem.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(lead_m)?;
            let qc = c.clone() * &lead_inv;
            let mut t = Self::empty(rem.vars.clone());
            t.terms.insert(qm.clone(), qc.clone());
            rem = &rem - &(&t * d.as_ref());
            quot.accumulate(qm, qc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Exact evaluation; every variable that occurs must be bound.
    pub fn evaluate(&self, lookup: &dyn Fn(&str) -> Option<C>) -> Result<C> {
        let mut values: Vec<Option<C>> = vec![None; self.vars.len()];
        for name in self.used_vars() {
            let idx = self.vars.iter().position(|v| *v == name).unwrap();
            let v = lookup(&name).ok_or_else(|| Error::MissingVariable(name.clone()))?;
            values[idx] = Some(v);
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    let v = values[j].as_ref().unwrap();
                    for _ in 0..*e {
                        t = t * v;
                    }
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Substitutes the bound variables, leaving the rest symbolic.
    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<C>) -> Self {
        let bound: Vec<Option<C>> = self.vars.iter().map(|v| lookup(v)).collect();
        if bound.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut p = Self::empty(self.vars.clone());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (j, value) in bound.iter().enumerate() {
                if let Some(v) = value {
                    for _ in 0..exps[j] {
                        coeff = coeff * v;
                    }
                    exps[j] = 0;
                }
            }
            p.accumulate(Monomial(exps), coeff);
        }
        p
    }

    /// Canonical text: terms in descending graded-lex order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let cs = c.render();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(['+', '-']) {
                format!("({})", mag)
            } else {
                mag
            };
            let body = if m.is_one() {
                mag
            } else if mag == "1" {
                m.render(&self.vars)
            } else {
                format!("{}*{}", mag, m.render(&self.vars))
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        out
    }
}

forward_binop!(impl<C: Scalar> Add, add for Poly<C> => add_ref);
forward_binop!(impl<C: Scalar> Sub, sub for Poly<C> => sub_ref);
forward_binop!(impl<C: Scalar> Mul, mul for Poly<C> => mul_ref);

impl<C: Scalar> std::ops::Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Self {
        Poly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Scalar> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -self.clone()
    }
}

impl<C: Scalar> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl<C: Scalar> Zero for Poly<C> {
    fn zero() -> Self {
        Self::empty(Arc::new(Vec::new()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Poly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Scalar> Scalar for Poly<C> {
    fn inv(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.inv().map(|i| Self::constant_in(&self.vars, i))
    }

    fn render(&self) -> String {
        Poly::render(self)
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_poly, GaussianRational};

    type P = Poly<GaussianRational>;

    fn p(s: &str) -> P {
        parse_poly(s).unwrap()
    }

    #[test]
    fn grlex_rendering() {
        let vars = make_vars(&["r1", "r2", "r3"]);
        let x = p("r1 - r1^2 - r1*r2*r3").with_vars(&vars);
        assert_eq!(x.render(), "-r1*r2*r3-r1^2+r1");
        assert_eq!(p("(1/2+i)*r2 - 3").render(), "(1/2+i)*r2-3");
        assert_eq!(P::zero().render(), "0");
    }

    #[test]
    fn merging_variable_lists() {
        let a = p("r2 + s1_1");
        let b = p("t - r2");
        assert_eq!(&a + &b, p("s1_1 + t"));
        assert_eq!(&a * &b, p("r2*t - r2^2 + s1_1*t - s1_1*r2"));
    }

    #[test]
    fn exact_division() {
        let a = p("r2^2 - 1");
        let b = p("r2 - 1");
        assert_eq!(a.div_exact(&b).unwrap(), p("r2 + 1"));
        assert!(p("r2^2 + 1").div_exact(&b).is_none());
        let m = p("x^2*y*z + x*y^3 - 2*x*y*z");
        assert_eq!(m.div_exact(&p("x*y")).unwrap(), p("x*z + y^2 - 2*z"));
    }

    #[test]
    fn evaluation_and_substitution() {
        let d = p("s1_1*s4_1 - s2_1*s3_1");
        let vals = [("s1_1", 1), ("s2_1", 2), ("s3_1", 3), ("s4_1", 4)];
        let look = |name: &str| {
            vals.iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| GaussianRational::from_integer(*v))
        };
        assert_eq!(
            d.evaluate(&look).unwrap(),
            GaussianRational::from_integer(-2)
        );
        let partial = d.substitute(&|n| (n == "s1_1").then(|| GaussianRational::from_integer(2)));
        assert_eq!(partial, p("2*s4_1 - s2_1*s3_1"));
        assert_eq!(
            d.evaluate(&|_| None),
            Err(Error::MissingVariable("s1_1".into()))
        );
    }

    #[test]
    fn monomial_content_and_lcm() {
        let a = p("r2^2*s1 + r2^3");
        let content = a.monomial_content().unwrap();
        assert_eq!(a.div_monomial(&content).unwrap(), p("s1 + r2"));
        let l = p("r2^2*s").monomial_lcm(&p("3*r2*t")).unwrap();
        assert_eq!(l, p("r2^2*s*t"));
    }
}

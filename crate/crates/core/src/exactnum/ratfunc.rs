use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Poly, Vars};
use super::{forward_binop, Scalar};
use crate::error::{Error, Result};

/// A quotient `num / den` of polynomials with `den != 0`.
///
/// No polynomial GCD is taken. Construction only cancels the common
/// monomial factor and makes `den` monic, which is enough to keep the
/// monomial denominators that occur in practice from growing. Equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RationalFunction {
            den: Poly::constant_in(p.vars(), C::one()),
            num: p,
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn constant_in(vars: &Vars, c: C) -> Self {
        Self::from_poly(Poly::constant_in(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Poly::var(vars, name).map(Self::from_poly)
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<C> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        n.checked_div(&d)
    }

    fn normalized(num: Poly<C>, den: Poly<C>) -> Self {
        let (num, den) = {
            let (a, b) = num.unify(&den);
            (a.into_owned(), b.into_owned())
        };
        if num.is_zero() {
            return RationalFunction {
                den: Poly::constant_in(num.vars(), C::one()),
                num,
            };
        }
        let (mut num, mut den) = (num, den);
        let g_num = num.monomial_content().expect("nonzero numerator");
        let g_den = den.monomial_content().expect("nonzero denominator");
        let common = {
            let a = g_num.exponents();
            let b = g_den.exponents();
            a.iter().zip(b).map(|(x, y)| *x.min(y)).collect::<Vec<_>>()
        };
        if common.iter().any(|&e| e > 0) {
            let m = Poly::<C>::from_terms(num.vars(), [(common, C::one())]);
            let (mono, _) = m.leading_term().unwrap();
            num = num.div_monomial(mono).unwrap();
            den = den.div_monomial(mono).unwrap();
        }
        let lead = den.leading_term().unwrap().1.clone();
        if !lead.is_one() {
            let li = lead.inv().expect("leading coefficient is invertible");
            num = num.scale(&li);
            den = den.scale(&li);
        }
        RationalFunction { num, den }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(l) = self.den.monomial_lcm(&rhs.den) {
            let a = l.div_exact(&self.den).expect("lcm is a multiple");
            let b = l.div_exact(&rhs.den).expect("lcm is a multiple");
            return Self::normalized(&self.num * &a + &rhs.num * &b, l);
        }
        Self::normalized(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&-rhs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Division, failing when `rhs` is the zero rational function.
    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|r| self * &r).ok_or(Error::DivisionByZero)
    }

    /// Exact value at a point. Fails if a variable is unbound or the
    /// denominator vanishes there.
    pub fn evaluate(&self, lookup: &dyn Fn(&str) -> Option<C>) -> Result<C> {
        let d = self.den.evaluate(lookup)?;
        if d.is_zero() {
            let point: Vec<String> = self
                .den
                .used_vars()
                .into_iter()
                .filter_map(|v| lookup(&v).map(|x| format!("{}={}", v, x.render())))
                .collect();
            return Err(Error::DenominatorVanishes(format!(
                "{{{}}} (denominator {})",
                point.join(", "),
                self.den.render()
            )));
        }
        let n = self.num.evaluate(lookup)?;
        n.checked_div(&d).ok_or(Error::DivisionByZero)
    }

    /// Partial substitution. Fails if the denominator becomes zero.
    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<C>) -> Result<Self> {
        Self::new(self.num.substitute(lookup), self.den.substitute(lookup))
    }

    pub fn used_vars(&self) -> Vec<String> {
        let mut v = self.num.used_vars();
        for x in self.den.used_vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }

    pub fn render(&self) -> String {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return self.num.render();
        }
        let wrap = |p: &Poly<C>| {
            let s = p.render();
            if p.num_terms() > 1 || s.starts_with('-') {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

forward_binop!(impl<C: Scalar> Add, add for RationalFunction<C> => add_ref);
forward_binop!(impl<C: Scalar> Sub, sub for RationalFunction<C> => sub_ref);
forward_binop!(impl<C: Scalar> Mul, mul for RationalFunction<C> => mul_ref);

impl<C: Scalar> std::ops::Neg for RationalFunction<C> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<C: Scalar> std::ops::Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        -self.clone()
    }
}

/// `a/b == c/d` iff `a*d - c*b` is the zero polynomial.
impl<C: Scalar> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Scalar> Zero for RationalFunction<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Scalar> One for RationalFunction<C> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<C: Scalar> Scalar for RationalFunction<C> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    fn render(&self) -> String {
        RationalFunction::render(self)
    }
}

impl<C: Scalar> From<Poly<C>> for RationalFunction<C> {
    fn from(p: Poly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_poly, GaussianRational};

    type R = RationalFunction<GaussianRational>;

    fn rf(num: &str, den: &str) -> R {
        R::new(parse_poly(num).unwrap(), parse_poly(den).unwrap()).unwrap()
    }

    fn p(s: &str) -> R {
        R::from_poly(parse_poly(s).unwrap())
    }

    #[test]
    fn multiplicative_inverse() {
        let r2 = p("r2");
        assert_eq!(&r2 * &rf("1", "r2"), R::one());
        assert_eq!((&r2 * &rf("1", "r2")).render(), "1");
    }

    #[test]
    fn cross_multiplication_equality() {
        assert_eq!(rf("r2^2 - 1", "r2 - 1"), p("r2 + 1"));
        assert_ne!(rf("r2", "r3"), rf("r3", "r2"));
        assert_eq!(rf("0", "r2"), rf("0", "r2*s1_1"));
        assert_eq!(R::one() - p("r2") * rf("1", "r2"), R::zero());
    }

    #[test]
    fn additive_inverse() {
        assert!((rf("1", "r2") + rf("-1", "r2")).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p("r2").try_div(&R::zero()), Err(Error::DivisionByZero));
        assert!(R::new(parse_poly("1").unwrap(), parse_poly("0").unwrap()).is_err());
    }

    #[test]
    fn evaluation_errors() {
        let x = rf("1", "r2");
        let two = |n: &str| (n == "r2").then(|| GaussianRational::from_integer(2));
        assert_eq!(
            x.evaluate(&two).unwrap(),
            GaussianRational::from_ratio(1, 2)
        );
        let zero = |n: &str| (n == "r2").then(GaussianRational::zero);
        assert!(matches!(
            x.evaluate(&zero),
            Err(Error::DenominatorVanishes(_))
        ));
        assert_eq!(
            x.evaluate(&|_| None),
            Err(Error::MissingVariable("r2".into()))
        );
    }

    #[test]
    fn monomial_denominators_stay_small() {
        let mut acc = R::zero();
        for k in 1..6 {
            acc = acc + rf("s", &format!("r2^{}", k));
        }
        assert!(acc.denom().is_monomial());
        assert_eq!(acc.denom().total_degree(), Some(5));
        assert_eq!(rf("2*r2*s", "4*r2^2").render(), "1/2*s/r2");
    }
}

//! Exact univariate polynomials in `x` over the rationals.

use std::{
    fmt,
    ops::{Add, AddAssign, Mul, Neg, Sub},
    str::FromStr,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense coefficient vector, lowest degree first. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// `(x^m - 1)/(x - 1) = 1 + x + ... + x^{m-1}`; zero for `m = 0`.
    pub fn geom(m: usize) -> Self {
        Poly {
            coeffs: vec![BigRational::one(); m],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_integer(&self, at: i64) -> BigRational {
        self.eval(&BigRational::from_integer(at.into()))
    }

    /// `(integral, nonneg)`: all coefficients are integers, and additionally
    /// all are non-negative.
    pub fn is_integral_nonneg(&self) -> (bool, bool) {
        let integral = self.coeffs.iter().all(BigRational::is_integer);
        let nonneg = integral && self.coeffs.iter().all(|c| !c.is_negative());
        (integral, nonneg)
    }

    /// Integer coefficients in ascending degree, if the polynomial is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Coefficient strings in ascending degree: integers or `p/q`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()).ok_or_else(|| Error::PolySyntax(s.as_ref().into())))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Poly {
    /// Descending degree with explicit coefficients: `x^4 + 2*x^3 - 1/2*x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let var = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                d => format!("x^{d}"),
            };
            if deg == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses the text form written by `Display`. A `*` between coefficient
    /// and `x` is optional, so `5x^4 + 9x^3` is accepted too.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::PolySyntax(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (idx, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !current.ends_with('^') {
                if idx > 0 {
                    if current.is_empty() {
                        return Err(bad());
                    }
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(bad());
        }
        terms.push((negative, current));

        let mut out = Poly::zero();
        for (negative, term) in terms {
            let (coef, deg) = match term.find('x') {
                None => (parse_rational(&term).ok_or_else(bad)?, 0),
                Some(pos) => {
                    let head = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    let coef = if head.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(head).ok_or_else(bad)?
                    };
                    let tail = &term[pos + 1..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(bad)?
                    };
                    (coef, deg)
                }
            };
            let coef = if negative { -coef } else { coef };
            out += &Poly::monomial(coef, deg);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let x1 = Poly::from_integers([1, 1]);
        assert_eq!(&x1 * &x1, Poly::from_integers([1, 2, 1]));
        let p = Poly::from_integers([1, 2, 2, 2, 1]);
        assert_eq!(p.eval_integer(3), BigRational::from_integer(160.into()));
        let half = Poly::from_integers([0, -1, 1]).scale(&q(1, 2));
        assert_eq!(half.coeffs(), &[q(0, 1), q(-1, 2), q(1, 2)]);
        assert_eq!(half.to_string(), "1/2*x^2 - 1/2*x");
        assert!((&x1 - &x1).is_zero());
    }

    #[test]
    fn geom_examples() {
        assert_eq!(Poly::geom(2), Poly::from_integers([1, 1]));
        assert!(Poly::geom(0).is_zero());
        assert_eq!(Poly::geom(1), Poly::one());
        let xm1 = Poly::from_integers([-1, 1]);
        for m in 0..=64 {
            assert_eq!(
                &Poly::geom(m) * &xm1,
                &Poly::x_pow(m) - &Poly::one(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn integrality() {
        assert_eq!(
            Poly::from_integers([1, 2, 1]).is_integral_nonneg(),
            (true, true)
        );
        assert_eq!(
            Poly::monomial(q(1, 2), 1).is_integral_nonneg(),
            (false, false)
        );
        assert_eq!(
            Poly::from_integers([-1, 1]).is_integral_nonneg(),
            (true, false)
        );
    }

    #[test]
    fn text_form() {
        let p = Poly::from_integers([1, 2, 2, 2, 1]);
        assert_eq!(p.to_string(), "x^4 + 2*x^3 + 2*x^2 + 2*x + 1");
        assert_eq!(Poly::from_integers([1, 1]).to_string(), "x + 1");
        assert_eq!(Poly::from_integers([1, -1]).to_string(), "-x + 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::one().to_string(), "1");
        assert_eq!(
            "5x^4 + 9x^3 + 6x^2 + 3x + 1".parse::<Poly>().unwrap(),
            Poly::from_integers([1, 3, 6, 9, 5])
        );
        assert_eq!(
            "-1/2*x + 1/2".parse::<Poly>().unwrap(),
            Poly::from_coeffs(vec![q(1, 2), q(-1, 2)])
        );
        assert_eq!("x".parse::<Poly>().unwrap(), Poly::x_pow(1));
        assert!("x +".parse::<Poly>().is_err());
        assert!("2*y".parse::<Poly>().is_err());
        assert!("".parse::<Poly>().is_err());
    }

    #[test]
    fn coeff_strings() {
        let p = Poly::from_coeffs(vec![q(1, 1), q(-1, 2)]);
        assert_eq!(p.coeff_strings(), ["1", "-1/2"]);
        assert_eq!(Poly::from_coeff_strings(&p.coeff_strings()).unwrap(), p);
        assert!(Poly::from_coeff_strings(&["1/0"]).is_err());
    }
}

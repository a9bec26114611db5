//! Exact scalars: big rationals, the deformation parameter and rational
//! functions in the spectral parameter `z`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn int(v: i64) -> Rat {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn pow(&self, e: i64) -> Rat {
        if e >= 0 {
            Rat(num::pow(self.0.clone(), e as usize))
        } else {
            Rat(num::pow(self.0.recip(), (-e) as usize))
        }
    }

    /// Exact square root if `self` is the square of a rational.
    pub fn sqrt(&self) -> Option<Rat> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::int(v)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Rat {
        Rat(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::Usage(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(n, d)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(&self.0 $op &o.0)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0 $op o.0)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0 $op &o.0)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(&self.0 $op o.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);
rat_binop!(Div, div, /);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, o: &Rat) {
        self.0 *= &o.0;
    }
}

/// The deformation parameter, carried as `t = q^{1/2}`.
#[derive(Clone, Debug)]
pub struct DeformParam {
    t: Rat,
    q: Rat,
    // t^k for k in -CACHE..=CACHE
    cache: Vec<Rat>,
}

const CACHE: i64 = 64;

impl DeformParam {
    pub fn new(t: Rat) -> Result<DeformParam, Error> {
        if t.is_zero() || t.is_one() || (-&t).is_one() {
            return Err(Error::Degenerate(format!("t = {t} is not generic")));
        }
        let q = &t * &t;
        let cache = (-CACHE..=CACHE).map(|k| t.pow(k)).collect();
        Ok(DeformParam { t, q, cache })
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// `t^k`, i.e. `q^{k/2}`.
    pub fn t_pow(&self, k: i64) -> Rat {
        if k.abs() <= CACHE {
            self.cache[(k + CACHE) as usize].clone()
        } else {
            self.t.pow(k)
        }
    }

    pub fn q_pow(&self, k: i64) -> Rat {
        self.t_pow(2 * k)
    }

    /// Rejects parameters for which `q^k = 1` for some `0 < |k| <= bound`.
    pub fn genericity_guard(&self, bound: i64) -> Result<(), Error> {
        for k in 1..=bound {
            if self.q_pow(k).is_one() {
                return Err(Error::Degenerate(format!("q^{k} = 1 for q = {}", self.q)));
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Poly {
        while c.last().is_some_and(Rat::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Rat::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.lead();
        let mut r = self.0.clone();
        let mut qt = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] / &lead;
            for (j, dc) in d.0.iter().enumerate() {
                let v = &c * dc;
                r[k + j] -= &v;
            }
            qt[k] = c;
            r.pop();
            while r.last().is_some_and(Rat::is_zero) {
                r.pop();
            }
        }
        (Poly::new(qt), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots, via the rational root theorem on the primitive integer form.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c.as_big() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut p = self.clone();
        let mut lo = 0;
        while ints[lo].is_zero() {
            lo += 1;
        }
        if lo > 0 {
            out.push(Rat::zero());
            p = Poly::new(p.0[lo..].to_vec());
        }
        let a0 = ints[lo].abs();
        let an = ints[ints.len() - 1].abs();
        let small = |x: &BigInt| x.to_u64().filter(|v| *v <= 1_000_000);
        let (Some(a0), Some(an)) = (small(&a0), small(&an)) else {
            return out;
        };
        let divisors = |n: u64| (1..=n).filter(move |d| n % d == 0);
        for num in divisors(a0) {
            for den in divisors(an) {
                for s in [1i64, -1] {
                    let r = Rat::new(s * num as i64, den as i64);
                    if !out.contains(&r) && p.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }
}

/// Rational function in `z` in normal form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFuncZ {
    num: Poly,
    den: Poly,
}

impl RatFuncZ {
    pub fn new(num: Poly, den: Poly) -> RatFuncZ {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFuncZ::constant(Rat::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().recip();
        RatFuncZ { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn constant(c: Rat) -> RatFuncZ {
        RatFuncZ { num: Poly::constant(c), den: Poly::constant(Rat::one()) }
    }

    pub fn one() -> RatFuncZ {
        RatFuncZ::constant(Rat::one())
    }

    /// `(c0 + c1 z) / (d0 + d1 z)`.
    pub fn linear(c0: Rat, c1: Rat, d0: Rat, d1: Rat) -> RatFuncZ {
        RatFuncZ::new(Poly::new(vec![c0, c1]), Poly::new(vec![d0, d1]))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.lead())
    }

    pub fn mul(&self, o: &RatFuncZ) -> RatFuncZ {
        RatFuncZ::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFuncZ) -> RatFuncZ {
        assert!(!o.num.is_zero(), "division by the zero function");
        RatFuncZ::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &RatFuncZ) -> RatFuncZ {
        RatFuncZ::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn scale(&self, c: &Rat) -> RatFuncZ {
        RatFuncZ::new(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, z: &Rat) -> Result<Rat, Error> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} has a pole at z = {z}")));
        }
        Ok(self.num.eval(z) / d)
    }

    /// `f(1/z)` as a rational function.
    pub fn invert_arg(&self) -> RatFuncZ {
        let len = self.num.coeffs().len().max(self.den.coeffs().len());
        let flip = |p: &Poly| {
            let mut c = vec![Rat::zero(); len];
            for (i, x) in p.coeffs().iter().enumerate() {
                c[len - 1 - i] = x.clone();
            }
            Poly::new(c)
        };
        RatFuncZ::new(flip(&self.num), flip(&self.den))
    }

    /// Zeros of numerator and denominator that are rational, zeros first.
    pub fn rational_zeros_and_poles(&self) -> (Vec<Rat>, Vec<Rat>) {
        (self.num.rational_roots(), self.den.rational_roots())
    }
}

impl fmt::Display for RatFuncZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| {
            if p.is_zero() {
                return "0".to_string();
            }
            let mut out = String::new();
            for (i, c) in p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let neg = c < &Rat::zero();
                let mag = c.abs();
                let pow = match i {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{i}"),
                };
                let body = match (i, mag.is_one()) {
                    (0, _) => mag.to_string(),
                    (_, true) => pow,
                    _ => format!("{mag}*{pow}"),
                };
                match (out.is_empty(), neg) {
                    (true, true) => out.push('-'),
                    (true, false) => {}
                    (false, true) => out.push_str(" - "),
                    (false, false) => out.push_str(" + "),
                }
                out.push_str(&body);
            }
            out
        };
        write!(f, "({})/({})", show(&self.num), show(&self.den))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Vec<Rat>,
    den: Vec<Rat>,
}

impl Serialize for RatFuncZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.0.clone(), den: self.den.0.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFuncZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RatFuncZ, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        let den = Poly::new(r.den);
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RatFuncZ::new(Poly::new(r.num), den))
    }
}

/// Sign of a bracket `<a>_+` or `<a>_-`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_parity(same: bool) -> Sign {
        if same {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `<a>_s = (1 + s z q^a) / (z + s q^a)`.
pub fn bracket(a: i64, sign: Sign, dp: &DeformParam) -> Result<RatFuncZ, Error> {
    let s = Rat::int(sign.value());
    let qa = dp.q_pow(a);
    if a != 0 && dp.q_pow(2 * a).is_one() {
        return Err(Error::Degenerate(format!("<{a}>{sign} degenerates: q^{} = 1", 2 * a)));
    }
    let sq = &s * &qa;
    Ok(RatFuncZ::linear(Rat::one(), sq.clone(), sq, Rat::one()))
}

pub fn ratfunc_eval(f: &RatFuncZ, z0: &Rat) -> Result<Rat, Error> {
    f.eval(z0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp() -> DeformParam {
        DeformParam::new(Rat::new(6, 5)).unwrap()
    }

    #[test]
    fn bracket_zero_is_constant() {
        assert_eq!(bracket(0, Sign::Plus, &dp()).unwrap(), RatFuncZ::one());
        assert_eq!(bracket(0, Sign::Minus, &dp()).unwrap(), RatFuncZ::constant(Rat::int(-1)));
    }

    #[test]
    fn bracket_substitution() {
        let d = DeformParam::new(Rat::int(2)).unwrap();
        let b = bracket(2, Sign::Plus, &d).unwrap();
        assert_eq!(b.eval(&Rat::int(3)).unwrap(), Rat::new(49, 19));
    }

    #[test]
    fn rho_v_at_zero() {
        let d = dp();
        let q2 = d.q_pow(2);
        let f = RatFuncZ::linear(-&q2, Rat::one(), Rat::one(), -&q2);
        assert_eq!(f.eval(&Rat::zero()).unwrap(), -q2);
    }

    #[test]
    fn pole_is_reported() {
        let f = bracket(1, Sign::Plus, &dp()).unwrap();
        let pole = -dp().q_pow(1);
        assert!(matches!(f.eval(&pole), Err(Error::Pole(_))));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("6/4".parse::<Rat>().unwrap().to_string(), "3/2");
        assert_eq!("-8/4".parse::<Rat>().unwrap().to_string(), "-2");
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(Rat::new(25, 36).sqrt(), Some(Rat::new(5, 6)));
        assert_eq!(Rat::new(2, 1).sqrt(), None);
    }

    #[test]
    fn rational_roots_of_bracket() {
        let d = dp();
        let b = bracket(-2, Sign::Minus, &d).unwrap();
        let (z, p) = b.rational_zeros_and_poles();
        assert_eq!(z, vec![d.q_pow(2)]);
        assert_eq!(p, vec![d.q_pow(-2)]);
    }

    #[test]
    fn degenerate_t_rejected() {
        assert!(DeformParam::new(Rat::one()).is_err());
        assert!(DeformParam::new(Rat::int(-1)).is_err());
        assert!(DeformParam::new(Rat::zero()).is_err());
    }
}

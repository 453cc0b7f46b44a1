//! Exact arithmetic in the rational function field ℚ(v), `v = q^(1/D)`.
//!
//! A [`Scalar`] is stored as `v^shift * num / den` with `num`, `den` integer
//! polynomials that are coprime, not divisible by `v`, share no integer
//! content, and where `den` has a positive leading coefficient. Under these
//! conditions the representation is unique, so derived equality and hashing
//! are equality of rational functions.

mod field;
mod poly;

pub use field::Field;
pub use poly::Poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at v = {0}")]
    PoleAtPoint(String),
    #[error("exponent {exponent} is not representable with v = q^(1/{d_root})")]
    ExponentNotRepresentable { exponent: String, d_root: u32 },
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
    shift: i64,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one(), shift: 0 }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: Poly::constant(n), den: Poly::one(), shift: 0 }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar::from_parts(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()), 0)
            .expect("rational with nonzero denominator")
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Scalar { num: Poly::one(), den: Poly::one(), shift: k }
    }

    /// `c * v^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        if c == 0 {
            return Scalar::zero();
        }
        Scalar { num: Poly::constant(BigInt::from(c)), den: Poly::one(), shift: k }
    }

    /// `v^shift * num / den`, canonicalized.
    pub fn from_parts(num: Poly, den: Poly, shift: i64) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den, shift))
    }

    /// Laurent polynomial `v^shift * p`.
    pub fn from_poly(p: Poly, shift: i64) -> Self {
        Scalar::canonical(p, Poly::one(), shift)
    }

    fn canonical(num: Poly, den: Poly, shift: i64) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let tn = num.low_order();
        let td = den.low_order();
        let mut num = num.shift_down(tn);
        let mut den = den.shift_down(td);
        let shift = shift + tn as i64 - td as i64;
        if !den.is_constant() && !num.is_one() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = num.content().gcd(&den.content());
        let c = if den.lc().is_negative() { -c } else { c };
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        Scalar { num, den, shift }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Power of `v` factored out of numerator and denominator.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True for `c * v^k` with rational `c`.
    pub fn is_monomial(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is a constant (a Laurent polynomial over ℚ).
    pub fn is_laurent(&self) -> bool {
        self.den.is_constant()
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone(), -self.shift))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u32;
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
            shift: self.shift * e as i64,
        }
        .renormalized()
    }

    fn renormalized(self) -> Scalar {
        let Scalar { num, den, shift } = self;
        // powers of coprime pairs stay coprime; only content and sign need fixing
        let c = num.content().gcd(&den.content());
        let c = if den.lc().is_negative() { -c } else { c };
        if num.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: num.div_scalar(&c), den: den.div_scalar(&c), shift }
    }

    /// Substitutes `v -> v^m`, re-expressing a value in `q^(1/D)` as one in `q^(1/(m D))`.
    pub fn inflate(&self, m: u32) -> Scalar {
        let m = m as usize;
        Scalar {
            num: self.num.inflate(m),
            den: self.den.inflate(m),
            shift: self.shift * m as i64,
        }
    }

    /// Exact value at `v = x`.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) || (Zero::is_zero(x) && self.shift < 0) {
            return Err(ScalarError::PoleAtPoint(x.to_string()));
        }
        if self.is_zero() {
            return Ok(<BigRational as Zero>::zero());
        }
        let n = self.num.eval(x);
        let p = if self.shift >= 0 {
            num_traits::pow(x.clone(), self.shift as usize)
        } else {
            num_traits::pow(x.recip(), (-self.shift) as usize)
        };
        Ok(n / d * p)
    }

    /// Floating-point value at `v = x > 0`, for diagnostics only.
    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x) * x.powi(self.shift as i32)
    }

    /// Numerator and denominator as ordinary polynomials in `v`.
    pub fn as_fraction(&self) -> (Poly, Poly) {
        if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.shift) as usize))
        }
    }

    /// Number of poles in `0 < v <= 1`, counting `v = 0` separately is not needed
    /// since the interval is open at zero.
    pub fn poles_in_unit_interval(&self) -> usize {
        if self.den.is_constant() {
            return 0;
        }
        self.den.count_roots_in(&<BigRational as Zero>::zero(), &<BigRational as One>::one())
    }

    /// Sign at a positive real point `v` certified to lie in `(lo, hi)`.
    /// Returns `None` if numerator or denominator may vanish in the bracket.
    pub fn sign_in_bracket(&self, lo: &BigRational, hi: &BigRational) -> Option<i8> {
        if self.is_zero() {
            return Some(0);
        }
        for p in [&self.num, &self.den] {
            if !p.is_constant() && (p.count_roots_in(lo, hi) > 0 || Zero::is_zero(&p.eval(hi))) {
                return None;
            }
        }
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        let val = self.evaluate(&mid).ok()?;
        Some(if val.is_positive() { 1 } else { -1 })
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn add_impl(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let m = a.shift.min(b.shift);
    let an = a.num.shift_up((a.shift - m) as usize);
    let bn = b.num.shift_up((b.shift - m) as usize);
    let bn = if negate_b { bn.neg() } else { bn };
    if a.den == b.den {
        return Scalar::canonical(an.add(&bn), a.den.clone(), m);
    }
    if a.den.is_constant() && b.den.is_constant() {
        let (da, db) = (a.den.lc(), b.den.lc());
        let l = da.lcm(&db);
        let num = an.scale(&(&l / &da)).add(&bn.scale(&(&l / &db)));
        return Scalar::canonical(num, Poly::constant(l), m);
    }
    let num = an.mul(&b.den).add(&bn.mul(&a.den));
    Scalar::canonical(num, a.den.mul(&b.den), m)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_constant() && rhs.den.is_constant() {
            return Scalar::canonical(self.num.mul(&rhs.num), self.den.mul(&rhs.den), shift);
        }
        // cross-cancel so the product of coprime pairs stays small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.is_constant() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), rhs.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_constant() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let c = num.content().gcd(&den.content());
        let c = if den.lc().is_negative() { -c } else { c };
        Scalar { num: num.div_scalar(&c), den: den.div_scalar(&c), shift }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone(), shift: self.shift }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                <&Scalar as $tr<&Scalar>>::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                <&Scalar as $tr<&Scalar>>::$m(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.as_fraction();
        write!(f, "({})/({})", n.format_with("v"), d.format_with("v"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `"(<poly>)/(<poly>)"`, `"(<poly>)"` or a bare polynomial in `v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match split_fraction(s) {
            Some((n, d)) => (n, d),
            None => (s.trim_matches(|c| c == '(' || c == ')'), "1"),
        };
        let (pn, sn) = parse_laurent(num)?;
        let (pd, sd) = parse_laurent(den)?;
        Scalar::from_parts(pn, pd, sn - sd)
    }
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let s = s.strip_prefix('(')?;
    let close = s.find(")/(")?;
    let num = &s[..close];
    let den = s[close + 3..].strip_suffix(')')?;
    Some((num, den))
}

/// Parses a sum of terms `c*v^k`; negative exponents are moved into the returned shift.
fn parse_laurent(s: &str) -> Result<(Poly, i64), ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let mut terms: Vec<(BigInt, i64)> = Vec::new();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err());
    }
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        // term ends at the next +/- that is not an exponent sign
        let bytes = body.as_bytes();
        let mut end = bytes.len();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                end = i;
                break;
            }
        }
        let term = &body[..end];
        rest = &body[end..];
        let (coef, exp) = if let Some(pos) = term.find('v') {
            let c = term[..pos].trim_end_matches('*');
            let c = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| err())? };
            let e = &term[pos + 1..];
            let e = if e.is_empty() { 1 } else { e.strip_prefix('^').ok_or_else(err)?.parse::<i64>().map_err(|_| err())? };
            (c, e)
        } else {
            (term.parse::<BigInt>().map_err(|_| err())?, 0)
        };
        terms.push((coef * sign, exp));
    }
    let min = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
    let max = terms.iter().map(|t| t.1 - min).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); max + 1];
    for (c, e) in terms {
        coeffs[(e - min) as usize] += c;
    }
    Ok((Poly::from_coeffs(coeffs), min))
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-computation choice of `D` in `v = q^(1/D)`, and constructors for the
/// powers of `q` and quantum integers used by the module actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QContext {
    pub d_root: u32,
}

impl QContext {
    pub fn new(d_root: u32) -> Self {
        assert!(d_root > 0);
        QContext { d_root }
    }

    /// `q^e` for a rational exponent `e`, which must lie in `(1/D)ℤ`.
    pub fn q_pow(&self, e: &BigRational) -> Result<Scalar, ScalarError> {
        let scaled = e * BigRational::from_integer(BigInt::from(self.d_root));
        if !scaled.is_integer() {
            return Err(ScalarError::ExponentNotRepresentable { exponent: e.to_string(), d_root: self.d_root });
        }
        let k: i64 = scaled.to_integer().try_into().expect("exponent fits in i64");
        Ok(Scalar::v_pow(k))
    }

    /// `q^k` for an integer exponent.
    pub fn q_int_pow(&self, k: i64) -> Scalar {
        Scalar::v_pow(k * self.d_root as i64)
    }

    /// Symmetric quantum integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
    pub fn q_number(&self, n: i64, d: i64) -> Scalar {
        if n == 0 {
            return Scalar::zero();
        }
        let step = 2 * d * self.d_root as i64;
        let m = n.unsigned_abs() as usize;
        // [m] = sum_{k=0}^{m-1} v^{step*k - step*(m-1)/2}
        let mut coeffs = vec![BigInt::zero(); (m - 1) * step as usize + 1];
        for k in 0..m {
            coeffs[k * step as usize] = BigInt::one();
        }
        let p = Poly::from_coeffs(coeffs);
        let s = Scalar::from_poly(p, -((m as i64 - 1) * step / 2));
        if n < 0 {
            -s
        } else {
            s
        }
    }

    /// Gaussian binomial `[n choose k]_{q^d}`.
    pub fn q_binomial(&self, n: i64, k: i64, d: i64) -> Scalar {
        if k < 0 || k > n {
            return Scalar::zero();
        }
        let mut acc = Scalar::one();
        for j in 0..k {
            acc = &(&acc * &self.q_number(n - j, d)) / &self.q_number(j + 1, d);
        }
        acc
    }
}

/// Rational helper.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * v^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Number of trailing factors of `v`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `v^k`; the caller guarantees `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Substitutes `v -> v^m`.
    pub fn inflate(&self, m: usize) -> Poly {
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.degree() * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = c.clone();
        }
        Poly { coeffs }
    }

    /// Inverse of [`Poly::inflate`]; the caller guarantees every exponent is a multiple of `m`.
    pub fn deflate(&self, m: usize) -> Poly {
        if m == 1 {
            return self.clone();
        }
        Poly::from_coeffs(self.coeffs.iter().step_by(m).cloned().collect())
    }

    /// gcd of the exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(k, c)| *k > 0 && !c.is_zero())
            .fold(0usize, |g, (k, _)| g.gcd(&k))
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a - b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(-b),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.is_constant() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_constant() {
            return other.scale(&self.coeffs[0]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact division by an integer.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Poly) -> Poly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        if self.is_zero() || self.degree() < b.degree() {
            return self.clone();
        }
        let lb = b.lc();
        let db = b.degree();
        let mut r = self.coeffs.clone();
        let mut count = self.degree() - db + 1;
        while !r.is_empty() && r.len() > db {
            let dr = r.len() - 1;
            let t = r[dr].clone();
            let shift = dr - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (k, bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    r[k + shift] -= &t * bc;
                }
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            count -= 1;
        }
        let r = Poly::from_coeffs(r);
        if count > 0 {
            r.scale(&num_traits::pow(lb, count))
        } else {
            r
        }
    }

    /// Exact quotient `self / b` over the integers, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if b.is_constant() {
            let c = &b.coeffs[0];
            if self.coeffs.iter().all(|a| (a % c).is_zero()) {
                return Some(self.div_scalar(c));
            }
            return None;
        }
        if self.degree() < b.degree() {
            return None;
        }
        let db = b.degree();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - db + 1];
        while r.len() > db {
            let dr = r.len() - 1;
            let (t, rem) = r[dr].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let shift = dr - db;
            for (k, bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    r[k + shift] -= &t * bc;
                }
            }
            q[shift] = t;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if r.is_empty() {
            Some(Poly::from_coeffs(q))
        } else {
            None
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient,
    /// times the gcd of the contents.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let content = self.content().gcd(&other.content());
        if self.is_constant() || other.is_constant() {
            return Poly::constant(content);
        }
        let low = self.low_order().min(other.low_order());
        let a = self.shift_down(self.low_order());
        let b = other.shift_down(other.low_order());
        let m = a.exponent_gcd().gcd(&b.exponent_gcd());
        let g = if m > 1 {
            subresultant_gcd(&a.deflate(m), &b.deflate(m)).inflate(m)
        } else {
            subresultant_gcd(&a, &b)
        };
        g.scale(&content).shift_up(low)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`, by Sturm's theorem.
    pub fn count_roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.is_zero() {
            panic!("root count of the zero polynomial");
        }
        if self.is_constant() {
            return 0;
        }
        let chain = sturm_chain(self);
        let vl = sign_changes(&chain, lo);
        let vh = sign_changes(&chain, hi);
        vl.saturating_sub(vh)
    }

    /// Formats with the given variable name, highest degree first.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

fn normalize_sign(p: Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Subresultant PRS gcd of two nonconstant polynomials; returns the primitive gcd.
fn subresultant_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if b.is_constant() {
            return if b.is_zero() { a.primitive() } else { Poly::one() };
        }
        let delta = (a.degree() - b.degree()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            return b.primitive();
        }
        if r.is_constant() {
            return Poly::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta as usize);
        a = b;
        b = r.div_scalar(&divisor);
        g = a.lc();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, (delta - 1) as usize),
        };
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        // prem multiplies by lc(b)^k; fix the sign so the chain keeps true remainders' signs.
        let k = (a.degree() + 1).saturating_sub(b.degree()) as u32;
        let mut r = a.prem(b);
        if b.lc().is_negative() && k % 2 == 1 {
            r = r.neg();
        }
        let r = r.neg();
        if r.is_zero() {
            break;
        }
        let r = {
            let c = r.content();
            r.div_scalar(&c)
        };
        chain.push(r);
    }
    chain
}

fn sign_changes(chain: &[Poly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for p in chain {
        let val = p.eval(x);
        let s = if val.is_positive() {
            1
        } else if val.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("v"))
    }
}

//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`Scalar`] is a polynomial in `ζ_m` with rational coefficients, kept
//! reduced modulo the `m`-th cyclotomic polynomial. Values of different
//! conductors are combined in `Q(ζ_lcm)`. Conductor 1 is plain `Q`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of `Φ_m`, lowest degree first.
fn cyclotomic_poly(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Euler totient.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

/// Exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { conductor: 1, coeffs: vec![q] }
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        if m <= 2 {
            return if m == 2 && e == 1 { Self::from_int(-1) } else { Self::one() };
        }
        let n = totient(m);
        let mut raw = vec![BigRational::zero(); e.max(n - 1) + 1];
        raw[e] = BigRational::one();
        Self::reduce(m, raw)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(m: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(m);
        let n = phi.len() - 1;
        if raw.len() > n {
            for i in (n..raw.len()).rev() {
                let c = std::mem::replace(&mut raw[i], BigRational::zero());
                if c.is_zero() {
                    continue;
                }
                for (j, p) in phi.iter().enumerate().take(n) {
                    if !p.is_zero() {
                        raw[i - n + j] -= &c * BigRational::from_integer(p.clone());
                    }
                }
            }
        }
        raw.resize(n, BigRational::zero());
        Scalar { conductor: m, coeffs: raw }
    }

    /// Re-express in `Q(ζ_target)`; `self.conductor` must divide `target`.
    fn lift(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        debug_assert_eq!(target % self.conductor, 0);
        let step = (target / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        Self::reduce(target, raw)
    }

    /// Re-express in `Q(ζ_target)` when this field embeds there.
    pub fn in_field(&self, target: u32) -> Option<Self> {
        let m = if self.as_rational().is_some() { 1 } else { self.conductor };
        if !target.is_multiple_of(m) {
            return None;
        }
        let base = if m == 1 { Scalar::from_rational(self.coeffs[0].clone()) } else { self.clone() };
        Some(base.lift(target))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l), other.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            let mut out = Scalar::from_rational(q.recip());
            if self.conductor != 1 {
                out = out.lift(self.conductor);
            }
            return Ok(out);
        }
        let m = self.conductor;
        let phi: Vec<BigRational> =
            cyclotomic_poly(m).iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let a = trim(self.coeffs.clone());
        // extended Euclid: find s with s*a ≡ 1 mod Φ_m
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
        Ok(Self::reduce(m, s))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Numerator/denominator strings of every coefficient, lowest power first.
    pub fn to_exact_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], trim(rem));
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        q[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.conductor == rhs.conductor {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return Scalar { conductor: self.conductor, coeffs };
        }
        let (a, b) = self.aligned(rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Scalar { conductor: 1, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        if let Some(q) = self.as_rational() {
            let target = self.conductor.lcm(&rhs.conductor);
            let b = rhs.lift(target);
            let coeffs = b.coeffs.iter().map(|c| c * q).collect();
            return Scalar { conductor: target, coeffs };
        }
        if rhs.as_rational().is_some() {
            return rhs * self;
        }
        let (a, b) = self.aligned(rhs);
        let mut raw = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Scalar::reduce(a.conductor, raw)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write_rational(f, q);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write_rational(f, &a)?,
                (_, true) => {}
                _ => {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "z{}", self.conductor)?,
                _ => write!(f, "z{}^{}", self.conductor, i)?,
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Small integer value, if the scalar is one.
pub fn small_int(s: &Scalar) -> Option<i64> {
    let q = s.as_rational()?;
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = Scalar::root_of_unity(4, 1);
        assert_eq!(&z * &z, Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_two() {
        assert_eq!(Scalar::from_int(2).inv().unwrap(), Scalar::from_frac(1, 2));
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zeta3_plus_zeta3_squared() {
        let a = Scalar::root_of_unity(3, 1);
        let b = Scalar::root_of_unity(3, 2);
        assert_eq!(&a + &b, Scalar::from_int(-1));
    }

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_poly(12);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(*p, want);
        assert_eq!(totient(12), 4);
        assert_eq!(cyclotomic_poly(1).len(), 2);
    }

    #[test]
    fn mixed_conductors() {
        let i = Scalar::root_of_unity(4, 1);
        let w = Scalar::root_of_unity(3, 1);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p.pow(12), Scalar::one());
        assert_ne!(p.pow(6), Scalar::one());
        let inv = p.inv().unwrap();
        assert_eq!(&inv * &p, Scalar::one());
    }

    #[test]
    fn cyclotomic_inverse() {
        let z = Scalar::root_of_unity(5, 1);
        let a = &Scalar::from_int(2) + &z;
        assert_eq!(&a.inv().unwrap() * &a, Scalar::one());
    }
}

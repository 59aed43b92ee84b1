//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(m)-1)` of
//! `Q[x]/Phi_m(x)` and are always reduced, so equality is coordinate-wise.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// Integer coefficients (lowest degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_exact_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Static data of `Q(zeta_m)`: the modulus `Phi_m` and reduced powers of `x`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl CyclotomicField {
    /// Shared handle for `Q(zeta_m)`.
    pub fn get(m: u32) -> Arc<CyclotomicField> {
        let mut cache = FIELDS.lock().expect("field cache poisoned");
        cache
            .entry(m)
            .or_insert_with(|| Arc::new(CyclotomicField::build(m)))
            .clone()
    }

    fn build(m: u32) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let count = (m as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow coefficient with Phi_m (monic)
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..degree {
                    cur[k] -= top * modulus[k];
                }
            }
        }
        CyclotomicField {
            order: m,
            degree,
            modulus,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `phi(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Coordinates of `x^j mod Phi_m` for `0 <= j < m`.
    fn power(&self, j: usize) -> &[i64] {
        &self.powers[j]
    }
}

/// An element of `Q(zeta_m)` with coefficients in `R`.
#[derive(Clone)]
pub struct Cyclotomic<R> {
    field: Arc<CyclotomicField>,
    coeffs: Vec<R>,
}

impl<R: Rational> Cyclotomic<R> {
    pub fn zero(m: u32) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = vec![R::zero(); field.degree];
        Cyclotomic { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, R::from_int(n))
    }

    pub fn from_frac(m: u32, num: i64, den: i64) -> Self {
        Self::from_rational(m, R::from_frac(num, den))
    }

    pub fn from_rational(m: u32, r: R) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    /// Builds an element from power-basis coordinates, reducing modulo `Phi_m`.
    ///
    /// `coeffs` may be longer than `phi(m)`; entry `j` multiplies `zeta^j`.
    pub fn from_coeffs(m: u32, coeffs: Vec<R>) -> Self {
        let mut z = Self::zero(m);
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            z.add_scaled_power(j, &c);
        }
        z
    }

    /// `zeta_m^k`, with `k` taken modulo `m`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let mut z = Self::zero(m);
        let j = k.rem_euclid(m as i64) as usize;
        for (slot, &c) in z.coeffs.iter_mut().zip(z.field.power(j)) {
            if c != 0 {
                *slot = R::from_int(c);
            }
        }
        z
    }

    fn add_scaled_power(&mut self, j: usize, c: &R) {
        let field = self.field.clone();
        let reduced: Vec<i64>;
        let row = if j < field.powers.len() {
            field.power(j)
        } else {
            reduced = field.power(j % field.order as usize).to_vec();
            &reduced
        };
        for (slot, &t) in self.coeffs.iter_mut().zip(row) {
            if t != 0 {
                *slot = slot.clone() + c.clone() * R::from_int(t);
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == R::one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&R> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.field.order != rhs.field.order {
            Err(Error::OrderMismatch(self.field.order, rhs.field.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.field.degree;
        if n == 1 {
            return Ok(Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].clone() * rhs.coeffs[0].clone()],
            });
        }
        let mut prod = vec![R::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut coeffs: Vec<R> = prod.drain(..n).collect();
        for (off, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &t) in coeffs.iter_mut().zip(self.field.power(n + off)) {
                if t != 0 {
                    *slot = slot.clone() + c.clone() * R::from_int(t);
                }
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, r: &R) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * r.clone()).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&R::from_int(n))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`
    /// against `Phi_m`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.field.order;
        let modulus: Vec<R> = self.field.modulus.iter().map(|&c| R::from_int(c)).collect();
        // invariant: s_i * a == r_i (mod Phi_m)
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<R> = Vec::new();
        let mut s1: Vec<R> = vec![R::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Phi_m is irreducible
        let c = r1[0].clone();
        let inv_c = R::one() / c;
        let scaled: Vec<R> = s1.into_iter().map(|x| x * inv_c.clone()).collect();
        Ok(Self::from_coeffs(m, scaled))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The same field element expressed in `Q(zeta_{m2})`, using
    /// `zeta_m = zeta_{m2}^(m2/m)`.
    pub fn rescale_order(&self, m2: u32) -> Result<Self> {
        let m = self.field.order;
        if !m2.is_multiple_of(m) {
            return Err(Error::OrderNotDivisible { from: m, to: m2 });
        }
        let step = (m2 / m) as usize;
        let mut z = Self::zero(m2);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.add_scaled_power(j * step, c);
            }
        }
        Ok(z)
    }

    /// Exact JSON form `{m, coeffs: [[num, den], ...]}`.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| json!([big_to_json(&c.numer_big()), big_to_json(&c.denom_big())]))
            .collect();
        json!({ "m": self.field.order, "coeffs": coeffs })
    }
}

fn big_to_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    }
}

fn trim<R: Rational>(mut p: Vec<R>) -> Vec<R> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(R::zero());
    }
    p
}

fn poly_mul<R: Rational>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_sub<R: Rational>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(R::zero);
            let y = b.get(i).cloned().unwrap_or_else(R::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod<R: Rational>(num: &[R], den: &[R]) -> (Vec<R>, Vec<R>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() - 1 < dd {
        return (vec![R::zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![R::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone() / lead.clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dj.clone();
            }
        }
        quot[k] = c;
    }
    rem.truncate(dd.max(1));
    (trim(quot), trim(rem))
}

impl<R: Rational> PartialEq for Cyclotomic<R> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl<R: Rational> Eq for Cyclotomic<R> {}

impl<R: Rational> Hash for Cyclotomic<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl<R: Rational> fmt::Display for Cyclotomic<R> {
    /// Renders `a0 + a1*z + a2*z^2 + ...` with `z = zeta_m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if abs != R::one() {
                        write!(f, "{}*", abs)?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", j)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Rational> fmt::Debug for Cyclotomic<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.order)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<R: Rational> $tr<&Cyclotomic<R>> for &Cyclotomic<R> {
            type Output = Cyclotomic<R>;
            fn $method(self, rhs: &Cyclotomic<R>) -> Cyclotomic<R> {
                self.$inner(rhs).expect("cyclotomic orders agree")
            }
        }
        impl<R: Rational> $tr for Cyclotomic<R> {
            type Output = Cyclotomic<R>;
            fn $method(self, rhs: Cyclotomic<R>) -> Cyclotomic<R> {
                (&self).$inner(&rhs).expect("cyclotomic orders agree")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<R: Rational> Neg for Cyclotomic<R> {
    type Output = Cyclotomic<R>;
    fn neg(self) -> Cyclotomic<R> {
        Cyclotomic::neg(&self)
    }
}

impl<R: Rational> Neg for &Cyclotomic<R> {
    type Output = Cyclotomic<R>;
    fn neg(self) -> Cyclotomic<R> {
        Cyclotomic::neg(self)
    }
}

impl<R: Rational> Field for Cyclotomic<R> {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.order())
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count() as u32
}

/// Smallest `k > 0` with `zeta_m^e` raised to `k` equal to one.
pub fn root_order(m: u32, e: i64) -> u32 {
    let e = e.rem_euclid(m as i64) as u32;
    if e == 0 {
        1
    } else {
        m / e.gcd(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc;
    use num_rational::BigRational;

    /// Plain polynomial remainder over the integers, used as an oracle
    /// independent of the cached power table.
    fn reduce_oracle(m: u32, p: &[i64]) -> Vec<i64> {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        let mut r = p.to_vec();
        while r.len() > d {
            let c = r.pop().unwrap();
            let k = r.len() - d;
            for j in 0..d {
                r[k + j] -= c * phi[j];
            }
        }
        r.resize(d, 0);
        r
    }

    fn ints(z: &Cyc) -> Vec<i64> {
        z.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..30 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, totient(m) as usize);
        }
    }

    #[test]
    fn root_of_unity_examples() {
        assert!(Cyc::root_of_unity(4, 0).is_one());
        assert_eq!(Cyc::root_of_unity(4, 2), Cyc::from_int(4, -1));
        let s = &Cyc::root_of_unity(3, 1) + &Cyc::root_of_unity(3, 2);
        assert_eq!(ints(&s), reduce_oracle(3, &[0, 1, 1]));
        assert_eq!(s, Cyc::from_int(3, -1));
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = Cyc::root_of_unity(4, 1);
        assert!((&z4 * &Cyc::root_of_unity(4, 3)).is_one());
        assert!((&z4 - &z4).is_zero());
        let z6 = Cyc::root_of_unity(6, 1);
        let sq = &z6 * &z6;
        assert_eq!(ints(&sq), reduce_oracle(6, &[0, 0, 1]));
        assert_eq!(sq, &z6 - &Cyc::one(6));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Cyc::one(4);
        let b = Cyc::one(6);
        assert_eq!(a.try_add(&b), Err(Error::OrderMismatch(4, 6)));
        assert_eq!(a.try_mul(&b), Err(Error::OrderMismatch(4, 6)));
    }

    #[test]
    fn inverse_examples() {
        assert!(Cyc::one(5).inverse().unwrap().is_one());
        for m in [3u32, 4, 5, 8, 12] {
            for k in 0..m as i64 {
                let z = Cyc::root_of_unity(m, k);
                assert_eq!(z.inverse().unwrap(), Cyc::root_of_unity(m, m as i64 - k));
            }
        }
        let a = &Cyc::one(4) + &Cyc::root_of_unity(4, 1);
        let expect = Cyc::from_coeffs(4, vec![BigRational::from_frac(1, 2), BigRational::from_frac(-1, 2)]);
        assert_eq!(a.inverse().unwrap(), expect);
        assert!((&a * &expect).is_one());
        assert_eq!(Cyc::zero(7).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(
            Cyc::root_of_unity(2, 1).rescale_order(4).unwrap(),
            Cyc::root_of_unity(4, 2)
        );
        assert!(Cyc::one(1).rescale_order(12).unwrap().is_one());
        let z3 = Cyc::root_of_unity(3, 1).rescale_order(6).unwrap();
        assert_eq!(z3, Cyc::root_of_unity(6, 2));
        // minimal polynomial x^2 + x + 1 of zeta_3 vanishes on the image
        let val = &(&(&z3 * &z3) + &z3) + &Cyc::one(6);
        assert!(val.is_zero());
        assert_eq!(
            Cyc::one(4).rescale_order(6),
            Err(Error::OrderNotDivisible { from: 4, to: 6 })
        );
    }

    #[test]
    fn powers_of_roots_are_distinct_and_periodic() {
        for m in 1..=12u32 {
            let mut seen: Vec<Cyc> = Vec::new();
            for k in 0..m as i64 {
                let z = Cyc::root_of_unity(m, k);
                assert!(z.pow(m as i64).unwrap().is_one());
                assert!(!seen.contains(&z));
                seen.push(z);
            }
        }
    }

    #[test]
    fn rendering() {
        let a = Cyc::from_coeffs(4, vec![BigRational::from_int(2), BigRational::from_frac(-1, 3)]);
        assert_eq!(a.to_string(), "2 - 1/3*z");
        assert_eq!(Cyc::zero(3).to_string(), "0");
        assert_eq!(Cyc::root_of_unity(5, 2).to_string(), "z^2");
        let j = a.to_json();
        assert_eq!(j["m"], 4);
        assert_eq!(j["coeffs"][1][0], -1);
        assert_eq!(j["coeffs"][1][1], 3);
    }

    #[test]
    fn generic_over_small_rationals() {
        use num_rational::Ratio;
        type Small = Cyclotomic<Ratio<i64>>;
        let z = Small::root_of_unity(5, 2);
        let w = z.inverse().unwrap();
        assert!((&z * &w).is_one());
    }
}

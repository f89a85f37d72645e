//! Exact integer polynomials.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial with arbitrary-precision integer coefficients, stored constant
/// term first. Characteristic polynomials are monic with degree equal to the
/// vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is `[]`.
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `c_i` in `x^n + c_1 x^(n-1) + ... + c_n`, i.e. the coefficient of
    /// `x^(n-i)`. `c_0` is the leading coefficient.
    pub fn order_coefficient(&self, i: usize) -> BigInt {
        match self.degree().checked_sub(i) {
            Some(k) => self.coeff(k),
            None => BigInt::zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Multiplicity of 0 as a root.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`; the low coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> IntPolynomial {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPolynomial { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Square-free decomposition of a monic polynomial (Yun): returns monic
    /// pairwise coprime square-free `q_i` with multiplicity `i` such that
    /// `self = prod q_i^i`.
    pub fn squarefree_factors(&self) -> Vec<(IntPolynomial, usize)> {
        assert!(self.is_monic(), "square-free decomposition expects a monic polynomial");
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.coeffs.clone();
        let df = derivative(&f);
        let a0 = gcd(&f, &df);
        let mut b = div_exact(&f, &a0);
        let c = div_exact(&df, &a0);
        let mut d = sub(&c, &derivative(&b));
        let mut out = Vec::new();
        let mut i = 1;
        while b.len() > 1 {
            let a = gcd(&b, &d);
            b = div_exact(&b, &a);
            let c = div_exact(&d, &a);
            d = sub(&c, &derivative(&b));
            if a.len() > 1 {
                out.push((IntPolynomial { coeffs: a }, i));
            }
            i += 1;
        }
        out
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// JSON integer array, constant term first. Coefficients outside the i128
/// range are written as decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => match c.to_i128() {
                    Some(v) => seq.serialize_element(&v)?,
                    None => seq.serialize_element(&c.to_string())?,
                },
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Coefficient(BigInt);

        impl<'de> Deserialize<'de> for Coefficient {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct V;
                impl Visitor<'_> for V {
                    type Value = Coefficient;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("an integer or decimal string")
                    }
                    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coefficient, E> {
                        Ok(Coefficient(v.into()))
                    }
                    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coefficient, E> {
                        Ok(Coefficient(v.into()))
                    }
                    fn visit_i128<E: de::Error>(self, v: i128) -> Result<Coefficient, E> {
                        Ok(Coefficient(v.into()))
                    }
                    fn visit_u128<E: de::Error>(self, v: u128) -> Result<Coefficient, E> {
                        Ok(Coefficient(v.into()))
                    }
                    fn visit_str<E: de::Error>(self, v: &str) -> Result<Coefficient, E> {
                        v.parse().map(Coefficient).map_err(E::custom)
                    }
                }
                deserializer.deserialize_any(V)
            }
        }

        struct SeqV;
        impl<'de> Visitor<'de> for SeqV {
            type Value = IntPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integer coefficients")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPolynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(Coefficient(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(IntPolynomial::new(coeffs))
            }
        }
        deserializer.deserialize_seq(SeqV)
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn derivative(a: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    trim(&mut out);
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k] -= c;
    }
    trim(&mut out);
    out
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with a positive leading coefficient.
fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut g = content(a);
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    if g.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c / &g).collect()
}

/// `lc(b)^k a mod b` up to a unit; enough for a primitive remainder sequence.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &lr * c;
        }
        trim(&mut r);
        let g = content(&r);
        if !g.is_zero() && !g.is_one() {
            for c in r.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient; `gcd(a, 0) = pp(a)`.
fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (primitive(a), primitive(b)) } else { (primitive(b), primitive(a)) };
    while !b.is_empty() {
        let r = pseudo_remainder(&a, &b);
        a = b;
        b = primitive(&r);
    }
    if a.len() <= 1 {
        return vec![BigInt::one()];
    }
    a
}

/// Exact quotient `a / b`; panics if `b` does not divide `a` over the integers.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); (a.len() - 1).saturating_sub(db) + 1];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let (t, rem) = r.last().expect("nonempty").div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &t * c;
        }
        q[shift] = t;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

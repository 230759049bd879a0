//! Exact scalars in Q(v) with v = sqrt(q), and quantum integers.
//!
//! Every scalar is `a + b*v` with rational `a`, `b`; since q is not a square,
//! the representation is unique and equality is componentwise. Quantum
//! integers come in two normalizations: the symmetric `[l] = (v^l - v^-l)/(v - v^-1)`
//! and the counting `|l] = (q^l - 1)/(q - 1)`, together with factorials and
//! binomials. A `d` parameter substitutes v -> v^d throughout (the base
//! change used for non-trivial endomorphism fields).

use crate::error::HallError;
use crate::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An element `a + b*v` of Q(v), v^2 = q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff {
    q: u32,
    a: BigRational,
    b: BigRational,
}

/// JSON form: reduced fractions with positive denominators, as strings.
#[derive(Debug, Serialize, Deserialize)]
struct CoeffFile {
    a: String,
    b: String,
}

fn q_pow(q: u32, e: i64) -> BigRational {
    let base = BigUint::from(q);
    if e >= 0 {
        BigRational::from_integer(BigInt::from(base.pow(e as u32)))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(base.pow((-e) as u32)))
    }
}

impl Coeff {
    pub fn zero(q: u32) -> Self {
        Coeff { q, a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one(q: u32) -> Self {
        Coeff { q, a: BigRational::one(), b: BigRational::zero() }
    }

    pub fn from_int(q: u32, n: i64) -> Self {
        Coeff { q, a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero() }
    }

    pub fn from_rational(q: u32, a: BigRational) -> Self {
        Coeff { q, a, b: BigRational::zero() }
    }

    pub fn from_biguint(q: u32, n: &BigUint) -> Self {
        Coeff { q, a: BigRational::from_integer(BigInt::from(n.clone())), b: BigRational::zero() }
    }

    /// `v^e`, using v^2 = q: even powers are rational, odd keep one factor v.
    pub fn v_pow(q: u32, e: i64) -> Self {
        let k = e.div_euclid(2);
        let r = e.rem_euclid(2);
        if r == 0 {
            Coeff { q, a: q_pow(q, k), b: BigRational::zero() }
        } else {
            Coeff { q, a: BigRational::zero(), b: q_pow(q, k) }
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn v_part(&self) -> &BigRational {
        &self.b
    }

    fn check(&self, other: &Coeff) {
        assert_eq!(self.q, other.q, "mixed field sizes in scalar arithmetic");
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        self.check(other);
        Coeff { q: self.q, a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.check(other);
        Coeff { q: self.q, a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> Coeff {
        Coeff { q: self.q, a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        self.check(other);
        let qr = BigRational::from_integer(BigInt::from(self.q));
        // (a + b v)(c + d v) = (ac + bd q) + (ad + bc) v
        Coeff {
            q: self.q,
            a: &self.a * &other.a + &self.b * &other.b * &qr,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn scale_int(&self, n: i64) -> Coeff {
        let r = BigRational::from_integer(BigInt::from(n));
        Coeff { q: self.q, a: &self.a * &r, b: &self.b * &r }
    }

    /// Multiplicative inverse; errors on zero. Uses the conjugate:
    /// `(a + b v)^-1 = (a - b v) / (a^2 - b^2 q)`; the denominator is nonzero
    /// because q is not a rational square.
    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(HallError::Internal("division by zero scalar".into()));
        }
        let qr = BigRational::from_integer(BigInt::from(self.q));
        let norm = &self.a * &self.a - &self.b * &self.b * &qr;
        if norm.is_zero() {
            return Err(HallError::Internal("zero norm in Q(v); q must not be a square".into()));
        }
        Ok(Coeff { q: self.q, a: &self.a / &norm, b: -(&self.b / &norm) })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut out = Coeff::one(self.q);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn frac_string(r: &BigRational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    fn parse_frac(text: &str) -> Result<BigRational> {
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let numer: BigInt =
            n.trim().parse().map_err(|_| HallError::Parse(format!("bad numerator `{n}`")))?;
        let denom: BigInt =
            d.trim().parse().map_err(|_| HallError::Parse(format!("bad denominator `{d}`")))?;
        if denom.is_zero() {
            return Err(HallError::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(numer, denom))
    }

    /// JSON value `{"a": "p/r", "b": "s/t"}` with reduced fractions and
    /// positive denominators.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "a": Self::frac_string(&self.a),
            "b": Self::frac_string(&self.b),
        })
    }

    pub fn from_json_value(q: u32, value: &serde_json::Value) -> Result<Coeff> {
        let file: CoeffFile = serde_json::from_value(value.clone())
            .map_err(|e| HallError::Parse(format!("coefficient JSON: {e}")))?;
        Ok(Coeff { q, a: Self::parse_frac(&file.a)?, b: Self::parse_frac(&file.b)? })
    }
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*v", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}{}*v", self.a, self.b)
        } else {
            write!(f, "{}+{}*v", self.a, self.b)
        }
    }
}

/// Symmetric quantum integer `[l]` evaluated at v^d: for l >= 0 this is
/// `sum_{i=0}^{l-1} v^{d(l-1-2i)}`; odd in l.
pub fn qbracket(q: u32, l: i64, d: u32) -> Coeff {
    if l < 0 {
        return qbracket(q, -l, d).neg();
    }
    let mut s = Coeff::zero(q);
    for i in 0..l {
        s = s.add(&Coeff::v_pow(q, (d as i64) * (l - 1 - 2 * i)));
    }
    s
}

/// Counting quantum integer `|l]` evaluated at v^d: `(q^{dl} - 1)/(q^d - 1)`,
/// i.e. `sum_{i=0}^{l-1} q^{di}`. Defined for l >= 0.
pub fn qbar(q: u32, l: u32, d: u32) -> BigUint {
    let base = BigUint::from(q).pow(d);
    let mut s = BigUint::zero();
    let mut p = BigUint::one();
    for _ in 0..l {
        s += &p;
        p *= &base;
    }
    s
}

/// `[l]!` at v^d.
pub fn qfact(q: u32, l: u32, d: u32) -> Coeff {
    let mut out = Coeff::one(q);
    for i in 1..=l {
        out = out.mul(&qbracket(q, i as i64, d));
    }
    out
}

/// `|l]!` at v^d.
pub fn qbarfact(q: u32, l: u32, d: u32) -> BigUint {
    let mut out = BigUint::one();
    for i in 1..=l {
        out *= qbar(q, i, d);
    }
    out
}

/// Gaussian binomial `[l choose i]` at v^d, via the exact product formula.
pub fn qbinom(q: u32, l: u32, i: u32, d: u32) -> Coeff {
    if i > l {
        return Coeff::zero(q);
    }
    let mut out = Coeff::one(q);
    for k in 1..=i {
        out = out
            .mul(&qbracket(q, (l - i + k) as i64, d))
            .div(&qbracket(q, k as i64, d))
            .expect("nonzero quantum integer");
    }
    out
}

/// Counting binomial `|l choose i]` at v^d; equals the number of
/// i-dimensional subspaces of an l-dimensional space over F_{q^d}.
pub fn qbarbinom(q: u32, l: u32, i: u32, d: u32) -> BigUint {
    if i > l {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 1..=i {
        num *= qbar(q, l - i + k, d);
        den *= qbar(q, k, d);
    }
    assert!((&num % &den).is_zero(), "counting binomial must be integral");
    num / den
}

/// The alternating sum `sum_{i=0}^{l} (-1)^i (v^d)^{i(i-1)} |l choose i]`
/// evaluated exactly; it vanishes for every l >= 1 and equals 1 at l = 0.
pub fn alternating_binomial_sum(q: u32, l: u32, d: u32) -> Coeff {
    let mut s = Coeff::zero(q);
    for i in 0..=l {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = Coeff::v_pow(q, (d as i64) * (i as i64) * (i as i64 - 1))
            .mul(&Coeff::from_biguint(q, &qbarbinom(q, l, i, d)))
            .scale_int(sign);
        s = s.add(&term);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn v_powers() {
        let q = 2;
        assert!(Coeff::v_pow(q, 0).is_one());
        // v^-1 = v/q
        let vinv = Coeff::v_pow(q, -1);
        assert_eq!(vinv, Coeff::v_pow(q, 1).inv().unwrap());
        assert!(Coeff::v_pow(q, 2).sub(&Coeff::from_int(q, 2)).is_zero());
        assert!(Coeff::v_pow(q, -2).mul(&Coeff::from_int(q, 2)).is_one());
        assert!(Coeff::v_pow(q, 5).eq(&Coeff::v_pow(q, 2).mul(&Coeff::v_pow(q, 3))));
    }

    #[test]
    fn bracket_small_values() {
        // [2] = v + v^-1 at q=2 is (3/2) v.
        let b = qbracket(2, 2, 1);
        assert!(b.rational_part().is_zero());
        assert_eq!(b.v_part(), &BigRational::new(3.into(), 2.into()));
        // |3] = 7 at q=2.
        assert_eq!(qbar(2, 3, 1), BigUint::from(7u32));
        // [0] = 0, [1] = 1, [-l] = -[l].
        assert!(qbracket(3, 0, 1).is_zero());
        assert!(qbracket(3, 1, 2).is_one());
        assert!(qbracket(3, -4, 1).add(&qbracket(3, 4, 1)).is_zero());
        // |l choose 1] counts lines: q + 1 at l = 2.
        assert_eq!(qbarbinom(3, 2, 1, 1), BigUint::from(4u32));
        assert_eq!(qbarbinom(2, 4, 2, 1), BigUint::from(35u32));
    }

    #[test]
    fn bar_vs_bracket_normalizations() {
        // |l] = v^{l-1} [l], |l]! = v^{l(l-1)/2} [l]!, |l i] = v^{i(l-i)} [l i],
        // each at base v^d.
        for q in [2u32, 3, 5] {
            for d in 1..=3u32 {
                for l in 0..=6u32 {
                    let lhs = Coeff::from_biguint(q, &qbar(q, l, d));
                    let rhs = Coeff::v_pow(q, (d as i64) * (l as i64 - 1).max(0))
                        .mul(&qbracket(q, l as i64, d));
                    if l >= 1 {
                        assert!(lhs.sub(&rhs).is_zero(), "q={q} d={d} l={l}");
                    }
                    let lhs = Coeff::from_biguint(q, &qbarfact(q, l, d));
                    let c2 = (l as i64) * (l as i64 - 1) / 2;
                    let rhs = Coeff::v_pow(q, (d as i64) * c2).mul(&qfact(q, l, d));
                    assert!(lhs.sub(&rhs).is_zero(), "q={q} d={d} l={l}");
                    for i in 0..=l {
                        let lhs = Coeff::from_biguint(q, &qbarbinom(q, l, i, d));
                        let rhs = Coeff::v_pow(q, (d as i64) * (i as i64) * ((l - i) as i64))
                            .mul(&qbinom(q, l, i, d));
                        assert!(lhs.sub(&rhs).is_zero(), "q={q} d={d} l={l} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_sum_vanishes() {
        for q in [2u32, 3, 5, 7] {
            for d in 1..=3u32 {
                assert!(alternating_binomial_sum(q, 0, d).is_one());
                for l in 1..=10u32 {
                    assert!(
                        alternating_binomial_sum(q, l, d).is_zero(),
                        "q={q} d={d} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let x = Coeff::v_pow(3, -3).add(&Coeff::from_int(3, 5));
        let v = x.to_json_value();
        assert_eq!(v["a"], "5/1");
        assert_eq!(v["b"], "1/9");
        let y = Coeff::from_json_value(3, &v).unwrap();
        assert_eq!(x, y);
        assert!(Coeff::from_json_value(3, &serde_json::json!({"a": "1/0", "b": "0"})).is_err());
    }

    fn small_rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    proptest! {
        #[test]
        fn field_axioms(
            an in -6i64..6, bn in -6i64..6, cn in -6i64..6, dn in -6i64..6,
            en in -6i64..6, fn_ in -6i64..6,
        ) {
            let q = 3;
            let x = Coeff { q, a: small_rational(an, 2), b: small_rational(bn, 3) };
            let y = Coeff { q, a: small_rational(cn, 5), b: small_rational(dn, 2) };
            let z = Coeff { q, a: small_rational(en, 3), b: small_rational(fn_, 7) };
            // associativity and distributivity
            prop_assert!(x.mul(&y).mul(&z).sub(&x.mul(&y.mul(&z))).is_zero());
            prop_assert!(x.mul(&y.add(&z)).sub(&x.mul(&y).add(&x.mul(&z))).is_zero());
            prop_assert!(x.mul(&y).sub(&y.mul(&x)).is_zero());
            // inverse
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }
}

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

/// An element of the circle group ℚ/ℤ, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleElement {
    num: i64,
    den: i64,
}

impl CircleElement {
    pub const ZERO: CircleElement = CircleElement { num: 0, den: 1 };

    /// `num / den` reduced modulo 1. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        CircleElement { num, den }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Additive order in ℚ/ℤ.
    pub fn order(self) -> i64 {
        self.den
    }

    pub fn scale(self, k: i64) -> Self {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        CircleElement::new(n, self.den)
    }

    /// The numerator over a chosen denominator `den`, which must be a multiple of `self.den()`.
    pub fn numerator_over(self, den: i64) -> i64 {
        assert!(den % self.den == 0, "{den} is not a multiple of {}", self.den);
        self.num * (den / self.den)
    }
}

impl Default for CircleElement {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for CircleElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let l = self.den.lcm(&rhs.den);
        CircleElement::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl Neg for CircleElement {
    type Output = Self;
    fn neg(self) -> Self {
        CircleElement::new(-self.num, self.den)
    }
}

impl Sub for CircleElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Debug for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A vector of ℚ/ℤ values sharing one denominator: entry `i` is `vals[i] / den`.
///
/// This is the storage for cochains with circle coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleVec {
    den: i64,
    vals: Vec<i64>,
}

impl CircleVec {
    pub fn zeros(len: usize) -> Self {
        CircleVec { den: 1, vals: vec![0; len] }
    }

    /// Entry `i` is `vals[i] / den`.
    pub fn from_numerators(vals: Vec<i64>, den: i64) -> Self {
        assert!(den > 0);
        let vals = vals.into_iter().map(|v| v.rem_euclid(den)).collect();
        let mut out = CircleVec { den, vals };
        out.normalize();
        out
    }

    pub fn from_elements(elems: &[CircleElement]) -> Self {
        let den = elems.iter().fold(1i64, |acc, e| acc.lcm(&e.den()));
        let vals = elems.iter().map(|e| e.numerator_over(den)).collect();
        CircleVec { den, vals }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn numerators(&self) -> &[i64] {
        &self.vals
    }

    pub fn get(&self, i: usize) -> CircleElement {
        CircleElement::new(self.vals[i], self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|&v| v == 0)
    }

    /// Numerators over the denominator `den`, a multiple of `self.den()`.
    pub fn numerators_over(&self, den: i64) -> Vec<i64> {
        assert!(den % self.den == 0);
        let k = den / self.den;
        self.vals.iter().map(|&v| v * k).collect()
    }

    fn normalize(&mut self) {
        let g = self.vals.iter().fold(self.den, |acc, &v| acc.gcd(&v));
        if g > 1 {
            self.den /= g;
            for v in &mut self.vals {
                *v /= g;
            }
        }
    }

    pub fn add(&self, other: &CircleVec) -> CircleVec {
        assert_eq!(self.len(), other.len());
        let den = self.den.lcm(&other.den);
        let a = self.numerators_over(den);
        let b = other.numerators_over(den);
        CircleVec::from_numerators(a.iter().zip(&b).map(|(x, y)| x + y).collect(), den)
    }

    pub fn scale(&self, k: i64) -> CircleVec {
        let vals = self
            .vals
            .iter()
            .map(|&v| ((v as i128 * k as i128).rem_euclid(self.den as i128)) as i64)
            .collect();
        CircleVec::from_numerators(vals, self.den)
    }

    pub fn neg(&self) -> CircleVec {
        self.scale(-1)
    }

    pub fn sub(&self, other: &CircleVec) -> CircleVec {
        self.add(&other.neg())
    }

    /// Evaluate the integer combination `Σ coeffs[i] · self[i]`.
    pub fn pair(&self, coeffs: &[(usize, i64)]) -> CircleElement {
        let mut acc: i128 = 0;
        let d = self.den as i128;
        for &(i, c) in coeffs {
            acc = (acc + self.vals[i] as i128 * c as i128).rem_euclid(d);
        }
        CircleElement::new(acc as i64, self.den)
    }

    /// Smallest positive `k` with `k · self = 0`.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn concat(parts: &[CircleVec]) -> CircleVec {
        let den = parts.iter().fold(1i64, |acc, p| acc.lcm(&p.den));
        let vals = parts.iter().flat_map(|p| p.numerators_over(den)).collect();
        CircleVec::from_numerators(vals, den)
    }

    pub fn slice(&self, start: usize, end: usize) -> CircleVec {
        CircleVec::from_numerators(self.vals[start..end].to_vec(), self.den)
    }
}

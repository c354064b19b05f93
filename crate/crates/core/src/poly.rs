//! Dense univariate polynomials with arbitrary-precision rational coefficients.
//!
//! `Poly` stores coefficients in ascending degree order. The representation
//! is canonical: the vector is empty for the zero polynomial and the last
//! element is nonzero otherwise, so `==` is structural equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A dense univariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    fn normalized(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rat) -> Self {
        Poly::normalized(vec![c])
    }

    /// The indeterminate.
    pub fn variable() -> Self {
        Poly::normalized(vec![Rat::zero(), Rat::one()])
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Construct from coefficients in ascending degree order.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Poly::normalized(coeffs)
    }

    /// Construct from integer coefficients in ascending degree order.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::normalized(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
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

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The monic associate (panics on the zero polynomial).
    pub fn monic(&self) -> Self {
        let lc = self.leading_coeff().expect("monic of zero polynomial");
        self.scale(&lc.recip())
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from(BigInt::from(i)))
            .collect();
        Poly::normalized(coeffs)
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Coefficient vector reversed: `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::normalized(coeffs)
    }

    /// Number of trailing zero coefficients (the exact power of `x` dividing
    /// `self`); zero for the zero polynomial.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Euclidean division: `(q, r)` with `self = q * div + r` and
    /// `deg r < deg div`. Panics on division by the zero polynomial.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dlen = div.coeffs.len();
        let lc_inv = div.coeffs.last().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); rem.len() - dlen + 1];
        for top in (dlen - 1..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let q = &rem[top] * &lc_inv;
            let shift = top + 1 - dlen;
            for (j, d) in div.coeffs.iter().enumerate() {
                let t = &q * d;
                rem[shift + j] -= t;
            }
            quo[shift] = q;
        }
        (Poly::normalized(quo), Poly::normalized(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// True if `div` divides `self` exactly.
    pub fn divisible_by(&self, div: &Poly) -> bool {
        self.divrem(div).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both arguments are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns monic `g` and `(u, v)` with `u*self + v*other = g`.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let nu = &u0 - &(&q * &u1);
            let nv = &v0 - &(&q * &v1);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lc_inv = r0.leading_coeff().unwrap().recip();
        (r0.scale(&lc_inv), u0.scale(&lc_inv), v0.scale(&lc_inv))
    }

    /// Nonnegative integer power.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True if `gcd(p, p') = 1` (nonzero input).
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_one()
    }

    /// Render with the given variable name, highest-degree term first.
    pub fn display(&self, var: char) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, var }
    }
}

/// Yun's squarefree decomposition.
///
/// Returns `(content, factors)` with `p = content * prod g_i^{m_i}`, where
/// the `g_i` are monic, squarefree, pairwise coprime and the multiplicities
/// `m_i` are strictly increasing. Panics on the zero polynomial.
pub fn yun_squarefree(p: &Poly) -> (Rat, Vec<(Poly, u32)>) {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    let content = p.leading_coeff().unwrap().clone();
    let p = p.monic();
    if p.is_constant() {
        return (content, Vec::new());
    }
    let dp = p.derivative();
    let g0 = p.gcd(&dp);
    let mut b = p.div_exact(&g0);
    let mut d = &dp.div_exact(&g0) - &b.derivative();
    let mut factors = Vec::new();
    let mut mult = 1u32;
    while b.degree() != Some(0) {
        let g = b.gcd(&d);
        if g.degree().is_some_and(|dg| dg > 0) {
            factors.push((g.clone(), mult));
        }
        b = b.div_exact(&g);
        let c = d.div_exact(&g);
        d = &c - &b.derivative();
        mult += 1;
    }
    (content, factors)
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
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

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::normalized(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::normalized(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::normalized(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Display adaptor carrying the variable name.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: char,
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && deg > 0;
            if !unit_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match deg {
                0 => {}
                1 => write!(f, "{}{}", if unit_coeff { "" } else { "*" }, self.var)?,
                d => write!(f, "{}{}^{}", if unit_coeff { "" } else { "*" }, self.var, d)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('t'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('t'))
    }
}

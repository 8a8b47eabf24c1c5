//! The scalar ring: rational functions in `q` with integer coefficients.
//!
//! Exponents are stored in *half-units* of `q`, i.e. the map key `h`
//! represents `q^(h/2)`. Everything the exchange rules emit has integer
//! exponents (even `h`), but Cartan generators admit half-integer powers
//! and moving one past a non-Cartan letter can produce `q^(p/2)` scalars.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero coefficient")]
    DivisionByZero,
}

/// Integer-coefficient Laurent polynomial in `q^(1/2)`.
///
/// Invariant: no stored coefficient is zero; the zero polynomial is the
/// empty map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), 0)
    }

    /// Single term `c * q^(half/2)`.
    pub fn term(c: BigInt, half: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half, c);
        }
        Self { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(BigInt::from(c), 0)
    }

    /// `q^e` for integer exponent `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::term(BigInt::one(), 2 * e)
    }

    /// `q^(half/2)`.
    pub fn q_pow_half(half: i64) -> Self {
        Self::term(BigInt::one(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    fn min_exp(&self) -> i64 {
        *self.terms.keys().next().expect("nonzero poly")
    }

    fn max_exp(&self) -> i64 {
        *self.terms.keys().next_back().expect("nonzero poly")
    }

    fn insert_add(terms: &mut BTreeMap<i64, BigInt>, h: i64, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match terms.entry(h) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (h, c) in &other.terms {
            Self::insert_add(&mut terms, *h, c.clone());
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &other.terms {
                Self::insert_add(&mut terms, h1 + h2, c1 * c2);
            }
        }
        Self { terms }
    }

    /// Substitute `q -> q^(-1)`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(h, c)| (-h, c.clone())).collect(),
        }
    }

    /// Multiply by `q^(half/2)`.
    fn shifted(&self, half: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(h, c)| (h + half, c.clone())).collect(),
        }
    }

    /// Positive gcd of all integer coefficients.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Evaluate at `q^(1/2) = s`.
    pub fn eval_sqrt(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (h, c) in &self.terms {
            let p = if *h >= 0 {
                pow_rat(s, *h as u32)
            } else {
                pow_rat(s, (-h) as u32).recip()
            };
            acc += BigRational::from(c.clone()) * p;
        }
        acc
    }

    /// Exact division by `d`; panics if the division is not exact.
    fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.clone();
        let mut quo = BTreeMap::new();
        let d_max = d.max_exp();
        let d_lead = d.terms[&d_max].clone();
        while !rem.is_zero() {
            let r_max = rem.max_exp();
            let r_lead = rem.terms[&r_max].clone();
            let (qc, qr) = r_lead.div_rem(&d_lead);
            assert!(qr.is_zero(), "non-exact polynomial division");
            let h = r_max - d_max;
            rem = rem.sub(&d.shifted(h).mul(&Self::term(qc.clone(), 0)));
            Self::insert_add(&mut quo, h, qc);
        }
        Self { terms: quo }
    }

    /// Primitive part with positive leading coefficient, unit `q` power
    /// stripped (lowest exponent becomes 0).
    fn primitive(&self) -> Self {
        assert!(!self.is_zero());
        let shift = -self.min_exp();
        let content = self.content();
        let mut p = Self {
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (h + shift, c / &content))
                .collect(),
        };
        if p.terms[&p.max_exp()].is_negative() {
            p = p.neg();
        }
        p
    }

    /// Gcd of the primitive parts, itself primitive with positive leading
    /// coefficient and zero trailing exponent.
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        // Euclid over the rationals on dense vectors; degrees stay small.
        let mut a = self.primitive().to_dense();
        let mut b = other.primitive().to_dense();
        while !b.is_empty() {
            let r = dense_rem(&a, &b);
            a = b;
            b = r;
        }
        Self::from_dense_primitive(&a)
    }

    fn to_dense(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let lo = self.min_exp();
        let hi = self.max_exp();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (h, c) in &self.terms {
            v[(h - lo) as usize] = BigRational::from(c.clone());
        }
        v
    }

    fn from_dense_primitive(v: &[BigRational]) -> Self {
        // Clear denominators, then take the primitive part.
        let mut denom = BigInt::one();
        for c in v {
            denom = denom.lcm(c.denom());
        }
        let mut terms = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            let scaled = c.numer() * &denom / c.denom();
            if !scaled.is_zero() {
                terms.insert(i as i64, scaled);
            }
        }
        Self { terms }.primitive()
    }
}

fn pow_rat(s: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= s;
    }
    acc
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let blead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let f = r.last().unwrap() / blead;
        for (i, bc) in b.iter().enumerate() {
            let sub = &f * bc;
            r[k + i] -= sub;
        }
        trim(&mut r);
    }
    r
}

/// Reduced fraction of Laurent polynomials, the field our algebra is
/// weighted over.
///
/// Canonical form: the fraction is fully reduced, the denominator is an
/// ordinary polynomial in `q` (lowest exponent 0) with positive leading
/// coefficient, and any leftover `q` power sits in the numerator. Equality
/// is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Coeff {
    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        // Strip q-power units so gcd runs on ordinary polynomials.
        let num_unit = num.min_exp();
        let den_unit = den.min_exp();
        let num0 = num.shifted(-num_unit);
        let den0 = den.shifted(-den_unit);
        let g = num0.gcd(&den0);
        let mut num1 = num0.exact_div(&g);
        let mut den1 = den0.exact_div(&g);
        let c = num1.content().gcd(&den1.content());
        if !c.is_one() {
            let cpoly = LaurentPoly::term(c, 0);
            num1 = num1.exact_div(&cpoly);
            den1 = den1.exact_div(&cpoly);
        }
        // Orientation: positive leading coefficient in the denominator.
        if den1.terms[&den1.max_exp()].is_negative() {
            num1 = num1.neg();
            den1 = den1.neg();
        }
        Self {
            num: num1.shifted(num_unit - den_unit),
            den: den1,
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self {
            num: LaurentPoly::from_int(c),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `q^e` for integer `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    /// `q^(half/2)`.
    pub fn q_pow_half(half: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow_half(half))
    }

    /// `q - q^(-1)`.
    pub fn delta() -> Self {
        Self::from_poly(LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1)))
    }

    /// `1 / (q - q^(-1))`.
    pub fn delta_bar() -> Self {
        Self::delta().inv().expect("delta is nonzero")
    }

    /// `q_a = q^((-1)^parity)` for parity in {0, 1}.
    pub fn q_sub(parity: u8) -> Self {
        Self::q_pow(if parity == 0 { 1 } else { -1 })
    }

    /// `q_a^(half/2)`, signed by parity.
    pub fn q_sub_pow_half(parity: u8, half: i64) -> Self {
        Self::q_pow_half(if parity == 0 { half } else { -half })
    }

    /// `Delta_a = (-1)^parity (q - q^(-1))`.
    pub fn delta_sub(parity: u8) -> Self {
        let d = Self::delta();
        if parity == 0 {
            d
        } else {
            d.neg()
        }
    }

    /// `1 / Delta_a`.
    pub fn delta_bar_sub(parity: u8) -> Self {
        let d = Self::delta_bar();
        if parity == 0 {
            d
        } else {
            d.neg()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    /// The bar involution `q -> q^(-1)`.
    pub fn bar(&self) -> Self {
        Self::reduced(self.num.bar(), self.den.bar())
    }

    /// Sign convention used when printing: the sign of the numerator's
    /// highest-exponent coefficient.
    pub fn print_negative(&self) -> bool {
        !self.num.is_zero() && self.num.terms[&self.num.max_exp()].is_negative()
    }

    /// Evaluate at `q^(1/2) = s`; `None` when the denominator vanishes.
    pub fn eval_sqrt(&self, s: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_sqrt(s);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_sqrt(s) / d)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest exponent first.
        for (h, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let qpart = match *h {
                0 => None,
                2 => Some("q".to_string()),
                h if h % 2 == 0 => Some(format!("q^{}", h / 2)),
                h => Some(format!("q^({}/2)", h)),
            };
            match qpart {
                None => write!(f, "{}", mag)?,
                Some(qs) => {
                    if mag.is_one() {
                        write!(f, "{}", qs)?;
                    } else {
                        write!(f, "{}*{}", mag, qs)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.terms.len() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

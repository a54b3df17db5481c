//! Exact polynomial systems over the Gaussian rationals ℚ(i).
//!
//! Provides polynomial arithmetic, multivariate division, a Buchberger
//! Groebner-basis engine (Gebauer–Möller pair pruning, sugar selection) and
//! the projective emptiness test [`only_trivial_root`] used to certify that a
//! matrix pencil has no rank-one member.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational (always in lowest terms, positive denominator).
pub type Rational = BigRational;

/// Default cap on S-pair reductions per Groebner run.
pub const DEFAULT_SPAIR_CAP: usize = 1_000_000;

/// Maximum number of variables supported by [`Monomial`].
pub const MAX_VARS: usize = 32;

/// a + b·i with a, b rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    /// p/q as a real Gaussian rational. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(Rational::new(p.into(), q.into()), Rational::zero())
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(Rational::new(re.0.into(), re.1.into()), Rational::new(im.0.into(), im.1.into()))
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|².
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_c64(&self) -> crate::C64 {
        crate::C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::new(&self.re * &o.re, Rational::zero());
        }
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn add_ref(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        self.add_ref(o)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        self.sub_ref(o)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        self.mul_ref(o)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() { write!(f, "{}", r.numer()) } else { write!(f, "{}/{}", r.numer(), r.denom()) }
}

/// Real values print as "p/q", imaginary ones as "(p/q)i", others as
/// "(a)+(b)i".
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            f.write_str("(")?;
            fmt_rational(&self.re, f)?;
            f.write_str(")+")?;
        }
        f.write_str("(")?;
        fmt_rational(&self.im, f)?;
        f.write_str(")i")
    }
}

/// Inverse of the [`fmt::Display`] form: "p/q", "(p/q)i" or "(a)+(b)i".
impl core::str::FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("cannot parse Gaussian rational {s:?}"));
        let t = s.trim();
        let imag = |u: &str| u.strip_prefix('(').and_then(|u| u.strip_suffix(")i")).and_then(parse_rational);
        if let Some(r) = parse_rational(t) {
            return Ok(GaussianRational::new(r, Rational::zero()));
        }
        if let Some(im) = imag(t) {
            return Ok(GaussianRational::new(Rational::zero(), im));
        }
        let (re, im) = t.split_once(")+(").ok_or_else(bad)?;
        let re = re.strip_prefix('(').and_then(parse_rational).ok_or_else(bad)?;
        let im = imag(&format!("({im}")).ok_or_else(bad)?;
        Ok(GaussianRational::new(re, im))
    }
}

/// Nearest f64 to a rational (exact for moderate sizes, graceful for huge ones).
pub fn rational_to_f64(r: &Rational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    let (nb, db) = (n.bits() as i64, d.bits() as i64);
    // Scale both to ≤ 60 significant bits before converting.
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let ns: BigInt = n >> shift_n as usize;
    let ds: BigInt = d >> shift_d as usize;
    let to_f = |b: &BigInt| -> f64 {
        let (sign, digits) = b.to_u64_digits();
        let mut v = 0.0;
        for &w in digits.iter().rev() {
            v = v * 18446744073709551616.0 + w as f64;
        }
        if sign == num_bigint::Sign::Minus { -v } else { v }
    };
    let mut v = to_f(&ns) / to_f(&ds);
    let e = shift_n - shift_d;
    v *= pow2(e);
    v
}

fn pow2(e: i64) -> f64 {
    let mut v = 1.0;
    let (mut k, base) = if e >= 0 { (e, 2.0) } else { (-e, 0.5) };
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            v *= b;
        }
        b *= b;
        k >>= 1;
    }
    v
}

/// Best rational approximation of `x` with denominator ≤ `max_den`
/// (continued fractions); `None` if the residual exceeds `tol`.
pub fn rationalize(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut v = if neg { -x } else { x };
    let (mut h0, mut h1): (u128, u128) = (0, 1);
    let (mut k0, mut k1): (u128, u128) = (1, 0);
    let mut best: Option<(u128, u128)> = None;
    for _ in 0..64 {
        let a = num_traits::Float::floor(v);
        if a > 1e18 {
            break;
        }
        let ai = a as u128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as u128 {
            break;
        }
        best = Some((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac < 1e-300 {
            break;
        }
        v = 1.0 / frac;
        let (h, k) = (h2 as f64, k2 as f64);
        if (h / k - if neg { -x } else { x }).abs() <= tol * 1e-3 {
            break;
        }
    }
    let (h, k) = best?;
    let approx = h as f64 / k as f64;
    let target = if neg { -x } else { x };
    if (approx - target).abs() > tol {
        return None;
    }
    let n = BigInt::from(h);
    let n = if neg { -n } else { n };
    Some(Rational::new(n, BigInt::from(k)))
}

/// Exponent vector over at most [`MAX_VARS`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0 };

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u16).sum();
        m
    }

    /// The single variable x_k.
    pub fn var(k: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[k] = 1;
        m.degree = 1;
        m
    }

    pub fn exponent(&self, k: usize) -> u8 {
        self.exps[k]
    }

    pub fn exponents(&self, nvars: usize) -> &[u8] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for k in 0..MAX_VARS {
            m.exps[k] += o.exps[k];
        }
        m.degree += o.degree;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.degree <= o.degree && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// self / o, assuming o divides self.
    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for k in 0..MAX_VARS {
            m.exps[k] -= o.exps[k];
        }
        m.degree -= o.degree;
        m
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for k in 0..MAX_VARS {
            m.exps[k] = self.exps[k].max(o.exps[k]);
        }
        m.degree = m.exps.iter().map(|&e| e as u16).sum();
        m
    }

    /// No variable in common.
    pub fn coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn cmp_with(&self, o: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Lex => self.exps.cmp(&o.exps),
            MonomialOrder::Grevlex => self.degree.cmp(&o.degree).then_with(|| {
                for k in (0..MAX_VARS).rev() {
                    if self.exps[k] != o.exps[k] {
                        return o.exps[k].cmp(&self.exps[k]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn write(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, name) in names.iter().enumerate() {
            let e = self.exps[k];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

/// Term order used to pick leading terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Pure lexicographic with x₁ > x₂ > ….
    Lex,
}

/// Sparse polynomial; terms are kept sorted in strictly decreasing
/// monomial order and never carry zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<[String]>,
    order: MonomialOrder,
    terms: Vec<(Monomial, GaussianRational)>,
}

/// Variable names b1, …, bk.
pub fn beta_vars(k: usize) -> Arc<[String]> {
    (1..=k).map(|i| format!("b{i}")).collect::<Vec<_>>().into()
}

impl Polynomial {
    pub fn zero(vars: Arc<[String]>, order: MonomialOrder) -> Self {
        assert!(vars.len() <= MAX_VARS, "too many variables");
        Polynomial { vars, order, terms: Vec::new() }
    }

    pub fn constant(vars: Arc<[String]>, order: MonomialOrder, c: GaussianRational) -> Self {
        Self::from_terms(vars, order, vec![(Monomial::ONE, c)])
    }

    pub fn var(vars: Arc<[String]>, order: MonomialOrder, k: usize) -> Self {
        assert!(k < vars.len());
        Self::from_terms(vars, order, vec![(Monomial::var(k), GaussianRational::one())])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(vars: Arc<[String]>, order: MonomialOrder, mut terms: Vec<(Monomial, GaussianRational)>) -> Self {
        assert!(vars.len() <= MAX_VARS, "too many variables");
        terms.sort_by(|a, b| b.0.cmp_with(&a.0, order));
        let mut out: Vec<(Monomial, GaussianRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { vars, order, terms: out }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// All terms share one total degree (the zero polynomial counts).
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Same polynomial re-sorted for another term order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms(self.vars.clone(), order, self.terms.clone())
    }

    fn same_ring(&self, o: &Polynomial) {
        assert!(self.order == o.order && self.vars.len() == o.vars.len(), "polynomials from different rings");
    }

    /// self + c·m·o, merged in one pass.
    fn add_scaled(&self, o: &Polynomial, c: &GaussianRational, m: &Monomial) -> Polynomial {
        self.same_ring(o);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, c * &b[j].1));
                j += 1;
                continue;
            }
            match a[i].0.cmp_with(&bm, order) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, c * &b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &(c * &b[j].1);
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { vars: self.vars.clone(), order, terms: out }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(o, &GaussianRational::one(), &Monomial::ONE)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(o, &-GaussianRational::one(), &Monomial::ONE)
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone(), self.order);
        }
        Polynomial { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_term(&self, c: &GaussianRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone(), self.order);
        }
        Polynomial { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        self.same_ring(o);
        let mut acc = Polynomial::zero(self.vars.clone(), self.order);
        for (m, c) in &o.terms {
            acc = acc.add_scaled(self, c, m);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient().and_then(|c| c.inv()) {
            Some(inv) if !inv.is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Substitutes x_k := v.
    pub fn substitute(&self, k: usize, v: &GaussianRational) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            if e == 0 {
                terms.push((*m, c.clone()));
                continue;
            }
            if v.is_zero() {
                continue;
            }
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = &coeff * v;
            }
            let mut mm = *m;
            mm.exps[k] = 0;
            mm.degree -= e as u16;
            terms.push((mm, coeff));
        }
        Polynomial::from_terms(self.vars.clone(), self.order, terms)
    }

    /// Floating-point evaluation.
    pub fn eval(&self, x: &[crate::C64]) -> crate::C64 {
        let mut acc = crate::C64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (k, xk) in x.iter().enumerate().take(self.nvars()) {
                for _ in 0..m.exponent(k) {
                    t *= xk;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation.
    pub fn eval_exact(&self, x: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, xk) in x.iter().enumerate().take(self.nvars()) {
                for _ in 0..m.exponent(k) {
                    t = &t * xk;
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// Output is accepted by [`parse_polynomial`]: a complex coefficient a + bi
/// is written as two terms "a*m + (b)i*m".
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (part, imag) in [(&c.re, false), (&c.im, true)] {
                if part.is_zero() {
                    continue;
                }
                let neg = part.is_negative();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let mag = part.abs();
                let unit = mag.is_one();
                match (imag, unit) {
                    (false, true) if !m.is_one() => {}
                    (false, _) => {
                        fmt_rational(&mag, f)?;
                        if !m.is_one() {
                            f.write_str("*")?;
                        }
                    }
                    (true, true) => f.write_str(if m.is_one() { "i" } else { "i*" })?,
                    (true, false) => {
                        f.write_str("(")?;
                        fmt_rational(&mag, f)?;
                        f.write_str(if m.is_one() { ")i" } else { ")i*" })?;
                    }
                }
                if !m.is_one() {
                    m.write(&self.vars, f)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal form of `p` with respect to `basis` (full reduction, every term).
///
/// The basis need not be monic or a Groebner basis; the result has no term
/// divisible by any leading monomial of `basis`.
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let monic: Vec<Polynomial> = basis.iter().filter(|b| !b.is_zero()).map(|b| b.monic()).collect();
    let refs: Vec<&Polynomial> = monic.iter().collect();
    reduce_monic(p, &refs)
}

fn reduce_monic(p: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, GaussianRational)> = Vec::new();
    while let Some((lm, lc)) = rest.terms.first().cloned() {
        let reducer = basis.iter().find(|g| g.terms[0].0.divides(&lm));
        match reducer {
            Some(g) => {
                let q = lm.div(&g.terms[0].0);
                rest = rest.add_scaled(g, &-lc, &q);
            }
            None => {
                rem.push((lm, lc));
                rest.terms.remove(0);
            }
        }
    }
    Polynomial { vars: p.vars.clone(), order: p.order, terms: rem }
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = (&f.terms[0].0, &f.terms[0].1);
    let (gm, gc) = (&g.terms[0].0, &g.terms[0].1);
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.inv().expect("nonzero"), &l.div(fm));
    a.add_scaled(g, &-gc.inv().expect("nonzero"), &l.div(gm))
}

/// Statistics of one Groebner run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub spairs_reduced: usize,
    pub spairs_pruned: usize,
    pub zero_reductions: usize,
}

/// Reduced Groebner basis plus run statistics.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub polys: Vec<Polynomial>,
    pub stats: GroebnerStats,
}

impl GroebnerBasis {
    /// The basis is {1}: the ideal is the whole ring.
    pub fn is_one(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Groebner basis with the default S-pair cap.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_cap(gens, order, DEFAULT_SPAIR_CAP)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Stops early with basis {1} as soon as a nonzero constant appears. Fails
/// with [`Error::GroebnerLimit`] after `cap` S-pair reductions.
pub fn buchberger_with_cap(gens: &[Polynomial], order: MonomialOrder, cap: usize) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Ok(GroebnerBasis { polys: Vec::new(), stats: GroebnerStats::default() });
    };
    let vars = first.vars.clone();
    if gens.iter().any(|g| g.nvars() != vars.len()) {
        return Err(Error::DimensionMismatch { expected: vars.len(), found: gens.iter().map(|g| g.nvars()).find(|&n| n != vars.len()).unwrap_or(0) });
    }
    let one = || GroebnerBasis { polys: vec![Polynomial::constant(vars.clone(), order, GaussianRational::one())], stats: GroebnerStats::default() };

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = GroebnerStats::default();

    // Inter-reduce the input before seeding pairs.
    let mut input: Vec<Polynomial> = gens.iter().map(|g| g.with_order(order)).filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| a.terms[0].0.cmp_with(&b.terms[0].0, order));
    for g in input {
        let refs: Vec<&Polynomial> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce_monic(&g, &refs);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            let mut b = one();
            b.stats = stats;
            return Ok(b);
        }
        let s = g.total_degree().unwrap_or(0);
        gm_update(&mut polys, &mut sugar, &mut active, &mut pairs, h.monic(), s, &mut stats);
    }

    while !pairs.is_empty() {
        // Normal selection by sugar, then by lcm.
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            if a.sugar < b.sugar || (a.sugar == b.sugar && a.lcm.cmp_with(&b.lcm, order) == Ordering::Less) {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        if stats.spairs_reduced >= cap {
            return Err(Error::GroebnerLimit(cap));
        }
        stats.spairs_reduced += 1;
        let s = s_polynomial(&polys[pair.i], &polys[pair.j]);
        let refs: Vec<&Polynomial> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce_monic(&s, &refs);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if h.is_unit() {
            let mut b = one();
            b.stats = stats;
            return Ok(b);
        }
        gm_update(&mut polys, &mut sugar, &mut active, &mut pairs, h.monic(), pair.sugar, &mut stats);
    }

    // Minimalize and inter-reduce.
    let mut basis: Vec<Polynomial> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let lm = p.terms[0].0;
        let redundant = basis.iter().enumerate().any(|(l, q)| l != k && q.terms[0].0.divides(&lm) && (q.terms[0].0 != lm || l < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    basis = minimal;
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&Polynomial> = basis.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
        // Leading term survives (not divisible by the others); only the tail changes.
        let head = Polynomial { vars: vars.clone(), order, terms: vec![basis[k].terms[0].clone()] };
        let tail = Polynomial { vars: vars.clone(), order, terms: basis[k].terms[1..].to_vec() };
        reduced.push(head.add(&reduce_monic(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| a.terms[0].0.cmp_with(&b.terms[0].0, order));
    Ok(GroebnerBasis { polys: reduced, stats })
}

// Gebauer–Möller installation of a new basis element `h`.
fn gm_update(
    polys: &mut Vec<Polynomial>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Polynomial,
    h_sugar: u32,
    stats: &mut GroebnerStats,
) {
    let hi = polys.len();
    let hm = h.terms[0].0;
    let hdeg = hm.degree();
    polys.push(h);
    sugar.push(h_sugar);
    active.push(true);

    let pair_sugar = |g: usize, lcm: &Monomial, polys: &[Polynomial], sugar: &[u32]| -> u32 {
        let gm = polys[g].terms[0].0;
        (sugar[g] + lcm.degree() - gm.degree()).max(h_sugar + lcm.degree() - hdeg)
    };

    // Candidate pairs (g, h).
    let cands: Vec<(usize, Monomial, bool)> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let gm = polys[g].terms[0].0;
            (g, gm.lcm(&hm), gm.coprime(&hm))
        })
        .collect();

    // Chain criterion among the new pairs (h, g): keep (h, g1) if its leading
    // monomials are coprime, or no other pair — still pending or already kept
    // — has an lcm dividing lcm(h, g1). Coprime survivors are then dropped by
    // the product criterion.
    let mut pending: Vec<usize> = (0..cands.len()).collect();
    let mut kept: Vec<usize> = Vec::new();
    while let Some(a) = (!pending.is_empty()).then(|| pending.remove(0)) {
        let la = &cands[a].1;
        let dominated = || pending.iter().chain(kept.iter()).any(|&b| cands[b].1.divides(la));
        if cands[a].2 || !dominated() {
            kept.push(a);
        } else {
            stats.spairs_pruned += 1;
        }
    }
    let mut new_pairs: Vec<Pair> = Vec::new();
    for &k in &kept {
        let (g, lcm, coprime) = &cands[k];
        if *coprime {
            stats.spairs_pruned += 1;
            continue;
        }
        new_pairs.push(Pair { i: *g, j: hi, lcm: *lcm, sugar: pair_sugar(*g, lcm, polys, sugar) });
    }

    // Prune old pairs (g1, g2) whose lcm is divisible by lm(h) strictly.
    let before = pairs.len();
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let l1 = polys[p.i].terms[0].0.lcm(&hm);
        let l2 = polys[p.j].terms[0].0.lcm(&hm);
        l1 == p.lcm || l2 == p.lcm
    });
    stats.spairs_pruned += before - pairs.len();
    pairs.extend(new_pairs);

    // Elements whose leading monomial is divisible by lm(h) leave the basis.
    for g in 0..hi {
        if active[g] && hm.divides(&polys[g].terms[0].0) {
            active[g] = false;
        }
    }
}

/// Evidence from one affine chart of the projective emptiness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartEvidence {
    /// Index k of the chart {x_k = 1, x_j = 0 for j < k}.
    pub chart: usize,
    /// Groebner basis of the dehomogenized system is {1}.
    pub basis_is_one: bool,
    /// Number of elements of the reduced basis.
    pub basis_len: usize,
    pub spairs_reduced: usize,
}

/// Outcome of [`only_trivial_root_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialRootReport {
    pub trivial: bool,
    pub charts: Vec<ChartEvidence>,
    /// Reduced basis of the first chart with solutions, if any.
    pub failing_basis: Option<Vec<String>>,
}

/// True iff the homogeneous system has no nonzero complex solution.
pub fn only_trivial_root(polys: &[Polynomial]) -> Result<bool> {
    Ok(only_trivial_root_report(polys, DEFAULT_SPAIR_CAP)?.trivial)
}

/// Projective emptiness test with per-chart evidence.
///
/// Every nonzero point has a first nonzero coordinate k; rescaling puts it
/// in the chart x_k = 1, x_j = 0 (j < k). The charts therefore cover
/// projective space, and the system has only the trivial root iff every
/// dehomogenized system generates the unit ideal. Stops at the first chart
/// that has solutions.
pub fn only_trivial_root_report(polys: &[Polynomial], cap: usize) -> Result<TrivialRootReport> {
    let Some(first) = polys.first() else {
        // The empty system is solved by everything.
        return Ok(TrivialRootReport { trivial: false, charts: Vec::new(), failing_basis: None });
    };
    let n = first.nvars();
    let mut degree = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = p.total_degree();
        if degree.is_some() && degree != d {
            return Err(Error::NotHomogeneous);
        }
        degree = d;
    }
    let mut charts = Vec::new();
    for k in 0..n {
        let chart: Vec<Polynomial> = polys
            .iter()
            .map(|p| {
                let mut q = p.substitute(k, &GaussianRational::one());
                for j in 0..k {
                    q = q.substitute(j, &GaussianRational::zero());
                }
                q
            })
            .filter(|q| !q.is_zero())
            .collect();
        let gb = if chart.is_empty() {
            GroebnerBasis { polys: Vec::new(), stats: GroebnerStats::default() }
        } else {
            buchberger_with_cap(&chart, first.order(), cap)?
        };
        let ok = gb.is_one();
        charts.push(ChartEvidence { chart: k, basis_is_one: ok, basis_len: gb.polys.len(), spairs_reduced: gb.stats.spairs_reduced });
        if !ok {
            let failing = gb.polys.iter().map(|p| p.to_string()).collect();
            return Ok(TrivialRootReport { trivial: false, charts, failing_basis: Some(failing) });
        }
    }
    Ok(TrivialRootReport { trivial: true, charts, failing_basis: None })
}

/// Parses "b1*b2^2"-style monomials with rational coefficients, e.g.
/// "3/2*b1*b2 - b2^2 + (1/3)i*b1^2". Intended for tests and debugging.
pub fn parse_polynomial(s: &str, vars: Arc<[String]>, order: MonomialOrder) -> Result<Polynomial> {
    let bad = |m: &str| Error::OutOfRange(format!("cannot parse polynomial: {m}"));
    let mut terms = Vec::new();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut chunks: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in cleaned.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && !cur.is_empty() && !cur.ends_with('^') {
            chunks.push(core::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        chunks.push(cur);
    }
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(rest) => (-1i64, rest.to_string()),
            None => (1, chunk.trim_start_matches('+').to_string()),
        };
        let mut coeff = GaussianRational::from_integer(sign);
        let mut mono = Monomial::ONE;
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad(&body));
            }
            if let Some(inner) = factor.strip_prefix('(') {
                let inner = inner.strip_suffix(")i").ok_or_else(|| bad(factor))?;
                coeff = &coeff * &GaussianRational::new(Rational::zero(), parse_rational(inner).ok_or_else(|| bad(factor))?);
            } else if let Some(r) = parse_rational(factor) {
                coeff = &coeff * &GaussianRational::new(r, Rational::zero());
            } else if factor == "i" {
                coeff = &coeff * &GaussianRational::i();
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u8>().map_err(|_| bad(factor))?),
                    None => (factor, 1),
                };
                let k = vars.iter().position(|v| v == name).ok_or_else(|| bad(name))?;
                let mut e = [0u8; MAX_VARS];
                e[k] = exp;
                mono = mono.mul(&Monomial::from_exponents(&e[..vars.len()]));
            }
        }
        terms.push((mono, coeff));
    }
    Ok(Polynomial::from_terms(vars, order, terms))
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

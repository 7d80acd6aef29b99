//! Exact arithmetic in the cyclotomic fields Q(zeta_m).
//!
//! A [`CycNumber`] is stored as rational coefficients over the power basis
//! 1, zeta_m, ..., zeta_m^(phi(m)-1), reduced modulo the m-th cyclotomic
//! polynomial. Reduced representations at a common conductor are unique, so
//! structural comparison decides field equality. That is what lets every
//! similarity identity in the rest of the crate be checked with exact
//! equality instead of floating-point tolerances.
//!
//! [`CycNumber::embed`] bridges into floating point with a certified error
//! bound, backed by rational interval arithmetic.

mod interval;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

pub(crate) use interval::RatInterval;

/// Euler's totient, by trial-division factorization.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n >= 1");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A root of unity zeta_order^exp in canonical form: the order is minimal,
/// i.e. exp and order are coprime (with 1 represented as order 1, exp 0).
///
/// Keeping headings in this symbolic form makes order/exponent extraction a
/// pair of integer reads instead of a field computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    /// zeta_order^exp, reduced to minimal order. Panics if order is 0.
    pub fn new(order: u64, exp: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let e = exp.rem_euclid(order as i64) as u64;
        if e == 0 {
            return RootOfUnity { order: 1, exp: 0 };
        }
        let g = e.gcd(&order);
        RootOfUnity { order: order / g, exp: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// The minimal order (the multiplicative order of the root).
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The exponent, coprime to [`Self::order`].
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order.lcm(&other.order);
        let e = (self.exp as u128 * (m / self.order) as u128
            + other.exp as u128 * (m / other.order) as u128)
            % m as u128;
        RootOfUnity::new(m, e as i64)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, self.order as i64 - self.exp as i64)
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        RootOfUnity::new(self.order, e as i64)
    }

    pub fn as_cyc(&self) -> CycNumber {
        CycNumber::root(self.order, self.exp as i64).expect("canonical order is positive")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "z({},{})", self.order, self.exp)
        }
    }
}

/// Certified enclosure of the modulus |x| of an embedded value.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusInterval {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl ModulusInterval {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }
}

impl fmt::Display for ModulusInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lower.to_f64().unwrap_or(f64::NAN),
            self.upper.to_f64().unwrap_or(f64::NAN)
        )
    }
}

/// An exact element of Q(zeta_m).
#[derive(Clone, Debug)]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    fn from_reduced(conductor: u64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len() as u64, totient(conductor));
        CycNumber { conductor, coeffs }
    }

    /// Reduce an arbitrary coefficient vector (exponents may exceed the
    /// basis) modulo zeta^m = 1 and the cyclotomic polynomial.
    fn reduce(conductor: u64, mut raw: Vec<BigRational>) -> Self {
        let m = conductor as usize;
        if raw.len() > m {
            for j in (m..raw.len()).rev() {
                let c = raw[j].clone();
                if !c.is_zero() {
                    raw[j % m] += c;
                }
            }
            raw.truncate(m);
        }
        raw.resize(m.max(1), BigRational::zero());
        let phi = totient(conductor) as usize;
        let cyclo = poly::cyclotomic_int(conductor);
        for j in (phi..m).rev() {
            let f = std::mem::replace(&mut raw[j], BigRational::zero());
            if f.is_zero() {
                continue;
            }
            for (i, ci) in cyclo.iter().enumerate().take(phi) {
                if !ci.is_zero() {
                    raw[j - phi + i] -= &f * BigRational::from_integer(ci.clone());
                }
            }
        }
        raw.truncate(phi);
        raw.resize(phi, BigRational::zero());
        CycNumber::from_reduced(conductor, raw)
    }

    pub fn zero() -> Self {
        CycNumber::from_reduced(1, vec![BigRational::zero()])
    }

    pub fn one() -> Self {
        CycNumber::from_reduced(1, vec![BigRational::one()])
    }

    pub fn from_int(n: i64) -> Self {
        CycNumber::from_reduced(1, vec![rational(n)])
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNumber::from_reduced(1, vec![r])
    }

    /// zeta_m^e, with the representation normalized to the minimal order
    /// dividing m. Rejects m = 0.
    pub fn root(m: u64, e: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("root of unity order must be positive".into()));
        }
        let r = RootOfUnity::new(m, e);
        let conductor = r.order;
        let mut raw = vec![BigRational::zero(); conductor as usize];
        raw[r.exp as usize] = BigRational::one();
        Ok(CycNumber::reduce(conductor, raw))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Express the value at a conductor that the current one divides.
    pub fn lift_to(&self, m: u64) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot lift conductor {} to {}",
                self.conductor, m
            )));
        }
        let stride = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * stride] = c.clone();
            }
        }
        Ok(CycNumber::reduce(m, raw))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (
            self.lift_to(m).expect("lcm is a multiple"),
            other.lift_to(m).expect("lcm is a multiple"),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        CycNumber::from_reduced(self.conductor, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycNumber::zero();
        }
        let (a, b) = self.common(other);
        let product = poly::mul(&a.coeffs, &b.coeffs);
        CycNumber::reduce(a.conductor, product)
    }

    /// Multiply every coefficient by an exact rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        CycNumber::from_reduced(self.conductor, coeffs)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNumber::from_rational(BigRational::one() / r)
                .lift_to(self.conductor)
                .expect("lift to own conductor"));
        }
        let cyclo: Vec<BigRational> = poly::cyclotomic_int(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut a = self.coeffs.clone();
        poly::trim(&mut a);
        let (g, u, _) = poly::ext_gcd(&a, &cyclo);
        debug_assert_eq!(g.len(), 1, "cyclotomic polynomial is irreducible over Q");
        let ginv = BigRational::one() / g[0].clone();
        let coeffs: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        Ok(CycNumber::reduce(self.conductor, coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNumber::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Apply the Galois automorphism zeta -> zeta^t; t must be coprime to
    /// the conductor.
    pub fn galois(&self, t: u64) -> Result<Self> {
        let m = self.conductor;
        if t.gcd(&m) != 1 {
            return Err(Error::NotCoprime { a: t, b: m });
        }
        let mut raw = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i as u64 * t % m) as usize] += c;
            }
        }
        Ok(CycNumber::reduce(m, raw))
    }

    /// Complex conjugate (zeta -> zeta^(m-1)), exact.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1).expect("m-1 is coprime to m")
    }

    /// |x|^2 = x * conj(x); always a real cyclotomic value.
    pub fn modulus_squared(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Re-express the value at its minimal conductor. This is the explicit
    /// normalization pass; arithmetic never calls it implicitly.
    pub fn reduce_conductor(&self) -> Self {
        let mut current = self.clone();
        if current.is_rational() {
            return CycNumber::from_reduced(1, vec![current.coeffs[0].clone()]);
        }
        'outer: loop {
            let m = current.conductor;
            for p in prime_factors(m) {
                let m2 = m / p;
                if m2 == 0 {
                    continue;
                }
                if let Some(coeffs) = current.try_descend(m2) {
                    current = CycNumber::from_reduced(m2, coeffs);
                    if current.is_rational() {
                        return CycNumber::from_reduced(1, vec![current.coeffs[0].clone()]);
                    }
                    continue 'outer;
                }
            }
            return current;
        }
    }

    /// Attempt to express the value in Q(zeta_m2) for m2 | m, by solving the
    /// linear system over the lifted basis of the subfield.
    fn try_descend(&self, m2: u64) -> Option<Vec<BigRational>> {
        let m = self.conductor;
        let phi_m = totient(m) as usize;
        let phi_m2 = totient(m2) as usize;
        let stride = m / m2;
        // columns: reduced representation at conductor m of zeta_m2^i
        let mut cols = Vec::with_capacity(phi_m2);
        for i in 0..phi_m2 as u64 {
            let mut raw = vec![BigRational::zero(); m as usize];
            raw[(i * stride % m) as usize] = BigRational::one();
            cols.push(CycNumber::reduce(m, raw).coeffs);
        }
        solve_linear(&cols, &self.coeffs, phi_m, phi_m2)
    }

    /// Certified floating-point embedding: a complex approximation whose
    /// absolute error is provably below `width`, plus an enclosure of the
    /// modulus narrower than `width`. Refinement halves interval widths until
    /// both certificates hold.
    pub fn embed(&self, width: &BigRational) -> Result<(Complex64, ModulusInterval)> {
        if !width.is_positive() {
            return Err(Error::InvalidParameter("embed width must be positive".into()));
        }
        if self.is_zero() {
            return Ok((
                Complex64::new(0.0, 0.0),
                ModulusInterval { lower: BigRational::zero(), upper: BigRational::zero() },
            ));
        }
        let mut bits = width_bits(width) + 8;
        loop {
            let embedder = Embedder::new(self.conductor, bits);
            if let Some(out) = embedder.try_embed(self, width) {
                return Ok(out);
            }
            bits *= 2;
            if bits > 4096 {
                return Err(Error::InvalidParameter(
                    "embed width is unattainably small for this value".into(),
                ));
            }
        }
    }

    /// Certified sign of a real cyclotomic value. Panics if the value is not
    /// fixed by conjugation.
    pub fn real_sign(&self) -> Ordering {
        assert!(*self == self.conj(), "real_sign requires a real value");
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        let mut bits = 32;
        loop {
            let embedder = Embedder::new(self.conductor, bits);
            let (re, _) = embedder.enclose(self);
            if re.lo.is_positive() {
                return Ordering::Greater;
            }
            if re.hi.is_negative() {
                return Ordering::Less;
            }
            bits += 32;
            assert!(bits <= 4096, "sign certification failed to converge");
        }
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z({},{})", self.conductor, i)?;
            } else {
                write!(f, "{mag}*z({},{})", self.conductor, i)?;
            }
        }
        Ok(())
    }
}

/// Solve sum_i x_i * cols[i] = rhs by Gaussian elimination over Q.
fn solve_linear(
    cols: &[Vec<BigRational>],
    rhs: &[BigRational],
    rows: usize,
    ncols: usize,
) -> Option<Vec<BigRational>> {
    let mut aug = vec![vec![BigRational::zero(); ncols + 1]; rows];
    for (r, row) in aug.iter_mut().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            row[c] = col[r].clone();
        }
        row[ncols] = rhs[r].clone();
    }
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            return None; // basis columns are independent; missing pivot means bug upstream
        };
        aug.swap(r, p);
        let inv = BigRational::one() / aug[r][c].clone();
        for x in aug[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for k in c..=ncols {
                    let delta = &f * &aug[r][k];
                    aug[i][k] -= delta;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    // consistency: all remaining rows must have zero rhs
    for row in aug.iter().skip(r) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    Some((0..ncols).map(|c| aug[pivot_rows[c]][ncols].clone()).collect())
}

fn width_bits(width: &BigRational) -> u32 {
    // smallest b with 2^-b <= width/4
    let mut b = 2u32;
    let mut value = BigRational::new(BigInt::one(), BigInt::from(4));
    while &value > width && b < 4000 {
        value /= BigRational::from_integer(BigInt::from(2));
        b += 1;
    }
    b
}

/// Shared enclosure table for embedding many values at one conductor.
pub(crate) struct Embedder {
    bits: u32,
    table: Vec<(RatInterval, RatInterval)>,
}

impl Embedder {
    pub(crate) fn new(conductor: u64, bits: u32) -> Self {
        let phi = totient(conductor);
        let table = (0..phi)
            .map(|e| interval::cos_sin_enclosure(e, conductor, bits))
            .collect();
        Embedder { bits, table }
    }

    /// Interval enclosure of the real and imaginary parts.
    pub(crate) fn enclose(&self, a: &CycNumber) -> (RatInterval, RatInterval) {
        let mut re = RatInterval::zero();
        let mut im = RatInterval::zero();
        for (c, (cos, sin)) in a.coeffs.iter().zip(&self.table) {
            if c.is_zero() {
                continue;
            }
            re = re.add(&cos.scale(c));
            im = im.add(&sin.scale(c));
        }
        (re, im)
    }

    /// Embed with certification against `width`, or report that this table's
    /// precision does not suffice.
    pub(crate) fn try_embed(
        &self,
        a: &CycNumber,
        width: &BigRational,
    ) -> Option<(Complex64, ModulusInterval)> {
        let (re, im) = self.enclose(a);
        let fre = re.midpoint().to_f64()?;
        let fim = im.midpoint().to_f64()?;
        let fre_exact = BigRational::from_float(fre)?;
        let fim_exact = BigRational::from_float(fim)?;
        let err_re = (&fre_exact - &re.lo).abs().max((&fre_exact - &re.hi).abs());
        let err_im = (&fim_exact - &im.lo).abs().max((&fim_exact - &im.hi).abs());
        if &err_re + &err_im >= *width {
            return None;
        }
        let modsq = re.square().add(&im.square());
        let modulus = interval::sqrt_enclosure(&modsq, self.bits);
        if modulus.width() >= *width {
            return None;
        }
        let lower = if modulus.lo.is_negative() { BigRational::zero() } else { modulus.lo };
        Some((
            Complex64::new(fre, fim),
            ModulusInterval { lower, upper: modulus.hi },
        ))
    }
}

/// Embed a batch of values sharing arithmetic context, each certified to the
/// same width. Conductors are lifted to a common multiple so the enclosure
/// table is built once.
pub fn embed_batch(points: &[CycNumber], width: &BigRational) -> Result<Vec<Complex64>> {
    if !width.is_positive() {
        return Err(Error::InvalidParameter("embed width must be positive".into()));
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let m = points
        .iter()
        .map(CycNumber::conductor)
        .fold(1u64, |acc, c| acc.lcm(&c));
    let lifted: Vec<CycNumber> = points
        .iter()
        .map(|p| p.lift_to(m).expect("lcm is a multiple"))
        .collect();
    let mut bits = width_bits(width) + 8;
    loop {
        let embedder = Embedder::new(m, bits);
        let embedded: Vec<Option<Complex64>> = crate::exec::map_collect(&lifted, |p| {
            embedder.try_embed(p, width).map(|(z, _)| z)
        });
        if embedded.iter().all(Option::is_some) {
            return Ok(embedded.into_iter().map(Option::unwrap).collect());
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::InvalidParameter(
                "embed width is unattainably small for these values".into(),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn root_normalizes_order() {
        // full turn
        assert_eq!(CycNumber::root(6, 6).unwrap(), CycNumber::one());
        assert_eq!(CycNumber::root(6, 6).unwrap().conductor(), 1);
        // zeta_4 = i, conductor 4
        let i = CycNumber::root(4, 1).unwrap();
        assert_eq!(i.conductor(), 4);
        assert_eq!(i.mul(&i), CycNumber::from_int(-1));
        assert!(CycNumber::root(0, 1).is_err());
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        let a = CycNumber::root(3, 1).unwrap();
        let b = CycNumber::root(3, 2).unwrap();
        assert_eq!(a.add(&b), CycNumber::from_int(-1));
    }

    #[test]
    fn all_mth_roots_sum_to_zero() {
        for m in 2..=12u64 {
            let mut sum = CycNumber::zero();
            for e in 0..m {
                sum = sum.add(&CycNumber::root(m, e as i64).unwrap());
            }
            assert!(sum.is_zero(), "roots of order {m}");
        }
    }

    #[test]
    fn mul_exponent_addition() {
        let z5 = CycNumber::root(5, 1).unwrap();
        let z5sq = CycNumber::root(5, 2).unwrap();
        assert_eq!(z5sq.mul(&z5), CycNumber::root(5, 3).unwrap());
    }

    #[test]
    fn one_minus_zeta3_product() {
        let one = CycNumber::one();
        let a = one.sub(&CycNumber::root(3, 1).unwrap());
        let b = one.sub(&CycNumber::root(3, 2).unwrap());
        assert_eq!(a.mul(&b), CycNumber::from_int(3));
    }

    #[test]
    fn inverses() {
        let z5 = CycNumber::root(5, 1).unwrap();
        assert_eq!(z5.inv().unwrap(), CycNumber::root(5, 4).unwrap());
        assert_eq!(
            CycNumber::from_int(2).inv().unwrap(),
            CycNumber::from_rational(rat(1, 2))
        );
        let a = CycNumber::one().sub(&CycNumber::root(3, 1).unwrap());
        let expected = CycNumber::one()
            .sub(&CycNumber::root(3, 2).unwrap())
            .scale(&rat(1, 3));
        assert_eq!(a.inv().unwrap(), expected);
        assert!(CycNumber::zero().inv().is_err());
    }

    #[test]
    fn conjugation() {
        let i = CycNumber::root(4, 1).unwrap();
        assert_eq!(i.conj(), i.neg());
        let r = CycNumber::from_rational(rat(7, 3));
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn embed_basics() {
        let width = rat(1, 1_000_000_000);
        let (z, m) = CycNumber::one().embed(&width).unwrap();
        assert_eq!(z, Complex64::new(1.0, 0.0));
        assert_eq!(m.lower, BigRational::one());
        assert_eq!(m.upper, BigRational::one());

        let (zi, mi) = CycNumber::root(4, 1).unwrap().embed(&width).unwrap();
        assert!((zi.re).abs() < 1e-9);
        assert!((zi.im - 1.0).abs() < 1e-9);
        assert!(mi.lower <= BigRational::one() && BigRational::one() <= mi.upper);
        assert!(mi.width() < width);

        let (z3, m3) = CycNumber::from_int(3).embed(&width).unwrap();
        assert_eq!(z3, Complex64::new(3.0, 0.0));
        assert_eq!(m3.lower, BigRational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn embed_against_high_precision_reference() {
        // reference computed at 10^4 times the precision
        let width = rat(1, 1_000_000_000);
        let tight = rat(1, 10_000_000_000_000);
        for (m, e) in [(3u64, 1i64), (5, 2), (7, 3), (12, 5)] {
            let x = CycNumber::root(m, e)
                .unwrap()
                .add(&CycNumber::from_rational(rat(1, 3)));
            let (z, _) = x.embed(&width).unwrap();
            let (zr, _) = x.embed(&tight).unwrap();
            let d = ((z.re - zr.re).powi(2) + (z.im - zr.im).powi(2)).sqrt();
            assert!(d < 1e-9, "embedding disagrees with reference for ({m},{e})");
        }
    }

    #[test]
    fn real_sign_certification() {
        let three = CycNumber::from_int(3);
        assert_eq!(three.real_sign(), Ordering::Greater);
        assert_eq!(CycNumber::zero().real_sign(), Ordering::Equal);
        // |1 - zeta_3|^2 = 3 > 1, so the sign of (|.|^2 - 1) is positive
        let r = CycNumber::one().sub(&CycNumber::root(3, 1).unwrap());
        let test = r.modulus_squared().sub(&CycNumber::one());
        assert_eq!(test.real_sign(), Ordering::Greater);
        // 2*cos(2pi/5) = zeta_5 + zeta_5^4 is a positive irrational real
        let c = CycNumber::root(5, 1)
            .unwrap()
            .add(&CycNumber::root(5, 4).unwrap());
        assert_eq!(c.real_sign(), Ordering::Greater);
        assert_eq!(c.sub(&CycNumber::one()).real_sign(), Ordering::Less);
    }

    #[test]
    fn conductor_reduction() {
        // zeta_6 lives in Q(zeta_3): zeta_6 = 1 + zeta_3
        let z6 = CycNumber::root(6, 1).unwrap();
        let reduced = z6.reduce_conductor();
        assert_eq!(reduced.conductor(), 3);
        assert_eq!(reduced, z6);
        // a genuinely rational combination collapses to conductor 1
        let s = CycNumber::root(5, 1).unwrap().add(
            &CycNumber::root(5, 2)
                .unwrap()
                .add(&CycNumber::root(5, 3).unwrap().add(&CycNumber::root(5, 4).unwrap())),
        );
        assert_eq!(s.reduce_conductor().conductor(), 1);
        assert_eq!(s, CycNumber::from_int(-1));
        // zeta_5 does not descend
        assert_eq!(CycNumber::root(5, 1).unwrap().reduce_conductor().conductor(), 5);
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(3), 2);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(31), 30);
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    const CONDUCTORS: [u64; 6] = [3, 4, 5, 6, 8, 12];

    /// Coefficients for one value per conductor under test.
    fn arb_coeffs() -> impl Strategy<Value = Vec<(i8, u8)>> {
        proptest::collection::vec((-9i8..=9, 1u8..=9), 4)
    }

    fn build(m: u64, coeffs: &[(i8, u8)]) -> CycNumber {
        let phi = totient(m) as usize;
        let mut acc = CycNumber::zero();
        for (i, (n, d)) in coeffs.iter().take(phi).enumerate() {
            let c = BigRational::new(BigInt::from(*n), BigInt::from(*d));
            acc = acc.add(&CycNumber::root(m, i as i64).unwrap().scale(&c));
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(ca in arb_coeffs(), cb in arb_coeffs(), cc in arb_coeffs()) {
            for m in CONDUCTORS {
                let a = build(m, &ca);
                let b = build(m, &cb);
                let c = build(m, &cc);
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    prop_assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                // canonical form: a + (-a) is structurally the zero vector
                let z = a.add(&a.neg());
                prop_assert!(z.coefficients().iter().all(num_traits::Zero::is_zero));
            }
        }

        #[test]
        fn conjugation_is_an_involution_and_fixes_modulus(ca in arb_coeffs()) {
            for m in CONDUCTORS {
                let a = build(m, &ca);
                prop_assert_eq!(a.conj().conj(), a.clone());
                let n = a.modulus_squared();
                prop_assert_eq!(n.conj(), n.clone());
                if !a.is_zero() {
                    prop_assert_ne!(n.real_sign(), std::cmp::Ordering::Less);
                }
            }
        }
    }
}

//! Exact rational interval arithmetic with certified enclosures of the
//! trigonometric values needed to embed roots of unity.
//!
//! Everything here is outward-safe: every returned interval provably contains
//! the mathematical value. Endpoints are periodically coarsened to dyadic
//! rationals so denominators stay bounded while refinement loops halve widths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn two_pow(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits)
}

impl RatInterval {
    pub fn point(v: BigRational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn zero() -> Self {
        RatInterval::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    /// Scale by an exact rational (either sign).
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Tight enclosure of x^2; unlike `mul(self, self)` the lower bound is
    /// clamped at 0 when the interval straddles the origin.
    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if !self.lo.is_negative() {
            RatInterval::new(a, b)
        } else if !self.hi.is_positive() {
            RatInterval::new(b, a)
        } else {
            RatInterval::new(BigRational::zero(), a.max(b))
        }
    }

    pub fn widen(&self, radius: &BigRational) -> Self {
        debug_assert!(!radius.is_negative());
        RatInterval::new(&self.lo - radius, &self.hi + radius)
    }

    /// Round endpoints outward to denominator 2^bits.
    pub fn coarsen(&self, bits: u32) -> Self {
        let scale = two_pow(bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        RatInterval::new(lo, hi)
    }
}

/// arctan(1/x) enclosed by consecutive partial sums of its alternating series.
fn arctan_inv(x: u64, bits: u32) -> RatInterval {
    let x = BigInt::from(x);
    let x2 = BigRational::from_integer(&x * &x);
    let threshold = BigRational::one() / two_pow(bits + 4);
    let mut term = BigRational::one() / BigRational::from_integer(x);
    let mut sum = BigRational::zero();
    let mut partials = Vec::new();
    let mut k: u64 = 0;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        partials.push(sum.clone());
        // the last two partial sums bracket the limit with gap = |term|
        if partials.len() >= 2 && term < threshold {
            break;
        }
        let ratio = BigRational::from_integer(BigInt::from(2 * k + 1))
            / (BigRational::from_integer(BigInt::from(2 * k + 3)) * &x2);
        term *= ratio;
        k += 1;
    }
    let last = partials.pop().unwrap();
    let prev = partials.pop().unwrap();
    let (lo, hi) = if last < prev { (last, prev) } else { (prev, last) };
    RatInterval::new(lo, hi)
}

/// Enclosure of pi by Machin's formula.
pub(crate) fn pi_interval(bits: u32) -> RatInterval {
    let a = arctan_inv(5, bits + 6);
    let b = arctan_inv(239, bits + 6);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let scaled_a = a.scale(&sixteen);
    let scaled_b = b.scale(&four);
    RatInterval::new(&scaled_a.lo - &scaled_b.hi, &scaled_a.hi - &scaled_b.lo).coarsen(bits + 2)
}

/// Certified enclosures of cos(2*pi*e/m) and sin(2*pi*e/m).
pub(crate) fn cos_sin_enclosure(e: u64, m: u64, bits: u32) -> (RatInterval, RatInterval) {
    debug_assert!(m >= 1 && e < m);
    if e == 0 {
        return (
            RatInterval::point(BigRational::one()),
            RatInterval::zero(),
        );
    }
    let guard = bits + 12;
    let frac = BigRational::new(BigInt::from(2 * e), BigInt::from(m));
    let angle = pi_interval(guard).scale(&frac).coarsen(guard);
    let x0 = angle.midpoint();
    let dx = angle.width() / BigRational::from_integer(BigInt::from(2));

    let threshold = BigRational::one() / two_pow(guard);
    let x2 = &x0 * &x0;

    // cos(x0): terms t_k = (-1)^k x0^(2k) / (2k)!
    let mut cos_sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut k: u64 = 0;
    let cos_rem;
    loop {
        if k % 2 == 0 {
            cos_sum += &term;
        } else {
            cos_sum -= &term;
        }
        term = &term * &x2
            / BigRational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        // once terms are decreasing, the tail is bounded by the next term
        if k >= 4 && term < threshold {
            cos_rem = term.clone();
            break;
        }
        k += 1;
    }

    // sin(x0): terms t_k = (-1)^k x0^(2k+1) / (2k+1)!
    let mut sin_sum = BigRational::zero();
    let mut term = x0.clone();
    let mut k: u64 = 0;
    let sin_rem;
    loop {
        if k % 2 == 0 {
            sin_sum += &term;
        } else {
            sin_sum -= &term;
        }
        term = &term * &x2
            / BigRational::from_integer(BigInt::from((2 * k + 2) * (2 * k + 3)));
        if k >= 4 && term.abs() < threshold {
            sin_rem = term.abs();
            break;
        }
        k += 1;
    }

    // |cos(x) - cos(x0)| <= |x - x0| <= dx, and likewise for sin.
    let cos_pad = &cos_rem + &dx;
    let sin_pad = &sin_rem + &dx;
    let cos = RatInterval::point(cos_sum).widen(&cos_pad).coarsen(bits);
    let sin = RatInterval::point(sin_sum).widen(&sin_pad).coarsen(bits);
    (cos, sin)
}

/// Exact square root of a nonnegative rational, when one exists.
fn exact_sqrt(v: &BigRational) -> Option<BigRational> {
    let n = v.numer();
    let d = v.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Enclosure of sqrt(v) for a nonnegative interval, via integer square roots
/// at scale 2^bits. Point intervals at perfect squares come back exact.
pub(crate) fn sqrt_enclosure(v: &RatInterval, bits: u32) -> RatInterval {
    let lo = if v.lo.is_negative() { BigRational::zero() } else { v.lo.clone() };
    let hi = if v.hi.is_negative() { BigRational::zero() } else { v.hi.clone() };
    if lo == hi {
        if let Some(root) = exact_sqrt(&lo) {
            return RatInterval::point(root);
        }
    }
    let scale_sq = BigRational::from_integer(BigInt::one() << (2 * bits));
    let denom = BigInt::one() << bits;
    let n_lo = (&lo * &scale_sq).floor().to_integer();
    let n_hi = (&hi * &scale_sq).ceil().to_integer();
    let root_lo = n_lo.sqrt();
    let root_hi = n_hi.sqrt() + BigInt::one();
    RatInterval::new(
        BigRational::new(root_lo, denom.clone()),
        BigRational::new(root_hi, denom),
    )
}

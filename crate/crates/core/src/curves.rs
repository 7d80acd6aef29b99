//! Dekking curves D_(p,q,k): absolute turtle curves whose steps are the
//! roots of unity zeta_p^(t_p(n)) * zeta_q^(kn), together with their scaling
//! factor r = D(Q), the regularity certificate |r| > 1, and an O(log^2 N)
//! point evaluator built on the self-similarity law D(Qn) = r D(n).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

pub use crate::cyclotomic::totient;

use crate::cyclotomic::{CycNumber, ModulusInterval, RootOfUnity};
use crate::error::Error;
use crate::turtle::{Interpreter, TurtleCurve};
use crate::words::{pair_index, SequenceSpec, TmScanner};
use crate::Result;

/// Parameter triple of a Dekking curve. Point evaluation works for any
/// p, q >= 2 with gcd(k, q) = 1; the scaling theory additionally needs
/// gcd(p, q) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DekkingCurve {
    p: u32,
    q: u32,
    k: u32,
}

impl DekkingCurve {
    pub fn new(p: u32, q: u32, k: u32) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidParameter(format!(
                "Dekking curve needs p, q >= 2, got p={p}, q={q}"
            )));
        }
        let k = k % q;
        if (k as u64).gcd(&(q as u64)) != 1 {
            return Err(Error::NotCoprime { a: k as u64, b: q as u64 });
        }
        Ok(DekkingCurve { p, q, k })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_coprime(&self) -> bool {
        (self.p as u64).gcd(&(self.q as u64)) == 1
    }

    /// The step taken at index n, as a root of unity.
    pub fn step(&self, n: u64) -> RootOfUnity {
        let t = crate::words::tm_symbol(self.p, n).expect("p validated").index();
        let y = (n % self.q as u64) as u32;
        self.step_for(t, y)
    }

    fn step_for(&self, t: u32, y: u32) -> RootOfUnity {
        RootOfUnity::new(self.p as u64, t as i64)
            .mul(&RootOfUnity::new(self.q as u64, (self.k as i64) * (y as i64)))
    }

    /// View as an absolute turtle curve over the product alphabet.
    pub fn to_turtle(&self) -> TurtleCurve {
        let steps = (0..self.p)
            .flat_map(|x| (0..self.q).map(move |y| (x, y)))
            .map(|(x, y)| self.step_for(x, y).as_cyc())
            .collect();
        let spec = SequenceSpec::dekking(self.p, self.q).expect("bases validated");
        TurtleCurve::new(spec, Interpreter::absolute(steps).expect("nonempty"))
            .expect("alphabet sizes agree")
    }
}

impl std::fmt::Display for DekkingCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D_({},{},{})", self.p, self.q, self.k)
    }
}

/// Per-class counters for the grouped summation: index x*q + y counts the
/// indices i with t_p(i) = x and i = y (mod q).
struct ClassCounts {
    counts: Vec<u64>,
    q: u32,
}

impl ClassCounts {
    fn new(p: u32, q: u32) -> Self {
        ClassCounts { counts: vec![0; (p * q) as usize], q }
    }

    fn bump(&mut self, t: u32, y: u32) {
        self.counts[pair_index(t, y, self.q).index() as usize] += 1;
    }

    fn value(&self, curve: &DekkingCurve) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (idx, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (x, y) = crate::words::pair_parts(crate::words::Symbol(idx as u32), self.q);
            let root = curve.step_for(x, y).as_cyc();
            acc = acc.add(&root.scale(&BigRational::from_integer(BigInt::from(c))));
        }
        acc
    }
}

/// D(N) by direct summation: one absolute-turtle scan over z_(p,q), grouped
/// by symbol class so the exact field work is O(pq) regardless of N.
pub fn dekking_point(curve: &DekkingCurve, n: u64) -> CycNumber {
    dekking_points_at(curve, &[n]).pop().expect("one checkpoint")
}

/// Values of D at several checkpoints from a single scan. The checkpoints
/// need not be sorted; each costs O(pq) field operations on top of the shared
/// O(max N) integer scan.
pub fn dekking_points_at(curve: &DekkingCurve, checkpoints: &[u64]) -> Vec<CycNumber> {
    let mut order: Vec<usize> = (0..checkpoints.len()).collect();
    order.sort_by_key(|&i| checkpoints[i]);
    let mut out = vec![CycNumber::zero(); checkpoints.len()];

    let mut counts = ClassCounts::new(curve.p, curve.q);
    let mut scanner = TmScanner::new(curve.p);
    let mut y = 0u32;
    let mut n = 0u64;
    let mut pending = order.into_iter().peekable();
    loop {
        while let Some(&slot) = pending.peek() {
            if checkpoints[slot] == n {
                out[slot] = counts.value(curve);
                pending.next();
            } else {
                break;
            }
        }
        if pending.peek().is_none() {
            break;
        }
        counts.bump(scanner.value(), y);
        scanner.advance();
        y += 1;
        if y == curve.q {
            y = 0;
        }
        n += 1;
    }
    out
}

/// Scaling data of a coprime Dekking curve: Q = p^phi(q), the factor
/// r = D(Q), and the certified regularity flag |r| > 1.
#[derive(Clone, Debug)]
pub struct ScalingInfo {
    pub big_q: u64,
    pub r: CycNumber,
    pub regular: bool,
    pub modulus: ModulusInterval,
}

fn default_modulus_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(12))
}

/// Scans of this length stay in the seconds range; Q beyond it is refused.
const SCALING_SCAN_CAP: u64 = 1 << 32;

pub fn scaling_info(curve: &DekkingCurve) -> Result<ScalingInfo> {
    if !curve.is_coprime() {
        return Err(Error::NotCoprime { a: curve.p as u64, b: curve.q as u64 });
    }
    let phi = totient(curve.q as u64);
    let exponent = u32::try_from(phi).map_err(|_| Error::TooLarge {
        what: format!("exponent phi({})", curve.q),
        limit: u32::MAX as u64,
    })?;
    let big_q = (curve.p as u64)
        .checked_pow(exponent)
        .ok_or(Error::TooLarge { what: format!("{}^phi({})", curve.p, curve.q), limit: u64::MAX })?;
    if big_q > SCALING_SCAN_CAP {
        return Err(Error::TooLarge {
            what: format!("{}^phi({}) = {big_q}", curve.p, curve.q),
            limit: SCALING_SCAN_CAP,
        });
    }
    let r = dekking_point(curve, big_q);
    // |r| > 1 decided exactly: compare r * conj(r) against 1
    let test = r.modulus_squared().sub(&CycNumber::one());
    let regular = test.real_sign() == Ordering::Greater;
    let (_, modulus) = r.embed(&default_modulus_width())?;
    Ok(ScalingInfo { big_q, r, regular, modulus })
}

/// Point evaluator running in O(log^2 N): splits N in base Q and applies
/// D(Qm + s) = r D(m) + h(m) D(s), where the heading factor
/// h(m) = zeta_p^(t_p(m)) zeta_q^(km) comes straight from the residue state
/// of m. The block table holds D(s) for s <= Q.
pub struct FastEvaluator {
    curve: DekkingCurve,
    big_q: u64,
    r: CycNumber,
    blocks: Vec<CycNumber>,
}

const FAST_TABLE_CAP: u64 = 1 << 20;

impl FastEvaluator {
    pub fn new(curve: &DekkingCurve) -> Result<Self> {
        if !curve.is_coprime() {
            return Err(Error::NotCoprime { a: curve.p as u64, b: curve.q as u64 });
        }
        let big_q = crate::words::combined_arity(curve.p, curve.q)?;
        if big_q > FAST_TABLE_CAP {
            return Err(Error::TooLarge {
                what: format!("block table of {big_q} entries"),
                limit: FAST_TABLE_CAP,
            });
        }
        let checkpoints: Vec<u64> = (0..=big_q).collect();
        let blocks = dekking_points_at(curve, &checkpoints);
        let r = blocks[big_q as usize].clone();
        Ok(FastEvaluator { curve: *curve, big_q, r, blocks })
    }

    pub fn big_q(&self) -> u64 {
        self.big_q
    }

    pub fn r(&self) -> &CycNumber {
        &self.r
    }

    pub fn eval(&self, n: u64) -> CycNumber {
        if n <= self.big_q {
            return self.blocks[n as usize].clone();
        }
        let m = n / self.big_q;
        let s = n % self.big_q;
        let head = self.r.mul(&self.eval(m));
        if s == 0 {
            return head;
        }
        let tail = self.curve.step(m).as_cyc().mul(&self.blocks[s as usize]);
        head.add(&tail)
    }
}

/// One-shot fast evaluation; builds the block table each call, so batch users
/// should hold a [`FastEvaluator`].
pub fn dekking_point_fast(curve: &DekkingCurve, n: u64) -> Result<CycNumber> {
    Ok(FastEvaluator::new(curve)?.eval(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn d231() -> DekkingCurve {
        DekkingCurve::new(2, 3, 1).unwrap()
    }

    #[test]
    fn construction_gates() {
        assert!(DekkingCurve::new(2, 3, 1).is_ok());
        assert!(DekkingCurve::new(1, 3, 1).is_err());
        assert!(DekkingCurve::new(2, 4, 2).is_err()); // gcd(k, q) != 1
        assert!(DekkingCurve::new(2, 12, 1).is_ok()); // non-coprime p, q still evaluates
    }

    #[test]
    fn point_examples() {
        let d = d231();
        assert!(dekking_point(&d, 0).is_zero());
        assert_eq!(dekking_point(&d, 1), CycNumber::from_int(1));
        assert_eq!(dekking_point(&d, 4), CycNumber::from_int(3));
    }

    #[test]
    fn point_matches_turtle_scan() {
        for d in [d231(), DekkingCurve::new(3, 2, 1).unwrap(), DekkingCurve::new(2, 12, 5).unwrap()] {
            let t = d.to_turtle();
            let pts = t.points(200);
            for (n, p) in pts.iter().enumerate() {
                assert_eq!(dekking_point(&d, n as u64), *p, "{d} at {n}");
            }
        }
    }

    #[test]
    fn unit_steps() {
        let d = DekkingCurve::new(2, 5, 3).unwrap();
        for n in 0..50 {
            let step = d.step(n).as_cyc();
            assert!(step.modulus_squared().is_one());
        }
    }

    #[test]
    fn step_map_is_multiplicative() {
        // the per-symbol position map respects the product-group addition
        for (p, q, k) in [(2u32, 3u32, 1u32), (2, 5, 2), (3, 2, 1)] {
            let d = DekkingCurve::new(p, q, k).unwrap();
            for x1 in 0..p {
                for y1 in 0..q {
                    for x2 in 0..p {
                        for y2 in 0..q {
                            let lhs = d.step_for((x1 + x2) % p, (y1 + y2) % q).as_cyc();
                            let rhs = d.step_for(x1, y1).as_cyc().mul(&d.step_for(x2, y2).as_cyc());
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scaling_info_koch() {
        let info = scaling_info(&d231()).unwrap();
        assert_eq!(info.big_q, 4);
        assert_eq!(info.r, CycNumber::from_int(3));
        assert!(info.regular);
        assert!(info.modulus.lower.to_f64().unwrap() > 2.999);
        assert!(info.modulus.upper.to_f64().unwrap() < 3.001);
    }

    #[test]
    fn scaling_info_three_two() {
        let d = DekkingCurve::new(3, 2, 1).unwrap();
        let info = scaling_info(&d).unwrap();
        assert_eq!(info.big_q, 3);
        // r = 1 - zeta_3 + zeta_3^2 by direct summation
        let expected = CycNumber::one()
            .sub(&CycNumber::root(3, 1).unwrap())
            .add(&CycNumber::root(3, 2).unwrap());
        assert_eq!(info.r, expected);
        assert_eq!(info.r.modulus_squared(), CycNumber::from_int(4));
        assert!(info.regular);
    }

    #[test]
    fn scaling_info_rejects_non_coprime() {
        let d = DekkingCurve::new(2, 12, 1).unwrap();
        assert!(matches!(scaling_info(&d), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn self_similarity_small() {
        for (p, q, k) in [(2u32, 3u32, 1u32), (2, 5, 1), (3, 2, 1), (2, 7, 2), (2, 5, 3)] {
            let d = DekkingCurve::new(p, q, k).unwrap();
            let info = scaling_info(&d).unwrap();
            let ns: Vec<u64> = (0..=100).collect();
            let base = dekking_points_at(&d, &ns);
            let scaled_ns: Vec<u64> = ns.iter().map(|n| n * info.big_q).collect();
            let scaled = dekking_points_at(&d, &scaled_ns);
            for (b, s) in base.iter().zip(&scaled) {
                assert_eq!(info.r.mul(b), *s, "{d}");
            }
        }
    }

    #[test]
    fn fast_agrees_with_scan() {
        for (p, q, k) in [(2u32, 3u32, 1u32), (3, 2, 1)] {
            let d = DekkingCurve::new(p, q, k).unwrap();
            let fast = FastEvaluator::new(&d).unwrap();
            let ns: Vec<u64> = (0..=10_000).chain([99_999, 1_000_000]).collect();
            let slow = dekking_points_at(&d, &ns);
            for (n, s) in ns.iter().zip(&slow) {
                assert_eq!(fast.eval(*n), *s, "{d} at {n}");
            }
        }
    }

    #[test]
    fn scaling_info_two_five_regression() {
        let info = scaling_info(&DekkingCurve::new(2, 5, 1).unwrap()).unwrap();
        assert_eq!(info.big_q, 16);
        assert_eq!(info.r, CycNumber::from_int(5));
        assert!(info.regular);
    }

    #[test]
    fn fast_power_identity() {
        // D(Q^n) = r^n on the Koch base curve, with D(1) = 1
        let d = d231();
        let fast = FastEvaluator::new(&d).unwrap();
        let mut n = 1u64;
        let mut r_pow = CycNumber::one();
        for _ in 0..=10 {
            assert_eq!(fast.eval(n), r_pow);
            n *= 4;
            r_pow = r_pow.mul(&CycNumber::from_int(3));
        }
    }

    #[test]
    fn three_term_sum() {
        let d = DekkingCurve::new(3, 2, 1).unwrap();
        let expected = CycNumber::one()
            .sub(&CycNumber::root(3, 1).unwrap())
            .add(&CycNumber::root(3, 2).unwrap());
        assert_eq!(dekking_point_fast(&d, 3).unwrap(), expected);
    }

    #[test]
    fn totient_reexport() {
        assert_eq!(totient(3), 2);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
    }
}

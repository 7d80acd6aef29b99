//! Similarity witnesses between turtle curves and the constructive chain
//! from a Thue-Morse turtle curve to a regular Dekking curve.
//!
//! A witness asserts c * lhs(k1 n) = rhs(k2 n) for all n; checking one is an
//! exact scan, never a floating comparison. The chain goes
//! T ~ B (block rewriting), B ~ D (step rescaling, p = 2 only), and
//! D ~ R (order reduction by powers of two), composing to the certificate
//! that T shares its limit curve with a regular Dekking target.

use num_integer::Integer;
use num_rational::BigRational;
use num_bigint::BigInt;

use crate::curves::{dekking_point, scaling_info, DekkingCurve, ScalingInfo};
use crate::cyclotomic::CycNumber;
use crate::error::Error;
use crate::turtle::{alpha_word, p_word, Interpreter, TurtleCurve};
use crate::words::SequenceSpec;
use crate::Result;

/// A claimed similarity c * lhs(lhs_stride * n) = rhs(rhs_stride * n).
#[derive(Clone, Debug)]
pub struct SimilarityWitness {
    pub scale: CycNumber,
    pub lhs_stride: u64,
    pub rhs_stride: u64,
    pub lhs: TurtleCurve,
    pub rhs: TurtleCurve,
    pub label: String,
}

impl SimilarityWitness {
    pub fn new(
        scale: CycNumber,
        lhs_stride: u64,
        rhs_stride: u64,
        lhs: TurtleCurve,
        rhs: TurtleCurve,
        label: impl Into<String>,
    ) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidParameter("witness constant must be nonzero".into()));
        }
        if lhs_stride == 0 || rhs_stride == 0 {
            return Err(Error::InvalidParameter("witness strides must be positive".into()));
        }
        Ok(SimilarityWitness { scale, lhs_stride, rhs_stride, lhs, rhs, label: label.into() })
    }

    /// The identity witness of a curve with itself.
    pub fn identity(curve: TurtleCurve) -> Self {
        SimilarityWitness {
            scale: CycNumber::one(),
            lhs_stride: 1,
            rhs_stride: 1,
            lhs: curve.clone(),
            rhs: curve,
            label: "identity".into(),
        }
    }
}

/// Outcome of scanning a witness up to a depth.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub checked: u64,
    pub violation: Option<u64>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exact check of a witness for all n <= n_max. Reports the first violating
/// index, if any; a violation is an outcome, not an error.
pub fn check_witness(w: &SimilarityWitness, n_max: u64) -> WitnessReport {
    let count = n_max as usize + 1;
    let lhs: Vec<CycNumber> = w
        .lhs
        .scan()
        .step_by(w.lhs_stride as usize)
        .take(count)
        .collect();
    let rhs: Vec<CycNumber> = w
        .rhs
        .scan()
        .step_by(w.rhs_stride as usize)
        .take(count)
        .collect();
    let violation = crate::exec::find_first_index(count as u64, |n| {
        w.scale.mul(&lhs[n as usize]) != rhs[n as usize]
    });
    WitnessReport { checked: n_max, violation }
}

/// Swap the sides of a witness: c * L(an) = R(bn) becomes
/// (1/c) * R(bn) = L(an).
pub fn invert_witness(w: &SimilarityWitness) -> Result<SimilarityWitness> {
    SimilarityWitness::new(
        w.scale.inv()?,
        w.rhs_stride,
        w.lhs_stride,
        w.rhs.clone(),
        w.lhs.clone(),
        format!("inverse of {}", w.label),
    )
}

/// Transitivity: from c * T1(k1 n) = T2(k2 n) and d * T2(m1 n) = T3(m2 n),
/// build cd * T1(k1 m1 n) = T3(m2 k2 n). The middle curves must be equal.
pub fn compose_witnesses(
    w1: &SimilarityWitness,
    w2: &SimilarityWitness,
) -> Result<SimilarityWitness> {
    if w1.rhs != w2.lhs {
        return Err(Error::MismatchedComposition);
    }
    SimilarityWitness::new(
        w1.scale.mul(&w2.scale),
        w1.lhs_stride * w2.lhs_stride,
        w2.rhs_stride * w1.rhs_stride,
        w1.lhs.clone(),
        w2.rhs.clone(),
        format!("{} . {}", w1.label, w2.label),
    )
}

/// An absolute curve over z_(p,q) whose step at (x, y) is c_x * zeta_q^(ky).
/// This is the intermediate form between a Thue-Morse turtle curve and a
/// Dekking curve.
#[derive(Clone, Debug, PartialEq)]
pub struct AbsoluteDekkingCurve {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub step_constants: Vec<CycNumber>,
}

impl AbsoluteDekkingCurve {
    pub fn to_turtle(&self) -> Result<TurtleCurve> {
        let steps = (0..self.p)
            .flat_map(|x| (0..self.q).map(move |y| (x, y)))
            .map(|(x, y)| {
                let rot = CycNumber::root(self.q as u64, self.k as i64 * y as i64)
                    .expect("q >= 2");
                self.step_constants[x as usize].mul(&rot)
            })
            .collect();
        TurtleCurve::new(SequenceSpec::dekking(self.p, self.q)?, Interpreter::absolute(steps)?)
    }
}

/// Rewrite a Thue-Morse turtle curve block-by-block into an absolute curve
/// over a Dekking sequence: with alpha_T(phi(0)) = zeta_q^k, the curve
/// B = (z_(p,q), kappa) with kappa((x,y)) = P_T(phi(x)) zeta_q^(ky) satisfies
/// T(pn) = B(n).
pub fn tmc_to_absolute(t: &TurtleCurve) -> Result<(AbsoluteDekkingCurve, SimilarityWitness)> {
    let SequenceSpec::ThueMorse { p } = t.spec else {
        return Err(Error::InvalidParameter("curve must be driven by a Thue-Morse sequence".into()));
    };
    let phi = crate::words::thue_morse_morphism(p)?;
    let alpha = alpha_word(&t.interp, phi.image(crate::words::Symbol(0))?)?;
    if alpha.is_one() {
        return Err(Error::TrivialHeading { order: 1 });
    }
    let q64 = alpha.order();
    let k64 = alpha.exponent();
    if k64.gcd(&q64) != 1 {
        return Err(Error::HeadingNotCoprime { k: k64, q: q64 });
    }
    let q = u32::try_from(q64)
        .map_err(|_| Error::TooLarge { what: format!("heading order {q64}"), limit: u32::MAX as u64 })?;
    let k = k64 as u32;
    let step_constants = (0..p)
        .map(|x| p_word(&t.interp, phi.image(crate::words::Symbol(x))?))
        .collect::<Result<Vec<_>>>()?;
    let b = AbsoluteDekkingCurve { p, q, k, step_constants };
    let witness = SimilarityWitness::new(
        CycNumber::one(),
        p as u64,
        1,
        t.clone(),
        b.to_turtle()?,
        format!("T ~ B over z_({p},{q})"),
    )?;
    Ok((b, witness))
}

/// Rescale an absolute curve with steps c_x zeta_q^(ky), p = 2, onto the
/// Dekking curve D_(2,q,k): the constant is c = 2/(c0 - c1) and the claim
/// holds at stride q on both sides.
pub fn absolute_to_dekking(
    b: &AbsoluteDekkingCurve,
) -> Result<(DekkingCurve, SimilarityWitness)> {
    if b.p != 2 {
        return Err(Error::InvalidParameter(format!(
            "step rescaling onto a Dekking curve needs p = 2, got p = {}",
            b.p
        )));
    }
    let c0 = &b.step_constants[0];
    let c1 = &b.step_constants[1];
    if c0 == c1 {
        return Err(Error::EqualStepSums);
    }
    let scale = c0.sub(c1).inv()?.scale(&BigRational::from_integer(BigInt::from(2)));
    let target = DekkingCurve::new(2, b.q, b.k)?;
    let witness = SimilarityWitness::new(
        scale,
        b.q as u64,
        b.q as u64,
        b.to_turtle()?,
        target.to_turtle(),
        format!("B ~ {target}"),
    )?;
    Ok((target, witness))
}

/// Split off the largest power of `p` from `m`: m = odd_part * p^b with
/// p not dividing odd_part.
fn split_power(m: u32, p: u32) -> (u32, u32) {
    let mut rest = m;
    let mut b = 0;
    while rest % p == 0 {
        rest /= p;
        b += 1;
    }
    (rest, b)
}

/// Relate D_(p, q p^b, k2) to the smaller-order curve R = D_(p, q, k1), where
/// k1 = p^d k2 (mod q) for the smallest such d <= phi(q). The witness asserts
/// D(p^(d+b)) * R(n) = D(p^(d+b) n); the reducing exponent d is returned.
pub fn dekking_reduce(
    d_curve: &DekkingCurve,
    target_k1: u32,
) -> Result<(DekkingCurve, SimilarityWitness, u32)> {
    let p = d_curve.p();
    let (q, b) = split_power(d_curve.q(), p);
    if q < 2 {
        return Err(Error::TrivialHeading { order: d_curve.q() as u64 });
    }
    let k2 = (d_curve.k() % q) as u64;
    let k1 = (target_k1 % q) as u64;
    let phi = crate::cyclotomic::totient(q as u64);
    let mut shifted = k2;
    let mut found = None;
    for d in 0..=phi {
        if shifted == k1 {
            found = Some(d as u32);
            break;
        }
        shifted = shifted * p as u64 % q as u64;
    }
    let Some(d) = found else {
        return Err(Error::NoValidExponent { base: p as u64, k2, k1, q: q as u64 });
    };
    let reduced = DekkingCurve::new(p, q, target_k1 % q)?;
    let stride = (p as u64)
        .checked_pow(d + b)
        .ok_or(Error::TooLarge { what: format!("{p}^{}", d + b), limit: u64::MAX })?;
    let scale = dekking_point(d_curve, stride);
    let witness = SimilarityWitness::new(
        scale,
        1,
        stride,
        reduced.to_turtle(),
        d_curve.to_turtle(),
        format!("{reduced} ~ {d_curve}"),
    )?;
    Ok((reduced, witness, d))
}

/// The assembled end-to-end certificate: which decomposition was found, the
/// witness chain, its composition, and the certified-regular target.
#[derive(Clone, Debug)]
pub struct MainResultCertificate {
    /// The power of two split off the heading order (order = 2^b * q).
    pub b: u32,
    /// Odd part of the heading order.
    pub q: u32,
    /// Heading exponent: alpha_T(phi(0)) = zeta_(2^b q)^k2.
    pub k2: u32,
    /// Reducing exponent with k1 = 2^d k2 (mod q).
    pub d: u32,
    /// Exponent of the regular target D_(2,q,k1).
    pub k1: u32,
    /// T ~ B, B ~ D, D ~ R in order; each checkable independently.
    pub chain: Vec<SimilarityWitness>,
    /// The composition of the chain: T ~ target directly.
    pub composed: SimilarityWitness,
    pub target: DekkingCurve,
    pub target_scaling: ScalingInfo,
    /// Set when q = 3: the shared limit curve is the Koch curve.
    pub koch: bool,
}

impl MainResultCertificate {
    /// Scan every witness (and the composition) to depth n_max.
    pub fn verify(&self, n_max: u64) -> Vec<(String, WitnessReport)> {
        let mut rows: Vec<(String, WitnessReport)> = self
            .chain
            .iter()
            .map(|w| (w.label.clone(), check_witness(w, n_max)))
            .collect();
        rows.push((self.composed.label.clone(), check_witness(&self.composed, n_max)));
        rows
    }
}

/// Build the full chain from a Thue-Morse turtle curve over t_2 to a regular
/// Dekking curve, certifying every hypothesis along the way. The target
/// exponent is chosen as the smallest d whose induced k1 = 2^d k2 (mod q)
/// yields a certified-regular curve.
pub fn certify_main_result(t: &TurtleCurve) -> Result<MainResultCertificate> {
    let SequenceSpec::ThueMorse { p } = t.spec else {
        return Err(Error::InvalidParameter("curve must be driven by a Thue-Morse sequence".into()));
    };
    if p != 2 {
        return Err(Error::InvalidParameter(format!(
            "the similarity chain needs the two-symbol sequence, got p = {p}"
        )));
    }
    let (b_curve, w1) = tmc_to_absolute(t)?;
    let order = b_curve.q;
    let (q, b) = split_power(order, 2);
    if q < 3 {
        return Err(Error::TrivialHeading { order: order as u64 });
    }
    let k2 = b_curve.k;
    if (k2 as u64 % q as u64).gcd(&(q as u64)) != 1 {
        return Err(Error::HeadingNotCoprime { k: k2 as u64, q: q as u64 });
    }
    let (d_curve, w2) = absolute_to_dekking(&b_curve)?;

    // smallest d whose induced target is regular, searched over d = 0..=phi(q)
    let phi = crate::cyclotomic::totient(q as u64);
    let mut k1 = (k2 % q) as u64;
    let mut choice = None;
    for _ in 0..=phi {
        let candidate = DekkingCurve::new(2, q, k1 as u32)?;
        let info = scaling_info(&candidate)?;
        if info.regular {
            match dekking_reduce(&d_curve, k1 as u32) {
                Ok((reduced, w3, d_found)) => {
                    choice = Some((reduced, info, w3, d_found));
                    break;
                }
                // a vanishing witness constant disqualifies this target
                Err(Error::InvalidParameter(_)) | Err(Error::DivisionByZero) => {}
                Err(other) => return Err(other),
            }
        }
        k1 = k1 * 2 % q as u64;
    }
    let Some((target, target_scaling, w3, d)) = choice else {
        return Err(Error::NoRegularTarget { q: q as u64 });
    };
    let k1 = target.k();

    let mut w3_inv = invert_witness(&w3)?;
    w3_inv.label = format!("D_(2,{},{}) ~ {target}", order, b_curve.k);
    let mut composed = compose_witnesses(&compose_witnesses(&w1, &w2)?, &w3_inv)?;
    composed.label = format!("T ~ {target} (composed)");
    let chain = vec![w1, w2, w3_inv];
    Ok(MainResultCertificate {
        b,
        q,
        k2,
        d,
        k1,
        chain,
        composed,
        target,
        target_scaling,
        koch: q == 3,
    })
}

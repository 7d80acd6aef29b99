//! Well-known Thue-Morse turtle curves from the literature, used throughout
//! the tests and handy from the CLI docs.

use crate::cyclotomic::{CycNumber, RootOfUnity};
use crate::turtle::{GroupElement, Interpreter, TurtleCurve};
use crate::words::SequenceSpec;
use crate::Result;

fn tm2_curve(tau0: GroupElement, tau1: GroupElement) -> Result<TurtleCurve> {
    TurtleCurve::new(SequenceSpec::thue_morse(2)?, Interpreter::new(vec![tau0, tau1])?)
}

/// The curve studied by Ma and Holdener: move forward on 0, turn by zeta_6
/// on 1. Its scaled prefixes approach the Koch curve.
pub fn ma_holdener() -> Result<TurtleCurve> {
    tm2_curve(
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::one()),
        GroupElement::new(CycNumber::zero(), RootOfUnity::new(6, 1)),
    )
}

/// The curve studied by Zantema: step and turn by zeta_3 on 0, step and
/// reverse on 1.
pub fn zantema() -> Result<TurtleCurve> {
    tm2_curve(
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(3, 1)),
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(2, 1)),
    )
}

/// Turn by zeta_5^2 after a unit step on 0, turn by zeta_5 in place on 1.
/// Lands on a pentagonal Dekking target.
pub fn pentagonal() -> Result<TurtleCurve> {
    tm2_curve(
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(5, 2)),
        GroupElement::new(CycNumber::zero(), RootOfUnity::new(5, 1)),
    )
}

/// Unit steps turning by zeta_6 on 0 and by zeta_6^-1 on 1. The two turns
/// cancel over a morphism block, so the path stays essentially linear and no
/// Dekking target exists.
pub fn linear() -> Result<TurtleCurve> {
    tm2_curve(
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(6, 1)),
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(6, 5)),
    )
}

/// Steps +1/-1 with a constant zeta_3 turn; pointwise equal to the base
/// Koch-generating absolute curve, not merely similar to it.
pub fn koch_turtle() -> Result<TurtleCurve> {
    tm2_curve(
        GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(3, 1)),
        GroupElement::new(CycNumber::from_int(-1), RootOfUnity::new(3, 1)),
    )
}

//! The turtle group C x S^1, interpreter functions, the position/heading
//! evaluation of words, turtle-curve point evaluation, and polyline
//! extraction with certified endpoint embedding.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclotomic::{embed_batch, CycNumber, RootOfUnity};
use crate::error::Error;
use crate::words::{SequenceSpec, Symbol, Word};
use crate::Result;

/// An element (z, u) of the turtle group: translate by z, then rotate the
/// heading by u. The group sum is (z1, u1) + (z2, u2) = (z1 + u1 z2, u1 u2).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub z: CycNumber,
    pub u: RootOfUnity,
}

impl GroupElement {
    pub fn new(z: CycNumber, u: RootOfUnity) -> Self {
        GroupElement { z, u }
    }

    /// The identity (0, 1).
    pub fn identity() -> Self {
        GroupElement { z: CycNumber::zero(), u: RootOfUnity::one() }
    }

    /// Pure translation (z, 1).
    pub fn translation(z: CycNumber) -> Self {
        GroupElement { z, u: RootOfUnity::one() }
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupElement {
            z: self.z.add(&self.u.as_cyc().mul(&other.z)),
            u: self.u.mul(&other.u),
        }
    }

    /// The group inverse (-z/u, 1/u).
    pub fn inverse(&self) -> Self {
        let uinv = self.u.inv();
        GroupElement { z: uinv.as_cyc().mul(&self.z).neg(), u: uinv }
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_zero() && self.u.is_one()
    }
}

/// Assignment of a turtle instruction to every symbol of an alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Interpreter {
    images: Vec<GroupElement>,
}

impl Interpreter {
    pub fn new(images: Vec<GroupElement>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidParameter("interpreter needs a nonempty alphabet".into()));
        }
        Ok(Interpreter { images })
    }

    /// An interpreter whose instructions never rotate the heading.
    pub fn absolute(steps: Vec<CycNumber>) -> Result<Self> {
        Interpreter::new(steps.into_iter().map(GroupElement::translation).collect())
    }

    pub fn alphabet_size(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn image(&self, s: Symbol) -> Result<&GroupElement> {
        self.images.get(s.0 as usize).ok_or(Error::SymbolOutOfRange {
            symbol: s.0,
            alphabet: self.alphabet_size(),
        })
    }

    pub fn is_absolute(&self) -> bool {
        self.images.iter().all(|g| g.u.is_one())
    }
}

/// Run a word through an interpreter and sum in the turtle group.
pub fn s_word(interp: &Interpreter, w: &Word) -> Result<GroupElement> {
    let mut acc = GroupElement::identity();
    for s in w.iter() {
        acc = acc.add(interp.image(s)?);
    }
    Ok(acc)
}

/// Position component of [`s_word`].
pub fn p_word(interp: &Interpreter, w: &Word) -> Result<CycNumber> {
    Ok(s_word(interp, w)?.z)
}

/// Heading component of [`s_word`]; a product of roots of unity, so it is
/// computed purely on (order, exponent) pairs.
pub fn alpha_word(interp: &Interpreter, w: &Word) -> Result<RootOfUnity> {
    let mut acc = RootOfUnity::one();
    for s in w.iter() {
        acc = acc.mul(&interp.image(s)?.u);
    }
    Ok(acc)
}

/// A turtle curve: a driving sequence plus an interpreter over its alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct TurtleCurve {
    pub spec: SequenceSpec,
    pub interp: Interpreter,
}

impl TurtleCurve {
    pub fn new(spec: SequenceSpec, interp: Interpreter) -> Result<Self> {
        if spec.alphabet_size() != interp.alphabet_size() {
            return Err(Error::InvalidParameter(format!(
                "interpreter covers {} symbols but the sequence uses {}",
                interp.alphabet_size(),
                spec.alphabet_size()
            )));
        }
        Ok(TurtleCurve { spec, interp })
    }

    /// One-shot evaluation of T(n), scanning from the origin.
    pub fn point(&self, n: u64) -> CycNumber {
        self.scan().nth(n as usize).expect("scan is infinite")
    }

    /// Iterator over T(0), T(1), T(2), ... with a cached running state; this
    /// scan is the primitive all the verifiers use.
    pub fn scan(&self) -> CurveScan<'_> {
        CurveScan { curve: self, state: GroupElement::identity(), n: 0 }
    }

    /// The first `count` points T(0) .. T(count-1).
    pub fn points(&self, count: usize) -> Vec<CycNumber> {
        self.scan().take(count).collect()
    }
}

/// Cursor over successive turtle positions. Independent scans over the same
/// curve are independent; the curve itself stays immutable.
pub struct CurveScan<'a> {
    curve: &'a TurtleCurve,
    state: GroupElement,
    n: u64,
}

impl CurveScan<'_> {
    /// The full group state (position and heading) after the steps consumed
    /// so far.
    pub fn state(&self) -> &GroupElement {
        &self.state
    }
}

impl Iterator for CurveScan<'_> {
    type Item = CycNumber;

    fn next(&mut self) -> Option<CycNumber> {
        let out = self.state.z.clone();
        let step = self
            .curve
            .interp
            .image(self.curve.spec.symbol(self.n))
            .expect("alphabet sizes validated at construction");
        self.state = self.state.add(step);
        self.n += 1;
        Some(out)
    }
}

/// A finite union of line segments in the plane, with the certified bound on
/// the embedding error of every endpoint.
#[derive(Clone, Debug)]
pub struct SegmentSet {
    pub segments: Vec<(Complex64, Complex64)>,
    pub error_budget: f64,
}

impl SegmentSet {
    pub fn from_embedded_points(points: &[Complex64], error_budget: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::EmptySegmentSet);
        }
        let segments = points.windows(2).map(|w| (w[0], w[1])).collect();
        Ok(SegmentSet { segments, error_budget })
    }

    /// Embed exact points with certified error below `width` and join them.
    pub fn from_exact_points(points: &[CycNumber], width: &BigRational) -> Result<Self> {
        let embedded = embed_batch(points, width)?;
        let budget = width.to_f64().ok_or_else(|| {
            Error::InvalidParameter("embed width does not fit in a float".into())
        })?;
        SegmentSet::from_embedded_points(&embedded, budget)
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn translate(&self, v: Complex64) -> Self {
        SegmentSet {
            segments: self.segments.iter().map(|(a, b)| (a + v, b + v)).collect(),
            error_budget: self.error_budget,
        }
    }
}

/// Polyline through T(0) .. T(n): n segments, including degenerate ones where
/// the turtle does not move. Endpoints carry a certified error below `width`.
pub fn polyline(curve: &TurtleCurve, n: u64, width: &BigRational) -> Result<SegmentSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("polyline needs at least one step".into()));
    }
    let points = curve.points(n as usize + 1);
    SegmentSet::from_exact_points(&points, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::words::thue_morse_morphism;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn zeta(m: u64, e: i64) -> CycNumber {
        CycNumber::root(m, e).unwrap()
    }

    #[test]
    fn group_identity_and_inverse() {
        let g = GroupElement::new(zeta(5, 2).add(&CycNumber::from_int(1)), RootOfUnity::new(3, 1));
        assert_eq!(GroupElement::identity().add(&g), g);
        assert_eq!(g.add(&GroupElement::identity()), g);
        assert!(g.add(&g.inverse()).is_identity());
        assert!(g.inverse().add(&g).is_identity());
    }

    #[test]
    fn group_associativity_example() {
        let a = GroupElement::new(CycNumber::from_int(1), RootOfUnity::new(3, 1));
        let b = GroupElement::new(CycNumber::from_int(2), RootOfUnity::new(4, 1));
        let c = GroupElement::new(zeta(5, 1), RootOfUnity::one());
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn word_evaluation_examples() {
        let phi = thue_morse_morphism(2).unwrap();
        let mh = catalog::ma_holdener().unwrap();
        let s = s_word(&mh.interp, phi.image(Symbol(0)).unwrap()).unwrap();
        assert_eq!(s.z, CycNumber::from_int(1));
        assert_eq!(s.u, RootOfUnity::new(6, 1));
        assert_eq!(
            alpha_word(&mh.interp, phi.image(Symbol(0)).unwrap()).unwrap(),
            RootOfUnity::new(6, 1)
        );

        let z = catalog::zantema().unwrap();
        let w10 = phi.image(Symbol(1)).unwrap();
        let s = s_word(&z.interp, w10).unwrap();
        assert!(s.z.is_zero());
        assert_eq!(s.u, RootOfUnity::new(3, 1).mul(&RootOfUnity::new(2, 1)));
        assert!(p_word(&z.interp, w10).unwrap().is_zero());

        let empty = Word::empty(2);
        assert!(s_word(&mh.interp, &empty).unwrap().is_identity());
        assert!(alpha_word(&mh.interp, &empty).unwrap().is_one());
    }

    #[test]
    fn curve_points() {
        let mh = catalog::ma_holdener().unwrap();
        assert!(mh.point(0).is_zero());
        assert_eq!(mh.point(2), CycNumber::from_int(1));

        let koch = catalog::koch_turtle().unwrap();
        assert_eq!(koch.point(4), CycNumber::from_int(3));
    }

    #[test]
    fn scan_matches_one_shot_and_increments() {
        let koch = catalog::koch_turtle().unwrap();
        let pts = koch.points(64);
        let mut heading = RootOfUnity::one();
        for (n, window) in pts.windows(2).enumerate() {
            assert_eq!(window[0], koch.point(n as u64));
            // increment = heading-so-far times the step position
            let step = koch.interp.image(koch.spec.symbol(n as u64)).unwrap();
            let expected = heading.as_cyc().mul(&step.z);
            assert_eq!(window[1].sub(&window[0]), expected, "n={n}");
            heading = heading.mul(&step.u);
        }
    }

    #[test]
    fn absolute_additivity() {
        // when no instruction rotates, positions add over concatenation
        let interp = Interpreter::absolute(vec![CycNumber::from_int(1), zeta(3, 1)]).unwrap();
        assert!(interp.is_absolute());
        let u = Word::new(vec![Symbol(0), Symbol(1), Symbol(1)], 2).unwrap();
        let v = Word::new(vec![Symbol(1), Symbol(0)], 2).unwrap();
        let uv = u.concat(&v).unwrap();
        assert_eq!(
            p_word(&interp, &uv).unwrap(),
            p_word(&interp, &u).unwrap().add(&p_word(&interp, &v).unwrap())
        );
    }

    #[test]
    fn polyline_shapes() {
        let width = rat(1, 1_000_000_000);
        let mh = catalog::ma_holdener().unwrap();
        let single = polyline(&mh, 1, &width).unwrap();
        assert_eq!(single.len(), 1);
        assert!((single.segments[0].0 - Complex64::new(0.0, 0.0)).norm() < 1e-9);
        assert!((single.segments[0].1 - Complex64::new(1.0, 0.0)).norm() < 1e-9);

        // degenerate step: tau(1) does not move, the point-segment is kept
        let two = polyline(&mh, 2, &width).unwrap();
        assert_eq!(two.len(), 2);
        assert!((two.segments[1].0 - two.segments[1].1).norm() < 1e-9);

        assert!(polyline(&mh, 0, &width).is_err());

        // Koch generator of the base absolute curve
        let d = crate::curves::DekkingCurve::new(2, 3, 1).unwrap().to_turtle();
        let gen = polyline(&d, 4, &width).unwrap();
        let expected = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.5, -(3f64.sqrt()) / 2.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
        ];
        for (seg, (a, b)) in gen.segments.iter().zip(expected.windows(2).map(|w| (w[0], w[1]))) {
            assert!((seg.0 - a).norm() < 1e-9);
            assert!((seg.1 - b).norm() < 1e-9);
        }
    }

    #[test]
    fn interpreter_rejects_out_of_range() {
        let interp = Interpreter::absolute(vec![CycNumber::from_int(1)]).unwrap();
        let w = Word::new(vec![Symbol(0)], 1).unwrap();
        assert!(s_word(&interp, &w).is_ok());
        assert!(interp.image(Symbol(3)).is_err());
    }
}

//! Long-period initial-value sets and their hyperbola parametrizations.
//!
//! For `p = 3 (mod 4)` the set is `D0 n (D0 - 1)`: nonzero residues `a` with
//! `a + 1` also a nonzero residue. For `p = 1 (mod 4)` it is `D1 n (D0 - 1)`:
//! non-residues `a` with `a + 1` a nonzero residue. Both are the image of the
//! four-to-one map `t -> ((t - 1/t) / 2)^2`, on `F_p \ {0, +-1}` in the first
//! case and on the norm-one elements of `F_{p^2}` other than `+-1` in the second.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::generator::logistic_preimages;
use crate::numtheory::{Fp, Fp2, Fp2Field, PrimeField};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IvClass {
    /// `D0 n (D0 - 1)`, used when `p = 3 (mod 4)`.
    #[serde(rename = "D0_D0m1")]
    ResidueShiftResidue,
    /// `D1 n (D0 - 1)`, used when `p = 1 (mod 4)`.
    #[serde(rename = "D1_D0m1")]
    NonResidueShiftResidue,
}

impl IvClass {
    pub fn for_prime(p: u64) -> IvClass {
        if p % 4 == 3 {
            IvClass::ResidueShiftResidue
        } else {
            IvClass::NonResidueShiftResidue
        }
    }

    /// Required value of `(a / p)`.
    pub fn required_symbol(self) -> i8 {
        match self {
            IvClass::ResidueShiftResidue => 1,
            IvClass::NonResidueShiftResidue => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IvClass::ResidueShiftResidue => "D0_D0m1",
            IvClass::NonResidueShiftResidue => "D1_D0m1",
        }
    }

    /// The predicted size `(p - 3)/4` or `(p - 1)/4`.
    pub fn expected_size(self, p: u64) -> u64 {
        match self {
            IvClass::ResidueShiftResidue => (p - 3) / 4,
            IvClass::NonResidueShiftResidue => (p - 1) / 4,
        }
    }
}

impl fmt::Display for IvClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IvSet {
    pub p: u64,
    pub class: IvClass,
    /// Sorted by value.
    pub elements: Vec<Fp>,
}

impl IvSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: Fp) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn values(&self) -> Vec<u64> {
        self.elements.iter().map(|a| a.value()).collect()
    }
}

fn require_large_prime(field: PrimeField) -> Result<()> {
    if field.modulus() <= 3 {
        return Err(Error::domain("initial-value sets need p > 3"));
    }
    Ok(())
}

/// Membership test straight from the Legendre conditions.
pub fn is_iv_member(field: PrimeField, a: Fp) -> bool {
    let class = IvClass::for_prime(field.modulus());
    field.legendre(a) == class.required_symbol() && field.legendre(a + field.one()) == 1
}

/// Exhaustive scan of `F_p`.
pub fn build_iv_set(field: PrimeField) -> Result<IvSet> {
    require_large_prime(field)?;
    let p = field.modulus();
    Ok(IvSet {
        p,
        class: IvClass::for_prime(p),
        elements: field
            .elements()
            .filter(|&a| is_iv_member(field, a))
            .collect(),
    })
}

/// A point of the parameter space: `F_p \ {0, +-1}` (split) or the norm-one
/// elements of `F_{p^2}` without `+-1` (torus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum ParamPoint {
    Split(Fp),
    Torus(Fp2),
}

impl ParamPoint {
    pub fn negated(self) -> ParamPoint {
        match self {
            ParamPoint::Split(t) => ParamPoint::Split(-t),
            ParamPoint::Torus(t) => ParamPoint::Torus(-t),
        }
    }

    /// `None` only for zero.
    pub fn inv(self) -> Option<ParamPoint> {
        match self {
            ParamPoint::Split(t) => t.inv().map(ParamPoint::Split),
            ParamPoint::Torus(t) => t.inv().map(ParamPoint::Torus),
        }
    }

    pub fn square(self) -> ParamPoint {
        match self {
            ParamPoint::Split(t) => ParamPoint::Split(t.square()),
            ParamPoint::Torus(t) => ParamPoint::Torus(t.square()),
        }
    }

    pub fn modulus(self) -> u64 {
        match self {
            ParamPoint::Split(t) => t.modulus(),
            ParamPoint::Torus(t) => t.modulus(),
        }
    }

    /// True for `0` and `+-1`.
    pub fn is_degenerate(self) -> bool {
        match self {
            ParamPoint::Split(t) => t.is_zero() || t.is_one() || (-t).is_one(),
            ParamPoint::Torus(t) => t.is_zero() || t.is_one() || (-t).is_one(),
        }
    }

    /// `(c0, c1)`; split points have `c1 = 0`.
    pub fn coords(self) -> (u64, u64) {
        match self {
            ParamPoint::Split(t) => (t.value(), 0),
            ParamPoint::Torus(t) => (t.c0().value(), t.c1().value()),
        }
    }
}

impl PartialOrd for ParamPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamPoint {
    /// Natural order on `F_p`, lexicographic `(c0, c1)` on `F_{p^2}`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords().cmp(&other.coords())
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPoint::Split(t) => write!(f, "{t}"),
            ParamPoint::Torus(t) => write!(f, "{t}"),
        }
    }
}

/// `((t - 1/t) / 2)^2`, checked against the parameter space for `p mod 4`.
pub fn phi(t: ParamPoint) -> Result<Fp> {
    if t.is_degenerate() {
        return Err(Error::DegenerateParameter(format!("t = {t} is 0 or +-1")));
    }
    let p = t.modulus();
    match t {
        ParamPoint::Split(t) => {
            if p % 4 != 3 {
                return Err(Error::domain(format!(
                    "split parameters are used only for p = 3 mod 4, got p = {p}"
                )));
            }
            let one = t.pow(0);
            let half = (one + one).inv().expect("p odd");
            let u = (t - t.inv().expect("t nonzero")) * half;
            Ok(u.square())
        }
        ParamPoint::Torus(t) => {
            if p % 4 != 1 {
                return Err(Error::domain(format!(
                    "torus parameters are used only for p = 1 mod 4, got p = {p}"
                )));
            }
            if !t.norm().is_one() {
                return Err(Error::domain(format!("t = {t} does not have norm one")));
            }
            let one = t.c0().pow(0);
            let half = (one + one).inv().expect("p odd");
            let u = (t - t.inv().expect("t nonzero")).scale(half);
            let sq = u.square();
            debug_assert!(sq.is_base());
            Ok(sq.c0())
        }
    }
}

/// Every valid parameter for `p`, in increasing order.
pub fn parameter_space(field: PrimeField) -> Result<Vec<ParamPoint>> {
    require_large_prime(field)?;
    let p = field.modulus();
    let mut out = Vec::new();
    match IvClass::for_prime(p) {
        IvClass::ResidueShiftResidue => {
            out.extend((2..p - 1).map(|v| ParamPoint::Split(field.elem(v))));
        }
        IvClass::NonResidueShiftResidue => {
            let ext = Fp2Field::new(field);
            let ns = ext.non_residue();
            for c1 in field.elements() {
                let rhs = field.one() + ns * c1.square();
                if let Some(r) = field.sqrt(rhs) {
                    let mut roots = vec![r, -r];
                    roots.dedup();
                    for c0 in roots {
                        let t = ParamPoint::Torus(ext.from_base_pair(c0, c1));
                        if !t.is_degenerate() {
                            out.push(t);
                        }
                    }
                }
            }
            out.sort();
        }
    }
    Ok(out)
}

/// The four preimages of one initial value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub image: Fp,
    /// The smallest member.
    pub canonical: ParamPoint,
    /// All members, sorted.
    pub members: Vec<ParamPoint>,
}

impl Fiber {
    /// `[t, -t, 1/t, -1/t]` for the canonical `t`.
    pub fn orbit_order(&self) -> [ParamPoint; 4] {
        let t = self.canonical;
        let ti = t.inv().expect("parameters are nonzero");
        [t, t.negated(), ti, ti.negated()]
    }
}

/// Groups the whole parameter space by its image, one fiber per initial value,
/// ordered by image.
pub fn phi_fibers(field: PrimeField) -> Result<Vec<Fiber>> {
    let mut groups: BTreeMap<Fp, Vec<ParamPoint>> = BTreeMap::new();
    for t in parameter_space(field)? {
        groups.entry(phi(t)?).or_default().push(t);
    }
    Ok(groups
        .into_iter()
        .map(|(image, mut members)| {
            members.sort();
            Fiber {
                image,
                canonical: members[0],
                members,
            }
        })
        .collect())
}

/// Canonical (smallest) preimage of an initial value, from the square roots
/// `a = b^2`, `a + 1 = c^2` and `t = c + b`. In the torus case `b = c1 * alpha`
/// with `c1^2 = a / ns`.
pub fn phi_preimage(field: PrimeField, a: Fp) -> Result<ParamPoint> {
    require_large_prime(field)?;
    if !is_iv_member(field, a) {
        return Err(Error::domain(format!(
            "{a} is not in the initial-value set for p = {}",
            field.modulus()
        )));
    }
    let c = field.sqrt(a + field.one()).expect("a + 1 is a residue");
    let t = match IvClass::for_prime(field.modulus()) {
        IvClass::ResidueShiftResidue => {
            let b = field.sqrt(a).expect("a is a residue");
            ParamPoint::Split(c + b)
        }
        IvClass::NonResidueShiftResidue => {
            let ext = Fp2Field::new(field);
            let ratio = a * ext.non_residue().inv().expect("nonzero");
            let c1 = field.sqrt(ratio).expect("a / ns is a residue");
            ParamPoint::Torus(ext.from_base_pair(c, c1))
        }
    };
    let ti = t.inv().expect("t nonzero");
    Ok([t, t.negated(), ti, ti.negated()]
        .into_iter()
        .min()
        .expect("nonempty"))
}

/// `(LM(phi(t)), phi(t^2))`; the two agree whenever `t^2` is a valid parameter.
pub fn conjugation_check(t: ParamPoint) -> Result<(Fp, Fp)> {
    let s = phi(t)?;
    let sq = t.square();
    if sq.is_degenerate() {
        return Err(Error::DegenerateParameter(format!("t^2 = {sq} is +-1")));
    }
    let one = s.pow(0);
    let four = (one + one) * (one + one);
    Ok((four * s * (s + one), phi(sq)?))
}

/// Legendre symbols of the two logistic preimages of an initial value.
pub fn sign_split(field: PrimeField, a: Fp) -> Result<(i8, i8)> {
    if !is_iv_member(field, a) {
        return Err(Error::domain(format!(
            "{a} is not in the initial-value set"
        )));
    }
    match logistic_preimages(field, a).as_slice() {
        [c1, c2] => Ok((field.legendre(*c1), field.legendre(*c2))),
        other => Err(Error::domain(format!(
            "expected two preimages of {a}, found {}",
            other.len()
        ))),
    }
}

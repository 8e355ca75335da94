//! The three endomorphism rings and their elements.
//!
//! `Z`, `Z[i]` and `Z[w]` (w^2 = -1 - w) are the only rings that occur as
//! endomorphism rings of the curves in scope.  Elements are stored as integer
//! pairs `a + b*gen`; roots of unity are detected by enumerating the finite
//! unit groups rather than through minimal polynomials.

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum EndoRing {
    Z,
    GaussianZ,
    EisensteinZ,
}

impl EndoRing {
    pub fn parse(s: &str) -> Result<EndoRing> {
        match s {
            "Z" => Ok(EndoRing::Z),
            "Zi" => Ok(EndoRing::GaussianZ),
            "Zw" => Ok(EndoRing::EisensteinZ),
            other => Err(Error::InvalidScenario(format!("unknown ring {other:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EndoRing::Z => "Z",
            EndoRing::GaussianZ => "Zi",
            EndoRing::EisensteinZ => "Zw",
        }
    }

    /// Integral representation of the ring generator on the standard basis
    /// (1, gen).  For `Z` there is no generator beyond 1 and the identity is
    /// returned.
    pub fn generator_rep(self) -> IntMatrix {
        match self {
            EndoRing::Z => IntMatrix::identity(2),
            EndoRing::GaussianZ => IntMatrix::from_rows(&[&[0, -1], &[1, 0]]),
            EndoRing::EisensteinZ => IntMatrix::from_rows(&[&[0, -1], &[1, -1]]),
        }
    }

    /// The full (finite) unit group.
    pub fn units(self) -> Vec<RingElement> {
        let mk = |a, b| RingElement { ring: self, a, b };
        match self {
            EndoRing::Z => vec![mk(1, 0), mk(-1, 0)],
            EndoRing::GaussianZ => vec![mk(1, 0), mk(-1, 0), mk(0, 1), mk(0, -1)],
            EndoRing::EisensteinZ => vec![
                mk(1, 0),
                mk(-1, 0),
                mk(0, 1),
                mk(0, -1),
                mk(-1, -1),
                mk(1, 1),
            ],
        }
    }

    /// Orders of group automorphisms this ring supports.
    pub fn automorphism_orders(self) -> &'static [u32] {
        match self {
            EndoRing::Z => &[1, 2],
            EndoRing::GaussianZ => &[1, 2, 4],
            EndoRing::EisensteinZ => &[1, 2, 3, 6],
        }
    }

    /// A canonical unit of the requested multiplicative order, if one exists.
    pub fn automorphism_of_order(self, order: u32) -> Option<RingElement> {
        self.units()
            .into_iter()
            .filter(|u| ring_element_order(u) == Some(order))
            .min()
    }
}

/// `a + b*gen` in the declared ring; `b = 0` is forced for `Z`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RingElement {
    pub ring: EndoRing,
    pub a: i64,
    pub b: i64,
}

impl RingElement {
    pub fn new(ring: EndoRing, a: i64, b: i64) -> Result<RingElement> {
        if ring == EndoRing::Z && b != 0 {
            return Err(Error::InvalidScenario(
                "ring Z admits no generator coefficient".into(),
            ));
        }
        Ok(RingElement { ring, a, b })
    }

    pub fn one(ring: EndoRing) -> RingElement {
        RingElement { ring, a: 1, b: 0 }
    }

    pub fn minus_one(ring: EndoRing) -> RingElement {
        RingElement { ring, a: -1, b: 0 }
    }

    pub fn from_int(ring: EndoRing, n: i64) -> RingElement {
        RingElement { ring, a: n, b: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            ring: self.ring,
            a: -self.a,
            b: -self.b,
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch in multiplication");
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (other.a as i128, other.b as i128);
        let (ra, rb) = match self.ring {
            EndoRing::Z => (a * c, 0),
            // (a + bi)(c + di) = (ac - bd) + (ad + bc) i
            EndoRing::GaussianZ => (a * c - b * d, a * d + b * c),
            // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w
            EndoRing::EisensteinZ => (a * c - b * d, a * d + b * c - b * d),
        };
        let clamp = |x: i128| i64::try_from(x).expect("ring coefficient overflow");
        RingElement {
            ring: self.ring,
            a: clamp(ra),
            b: clamp(rb),
        }
    }

    /// Multiplicative inverse, defined only on units.
    pub fn inverse(&self) -> Option<RingElement> {
        self.ring
            .units()
            .into_iter()
            .find(|u| self.mul(u).is_one())
    }

    pub fn is_unit(&self) -> bool {
        self.ring.units().contains(self)
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = RingElement::one(self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Order of `x` as a root of unity, by lookup in the finite unit group.
pub fn ring_element_order(x: &RingElement) -> Option<u32> {
    if !x.is_unit() {
        return None;
    }
    let mut acc = *x;
    for k in 1..=6u32 {
        if acc.is_one() {
            return Some(k);
        }
        acc = acc.mul(x);
    }
    None
}

/// Action of multiplication-by-`x` on the ring's standard lattice basis.
pub fn integral_rep(x: &RingElement) -> IntMatrix {
    let (a, b) = (x.a, x.b);
    match x.ring {
        EndoRing::Z => IntMatrix::from_rows(&[&[a, 0], &[0, a]]),
        EndoRing::GaussianZ => IntMatrix::from_rows(&[&[a, -b], &[b, a]]),
        EndoRing::EisensteinZ => IntMatrix::from_rows(&[&[a, -b], &[b, a - b]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elt(ring: EndoRing, a: i64, b: i64) -> RingElement {
        RingElement::new(ring, a, b).unwrap()
    }

    #[test]
    fn order_of_identity_is_one() {
        assert_eq!(ring_element_order(&elt(EndoRing::Z, 1, 0)), Some(1));
    }

    #[test]
    fn order_of_i_is_four() {
        assert_eq!(ring_element_order(&elt(EndoRing::GaussianZ, 0, 1)), Some(4));
    }

    #[test]
    fn order_of_minus_omega_by_repeated_multiplication() {
        // Independent oracle: multiply until the identity shows up.
        let x = elt(EndoRing::EisensteinZ, 0, -1);
        let mut acc = x;
        let mut order = 1;
        while !acc.is_one() {
            acc = acc.mul(&x);
            order += 1;
            assert!(order <= 12, "should have terminated");
        }
        assert_eq!(order, 6);
        assert_eq!(ring_element_order(&x), Some(6));
    }

    #[test]
    fn non_units_have_no_order() {
        assert_eq!(ring_element_order(&elt(EndoRing::Z, 2, 0)), None);
        assert_eq!(ring_element_order(&elt(EndoRing::GaussianZ, 1, 1)), None);
        assert_eq!(ring_element_order(&elt(EndoRing::Z, 0, 0)), None);
    }

    #[test]
    fn integral_rep_standard_matrices() {
        assert_eq!(
            integral_rep(&elt(EndoRing::GaussianZ, 0, 1)),
            IntMatrix::from_rows(&[&[0, -1], &[1, 0]])
        );
        assert_eq!(
            integral_rep(&elt(EndoRing::EisensteinZ, 0, 1)),
            IntMatrix::from_rows(&[&[0, -1], &[1, -1]])
        );
        assert_eq!(
            integral_rep(&elt(EndoRing::Z, -1, 0)),
            IntMatrix::from_rows(&[&[-1, 0], &[0, -1]])
        );
    }

    #[test]
    fn integral_rep_is_multiplicative() {
        for ring in [EndoRing::Z, EndoRing::GaussianZ, EndoRing::EisensteinZ] {
            for x in ring.units() {
                for y in ring.units() {
                    assert_eq!(
                        integral_rep(&x.mul(&y)),
                        integral_rep(&x).mul(&integral_rep(&y))
                    );
                }
            }
        }
    }

    #[test]
    fn unit_group_orders_match_curve_automorphism_groups() {
        assert_eq!(EndoRing::Z.units().len(), 2);
        assert_eq!(EndoRing::GaussianZ.units().len(), 4);
        assert_eq!(EndoRing::EisensteinZ.units().len(), 6);
        for ring in [EndoRing::Z, EndoRing::GaussianZ, EndoRing::EisensteinZ] {
            for u in ring.units() {
                let ord = ring_element_order(&u).unwrap();
                assert!([1, 2, 3, 4, 6].contains(&ord));
                assert!(ring.automorphism_orders().contains(&ord) || ord == 3);
            }
        }
    }

    #[test]
    fn fixed_point_table_from_integral_reps() {
        // |det(rep(x) - I)| for a root of unity of order r.
        let table = [(2u32, 4i64), (3, 3), (4, 2), (6, 1)];
        for ring in [EndoRing::Z, EndoRing::GaussianZ, EndoRing::EisensteinZ] {
            for u in ring.units() {
                let r = ring_element_order(&u).unwrap();
                if r == 1 {
                    continue;
                }
                let m = integral_rep(&u).sub(&IntMatrix::identity(2));
                let expected = table.iter().find(|(ord, _)| *ord == r).unwrap().1;
                assert_eq!(m.det().abs(), expected, "ring {ring:?} unit {u:?}");
            }
        }
    }

    #[test]
    fn order_sum_identity() {
        // 1 + x + ... + x^(r-1) = 0 for every root of unity of order r >= 2.
        for ring in [EndoRing::Z, EndoRing::GaussianZ, EndoRing::EisensteinZ] {
            for u in ring.units() {
                let r = ring_element_order(&u).unwrap();
                if r < 2 {
                    continue;
                }
                let mut sum = IntMatrix::zero(2, 2);
                for k in 0..r {
                    sum = sum.add(&integral_rep(&u.pow(k)));
                }
                assert!(sum.is_zero(), "order sum failed for {u:?}");
            }
        }
    }

    #[test]
    fn same_order_automorphisms_are_inverse_or_equal() {
        for ring in [EndoRing::Z, EndoRing::GaussianZ, EndoRing::EisensteinZ] {
            for x in ring.units() {
                for y in ring.units() {
                    if ring_element_order(&x) == ring_element_order(&y) {
                        let inv = x.inverse().unwrap();
                        assert!(y == x || y == inv, "{x:?} vs {y:?}");
                    }
                }
            }
        }
    }
}

//! Fixed loci of affine automorphisms.
//!
//! Fix(g) is the solution set of (lin(g) - 1) x = -trans(g) on the rank-4
//! torus, so it is either everything (identity), empty, a finite point set of
//! size |det(lin - 1)|, or a disjoint union of cosets of a rank-2 subtorus.

use num_traits::Zero;

use crate::algebra::{
    canonical_coset_rep, solve_congruence, CongruenceSolutions, IntMatrix,
};
use crate::error::{Error, Result};
use crate::rational::{vec_neg, Rational};

use super::{ActionGroup, AffineAuto, Surface};

/// A coset component: base point plus the saturated direction lattice of a
/// rank-2 subtorus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CurveComponent {
    pub base: [Rational; 4],
    pub direction: IntMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedLocus {
    pub full: bool,
    pub isolated: Vec<[Rational; 4]>,
    pub curve_components: Vec<CurveComponent>,
}

impl FixedLocus {
    pub fn empty() -> FixedLocus {
        FixedLocus {
            full: false,
            isolated: Vec::new(),
            curve_components: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.isolated.is_empty() && self.curve_components.is_empty()
    }

    /// Topological Euler number: full torus and elliptic-curve cosets
    /// contribute zero, isolated points contribute one each.
    pub fn euler(&self) -> i64 {
        if self.full {
            0
        } else {
            self.isolated.len() as i64
        }
    }
}

pub fn fixed_locus(surface: &Surface, g: &AffineAuto) -> Result<FixedLocus> {
    if g.is_identity() {
        return Ok(FixedLocus {
            full: true,
            isolated: Vec::new(),
            curve_components: Vec::new(),
        });
    }
    let lin = g.linear.matrix4(surface)?;
    let m = lin.sub(&IntMatrix::identity(4));
    let rhs = vec_neg(&g.translation4());
    match solve_congruence(&m, &rhs)? {
        CongruenceSolutions::Empty => Ok(FixedLocus::empty()),
        CongruenceSolutions::Finite(points) => {
            let mut isolated: Vec<[Rational; 4]> = points
                .into_iter()
                .map(|p| [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
                .collect();
            isolated.sort();
            Ok(FixedLocus {
                full: false,
                isolated,
                curve_components: Vec::new(),
            })
        }
        CongruenceSolutions::Cosets {
            subtorus,
            base_points,
        } => {
            if subtorus.rows() != 2 {
                return Err(Error::Internal(format!(
                    "fixed locus of a non-identity element has a rank-{} direction",
                    subtorus.rows()
                )));
            }
            let mut comps: Vec<CurveComponent> = base_points
                .into_iter()
                .map(|p| {
                    let canon = canonical_coset_rep(&p, &subtorus);
                    CurveComponent {
                        base: [
                            canon[0].clone(),
                            canon[1].clone(),
                            canon[2].clone(),
                            canon[3].clone(),
                        ],
                        direction: subtorus.clone(),
                    }
                })
                .collect();
            comps.sort();
            comps.dedup();
            Ok(FixedLocus {
                full: false,
                isolated: Vec::new(),
                curve_components: comps,
            })
        }
    }
}

/// True iff every non-identity element acts without fixed points.
pub fn is_free(group: &ActionGroup) -> Result<bool> {
    for (i, g) in group.elements().iter().enumerate() {
        if i as u32 == group.identity_index() {
            continue;
        }
        if !fixed_locus(group.surface(), g)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{AffineAuto, LinearPart, Surface, DEFAULT_CLOSURE_CAP};
    use crate::algebra::{EndoRing, RingElement};
    use crate::rational::{rat, rat_int};
    use crate::torus::EllipticCurve;

    fn z_surface() -> Surface {
        Surface::product(
            EllipticCurve::new("E", EndoRing::Z),
            EllipticCurve::new("F", EndoRing::Z),
        )
    }

    #[test]
    fn kummer_involution_has_sixteen_fixed_points() {
        let s = z_surface();
        let g = AffineAuto::new(
            &s,
            LinearPart::Diagonal(
                RingElement::minus_one(EndoRing::Z),
                RingElement::minus_one(EndoRing::Z),
            ),
            s.first.zero_point(),
            s.second.zero_point(),
        )
        .unwrap();
        let locus = fixed_locus(&s, &g).unwrap();
        assert_eq!(locus.isolated.len(), 16);
        assert_eq!(locus.euler(), 16);
    }

    #[test]
    fn shifted_reflection_is_free() {
        // holonomy (1, -1) with a non-zero translation on the fixed factor
        let s = z_surface();
        let g = AffineAuto::new(
            &s,
            LinearPart::Diagonal(
                RingElement::one(EndoRing::Z),
                RingElement::minus_one(EndoRing::Z),
            ),
            s.first.point(rat(1, 2), rat_int(0)),
            s.second.zero_point(),
        )
        .unwrap();
        assert!(fixed_locus(&s, &g).unwrap().is_empty());
    }

    #[test]
    fn reflection_fixes_four_curves() {
        let s = z_surface();
        let g = AffineAuto::new(
            &s,
            LinearPart::Diagonal(
                RingElement::one(EndoRing::Z),
                RingElement::minus_one(EndoRing::Z),
            ),
            s.first.zero_point(),
            s.second.zero_point(),
        )
        .unwrap();
        let locus = fixed_locus(&s, &g).unwrap();
        assert_eq!(locus.curve_components.len(), 4);
        assert_eq!(locus.euler(), 0);
        // direction is the first factor
        assert_eq!(
            locus.curve_components[0].direction,
            IntMatrix::from_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
    }

    #[test]
    fn three_cycle_on_square_has_nine_fixed_points() {
        let s = Surface::square(EllipticCurve::new("E", EndoRing::Z));
        let re = |n: i64| RingElement::from_int(EndoRing::Z, n);
        let cycle = AffineAuto::new(
            &s,
            LinearPart::Matrix([re(0), re(1), re(-1), re(-1)]),
            s.first.zero_point(),
            s.second.zero_point(),
        )
        .unwrap();
        let locus = fixed_locus(&s, &cycle).unwrap();
        assert_eq!(locus.isolated.len(), 9);
        // all fixed points are of the shape (a, a) with 3a = 0
        for p in &locus.isolated {
            assert_eq!(p[0], p[2]);
            assert_eq!(p[1], p[3]);
        }
    }

    #[test]
    fn freeness_checks() {
        let s = z_surface();
        // pure translation group
        let t = AffineAuto::translation_of(
            &s,
            s.first.point(rat(1, 2), rat_int(0)),
            s.second.point(rat(1, 2), rat_int(0)),
        )
        .unwrap();
        let g1 = ActionGroup::close_group(s.clone(), &[t], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(is_free(&g1).unwrap());
        // free order-two action with holonomy
        let h = AffineAuto::new(
            &s,
            LinearPart::Diagonal(
                RingElement::one(EndoRing::Z),
                RingElement::minus_one(EndoRing::Z),
            ),
            s.first.point(rat(1, 2), rat_int(0)),
            s.second.zero_point(),
        )
        .unwrap();
        let g2 = ActionGroup::close_group(s.clone(), &[h], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g2.order(), 2);
        assert!(is_free(&g2).unwrap());
        // sign involution is not free
        let k = AffineAuto::new(
            &s,
            LinearPart::Diagonal(
                RingElement::minus_one(EndoRing::Z),
                RingElement::minus_one(EndoRing::Z),
            ),
            s.first.zero_point(),
            s.second.zero_point(),
        )
        .unwrap();
        let g3 = ActionGroup::close_group(s, &[k], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(!is_free(&g3).unwrap());
    }
}

//! Elliptic curves as symbolic lattices, torsion points, characters, and
//! quotients by finite translation subgroups.
//!
//! A curve stores no numeric periods: only an id, its endomorphism ring and
//! the integral representation of the ring generator on the current basis.
//! Quotient curves are related to their sources through `CurveQuotientMap`s
//! whose matrices transform source-basis coordinates into target-basis
//! coordinates, so every computation stays in exact rational linear algebra.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{
    hermite_normal_form, integral_solve, kernel_basis, EndoRing, IntMatrix, RatMatrix,
    RingElement,
};
use crate::error::{Error, Result};
use crate::rational::{frac, is_integral, point_order, rat, rat_int, vec_frac, Rational};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EllipticCurve {
    pub id: String,
    pub ring: EndoRing,
    /// Action of the ring generator on this curve's (symbolic) basis.  Equals
    /// the standard representation for declared curves; conjugated for
    /// quotient curves.
    gen_rep: IntMatrix,
}

impl EllipticCurve {
    pub fn new(id: impl Into<String>, ring: EndoRing) -> EllipticCurve {
        EllipticCurve {
            id: id.into(),
            ring,
            gen_rep: ring.generator_rep(),
        }
    }

    pub(crate) fn with_gen_rep(id: String, ring: EndoRing, gen_rep: IntMatrix) -> EllipticCurve {
        EllipticCurve { id, ring, gen_rep }
    }

    pub fn gen_rep(&self) -> &IntMatrix {
        &self.gen_rep
    }

    /// Integral representation of `a + b*gen` on this curve's basis.
    pub fn rep_of(&self, x: &RingElement) -> Result<IntMatrix> {
        if x.ring != self.ring {
            return Err(Error::SurfaceMismatch(format!(
                "ring element of {:?} applied to curve {} over {:?}",
                x.ring, self.id, self.ring
            )));
        }
        Ok(IntMatrix::identity(2)
            .scale(x.a)
            .add(&self.gen_rep.scale(x.b)))
    }

    pub fn zero_point(&self) -> TorsionPoint {
        TorsionPoint {
            curve: self.id.clone(),
            coords: [Rational::zero(), Rational::zero()],
        }
    }

    pub fn point(&self, x: Rational, y: Rational) -> TorsionPoint {
        TorsionPoint {
            curve: self.id.clone(),
            coords: [frac(&x), frac(&y)],
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorsionPoint {
    pub curve: String,
    pub coords: [Rational; 2],
}

impl TorsionPoint {
    pub fn order(&self) -> Result<u64> {
        point_order(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        if self.curve != other.curve {
            return Err(Error::SurfaceMismatch(format!(
                "adding points on {} and {}",
                self.curve, other.curve
            )));
        }
        Ok(TorsionPoint {
            curve: self.curve.clone(),
            coords: [
                frac(&(&self.coords[0] + &other.coords[0])),
                frac(&(&self.coords[1] + &other.coords[1])),
            ],
        })
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint {
            curve: self.curve.clone(),
            coords: [frac(&-&self.coords[0]), frac(&-&self.coords[1])],
        }
    }

    /// Apply a group automorphism (given as a ring element on the curve).
    pub fn apply(&self, curve: &EllipticCurve, x: &RingElement) -> Result<TorsionPoint> {
        if curve.id != self.curve {
            return Err(Error::SurfaceMismatch(format!(
                "point on {} applied through curve {}",
                self.curve, curve.id
            )));
        }
        let rep = RatMatrix::from_int(&curve.rep_of(x)?);
        let v = rep.mul_vec(&self.coords);
        Ok(TorsionPoint {
            curve: self.curve.clone(),
            coords: [frac(&v[0]), frac(&v[1])],
        })
    }
}

/// A torsion line bundle, encoded by the character values on the two basis
/// vectors as rational angles (value k/n means the n-th root of unity zeta^k).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Character {
    pub curve: String,
    pub values: [Rational; 2],
}

impl Character {
    pub fn new(curve: impl Into<String>, v1: Rational, v2: Rational) -> Character {
        Character {
            curve: curve.into(),
            values: [frac(&v1), frac(&v2)],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Value on an arbitrary lattice vector (integer combination of basis).
    pub fn value_on(&self, v: &[i64; 2]) -> Rational {
        frac(&(&self.values[0] * rat_int(v[0]) + &self.values[1] * rat_int(v[1])))
    }
}

/// Smallest n with n*chi trivial.
pub fn character_order(chi: &Character) -> u64 {
    point_order(&chi.values).expect("character order fits in u64")
}

/// A quotient map between curves.  `matrix` transforms source-basis
/// coordinates of a point into target-basis coordinates; its determinant has
/// absolute value equal to the degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveQuotientMap {
    pub source: String,
    pub target: String,
    pub matrix: RatMatrix,
}

impl CurveQuotientMap {
    pub fn identity(curve: &EllipticCurve) -> CurveQuotientMap {
        CurveQuotientMap {
            source: curve.id.clone(),
            target: curve.id.clone(),
            matrix: RatMatrix::identity(2),
        }
    }

    pub fn degree(&self) -> u64 {
        let d = self.matrix.det();
        d.abs()
            .to_integer()
            .to_u64()
            .expect("quotient degree fits in u64")
    }

    pub fn push_point(&self, p: &TorsionPoint) -> Result<TorsionPoint> {
        if p.curve != self.source {
            return Err(Error::SurfaceMismatch(format!(
                "pushing point on {} through map from {}",
                p.curve, self.source
            )));
        }
        let v = self.matrix.mul_vec(&p.coords);
        Ok(TorsionPoint {
            curve: self.target.clone(),
            coords: [frac(&v[0]), frac(&v[1])],
        })
    }

    /// All preimages of a point (finite, degree many).
    pub fn preimages(&self, p: &TorsionPoint) -> Result<Vec<TorsionPoint>> {
        if p.curve != self.target {
            return Err(Error::SurfaceMismatch(format!(
                "pulling back point on {} through map onto {}",
                p.curve, self.target
            )));
        }
        let m = self.matrix.to_int()?;
        let sols = crate::algebra::solve_congruence(&m, &p.coords)?;
        let pts = match sols {
            crate::algebra::CongruenceSolutions::Finite(pts) => pts,
            _ => return Err(Error::Internal("quotient map is not finite".into())),
        };
        Ok(pts
            .into_iter()
            .map(|c| TorsionPoint {
                curve: self.source.clone(),
                coords: [c[0].clone(), c[1].clone()],
            })
            .collect())
    }

    /// `other` after `self` (self: A -> B, other: B -> C, result: A -> C).
    pub fn then(&self, other: &CurveQuotientMap) -> Result<CurveQuotientMap> {
        if self.target != other.source {
            return Err(Error::SurfaceMismatch(format!(
                "composing map onto {} with map from {}",
                self.target, other.source
            )));
        }
        Ok(CurveQuotientMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }
}

fn check_subgroup(e: &EllipticCurve, s: &[TorsionPoint]) -> Result<()> {
    let set: std::collections::BTreeSet<_> = s.iter().map(|p| p.coords.clone()).collect();
    if !set.contains(&[Rational::zero(), Rational::zero()]) {
        return Err(Error::Precondition(format!(
            "translation set on {} does not contain zero",
            e.id
        )));
    }
    for p in s {
        if p.curve != e.id {
            return Err(Error::SurfaceMismatch(format!(
                "point on {} in a subgroup of {}",
                p.curve, e.id
            )));
        }
        for q in s {
            let sum = p.add(q)?;
            if !set.contains(&sum.coords) {
                return Err(Error::Precondition(format!(
                    "translation set on {} is not closed under addition",
                    e.id
                )));
            }
        }
    }
    Ok(())
}

/// Ring data for a lattice with basis rows `basis` (in source coordinates):
/// keep the declared ring when the lattice is stable under the generator,
/// otherwise fall back to `Z` with the identity representation.
fn ring_of_lattice(
    e: &EllipticCurve,
    basis: &RatMatrix,
) -> Result<(EndoRing, IntMatrix)> {
    if e.ring == EndoRing::Z {
        return Ok((EndoRing::Z, EndoRing::Z.generator_rep()));
    }
    let gen = RatMatrix::from_int(e.gen_rep());
    // new-basis action of the generator: B^-T * gen * B^T
    let bt = basis.transpose();
    let conj = bt.inverse()?.mul(&gen).mul(&bt);
    if conj.is_integral() {
        Ok((e.ring, conj.to_int()?))
    } else {
        Ok((EndoRing::Z, EndoRing::Z.generator_rep()))
    }
}

/// Quotient of a curve by a finite subgroup of translations.  The enlarged
/// lattice gets the canonical Hermite-normal-form basis; the returned map
/// pushes coordinates forward and has degree `|S|`.
pub fn quotient_by_translation_subgroup(
    e: &EllipticCurve,
    s: &[TorsionPoint],
) -> Result<(EllipticCurve, CurveQuotientMap)> {
    check_subgroup(e, s)?;
    let mut den: i64 = 1;
    for p in s {
        for c in &p.coords {
            let d = c
                .denom()
                .to_i64()
                .ok_or_else(|| Error::InvalidTorsion("denominator overflow".into()))?;
            den = den.lcm(&d);
        }
    }
    // rows: d*e1, d*e2 and d*s for each s, then HNF and scale back by 1/d
    let mut rows: Vec<Vec<i64>> = vec![vec![den, 0], vec![0, den]];
    for p in s {
        let r: Vec<i64> = p
            .coords
            .iter()
            .map(|c| {
                (c * rat_int(den))
                    .to_integer()
                    .to_i64()
                    .expect("scaled coordinate fits in i64")
            })
            .collect();
        rows.push(r);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let h = hermite_normal_form(&IntMatrix::from_rows(&refs));
    if h.rows() != 2 {
        return Err(Error::Internal("quotient lattice lost rank".into()));
    }
    let basis = RatMatrix::from_int(&h).scale(&rat(1, den));
    let (ring, gen_rep) = ring_of_lattice(e, &basis)?;
    let target_id = format!("{}/{}", e.id, s.len().max(1));
    let target = EllipticCurve::with_gen_rep(target_id.clone(), ring, gen_rep);
    let q = CurveQuotientMap {
        source: e.id.clone(),
        target: target_id,
        matrix: basis.transpose().inverse()?,
    };
    if q.degree() as usize != s.len().max(1) {
        return Err(Error::Internal(format!(
            "quotient degree {} does not match subgroup order {}",
            q.degree(),
            s.len()
        )));
    }
    for p in s {
        if !q.push_point(p)?.is_zero() {
            return Err(Error::Internal(
                "subgroup does not map to zero under its own quotient".into(),
            ));
        }
    }
    Ok((target, q))
}

/// The cover on which a torsion character trivializes.
///
/// For a character of order n this produces the index-n sublattice on which
/// the character vanishes (canonical basis), the induced degree-n map back to
/// the original curve, and the distinguished torsion point of order exactly n
/// generating the deck group (the class of the lexicographically smallest
/// lattice vector with character value 1/n).
pub fn trivializing_sublattice(
    e: &EllipticCurve,
    chi: &Character,
) -> Result<(EllipticCurve, TorsionPoint, CurveQuotientMap)> {
    if chi.curve != e.id {
        return Err(Error::SurfaceMismatch(format!(
            "character on {} used with curve {}",
            chi.curve, e.id
        )));
    }
    let n_u64 = character_order(chi);
    let n = i64::try_from(n_u64)
        .map_err(|_| Error::InvalidTorsion("character order overflow".into()))?;
    if n == 1 {
        let source = e.clone();
        let q = CurveQuotientMap::identity(e);
        return Ok((source, e.zero_point(), q));
    }
    // kernel lattice of chi: { m : m1*v1 + m2*v2 = 0 mod 1 }, computed as the
    // projection of the integer kernel of [p1 p2 -n] where vi = pi/n
    let p1 = (chi.values[0].clone() * rat_int(n)).to_integer();
    let p2 = (chi.values[1].clone() * rat_int(n)).to_integer();
    let p1 = p1.to_i64().ok_or_else(|| Error::InvalidTorsion("character overflow".into()))?;
    let p2 = p2.to_i64().ok_or_else(|| Error::InvalidTorsion("character overflow".into()))?;
    let k = kernel_basis(&IntMatrix::from_rows(&[&[p1, p2, -n]]));
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..k.rows() {
        rows.push(vec![k.get(i, 0), k.get(i, 1)]);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let b = hermite_normal_form(&IntMatrix::from_rows(&refs));
    if b.rows() != 2 || b.det().abs() != n {
        return Err(Error::Internal(format!(
            "character kernel lattice has index {} instead of {}",
            b.det().abs(),
            n
        )));
    }
    let (ring, gen_rep) = ring_of_lattice(e, &RatMatrix::from_int(&b))?;
    let source_id = format!("{}^{}", e.id, n);
    let source = EllipticCurve::with_gen_rep(source_id.clone(), ring, gen_rep);
    let q = CurveQuotientMap {
        source: source_id,
        target: e.id.clone(),
        matrix: RatMatrix::from_int(&b.transpose()),
    };
    // distinguished point: lexicographically smallest u in [0,n)^2 with
    // chi(u) = 1/n, expressed in the sublattice basis
    let mut chosen: Option<[i64; 2]> = None;
    'outer: for u0 in 0..n {
        for u1 in 0..n {
            if chi.value_on(&[u0, u1]) == rat(1, n) {
                chosen = Some([u0, u1]);
                break 'outer;
            }
        }
    }
    let u = chosen.ok_or_else(|| {
        Error::Internal("character of order n does not attain the value 1/n".into())
    })?;
    let coords = q.matrix.inverse()?.mul_vec(&[rat_int(u[0]), rat_int(u[1])]);
    let a = TorsionPoint {
        curve: source.id.clone(),
        coords: [frac(&coords[0]), frac(&coords[1])],
    };
    if a.order()? != n_u64 {
        return Err(Error::Internal(format!(
            "distinguished point has order {} instead of {}",
            a.order()?,
            n
        )));
    }
    Ok((source, a, q))
}

/// Pull a character back along a quotient map into its curve.
pub fn pullback_character(chi: &Character, q: &CurveQuotientMap) -> Result<Character> {
    if chi.curve != q.target {
        return Err(Error::SurfaceMismatch(format!(
            "character on {} pulled back along map onto {}",
            chi.curve, q.target
        )));
    }
    let values = q.matrix.transpose().mul_vec(&chi.values);
    Ok(Character {
        curve: q.source.clone(),
        values: [frac(&values[0]), frac(&values[1])],
    })
}

/// Does the composite of `first` and the quotient of its source by the
/// subgroup generated by `a` recover the target lattice of `first` exactly?
/// Used by round-trip tests.
pub fn quotient_recovers_target(
    source: &EllipticCurve,
    a: &TorsionPoint,
    first: &CurveQuotientMap,
) -> Result<bool> {
    let subgroup = cyclic_subgroup(source, a)?;
    let (_, q2) = quotient_by_translation_subgroup(source, &subgroup)?;
    // lattice of the second quotient, pushed into target coordinates of the
    // first map, must be exactly Z^2
    let b2 = q2.matrix.inverse()?.transpose(); // rows: basis of quotient lattice in source coords
    let pushed = first.matrix.mul(&b2.transpose()).transpose();
    let mut rows = Vec::new();
    for i in 0..pushed.rows() {
        let mut r = Vec::new();
        for j in 0..pushed.cols() {
            let x = pushed.get(i, j);
            if !is_integral(x) {
                return Ok(false);
            }
            r.push(x.to_integer().to_i64().expect("entry fits"));
        }
        rows.push(r);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Ok(hermite_normal_form(&IntMatrix::from_rows(&refs)).is_identity())
}

/// The cyclic subgroup generated by a torsion point (including zero).
pub fn cyclic_subgroup(e: &EllipticCurve, a: &TorsionPoint) -> Result<Vec<TorsionPoint>> {
    let mut out = vec![e.zero_point()];
    let mut acc = a.clone();
    while !acc.is_zero() {
        out.push(acc.clone());
        acc = acc.add(a)?;
    }
    out.sort();
    Ok(out)
}

/// Membership of a rational vector in the row lattice of an integer matrix,
/// after clearing denominators.
pub(crate) fn rational_in_row_lattice(rows: &RatMatrix, v: &[Rational]) -> bool {
    let mut den: i64 = 1;
    for i in 0..rows.rows() {
        for j in 0..rows.cols() {
            den = den.lcm(&rows.get(i, j).denom().to_i64().expect("denominator fits"));
        }
    }
    for x in v {
        den = den.lcm(&x.denom().to_i64().expect("denominator fits"));
    }
    let mut scaled = IntMatrix::zero(rows.rows(), rows.cols());
    for i in 0..rows.rows() {
        for j in 0..rows.cols() {
            scaled.set(
                i,
                j,
                (rows.get(i, j) * rat_int(den)).to_integer().to_i64().expect("fits"),
            );
        }
    }
    let target: Vec<i64> = v
        .iter()
        .map(|x| (x * rat_int(den)).to_integer().to_i64().expect("fits"))
        .collect();
    integral_solve(&scaled.transpose(), &target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn curve(ring: EndoRing) -> EllipticCurve {
        EllipticCurve::new("E", ring)
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_identity() {
        let e = curve(EndoRing::Z);
        let (e2, q) = quotient_by_translation_subgroup(&e, &[e.zero_point()]).unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(e2.ring, e.ring);
        assert!(q.matrix.is_integral());
    }

    #[test]
    fn quotient_by_half_point() {
        let e = curve(EndoRing::Z);
        let a = e.point(rat(1, 2), rat_int(0));
        let s = cyclic_subgroup(&e, &a).unwrap();
        let (_, q) = quotient_by_translation_subgroup(&e, &s).unwrap();
        assert_eq!(q.degree(), 2);
        // the generator maps to zero
        assert!(q.push_point(&a).unwrap().is_zero());
        // a quarter point maps to a point of order 4 or less
        let b = e.point(rat(1, 4), rat_int(0));
        let image = q.push_point(&b).unwrap();
        assert!(image.order().unwrap() <= 4);
        assert!(b.order().unwrap() % image.order().unwrap() == 0);
    }

    #[test]
    fn quotient_by_full_two_torsion() {
        let e = curve(EndoRing::Z);
        let mut s = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                s.push(e.point(rat(x, 2), rat(y, 2)));
            }
        }
        let (e2, q) = quotient_by_translation_subgroup(&e, &s).unwrap();
        assert_eq!(q.degree(), 4);
        assert_eq!(e2.ring, EndoRing::Z);
        // two-torsion of the quotient pulls back into the four-torsion
        let p = TorsionPoint {
            curve: e2.id.clone(),
            coords: [rat(1, 2), rat_int(0)],
        };
        for pre in q.preimages(&p).unwrap() {
            assert!(pre.order().unwrap() <= 4);
            assert_eq!(pre.curve, e.id);
        }
        assert_eq!(q.preimages(&p).unwrap().len(), 4);
    }

    #[test]
    fn quotient_rejects_non_closed_sets() {
        let e = curve(EndoRing::Z);
        let s = vec![e.zero_point(), e.point(rat(1, 3), rat_int(0))];
        assert!(matches!(
            quotient_by_translation_subgroup(&e, &s),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quotient_chain_is_associative() {
        // quotient by S then by the image of T equals quotient by S + T
        let e = curve(EndoRing::Z);
        let a = e.point(rat(1, 2), rat_int(0));
        let b = e.point(rat_int(0), rat(1, 2));
        let sa = cyclic_subgroup(&e, &a).unwrap();
        let (e1, q1) = quotient_by_translation_subgroup(&e, &sa).unwrap();
        let b1 = q1.push_point(&b).unwrap();
        let sb = cyclic_subgroup(&e1, &b1).unwrap();
        let (_, q2) = quotient_by_translation_subgroup(&e1, &sb).unwrap();
        let composite = q1.then(&q2).unwrap();

        let mut s_ab = Vec::new();
        for p in &sa {
            for k in 0..2 {
                let mut acc = p.clone();
                for _ in 0..k {
                    acc = acc.add(&b).unwrap();
                }
                s_ab.push(acc);
            }
        }
        s_ab.sort();
        s_ab.dedup();
        let (_, q12) = quotient_by_translation_subgroup(&e, &s_ab).unwrap();
        assert_eq!(composite.degree(), q12.degree());
        // same lattice: composite pushforward of both quotients' preimages agree
        assert_eq!(composite.matrix, q12.matrix);
    }

    #[test]
    fn gaussian_quotient_keeps_ring_when_stable() {
        let e = curve(EndoRing::GaussianZ);
        // <(1/2, 1/2)> is stable under i
        let a = e.point(rat(1, 2), rat(1, 2));
        let s = cyclic_subgroup(&e, &a).unwrap();
        let (e2, _) = quotient_by_translation_subgroup(&e, &s).unwrap();
        assert_eq!(e2.ring, EndoRing::GaussianZ);
        // the conjugated generator representation still squares to -1
        let sq = e2.gen_rep().mul(e2.gen_rep());
        assert_eq!(sq, IntMatrix::identity(2).neg());
    }

    #[test]
    fn gaussian_quotient_degrades_ring_when_unstable() {
        let e = curve(EndoRing::GaussianZ);
        // <(1/2, 0)> is not stable under i
        let a = e.point(rat(1, 2), rat_int(0));
        let s = cyclic_subgroup(&e, &a).unwrap();
        let (e2, _) = quotient_by_translation_subgroup(&e, &s).unwrap();
        assert_eq!(e2.ring, EndoRing::Z);
    }

    #[test]
    fn character_orders() {
        let triv = Character::new("E", rat_int(0), rat_int(0));
        assert_eq!(character_order(&triv), 1);
        assert_eq!(character_order(&Character::new("E", rat(1, 4), rat_int(0))), 4);
        assert_eq!(character_order(&Character::new("E", rat(1, 2), rat(1, 3))), 6);
    }

    #[test]
    fn trivializing_sublattice_for_order_two() {
        let e = curve(EndoRing::Z);
        let chi = Character::new("E", rat(1, 2), rat_int(0));
        let (source, a, q) = trivializing_sublattice(&e, &chi).unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(a.order().unwrap(), 2);
        assert!(pullback_character(&chi, &q).unwrap().is_trivial());
        assert!(quotient_recovers_target(&source, &a, &q).unwrap());
        // the canonical kernel basis here is (2, 0), (0, 1)
        assert_eq!(
            q.matrix,
            RatMatrix::from_int(&IntMatrix::from_rows(&[&[2, 0], &[0, 1]]))
        );
    }

    #[test]
    fn trivializing_sublattice_for_mixed_order_four() {
        let e = curve(EndoRing::Z);
        let chi = Character::new("E", rat(1, 4), rat(1, 2));
        let (source, a, q) = trivializing_sublattice(&e, &chi).unwrap();
        assert_eq!(q.degree(), 4);
        assert_eq!(a.order().unwrap(), 4);
        assert!(pullback_character(&chi, &q).unwrap().is_trivial());
        assert!(quotient_recovers_target(&source, &a, &q).unwrap());
    }

    #[test]
    fn trivializing_sublattice_when_neither_value_is_primitive() {
        let e = curve(EndoRing::Z);
        let chi = Character::new("E", rat(1, 2), rat(1, 3));
        let (source, a, q) = trivializing_sublattice(&e, &chi).unwrap();
        assert_eq!(q.degree(), 6);
        assert_eq!(a.order().unwrap(), 6);
        assert!(pullback_character(&chi, &q).unwrap().is_trivial());
        assert!(quotient_recovers_target(&source, &a, &q).unwrap());
    }

    #[test]
    fn pullback_along_identity_is_identity() {
        let e = curve(EndoRing::Z);
        let chi = Character::new("E", rat(1, 3), rat_int(0));
        let q = CurveQuotientMap::identity(&e);
        assert_eq!(pullback_character(&chi, &q).unwrap().values, chi.values);
    }

    #[test]
    fn character_sublattice_round_trip_grid() {
        // every character of order n in {1,2,3,4} trivializes on its cover
        let e = curve(EndoRing::Z);
        for n in 1i64..=4 {
            for k1 in 0..n {
                for k2 in 0..n {
                    let chi = Character::new("E", rat(k1, n), rat(k2, n));
                    let ord = character_order(&chi);
                    if ord != n as u64 {
                        continue;
                    }
                    let (source, a, q) = trivializing_sublattice(&e, &chi).unwrap();
                    assert_eq!(q.degree(), ord);
                    assert_eq!(a.order().unwrap(), ord);
                    assert!(pullback_character(&chi, &q).unwrap().is_trivial());
                    assert!(quotient_recovers_target(&source, &a, &q).unwrap());
                }
            }
        }
    }
}

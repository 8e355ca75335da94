//! Affine automorphisms of a product of two elliptic curves and finite
//! closed groups of them, with the distinguished subgroups cached at
//! construction: the translation subgroup, the holonomy parts, the per-factor
//! pure translation subgroups and the kernel of the action on the first
//! factor.

mod fixed;
mod split;

pub use fixed::{fixed_locus, is_free, CurveComponent, FixedLocus};
pub use split::{
    invariant_complex_sublattice_candidates, split_invariant_subtorus, SubtorusSplitting,
};

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::{ring_element_order, EndoRing, IntMatrix, RatMatrix, RingElement};
use crate::error::{Error, Result};
use crate::rational::{frac, vec_frac, Rational};
use crate::torus::{EllipticCurve, TorsionPoint};

/// Default cap on closure size; every group in scope is far smaller, so the
/// cap mostly catches accidentally infinite input.
pub const DEFAULT_CLOSURE_CAP: usize = 1024;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surface {
    pub first: EllipticCurve,
    pub second: EllipticCurve,
    pub same_curve: bool,
}

impl Surface {
    pub fn new(first: EllipticCurve, second: EllipticCurve, same_curve: bool) -> Result<Surface> {
        if same_curve && (first.id != second.id || first.ring != second.ring) {
            return Err(Error::InvalidScenario(
                "same_curve surfaces must use one curve on both factors".into(),
            ));
        }
        Ok(Surface {
            first,
            second,
            same_curve,
        })
    }

    pub fn product(first: EllipticCurve, second: EllipticCurve) -> Surface {
        Surface {
            first,
            second,
            same_curve: false,
        }
    }

    pub fn square(curve: EllipticCurve) -> Surface {
        Surface {
            first: curve.clone(),
            second: curve,
            same_curve: true,
        }
    }

    pub fn swapped(&self) -> Surface {
        Surface {
            first: self.second.clone(),
            second: self.first.clone(),
            same_curve: self.same_curve,
        }
    }
}

/// Linear (holonomy) part of an affine automorphism.  `Matrix` entries act on
/// column coordinate pairs: (x, y) -> (m00 x + m01 y, m10 x + m11 y), and are
/// only allowed on same-curve surfaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LinearPart {
    Diagonal(RingElement, RingElement),
    Matrix([RingElement; 4]),
}

impl LinearPart {
    pub fn identity_diagonal(surface: &Surface) -> LinearPart {
        LinearPart::Diagonal(
            RingElement::one(surface.first.ring),
            RingElement::one(surface.second.ring),
        )
    }

    pub fn is_identity(&self) -> bool {
        match self {
            LinearPart::Diagonal(a, b) => a.is_one() && b.is_one(),
            LinearPart::Matrix([m00, m01, m10, m11]) => {
                m00.is_one() && m01.a == 0 && m01.b == 0 && m10.a == 0 && m10.b == 0 && m11.is_one()
            }
        }
    }

    fn promote(&self, surface: &Surface) -> Result<LinearPart> {
        match self {
            LinearPart::Matrix(_) => Ok(self.clone()),
            LinearPart::Diagonal(a, b) => {
                if !surface.same_curve {
                    return Err(Error::MatrixOnProductSurface);
                }
                let ring = surface.first.ring;
                if a.ring != ring || b.ring != ring {
                    return Err(Error::SurfaceMismatch(
                        "diagonal parts over mismatched rings cannot be promoted".into(),
                    ));
                }
                let zero = RingElement::from_int(ring, 0);
                Ok(LinearPart::Matrix([*a, zero, zero, *b]))
            }
        }
    }

    /// 4x4 integral representation on the product lattice, coordinates
    /// ordered (x1, x2, y1, y2).
    pub fn matrix4(&self, surface: &Surface) -> Result<IntMatrix> {
        let mut out = IntMatrix::zero(4, 4);
        let mut put = |bi: usize, bj: usize, m: &IntMatrix| {
            for i in 0..2 {
                for j in 0..2 {
                    out.set(bi * 2 + i, bj * 2 + j, m.get(i, j));
                }
            }
        };
        match self {
            LinearPart::Diagonal(a, b) => {
                put(0, 0, &surface.first.rep_of(a)?);
                put(1, 1, &surface.second.rep_of(b)?);
            }
            LinearPart::Matrix(entries) => {
                if !surface.same_curve {
                    return Err(Error::MatrixOnProductSurface);
                }
                for (k, e) in entries.iter().enumerate() {
                    let rep = surface.first.rep_of(e)?;
                    put(k / 2, k % 2, &rep);
                }
            }
        }
        Ok(out)
    }

    fn mul(&self, other: &LinearPart, surface: &Surface) -> Result<LinearPart> {
        match (self, other) {
            (LinearPart::Diagonal(a1, b1), LinearPart::Diagonal(a2, b2)) => {
                Ok(LinearPart::Diagonal(a1.mul(a2), b1.mul(b2)))
            }
            _ => {
                let l = self.promote(surface)?;
                let r = other.promote(surface)?;
                let (LinearPart::Matrix(a), LinearPart::Matrix(b)) = (&l, &r) else {
                    unreachable!()
                };
                let mut out = [RingElement::from_int(surface.first.ring, 0); 4];
                for i in 0..2 {
                    for j in 0..2 {
                        let mut acc = RingElement::from_int(surface.first.ring, 0);
                        for k in 0..2 {
                            let prod = a[i * 2 + k].mul(&b[k * 2 + j]);
                            acc = RingElement {
                                ring: acc.ring,
                                a: acc.a + prod.a,
                                b: acc.b + prod.b,
                            };
                        }
                        out[i * 2 + j] = acc;
                    }
                }
                Ok(LinearPart::Matrix(out))
            }
        }
    }

    /// Multiplicative order, or None when infinite (non-unit data).
    pub fn order(&self, surface: &Surface) -> Option<u32> {
        match self {
            LinearPart::Diagonal(a, b) => {
                let oa = ring_element_order(a)?;
                let ob = ring_element_order(b)?;
                Some(num_integer::lcm(oa, ob))
            }
            LinearPart::Matrix(_) => {
                let m = self.matrix4(surface).ok()?;
                let mut acc = m.clone();
                for k in 1..=24u32 {
                    if acc.is_identity() {
                        return Some(k);
                    }
                    acc = acc.mul(&m);
                }
                None
            }
        }
    }
}

/// An affine automorphism g = (linear part, torsion translation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineAuto {
    pub linear: LinearPart,
    pub translation: (TorsionPoint, TorsionPoint),
}

impl AffineAuto {
    pub fn new(
        surface: &Surface,
        linear: LinearPart,
        t1: TorsionPoint,
        t2: TorsionPoint,
    ) -> Result<AffineAuto> {
        if t1.curve != surface.first.id || t2.curve != surface.second.id {
            return Err(Error::SurfaceMismatch(format!(
                "translation on ({}, {}) used on surface ({}, {})",
                t1.curve, t2.curve, surface.first.id, surface.second.id
            )));
        }
        if let LinearPart::Matrix(_) = linear {
            if !surface.same_curve {
                return Err(Error::MatrixOnProductSurface);
            }
        }
        if let LinearPart::Diagonal(a, b) = &linear {
            if a.ring != surface.first.ring || b.ring != surface.second.ring {
                return Err(Error::SurfaceMismatch(
                    "diagonal linear part over the wrong rings".into(),
                ));
            }
        }
        if let LinearPart::Matrix(entries) = &linear {
            if entries.iter().any(|e| e.ring != surface.first.ring) {
                return Err(Error::SurfaceMismatch(
                    "matrix linear part over the wrong ring".into(),
                ));
            }
        }
        Ok(AffineAuto {
            linear,
            translation: (t1, t2),
        })
    }

    pub fn identity(surface: &Surface) -> AffineAuto {
        AffineAuto {
            linear: LinearPart::identity_diagonal(surface),
            translation: (surface.first.zero_point(), surface.second.zero_point()),
        }
    }

    pub fn translation_of(surface: &Surface, t1: TorsionPoint, t2: TorsionPoint) -> Result<AffineAuto> {
        AffineAuto::new(surface, LinearPart::identity_diagonal(surface), t1, t2)
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity()
            && self.translation.0.is_zero()
            && self.translation.1.is_zero()
    }

    pub fn has_trivial_holonomy(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn translation4(&self) -> [Rational; 4] {
        [
            self.translation.0.coords[0].clone(),
            self.translation.0.coords[1].clone(),
            self.translation.1.coords[0].clone(),
            self.translation.1.coords[1].clone(),
        ]
    }

    pub fn apply(&self, surface: &Surface, point: &[Rational; 4]) -> Result<[Rational; 4]> {
        let lin = RatMatrix::from_int(&self.linear.matrix4(surface)?);
        let moved = lin.mul_vec(point);
        let t = self.translation4();
        let mut out = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for i in 0..4 {
            out[i] = frac(&(&moved[i] + &t[i]));
        }
        Ok(out)
    }

    pub fn fixes(&self, surface: &Surface, point: &[Rational; 4]) -> Result<bool> {
        Ok(&self.apply(surface, point)? == point)
    }

    fn from_parts(surface: &Surface, linear: LinearPart, t: [Rational; 4]) -> AffineAuto {
        AffineAuto {
            linear,
            translation: (
                surface.first.point(t[0].clone(), t[1].clone()),
                surface.second.point(t[2].clone(), t[3].clone()),
            ),
        }
    }
}

/// g then-after h: (g . h)(x) = g(h(x)); the translation law is
/// lin(g)(trans(h)) + trans(g).
pub fn compose(surface: &Surface, g: &AffineAuto, h: &AffineAuto) -> Result<AffineAuto> {
    let linear = g.linear.mul(&h.linear, surface)?;
    let lg = RatMatrix::from_int(&g.linear.matrix4(surface)?);
    let moved = lg.mul_vec(&h.translation4());
    let tg = g.translation4();
    let mut t = [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    for i in 0..4 {
        t[i] = frac(&(&moved[i] + &tg[i]));
    }
    Ok(AffineAuto::from_parts(surface, linear, t))
}

pub fn inverse(surface: &Surface, g: &AffineAuto) -> Result<AffineAuto> {
    let order = g.linear.order(surface).ok_or(Error::InfiniteOrder)?;
    let mut lin_inv = LinearPart::identity_diagonal(surface);
    for _ in 0..order.saturating_sub(1) {
        lin_inv = lin_inv.mul(&g.linear, surface)?;
    }
    let rep = RatMatrix::from_int(&lin_inv.matrix4(surface)?);
    let moved = rep.mul_vec(&g.translation4());
    let t: Vec<Rational> = moved.iter().map(|x| frac(&-x)).collect();
    Ok(AffineAuto::from_parts(
        surface,
        lin_inv,
        [t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone()],
    ))
}

/// Second-factor holonomy order of a diagonal element (the pipeline's
/// normal-form invariant).
pub fn second_holonomy_order(g: &AffineAuto) -> Result<u32> {
    match &g.linear {
        LinearPart::Diagonal(_, b) => ring_element_order(b).ok_or(Error::InfiniteOrder),
        LinearPart::Matrix(_) => Err(Error::Precondition(
            "second-factor holonomy order requires a diagonal linear part".into(),
        )),
    }
}

/// A finite closed group of affine automorphisms with cached structure.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    surface: Surface,
    elements: Vec<AffineAuto>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity_index: u32,
    delta: Vec<u32>,
    holonomy_parts: Vec<LinearPart>,
    first_translations: Vec<TorsionPoint>,
    second_translations: Vec<TorsionPoint>,
    kernel_on_first: Vec<u32>,
}

impl ActionGroup {
    /// Close a generating set into a group, erroring past `cap`.
    pub fn close_group(
        surface: Surface,
        generators: &[AffineAuto],
        cap: usize,
    ) -> Result<ActionGroup> {
        for g in generators {
            if g.translation.0.curve != surface.first.id
                || g.translation.1.curve != surface.second.id
            {
                return Err(Error::SurfaceMismatch(
                    "generator does not live on the given surface".into(),
                ));
            }
            if matches!(g.linear, LinearPart::Matrix(_)) && !surface.same_curve {
                return Err(Error::MatrixOnProductSurface);
            }
            if g.linear.order(&surface).is_none() {
                return Err(Error::InfiniteOrder);
            }
        }
        // uniform representation: promote everything if any generator is a matrix
        let any_matrix = generators
            .iter()
            .any(|g| matches!(g.linear, LinearPart::Matrix(_)));
        let gens: Vec<AffineAuto> = generators
            .iter()
            .map(|g| -> Result<AffineAuto> {
                if any_matrix {
                    Ok(AffineAuto {
                        linear: g.linear.promote(&surface)?,
                        translation: g.translation.clone(),
                    })
                } else {
                    Ok(g.clone())
                }
            })
            .collect::<Result<_>>()?;

        let identity = if any_matrix {
            AffineAuto {
                linear: LinearPart::identity_diagonal(&surface).promote(&surface)?,
                translation: (surface.first.zero_point(), surface.second.zero_point()),
            }
        } else {
            AffineAuto::identity(&surface)
        };

        let mut set: BTreeSet<AffineAuto> = BTreeSet::new();
        set.insert(identity);
        let mut frontier: Vec<AffineAuto> = set.iter().cloned().collect();
        while let Some(e) = frontier.pop() {
            for g in &gens {
                let prod = compose(&surface, &e, g)?;
                if set.insert(prod.clone()) {
                    if set.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    frontier.push(prod);
                }
            }
        }
        ActionGroup::from_closed_elements(surface, set.into_iter().collect())
    }

    /// Build a group from an already-closed element list, verifying closure.
    pub fn from_closed_elements(
        surface: Surface,
        mut elements: Vec<AffineAuto>,
    ) -> Result<ActionGroup> {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element set".into()));
        }
        let index_of = |e: &AffineAuto, elements: &[AffineAuto]| -> Result<u32> {
            elements
                .binary_search(e)
                .map(|i| i as u32)
                .map_err(|_| Error::NotAGroup("set is not closed under composition".into()))
        };
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = compose(&surface, &elements[i], &elements[j])?;
                table[i * n + j] = index_of(&prod, &elements)?;
            }
        }
        let identity_index = elements
            .iter()
            .position(|e| e.is_identity())
            .ok_or_else(|| Error::NotAGroup("missing identity".into()))? as u32;
        let mut inverses = vec![u32::MAX; n];
        for i in 0..n {
            let inv = (0..n).find(|&j| table[i * n + j] == identity_index);
            inverses[i] =
                inv.ok_or_else(|| Error::NotAGroup("element without inverse".into()))? as u32;
        }
        let delta: Vec<u32> = (0..n as u32)
            .filter(|&i| elements[i as usize].has_trivial_holonomy())
            .collect();
        let mut holonomy_parts: Vec<LinearPart> =
            elements.iter().map(|e| e.linear.clone()).collect();
        holonomy_parts.sort();
        holonomy_parts.dedup();
        let mut first_translations = Vec::new();
        let mut second_translations = Vec::new();
        let mut kernel_on_first = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            let (t1, t2) = (&e.translation.0, &e.translation.1);
            if e.has_trivial_holonomy() {
                if t2.is_zero() {
                    first_translations.push(t1.clone());
                }
                if t1.is_zero() {
                    second_translations.push(t2.clone());
                }
            }
            if acts_trivially_on_first(&surface, e)? {
                kernel_on_first.push(i as u32);
            }
        }
        first_translations.sort();
        second_translations.sort();
        Ok(ActionGroup {
            surface,
            elements,
            table,
            inverses,
            identity_index,
            delta,
            holonomy_parts,
            first_translations,
            second_translations,
            kernel_on_first,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineAuto] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &AffineAuto {
        &self.elements[i as usize]
    }

    pub fn identity_index(&self) -> u32 {
        self.identity_index
    }

    pub fn compose_indices(&self, i: u32, j: u32) -> u32 {
        self.table[i as usize * self.elements.len() + j as usize]
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    /// Indices of the translation subgroup (trivial holonomy).
    pub fn translation_subgroup(&self) -> &[u32] {
        &self.delta
    }

    /// The distinct holonomy parts; always a group.
    pub fn holonomy_parts(&self) -> &[LinearPart] {
        &self.holonomy_parts
    }

    /// Points b on the first factor with (t_b x 1) in the group.
    pub fn first_factor_translations(&self) -> &[TorsionPoint] {
        &self.first_translations
    }

    /// Points c on the second factor with (1 x t_c) in the group.
    pub fn second_factor_translations(&self) -> &[TorsionPoint] {
        &self.second_translations
    }

    /// Indices of the kernel of the action on the first factor.
    pub fn kernel_on_first_factor(&self) -> &[u32] {
        &self.kernel_on_first
    }

    pub fn is_translation_group(&self) -> bool {
        self.delta.len() == self.elements.len()
    }

    pub fn all_diagonal(&self) -> bool {
        self.elements
            .iter()
            .all(|e| matches!(e.linear, LinearPart::Diagonal(_, _)))
    }

    pub fn element_order(&self, i: u32) -> u32 {
        let mut acc = i;
        let mut k = 1u32;
        while acc != self.identity_index {
            acc = self.compose_indices(acc, i);
            k += 1;
        }
        k
    }

    /// Exponent of the whole group (lcm of element orders).
    pub fn exponent(&self) -> u32 {
        (0..self.elements.len() as u32)
            .map(|i| self.element_order(i))
            .fold(1, num_integer::lcm)
    }

    /// Closure of a subset within the group, via the composition table.
    pub fn subgroup_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut set: BTreeSet<u32> = seed.iter().copied().collect();
        set.insert(self.identity_index);
        let mut frontier: Vec<u32> = set.iter().copied().collect();
        while let Some(i) = frontier.pop() {
            for &g in seed {
                let p = self.compose_indices(i, g);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
            let inv = self.inverse_index(i);
            if set.insert(inv) {
                frontier.push(inv);
            }
        }
        set.into_iter().collect()
    }

    /// Is the subgroup (given by sorted indices) normal in the whole group?
    pub fn is_normal_subgroup(&self, subgroup: &[u32]) -> bool {
        let set: BTreeSet<u32> = subgroup.iter().copied().collect();
        for g in 0..self.elements.len() as u32 {
            for &h in subgroup {
                let conj = self.compose_indices(self.compose_indices(g, h), self.inverse_index(g));
                if !set.contains(&conj) {
                    return false;
                }
            }
        }
        true
    }

    /// Stabilizer of a surface point.
    pub fn stabilizer(&self, point: &[Rational; 4]) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            if e.fixes(&self.surface, point)? {
                out.push(i as u32);
            }
        }
        Ok(out)
    }

    /// Conjugate the whole group by a pure translation (classification is
    /// invariant under this).
    pub fn conjugate_by_translation(&self, t1: &TorsionPoint, t2: &TorsionPoint) -> Result<ActionGroup> {
        let tau = AffineAuto::translation_of(&self.surface, t1.clone(), t2.clone())?;
        let tau_inv = inverse(&self.surface, &tau)?;
        let mut elements = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let conj = compose(&self.surface, &tau_inv, &compose(&self.surface, e, &tau)?)?;
            elements.push(conj);
        }
        ActionGroup::from_closed_elements(self.surface.clone(), elements)
    }

    /// Exchange the two factors (diagonal groups only).
    pub fn swap_factors(&self) -> Result<ActionGroup> {
        let surface = self.surface.swapped();
        let mut elements = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let LinearPart::Diagonal(a, b) = &e.linear else {
                return Err(Error::Precondition(
                    "factor swap requires diagonal linear parts".into(),
                ));
            };
            elements.push(AffineAuto {
                linear: LinearPart::Diagonal(*b, *a),
                translation: (e.translation.1.clone(), e.translation.0.clone()),
            });
        }
        ActionGroup::from_closed_elements(surface, elements)
    }
}

fn acts_trivially_on_first(surface: &Surface, e: &AffineAuto) -> Result<bool> {
    if !e.translation.0.is_zero() {
        return Ok(false);
    }
    match &e.linear {
        LinearPart::Diagonal(a, _) => Ok(a.is_one()),
        LinearPart::Matrix(_) => {
            let m = e.linear.matrix4(surface)?;
            // first output block must be the identity on x and zero on y
            let ok = (0..2).all(|i| {
                (0..4).all(|j| {
                    let want = if i == j { 1 } else { 0 };
                    m.get(i, j) == want
                })
            });
            Ok(ok)
        }
    }
}

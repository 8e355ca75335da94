//! Linear congruences on tori: all x in (Q/Z)^n with M x = t (mod Z^n).
//!
//! Solved through the Smith normal form of M.  With U M V = D the change of
//! variables y = V^-1 x turns the system into independent scalar congruences
//! d_i y_i = (U t)_i (mod Z): a zero d_i with non-integral right-hand side
//! kills the system, a zero d_i with integral right-hand side frees a whole
//! circle direction, and a positive d_i contributes exactly d_i choices.

use num_traits::Zero;

use super::matrix::{hermite_normal_form, smith_normal_form, IntMatrix};
use super::ratmat::RatMatrix;
use crate::error::{Error, Result};
use crate::rational::{frac, is_integral, rat_int, vec_frac, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceSolutions {
    Empty,
    /// Finitely many points, each in `[0,1)^n`, sorted.  When `det M != 0`
    /// there are exactly `|det M|` of them.
    Finite(Vec<Vec<Rational>>),
    /// Cosets of the subtorus spanned by the (saturated) row lattice
    /// `subtorus`: one coset per base point.
    Cosets {
        subtorus: IntMatrix,
        base_points: Vec<Vec<Rational>>,
    },
}

pub fn solve_congruence(m: &IntMatrix, t: &[Rational]) -> Result<CongruenceSolutions> {
    let n = m.rows();
    if m.cols() != n || t.len() != n {
        return Err(Error::Internal("congruence dimensions mismatch".into()));
    }
    let snf = smith_normal_form(m);
    let s = RatMatrix::from_int(&snf.u).mul_vec(&vec_frac(t));

    let mut free = Vec::new();
    let mut finite: Vec<(usize, i64, Rational)> = Vec::new();
    for i in 0..n {
        let d = snf.d.get(i, i);
        if d == 0 {
            if !is_integral(&s[i]) {
                return Ok(CongruenceSolutions::Empty);
            }
            free.push(i);
        } else {
            finite.push((i, d, s[i].clone()));
        }
    }

    // enumerate y over the finite digit choices
    let v = RatMatrix::from_int(&snf.v);
    let total: u64 = finite.iter().map(|(_, d, _)| *d as u64).product();
    if total > 1_000_000 {
        return Err(Error::Internal(format!(
            "congruence solution count {total} is unreasonably large"
        )));
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut digits = vec![0i64; finite.len()];
    loop {
        let mut y = vec![Rational::zero(); n];
        for (slot, (i, d, si)) in finite.iter().enumerate() {
            y[*i] = frac(&((si + rat_int(digits[slot])) / rat_int(*d)));
        }
        points.push(vec_frac(&v.mul_vec(&y)));
        // increment mixed-radix counter
        let mut slot = 0;
        loop {
            if slot == finite.len() {
                break;
            }
            digits[slot] += 1;
            if digits[slot] < finite[slot].1 {
                break;
            }
            digits[slot] = 0;
            slot += 1;
        }
        if slot == finite.len() {
            break;
        }
    }

    if free.is_empty() {
        points.sort();
        points.dedup();
        return Ok(CongruenceSolutions::Finite(points));
    }

    // free directions: columns of V at the free indices, as rows
    let rows: Vec<Vec<i64>> = free
        .iter()
        .map(|&j| (0..n).map(|i| snf.v.get(i, j)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let subtorus = hermite_normal_form(&IntMatrix::from_rows(&refs));
    let mut base_points: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| canonical_coset_rep(p, &subtorus))
        .collect();
    base_points.sort();
    base_points.dedup();
    Ok(CongruenceSolutions::Cosets {
        subtorus,
        base_points,
    })
}

/// Canonical representative of `point + (subtorus + Z^n)` where `subtorus`
/// is a saturated row lattice: coordinates along the subtorus are zeroed and
/// the complementary coordinates reduced mod 1.
pub fn canonical_coset_rep(point: &[Rational], subtorus: &IntMatrix) -> Vec<Rational> {
    let n = point.len();
    let k = subtorus.rows();
    if k == 0 {
        return vec_frac(point);
    }
    // unimodular W whose first k rows span the subtorus lattice
    let snf = smith_normal_form(subtorus);
    let w = snf
        .v
        .unimodular_inverse()
        .expect("V from Smith normal form is unimodular");
    let wt = RatMatrix::from_int(&w.transpose());
    let coords = wt
        .inverse()
        .expect("unimodular matrix is invertible")
        .mul_vec(point);
    let mut canon = vec![Rational::zero(); n];
    for (i, c) in coords.iter().enumerate() {
        canon[i] = if i < k { Rational::zero() } else { frac(c) };
    }
    vec_frac(&wt.mul_vec(&canon))
}

/// Number of solutions when the locus is finite (`det != 0` path), used by
/// fixed-point counting.
pub fn finite_solution_count(sols: &CongruenceSolutions) -> Option<usize> {
    match sols {
        CongruenceSolutions::Finite(pts) => Some(pts.len()),
        CongruenceSolutions::Empty => Some(0),
        CongruenceSolutions::Cosets { .. } => None,
    }
}

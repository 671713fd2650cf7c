//! Real solutions of two polynomial equations in two unknowns.
//!
//! Both unknowns are projected out in turn with Sylvester resultants; every
//! pair of isolated projections gives a candidate box, which is refined
//! until interval evaluation of the input rules it out or it shrinks below
//! the target width with both enclosures still containing zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{eval_box, Interval};
use crate::poly::{MultiPoly, UniPoly};
use crate::resultant::resultant_in;
use crate::roots::{isolate_real_roots, RealRoot, RootDomain};
use crate::scalar::Rational;

/// A certified solution box.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarSolution {
    pub t1: Interval,
    pub t2: Interval,
}

impl PlanarSolution {
    pub fn approx(&self) -> (f64, f64) {
        (self.t1.mid_f64(), self.t2.mid_f64())
    }

    pub fn mid(&self) -> [Rational; 2] {
        [self.t1.mid(), self.t2.mid()]
    }

    /// Whether both coordinates are known exactly.
    pub fn is_exact(&self) -> bool {
        self.t1.lo == self.t1.hi && self.t2.lo == self.t2.hi
    }
}

/// Default box width relative to the coordinate size, `2^-100`.
pub fn default_box_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 100)
}

pub fn bivariate_solve(g1: &MultiPoly, g2: &MultiPoly) -> Result<Vec<PlanarSolution>> {
    bivariate_solve_with(g1, g2, &default_box_width())
}

pub fn bivariate_solve_with(g1: &MultiPoly, g2: &MultiPoly, rel_width: &Rational) -> Result<Vec<PlanarSolution>> {
    g1.check_vars(g2)?;
    if g1.nvars() != 2 {
        return Err(Error::VariableMismatch(format!(
            "bivariate solving needs exactly two variables, got {}",
            g1.nvars()
        )));
    }
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::NonZeroDimensional);
    }
    for var in 0..2 {
        if g1.degree_in(var) == 0 && g2.degree_in(var) == 0 {
            // Both equations constrain only the other unknown: a common
            // factor is a whole line of solutions.
            let other = 1 - var;
            let a = UniPoly::from_multi(g1, other)?;
            let b = UniPoly::from_multi(g2, other)?;
            return if a.gcd(&b).degree().unwrap_or(0) > 0 {
                Err(Error::NonZeroDimensional)
            } else {
                Ok(Vec::new())
            };
        }
    }
    let r1 = resultant_in(g1, g2, 1)?;
    let r2 = resultant_in(g1, g2, 0)?;
    if r1.is_zero() || r2.is_zero() {
        return Err(Error::NonZeroDimensional);
    }
    let roots1 = projections(&r1)?;
    let roots2 = projections(&r2)?;
    let mut out = Vec::new();
    for a in &roots1 {
        for b in &roots2 {
            if let Some(sol) = certify(g1, g2, a.clone(), b.clone(), rel_width) {
                out.push(sol);
            }
        }
    }
    Ok(out)
}

fn projections(r: &MultiPoly) -> Result<Vec<RealRoot>> {
    let u = UniPoly::from_multi(r, 0)?;
    if u.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    isolate_real_roots(&u, &RootDomain::All)
}

fn certify(g1: &MultiPoly, g2: &MultiPoly, mut a: RealRoot, mut b: RealRoot, rel_width: &Rational) -> Option<PlanarSolution> {
    loop {
        let bx = [a.interval.clone(), b.interval.clone()];
        if a.is_exact() && b.is_exact() {
            let p = [bx[0].lo.clone(), bx[1].lo.clone()];
            let hit = g1.eval(&p).is_zero() && g2.eval(&p).is_zero();
            return hit.then(|| PlanarSolution {
                t1: bx[0].clone(),
                t2: bx[1].clone(),
            });
        }
        if !eval_box(g1, &bx).contains_zero() || !eval_box(g2, &bx).contains_zero() {
            return None;
        }
        let small = bx.iter().all(|iv| {
            let m = iv.mid().abs();
            iv.width() <= rel_width * if m > Rational::one() { m } else { Rational::one() }
        });
        if small {
            return Some(PlanarSolution {
                t1: bx[0].clone(),
                t2: bx[1].clone(),
            });
        }
        a.refine_step();
        b.refine_step();
    }
}

/// Sorts solutions lexicographically by their lower corners.
pub fn sort_solutions(sols: &mut [PlanarSolution]) {
    sols.sort_by(|x, y| x.t1.lo.cmp(&y.t1.lo).then_with(|| x.t2.lo.cmp(&y.t2.lo)));
}

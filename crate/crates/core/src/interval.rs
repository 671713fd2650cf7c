//! Closed rational intervals for certified sign evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::MultiPoly;
use crate::scalar::{rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn mid_f64(&self) -> f64 {
        rational_to_f64(&self.mid())
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Halves `[lo, hi]` into `[lo, mid]` and `[mid, hi]`.
    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval::new(self.lo.clone(), m.clone()),
            Interval::new(m, self.hi.clone()),
        )
    }

    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rational::one());
        }
        let (a, b) = (num_traits::pow(self.lo.clone(), k as usize), num_traits::pow(self.hi.clone(), k as usize));
        if k % 2 == 1 || !self.lo.is_negative() {
            Interval::new(a, b)
        } else if !self.hi.is_positive() {
            Interval::new(b, a)
        } else {
            Interval::new(Rational::zero(), a.max(b))
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }
}

impl Add for &Interval {
    type Output = Interval;

    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;

    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }
}

impl Mul for &Interval {
    type Output = Interval;

    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Interval::new(lo, hi)
    }
}

/// Natural interval extension of `p` over a box (one interval per variable).
pub fn eval_box(p: &MultiPoly, bx: &[Interval]) -> Interval {
    let max = p.terms().map(|(m, _)| m.exponents().iter().copied().max().unwrap_or(0)).max().unwrap_or(0);
    let powers: Vec<Vec<Interval>> = bx
        .iter()
        .map(|iv| (0..=max).map(|k| iv.pow(k)).collect())
        .collect();
    let mut acc = Interval::point(Rational::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = &t * &powers[i][e as usize];
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Vars};
    use crate::scalar::{int, rat};

    #[test]
    fn even_powers_straddling_zero() {
        let iv = Interval::new(int(-2), int(1));
        assert_eq!(iv.pow(2), Interval::new(int(0), int(4)));
        assert_eq!(iv.pow(3), Interval::new(int(-8), int(1)));
    }

    #[test]
    fn box_evaluation_encloses_values() {
        let v = Vars::indexed("t", 2);
        let p = parse_poly("t1^2 - t2 + 1/2", &v).unwrap();
        let bx = [Interval::new(rat(1, 2), int(1)), Interval::new(int(0), rat(1, 4))];
        let r = eval_box(&p, &bx);
        for (a, b) in [(rat(1, 2), int(0)), (int(1), rat(1, 4)), (rat(3, 4), rat(1, 8))] {
            assert!(r.contains(&p.eval(&[a, b])));
        }
        assert!(!r.contains_zero());
    }
}

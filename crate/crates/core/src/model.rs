//! Rational parameterizations and point clouds.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_poly_decimal, MultiPoly, UniPoly, Vars};
use crate::scalar::{parse_rational, Mode, Rational, Scalar};

/// `x_j = num_j(t) / den_j(t)` for `j = 1..n`, over `d < n` parameters.
///
/// Coefficients are always stored exactly; `mode` selects the arithmetic
/// used when the model is sampled. The homogenized form
/// `(F_0 : F_1 : … : F_n)` puts every coordinate over one common
/// denominator `F_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamModel {
    params: Vars,
    ambient: Vars,
    coords: Vec<(MultiPoly, MultiPoly)>,
    homog: Vec<MultiPoly>,
    mode: Mode,
}

impl ParamModel {
    pub fn new(ambient: Vars, coords: Vec<(MultiPoly, MultiPoly)>, mode: Mode) -> Result<Self> {
        let Some((first, _)) = coords.first() else {
            return Err(Error::InvalidInput("model has no coordinates".into()));
        };
        let params = first.vars().clone();
        if coords.len() != ambient.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinate functions for ambient dimension {}",
                coords.len(),
                ambient.len()
            )));
        }
        if params.len() + 1 > ambient.len() {
            return Err(Error::InvalidInput(format!(
                "parameter dimension {} must be below ambient dimension {}",
                params.len(),
                ambient.len()
            )));
        }
        for (j, (num, den)) in coords.iter().enumerate() {
            num.check_vars(den)?;
            if num.vars() != &params {
                return Err(Error::VariableMismatch(format!(
                    "coordinate {} uses different parameters",
                    j + 1
                )));
            }
            if den.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "denominator of coordinate {} is identically zero",
                    j + 1
                )));
            }
        }
        let common = common_denominator(&params, coords.iter().map(|(_, d)| d))?;
        let mut homog = vec![common.clone()];
        for (num, den) in &coords {
            homog.push(&common.div_exact(den)? * num);
        }
        Ok(ParamModel {
            params,
            ambient,
            coords,
            homog,
            mode,
        })
    }

    /// Polynomial parameterization (all denominators 1).
    pub fn polynomial(ambient: Vars, nums: Vec<MultiPoly>, mode: Mode) -> Result<Self> {
        let coords = nums
            .into_iter()
            .map(|n| {
                let one = MultiPoly::one(n.vars().clone());
                (n, one)
            })
            .collect();
        ParamModel::new(ambient, coords, mode)
    }

    /// Parses `num` / `den` strings over `params`; decimals are accepted only
    /// in float mode.
    pub fn parse(params: &Vars, ambient: Vars, coords: &[(&str, &str)], mode: Mode) -> Result<Self> {
        let parse = |s: &str| -> Result<MultiPoly> {
            if mode == Mode::Float {
                Ok(parse_poly_decimal(s, params)?)
            } else {
                parse_poly(s, params)
            }
        };
        let parsed = coords
            .iter()
            .map(|(n, d)| Ok((parse(n)?, parse(d)?)))
            .collect::<Result<Vec<_>>>()?;
        ParamModel::new(ambient, parsed, mode)
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        ParamModel {
            mode,
            ..self.clone()
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn ambient(&self) -> &Vars {
        &self.ambient
    }

    /// Parameter dimension `d`.
    pub fn d(&self) -> usize {
        self.params.len()
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.ambient.len()
    }

    pub fn coords(&self) -> &[(MultiPoly, MultiPoly)] {
        &self.coords
    }

    /// `[F_0, F_1, …, F_n]` with `x_j = F_j / F_0`.
    pub fn homogenized(&self) -> &[MultiPoly] {
        &self.homog
    }

    /// `δ`: the largest total degree among the homogenized coordinates.
    pub fn degree(&self) -> u32 {
        self.homog.iter().map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    /// Homogeneous coordinates at `t`, in the requested field.
    pub fn eval_homogeneous<S: Scalar>(&self, t: &[S]) -> Vec<S> {
        self.homog
            .iter()
            .map(|f| f.map_coeffs(S::from_rational).eval(t))
            .collect()
    }

    /// Affine image of `t`; `None` where a denominator vanishes exactly.
    pub fn eval_exact(&self, t: &[Rational]) -> Option<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.n());
        for (num, den) in &self.coords {
            let d = den.eval(t);
            if d.is_zero() {
                return None;
            }
            out.push(num.eval(t) / d);
        }
        Some(out)
    }

    pub fn eval_f64(&self, t: &[f64]) -> Vec<f64> {
        self.coords
            .iter()
            .map(|(num, den)| num.to_float().eval(t) / den.to_float().eval(t))
            .collect()
    }

    /// Denominator values at `t`, coordinate by coordinate.
    pub fn denominators_at<S: Scalar>(&self, t: &[S]) -> Vec<S> {
        self.coords
            .iter()
            .map(|(_, den)| den.map_coeffs(S::from_rational).eval(t))
            .collect()
    }

    /// Canonical text of each coordinate as `(num, den)`.
    pub fn coord_strings(&self) -> Vec<(String, String)> {
        self.coords
            .iter()
            .map(|(n, d)| (n.to_string(), d.to_string()))
            .collect()
    }
}

/// A common denominator of the given polynomials: their lcm for one
/// parameter, otherwise a product that skips factors already dividing it.
fn common_denominator<'a>(params: &Vars, dens: impl Iterator<Item = &'a MultiPoly>) -> Result<MultiPoly> {
    let dens: Vec<&MultiPoly> = dens.collect();
    if params.len() == 1 {
        let mut acc = UniPoly::constant(Rational::from_integer(1.into()));
        for d in &dens {
            let u = UniPoly::from_multi(d, 0)?;
            let g = acc.gcd(&u);
            acc = (&acc * &u).div_rem(&g)?.0;
        }
        return Ok(acc.primitive().to_multi(&params.names()[0]));
    }
    let mut acc = MultiPoly::one(params.clone());
    for d in dens {
        if acc.div_exact(d).is_ok() {
            continue;
        }
        if d.div_exact(&acc).is_ok() {
            acc = d.clone();
        } else {
            acc = &acc * d;
        }
    }
    Ok(acc)
}

/// Points in `n`-space, stored exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    ambient: Vars,
    points: Vec<Vec<Rational>>,
    mode: Mode,
}

impl PointCloud {
    pub fn new(ambient: Vars, points: Vec<Vec<Rational>>, mode: Mode) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient.len() {
                return Err(Error::InvalidInput(format!(
                    "point {} has {} coordinates, expected {}",
                    i + 1,
                    p.len(),
                    ambient.len()
                )));
            }
        }
        Ok(PointCloud {
            ambient,
            points,
            mode,
        })
    }

    /// CSV with one point per line; `p/q` rationals, decimals in float mode
    /// only. Blank lines and `#` comments are skipped. The first data line
    /// fixes the dimension.
    pub fn parse_csv(text: &str, mode: Mode) -> Result<Self> {
        let mut points: Vec<Vec<Rational>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            let mut col = 1;
            for field in body.split(',') {
                let v = parse_rational(field, mode == Mode::Float).map_err(|e| Error::Parse {
                    line: ln + 1,
                    column: col + field.len() - field.trim_start().len(),
                    message: e.to_string(),
                })?;
                row.push(v);
                col += field.chars().count() + 1;
            }
            if let Some(first) = points.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        line: ln + 1,
                        column: 1,
                        message: format!("expected {} coordinates, found {}", first.len(), row.len()),
                    });
                }
            }
            points.push(row);
        }
        let n = points.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::InvalidInput("point cloud is empty".into()));
        }
        PointCloud::new(Vars::indexed("x", n), points, mode)
    }

    pub fn ambient(&self) -> &Vars {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.len()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

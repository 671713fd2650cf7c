//! JSON model descriptors.

use implicitmat::model::ParamModel;
use implicitmat::poly::{parse_poly, parse_poly_decimal};
use implicitmat::{parse_rational, Error, Mode, MultiPoly, Rational, Result, Vars};
use serde::{Deserialize, Serialize};

/// One coordinate: a bare numerator or a `num`/`den` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Poly(String),
    Fraction {
        num: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        den: Option<String>,
    },
}

/// A parametric model as stored on disk.
///
/// ```json
/// {
///   "parameters": ["t"],
///   "coordinates": ["t", "t^2", {"num": "1", "den": "1 + t^2"}],
///   "patch": [["-1", "1"]],
///   "known_equations": ["x1^2 - x2"]
/// }
/// ```
///
/// `ambient` defaults to `x1..xn`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<String>>,
    pub coordinates: Vec<Coordinate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patch: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub known_equations: Vec<String>,
}

/// The model plus the optional pieces that ride along with it.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub model: ParamModel,
    pub patch: Option<Vec<(Rational, Rational)>>,
    pub known_equations: Vec<MultiPoly>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn ambient_vars(&self) -> Vars {
        match &self.ambient {
            Some(names) => Vars::new(names.iter().cloned()),
            None => Vars::indexed("x", self.coordinates.len()),
        }
    }

    pub fn load(&self, mode: Mode) -> Result<LoadedModel> {
        let params = Vars::new(self.parameters.iter().cloned());
        let ambient = self.ambient_vars();
        if ambient.len() != self.coordinates.len() {
            return Err(Error::InvalidInput(format!(
                "{} ambient variables but {} coordinates",
                ambient.len(),
                self.coordinates.len()
            )));
        }
        let parser = if mode == Mode::Float { parse_poly_decimal } else { parse_poly };
        let field = |what: String, text: &str, vars: &Vars| {
            parser(text, vars).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
        };
        let mut coords = Vec::with_capacity(self.coordinates.len());
        for (i, c) in self.coordinates.iter().enumerate() {
            let (num, den) = match c {
                Coordinate::Poly(p) => (p.as_str(), "1"),
                Coordinate::Fraction { num, den } => (num.as_str(), den.as_deref().unwrap_or("1")),
            };
            coords.push((
                field(format!("coordinates[{i}].num"), num, &params)?,
                field(format!("coordinates[{i}].den"), den, &params)?,
            ));
        }
        let model = ParamModel::new(ambient.clone(), coords, mode)?;
        let patch = match &self.patch {
            None => None,
            Some(b) => {
                if b.len() != params.len() {
                    return Err(Error::InvalidInput(format!(
                        "patch has {} intervals for {} parameters",
                        b.len(),
                        params.len()
                    )));
                }
                let mut out = Vec::with_capacity(b.len());
                for (i, [lo, hi]) in b.iter().enumerate() {
                    let bound = |s: &str| {
                        parse_rational(s, true).map_err(|e| Error::InvalidInput(format!("patch[{i}]: {e}")))
                    };
                    out.push((bound(lo)?, bound(hi)?));
                }
                Some(out)
            }
        };
        let known_equations = self
            .known_equations
            .iter()
            .enumerate()
            .map(|(i, e)| field(format!("known_equations[{i}]"), e, &ambient))
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedModel {
            model,
            patch,
            known_equations,
        })
    }

    /// The descriptor of a loaded model, in printed canonical form.
    pub fn from_loaded(m: &LoadedModel) -> Self {
        let coordinates = m
            .model
            .coord_strings()
            .into_iter()
            .map(|(num, den)| {
                if den == "1" {
                    Coordinate::Poly(num)
                } else {
                    Coordinate::Fraction { num, den: Some(den) }
                }
            })
            .collect();
        ModelFile {
            parameters: m.model.params().names().to_vec(),
            ambient: Some(m.model.ambient().names().to_vec()),
            coordinates,
            patch: m
                .patch
                .as_ref()
                .map(|b| b.iter().map(|(lo, hi)| [lo.to_string(), hi.to_string()]).collect()),
            known_equations: m.known_equations.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn canonical(&self) -> Result<Self> {
        Ok(Self::from_loaded(&self.load(Mode::Exact)?))
    }
}

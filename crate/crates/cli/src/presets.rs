use segmental::QuadratureConfig;

/// Test functions selectable with `--fn`.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Runge10,
    CosPi,
    SinPi,
    Abs,
    Step,
    /// Monomial coefficients, lowest degree first.
    Poly(Vec<f64>),
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "runge10" => Ok(Self::Runge10),
            "cospi" => Ok(Self::CosPi),
            "sinpi" => Ok(Self::SinPi),
            "abs" => Ok(Self::Abs),
            "step" => Ok(Self::Step),
            _ => {
                let Some(list) = s.strip_prefix("poly:") else {
                    return Err(format!(
                        "unknown function preset '{s}' (expected runge10, cospi, sinpi, abs, step or poly:c0,c1,...)"
                    ));
                };
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| format!("bad coefficient in '{s}': {e}"))?;
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(format!("non-finite coefficient in '{s}'"));
                }
                Ok(Self::Poly(coeffs))
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Runge10 => 1.0 / (1.0 + 10.0 * x * x),
            Self::CosPi => (std::f64::consts::PI * x).cos(),
            Self::SinPi => (std::f64::consts::PI * x).sin(),
            Self::Abs => x.abs(),
            Self::Step => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            Self::Poly(c) => c.iter().rev().fold(0.0, |acc, &a| acc * x + a),
        }
    }

    /// Kinks and jumps get the composite rule.
    pub fn quadrature(&self) -> QuadratureConfig {
        match self {
            Self::Abs | Self::Step => QuadratureConfig::PIECEWISE,
            _ => QuadratureConfig::SMOOTH,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets() {
        assert_eq!(Preset::parse("runge10").unwrap(), Preset::Runge10);
        assert_eq!(Preset::parse("poly:3").unwrap(), Preset::Poly(vec![3.0]));
        assert_eq!(Preset::parse("poly:0, 1").unwrap(), Preset::Poly(vec![0.0, 1.0]));
        assert!(Preset::parse("poly:").is_err());
        assert!(Preset::parse("poly:1,x").is_err());
        assert!(Preset::parse("tan").is_err());
    }

    #[test]
    fn evaluates() {
        assert_eq!(Preset::Runge10.eval(0.5), 1.0 / 3.5);
        assert_eq!(Preset::Poly(vec![1.0, 0.0, 2.0]).eval(3.0), 19.0);
        assert_eq!(Preset::Step.eval(-0.2), -1.0);
        assert_eq!(Preset::Step.eval(0.0), 0.0);
        assert_eq!(Preset::Abs.eval(-0.25), 0.25);
        assert!(Preset::SinPi.eval(1.0).abs() < 1e-15);
    }
}

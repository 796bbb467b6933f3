//! Parsing of solid/lattice names and angle expressions.

use std::f64::consts::PI;
use std::str::FromStr;

use polywave_core::{LatticeKind, Solid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Solid(Solid),
    Lattice(LatticeKind),
}

impl Target {
    pub fn kind(self) -> LatticeKind {
        match self {
            Target::Solid(s) => s.kind(),
            Target::Lattice(k) => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::Solid(s) => s.name(),
            Target::Lattice(k) => k.name(),
        }
    }
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(p) = Solid::parse(&s) {
            return Ok(Target::Solid(p));
        }
        match s.as_str() {
            "square" => Ok(Target::Lattice(LatticeKind::Square)),
            "triangular" => Ok(Target::Lattice(LatticeKind::Triangular)),
            _ => Err(format!(
                "unknown target {s:?}; expected cube, tetrahedron, octahedron, icosahedron, square or triangular"
            )),
        }
    }
}

/// Angle in radians from forms like `3pi/2`, `3*pi/2`, `2π`, `pi`, `1.25`
/// or `270deg`.
pub fn parse_angle(spec: &str) -> Result<f64, String> {
    let bad = || format!("cannot parse angle {spec:?}");
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.to_ascii_lowercase().replace('π', "pi");
    if let Some(deg) = s.strip_suffix("deg") {
        return deg.parse::<f64>().map(f64::to_radians).map_err(|_| bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().map_err(|_| bad())?),
        None => (s.clone(), 1.0),
    };
    if den == 0.0 {
        return Err(bad());
    }
    let value = match num.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            c * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let v = value / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert!((parse_angle("3pi/2").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((parse_angle("3*pi/2").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((parse_angle("2π").unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((parse_angle("pi").unwrap() - PI).abs() < 1e-15);
        assert!((parse_angle("90deg").unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("1/0").is_err());
    }

    #[test]
    fn targets() {
        assert_eq!("cube".parse::<Target>().unwrap().kind(), LatticeKind::Square);
        assert_eq!("Icosahedron".parse::<Target>().unwrap().kind(), LatticeKind::Triangular);
        assert_eq!("square".parse::<Target>().unwrap(), Target::Lattice(LatticeKind::Square));
        assert!("dodecahedron".parse::<Target>().is_err());
    }
}

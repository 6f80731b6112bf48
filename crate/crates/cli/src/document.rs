//! The on-disk map format: exact rationals as strings.
//!
//! ```json
//! {"domain": ["0", "1"], "points": [["0", "0"], ["1/2", "1"], ["1", "0"]],
//!  "metadata": {"name": "tent"}}
//! ```

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, ensure, Context};
use entroscope::{PlMap, Point, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub domain: [String; 2],
    pub points: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Parses `p/q`, an integer, or a decimal such as `-0.125`, exactly.
pub fn parse_rational(text: &str) -> anyhow::Result<Rational> {
    let s = text.trim();
    ensure!(!s.is_empty(), "empty number");
    if let Some((int_part, frac)) = s.split_once('.') {
        let (sign, digits) = match int_part.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
        if !ok(digits) || !ok(frac) || (digits.is_empty() && frac.is_empty()) {
            bail!("invalid decimal {text:?}");
        }
        let numerator = format!("{sign}{}{frac}", if digits.is_empty() { "0" } else { digits });
        let denominator = format!("1{}", "0".repeat(frac.len()));
        return Rational::from_str(&format!("{numerator}/{denominator}")).with_context(|| format!("invalid decimal {text:?}"));
    }
    let r = Rational::from_str(s.strip_prefix('+').unwrap_or(s)).with_context(|| format!("invalid rational {text:?}"))?;
    Ok(r)
}

impl MapDocument {
    pub fn from_map(f: &PlMap, metadata: Option<Metadata>) -> Self {
        MapDocument {
            domain: [f.lo().to_string(), f.hi().to_string()],
            points: f.points().iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect(),
            metadata,
        }
    }

    pub fn to_map(&self) -> anyhow::Result<PlMap> {
        let lo = parse_rational(&self.domain[0])?;
        let hi = parse_rational(&self.domain[1])?;
        let points = self
            .points
            .iter()
            .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        ensure!(points.len() >= 2, "a map needs at least two points");
        ensure!(
            points[0].x == lo && points[points.len() - 1].x == hi,
            "points must start at {lo} and end at {hi}"
        );
        Ok(PlMap::from_points(points)?)
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref()?.name.as_deref()
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("{} is not a map document", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

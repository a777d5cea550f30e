//! Parameter files: JSON with objects, arrays, strings and integers only.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::groups::{library, FinAbGroup, FinGroup};
use crate::lifting::{CoarsePacket, DeclaredMultiplicity, LiftingError, TwistGroup};
use crate::params::{CenterImage, GroupKind, RatMatrix, SummandSpec};
use crate::Rational;

pub const FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    fn plain(message: impl Into<String>) -> Self {
        ParseError { message: message.into(), line: 0, column: 0 }
    }

    fn from_json(e: serde_json::Error) -> Self {
        ParseError { message: e.to_string().split(" at line").next().unwrap_or_default().to_string(), line: e.line(), column: e.column() }
    }
}

/// The twist group: an invariant-factor list, or a subgroup of a larger group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistSpec {
    Factors(Vec<u64>),
    Embedded {
        factors: Vec<u64>,
        ambient: Vec<u64>,
        /// Images of the generators of `X` in the ambient group.
        embedding: Vec<Vec<i64>>,
    },
}

impl Default for TwistSpec {
    fn default() -> Self {
        TwistSpec::Factors(Vec::new())
    }
}

impl TwistSpec {
    pub fn build(&self) -> Result<TwistGroup, LiftingError> {
        match self {
            TwistSpec::Factors(f) => Ok(TwistGroup::new(FinAbGroup::new(f.clone())?)),
            TwistSpec::Embedded { factors, ambient, embedding } => {
                TwistGroup::with_ambient(FinAbGroup::new(factors.clone())?, FinAbGroup::new(ambient.clone())?, embedding)
            }
        }
    }
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

fn is_full(c: &CenterImage) -> bool {
    *c == CenterImage::Full
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterEntry {
    pub id: String,
    pub kind: GroupKind,
    pub n: u32,
    pub summands: Vec<SummandSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrete: Option<bool>,
    #[serde(default, skip_serializing_if = "is_full")]
    pub center_image: CenterImage,
    /// Summand whose reflection is the distinguished element of the `θ0`-coset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_element: Option<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub archimedean_deficit: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packet: Option<CoarsePacket>,
}

/// An exact rational: an integer or a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Text(String),
}

impl RatValue {
    pub fn value(&self) -> Result<Rational, String> {
        match self {
            RatValue::Int(k) => Ok(Rational::from_integer(*k)),
            RatValue::Text(s) => {
                let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let p: i64 = p.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
                let q: i64 = q.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
                if q.is_zero() {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(Rational::new(p, q))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleEntry {
    pub parameter: String,
    pub generators: Vec<Vec<Vec<RatValue>>>,
}

impl OracleEntry {
    pub fn matrices(&self) -> Result<Vec<RatMatrix>, String> {
        self.generators
            .iter()
            .map(|g| g.iter().map(|row| row.iter().map(RatValue::value).collect()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `C<n>`, `S<n>`, `A<n>`, `D<n>` (order `2n`), `Q8`, `E32`.
    Named(String),
    /// Multiplication table on `0..n`.
    Table(Vec<Vec<usize>>),
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FinGroup, String> {
        match self {
            GroupSpec::Named(n) => library::named(n).ok_or_else(|| format!("unknown group {n:?}")),
            GroupSpec::Table(t) => FinGroup::from_table(t).map_err(|e| e.to_string()),
            GroupSpec::Permutations { degree, generators } => {
                FinGroup::from_permutations(*degree, generators).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubgroupSpec {
    Center,
    /// Generated by every element of the given order.
    GeneratedByOrder(usize),
    /// The `k`-th subgroup of index two, ordered by element lists.
    IndexTwo(usize),
    Generators(Vec<usize>),
    Elements(Vec<usize>),
}

impl SubgroupSpec {
    pub fn elements(&self, g: &FinGroup) -> Result<Vec<usize>, String> {
        let check = |v: &[usize]| v.iter().all(|&x| x < g.order());
        let out = match self {
            SubgroupSpec::Center => g.center(),
            SubgroupSpec::GeneratedByOrder(k) => {
                let gens: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == *k).collect();
                if gens.is_empty() {
                    return Err(format!("no element of order {k}"));
                }
                g.generated(&gens)
            }
            SubgroupSpec::IndexTwo(k) => {
                let subs = index_two_subgroups(g);
                subs.get(*k).cloned().ok_or_else(|| format!("only {} subgroups of index two", subs.len()))?
            }
            SubgroupSpec::Generators(v) => {
                if !check(v) {
                    return Err("generator out of range".into());
                }
                g.generated(v)
            }
            SubgroupSpec::Elements(v) => {
                if !check(v) || !g.is_subgroup(v) {
                    return Err("elements do not form a subgroup".into());
                }
                let mut v = v.clone();
                v.sort_unstable();
                v
            }
        };
        Ok(out)
    }
}

/// Subgroups of index two, as unions of conjugacy classes containing every square.
pub fn index_two_subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    if n % 2 != 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let squares: Vec<usize> = (0..n).map(|x| g.mul(x, x)).collect();
    let base = g.generated(&squares);
    let classes = g.class_count();
    if classes > 24 {
        return Vec::new();
    }
    for mask in 0u32..(1 << classes) {
        let elems: Vec<usize> = (0..n).filter(|&x| mask >> g.class_of(x) & 1 == 1).collect();
        if elems.len() * 2 != n || !base.iter().all(|b| elems.contains(b)) {
            continue;
        }
        if g.is_subgroup(&elems) {
            out.push(elems);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticEntry {
    pub id: String,
    /// `S_φ` as a finite group, with `subgroup` giving `S̃`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multiplicities: Vec<DeclaredMultiplicity>,
    /// `S̄` as an abelian group, with `alpha` giving the images of its generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_group: Option<TwistSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packet: Option<CoarsePacket>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterFile {
    pub version: u32,
    #[serde(default)]
    pub twist_group: TwistSpec,
    #[serde(default)]
    pub parameters: Vec<ParameterEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracles: Vec<OracleEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub synthetic: Vec<SyntheticEntry>,
}

fn reject_floats(v: &Value, path: &str) -> Result<(), ParseError> {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            Err(ParseError::plain(format!("{path}: only integers are allowed, found {n}")))
        }
        Value::Null => Err(ParseError::plain(format!("{path}: null is not allowed"))),
        Value::Array(a) => a.iter().enumerate().try_for_each(|(i, x)| reject_floats(x, &format!("{path}[{i}]"))),
        Value::Object(o) => o.iter().try_for_each(|(k, x)| reject_floats(x, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

/// Parses and validates the schema; semantic checks happen in the pipeline.
pub fn parse(text: &str) -> Result<ParameterFile, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(ParseError::from_json)?;
    reject_floats(&value, "$")?;
    let file: ParameterFile = serde_json::from_str(text).map_err(ParseError::from_json)?;
    if file.version != FILE_VERSION {
        return Err(ParseError::plain(format!("unsupported version {}", file.version)));
    }
    file.validate()?;
    Ok(file)
}

impl ParameterFile {
    pub fn empty() -> Self {
        ParameterFile {
            version: FILE_VERSION,
            twist_group: TwistSpec::default(),
            parameters: Vec::new(),
            oracles: Vec::new(),
            synthetic: Vec::new(),
        }
    }

    fn validate(&self) -> Result<(), ParseError> {
        let twist = self.twist_group.build().map_err(|e| ParseError::plain(format!("twist_group: {e}")))?;
        let target = twist.target().clone();
        let mut ids = std::collections::BTreeSet::new();
        for p in &self.parameters {
            if !ids.insert(p.id.as_str()) {
                return Err(ParseError::plain(format!("duplicate parameter id {}", p.id)));
            }
            for s in &p.summands {
                if let Some(t) = &s.twist {
                    let fits = t.len() == target.rank()
                        && t.iter().zip(target.invariant_factors()).all(|(&e, &d)| (0..d as i64).contains(&e));
                    if !fits {
                        return Err(ParseError::plain(format!(
                            "parameter {}: summand {}: twist exponents {t:?} out of range for X = {target}",
                            p.id, s.id
                        )));
                    }
                }
            }
            if let Some(t) = &p.theta_element {
                if !p.summands.iter().any(|s| &s.id == t) {
                    return Err(ParseError::plain(format!("parameter {}: theta_element refers to unknown summand {t}", p.id)));
                }
            }
        }
        for o in &self.oracles {
            if !ids.contains(o.parameter.as_str()) {
                return Err(ParseError::plain(format!("oracle refers to unknown parameter {}", o.parameter)));
            }
            o.matrices().map_err(|e| ParseError::plain(format!("oracle {}: {e}", o.parameter)))?;
        }
        let mut syn = std::collections::BTreeSet::new();
        for s in &self.synthetic {
            if !syn.insert(s.id.as_str()) {
                return Err(ParseError::plain(format!("duplicate synthetic id {}", s.id)));
            }
            let finite = s.group.is_some() && s.subgroup.is_some();
            let abelian = s.abelian.is_some() && s.alpha.is_some();
            if finite == abelian {
                return Err(ParseError::plain(format!(
                    "synthetic {}: give either group and subgroup, or abelian and alpha",
                    s.id
                )));
            }
        }
        Ok(())
    }

    /// Canonical machine form: compact JSON with sorted keys.
    pub fn to_canonical(&self) -> String {
        let v = serde_json::to_value(self).expect("parameter files serialize");
        serde_json::to_string(&v).expect("values serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        let f = parse(r#"{"version": 1}"#).unwrap();
        assert!(f.parameters.is_empty());
    }

    #[test]
    fn rejects_floats_and_versions() {
        assert!(parse(r#"{"version": 1, "twist_group": [2.0]}"#).is_err());
        assert!(parse(r#"{"version": 2}"#).unwrap_err().message.contains("version"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse("{\n  \"version\": 1,\n  oops\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 0);
    }

    #[test]
    fn out_of_range_twist_names_summand() {
        let text = r#"{"version": 1, "twist_group": [2],
            "parameters": [{"id": "p", "kind": "Sp", "n": 0,
              "summands": [{"id": "eta", "dim": 1, "type": "orthogonal", "twist": [3]}]}]}"#;
        let e = parse(text).unwrap_err();
        assert!(e.message.contains("eta"), "{e}");
    }

    #[test]
    fn rationals() {
        assert_eq!(RatValue::Text("-3/6".into()).value().unwrap(), Rational::new(-1, 2));
        assert_eq!(RatValue::Int(4).value().unwrap(), Rational::from_integer(4));
        assert!(RatValue::Text("1/0".into()).value().is_err());
    }

    #[test]
    fn index_two_subgroups_of_d6() {
        let g = library::dihedral(6);
        let subs = index_two_subgroups(&g);
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| g.is_normal(s) && s.len() == 6));
        assert_eq!(index_two_subgroups(&library::alternating(4)).len(), 0);
    }
}

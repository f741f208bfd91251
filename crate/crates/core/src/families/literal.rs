use std::fmt;

use crate::groups::{Group, GroupLiteral};
use crate::parse::{Cursor, ParseError};

/// Which truncation a [`super::Family`] is; doubles as the family literal
/// (`cycp:p=2,maxexp=3`, `abp:p=2,maxorder=16`, `cyc:maxorder=12`,
/// `ab:maxorder=12`, `sigma3`, `custom:groups=C1+C2+C3`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Cyclic p-groups `C_{p^0}, ..., C_{p^max_exp}`.
    CycP { p: u64, max_exp: u32 },
    /// Abelian p-groups of order at most `max_order`.
    AbP { p: u64, max_order: u64 },
    /// Cyclic groups of order at most `max_order`.
    Cyc { max_order: u64 },
    /// Abelian groups of order at most `max_order`.
    Ab { max_order: u64 },
    /// Σ₃ and its subgroups up to isomorphism.
    Sigma3,
    /// An explicit registry.
    Custom(Vec<Group>),
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let name_pos = cur.position();
        let name = cur
            .ident()
            .ok_or_else(|| cur.error("a family name (cycp, abp, cyc, ab, sigma3, custom)"))?;
        let spec = match name.as_str() {
            "sigma3" | "s3" => FamilySpec::Sigma3,
            "custom" => {
                cur.expect(':')?;
                expect_key(&mut cur, "groups")?;
                let mut groups = Vec::new();
                loop {
                    let pos = cur.position();
                    let lit = GroupLiteral::parse_from(&mut cur)?;
                    let g = lit
                        .to_group()
                        .map_err(|e| cur.error_at(pos, format!("a supported group ({e})")))?;
                    groups.push(g);
                    if !cur.eat('+') {
                        break;
                    }
                }
                groups.sort();
                FamilySpec::Custom(groups)
            }
            "cycp" | "abp" | "cyc" | "ab" => {
                cur.expect(':')?;
                let params = parse_params(&mut cur)?;
                let get = |key: &str| -> Result<u64, ParseError> {
                    params
                        .iter()
                        .find(|(k, _, _)| k == key)
                        .map(|(_, v, _)| *v)
                        .ok_or_else(|| cur.error_at(text.len(), format!("parameter '{key}'")))
                };
                let allowed: &[&str] = match name.as_str() {
                    "cycp" => &["p", "maxexp"],
                    "abp" => &["p", "maxorder"],
                    _ => &["maxorder"],
                };
                if let Some((k, _, pos)) = params.iter().find(|(k, _, _)| !allowed.contains(&k.as_str())) {
                    return Err(cur.error_at(*pos, format!("one of {allowed:?}, not '{k}'")));
                }
                match name.as_str() {
                    "cycp" => FamilySpec::CycP {
                        p: get("p")?,
                        max_exp: u32::try_from(get("maxexp")?)
                            .map_err(|_| cur.error("a smaller maxexp"))?,
                    },
                    "abp" => FamilySpec::AbP {
                        p: get("p")?,
                        max_order: get("maxorder")?,
                    },
                    "cyc" => FamilySpec::Cyc {
                        max_order: get("maxorder")?,
                    },
                    _ => FamilySpec::Ab {
                        max_order: get("maxorder")?,
                    },
                }
            }
            _ => {
                return Err(cur.error_at(
                    name_pos,
                    "a family name (cycp, abp, cyc, ab, sigma3, custom)",
                ))
            }
        };
        cur.finish()?;
        Ok(spec)
    }
}

fn expect_key(cur: &mut Cursor<'_>, key: &str) -> Result<(), ParseError> {
    cur.skip_ws();
    if !cur.eat_word(key) {
        return Err(cur.error(format!("'{key}='")));
    }
    cur.skip_ws();
    cur.expect('=')?;
    cur.skip_ws();
    Ok(())
}

/// `key=value(,key=value)*` with unique keys.
fn parse_params(cur: &mut Cursor<'_>) -> Result<Vec<(String, u64, usize)>, ParseError> {
    let mut params: Vec<(String, u64, usize)> = Vec::new();
    loop {
        cur.skip_ws();
        let pos = cur.position();
        let key = cur.ident().ok_or_else(|| cur.error("a parameter name"))?;
        if params.iter().any(|(k, _, _)| *k == key) {
            return Err(cur.error_at(pos, format!("a parameter other than the repeated '{key}'")));
        }
        cur.skip_ws();
        cur.expect('=')?;
        cur.skip_ws();
        let value = cur.number()?;
        params.push((key, value, pos));
        cur.skip_ws();
        if !cur.eat(',') {
            break;
        }
    }
    Ok(params)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::CycP { p, max_exp } => write!(f, "cycp:p={p},maxexp={max_exp}"),
            FamilySpec::AbP { p, max_order } => write!(f, "abp:p={p},maxorder={max_order}"),
            FamilySpec::Cyc { max_order } => write!(f, "cyc:maxorder={max_order}"),
            FamilySpec::Ab { max_order } => write!(f, "ab:maxorder={max_order}"),
            FamilySpec::Sigma3 => write!(f, "sigma3"),
            FamilySpec::Custom(groups) => {
                let names: Vec<String> = groups.iter().map(Group::to_string).collect();
                write!(f, "custom:groups={}", names.join("+"))
            }
        }
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

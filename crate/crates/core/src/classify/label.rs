use std::collections::BTreeMap;
use std::fmt;

use crate::arith;
use crate::parse::{Cursor, ParseError};

/// An exponent in `ℕ ∪ {TOP}`; `TOP` stands in for `∞` and is maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Top,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    /// Whether `p^k` is allowed by this exponent.
    pub fn admits(self, k: u32) -> bool {
        match self {
            Exponent::Finite(e) => k <= e,
            Exponent::Top => true,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Top => write!(f, "TOP"),
        }
    }
}

/// `N = ∏ p^{N_p}`, with every prime not listed taking `default`.
///
/// Canonical: no listed exponent equals the default, so derived equality is
/// equality of the functions `p -> N_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedFactorization {
    exponents: BTreeMap<u64, Exponent>,
    default: Exponent,
}

impl Default for GeneralizedFactorization {
    fn default() -> Self {
        Self::one()
    }
}

impl GeneralizedFactorization {
    /// `N = 1`.
    pub fn one() -> Self {
        Self::with_default(Exponent::ZERO)
    }

    /// Every exponent `TOP`.
    pub fn top() -> Self {
        Self::with_default(Exponent::Top)
    }

    pub fn with_default(default: Exponent) -> Self {
        Self {
            exponents: BTreeMap::new(),
            default,
        }
    }

    pub fn prime_power(p: u64, e: Exponent) -> Self {
        let mut n = Self::one();
        n.set(p, e);
        n
    }

    pub fn set(&mut self, p: u64, e: Exponent) {
        if e == self.default {
            self.exponents.remove(&p);
        } else {
            self.exponents.insert(p, e);
        }
    }

    pub fn get(&self, p: u64) -> Exponent {
        self.exponents.get(&p).copied().unwrap_or(self.default)
    }

    pub fn default_exponent(&self) -> Exponent {
        self.default
    }

    /// Explicitly listed `(prime, exponent)` entries.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    /// Whether every prime power in `n` is allowed.
    pub fn divides(&self, n: u64) -> bool {
        arith::factorize(n).into_iter().all(|(p, k)| self.get(p).admits(k))
    }

    /// Componentwise comparison, including the defaults.
    pub fn leq(&self, other: &Self) -> bool {
        self.default <= other.default
            && self
                .exponents
                .keys()
                .chain(other.exponents.keys())
                .all(|&p| self.get(p) <= other.get(p))
    }

    /// Parses `2^1*3^TOP`, `5`, `1`, or `rest^e` terms; unlisted primes take
    /// `default` unless a `rest` term overrides it.
    pub fn parse(text: &str, default: Exponent) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        let mut listed: Vec<(u64, Exponent, usize)> = Vec::new();
        let mut rest: Option<Exponent> = None;
        let mut saw_one = false;
        loop {
            cur.skip_ws();
            let pos = cur.position();
            if cur.eat_word("rest") {
                expect(&mut cur, '^')?;
                if rest.is_some() {
                    return Err(cur.error_at(pos, "at most one 'rest' term"));
                }
                rest = Some(exponent(&mut cur)?);
            } else {
                let base = cur.number().map_err(|_| cur.error("a prime, '1' or 'rest'"))?;
                if base == 1 {
                    saw_one = true;
                    if cur.peek() == Some('^') {
                        return Err(cur.error("'*' or end of input after 1"));
                    }
                } else {
                    if !arith::is_prime(base) {
                        return Err(cur.error_at(pos, "a prime base"));
                    }
                    let e = if skip_eat(&mut cur, '^') {
                        exponent(&mut cur)?
                    } else {
                        Exponent::Finite(1)
                    };
                    if listed.iter().any(|&(q, _, _)| q == base) {
                        return Err(cur.error_at(pos, format!("{base} listed only once")));
                    }
                    listed.push((base, e, pos));
                }
            }
            if !skip_eat(&mut cur, '*') {
                break;
            }
        }
        cur.finish()?;
        if saw_one && (listed.len() + rest.is_some() as usize) > 0 {
            return Err(cur.error_at(0, "'1' only on its own"));
        }
        let mut n = Self::with_default(rest.unwrap_or(default));
        for (p, e, _) in listed {
            n.set(p, e);
        }
        Ok(n)
    }
}

fn skip_eat(cur: &mut Cursor<'_>, c: char) -> bool {
    cur.skip_ws();
    cur.eat(c)
}

fn expect(cur: &mut Cursor<'_>, c: char) -> Result<(), ParseError> {
    cur.skip_ws();
    cur.expect(c)
}

fn exponent(cur: &mut Cursor<'_>) -> Result<Exponent, ParseError> {
    cur.skip_ws();
    if cur.eat_word("top") {
        return Ok(Exponent::Top);
    }
    let pos = cur.position();
    let e = cur.number().map_err(|_| cur.error("an exponent (a number or TOP)"))?;
    u32::try_from(e)
        .map(Exponent::Finite)
        .map_err(|_| cur.error_at(pos, "an exponent below 2^32"))
}

impl fmt::Display for GeneralizedFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.exponents.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        if self.default != Exponent::ZERO {
            terms.push(format!("rest^{}", self.default));
        }
        if terms.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", terms.join("*"))
        }
    }
}

impl std::str::FromStr for GeneralizedFactorization {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, Exponent::ZERO)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(text: &str) -> GeneralizedFactorization {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(n("2^1*3^TOP").to_string(), "2^1*3^TOP");
        assert_eq!(n("3^top * 2").to_string(), "2^1*3^TOP");
        assert_eq!(n("1").to_string(), "1");
        assert_eq!(n("2^0").to_string(), "1");
        assert_eq!(n("rest^TOP").to_string(), "rest^TOP");
        assert_eq!(n("2^1*rest^TOP").to_string(), "2^1*rest^TOP");
        let d = GeneralizedFactorization::parse("2^1", Exponent::Top).unwrap();
        assert_eq!(d.to_string(), "2^1*rest^TOP");
        assert_eq!(d.get(7), Exponent::Top);
        let again = GeneralizedFactorization::parse(&d.to_string(), Exponent::ZERO).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn rejects_malformed() {
        let pos = |t: &str| GeneralizedFactorization::parse(t, Exponent::ZERO).unwrap_err().position;
        assert_eq!(pos(""), 0);
        assert_eq!(pos("4^1"), 0);
        assert_eq!(pos("2^1*2^2"), 4);
        assert_eq!(pos("2^"), 2);
        assert_eq!(pos("2^x"), 2);
        assert_eq!(pos("2^1 3"), 4);
        assert_eq!(pos("1*2"), 0);
        assert_eq!(pos("1^2"), 1);
        assert_eq!(pos("2^99999999999"), 2);
    }

    #[test]
    fn divisibility() {
        let n2 = n("2^1*3^TOP");
        assert!(n2.divides(1));
        assert!(n2.divides(2));
        assert!(!n2.divides(4));
        assert!(n2.divides(2 * 27));
        assert!(!n2.divides(5));
        assert!(GeneralizedFactorization::top().divides(64));
        assert!(!GeneralizedFactorization::one().divides(2));
    }

    #[test]
    fn order_is_componentwise() {
        assert!(n("2^1").leq(&n("2^2*3")));
        assert!(!n("2^2").leq(&n("2^1*3^5")));
        assert!(n("2^TOP").leq(&n("rest^TOP")));
        assert!(!n("rest^TOP").leq(&n("2^TOP")));
        assert!(GeneralizedFactorization::one().leq(&n("7")));
    }
}

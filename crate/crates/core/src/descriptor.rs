//! Ring descriptors and the textual descriptor grammar.
//!
//! Accepted forms (whitespace is ignored):
//!
//! ```text
//! z | zmod:<n> | gfpoly:<p> | series[:<order>]
//! product:<ring>,<ring>,...   | product(<ring>, <ring>, ...)
//! text:<ring>,<self|q>        | text(<ring>, <self|q|rationals>)
//! ```
//!
//! The colon form of `product` is greedy: every remaining comma-separated
//! ring belongs to it. Use the parenthesized form to nest.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_SERIES_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    /// `A ∝ A`
    SelfModule,
    /// `Z ∝ Q`; only valid over the integers.
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Modular(u64),
    PrimeFieldPoly(u64),
    Product(Vec<RingDescriptor>),
    TrivialExtension {
        base: Box<RingDescriptor>,
        module: ModuleKind,
    },
    /// `Z + xQ[x]` modulo `x^order`.
    TruncatedSeries { order: usize },
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl RingDescriptor {
    /// Checks the structural invariants (modulus, primality, nonempty
    /// products, truncation order).
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Error::Descriptor {
            input: self.to_string(),
            reason,
        };
        match self {
            RingDescriptor::Integers => Ok(()),
            RingDescriptor::Modular(n) => {
                if *n < 2 {
                    return Err(bad(format!("modulus must be at least 2, got {n}")));
                }
                if *n > u32::MAX as u64 {
                    return Err(bad(format!("modulus {n} exceeds 2^32 - 1")));
                }
                Ok(())
            }
            RingDescriptor::PrimeFieldPoly(p) => {
                if *p > u32::MAX as u64 {
                    return Err(bad(format!("characteristic {p} exceeds 2^32 - 1")));
                }
                if !is_prime(*p) {
                    return Err(bad(format!("{p} is not prime")));
                }
                Ok(())
            }
            RingDescriptor::Product(parts) => {
                if parts.is_empty() {
                    return Err(bad("product needs at least one factor".into()));
                }
                parts.iter().try_for_each(|p| p.validate())
            }
            RingDescriptor::TrivialExtension { base, module } => {
                if *module == ModuleKind::Rationals && **base != RingDescriptor::Integers {
                    return Err(bad("module kind q is only available over z".into()));
                }
                base.validate()
            }
            RingDescriptor::TruncatedSeries { order } => {
                if *order < 1 {
                    return Err(bad("truncation order must be at least 1".into()));
                }
                Ok(())
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::Integers
            | RingDescriptor::PrimeFieldPoly(_)
            | RingDescriptor::TruncatedSeries { .. } => false,
            RingDescriptor::Modular(_) => true,
            RingDescriptor::Product(parts) => parts.iter().all(|p| p.is_finite()),
            RingDescriptor::TrivialExtension { base, module } => {
                *module == ModuleKind::SelfModule && base.is_finite()
            }
        }
    }

    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingDescriptor::Modular(n) => Some(*n as u128),
            RingDescriptor::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, p| acc.checked_mul(p.cardinality()?)),
            RingDescriptor::TrivialExtension {
                base,
                module: ModuleKind::SelfModule,
            } => {
                let b = base.cardinality()?;
                b.checked_mul(b)
            }
            _ => None,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "z"),
            RingDescriptor::Modular(n) => write!(f, "zmod:{n}"),
            RingDescriptor::PrimeFieldPoly(p) => write!(f, "gfpoly:{p}"),
            RingDescriptor::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingDescriptor::TrivialExtension { base, module } => {
                let m = match module {
                    ModuleKind::SelfModule => "self",
                    ModuleKind::Rationals => "q",
                };
                write!(f, "text({base},{m})")
            }
            RingDescriptor::TruncatedSeries { order } => write!(f, "series:{order}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = DescParser {
            src: &compact,
            pos: 0,
            original: s,
        };
        let d = p.ring_expr()?;
        if p.pos != compact.len() {
            return Err(p.err("trailing input"));
        }
        d.validate()?;
        Ok(d)
    }
}

struct DescParser<'a> {
    src: &'a str,
    pos: usize,
    original: &'a str,
}

impl DescParser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Descriptor {
            input: self.original.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {tok:?}")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("number out of range"))
    }

    fn module(&mut self) -> Result<ModuleKind> {
        if self.eat("self") {
            Ok(ModuleKind::SelfModule)
        } else if self.eat("rationals") || self.eat("q") {
            Ok(ModuleKind::Rationals)
        } else {
            Err(self.err("expected self, q or rationals"))
        }
    }

    fn ring_expr(&mut self) -> Result<RingDescriptor> {
        if self.eat("zmod:") {
            return Ok(RingDescriptor::Modular(self.number()?));
        }
        if self.eat("gfpoly:") {
            return Ok(RingDescriptor::PrimeFieldPoly(self.number()?));
        }
        if self.eat("series") {
            let order = if self.eat(":") {
                self.number()? as usize
            } else {
                DEFAULT_SERIES_ORDER
            };
            return Ok(RingDescriptor::TruncatedSeries { order });
        }
        if self.eat("product") {
            let mut parts = Vec::new();
            if self.eat("(") {
                parts.push(self.ring_expr()?);
                while self.eat(",") {
                    parts.push(self.ring_expr()?);
                }
                self.expect(")")?;
            } else {
                self.expect(":")?;
                parts.push(self.ring_expr()?);
                while self.eat(",") {
                    parts.push(self.ring_expr()?);
                }
            }
            return Ok(RingDescriptor::Product(parts));
        }
        if self.eat("text") {
            let paren = self.eat("(");
            if !paren {
                self.expect(":")?;
            }
            let base = self.ring_expr()?;
            self.expect(",")?;
            let module = self.module()?;
            if paren {
                self.expect(")")?;
            }
            return Ok(RingDescriptor::TrivialExtension {
                base: Box::new(base),
                module,
            });
        }
        if self.eat("z") {
            return Ok(RingDescriptor::Integers);
        }
        Err(self.err("unknown ring"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_forms() {
        assert_eq!("z".parse::<RingDescriptor>().unwrap(), RingDescriptor::Integers);
        assert_eq!("zmod:6".parse::<RingDescriptor>().unwrap(), RingDescriptor::Modular(6));
        assert_eq!(
            "product:zmod:2,zmod:3".parse::<RingDescriptor>().unwrap(),
            RingDescriptor::Product(vec![RingDescriptor::Modular(2), RingDescriptor::Modular(3)])
        );
        let zq = RingDescriptor::TrivialExtension {
            base: Box::new(RingDescriptor::Integers),
            module: ModuleKind::Rationals,
        };
        assert_eq!("text(z, rationals)".parse::<RingDescriptor>().unwrap(), zq);
        assert_eq!("text:z,q".parse::<RingDescriptor>().unwrap(), zq);
        assert_eq!(
            "series".parse::<RingDescriptor>().unwrap(),
            RingDescriptor::TruncatedSeries { order: 8 }
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["z", "zmod:12", "gfpoly:5", "product(zmod:2,product(z,zmod:3))", "text(zmod:4,self)", "series:5"] {
            let d: RingDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(d.to_string().parse::<RingDescriptor>().unwrap(), d);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in ["zmod:1", "gfpoly:6", "series:0", "text(zmod:4,q)", "product()", "w", "zmod:6)"] {
            let e = s.parse::<RingDescriptor>().unwrap_err();
            assert!(e.is_syntax(), "{s}: {e}");
        }
    }

    #[test]
    fn cardinalities() {
        let d: RingDescriptor = "product(zmod:2,zmod:3)".parse().unwrap();
        assert_eq!(d.cardinality(), Some(6));
        let d: RingDescriptor = "text(zmod:2,self)".parse().unwrap();
        assert_eq!(d.cardinality(), Some(4));
        assert_eq!(RingDescriptor::Integers.cardinality(), None);
    }
}

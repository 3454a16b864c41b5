//! Ring construction from descriptor expressions, with capability flags.

use std::fmt;
use std::sync::Arc;

use crate::descriptor::{ModuleKind, RingDescriptor};
use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::rings::DynRing;

/// How `select_stable` picks `y` so that `a + b·y` is stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableSelection {
    /// `y = 0`: every element of a finite ring is stable.
    Zero,
    /// First `y` in `0, 1, -1, 2, ...` with `a + b·y ≠ 0`.
    Nonzero,
    /// First `y` whose value has a nonzero constant term.
    ConstantTerm,
    /// First `y` making the base component acceptable to the base strategy.
    BaseComponent,
    Componentwise,
}

/// How `lift_unit` searches modulo `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitLift {
    /// Scan every element.
    Exhaustive,
    /// Scan canonical residues modulo `c` (integers `0..|c|`, polynomials
    /// of lower degree).
    ResidueScan,
    /// Scan residues of the base component.
    BaseResidues,
}

impl StableSelection {
    pub fn id(self) -> &'static str {
        match self {
            StableSelection::Zero => "zero",
            StableSelection::Nonzero => "first-nonzero",
            StableSelection::ConstantTerm => "nonzero-constant-term",
            StableSelection::BaseComponent => "base-component",
            StableSelection::Componentwise => "componentwise",
        }
    }
}

impl UnitLift {
    pub fn id(self) -> &'static str {
        match self {
            UnitLift::Exhaustive => "exhaustive",
            UnitLift::ResidueScan => "residue-scan",
            UnitLift::BaseResidues => "base-residues",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub finite: bool,
    pub bezout_total: bool,
    pub stable_selection: StableSelection,
    pub unit_lift: UnitLift,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingRegistryEntry {
    pub descriptor: RingDescriptor,
    pub capabilities: Capabilities,
    pub ring: Arc<DynRing>,
}

fn strategies(d: &RingDescriptor) -> (StableSelection, UnitLift) {
    if d.is_finite() {
        return (StableSelection::Zero, UnitLift::Exhaustive);
    }
    match d {
        RingDescriptor::Integers | RingDescriptor::PrimeFieldPoly(_) => {
            (StableSelection::Nonzero, UnitLift::ResidueScan)
        }
        RingDescriptor::Product(_) => (StableSelection::Componentwise, UnitLift::ResidueScan),
        RingDescriptor::TrivialExtension { .. } => (StableSelection::BaseComponent, UnitLift::BaseResidues),
        RingDescriptor::TruncatedSeries { .. } => (StableSelection::ConstantTerm, UnitLift::BaseResidues),
        RingDescriptor::Modular(_) => unreachable!("modular rings are finite"),
    }
}

impl RingRegistryEntry {
    pub fn from_descriptor(descriptor: RingDescriptor) -> Result<Self> {
        let ring = DynRing::from_descriptor(&descriptor)?;
        let (stable_selection, unit_lift) = strategies(&descriptor);
        let capabilities = Capabilities {
            finite: descriptor.is_finite(),
            bezout_total: ring.bezout_total(),
            stable_selection,
            unit_lift,
        };
        Ok(RingRegistryEntry {
            descriptor,
            capabilities,
            ring: Arc::new(ring),
        })
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        RingElement::parse(self.ring.clone(), text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "descriptor": self.descriptor.to_string(),
            "finite": self.capabilities.finite,
            "bezoutTotal": self.capabilities.bezout_total,
            "stableSelection": self.capabilities.stable_selection.id(),
            "unitLift": self.capabilities.unit_lift.id(),
        })
    }
}

impl fmt::Display for RingRegistryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.capabilities;
        write!(
            f,
            "{} finite={} bezout-total={} stable={} lift={}",
            self.descriptor,
            c.finite,
            c.bezout_total,
            c.stable_selection.id(),
            c.unit_lift.id()
        )
    }
}

/// Parses a descriptor expression such as `zmod:6` or `text(z, rationals)`.
pub fn make_ring(expr: &str) -> Result<RingRegistryEntry> {
    let descriptor: RingDescriptor = expr.parse().map_err(|e| match e {
        Error::Descriptor { reason, .. } => Error::Descriptor {
            input: expr.to_string(),
            reason,
        },
        other => other,
    })?;
    RingRegistryEntry::from_descriptor(descriptor)
}

/// One representative entry per ring kind, for listings.
pub fn shipped_kinds() -> Vec<(&'static str, RingRegistryEntry)> {
    [
        ("integers", "z"),
        ("modular", "zmod:6"),
        ("prime-field-poly", "gfpoly:5"),
        ("product", "product(zmod:2,zmod:3)"),
        ("trivial-extension (self)", "text(zmod:4,self)"),
        ("trivial-extension (rationals)", "text(z,q)"),
        ("truncated-series", "series:8"),
    ]
    .into_iter()
    .map(|(kind, expr)| (kind, make_ring(expr).expect("shipped example parses")))
    .collect()
}

/// Whether the module kind of a trivial extension is the rationals.
pub fn is_int_rat(d: &RingDescriptor) -> bool {
    matches!(
        d,
        RingDescriptor::TrivialExtension {
            module: ModuleKind::Rationals,
            ..
        }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let z = make_ring("z").unwrap();
        assert!(!z.capabilities.finite);
        assert!(z.capabilities.bezout_total);
        assert_eq!(z.capabilities.stable_selection, StableSelection::Nonzero);

        let m = make_ring("zmod:6").unwrap();
        assert_eq!(m.descriptor, RingDescriptor::Modular(6));
        assert!(m.capabilities.finite);

        let zq = make_ring("text(z, rationals)").unwrap();
        assert!(!zq.capabilities.finite);
        assert!(zq.capabilities.bezout_total);
        assert!(is_int_rat(&zq.descriptor));
    }

    #[test]
    fn malformed_expressions_are_diagnosed() {
        match make_ring("gfpoly:6").unwrap_err() {
            Error::Descriptor { input, reason } => {
                assert_eq!(input, "gfpoly:6");
                assert!(reason.contains("not prime"), "{reason}");
            }
            e => panic!("{e}"),
        }
        assert!(make_ring("zmod:1").is_err());
        assert!(make_ring("series:0").is_err());
    }

    #[test]
    fn finite_flag_matches_enumeration() {
        for (_, entry) in shipped_kinds() {
            assert_eq!(entry.capabilities.finite, entry.ring.elements().is_some(), "{entry}");
        }
    }

    #[test]
    fn bezout_total_flags() {
        assert!(!make_ring("series:4").unwrap().capabilities.bezout_total);
        assert!(make_ring("text(zmod:6,self)").unwrap().capabilities.bezout_total);
        // (2, ε) generates a non-principal ideal in these rings.
        assert!(!make_ring("text(zmod:4,self)").unwrap().capabilities.bezout_total);
        assert!(!make_ring("text(z,self)").unwrap().capabilities.bezout_total);
        assert!(make_ring("product(z,gfpoly:3,zmod:8)").unwrap().capabilities.bezout_total);
    }

    #[test]
    fn parse_through_entry() {
        let e = make_ring("zmod:6").unwrap();
        assert_eq!(e.parse_element("11").unwrap().to_string(), "5");
    }
}

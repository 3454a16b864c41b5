//! Descriptor-tagged ring elements and their text/JSON encodings.
//!
//! Integers and residues are JSON numbers (strings of digits are also
//! accepted on input), polynomials are coefficient arrays low-to-high,
//! products and trivial-extension pairs are arrays, rationals are `"p/q"`
//! strings, and truncated series are `{"constant": n, "coeffs": [...]}`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};
use crate::rings::{DynElem, DynRing, SeriesElem};

fn shape_error(reason: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        reason: reason.into(),
    }
}

/// Byte offset just past the character where serde_json gave up.
fn json_error_offset(text: &str, err: &serde_json::Error) -> usize {
    let (line, col) = (err.line(), err.column());
    if line == 0 {
        return 0;
    }
    let before: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (before + col).min(text.len())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: json_error_offset(text, &e),
        reason: e.to_string(),
    })
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(shape_error(format!("expected an integer, found {other}"))),
    };
    text.parse::<BigInt>()
        .map_err(|_| shape_error(format!("{text:?} is not an integer")))
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(shape_error(format!("expected a rational, found {other}"))),
    };
    let bad = || shape_error(format!("{text:?} is not a rational p/q"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(shape_error(format!("{text:?} has a zero denominator")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| shape_error(format!("expected an array for {what}, found {v}")))
}

fn exact_array<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a Vec<Value>> {
    let items = array(v, what)?;
    if items.len() != len {
        return Err(shape_error(format!(
            "{what} needs {len} entries, found {}",
            items.len()
        )));
    }
    Ok(items)
}

/// Builds a normalized element of `ring` from a JSON value. Out-of-range
/// residues are reduced.
pub fn element_from_json(ring: &DynRing, v: &Value) -> Result<DynElem> {
    match ring {
        DynRing::Integers(_) => Ok(DynElem::Int(parse_bigint(v)?)),
        DynRing::Modular(_) => Ok(ring.from_bigint(&parse_bigint(v)?)),
        DynRing::GfPoly(r) => {
            let p = BigInt::from(r.characteristic());
            let coeffs = match v {
                Value::Array(items) => items
                    .iter()
                    .map(|c| Ok(residue_u64(&parse_bigint(c)?, &p)))
                    .collect::<Result<Vec<u64>>>()?,
                _ => vec![residue_u64(&parse_bigint(v)?, &p)],
            };
            Ok(DynElem::Poly(r.normalize(coeffs)))
        }
        DynRing::Product(r) => {
            let items = exact_array(v, r.parts().len(), "a product element")?;
            Ok(DynElem::Tuple(
                r.parts()
                    .iter()
                    .zip(items)
                    .map(|(part, x)| element_from_json(part, x))
                    .collect::<Result<_>>()?,
            ))
        }
        DynRing::TrivialExt(r) => {
            let items = exact_array(v, 2, "a trivial-extension pair")?;
            Ok(DynElem::Pair(Box::new((
                element_from_json(r.base(), &items[0])?,
                element_from_json(r.base(), &items[1])?,
            ))))
        }
        DynRing::IntRat(_) => {
            let items = exact_array(v, 2, "an (integer, rational) pair")?;
            Ok(DynElem::IntRat(Box::new((
                parse_bigint(&items[0])?,
                parse_rational(&items[1])?,
            ))))
        }
        DynRing::Series(r) => {
            let obj = v
                .as_object()
                .ok_or_else(|| shape_error(format!("expected {{\"constant\", \"coeffs\"}}, found {v}")))?;
            if let Some(k) = obj.keys().find(|k| *k != "constant" && *k != "coeffs") {
                return Err(shape_error(format!("unknown series field {k:?}")));
            }
            let constant = match obj.get("constant") {
                Some(c) => parse_bigint(c)?,
                None => BigInt::zero(),
            };
            let coeffs = match obj.get("coeffs") {
                Some(c) => array(c, "series coefficients")?
                    .iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let nonzero_len = coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
            if nonzero_len >= r.order() {
                return Err(shape_error(format!(
                    "series term of degree {nonzero_len} exceeds truncation order {}",
                    r.order()
                )));
            }
            Ok(DynElem::Series(r.element(constant, coeffs)))
        }
    }
}

fn residue_u64(n: &BigInt, p: &BigInt) -> u64 {
    let r = ((n % p) + p) % p;
    u64::try_from(r).expect("residue below a u32 modulus")
}

pub fn parse_element(ring: &DynRing, text: &str) -> Result<DynElem> {
    element_from_json(ring, &parse_json(text)?)
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("\"{}\"", q.numer())
    } else {
        format!("\"{}/{}\"", q.numer(), q.denom())
    }
}

fn join<I: IntoIterator<Item = String>>(items: I) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(", "))
}

/// Canonical text of an element; `parse_element` inverts it exactly.
pub fn format_element(e: &DynElem) -> String {
    match e {
        DynElem::Int(n) => n.to_string(),
        DynElem::Residue(r) => r.to_string(),
        DynElem::Poly(f) => join(f.iter().map(u64::to_string)),
        DynElem::Tuple(v) => join(v.iter().map(format_element)),
        DynElem::Pair(p) => join([format_element(&p.0), format_element(&p.1)]),
        DynElem::IntRat(p) => join([p.0.to_string(), format_rational(&p.1)]),
        DynElem::Series(SeriesElem { constant, coeffs }) => format!(
            "{{\"constant\": {constant}, \"coeffs\": {}}}",
            join(coeffs.iter().map(format_rational))
        ),
    }
}

pub fn element_to_json(e: &DynElem) -> Value {
    serde_json::from_str(&format_element(e)).expect("element text is valid JSON")
}

/// An element together with the ring it lives in. Binary operations
/// check that both operands share a descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    ring: Arc<DynRing>,
    value: DynElem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingElement {
    pub fn new(ring: Arc<DynRing>, value: DynElem) -> Result<Self> {
        if !ring.accepts(&value) {
            return Err(Error::precondition(format!(
                "{} is not a normalized element of {}",
                format_element(&value),
                ring.descriptor()
            )));
        }
        Ok(RingElement { ring, value })
    }

    pub fn parse(ring: Arc<DynRing>, text: &str) -> Result<Self> {
        let value = parse_element(&ring, text)?;
        Ok(RingElement { ring, value })
    }

    pub fn ring(&self) -> &Arc<DynRing> {
        &self.ring
    }

    pub fn value(&self) -> &DynElem {
        &self.value
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.ring.descriptor()
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                left: self.descriptor().to_string(),
                right: other.descriptor().to_string(),
            })
        }
    }

    fn lift(&self, value: DynElem) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn arithmetic(&self, other: &RingElement, op: ArithOp) -> Result<RingElement> {
        self.same_ring(other)?;
        let (a, b) = (&self.value, &other.value);
        Ok(self.lift(match op {
            ArithOp::Add => self.ring.add(a, b),
            ArithOp::Sub => self.ring.sub(a, b),
            ArithOp::Mul => self.ring.mul(a, b),
        }))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn inverse(&self) -> Result<RingElement> {
        self.ring
            .inverse(&self.value)
            .map(|v| self.lift(v))
            .ok_or_else(|| Error::NotUnit(self.to_string()))
    }

    pub fn bezout(&self, other: &RingElement) -> Result<BezoutCertificate<RingElement>> {
        self.same_ring(other)?;
        let c = self.ring.bezout(&self.value, &other.value)?;
        Ok(BezoutCertificate {
            d: self.lift(c.d),
            x: self.lift(c.x),
            y: self.lift(c.y),
            a0: self.lift(c.a0),
            b0: self.lift(c.b0),
            degenerate: c.degenerate,
        })
    }

    pub fn divide_exact(&self, d: &RingElement) -> Result<RingElement> {
        self.same_ring(d)?;
        self.ring
            .divide_exact(&self.value, &d.value)
            .map(|q| self.lift(q))
            .map_err(|_| Error::NotDivisible {
                dividend: self.to_string(),
                divisor: d.to_string(),
            })
    }

    pub fn associate_unit(&self, d: &RingElement) -> Result<RingElement> {
        self.same_ring(d)?;
        self.ring.associate_unit(&self.value, &d.value).map(|u| self.lift(u))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_element(&self.value))
    }
}

/// Every element of a finite ring, exactly once.
pub fn enumerate_elements(descriptor: &RingDescriptor) -> Result<Vec<DynElem>> {
    let ring = DynRing::from_descriptor(descriptor)?;
    ring.elements()
        .ok_or_else(|| Error::InfiniteRing(descriptor.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(expr: &str) -> Arc<DynRing> {
        Arc::new(DynRing::from_descriptor(&expr.parse().unwrap()).unwrap())
    }

    fn el(r: &Arc<DynRing>, text: &str) -> RingElement {
        RingElement::parse(r.clone(), text).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let z = ring("z");
        assert_eq!(el(&z, "12").arithmetic(&el(&z, "18"), ArithOp::Add).unwrap().to_string(), "30");
        let t = ring("text(z,self)");
        let p = el(&t, "[2, 3]").arithmetic(&el(&t, "[4, 5]"), ArithOp::Mul).unwrap();
        assert_eq!(p.to_string(), "[8, 22]");
        let m = ring("zmod:6");
        assert_eq!(el(&m, "4").arithmetic(&el(&m, "5"), ArithOp::Mul).unwrap().to_string(), "2");
    }

    #[test]
    fn mismatched_descriptors_rejected() {
        let a = el(&ring("zmod:6"), "1");
        let b = el(&ring("zmod:7"), "1");
        let err = a.arithmetic(&b, ArithOp::Add).unwrap_err();
        assert_eq!(
            err,
            Error::DescriptorMismatch {
                left: "zmod:6".into(),
                right: "zmod:7".into()
            }
        );
    }

    #[test]
    fn units_and_inverses() {
        let m = ring("zmod:6");
        assert_eq!(el(&m, "5").inverse().unwrap().to_string(), "5");
        assert!(!el(&ring("z"), "2").is_unit());
        let zq = ring("text(z, rationals)");
        let u = el(&zq, "[1, \"7/2\"]");
        assert!(u.is_unit());
        let prod = u.arithmetic(&u.inverse().unwrap(), ArithOp::Mul).unwrap();
        assert_eq!(prod.to_string(), "[1, \"0\"]");
        assert!(el(&m, "2").inverse().is_err());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(el(&ring("zmod:6"), "11").to_string(), "5");
        assert_eq!(el(&ring("zmod:6"), "\"-1\"").to_string(), "5");
        assert_eq!(el(&ring("gfpoly:5"), "[1,0,3]").value(), &DynElem::Poly(vec![1, 0, 3]));
        assert_eq!(el(&ring("gfpoly:5"), "[1,0,5]").value(), &DynElem::Poly(vec![1]));
        let zq = el(&ring("text(z, rationals)"), "[2, \"3/4\"]");
        assert_eq!(
            zq.value(),
            &DynElem::IntRat(Box::new((BigInt::from(2), BigRational::new(3.into(), 4.into()))))
        );
        assert_eq!(el(&ring("text(z,q)"), "[2, \"6/8\"]").to_string(), "[2, \"3/4\"]");
    }

    #[test]
    fn format_examples() {
        assert_eq!(el(&ring("zmod:6"), "5").to_string(), "5");
        assert_eq!(el(&ring("gfpoly:5"), "[]").to_string(), "[]");
        assert_eq!(el(&ring("text(z,self)"), "[8, 22]").to_string(), "[8, 22]");
        let s = el(&ring("series:4"), "{\"constant\": 1, \"coeffs\": [\"1/2\", 0]}");
        assert_eq!(s.to_string(), "{\"constant\": 1, \"coeffs\": [\"1/2\"]}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let z = ring("z");
        match parse_element(&z, "[1, 2").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 5),
            e => panic!("{e}"),
        }
        for bad in ["1.5", "\"x\"", "[1]", "{}", ""] {
            assert!(parse_element(&z, bad).unwrap_err().is_syntax(), "{bad}");
        }
        assert!(parse_element(&ring("text(z,q)"), "[1, \"1/0\"]").is_err());
        assert!(parse_element(&ring("series:2"), "{\"coeffs\": [1, 2]}").is_err());
        assert!(parse_element(&ring("product(z,z)"), "[1]").is_err());
    }

    #[test]
    fn enumeration_counts() {
        for (expr, n) in [
            ("zmod:4", 4),
            ("product(zmod:2,zmod:3)", 6),
            ("text(zmod:2,self)", 4),
            ("text(product(zmod:2,zmod:2),self)", 16),
        ] {
            let d: RingDescriptor = expr.parse().unwrap();
            let all = enumerate_elements(&d).unwrap();
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(all.len(), n, "{expr}");
            assert_eq!(dedup.len(), n, "{expr}");
            assert_eq!(d.cardinality(), Some(n as u128));
        }
        assert!(enumerate_elements(&RingDescriptor::Integers).is_err());
    }

    fn arb_int() -> impl Strategy<Value = i64> {
        prop_oneof![-1000i64..1000, any::<i64>()]
    }

    fn arb_rat() -> impl Strategy<Value = String> {
        (arb_int(), 1i64..50).prop_map(|(p, q)| format!("\"{p}/{q}\""))
    }

    fn roundtrip(r: &Arc<DynRing>, text: &str) {
        let a = parse_element(r, text).unwrap();
        assert!(r.accepts(&a), "{text}");
        let b = parse_element(r, &format_element(&a)).unwrap();
        assert_eq!(a, b);
        assert_eq!(format_element(&a), format_element(&b));
    }

    proptest! {
        #[test]
        fn roundtrip_integers(n in arb_int()) {
            roundtrip(&ring("z"), &n.to_string());
        }

        #[test]
        fn roundtrip_modular(n in arb_int(), m in 2u64..1000) {
            roundtrip(&ring(&format!("zmod:{m}")), &n.to_string());
        }

        #[test]
        fn roundtrip_poly(c in proptest::collection::vec(0u64..20, 0..6)) {
            roundtrip(&ring("gfpoly:7"), &serde_json::to_string(&c).unwrap());
        }

        #[test]
        fn roundtrip_product(a in arb_int(), b in arb_int(), c in proptest::collection::vec(0u64..3, 0..4)) {
            let text = format!("[{a}, [{b}, {}], {}]", a.rem_euclid(5), serde_json::to_string(&c).unwrap());
            roundtrip(&ring("product(z,product(zmod:9,zmod:5),gfpoly:3)"), &text);
        }

        #[test]
        fn roundtrip_trivial_ext(a in arb_int(), e in arb_int()) {
            roundtrip(&ring("text(z,self)"), &format!("[{a}, {e}]"));
            roundtrip(&ring("text(zmod:12,self)"), &format!("[{a}, {e}]"));
        }

        #[test]
        fn roundtrip_int_rat(a in arb_int(), q in arb_rat()) {
            roundtrip(&ring("text(z,q)"), &format!("[{a}, {q}]"));
        }

        #[test]
        fn roundtrip_series(c in arb_int(), qs in proptest::collection::vec(arb_rat(), 0..5)) {
            let text = format!("{{\"constant\": {c}, \"coeffs\": [{}]}}", qs.join(", "));
            roundtrip(&ring("series:6"), &text);
        }

        #[test]
        fn square_zero_ideal_in_trivial_ext(a in -50i64..50, e in -50i64..50, f in -50i64..50) {
            let t = ring("text(z,self)");
            let x = el(&t, &format!("[0, {e}]"));
            let y = el(&t, &format!("[0, {f}]"));
            prop_assert_eq!(x.arithmetic(&y, ArithOp::Mul).unwrap().to_string(), "[0, 0]");
            let g = el(&t, &format!("[{a}, {f}]"));
            let p = x.arithmetic(&g, ArithOp::Mul).unwrap();
            prop_assert!(matches!(p.value(), DynElem::Pair(b) if b.0 == DynElem::Int(0.into())));
        }
    }
}

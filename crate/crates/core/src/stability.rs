//! Stable elements, unit lifting, and exhaustive property checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{ideal_generator, solve_combination, Ring};

/// Upper bound on the `0, 1, -1, 2, ...` scan in [`select_stable`].
pub const SELECT_CAP: i64 = 10_000;

/// Largest quotient checked by brute force.
pub const MAX_QUOTIENT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    StableRange1,
    Clean,
    AdequateElement,
    LocallyStable,
    NeatRange1,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::StableRange1,
        Property::Clean,
        Property::AdequateElement,
        Property::LocallyStable,
        Property::NeatRange1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::StableRange1 => "stable-range-1",
            Property::Clean => "clean",
            Property::AdequateElement => "adequate-element",
            Property::LocallyStable => "locally-stable",
            Property::NeatRange1 => "neat-range-1",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                reason: format!(
                    "unknown property {s:?}; expected one of {}",
                    Property::ALL.map(Property::name).join(", ")
                ),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict<E> {
    pub property: Property,
    pub holds: bool,
    /// Counterexample when `holds` is false.
    pub witness: Option<Vec<E>>,
    /// Number of sampled pairs, for verdicts over infinite rings.
    pub search_bound: Option<u64>,
    /// Half-width of the `y` window, for verdicts over infinite rings.
    pub search_window: Option<u64>,
}

impl<E> PropertyVerdict<E> {
    fn exhaustive(property: Property, witness: Option<Vec<E>>) -> Self {
        PropertyVerdict {
            property,
            holds: witness.is_none(),
            witness,
            search_bound: None,
            search_window: None,
        }
    }

    pub fn to_json(&self, encode: impl Fn(&E) -> Value) -> Value {
        let mut v = json!({
            "property": self.property.name(),
            "holds": self.holds,
        });
        if let Some(w) = &self.witness {
            v["witness"] = Value::Array(w.iter().map(&encode).collect());
        }
        if let Some(b) = self.search_bound {
            v["searchBound"] = json!(b);
        }
        if let Some(w) = self.search_window {
            v["searchWindow"] = json!(w);
        }
        v
    }
}

/// Bounds for verdicts over infinite rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub pairs: u64,
    pub window: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            pairs: 100,
            window: 1000,
        }
    }
}

/// `aR + bR = R`.
pub fn is_coprime<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<bool> {
    ring.generates_unit_ideal(&[a.clone(), b.clone()])
}

/// Whether `a` is a unit modulo `c`, i.e. `aR + cR = R`.
pub fn unit_mod<R: Ring>(ring: &R, a: &R::Elem, c: &R::Elem) -> Result<bool> {
    is_coprime(ring, a, c)
}

/// `0, 1, -1, 2, -2, ...`
fn small_integers() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// Some `y` with `a + b·y` stable: the first `y` in `0, 1, -1, 2, ...` for
/// which `R/(a + b·y)R` is finite. Finite rings always answer `y = 0`.
pub fn select_stable<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    if !is_coprime(ring, a, b)? {
        return Err(Error::precondition(format!("{a:?} and {b:?} are not comaximal")));
    }
    for k in small_integers().take_while(|k| k.abs() <= SELECT_CAP) {
        let y = ring.from_i64(k);
        if ring.quotient_is_finite(&ring.add(a, &ring.mul(b, &y))) {
            return Ok(y);
        }
    }
    Err(Error::Internal(format!(
        "no stable a + b·y for a = {a:?}, b = {b:?} with |y| <= {SELECT_CAP}"
    )))
}

/// Some `y` with `(a + b·y)R + cR = R`, scanning the residues modulo `c`.
pub fn lift_unit<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<R::Elem> {
    if !ring.generates_unit_ideal(&[a.clone(), b.clone(), c.clone()])? {
        return Err(Error::precondition(format!(
            "{a:?}, {b:?}, {c:?} do not generate the unit ideal"
        )));
    }
    if !ring.quotient_is_finite(c) {
        return Err(Error::precondition(format!("R/({c:?}) is infinite")));
    }
    for y in ring.residue_iter(c)? {
        let cand = ring.add(a, &ring.mul(b, &y));
        if ring.generates_unit_ideal(&[cand, c.clone()])? {
            return Ok(y);
        }
    }
    Err(Error::Internal(format!(
        "no unit lift of {a:?} + {b:?}·y modulo {c:?}"
    )))
}

/// `(y, z)` with `(a + c·y)R + (b + c·z)R = R`, following the proof that
/// locally stable rings have stable range 2.
pub fn sr2_witness<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
    c: &R::Elem,
) -> Result<(R::Elem, R::Elem)> {
    if !ring.generates_unit_ideal(&[a.clone(), b.clone(), c.clone()])? {
        return Err(Error::precondition(format!(
            "{a:?}, {b:?}, {c:?} do not generate the unit ideal"
        )));
    }
    if is_coprime(ring, a, b)? {
        return Ok((ring.zero(), ring.zero()));
    }
    // w = a + b·y + c·z stable: pick it as a + h·y' with h = gcd(b, c).
    let h = ring.bezout(b, c)?;
    let y1 = select_stable(ring, a, &h.d)?;
    let y = ring.mul(&h.x, &y1);
    let z = ring.mul(&h.y, &y1);
    let w = ring.add(a, &ring.add(&ring.mul(b, &y), &ring.mul(c, &z)));
    // (b + c·d)R + wR = R
    let d = lift_unit(ring, b, c, &w)?;
    let y_out = ring.sub(&z, &ring.mul(&d, &y));
    Ok((y_out, d))
}

/// Index of `x`'s coset in `R/cR`.
enum CosetIndex<E> {
    /// Every ring element mapped to its coset (finite rings).
    Partition(HashMap<E, usize>),
    /// Representatives only; other elements pass through `reduce_mod`.
    Reduced(HashMap<E, usize>),
}

/// `R/cR` as explicit cosets, for brute-force checks.
pub struct Quotient<'r, R: Ring> {
    ring: &'r R,
    c: R::Elem,
    reps: Vec<R::Elem>,
    index: CosetIndex<R::Elem>,
    unit: Vec<bool>,
}

impl<'r, R: Ring> Quotient<'r, R> {
    pub fn new(ring: &'r R, c: &R::Elem) -> Result<Self> {
        let (reps, index) = match ring.elements() {
            Some(all) => {
                let ideal: Vec<R::Elem> = {
                    let mut v: Vec<_> = all.iter().map(|r| ring.mul(c, r)).collect();
                    v.sort();
                    v.dedup();
                    v
                };
                let mut map: HashMap<R::Elem, usize> = HashMap::with_capacity(all.len());
                let mut reps = Vec::new();
                for x in &all {
                    if map.contains_key(x) {
                        continue;
                    }
                    let id = reps.len();
                    reps.push(x.clone());
                    for i in &ideal {
                        map.insert(ring.add(x, i), id);
                    }
                }
                (reps, CosetIndex::Partition(map))
            }
            None => {
                let exact = matches!(
                    ring.descriptor(),
                    RingDescriptor::Integers | RingDescriptor::PrimeFieldPoly(_)
                );
                if !ring.quotient_is_finite(c) {
                    return Err(Error::InfiniteRing(format!("{}/({c:?})", ring.descriptor())));
                }
                if !exact {
                    return Err(Error::Unsupported(format!(
                        "exhaustive quotient checks over {}",
                        ring.descriptor()
                    )));
                }
                let mut reps = Vec::new();
                for r in ring.residue_iter(c)? {
                    if reps.len() == MAX_QUOTIENT {
                        return Err(Error::Unsupported(format!(
                            "quotient by {c:?} exceeds {MAX_QUOTIENT} elements"
                        )));
                    }
                    reps.push(r);
                }
                let map = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
                (reps, CosetIndex::Reduced(map))
            }
        };
        if reps.len() > MAX_QUOTIENT {
            return Err(Error::Unsupported(format!(
                "quotient by {c:?} exceeds {MAX_QUOTIENT} elements"
            )));
        }
        let unit = reps
            .iter()
            .map(|r| ring.generates_unit_ideal(&[r.clone(), c.clone()]))
            .collect::<Result<_>>()?;
        Ok(Quotient {
            ring,
            c: c.clone(),
            reps,
            index,
            unit,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[R::Elem] {
        &self.reps
    }

    fn id(&self, x: &R::Elem) -> usize {
        match &self.index {
            CosetIndex::Partition(m) => m[x],
            CosetIndex::Reduced(m) => m[&self.ring.reduce_mod(x, &self.c)],
        }
    }

    /// A comaximal pair `(u, v)` of `R/cR` admitting no `t` with `u + v·t`
    /// a unit, if one exists.
    pub fn sr1_counterexample(&self) -> Result<Option<(R::Elem, R::Elem)>> {
        let ring = self.ring;
        for (i, u) in self.reps.iter().enumerate() {
            if self.unit[i] {
                continue;
            }
            for v in &self.reps {
                if !ring.generates_unit_ideal(&[u.clone(), v.clone(), self.c.clone()])? {
                    continue;
                }
                let ok = self
                    .reps
                    .iter()
                    .any(|t| self.unit[self.id(&ring.add(u, &ring.mul(v, t)))]);
                if !ok {
                    return Ok(Some((u.clone(), v.clone())));
                }
            }
        }
        Ok(None)
    }

    /// An element of `R/cR` that is not idempotent plus unit, if any.
    pub fn clean_counterexample(&self) -> Option<R::Elem> {
        let ring = self.ring;
        let idempotents: Vec<&R::Elem> = self
            .reps
            .iter()
            .enumerate()
            .filter(|(i, e)| self.id(&ring.mul(e, e)) == *i)
            .map(|(_, e)| e)
            .collect();
        self.reps
            .iter()
            .find(|z| !idempotents.iter().any(|e| self.unit[self.id(&ring.sub(z, e))]))
            .cloned()
    }
}

/// Brute-force verdict on whether `R/aR` has stable range 1.
pub fn is_stable<R: Ring>(ring: &R, a: &R::Elem) -> Result<PropertyVerdict<R::Elem>> {
    let q = Quotient::new(ring, a)?;
    let w = q.sr1_counterexample()?.map(|(u, v)| vec![u, v]);
    Ok(PropertyVerdict::exhaustive(Property::StableRange1, w))
}

/// Exhaustive on finite rings; over the integers only stable range 1 is
/// supported, as a bounded verdict.
pub fn check_property<R: Ring>(
    ring: &R,
    property: Property,
    bounds: SearchBounds,
) -> Result<PropertyVerdict<R::Elem>> {
    match ring.elements() {
        Some(all) => check_finite(ring, &all, property),
        None => match (ring.descriptor(), property) {
            (RingDescriptor::Integers, Property::StableRange1) => Ok(integer_sr1(ring, bounds)),
            (d, p) => Err(Error::Unsupported(format!("checking {p} over the infinite ring {d}"))),
        },
    }
}

fn check_finite<R: Ring>(ring: &R, all: &[R::Elem], property: Property) -> Result<PropertyVerdict<R::Elem>> {
    let whole = || Quotient::new(ring, &ring.zero());
    let witness = match property {
        Property::StableRange1 => whole()?.sr1_counterexample()?.map(|(a, b)| vec![a, b]),
        Property::Clean => whole()?.clean_counterexample().map(|a| vec![a]),
        Property::LocallyStable => {
            let mut memo = HashMap::new();
            comaximal_search(ring, all, |x| {
                if let Some(v) = memo.get(x) {
                    return Ok(*v);
                }
                let v = Quotient::new(ring, x)?.sr1_counterexample()?.is_none();
                memo.insert(x.clone(), v);
                Ok(v)
            })?
        }
        Property::NeatRange1 => {
            let mut memo = HashMap::new();
            comaximal_search(ring, all, |x| {
                if let Some(v) = memo.get(x) {
                    return Ok(*v);
                }
                let v = Quotient::new(ring, x)?.clean_counterexample().is_none();
                memo.insert(x.clone(), v);
                Ok(v)
            })?
        }
        Property::AdequateElement => adequate_counterexample(ring, all)?,
    };
    Ok(PropertyVerdict::exhaustive(property, witness))
}

/// First comaximal `(a, b)` with no `y` making `good(a + b·y)` true.
fn comaximal_search<R: Ring>(
    ring: &R,
    all: &[R::Elem],
    mut good: impl FnMut(&R::Elem) -> Result<bool>,
) -> Result<Option<Vec<R::Elem>>> {
    for a in all {
        for b in all {
            if !is_coprime(ring, a, b)? {
                continue;
            }
            let mut found = false;
            for y in all {
                if good(&ring.add(a, &ring.mul(b, y)))? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(Some(vec![a.clone(), b.clone()]));
            }
        }
    }
    Ok(None)
}

/// Index-based multiplication table of a finite ring.
struct MulTable<'a, E> {
    all: &'a [E],
    table: Vec<usize>,
}

impl<'a, E: Clone + Eq + std::hash::Hash> MulTable<'a, E> {
    fn new<R: Ring<Elem = E>>(ring: &R, all: &'a [E]) -> Self {
        let idx: HashMap<&E, usize> = all.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = all.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let k = idx[&ring.mul(&all[i], &all[j])];
                table[i * n + j] = k;
                table[j * n + i] = k;
            }
        }
        MulTable { all, table }
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.all.len() + j]
    }
}

/// A nonzero `c` and an `a` for which no factorization `c = r·s` has
/// `rR + aR = R` with every non-unit divisor `s'` of `s` satisfying
/// `s'R + aR ≠ R`.
fn adequate_counterexample<R: Ring>(ring: &R, all: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
    let n = all.len();
    let t = MulTable::new(ring, all);
    let unit: Vec<bool> = all.iter().map(|e| ring.is_unit(e)).collect();
    let mut comax = vec![None::<bool>; n * n];
    let mut coprime = |i: usize, j: usize| -> Result<bool> {
        let slot = &mut comax[i.min(j) * n + i.max(j)];
        if let Some(v) = *slot {
            return Ok(v);
        }
        let v = is_coprime(ring, &all[i], &all[j])?;
        *slot = Some(v);
        Ok(v)
    };
    let divisors: Vec<Vec<usize>> = (0..n)
        .map(|s| (0..n).filter(|&d| (0..n).any(|k| t.mul(d, k) == s)).collect())
        .collect();
    for c in 0..n {
        if ring.is_zero(&all[c]) {
            continue;
        }
        'a: for a in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if t.mul(r, s) != c || !coprime(r, a)? {
                        continue;
                    }
                    let mut ok = true;
                    for &d in &divisors[s] {
                        if !unit[d] && coprime(d, a)? {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        continue 'a;
                    }
                }
            }
            return Ok(Some(vec![all[c].clone(), all[a].clone()]));
        }
    }
    Ok(None)
}

/// `a + b·y = ±1` is solvable over the integers iff `b` divides `1 - a`
/// or `-1 - a`.
fn integer_unit_solvable(a: &BigInt, b: &BigInt) -> bool {
    let solves = |target: BigInt| {
        let diff = target - a;
        if b == &BigInt::from(0) {
            diff == BigInt::from(0)
        } else {
            diff.is_multiple_of(b)
        }
    };
    solves(BigInt::from(1)) || solves(BigInt::from(-1))
}

/// Sampled comaximal pairs starting with `(3, 5)`, each searched over
/// `|y| <= window`; a failure is reported only when no integer `y` works.
fn integer_sr1<R: Ring>(ring: &R, bounds: SearchBounds) -> PropertyVerdict<R::Elem> {
    let mut pairs: Vec<(i64, i64)> = vec![(3, 5)];
    'fill: for b in 2i64.. {
        for a in 0..b {
            if pairs.len() as u64 >= bounds.pairs {
                break 'fill;
            }
            if a.gcd(&b) == 1 && (a, b) != (3, 5) {
                pairs.push((a, b));
            }
        }
    }
    pairs.truncate(bounds.pairs.max(1) as usize);
    let window = bounds.window as i64;
    let mut witness = None;
    for (a, b) in pairs {
        let (ea, eb) = (ring.from_i64(a), ring.from_i64(b));
        let in_window = (-window..=window).any(|y| ring.is_unit(&ring.add(&ea, &ring.mul(&eb, &ring.from_i64(y)))));
        if !in_window && !integer_unit_solvable(&BigInt::from(a), &BigInt::from(b)) {
            witness = Some(vec![ea, eb]);
            break;
        }
    }
    PropertyVerdict {
        property: Property::StableRange1,
        holds: witness.is_none(),
        witness,
        search_bound: Some(bounds.pairs),
        search_window: Some(bounds.window),
    }
}

/// `c = r·s` with `rR + sR = rR + aR = sR + bR = R`.
pub fn coprime_factorization<R: Ring>(
    ring: &R,
    c: &R::Elem,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<(R::Elem, R::Elem)> {
    if ring.is_zero(c) {
        return Err(Error::precondition("c must be nonzero"));
    }
    if !is_coprime(ring, a, b)? {
        return Err(Error::precondition(format!("{a:?} and {b:?} are not comaximal")));
    }
    let valid = |r: &R::Elem, s: &R::Elem| -> Result<bool> {
        Ok(ring.mul(r, s) == *c && is_coprime(ring, r, s)? && is_coprime(ring, r, a)? && is_coprime(ring, s, b)?)
    };
    let found = match (ring.descriptor(), ring.elements()) {
        (RingDescriptor::Integers | RingDescriptor::PrimeFieldPoly(_), _) => {
            // Move every factor shared with a from t into s.
            let mut t = c.clone();
            let mut s = ring.one();
            loop {
                let g = ring.bezout(&t, a)?.d;
                if ring.is_unit(&g) {
                    break;
                }
                s = ring.mul(&s, &g);
                t = ring.divide_exact(&t, &g)?;
            }
            Some((t, s))
        }
        (_, Some(all)) => {
            let mut hit = None;
            'search: for r in &all {
                for s in &all {
                    if valid(r, s)? {
                        hit = Some((r.clone(), s.clone()));
                        break 'search;
                    }
                }
            }
            hit
        }
        (d, None) => return Err(Error::Unsupported(format!("coprime factorization over {d}"))),
    };
    match found {
        Some((r, s)) if valid(&r, &s)? => Ok((r, s)),
        Some((r, s)) => Err(Error::Internal(format!(
            "factorization {r:?}·{s:?} of {c:?} fails its checks"
        ))),
        None => Err(Error::precondition(format!(
            "{c:?} has no factorization r·s with rR+sR = rR+aR = sR+bR = R for a = {a:?}, b = {b:?}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanIdempotent<E> {
    /// Idempotent of `R/cR`, reduced modulo `c` where the ring allows.
    pub e: E,
    pub r: E,
    pub s: E,
    /// `r·u + s·v = 1`.
    pub u: E,
    pub v: E,
}

/// Idempotent `e` of `R/cR` with `e ∈ a(R/cR)` and `1 - e ∈ b(R/cR)`,
/// built as `e = s·v` from a coprime factorization `c = r·s`.
pub fn clean_idempotent<R: Ring>(
    ring: &R,
    c: &R::Elem,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<CleanIdempotent<R::Elem>> {
    let d0 = ideal_generator(ring, &[b.clone(), c.clone()])?;
    let (r, s) = coprime_factorization(ring, c, a, &d0)?;
    let cert = ring.bezout(&r, &s)?;
    let inv = ring
        .inverse(&cert.d)
        .ok_or_else(|| Error::Internal(format!("{r:?} and {s:?} are not comaximal")))?;
    let u = ring.mul(&cert.x, &inv);
    let v = ring.mul(&cert.y, &inv);
    let e = ring.reduce_mod(&ring.mul(&s, &v), c);

    let one = ring.one();
    let idem = ring.divides(c, &ring.sub(&ring.mul(&e, &e), &e));
    let in_a = solve_combination(ring, &[a.clone(), c.clone()], &e).is_ok();
    let in_b = solve_combination(ring, &[b.clone(), c.clone()], &ring.sub(&one, &e)).is_ok();
    if !(idem && in_a && in_b) {
        return Err(Error::Internal(format!(
            "clean idempotent {e:?} mod {c:?} fails: idempotent={idem}, in aR={in_a}, 1-e in bR={in_b}"
        )));
    }
    Ok(CleanIdempotent { e, r, s, u, v })
}

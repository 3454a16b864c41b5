use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::descriptor::{ModuleKind, RingDescriptor};
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};

/// Trivial extension `A ∝ A`: pairs `(a, e)` with
/// `(a, e)(b, f) = (ab, af + be)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivialExt<R> {
    base: R,
    /// Finite base that is a product of fields; exactly then every ideal
    /// of `A ∝ A` is principal.
    regular: bool,
}

impl<R: Ring> TrivialExt<R> {
    pub fn new(base: R) -> Self {
        let regular = match base.elements() {
            Some(all) => all.iter().all(|a| {
                let a2 = base.mul(a, a);
                base.divides(&a2, a)
            }),
            None => false,
        };
        TrivialExt { base, regular }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    fn finite_elements(&self) -> Option<Vec<(R::Elem, R::Elem)>> {
        let all = self.base.elements()?;
        Some(
            all.iter()
                .flat_map(|a| all.iter().map(move |e| (a.clone(), e.clone())))
                .collect(),
        )
    }

    fn units(&self) -> Option<Vec<(R::Elem, R::Elem)>> {
        Some(
            self.finite_elements()?
                .into_iter()
                .filter(|(a, _)| self.base.is_unit(a))
                .collect(),
        )
    }

    /// Brute-force refined certificate in a finite ring.
    fn finite_bezout(
        &self,
        all: &[(R::Elem, R::Elem)],
        a: &(R::Elem, R::Elem),
        b: &(R::Elem, R::Elem),
    ) -> Result<BezoutCertificate<(R::Elem, R::Elem)>> {
        let ideal: BTreeSet<_> = all
            .iter()
            .flat_map(|r| all.iter().map(move |s| self.add(&self.mul(a, r), &self.mul(b, s))))
            .collect();
        let d = ideal
            .iter()
            .find(|d| all.iter().map(|r| self.mul(d, r)).collect::<BTreeSet<_>>().len() == ideal.len())
            .map(|d| self.canonical(d))
            .ok_or_else(|| Error::Unsupported(format!("ideal ({a:?}, {b:?}) is not principal")))?;
        let sols = |t: &(R::Elem, R::Elem)| -> Vec<(R::Elem, R::Elem)> {
            all.iter().filter(|q| self.mul(&d, q) == *t).cloned().collect()
        };
        let one = self.one();
        for a0 in sols(a) {
            for b0 in sols(b) {
                for x in all {
                    let rest = self.sub(&one, &self.mul(&a0, x));
                    if let Some(y) = all.iter().find(|y| self.mul(&b0, y) == rest) {
                        return Ok(BezoutCertificate {
                            d,
                            x: x.clone(),
                            y: y.clone(),
                            a0,
                            b0,
                            degenerate: false,
                        });
                    }
                }
            }
        }
        Err(Error::Internal(format!("no refined certificate for ({a:?}, {b:?})")))
    }
}

impl<R: Ring> Ring for TrivialExt<R> {
    type Elem = (R::Elem, R::Elem);

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::TrivialExtension {
            base: Box::new(self.base.descriptor()),
            module: ModuleKind::SelfModule,
        }
    }

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_bigint(n), self.base.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.base;
        (r.mul(&a.0, &b.0), r.add(&r.mul(&a.0, &b.1), &r.mul(&a.1, &b.0)))
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let r = &self.base;
        let inv = r.inverse(&a.0)?;
        let e = r.neg(&r.mul(&a.1, &r.mul(&inv, &inv)));
        Some((inv, e))
    }

    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Result<BezoutCertificate<Self::Elem>> {
        if self.is_zero(a) && self.is_zero(b) {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        if let Some(all) = self.finite_elements() {
            return self.finite_bezout(&all, a, b);
        }
        // Infinite base: comaximal pairs and comparable pairs have an
        // effective generator.
        if self.base.generates_unit_ideal(&[a.0.clone(), b.0.clone()])? {
            let c = self.base.bezout(&a.0, &b.0)?;
            let x = (c.x, self.base.zero());
            let y = (c.y, self.base.zero());
            let v = self.add(&self.mul(a, &x), &self.mul(b, &y));
            let vinv = self.inverse(&v).expect("first component is a unit");
            return Ok(BezoutCertificate {
                d: self.one(),
                x: self.mul(&x, &vinv),
                y: self.mul(&y, &vinv),
                a0: a.clone(),
                b0: b.clone(),
                degenerate: false,
            });
        }
        let (small, big, swapped) = if self.divides(a, b) {
            (a, b, false)
        } else if self.divides(b, a) {
            (b, a, true)
        } else {
            return Err(Error::Unsupported(format!(
                "no principal generator known for ({a:?}, {b:?}) in {}",
                self.descriptor()
            )));
        };
        let u = self.normalizing_unit(small);
        let d = self.mul(small, &u);
        let s0 = self.inverse(&u).expect("normalizing unit");
        let q = self.divide_exact(big, &d)?;
        // small·u = d, so small·u + big·0 = d; a0·x + b0·y = s0·u = 1.
        let (x, y, a0, b0) = if swapped {
            (self.zero(), u, q, s0)
        } else {
            (u, self.zero(), s0, q)
        };
        Ok(BezoutCertificate {
            d,
            x,
            y,
            a0,
            b0,
            degenerate: false,
        })
    }

    fn divide_exact(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem> {
        if let Some(all) = self.finite_elements() {
            return all
                .into_iter()
                .find(|q| self.mul(d, q) == *a)
                .ok_or_else(|| Error::not_divisible(a, d));
        }
        let r = &self.base;
        let fail = || Error::not_divisible(a, d);
        let (b, f) = a;
        let (m, e) = d;
        if !r.is_zero(m) {
            // m·q = b, m·g + e·q = f
            let q = r.divide_exact(b, m).map_err(|_| fail())?;
            let g = r.divide_exact(&r.sub(f, &r.mul(e, &q)), m).map_err(|_| fail())?;
            return Ok((q, g));
        }
        if !r.is_zero(b) {
            return Err(fail());
        }
        // (0, e)(q, g) = (0, e·q)
        let q = r.divide_exact(f, e).map_err(|_| fail())?;
        Ok((q, r.zero()))
    }

    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem {
        if let Some(units) = self.units() {
            return units
                .into_iter()
                .min_by(|u, v| self.mul(a, u).cmp(&self.mul(a, v)))
                .expect("one is a unit");
        }
        let r = &self.base;
        let (m, e) = a;
        if r.is_zero(m) {
            return (r.normalizing_unit(e), r.zero());
        }
        let s = r.normalizing_unit(m);
        let f = r
            .divide_exact(&r.neg(&r.mul(e, &s)), m)
            .unwrap_or_else(|_| r.zero());
        (s, f)
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        self.finite_elements()
    }

    fn residues(&self, c: &Self::Elem) -> Result<Vec<Self::Elem>> {
        if let Some(all) = self.finite_elements() {
            return Ok(all);
        }
        let base = self.base.residues(&c.0)?;
        Ok(base
            .iter()
            .flat_map(|i| base.iter().map(move |j| (i.clone(), j.clone())))
            .collect())
    }

    fn quotient_is_finite(&self, c: &Self::Elem) -> bool {
        self.base.quotient_is_finite(&c.0)
    }

    fn generates_unit_ideal(&self, gens: &[Self::Elem]) -> Result<bool> {
        let firsts: Vec<R::Elem> = gens.iter().map(|g| g.0.clone()).collect();
        self.base.generates_unit_ideal(&firsts)
    }

    fn is_domain(&self) -> bool {
        false
    }

    fn bezout_total(&self) -> bool {
        self.regular
    }
}

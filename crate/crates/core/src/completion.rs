//! Completing a row `a_1, ..., a_n` generating `dR` to a square matrix of
//! determinant exactly `d`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matred::matrix_to_json;
use crate::matrix::{determinant, Matrix};
use crate::ring::{ideal_generator, solve_combination, Ring};
use crate::stability::{lift_unit, select_stable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionResult<E> {
    /// First row is the input row, determinant is `d`.
    pub matrix: Matrix<E>,
    pub d: E,
    /// Intermediate witnesses in the order they were produced.
    pub trace: Vec<(String, E)>,
}

impl<E: Clone> CompletionResult<E> {
    pub fn to_json(&self, encode: impl Fn(&E) -> Value) -> Value {
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|(name, v)| json!({"name": name, "value": encode(v)}))
            .collect();
        json!({
            "matrix": matrix_to_json(&self.matrix, &encode),
            "d": encode(&self.d),
            "trace": trace,
        })
    }
}

/// Checks first-row preservation and `det = d` by independent expansion.
pub fn verify_completion<R: Ring>(ring: &R, row: &[R::Elem], r: &CompletionResult<R::Elem>) -> bool {
    let n = row.len();
    r.matrix.shape() == (n, n)
        && r.matrix.row(0) == row
        && determinant(ring, &r.matrix).map(|det| det == r.d).unwrap_or(false)
}

fn check_row<R: Ring>(ring: &R, a: &[R::Elem], d: &R::Elem) -> Result<()> {
    if a.is_empty() {
        return Err(Error::precondition("row must not be empty"));
    }
    if let Some(ai) = a.iter().find(|ai| !ring.divides(d, ai)) {
        return Err(Error::precondition(format!("{d:?} does not divide {ai:?}")));
    }
    let g = ideal_generator(ring, a)?;
    if !ring.divides(&g, d) {
        return Err(Error::precondition(format!("row does not generate the ideal of {d:?}")));
    }
    Ok(())
}

/// Strong completion of `a` with prescribed determinant `d`.
pub fn complete_row<R: Ring>(ring: &R, a: &[R::Elem], d: &R::Elem) -> Result<CompletionResult<R::Elem>> {
    check_row(ring, a, d)?;
    let n = a.len();
    let mut m = Matrix::identity(ring, n);
    for (j, aj) in a.iter().enumerate() {
        m[(0, j)] = aj.clone();
    }
    let mut trace = Vec::new();
    let done = |matrix, trace| {
        Ok(CompletionResult {
            matrix,
            d: d.clone(),
            trace,
        })
    };

    if n == 1 {
        if a[0] != *d {
            return Err(Error::precondition(format!(
                "a 1x1 completion of {:?} has determinant {:?}, not {d:?}",
                a[0], a[0]
            )));
        }
        return done(m, trace);
    }
    if ring.is_zero(d) {
        // The row is zero and so is every determinant with it on top.
        return done(m, trace);
    }

    let x = solve_combination(ring, a, d)?;
    if n == 2 {
        m[(1, 0)] = ring.neg(&x[1]);
        m[(1, 1)] = x[0].clone();
        trace.push(("x1".to_string(), x[0].clone()));
        trace.push(("x2".to_string(), x[1].clone()));
        return done(m, trace);
    }

    let q = a
        .iter()
        .map(|ai| ring.divide_exact(ai, d))
        .collect::<Result<Vec<_>>>()?;
    let mut c = ring.neg(&ring.one());
    for (xi, qi) in x.iter().zip(&q) {
        c = ring.add(&c, &ring.mul(xi, qi));
    }
    if !ring.is_zero(&ring.mul(d, &c)) {
        return Err(Error::Internal(format!("d·c = {:?} is not zero", ring.mul(d, &c))));
    }
    for (i, xi) in x.iter().enumerate() {
        trace.push((format!("x{}", i + 1), xi.clone()));
    }
    for (i, qi) in q.iter().enumerate() {
        trace.push((format!("q{}", i + 1), qi.clone()));
    }
    trace.push(("c".to_string(), c.clone()));

    // Σ g_i·x'_i = 1 with g_n = q_n x_n - c and x'_n = 1.
    let mut g = q.clone();
    g[n - 1] = ring.sub(&ring.mul(&q[n - 1], &x[n - 1]), &c);
    let mut xp = x.clone();
    xp[n - 1] = ring.one();

    let tail = (1..n).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.mul(&g[i], &xp[i])));
    let mult = select_stable(ring, &g[0], &tail)?;
    let w = ring.add(&g[0], &ring.mul(&mult, &tail));
    trace.push(("m".to_string(), mult.clone()));
    trace.push(("w".to_string(), w.clone()));

    // Fold g_3, ..., g_n into g_2 while staying comaximal with the ideal
    // (w, g_{i+1}, ..., g_n); at the end the sum is a unit modulo w.
    let mut y = vec![ring.zero(); n];
    let mut acc = g[1].clone();
    for i in 2..n {
        let mut rest = vec![w.clone()];
        rest.extend_from_slice(&g[i + 1..]);
        let modulus = ideal_generator(ring, &rest)?;
        y[i] = lift_unit(ring, &acc, &g[i], &modulus)?;
        acc = ring.add(&acc, &ring.mul(&g[i], &y[i]));
        trace.push((format!("y{}", i + 1), y[i].clone()));
    }
    let big_b = acc;

    let x2m = ring.mul(&x[1], &mult);
    let mut s_i = vec![ring.zero(); n];
    let mut big_a = g[0].clone();
    for i in 2..n {
        s_i[i] = ring.sub(&ring.mul(&xp[i], &mult), &ring.mul(&y[i], &x2m));
        big_a = ring.add(&big_a, &ring.mul(&g[i], &s_i[i]));
        trace.push((format!("s{}", i + 1), s_i[i].clone()));
    }

    let st = solve_combination(ring, &[big_a.clone(), big_b.clone()], &ring.one())
        .map_err(|_| Error::Internal("bordered pair is not comaximal".into()))?;
    let (s, t) = (&st[0], &st[1]);
    trace.push(("s".to_string(), s.clone()));
    trace.push(("t".to_string(), t.clone()));

    // Column operations remove q_i·σ_i from the first two columns; the
    // last index carries the extra x_n from g_n.
    let mut bordered = Matrix::identity(ring, n);
    bordered[(1, 0)] = ring.neg(t);
    bordered[(1, 1)] = s.clone();
    bordered[(0, 0)] = ring.sub(&q[0], &ring.mul(&c, &s_i[n - 1]));
    bordered[(0, 1)] = ring.sub(&q[1], &ring.mul(&c, &y[n - 1]));
    for i in 2..n {
        let (sigma, tau) = if i == n - 1 {
            (ring.mul(&x[i], &s_i[i]), ring.mul(&x[i], &y[i]))
        } else {
            (s_i[i].clone(), y[i].clone())
        };
        bordered[(0, i)] = q[i].clone();
        bordered[(i, 0)] = ring.neg(&sigma);
        bordered[(i, 1)] = ring.neg(&tau);
    }

    let u = determinant(ring, &bordered)?;
    let u_inv = ring
        .inverse(&u)
        .ok_or_else(|| Error::Internal(format!("bordered determinant {u:?} is not a unit")))?;
    trace.push(("u".to_string(), u.clone()));

    for j in 0..n {
        m[(0, j)] = ring.mul(d, &bordered[(0, j)]);
    }
    if m.row(0) != a {
        return Err(Error::Internal("scaled first row differs from the input".into()));
    }
    for j in 0..2 {
        m[(1, j)] = ring.mul(&bordered[(1, j)], &u_inv);
    }
    for i in 2..n {
        for j in 0..n {
            m[(i, j)] = bordered[(i, j)].clone();
        }
    }
    done(m, trace)
}

/// Completion of a unimodular row to a matrix of determinant 1.
pub fn complete_unimodular<R: Ring>(ring: &R, a: &[R::Elem]) -> Result<CompletionResult<R::Elem>> {
    if !ring.generates_unit_ideal(a)? {
        return Err(Error::precondition("row is not unimodular"));
    }
    complete_row(ring, a, &ring.one())
}

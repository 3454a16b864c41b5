//! Diagonal reduction `P·A·Q = D` over Bézout rings.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{is_diagonal, is_identity, matmul, product, Matrix};
use crate::ring::{solve_combination, Ring};
use crate::rings::Integers;
use crate::stability::{lift_unit, select_stable};

/// A 2×2 matrix `[[m00, m01], [m10, m11]]`.
pub type M2<E> = [[E; 2]; 2];

/// Pivot-clearing rounds per pivot before giving up.
const SWEEP_CAP: usize = 10_000;

fn m2<E: Clone>(m: &M2<E>) -> Matrix<E> {
    Matrix::from_rows(vec![m[0].to_vec(), m[1].to_vec()]).expect("2x2")
}

fn transpose2<E: Clone>(m: &M2<E>) -> M2<E> {
    [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]]
}

fn ident2<R: Ring>(ring: &R) -> M2<R::Elem> {
    [[ring.one(), ring.zero()], [ring.zero(), ring.one()]]
}

fn swap2<R: Ring>(ring: &R) -> M2<R::Elem> {
    [[ring.zero(), ring.one()], [ring.one(), ring.zero()]]
}

/// `[[1, 0], [e, 1]]`
fn lower2<R: Ring>(ring: &R, e: R::Elem) -> M2<R::Elem> {
    [[ring.one(), ring.zero()], [e, ring.one()]]
}

/// `[[1, e], [0, 1]]`
fn upper2<R: Ring>(ring: &R, e: R::Elem) -> M2<R::Elem> {
    [[ring.one(), e], [ring.zero(), ring.one()]]
}

fn diag2<R: Ring>(ring: &R, a: R::Elem, b: R::Elem) -> M2<R::Elem> {
    [[a, ring.zero()], [ring.zero(), b]]
}

/// Certified diagonal form: `P·A·Q = D` with `P·Pinv = I` and `Q·Qinv = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult<E> {
    pub p: Matrix<E>,
    pub d: Matrix<E>,
    pub q: Matrix<E>,
    pub p_inv: Matrix<E>,
    pub q_inv: Matrix<E>,
    /// Diagonal entries are canonical associates.
    pub normalized: bool,
}

pub fn matrix_to_json<E>(m: &Matrix<E>, encode: impl Fn(&E) -> Value) -> Value
where
    E: Clone,
{
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&encode).collect()))
            .collect(),
    )
}

impl<E: Clone> ReductionResult<E> {
    pub fn diagonal(&self) -> Vec<E> {
        self.d.diagonal_entries()
    }

    pub fn to_json(&self, encode: impl Fn(&E) -> Value) -> Value {
        let mut v = serde_json::Map::new();
        v.insert("P".into(), matrix_to_json(&self.p, &encode));
        v.insert("D".into(), matrix_to_json(&self.d, &encode));
        v.insert("Q".into(), matrix_to_json(&self.q, &encode));
        v.insert("Pinv".into(), matrix_to_json(&self.p_inv, &encode));
        v.insert("Qinv".into(), matrix_to_json(&self.q_inv, &encode));
        Value::Object(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnReduction<E> {
    pub d: E,
    /// `(a b)·q = (d 0)`, `det q = 1`.
    pub q: M2<E>,
    pub q_inv: M2<E>,
}

/// Hermite step: `(a b)·Q = (d 0)` with `Q = [[x, -b0], [y, a0]]` from the
/// refined Bézout certificate. `(0, 0)` gives `d = 0`, `Q = I`.
pub fn column_reduce<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<ColumnReduction<R::Elem>> {
    let c = ring.bezout(a, b)?;
    if c.degenerate {
        return Ok(ColumnReduction {
            d: c.d,
            q: ident2(ring),
            q_inv: ident2(ring),
        });
    }
    Ok(ColumnReduction {
        q: [[c.x.clone(), ring.neg(&c.b0)], [c.y.clone(), c.a0.clone()]],
        q_inv: [[c.a0, c.b0], [ring.neg(&c.y), c.x]],
        d: c.d,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One factor of a 2×2 reduction together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryFactor<E> {
    pub name: &'static str,
    pub side: Side,
    pub matrix: M2<E>,
    pub inverse: M2<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoByTwoReduction<E> {
    pub result: ReductionResult<E>,
    /// `P` is the product of the left factors in order, `Q` of the right.
    pub factors: Vec<ElementaryFactor<E>>,
    /// Named intermediate values (`x, y, z, t, v, a', b', c', w, p, q`).
    pub trace: Vec<(&'static str, E)>,
}

impl<E: Clone> TwoByTwoReduction<E> {
    pub fn left_factors(&self) -> impl Iterator<Item = &ElementaryFactor<E>> {
        self.factors.iter().filter(|f| f.side == Side::Left)
    }

    pub fn right_factors(&self) -> impl Iterator<Item = &ElementaryFactor<E>> {
        self.factors.iter().filter(|f| f.side == Side::Right)
    }
}

/// Products of the listed factors and of their inverses in reverse order.
fn compose<R: Ring>(
    ring: &R,
    factors: &[&ElementaryFactor<R::Elem>],
) -> Result<(Matrix<R::Elem>, Matrix<R::Elem>)> {
    let mut m = Matrix::identity(ring, 2);
    let mut inv = Matrix::identity(ring, 2);
    for f in factors {
        m = matmul(ring, &m, &m2(&f.matrix))?;
        inv = matmul(ring, &m2(&f.inverse), &inv)?;
    }
    Ok((m, inv))
}

/// Elementary reduction of `[[a, 0], [b, c]]` with `aR + bR + cR = R` to
/// `diag(1, δ)`, `δ` the canonical associate of `a'·c'`.
pub fn reduce_2x2<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<TwoByTwoReduction<R::Elem>> {
    if m.shape() != (2, 2) {
        return Err(Error::precondition(format!("expected a 2x2 matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !ring.is_zero(&m[(0, 1)]) {
        return Err(Error::precondition("matrix must be lower triangular [[a, 0], [b, c]]"));
    }
    let (a, b, c) = (&m[(0, 0)], &m[(1, 0)], &m[(1, 1)]);
    if !ring.generates_unit_ideal(&[a.clone(), b.clone(), c.clone()])? {
        return Err(Error::precondition(format!(
            "entries {a:?}, {b:?}, {c:?} do not generate the unit ideal"
        )));
    }
    let factor = |name, side, matrix, inverse| ElementaryFactor {
        name,
        side,
        matrix,
        inverse,
    };
    let mut factors = Vec::new();
    let mut trace = Vec::new();

    let delta;
    if ring.is_zero(b) && ring.is_unit(a) {
        let ai = ring.inverse(a).expect("unit");
        factors.push(factor("scale", Side::Left, diag2(ring, ai, ring.one()), diag2(ring, a.clone(), ring.one())));
        delta = c.clone();
    } else {
        let coeffs = solve_combination(ring, &[a.clone(), b.clone(), c.clone()], &ring.one())?;
        let (x, y, z) = (&coeffs[0], &coeffs[1], &coeffs[2]);
        let s = ring.add(&ring.mul(a, x), &ring.mul(c, z));
        let t = select_stable(ring, b, &s)?;
        let v = ring.add(b, &ring.mul(&s, &t));
        let xt = ring.mul(x, &t);
        let zt = ring.mul(z, &t);

        // (v c)·H = (0 c')
        let cr = column_reduce(ring, &v, c)?;
        let h = [
            [cr.q[0][1].clone(), cr.q[0][0].clone()],
            [cr.q[1][1].clone(), cr.q[1][0].clone()],
        ];
        let h_inv = [cr.q_inv[1].clone(), cr.q_inv[0].clone()];
        let a1 = ring.mul(a, &h[0][0]);
        let b1 = ring.mul(a, &h[0][1]);
        let c1 = cr.d;

        let w = lift_unit(ring, &b1, &a1, &c1)?;
        let u = ring.add(&b1, &ring.mul(&a1, &w));
        let pq = solve_combination(ring, &[u.clone(), c1.clone()], &ring.one())?;
        let (p, q) = (&pq[0], &pq[1]);
        let pa = ring.mul(p, &a1);

        factors.push(factor("swap", Side::Left, swap2(ring), swap2(ring)));
        factors.push(factor(
            "bezout",
            Side::Left,
            [[c1.clone(), ring.neg(&u)], [p.clone(), q.clone()]],
            [[q.clone(), u.clone()], [ring.neg(p), c1.clone()]],
        ));
        factors.push(factor("stabilize-row", Side::Left, lower2(ring, xt.clone()), lower2(ring, ring.neg(&xt))));
        factors.push(factor("stabilize-col", Side::Right, lower2(ring, zt.clone()), lower2(ring, ring.neg(&zt))));
        factors.push(factor("hermite", Side::Right, h, h_inv));
        factors.push(factor("lift", Side::Right, upper2(ring, w.clone()), upper2(ring, ring.neg(&w))));
        factors.push(factor("eliminate", Side::Right, lower2(ring, ring.neg(&pa)), lower2(ring, pa.clone())));
        factors.push(factor("swap", Side::Right, swap2(ring), swap2(ring)));

        delta = ring.mul(&a1, &c1);
        for (name, val) in [
            ("x", x),
            ("y", y),
            ("z", z),
            ("t", &t),
            ("v", &v),
            ("a'", &a1),
            ("b'", &b1),
            ("c'", &c1),
            ("w", &w),
            ("p", p),
            ("q", q),
        ] {
            trace.push((name, val.clone()));
        }
    }

    let nu = ring.normalizing_unit(&delta);
    let nu_inv = ring
        .inverse(&nu)
        .ok_or_else(|| Error::Internal(format!("normalizing unit {nu:?} is not invertible")))?;
    let delta = ring.mul(&delta, &nu);
    trace.push(("delta", delta.clone()));
    factors.insert(0, factor("normalize", Side::Left, diag2(ring, ring.one(), nu), diag2(ring, ring.one(), nu_inv)));

    let lefts: Vec<_> = factors.iter().filter(|f| f.side == Side::Left).collect();
    let rights: Vec<_> = factors.iter().filter(|f| f.side == Side::Right).collect();
    let (p, p_inv) = compose(ring, &lefts)?;
    let (q, q_inv) = compose(ring, &rights)?;
    let d = m2(&diag2(ring, ring.one(), delta));
    if product(ring, &[&p, m, &q])? != d {
        return Err(Error::Internal("2x2 reduction does not reproduce diag(1, δ)".into()));
    }
    Ok(TwoByTwoReduction {
        result: ReductionResult {
            p,
            d,
            q,
            p_inv,
            q_inv,
            normalized: true,
        },
        factors,
        trace,
    })
}

/// `row_i, row_j ← g · (row_i, row_j)`
fn left_rows<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, i: usize, j: usize, g: &M2<R::Elem>) {
    for k in 0..m.cols() {
        let (x, y) = (m[(i, k)].clone(), m[(j, k)].clone());
        m[(i, k)] = ring.add(&ring.mul(&g[0][0], &x), &ring.mul(&g[0][1], &y));
        m[(j, k)] = ring.add(&ring.mul(&g[1][0], &x), &ring.mul(&g[1][1], &y));
    }
}

/// `(col_i, col_j) ← (col_i, col_j) · h`
fn right_cols<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, i: usize, j: usize, h: &M2<R::Elem>) {
    for k in 0..m.rows() {
        let (x, y) = (m[(k, i)].clone(), m[(k, j)].clone());
        m[(k, i)] = ring.add(&ring.mul(&x, &h[0][0]), &ring.mul(&y, &h[1][0]));
        m[(k, j)] = ring.add(&ring.mul(&x, &h[0][1]), &ring.mul(&y, &h[1][1]));
    }
}

/// Running state with the invariant `p · A0 · q = a`.
struct Work<'r, R: Ring> {
    ring: &'r R,
    a: Matrix<R::Elem>,
    p: Matrix<R::Elem>,
    p_inv: Matrix<R::Elem>,
    q: Matrix<R::Elem>,
    q_inv: Matrix<R::Elem>,
}

impl<'r, R: Ring> Work<'r, R> {
    fn new(ring: &'r R, a: &Matrix<R::Elem>) -> Self {
        let (m, n) = a.shape();
        Work {
            ring,
            a: a.clone(),
            p: Matrix::identity(ring, m),
            p_inv: Matrix::identity(ring, m),
            q: Matrix::identity(ring, n),
            q_inv: Matrix::identity(ring, n),
        }
    }

    fn rows(&mut self, i: usize, j: usize, g: &M2<R::Elem>, g_inv: &M2<R::Elem>) {
        left_rows(self.ring, &mut self.a, i, j, g);
        left_rows(self.ring, &mut self.p, i, j, g);
        right_cols(self.ring, &mut self.p_inv, i, j, g_inv);
    }

    fn cols(&mut self, i: usize, j: usize, h: &M2<R::Elem>, h_inv: &M2<R::Elem>) {
        right_cols(self.ring, &mut self.a, i, j, h);
        right_cols(self.ring, &mut self.q, i, j, h);
        left_rows(self.ring, &mut self.q_inv, i, j, h_inv);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn scale_row(&mut self, i: usize, u: &R::Elem, u_inv: &R::Elem) {
        let ring = self.ring;
        for k in 0..self.a.cols() {
            self.a[(i, k)] = ring.mul(u, &self.a[(i, k)]);
        }
        for k in 0..self.p.cols() {
            self.p[(i, k)] = ring.mul(u, &self.p[(i, k)]);
        }
        for k in 0..self.p_inv.rows() {
            self.p_inv[(k, i)] = ring.mul(&self.p_inv[(k, i)], u_inv);
        }
    }

    /// Moves a nonzero entry of the lower-right block to `(k, k)`.
    fn place_pivot(&mut self, k: usize) -> bool {
        let ring = self.ring;
        if !ring.is_zero(&self.a[(k, k)]) {
            return true;
        }
        let (m, n) = self.a.shape();
        for i in k..m {
            for j in k..n {
                if !ring.is_zero(&self.a[(i, j)]) {
                    self.swap_rows(k, i);
                    self.swap_cols(k, j);
                    return true;
                }
            }
        }
        false
    }

    /// Clears row `k` and column `k` outside the pivot.
    fn clear_cross(&mut self, k: usize) -> Result<()> {
        let ring = self.ring;
        let (m, n) = self.a.shape();
        for _ in 0..SWEEP_CAP {
            for j in k + 1..n {
                let (piv, e) = (self.a[(k, k)].clone(), self.a[(k, j)].clone());
                if ring.is_zero(&e) {
                    continue;
                }
                if let Ok(t) = ring.divide_exact(&e, &piv) {
                    self.cols(k, j, &upper2(ring, ring.neg(&t)), &upper2(ring, t));
                } else {
                    let cr = column_reduce(ring, &piv, &e)?;
                    self.cols(k, j, &cr.q, &cr.q_inv);
                }
            }
            for i in k + 1..m {
                let (piv, e) = (self.a[(k, k)].clone(), self.a[(i, k)].clone());
                if ring.is_zero(&e) {
                    continue;
                }
                if let Ok(t) = ring.divide_exact(&e, &piv) {
                    self.rows(k, i, &lower2(ring, ring.neg(&t)), &lower2(ring, t));
                } else {
                    let cr = column_reduce(ring, &piv, &e)?;
                    self.rows(k, i, &transpose2(&cr.q), &transpose2(&cr.q_inv));
                }
            }
            if (k + 1..n).all(|j| ring.is_zero(&self.a[(k, j)])) {
                return Ok(());
            }
        }
        Err(Error::Internal(format!("pivot {k} did not stabilize")))
    }

    /// Makes `d_i | d_j` for all `i < j` on an already diagonal matrix.
    fn divisibility_chain(&mut self) -> Result<()> {
        let ring = self.ring;
        let r = self.a.rows().min(self.a.cols());
        for i in 0..r {
            for j in i + 1..r {
                let (di, dj) = (self.a[(i, i)].clone(), self.a[(j, j)].clone());
                if ring.divides(&di, &dj) {
                    continue;
                }
                let cert = ring.bezout(&di, &dj)?;
                // [[di, 0], [0, dj]] → [[di, 0], [di, dj]] = g·[[a0, 0], [a0, b0]]
                self.rows(i, j, &lower2(ring, ring.one()), &lower2(ring, ring.neg(&ring.one())));
                let block = m2(&[[cert.a0.clone(), ring.zero()], [cert.a0.clone(), cert.b0.clone()]]);
                let red = reduce_2x2(ring, &block)?.result;
                let to2 = |m: &Matrix<R::Elem>| -> M2<R::Elem> {
                    [[m[(0, 0)].clone(), m[(0, 1)].clone()], [m[(1, 0)].clone(), m[(1, 1)].clone()]]
                };
                self.rows(i, j, &to2(&red.p), &to2(&red.p_inv));
                self.cols(i, j, &to2(&red.q), &to2(&red.q_inv));
            }
        }
        Ok(())
    }

    fn normalize(&mut self) -> Result<()> {
        let ring = self.ring;
        for i in 0..self.a.rows().min(self.a.cols()) {
            let nu = ring.normalizing_unit(&self.a[(i, i)]);
            if ring.is_one(&nu) {
                continue;
            }
            let nu_inv = ring
                .inverse(&nu)
                .ok_or_else(|| Error::Internal(format!("normalizing unit {nu:?} is not invertible")))?;
            self.scale_row(i, &nu, &nu_inv);
        }
        Ok(())
    }

    fn finish(self) -> ReductionResult<R::Elem> {
        ReductionResult {
            p: self.p,
            d: self.a,
            q: self.q,
            p_inv: self.p_inv,
            q_inv: self.q_inv,
            normalized: true,
        }
    }
}

/// Full diagonal reduction with divisibility chain, canonical diagonal
/// entries, and zeros last. `Z/n` is reduced through integer lifts.
pub fn diagonal_reduce<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<ReductionResult<R::Elem>> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::precondition("matrix must have at least one row and one column"));
    }
    if !ring.bezout_total() {
        return Err(Error::Unsupported(format!(
            "diagonal reduction over {}: not every pair has a Bézout certificate",
            ring.descriptor()
        )));
    }
    if ring.modulus().is_some() {
        return reduce_via_lift(ring, a);
    }
    let mut w = Work::new(ring, a);
    for k in 0..a.rows().min(a.cols()) {
        if !w.place_pivot(k) {
            break;
        }
        w.clear_cross(k)?;
    }
    w.divisibility_chain()?;
    w.normalize()?;
    Ok(w.finish())
}

fn reduce_via_lift<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<ReductionResult<R::Elem>> {
    let lift = |e: &R::Elem| {
        ring.lift_residue(e)
            .ok_or_else(|| Error::Internal(format!("no integer lift for {e:?}")))
    };
    let data = a.entries().iter().map(lift).collect::<Result<Vec<BigInt>>>()?;
    let lifted = Matrix::from_vec(a.rows(), a.cols(), data)?;
    let r = diagonal_reduce(&Integers::<BigInt>::new(), &lifted)?;
    let down = |m: &Matrix<BigInt>| m.map(|x| ring.from_bigint(x));
    let mut w = Work {
        ring,
        a: down(&r.d),
        p: down(&r.p),
        p_inv: down(&r.p_inv),
        q: down(&r.q),
        q_inv: down(&r.q_inv),
    };
    w.normalize()?;
    Ok(w.finish())
}

/// First failed certificate condition, or `None` when `r` certifies `a`.
pub fn reduction_defect<R: Ring>(ring: &R, a: &Matrix<R::Elem>, r: &ReductionResult<R::Elem>) -> Option<String> {
    let (m, n) = a.shape();
    let shapes = [
        ("P", r.p.shape(), (m, m)),
        ("Pinv", r.p_inv.shape(), (m, m)),
        ("Q", r.q.shape(), (n, n)),
        ("Qinv", r.q_inv.shape(), (n, n)),
        ("D", r.d.shape(), (m, n)),
    ];
    for (name, got, want) in shapes {
        if got != want {
            return Some(format!("{name} is {}x{}, expected {}x{}", got.0, got.1, want.0, want.1));
        }
    }
    let prod = |x: &Matrix<R::Elem>, y: &Matrix<R::Elem>| matmul(ring, x, y).expect("shapes checked");
    if prod(&prod(&r.p, a), &r.q) != r.d {
        return Some("P·A·Q differs from D".into());
    }
    if !is_identity(ring, &prod(&r.p, &r.p_inv)) || !is_identity(ring, &prod(&r.p_inv, &r.p)) {
        return Some("Pinv is not the inverse of P".into());
    }
    if !is_identity(ring, &prod(&r.q, &r.q_inv)) || !is_identity(ring, &prod(&r.q_inv, &r.q)) {
        return Some("Qinv is not the inverse of Q".into());
    }
    if !is_diagonal(ring, &r.d) {
        return Some("D is not diagonal".into());
    }
    let diag = r.d.diagonal_entries();
    for (i, pair) in diag.windows(2).enumerate() {
        if !ring.divides(&pair[0], &pair[1]) {
            return Some(format!("d{} does not divide d{}", i + 1, i + 2));
        }
    }
    if r.normalized {
        if let Some(i) = diag.iter().position(|d| ring.canonical(d) != *d) {
            return Some(format!("d{} is not a canonical associate", i + 1));
        }
    }
    None
}

pub fn verify_reduction<R: Ring>(ring: &R, a: &Matrix<R::Elem>, r: &ReductionResult<R::Elem>) -> bool {
    reduction_defect(ring, a, r).is_none()
}

//! Temperley-Lieb diagram algebra `TL_m(δ)`.
//!
//! A diagram on `m` strands pairs `2m` boundary points: bottom points
//! `0..m` left to right, top points `m..2m` left to right. The product `a·b`
//! stacks `a` on top of `b`; every closed loop contributes a factor `δ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_STRANDS: usize = 16;

/// Residual tolerance for the Jones projection relations at irrational `δ`.
pub const RELATION_TOL: f64 = 1e-10;

/// Residual tolerance for Jones-Wenzl idempotence and annihilation.
pub const JW_TOL: f64 = 1e-9;

/// Below this magnitude a float quantum integer counts as zero.
const SINGULAR_TOL: f64 = 1e-9;

/// Float coefficients below this magnitude are dropped from elements.
const PRUNE_TOL: f64 = 1e-14;

/// Coefficient field of a diagram algebra.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Pruning test for stored coefficients.
    fn negligible(&self) -> bool;
    /// Whether a quantum integer should be treated as zero.
    fn vanishes(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn negligible(&self) -> bool {
        self.abs() < PRUNE_TOL
    }
    fn vanishes(&self) -> bool {
        self.abs() < SINGULAR_TOL
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn to_f64(&self) -> f64 {
        self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
    }
}

/// A noncrossing perfect matching of the `2m` boundary points, stored as an
/// involution without fixed points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLDiagram {
    m: usize,
    pairing: Vec<u8>,
}

/// Position of boundary point `p` when walking the disk boundary: bottom left
/// to right, then top right to left.
fn cyclic_pos(m: usize, p: usize) -> usize {
    if p < m {
        p
    } else {
        3 * m - 1 - p
    }
}

fn point_at(m: usize, pos: usize) -> usize {
    if pos < m {
        pos
    } else {
        3 * m - 1 - pos
    }
}

impl TLDiagram {
    pub fn new(m: usize, pairing: Vec<usize>) -> Result<Self> {
        if m > MAX_STRANDS {
            return Err(Error::TooManyStrands(m));
        }
        if pairing.len() != 2 * m {
            return Err(Error::InvalidDiagram(format!(
                "{} entries for {m} strands",
                pairing.len()
            )));
        }
        for (p, &q) in pairing.iter().enumerate() {
            if q >= 2 * m || q == p || pairing[q] != p {
                return Err(Error::InvalidDiagram(format!("point {p} is not properly paired")));
            }
        }
        // Parenthesis matching along the boundary.
        let mut stack = Vec::new();
        for pos in 0..2 * m {
            let p = point_at(m, pos);
            let partner = cyclic_pos(m, pairing[p]);
            if partner > pos {
                stack.push(pos);
            } else if stack.pop() != Some(partner) {
                return Err(Error::InvalidDiagram("pairs cross".into()));
            }
        }
        Ok(Self {
            m,
            pairing: pairing.into_iter().map(|q| q as u8).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        let pairing = (0..2 * m).map(|p| ((p + m) % (2 * m)) as u8).collect();
        Self { m, pairing }
    }

    /// The cup-cap `U_i` joining strands `i, i+1` (1-based) at top and bottom.
    pub fn cup_cap(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= m {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: m.saturating_sub(1),
            });
        }
        let mut d = Self::identity(m);
        let (a, b) = (i - 1, i);
        d.pairing[a] = b as u8;
        d.pairing[b] = a as u8;
        d.pairing[m + a] = (m + b) as u8;
        d.pairing[m + b] = (m + a) as u8;
        Ok(d)
    }

    pub fn strands(&self) -> usize {
        self.m
    }

    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p] as usize
    }

    /// Pairs `(p, q)` with `p < q`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.m)
            .filter(|&p| p < self.partner(p))
            .map(|p| (p, self.partner(p)))
            .collect()
    }

    /// Number of strands joining bottom to top.
    pub fn through_strands(&self) -> usize {
        (0..self.m).filter(|&p| self.partner(p) >= self.m).count()
    }

    /// `self` stacked on top of `below`; returns the product diagram and the
    /// number of closed loops.
    pub fn compose(&self, below: &Self) -> (Self, usize) {
        let m = self.m;
        debug_assert_eq!(m, below.m);
        let a = &self.pairing;
        let b = &below.pairing;
        let mut seen = vec![false; m];
        let mut out = vec![0u8; 2 * m];
        // Walk from an outer point; `on_top` means inside `self`.
        let walk = |mut on_top: bool, mut p: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                if on_top {
                    let q = a[p] as usize;
                    if q >= m {
                        return q;
                    }
                    seen[q] = true;
                    on_top = false;
                    p = m + q;
                } else {
                    let q = b[p] as usize;
                    if q < m {
                        return q;
                    }
                    seen[q - m] = true;
                    on_top = true;
                    p = q - m;
                }
            }
        };
        for i in 0..m {
            out[i] = walk(false, i, &mut seen) as u8;
            out[m + i] = walk(true, m + i, &mut seen) as u8;
        }
        let mut loops = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut j = start;
            loop {
                seen[j] = true;
                let q = a[j] as usize;
                seen[q] = true;
                let r = b[m + q] as usize - m;
                if r == start {
                    break;
                }
                j = r;
            }
        }
        (Self { m, pairing: out }, loops)
    }

    /// Adds `left` vertical strands on the left and `right` on the right.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let m = self.m;
        let n = m + left + right;
        let map = |p: usize| if p < m { left + p } else { n + left + (p - m) };
        let mut pairing = vec![0u8; 2 * n];
        for t in (0..left).chain(m + left..n) {
            pairing[t] = (n + t) as u8;
            pairing[n + t] = t as u8;
        }
        for p in 0..2 * m {
            pairing[map(p)] = map(self.partner(p)) as u8;
        }
        Self { m: n, pairing }
    }

    /// Reflection through the horizontal axis (the `*`-involution).
    pub fn flip(&self) -> Self {
        let m = self.m;
        let swap = |p: usize| if p < m { p + m } else { p - m };
        let mut pairing = vec![0u8; 2 * m];
        for p in 0..2 * m {
            pairing[swap(p)] = swap(self.partner(p)) as u8;
        }
        Self { m, pairing }
    }

    /// Loops formed by joining each top point to the bottom point below it.
    pub fn closure_loops(&self) -> usize {
        let m = self.m;
        let mut seen = vec![false; 2 * m];
        let mut loops = 0;
        for start in 0..2 * m {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let q = self.partner(p);
                seen[q] = true;
                p = if q < m { q + m } else { q - m };
            }
        }
        loops
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: usize| {
            if p < self.m {
                format!("b{}", p + 1)
            } else {
                format!("t{}", p - self.m + 1)
            }
        };
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(p, q)| format!("{}-{}", name(p), name(q)))
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Visits every diagram on `m` strands by depth-first generation of balanced
/// boundary words.
pub fn for_each_diagram(m: usize, mut f: impl FnMut(&TLDiagram)) -> Result<()> {
    if m > MAX_STRANDS {
        return Err(Error::TooManyStrands(m));
    }
    fn rec(
        m: usize,
        pos: usize,
        opened: usize,
        stack: &mut Vec<usize>,
        pairing: &mut Vec<u8>,
        f: &mut dyn FnMut(&TLDiagram),
    ) {
        if pos == 2 * m {
            f(&TLDiagram {
                m,
                pairing: pairing.clone(),
            });
            return;
        }
        if opened < m {
            stack.push(pos);
            rec(m, pos + 1, opened + 1, stack, pairing, f);
            stack.pop();
        }
        if let Some(open) = stack.pop() {
            let (p, q) = (point_at(m, open), point_at(m, pos));
            pairing[p] = q as u8;
            pairing[q] = p as u8;
            rec(m, pos + 1, opened, stack, pairing, f);
            stack.push(open);
        }
    }
    let mut pairing = vec![0u8; 2 * m];
    rec(m, 0, 0, &mut Vec::with_capacity(m), &mut pairing, &mut f);
    Ok(())
}

/// Every diagram on `m` strands in enumeration order.
pub fn all_diagrams(m: usize) -> Result<Vec<TLDiagram>> {
    let mut out = Vec::new();
    for_each_diagram(m, |d| out.push(d.clone()))?;
    Ok(out)
}

/// Dimension of `TL_m` counted by enumerating its diagram basis.
pub fn tl_dim(m: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_diagram(m, |_| count += 1)?;
    Ok(count)
}

/// A linear combination of diagrams on a fixed number of strands.
#[derive(Debug, Clone, PartialEq)]
pub struct TLElement<S> {
    m: usize,
    delta: S,
    terms: BTreeMap<TLDiagram, S>,
}

impl<S: Scalar> TLElement<S> {
    pub fn zero(m: usize, delta: S) -> Self {
        Self {
            m,
            delta,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize, delta: S) -> Self {
        Self::from_diagram(TLDiagram::identity(m), S::one(), delta)
    }

    pub fn from_diagram(d: TLDiagram, coeff: S, delta: S) -> Self {
        let mut e = Self::zero(d.strands(), delta);
        e.accumulate(d, coeff);
        e
    }

    pub fn strands(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> &S {
        &self.delta
    }

    pub fn terms(&self) -> &BTreeMap<TLDiagram, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> S {
        self.terms.get(d).cloned().unwrap_or_else(S::zero)
    }

    fn accumulate(&mut self, d: TLDiagram, c: S) {
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.negligible() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.negligible() {
                    v.insert(c);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::StrandMismatch(self.m, other.m));
        }
        if self.delta != other.delta {
            return Err(Error::LoopParameterMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::from_i64(-1)))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.m, self.delta.clone());
        for (d, c) in &self.terms {
            out.accumulate(d.clone(), c.clone() * s.clone());
        }
        out
    }

    /// `self · other` with `self` on top.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut powers = vec![S::one()];
        for i in 0..=self.m {
            powers.push(powers[i].clone() * self.delta.clone());
        }
        let mut out = Self::zero(self.m, self.delta.clone());
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let (d, loops) = da.compose(db);
                out.accumulate(d, ca.clone() * cb.clone() * powers[loops].clone());
            }
        }
        Ok(out)
    }

    /// Adds vertical strands on either side of every diagram.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let mut out = Self::zero(self.m + left + right, self.delta.clone());
        for (d, c) in &self.terms {
            out.accumulate(d.embed(left, right), c.clone());
        }
        out
    }

    /// Unnormalized Markov trace: each diagram counts `δ^{loops of its closure}`.
    pub fn trace(&self) -> S {
        let mut total = S::zero();
        for (d, c) in &self.terms {
            let mut p = S::one();
            for _ in 0..d.closure_loops() {
                p = p * self.delta.clone();
            }
            total = total + c.clone() * p;
        }
        total
    }

    /// Largest coefficient magnitude; zero for the zero element.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// `max |coeff|` of `self − other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs_coeff())
    }
}

impl TLElement<BigRational> {
    pub fn is_exactly_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Exact coefficients rounded to floats.
    pub fn to_f64(&self) -> TLElement<f64> {
        let mut out = TLElement::zero(self.m, Scalar::to_f64(&self.delta));
        for (d, c) in &self.terms {
            out.accumulate(d.clone(), Scalar::to_f64(c));
        }
        out
    }
}

/// `a · b`.
pub fn multiply<S: Scalar>(a: &TLElement<S>, b: &TLElement<S>) -> Result<TLElement<S>> {
    a.multiply(b)
}

/// The Jones projection `e_i = δ⁻¹ U_i` in `TL_m(δ)`.
pub fn jones_projection<S: Scalar>(i: usize, m: usize, delta: S) -> Result<TLElement<S>> {
    if delta.negligible() {
        return Err(Error::ZeroLoopParameter);
    }
    if m > MAX_STRANDS {
        return Err(Error::TooManyStrands(m));
    }
    let d = TLDiagram::cup_cap(m, i)?;
    let c = S::one() / delta.clone();
    Ok(TLElement::from_diagram(d, c, delta))
}

/// `[0], [1], ..., [n]` with `[0] = 0`, `[1] = 1`, `[j+1] = δ[j] − [j−1]`.
pub fn quantum_integers<S: Scalar>(delta: &S, n: usize) -> Vec<S> {
    let mut q = vec![S::zero(), S::one()];
    for j in 1..n {
        let next = delta.clone() * q[j].clone() - q[j - 1].clone();
        q.push(next);
    }
    q.truncate(n + 1);
    q
}

/// The loop parameter `δ_k = 2cos(π/(k+2))`.
pub fn loop_parameter(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::LevelTooSmall(k as i64));
    }
    Ok(2.0 * (std::f64::consts::PI / (k as f64 + 2.0)).cos())
}

/// The Jones-Wenzl idempotent `JW_p ∈ TL_p(δ)` by the Wenzl recursion
/// `JW_q = JW_{q−1} − ([q−1]/[q]) JW_{q−1} U_{q−1} JW_{q−1}`.
pub fn jones_wenzl<S: Scalar>(p: usize, delta: S) -> Result<TLElement<S>> {
    if p == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: MAX_STRANDS });
    }
    if p > MAX_STRANDS {
        return Err(Error::TooManyStrands(p));
    }
    if delta.negligible() {
        return Err(Error::ZeroLoopParameter);
    }
    let q = quantum_integers(&delta, p);
    if let Some(j) = (2..=p).find(|&j| q[j].vanishes()) {
        return Err(Error::SingularQuantumInteger(j));
    }
    let mut jw = TLElement::identity(1, delta.clone());
    for n in 2..=p {
        let prev = jw.embed(0, 1);
        let u = TLElement::from_diagram(TLDiagram::cup_cap(n, n - 1)?, S::one(), delta.clone());
        let sandwich = prev.multiply(&u)?.multiply(&prev)?;
        let c = q[n - 1].clone() / q[n].clone();
        jw = prev.sub(&sandwich.scale(&c))?;
    }
    Ok(jw)
}

/// Dimension of the semisimple quotient of `TL_m(δ_k)`: the sum over vertices
/// `v` of the `A_{k+1}` graph of (length-`m` walks from the end vertex to `v`)².
pub fn semisimple_dims(k: usize, m: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::LevelTooSmall(k as i64));
    }
    let n = k + 1;
    let mut w = vec![BigUint::zero(); n];
    w[0] = BigUint::from(1u32);
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); n];
        for v in 0..n {
            if w[v].is_zero() {
                continue;
            }
            if v > 0 {
                next[v - 1] += &w[v];
            }
            if v + 1 < n {
                next[v + 1] += &w[v];
            }
        }
        w = next;
    }
    Ok(w.iter().map(|c| c * c).sum())
}

/// Noncommutative polynomial in the Jones projections: word `[i1, .., ir]`
/// stands for `e_{i1} ⋯ e_{ir}` (1-based indices).
pub type WordPoly = BTreeMap<Vec<usize>, f64>;

/// `JW_p` written as a polynomial in `e_1, .., e_{p−1}` via the Wenzl recursion.
pub fn jones_wenzl_words(p: usize, delta: f64) -> Result<WordPoly> {
    let q = quantum_integers(&delta, p);
    if let Some(j) = (2..=p).find(|&j| q[j].vanishes()) {
        return Err(Error::SingularQuantumInteger(j));
    }
    let mut jw: WordPoly = BTreeMap::from([(vec![], 1.0)]);
    for n in 2..=p {
        // U_{n-1} = δ e_{n-1}
        let c = delta * q[n - 1] / q[n];
        let mut next = jw.clone();
        for (wa, ca) in &jw {
            for (wb, cb) in &jw {
                let mut w = wa.clone();
                w.push(n - 1);
                w.extend_from_slice(wb);
                *next.entry(w).or_insert(0.0) -= c * ca * cb;
            }
        }
        next.retain(|_, c| c.abs() >= PRUNE_TOL);
        jw = next;
    }
    Ok(jw)
}

/// Applies an index shift to every generator of every word.
pub fn shift_words(poly: &WordPoly, by: isize) -> WordPoly {
    poly.iter()
        .map(|(w, &c)| (w.iter().map(|&i| (i as isize + by) as usize).collect(), c))
        .collect()
}

/// Evaluates a word polynomial in `TL_m(δ)`.
pub fn evaluate_words(poly: &WordPoly, m: usize, delta: f64) -> Result<TLElement<f64>> {
    let mut out = TLElement::zero(m, delta);
    for (w, &c) in poly {
        let mut d = TLDiagram::identity(m);
        let mut coeff = c;
        for &i in w {
            let (next, loops) = d.compose(&TLDiagram::cup_cap(m, i)?);
            d = next;
            coeff *= delta.powi(loops as i32) / delta;
        }
        out.accumulate(d, coeff);
    }
    Ok(out)
}

/// Outcome of the Jones-Wenzl part of [`kw_shift_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JwShiftCheck {
    /// The projector is `JW_p` with `p = k + 1`.
    pub p: usize,
    /// Words in the generator expansion, when it was carried out.
    pub words: Option<usize>,
    /// Distance between the shifted word expansion and the shifted diagram.
    pub symbolic_residual: Option<f64>,
    pub annihilation_residual: f64,
    pub idempotence_residual: f64,
    /// Markov trace of the shifted projector (`[k+2] = 0` at level `k`).
    pub trace: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KwShiftReport {
    pub k: usize,
    pub m: usize,
    pub delta: f64,
    pub relations_checked: usize,
    pub relation_residual: f64,
    pub relations_ok: bool,
    pub jw: Option<JwShiftCheck>,
    pub hamiltonian_symbolic_ok: bool,
    pub hamiltonian_residual: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Largest projector treated by [`kw_shift_check`].
const KW_MAX_JW: usize = 8;

/// Largest projector expanded into generator words.
const KW_MAX_JW_WORDS: usize = 5;

/// Checks the shift `e_i ↦ e_{i−1}` (`2 ≤ i ≤ m−1`) on the window `TL_m(δ_k)`.
pub fn kw_shift_check(k: usize, m: usize) -> Result<KwShiftReport> {
    if m < 4 {
        return Err(Error::WindowTooSmall(format!("m = {m}, need m ≥ 4")));
    }
    if m > MAX_STRANDS {
        return Err(Error::TooManyStrands(m));
    }
    let delta = loop_parameter(k)?;
    let e: Vec<TLElement<f64>> = std::iter::once(TLElement::zero(m, delta))
        .chain((1..m).map(|i| jones_projection(i, m, delta).expect("valid index")))
        .collect();
    let alpha = |i: usize| &e[i - 1];
    let inv_d2 = 1.0 / (delta * delta);
    let mut notes = Vec::new();

    // Defining relations, evaluated on the generators and on their images.
    let mut relations_checked = 0;
    let mut relation_residual = 0.0f64;
    let relation = |x: &TLElement<f64>, y: &TLElement<f64>, dist: usize| -> Result<f64> {
        let r = match dist {
            0 => x.multiply(x)?.distance(x)?,
            1 => x.multiply(y)?.multiply(x)?.distance(&x.scale(&inv_d2))?,
            _ => x.multiply(y)?.distance(&y.multiply(x)?)?,
        };
        Ok(r)
    };
    for i in 2..m {
        for j in 2..m {
            let dist = i.abs_diff(j);
            if dist == 0 && j != i {
                continue;
            }
            let source = relation(&e[i], &e[j], dist)?;
            let image = relation(alpha(i), alpha(j), dist)?;
            relation_residual = relation_residual.max(source).max(image);
            relations_checked += 1;
        }
    }
    let relations_ok = relation_residual <= RELATION_TOL;

    let p = k + 1;
    let jw = if p + 1 > m {
        notes.push(format!("JW_{p} on strands 2..{} does not fit in {m} strands", p + 1));
        None
    } else if p > KW_MAX_JW {
        notes.push(format!("JW_{p} exceeds the projector size handled here"));
        None
    } else {
        Some(kw_jw_check(p, m, delta, &e)?)
    };
    if jw.as_ref().is_some_and(|j| j.words.is_none()) {
        notes.push(format!("JW_{p} not expanded into generator words"));
    }

    // H_{J,h} = −J Σ_{i even} e_i − h Σ_{i odd} e_i as coefficients on (J, h).
    let h_coeff = |i: usize, swap: bool| -> (i32, i32) {
        match (i % 2 == 0) ^ swap {
            true => (-1, 0),
            false => (0, -1),
        }
    };
    let image: BTreeMap<usize, (i32, i32)> = (2..m).map(|i| (i - 1, h_coeff(i, false))).collect();
    let swapped: BTreeMap<usize, (i32, i32)> = (1..m - 1).map(|j| (j, h_coeff(j, true))).collect();
    let hamiltonian_symbolic_ok = image == swapped;
    let (cj, ch) = (0.7, 1.3);
    let eval = |coeffs: &BTreeMap<usize, (i32, i32)>| -> Result<TLElement<f64>> {
        let mut acc = TLElement::zero(m, delta);
        for (&j, &(a, b)) in coeffs {
            acc = acc.add(&e[j].scale(&(a as f64 * cj + b as f64 * ch)))?;
        }
        Ok(acc)
    };
    let hamiltonian_residual = eval(&image)?.distance(&eval(&swapped)?)?;

    let passed = relations_ok
        && jw.as_ref().is_none_or(|j| j.passed)
        && hamiltonian_symbolic_ok
        && hamiltonian_residual <= RELATION_TOL;
    Ok(KwShiftReport {
        k,
        m,
        delta,
        relations_checked,
        relation_residual,
        relations_ok,
        jw,
        hamiltonian_symbolic_ok,
        hamiltonian_residual,
        passed,
        notes,
    })
}

fn kw_jw_check(p: usize, m: usize, delta: f64, e: &[TLElement<f64>]) -> Result<JwShiftCheck> {
    let base = jones_wenzl(p, delta)?;
    // Source projector on strands 2..p+1, image on strands 1..p.
    let source = base.embed(1, m - p - 1);
    let image = base.embed(0, m - p);

    let (words, symbolic_residual) = if p <= KW_MAX_JW_WORDS {
        let w = jones_wenzl_words(p, delta)?;
        let src_words = shift_words(&w, 1);
        let img_words = shift_words(&src_words, -1);
        let r1 = evaluate_words(&src_words, m, delta)?.distance(&source)?;
        let r2 = evaluate_words(&img_words, m, delta)?.distance(&image)?;
        (Some(w.len()), Some(r1.max(r2)))
    } else {
        (None, None)
    };

    let mut annihilation_residual = 0.0f64;
    for j in 1..p {
        for (proj, g) in [(&source, &e[j + 1]), (&image, &e[j])] {
            annihilation_residual = annihilation_residual
                .max(g.multiply(proj)?.max_abs_coeff())
                .max(proj.multiply(g)?.max_abs_coeff());
        }
    }
    let idempotence_residual = source
        .multiply(&source)?
        .distance(&source)?
        .max(image.multiply(&image)?.distance(&image)?);
    // Trace inside TL_p, where it equals [p+1].
    let trace = base.trace();
    let passed = annihilation_residual <= JW_TOL
        && idempotence_residual <= JW_TOL
        && trace.abs() <= JW_TOL
        && symbolic_residual.is_none_or(|r| r <= JW_TOL);
    Ok(JwShiftCheck {
        p,
        words,
        symbolic_residual,
        annihilation_residual,
        idempotence_residual,
        trace,
        passed,
    })
}

/// `Catalan(m)` for tests and callers that want the closed form.
pub fn catalan(m: u64) -> BigUint {
    // C(m) = (2m)! / (m! (m+1)!)
    let mut c = BigUint::from(1u32);
    for i in 0..m {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

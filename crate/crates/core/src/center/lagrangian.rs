use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::{AbelianGroup, MetricGroup, Subgroup};
use crate::error::{Error, Result};

/// Largest metric group order accepted by [`enumerate_lagrangians`].
pub const MAX_ENUMERATION_ORDER: usize = 10_000;

/// An isotropic subgroup of order `√|M|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Lagrangian {
    pub subgroup: Subgroup,
    pub order: usize,
    /// Identifies the ambient metric group (its cyclic factors).
    #[serde(skip)]
    pub(crate) ambient: Vec<u64>,
}

impl Lagrangian {
    pub fn elements(&self) -> &[usize] {
        &self.subgroup.elements
    }

    pub fn ambient_factors(&self) -> &[u64] {
        &self.ambient
    }

    /// Wraps a subgroup after checking `|L|² = |M|` and `q|_L = 0`.
    pub fn new(m: &MetricGroup, subgroup: Subgroup) -> Result<Self> {
        if subgroup.order() * subgroup.order() != m.order() {
            return Err(Error::InvalidSubgroup(format!(
                "order {} is not the square root of {}",
                subgroup.order(),
                m.order()
            )));
        }
        if let Some(&x) = subgroup.elements.iter().find(|&&x| m.q(x) != 0) {
            return Err(Error::InvalidSubgroup(format!(
                "q does not vanish at {}",
                m.group().format_element(x)
            )));
        }
        Ok(Self {
            order: subgroup.order(),
            subgroup,
            ambient: m.group().factors().to_vec(),
        })
    }

    /// Short name, e.g. `1+e` in the toric code.
    pub fn display(&self, m: &MetricGroup) -> String {
        if m.is_toric_code() {
            self.elements()
                .iter()
                .map(|&x| m.element_name(x))
                .collect::<Vec<_>>()
                .join("+")
        } else {
            let parts: Vec<String> = self
                .elements()
                .iter()
                .map(|&x| m.group().format_element(x))
                .collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

/// All Lagrangian subgroups of `m`, sorted by element list.
///
/// Breadth-first over isotropic subgroups: a subgroup `S` is extended by `x`
/// only when `q(x) = 0` and `b(x, s) = 0` for every generator `s` of `S`,
/// which keeps `<S, x>` isotropic.
pub fn enumerate_lagrangians(m: &MetricGroup) -> Result<Vec<Lagrangian>> {
    let n = m.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::GroupTooLarge(format!(
            "|M| = {n} exceeds {MAX_ENUMERATION_ORDER}"
        )));
    }
    let target = (n as f64).sqrt().round() as usize;
    if target * target != n {
        return Ok(vec![]);
    }
    let group = m.group();
    let isotropic: Vec<usize> = (1..n).filter(|&x| m.q(x) == 0).collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], vec![])];
    seen.insert(vec![0]);
    if target == 1 {
        found.push(vec![0]);
        frontier.clear();
    }
    let mut member = vec![false; n];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (elems, gens) in &frontier {
            member.iter_mut().for_each(|b| *b = false);
            for &e in elems {
                member[e] = true;
            }
            for &x in &isotropic {
                if member[x] || gens.iter().any(|&g| m.b(x, g) != 0) {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(x);
                let span = group.span(&new_gens);
                if !seen.insert(span.clone()) {
                    continue;
                }
                if span.len() == target {
                    found.push(span);
                } else {
                    next.push((span, new_gens));
                }
            }
        }
        frontier = next;
    }
    found.sort();
    found
        .into_iter()
        .map(|elements| Lagrangian::new(m, Subgroup::from_elements_unchecked(group, elements)))
        .collect()
}

/// A bicharacter `H × H → Q/Z`, stored as numerators over the exponent of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    subgroup: Subgroup,
    denom: u64,
    table: Vec<u64>,
}

impl Bicharacter {
    pub fn trivial(g: &AbelianGroup, h: &Subgroup) -> Self {
        let k = h.order();
        Self {
            subgroup: h.clone(),
            denom: g.exponent(),
            table: vec![0; k * k],
        }
    }

    /// `table[i * |H| + j]` is the numerator of `b(h_i, h_j)` over `exponent(G)`,
    /// with `h_i` the `i`-th element of `h` in sorted order.
    pub fn from_table(g: &AbelianGroup, h: &Subgroup, table: Vec<u64>) -> Result<Self> {
        let k = h.order();
        if table.len() != k * k {
            return Err(Error::NotBicharacter(format!(
                "table has {} entries, expected {}",
                table.len(),
                k * k
            )));
        }
        let denom = g.exponent();
        let b = Self {
            subgroup: h.clone(),
            denom,
            table: table.into_iter().map(|v| v % denom).collect(),
        };
        b.check_biadditive(g)?;
        Ok(b)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn denominator(&self) -> u64 {
        self.denom
    }

    fn pos(&self, x: usize) -> usize {
        self.subgroup
            .elements
            .binary_search(&x)
            .expect("element of H")
    }

    /// Numerator of `b(x, y)` for `x, y ∈ H`.
    pub fn value(&self, x: usize, y: usize) -> u64 {
        let k = self.subgroup.order();
        self.table[self.pos(x) * k + self.pos(y)]
    }

    fn check_biadditive(&self, g: &AbelianGroup) -> Result<()> {
        let d = self.denom;
        let els = &self.subgroup.elements;
        for &x in els {
            for &y in els {
                let s = g.add(x, y);
                for &z in els {
                    if self.value(s, z) != (self.value(x, z) + self.value(y, z)) % d
                        || self.value(z, s) != (self.value(z, x) + self.value(z, y)) % d
                    {
                        return Err(Error::NotBicharacter(format!(
                            "additivity fails at ({}, {}, {})",
                            g.format_element(x),
                            g.format_element(y),
                            g.format_element(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternating: `b(h, h) = 0` for all `h` (hence `b(h,k) b(k,h) = 1`).
    pub fn is_antisymmetric(&self) -> bool {
        self.subgroup.elements.iter().all(|&x| self.value(x, x) == 0)
    }
}

/// All alternating bicharacters on `h`, from value tables on a cyclic basis.
/// Their number is `Π_{i<j} gcd(o_i, o_j)`.
pub fn antisymmetric_bicharacters(g: &AbelianGroup, h: &Subgroup) -> Result<Vec<Bicharacter>> {
    let basis = h.cyclic_basis(g)?;
    let r = basis.len();
    let denom = g.exponent();

    // Coordinates of every element of H in the basis.
    let mut coords = vec![vec![0u64; r]; h.order()];
    let total: u64 = basis.iter().map(|b| b.1).product();
    for t in 0..total {
        let mut rem = t;
        let mut c = vec![0u64; r];
        let mut elem = 0usize;
        for (i, &(gen, ord)) in basis.iter().enumerate() {
            c[i] = rem % ord;
            rem /= ord;
            elem = g.add(elem, g.scale(gen, c[i]));
        }
        let pos = h.elements.binary_search(&elem).expect("basis spans H");
        coords[pos] = c;
    }

    let pairs: Vec<(usize, usize, u64)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, basis[i].1.gcd(&basis[j].1)))
        .collect();
    let count: u64 = pairs.iter().map(|p| p.2).product();

    let k = h.order();
    let mut out = Vec::with_capacity(count as usize);
    for t in 0..count {
        // values[i][j] = numerator of b(h_i, h_j) over denom.
        let mut values = vec![vec![0u64; r]; r];
        let mut rem = t;
        for &(i, j, gij) in &pairs {
            let c = rem % gij;
            rem /= gij;
            let v = c * (denom / gij) % denom;
            values[i][j] = v;
            values[j][i] = (denom - v) % denom;
        }
        let mut table = vec![0u64; k * k];
        for x in 0..k {
            for y in 0..k {
                let mut acc: u128 = 0;
                for i in 0..r {
                    for j in 0..r {
                        acc += coords[x][i] as u128 * coords[y][j] as u128 * values[i][j] as u128;
                    }
                }
                table[x * k + y] = (acc % denom as u128) as u64;
            }
        }
        out.push(Bicharacter::from_table(g, h, table)?);
    }
    Ok(out)
}

/// `L_(H,b) = {(φ, h) : h ∈ H, φ|_H = b(h, ·)}` inside the center of `Vec(G)`.
pub fn lagrangian_from_pair(m: &MetricGroup, h: &Subgroup, b: &Bicharacter) -> Result<Lagrangian> {
    let g = m
        .base()
        .ok_or_else(|| Error::InvalidMetricGroup("not the center of a pointed category".into()))?;
    if b.subgroup() != h {
        return Err(Error::NotBicharacter("defined on a different subgroup".into()));
    }
    if b.denominator() != g.exponent() {
        return Err(Error::NotBicharacter("denominator does not match exponent(G)".into()));
    }
    b.check_biadditive(g)?;
    if !b.is_antisymmetric() {
        return Err(Error::NotAntisymmetric("b(h, h) != 1 for some h".into()));
    }
    if let Some(&x) = h.elements.iter().find(|&&x| x >= g.order()) {
        return Err(Error::InvalidSubgroup(format!("element {x} not in G")));
    }
    let d = g.exponent();
    let t = g.rank();
    let big = m.group();
    let pairing = |a: &[u64], k: &[u64]| -> u64 {
        let mut acc: u128 = 0;
        for i in 0..t {
            acc += a[i] as u128 * k[i] as u128 * (d / g.factors()[i]) as u128;
        }
        (acc % d as u128) as u64
    };
    let gens: Vec<(usize, Vec<u64>)> = h.generators.iter().map(|&k| (k, g.decode(k))).collect();
    let mut elements = Vec::new();
    for phi in 0..g.order() {
        let a = g.decode(phi);
        for &hh in &h.elements {
            if gens.iter().all(|(k, kv)| pairing(&a, kv) == b.value(hh, *k)) {
                let mut v = a.clone();
                v.extend(g.decode(hh));
                elements.push(big.encode(&v));
            }
        }
    }
    elements.sort_unstable();
    Lagrangian::new(m, Subgroup::from_elements_unchecked(big, elements))
}

impl fmt::Display for Lagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{:?}", self.subgroup.elements)
    }
}

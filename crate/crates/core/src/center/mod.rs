//! Drinfeld centers of pointed categories modelled as metric groups.
//!
//! Elements of a finite abelian group `⊕ Z/m_i` are addressed by their
//! mixed-radix index (first factor most significant), so index order equals
//! lexicographic order of residue tuples. All values of the quadratic form
//! are exact: `q(x)` is stored as a numerator over the group exponent.

mod boundaries;
mod duality;
mod lagrangian;

pub use boundaries::{
    boundary_count_group, orbit_fixed_point_forced, BoundaryCount, FiniteGroup, SubgroupClass,
};
pub use duality::{anomaly_verdict, ty_duality_auto, AnomalyVerdict, CenterAutomorphism};
pub use lagrangian::{
    antisymmetric_bicharacters, enumerate_lagrangians, lagrangian_from_pair, Bicharacter,
    Lagrangian, MAX_ENUMERATION_ORDER,
};

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// `⊕ Z/m_i` with every `m_i ≥ 2`; the empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    /// Factors equal to 1 are dropped; a factor of 0 is rejected.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::EmptyGroup("cyclic factor 0".into()));
        }
        let factors: Vec<u64> = factors.iter().copied().filter(|&m| m > 1).collect();
        factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= 1 << 24)
            .ok_or_else(|| Error::GroupTooLarge(format!("{factors:?}")))?;
        Ok(Self { factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &m| acc.lcm(&m))
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (i, &m) in self.factors.iter().enumerate().rev() {
            out[i] = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        out
    }

    /// Index of a residue tuple; coordinates are reduced modulo their factor.
    pub fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    /// Index of a signed residue tuple.
    pub fn encode_signed(&self, v: &[i64]) -> usize {
        v.iter().zip(&self.factors).fold(0usize, |acc, (&x, &m)| {
            acc * m as usize + x.rem_euclid(m as i64) as usize
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut idx = 0usize;
        let mut ra = a;
        let mut rb = b;
        let mut place = 1usize;
        for &m in self.factors.iter().rev() {
            let m = m as usize;
            let s = (ra % m + rb % m) % m;
            idx += s * place;
            place *= m;
            ra /= m;
            rb /= m;
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let v = self.decode(a);
        let n: Vec<u64> = v
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.encode(&n)
    }

    pub fn scale(&self, a: usize, k: u64) -> usize {
        let v = self.decode(a);
        let n: Vec<u64> = v
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| ((x as u128 * k as u128) % m as u128) as u64)
            .collect();
        self.encode(&n)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| m / x.gcd(&m))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Index of the `i`-th standard generator.
    pub fn generator(&self, i: usize) -> usize {
        let mut v = vec![0; self.factors.len()];
        v[i] = 1;
        self.encode(&v)
    }

    pub fn format_element(&self, a: usize) -> String {
        let v = self.decode(a);
        match v.len() {
            0 => "0".into(),
            1 => v[0].to_string(),
            _ => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elems = vec![0usize];
        for &g in gens {
            if member[g] {
                continue;
            }
            // Multiply the current subgroup by the cyclic group <g>.
            let base = elems.clone();
            let mut step = g;
            while !member[step] {
                for &e in &base {
                    let s = self.add(e, step);
                    if !member[s] {
                        member[s] = true;
                        elems.push(s);
                    }
                }
                step = self.add(step, g);
            }
        }
        elems.sort_unstable();
        elems
    }

    /// All subgroups, each as a sorted element list, in canonical order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![vec![0usize]];
        seen.insert(vec![0usize]);
        while let Some(s) = frontier.pop() {
            for x in 0..n {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(x);
                let t = self.span(&gens);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z/{m}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A subgroup given by its sorted elements and an irredundant generating list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn generated_by(group: &AbelianGroup, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidSubgroup(format!("element index {g} out of range")));
        }
        let elements = group.span(gens);
        Ok(Self::from_elements_unchecked(group, elements))
    }

    /// Validates closure and builds a generating list.
    pub fn from_elements(group: &AbelianGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("does not contain 0".into()));
        }
        if elements.iter().any(|&e| e >= group.order()) {
            return Err(Error::InvalidSubgroup("element out of range".into()));
        }
        for &a in &elements {
            for &b in &elements {
                if elements.binary_search(&group.add(a, b)).is_err() {
                    return Err(Error::InvalidSubgroup("not closed under addition".into()));
                }
            }
        }
        Ok(Self::from_elements_unchecked(group, elements))
    }

    fn from_elements_unchecked(group: &AbelianGroup, elements: Vec<usize>) -> Self {
        let generators = small_generating_set(group, &elements);
        Self {
            elements,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Independent cyclic generators `(h_i, ord h_i)` with `H = ⊕ <h_i>`.
    pub fn cyclic_basis(&self, group: &AbelianGroup) -> Result<Vec<(usize, u64)>> {
        cyclic_basis(group, &self.elements)
    }
}

/// Greedy generating set: repeatedly add the element enlarging the span most.
fn small_generating_set(group: &AbelianGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    while span.len() < elements.len() {
        let mut best: Option<(usize, usize)> = None;
        for &x in elements {
            if span.binary_search(&x).is_ok() {
                continue;
            }
            let mut g = gens.clone();
            g.push(x);
            let size = group.span(&g).len();
            if best.is_none_or(|(_, s)| size > s) {
                best = Some((x, size));
            }
        }
        let (x, _) = best.expect("span smaller than subgroup");
        gens.push(x);
        span = group.span(&gens);
    }
    gens
}

fn cyclic_basis(group: &AbelianGroup, elements: &[usize]) -> Result<Vec<(usize, u64)>> {
    let order = elements.len() as u64;
    if order == 1 {
        return Ok(vec![]);
    }
    // A cyclic subgroup of maximal order is a direct summand.
    let &h1 = elements
        .iter()
        .max_by_key(|&&x| (group.element_order(x), std::cmp::Reverse(x)))
        .unwrap();
    let o1 = group.element_order(h1);
    if o1 == order {
        return Ok(vec![(h1, o1)]);
    }
    let rest = order / o1;
    for &h2 in elements {
        let o2 = group.element_order(h2);
        if o2 == rest && group.span(&[h1, h2]).len() as u64 == order {
            return Ok(vec![(h1, o1), (h2, o2)]);
        }
    }
    for (i, &h2) in elements.iter().enumerate() {
        let o2 = group.element_order(h2);
        if o2 == 1 || rest % o2 != 0 {
            continue;
        }
        let o3 = rest / o2;
        for &h3 in &elements[i + 1..] {
            if group.element_order(h3) == o3 && group.span(&[h1, h2, h3]).len() as u64 == order {
                return Ok(vec![(h1, o1), (h2, o2), (h3, o3)]);
            }
        }
    }
    Err(Error::GroupTooLarge(
        "subgroup needs more than 3 cyclic factors".into(),
    ))
}

/// A finite abelian group with a nondegenerate quadratic form into `Q/Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetricGroup {
    group: AbelianGroup,
    denom: u64,
    q: Vec<u64>,
    base: Option<AbelianGroup>,
}

impl MetricGroup {
    /// Builds a metric group from `q(x) = q_num[x] / exponent`, validating the
    /// quadratic-form and nondegeneracy conditions.
    pub fn new(group: AbelianGroup, q_num: Vec<u64>) -> Result<Self> {
        let denom = group.exponent();
        if q_num.len() != group.order() {
            return Err(Error::InvalidMetricGroup(format!(
                "q table has {} entries for a group of order {}",
                q_num.len(),
                group.order()
            )));
        }
        let q: Vec<u64> = q_num.into_iter().map(|v| v % denom).collect();
        let mg = Self {
            group,
            denom,
            q,
            base: None,
        };
        mg.validate()?;
        Ok(mg)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let d = self.denom;
        if self.q[0] != 0 {
            return Err(Error::InvalidMetricGroup("q(0) != 0".into()));
        }
        let gens: Vec<usize> = (0..g.rank()).map(|i| g.generator(i)).collect();
        // q is quadratic iff it agrees with the polynomial determined by its
        // values on generators and b on generator pairs, and that polynomial
        // is periodic in every coordinate.
        let qe: Vec<u64> = gens.iter().map(|&e| self.q[e]).collect();
        let be: Vec<Vec<u64>> = gens
            .iter()
            .map(|&a| gens.iter().map(|&b| self.b(a, b)).collect())
            .collect();
        for (i, &m) in g.factors().iter().enumerate() {
            let two_q = 2 * qe[i] % d;
            if (m as u128 * two_q as u128) % d as u128 != 0
                || (m as u128 * m as u128 * qe[i] as u128) % d as u128 != 0
            {
                return Err(Error::InvalidMetricGroup(format!(
                    "q is not well defined on generator {i}"
                )));
            }
            for j in 0..g.rank() {
                if (m as u128 * be[i][j] as u128) % d as u128 != 0 {
                    return Err(Error::InvalidMetricGroup(format!(
                        "b is not a bicharacter on generators {i},{j}"
                    )));
                }
            }
        }
        for x in 0..g.order() {
            let v = g.decode(x);
            let mut acc: u128 = 0;
            for i in 0..v.len() {
                acc += v[i] as u128 * v[i] as u128 * qe[i] as u128;
                for j in i + 1..v.len() {
                    acc += v[i] as u128 * v[j] as u128 * be[i][j] as u128;
                }
            }
            if (acc % d as u128) as u64 != self.q[x] {
                return Err(Error::InvalidMetricGroup(format!(
                    "q is not quadratic at {}",
                    g.format_element(x)
                )));
            }
            if x != 0 && gens.iter().all(|&e| self.b(x, e) == 0) {
                return Err(Error::InvalidMetricGroup(format!(
                    "b is degenerate: {} is in the radical",
                    g.format_element(x)
                )));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The pointed group `G` when this is the center of `Vec(G)`.
    pub fn base(&self) -> Option<&AbelianGroup> {
        self.base.as_ref()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn denominator(&self) -> u64 {
        self.denom
    }

    /// Numerator of `q(x)` over [`MetricGroup::denominator`].
    pub fn q(&self, x: usize) -> u64 {
        self.q[x]
    }

    /// `q(x)` as a reduced fraction `(num, den)`.
    pub fn q_fraction(&self, x: usize) -> (u64, u64) {
        let n = self.q[x];
        let g = n.gcd(&self.denom);
        if n == 0 {
            (0, 1)
        } else {
            (n / g, self.denom / g)
        }
    }

    /// Numerator of `b(x, y) = q(x+y) − q(x) − q(y)`.
    pub fn b(&self, x: usize, y: usize) -> u64 {
        let d = self.denom;
        (self.q[self.group.add(x, y)] + 2 * d - self.q[x] - self.q[y]) % d
    }

    pub fn is_toric_code(&self) -> bool {
        self.base.as_ref().map(|b| b.factors()) == Some(&[2u64][..])
    }

    /// Anyon name: `1, e, m, f` for the toric code, residue tuples otherwise.
    pub fn element_name(&self, x: usize) -> String {
        if self.is_toric_code() {
            ["1", "m", "e", "f"][x].to_string()
        } else {
            self.group.format_element(x)
        }
    }
}

impl fmt::Display for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Some(b) => write!(f, "Z(Vec({b}))"),
            None => write!(f, "({}, q)", self.group),
        }
    }
}

/// `(Ĝ × G, q(a, g) = Σ a_i g_i / m_i)`, with `Ĝ` identified with `G` through
/// `χ_c(x) = exp(2πi c x / m_i)` on each factor. The first block of
/// coordinates is `Ĝ`, the second is `G`.
pub fn center_of_pointed(g: &AbelianGroup) -> MetricGroup {
    let mut factors = g.factors().to_vec();
    factors.extend_from_slice(g.factors());
    let group = AbelianGroup {
        factors: factors.clone(),
    };
    let denom = group.exponent();
    let t = g.rank();
    let q = (0..group.order())
        .map(|x| {
            let v = group.decode(x);
            let mut acc: u128 = 0;
            for i in 0..t {
                acc += v[i] as u128 * v[t + i] as u128 * (denom / factors[i]) as u128;
            }
            (acc % denom as u128) as u64
        })
        .collect();
    MetricGroup {
        group,
        denom,
        q,
        base: Some(g.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_code_form() {
        let m = center_of_pointed(&AbelianGroup::cyclic(2).unwrap());
        assert_eq!(m.group().factors(), &[2, 2]);
        let e = m.group().encode(&[1, 0]);
        let mm = m.group().encode(&[0, 1]);
        let f = m.group().encode(&[1, 1]);
        assert_eq!(m.q_fraction(f), (1, 2));
        assert_eq!(m.q_fraction(e), (0, 1));
        assert_eq!(m.q_fraction(mm), (0, 1));
        assert_eq!(m.element_name(e), "e");
        assert_eq!(m.element_name(mm), "m");
    }

    #[test]
    fn trivial_center() {
        let m = center_of_pointed(&AbelianGroup::trivial());
        assert_eq!(m.order(), 1);
        assert_eq!(m.q(0), 0);
    }

    #[test]
    fn z3_center_value() {
        let m = center_of_pointed(&AbelianGroup::cyclic(3).unwrap());
        assert_eq!(m.q_fraction(m.group().encode(&[1, 2])), (2, 3));
    }

    #[test]
    fn centers_validate_as_metric_groups() {
        for factors in [vec![2], vec![3], vec![4], vec![6], vec![2, 2], vec![2, 4]] {
            let g = AbelianGroup::new(&factors).unwrap();
            let c = center_of_pointed(&g);
            let again = MetricGroup::new(c.group().clone(), (0..c.order()).map(|x| c.q(x)).collect());
            assert!(again.is_ok(), "{factors:?}");
            for x in 0..c.order() {
                assert_eq!(c.q(x), c.q(c.group().neg(x)));
            }
        }
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let err = MetricGroup::new(g, vec![0; 4]).unwrap_err();
        assert_eq!(err.name(), "InvalidMetricGroup");
        // q(x) = x/3 on Z/3 is not quadratic.
        let g3 = AbelianGroup::cyclic(3).unwrap();
        assert!(MetricGroup::new(g3, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn subgroups_of_cyclic_groups_match_divisors() {
        for n in 1..=12u64 {
            let g = AbelianGroup::new(&[n]).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(g.subgroups().len(), divisors, "n = {n}");
        }
        assert_eq!(AbelianGroup::new(&[2, 2]).unwrap().subgroups().len(), 5);
    }

    #[test]
    fn cyclic_bases() {
        let g = AbelianGroup::new(&[4, 2]).unwrap();
        let all: Vec<usize> = (0..8).collect();
        let basis = cyclic_basis(&g, &all).unwrap();
        let orders: Vec<u64> = basis.iter().map(|b| b.1).collect();
        assert_eq!(orders, vec![4, 2]);
        let g6 = AbelianGroup::new(&[2, 3]).unwrap();
        let basis = cyclic_basis(&g6, &(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(basis.len(), 1);
        let g222 = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(cyclic_basis(&g222, &(0..8).collect::<Vec<_>>()).unwrap().len(), 3);
        let g2222 = AbelianGroup::new(&[2, 2, 2, 2]).unwrap();
        assert_eq!(
            cyclic_basis(&g2222, &(0..16).collect::<Vec<_>>()).unwrap_err().name(),
            "GroupTooLarge"
        );
    }
}

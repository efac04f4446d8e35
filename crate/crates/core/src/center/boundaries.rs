//! Gapped boundaries of `Z(Vec(G))` for small finite groups: pairs `(H, ψ)`
//! with `H ≤ G` up to conjugacy and `ψ ∈ H²(H, U(1))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest group handled by the subgroup enumeration (elements fit a `u64` mask).
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<u8>,
    inverse: Vec<u8>,
    order: usize,
}

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

impl FiniteGroup {
    /// Closure of permutation generators (each a list of images of `0..degree`).
    pub fn from_permutations(name: &str, gens: &[Perm]) -> Result<Self> {
        let degree = gens.first().map_or(1, |g| g.len());
        for g in gens {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidSubgroup(format!("not a permutation of 0..{degree}")));
            }
        }
        let identity: Perm = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let p = compose(g, &elements[i]);
                if !index.contains_key(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(format!(
                            "{name} has more than {MAX_GROUP_ORDER} elements"
                        )));
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])] as u8;
            }
        }
        Ok(Self::from_table(name, table, n))
    }

    fn from_table(name: &str, table: Vec<u8>, n: usize) -> Self {
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u8)
            .collect();
        Self {
            name: name.to_string(),
            table,
            inverse,
            order: n,
        }
    }

    /// `⊕ Z/m_i` as a permutation group on disjoint cycles.
    pub fn abelian(factors: &[u64]) -> Result<Self> {
        let factors: Vec<usize> = factors.iter().filter(|&&m| m != 1).map(|&m| m as usize).collect();
        if factors.contains(&0) {
            return Err(Error::EmptyGroup("cyclic factor 0".into()));
        }
        if factors.iter().product::<usize>() > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge(format!("{factors:?}")));
        }
        let degree: usize = factors.iter().sum::<usize>().max(1);
        let mut offset = 0;
        let mut gens = Vec::new();
        for &m in &factors {
            let mut p: Perm = (0..degree).collect();
            for k in 0..m {
                p[offset + k] = offset + (k + 1) % m;
            }
            gens.push(p);
            offset += m;
        }
        let name = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")
        };
        Self::from_permutations(&name, &gens)
    }

    /// Quaternion group from its left-regular action on `{±1, ±i, ±j, ±k}`.
    fn quaternion() -> Self {
        // Elements encoded as (sign, unit) with unit 0..4 = 1, i, j, k.
        fn mul(a: (bool, usize), b: (bool, usize)) -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            let (s, u) = T[a.1][b.1];
            (s ^ a.0 ^ b.0, u)
        }
        let code = |e: (bool, usize)| e.1 * 2 + usize::from(e.0);
        let decode = |c: usize| (c % 2 == 1, c / 2);
        let left = |g: (bool, usize)| -> Perm { (0..8).map(|c| code(mul(g, decode(c)))).collect() };
        Self::from_permutations("Q8", &[left((false, 1)), left((false, 2))])
            .expect("Q8 has order 8")
    }

    /// Catalog groups: `s3`, `a4`, `s4`, `d4`, `d5`, `d6`, `q8`, `zN`.
    pub fn named(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let g = match lower.as_str() {
            "s3" => Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]])?,
            "a4" => Self::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?,
            "s4" => Self::from_permutations("S4", &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])?,
            "q8" => Self::quaternion(),
            _ => {
                if let Some(n) = lower.strip_prefix('d').and_then(|r| r.parse::<usize>().ok()) {
                    if n < 3 {
                        return Err(Error::UnknownName(name.to_string()));
                    }
                    let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
                    let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
                    Self::from_permutations(&format!("D{n}"), &[rot, refl])?
                } else if let Some(n) = lower.strip_prefix('z').and_then(|r| r.parse::<u64>().ok()) {
                    Self::abelian(&[n])?
                } else {
                    return Err(Error::UnknownName(name.to_string()));
                }
            }
        };
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn closure(&self, mut mask: u64) -> u64 {
        mask |= 1;
        loop {
            let mut grown = mask;
            for a in bits(mask) {
                for b in bits(mask) {
                    grown |= 1 << self.mul(a, b);
                }
            }
            if grown == mask {
                return mask;
            }
            mask = grown;
        }
    }

    /// Every subgroup as an element bitmask, by joining cyclic subgroups.
    pub fn subgroups(&self) -> Vec<u64> {
        let cyclic: BTreeSet<u64> = (0..self.order).map(|g| self.closure(1 << g)).collect();
        let mut all: BTreeSet<u64> = cyclic.clone();
        let mut frontier: Vec<u64> = cyclic.iter().copied().collect();
        while let Some(h) = frontier.pop() {
            for &c in &cyclic {
                if c & !h == 0 {
                    continue;
                }
                let j = self.closure(h | c);
                if all.insert(j) {
                    frontier.push(j);
                }
            }
        }
        all.into_iter().collect()
    }

    fn conjugate(&self, mask: u64, g: usize) -> u64 {
        bits(mask).fold(0u64, |acc, h| acc | 1 << self.mul(self.mul(g, h), self.inv(g)))
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// A conjugacy class of subgroups with its Schur multiplier order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub name: String,
    pub order: usize,
    pub class_size: usize,
    pub multiplier: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCount {
    pub group: String,
    pub classes: Vec<SubgroupClass>,
    pub total: u64,
}

/// Non-abelian groups identified by order and element-order statistics.
/// Entries: (name, order, [(element order, count)], |H²(H, U(1))|).
const NONABELIAN_MULTIPLIERS: &[(&str, usize, &[(usize, usize)], u64)] = &[
    ("S3", 6, &[(1, 1), (2, 3), (3, 2)], 1),
    ("D4", 8, &[(1, 1), (2, 5), (4, 2)], 2),
    ("Q8", 8, &[(1, 1), (2, 1), (4, 6)], 1),
    ("D5", 10, &[(1, 1), (2, 5), (5, 4)], 1),
    ("A4", 12, &[(1, 1), (2, 3), (3, 8)], 2),
    ("D6", 12, &[(1, 1), (2, 7), (3, 2), (6, 2)], 2),
    ("Dic3", 12, &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)], 1),
    ("D7", 14, &[(1, 1), (2, 7), (7, 6)], 1),
    ("S4", 24, &[(1, 1), (2, 9), (3, 8), (4, 6)], 2),
];

struct Identified {
    name: String,
    multiplier: u64,
}

fn identify(g: &FiniteGroup, mask: u64) -> Result<Identified> {
    let elems: Vec<usize> = bits(mask).collect();
    let order = elems.len();
    let abelian = elems
        .iter()
        .all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if abelian {
        let primary = abelian_primary_factors(g, &elems);
        let mut multiplier = 1u64;
        for (i, &(p, a)) in primary.iter().enumerate() {
            for &(q, b) in &primary[i + 1..] {
                if p == q {
                    multiplier *= p.pow(a.min(b));
                }
            }
        }
        return Ok(Identified {
            name: abelian_name(&primary),
            multiplier,
        });
    }
    let mut stats: BTreeMap<usize, usize> = BTreeMap::new();
    for &a in &elems {
        *stats.entry(g.element_order(a)).or_default() += 1;
    }
    let stats: Vec<(usize, usize)> = stats.into_iter().collect();
    NONABELIAN_MULTIPLIERS
        .iter()
        .find(|(_, o, s, _)| *o == order && *s == stats.as_slice())
        .map(|&(name, _, _, m)| Identified {
            name: name.to_string(),
            multiplier: m,
        })
        .ok_or_else(|| {
            Error::UnknownMultiplier(format!("non-abelian subgroup of order {order} with element orders {stats:?}"))
        })
}

/// Primary decomposition `[(p, e)]` (factors `Z/p^e`) of an abelian subgroup.
fn abelian_primary_factors(g: &FiniteGroup, elems: &[usize]) -> Vec<(u64, u32)> {
    let n = elems.len() as u64;
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while m > 1 {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            // s_k = log_p |{x : x^{p^k} = 1}|
            let mut prev = 0u32;
            let mut counts = Vec::new();
            let mut pk = p;
            loop {
                let c = elems
                    .iter()
                    .filter(|&&x| (pk as usize) % g.element_order(x) == 0)
                    .count() as u64;
                let s = c.ilog(p);
                counts.push(s - prev);
                if s == prev {
                    break;
                }
                prev = s;
                pk *= p;
            }
            // counts[k-1] = number of cyclic p-factors of exponent ≥ k
            let maxk = counts.iter().take_while(|&&c| c > 0).count();
            for k in (1..=maxk).rev() {
                let ge_k = counts[k - 1];
                let ge_k1 = if k < counts.len() { counts[k] } else { 0 };
                for _ in 0..(ge_k - ge_k1) {
                    out.push((p, k as u32));
                }
            }
        }
        p += 1;
    }
    out.sort_unstable();
    out
}

fn abelian_name(primary: &[(u64, u32)]) -> String {
    if primary.is_empty() {
        return "1".into();
    }
    // Invariant factors d_1 | d_2 | ...
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &(p, e) in primary {
        by_prime.entry(p).or_default().push(e);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![1u64; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in es.into_iter().enumerate() {
            inv[len - 1 - i] *= p.pow(e);
        }
    }
    inv.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
}

/// Counts Lagrangian algebras of `Z(Vec(G))` as `Σ_{[H]} |H²(H, U(1))|` over
/// conjugacy classes of subgroups.
pub fn boundary_count_group(g: &FiniteGroup) -> Result<BoundaryCount> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(format!("|G| = {}", g.order())));
    }
    let mut reps: BTreeMap<u64, usize> = BTreeMap::new();
    for h in g.subgroups() {
        let canon = (0..g.order()).map(|x| g.conjugate(h, x)).min().unwrap();
        if canon == h {
            let class: BTreeSet<u64> = (0..g.order()).map(|x| g.conjugate(h, x)).collect();
            reps.insert(h, class.len());
        }
    }
    let mut classes = Vec::new();
    for (h, class_size) in reps {
        let id = identify(g, h)?;
        classes.push(SubgroupClass {
            name: id.name,
            order: h.count_ones() as usize,
            class_size,
            multiplier: id.multiplier,
        });
    }
    classes.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    let total = classes.iter().map(|c| c.multiplier).sum();
    Ok(BoundaryCount {
        group: g.name().to_string(),
        classes,
        total,
    })
}

/// Whether an action of prime order `action_order` on `count` objects must fix
/// one of them: orbits have size 1 or `action_order`.
pub fn orbit_fixed_point_forced(count: u64, action_order: u64) -> Result<bool> {
    if !is_prime(action_order) {
        return Err(Error::NonPrimeOrder(action_order));
    }
    Ok(count % action_order != 0)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(c: &BoundaryCount) -> Vec<(String, usize, u64)> {
        c.classes
            .iter()
            .map(|k| (k.name.clone(), k.class_size, k.multiplier))
            .collect()
    }

    #[test]
    fn s3_has_four() {
        let c = boundary_count_group(&FiniteGroup::named("s3").unwrap()).unwrap();
        assert_eq!(c.total, 4);
        assert_eq!(
            summary(&c),
            vec![
                ("1".into(), 1, 1),
                ("Z2".into(), 3, 1),
                ("Z3".into(), 1, 1),
                ("S3".into(), 1, 1)
            ]
        );
    }

    #[test]
    fn a4_has_seven() {
        let c = boundary_count_group(&FiniteGroup::named("a4").unwrap()).unwrap();
        assert_eq!(c.total, 7);
        assert_eq!(
            summary(&c),
            vec![
                ("1".into(), 1, 1),
                ("Z2".into(), 3, 1),
                ("Z3".into(), 4, 1),
                ("Z2xZ2".into(), 1, 2),
                ("A4".into(), 1, 2)
            ]
        );
    }

    #[test]
    fn cyclic_groups_count_divisors() {
        for n in 1..=24u64 {
            let c = boundary_count_group(&FiniteGroup::named(&format!("z{n}")).unwrap()).unwrap();
            let tau = (1..=n).filter(|d| n % d == 0).count() as u64;
            assert_eq!(c.total, tau, "n = {n}");
        }
    }

    #[test]
    fn small_groups() {
        assert_eq!(FiniteGroup::named("q8").unwrap().order(), 8);
        assert_eq!(FiniteGroup::named("d4").unwrap().order(), 8);
        // Q8: 1, Z2, Z4 (3 classes), Q8; every multiplier is trivial.
        let q8 = boundary_count_group(&FiniteGroup::named("q8").unwrap()).unwrap();
        assert_eq!(q8.total, 6);
        // Klein four: 1 + 3·Z2 + Z2xZ2 (multiplier 2) = 6, matching the metric-group count.
        let v4 = boundary_count_group(&FiniteGroup::abelian(&[2, 2]).unwrap()).unwrap();
        assert_eq!(v4.total, 6);
        assert_eq!(FiniteGroup::named("s4").unwrap().order(), 24);
        assert!(boundary_count_group(&FiniteGroup::named("s4").unwrap()).is_ok());
    }

    #[test]
    fn unknown_multiplier_is_reported() {
        // D8 (order 16) has non-abelian subgroups D4 (known) and itself (unknown).
        let d8 = FiniteGroup::named("d8").unwrap();
        assert_eq!(boundary_count_group(&d8).unwrap_err().name(), "UnknownMultiplier");
    }

    #[test]
    fn forced_fixed_points() {
        assert!(orbit_fixed_point_forced(7, 3).unwrap());
        assert!(!orbit_fixed_point_forced(2, 2).unwrap());
        assert!(!orbit_fixed_point_forced(6, 3).unwrap());
        assert_eq!(orbit_fixed_point_forced(7, 4).unwrap_err().name(), "NonPrimeOrder");
    }

    #[test]
    fn too_large_group() {
        let g = FiniteGroup::from_permutations(
            "S5",
            &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]],
        );
        assert_eq!(g.unwrap_err().name(), "GroupTooLarge");
    }
}

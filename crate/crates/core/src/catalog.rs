//! Constructors for the example fusion rings: pointed group rings,
//! Tambara-Yamagami rings, the `PSU(2)_k` series and a handful of named rings.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fusion_ring::{fp_dimensions, integrality_of, FiberFunctorFlag, FusionRing, RingMetadata};

/// A verified ring together with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub ring: FusionRing,
    pub notes: String,
    pub fiber_functor_flag: FiberFunctorFlag,
}

impl CatalogEntry {
    fn new(name: &str, ring: FusionRing, notes: &str, flag: FiberFunctorFlag) -> Result<Self> {
        if let Some(v) = ring.verify().violation {
            return Err(Error::NonVerifiedRing(format!(
                "catalog ring `{name}` fails {} at {:?}",
                v.axiom, v.witness
            )));
        }
        let ring = ring.with_metadata(RingMetadata {
            has_known_fiber_functor: flag,
            source: Some(notes.to_string()),
        });
        Ok(Self {
            name: name.to_string(),
            ring,
            notes: notes.to_string(),
            fiber_functor_flag: flag,
        })
    }

    /// Wraps an arbitrary (e.g. file-loaded) ring; the flag is taken from its metadata.
    pub fn from_ring(ring: FusionRing) -> Result<Self> {
        let flag = ring.metadata.has_known_fiber_functor;
        let notes = ring
            .metadata
            .source
            .clone()
            .unwrap_or_else(|| "user supplied".to_string());
        let name = ring.name().to_string();
        Self::new(&name, ring, &notes, flag)
    }
}

/// Mixed-radix encoding of `⊕ Z/m_i`, first factor most significant.
#[derive(Debug, Clone)]
struct Radix {
    factors: Vec<u64>,
}

impl Radix {
    fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (i, &m) in self.factors.iter().enumerate().rev() {
            out[i] = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        out
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((&p, &q), &m)| (p + q) % m)
            .collect();
        self.encode(&s)
    }

    fn neg(&self, a: usize) -> usize {
        let x = self.decode(a);
        let s: Vec<u64> = x
            .iter()
            .zip(&self.factors)
            .map(|(&p, &m)| (m - p) % m)
            .collect();
        self.encode(&s)
    }

    fn label(&self, idx: usize) -> String {
        let v = self.decode(idx);
        if v.len() == 1 {
            v[0].to_string()
        } else {
            let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

fn group_radix(factors: &[u64]) -> Result<Radix> {
    if factors.contains(&0) {
        return Err(Error::EmptyGroup("cyclic factor 0".into()));
    }
    let factors: Vec<u64> = factors.iter().copied().filter(|&m| m > 1).collect();
    let order: u64 = factors.iter().product();
    if order > 4096 {
        return Err(Error::GroupTooLarge(format!("|G| = {order}")));
    }
    Ok(Radix { factors })
}

fn group_name(factors: &[u64]) -> String {
    let fs: Vec<String> = factors.iter().filter(|&&m| m > 1).map(|m| format!("z{m}")).collect();
    if fs.is_empty() {
        "trivial".into()
    } else {
        fs.join("x")
    }
}

/// Group ring of `⊕ Z/m_i`. An empty factor list gives the trivial ring.
pub fn build_pointed(cyclic_factors: &[u64]) -> Result<FusionRing> {
    let g = group_radix(cyclic_factors)?;
    let n = g.order();
    let mut fusion = vec![0u32; n * n * n];
    for x in 0..n {
        for y in 0..n {
            fusion[(x * n + y) * n + g.add(x, y)] = 1;
        }
    }
    let labels = (0..n).map(|i| g.label(i)).collect();
    let dual = (0..n).map(|i| g.neg(i)).collect();
    let ring = FusionRing::from_flat(format!("vec_{}", group_name(cyclic_factors)), labels, 0, fusion, dual)?;
    Ok(ring.with_metadata(RingMetadata {
        has_known_fiber_functor: FiberFunctorFlag::Yes,
        source: Some("group ring".into()),
    }))
}

/// Tambara-Yamagami fusion rules over `G = ⊕ Z/m_i` with the diagonal
/// bicharacter `β(a,b) = exp(2πi s Σ a_i b_i / m_i)`.
pub fn build_ty(cyclic_factors: &[u64], s: i64) -> Result<FusionRing> {
    let g = group_radix(cyclic_factors)?;
    let exponent = g.factors.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    if s.unsigned_abs().gcd(&exponent) != 1 {
        return Err(Error::DegenerateBicharacter { s, exponent });
    }
    let n = g.order();
    let r = n + 1;
    let rho = n;
    let mut fusion = vec![0u32; r * r * r];
    let at = |x: usize, y: usize, z: usize| (x * r + y) * r + z;
    for x in 0..n {
        for y in 0..n {
            fusion[at(x, y, g.add(x, y))] = 1;
        }
        fusion[at(x, rho, rho)] = 1;
        fusion[at(rho, x, rho)] = 1;
        fusion[at(rho, rho, x)] = 1;
    }
    let mut labels: Vec<String> = (0..n).map(|i| g.label(i)).collect();
    labels.push("ρ".into());
    let mut dual: Vec<usize> = (0..n).map(|i| g.neg(i)).collect();
    dual.push(rho);
    let flag = if is_square(n as u64) {
        FiberFunctorFlag::Unknown
    } else {
        FiberFunctorFlag::No
    };
    let ring = FusionRing::from_flat(
        format!("ty_{}_s{}", group_name(cyclic_factors), s),
        labels,
        0,
        fusion,
        dual,
    )?;
    Ok(ring.with_metadata(RingMetadata {
        has_known_fiber_functor: flag,
        source: Some("Tambara-Yamagami fusion rules".into()),
    }))
}

pub(crate) fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|t| t * t == n)
}

/// Integer-spin part of `SU(2)_k`, fusion by truncated Clebsch-Gordan rules.
pub fn build_psu2(k: i64) -> Result<FusionRing> {
    if k < 2 {
        return Err(Error::LevelTooSmall(k));
    }
    let k = k as usize;
    let r = k / 2 + 1;
    let mut fusion = vec![0u32; r * r * r];
    for j in 0..r {
        for l in 0..r {
            let lo = j.abs_diff(l);
            let hi = (j + l).min(k.saturating_sub(j + l));
            if k < j + l {
                continue;
            }
            for m in lo..=hi.min(r - 1) {
                fusion[(j * r + l) * r + m] = 1;
            }
        }
    }
    let labels = (0..r).map(|j| format!("X_{j}")).collect();
    let dual = (0..r).collect();
    let ring = FusionRing::from_flat(format!("psu2_{k}"), labels, 0, fusion, dual)?;
    let dims = fp_dimensions(&ring)?;
    let flag = if integrality_of(&dims).integral {
        FiberFunctorFlag::Unknown
    } else {
        FiberFunctorFlag::No
    };
    Ok(ring.with_metadata(RingMetadata {
        has_known_fiber_functor: flag,
        source: Some(format!("integer spins of SU(2) at level {k}")),
    }))
}

/// Builds a ring from an explicit product table given as `(x, y, [(z, N)])` rows.
fn from_rules(
    name: &str,
    labels: &[&str],
    dual: Vec<usize>,
    rules: &[(usize, usize, &[(usize, u32)])],
) -> Result<FusionRing> {
    let r = labels.len();
    let mut fusion = vec![0u32; r * r * r];
    for x in 0..r {
        fusion[x * r + x] = 1; // 1 ⊗ x = x
        fusion[(x * r) * r + x] = 1; // x ⊗ 1 = x
    }
    for &(x, y, out) in rules {
        for &(z, n) in out {
            fusion[(x * r + y) * r + z] = n;
        }
    }
    FusionRing::from_flat(
        name,
        labels.iter().map(|s| s.to_string()).collect(),
        0,
        fusion,
        dual,
    )
}

fn fibonacci() -> Result<FusionRing> {
    from_rules("fibonacci", &["1", "τ"], vec![0, 1], &[(1, 1, &[(0, 1), (1, 1)])])
}

fn ising() -> Result<FusionRing> {
    from_rules(
        "ising",
        &["1", "ψ", "σ"],
        vec![0, 1, 2],
        &[
            (1, 1, &[(0, 1)]),
            (1, 2, &[(2, 1)]),
            (2, 1, &[(2, 1)]),
            (2, 2, &[(0, 1), (1, 1)]),
        ],
    )
}

fn rep_s3() -> Result<FusionRing> {
    from_rules(
        "rep_s3",
        &["1", "σ", "π"],
        vec![0, 1, 2],
        &[
            (1, 1, &[(0, 1)]),
            (1, 2, &[(2, 1)]),
            (2, 1, &[(2, 1)]),
            (2, 2, &[(0, 1), (1, 1), (2, 1)]),
        ],
    )
}

fn rep_a4() -> Result<FusionRing> {
    from_rules(
        "rep_a4",
        &["1", "χ", "χ²", "π"],
        vec![0, 2, 1, 3],
        &[
            (1, 1, &[(2, 1)]),
            (1, 2, &[(0, 1)]),
            (2, 1, &[(0, 1)]),
            (2, 2, &[(1, 1)]),
            (1, 3, &[(3, 1)]),
            (3, 1, &[(3, 1)]),
            (2, 3, &[(3, 1)]),
            (3, 2, &[(3, 1)]),
            (3, 3, &[(0, 1), (1, 1), (2, 1), (3, 2)]),
        ],
    )
}

/// `{1, α, α², ρ, αρ, α²ρ}` with `α³ = 1`, `ρα = α²ρ`, `ρ² = 1 + ρ + αρ + α²ρ`.
fn haagerup() -> Result<FusionRing> {
    // Index i in 0..3 is α^i, index 3 + i is α^i ρ.
    let r = 6;
    let mut fusion = vec![0u32; r * r * r];
    let at = |x: usize, y: usize, z: usize| (x * r + y) * r + z;
    for i in 0..3 {
        for j in 0..3 {
            // α^i α^j = α^{i+j}
            fusion[at(i, j, (i + j) % 3)] = 1;
            // α^i · α^j ρ = α^{i+j} ρ
            fusion[at(i, 3 + j, 3 + (i + j) % 3)] = 1;
            // α^j ρ · α^i = α^{j-i} ρ
            fusion[at(3 + j, i, 3 + (j + 3 - i) % 3)] = 1;
            // α^i ρ · α^j ρ = α^{i-j} ρ² = α^{i-j} + ρ + αρ + α²ρ
            fusion[at(3 + i, 3 + j, (i + 3 - j) % 3)] = 1;
            for t in 0..3 {
                fusion[at(3 + i, 3 + j, 3 + t)] = 1;
            }
        }
    }
    FusionRing::from_flat(
        "haagerup",
        ["1", "α", "α²", "ρ", "αρ", "α²ρ"].iter().map(|s| s.to_string()).collect(),
        0,
        fusion,
        vec![0, 2, 1, 3, 4, 5],
    )
}

/// Fixed catalog names (parametric families are `vec_zN`, `ty_zN[_sK]`, `psu2_K`).
pub const NAMED: &[&str] = &["fibonacci", "ising", "rep_s3", "rep_a4", "haagerup"];

/// Looks up a catalog entry by name.
pub fn build_named(name: &str) -> Result<CatalogEntry> {
    use FiberFunctorFlag::*;
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "fibonacci" | "fib" => CatalogEntry::new(
            "fibonacci",
            fibonacci()?,
            "Fibonacci rules τ⊗τ = 1⊕τ",
            No,
        ),
        "ising" => CatalogEntry::new("ising", ising()?, "Ising rules, TY(Z/2)", No),
        "rep_s3" => CatalogEntry::new(
            "rep_s3",
            rep_s3()?,
            "representation ring of S3; fiber functor = forgetful functor",
            Yes,
        ),
        "rep_a4" => CatalogEntry::new(
            "rep_a4",
            rep_a4()?,
            "representation ring of A4 (= PSU(3)_3 rules); fiber functor = forgetful functor",
            Yes,
        ),
        "haagerup" => CatalogEntry::new(
            "haagerup",
            haagerup()?,
            "Haagerup fusion rules (subfactor literature), associativity checked at load",
            No,
        ),
        _ => build_parametric(&lower).ok_or_else(|| Error::UnknownName(name.to_string()))?,
    }
}

fn build_parametric(name: &str) -> Option<Result<CatalogEntry>> {
    if let Some(rest) = name.strip_prefix("vec_z") {
        let n: u64 = rest.parse().ok()?;
        return Some(build_pointed(&[n]).and_then(|ring| {
            CatalogEntry::new(name, ring, "group ring of a cyclic group", FiberFunctorFlag::Yes)
        }));
    }
    if let Some(rest) = name.strip_prefix("ty_z") {
        let (n, s) = match rest.split_once("_s") {
            Some((n, s)) => (n.parse::<u64>().ok()?, s.parse::<i64>().ok()?),
            None => (rest.parse::<u64>().ok()?, 1),
        };
        return Some(build_ty(&[n], s).and_then(|ring| {
            let flag = ring.metadata.has_known_fiber_functor;
            CatalogEntry::new(name, ring, "Tambara-Yamagami fusion rules over a cyclic group", flag)
        }));
    }
    if let Some(rest) = name.strip_prefix("psu2_") {
        let k: i64 = rest.parse().ok()?;
        return Some(build_psu2(k).and_then(|ring| {
            let flag = ring.metadata.has_known_fiber_functor;
            CatalogEntry::new(name, ring, "integer-spin part of SU(2)_k", flag)
        }));
    }
    None
}

/// The entries exercised by the property suites.
pub fn standard_entries() -> Result<Vec<CatalogEntry>> {
    let mut names: Vec<String> = NAMED.iter().map(|s| s.to_string()).collect();
    names.extend((1..=6).map(|n| format!("vec_z{n}")));
    names.extend(["ty_z2", "ty_z3", "ty_z4", "ty_z5_s2", "ty_z9_s2"].map(String::from));
    names.extend((2..=6).map(|k| format!("psu2_{k}")));
    names.iter().map(|n| build_named(n)).collect()
}

/// Finds a label permutation `p` with `N^{p z}_{p x, p y}(b) = N^z_{xy}(a)`.
pub fn ring_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return None;
    }
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    perm[a.unit()] = b.unit();
    used[b.unit()] = true;
    fn consistent(a: &FusionRing, b: &FusionRing, perm: &[usize]) -> bool {
        let r = a.rank();
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    let (px, py, pz) = (perm[x], perm[y], perm[z]);
                    if px == usize::MAX || py == usize::MAX || pz == usize::MAX {
                        continue;
                    }
                    if a.n(x, y, z) != b.n(px, py, pz) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn search(a: &FusionRing, b: &FusionRing, perm: &mut [usize], used: &mut [bool], x: usize) -> bool {
        let r = a.rank();
        if x == r {
            return true;
        }
        if perm[x] != usize::MAX {
            return search(a, b, perm, used, x + 1);
        }
        for t in 0..r {
            if used[t] {
                continue;
            }
            perm[x] = t;
            used[t] = true;
            if consistent(a, b, perm) && search(a, b, perm, used, x + 1) {
                return true;
            }
            perm[x] = usize::MAX;
            used[t] = false;
        }
        false
    }
    if !consistent(a, b, &perm) {
        return None;
    }
    search(a, b, &mut perm, &mut used, 0).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::{fp_dimensions, is_integral};

    #[test]
    fn pointed_rings() {
        let z2 = build_pointed(&[2]).unwrap();
        assert_eq!(z2.rank(), 2);
        assert_eq!(z2.n(1, 1, 0), 1);
        let klein = build_pointed(&[2, 2]).unwrap();
        assert_eq!(klein.rank(), 4);
        assert!(klein.verify().passed);
        assert!((0..4).all(|g| klein.dual(g) == g));
        let z6 = build_pointed(&[6]).unwrap();
        assert_eq!(z6.dual(1), 5);
        assert_eq!(build_pointed(&[]).unwrap().rank(), 1);
        assert_eq!(build_pointed(&[0]).unwrap_err().name(), "EmptyGroup");
    }

    #[test]
    fn ty_rings() {
        let ty2 = build_ty(&[2], 1).unwrap();
        assert_eq!(ty2.rank(), 3);
        let ising = build_named("ising").unwrap().ring;
        assert!(ring_isomorphism(&ty2, &ising).is_some());

        let ty3 = build_ty(&[3], 1).unwrap();
        assert_eq!(ty3.rank(), 4);
        let d = fp_dimensions(&ty3).unwrap();
        assert!((d.values[3] - 3f64.sqrt()).abs() < 1e-12);

        let ty9 = build_ty(&[9], 2).unwrap();
        assert_eq!(ty9.rank(), 10);
        assert_eq!(is_integral(&ty9).unwrap().integers.unwrap()[9], 3);

        assert_eq!(build_ty(&[4], 2).unwrap_err().name(), "DegenerateBicharacter");
    }

    #[test]
    fn psu2_series() {
        let k2 = build_psu2(2).unwrap();
        assert_eq!(k2.rank(), 2);
        assert!(ring_isomorphism(&k2, &build_pointed(&[2]).unwrap()).is_some());
        let k3 = build_psu2(3).unwrap();
        assert!(ring_isomorphism(&k3, &build_named("fibonacci").unwrap().ring).is_some());
        let k4 = build_psu2(4).unwrap();
        let perm = ring_isomorphism(&k4, &build_named("rep_s3").unwrap().ring).unwrap();
        // X_1 is the two-dimensional object, X_2 the sign.
        assert_eq!(perm, vec![0, 2, 1]);
        assert_eq!(build_psu2(1).unwrap_err().name(), "LevelTooSmall");
        for k in 2..=10 {
            assert!(build_psu2(k).unwrap().verify().passed, "k = {k}");
        }
    }

    #[test]
    fn named_entries() {
        let a4 = build_named("rep_a4").unwrap();
        let d = fp_dimensions(&a4.ring).unwrap();
        assert_eq!(d.exact_integers, Some(vec![1, 1, 1, 3]));
        assert!((d.global_dimension() - 12.0).abs() < 1e-9);

        let s3 = build_named("rep_s3").unwrap();
        assert_eq!(fp_dimensions(&s3.ring).unwrap().exact_integers, Some(vec![1, 1, 2]));

        let h = build_named("haagerup").unwrap();
        assert_eq!(h.ring.rank(), 6);
        assert!(!h.ring.is_commutative());
        let v = is_integral(&h.ring).unwrap();
        assert!(!v.integral);
        let want = (3.0 + 13f64.sqrt()) / 2.0;
        assert!((fp_dimensions(&h.ring).unwrap().values[3] - want).abs() < 1e-10);

        assert_eq!(build_named("e8").unwrap_err().name(), "UnknownName");
    }

    #[test]
    fn standard_entries_verify_and_ty_dims() {
        for e in standard_entries().unwrap() {
            assert!(e.ring.verify().passed, "{}", e.name);
            if e.name.starts_with("ty_") {
                let d = fp_dimensions(&e.ring).unwrap();
                let g = (e.ring.rank() - 1) as f64;
                let rho = d.values[e.ring.rank() - 1];
                assert!((rho * rho - g).abs() < 1e-9, "{}", e.name);
            }
        }
    }
}

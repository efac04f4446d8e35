//! Fusion rings: structure constants `N^Z_{XY}`, duals, Frobenius-Perron
//! dimensions and integrality.
//!
//! Labels are plain indices `0..rank`. The fusion tensor is stored dense and
//! flattened as `fusion[(x * rank + y) * rank + z] = N^z_{xy}`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance used when rounding Frobenius-Perron dimensions to integers.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Relative tolerance of the dimension multiplicativity invariant.
pub const MULTIPLICATIVITY_TOL: f64 = 1e-9;

/// Three-valued knowledge about the existence of a fiber functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberFunctorFlag {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for FiberFunctorFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberFunctorFlag::Yes => "yes",
            FiberFunctorFlag::No => "no",
            FiberFunctorFlag::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingMetadata {
    pub has_known_fiber_functor: FiberFunctorFlag,
    pub source: Option<String>,
}

impl Default for RingMetadata {
    fn default() -> Self {
        Self {
            has_known_fiber_functor: FiberFunctorFlag::Unknown,
            source: None,
        }
    }
}

/// The arithmetic skeleton of a fusion category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionRing {
    name: String,
    labels: Vec<String>,
    unit: usize,
    fusion: Vec<u32>,
    dual: Vec<usize>,
    pub metadata: RingMetadata,
}

impl FusionRing {
    /// Builds a ring from a nested `fusion[x][y][z]` tensor.
    ///
    /// Only the shape is checked here; use [`FusionRing::verify`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: usize,
        fusion: Vec<Vec<Vec<u32>>>,
        dual: Vec<usize>,
    ) -> Result<Self> {
        let rank = labels.len();
        if fusion.len() != rank
            || fusion
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|col| col.len() != rank))
        {
            return Err(Error::MalformedRing(format!(
                "fusion tensor is not {rank}x{rank}x{rank}"
            )));
        }
        let flat = fusion.into_iter().flatten().flatten().collect();
        Self::from_flat(name, labels, unit, flat, dual)
    }

    /// Builds a ring from the flattened tensor (`(x * rank + y) * rank + z`).
    pub fn from_flat(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: usize,
        fusion: Vec<u32>,
        dual: Vec<usize>,
    ) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::MalformedRing("rank must be positive".into()));
        }
        if fusion.len() != rank * rank * rank {
            return Err(Error::MalformedRing(format!(
                "fusion tensor has {} entries, expected {}",
                fusion.len(),
                rank * rank * rank
            )));
        }
        if dual.len() != rank {
            return Err(Error::MalformedRing(format!(
                "dual has length {}, expected {rank}",
                dual.len()
            )));
        }
        if unit >= rank {
            return Err(Error::MalformedRing(format!("unit {unit} out of range")));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::MalformedRing(format!("dual image {bad} out of range")));
        }
        Ok(Self {
            name: name.into(),
            labels,
            unit,
            fusion,
            dual,
            metadata: RingMetadata::default(),
        })
    }

    pub fn with_metadata(mut self, metadata: RingMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, x: usize) -> usize {
        self.dual[x]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `N^z_{xy}`.
    #[inline]
    pub fn n(&self, x: usize, y: usize, z: usize) -> u32 {
        let r = self.rank();
        self.fusion[(x * r + y) * r + z]
    }

    pub fn flat_fusion(&self) -> &[u32] {
        &self.fusion
    }

    /// Returns a copy with a single coefficient replaced. Used for mutation tests.
    pub fn with_coefficient(&self, x: usize, y: usize, z: usize, value: u32) -> Self {
        let r = self.rank();
        let mut out = self.clone();
        out.fusion[(x * r + y) * r + z] = value;
        out
    }

    pub fn check_label(&self, x: usize) -> Result<()> {
        if x < self.rank() {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label: x,
                rank: self.rank(),
            })
        }
    }

    /// Resolves a user-supplied label: display label, ASCII transliteration
    /// (`tau`, `rho`, `a2rho`, ...) or a bare index.
    pub fn label_index(&self, query: &str) -> Result<usize> {
        let q = query.trim();
        if let Some(i) = self.labels.iter().position(|l| l == q) {
            return Ok(i);
        }
        let qa = ascii_label(q);
        if let Some(i) = self.labels.iter().position(|l| ascii_label(l) == qa) {
            return Ok(i);
        }
        if let Ok(i) = q.parse::<usize>() {
            self.check_label(i)?;
            return Ok(i);
        }
        Err(Error::UnknownLabel(query.to_string()))
    }

    /// Stable hash of the structure constants, used to tell rings apart.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.unit.hash(&mut h);
        self.fusion.hash(&mut h);
        self.dual.hash(&mut h);
        h.finish()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|x| (0..r).all(|y| (0..r).all(|z| self.n(x, y, z) == self.n(y, x, z))))
    }

    /// Checks the unit, duality, Frobenius reciprocity and associativity axioms.
    pub fn verify(&self) -> VerificationReport {
        verify_ring(self)
    }

    /// Left multiplication by `x` on a multiplicity vector: `v ↦ [x]·v`,
    /// i.e. `out[z] = Σ_y N^z_{x y} v[y]`.
    pub fn left_multiply(&self, x: usize, v: &[u64]) -> Result<Vec<u64>> {
        let r = self.rank();
        let mut out = vec![0u64; r];
        for (y, &vy) in v.iter().enumerate() {
            if vy == 0 {
                continue;
            }
            for (z, o) in out.iter_mut().enumerate() {
                let n = self.n(x, y, z) as u64;
                if n != 0 {
                    *o = n
                        .checked_mul(vy)
                        .and_then(|t| o.checked_add(t))
                        .ok_or_else(|| Error::Overflow("multiplicity exceeds u64".into()))?;
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication of a multiplicity vector by `y`: `v ↦ v·[y]`.
    pub fn right_multiply(&self, v: &[u64], y: usize) -> Result<Vec<u64>> {
        let r = self.rank();
        let mut out = vec![0u64; r];
        for (x, &vx) in v.iter().enumerate() {
            if vx == 0 {
                continue;
            }
            for (z, o) in out.iter_mut().enumerate() {
                let n = self.n(x, y, z) as u64;
                if n != 0 {
                    *o = n
                        .checked_mul(vx)
                        .and_then(|t| o.checked_add(t))
                        .ok_or_else(|| Error::Overflow("multiplicity exceeds u64".into()))?;
                }
            }
        }
        Ok(out)
    }

    /// Product of two objects given as multiplicity vectors.
    pub fn multiply_vectors(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        let r = self.rank();
        let mut out = vec![0u64; r];
        for (x, &ax) in a.iter().enumerate() {
            if ax == 0 {
                continue;
            }
            for (y, &by) in b.iter().enumerate() {
                if by == 0 {
                    continue;
                }
                let w = ax
                    .checked_mul(by)
                    .ok_or_else(|| Error::Overflow("multiplicity exceeds u64".into()))?;
                for (z, o) in out.iter_mut().enumerate() {
                    let n = self.n(x, y, z) as u64;
                    if n != 0 {
                        *o = n
                            .checked_mul(w)
                            .and_then(|t| o.checked_add(t))
                            .ok_or_else(|| Error::Overflow("multiplicity exceeds u64".into()))?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn unit_vector(&self) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[self.unit] = 1;
        v
    }

    /// Serializes to the line-oriented ring file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("ring {}\n", self.name));
        s.push_str(&format!("labels {}\n", self.labels.join(" ")));
        s.push_str(&format!("unit {}\n", self.unit));
        let dual: Vec<String> = self.dual.iter().map(|d| d.to_string()).collect();
        s.push_str(&format!("dual {}\n", dual.join(" ")));
        let r = self.rank();
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    let n = self.n(x, y, z);
                    if n != 0 {
                        s.push_str(&format!("N {x} {y} {z} {n}\n"));
                    }
                }
            }
        }
        s
    }

    /// Parses the line-oriented ring file format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let mut header = |key: &str| -> Result<(usize, Vec<String>)> {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("missing `{key}` line"),
            })?;
            let mut toks = line.split_whitespace();
            if toks.next() != Some(key) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected `{key}`"),
                });
            }
            Ok((ln, toks.map(str::to_string).collect()))
        };

        let (ln, name) = header("ring")?;
        if name.len() != 1 {
            return Err(Error::Parse {
                line: ln,
                msg: "ring name must be a single token".into(),
            });
        }
        let (_, labels) = header("labels")?;
        let (ln, unit) = header("unit")?;
        let unit = match unit.as_slice() {
            [u] => parse_index(u, ln)?,
            _ => {
                return Err(Error::Parse {
                    line: ln,
                    msg: "`unit` takes one index".into(),
                })
            }
        };
        let (ln, dual) = header("dual")?;
        let dual = dual
            .iter()
            .map(|t| parse_index(t, ln))
            .collect::<Result<Vec<_>>>()?;

        let rank = labels.len();
        if rank == 0 {
            return Err(Error::MalformedRing("no labels".into()));
        }
        let mut fusion = vec![0u32; rank * rank * rank];
        let mut seen = vec![false; rank * rank * rank];
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 || toks[0] != "N" {
                return Err(Error::Parse {
                    line: ln,
                    msg: "expected `N <X> <Y> <Z> <mult>`".into(),
                });
            }
            let idx: Vec<usize> = toks[1..4]
                .iter()
                .map(|t| parse_index(t, ln))
                .collect::<Result<_>>()?;
            if idx.iter().any(|&i| i >= rank) {
                return Err(Error::MalformedRing(format!(
                    "line {ln}: label index out of range"
                )));
            }
            let mult: u32 = toks[4].parse().map_err(|_| Error::Parse {
                line: ln,
                msg: format!("bad multiplicity `{}`", toks[4]),
            })?;
            let k = (idx[0] * rank + idx[1]) * rank + idx[2];
            if seen[k] {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("duplicate entry N {} {} {}", idx[0], idx[1], idx[2]),
                });
            }
            seen[k] = true;
            fusion[k] = mult;
        }
        FusionRing::from_flat(name[0].clone(), labels, unit, fusion, dual)
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad index `{tok}`"),
    })
}

/// ASCII transliteration used for label lookup.
pub fn ascii_label(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        match c {
            'τ' => out.push_str("tau"),
            'ψ' => out.push_str("psi"),
            'σ' => out.push_str("sigma"),
            'π' => out.push_str("pi"),
            'χ' => out.push_str("chi"),
            'ρ' => out.push_str("rho"),
            'α' => out.push('a'),
            'ε' => out.push_str("eps"),
            '²' => out.push('2'),
            '𝟙' => out.push('1'),
            c => out.extend(c.to_lowercase()),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Unit,
    DualInvolution,
    Duality,
    FrobeniusReciprocity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unit => "unit",
            Axiom::DualInvolution => "dual involution",
            Axiom::Duality => "duality",
            Axiom::FrobeniusReciprocity => "Frobenius reciprocity",
            Axiom::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witness label indices; their meaning depends on the axiom.
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub violation: Option<Violation>,
}

impl VerificationReport {
    fn fail(axiom: Axiom, witness: Vec<usize>, detail: String) -> Self {
        Self {
            passed: false,
            violation: Some(Violation {
                axiom,
                witness,
                detail,
            }),
        }
    }
}

/// Checks the fusion ring axioms in a fixed order and reports the first
/// violation found.
pub fn verify_ring(ring: &FusionRing) -> VerificationReport {
    let r = ring.rank();
    let one = ring.unit();

    for x in 0..r {
        for z in 0..r {
            let want = u32::from(x == z);
            if ring.n(one, x, z) != want {
                return VerificationReport::fail(
                    Axiom::Unit,
                    vec![one, x, z],
                    format!("N^{z}_{{1,{x}}} = {}", ring.n(one, x, z)),
                );
            }
            if ring.n(x, one, z) != want {
                return VerificationReport::fail(
                    Axiom::Unit,
                    vec![x, one, z],
                    format!("N^{z}_{{{x},1}} = {}", ring.n(x, one, z)),
                );
            }
        }
    }

    for x in 0..r {
        if ring.dual(ring.dual(x)) != x {
            return VerificationReport::fail(
                Axiom::DualInvolution,
                vec![x],
                format!("dual(dual({x})) = {}", ring.dual(ring.dual(x))),
            );
        }
    }

    for x in 0..r {
        for y in 0..r {
            let want = u32::from(y == ring.dual(x));
            if ring.n(x, y, one) != want {
                return VerificationReport::fail(
                    Axiom::Duality,
                    vec![x, y],
                    format!("N^1_{{{x},{y}}} = {}", ring.n(x, y, one)),
                );
            }
        }
    }

    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                let n = ring.n(x, y, z);
                let a = ring.n(ring.dual(x), z, y);
                let b = ring.n(z, ring.dual(y), x);
                if n != a || n != b {
                    return VerificationReport::fail(
                        Axiom::FrobeniusReciprocity,
                        vec![x, y, z],
                        format!("N^{z}_{{{x},{y}}}={n}, N^{y}_{{x̄,{z}}}={a}, N^{x}_{{{z},ȳ}}={b}"),
                    );
                }
            }
        }
    }

    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                for w in 0..r {
                    let left: u64 = (0..r)
                        .map(|e| ring.n(x, y, e) as u64 * ring.n(e, z, w) as u64)
                        .sum();
                    let right: u64 = (0..r)
                        .map(|f| ring.n(x, f, w) as u64 * ring.n(y, z, f) as u64)
                        .sum();
                    if left != right {
                        return VerificationReport::fail(
                            Axiom::Associativity,
                            vec![x, y, z, w],
                            format!("((x y) z) has {left} copies of w, (x (y z)) has {right}"),
                        );
                    }
                }
            }
        }
    }

    VerificationReport {
        passed: true,
        violation: None,
    }
}

/// Frobenius-Perron dimensions, one per label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionVector {
    pub values: Vec<f64>,
    pub exact_integers: Option<Vec<u64>>,
}

impl DimensionVector {
    /// `Σ d_X²`.
    pub fn global_dimension(&self) -> f64 {
        self.values.iter().map(|d| d * d).sum()
    }

    /// Largest `|d_X d_Y − Σ_Z N^Z_{XY} d_Z| / (d_X d_Y)` over all pairs,
    /// with the pair attaining it.
    pub fn multiplicativity_defect(&self, ring: &FusionRing) -> (f64, (usize, usize)) {
        let r = ring.rank();
        let mut worst = (0.0, (0, 0));
        for x in 0..r {
            for y in 0..r {
                let dxdy = self.values[x] * self.values[y];
                let s: f64 = (0..r).map(|z| ring.n(x, y, z) as f64 * self.values[z]).sum();
                let rel = (dxdy - s).abs() / dxdy;
                if rel > worst.0 {
                    worst = (rel, (x, y));
                }
            }
        }
        worst
    }

    pub fn is_multiplicative(&self, ring: &FusionRing) -> bool {
        self.values.len() == ring.rank()
            && self.multiplicativity_defect(ring).0 <= MULTIPLICATIVITY_TOL
    }
}

/// Computes Frobenius-Perron dimensions by power iteration on `Σ_X N_X`.
pub fn fp_dimensions(ring: &FusionRing) -> Result<DimensionVector> {
    let report = ring.verify();
    if let Some(v) = report.violation {
        return Err(Error::NonVerifiedRing(format!(
            "{} fails at {:?}: {}",
            v.axiom, v.witness, v.detail
        )));
    }
    Ok(fp_dimensions_unchecked(ring))
}

/// Power iteration without the axiom check. The ring must be irreducible
/// (every label appears in some product) for the result to be meaningful.
pub fn fp_dimensions_unchecked(ring: &FusionRing) -> DimensionVector {
    let r = ring.rank();
    // total[y][z] = Σ_x N^z_{xy}; contains the identity through the unit.
    let mut total = vec![0.0f64; r * r];
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                total[y * r + z] += ring.n(x, y, z) as f64;
            }
        }
    }
    let unit = ring.unit();
    let mut v = vec![1.0f64; r];
    let mut next = vec![0.0f64; r];
    for _ in 0..200_000 {
        for y in 0..r {
            next[y] = (0..r).map(|z| total[y * r + z] * v[z]).sum();
        }
        let norm = next[unit];
        next.iter_mut().for_each(|t| *t /= norm);
        let delta = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut next);
        if delta < 1e-14 {
            break;
        }
    }

    // Per-object refinement: d_X = ⟨N_X d, d⟩ / ⟨d, d⟩.
    let norm2: f64 = v.iter().map(|t| t * t).sum();
    let mut values: Vec<f64> = (0..r)
        .map(|x| {
            let mut acc = 0.0;
            for y in 0..r {
                for z in 0..r {
                    acc += ring.n(x, y, z) as f64 * v[z] * v[y];
                }
            }
            acc / norm2
        })
        .collect();
    values[unit] = 1.0;

    let exact_integers = values
        .iter()
        .map(|&d| {
            let k = d.round();
            (k >= 1.0 && (d - k).abs() <= INTEGRALITY_TOL).then_some(k as u64)
        })
        .collect();
    DimensionVector {
        values,
        exact_integers,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// `(label, d_X)` for every label whose dimension is not an integer.
    pub non_integral: Vec<(usize, f64)>,
    pub integers: Option<Vec<u64>>,
}

pub fn is_integral(ring: &FusionRing) -> Result<IntegralityVerdict> {
    let dims = fp_dimensions(ring)?;
    Ok(integrality_of(&dims))
}

pub fn integrality_of(dims: &DimensionVector) -> IntegralityVerdict {
    let non_integral: Vec<(usize, f64)> = dims
        .values
        .iter()
        .enumerate()
        .filter(|(_, &d)| {
            let k = d.round();
            k < 1.0 || (d - k).abs() > INTEGRALITY_TOL
        })
        .map(|(i, &d)| (i, d))
        .collect();
    IntegralityVerdict {
        integral: non_integral.is_empty(),
        non_integral,
        integers: dims.exact_integers.clone(),
    }
}

/// Multiplicities of every simple in the ordered product `w_1 ⊗ ... ⊗ w_n`.
pub fn tensor_multiplicities(ring: &FusionRing, word: &[usize]) -> Result<Vec<u64>> {
    if word.is_empty() {
        return Err(Error::MalformedRing("empty word".into()));
    }
    for &x in word {
        ring.check_label(x)?;
    }
    let mut v = ring.unit_vector();
    for &x in word {
        v = ring.right_multiply(&v, x)?;
    }
    Ok(v)
}

/// The regular element `R = Σ_X d_X X` of an integral ring.
pub fn regular_object(ring: &FusionRing) -> Result<Vec<u64>> {
    let verdict = is_integral(ring)?;
    match verdict.integers {
        Some(d) if verdict.integral => Ok(d),
        _ => Err(Error::NonIntegralRing(describe_non_integral(ring, &verdict))),
    }
}

pub(crate) fn describe_non_integral(ring: &FusionRing, v: &IntegralityVerdict) -> String {
    v.non_integral
        .iter()
        .map(|&(x, d)| format!("d_{} = {:.10}", ring.label(x), d))
        .collect::<Vec<_>>()
        .join(", ")
}

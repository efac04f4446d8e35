//! Dimension bookkeeping for fusion spin chains and the Pauli-level
//! Kramers-Wannier generator check.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_ring::{regular_object, FusionRing};

/// `dim End(X^{⊗k})` for `k = 1..=n`.
pub fn chain_dims(ring: &FusionRing, x: usize, n: usize) -> Result<Vec<BigUint>> {
    chain_dims_sum(ring, &[x], n)
}

/// [`chain_dims`] for the direct sum `X = ⊕ summands` (repeats allowed).
pub fn chain_dims_sum(ring: &FusionRing, summands: &[usize], n: usize) -> Result<Vec<BigUint>> {
    if summands.is_empty() {
        return Err(Error::MalformedRing("empty direct sum".into()));
    }
    let r = ring.rank();
    let mut x = vec![0u32; r];
    for &s in summands {
        ring.check_label(s)?;
        x[s] += 1;
    }
    let mut m: Vec<BigUint> = x.iter().map(|&c| BigUint::from(c)).collect();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            let mut next = vec![BigUint::zero(); r];
            for (a, ma) in m.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (b, &xb) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
                    for (z, slot) in next.iter_mut().enumerate() {
                        let c = ring.n(a, b, z) * xb;
                        if c != 0 {
                            *slot += ma * c;
                        }
                    }
                }
            }
            m = next;
        }
        out.push(m.iter().map(|v| v * v).sum());
    }
    Ok(out)
}

/// `dims[X][Y] = dim(_X H _Y)` for `H = R` the regular object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigradedDims {
    pub ring: String,
    pub labels: Vec<String>,
    pub dims: Vec<Vec<u64>>,
    /// The integer FP dimensions `d_X`.
    pub fp_dims: Vec<u64>,
    /// Onsite dimension `d = Σ d_X²`.
    pub onsite_dim: u64,
}

impl BigradedDims {
    /// True iff `dims[X][Y] = d_X d_Y` for every pair.
    pub fn is_rank_one(&self) -> bool {
        let d = &self.fp_dims;
        self.dims
            .iter()
            .enumerate()
            .all(|(x, row)| row.iter().enumerate().all(|(y, &v)| v == d[x] * d[y]))
    }
}

/// Multiplicity of `X` in `R ⊗ Y` for the regular object `R = Σ d_X X`.
pub fn regular_bigraded(ring: &FusionRing) -> Result<BigradedDims> {
    let d = regular_object(ring)?;
    let r = ring.rank();
    let mut dims = vec![vec![0u64; r]; r];
    for y in 0..r {
        let col = ring.right_multiply(&d, y)?;
        for x in 0..r {
            dims[x][y] = col[x];
        }
    }
    let onsite_dim = d.iter().map(|v| v * v).sum();
    let out = BigradedDims {
        ring: ring.name().to_string(),
        labels: ring.labels().to_vec(),
        dims,
        fp_dims: d,
        onsite_dim,
    };
    debug_assert!(out.is_rank_one());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub k: usize,
    pub onsite_dim: u64,
    /// `D^k` where `D` is the bigraded dimension matrix.
    pub power: Vec<Vec<BigUint>>,
    /// Every entry equals `d_X d_Y d^{k-1}`.
    pub entries_match: bool,
    /// `Σ_{X,Y} (D^k)_{XY}²`.
    pub image_dim: BigUint,
    /// `d^{2(k+1)}`.
    pub target_dim: BigUint,
    pub passed: bool,
}

/// Checks the dimension bookkeeping of the spread-one embedding of `k` sites
/// of the symmetric chain into `k + 1` sites of the tensor-product chain.
pub fn embedding_dim_check(ring: &FusionRing, k: usize) -> Result<EmbeddingReport> {
    if k == 0 {
        return Err(Error::WindowTooSmall("k must be at least 1".into()));
    }
    let b = regular_bigraded(ring)?;
    let r = ring.rank();
    let base: Vec<Vec<BigUint>> = b
        .dims
        .iter()
        .map(|row| row.iter().map(|&v| BigUint::from(v)).collect())
        .collect();
    let mut power = base.clone();
    for _ in 1..k {
        power = (0..r)
            .map(|x| {
                (0..r)
                    .map(|y| (0..r).map(|z| &power[x][z] * &base[z][y]).sum())
                    .collect()
            })
            .collect();
    }
    let d = BigUint::from(b.onsite_dim);
    let dk1 = num_traits::pow(d.clone(), k - 1);
    let entries_match = (0..r).all(|x| {
        (0..r).all(|y| power[x][y] == BigUint::from(b.fp_dims[x] * b.fp_dims[y]) * &dk1)
    });
    let image_dim: BigUint = power.iter().flatten().map(|v| v * v).sum();
    let target_dim = num_traits::pow(d, 2 * (k + 1));
    let passed = entries_match && image_dim <= target_dim;
    Ok(EmbeddingReport {
        k,
        onsite_dim: b.onsite_dim,
        power,
        entries_match,
        image_dim,
        target_dim,
        passed,
    })
}

/// A Pauli string up to phase, as a vector over GF(2) of length `2n`.
/// Sites are numbered `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PauliWord {
    pub n: usize,
    pub x: Vec<bool>,
    pub z: Vec<bool>,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![false; n],
            z: vec![false; n],
        }
    }

    /// `σˣ_i`, or `None` off the window.
    pub fn sigma_x(n: usize, i: usize) -> Option<Self> {
        let mut w = Self::identity(n);
        w.x[site(n, i)?] = true;
        Some(w)
    }

    /// `σᶻ_i σᶻ_{i+1}`, or `None` if either site is off the window.
    pub fn sigma_zz(n: usize, i: usize) -> Option<Self> {
        let mut w = Self::identity(n);
        w.z[site(n, i)?] = true;
        w.z[site(n, i + 1)?] = true;
        Some(w)
    }

    /// `⟨a, b⟩ = Σ_i (a.x_i b.z_i + a.z_i b.x_i) mod 2`; true iff the words anticommute.
    pub fn symplectic(&self, other: &Self) -> bool {
        (0..self.n).fold(false, |acc, i| {
            acc ^ (self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])
        })
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        !self.symplectic(other)
    }
}

impl std::fmt::Display for PauliWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut any = false;
        for i in 0..self.n {
            let c = match (self.x[i], self.z[i]) {
                (false, false) => continue,
                (true, false) => "X",
                (false, true) => "Z",
                (true, true) => "Y",
            };
            write!(f, "{c}{}", i + 1)?;
            any = true;
        }
        if !any {
            write!(f, "I")?;
        }
        Ok(())
    }
}

fn site(n: usize, i: usize) -> Option<usize> {
    (1..=n).contains(&i).then(|| i - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PauliKwReport {
    pub n: usize,
    pub generators: usize,
    /// Generators whose image lies inside the window.
    pub surviving: usize,
    pub pairs_checked: usize,
    /// `(g, h)` display pairs whose commutation changes under the map.
    pub violations: Vec<(String, String)>,
    pub passed: bool,
}

/// The Kramers-Wannier map `σˣ_i ↦ σᶻ_{i−1}σᶻ_i`, `σᶻ_iσᶻ_{i+1} ↦ σˣ_i` on a
/// window of `n` sites; checks that the symplectic form is preserved on every
/// pair of generators whose images survive.
pub fn pauli_kw_check(n: usize) -> Result<PauliKwReport> {
    if n < 3 {
        return Err(Error::WindowTooSmall(format!("n = {n}, need n ≥ 3")));
    }
    let mut pairs: Vec<(PauliWord, Option<PauliWord>)> = Vec::new();
    for i in 1..=n {
        let g = PauliWord::sigma_x(n, i).expect("inside window");
        let img = if i >= 2 { PauliWord::sigma_zz(n, i - 1) } else { None };
        pairs.push((g, img));
    }
    for i in 1..n {
        let g = PauliWord::sigma_zz(n, i).expect("inside window");
        pairs.push((g, PauliWord::sigma_x(n, i)));
    }
    let generators = pairs.len();
    let kept: Vec<(PauliWord, PauliWord)> = pairs
        .into_iter()
        .filter_map(|(g, img)| img.map(|i| (g, i)))
        .collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..kept.len() {
        for b in a..kept.len() {
            pairs_checked += 1;
            if kept[a].0.symplectic(&kept[b].0) != kept[a].1.symplectic(&kept[b].1) {
                violations.push((kept[a].0.to_string(), kept[b].0.to_string()));
            }
        }
    }
    Ok(PauliKwReport {
        n,
        generators,
        surviving: kept.len(),
        pairs_checked,
        passed: violations.is_empty(),
        violations,
    })
}

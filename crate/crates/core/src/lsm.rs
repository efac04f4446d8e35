//! Verdicts: realizability, fiber-functor status, vacua counts and
//! gaplessness from missing fiber functors or anomalous dualities.

use std::fmt;

use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::center::{anomaly_verdict, AnomalyVerdict, CenterAutomorphism, Lagrangian, MetricGroup};
use crate::error::{Error, Result};
use crate::fusion_ring::{fp_dimensions_unchecked, integrality_of, FiberFunctorFlag};

/// Three-valued fiber-functor status. `Yes` only comes from catalog provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FiberFunctorVerdict {
    Yes,
    /// A label whose dimension is not an integer.
    No { witness: String, dimension: f64 },
    Unknown,
}

impl FiberFunctorVerdict {
    pub fn flag(&self) -> FiberFunctorFlag {
        match self {
            Self::Yes => FiberFunctorFlag::Yes,
            Self::No { .. } => FiberFunctorFlag::No,
            Self::Unknown => FiberFunctorFlag::Unknown,
        }
    }
}

impl fmt::Display for FiberFunctorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Yes => write!(f, "yes"),
            Self::No { witness, dimension } => {
                write!(f, "no (d_{witness} ≈ {dimension:.4} is not an integer)")
            }
            Self::Unknown => write!(f, "unknown"),
        }
    }
}

pub fn fiber_functor_verdict(entry: &CatalogEntry) -> FiberFunctorVerdict {
    let dims = fp_dimensions_unchecked(&entry.ring);
    let integrality = integrality_of(&dims);
    if let Some(&(x, d)) = integrality.non_integral.first() {
        return FiberFunctorVerdict::No {
            witness: entry.ring.label(x).to_string(),
            dimension: d,
        };
    }
    match entry.fiber_functor_flag {
        FiberFunctorFlag::Yes => FiberFunctorVerdict::Yes,
        _ => FiberFunctorVerdict::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateKind {
    Topological { vacua: usize },
    Gapless,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateVerdict {
    pub kind: StateKind,
    pub reason: String,
}

impl StateVerdict {
    fn new(kind: StateKind, reason: impl Into<String>) -> Self {
        if let StateKind::Topological { vacua } = kind {
            assert!(vacua >= 1, "a topological state has at least one vacuum");
        }
        Self {
            kind,
            reason: reason.into(),
        }
    }

    pub fn is_gapless(&self) -> bool {
        self.kind == StateKind::Gapless
    }
}

impl fmt::Display for StateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StateKind::Topological { vacua } => {
                write!(f, "topological, {vacua} vacua ({})", self.reason)
            }
            StateKind::Gapless => write!(f, "gapless ({})", self.reason),
            StateKind::Indeterminate => write!(f, "indeterminate ({})", self.reason),
        }
    }
}

/// Number of vacua of the state induced by `l_state` against the boundary
/// condition `l_ext`: the size of their intersection.
pub fn vacua_count(l_state: &Lagrangian, l_ext: &Lagrangian) -> Result<usize> {
    if l_state.ambient_factors() != l_ext.ambient_factors() {
        return Err(Error::MetricGroupMismatch);
    }
    let (a, b) = (l_state.elements(), l_ext.elements());
    // Both sorted.
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(n)
}

/// Verdict for a pure symmetric state of a chain with symmetry `entry`.
pub fn lsm_verdict(entry: &CatalogEntry) -> StateVerdict {
    match fiber_functor_verdict(entry) {
        FiberFunctorVerdict::No { witness, dimension } => StateVerdict::new(
            StateKind::Gapless,
            format!("no fiber functor: d_{witness} ≈ {dimension:.4}"),
        ),
        FiberFunctorVerdict::Yes => StateVerdict::new(
            StateKind::Topological { vacua: 1 },
            "unobstructed: a fiber functor gives a symmetric topological state with a unique vacuum",
        ),
        FiberFunctorVerdict::Unknown => StateVerdict::new(
            StateKind::Indeterminate,
            "integral, but fiber-functor status is not recorded",
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityVerdict {
    pub verdict: StateVerdict,
    pub anomaly: AnomalyVerdict,
}

/// Covariant states of an anomalous duality are gapless; otherwise the fixed
/// Lagrangians are reported as candidate topological sectors.
pub fn duality_gapless_verdict(m: &MetricGroup, phi: &CenterAutomorphism) -> Result<DualityVerdict> {
    let anomaly = anomaly_verdict(m, phi)?;
    let verdict = if anomaly.anomalous {
        let orbits: Vec<String> = anomaly
            .orbits
            .iter()
            .map(|o| {
                let names: Vec<String> = o.iter().map(|&i| anomaly.lagrangians[i].display(m)).collect();
                format!("[{}]", names.join(", "))
            })
            .collect();
        StateVerdict::new(
            StateKind::Gapless,
            format!("anomalous: no fixed Lagrangian; orbits {}", orbits.join(" ")),
        )
    } else {
        let fixed: Vec<String> = anomaly
            .fixed
            .iter()
            .map(|&i| anomaly.lagrangians[i].display(m))
            .collect();
        StateVerdict::new(
            StateKind::Indeterminate,
            format!("fixed Lagrangians: {}", fixed.join(", ")),
        )
    };
    Ok(DualityVerdict { verdict, anomaly })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub ring: String,
    pub anyon_chain: bool,
    pub tensor_product: bool,
    pub onsite_tensor_product: FiberFunctorFlag,
}

pub fn realizability_report(entry: &CatalogEntry) -> RealizabilityReport {
    let dims = fp_dimensions_unchecked(&entry.ring);
    let tensor_product = integrality_of(&dims).integral;
    let onsite = fiber_functor_verdict(entry).flag();
    debug_assert!(onsite != FiberFunctorFlag::Yes || tensor_product);
    RealizabilityReport {
        ring: entry.name.clone(),
        anyon_chain: true,
        tensor_product,
        onsite_tensor_product: onsite,
    }
}

//! The symmetry hypergroup: convex combinations of the symbols `λ_X` with
//! `λ_X λ_Y = Σ_Z (d_Z N^Z_{XY} / (d_X d_Y)) λ_Z`.
//!
//! Integral rings carry an exact rational track alongside the floating one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fusion_ring::{fp_dimensions, integrality_of, DimensionVector, FusionRing};

/// Tolerance for comparing floating-point channel coefficients.
pub const CHANNEL_TOL: f64 = 1e-10;

/// Allowed drift of the coefficient sum from 1.
pub const SUM_TOL: f64 = 1e-12;

/// A point of the simplex spanned by the `λ_X`, indexed by label.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelCombo {
    fingerprint: u64,
    coeffs: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

impl ChannelCombo {
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coefficient(&self, x: usize) -> f64 {
        self.coeffs[x]
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn ring_fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Labels with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        match &self.exact {
            Some(e) => (0..e.len()).filter(|&i| !e[i].is_zero()).collect(),
            None => (0..self.coeffs.len())
                .filter(|&i| self.coeffs[i].abs() > CHANNEL_TOL)
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Exact equality when both carry rationals, otherwise agreement within `tol`.
    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        if self.fingerprint != other.fingerprint {
            return false;
        }
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.max_abs_diff(other) <= tol,
        }
    }
}

/// `S(C)` for a verified ring: the ring, its dimensions, and exact dimensions
/// when every `d_X` is an integer.
#[derive(Debug, Clone)]
pub struct SymmetryHypergroup {
    ring: FusionRing,
    dims: DimensionVector,
    exact_dims: Option<Vec<BigInt>>,
}

impl SymmetryHypergroup {
    pub fn new(ring: &FusionRing) -> Result<Self> {
        let dims = fp_dimensions(ring)?;
        let verdict = integrality_of(&dims);
        let exact_dims = match (&verdict.integers, verdict.integral) {
            (Some(d), true) => Some(d.iter().map(|&k| BigInt::from(k)).collect()),
            _ => None,
        };
        Ok(Self {
            ring: ring.clone(),
            dims,
            exact_dims,
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn is_exact(&self) -> bool {
        self.exact_dims.is_some()
    }

    fn combo(&self, coeffs: Vec<f64>, exact: Option<Vec<BigRational>>) -> ChannelCombo {
        // The exact track is authoritative: derive the floats from it.
        let coeffs = match &exact {
            Some(e) => e.iter().map(rational_to_f64).collect(),
            None => coeffs,
        };
        ChannelCombo {
            fingerprint: self.ring.fingerprint(),
            coeffs,
            exact,
        }
    }

    /// The vertex `λ_X`.
    pub fn lambda(&self, x: usize) -> Result<ChannelCombo> {
        self.ring.check_label(x)?;
        let r = self.ring.rank();
        let mut c = vec![0.0; r];
        c[x] = 1.0;
        let exact = self.exact_dims.as_ref().map(|_| {
            (0..r)
                .map(|i| if i == x { BigRational::one() } else { BigRational::zero() })
                .collect()
        });
        Ok(self.combo(c, exact))
    }

    /// A convex combination from floating weights; exact rings reject it
    /// unless every weight is a dyadic rational (use [`Self::combo_exact`]).
    pub fn combo_from_weights(&self, weights: &[f64]) -> Result<ChannelCombo> {
        self.check_len(weights.len())?;
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidCombo("coefficients must be non-negative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidCombo(format!("coefficients sum to {sum}, not 1")));
        }
        let exact = self.exact_dims.as_ref().map(|_| {
            weights
                .iter()
                .map(|&w| BigRational::from_float(w).expect("finite"))
                .collect::<Vec<_>>()
        });
        match exact {
            Some(e) if e.iter().sum::<BigRational>() == BigRational::one() => Ok(self.combo(vec![], Some(e))),
            Some(_) => Err(Error::InvalidCombo(
                "weights are not exactly representable; supply rationals".into(),
            )),
            None => Ok(self.combo(weights.to_vec(), None)),
        }
    }

    /// A convex combination from exact weights (integral rings only).
    pub fn combo_exact(&self, weights: Vec<BigRational>) -> Result<ChannelCombo> {
        self.check_len(weights.len())?;
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidCombo("coefficients must be non-negative".into()));
        }
        if weights.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::InvalidCombo("coefficients must sum to 1".into()));
        }
        if self.exact_dims.is_some() {
            Ok(self.combo(vec![], Some(weights)))
        } else {
            let floats = weights.iter().map(rational_to_f64).collect();
            Ok(self.combo(floats, None))
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ring.rank() {
            return Err(Error::InvalidCombo(format!(
                "{n} coefficients for a rank-{} ring",
                self.ring.rank()
            )));
        }
        Ok(())
    }

    /// `λ_X λ_Y`.
    pub fn lambda_compose(&self, x: usize, y: usize) -> Result<ChannelCombo> {
        self.ring.check_label(x)?;
        self.ring.check_label(y)?;
        let r = self.ring.rank();
        let d = &self.dims.values;
        let coeffs = (0..r)
            .map(|z| d[z] * self.ring.n(x, y, z) as f64 / (d[x] * d[y]))
            .collect();
        let exact = self.exact_dims.as_ref().map(|e| {
            (0..r)
                .map(|z| {
                    BigRational::new(
                        &e[z] * BigInt::from(self.ring.n(x, y, z)),
                        &e[x] * &e[y],
                    )
                })
                .collect()
        });
        Ok(self.combo(coeffs, exact))
    }

    /// Bilinear extension of [`Self::lambda_compose`].
    pub fn combo_compose(&self, a: &ChannelCombo, b: &ChannelCombo) -> Result<ChannelCombo> {
        let fp = self.ring.fingerprint();
        if a.fingerprint != fp || b.fingerprint != fp {
            return Err(Error::RingMismatch);
        }
        let r = self.ring.rank();
        let mut coeffs = vec![0.0; r];
        let mut exact = match (&a.exact, &b.exact, &self.exact_dims) {
            (Some(_), Some(_), Some(_)) => Some(vec![BigRational::zero(); r]),
            _ => None,
        };
        for x in 0..r {
            for y in 0..r {
                let w = a.coeffs[x] * b.coeffs[y];
                let exact_w = exact.as_ref().map(|_| {
                    &a.exact.as_ref().unwrap()[x] * &b.exact.as_ref().unwrap()[y]
                });
                if w == 0.0 && exact_w.as_ref().is_none_or(Zero::is_zero) {
                    continue;
                }
                let l = self.lambda_compose(x, y)?;
                for z in 0..r {
                    coeffs[z] += w * l.coeffs[z];
                }
                if let (Some(acc), Some(ew), Some(le)) = (exact.as_mut(), &exact_w, &l.exact) {
                    for z in 0..r {
                        acc[z] += ew * &le[z];
                    }
                }
            }
        }
        Ok(self.combo(coeffs, exact))
    }

    /// `E = Σ_X (d_X² / Dim) λ_X`.
    pub fn conditional_expectation(&self) -> ChannelCombo {
        let dim = self.dims.global_dimension();
        let coeffs = self.dims.values.iter().map(|d| d * d / dim).collect();
        let exact = self.exact_dims.as_ref().map(|e| {
            let total: BigInt = e.iter().map(|d| d * d).sum();
            e.iter()
                .map(|d| BigRational::new(d * d, total.clone()))
                .collect()
        });
        self.combo(coeffs, exact)
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// `λ_X λ_Y` in `S(ring)`.
pub fn lambda_compose(ring: &FusionRing, x: usize, y: usize) -> Result<ChannelCombo> {
    SymmetryHypergroup::new(ring)?.lambda_compose(x, y)
}

/// Composition of two combos over `ring`.
pub fn combo_compose(ring: &FusionRing, a: &ChannelCombo, b: &ChannelCombo) -> Result<ChannelCombo> {
    SymmetryHypergroup::new(ring)?.combo_compose(a, b)
}

/// The conditional expectation of `S(ring)`.
pub fn conditional_expectation(ring: &FusionRing) -> Result<ChannelCombo> {
    Ok(SymmetryHypergroup::new(ring)?.conditional_expectation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_named, build_pointed, standard_entries};

    fn hg(name: &str) -> SymmetryHypergroup {
        SymmetryHypergroup::new(&build_named(name).unwrap().ring).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn z2_invertible() {
        let h = SymmetryHypergroup::new(&build_pointed(&[2]).unwrap()).unwrap();
        assert!(h.is_exact());
        let c = h.lambda_compose(1, 1).unwrap();
        assert_eq!(c.exact().unwrap(), &[q(1, 1), q(0, 1)]);
        let e = h.conditional_expectation();
        assert_eq!(e.exact().unwrap(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn fibonacci_tau_tau() {
        let h = hg("fibonacci");
        assert!(!h.is_exact());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c = h.lambda_compose(1, 1).unwrap();
        assert!((c.coefficient(0) - 1.0 / (phi * phi)).abs() < 1e-12);
        assert!((c.coefficient(1) - 1.0 / phi).abs() < 1e-12);
        assert!((c.coefficient(0) - 0.381_966_011_250_105).abs() < 1e-12);
        let e = h.conditional_expectation();
        assert!((e.coefficient(0) - 0.276_393_202_250_021).abs() < 1e-12);
        assert!((e.coefficient(1) - 0.723_606_797_749_979).abs() < 1e-12);
        // Associativity instance.
        let t = h.lambda(1).unwrap();
        let tt = h.combo_compose(&t, &t).unwrap();
        let left = h.combo_compose(&t, &tt).unwrap();
        let right = h.combo_compose(&tt, &t).unwrap();
        assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn ising() {
        let h = hg("ising");
        let (psi, sigma) = (1, 2);
        let c = h.lambda_compose(sigma, sigma).unwrap();
        assert!((c.coefficient(0) - 0.5).abs() < 1e-12);
        assert!((c.coefficient(psi) - 0.5).abs() < 1e-12);
        let half = h.combo_from_weights(&[0.5, 0.5, 0.0]).unwrap();
        let out = h.combo_compose(&half, &h.lambda(sigma).unwrap()).unwrap();
        assert!(out.equals(&h.lambda(sigma).unwrap(), 1e-12));
        let e = h.conditional_expectation();
        for (x, want) in [0.25, 0.25, 0.5].into_iter().enumerate() {
            assert!((e.coefficient(x) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_acts_trivially() {
        let h = hg("rep_a4");
        let one = h.lambda(0).unwrap();
        let c = h.combo_compose(&h.lambda(3).unwrap(), &h.lambda(3).unwrap()).unwrap();
        assert_eq!(h.combo_compose(&one, &c).unwrap(), c);
        // π⊗π = 1+χ+χ²+2π with d_π = 3.
        assert_eq!(c.exact().unwrap(), &[q(1, 9), q(1, 9), q(1, 9), q(2, 3)]);
    }

    #[test]
    fn absorption_and_conjugation_everywhere() {
        for entry in standard_entries().unwrap() {
            let h = SymmetryHypergroup::new(&entry.ring).unwrap();
            let e = h.conditional_expectation();
            assert!(h.combo_compose(&e, &e).unwrap().equals(&e, CHANNEL_TOL), "{}", entry.name);
            for x in 0..entry.ring.rank() {
                let l = h.lambda(x).unwrap();
                assert!(h.combo_compose(&e, &l).unwrap().equals(&e, CHANNEL_TOL));
                assert!(h.combo_compose(&l, &e).unwrap().equals(&e, CHANNEL_TOL));
                let d = h.dims().values[x];
                let c = h.lambda_compose(x, entry.ring.dual(x)).unwrap();
                assert!((c.coefficient(entry.ring.unit()) - 1.0 / (d * d)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_foreign_and_invalid() {
        let a = hg("fibonacci");
        let b = hg("ising");
        let la = a.lambda(1).unwrap();
        let lb = b.lambda(1).unwrap();
        assert_eq!(a.combo_compose(&la, &lb).unwrap_err().name(), "RingMismatch");
        assert_eq!(a.combo_from_weights(&[0.7, 0.7]).unwrap_err().name(), "InvalidCombo");
        assert_eq!(a.combo_from_weights(&[1.5, -0.5]).unwrap_err().name(), "InvalidCombo");
        assert_eq!(a.lambda_compose(0, 5).unwrap_err().name(), "LabelOutOfRange");
    }
}

use num_integer::Integer;
use serde::Serialize;

use super::{enumerate_lagrangians, Lagrangian, MetricGroup};
use crate::error::{Error, Result};

/// A group automorphism of a metric group, given by the integer matrix that
/// sends a residue tuple `x` to `Mx` (row `i` is image coordinate `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterAutomorphism {
    pub matrix: Vec<Vec<i64>>,
    pub order: u64,
    #[serde(skip)]
    images: Vec<usize>,
}

impl CenterAutomorphism {
    /// Checks that the matrix is well defined on residues and bijective.
    /// Preservation of `q` is checked separately (see [`anomaly_verdict`]).
    pub fn new(m: &MetricGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let g = m.group();
        let t = g.rank();
        if matrix.len() != t || matrix.iter().any(|row| row.len() != t) {
            return Err(Error::InvalidAutomorphism(format!("matrix must be {t}x{t}")));
        }
        // Column j is the image of generator j; it must be killed by m_j.
        for (j, &mj) in g.factors().iter().enumerate() {
            for (i, &mi) in g.factors().iter().enumerate() {
                if (matrix[i][j] as i128 * mj as i128).rem_euclid(mi as i128) != 0 {
                    return Err(Error::InvalidAutomorphism(format!(
                        "image of generator {j} has the wrong order"
                    )));
                }
            }
        }
        let images: Vec<usize> = (0..g.order())
            .map(|x| {
                let v = g.decode(x);
                let img: Vec<i64> = (0..t)
                    .map(|i| {
                        (0..t)
                            .map(|j| (matrix[i][j] as i128 * v[j] as i128) as i64)
                            .fold(0i64, |a, b| a.wrapping_add(b))
                    })
                    .collect();
                g.encode_signed(&img)
            })
            .collect();
        let mut hit = vec![false; images.len()];
        for &y in &images {
            if std::mem::replace(&mut hit[y], true) {
                return Err(Error::InvalidAutomorphism("not injective".into()));
            }
        }
        let order = permutation_order(&images);
        Ok(Self {
            matrix,
            order,
            images,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// The first element where `q(φ(x)) ≠ q(x)`, if any.
    pub fn q_violation(&self, m: &MetricGroup) -> Option<usize> {
        (0..m.order()).find(|&x| m.q(self.apply(x)) != m.q(x))
    }

    pub fn apply_lagrangian(&self, l: &Lagrangian) -> Vec<usize> {
        let mut img: Vec<usize> = l.elements().iter().map(|&x| self.apply(x)).collect();
        img.sort_unstable();
        img
    }

    /// True when the square is the identity on every element.
    pub fn is_involution(&self) -> bool {
        (0..self.images.len()).all(|x| self.apply(self.apply(x)) == x)
    }
}

fn permutation_order(images: &[usize]) -> u64 {
    let mut seen = vec![false; images.len()];
    let mut order = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// The Tambara-Yamagami duality `(a, g) ↦ (s·g, s⁻¹·a)` on the center of `Z/n`.
pub fn ty_duality_auto(m: &MetricGroup, s: i64) -> Result<CenterAutomorphism> {
    let n = match m.base().map(|b| b.factors()) {
        Some([n]) => *n,
        _ => {
            return Err(Error::InvalidMetricGroup(
                "TY duality needs the center of a nontrivial cyclic group".into(),
            ))
        }
    };
    let sm = s.rem_euclid(n as i64);
    let ext = (sm).extended_gcd(&(n as i64));
    if ext.gcd != 1 {
        return Err(Error::NonCoprime { s, n });
    }
    let s_inv = ext.x.rem_euclid(n as i64);
    let auto = CenterAutomorphism::new(m, vec![vec![0, sm], vec![s_inv, 0]])?;
    if let Some(x) = auto.q_violation(m) {
        return Err(Error::NotQPreserving(m.group().format_element(x)));
    }
    Ok(auto)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnomalyVerdict {
    pub lagrangians: Vec<Lagrangian>,
    /// Orbits as index lists into `lagrangians`, each sorted, ordered by first member.
    pub orbits: Vec<Vec<usize>>,
    /// Indices of Lagrangians fixed by the automorphism.
    pub fixed: Vec<usize>,
    pub anomalous: bool,
}

/// Partitions the Lagrangians into orbits of `phi`; anomalous iff none is fixed.
pub fn anomaly_verdict(m: &MetricGroup, phi: &CenterAutomorphism) -> Result<AnomalyVerdict> {
    if phi.images.len() != m.order() {
        return Err(Error::InvalidAutomorphism("acts on a different group".into()));
    }
    if let Some(x) = phi.q_violation(m) {
        return Err(Error::NotQPreserving(format!(
            "q({}) changes",
            m.group().format_element(x)
        )));
    }
    let lagrangians = enumerate_lagrangians(m)?;
    let index_of = |elems: &[usize]| {
        lagrangians
            .binary_search_by(|l| l.elements().cmp(elems))
            .expect("image of a Lagrangian is Lagrangian")
    };
    let next: Vec<usize> = lagrangians
        .iter()
        .map(|l| index_of(&phi.apply_lagrangian(l)))
        .collect();
    let mut seen = vec![false; lagrangians.len()];
    let mut orbits = Vec::new();
    for start in 0..lagrangians.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = next[i];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let fixed: Vec<usize> = orbits.iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
    Ok(AnomalyVerdict {
        anomalous: fixed.is_empty(),
        lagrangians,
        orbits,
        fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::{center_of_pointed, AbelianGroup};

    fn cyclic_center(n: u64) -> MetricGroup {
        center_of_pointed(&AbelianGroup::cyclic(n).unwrap())
    }

    #[test]
    fn toric_swap() {
        let m = cyclic_center(2);
        let phi = ty_duality_auto(&m, 1).unwrap();
        assert_eq!(phi.matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(phi.order, 2);
        let e = m.group().encode(&[1, 0]);
        assert_eq!(m.element_name(phi.apply(e)), "m");
        let v = anomaly_verdict(&m, &phi).unwrap();
        assert!(v.anomalous);
        assert_eq!(v.orbits, vec![vec![0, 1]]);
    }

    #[test]
    fn z5_with_s2() {
        let m = cyclic_center(5);
        let phi = ty_duality_auto(&m, 2).unwrap();
        assert_eq!(phi.matrix, vec![vec![0, 2], vec![3, 0]]);
        assert!(phi.is_involution());
        assert_eq!(phi.order, 2);
    }

    #[test]
    fn z4_is_not_anomalous() {
        let m = cyclic_center(4);
        let phi = ty_duality_auto(&m, 1).unwrap();
        let v = anomaly_verdict(&m, &phi).unwrap();
        assert!(!v.anomalous);
        let fixed: Vec<&[usize]> = v.fixed.iter().map(|&i| v.lagrangians[i].elements()).collect();
        let want: Vec<usize> = [[0, 0], [0, 2], [2, 0], [2, 2]]
            .iter()
            .map(|x| m.group().encode(x))
            .collect();
        assert_eq!(fixed, vec![&want[..]]);
    }

    #[test]
    fn z3_is_anomalous() {
        let m = cyclic_center(3);
        assert!(anomaly_verdict(&m, &ty_duality_auto(&m, 1).unwrap()).unwrap().anomalous);
    }

    #[test]
    fn non_coprime_and_non_preserving() {
        let m = cyclic_center(6);
        assert_eq!(ty_duality_auto(&m, 2).unwrap_err().name(), "NonCoprime");
        // (a, g) ↦ (a, -g) is an automorphism but flips q.
        let flip = CenterAutomorphism::new(&m, vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(anomaly_verdict(&m, &flip).unwrap_err().name(), "NotQPreserving");
        // Not injective.
        assert!(CenterAutomorphism::new(&m, vec![vec![2, 0], vec![0, 1]]).is_err());
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use fusioncat_core::catalog::{build_pointed, build_psu2, build_ty, standard_entries};
use fusioncat_core::center::{center_of_pointed, enumerate_lagrangians, ty_duality_auto, anomaly_verdict, AbelianGroup};
use fusioncat_core::channels::{SymmetryHypergroup, CHANNEL_TOL};
use fusioncat_core::fusion_ring::{fp_dimensions, verify_ring};
use fusioncat_core::spin_chain::pauli_kw_check;
use fusioncat_core::temperley_lieb::{
    all_diagrams, jones_projection, jones_wenzl, loop_parameter, quantum_integers, JW_TOL, RELATION_TOL,
};
use fusioncat_core::{CatalogEntry, TLElement};

fn entries() -> Vec<CatalogEntry> {
    standard_entries().unwrap()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn arb_entry() -> impl Strategy<Value = CatalogEntry> {
    let n = entries().len();
    (0..n).prop_map(|i| entries().swap_remove(i))
}

/// Normalized non-negative weights; all-zero input becomes the unit.
fn convex(raw: &[i64]) -> Vec<BigRational> {
    let s: i64 = raw.iter().sum();
    if s == 0 {
        let mut w = vec![rational(0, 1); raw.len()];
        w[0] = rational(1, 1);
        return w;
    }
    raw.iter().map(|&w| rational(w, s)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channel_laws(entry in arb_entry(), seed in any::<u64>()) {
        let ring = &entry.ring;
        let r = ring.rank();
        let h = SymmetryHypergroup::new(ring).unwrap();
        let d = &h.dims().values;
        let (x, y, z) = ((seed % r as u64) as usize, ((seed >> 8) % r as u64) as usize, ((seed >> 16) % r as u64) as usize);

        let s: f64 = (0..r).map(|w| d[w] * ring.n(x, y, w) as f64).sum();
        prop_assert!((s - d[x] * d[y]).abs() <= 1e-9 * d[x] * d[y]);

        let xy = h.lambda_compose(x, y).unwrap();
        let total: f64 = xy.coefficients().iter().sum();
        prop_assert!((total - 1.0).abs() <= CHANNEL_TOL);
        prop_assert!(xy.coefficients().iter().all(|&c| c >= -CHANNEL_TOL));

        let (lx, ly, lz) = (h.lambda(x).unwrap(), h.lambda(y).unwrap(), h.lambda(z).unwrap());
        let left = h.combo_compose(&h.combo_compose(&lx, &ly).unwrap(), &lz).unwrap();
        let right = h.combo_compose(&lx, &h.combo_compose(&ly, &lz).unwrap()).unwrap();
        prop_assert!(left.equals(&right, CHANNEL_TOL));

        let e = h.conditional_expectation();
        for c in [h.combo_compose(&e, &lx).unwrap(), h.combo_compose(&lx, &e).unwrap(), h.combo_compose(&e, &e).unwrap()] {
            prop_assert!(c.equals(&e, CHANNEL_TOL));
            if h.is_exact() {
                prop_assert_eq!(c.exact().unwrap(), e.exact().unwrap());
            }
        }
    }

    #[test]
    fn combos_compose_bilinearly(
        entry in arb_entry(),
        ra in prop::collection::vec(0i64..6, 10),
        rb in prop::collection::vec(0i64..6, 10),
    ) {
        let h = SymmetryHypergroup::new(&entry.ring).unwrap();
        let r = entry.ring.rank();
        let (wa, wb) = (convex(&ra[..r]), convex(&rb[..r]));
        let ab = h.combo_compose(&h.combo_exact(wa.clone()).unwrap(), &h.combo_exact(wb.clone()).unwrap()).unwrap();
        // Oracle: Σ a_X b_Y λ_X λ_Y from the pairwise table.
        let mut expect = vec![0.0; r];
        for x in 0..r {
            for y in 0..r {
                let w = (&wa[x] * &wb[y]).to_f64().unwrap();
                for (z, c) in h.lambda_compose(x, y).unwrap().coefficients().iter().enumerate() {
                    expect[z] += w * c;
                }
            }
        }
        for (z, e) in expect.iter().enumerate() {
            prop_assert!((ab.coefficient(z) - e).abs() <= CHANNEL_TOL);
        }
    }

    #[test]
    fn jones_relations_exact(m in 2usize..=8, num in 1i64..9, den in 1i64..5) {
        let delta = rational(num, den);
        let es: Vec<TLElement<BigRational>> =
            (1..m).map(|i| jones_projection(i, m, delta.clone()).unwrap()).collect();
        let inv_d2 = rational(den * den, num * num);
        for (i, e) in es.iter().enumerate() {
            prop_assert!(e.multiply(e).unwrap().sub(e).unwrap().is_exactly_zero());
            for (j, f) in es.iter().enumerate() {
                if i.abs_diff(j) == 1 {
                    let efe = e.multiply(f).unwrap().multiply(e).unwrap();
                    prop_assert!(efe.sub(&e.scale(&inv_d2)).unwrap().is_exactly_zero());
                } else if i.abs_diff(j) > 1 {
                    let c = e.multiply(f).unwrap().sub(&f.multiply(e).unwrap()).unwrap();
                    prop_assert!(c.is_exactly_zero());
                }
            }
        }
    }

    #[test]
    fn jones_relations_at_roots_of_unity(m in 2usize..=8, k in 2usize..=10) {
        let delta = loop_parameter(k).unwrap();
        let es: Vec<TLElement<f64>> = (1..m).map(|i| jones_projection(i, m, delta).unwrap()).collect();
        for (i, e) in es.iter().enumerate() {
            prop_assert!(e.multiply(e).unwrap().distance(e).unwrap() <= RELATION_TOL);
            if i + 1 < es.len() {
                let f = &es[i + 1];
                let efe = e.multiply(f).unwrap().multiply(e).unwrap();
                prop_assert!(efe.distance(&e.scale(&(1.0 / (delta * delta)))).unwrap() <= RELATION_TOL);
            }
        }
    }

    #[test]
    fn multiplication_is_associative(m in 2usize..=6, seed in any::<u64>()) {
        let ds = all_diagrams(m).unwrap();
        let delta = rational(3, 2);
        let pick = |s: u64| TLElement::from_diagram(ds[(s % ds.len() as u64) as usize].clone(), rational((s % 7) as i64 + 1, 3), delta.clone());
        let a = pick(seed).add(&pick(seed.rotate_left(13))).unwrap();
        let b = pick(seed.rotate_left(29));
        let c = pick(seed.rotate_left(41)).add(&pick(seed.rotate_left(53))).unwrap();
        let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().is_exactly_zero());
    }

    #[test]
    fn jones_wenzl_is_a_projector(k in 2usize..=8, p_off in 0usize..8) {
        // [j] ≠ 0 for j ≤ k + 1; p ≤ 8 keeps round-off below the tolerance.
        let p = 2 + p_off % k.min(7);
        let delta = loop_parameter(k).unwrap();
        let jw = jones_wenzl(p, delta).unwrap();
        prop_assert!(jw.multiply(&jw).unwrap().distance(&jw).unwrap() <= JW_TOL);
        for i in 1..p {
            let e = jones_projection(i, p, delta).unwrap();
            prop_assert!(e.multiply(&jw).unwrap().max_abs_coeff() <= JW_TOL);
            prop_assert!(jw.multiply(&e).unwrap().max_abs_coeff() <= JW_TOL);
        }
        // Markov trace of JW_p is [p+1].
        let q = quantum_integers(&delta, p + 1);
        prop_assert!((jw.trace() - q[p + 1]).abs() <= JW_TOL);
    }

    #[test]
    fn pointed_and_ty_rings_verify(factors in prop::collection::vec(2u64..6, 0..3), s in 1i64..5) {
        let ring = build_pointed(&factors).unwrap();
        prop_assert!(verify_ring(&ring).passed);
        let dims = fp_dimensions(&ring).unwrap();
        prop_assert!(dims.values.iter().all(|&d| (d - 1.0).abs() < 1e-9));
        let n: u64 = factors.iter().product();
        let exponent = factors.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
        if !factors.is_empty() && num_integer::gcd(s as u64, exponent) == 1 {
            let ty = build_ty(&factors, s).unwrap();
            prop_assert!(verify_ring(&ty).passed);
            let d = fp_dimensions(&ty).unwrap();
            prop_assert!((d.values[ty.rank() - 1] - (n as f64).sqrt()).abs() < 1e-9);
            prop_assert!((d.global_dimension() - 2.0 * n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn psu2_dimensions(k in 2i64..=12) {
        let ring = build_psu2(k).unwrap();
        let dims = fp_dimensions(&ring).unwrap();
        let theta = std::f64::consts::PI / (k as f64 + 2.0);
        for (j, d) in dims.values.iter().enumerate() {
            let expect = ((2 * j + 1) as f64 * theta).sin() / theta.sin();
            prop_assert!((d - expect).abs() < 1e-9);
        }
        prop_assert!(dims.is_multiplicative(&ring));
    }

    #[test]
    fn lagrangians_are_lagrangian(factors in prop::collection::vec(2u64..5, 1..3)) {
        let m = center_of_pointed(&AbelianGroup::new(&factors).unwrap());
        let n: usize = factors.iter().product::<u64>() as usize;
        for l in enumerate_lagrangians(&m).unwrap() {
            prop_assert_eq!(l.order, n);
            for &x in l.elements() {
                prop_assert_eq!(m.q(x), 0);
                for &y in l.elements() {
                    prop_assert_eq!(m.b(x, y), 0);
                }
            }
        }
    }

    #[test]
    fn duality_orbits_partition(n in 2u64..=15, s in 1i64..15) {
        prop_assume!(num_integer::gcd(s, n as i64) == 1);
        let m = center_of_pointed(&AbelianGroup::cyclic(n).unwrap());
        let v = anomaly_verdict(&m, &ty_duality_auto(&m, s).unwrap()).unwrap();
        let mut seen: Vec<usize> = v.orbits.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..v.lagrangians.len()).collect::<Vec<_>>());
        prop_assert!(v.orbits.iter().all(|o| o.len() <= 2));
        prop_assert_eq!(v.anomalous, v.fixed.is_empty());
    }

    #[test]
    fn pauli_kw_generator_counts(n in 3usize..=24) {
        let r = pauli_kw_check(n).unwrap();
        prop_assert!(r.passed);
        prop_assert_eq!(r.generators, 2 * n - 1);
        prop_assert_eq!(r.surviving, 2 * n - 2);
    }
}

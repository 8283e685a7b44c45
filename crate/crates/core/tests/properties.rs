use std::f64::consts::PI;

use proptest::prelude::*;

use spectile::analysis::{is_spectrum, is_tiling, tiling_fourier_criterion};
use spectile::certificate::{Certificate, CertificateBuilder};
use spectile::constructions::{compose_spectral, compose_tiling, Composition};
use spectile::cyclo::CycInt;
use spectile::fourier::{full_transform, TransformMode};
use spectile::groups::{annihilator, make_group, subgroup_generated, Elem, GroupSubset};
use serde_json::json;

fn subset_strategy(moduli: &'static [u32]) -> impl Strategy<Value = GroupSubset> {
    let order: usize = moduli.iter().map(|&n| n as usize).product();
    prop::collection::btree_set(0..order, 1..=order.min(24)).prop_map(move |idx| {
        GroupSubset::from_indices(make_group(moduli).unwrap(), idx).unwrap()
    })
}

fn cyc_strategy() -> impl Strategy<Value = (CycInt, CycInt)> {
    (1u32..=36).prop_flat_map(|n| {
        let v = prop::collection::vec(-3i64..=3, n as usize);
        (v.clone(), v).prop_map(move |(a, b)| (CycInt::from_raw(n, &a).unwrap(), CycInt::from_raw(n, &b).unwrap()))
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_at_zero_and_conjugation(a in subset_strategy(&[4, 6])) {
        let g = a.group().clone();
        let table = full_transform(&a, TransformMode::Naive).unwrap();
        prop_assert_eq!(table.get(0).as_integer(), Some(a.len() as i64));
        for xi in 0..g.order() {
            prop_assert_eq!(table.get(xi).conj(), table.get(g.neg_index(xi)).clone());
        }
    }

    #[test]
    fn subgroup_dichotomy(gens in prop::collection::vec(0usize..216, 1..3)) {
        let g = make_group(&[6, 6, 6]).unwrap();
        let s = subgroup_generated(&GroupSubset::from_indices(g.clone(), gens).unwrap()).unwrap();
        let ann = annihilator(&s).unwrap();
        let table = full_transform(&s, TransformMode::Tensor).unwrap();
        for xi in 0..g.order() {
            let v = table.get(xi).as_integer();
            let expected = if ann.contains_index(xi) { s.len() as i64 } else { 0 };
            prop_assert_eq!(v, Some(expected));
        }
        prop_assert_eq!(s.len() * ann.len(), g.order());
    }

    #[test]
    fn cyclotomic_ring_laws((a, b) in cyc_strategy()) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let (x, y) = (a.to_complex(), b.to_complex());
        let prod = a.try_mul(&b).unwrap().to_complex();
        prop_assert!(close(prod, (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
        let norm = a.try_mul(&a.conj()).unwrap().to_complex();
        prop_assert!(close(norm, (x.0 * x.0 + x.1 * x.1, 0.0)));
    }

    #[test]
    fn vanishing_polygon_sums(n in 1u32..=60, r in 0u32..60, p_index in 0usize..4) {
        let primes: Vec<u32> = [2, 3, 5, 7].into_iter().filter(|p| n % p == 0).collect();
        prop_assume!(!primes.is_empty());
        let p = primes[p_index % primes.len()];
        let exps = (0..p).map(|k| (r + k * n / p) % n);
        let s = CycInt::from_exponents(n, exps).unwrap();
        prop_assert!(s.is_zero());
        let angle = 2.0 * PI * f64::from(r) / f64::from(n);
        let shifted = s.try_add(&CycInt::root(n, i64::from(r)).unwrap()).unwrap();
        prop_assert!(close(shifted.to_complex(), (angle.cos(), angle.sin())));
        prop_assert!(!shifted.is_zero());
    }

    #[test]
    fn tilings_pass_the_fourier_criterion(step in prop::sample::select(vec![1u32, 2, 3, 4, 6, 12]), shifts in prop::collection::vec(0u32..12, 12)) {
        // coset representatives of step*Z_12 against the subgroup itself
        let g = make_group(&[12]).unwrap();
        let t = GroupSubset::from_indices(g.clone(), (0..12).filter(|x| x % step as usize == 0)).unwrap();
        let a = GroupSubset::from_indices(
            g.clone(),
            (0..step).map(|r| ((r + step * shifts[r as usize]) % 12) as usize),
        ).unwrap();
        prop_assert!(is_tiling(&a, &t, 1).unwrap());
        prop_assert!(tiling_fourier_criterion(&a, &t).unwrap());
    }

    #[test]
    fn random_compositions_verify(
        a in prop::sample::select(vec![1u32, 2, 3, 6]),
        c in prop::sample::select(vec![1u32, 2, 4]),
        seeds in prop::collection::vec(0u32..1000, 24),
    ) {
        // G = Z_6 x Z_8, H = Z_6 x 4Z_8, G/H = Z_4
        let g = make_group(&[6, 8]).unwrap();
        let q = make_group(&[4]).unwrap();
        let e = |x: u32, y: u32| g.elem(&[i64::from(x % 6), i64::from(y % 8)]).unwrap();
        let reps: Vec<Elem> = (0..c).map(|s| e(seeds[s as usize], s + 4 * seeds[s as usize + 4])).collect();
        let s_set = GroupSubset::from_indices(q.clone(), 0..c as usize).unwrap();
        let s_partner = GroupSubset::from_indices(q.clone(), (0..4).filter(|x| x % c as usize == 0)).unwrap();

        // tiling: T_j are random coset representatives of T' = aZ_6 x 4Z_8 inside H
        let partner = GroupSubset::from_elems(g.clone(), &(0..6 / a).flat_map(|m| [e(a * m, 0), e(a * m, 4)]).collect::<Vec<_>>()).unwrap();
        let tiles: Vec<GroupSubset> = (0..c as usize).map(|j| {
            let elems: Vec<Elem> = (0..a).map(|r| e(r + a * seeds[8 + j * 3 + r as usize % 3], 4 * seeds[20 + j])).collect();
            GroupSubset::from_elems(g.clone(), &elems).unwrap()
        }).collect();
        let tiling = Composition {
            group: g.clone(),
            divisors: vec![1, 4],
            tiles,
            partner,
            quotient_set: s_set.clone(),
            quotient_partner: s_partner,
            reps: reps.clone(),
        };
        let out = compose_tiling(&tiling).unwrap();
        prop_assert!(out.verified);

        // spectral: translates of {0..a-1} x {0} share the spectrum (6/a){0..a-1} x {0}
        let l = GroupSubset::from_elems(g.clone(), &(0..a).map(|k| e(k * (6 / a), 0)).collect::<Vec<_>>()).unwrap();
        let tiles: Vec<GroupSubset> = (0..c as usize).map(|j| {
            let shift = seeds[j];
            let elems: Vec<Elem> = (0..a).map(|x| e(x + shift, 4 * seeds[12 + j])).collect();
            GroupSubset::from_elems(g.clone(), &elems).unwrap()
        }).collect();
        let q_partner = GroupSubset::from_indices(q.clone(), (0..c as usize).map(|k| k * (4 / c as usize))).unwrap();
        let spectral = Composition {
            group: g.clone(),
            divisors: vec![1, 4],
            tiles,
            partner: l,
            quotient_set: s_set,
            quotient_partner: q_partner,
            reps,
        };
        let out = compose_spectral(&spectral).unwrap();
        prop_assert!(out.verified);
        prop_assert!(is_spectrum(&out.gamma, &out.partner).unwrap());
        prop_assert_eq!(out.gamma.len(), (a * c) as usize);
    }
}

#[test]
fn certificates_round_trip() {
    let mut b = CertificateBuilder::new("demo", "a statement", false);
    b.check("first", "holds", &json!({"x": [1, 2]}), || Ok((true, json!({"value": 3})))).unwrap();
    b.proof_level("second", "follows", "from first");
    for cert in [b.finish(), Certificate::error("demo", "bad input")] {
        let text = cert.to_canonical_string().unwrap();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_canonical_string().unwrap(), text);
    }
}

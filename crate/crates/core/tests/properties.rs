use std::sync::Arc;

use proptest::prelude::*;
use topo_core::enumerate::enumerate_topologies;
use topo_core::theta::hull_stabilization_level;
use topo_core::{
    classical_theta_closure, hull_tops, is_classical_weakly_continuous, is_continuous,
    is_theta_continuous, theta_closure, witness_chain, FinSpace, PointSet, TotalMap,
};

/// Counts topologies by checking every family of subsets that contains the
/// empty and full sets for closure under union and intersection.
fn brute_force_topology_count(n: usize) -> usize {
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut count = 0;
    for code in 0u64..(1u64 << middle.len()) {
        let mut family = vec![0u32, full];
        family.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        let ok = family.iter().all(|&a| {
            family
                .iter()
                .all(|&b| family.contains(&(a | b)) && family.contains(&(a & b)))
        });
        if ok {
            count += 1;
        }
    }
    count
}

#[test]
fn topology_counts_match_brute_force() {
    for n in 1..=4 {
        let expected = brute_force_topology_count(n);
        let got = enumerate_topologies(n, false, false).unwrap().len();
        assert_eq!(got, expected, "n = {n}");
    }
    assert_eq!(brute_force_topology_count(4), 355);
}

fn spaces(max_n: usize) -> Vec<FinSpace> {
    (1..=max_n)
        .flat_map(|n| enumerate_topologies(n, false, false).unwrap())
        .collect()
}

#[test]
fn kuratowski_laws() {
    for s in spaces(3) {
        assert!(s.closure(&s.empty()).unwrap().is_empty());
        for a in PointSet::all_subsets(s.n()) {
            let ca = s.closure(&a).unwrap();
            assert!(a.is_subset(&ca));
            assert_eq!(s.closure(&ca).unwrap(), ca);
            for b in PointSet::all_subsets(s.n()) {
                let cb = s.closure(&b).unwrap();
                assert_eq!(s.closure(&a.union(&b)).unwrap(), ca.union(&cb));
            }
        }
    }
}

#[test]
fn minimal_neighbourhoods() {
    for s in spaces(3) {
        for x in 0..s.n() {
            let m = s.min_nbhd(x).unwrap();
            assert!(s.is_open(&m) && m.contains(x));
            assert!(s.opens_containing(x).all(|u| m.is_subset(u)));
            assert_eq!(s.opens_containing(x).next(), Some(&m));
            for a in PointSet::all_subsets(s.n()) {
                let by_definition = s
                    .opens_containing(x)
                    .all(|u| u.intersects(&a));
                assert_eq!(s.closure(&a).unwrap().contains(x), by_definition);
                assert_eq!(m.intersects(&a), by_definition);
            }
        }
    }
}

#[test]
fn regularity_is_clopen_minimal_neighbourhoods() {
    for s in spaces(4) {
        let clopen = (0..s.n()).all(|x| {
            let m = s.min_nbhd(x).unwrap();
            s.closure(&m).unwrap() == m
        });
        assert_eq!(s.is_regular(), clopen, "{s:?}");
    }
}

#[test]
fn subspace_of_full_set_is_identity() {
    for s in spaces(3) {
        let (sub, relabel) = s.subspace(&s.full()).unwrap();
        assert_eq!(sub, s);
        assert_eq!(relabel, (0..s.n()).collect::<Vec<_>>());
    }
}

#[test]
fn closure_chain_and_hull_properties() {
    for s in spaces(3) {
        for a in PointSet::all_subsets(s.n()) {
            let closure = s.closure(&a).unwrap();
            assert_eq!(theta_closure(&s, &a, 0).unwrap(), closure);
            let classical = classical_theta_closure(&s, &a).unwrap();
            assert!(closure.is_subset(&classical));
            let mut prev = classical;
            for alpha in 1..=3 {
                let cur = theta_closure(&s, &a, alpha).unwrap();
                assert!(prev.is_subset(&cur));
                prev = cur;
            }

            for alpha in 0..=3 {
                let all = hull_tops(&s, &a, alpha, false).unwrap();
                let minimal = hull_tops(&s, &a, alpha, true).unwrap();
                assert!(all.contains(&s.full()));
                assert!(minimal.iter().all(|v| all.contains(v)));
                assert!(all.iter().all(|v| minimal.iter().any(|m| m.is_subset(v))));
                if alpha > 0 {
                    let below = hull_tops(&s, &a, alpha - 1, false).unwrap();
                    assert!(all.iter().all(|v| below.iter().any(|w| w.is_subset(v))));
                }
                for top in &all {
                    let chain = witness_chain(&s, &a, alpha, top).unwrap();
                    assert!(chain.is_valid());
                    assert_eq!(chain.top(), *top);
                    for beta in 0..=alpha {
                        assert!(chain.truncate(beta).is_valid());
                    }
                }
            }

            let k = hull_stabilization_level(&s, &a).unwrap();
            assert!(k <= s.opens().len());
            assert_eq!(
                hull_tops(&s, &a, k, false).unwrap(),
                hull_tops(&s, &a, k + 5, false).unwrap()
            );
        }
        // θ-closures from every hull top agree with the minimal-top shortcut
        for a in PointSet::all_subsets(s.n()) {
            for alpha in 1..=3 {
                let mut from_all = s.empty();
                for x in 0..s.n() {
                    let tops = hull_tops(&s, &PointSet::singleton(s.n(), x), alpha, false).unwrap();
                    if tops.iter().all(|v| s.closure(v).unwrap().intersects(&a)) {
                        from_all.insert(x);
                    }
                }
                assert_eq!(theta_closure(&s, &a, alpha).unwrap(), from_all);
            }
        }
    }
}

#[test]
fn degenerate_full_base() {
    for s in spaces(3) {
        assert_eq!(hull_tops(&s, &s.full(), 2, false).unwrap(), vec![s.full()]);
        assert_eq!(theta_closure(&s, &s.full(), 2).unwrap(), s.full());
    }
}

#[test]
fn continuity_ladder_and_composition() {
    let cat: Vec<Arc<FinSpace>> = spaces(3)
        .into_iter()
        .filter(|s| s.n() == 3)
        .map(Arc::new)
        .collect();
    for x in cat.iter().step_by(3) {
        for y in &cat {
            for code in 0..27usize {
                let f = TotalMap::new(x.clone(), y.clone(), vec![code / 9, code / 3 % 3, code % 3]).unwrap();
                let c = is_continuous(&f).holds();
                let w = is_classical_weakly_continuous(&f).holds();
                let t1 = is_theta_continuous(&f, 1).holds();
                let t2 = is_theta_continuous(&f, 2).holds();
                assert!(!c || w);
                assert!(!w || t1);
                assert!(!t1 || t2);
                if c {
                    for g_code in [0usize, 5, 13, 26] {
                        let g = TotalMap::new(y.clone(), x.clone(), vec![g_code / 9, g_code / 3 % 3, g_code % 3])
                            .unwrap();
                        if is_continuous(&g).holds() {
                            assert!(is_continuous(&f.then(&g).unwrap()).holds());
                        }
                    }
                }
            }
        }
    }
}

fn space_and_sets() -> impl Strategy<Value = (usize, u32, u32)> {
    (0usize..355, 0u32..16, 0u32..16)
}

proptest! {
    #[test]
    fn kuratowski_on_four_points((idx, a, b) in space_and_sets()) {
        let s = &enumerate_topologies(4, false, false).unwrap()[idx];
        let a = PointSet::from_bits(4, a).unwrap();
        let b = PointSet::from_bits(4, b).unwrap();
        let ca = s.closure(&a).unwrap();
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(s.closure(&ca).unwrap(), ca);
        prop_assert_eq!(
            s.closure(&a.union(&b)).unwrap(),
            ca.union(&s.closure(&b).unwrap())
        );
        let t1 = theta_closure(s, &a, 1).unwrap();
        prop_assert!(classical_theta_closure(s, &a).unwrap().is_subset(&t1));
        prop_assert!(t1.is_subset(&theta_closure(s, &a, 2).unwrap()));
    }

    #[test]
    fn set_algebra(a in any::<u32>(), b in any::<u32>()) {
        let a = PointSet::from_bits(32, a).unwrap();
        let b = PointSet::from_bits(32, b).unwrap();
        prop_assert_eq!(a.union(&b).len() + a.intersection(&b).len(), a.len() + b.len());
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert_eq!(PointSet::from_points(32, a.iter()).unwrap(), a);
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
    }
}

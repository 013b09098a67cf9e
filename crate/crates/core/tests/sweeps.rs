use std::sync::Arc;

use topo_core::extension::check_conditions;
use topo_core::oracle::{
    brute_force_existence, mine_gaps, verify_closure_chain, verify_corollary, verify_lemma1,
    verify_singleton_reduction, verify_theorem1, SweepConfig,
};
use topo_core::{approximate_map, build_space, condition_set, is_theta_continuous, ConditionMode, ExtensionInstance, TieBreak};

fn serial() -> SweepConfig {
    SweepConfig::default()
}

#[test]
fn lemma1_three_by_three() {
    let r = verify_lemma1(3, 3, 2, &serial()).unwrap();
    assert_eq!(r.count("checks"), 68_121);
    assert!(r.pass, "{:?}", &r.discrepancies[..r.discrepancies.len().min(5)]);
}

#[test]
fn theorem1_all_small_sizes() {
    for nx in 1..=3 {
        for ny in 1..=3 {
            let r = verify_theorem1(nx, ny, &serial()).unwrap();
            assert!(r.pass, "nx={nx} ny={ny}: {:?}", &r.discrepancies[..r.discrepancies.len().min(5)]);
            // sufficient ⇒ existing, so the gap is existing minus sufficient
            assert_eq!(r.count("gap"), r.count("existing") - r.count("sufficient"));
        }
    }
    let r = verify_theorem1(3, 3, &serial()).unwrap();
    assert!(r.count("gap") >= 1);
}

#[test]
fn corollary_all_small_sizes() {
    for nx in 1..=3 {
        for ny in 1..=3 {
            let r = verify_corollary(nx, ny, &serial()).unwrap();
            assert!(r.pass, "nx={nx} ny={ny}: {:?}", r.discrepancies);
        }
    }
}

#[test]
fn closure_chain_and_reduction() {
    for n in 1..=3 {
        assert!(verify_closure_chain(n, 3, &serial()).unwrap().pass);
    }
    for nx in 1..=3 {
        for ny in 1..=3 {
            assert!(verify_singleton_reduction(nx, ny, 3, &serial()).unwrap().pass);
        }
    }
}

#[test]
fn mined_gaps_include_the_example_and_satisfy_necessity() {
    let gaps = mine_gaps(3, 3, &serial()).unwrap();
    assert!(!gaps.is_empty());
    assert!(gaps.iter().all(|g| g.necessary_holds));
    assert!(gaps.windows(2).all(|w| w[0].key < w[1].key));
    let x3 = build_space(3, &[vec![], vec![0], vec![2], vec![0, 2], vec![0, 1, 2]]).unwrap();
    let ysp = build_space(3, &[vec![], vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]]).unwrap();
    let example = gaps
        .iter()
        .find(|g| **g.instance.x() == x3 && **g.instance.y() == ysp && g.key.s == [0, 2] && g.key.f == [0, 1])
        .expect("example analog is a gap instance");
    assert!([0, 1].contains(&example.witness.apply(1)));
}

#[test]
fn determinism_across_workers() {
    let one = SweepConfig::with_jobs(1);
    let eight = SweepConfig::with_jobs(8);
    assert_eq!(verify_theorem1(3, 2, &one).unwrap().discrepancies, verify_theorem1(3, 2, &eight).unwrap().discrepancies);
    assert_eq!(verify_theorem1(3, 3, &one).unwrap().counts, verify_theorem1(3, 3, &eight).unwrap().counts);
    assert_eq!(mine_gaps(3, 3, &one).unwrap(), mine_gaps(3, 3, &eight).unwrap());
}

#[test]
fn existence_monotone_in_alpha_and_approximation_sound() {
    let cat: Vec<Arc<_>> = topo_core::enumerate_topologies(3, false, false)
        .unwrap()
        .into_iter()
        .map(Arc::new)
        .collect();
    let mut checked = 0;
    for x in &cat {
        for s_bits in 1u32..8 {
            let s = topo_core::PointSet::from_bits(3, s_bits).unwrap();
            if !x.is_dense(&s).unwrap() {
                continue;
            }
            for y in cat.iter().step_by(4) {
                for code in 0..27usize {
                    let vals = [code / 9, code / 3 % 3, code % 3];
                    let pairs: Vec<(usize, usize)> = s.iter().zip(vals).collect();
                    let Ok(inst) = ExtensionInstance::from_parts(x.clone(), y.clone(), pairs) else {
                        continue;
                    };
                    checked += 1;
                    if brute_force_existence(&inst, 0).unwrap().is_some() {
                        assert!(brute_force_existence(&inst, 1).unwrap().is_some());
                    }
                    let report = check_conditions(&inst);
                    for (ec, et) in report.e_closure.iter().zip(&report.e_theta) {
                        assert!(ec.is_subset(et));
                    }
                    if report.sufficient_holds {
                        for tie in [TieBreak::Min, TieBreak::Max] {
                            let g = approximate_map(&inst, tie).unwrap();
                            assert!(is_theta_continuous(&g, 1).holds());
                            for p in 0..3 {
                                let e = condition_set(&inst, p, ConditionMode::Closure).unwrap();
                                assert!(e.contains(g.apply(p)));
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

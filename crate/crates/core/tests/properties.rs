use std::sync::Arc;

use proptest::prelude::*;

use modelcat::enumerate::{oracle_wfs, BlockSystems, WFS_ORACLE_CAP};
use modelcat::io::{model_from_str, model_to_json};
use modelcat::localize::{left_localize, right_localize, w_closure};
use modelcat::model::{
    from_selection_on, homotopy_category, interval_partition_of, selection_of,
    ContractibleSelection, IntervalPartition,
};
use modelcat::paths::{crossings, dyck_to_transfer, model_to_path, phi, phi_inverse, transfer_to_dyck};
use modelcat::transfer::{enumerate_transfer_systems, is_transfer_system, transfer_closure};
use modelcat::{DyckPath, Endo, FiniteLattice, ModelStructure};

fn chain(n: usize) -> Arc<FiniteLattice> {
    FiniteLattice::chain(n).into_shared()
}

/// A model structure on `[n]` from a cut mask and per-block choices.
fn model_from_choices(n: usize, mask: u64, picks: &[usize]) -> ModelStructure {
    let cuts = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    let p = IntervalPartition::new(n, cuts).unwrap();
    let systems = BlockSystems::new(n);
    let chosen = p
        .blocks()
        .iter()
        .zip(picks.iter().cycle())
        .map(|(&(lo, hi), &k)| {
            let on = systems.on(hi - lo);
            on[k % on.len()].clone()
        })
        .collect();
    from_selection_on(&chain(n), &ContractibleSelection::new(p, chosen).unwrap())
}

fn arb_model() -> impl Strategy<Value = ModelStructure> {
    (0usize..=6, any::<u64>(), prop::collection::vec(any::<usize>(), 1..8))
        .prop_map(|(n, mask, picks)| model_from_choices(n, mask, &picks))
}

fn arb_endo() -> impl Strategy<Value = Endo> {
    (0usize..=8).prop_flat_map(|n| {
        prop::collection::vec(0..=n, n + 1).prop_map(|mut v| {
            v.sort_unstable();
            Endo::new(v).unwrap()
        })
    })
}

fn arb_lattice() -> impl Strategy<Value = Arc<FiniteLattice>> {
    prop_oneof![
        (0usize..=5).prop_map(chain),
        (0usize..=2, 0usize..=2).prop_map(|(m, n)| FiniteLattice::grid(m, n).into_shared()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_bounds(l in arb_lattice()) {
        for x in 0..l.size() {
            for y in 0..l.size() {
                let m = l.meet(x, y);
                let j = l.join(x, y);
                prop_assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
                for z in 0..l.size() {
                    if l.leq(z, x) && l.leq(z, y) {
                        prop_assert!(l.leq(z, m));
                    }
                    if l.leq(x, z) && l.leq(y, z) {
                        prop_assert!(l.leq(j, z));
                    }
                }
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(l in arb_lattice(), a in any::<u64>(), b in any::<u64>()) {
        let pick = |mask: u64| {
            let mut s = l.empty_set();
            for i in 0..l.arrow_count().min(64) {
                if mask >> i & 1 == 1 {
                    s.insert(i);
                }
            }
            s
        };
        let (sa, sb) = (pick(a), pick(a & b));
        let ca = transfer_closure(&l, &sa);
        prop_assert!(is_transfer_system(&l, ca.rel()).is_ok());
        prop_assert!(sa.is_subset(ca.rel()));
        let again = transfer_closure(&l, ca.rel());
        prop_assert_eq!(again.rel(), ca.rel());
        prop_assert!(transfer_closure(&l, &sb).rel().is_subset(ca.rel()));
    }

    #[test]
    fn selection_round_trip(m in arb_model()) {
        prop_assert!(m.verify().is_ok());
        let sel = selection_of(&m).unwrap();
        prop_assert_eq!(&from_selection_on(m.carrier(), &sel), &m);
        let l = m.carrier();
        prop_assert_eq!(m.w().intersection(m.c()).intersection(m.f()), l.identities());
        let cuts = interval_partition_of(&m).unwrap().cuts().len();
        prop_assert_eq!(homotopy_category(&m).unwrap().k, cuts);
        prop_assert_eq!(crossings(&model_to_path(&m).unwrap()), cuts);
    }

    #[test]
    fn factorizations_exist(m in arb_model()) {
        let l = m.carrier();
        let (ac, af) = (m.ac(), m.af());
        for &a in l.arrows() {
            prop_assert!(l.factor(a, m.c(), &af).is_some());
            prop_assert!(l.factor(a, &ac, m.f()).is_some());
        }
    }

    #[test]
    fn phi_round_trip(m in arb_model()) {
        let e = phi(&m).unwrap();
        prop_assert_eq!(e.n(), m.carrier().size() - 1);
        prop_assert_eq!(&phi_inverse(&e).unwrap(), &m);
    }

    #[test]
    fn endo_round_trip(e in arb_endo()) {
        let m = phi_inverse(&e).unwrap();
        prop_assert!(m.verify().is_ok());
        prop_assert_eq!(phi(&m).unwrap(), e);
    }

    #[test]
    fn localizations(m in arb_model(), i in 0usize..6) {
        let n = m.carrier().size() - 1;
        prop_assume!(i < n);
        let left = left_localize(&m, i).unwrap();
        let right = right_localize(&m, i).unwrap();
        prop_assert_eq!(left.c(), m.c());
        prop_assert_eq!(right.f(), m.f());
        let step = m.carrier().arrow_set([(i, i + 1)]).unwrap();
        let closed = w_closure(&m, &step);
        prop_assert_eq!(left.w(), &closed);
        prop_assert_eq!(right.w(), &closed);
        prop_assert_eq!(&left_localize(&left, i).unwrap(), &left);
        prop_assert_eq!(&right_localize(&right, i).unwrap(), &right);
    }

    #[test]
    fn json_round_trip(m in arb_model()) {
        let text = serde_json::to_string(&model_to_json(&m)).unwrap();
        prop_assert_eq!(&model_from_str(&text).unwrap(), &m);
    }
}

#[test]
fn dyck_round_trip_exhaustive() {
    for k in 1..=8 {
        for d in DyckPath::all(k) {
            let r = dyck_to_transfer(&d).unwrap();
            assert_eq!(transfer_to_dyck(&r).unwrap(), d);
        }
    }
}

#[test]
fn subset_scan_matches_chain_enumeration() {
    for n in 0..=5 {
        let l = chain(n);
        let scanned: Vec<_> = oracle_wfs(&l, WFS_ORACLE_CAP)
            .unwrap()
            .into_iter()
            .map(|w| w.right)
            .collect();
        let enumerated: Vec<_> = enumerate_transfer_systems(&l)
            .into_iter()
            .map(|r| r.rel().clone())
            .collect();
        assert_eq!(scanned, enumerated);
    }
}

#[test]
fn transfer_counts_to_nine() {
    let expected = [1usize, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &want) in expected.iter().enumerate() {
        assert_eq!(enumerate_transfer_systems(&chain(n)).len(), want);
    }
}

#[test]
fn wfs_poset_is_tamari() {
    for n in 0..=5 {
        let p = modelcat::transfer::wfs_poset(n);
        assert!(p.is_lattice(), "[{n}]");
    }
}

mod common;

use proptest::prelude::*;
use ttg_core::datum::*;
use ttg_core::geometry::*;
use ttg_core::order::catalog::{random_closure_lattice, rng};
use ttg_core::order::{down_sets, SubmoduleLattice};
use ttg_core::spectrum::*;
use ttg_core::topology::continuity_violation;
use ttg_core::{Exec, FinitePoset, IdSet, Limits};

fn limits() -> Limits {
    Limits::default()
}

/// Posets on up to `max` points: each pair `i < j` is related with the
/// given bit, then closed transitively.
fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max, prop::collection::vec(any::<bool>(), max * max)).prop_map(move |(n, bits)| {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if bits[i * max + j] {
                    pairs.push((i, j));
                }
            }
        }
        FinitePoset::from_pairs((0..n).map(|i| format!("x{i}")).collect(), &pairs).unwrap()
    })
}

fn lattice() -> impl Strategy<Value = SubmoduleLattice> {
    any::<u64>().prop_map(|seed| random_closure_lattice(&mut rng(seed), 20))
}

fn subset(n: usize) -> impl Strategy<Value = IdSet> {
    any::<u64>().prop_map(move |b| IdSet::from_bits(u128::from(b)).intersection(IdSet::full(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn down_sets_are_distributive_with_principal_join_irreducibles(x in poset(6)) {
        let d = down_sets(&x, &limits()).unwrap();
        for a in 0..d.len() {
            for b in 0..d.len() {
                for c in 0..d.len() {
                    prop_assert_eq!(d.meet(a, d.join(b, c)), d.join(d.meet(a, b), d.meet(a, c)));
                }
            }
        }
        let m = common::leq_matrix(&d);
        let mut irreducible: Vec<IdSet> = (0..d.len())
            .filter(|&e| {
                let below: Vec<usize> = (0..d.len()).filter(|&f| f != e && m[f][e]).collect();
                !below.is_empty() && below.iter().filter(|&&f| below.iter().all(|&g| !(m[f][g] && f != g))).count() == 1
            })
            .map(|e| d.carrier(e))
            .collect();
        irreducible.sort();
        let mut principal: Vec<IdSet> = (0..x.len()).map(|p| x.down(p)).collect();
        principal.sort();
        prop_assert_eq!(irreducible, principal);
    }

    #[test]
    fn down_closure_is_a_closure_operator(x in poset(8), s in subset(8), t in subset(8)) {
        let s = s.intersection(x.points());
        let t = t.intersection(x.points());
        let cs = x.down_closure(s).unwrap().carrier();
        prop_assert!(s.is_subset(cs));
        prop_assert_eq!(x.down_closure(cs).unwrap().carrier(), cs);
        let ct = x.down_closure(s.union(t)).unwrap().carrier();
        prop_assert!(cs.is_subset(ct));
    }

    #[test]
    fn covers_match_the_oracle_and_the_meet_property(l in lattice()) {
        let m = common::leq_matrix(&l);
        for e in 0..l.len() {
            let mut want: Vec<usize> = (0..l.len())
                .filter(|&c| c != e && m[e][c])
                .filter(|&c| (0..l.len()).all(|d| d == e || d == c || !(m[e][d] && m[d][c])))
                .collect();
            want.sort();
            let mut got = l.covers(e).unwrap().to_vec();
            got.sort();
            prop_assert_eq!(&got, &want);
            if e != l.top() {
                let meet = l.meet_all(got.iter().copied());
                prop_assert_eq!(got.len() >= 2, meet == e);
            }
        }
    }

    #[test]
    fn prime_notions_coincide(l in lattice()) {
        let m = common::leq_matrix(&l);
        prop_assert_eq!(ttg_core::sweep::prime_disagreement(&l, &limits()).unwrap(), None);
        for p in 0..l.len() {
            prop_assert_eq!(is_s_prime(&l, p).unwrap(), common::is_prime_pairwise(&m, p));
        }
    }

    #[test]
    fn supp_is_a_semilattice_map_into_closed_down_sets(l in lattice()) {
        let s = spectrum(&l, &limits()).unwrap();
        for a in 0..l.len() {
            let sa = supp(&s, a).unwrap();
            prop_assert!(s.order().is_down_set(sa));
            prop_assert!(s.closed_sets().contains(sa));
            for b in 0..l.len() {
                let sb = supp(&s, b).unwrap();
                prop_assert_eq!(supp(&s, l.join(a, b)).unwrap(), sa.union(sb));
                prop_assert!(supp(&s, l.meet(a, b)).unwrap().is_subset(sa.intersection(sb)));
            }
        }
    }

    #[test]
    fn classify_inverts_supp_and_primes_decompose(l in lattice()) {
        let s = spectrum(&l, &limits()).unwrap();
        for e in 0..l.len() {
            let z = supp(&s, e).unwrap();
            prop_assert_eq!(classify(&l, &s, z), e);
            let ps = prime_decomposition(&l, &s, e).unwrap();
            prop_assert_eq!(l.meet_all(ps.iter().map(|q| s.prime(q))), e);
        }
        for &z in s.closed_sets().sets() {
            let r = supp(&s, classify(&l, &s, z)).unwrap();
            prop_assert!(r.is_subset(z));
            prop_assert_eq!(supp(&s, classify(&l, &s, r)).unwrap(), r);
        }
    }

    #[test]
    fn empty_spectrum_exactly_for_the_trivial_lattice(l in lattice(), x in poset(4)) {
        prop_assert_eq!(spectrum(&l, &limits()).unwrap().is_empty(), l.len() == 1);
        let d = down_sets(&x, &limits()).unwrap();
        prop_assert_eq!(spectrum(&d, &limits()).unwrap().is_empty(), x.is_empty());
    }

    #[test]
    fn closure_of_a_point_is_the_primes_below_it(l in lattice()) {
        let s = spectrum(&l, &limits()).unwrap();
        for p in 0..s.len() {
            let below: IdSet = (0..s.len()).filter(|&q| l.leq(s.prime(q), s.prime(p))).collect();
            prop_assert_eq!(s.closed_sets().closure(IdSet::singleton(p)), below);
        }
    }

    #[test]
    fn ind_completion_collapses_to_principal_ideals(l in lattice()) {
        prop_assert_eq!(ind_completion(&l, &limits()).unwrap().len(), l.len());
    }

    #[test]
    fn perf_spectra_round_trip(x in poset(6)) {
        prop_assert!(roundtrip_check(&x, &limits()).unwrap().holds());
    }

    #[test]
    fn base_morphism_is_total_continuous_and_partitions(x in poset(5)) {
        let dat = perf_model(&x, &limits()).unwrap();
        check_base_morphism(&dat)?;
    }

    #[test]
    fn quotients_carry_the_subspace_topology(l in lattice()) {
        let s = spectrum(&l, &limits()).unwrap();
        for i in 0..l.len() {
            let dec = spectrum_decomposition(&l, &s, i, &limits()).unwrap();
            prop_assert!(dec.holds());
            let q = quotient_spectrum(&l, i, &limits()).unwrap();
            let emb: Vec<usize> = q.embedding(&s).into_iter().map(Option::unwrap).collect();
            let traces = s.closed_sets().subspace(dec.open);
            let open_points: Vec<usize> = dec.open.iter().collect();
            let reindexed: Vec<usize> = emb.iter().map(|p| open_points.iter().position(|o| o == p).unwrap()).collect();
            for &c in q.space.closed_sets().sets() {
                let img: IdSet = c.iter().map(|p| reindexed[p]).collect();
                prop_assert!(traces.contains(img));
            }
            prop_assert_eq!(traces.len(), q.space.closed_sets().len());
        }
    }

    #[test]
    fn admissible_perf_data_are_sheaves(x in poset(4)) {
        let dat = perf_model(&x, &limits()).unwrap();
        prop_assert!(validate_admissible(&dat, Exec::Sequential).is_admissible());
        prop_assert_eq!(check_sheaf_on_action_image(&dat).unwrap(), None);
    }

    #[test]
    fn koszul_triad(seed in any::<u64>(), n in 1usize..=4) {
        let (model, projs) = random_scheme_model(&mut rng(seed), n);
        let cs = coh_sing_spaces(&model, &projs, &[]).unwrap();
        for (x, a) in model.attrs().iter().enumerate() {
            let coh = cs.coh_fiber(x);
            let sing = cs.sing_fiber(x);
            prop_assert_eq!(a.regular, coh.len() == 1);
            prop_assert_eq!(a.regular, sing.is_empty());
            prop_assert_eq!(sing.krull_dimension(), i64::from(a.ecodim) - 1);
            prop_assert_eq!(coh.is_local(), a.complete_intersection);
            if a.complete_intersection {
                prop_assert_eq!(coh.krull_dimension(), i64::from(a.ecodim));
            }
        }
        if model.is_hypersurface() {
            let locus = model.singular_locus();
            let (expected, _) = model.space().induced(locus);
            prop_assert!(cs.sing.isomorphism_to(&expected).is_some());
        }
    }
}

fn check_base_morphism(dat: &LatticeDatum) -> Result<(), TestCaseError> {
    let s = spectrum(dat.sub(), &limits()).unwrap();
    let pi = pi_map(dat, &s, Exec::Sequential).unwrap();
    for q in 0..s.len() {
        prop_assert_eq!(
            pi_by_smallest_member(dat, s.prime(q)).unwrap(),
            pi_by_annihilator(dat, s.prime(q)).unwrap()
        );
    }
    let fin = fin_topology(dat, &s, &limits()).unwrap();
    prop_assert_eq!(fin.continuity_violation(dat, &pi), None);
    let base = ttg_core::topology::ClosedSets::of_poset(dat.base(), &limits()).unwrap();
    prop_assert_eq!(continuity_violation(&pi, s.closed_sets(), &base), None);
    let mut seen = IdSet::EMPTY;
    for y in 0..dat.base().len() {
        let f = fiber(dat, &s, &pi, y, &limits()).unwrap();
        prop_assert!(seen.intersection(f.primes).is_empty());
        seen = seen.union(f.primes);
    }
    prop_assert_eq!(seen, s.all());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn universal_maps_pull_supports_back(x in poset(3)) {
        let l = down_sets(&x, &limits()).unwrap();
        let s = spectrum(&l, &limits()).unwrap();
        for y in support_data_enumerate(&l, &limits()).unwrap() {
            let u = universal_map(&l, &y, &limits()).unwrap();
            for e in 0..l.len() {
                let pulled: IdSet = (0..s.len()).filter(|&q| y.supp(e).unwrap().contains(u.map[q])).collect();
                prop_assert_eq!(pulled, s.supp(e).unwrap());
            }
        }
    }

    #[test]
    fn sb_families_are_union_closed_with_the_expected_primes(n in 2usize..=3, k in 0usize..=3) {
        let (sb, dat) = sb_datum(&SbModel::over_point(n, k), &limits()).unwrap();
        prop_assert!(sb.closure.union_closed);
        prop_assert_eq!(sb.lattice.len(), 1 + (1 << n) + k);
        prop_assert_eq!(spectrum(&sb.lattice, &limits()).unwrap().len(), n + 1 + k);
        prop_assert!(validate_admissible(&dat, Exec::Sequential).is_admissible());
        prop_assert_eq!(check_sheaf_on_action_image(&dat).unwrap(), None);
        check_base_morphism(&dat)?;
    }
}

use std::collections::BTreeMap;

use itertools::Itertools;
use mintaylor::betti::{betti_eliahou_kervaire, binomial};
use mintaylor::classify::{is_thm22_form, is_thm31_form, make_thm22};
use mintaylor::quotients::stable_canonical_sets;
use mintaylor::{
    all_orders, betti_formula, betti_oracle, build_taylor, check_order, find_order,
    is_minimal_subset_test, is_stable, minimalize, Monomial, MonomialIdeal,
};
use proptest::prelude::*;

fn arb_monomial(n: usize, max_exp: u16) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(|e| Monomial::from_exponents(&e).unwrap())
}

fn arb_nonunit(n: usize, max_exp: u16) -> impl Strategy<Value = Monomial> {
    arb_monomial(n, max_exp).prop_filter("non-unit", |m| !m.is_one())
}

fn arb_gens(max_n: usize, max_exp: u16, max_r: usize) -> impl Strategy<Value = Vec<Monomial>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(arb_nonunit(n, max_exp), 1..=max_r))
}

fn arb_ideal(max_n: usize, max_exp: u16, max_r: usize) -> impl Strategy<Value = MonomialIdeal> {
    arb_gens(max_n, max_exp, max_r).prop_map(|g| minimalize(g).unwrap())
}

/// Closes generators under `u -> X_j u / X_i` for `j < i`; the result is stable.
fn borel_closure(gens: Vec<Monomial>) -> MonomialIdeal {
    let mut seen: Vec<Monomial> = Vec::new();
    let mut stack = gens;
    while let Some(u) = stack.pop() {
        if seen.contains(&u) {
            continue;
        }
        for i in 2..=u.n() {
            if let Some(v) = u.div_var(i) {
                for j in 1..i {
                    stack.push(v.mul_var(j));
                }
            }
        }
        seen.push(u);
    }
    minimalize(seen).unwrap()
}

fn arb_stable(max_n: usize, max_exp: u16) -> impl Strategy<Value = MonomialIdeal> {
    arb_gens(max_n, max_exp, 3)
        .prop_map(borel_closure)
        .prop_filter("Taylor envelope", |i| i.len() <= 10)
}

fn lcm_of(gens: &[Monomial], mask: u32) -> Monomial {
    (0..gens.len())
        .filter(|i| mask >> i & 1 == 1)
        .fold(Monomial::one(gens[0].n()).unwrap(), |a, i| a.lcm(&gens[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lcm_gcd_lattice_laws(
        (u, v, w) in (1usize..=5).prop_flat_map(|n| (arb_monomial(n, 4), arb_monomial(n, 4), arb_monomial(n, 4)))
    ) {
        prop_assert_eq!(u.lcm(&v), v.lcm(&u));
        prop_assert_eq!(u.gcd(&v), v.gcd(&u));
        prop_assert_eq!(u.lcm(&v).lcm(&w), u.lcm(&v.lcm(&w)));
        prop_assert_eq!(u.gcd(&v).gcd(&w), u.gcd(&v.gcd(&w)));
        prop_assert_eq!(u.lcm(&u), u);
        prop_assert_eq!(u.gcd(&u), u);
        prop_assert!(u.divides(&u.lcm(&v)));
        prop_assert!(u.gcd(&v).divides(&u));
        prop_assert_eq!(u.colon(&v) * u.gcd(&v), u);
        prop_assert_eq!(u.lcm(&v) * u.gcd(&v), u * v);
        prop_assert_eq!((u * v).degree(), u.degree() + v.degree());
    }

    #[test]
    fn minimalize_is_idempotent_and_preserves_membership(
        (gens, probes) in (1usize..=4).prop_flat_map(|n| (
            prop::collection::vec(arb_nonunit(n, 3), 1..=8),
            prop::collection::vec(arb_monomial(n, 4), 1..=8),
        ))
    ) {
        let ideal = minimalize(gens.clone()).unwrap();
        prop_assert_eq!(&minimalize(ideal.generators().to_vec()).unwrap(), &ideal);
        for w in &probes {
            prop_assert_eq!(ideal.contains(w), gens.iter().any(|g| g.divides(w)));
        }
        let g = ideal.generators();
        prop_assert!(g.windows(2).all(|p| p[0] < p[1]));
        for (a, b) in g.iter().tuple_combinations() {
            prop_assert!(!a.divides(b) && !b.divides(a));
        }
        // Canonical order: degree ascending, then revlex descending.
        for p in g.windows(2) {
            prop_assert!(p[0].degree() < p[1].degree()
                || (p[0].degree() == p[1].degree() && p[0].revlex_cmp(&p[1]).is_gt()));
        }
    }

    #[test]
    fn taylor_complex_is_a_complex(ideal in arb_ideal(4, 3, 7)) {
        let t = build_taylor(ideal.generators()).unwrap();
        let r = ideal.len() as u64;
        prop_assert!(t.verify_augmentation());
        prop_assert!(t.verify_complex());
        for (q, s) in t.strands().iter().enumerate() {
            prop_assert_eq!(s.rank() as u64, binomial(r, q as u64 + 1));
            for b in s.basis() {
                prop_assert_eq!(b.homological_degree(), q);
                prop_assert_eq!(b.multidegree, lcm_of(ideal.generators(), b.members));
            }
        }
        prop_assert_eq!(t.is_minimal(), is_minimal_subset_test(ideal.generators()).unwrap());
    }

    #[test]
    fn taylor_entries_are_lcm_quotients(ideal in arb_ideal(4, 3, 6)) {
        let t = build_taylor(ideal.generators()).unwrap();
        for q in 1..t.r() {
            let prev = t.strand(q - 1).unwrap().basis();
            let s = t.strand(q).unwrap();
            for (col, b) in s.columns().iter().zip(s.basis()) {
                prop_assert_eq!(col.len(), q + 1);
                for (pos, e) in col.iter().enumerate() {
                    let row = prev[e.row];
                    prop_assert_eq!(row.members.count_ones() as usize, q);
                    prop_assert_eq!(row.members & !b.members, 0);
                    prop_assert_eq!(e.monomial * row.multidegree, b.multidegree);
                    prop_assert_eq!(e.sign, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
        }
    }

    #[test]
    fn any_sign_flip_breaks_the_complex(
        ideal in arb_ideal(3, 3, 5).prop_filter("two generators", |i| i.len() >= 2),
        pick in any::<prop::sample::Index>(),
    ) {
        let mut t = build_taylor(ideal.generators()).unwrap();
        let slots: Vec<(usize, usize, usize)> = (1..t.r())
            .flat_map(|q| {
                let cols = t.strand(q).unwrap().columns().to_vec();
                cols.into_iter()
                    .enumerate()
                    .flat_map(move |(c, col)| (0..col.len()).map(move |e| (q, c, e)))
            })
            .collect();
        let (q, c, e) = slots[pick.index(slots.len())];
        t.flip_sign(q, c, e);
        prop_assert!(!t.verify_complex());
    }

    #[test]
    fn found_orders_are_valid_and_give_oracle_betti(ideal in arb_ideal(4, 2, 6)) {
        match find_order(&ideal).unwrap() {
            Some(o) => {
                prop_assert!(o.revalidate());
                prop_assert!(o.sets().iter().enumerate().all(|(j, s)| s.len() <= j));
                prop_assert!(o.sets()[0].is_empty());
                prop_assert_eq!(&check_order(&ideal, o.order()).unwrap(), &o);
                prop_assert_eq!(betti_formula(&o).total().to_vec(), betti_oracle(&ideal).unwrap().total().to_vec());
            }
            None => {
                let r = ideal.len();
                for perm in (0..r).permutations(r) {
                    prop_assert!(check_order(&ideal, &perm).is_err());
                }
            }
        }
    }

    #[test]
    fn set_size_multiset_is_order_invariant(ideal in arb_ideal(4, 2, 6)) {
        let orders = all_orders(&ideal).unwrap();
        let sizes: Vec<Vec<usize>> = orders
            .iter()
            .map(|o| { let mut s = o.set_sizes(); s.sort_unstable(); s })
            .collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] == w[1]));
        prop_assert_eq!(orders.is_empty(), find_order(&ideal).unwrap().is_none());
    }

    #[test]
    fn stable_ideals_use_the_canonical_order(ideal in arb_stable(4, 3)) {
        prop_assert!(is_stable(&ideal));
        let o = stable_canonical_sets(&ideal).unwrap();
        prop_assert_eq!(o.order().to_vec(), (0..ideal.len()).collect::<Vec<_>>());
        for (u, s) in ideal.generators().iter().zip(o.sets()) {
            let m = u.max_index().unwrap();
            prop_assert!(s.iter().eq(1..m));
        }
        prop_assert!(o.revalidate());
        let oracle = betti_oracle(&ideal).unwrap();
        prop_assert_eq!(betti_eliahou_kervaire(&ideal).unwrap().total().to_vec(), oracle.total().to_vec());
        prop_assert_eq!(betti_formula(&o).total().to_vec(), oracle.total().to_vec());
    }

    #[test]
    fn betti_tables_are_consistent(ideal in arb_ideal(4, 3, 7)) {
        let beta = betti_oracle(&ideal).unwrap();
        let t = build_taylor(ideal.generators()).unwrap();
        prop_assert!(beta.is_consistent());
        prop_assert_eq!(beta.total().len(), ideal.len());
        prop_assert_eq!(beta.total()[0], ideal.len() as u64);
        let minimal = is_minimal_subset_test(ideal.generators()).unwrap();
        let ranks = t.ranks();
        prop_assert!(beta.total().iter().zip(&ranks).all(|(&b, &r)| b as usize <= r));
        prop_assert_eq!(beta.total().iter().zip(&ranks).all(|(&b, &r)| b as usize == r), minimal);
        // Euler characteristic per total degree agrees with the Taylor strands.
        let mut chi: BTreeMap<u32, i64> = BTreeMap::new();
        for (q, s) in t.strands().iter().enumerate() {
            for b in s.basis() {
                *chi.entry(b.multidegree.degree()).or_default() += if q % 2 == 0 { 1 } else { -1 };
            }
        }
        let mut chi_beta: BTreeMap<u32, i64> = BTreeMap::new();
        for (&(q, j), &b) in beta.graded().unwrap() {
            *chi_beta.entry(j).or_default() += if q % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        chi.retain(|_, v| *v != 0);
        chi_beta.retain(|_, v| *v != 0);
        prop_assert_eq!(chi, chi_beta);
    }

    #[test]
    fn generator_order_does_not_change_the_oracle(
        ideal in arb_ideal(4, 3, 6),
        seed in any::<u64>(),
    ) {
        use mintaylor::betti::betti_from_complex;
        let mut gens = ideal.generators().to_vec();
        let len = gens.len();
        for i in (1..len).rev() {
            gens.swap(i, (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize);
        }
        let shuffled = betti_from_complex(&build_taylor(&gens).unwrap());
        prop_assert_eq!(shuffled, betti_oracle(&ideal).unwrap());
    }

    #[test]
    fn constructed_stable_products_are_minimal(
        (n, a) in (1usize..=5).prop_flat_map(|n| (Just(n), 1..=n))
            .prop_flat_map(|(n, r)| (Just(n), prop::collection::vec(0u16..=3, r)))
    ) {
        let ideal = make_thm22(n, &a).unwrap();
        prop_assert!(is_stable(&ideal));
        prop_assert_eq!(ideal.len(), a.len());
        prop_assert!(is_minimal_subset_test(ideal.generators()).unwrap());
        prop_assert_eq!(is_thm22_form(&ideal), Some((a.len(), a.clone())));
        let o = find_order(&ideal).unwrap().unwrap();
        prop_assert!(o.set_sizes().iter().copied().eq(0..a.len()));
    }

    #[test]
    fn factor_times_variables_is_recognized(
        (u, vars) in (2usize..=5).prop_flat_map(|n| (
            arb_monomial(n, 2),
            prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 2..=n),
        ))
    ) {
        let gens = vars.iter().map(|&k| u.mul_var(k));
        let ideal = minimalize(gens).unwrap();
        let form = is_thm31_form(&ideal).unwrap();
        prop_assert_eq!(form.factor, u);
        prop_assert_eq!(&form.variables, &vars);
        prop_assert!(is_minimal_subset_test(ideal.generators()).unwrap());
        prop_assert!(find_order(&ideal).unwrap().is_some());
    }
}

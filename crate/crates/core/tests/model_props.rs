use std::collections::{BTreeMap, BTreeSet, HashMap};

use lci_core::ci::{ci_deviation, complement_projector, max_abs, DiscreteJoint};
use lci_core::info::{shannon_h, valuation_deviation};
use lci_core::timeseries::innovation_history;
use lci_core::*;
use nalgebra::DMatrix;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tdag(max_n: usize) -> impl Strategy<Value = Tdag> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs = prop::collection::vec(prop::bool::weighted(0.4), n * (n - 1) / 2);
            (Just(n), pairs, Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(n, bits, perm)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[k] {
                        edges.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Tdag::closure((1..=n).map(|i| i.to_string()).collect(), edges).unwrap()
        })
}

/// d-separation of `a` and `b` given `c`: separation in the moral graph of the
/// ancestral closure of `a ∪ b ∪ c`.
fn d_separated(g: &Tdag, a: &IndexSet, b: &IndexSet, c: &IndexSet) -> bool {
    let n = g.vertices().len();
    let parents: Vec<Vec<usize>> = (0..n)
        .map(|j| g.edges().iter().filter(|e| e.1 == j).map(|e| e.0).collect())
        .collect();
    let mut anc = a.union(b).union(c);
    for v in anc.clone().iter() {
        for &p in &parents[v] {
            anc.insert(p);
        }
    }
    let mut adj = vec![BTreeSet::new(); n];
    for v in anc.iter() {
        let ps: Vec<usize> = parents[v].iter().copied().filter(|p| anc.contains(*p)).collect();
        for &p in &ps {
            adj[v].insert(p);
            adj[p].insert(v);
        }
        for &p in &ps {
            for &q in &ps {
                if p != q {
                    adj[p].insert(q);
                }
            }
        }
    }
    let mut seen: BTreeSet<usize> = a.iter().collect();
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(v) = stack.pop() {
        if b.contains(v) {
            return false;
        }
        for &w in &adj[v] {
            if !c.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    true
}

fn random_statement(rng: &mut ChaCha8Rng, n: usize) -> Option<CiStatement> {
    let roles: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let pick = |r: u8| -> IndexSet { (0..n).filter(|&i| roles[i] == r).collect() };
    CiStatement::new(pick(0), pick(1), pick(2)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn discrete_soundness(g in random_tdag(6), seed in 0u64..1000) {
        let l = lattice_of_tdag(&g).unwrap();
        let d: Joint = joint_from_tdag(&g, &vec![2; g.vertices().len()], ConditionalSource::Random(seed)).unwrap();
        for s in ci_statements(&l) {
            prop_assert!(check_ci(&d, &s, 1e-10).unwrap(), "{}", s.render(l.ground()));
        }
    }

    #[test]
    fn exact_soundness(g in random_tdag(5), seed in 0u64..1000) {
        let l = lattice_of_tdag(&g).unwrap();
        let cards: Vec<usize> = (0..g.vertices().len()).map(|i| 2 + i % 2).collect();
        let d: ExactJoint = joint_from_tdag(&g, &cards, ConditionalSource::Random(seed)).unwrap();
        for (a, b) in l.incomparable_pairs() {
            let dev = lci_core::ci::hibi_relation_deviation(&d, l.element(a), l.element(b)).unwrap();
            prop_assert!(dev.is_zero());
        }
    }

    #[test]
    fn gaussian_and_discrete_agree_with_the_graph(g in random_tdag(6), seed in 0u64..1000) {
        let n = g.vertices().len();
        let l = lattice_of_tdag(&g).unwrap();
        let m: Gaussian = gaussian_from_tdag(&g, seed).unwrap();
        let d: Joint = joint_from_tdag(&g, &vec![2; n], ConditionalSource::Random(seed)).unwrap();
        for s in ci_statements(&l) {
            prop_assert!(d_separated(&g, &s.a, &s.b, &s.c));
            prop_assert!(check_gaussian_ci(&m, &s, 1e-9).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut expected_false = 0;
        let mut tries = 0;
        while expected_false < 50 && tries < 2000 {
            tries += 1;
            let Some(s) = random_statement(&mut rng, n) else { continue };
            let sep = d_separated(&g, &s.a, &s.b, &s.c);
            prop_assert_eq!(check_gaussian_ci(&m, &s, 1e-9).unwrap(), sep, "{}", s.render(m.ground()));
            prop_assert_eq!(check_ci(&d, &s, 1e-10).unwrap(), sep, "{}", s.render(m.ground()));
            if !sep {
                expected_false += 1;
            }
        }
    }

    #[test]
    fn projector_laws(g in random_tdag(6), seed in 0u64..1000) {
        let n = g.vertices().len();
        let l = lattice_of_tdag(&g).unwrap();
        let m: Gaussian = gaussian_from_tdag(&g, seed).unwrap();
        let id = DMatrix::<f64>::identity(n, n);
        let ps: Vec<DMatrix<f64>> = l.elements().iter().map(|e| projector(&m, e).unwrap()).collect();
        for (a, p) in ps.iter().enumerate() {
            prop_assert!(max_abs(&(p * p - p)) < 1e-9);
            prop_assert!(max_abs(&(p - p.transpose())) < 1e-9);
            let q = complement_projector(&m, &l.ground().full().difference(l.element(a))).unwrap();
            prop_assert!(max_abs(&(p + q - &id)) < 1e-10);
            for b in 0..l.len() {
                prop_assert!(max_abs(&(p * &ps[b] - &ps[l.meet(a, b)])) < 1e-9);
            }
        }
    }

    #[test]
    fn q_duality(g in random_tdag(5), seed in 0u64..1000) {
        let l = lattice_of_tdag(&g).unwrap();
        let n = g.vertices().len();
        let d: ExactJoint = joint_from_tdag(&g, &vec![2; n], ConditionalSource::Random(seed)).unwrap();
        let full = l.ground().full();
        for i in l.elements() {
            let p = lci_core::ci::margin(&d, i).unwrap();
            let q = q_margin(&d, &full.difference(i)).unwrap();
            for (k, (qk, full_k)) in q.iter().zip(d.table()).enumerate() {
                prop_assert_eq!(p.at_full(k).clone() * qk.clone(), full_k.clone());
            }
        }
    }

    #[test]
    fn information_is_a_valuation(g in random_tdag(6), seed in 0u64..1000) {
        let l = lattice_of_tdag(&g).unwrap();
        let d: Joint = joint_from_tdag(&g, &vec![2; g.vertices().len()], ConditionalSource::Random(seed)).unwrap();
        let v = Valuation::from_joint(&d, &l).unwrap();
        prop_assert!(valuation_check(&v, &l, 1e-10).unwrap());
        let total: f64 = edge_increments(&v, &l).unwrap().iter().map(|e| e.value).sum::<f64>();
        prop_assert!(total.is_finite());
    }

    #[test]
    fn conditional_information(g in random_tdag(5), seed in 0u64..1000, pick in any::<(u8, u8)>()) {
        let n = g.vertices().len();
        let d: Joint = joint_from_tdag(&g, &vec![2; n], ConditionalSource::Random(seed)).unwrap();
        let i: IndexSet = (0..n).filter(|k| pick.0 & (1 << k) != 0).collect();
        let j: IndexSet = (0..n).filter(|k| pick.1 & (1 << k) != 0).collect();
        let u = i.union(&j);
        // conditional p(x_{J∖I} | x_I) tabulated from scratch over assignment tuples
        let mut joint_u: HashMap<Vec<usize>, f64> = HashMap::new();
        let mut joint_i: HashMap<Vec<usize>, f64> = HashMap::new();
        for (k, p) in d.table().iter().enumerate() {
            let x = d.assignment(k);
            *joint_u.entry(u.iter().map(|v| x[v]).collect()).or_default() += p;
            *joint_i.entry(i.iter().map(|v| x[v]).collect()).or_default() += p;
        }
        let mut expect = 0.0;
        for (k, p) in d.table().iter().enumerate() {
            let x = d.assignment(k);
            let cond = joint_u[&u.iter().map(|v| x[v]).collect::<Vec<_>>()]
                / joint_i[&i.iter().map(|v| x[v]).collect::<Vec<_>>()];
            expect += p * cond.ln();
        }
        let got = shannon_h(&d, &u).unwrap() - shannon_h(&d, &i).unwrap();
        prop_assert!((got - expect).abs() < 1e-10);
    }

    #[test]
    fn rip_families_satisfy_rota(
        n in 2usize..7,
        masks in prop::collection::vec(1u8..64, 1..5),
        weights in prop::collection::vec(-3.0f64..3.0, 64),
    ) {
        let g = GroundSet::numbered(n);
        let fam: Vec<IndexSet> = masks.iter().map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect();
        prop_assume!(fam.iter().all(|s| !s.is_empty()));
        prop_assume!(running_intersection_check(&fam));
        let l = lattice_from_generators(&g, &fam).unwrap();
        // modular function: sum of weights of the join-irreducibles below
        let ji = join_irreducibles(&l);
        let mut values = BTreeMap::new();
        for e in l.elements() {
            let v: f64 = ji.elements().iter().enumerate().filter(|(_, j)| j.is_subset(e)).map(|(k, _)| weights[k]).sum();
            values.insert(e.clone(), v);
        }
        let v = Valuation::new(g.clone(), values).unwrap();
        prop_assert!(valuation_deviation(&v, &l).unwrap() < 1e-10);
        let union = fam.iter().fold(IndexSet::new(), |a, s| a.union(s));
        let r = rota_inclusion_exclusion(&v, &fam).unwrap();
        prop_assert!((r - v.get(&union).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn example_generators_have_running_intersections() {
    let g = GroundSet::numbered(5);
    let fam: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
    assert!(running_intersection_check(&fam));
    for t in 1..5 {
        let spec = SeriesSpec::new(3, t, 2).unwrap();
        assert!(running_intersection_check(&spec.top_generators()));
    }
}

#[test]
fn timeseries_consistency_and_innovations() {
    for (m, t, hub) in [(3, 3, 2), (2, 2, 1), (4, 2, 3), (1, 4, 1)] {
        let spec = SeriesSpec::new(m, t, hub).unwrap();
        let next = spec.advanced();
        let steps = advance_time(&spec).unwrap();
        let l_next = timeseries_lattice(&next).unwrap();
        let mut gens = next.generators();
        gens.truncate(m * t);
        gens.extend(steps.iter().map(|u| u.new_top.clone()));
        assert_eq!(lattice_from_generators(&next.ground(), &gens).unwrap(), l_next);
        for u in &steps {
            assert!(!u.innovation.is_empty());
            let new = monomial_u_prime(&l_next, &u.new_top).unwrap();
            let old = monomial_u_prime(&l_next, &u.old_top).unwrap();
            // u'(new) = u'(old) * prod z_k over the innovation, as multisets
            let mut factors: Vec<usize> = old.z.iter().chain(u.innovation.iter()).collect();
            factors.sort_unstable();
            assert_eq!(factors, new.z.iter().collect::<Vec<_>>());
        }
        let hist = innovation_history(&next).unwrap();
        for u in &steps {
            assert_eq!(hist[u.series - 1][t], u.innovation);
        }
    }
}

#[test]
fn timeseries_model_is_valid() {
    let spec = SeriesSpec::new(3, 3, 2).unwrap();
    let g = timeseries_tdag(&spec).unwrap();
    let l = timeseries_lattice(&spec).unwrap();
    let d: Joint = joint_from_tdag(&g, &[2; 9], ConditionalSource::Random(11)).unwrap();
    let stmts = ci_statements(&l);
    let headline = spec.cross_statement(1, 3).unwrap();
    assert!(stmts.contains(&headline));
    assert_eq!(headline.render(l.ground()), "11,12,13 _||_ 31,32,33 | 21,22");
    for s in &stmts {
        assert!(ci_deviation(&d, s).unwrap() < 1e-10, "{}", s.render(l.ground()));
    }
}

#[test]
fn timeseries_growth_is_monotone() {
    let mut by_t = Vec::new();
    for t in 1..=4 {
        by_t.push(timeseries_lattice(&SeriesSpec::new(3, t, 2).unwrap()).unwrap().len());
    }
    assert!(by_t.windows(2).all(|w| w[0] <= w[1]));
    let mut by_m = Vec::new();
    for m in 1..=4 {
        by_m.push(timeseries_lattice(&SeriesSpec::new(m, 3, 1).unwrap()).unwrap().len());
    }
    assert!(by_m.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn p_q_duality_in_corrected_form() {
    let g = GroundSet::numbered(5);
    let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
    let t = tdag_of_lattice(&lattice_from_generators(&g, &gens).unwrap());
    let d: ExactJoint = joint_from_tdag(&t, &[2; 5], ConditionalSource::Random(2)).unwrap();
    let full = g.full();
    let q = |j: &IndexSet| q_margin(&d, j).unwrap();
    let p = |i: &IndexSet| {
        let m = lci_core::ci::margin(&d, i).unwrap();
        (0..d.table().len()).map(|k| m.at_full(k).clone()).collect::<Vec<_>>()
    };
    let mut literal_holds = true;
    for i in 0..5 {
        for j in 0..5 {
            if i != j && !t.edges().contains(&(i, j)) {
                continue;
            }
            let label = |k: usize| t.vertices()[k].clone();
            let down_i = ancestors(&t, &label(i)).unwrap();
            let down_j = ancestors(&t, &label(j)).unwrap();
            let up = |k: usize| -> IndexSet {
                let mut s: IndexSet = t.edges().iter().filter(|e| e.0 == k).map(|e| e.1).collect();
                s.insert(k);
                s
            };
            let (pi, pj) = (p(&down_i), p(&down_j));
            let (qa, qb) = (q(&full.difference(&down_i)), q(&full.difference(&down_j)));
            let (qi, qj) = (q(&up(i)), q(&up(j)));
            for k in 0..d.table().len() {
                // p_{I(j)} / p_{I(i)} = q_{[n]∖I(i)} / q_{[n]∖I(j)}
                assert_eq!(pj[k].clone() * qb[k].clone(), pi[k].clone() * qa[k].clone());
                if pj[k].clone() * qi[k].clone() != pi[k].clone() * qj[k].clone() {
                    literal_holds = false;
                }
            }
        }
    }
    assert!(!literal_holds, "the up-set form should fail on this model");
    assert!(d.table().iter().all(|x| *x > Exact::zero() && *x < Exact::one()));
}

#[test]
fn single_precision_joint() {
    let g = Tdag::closure(vec!["a".into(), "b".into(), "c".into()], [(0, 1), (0, 2)]).unwrap();
    let l = lattice_of_tdag(&g).unwrap();
    let d: DiscreteJoint<f32> = joint_from_tdag(&g, &[2, 2, 2], ConditionalSource::Random(1)).unwrap();
    for s in ci_statements(&l) {
        assert!(check_ci(&d, &s, 1e-6).unwrap());
    }
}

mod common;

use proptest::prelude::*;
use qwalk::{
    component_bound, generate, lemma_argmax, lemma_brute_force, lemma_maximum, lemma_objective,
    marked_components, max_marked_probability_oracle, solve_min_norm, total_bound, MarkedSet,
    StationaryAssignment64,
};

fn assignments(g: &qwalk::Graph, marked: &MarkedSet) -> (Vec<qwalk::MarkedComponent>, Vec<StationaryAssignment64>) {
    let comps = marked_components(g, marked);
    let asgs = comps.iter().map(|c| solve_min_norm(c).unwrap()).collect();
    (comps, asgs)
}

#[test]
fn dominance_on_small_corpus() {
    let mut configs: Vec<(qwalk::Graph, Vec<usize>)> = vec![
        (generate::cycle(9).unwrap(), vec![2, 3]),
        (generate::cycle(12).unwrap(), vec![0, 1, 6, 7]),
        (generate::torus2d(8, 8).unwrap(), vec![9, 10, 17, 18]),
        (generate::torus2d(6, 9).unwrap(), vec![0, 1, 30, 31]),
        (generate::complete(7).unwrap(), vec![0, 1, 2]),
    ];
    for seed in 0..6u64 {
        let g = generate::random_regular(40, 3 + (seed as usize % 3), seed).unwrap();
        let (u, v) = g.edges().nth(seed as usize * 5).unwrap();
        configs.push((g, vec![u, v]));
    }
    for (g, marked) in configs {
        let marked = MarkedSet::new(&g, marked).unwrap();
        let (comps, asgs) = assignments(&g, &marked);
        let parts: Vec<_> = comps.iter().zip(&asgs).collect();
        let report = total_bound(&parts, g.edge_count()).unwrap();
        let observed: f64 = max_marked_probability_oracle(&g, &marked, 1500).unwrap();
        assert!(observed <= report.total_bound + 1e-9, "{observed} > {}", report.total_bound);
    }
}

#[test]
fn min_norm_is_tighter_than_injected() {
    let g = generate::torus2d(16, 16).unwrap();
    let marked = MarkedSet::new(&g, [17, 18, 33, 34]).unwrap();
    let (comps, asgs) = assignments(&g, &marked);
    let injected = StationaryAssignment64::inject(
        &comps[0],
        [((17, 18), 1.0), ((33, 34), 1.0), ((17, 33), -3.0), ((18, 34), -3.0)],
    )
    .unwrap();
    let tight = component_bound(&comps[0], &asgs[0], g.edge_count()).unwrap();
    let loose = component_bound(&comps[0], &injected, g.edge_count()).unwrap();
    assert!((tight - 0.125).abs() < 1e-14);
    // (2/512) * (40 + 16 + 8)
    assert!((loose - 0.25).abs() < 1e-14);
    assert!(tight < loose);
}

#[test]
fn lemma_agreement_over_random_instances() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for i in 0..100u64 {
        let dim = rng.gen_range(2..=6);
        let a: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let r = rng.gen_range(0.1..4.0);
        let exact = lemma_maximum(&a, r);
        let x = lemma_argmax(&a, r).unwrap();
        assert!((lemma_objective(&x, &a) - exact).abs() <= 1e-10);
        let (_, best) = lemma_brute_force(&a, r, 20_000, i).unwrap();
        assert!(best <= exact + 1e-6, "{best} > {exact}");
        assert!(exact - best <= 1e-3, "instance {i}: {best} vs {exact}");
    }
}

proptest! {
    #[test]
    fn proof_identity_and_additivity(seed in any::<u64>(), d in 3usize..6, k in 1usize..4) {
        let n = 40;
        prop_assume!((n * d) % 2 == 0);
        let g = generate::random_regular(n, d, seed).unwrap();
        // greedily pick k disjoint, mutually non-adjacent edges
        let mut used = vec![false; n];
        let mut marked = Vec::new();
        for (u, v) in g.edges() {
            if marked.len() == 2 * k {
                break;
            }
            let blocked = |x: usize| used[x] || g.neighbors(x).iter().any(|&w| used[w]);
            if !blocked(u) && !blocked(v) {
                used[u] = true;
                used[v] = true;
                marked.extend([u, v]);
            }
        }
        let set = MarkedSet::new(&g, marked).unwrap();
        let (comps, asgs) = assignments(&g, &set);
        let m = g.edge_count();

        let mut sum = 0.0;
        for (c, a) in comps.iter().zip(&asgs) {
            let sq = a.directed_square_sum();
            let dout = c.total_out() as f64;
            let em = c.internal_edges().len() as f64;
            // opening the brackets: sum_directed (c - 1)^2 = sum_directed c^2 + 2 D_out + 2 |E_M|
            let shifted: f64 = 2.0 * a.coefficients().values().map(|c| (c - 1.0).powi(2)).sum::<f64>();
            let opened = sq + 2.0 * dout + 2.0 * em;
            prop_assert!((shifted - opened).abs() <= 1e-9 * opened.max(1.0));
            sum += component_bound(c, a, m).unwrap();
        }
        let parts: Vec<_> = comps.iter().zip(&asgs).collect();
        let report = total_bound(&parts, m).unwrap();
        prop_assert!((report.total_bound - sum).abs() <= 1e-12);
        let expected = comps.len() as f64 * 4.0 * (d * d) as f64 / m as f64;
        prop_assert!((report.total_bound - expected).abs() <= 1e-12);
    }
}

use limitgame::limit::{extract_strategy_limit_p0, solve_limit, value_map};
use limitgame::oracle::{generate_family_15_1, generate_family_15_2, oracle_limit_value};
use limitgame::strategy::reachable_memory_states;
use limitgame::{ExtWeight, ProductArena, VertexId};

#[test]
fn family_15_1_values_and_memory() {
    for n in 1..=3usize {
        for s in 2..=4usize {
            let (arena, dfa) = generate_family_15_1(n, s).unwrap();
            let (product, memory) = ProductArena::from_dfa(&arena, &dfa).unwrap();
            let sol = solve_limit(&product, product.goal()).unwrap();
            let values = value_map(&sol, &product, &memory);
            let starts: Vec<VertexId> = (0..n).map(|j| VertexId(j as u32)).collect();
            for (j, &v) in (1..=n).zip(&starts) {
                assert_eq!(values[v.index()], ExtWeight::from((n + 1 + j) as u64), "n={n} s={s} j={j}");
            }
            let sigma = extract_strategy_limit_p0(&product, &sol, &memory).unwrap();
            let used = reachable_memory_states(&arena, &sigma, &starts).unwrap();
            assert!(used.len() >= n * (s - 1), "n={n} s={s}: {} states", used.len());
        }
    }
}

/// The cycle through `v1..vm` carries `m·n + 1` edges between visits of
/// the accepting vertex `v`, so the exact value from `v1` is `(m·n + 1)·W`.
#[test]
fn family_15_2_values() {
    for m in 2..=3usize {
        for n in 2..=3usize {
            for w in [0u64, 1, 5] {
                let (arena, dfa) = generate_family_15_2(m, n, w).unwrap();
                let (product, memory) = ProductArena::from_dfa(&arena, &dfa).unwrap();
                let sol = solve_limit(&product, product.goal()).unwrap();
                let v1 = VertexId(0);
                let expected = ExtWeight::from(((m * n) as u64 + 1) * w);
                assert_eq!(value_map(&sol, &product, &memory)[0], expected, "m={m} n={n} w={w}");
                assert_eq!(oracle_limit_value(&arena, &dfa, v1).unwrap(), expected);
            }
        }
    }
}

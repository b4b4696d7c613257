//! Instance generators: the two lower-bound families and seeded random games.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{Alphabet, Arena, ArenaBuilder, Player};
use crate::dfa::{Dfa, DfaBuilder};
use crate::error::GameError;

fn bad(msg: impl Into<String>) -> GameError {
    GameError::BadParameter(msg.into())
}

/// Memory lower-bound family. All vertices belong to Player 0.
///
/// Vertices in order: `v1..vn` (color a), `v` (a), `vp` (b), `vp1..vpn` (c).
/// The automaton accepts `a(a^{s-1}b)*c` followed by any number of `c`s.
pub fn generate_family_15_1(n: usize, s: usize) -> Result<(Arena, Dfa), GameError> {
    if n < 1 {
        return Err(bad("n must be at least 1"));
    }
    if s < 2 {
        return Err(bad("s must be at least 2"));
    }
    let n64 = n as u64;
    let mut b = ArenaBuilder::with_alphabet(Alphabet::from_names(["a", "b", "c"]));
    let sources: Vec<_> = (1..=n)
        .map(|j| b.vertex(format!("v{j}"), Player::Zero, "a"))
        .collect();
    let v = b.vertex("v", Player::Zero, "a");
    let vp = b.vertex("vp", Player::Zero, "b");
    let sinks: Vec<_> = (1..=n)
        .map(|j| b.vertex(format!("vp{j}"), Player::Zero, "c"))
        .collect();
    for (j, (&src, &dst)) in (1..=n64).zip(sources.iter().zip(&sinks)) {
        b.edge(src, v, 2 * j);
        b.edge(vp, dst, n64 + 1 - j);
        b.edge(dst, dst, n64 + 1 + j);
    }
    b.edge(v, v, 0);
    b.edge(v, vp, 0);
    let arena = b.build()?;

    let mut d = DfaBuilder::new(arena.alphabet().clone());
    let q0 = d.state("q0", false);
    let chain: Vec<_> = (1..=s).map(|i| d.state(format!("q{i}"), false)).collect();
    let acc = d.state("q", true);
    let sink = d.state("sink", false);
    d.initial(q0).default_sink(sink);
    d.transition_named(q0, "a", chain[0])?;
    for w in chain.windows(2) {
        d.transition_named(w[0], "a", w[1])?;
    }
    d.transition_named(chain[s - 1], "b", chain[0])?;
    d.transition_named(chain[0], "c", acc)?;
    d.transition_named(acc, "c", acc)?;
    Ok((arena, d.build()?))
}

/// Value lower-bound family. All vertices belong to Player 0 and every
/// edge weighs `w`.
///
/// Vertices in order: `v1, vp1, ..., vm, vpm, v`. The automaton has
/// states `q0` (accepting), `q1` (initial) up to `qn` and a rejecting sink.
pub fn generate_family_15_2(m: usize, n: usize, w: u64) -> Result<(Arena, Dfa), GameError> {
    if m < 2 {
        return Err(bad("m must be at least 2"));
    }
    if n < 2 {
        return Err(bad("n must be at least 2"));
    }
    let mut b = ArenaBuilder::with_alphabet(Alphabet::from_names(["a", "b", "c"]));
    let pairs: Vec<_> = (1..=m)
        .map(|i| {
            (
                b.vertex(format!("v{i}"), Player::Zero, "a"),
                b.vertex(format!("vp{i}"), Player::Zero, "b"),
            )
        })
        .collect();
    let v = b.vertex("v", Player::Zero, "c");
    for (i, &(x, xp)) in pairs.iter().enumerate() {
        b.edge(x, x, w);
        b.edge(x, xp, w);
        let next = pairs.get(i + 1).map_or(v, |p| p.0);
        b.edge(xp, next, w);
    }
    b.edge(v, pairs[0].0, w);
    let arena = b.build()?;

    let mut d = DfaBuilder::new(arena.alphabet().clone());
    let q0 = d.state("q0", true);
    let chain: Vec<_> = (1..=n).map(|i| d.state(format!("q{i}"), false)).collect();
    let sink = d.state("sink", false);
    d.initial(chain[0]).default_sink(sink);
    for win in chain.windows(2) {
        d.transition_named(win[0], "a", win[1])?;
    }
    d.transition_named(chain[n - 1], "b", chain[0])?;
    d.transition_named(chain[0], "c", q0)?;
    d.transition_named(q0, "a", chain[1])?;
    Ok((arena, d.build()?))
}

/// Shape of a random instance. The vertex count is drawn uniformly from
/// `min_vertices..=max_vertices`; everything else is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_out_degree: usize,
    pub colors: usize,
    pub states: usize,
    pub accepting: usize,
    pub max_weight: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            min_vertices: 1,
            max_vertices: 4,
            max_out_degree: 3,
            colors: 2,
            states: 2,
            accepting: 1,
            max_weight: 3,
        }
    }
}

impl RandomParams {
    fn check(&self) -> Result<(), GameError> {
        if self.min_vertices < 1 || self.max_out_degree < 1 || self.colors < 1 {
            return Err(bad("vertex, degree and color counts must be positive"));
        }
        if self.min_vertices > self.max_vertices {
            return Err(bad("min_vertices exceeds max_vertices"));
        }
        if self.states < 1 {
            return Err(bad("the automaton needs a state"));
        }
        if self.accepting >= self.states {
            return Err(bad("the initial state is never accepting"));
        }
        Ok(())
    }
}

/// A seed-deterministic random game. State 0 of the automaton is initial;
/// the accepting states are drawn from the rest.
pub fn random_instance(params: &RandomParams, seed: u64) -> Result<(Arena, Dfa), GameError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(params.min_vertices..=params.max_vertices);
    let names: Vec<String> = (0..params.colors).map(|i| format!("c{i}")).collect();
    let alphabet = Alphabet::from_names(names.iter().map(String::as_str));
    let mut b = ArenaBuilder::with_alphabet(alphabet.clone());
    let ids: Vec<_> = (0..n)
        .map(|i| {
            let owner = if rng.gen_bool(0.5) { Player::Zero } else { Player::One };
            let color = &names[rng.gen_range(0..params.colors)];
            b.vertex(format!("v{i}"), owner, color)
        })
        .collect();
    for &from in &ids {
        let degree = rng.gen_range(1..=params.max_out_degree.min(n));
        let mut targets = sample(&mut rng, n, degree).into_vec();
        targets.sort_unstable();
        for t in targets {
            let w = rng.gen_range(0..=params.max_weight);
            b.edge(from, ids[t], w);
        }
    }
    let arena = b.build()?;

    let mut d = DfaBuilder::new(alphabet);
    let mut accepting = vec![false; params.states];
    if params.states > 1 {
        for i in sample(&mut rng, params.states - 1, params.accepting) {
            accepting[i + 1] = true;
        }
    }
    let states: Vec<_> = (0..params.states)
        .map(|i| d.state(format!("q{i}"), accepting[i]))
        .collect();
    d.initial(states[0]);
    for &q in &states {
        for c in arena.alphabet().colors() {
            d.transition(q, c, states[rng.gen_range(0..params.states)]);
        }
    }
    Ok((arena, d.build()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::VertexId;
    use crate::oracle::oracle_limit_value;

    #[test]
    fn family_15_1_shape() {
        let (arena, dfa) = generate_family_15_1(2, 3).unwrap();
        assert_eq!(arena.num_vertices(), 6);
        // q0, q1..q3, q and the sink.
        assert_eq!(dfa.num_states(), 6);
        assert_eq!(dfa.run_named(&["a", "a", "a", "b", "c"]).map(|q| dfa.is_accepting(q)), Ok(true));
        assert_eq!(dfa.run_named(&["a", "a", "b", "c"]).map(|q| dfa.is_accepting(q)), Ok(false));
    }

    #[test]
    fn family_15_1_oracle_values() {
        for (n, s) in [(1, 2), (2, 2), (2, 3)] {
            let (arena, dfa) = generate_family_15_1(n, s).unwrap();
            for j in 1..=n {
                let v = VertexId(j as u32 - 1);
                let value = oracle_limit_value(&arena, &dfa, v).unwrap();
                assert_eq!(value, ((n + 1 + j) as u64).into(), "n={n} s={s} j={j}");
            }
        }
    }

    #[test]
    fn family_15_2_language() {
        let (arena, dfa) = generate_family_15_2(2, 3, 1).unwrap();
        assert_eq!(arena.num_vertices(), 5);
        let word = ["a", "a", "b", "a", "a", "b", "c"];
        assert_eq!(dfa.run_named(&word).map(|q| dfa.is_accepting(q)), Ok(true));
        assert_eq!(dfa.run_named(&word[1..]).map(|q| dfa.is_accepting(q)), Ok(false));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(generate_family_15_1(0, 2), Err(GameError::BadParameter(_))));
        assert!(matches!(generate_family_15_1(2, 1), Err(GameError::BadParameter(_))));
        assert!(matches!(generate_family_15_2(1, 2, 1), Err(GameError::BadParameter(_))));
        let p = RandomParams { accepting: 2, ..RandomParams::default() };
        assert!(matches!(random_instance(&p, 0), Err(GameError::BadParameter(_))));
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomParams::default();
        for seed in 0..20 {
            let (a1, d1) = random_instance(&p, seed).unwrap();
            let (a2, d2) = random_instance(&p, seed).unwrap();
            assert_eq!(a1, a2);
            assert_eq!(d1, d2);
            assert!(a1.vertices().all(|v| !a1.successors(v).is_empty()));
            assert!(a1.edges().all(|(_, _, w)| w <= 3));
        }
    }
}

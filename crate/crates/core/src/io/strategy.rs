//! Strategy export: memory states, `init`/`upd` tables and the next-move
//! table, all indexed by vertex name order.

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, Player, VertexId};
use crate::error::GameError;
use crate::memory::{MemState, MemoryStructure};
use crate::strategy::FiniteStateStrategy;

/// Placeholder in `next` where the strategy's player does not move.
pub const NO_MOVE: &str = "-";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub player: u8,
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    /// `init[v]`.
    pub init: Vec<MemState>,
    /// `update[m][v]`.
    pub update: Vec<Vec<MemState>>,
    /// `next[m][v]`, a vertex name or [`NO_MOVE`].
    pub next: Vec<Vec<String>>,
}

impl StrategyFile {
    pub fn from_strategy(arena: &Arena, strategy: &FiniteStateStrategy) -> Self {
        let memory = strategy.memory();
        let states = 0..memory.size() as MemState;
        StrategyFile {
            player: strategy.player().index(),
            vertices: arena.vertices().map(|v| arena.name(v).to_string()).collect(),
            labels: states.clone().map(|m| memory.label(m).to_string()).collect(),
            init: arena.vertices().map(|v| memory.init(v)).collect(),
            update: states
                .clone()
                .map(|m| arena.vertices().map(|v| memory.upd(m, v)).collect())
                .collect(),
            next: states
                .map(|m| {
                    arena
                        .vertices()
                        .map(|v| {
                            strategy
                                .choice(v, m)
                                .map_or_else(|| NO_MOVE.to_string(), |t| arena.name(t).to_string())
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("strategy serializes")
    }

    /// Rebuilds the strategy, checking it against `arena`.
    pub fn to_strategy(&self, arena: &Arena) -> Result<FiniteStateStrategy, GameError> {
        let names: Vec<&str> = arena.vertices().map(|v| arena.name(v)).collect();
        if self.vertices.iter().map(String::as_str).ne(names.iter().copied()) {
            return Err(GameError::ArenaMismatch("strategy vertices differ from the arena".into()));
        }
        let player = Player::from_index(self.player)
            .ok_or_else(|| GameError::BadParameter(format!("player {} is not 0 or 1", self.player)))?;
        let k = self.labels.len();
        if self.update.len() != k || self.next.len() != k {
            return Err(GameError::BadParameter(
                "update and next need one row per memory state".into(),
            ));
        }
        let n = names.len();
        if self.update.iter().chain(std::iter::once(&self.init)).any(|r| r.len() != n)
            || self.next.iter().any(|r| r.len() != n)
        {
            return Err(GameError::BadParameter("table rows need one entry per vertex".into()));
        }
        if let Some(m) = self.update.iter().flatten().chain(&self.init).find(|&&m| m as usize >= k) {
            return Err(GameError::BadParameter(format!("memory state {m} out of range")));
        }
        let memory = MemoryStructure::new(
            self.labels.clone(),
            self.init.clone(),
            self.update.concat(),
        )?;
        let nxt = self
            .next
            .iter()
            .flatten()
            .map(|t| match t.as_str() {
                NO_MOVE => Ok(None),
                name => arena
                    .vertex_by_name(name)
                    .map(Some)
                    .ok_or_else(|| GameError::BadParameter(format!("unknown vertex {name:?}"))),
            })
            .collect::<Result<Vec<Option<VertexId>>, _>>()?;
        FiniteStateStrategy::new(arena, player, memory, nxt)
    }
}

pub fn write_strategy(arena: &Arena, strategy: &FiniteStateStrategy) -> String {
    StrategyFile::from_strategy(arena, strategy).to_toml()
}

pub fn read_strategy(text: &str, arena: &Arena) -> Result<FiniteStateStrategy, GameError> {
    let file: StrategyFile =
        toml::from_str(text).map_err(|e| GameError::BadParameter(format!("strategy file: {e}")))?;
    file.to_strategy(arena)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::{extract_strategy_limit_p0, extract_strategy_limit_p1, solve_limit};
    use crate::product::ProductArena;
    use crate::samples::figure3_instance;

    #[test]
    fn round_trip_both_players() {
        let (arena, dfa) = figure3_instance();
        let (product, memory) = ProductArena::from_dfa(&arena, &dfa).unwrap();
        let sol = solve_limit(&product, product.goal()).unwrap();
        for s in [
            extract_strategy_limit_p0(&product, &sol, &memory).unwrap(),
            extract_strategy_limit_p1(&product, &sol, &memory).unwrap(),
        ] {
            let text = write_strategy(&arena, &s);
            assert_eq!(read_strategy(&text, &arena).unwrap(), s);
        }
    }

    #[test]
    fn rejects_non_edges() {
        let (arena, dfa) = figure3_instance();
        let (product, memory) = ProductArena::from_dfa(&arena, &dfa).unwrap();
        let sol = solve_limit(&product, product.goal()).unwrap();
        let s = extract_strategy_limit_p0(&product, &sol, &memory).unwrap();
        let mut file = StrategyFile::from_strategy(&arena, &s);
        // v1 moves to v0 or v2; v4 is not a successor.
        file.next[0][1] = "v4".into();
        assert!(file.to_strategy(&arena).is_err());
    }
}

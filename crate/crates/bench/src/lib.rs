//! Benchmark fixtures.

use std::sync::Arc;

use eliminax::{random_corpus, FiniteGame, GameShape};

pub const SEED: u64 = 0xBE_0001;

/// Random games with the given number of players and up to `strategies`
/// strategies each.
pub fn corpus(players: usize, strategies: usize, count: usize) -> Vec<Arc<FiniteGame>> {
    let shape = GameShape { players: (players, players), strategies: (2, strategies), ..GameShape::default() };
    random_corpus(shape, SEED + players as u64, count).into_iter().map(Arc::new).collect()
}

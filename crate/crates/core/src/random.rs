//! Seeded random finite games for property tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::FiniteGame;
use crate::rational::int;

/// Shape and payoff range of generated games.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameShape {
    pub players: (usize, usize),
    pub strategies: (usize, usize),
    pub payoffs: (i64, i64),
}

impl Default for GameShape {
    /// 2–3 players, 2–5 strategies each, integer payoffs in `[-9, 9]`.
    fn default() -> Self {
        GameShape { players: (2, 3), strategies: (2, 5), payoffs: (-9, 9) }
    }
}

impl GameShape {
    pub fn with_players(mut self, n: usize) -> Self {
        self.players = (n, n);
        self
    }
}

/// A game drawn from `shape`, fully determined by `seed`.
pub fn random_game(shape: GameShape, seed: u64) -> FiniteGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(shape.players.0..=shape.players.1);
    let labels: Vec<Vec<String>> = (0..n)
        .map(|_| {
            let k = rng.random_range(shape.strategies.0..=shape.strategies.1);
            (0..k).map(|s| format!("s{s}")).collect()
        })
        .collect();
    let (lo, hi) = shape.payoffs;
    FiniteGame::from_fn(format!("random{seed}"), labels, |_| (0..n).map(|_| int(rng.random_range(lo..=hi))).collect())
        .expect("generated labels are valid")
}

/// `count` games with seeds `base, base + 1, …`.
pub fn random_corpus(shape: GameShape, base: u64, count: usize) -> Vec<FiniteGame> {
    (0..count as u64).map(|k| random_game(shape, base + k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn games_respect_the_shape() {
        for game in random_corpus(GameShape::default(), 0, 50) {
            assert!((2..=3).contains(&game.player_count()));
            for i in 0..game.player_count() {
                assert!((2..=5).contains(&game.strategy_count(i)));
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(random_game(GameShape::default(), 42), random_game(GameShape::default(), 42));
        assert_eq!(random_game(GameShape::default().with_players(2), 1).player_count(), 2);
    }
}

//! Per-restriction checks of the best-response and dominator properties.
//!
//! The dominator properties are stated for every stage of every
//! relaxation; here they are evaluated at a single restriction, and
//! callers discharge the quantifier by running them along concrete traces.

use crate::error::Result;
use crate::game::{FiniteGame, JointIter, Restriction};
use crate::operators::BeliefStructure;

/// A dominated strategy together with the dominator that satisfies the
/// property, or `None` when the property fails for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorWitness {
    pub player: usize,
    pub dominated: usize,
    pub dominator: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub holds: bool,
    pub witnesses: Vec<DominatorWitness>,
}

impl PropertyReport {
    fn from_witnesses(witnesses: Vec<DominatorWitness>) -> Self {
        let holds = witnesses.iter().all(|w| w.dominator.is_some());
        PropertyReport { holds, witnesses }
    }

    /// Strategies for which no suitable dominator exists.
    pub fn failures(&self) -> impl Iterator<Item = &DominatorWitness> {
        self.witnesses.iter().filter(|w| w.dominator.is_none())
    }
}

/// Every belief of every player has a best response in the initial game.
///
/// For point beliefs each opponent profile is checked for a maximizer.
/// For mixed beliefs the expected payoff is linear in the belief and the
/// player has finitely many strategies, so a maximizer always exists.
pub fn check_property_b(game: &FiniteGame, beliefs: BeliefStructure) -> bool {
    if beliefs != BeliefStructure::Point {
        return true;
    }
    let full = game.full();
    (0..game.player_count()).all(|player| {
        game.opponent_profiles(&full, player).into_iter().all(|mut joint| {
            (0..game.strategy_count(player)).any(|s| {
                joint[player] = s;
                let own = game.payoff(player, &joint).clone();
                (0..game.strategy_count(player)).all(|t| {
                    joint[player] = t;
                    own >= *game.payoff(player, &joint)
                })
            })
        })
    })
}

/// `dominates[i][a][b]`: `a ≻_G b` for player `i`, over all of `T_i`.
fn dominance_tables(game: &FiniteGame, restriction: &Restriction) -> Vec<Vec<Vec<bool>>> {
    (0..game.player_count())
        .map(|player| {
            let profiles = game.opponent_profiles(restriction, player);
            let n = game.strategy_count(player);
            let mut table = vec![vec![true; n]; n];
            for mut joint in profiles {
                let payoffs: Vec<_> = (0..n)
                    .map(|s| {
                        joint[player] = s;
                        game.payoff(player, &joint).clone()
                    })
                    .collect();
                for a in 0..n {
                    for b in 0..n {
                        table[a][b] &= payoffs[a] > payoffs[b];
                    }
                }
            }
            table
        })
        .collect()
}

fn check_dominators(
    game: &FiniteGame,
    restriction: &Restriction,
    local: bool,
    pick: impl Fn(usize, usize, &[Vec<bool>], &[usize]) -> Option<usize>,
) -> Result<PropertyReport> {
    game.check(restriction)?;
    let tables = dominance_tables(game, restriction);
    let mut witnesses = Vec::new();
    for (player, table) in tables.iter().enumerate() {
        let domain: Vec<usize> = if local {
            restriction.strategies(player).collect()
        } else {
            (0..game.strategy_count(player)).collect()
        };
        for &s in &domain {
            if domain.iter().any(|&d| table[d][s]) {
                witnesses.push(DominatorWitness { player, dominated: s, dominator: pick(player, s, table, &domain) });
            }
        }
    }
    Ok(PropertyReport::from_witnesses(witnesses))
}

/// Every strategy of `T_i` dominated on `G` by a strategy of `T_i` has a
/// dominator in `T_i` that is itself undominated on `G`.
pub fn check_property_c_at(game: &FiniteGame, restriction: &Restriction) -> Result<PropertyReport> {
    check_dominators(game, restriction, false, |_, s, table, domain| {
        domain.iter().copied().find(|&d| table[d][s] && !domain.iter().any(|&e| table[e][d]))
    })
}

/// Every strategy of `T_i` dominated on `G` by a strategy of `T_i` is
/// dominated on `G` by a strategy of `S_i`.
pub fn check_property_d_at(game: &FiniteGame, restriction: &Restriction) -> Result<PropertyReport> {
    check_dominators(game, restriction, false, |player, s, table, _| {
        restriction.strategies(player).find(|&d| table[d][s])
    })
}

/// Like C with every quantifier restricted to `S_i`.
pub fn check_property_e_at(game: &FiniteGame, restriction: &Restriction) -> Result<PropertyReport> {
    check_dominators(game, restriction, true, |_, s, table, domain| {
        domain.iter().copied().find(|&d| table[d][s] && !domain.iter().any(|&e| table[e][d]))
    })
}

/// All restrictions of a game, for exhaustive checks on tiny games.
pub fn all_restrictions(game: &FiniteGame) -> impl Iterator<Item = Restriction> + '_ {
    let sizes = game.sizes();
    let subset_counts: Vec<usize> = sizes.iter().map(|&n| 1usize << n).collect();
    JointIter::new(&subset_counts).map(move |masks| {
        let sets: Vec<Vec<usize>> =
            masks.iter().zip(&sizes).map(|(&m, &n)| (0..n).filter(|&s| m >> s & 1 == 1).collect()).collect();
        Restriction::from_sets(&sizes, &sets).expect("masks fit the shape")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_game;

    const PD: &str = "game pd\nplayers 2\nstrategies 1 C D\nstrategies 2 C D\n\
        payoff C C : 2 2\npayoff C D : 0 3\npayoff D C : 3 0\npayoff D D : 1 1\n";

    #[test]
    fn property_b_on_finite_games() {
        let g = parse_game(PD).unwrap();
        for b in BeliefStructure::ALL {
            assert!(check_property_b(&g, b));
        }
    }

    #[test]
    fn property_c_in_prisoners_dilemma() {
        let g = parse_game(PD).unwrap();
        let report = check_property_c_at(&g, &g.full()).unwrap();
        assert!(report.holds);
        assert_eq!(
            report.witnesses,
            vec![
                DominatorWitness { player: 0, dominated: 0, dominator: Some(1) },
                DominatorWitness { player: 1, dominated: 0, dominator: Some(1) },
            ]
        );
    }

    #[test]
    fn property_d_can_fail_off_the_elimination_path() {
        let g = parse_game(PD).unwrap();
        // D has been removed for player 1 although it dominates C
        let off_path = g.parse_restriction("{C} | {C,D}").unwrap();
        let report = check_property_d_at(&g, &off_path).unwrap();
        assert!(!report.holds);
        assert_eq!(report.failures().count(), 1);
        assert!(check_property_c_at(&g, &off_path).unwrap().holds);
    }

    #[test]
    fn empty_opponent_sets() {
        let g = parse_game(PD).unwrap();
        // every pair dominates vacuously, so nothing is undominated
        let lonely = g.parse_restriction("{C,D} | {}").unwrap();
        assert!(!check_property_c_at(&g, &lonely).unwrap().holds);
        // player 1 is fine; player 2 lost the dominator D of C
        let report = check_property_d_at(&g, &lonely).unwrap();
        let failures: Vec<_> = report.failures().cloned().collect();
        assert_eq!(failures, vec![DominatorWitness { player: 1, dominated: 0, dominator: None }]);
        let report = check_property_d_at(&g, &g.parse_restriction("{} | {}").unwrap()).unwrap();
        assert!(!report.holds);
        assert_eq!(report.failures().count(), 4);
    }

    #[test]
    fn e_witnesses_stay_inside_the_restriction() {
        let g = parse_game(PD).unwrap();
        let all: Vec<_> = all_restrictions(&g).collect();
        assert_eq!(all.len(), 16);
        for r in all {
            let e = check_property_e_at(&g, &r).unwrap();
            assert!(e.witnesses.iter().all(|w| r.contains(w.player, w.dominated)));
            assert!(e.witnesses.iter().filter_map(|w| w.dominator.map(|d| (w.player, d))).all(|(i, d)| r.contains(i, d)));
        }
    }
}

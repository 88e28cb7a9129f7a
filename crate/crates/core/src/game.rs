//! Finite strategic games and their restrictions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{render_rational, Rational};

/// Largest number of strategies a single player may have. Restrictions
/// store one bit per strategy.
pub const MAX_STRATEGIES: usize = 64;

/// A finite game `(T_1, …, T_n, p_1, …, p_n)` with exact payoffs.
///
/// Joint strategies are numbered in mixed radix with player 1 most
/// significant, which is also the order payoff rows appear in rendered
/// files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGame {
    name: String,
    labels: Vec<Vec<String>>,
    strides: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl FiniteGame {
    /// Builds a game from labels and one payoff vector per joint strategy,
    /// in mixed-radix order.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let players = labels.len();
        if players < 2 {
            return Err(Error::InvalidGame(format!("need at least 2 players, got {players}")));
        }
        for (i, list) in labels.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidGame(format!("player {} has no strategies", i + 1)));
            }
            if list.len() > MAX_STRATEGIES {
                return Err(Error::InvalidGame(format!(
                    "player {} has {} strategies, at most {MAX_STRATEGIES} supported",
                    i + 1,
                    list.len()
                )));
            }
            for (k, label) in list.iter().enumerate() {
                if label.is_empty() || label.chars().any(|c| c.is_whitespace() || ",{}|:#".contains(c)) {
                    return Err(Error::InvalidGame(format!("invalid label `{label}`")));
                }
                if list[..k].contains(label) {
                    return Err(Error::InvalidGame(format!(
                        "duplicate label `{label}` for player {}",
                        i + 1
                    )));
                }
            }
        }
        let mut strides = vec![1; players];
        for i in (0..players - 1).rev() {
            strides[i] = strides[i + 1] * labels[i + 1].len();
        }
        let total = strides[0] * labels[0].len();
        if payoffs.len() != total {
            return Err(Error::InvalidGame(format!(
                "expected {total} payoff vectors, got {}",
                payoffs.len()
            )));
        }
        if let Some(bad) = payoffs.iter().position(|v| v.len() != players) {
            return Err(Error::InvalidGame(format!("payoff vector {bad} has the wrong length")));
        }
        Ok(FiniteGame { name: name.into(), labels, strides, payoffs })
    }

    /// Builds a game by evaluating `payoff` at every joint strategy.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<Vec<String>>,
        mut payoff: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Result<Self> {
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        let payoffs = JointIter::new(&sizes).map(|joint| payoff(&joint)).collect();
        FiniteGame::new(name, labels, payoffs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn player_count(&self) -> usize {
        self.labels.len()
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.labels[player].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, player: usize) -> &[String] {
        &self.labels[player]
    }

    pub fn label(&self, player: usize, strategy: usize) -> &str {
        &self.labels[player][strategy]
    }

    pub fn strategy_index(&self, player: usize, label: &str) -> Option<usize> {
        self.labels.get(player)?.iter().position(|l| l == label)
    }

    fn index_of(&self, joint: &[usize]) -> usize {
        joint.iter().zip(&self.strides).map(|(s, stride)| s * stride).sum()
    }

    /// `p_player(joint)`. Panics on an out-of-range joint strategy; use
    /// [`FiniteGame::joint`] to validate untrusted input first.
    pub fn payoff(&self, player: usize, joint: &[usize]) -> &Rational {
        &self.payoffs[self.index_of(joint)][player]
    }

    pub fn payoff_vector(&self, joint: &[usize]) -> &[Rational] {
        &self.payoffs[self.index_of(joint)]
    }

    /// Validates a joint strategy.
    pub fn joint(&self, strategies: Vec<usize>) -> Result<JointStrategy> {
        if strategies.len() != self.player_count() {
            return Err(Error::GameMismatch);
        }
        for (player, &strategy) in strategies.iter().enumerate() {
            self.check_strategy(player, strategy)?;
        }
        Ok(JointStrategy(strategies))
    }

    pub(crate) fn check_strategy(&self, player: usize, strategy: usize) -> Result<()> {
        if player >= self.player_count() || strategy >= self.strategy_count(player) {
            return Err(Error::UnknownStrategy { player, strategy });
        }
        Ok(())
    }

    /// The whole game `H` as a restriction.
    pub fn full(&self) -> Restriction {
        Restriction::full(&self.sizes())
    }

    pub fn empty(&self) -> Restriction {
        Restriction::empty(&self.sizes())
    }

    pub(crate) fn check(&self, restriction: &Restriction) -> Result<()> {
        if restriction.sizes() != self.sizes().as_slice() {
            return Err(Error::GameMismatch);
        }
        Ok(())
    }

    /// All joint strategies of `player`'s opponents in `restriction`,
    /// i.e. `S_{-i}`. Each entry is a full joint strategy whose slot for
    /// `player` is a placeholder 0 to be overwritten by the caller.
    pub fn opponent_profiles(&self, restriction: &Restriction, player: usize) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = (0..self.player_count())
            .map(|j| restriction.strategies(j).collect())
            .collect();
        sets[player] = vec![0];
        cartesian(&sets)
    }

    /// Renders a restriction as `{C,D} | {C}`.
    pub fn render_restriction(&self, restriction: &Restriction) -> String {
        (0..self.player_count())
            .map(|i| {
                let labels: Vec<&str> =
                    restriction.strategies(i).map(|s| self.label(i, s)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Builds a restriction from per-player label lists.
    pub fn restriction_from_labels<S: AsRef<str>>(&self, sets: &[Vec<S>]) -> Result<Restriction> {
        if sets.len() != self.player_count() {
            return Err(Error::GameMismatch);
        }
        let mut r = self.empty();
        for (player, labels) in sets.iter().enumerate() {
            for label in labels {
                let label = label.as_ref();
                let s = self.strategy_index(player, label).ok_or_else(|| Error::UnknownToken {
                    kind: "strategy label",
                    token: label.to_string(),
                })?;
                r.insert(player, s);
            }
        }
        Ok(r)
    }

    /// Parses the `{C,D} | {C}` rendering back into a restriction.
    pub fn parse_restriction(&self, text: &str) -> Result<Restriction> {
        let malformed = || Error::UnknownToken { kind: "restriction", token: text.to_string() };
        let parts: Vec<&str> = text.split('|').map(str::trim).collect();
        if parts.len() != self.player_count() {
            return Err(malformed());
        }
        let mut sets = Vec::with_capacity(parts.len());
        for part in parts {
            let inner = part
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(malformed)?
                .trim();
            let labels: Vec<&str> = if inner.is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(str::trim).collect()
            };
            sets.push(labels);
        }
        self.restriction_from_labels(&sets)
    }

    pub(crate) fn describe_joint(&self, joint: &[usize]) -> String {
        joint
            .iter()
            .enumerate()
            .map(|(i, &s)| self.label(i, s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn payoff_text(&self, joint: &[usize]) -> String {
        self.payoff_vector(joint).iter().map(render_rational).collect::<Vec<_>>().join(" ")
    }
}

/// One strategy index per player, validated against a game.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointStrategy(Vec<usize>);

impl JointStrategy {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// A restriction `(S_1, …, S_n)` of a finite game: one bitset per player.
///
/// Empty components are ordinary values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Restriction {
    sizes: Arc<[usize]>,
    sets: Vec<u64>,
}

fn mask_for(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl Restriction {
    pub fn full(sizes: &[usize]) -> Self {
        Restriction { sizes: sizes.into(), sets: sizes.iter().map(|&n| mask_for(n)).collect() }
    }

    pub fn empty(sizes: &[usize]) -> Self {
        Restriction { sizes: sizes.into(), sets: vec![0; sizes.len()] }
    }

    /// Builds a restriction from per-player strategy index lists.
    pub fn from_sets(sizes: &[usize], sets: &[Vec<usize>]) -> Result<Self> {
        if sets.len() != sizes.len() {
            return Err(Error::GameMismatch);
        }
        let mut r = Restriction::empty(sizes);
        for (player, set) in sets.iter().enumerate() {
            for &s in set {
                if s >= sizes[player] {
                    return Err(Error::UnknownStrategy { player, strategy: s });
                }
                r.insert(player, s);
            }
        }
        Ok(r)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn player_count(&self) -> usize {
        self.sets.len()
    }

    pub fn mask(&self, player: usize) -> u64 {
        self.sets[player]
    }

    pub fn contains(&self, player: usize, strategy: usize) -> bool {
        strategy < 64 && self.sets[player] >> strategy & 1 == 1
    }

    pub fn insert(&mut self, player: usize, strategy: usize) {
        debug_assert!(strategy < self.sizes[player]);
        self.sets[player] |= 1 << strategy;
    }

    pub fn remove(&mut self, player: usize, strategy: usize) {
        self.sets[player] &= !(1u64 << strategy);
    }

    pub fn strategies(&self, player: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.sets[player];
        (0..self.sizes[player]).filter(move |&s| mask >> s & 1 == 1)
    }

    pub fn len(&self, player: usize) -> usize {
        self.sets[player].count_ones() as usize
    }

    /// Total number of strategies over all players.
    pub fn total_len(&self) -> usize {
        self.sets.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// True when every component is empty (the bottom element).
    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(|&m| m == 0)
    }

    /// True when at least one component is empty, so the restriction is
    /// not itself a game.
    pub fn has_empty_component(&self) -> bool {
        self.sets.iter().any(|&m| m == 0)
    }

    fn same_game(&self, other: &Restriction) -> Result<()> {
        if self.sizes != other.sizes {
            return Err(Error::GameMismatch);
        }
        Ok(())
    }

    /// Componentwise intersection.
    pub fn meet(&self, other: &Restriction) -> Result<Restriction> {
        self.same_game(other)?;
        let sets = self.sets.iter().zip(&other.sets).map(|(a, b)| a & b).collect();
        Ok(Restriction { sizes: Arc::clone(&self.sizes), sets })
    }

    /// Componentwise union.
    pub fn join(&self, other: &Restriction) -> Result<Restriction> {
        self.same_game(other)?;
        let sets = self.sets.iter().zip(&other.sets).map(|(a, b)| a | b).collect();
        Ok(Restriction { sizes: Arc::clone(&self.sizes), sets })
    }

    /// Componentwise inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Restriction) -> Result<bool> {
        self.same_game(other)?;
        Ok(self.sets.iter().zip(&other.sets).all(|(a, b)| a & !b == 0))
    }

    /// Strategies in `self` that are not in `other`, as `(player, strategy)`.
    pub fn difference(&self, other: &Restriction) -> Result<Vec<(usize, usize)>> {
        self.same_game(other)?;
        let mut out = Vec::new();
        for player in 0..self.player_count() {
            let diff = self.sets[player] & !other.sets[player];
            out.extend((0..self.sizes[player]).filter(|&s| diff >> s & 1 == 1).map(|s| (player, s)));
        }
        Ok(out)
    }
}

/// Index-based rendering, for contexts without a game at hand.
impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for player in 0..self.player_count() {
            if player > 0 {
                f.write_str(" | ")?;
            }
            let items: Vec<String> = self.strategies(player).map(|s| s.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// `restriction_meet`: componentwise intersection of two restrictions.
pub fn restriction_meet(a: &Restriction, b: &Restriction) -> Result<Restriction> {
    a.meet(b)
}

/// `restriction_leq`: componentwise inclusion.
pub fn restriction_leq(a: &Restriction, b: &Restriction) -> Result<bool> {
    a.leq(b)
}

fn cartesian(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::with_capacity(sets.len())];
    for set in sets {
        let mut next = Vec::with_capacity(out.len() * set.len());
        for prefix in &out {
            for &s in set {
                let mut joint = prefix.clone();
                joint.push(s);
                next.push(joint);
            }
        }
        out = next;
    }
    out
}

/// Iterates over all joint strategies of a game of the given shape in
/// mixed-radix order.
pub struct JointIter {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl JointIter {
    pub fn new(sizes: &[usize]) -> Self {
        let next = (!sizes.contains(&0)).then(|| vec![0; sizes.len()]);
        JointIter { sizes: sizes.to_vec(), next }
    }
}

impl Iterator for JointIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pd() -> FiniteGame {
        let labels = vec![vec!["C".into(), "D".into()], vec!["C".into(), "D".into()]];
        let table = [[2, 2], [0, 3], [3, 0], [1, 1]];
        FiniteGame::new("pd", labels, table.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    fn r(game: &FiniteGame, text: &str) -> Restriction {
        game.parse_restriction(text).unwrap()
    }

    #[test]
    fn meet_is_componentwise_intersection() {
        let g = pd();
        let a = r(&g, "{C,D} | {C}");
        let b = r(&g, "{D} | {C,D}");
        assert_eq!(restriction_meet(&a, &b).unwrap(), r(&g, "{D} | {C}"));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.meet(&g.full()).unwrap(), a);
    }

    #[test]
    fn leq_is_componentwise_inclusion() {
        let g = pd();
        assert!(restriction_leq(&r(&g, "{D} | {C}"), &g.full()).unwrap());
        assert!(!restriction_leq(&r(&g, "{C} | {C}"), &r(&g, "{D} | {C,D}")).unwrap());
        for text in ["{} | {}", "{C} | {}", "{C,D} | {D}"] {
            assert!(g.empty().leq(&r(&g, text)).unwrap());
        }
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let a = Restriction::full(&[2, 2]);
        let b = Restriction::full(&[2, 3]);
        assert_eq!(a.meet(&b), Err(Error::GameMismatch));
        assert_eq!(a.leq(&b), Err(Error::GameMismatch));
    }

    #[test]
    fn renders_in_declaration_order() {
        let g = pd();
        assert_eq!(g.render_restriction(&g.full()), "{C,D} | {C,D}");
        assert_eq!(g.render_restriction(&g.empty()), "{} | {}");
        let mut x = g.empty();
        x.insert(0, 1);
        x.insert(0, 0);
        assert_eq!(g.render_restriction(&x), "{C,D} | {}");
    }

    #[test]
    fn opponent_profiles_enumerate_the_product() {
        let labels: Vec<Vec<String>> = [2, 3, 2]
            .iter()
            .map(|&n| (0..n).map(|k| format!("s{k}")).collect())
            .collect();
        let g = FiniteGame::from_fn("three", labels, |_| vec![int(0); 3]).unwrap();
        assert_eq!(g.opponent_profiles(&g.full(), 0).len(), 6);
        let mut partial = g.full();
        partial.remove(1, 2);
        assert_eq!(g.opponent_profiles(&partial, 2).len(), 4);
        assert!(g.opponent_profiles(&g.empty(), 0).is_empty());
    }

    #[test]
    fn payoff_lookup_follows_mixed_radix_order() {
        let g = pd();
        assert_eq!(g.payoff_vector(&[1, 1]), &[int(1), int(1)]);
        assert_eq!(g.payoff(0, &[1, 0]), &int(3));
        assert_eq!(g.payoff(1, &[1, 0]), &int(0));
        assert_eq!(JointIter::new(&[2, 2]).count(), 4);
    }
}

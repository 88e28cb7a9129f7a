//! Strategy sets of the infinite example games.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::engine::LatticePoint;
use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, render_rational, Rational};

/// A set of strategies in one of the shapes the examples need.
///
/// Values are kept canonical, so structural equality is set equality:
/// empty sets are always [`SymbolicSet::Empty`], intervals are non-empty,
/// and integer sets are finite exactly when they are `Finite`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicSet {
    Empty,
    Finite(BTreeSet<Rational>),
    /// `(ℕ ∪ {−1}) \ excluded`, with `excluded ⊆ ℕ ∪ {−1}` finite.
    CofinNatMinus(BTreeSet<i64>),
    /// The left-open, right-closed interval `(lo, hi]`, `lo < hi`.
    IntervalLoc { lo: Rational, hi: Rational },
}

fn as_int(value: &Rational) -> Option<i64> {
    value.is_integer().then(|| value.to_integer().to_i64()).flatten()
}

impl SymbolicSet {
    /// `ℕ ∪ {−1}`.
    pub fn nat_minus() -> Self {
        SymbolicSet::CofinNatMinus(BTreeSet::new())
    }

    /// `ℕ`.
    pub fn naturals() -> Self {
        SymbolicSet::CofinNatMinus(BTreeSet::from([-1]))
    }

    /// `ℕ \ {0, …, n−1}`.
    pub fn naturals_from(n: i64) -> Self {
        SymbolicSet::CofinNatMinus((-1..n).collect())
    }

    /// `(ℕ ∪ {−1}) \ {0, …, n−1}`.
    pub fn nat_minus_without_below(n: i64) -> Self {
        SymbolicSet::CofinNatMinus((0..n).collect())
    }

    pub fn finite<I: IntoIterator<Item = Rational>>(values: I) -> Self {
        let set: BTreeSet<Rational> = values.into_iter().collect();
        if set.is_empty() {
            SymbolicSet::Empty
        } else {
            SymbolicSet::Finite(set)
        }
    }

    pub fn ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        SymbolicSet::finite(values.into_iter().map(int))
    }

    pub fn interval(lo: Rational, hi: Rational) -> Self {
        if lo < hi {
            SymbolicSet::IntervalLoc { lo, hi }
        } else {
            SymbolicSet::Empty
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SymbolicSet::Empty)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SymbolicSet::Empty | SymbolicSet::Finite(_))
    }

    pub fn contains(&self, value: &Rational) -> bool {
        match self {
            SymbolicSet::Empty => false,
            SymbolicSet::Finite(set) => set.contains(value),
            SymbolicSet::CofinNatMinus(excluded) => {
                as_int(value).is_some_and(|v| v >= -1 && !excluded.contains(&v))
            }
            SymbolicSet::IntervalLoc { lo, hi } => lo < value && value <= hi,
        }
    }

    pub fn contains_int(&self, value: i64) -> bool {
        self.contains(&int(value))
    }

    pub fn intersection(&self, other: &SymbolicSet) -> SymbolicSet {
        use SymbolicSet::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (Finite(a), b) | (b, Finite(a)) => SymbolicSet::finite(a.iter().filter(|v| b.contains(v)).cloned()),
            (CofinNatMinus(a), CofinNatMinus(b)) => CofinNatMinus(a.union(b).copied().collect()),
            (IntervalLoc { lo: a, hi: b }, IntervalLoc { lo: c, hi: d }) => {
                SymbolicSet::interval(a.max(c).clone(), b.min(d).clone())
            }
            (CofinNatMinus(excluded), IntervalLoc { lo, hi }) | (IntervalLoc { lo, hi }, CofinNatMinus(excluded)) => {
                let first = (lo.floor().to_integer() + BigInt::from(1)).max(BigInt::from(-1));
                let last = hi.floor().to_integer();
                let (Some(first), Some(last)) = (first.to_i64(), last.to_i64()) else {
                    return Empty;
                };
                SymbolicSet::ints((first..=last).filter(|v| !excluded.contains(v)))
            }
        }
    }

    pub fn is_subset(&self, other: &SymbolicSet) -> bool {
        use SymbolicSet::*;
        match (self, other) {
            (Empty, _) => true,
            (Finite(a), b) => a.iter().all(|v| b.contains(v)),
            (CofinNatMinus(a), CofinNatMinus(b)) => b.is_subset(a),
            (IntervalLoc { lo: a, hi: b }, IntervalLoc { lo: c, hi: d }) => c <= a && b <= d,
            // infinite integer sets are unbounded, intervals uncountable
            _ => false,
        }
    }

    /// Integer view: `(finite?, elements or excluded)`.
    fn integer_view(&self) -> Result<(bool, BTreeSet<i64>)> {
        match self {
            SymbolicSet::Empty => Ok((true, BTreeSet::new())),
            SymbolicSet::Finite(set) => set
                .iter()
                .map(|v| as_int(v).filter(|&v| v >= -1))
                .collect::<Option<BTreeSet<i64>>>()
                .map(|s| (true, s))
                .ok_or_else(|| Error::UnsupportedShape(self.to_string())),
            SymbolicSet::CofinNatMinus(excluded) => Ok((false, excluded.clone())),
            SymbolicSet::IntervalLoc { .. } => Err(Error::UnsupportedShape(self.to_string())),
        }
    }

    fn from_integer_view(finite: bool, set: BTreeSet<i64>) -> Self {
        if finite {
            SymbolicSet::ints(set)
        } else {
            SymbolicSet::CofinNatMinus(set)
        }
    }

    /// Union of two subsets of `ℕ ∪ {−1}`.
    pub fn union(&self, other: &SymbolicSet) -> Result<SymbolicSet> {
        let (fa, a) = self.integer_view()?;
        let (fb, b) = other.integer_view()?;
        Ok(match (fa, fb) {
            (true, true) => SymbolicSet::from_integer_view(true, a.union(&b).copied().collect()),
            (false, false) => SymbolicSet::from_integer_view(false, a.intersection(&b).copied().collect()),
            (true, false) => SymbolicSet::from_integer_view(false, b.difference(&a).copied().collect()),
            (false, true) => SymbolicSet::from_integer_view(false, a.difference(&b).copied().collect()),
        })
    }

    /// `{x + 1 | x ∈ self ∩ ℕ}`.
    pub fn shift_naturals_up(&self) -> Result<SymbolicSet> {
        let (finite, set) = self.integer_view()?;
        Ok(if finite {
            SymbolicSet::ints(set.into_iter().filter(|&v| v >= 0).map(|v| v + 1))
        } else {
            let mut excluded: BTreeSet<i64> = set.into_iter().filter(|&v| v >= 0).map(|v| v + 1).collect();
            excluded.extend([-1, 0]);
            SymbolicSet::CofinNatMinus(excluded)
        })
    }

    /// `self ∩ ℕ`.
    pub fn naturals_part(&self) -> SymbolicSet {
        self.intersection(&SymbolicSet::naturals())
    }

    /// Elements `≥ n` of an integer set.
    pub fn at_least(&self, n: i64) -> SymbolicSet {
        self.intersection(&SymbolicSet::CofinNatMinus((-1..n).collect()))
    }

    /// Largest element of a finite set.
    pub fn greatest(&self) -> Option<&Rational> {
        match self {
            SymbolicSet::Finite(set) => set.iter().next_back(),
            _ => None,
        }
    }

    /// `self ∩ (lo, hi]` is non-empty, with `None` for an infinite bound.
    pub fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        let above = |v: &Rational| lo.is_none_or(|l| v > l);
        let below = |v: &Rational| hi.is_none_or(|h| v <= h);
        match self {
            SymbolicSet::Empty => false,
            SymbolicSet::Finite(set) => set.iter().any(|v| above(v) && below(v)),
            SymbolicSet::CofinNatMinus(_) => match hi {
                None => true,
                Some(h) => {
                    let window = SymbolicSet::interval(lo.cloned().unwrap_or_else(|| int(-2)), h.clone());
                    !self.intersection(&window).is_empty()
                }
            },
            SymbolicSet::IntervalLoc { lo: a, hi: b } => {
                let l = lo.map_or(a, |l| a.max(l));
                let h = hi.map_or(b, |h| b.min(h));
                l < h
            }
        }
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSet::Empty => f.write_str("{}"),
            SymbolicSet::Finite(set) => {
                let items: Vec<String> = set.iter().map(render_rational).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            SymbolicSet::CofinNatMinus(excluded) => {
                let (base, rest): (&str, Vec<i64>) = if excluded.contains(&-1) {
                    ("N", excluded.iter().copied().filter(|&v| v != -1).collect())
                } else {
                    ("N'", excluded.iter().copied().collect())
                };
                if rest.is_empty() {
                    f.write_str(base)
                } else {
                    let items: Vec<String> = rest.iter().map(i64::to_string).collect();
                    write!(f, "{base}\\{{{}}}", items.join(","))
                }
            }
            SymbolicSet::IntervalLoc { lo, hi } => write!(f, "({},{}]", render_rational(lo), render_rational(hi)),
        }
    }
}

impl std::str::FromStr for SymbolicSet {
    type Err = Error;

    /// Parses the rendering: `{}`, `{1,5/2}`, `N`, `N'`, `N\{0,1}`,
    /// `N'\{0}`, `(0,100]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedShape(s.to_string());
        let text = s.trim();
        let braces = |t: &str| -> Result<Vec<Rational>> {
            let inner = t.strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(bad)?;
            if inner.trim().is_empty() {
                return Ok(Vec::new());
            }
            inner.split(',').map(|v| parse_rational(v.trim()).ok_or_else(bad)).collect()
        };
        if let Some(rest) = text.strip_prefix("N'").or_else(|| text.strip_prefix('N')) {
            let mut excluded: BTreeSet<i64> = BTreeSet::new();
            if !text.starts_with("N'") {
                excluded.insert(-1);
            }
            if !rest.is_empty() {
                let list = rest.strip_prefix('\\').ok_or_else(bad)?;
                for v in braces(list)? {
                    excluded.insert(as_int(&v).filter(|&v| v >= -1).ok_or_else(bad)?);
                }
            }
            return Ok(SymbolicSet::CofinNatMinus(excluded));
        }
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(']')) {
            let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
            let lo = parse_rational(lo.trim()).ok_or_else(bad)?;
            let hi = parse_rational(hi.trim()).ok_or_else(bad)?;
            if lo >= hi {
                return Err(bad());
            }
            return Ok(SymbolicSet::IntervalLoc { lo, hi });
        }
        Ok(SymbolicSet::finite(braces(text)?))
    }
}

/// One symbolic set per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicRestriction(pub Vec<SymbolicSet>);

impl SymbolicRestriction {
    pub fn new(sets: Vec<SymbolicSet>) -> Self {
        SymbolicRestriction(sets)
    }

    pub fn empty(players: usize) -> Self {
        SymbolicRestriction(vec![SymbolicSet::Empty; players])
    }

    pub fn uniform(set: SymbolicSet, players: usize) -> Self {
        SymbolicRestriction(vec![set; players])
    }

    pub fn player_count(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, player: usize) -> &SymbolicSet {
        &self.0[player]
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(SymbolicSet::is_empty)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.0.len() == other.0.len() {
            Ok(())
        } else {
            Err(Error::GameMismatch)
        }
    }
}

impl LatticePoint for SymbolicRestriction {
    fn leq(&self, other: &Self) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b)))
    }

    fn meet(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(SymbolicRestriction(self.0.iter().zip(&other.0).map(|(a, b)| a.intersection(b)).collect()))
    }

    fn height(&self) -> Option<u64> {
        None
    }
}

impl fmt::Display for SymbolicRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(SymbolicSet::to_string).collect();
        f.write_str(&parts.join(" | "))
    }
}

impl std::str::FromStr for SymbolicRestriction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split('|').map(str::parse).collect::<Result<Vec<_>>>().map(SymbolicRestriction)
    }
}

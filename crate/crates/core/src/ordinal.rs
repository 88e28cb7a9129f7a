//! Stage indices of the form `ω·k + n`.
//!
//! Every elimination sequence handled by the engine closes well below
//! `ω·ω`, so this small fragment of the ordinals is all that is needed.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The ordinal `ω·omega + finite`.
///
/// Field order matters: the derived `Ord` compares the `ω` coefficient
/// first, which is exactly the ordinal order on this fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ordinal {
    omega: u64,
    finite: u64,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { omega: 0, finite: 0 };
    pub const OMEGA: Ordinal = Ordinal { omega: 1, finite: 0 };

    pub const fn new(omega: u64, finite: u64) -> Self {
        Ordinal { omega, finite }
    }

    pub const fn finite(n: u64) -> Self {
        Ordinal { omega: 0, finite: n }
    }

    /// `ω·k`.
    pub const fn omega_times(k: u64) -> Self {
        Ordinal { omega: k, finite: 0 }
    }

    pub fn omega_coefficient(self) -> u64 {
        self.omega
    }

    pub fn finite_part(self) -> u64 {
        self.finite
    }

    pub fn succ(self) -> Self {
        Ordinal { omega: self.omega, finite: self.finite + 1 }
    }

    pub fn plus(self, n: u64) -> Self {
        Ordinal { omega: self.omega, finite: self.finite + n }
    }

    pub fn is_finite(self) -> bool {
        self.omega == 0
    }

    pub fn is_limit(self) -> bool {
        self.omega > 0 && self.finite == 0
    }

    pub fn as_finite(self) -> Option<u64> {
        self.is_finite().then_some(self.finite)
    }

    /// The unique `δ` with `self + δ = later`, if `self ≤ later`.
    ///
    /// Ordinal addition absorbs a finite left summand into an infinite one,
    /// so `n + δ = ω·k + m` (k ≥ 1) gives `δ = ω·k + m`.
    pub fn distance_to(self, later: Ordinal) -> Option<Ordinal> {
        if later < self {
            return None;
        }
        if self.omega == later.omega {
            Some(Ordinal::finite(later.finite - self.finite))
        } else {
            Some(Ordinal::new(later.omega - self.omega, later.finite))
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega, self.finite) {
            (0, n) => write!(f, "{n}"),
            (1, 0) => write!(f, "w"),
            (1, n) => write!(f, "w+{n}"),
            (k, 0) => write!(f, "w*{k}"),
            (k, n) => write!(f, "w*{k}+{n}"),
        }
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    /// Accepts the rendering grammar: `12`, `w`, `w+3`, `w*2`, `w*2+1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedOrdinal(s.to_string());
        let text = s.trim();
        let number = |t: &str| -> Result<u64, Error> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u64>().map_err(|_| bad())
        };
        let Some(rest) = text.strip_prefix('w') else {
            return number(text).map(Ordinal::finite);
        };
        let (coefficient, rest) = match rest.strip_prefix('*') {
            Some(tail) => {
                let end = tail.find('+').unwrap_or(tail.len());
                let k = number(&tail[..end])?;
                if k == 0 {
                    return Err(bad());
                }
                (k, &tail[end..])
            }
            None => (1, rest),
        };
        let finite = match rest {
            "" => 0,
            tail => number(tail.strip_prefix('+').ok_or_else(bad)?)?,
        };
        Ok(Ordinal::new(coefficient, finite))
    }
}

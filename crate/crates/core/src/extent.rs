//! Three-valued answers for invariants that are only computed up to a cap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `Exact(n)`: the value is `n`. `AtLeast(n)`: the computation stopped at a
/// cap and the value is `>= n`. `Infinite`: the value is infinite, detected
/// by termination (for instance a resolution that ended).
///
/// Serialized as its display form: `"2"`, `">=3"`, `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extent {
    Exact(usize),
    AtLeast(usize),
    Infinite,
}

impl Extent {
    pub fn exact(self) -> Option<usize> {
        match self {
            Extent::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Extent::Exact(_))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extent::Exact(_))
    }

    /// Lower bound carried by the value.
    pub fn lower(self) -> usize {
        match self {
            Extent::Exact(n) | Extent::AtLeast(n) => n,
            Extent::Infinite => usize::MAX,
        }
    }

    /// Decide `self <= k`, or `None` when the cap hides the answer.
    pub fn le(self, k: usize) -> Option<bool> {
        match self {
            Extent::Exact(n) => Some(n <= k),
            Extent::AtLeast(n) if n > k => Some(false),
            Extent::AtLeast(_) => None,
            Extent::Infinite => Some(false),
        }
    }

    /// Decide `self >= k`.
    pub fn ge(self, k: usize) -> Option<bool> {
        match self {
            Extent::Exact(n) => Some(n >= k),
            Extent::AtLeast(n) if n >= k => Some(true),
            Extent::AtLeast(_) => None,
            Extent::Infinite => Some(true),
        }
    }

    /// Sound minimum of two capped values.
    pub fn min(self, other: Extent) -> Extent {
        use Extent::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a < b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }

    /// Sound maximum of two capped values.
    pub fn max(self, other: Extent) -> Extent {
        use Extent::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Exact(a), Exact(b)) => Exact(a.max(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => AtLeast(a.max(b)),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.max(b)),
        }
    }

    /// `Some(equal)` when both values are decided.
    pub fn decided_eq(self, other: Extent) -> Option<bool> {
        use Extent::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(a == b),
            (Infinite, Infinite) => Some(true),
            (Exact(_), Infinite) | (Infinite, Exact(_)) => Some(false),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) if a < b => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Exact(n) => write!(f, "{n}"),
            Extent::AtLeast(n) => write!(f, ">={n}"),
            Extent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Extent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("not an extent: `{s}`");
        match s {
            "inf" => Ok(Extent::Infinite),
            _ => match s.strip_prefix(">=") {
                Some(n) => n.parse().map(Extent::AtLeast).map_err(|_| bad()),
                None => s.parse().map(Extent::Exact).map_err(|_| bad()),
            },
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::Extent::*;
    use super::*;
    use proptest::prelude::*;

    fn arb() -> impl Strategy<Value = Extent> {
        prop_oneof![(0usize..8).prop_map(Exact), (0usize..8).prop_map(AtLeast), Just(Infinite)]
    }

    // Every value an extent may stand for, truncated at 20 (20 plays the role of infinity).
    fn values(e: Extent) -> Vec<usize> {
        match e {
            Exact(n) => vec![n],
            AtLeast(n) => (n..20).collect(),
            Infinite => vec![20],
        }
    }

    fn admits(e: Extent, v: usize) -> bool {
        match e {
            Exact(n) => v == n,
            AtLeast(n) => v >= n,
            Infinite => v == 20,
        }
    }

    proptest! {
        #[test]
        fn min_and_max_are_sound(a in arb(), b in arb()) {
            for x in values(a) {
                for y in values(b) {
                    prop_assert!(admits(a.min(b), x.min(y)));
                    prop_assert!(admits(a.max(b), x.max(y)));
                }
            }
        }

        #[test]
        fn display_round_trips(a in arb()) {
            prop_assert_eq!(a.to_string().parse::<Extent>(), Ok(a));
        }

        #[test]
        fn comparisons_are_sound(a in arb(), k in 0usize..10) {
            if let Some(ans) = a.le(k) {
                prop_assert!(values(a).iter().all(|&v| (v <= k) == ans));
            }
            if let Some(ans) = a.ge(k) {
                prop_assert!(values(a).iter().all(|&v| (v >= k) == ans));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(Exact(2).to_string(), "2");
        assert_eq!(AtLeast(3).to_string(), ">=3");
        assert_eq!(Infinite.to_string(), "inf");
        assert!("=2".parse::<Extent>().is_err());
        assert!(">=x".parse::<Extent>().is_err());
    }
}

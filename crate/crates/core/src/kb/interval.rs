use std::fmt;

/// Integer interval `[lo, hi]` with an optionally infinite upper end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: u64,
    /// `None` is +infinity.
    pub hi: Option<u64>,
}

impl Interval {
    pub const fn new(lo: u64, hi: Option<u64>) -> Self {
        Interval { lo, hi }
    }

    pub const fn exact(v: u64) -> Self {
        Interval { lo: v, hi: Some(v) }
    }

    pub const fn at_least(lo: u64) -> Self {
        Interval { lo, hi: None }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn exact_value(&self) -> Option<u64> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.lo && self.hi.is_none_or(|h| v <= h)
    }

    pub fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }

    /// Intersection; may be empty (check with [`is_empty`](Self::is_empty)).
    pub fn intersect(&self, other: &Interval) -> Interval {
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Interval { lo: self.lo.max(other.lo), hi }
    }

    /// Whether `self` is contained in `other`.
    pub fn within(&self, other: &Interval) -> bool {
        self.intersect(other) == *self
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection() {
        let a = Interval::new(21, Some(27));
        assert_eq!(a.intersect(&Interval::new(1, Some(22))), Interval::new(21, Some(22)));
        assert!(Interval::new(36, Some(41)).intersect(&Interval::at_least(43)).is_empty());
        assert_eq!(Interval::at_least(9).to_string(), "[9,inf)");
        assert!(Interval::exact(6).within(&Interval::new(5, Some(7))));
        assert!(!Interval::at_least(6).within(&Interval::new(5, Some(7))));
    }
}

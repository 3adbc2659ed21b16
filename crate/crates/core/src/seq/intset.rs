use std::fmt;
use std::sync::Arc;

use num_integer::Roots;

type Membership = Arc<dyn Fn(u64) -> bool + Send + Sync>;
type WindowBound = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// A set of positive integers used as the support of a sparse indicator.
///
/// The builtins both include 1 (`1 = 1^2 = 2^0`).
#[derive(Clone)]
pub enum IntegerSet {
    Squares,
    PowersOfTwo,
    Custom(CustomSet),
}

/// A code-defined integer set. Not serializable.
#[derive(Clone)]
pub struct CustomSet {
    name: String,
    members: Membership,
    density: Option<f64>,
    maxcount: Option<WindowBound>,
}

impl CustomSet {
    pub fn new(
        name: impl Into<String>,
        members: impl Fn(u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            members: Arc::new(members),
            density: None,
            maxcount: None,
        }
    }

    /// Declares the natural density of the set.
    pub fn with_density(mut self, density: f64) -> Self {
        self.density = Some(density);
        self
    }

    /// Declares a bound `maxcount(n) >= sup_l |S ∩ (l, l+n]|`.
    pub fn with_window_bound(mut self, bound: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        self.maxcount = Some(Arc::new(bound));
        self
    }
}

impl IntegerSet {
    pub fn name(&self) -> &str {
        match self {
            IntegerSet::Squares => "squares",
            IntegerSet::PowersOfTwo => "powers_of_two",
            IntegerSet::Custom(c) => &c.name,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "squares" => Some(IntegerSet::Squares),
            "powers_of_two" => Some(IntegerSet::PowersOfTwo),
            _ => None,
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, IntegerSet::Custom(_))
    }

    pub fn contains(&self, k: u64) -> bool {
        match self {
            IntegerSet::Squares => {
                let r = k.sqrt();
                r * r == k
            }
            IntegerSet::PowersOfTwo => k.is_power_of_two(),
            IntegerSet::Custom(c) => (c.members)(k),
        }
    }

    /// `|S ∩ [1, n]|`.
    pub fn count(&self, n: u64) -> u64 {
        match self {
            IntegerSet::Squares => n.sqrt(),
            IntegerSet::PowersOfTwo => {
                if n == 0 {
                    0
                } else {
                    u64::from(n.ilog2()) + 1
                }
            }
            IntegerSet::Custom(c) => (1..=n).filter(|&k| (c.members)(k)).count() as u64,
        }
    }

    pub fn declared_density(&self) -> Option<f64> {
        match self {
            IntegerSet::Squares | IntegerSet::PowersOfTwo => Some(0.0),
            IntegerSet::Custom(c) => c.density,
        }
    }

    /// An upper bound on the number of members in any window of `n` consecutive integers.
    pub fn maxcount(&self, n: u64) -> Option<u64> {
        match self {
            // gaps between consecutive squares grow, so the window at 0 is the densest
            IntegerSet::Squares => Some(n.sqrt() + 1),
            IntegerSet::PowersOfTwo => Some(self.count(n)),
            IntegerSet::Custom(c) => c.maxcount.as_ref().map(|f| f(n)),
        }
    }

    /// True when the set is known in closed form to have natural density zero.
    pub fn has_density_zero(&self) -> bool {
        self.declared_density() == Some(0.0)
    }

    /// True when `maxcount(n) / n -> 0` is known in closed form (builtins only).
    pub fn is_window_negligible(&self) -> bool {
        self.is_builtin()
    }
}

impl PartialEq for IntegerSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (IntegerSet::Squares, IntegerSet::Squares) => true,
            (IntegerSet::PowersOfTwo, IntegerSet::PowersOfTwo) => true,
            (IntegerSet::Custom(a), IntegerSet::Custom(b)) => Arc::ptr_eq(&a.members, &b.members),
            _ => false,
        }
    }
}

impl fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerSet::Custom(c) => f
                .debug_struct("Custom")
                .field("name", &c.name)
                .field("density", &c.density)
                .finish_non_exhaustive(),
            other => f.write_str(other.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_matches_membership() {
        for set in [IntegerSet::Squares, IntegerSet::PowersOfTwo] {
            let mut running = 0;
            for n in 1..=5000u64 {
                let member = set.contains(n);
                running += u64::from(member);
                assert_eq!(set.count(n), running, "{} at {n}", set.name());
                assert_eq!(set.count(n) - set.count(n - 1), u64::from(member));
                assert!(set.maxcount(n).unwrap() >= set.count(n));
            }
        }
    }

    #[test]
    fn window_bound_holds_for_builtins() {
        for set in [IntegerSet::Squares, IntegerSet::PowersOfTwo] {
            for n in [1u64, 2, 3, 7, 10, 50, 100] {
                let bound = set.maxcount(n).unwrap();
                for l in 0..2000u64 {
                    let c = set.count(l + n) - set.count(l);
                    assert!(
                        c <= bound,
                        "{} window ({l},{}] has {c} > {bound}",
                        set.name(),
                        l + n
                    );
                }
            }
        }
    }

    #[test]
    fn squares_count_at_hundred() {
        assert_eq!(IntegerSet::Squares.count(100), 10);
        assert!(IntegerSet::Squares.contains(9));
        assert!(!IntegerSet::Squares.contains(10));
        assert_eq!(IntegerSet::PowersOfTwo.count(1), 1);
    }

    #[test]
    fn custom_set_counts_by_scan() {
        let evens = IntegerSet::Custom(CustomSet::new("evens", |k| k % 2 == 0).with_density(0.5));
        assert_eq!(evens.count(10), 5);
        assert!(!evens.has_density_zero());
        assert!(!evens.is_window_negligible());
        assert_eq!(evens.maxcount(10), None);
    }
}

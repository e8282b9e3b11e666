//! Interned-ish names for propositional variables and actions.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

/// Suffix marking the boxed copy `x#b` of a variable `x`.
pub const BOXED_SUFFIX: &str = "#b";

macro_rules! name_type {
    ($(#[$meta:meta])* $ty:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $ty(Arc<str>);

        impl $ty {
            pub fn new(s: impl AsRef<str>) -> Self {
                $ty(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty::new(s)
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                $ty::new(s)
            }
        }

        impl Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.0)
            }
        }
    };
}

name_type!(
    /// A propositional variable, free or bound.
    Name
);

name_type!(
    /// An action label indexing a modality.
    Action
);

impl Name {
    /// True for names carrying the reserved boxed-copy suffix.
    pub fn is_reserved(&self) -> bool {
        self.0.contains('#')
    }
}

/// Returns `base` itself if unused, otherwise `base1`, `base2`, ...: the
/// first candidate not in `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<Name>) -> Name {
    if !taken.contains(base) {
        return Name::new(base);
    }
    fresh_suffixed(base, taken)
}

/// Like [`fresh_name`] but never returns `base` itself.
pub fn fresh_suffixed(base: &str, taken: &BTreeSet<Name>) -> Name {
    (1u64..)
        .map(|i| format!("{base}{i}"))
        .find(|cand| !taken.contains(cand.as_str()))
        .map(Name::new)
        .expect("unbounded candidate stream")
}

/// The boxed copy of `x`: `x#b`, then `x#b2`, `x#b3`, ... when taken.
pub fn boxed_name(x: &Name, taken: &BTreeSet<Name>) -> Name {
    let first = format!("{x}{BOXED_SUFFIX}");
    if !taken.contains(first.as_str()) {
        return Name::new(first);
    }
    (2u64..)
        .map(|i| format!("{x}{BOXED_SUFFIX}{i}"))
        .find(|cand| !taken.contains(cand.as_str()))
        .map(Name::new)
        .expect("unbounded candidate stream")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> BTreeSet<Name> {
        names.iter().map(Name::new).collect()
    }

    #[test]
    fn fresh_names_skip_taken() {
        assert_eq!(fresh_name("z", &set(&[])).as_str(), "z");
        assert_eq!(fresh_name("z", &set(&["z"])).as_str(), "z1");
        assert_eq!(fresh_name("z", &set(&["z", "z1"])).as_str(), "z2");
        assert_eq!(fresh_suffixed("z", &set(&[])).as_str(), "z1");
    }

    #[test]
    fn boxed_names() {
        let x = Name::new("x");
        assert_eq!(boxed_name(&x, &set(&[])).as_str(), "x#b");
        assert_eq!(boxed_name(&x, &set(&["x#b"])).as_str(), "x#b2");
        assert!(boxed_name(&x, &set(&[])).is_reserved());
    }
}

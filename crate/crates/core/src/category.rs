use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The role a citation plays in the citing paper.
///
/// Parsed from and printed as the lowercase letters `a`..`g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    /// General domain or problem reference.
    A,
    /// A design or method addressing the same problem.
    B,
    /// A feature reused in the citing paper's method.
    C,
    /// The cited design used as a building block.
    D,
    /// An analysis method also used by the citing paper.
    E,
    /// Experimental comparison.
    F,
    /// An established design fact relied on as an assumption.
    G,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::A,
        Category::B,
        Category::C,
        Category::D,
        Category::E,
        Category::F,
        Category::G,
    ];

    /// Categories contrasting the cited work with alternatives.
    pub const NOVELTY: [Category; 2] = [Category::B, Category::F];

    /// Categories building on the cited work.
    pub const USEFULNESS: [Category; 4] = [Category::C, Category::D, Category::E, Category::G];

    pub fn letter(self) -> char {
        match self {
            Category::A => 'a',
            Category::B => 'b',
            Category::C => 'c',
            Category::D => 'd',
            Category::E => 'e',
            Category::F => 'f',
            Category::G => 'g',
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid citation category {0:?} (expected one of a-g)")]
pub struct InvalidCategory(pub String);

impl FromStr for Category {
    type Err = InvalidCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(Category::A),
            "b" => Ok(Category::B),
            "c" => Ok(Category::C),
            "d" => Ok(Category::D),
            "e" => Ok(Category::E),
            "f" => Ok(Category::F),
            "g" => Ok(Category::G),
            other => Err(InvalidCategory(other.to_string())),
        }
    }
}

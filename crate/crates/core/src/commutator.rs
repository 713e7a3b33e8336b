//! Formal nested commutators over an ordered alphabet `x1 < x2 < ...`.
//!
//! A [`Commutator`] is an immutable binary tree whose leaves are
//! [`Generator`]s. Trees are reference counted, so cloning is cheap and
//! subtrees are shared freely between the elements of a basis.
//!
//! The total order (`Ord`) compares by weight first. Within one weight,
//! leaves compare by generator index and pairs `[b1,a1]`, `[b2,a2]` compare
//! lexicographically on `(b, a)`. This fixes the otherwise free choice of
//! order among commutators of equal weight, so every listing produced by
//! this crate is reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter `x_i` of the alphabet, `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::invalid("generator index must be >= 1"));
        }
        Ok(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf(Generator),
    Pair {
        left: Commutator,
        right: Commutator,
        weight: u32,
    },
}

/// A commutator `[left, right]` or a single generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Commutator(Arc<Node>);

impl Commutator {
    pub fn leaf(g: Generator) -> Self {
        Commutator(Arc::new(Node::Leaf(g)))
    }

    /// Leaf for `x_index`. Panics if `index == 0`.
    pub fn x(index: u32) -> Self {
        Self::leaf(Generator::new(index).expect("generator index must be >= 1"))
    }

    /// The commutator `[left, right]`.
    pub fn bracket(left: &Commutator, right: &Commutator) -> Self {
        let weight = left.weight() + right.weight();
        Commutator(Arc::new(Node::Pair {
            left: left.clone(),
            right: right.clone(),
            weight,
        }))
    }

    pub fn weight(&self) -> u32 {
        match &*self.0 {
            Node::Leaf(_) => 1,
            Node::Pair { weight, .. } => *weight,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(&*self.0, Node::Leaf(_))
    }

    pub fn generator(&self) -> Option<Generator> {
        match &*self.0 {
            Node::Leaf(g) => Some(*g),
            Node::Pair { .. } => None,
        }
    }

    /// `(left, right)` for a pair, `None` for a leaf.
    pub fn parts(&self) -> Option<(&Commutator, &Commutator)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Pair { left, right, .. } => Some((left, right)),
        }
    }

    /// Largest generator index occurring in the tree.
    pub fn max_generator(&self) -> u32 {
        match &*self.0 {
            Node::Leaf(g) => g.index(),
            Node::Pair { left, right, .. } => left.max_generator().max(right.max_generator()),
        }
    }

    /// Hall basicness: a leaf, or `[b,a]` with `b`, `a` basic, `a < b`, and
    /// if `b = [b1,b2]` then `b2 <= a`.
    pub fn is_basic(&self) -> bool {
        match &*self.0 {
            Node::Leaf(_) => true,
            Node::Pair {
                left: b, right: a, ..
            } => {
                if a >= b {
                    return false;
                }
                if let Some((_, b2)) = b.parts() {
                    if b2 > a {
                        return false;
                    }
                }
                b.is_basic() && a.is_basic()
            }
        }
    }
}

impl Ord for Commutator {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.weight()
            .cmp(&other.weight())
            .then_with(|| match (&*self.0, &*other.0) {
                (Node::Leaf(g), Node::Leaf(h)) => g.cmp(h),
                (
                    Node::Pair {
                        left: b1,
                        right: a1,
                        ..
                    },
                    Node::Pair {
                        left: b2,
                        right: a2,
                        ..
                    },
                ) => b1.cmp(b2).then_with(|| a1.cmp(a2)),
                // weight 1 against weight >= 2 was settled above
                _ => unreachable!("leaf and pair of equal weight"),
            })
    }
}

impl PartialOrd for Commutator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Leaf(g) => write!(f, "{g}"),
            Node::Pair { left, right, .. } => write!(f, "[{left},{right}]"),
        }
    }
}

impl fmt::Debug for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Generator> for Commutator {
    fn from(g: Generator) -> Self {
        Commutator::leaf(g)
    }
}

impl FromStr for Commutator {
    type Err = Error;

    /// Parses the canonical rendering, e.g. `[[x2,x1],x1]`. Whitespace is
    /// not accepted.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let c = parser.parse()?;
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(c)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::invalid(format!("bad commutator at byte {}: {what}", self.pos))
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn parse(&mut self) -> Result<Commutator> {
        match self.src.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let index: u32 = digits.parse().map_err(|_| self.error("expected index"))?;
                Ok(Commutator::leaf(Generator::new(index)?))
            }
            Some(b'[') => {
                self.pos += 1;
                let left = self.parse()?;
                self.expect(b',')?;
                let right = self.parse()?;
                self.expect(b']')?;
                Ok(Commutator::bracket(&left, &right))
            }
            _ => Err(self.error("expected 'x' or '['")),
        }
    }
}

/// Shorthand for building commutators in tests and examples:
/// `comm!(1)` is `x1`, `comm!([2, 1])` is `[x2,x1]`.
#[macro_export]
macro_rules! comm {
    ([$l:tt, $r:tt]) => {
        $crate::Commutator::bracket(&$crate::comm!($l), &$crate::comm!($r))
    };
    ($i:literal) => {
        $crate::Commutator::x($i)
    };
}

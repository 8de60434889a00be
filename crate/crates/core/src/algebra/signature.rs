use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Which role a commutative variable plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// Geometric coordinates `x_i`.
    X,
    /// Central parameters `s_j`.
    S,
    /// Graph coordinates `t_j`.
    T,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    blocks: Vec<Block>,
}

/// An ordered, immutable list of named variables split into blocks.
///
/// Cloning is cheap; two signatures are equal when their names and blocks
/// agree position by position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature(Arc<Inner>);

impl Signature {
    pub fn new(vars: impl IntoIterator<Item = (String, Block)>) -> Result<Self> {
        let (names, blocks): (Vec<_>, Vec<_>) = vars.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidInput("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Signature(Arc::new(Inner { names, blocks })))
    }

    /// Signature of `x`-variables only.
    pub fn x_vars<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), Block::X)))
    }

    /// `s` when `r == 1`, otherwise `s1..sr`.
    pub fn s_params(r: usize) -> Self {
        Self::new(s_names(r).into_iter().map(|n| (n, Block::S))).expect("distinct names")
    }

    /// `x`-variables followed by the `r` parameters.
    pub fn xs<S: AsRef<str>>(x_names: &[S], r: usize) -> Result<Self> {
        Self::new(
            x_names
                .iter()
                .map(|n| (n.as_ref().to_string(), Block::X))
                .chain(s_names(r).into_iter().map(|n| (n, Block::S))),
        )
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn block(&self, i: usize) -> Block {
        self.0.blocks[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Indices of the variables belonging to `block`, in order.
    pub fn block_indices(&self, block: Block) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.block(i) == block).collect()
    }

    pub fn block_names(&self, block: Block) -> Vec<String> {
        self.block_indices(block)
            .into_iter()
            .map(|i| self.name(i).to_string())
            .collect()
    }

    pub(crate) fn check_same(&self, other: &Signature) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.names.join(","))
    }
}

pub fn s_names(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["s".to_string()]
    } else {
        (1..=r).map(|j| format!("s{j}")).collect()
    }
}

pub fn t_names(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["t".to_string()]
    } else {
        (1..=r).map(|j| format!("t{j}")).collect()
    }
}

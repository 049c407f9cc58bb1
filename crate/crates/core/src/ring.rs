//! Polynomial ring descriptors: ordered variable names grouped into
//! contiguous named blocks, plus the coefficient field.

use std::fmt;

use crate::error::{Error, Result};

/// A contiguous run of variables inside a [`Ring`]. Tensor rings keep one
/// block per factor so the maximal ideal of each factor stays addressable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// Coefficient field of a computation: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// Conventional prime for fast modular runs.
pub const DEFAULT_PRIME: u32 = 32003;

impl Field {
    pub fn from_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            return Ok(Field::Rational);
        }
        if c > u32::MAX as u64 || !is_prime(c) {
            return Err(Error::InvalidCharacteristic(c));
        }
        Ok(Field::Prime(c as u32))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p as u64,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Ambient polynomial ring.
///
/// Two rings compare equal when they have the same variables in the same
/// order and the same block layout; the ring's own name and characteristic
/// are labels and do not take part in the comparison.
#[derive(Debug, Clone)]
pub struct Ring {
    name: String,
    variables: Vec<String>,
    blocks: Vec<Block>,
    field: Field,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.blocks == other.blocks
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.variables.hash(state);
        self.blocks.hash(state);
    }
}

impl Ring {
    /// A ring with a single block carrying the ring's name.
    pub fn new<S: Into<String>>(name: impl Into<String>, variables: impl IntoIterator<Item = S>) -> Result<Ring> {
        let name = name.into();
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::EmptyRing);
        }
        check_unique(&variables)?;
        let blocks = vec![Block {
            name: name.clone(),
            start: 0,
            len: variables.len(),
        }];
        Ok(Ring {
            name,
            variables,
            blocks,
            field: Field::Rational,
        })
    }

    /// `k[x_1, ..., x_n]` with generated variable names.
    pub fn indexed(name: impl Into<String>, prefix: &str, n: usize) -> Result<Ring> {
        Ring::new(name, (1..=n).map(|i| format!("{prefix}{i}")))
    }

    /// Concatenates the blocks of `a` and `b`.
    pub fn tensor(name: impl Into<String>, a: &Ring, b: &Ring) -> Result<Ring> {
        let mut variables = a.variables.clone();
        variables.extend(b.variables.iter().cloned());
        check_unique(&variables)?;
        let mut blocks = a.blocks.clone();
        for blk in &b.blocks {
            if blocks.iter().any(|x| x.name == blk.name) {
                return Err(Error::DuplicateBlock(blk.name.clone()));
            }
            blocks.push(Block {
                name: blk.name.clone(),
                start: blk.start + a.nvars(),
                len: blk.len,
            });
        }
        Ok(Ring {
            name: name.into(),
            variables,
            blocks,
            field: a.field,
        })
    }

    pub fn with_field(mut self, field: Field) -> Ring {
        self.field = field;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &str {
        &self.variables[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Variable indices of a block, or of the whole ring when `name` is the
    /// ring's own name.
    pub fn block_range(&self, name: &str) -> Result<std::ops::Range<usize>> {
        if let Some(b) = self.block(name) {
            return Ok(b.range());
        }
        if name == self.name {
            return Ok(0..self.nvars());
        }
        Err(Error::UnknownBlock(name.to_string()))
    }

    /// Finds the block of `self` that holds exactly the variables of `factor`.
    pub fn block_of(&self, factor: &Ring) -> Result<&Block> {
        self.blocks
            .iter()
            .find(|b| self.variables[b.range()] == factor.variables[..])
            .ok_or_else(|| Error::UnknownBlock(factor.name.clone()))
    }

    /// The subring on one block, as a standalone ring.
    pub fn block_ring(&self, name: &str) -> Result<Ring> {
        let b = self.block(name).ok_or_else(|| Error::UnknownBlock(name.to_string()))?;
        Ok(Ring::new(b.name.clone(), self.variables[b.range()].iter().cloned())?.with_field(self.field))
    }
}

fn check_unique(vars: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for v in vars {
        if !seen.insert(v.as_str()) {
            return Err(Error::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = [{}]", self.name, self.variables.join(","))
    }
}

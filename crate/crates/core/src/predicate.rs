//! Predicate families and their truth tables.
//!
//! Inputs `(x_1, …, x_k)` index a truth table as `Σ x_i · 2^(i-1)`, and a negation
//! mask `b` is stored the same way, so `Not_b` is a plain XOR on the index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest arity accepted; tables have `2^k` entries.
pub const MAX_ARITY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cut,
    Dicut,
    Kand,
    Monarchy,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cut => "cut",
            Family::Dicut => "dicut",
            Family::Kand => "kand",
            Family::Monarchy => "monarchy",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "cut" => Some(Family::Cut),
            "dicut" => Some(Family::Dicut),
            "kand" => Some(Family::Kand),
            "monarchy" => Some(Family::Monarchy),
            _ => None,
        }
    }

    pub fn negation_closed(self) -> bool {
        matches!(self, Family::Kand | Family::Monarchy)
    }

    /// Base predicate evaluated from its defining formula.
    fn formula(self, inputs: &[bool]) -> bool {
        match self {
            Family::Cut => inputs[0] != inputs[1],
            Family::Dicut => inputs[0] && !inputs[1],
            Family::Kand => inputs.iter().all(|&x| x),
            Family::Monarchy => {
                let subjects = &inputs[1..];
                subjects.iter().all(|&x| x) || (inputs[0] && subjects.iter().any(|&x| x))
            }
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A predicate family of fixed arity, backed by the base predicate's truth table.
///
/// For negation-closed families the effective predicate set is
/// `{base ∘ Not_b : b ∈ {0,1}^k}`; for cut and dicut only the zero mask is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateFamily {
    family: Family,
    arity: usize,
    table: Vec<bool>,
}

impl PredicateFamily {
    pub fn new(family: Family, arity: usize) -> Result<Self> {
        match family {
            Family::Cut | Family::Dicut if arity != 2 => {
                return Err(Error::Family(format!("{family} has arity 2, got {arity}")))
            }
            Family::Kand if !(2..=MAX_ARITY).contains(&arity) => {
                return Err(Error::Family(format!(
                    "kand arity must be in 2..={MAX_ARITY}, got {arity}"
                )))
            }
            Family::Monarchy if !(3..=MAX_ARITY).contains(&arity) => {
                return Err(Error::Family(format!(
                    "monarchy arity must be in 3..={MAX_ARITY}, got {arity}"
                )))
            }
            _ => {}
        }
        let table = (0..1usize << arity)
            .map(|idx| family.formula(&index_to_bits(idx, arity)))
            .collect();
        Ok(PredicateFamily {
            family,
            arity,
            table,
        })
    }

    pub fn cut() -> Self {
        Self::new(Family::Cut, 2).expect("cut is arity 2")
    }

    pub fn dicut() -> Self {
        Self::new(Family::Dicut, 2).expect("dicut is arity 2")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn negation_closed(&self) -> bool {
        self.family.negation_closed()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Number of masks in the effective predicate set.
    pub fn mask_count(&self) -> u32 {
        if self.negation_closed() {
            1 << self.arity
        } else {
            1
        }
    }

    pub fn allows_mask(&self, mask: u32) -> bool {
        mask < self.mask_count()
    }

    /// Table lookup on a packed input index with the mask applied.
    #[inline]
    pub fn accepts_index(&self, inputs: usize, mask: u32) -> bool {
        self.table[inputs ^ mask as usize]
    }

    /// Evaluates `base ∘ Not_mask` on `inputs`.
    pub fn eval(&self, mask: u32, inputs: &[bool]) -> Result<bool> {
        if inputs.len() != self.arity {
            return Err(Error::InputShape(format!(
                "{} expects {} inputs, got {}",
                self.family,
                self.arity,
                inputs.len()
            )));
        }
        if !self.allows_mask(mask) {
            return Err(Error::InputShape(format!(
                "mask {mask:#b} not allowed for {}",
                self.family
            )));
        }
        Ok(self.accepts_index(bits_to_index(inputs), mask))
    }
}

/// Free-function form of [`PredicateFamily::eval`].
pub fn eval_predicate(family: &PredicateFamily, mask: u32, inputs: &[bool]) -> Result<bool> {
    family.eval(mask, inputs)
}

pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
}

pub fn index_to_bits(idx: usize, k: usize) -> Vec<bool> {
    (0..k).map(|i| (idx >> i) & 1 == 1).collect()
}

/// Parses a mask written as `b_1 b_2 … b_k` characters, e.g. `"011"`.
pub fn parse_mask(s: &str, arity: usize) -> Option<u32> {
    if s.len() != arity {
        return None;
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, ch)| match ch {
        '0' => Some(acc),
        '1' => Some(acc | (1 << i)),
        _ => None,
    })
}

pub fn format_mask(mask: u32, arity: usize) -> String {
    (0..arity)
        .map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

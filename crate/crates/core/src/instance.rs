use crate::error::{Error, Result};
use crate::predicate::PredicateFamily;

/// One constraint: a tuple of distinct 1-based variable indices and a negation mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    vars: Vec<u32>,
    mask: u32,
}

impl Constraint {
    pub fn new(vars: Vec<u32>, mask: u32) -> Self {
        Constraint { vars, mask }
    }

    /// Binary constraint with the zero mask: an edge `{u, v}` for cut, `(u, v)` for dicut.
    pub fn edge(u: u32, v: u32) -> Self {
        Constraint {
            vars: vec![u, v],
            mask: 0,
        }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Endpoints of a binary constraint.
    pub fn endpoints(&self) -> (u32, u32) {
        (self.vars[0], self.vars[1])
    }

    pub fn validate(&self, n: usize, family: &PredicateFamily) -> Result<()> {
        if self.vars.len() != family.arity() {
            return Err(Error::InvalidInstance(format!(
                "constraint {:?} has {} variables, family arity is {}",
                self.vars,
                self.vars.len(),
                family.arity()
            )));
        }
        if !family.allows_mask(self.mask) {
            return Err(Error::InvalidInstance(format!(
                "mask {:#b} not allowed for {}",
                self.mask,
                family.family()
            )));
        }
        for (i, &j) in self.vars.iter().enumerate() {
            if j == 0 || j as usize > n {
                return Err(Error::InvalidInstance(format!(
                    "variable {j} out of range 1..={n}"
                )));
            }
            if self.vars[..i].contains(&j) {
                return Err(Error::InvalidInstance(format!(
                    "variable {j} repeated in constraint {:?}",
                    self.vars
                )));
            }
        }
        Ok(())
    }

    /// Packed local input index `Σ x_{j_i} · 2^(i-1)` under `x`.
    #[inline]
    pub fn local_index(&self, x: &Assignment) -> usize {
        self.vars
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &j)| acc | (usize::from(x.get(j)) << i))
    }
}

/// An instance: `n` variables and an ordered constraint list, which is also its
/// adversarial stream order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    family: PredicateFamily,
    constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(n: usize, family: PredicateFamily, constraints: Vec<Constraint>) -> Result<Self> {
        if n < family.arity() {
            return Err(Error::InvalidInstance(format!(
                "n = {n} is smaller than arity {}",
                family.arity()
            )));
        }
        for c in &constraints {
            c.validate(n, &family)?;
        }
        Ok(Instance {
            n,
            family,
            constraints,
        })
    }

    /// Max-Cut instance from undirected edges.
    pub fn cut(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::from_edges(n, PredicateFamily::cut(), edges)
    }

    /// Max-DiCut instance from directed edges `(tail, head)`.
    pub fn dicut(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::from_edges(n, PredicateFamily::dicut(), edges)
    }

    fn from_edges(n: usize, family: PredicateFamily, edges: &[(u32, u32)]) -> Result<Self> {
        let cs = edges.iter().map(|&(u, v)| Constraint::edge(u, v)).collect();
        Self::new(n, family, cs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn family(&self) -> &PredicateFamily {
        &self.family
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Same variables and family, different constraint list (validated).
    pub fn with_constraints(&self, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new(self.n, self.family.clone(), constraints)
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.constraints.is_empty() {
            Err(Error::UndefinedValue("instance has no constraints".into()))
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_binary(&self, family: crate::Family) -> Result<()> {
        if self.family.family() != family {
            Err(Error::Family(format!(
                "expected a {family} instance, got {}",
                self.family.family()
            )))
        } else {
            Ok(())
        }
    }
}

/// A Boolean assignment `x ∈ {0,1}^n`, addressed with 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// `x_1` is the most significant bit of `code`, so numeric order on codes is
    /// lexicographic order on assignments.
    pub fn from_code(code: u64, n: usize) -> Self {
        Assignment((1..=n).map(|j| (code >> (n - j)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, bit: bool) {
        self.0[var as usize - 1] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Family;

    #[test]
    fn rejects_duplicate_and_out_of_range() {
        assert!(Instance::cut(3, &[(1, 1)]).is_err());
        assert!(Instance::cut(3, &[(1, 4)]).is_err());
        assert!(Instance::cut(3, &[(0, 2)]).is_err());
        assert!(Instance::cut(3, &[(1, 3)]).is_ok());
    }

    #[test]
    fn rejects_wrong_arity_and_mask() {
        let kand = PredicateFamily::new(Family::Kand, 3).unwrap();
        assert!(Instance::new(4, kand.clone(), vec![Constraint::new(vec![1, 2], 0)]).is_err());
        assert!(Instance::new(4, kand, vec![Constraint::new(vec![1, 2, 3], 0b101)]).is_ok());
        assert!(Instance::new(3, PredicateFamily::cut(), vec![Constraint::new(vec![1, 2], 1)])
            .is_err());
    }

    #[test]
    fn code_order_is_lexicographic() {
        assert_eq!(Assignment::from_code(0b01, 2).to_string(), "01");
        assert_eq!(Assignment::from_code(0b100, 3).to_string(), "100");
        assert!(Assignment::from_code(3, 3) < Assignment::from_code(4, 3));
    }
}

//! Search budgets.
//!
//! Every potentially explosive enumeration (hom sets, subobjects, limit
//! tuples, sieve lattices) charges visited nodes against a [`Budget`].
//! Exceeding the budget aborts the search with [`SizeGuardExceeded`] rather
//! than returning a partial answer.

use core::fmt;

/// Node budget for backtracking searches and product enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const DEFAULT_MAX_NODES: u64 = 1_000_000;

    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    /// Fresh counter charging against this budget.
    pub fn counter(&self) -> NodeCounter {
        NodeCounter {
            max_nodes: self.max_nodes,
            used: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Self::DEFAULT_MAX_NODES,
        }
    }
}

/// Running node count for one search.
#[derive(Debug, Clone)]
pub struct NodeCounter {
    max_nodes: u64,
    used: u64,
}

impl NodeCounter {
    /// Charges `n` nodes, failing once the total passes the budget.
    pub fn charge(&mut self, n: u64) -> Result<(), SizeGuardExceeded> {
        self.used = self.used.saturating_add(n);
        if self.used > self.max_nodes {
            Err(SizeGuardExceeded {
                budget: self.max_nodes,
            })
        } else {
            Ok(())
        }
    }

    pub fn tick(&mut self) -> Result<(), SizeGuardExceeded> {
        self.charge(1)
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// A search was aborted because it visited more nodes than the budget allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuardExceeded {
    pub budget: u64,
}

impl fmt::Display for SizeGuardExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search exceeded the node budget of {}", self.budget)
    }
}

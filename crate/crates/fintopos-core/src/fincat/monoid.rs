//! Finite monoids and their one-object categories.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{CategoryBuilder, FinCategory};

/// Object name used when a monoid is viewed as a one-object category.
pub const MONOID_OBJECT: &str = "pt";

/// Raw monoid presentation: element names, the unit, and products
/// `left * right = result`.  Products with the unit may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawMonoid {
    pub elements: Vec<String>,
    pub unit: String,
    pub products: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidError {
    Empty,
    DuplicateName { name: String },
    UnknownElement { name: String },
    MissingProduct { left: String, right: String },
    ConflictingProduct { left: String, right: String, first: String, second: String },
    BadUnit { left: String, right: String, result: String },
    NotAssociative { a: String, b: String, c: String },
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::Empty => write!(f, "a monoid needs at least its unit element"),
            MonoidError::DuplicateName { name } => write!(f, "duplicate element `{name}`"),
            MonoidError::UnknownElement { name } => write!(f, "unknown element `{name}`"),
            MonoidError::MissingProduct { left, right } => {
                write!(f, "no product declared for `{left} * {right}`")
            }
            MonoidError::ConflictingProduct { left, right, first, second } => write!(
                f,
                "product `{left} * {right}` declared as both `{first}` and `{second}`"
            ),
            MonoidError::BadUnit { left, right, result } => {
                write!(f, "unit law fails: `{left} * {right} = {result}`")
            }
            MonoidError::NotAssociative { a, b, c } => {
                write!(f, "multiplication is not associative on `{a}`, `{b}`, `{c}`")
            }
        }
    }
}

/// A validated finite monoid with a row-major multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    elements: Vec<String>,
    unit: usize,
    mult: Vec<usize>,
}

/// Checks totality, the unit laws, and associativity.
pub fn validate_monoid(raw: &RawMonoid) -> Result<FinMonoid, MonoidError> {
    let n = raw.elements.len();
    if n == 0 {
        return Err(MonoidError::Empty);
    }
    for (i, name) in raw.elements.iter().enumerate() {
        if raw.elements[..i].contains(name) {
            return Err(MonoidError::DuplicateName { name: name.clone() });
        }
    }
    let id = |name: &str| -> Result<usize, MonoidError> {
        raw.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| MonoidError::UnknownElement { name: name.into() })
    };
    let unit = id(&raw.unit)?;

    let mut mult: Vec<Option<usize>> = alloc::vec![None; n * n];
    for m in 0..n {
        mult[unit * n + m] = Some(m);
        mult[m * n + unit] = Some(m);
    }
    for (l, r, out) in &raw.products {
        let (a, b, c) = (id(l)?, id(r)?, id(out)?);
        match mult[a * n + b] {
            Some(prev) if prev != c => {
                return if a == unit || b == unit {
                    Err(MonoidError::BadUnit {
                        left: l.clone(),
                        right: r.clone(),
                        result: out.clone(),
                    })
                } else {
                    Err(MonoidError::ConflictingProduct {
                        left: l.clone(),
                        right: r.clone(),
                        first: raw.elements[prev].clone(),
                        second: out.clone(),
                    })
                }
            }
            _ => mult[a * n + b] = Some(c),
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            match mult[a * n + b] {
                Some(c) => table.push(c),
                None => {
                    return Err(MonoidError::MissingProduct {
                        left: raw.elements[a].clone(),
                        right: raw.elements[b].clone(),
                    })
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]] {
                    return Err(MonoidError::NotAssociative {
                        a: raw.elements[a].clone(),
                        b: raw.elements[b].clone(),
                        c: raw.elements[c].clone(),
                    });
                }
            }
        }
    }
    Ok(FinMonoid {
        elements: raw.elements.clone(),
        unit,
        mult: table,
    })
}

impl FinMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// `a * b`.
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.elements.len() + b]
    }

    /// Elements `z` with `m * z = z` for every `m`.
    pub fn right_zero_elements(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&z| (0..self.elements.len()).all(|m| self.mult(m, z) == z))
            .collect()
    }

    /// Elements `z` with `z * m = z` for every `m`.
    pub fn left_zero_elements(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&z| (0..self.elements.len()).all(|m| self.mult(z, m) == z))
            .collect()
    }

    /// The one-object category on [`MONOID_OBJECT`] whose morphisms are the
    /// elements, composing by multiplication (`g ∘ f = g * f`).
    pub fn to_category(&self) -> FinCategory {
        let mut b = CategoryBuilder::new();
        b.object(MONOID_OBJECT);
        for e in &self.elements {
            b.morphism(e.clone(), MONOID_OBJECT, MONOID_OBJECT);
        }
        b.identity(MONOID_OBJECT, self.elements[self.unit].clone());
        for g in 0..self.elements.len() {
            for f in 0..self.elements.len() {
                b.composite(
                    self.elements[g].clone(),
                    self.elements[f].clone(),
                    self.elements[self.mult(g, f)].clone(),
                );
            }
        }
        b.finish().expect("a valid monoid is a valid one-object category")
    }
}

//! The input language: declarations for categories, monoids, posets, free
//! categories, presheaves, sites, spaces, and families.
//!
//! The grammar is line oriented.  Statements end at a newline, a `;`, or
//! the closing brace of their block; `#` starts a comment running to the
//! end of the line.  Identifiers are runs of letters, digits, underscores,
//! and primes.

mod lex;
mod parse;
mod print;

pub use parse::parse_dsl;
pub use print::print_decls;

use std::fmt;

/// A parse error with its position and the tokens that would have been
/// accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected ", self.line, self.col)?;
        for (i, e) in self.expected.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Category(CategoryDecl),
    FreeCat(FreeCatDecl),
    Monoid(MonoidDecl),
    Poset(PosetDecl),
    Space(SpaceDecl),
    Site(SiteDecl),
    Presheaf(PresheafDecl),
    Family(FamilyDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Category(d) => &d.name,
            Decl::FreeCat(d) => &d.name,
            Decl::Monoid(d) => &d.name,
            Decl::Poset(d) => &d.name,
            Decl::Space(d) => &d.name,
            Decl::Site(d) => &d.name,
            Decl::Presheaf(d) => &d.name,
            Decl::Family(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Category(_) => "category",
            Decl::FreeCat(_) => "freecat",
            Decl::Monoid(_) => "monoid",
            Decl::Poset(_) => "poset",
            Decl::Space(_) => "space",
            Decl::Site(_) => "site",
            Decl::Presheaf(_) => "presheaf",
            Decl::Family(_) => "family",
        }
    }
}

/// `category N { objects a b; arrow f : a -> b; compose g . f = h }`.
/// Identities and their composites are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: String,
    pub objects: Vec<String>,
    /// `(name, dom, cod)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(after, before, result)` meaning `after . before = result`.
    pub composites: Vec<(String, String, String)>,
}

/// `freecat N on { edges a -> b ...; vertices c }`.  Vertices may be listed
/// explicitly to add isolated ones; edge endpoints are always vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCatDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// `monoid N { elements u z; unit u; table { z * z = z ... } }`.
/// Table entries read `left * right = result`; entries involving the unit
/// may be omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidDecl {
    pub name: String,
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<(String, String, String)>,
}

/// `poset N { points a b; rel a <= b }`.  Composition is forced; the
/// declared relation is closed reflexively and transitively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDecl {
    pub name: String,
    pub points: Vec<String>,
    pub rels: Vec<(String, String)>,
}

/// `space N { points x y; opens {} {x} {x, y} }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// `site N over C { cover b : { f } }`.  The maximal sieve on every object
/// is a cover implicitly; each `cover` line adds one sieve, given by its
/// member morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteDecl {
    pub name: String,
    pub over: String,
    pub covers: Vec<(String, Vec<String>)>,
}

/// `presheaf N over C { at a : { x, y }; act f : y -> x }`.
/// For `f : a -> b`, an `act f : y -> x` line sends the element `y` over
/// `b` to `x` over `a`.  Objects without an `at` line carry no elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafDecl {
    pub name: String,
    pub over: String,
    pub carriers: Vec<(String, Vec<String>)>,
    /// `(morphism, from, to)`.
    pub acts: Vec<(String, String, String)>,
}

/// `family F over C { index i j; member i = P }`: one presheaf over `C`
/// per index element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    pub over: String,
    pub index: Vec<String>,
    /// `(index element, presheaf name)`.
    pub members: Vec<(String, String)>,
}

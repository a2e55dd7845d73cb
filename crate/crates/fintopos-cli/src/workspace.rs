//! Resolution: from parsed declarations to validated objects.
//!
//! Declarations resolve in order, and may only reference names declared
//! earlier.  Monoids and posets register both as themselves and as
//! categories under the same name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use fintopos_core::budget::Budget;
use fintopos_core::check::Check;
use fintopos_core::fincat::{
    free_path_category, preorder_category, validate_monoid, CategoryBuilder, FinCategory,
    FinMonoid, RawGraph, RawMonoid,
};
use fintopos_core::presheaf::{validate_presheaf, Presheaf, RawAction, RawPresheaf};
use fintopos_core::sieve::{maximal, Sieve};
use fintopos_core::sitespace::{validate_space, validate_topology, FinSpace, FiniteSite, RawSpace};

use crate::dsl::{Decl, FamilyDecl};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    DuplicateName { name: String },
    UnresolvedReference { name: String, wanted: &'static str, reference: String },
    Validation { kind: &'static str, name: String, message: String },
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::DuplicateName { name } => write!(f, "duplicate name `{name}`"),
            ResolveError::UnresolvedReference { name, wanted, reference } => {
                write!(f, "`{name}` needs {wanted} `{reference}`, which is not available")
            }
            ResolveError::Validation { kind, name, message } => {
                write!(f, "{kind} `{name}` is invalid: {message}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedPresheaf {
    pub over: String,
    pub presheaf: Presheaf,
}

#[derive(Debug, Clone)]
pub struct ResolvedSite {
    pub over: String,
    pub site: FiniteSite,
}

/// All validated declarations, by kind.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub decls: Vec<Decl>,
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub monoids: BTreeMap<String, FinMonoid>,
    pub presheaves: BTreeMap<String, ResolvedPresheaf>,
    pub sites: BTreeMap<String, ResolvedSite>,
    pub spaces: BTreeMap<String, FinSpace>,
    pub families: BTreeMap<String, FamilyDecl>,
}

/// Resolves every declaration, returning the workspace of successes plus a
/// per-declaration check row.
pub fn resolve_all(decls: Vec<Decl>, budget: &Budget) -> (Workspace, Vec<Check>) {
    let mut ws = Workspace {
        decls: Vec::new(),
        ..Workspace::default()
    };
    let mut checks = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    for decl in &decls {
        let label = format!("{} {}", decl.kind(), decl.name());
        let result = if seen.contains(&decl.name().to_string()) {
            Err(ResolveError::DuplicateName {
                name: decl.name().into(),
            })
        } else {
            resolve_one(&mut ws, decl, budget)
        };
        seen.push(decl.name().to_string());
        match result {
            Ok(()) => checks.push(Check::pass(label)),
            Err(e) => checks.push(Check::fail(label, e.to_string())),
        }
    }
    ws.decls = decls;
    (ws, checks)
}

/// Resolves every declaration, failing on the first error.
pub fn resolve(decls: Vec<Decl>, budget: &Budget) -> Result<Workspace, ResolveError> {
    let mut ws = Workspace {
        decls: Vec::new(),
        ..Workspace::default()
    };
    let mut seen: Vec<String> = Vec::new();
    for decl in &decls {
        if seen.contains(&decl.name().to_string()) {
            return Err(ResolveError::DuplicateName {
                name: decl.name().into(),
            });
        }
        resolve_one(&mut ws, decl, budget)?;
        seen.push(decl.name().to_string());
    }
    ws.decls = decls;
    Ok(ws)
}

fn invalid(kind: &'static str, name: &str, e: impl fmt::Display) -> ResolveError {
    ResolveError::Validation {
        kind,
        name: name.into(),
        message: e.to_string(),
    }
}

fn lookup<'w, T>(
    map: &'w BTreeMap<String, T>,
    key: &str,
    wanted: &'static str,
    referrer: &str,
) -> Result<&'w T, ResolveError> {
    map.get(key).ok_or_else(|| ResolveError::UnresolvedReference {
        name: referrer.into(),
        wanted,
        reference: key.into(),
    })
}

fn resolve_one(ws: &mut Workspace, decl: &Decl, budget: &Budget) -> Result<(), ResolveError> {
    match decl {
        Decl::Category(d) => {
            let mut b = CategoryBuilder::new();
            b.objects(d.objects.iter().cloned());
            for (f, a, c) in &d.arrows {
                b.morphism(f.clone(), a.clone(), c.clone());
            }
            for (g, f, h) in &d.composites {
                b.composite(g.clone(), f.clone(), h.clone());
            }
            let cat = b.finish().map_err(|e| invalid("category", &d.name, e))?;
            ws.categories.insert(d.name.clone(), Arc::new(cat));
        }
        Decl::FreeCat(d) => {
            let mut vertices = d.vertices.clone();
            for (a, b) in &d.edges {
                for v in [a, b] {
                    if !vertices.contains(v) {
                        vertices.push(v.clone());
                    }
                }
            }
            let raw = RawGraph {
                vertices,
                edges: d.edges.clone(),
            };
            let cat = free_path_category(&raw).map_err(|e| invalid("freecat", &d.name, e))?;
            ws.categories.insert(d.name.clone(), Arc::new(cat));
        }
        Decl::Monoid(d) => {
            let raw = RawMonoid {
                elements: d.elements.clone(),
                unit: d.unit.clone(),
                products: d.table.clone(),
            };
            let m = validate_monoid(&raw).map_err(|e| invalid("monoid", &d.name, e))?;
            ws.categories.insert(d.name.clone(), Arc::new(m.to_category()));
            ws.monoids.insert(d.name.clone(), m);
        }
        Decl::Poset(d) => {
            let cat = preorder_category(&d.points, &d.rels)
                .map_err(|e| invalid("poset", &d.name, e))?;
            ws.categories.insert(d.name.clone(), Arc::new(cat));
        }
        Decl::Space(d) => {
            let raw = RawSpace {
                points: d.points.clone(),
                opens: d.opens.clone(),
            };
            let space = validate_space(&raw).map_err(|e| invalid("space", &d.name, e))?;
            ws.spaces.insert(d.name.clone(), space);
        }
        Decl::Site(d) => {
            let base = lookup(&ws.categories, &d.over, "category", &d.name)?.clone();
            let mut covers: Vec<Vec<Sieve>> = base
                .objects()
                .map(|c| vec![maximal(&base, c)])
                .collect();
            for (obj, members) in &d.covers {
                let on = base.object_id(obj).ok_or_else(|| {
                    invalid("site", &d.name, format!("unknown object `{obj}`"))
                })?;
                let mut sieve = Vec::new();
                for m in members {
                    let f = base.morphism_id(m).ok_or_else(|| {
                        invalid("site", &d.name, format!("unknown morphism `{m}`"))
                    })?;
                    sieve.push(f);
                }
                covers[on.0].push(Sieve { on, members: sieve });
            }
            let site = validate_topology(&base, covers, budget)
                .map_err(|e| invalid("site", &d.name, e))?;
            ws.sites.insert(
                d.name.clone(),
                ResolvedSite {
                    over: d.over.clone(),
                    site,
                },
            );
        }
        Decl::Presheaf(d) => {
            let base = lookup(&ws.categories, &d.over, "category", &d.name)?.clone();
            let presheaf =
                validate_presheaf(&base, &raw_presheaf(d)).map_err(|e| invalid("presheaf", &d.name, e))?;
            ws.presheaves.insert(
                d.name.clone(),
                ResolvedPresheaf {
                    over: d.over.clone(),
                    presheaf,
                },
            );
        }
        Decl::Family(d) => {
            lookup(&ws.categories, &d.over, "category", &d.name)?;
            for (i, entry) in d.index.iter().enumerate() {
                if d.index[..i].contains(entry) {
                    return Err(invalid(
                        "family",
                        &d.name,
                        format!("duplicate index element `{entry}`"),
                    ));
                }
            }
            for (i, p) in &d.members {
                if !d.index.contains(i) {
                    return Err(invalid(
                        "family",
                        &d.name,
                        format!("member `{i}` is not in the index"),
                    ));
                }
                let member = lookup(&ws.presheaves, p, "presheaf", &d.name)?;
                if member.over != d.over {
                    return Err(invalid(
                        "family",
                        &d.name,
                        format!("member `{p}` lives over `{}`, not `{}`", member.over, d.over),
                    ));
                }
            }
            for i in &d.index {
                let n = d.members.iter().filter(|(j, _)| j == i).count();
                if n != 1 {
                    return Err(invalid(
                        "family",
                        &d.name,
                        format!("index element `{i}` has {n} members, wanted 1"),
                    ));
                }
            }
            ws.families.insert(d.name.clone(), d.clone());
        }
    }
    Ok(())
}

/// Raw presheaf data for a declaration, with `act` lines grouped by
/// morphism.
pub fn raw_presheaf(d: &crate::dsl::PresheafDecl) -> RawPresheaf {
    let mut actions: Vec<RawAction> = Vec::new();
    for (f, from, to) in &d.acts {
        match actions.iter_mut().find(|a| &a.morphism == f) {
            Some(a) => a.maps.push((from.clone(), to.clone())),
            None => actions.push(RawAction {
                morphism: f.clone(),
                maps: vec![(from.clone(), to.clone())],
            }),
        }
    }
    RawPresheaf {
        carriers: d.carriers.clone(),
        actions,
    }
}

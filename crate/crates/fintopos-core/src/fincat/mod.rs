//! Finite categories presented by explicit tables.
//!
//! A [`FinCategory`] stores named objects, named morphisms with endpoints, a
//! chosen identity per object, and a total composition table for composable
//! pairs.  [`validate_category`] checks the category laws exhaustively and
//! precomputes the hom-set index; every other constructor in the crate goes
//! through it, so a `FinCategory` value always satisfies the laws.
//!
//! Object and morphism order is the declaration order and is significant:
//! all derived constructions (quotients, completions, reports) break ties by
//! this order, which makes every computation deterministic.

mod cauchy;
mod cone;
mod functor;
mod graph;
mod monoid;
mod preorder;

pub use cauchy::{cauchy_completion, CauchyCompletion, SplitIdempotent};
pub use cone::{adjoin_initial, strict_initial, ConeExtension};
pub use functor::FinFunctor;
pub use graph::{free_path_category, GraphError, RawGraph};
pub use monoid::{validate_monoid, FinMonoid, MonoidError, RawMonoid, MONOID_OBJECT};
pub use preorder::{preorder_category, PreorderError};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::unionfind::UnionFind;

/// Index of an object in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Index of a morphism in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

/// A named morphism with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Raw category presentation, as read from a file or built by hand.
///
/// `identities` assigns an identity morphism (by name) to each object;
/// `composites` lists `after ∘ before = result` by morphism names.  The
/// presentation must be complete: every object needs an identity and every
/// composable pair needs a composite (including identity composites).
/// [`CategoryBuilder`] fills the boilerplate in automatically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<(String, String)>,
    pub composites: Vec<RawComposite>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// `after ∘ before = result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawComposite {
    pub after: String,
    pub before: String,
    pub result: String,
}

/// Why a raw presentation is not a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryError {
    DuplicateName { name: String },
    UnknownObject { name: String },
    UnknownMorphism { name: String },
    MissingIdentity { object: String },
    BadIdentity { object: String, morphism: String },
    DomCodMismatch { after: String, before: String, result: String },
    ConflictingComposition { after: String, before: String, first: String, second: String },
    PartialComposition { after: String, before: String },
    NonAssociative { h: String, g: String, f: String },
}

impl fmt::Display for CategoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryError::DuplicateName { name } => write!(f, "duplicate name `{name}`"),
            CategoryError::UnknownObject { name } => write!(f, "unknown object `{name}`"),
            CategoryError::UnknownMorphism { name } => write!(f, "unknown morphism `{name}`"),
            CategoryError::MissingIdentity { object } => {
                write!(f, "object `{object}` has no identity morphism")
            }
            CategoryError::BadIdentity { object, morphism } => {
                write!(f, "morphism `{morphism}` cannot be the identity of `{object}`")
            }
            CategoryError::DomCodMismatch { after, before, result } => write!(
                f,
                "composite `{after} o {before} = {result}` has mismatched endpoints"
            ),
            CategoryError::ConflictingComposition { after, before, first, second } => write!(
                f,
                "composite `{after} o {before}` declared as both `{first}` and `{second}`"
            ),
            CategoryError::PartialComposition { after, before } => {
                write!(f, "no composite declared for `{after} o {before}`")
            }
            CategoryError::NonAssociative { h, g, f: ff } => {
                write!(f, "composition is not associative on `{h}`, `{g}`, `{ff}`")
            }
        }
    }
}

/// A validated finite category.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    /// Dense table `compose[g.0 * n + f.0]`, `None` for non-composable pairs.
    compose: Vec<Option<MorId>>,
    /// Hom sets `hom[dom.0 * n_obj + cod.0]`, each sorted by morphism id.
    hom: Vec<Vec<MorId>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| {
                        format!(
                            "{}: {} -> {}",
                            m.name, self.objects[m.dom.0], self.objects[m.cod.0]
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish_non_exhaustive()
    }
}

/// Checks the category laws on a raw presentation and builds the hom index.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, CategoryError> {
    let n_obj = raw.objects.len();
    for (i, name) in raw.objects.iter().enumerate() {
        if raw.objects[..i].contains(name) {
            return Err(CategoryError::DuplicateName { name: name.clone() });
        }
    }
    let obj_id = |name: &str| -> Result<ObjId, CategoryError> {
        raw.objects
            .iter()
            .position(|o| o == name)
            .map(ObjId)
            .ok_or_else(|| CategoryError::UnknownObject { name: name.into() })
    };

    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, m) in raw.morphisms.iter().enumerate() {
        if raw.morphisms[..i].iter().any(|p| p.name == m.name) {
            return Err(CategoryError::DuplicateName { name: m.name.clone() });
        }
        morphisms.push(Morphism {
            name: m.name.clone(),
            dom: obj_id(&m.dom)?,
            cod: obj_id(&m.cod)?,
        });
    }
    let n_mor = morphisms.len();
    let mor_id = |name: &str| -> Result<MorId, CategoryError> {
        morphisms
            .iter()
            .position(|m| m.name == name)
            .map(MorId)
            .ok_or_else(|| CategoryError::UnknownMorphism { name: name.into() })
    };

    let mut identity: Vec<Option<MorId>> = alloc::vec![None; n_obj];
    for (obj, mor) in &raw.identities {
        let c = obj_id(obj)?;
        let e = mor_id(mor)?;
        if morphisms[e.0].dom != c || morphisms[e.0].cod != c {
            return Err(CategoryError::BadIdentity {
                object: obj.clone(),
                morphism: mor.clone(),
            });
        }
        identity[c.0] = Some(e);
    }
    let identity: Vec<MorId> = identity
        .into_iter()
        .enumerate()
        .map(|(c, id)| {
            id.ok_or_else(|| CategoryError::MissingIdentity {
                object: raw.objects[c].clone(),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut compose: Vec<Option<MorId>> = alloc::vec![None; n_mor * n_mor];
    for entry in &raw.composites {
        let g = mor_id(&entry.after)?;
        let f = mor_id(&entry.before)?;
        let h = mor_id(&entry.result)?;
        let ok = morphisms[g.0].dom == morphisms[f.0].cod
            && morphisms[h.0].dom == morphisms[f.0].dom
            && morphisms[h.0].cod == morphisms[g.0].cod;
        if !ok {
            return Err(CategoryError::DomCodMismatch {
                after: entry.after.clone(),
                before: entry.before.clone(),
                result: entry.result.clone(),
            });
        }
        let slot = &mut compose[g.0 * n_mor + f.0];
        match *slot {
            Some(prev) if prev != h => {
                return Err(CategoryError::ConflictingComposition {
                    after: entry.after.clone(),
                    before: entry.before.clone(),
                    first: morphisms[prev.0].name.clone(),
                    second: entry.result.clone(),
                })
            }
            _ => *slot = Some(h),
        }
    }

    for g in 0..n_mor {
        for f in 0..n_mor {
            if morphisms[g].dom == morphisms[f].cod && compose[g * n_mor + f].is_none() {
                return Err(CategoryError::PartialComposition {
                    after: morphisms[g].name.clone(),
                    before: morphisms[f].name.clone(),
                });
            }
        }
    }

    for (f, m) in morphisms.iter().enumerate() {
        let left = compose[identity[m.cod.0].0 * n_mor + f];
        let right = compose[f * n_mor + identity[m.dom.0].0];
        if left != Some(MorId(f)) || right != Some(MorId(f)) {
            let object = if left != Some(MorId(f)) { m.cod } else { m.dom };
            return Err(CategoryError::BadIdentity {
                object: raw.objects[object.0].clone(),
                morphism: morphisms[identity[object.0].0].name.clone(),
            });
        }
    }

    for h in 0..n_mor {
        for g in 0..n_mor {
            if morphisms[h].dom != morphisms[g].cod {
                continue;
            }
            let hg = compose[h * n_mor + g].unwrap();
            for f in 0..n_mor {
                if morphisms[g].dom != morphisms[f].cod {
                    continue;
                }
                let gf = compose[g * n_mor + f].unwrap();
                if compose[h * n_mor + gf.0] != compose[hg.0 * n_mor + f] {
                    return Err(CategoryError::NonAssociative {
                        h: morphisms[h].name.clone(),
                        g: morphisms[g].name.clone(),
                        f: morphisms[f].name.clone(),
                    });
                }
            }
        }
    }

    let mut hom: Vec<Vec<MorId>> = alloc::vec![Vec::new(); n_obj * n_obj];
    for (i, m) in morphisms.iter().enumerate() {
        hom[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
    }

    Ok(FinCategory {
        objects: raw.objects.clone(),
        morphisms,
        identity,
        compose,
        hom,
    })
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, c: ObjId) -> &str {
        &self.objects[c.0]
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, c: ObjId) -> MorId {
        self.identity[c.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.morphisms[f.0].dom.0] == f
    }

    /// `after ∘ before`; `None` when the pair is not composable.
    pub fn compose(&self, after: MorId, before: MorId) -> Option<MorId> {
        if self.morphisms[after.0].dom != self.morphisms[before.0].cod {
            return None;
        }
        self.compose[after.0 * self.morphisms.len() + before.0]
    }

    /// Morphisms from `a` to `b`, sorted by morphism id.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.0 * self.objects.len() + b.0]
    }

    /// All morphisms with codomain `c`, sorted by morphism id.
    pub fn morphisms_into(&self, c: ObjId) -> Vec<MorId> {
        let mut out: Vec<MorId> = self
            .morphisms()
            .filter(|&f| self.cod(f) == c)
            .collect();
        out.sort();
        out
    }

    /// The opposite category: same names, swapped endpoints, flipped table.
    pub fn opposite(&self) -> FinCategory {
        let n_obj = self.objects.len();
        let n_mor = self.morphisms.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let mut compose = alloc::vec![None; n_mor * n_mor];
        for g in 0..n_mor {
            for f in 0..n_mor {
                compose[g * n_mor + f] = self.compose[f * n_mor + g];
            }
        }
        let mut hom: Vec<Vec<MorId>> = alloc::vec![Vec::new(); n_obj * n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
            hom,
        }
    }

    /// Objects with exactly one morphism to every object.
    pub fn initial_objects(&self) -> Vec<ObjId> {
        self.objects()
            .filter(|&c| self.objects().all(|d| self.hom(c, d).len() == 1))
            .collect()
    }

    /// Objects with exactly one morphism from every object.
    pub fn terminal_objects(&self) -> Vec<ObjId> {
        self.objects()
            .filter(|&c| self.objects().all(|d| self.hom(d, c).len() == 1))
            .collect()
    }

    /// Objects that are both initial and terminal.
    pub fn zero_objects(&self) -> Vec<ObjId> {
        let terminal = self.terminal_objects();
        self.initial_objects()
            .into_iter()
            .filter(|c| terminal.contains(c))
            .collect()
    }

    /// All idempotent endomorphisms, sorted by (object, morphism id).
    pub fn idempotents(&self) -> Vec<SplitIdempotent> {
        let mut out = Vec::new();
        for c in self.objects() {
            for &e in self.hom(c, c) {
                if self.compose(e, e) == Some(e) {
                    out.push(SplitIdempotent {
                        carrier: c,
                        idempotent: e,
                    });
                }
            }
        }
        out
    }

    /// Whether the underlying graph is connected with exactly one component.
    /// The empty category is not connected.
    pub fn is_connected(&self) -> bool {
        if self.objects.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.objects.len());
        for m in &self.morphisms {
            uf.union(m.dom.0, m.cod.0);
        }
        uf.classes().len() == 1
    }

    /// Full subcategory on `keep` (given in the desired object order).
    /// Returns the subcategory and the inclusion of old ids: `object_back[i]`
    /// is the id in `self` of the subcategory object `i`, likewise for
    /// morphisms.
    pub fn full_subcategory(&self, keep: &[ObjId]) -> (FinCategory, Vec<ObjId>, Vec<MorId>) {
        let n_obj = keep.len();
        let mut obj_fwd: Vec<Option<usize>> = alloc::vec![None; self.objects.len()];
        for (new, &old) in keep.iter().enumerate() {
            obj_fwd[old.0] = Some(new);
        }
        let mut mor_back = Vec::new();
        let mut mor_fwd: Vec<Option<usize>> = alloc::vec![None; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if let (Some(d), Some(c)) = (obj_fwd[m.dom.0], obj_fwd[m.cod.0]) {
                mor_fwd[i] = Some(morphisms.len());
                mor_back.push(MorId(i));
                morphisms.push(Morphism {
                    name: m.name.clone(),
                    dom: ObjId(d),
                    cod: ObjId(c),
                });
            }
        }
        let n_mor = morphisms.len();
        let identity: Vec<MorId> = keep
            .iter()
            .map(|&old| MorId(mor_fwd[self.identity[old.0].0].unwrap()))
            .collect();
        let mut compose = alloc::vec![None; n_mor * n_mor];
        for (g_new, &g_old) in mor_back.iter().enumerate() {
            for (f_new, &f_old) in mor_back.iter().enumerate() {
                if let Some(h_old) = self.compose(g_old, f_old) {
                    compose[g_new * n_mor + f_new] = Some(MorId(mor_fwd[h_old.0].unwrap()));
                }
            }
        }
        let mut hom: Vec<Vec<MorId>> = alloc::vec![Vec::new(); n_obj * n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
        }
        let sub = FinCategory {
            objects: keep.iter().map(|&c| self.objects[c.0].clone()).collect(),
            morphisms,
            identity,
            compose,
            hom,
        };
        (sub, keep.to_vec(), mor_back)
    }
}

/// Incremental construction with implicit identities and identity composites.
///
/// `finish` synthesizes a morphism `id_<object>` for every object without an
/// explicit identity, adds all identity composites, and validates.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    raw: RawCategory,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.raw.objects.push(name.into());
        self
    }

    pub fn objects<I: IntoIterator<Item = S>, S: Into<String>>(&mut self, names: I) -> &mut Self {
        for n in names {
            self.object(n);
        }
        self
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        dom: impl Into<String>,
        cod: impl Into<String>,
    ) -> &mut Self {
        self.raw.morphisms.push(RawMorphism {
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
        });
        self
    }

    /// Declares an existing morphism as the identity of `object`.
    pub fn identity(&mut self, object: impl Into<String>, morphism: impl Into<String>) -> &mut Self {
        self.raw.identities.push((object.into(), morphism.into()));
        self
    }

    /// Declares `after ∘ before = result`.
    pub fn composite(
        &mut self,
        after: impl Into<String>,
        before: impl Into<String>,
        result: impl Into<String>,
    ) -> &mut Self {
        self.raw.composites.push(RawComposite {
            after: after.into(),
            before: before.into(),
            result: result.into(),
        });
        self
    }

    /// Completed raw presentation: synthesized identities, identity
    /// composites, then validation.
    pub fn finish(&self) -> Result<FinCategory, CategoryError> {
        let mut raw = self.raw.clone();
        for obj in &raw.objects {
            if raw.identities.iter().any(|(o, _)| o == obj) {
                continue;
            }
            let name = format!("id_{obj}");
            raw.morphisms.push(RawMorphism {
                name: name.clone(),
                dom: obj.clone(),
                cod: obj.clone(),
            });
            raw.identities.push((obj.clone(), name));
        }
        let ids: Vec<(String, String)> = raw.identities.clone();
        let mut forced: Vec<RawComposite> = Vec::new();
        for m in &raw.morphisms {
            let dom_id = ids.iter().find(|(o, _)| *o == m.dom).map(|(_, i)| i.clone());
            let cod_id = ids.iter().find(|(o, _)| *o == m.cod).map(|(_, i)| i.clone());
            if let Some(i) = cod_id {
                forced.push(RawComposite {
                    after: i,
                    before: m.name.clone(),
                    result: m.name.clone(),
                });
            }
            if let Some(i) = dom_id {
                forced.push(RawComposite {
                    after: m.name.clone(),
                    before: i,
                    result: m.name.clone(),
                });
            }
        }
        // A user declaration for an identity pair wins the slot; if it
        // disagrees with the unit law, validation rejects the identity.
        let declared: Vec<(String, String)> = raw
            .composites
            .iter()
            .map(|c| (c.after.clone(), c.before.clone()))
            .collect();
        for f in forced {
            if !declared.contains(&(f.after.clone(), f.before.clone())) {
                raw.composites.push(f);
            }
        }
        validate_category(&raw)
    }
}

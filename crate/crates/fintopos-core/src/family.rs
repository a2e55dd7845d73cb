//! Set-indexed families of presheaves.
//!
//! Presheaves over a cone category (a base with a strict initial object
//! freely adjoined) are the same thing as families of presheaves over the
//! base: the carrier at the adjoined object is the index set and the fiber
//! over each index is one family member.  This module decomposes, rebuilds,
//! and tests the connectedness criterion that tells the members apart.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{Budget, SizeGuardExceeded};
use crate::check::Check;
use crate::fincat::{strict_initial, FinCategory, MorId, ObjId};
use crate::presheaf::{is_isomorphic, pi0, product, NatTrans, Presheaf, PresheafError};
use crate::toposcalc::{container_object, ToposError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// The presheaf base has no strict initial object, so it is not a cone.
    NotACone,
    /// Family members do not all share one base category.
    MixedBases,
    /// Index size and member count disagree.
    WrongIndex,
    Guard(SizeGuardExceeded),
    Presheaf(PresheafError),
}

impl From<SizeGuardExceeded> for FamilyError {
    fn from(g: SizeGuardExceeded) -> Self {
        FamilyError::Guard(g)
    }
}

impl From<PresheafError> for FamilyError {
    fn from(e: PresheafError) -> Self {
        match e {
            PresheafError::Guard(g) => FamilyError::Guard(g),
            other => FamilyError::Presheaf(other),
        }
    }
}

impl From<ToposError> for FamilyError {
    fn from(e: ToposError) -> Self {
        match e {
            ToposError::Guard(g) => FamilyError::Guard(g),
            ToposError::Presheaf(p) => FamilyError::Presheaf(p),
            // A cone base always has a completely connected topos.
            ToposError::NotCompletelyConnected { .. } | ToposError::NotLocal { .. } => {
                FamilyError::NotACone
            }
        }
    }
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::NotACone => {
                write!(f, "the base category has no strict initial object")
            }
            FamilyError::MixedBases => write!(f, "family members live over different bases"),
            FamilyError::WrongIndex => write!(f, "index size does not match the member count"),
            FamilyError::Guard(g) => g.fmt(f),
            FamilyError::Presheaf(e) => e.fmt(f),
        }
    }
}

/// A cone structure found inside a category: a strict initial object
/// together with the full subcategory on everything else.
#[derive(Debug, Clone)]
pub struct DetectedCone {
    pub ambient: Arc<FinCategory>,
    pub init: ObjId,
    pub base: Arc<FinCategory>,
    /// Ambient object for each base object.
    pub object_in_ambient: Vec<ObjId>,
    /// Ambient morphism for each base morphism.
    pub morphism_in_ambient: Vec<MorId>,
    /// The unique ambient morphism from the initial object to each base
    /// object's image.
    pub bang: Vec<MorId>,
}

/// Finds the cone structure of `ambient`, if it has one.
pub fn detect_cone(ambient: &Arc<FinCategory>) -> Option<DetectedCone> {
    let init = strict_initial(ambient)?;
    let keep: Vec<ObjId> = ambient.objects().filter(|&c| c != init).collect();
    let (base, object_in_ambient, morphism_in_ambient) = ambient.full_subcategory(&keep);
    let bang = object_in_ambient
        .iter()
        .map(|&c| ambient.hom(init, c)[0])
        .collect();
    Some(DetectedCone {
        ambient: ambient.clone(),
        init,
        base: Arc::new(base),
        object_in_ambient,
        morphism_in_ambient,
        bang,
    })
}

/// One presheaf per index element, all over a common base.
#[derive(Debug, Clone)]
pub struct FamilyObject {
    pub index: Vec<String>,
    pub members: Vec<Presheaf>,
}

/// Splits a presheaf over a cone category into the family of its fibers.
///
/// The index set is the carrier at the initial object; the member over
/// index `i` keeps, at each base object, the elements whose restriction
/// along the initial morphism is `i`.
pub fn decompose_family(
    p: &Presheaf,
    cone: &DetectedCone,
) -> Result<FamilyObject, FamilyError> {
    if p.base() != &cone.ambient {
        return Err(FamilyError::Presheaf(PresheafError::BaseMismatch));
    }
    let index: Vec<String> = p.elems(cone.init).to_vec();
    let mut members = Vec::with_capacity(index.len());
    for i in 0..index.len() {
        let carrier: Vec<Vec<String>> = cone
            .base
            .objects()
            .map(|c| {
                let amb = cone.object_in_ambient[c.0];
                let bang = cone.bang[c.0];
                p.elems(amb)
                    .iter()
                    .enumerate()
                    .filter(|&(x, _)| p.act(bang, x) == i)
                    .map(|(_, name)| name.clone())
                    .collect()
            })
            .collect();
        // Positions of the fiber inside the ambient carrier, per object.
        let fiber_pos: Vec<Vec<usize>> = cone
            .base
            .objects()
            .map(|c| {
                let amb = cone.object_in_ambient[c.0];
                let bang = cone.bang[c.0];
                (0..p.elem_count(amb))
                    .filter(|&x| p.act(bang, x) == i)
                    .collect()
            })
            .collect();
        let action: Vec<Vec<usize>> = cone
            .base
            .morphisms()
            .map(|f| {
                let amb_f = cone.morphism_in_ambient[f.0];
                let (a, b) = (cone.base.dom(f), cone.base.cod(f));
                fiber_pos[b.0]
                    .iter()
                    .map(|&x| {
                        let y = p.act(amb_f, x);
                        fiber_pos[a.0]
                            .iter()
                            .position(|&z| z == y)
                            .expect("actions preserve fibers")
                    })
                    .collect()
            })
            .collect();
        members.push(
            Presheaf::from_tables(cone.base.clone(), carrier, action)
                .expect("fibers of a presheaf are presheaves"),
        );
    }
    Ok(FamilyObject { index, members })
}

/// Rebuilds the presheaf over the cone category from a family.
///
/// The carrier at the initial object is the index; at a base object it is
/// the disjoint union of the members' carriers in index order, each element
/// named `index:element`.
pub fn recompose_family(
    family: &FamilyObject,
    cone: &DetectedCone,
) -> Result<Presheaf, FamilyError> {
    if family.index.len() != family.members.len() {
        return Err(FamilyError::WrongIndex);
    }
    if family.members.iter().any(|m| m.base() != &cone.base) {
        return Err(FamilyError::MixedBases);
    }
    let ambient = &cone.ambient;
    let base = &cone.base;

    // Base-object positions for each ambient object; the initial object
    // maps to None.
    let mut back: Vec<Option<ObjId>> = alloc::vec![None; ambient.object_count()];
    for (b, &a) in cone.object_in_ambient.iter().enumerate() {
        back[a.0] = Some(ObjId(b));
    }
    let mut carrier: Vec<Vec<String>> = Vec::with_capacity(ambient.object_count());
    // offsets[c][i]: where member i's block starts over base object c.
    let mut offsets: Vec<Vec<usize>> = alloc::vec![Vec::new(); base.object_count()];
    for amb in ambient.objects() {
        if amb == cone.init {
            carrier.push(family.index.clone());
            continue;
        }
        let c = back[amb.0].expect("non-initial objects come from the base");
        let mut names = Vec::new();
        for (i, member) in family.members.iter().enumerate() {
            offsets[c.0].push(names.len());
            for name in member.elems(c) {
                names.push(format!("{}:{}", family.index[i], name));
            }
        }
        carrier.push(names);
    }

    let mut mor_back: Vec<Option<MorId>> = alloc::vec![None; ambient.morphism_count()];
    for (f, &g) in cone.morphism_in_ambient.iter().enumerate() {
        mor_back[g.0] = Some(MorId(f));
    }
    let action: Vec<Vec<usize>> = ambient
        .morphisms()
        .map(|g| {
            let (a, b) = (ambient.dom(g), ambient.cod(g));
            if b == cone.init {
                // Only the identity of the initial object ends there.
                return (0..family.index.len()).collect();
            }
            let cb = back[b.0].expect("codomain comes from the base");
            if a == cone.init {
                // The initial morphism sends each block to its index.
                let mut table = Vec::new();
                for (i, member) in family.members.iter().enumerate() {
                    table.extend(core::iter::repeat_n(i, member.elem_count(cb)));
                }
                return table;
            }
            let ca = back[a.0].expect("domain comes from the base");
            let f = mor_back[g.0].expect("non-cone morphisms come from the base");
            let mut table = Vec::new();
            for (i, member) in family.members.iter().enumerate() {
                for x in 0..member.elem_count(cb) {
                    table.push(offsets[ca.0][i] + member.act(f, x));
                }
            }
            table
        })
        .collect();
    Ok(Presheaf::from_tables(ambient.clone(), carrier, action)
        .expect("families assemble into presheaves"))
}

/// The canonical comparison between a presheaf and the recomposition of its
/// decomposition; always an isomorphism.
pub fn family_round_trip(
    p: &Presheaf,
    cone: &DetectedCone,
) -> Result<NatTrans, FamilyError> {
    let family = decompose_family(p, cone)?;
    let rebuilt = recompose_family(&family, cone)?;
    // Element x over an ambient object lands in the block of its index at
    // the position of x within its fiber.
    let components: Vec<Vec<usize>> = cone
        .ambient
        .objects()
        .map(|amb| {
            if amb == cone.init {
                return (0..p.elem_count(amb)).collect();
            }
            let c = cone
                .object_in_ambient
                .iter()
                .position(|&a| a == amb)
                .map(ObjId)
                .expect("non-initial objects come from the base");
            let bang = cone.bang[c.0];
            (0..p.elem_count(amb))
                .map(|x| {
                    let i = p.act(bang, x);
                    let name = format!("{}:{}", family.index[i], p.elem_name(amb, x));
                    rebuilt
                        .elem_index(amb, &name)
                        .expect("every element appears in its block")
                })
                .collect()
        })
        .collect();
    let nat = NatTrans::new(p.clone(), rebuilt, components)?;
    Ok(nat)
}

/// Connectedness criterion for presheaves over a cone category.
#[derive(Debug, Clone)]
pub struct ClosedSubtoposReport {
    /// Multiplying by the container changes nothing.
    pub absorbed: bool,
    /// The family index is a singleton.
    pub singleton_index: bool,
    /// The presheaf has exactly one component.
    pub connected: bool,
    pub checks: Vec<Check>,
}

/// Tests whether `p * container ≅ container` over a cone category and
/// cross-checks the two equivalent criteria: singleton index, one
/// component.
pub fn closed_subtopos_test(
    p: &Presheaf,
    cone: &DetectedCone,
    budget: &Budget,
) -> Result<ClosedSubtoposReport, FamilyError> {
    let witness = container_object(&cone.ambient)?;
    let (prod, _, _) = product(p, &witness.container, budget)?;
    let absorbed = is_isomorphic(&prod, &witness.container, budget)?.is_some();
    let singleton_index = p.elem_count(cone.init) == 1;
    let connected = pi0(p).count() == 1;
    let mut checks = Vec::new();
    checks.push(Check::from_bool(
        "product with container is the container",
        absorbed == singleton_index,
        format!("absorbed: {absorbed}, singleton index: {singleton_index}"),
    ));
    checks.push(Check::from_bool(
        "singleton index means connected",
        singleton_index == connected,
        format!("singleton index: {singleton_index}, connected: {connected}"),
    ));
    Ok(ClosedSubtoposReport {
        absorbed,
        singleton_index,
        connected,
        checks,
    })
}

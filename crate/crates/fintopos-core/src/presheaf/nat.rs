//! Natural transformations between presheaves, as component tables.

use alloc::string::String;
use alloc::vec::Vec;

use crate::fincat::ObjId;

use super::{Presheaf, PresheafError};

/// A natural transformation with explicit source and target.
///
/// `components[c][x]` is the image index in the target carrier over object
/// `c` of the source element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl NatTrans {
    /// Validates shape and naturality.
    pub fn new(
        source: Presheaf,
        target: Presheaf,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if source.base != target.base {
            return Err(PresheafError::BaseMismatch);
        }
        let base = &source.base;
        if components.len() != base.object_count() {
            return Err(PresheafError::WrongShape);
        }
        for c in base.objects() {
            if components[c.0].len() != source.elem_count(c)
                || components[c.0].iter().any(|&y| y >= target.elem_count(c))
            {
                return Err(PresheafError::WrongShape);
            }
        }
        for f in base.morphisms() {
            let (a, b) = (base.dom(f), base.cod(f));
            for x in 0..source.elem_count(b) {
                let down_then_map = components[a.0][source.act(f, x)];
                let map_then_down = target.act(f, components[b.0][x]);
                if down_then_map != map_then_down {
                    return Err(PresheafError::NotNatural {
                        morphism: String::from(base.morphism_name(f)),
                    });
                }
            }
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    /// Constructor for components produced by a search that already enforced
    /// naturality; still checked in debug builds.
    pub(crate) fn unchecked(
        source: Presheaf,
        target: Presheaf,
        components: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(
            NatTrans::new(source.clone(), target.clone(), components.clone()).is_ok(),
            "search produced a non-natural family"
        );
        NatTrans {
            source,
            target,
            components,
        }
    }

    pub fn identity(p: &Presheaf) -> Self {
        let components = p
            .base
            .objects()
            .map(|c| (0..p.elem_count(c)).collect())
            .collect();
        NatTrans {
            source: p.clone(),
            target: p.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, c: ObjId, x: usize) -> usize {
        self.components[c.0][x]
    }

    /// `self ∘ other`, defined when `other` ends where `self` starts.
    pub fn compose(&self, other: &NatTrans) -> Result<NatTrans, PresheafError> {
        if other.target != self.source {
            return Err(PresheafError::NotComposable);
        }
        let components = other
            .components
            .iter()
            .zip(&self.components)
            .map(|(first, second)| first.iter().map(|&x| second[x]).collect())
            .collect();
        Ok(NatTrans {
            source: other.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Objectwise injective.
    pub fn is_monic(&self) -> bool {
        self.components.iter().all(|comp| {
            comp.iter()
                .enumerate()
                .all(|(i, &y)| comp[..i].iter().all(|&z| z != y))
        })
    }

    /// Objectwise surjective.
    pub fn is_epic(&self) -> bool {
        self.source.base.objects().all(|c| {
            (0..self.target.elem_count(c)).all(|y| self.components[c.0].contains(&y))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_monic() && self.is_epic()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<NatTrans> {
        if !self.is_iso() {
            return None;
        }
        let components = self
            .source
            .base
            .objects()
            .map(|c| {
                (0..self.target.elem_count(c))
                    .map(|y| self.components[c.0].iter().position(|&z| z == y).unwrap())
                    .collect()
            })
            .collect();
        Some(NatTrans {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

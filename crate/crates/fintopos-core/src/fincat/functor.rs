//! Functors between finite categories, stored as tables.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{FinCategory, MorId, ObjId};

/// A functor given by its object and morphism tables.  The tables are
/// indexed by source ids; [`FinFunctor::validate`] checks functoriality
/// against explicit source and target categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorError {
    WrongArity,
    BadEndpoints { morphism: String },
    BadIdentity { object: String },
    BadComposite { after: String, before: String },
}

impl fmt::Display for FunctorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorError::WrongArity => write!(f, "table sizes do not match the source category"),
            FunctorError::BadEndpoints { morphism } => {
                write!(f, "image of `{morphism}` has wrong endpoints")
            }
            FunctorError::BadIdentity { object } => {
                write!(f, "identity of `{object}` is not sent to an identity")
            }
            FunctorError::BadComposite { after, before } => {
                write!(f, "composition is not preserved on `{after} o {before}`")
            }
        }
    }
}

impl FinFunctor {
    /// The identity functor on `c`.
    pub fn identity(c: &FinCategory) -> Self {
        FinFunctor {
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    pub fn apply_obj(&self, c: ObjId) -> ObjId {
        self.object_map[c.0]
    }

    pub fn apply_mor(&self, f: MorId) -> MorId {
        self.morphism_map[f.0]
    }

    /// Checks endpoint preservation, identities, and composition.
    pub fn validate(
        &self,
        source: &FinCategory,
        target: &FinCategory,
    ) -> Result<(), FunctorError> {
        if self.object_map.len() != source.object_count()
            || self.morphism_map.len() != source.morphism_count()
        {
            return Err(FunctorError::WrongArity);
        }
        if self.object_map.iter().any(|c| c.0 >= target.object_count())
            || self
                .morphism_map
                .iter()
                .any(|f| f.0 >= target.morphism_count())
        {
            return Err(FunctorError::WrongArity);
        }
        for f in source.morphisms() {
            let img = self.apply_mor(f);
            if target.dom(img) != self.apply_obj(source.dom(f))
                || target.cod(img) != self.apply_obj(source.cod(f))
            {
                return Err(FunctorError::BadEndpoints {
                    morphism: String::from(source.morphism_name(f)),
                });
            }
        }
        for c in source.objects() {
            if self.apply_mor(source.identity(c)) != target.identity(self.apply_obj(c)) {
                return Err(FunctorError::BadIdentity {
                    object: String::from(source.object_name(c)),
                });
            }
        }
        for g in source.morphisms() {
            for f in source.morphisms() {
                if let Some(h) = source.compose(g, f) {
                    if target.compose(self.apply_mor(g), self.apply_mor(f))
                        != Some(self.apply_mor(h))
                    {
                        return Err(FunctorError::BadComposite {
                            after: String::from(source.morphism_name(g)),
                            before: String::from(source.morphism_name(f)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Injective on hom sets.
    pub fn is_faithful(&self, source: &FinCategory, _target: &FinCategory) -> bool {
        for a in source.objects() {
            for b in source.objects() {
                let hom = source.hom(a, b);
                for (i, &f) in hom.iter().enumerate() {
                    for &g in &hom[i + 1..] {
                        if self.apply_mor(f) == self.apply_mor(g) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Surjective on hom sets between image objects.
    pub fn is_full(&self, source: &FinCategory, target: &FinCategory) -> bool {
        for a in source.objects() {
            for b in source.objects() {
                let image: Vec<MorId> = source
                    .hom(a, b)
                    .iter()
                    .map(|&f| self.apply_mor(f))
                    .collect();
                for &g in target.hom(self.apply_obj(a), self.apply_obj(b)) {
                    if !image.contains(&g) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_fully_faithful(&self, source: &FinCategory, target: &FinCategory) -> bool {
        self.is_faithful(source, target) && self.is_full(source, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    #[test]
    fn identity_functor_validates() {
        let c = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .unwrap();
        let id = FinFunctor::identity(&c);
        assert!(id.validate(&c, &c).is_ok());
        assert!(id.is_fully_faithful(&c, &c));
    }

    #[test]
    fn collapsing_functor_fails_identity_check() {
        let arrow = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .unwrap();
        let point = CategoryBuilder::new()
            .objects(["x"])
            .morphism("e", "x", "x")
            .composite("e", "e", "e")
            .finish()
            .unwrap();
        let e = point.morphism_id("e").unwrap();
        // Send everything to e; identities land on a non-identity.
        let bad = FinFunctor {
            object_map: alloc::vec![ObjId(0), ObjId(0)],
            morphism_map: alloc::vec![e, e, e],
        };
        assert!(matches!(
            bad.validate(&arrow, &point),
            Err(FunctorError::BadIdentity { .. })
        ));
    }
}

//! Cauchy completion: the category of split idempotents.

use alloc::format;
use alloc::vec::Vec;

use super::{
    validate_category, FinCategory, FinFunctor, MorId, ObjId, RawCategory, RawComposite,
    RawMorphism,
};

/// An idempotent endomorphism together with its carrier object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitIdempotent {
    pub carrier: ObjId,
    pub idempotent: MorId,
}

/// The Cauchy completion of a finite category, with the canonical embedding.
///
/// Objects are the idempotents `(c, e)` of the base, named `(c @ e)`;
/// morphisms `(c, e) -> (c', e')` are the base morphisms `f: c -> c'` with
/// `e' ∘ f ∘ e = f`, and the identity of `(c, e)` is `e` itself.
#[derive(Debug, Clone)]
pub struct CauchyCompletion {
    pub category: FinCategory,
    pub embedding: FinFunctor,
    splits: Vec<SplitIdempotent>,
    /// Underlying base morphism of each completion morphism.
    underlying: Vec<MorId>,
}

impl CauchyCompletion {
    /// The split idempotent presented by a completion object.
    pub fn split(&self, c: ObjId) -> SplitIdempotent {
        self.splits[c.0]
    }

    pub fn splits(&self) -> &[SplitIdempotent] {
        &self.splits
    }

    /// The base morphism underlying a completion morphism.
    pub fn underlying(&self, f: MorId) -> MorId {
        self.underlying[f.0]
    }
}

/// Builds the Cauchy completion of `base`.
pub fn cauchy_completion(base: &FinCategory) -> CauchyCompletion {
    let splits = base.idempotents();
    let obj_name = |s: &SplitIdempotent| {
        format!(
            "({} @ {})",
            base.object_name(s.carrier),
            base.morphism_name(s.idempotent)
        )
    };

    let mut raw = RawCategory::default();
    for s in &splits {
        raw.objects.push(obj_name(s));
    }

    // Morphisms ordered by (dom split, cod split, base morphism).
    let mut table: Vec<(usize, usize, MorId)> = Vec::new();
    for (i, si) in splits.iter().enumerate() {
        for (j, sj) in splits.iter().enumerate() {
            for &f in base.hom(si.carrier, sj.carrier) {
                let fixed = base
                    .compose(sj.idempotent, f)
                    .and_then(|g| base.compose(g, si.idempotent));
                if fixed == Some(f) {
                    table.push((i, j, f));
                }
            }
        }
    }
    let mor_name = |i: usize, j: usize, f: MorId| {
        format!(
            "{}:{}->{}",
            base.morphism_name(f),
            obj_name(&splits[i]),
            obj_name(&splits[j])
        )
    };
    for &(i, j, f) in &table {
        raw.morphisms.push(RawMorphism {
            name: mor_name(i, j, f),
            dom: raw.objects[i].clone(),
            cod: raw.objects[j].clone(),
        });
    }
    for (i, s) in splits.iter().enumerate() {
        raw.identities
            .push((raw.objects[i].clone(), mor_name(i, i, s.idempotent)));
    }
    for &(i2, j2, g) in &table {
        for &(i1, j1, f) in &table {
            if j1 != i2 {
                continue;
            }
            let h = base
                .compose(g, f)
                .expect("carriers match, so the base composite exists");
            raw.composites.push(RawComposite {
                after: mor_name(i2, j2, g),
                before: mor_name(i1, j1, f),
                result: mor_name(i1, j2, h),
            });
        }
    }
    let category =
        validate_category(&raw).expect("the Cauchy completion satisfies the category laws");

    let embedding = FinFunctor {
        object_map: base
            .objects()
            .map(|c| {
                let e = base.identity(c);
                ObjId(
                    splits
                        .iter()
                        .position(|s| s.carrier == c && s.idempotent == e)
                        .expect("identities are idempotent"),
                )
            })
            .collect(),
        morphism_map: base
            .morphisms()
            .map(|f| {
                let i = splits
                    .iter()
                    .position(|s| s.carrier == base.dom(f) && base.is_identity(s.idempotent))
                    .unwrap();
                let j = splits
                    .iter()
                    .position(|s| s.carrier == base.cod(f) && base.is_identity(s.idempotent))
                    .unwrap();
                MorId(
                    table
                        .iter()
                        .position(|&(a, b, u)| a == i && b == j && u == f)
                        .expect("identity-framed morphisms embed"),
                )
            })
            .collect(),
    };

    let underlying = table.iter().map(|&(_, _, f)| f).collect();
    CauchyCompletion {
        category,
        embedding,
        splits,
        underlying,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{CategoryBuilder, validate_monoid, RawMonoid};

    #[test]
    fn completion_of_the_walking_arrow_adds_nothing() {
        let c = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .unwrap();
        let cc = cauchy_completion(&c);
        assert_eq!(cc.category.object_count(), 2);
        assert_eq!(cc.category.morphism_count(), 3);
        assert!(cc.embedding.validate(&c, &cc.category).is_ok());
        assert!(cc.embedding.is_fully_faithful(&c, &cc.category));
        assert_eq!(cc.category.object_name(ObjId(0)), "(a @ id_a)");
    }

    #[test]
    fn completion_of_the_walking_idempotent_splits_it() {
        let m = validate_monoid(&RawMonoid {
            elements: alloc::vec!["1".into(), "e".into()],
            unit: "1".into(),
            products: alloc::vec![("e".into(), "e".into(), "e".into())],
        })
        .unwrap();
        let c = m.to_category();
        let cc = cauchy_completion(&c);
        assert_eq!(cc.category.object_count(), 2);
        assert_eq!(cc.category.object_name(ObjId(0)), "(pt @ 1)");
        assert_eq!(cc.category.object_name(ObjId(1)), "(pt @ e)");
        // (pt, e) is a zero object: presheaves on the walking idempotent
        // split every object into components with one chosen point.
        assert_eq!(cc.category.zero_objects(), alloc::vec![ObjId(1)]);
        assert!(cc.embedding.is_fully_faithful(&c, &cc.category));
    }

    #[test]
    fn every_idempotent_of_a_completion_splits() {
        let m = validate_monoid(&RawMonoid {
            elements: alloc::vec!["1".into(), "e".into()],
            unit: "1".into(),
            products: alloc::vec![("e".into(), "e".into(), "e".into())],
        })
        .unwrap();
        let cc = cauchy_completion(&m.to_category()).category;
        for s in cc.idempotents() {
            let e = s.idempotent;
            let splits = cc.objects().any(|d| {
                cc.hom(s.carrier, d).iter().any(|&r| {
                    cc.hom(d, s.carrier).iter().any(|&sec| {
                        cc.compose(r, sec) == Some(cc.identity(d))
                            && cc.compose(sec, r) == Some(e)
                    })
                })
            });
            assert!(splits, "idempotent {} does not split", cc.morphism_name(e));
        }
    }
}

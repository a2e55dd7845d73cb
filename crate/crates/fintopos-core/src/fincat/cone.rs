//! Freely adjoined strict initial objects (cone categories).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    validate_category, FinCategory, FinFunctor, ObjId, RawCategory, RawComposite, RawMorphism,
};

/// A category extended with a strict initial object, with the inclusion of
/// the original category.
#[derive(Debug, Clone)]
pub struct ConeExtension {
    pub category: FinCategory,
    pub embedding: FinFunctor,
    pub init: ObjId,
}

fn fresh(mut name: String, taken: &[String]) -> String {
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Adjoins a strict initial object `@` to `base`.
///
/// The new object comes first; it gets one morphism `!<object>` to every
/// original object, and `f ∘ !<c> = !<d>` for every original `f: c -> d`.
pub fn adjoin_initial(base: &FinCategory) -> ConeExtension {
    let init_name = fresh(String::from("@"), &base.objects().map(|c| String::from(base.object_name(c))).collect::<Vec<_>>());
    let mor_names: Vec<String> = base
        .morphisms()
        .map(|f| String::from(base.morphism_name(f)))
        .collect();

    let mut raw = RawCategory::default();
    raw.objects.push(init_name.clone());
    for c in base.objects() {
        raw.objects.push(String::from(base.object_name(c)));
    }

    let id_init = fresh(format!("id_{init_name}"), &mor_names);
    raw.morphisms.push(RawMorphism {
        name: id_init.clone(),
        dom: init_name.clone(),
        cod: init_name.clone(),
    });
    raw.identities.push((init_name.clone(), id_init.clone()));
    let bang: Vec<String> = base
        .objects()
        .map(|c| fresh(format!("!{}", base.object_name(c)), &mor_names))
        .collect();
    for c in base.objects() {
        raw.morphisms.push(RawMorphism {
            name: bang[c.0].clone(),
            dom: init_name.clone(),
            cod: String::from(base.object_name(c)),
        });
    }
    for f in base.morphisms() {
        let m = base.morphism(f);
        raw.morphisms.push(RawMorphism {
            name: m.name.clone(),
            dom: String::from(base.object_name(m.dom)),
            cod: String::from(base.object_name(m.cod)),
        });
    }
    for c in base.objects() {
        raw.identities.push((
            String::from(base.object_name(c)),
            String::from(base.morphism_name(base.identity(c))),
        ));
    }

    raw.composites.push(RawComposite {
        after: id_init.clone(),
        before: id_init.clone(),
        result: id_init.clone(),
    });
    for c in base.objects() {
        raw.composites.push(RawComposite {
            after: bang[c.0].clone(),
            before: id_init.clone(),
            result: bang[c.0].clone(),
        });
    }
    for f in base.morphisms() {
        raw.composites.push(RawComposite {
            after: String::from(base.morphism_name(f)),
            before: bang[base.dom(f).0].clone(),
            result: bang[base.cod(f).0].clone(),
        });
    }
    for g in base.morphisms() {
        for f in base.morphisms() {
            if let Some(h) = base.compose(g, f) {
                raw.composites.push(RawComposite {
                    after: String::from(base.morphism_name(g)),
                    before: String::from(base.morphism_name(f)),
                    result: String::from(base.morphism_name(h)),
                });
            }
        }
    }

    let category = validate_category(&raw).expect("the cone extension satisfies the category laws");
    let embedding = FinFunctor {
        object_map: base.objects().map(|c| ObjId(c.0 + 1)).collect(),
        morphism_map: base
            .morphisms()
            .map(|f| {
                category
                    .morphism_id(base.morphism_name(f))
                    .expect("original morphisms keep their names")
            })
            .collect(),
    };
    ConeExtension {
        category,
        embedding,
        init: ObjId(0),
    }
}

/// The strict initial object, if any: initial, with no incoming morphisms
/// besides its identity.  At most one object qualifies.
pub fn strict_initial(c: &FinCategory) -> Option<ObjId> {
    c.initial_objects().into_iter().find(|&i| {
        c.objects()
            .filter(|&d| d != i)
            .all(|d| c.hom(d, i).is_empty())
            && c.hom(i, i).len() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    #[test]
    fn cone_over_the_walking_arrow_is_a_chain() {
        let c = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .unwrap();
        let cone = adjoin_initial(&c);
        assert_eq!(cone.category.object_count(), 3);
        // id_@, !a, !b, id_a, id_b, f.
        assert_eq!(cone.category.morphism_count(), 6);
        assert_eq!(strict_initial(&cone.category), Some(cone.init));
        assert!(cone.embedding.validate(&c, &cone.category).is_ok());
        assert!(cone.embedding.is_fully_faithful(&c, &cone.category));
        let f = cone.category.morphism_id("f").unwrap();
        let bang_a = cone.category.morphism_id("!a").unwrap();
        let bang_b = cone.category.morphism_id("!b").unwrap();
        assert_eq!(cone.category.compose(f, bang_a), Some(bang_b));
    }

    #[test]
    fn initial_but_not_strict_is_not_detected() {
        // a <-> nothing: "a" is initial in the walking arrow but has no
        // incoming-freeness failure; a one-object category with only its
        // identity IS strict initial.
        let point = CategoryBuilder::new().objects(["x"]).finish().unwrap();
        assert_eq!(strict_initial(&point), Some(ObjId(0)));
        let arrow = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .unwrap();
        assert_eq!(strict_initial(&arrow), Some(ObjId(0)));
        // With a retraction back the initial object stops being strict.
        let retract = CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .morphism("r", "b", "a")
            .composite("r", "f", "id_a")
            .composite("f", "r", "id_b")
            .finish();
        // f ∘ r = id_b makes a ≅ b; then hom(b, a) is nonempty.
        let cat = retract.unwrap();
        assert_eq!(strict_initial(&cat), None);
    }

    #[test]
    fn adjoining_twice_nests() {
        let point = CategoryBuilder::new().objects(["x"]).finish().unwrap();
        let once = adjoin_initial(&point);
        let twice = adjoin_initial(&once.category);
        assert_eq!(twice.category.object_count(), 3);
        assert_eq!(twice.category.object_name(ObjId(0)), "@'");
        assert_eq!(twice.category.object_name(ObjId(1)), "@");
        assert_eq!(strict_initial(&twice.category), Some(ObjId(0)));
    }
}

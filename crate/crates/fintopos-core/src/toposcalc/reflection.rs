//! Reflection into connected presheaves.
//!
//! When the container object exists, the full subcategory of connected
//! presheaves is reflective.  The reflection of `x` is the pushout of
//!
//! ```text
//!     container <--fold-- copies(components(x)) --counit--> x
//! ```
//!
//! where `copies(S)` is the `S`-fold copower of the container, `fold`
//! collapses every copy onto the container, and the counit sends the copy
//! for a component to the unique map landing in that component.

use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::presheaf::{copower, pi0, pushout, NatTrans, Presheaf};

use super::{container_object, ContainerWitness, ToposError};

/// The reflection of `x` into connected presheaves, with its unit.
pub fn connected_reflection(
    x: &Presheaf,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans), ToposError> {
    let witness = container_object(x.base())?;
    reflect_with(&witness, x, budget)
}

/// Same as [`connected_reflection`], reusing an already computed container.
pub fn reflect_with(
    witness: &ContainerWitness,
    x: &Presheaf,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans), ToposError> {
    let base = x.base().clone();
    let container = &witness.container;
    let p0 = pi0(x);
    let labels: Vec<String> = (0..p0.count()).map(|k| p0.class_name(x, k)).collect();
    let (copies, legs) = copower(container, &labels, budget)?;

    // One fixed point of the idempotent action per component.
    let c0 = witness.split.carrier;
    let e0 = witness.split.idempotent;
    let mut anchor: Vec<Option<usize>> = alloc::vec![None; p0.count()];
    for i in 0..x.elem_count(c0) {
        if x.act(e0, i) == i {
            let k = p0.class_of[c0.0][i];
            assert!(
                anchor[k].is_none(),
                "a component holds two fixed points over the initial split"
            );
            anchor[k] = Some(i);
        }
    }
    let anchors: Vec<usize> = anchor
        .into_iter()
        .map(|a| a.expect("every component holds a fixed point over the initial split"))
        .collect();

    // Container elements over c are morphisms c -> c0; recover their ids.
    let members: Vec<Vec<crate::fincat::MorId>> = base
        .objects()
        .map(|c| {
            base.hom(c, c0)
                .iter()
                .copied()
                .filter(|&f| base.compose(e0, f) == Some(f))
                .collect()
        })
        .collect();

    let mut fold_comp: Vec<Vec<usize>> = base
        .objects()
        .map(|c| alloc::vec![0usize; copies.elem_count(c)])
        .collect();
    let mut counit_comp = fold_comp.clone();
    for (k, leg) in legs.iter().enumerate() {
        for c in base.objects() {
            for (fi, &f) in members[c.0].iter().enumerate() {
                let slot = leg.apply(c, fi);
                fold_comp[c.0][slot] = fi;
                counit_comp[c.0][slot] = x.act(f, anchors[k]);
            }
        }
    }
    let fold = NatTrans::new(copies.clone(), container.clone(), fold_comp)?;
    let counit = NatTrans::new(copies, x.clone(), counit_comp)?;

    let (apex, _, unit) = pushout(&fold, &counit, budget)?;
    Ok((apex, unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;
    use crate::presheaf::{coproduct, is_connected, terminal_presheaf, yoneda};
    use alloc::sync::Arc;
    use crate::fincat::{FinCategory, ObjId};

    fn walking_arrow() -> Arc<FinCategory> {
        Arc::new(
            CategoryBuilder::new()
                .objects(["a", "b"])
                .morphism("f", "a", "b")
                .finish()
                .unwrap(),
        )
    }

    #[test]
    fn reflecting_a_connected_presheaf_changes_nothing() {
        let base = walking_arrow();
        let yb = yoneda(&base, ObjId(1));
        let (r, unit) = connected_reflection(&yb, &Budget::default()).unwrap();
        assert!(unit.is_iso());
        assert_eq!(r.carrier_sizes(), yb.carrier_sizes());
    }

    #[test]
    fn reflecting_two_copies_of_the_point_glues_them() {
        let base = walking_arrow();
        let one = terminal_presheaf(&base);
        let budget = Budget::default();
        let (two, _, _) = coproduct(&one, &one, &budget).unwrap();
        assert_eq!(crate::presheaf::pi0(&two).count(), 2);
        let (r, unit) = connected_reflection(&two, &budget).unwrap();
        assert!(is_connected(&r));
        assert!(unit.is_epic());
    }

    #[test]
    fn reflecting_the_empty_presheaf_gives_the_container() {
        let base = walking_arrow();
        let zero = crate::presheaf::initial_presheaf(&base);
        let budget = Budget::default();
        let (r, _) = connected_reflection(&zero, &budget).unwrap();
        let w = container_object(&base).unwrap();
        assert_eq!(r.carrier_sizes(), w.container.carrier_sizes());
        assert!(is_connected(&r));
    }
}

//! The subobject classifier of a presheaf topos.
//!
//! `omega(c)` is the set of sieves on `c`; the action of `f` is sieve
//! pullback.  Subobjects correspond to characteristic maps into omega:
//! an element lies in the subobject exactly when its characteristic sieve
//! is maximal.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::fincat::FinCategory;
use crate::sieve;

use super::{NatTrans, Presheaf, PresheafError};

/// The subobject classifier.  Elements over `c` are the sieves on `c`,
/// named by their member lists, ordered from the empty sieve upward; the
/// maximal sieve is last.
pub fn omega(base: &Arc<FinCategory>, budget: &Budget) -> Result<Presheaf, PresheafError> {
    let mut counter = budget.counter();
    let mut sieves_by_obj = Vec::with_capacity(base.object_count());
    for c in base.objects() {
        sieves_by_obj.push(sieve::sieves_on(base, c, &mut counter)?);
    }
    let carrier: Vec<Vec<String>> = sieves_by_obj
        .iter()
        .map(|sieves| sieves.iter().map(|s| s.name(base)).collect())
        .collect();
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.dom(f), base.cod(f));
            sieves_by_obj[b.0]
                .iter()
                .map(|s| {
                    let pulled = sieve::pullback(base, s, f);
                    sieves_by_obj[a.0]
                        .iter()
                        .position(|t| *t == pulled)
                        .expect("pullbacks of sieves are sieves")
                })
                .collect()
        })
        .collect();
    Ok(Presheaf::from_tables(base.clone(), carrier, action)
        .expect("the sieve presheaf is functorial"))
}

/// The truth point `1 -> omega` choosing the maximal sieve everywhere.
pub fn omega_truth(omega_p: &Presheaf) -> NatTrans {
    let one = super::terminal_presheaf(omega_p.base());
    let components: Vec<Vec<usize>> = omega_p
        .base()
        .objects()
        .map(|c| alloc::vec![omega_p.elem_count(c) - 1])
        .collect();
    NatTrans::unchecked(one, omega_p.clone(), components)
}

/// The characteristic map of a subpresheaf (given with ambient element
/// names, as produced by [`super::subpresheaves`]): an element over `c`
/// goes to the sieve of morphisms pulling it into the subobject.
pub fn characteristic_map(
    ambient: &Presheaf,
    sub: &Presheaf,
    omega_p: &Presheaf,
) -> Result<NatTrans, PresheafError> {
    if ambient.base != sub.base || ambient.base != omega_p.base {
        return Err(PresheafError::BaseMismatch);
    }
    let base = ambient.base.clone();
    let member: Vec<Vec<bool>> = base
        .objects()
        .map(|c| {
            ambient
                .elems(c)
                .iter()
                .map(|name| sub.elem_index(c, name).is_some())
                .collect()
        })
        .collect();
    // Verify sub is genuinely a name-respecting subpresheaf.
    for c in base.objects() {
        for name in sub.elems(c) {
            if ambient.elem_index(c, name).is_none() {
                return Err(PresheafError::UnknownElement {
                    object: String::from(base.object_name(c)),
                    element: name.clone(),
                });
            }
        }
    }
    let components: Vec<Vec<usize>> = base
        .objects()
        .map(|c| {
            (0..ambient.elem_count(c))
                .map(|x| {
                    let members: Vec<crate::fincat::MorId> = base
                        .morphisms_into(c)
                        .into_iter()
                        .filter(|&f| member[base.dom(f).0][ambient.act(f, x)])
                        .collect();
                    let s = sieve::Sieve { on: c, members };
                    omega_p
                        .elem_index(c, &s.name(&base))
                        .expect("characteristic sieves are sieves")
                })
                .collect()
        })
        .collect();
    NatTrans::new(ambient.clone(), omega_p.clone(), components)
}

/// The subpresheaf classified by a map into omega: elements whose
/// characteristic sieve is maximal.
pub fn subobject_of_characteristic(
    ambient: &Presheaf,
    chi: &NatTrans,
) -> Result<Presheaf, PresheafError> {
    if chi.source() != ambient {
        return Err(PresheafError::NotComposable);
    }
    let base = ambient.base.clone();
    let omega_p = chi.target();
    let mut masks: Vec<u64> = Vec::with_capacity(base.object_count());
    for c in base.objects() {
        if ambient.elem_count(c) >= 64 {
            return Err(PresheafError::WrongShape);
        }
        let top = omega_p.elem_count(c) - 1;
        let mut mask = 0u64;
        for x in 0..ambient.elem_count(c) {
            if chi.apply(c, x) == top {
                mask |= 1 << x;
            }
        }
        masks.push(mask);
    }
    Ok(super::restrict(ambient, &masks))
}

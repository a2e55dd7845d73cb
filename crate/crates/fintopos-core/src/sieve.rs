//! Sieves on objects of a finite category.
//!
//! A sieve on `c` is a set of morphisms with codomain `c` closed under
//! precomposition.  Sieves are kept as explicit sorted morphism lists; the
//! maximal sieve is the full set of morphisms into `c`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::{NodeCounter, SizeGuardExceeded};
use crate::fincat::{FinCategory, MorId, ObjId};

/// A sieve: the object it lives on and its members, sorted by morphism id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sieve {
    pub on: ObjId,
    pub members: Vec<MorId>,
}

impl Sieve {
    pub fn contains(&self, f: MorId) -> bool {
        self.members.binary_search(&f).is_ok()
    }

    /// `{f,g,...}` with members in morphism-id order.
    pub fn name(&self, c: &FinCategory) -> String {
        let mut out = String::from("{");
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(c.morphism_name(m));
        }
        out.push('}');
        out
    }
}

/// The maximal sieve on `obj`: every morphism into it.
pub fn maximal(c: &FinCategory, obj: ObjId) -> Sieve {
    Sieve {
        on: obj,
        members: c.morphisms_into(obj),
    }
}

/// Whether `members` (with codomain `obj`) is closed under precomposition.
pub fn is_sieve(c: &FinCategory, obj: ObjId, members: &[MorId]) -> bool {
    if members.iter().any(|&m| c.cod(m) != obj) {
        return false;
    }
    for &g in members {
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                if !members.contains(&h) {
                    return false;
                }
            }
        }
    }
    true
}

/// The pullback sieve `f*s = {g | f ∘ g ∈ s}` along `f: a -> b` of a sieve
/// on `b`; the result is a sieve on `a`.
pub fn pullback(c: &FinCategory, s: &Sieve, f: MorId) -> Sieve {
    debug_assert_eq!(c.cod(f), s.on);
    let a = c.dom(f);
    let members = c
        .morphisms_into(a)
        .into_iter()
        .filter(|&g| {
            let fg = c.compose(f, g).expect("cod g = dom f");
            s.contains(fg)
        })
        .collect();
    Sieve { on: a, members }
}

/// All sieves on `obj`, ordered by ascending membership bitmask over the
/// morphisms into `obj` (so the empty sieve comes first and the maximal
/// sieve last).  Charges one node per candidate subset.
pub fn sieves_on(
    c: &FinCategory,
    obj: ObjId,
    counter: &mut NodeCounter,
) -> Result<Vec<Sieve>, SizeGuardExceeded> {
    let into = c.morphisms_into(obj);
    let n = into.len();
    if n >= 64 {
        // 2^64 candidates can never fit a u64 budget.
        counter.charge(u64::MAX)?;
    }
    // closure[i]: morphisms (as positions in `into`) forced by membership
    // of into[i].
    let pos = |m: MorId| into.binary_search(&m).expect("closed under precomposition");
    let mut closure: Vec<u64> = Vec::with_capacity(n);
    for &g in &into {
        let mut mask = 1u64 << pos(g);
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                mask |= 1 << pos(h);
            }
        }
        closure.push(mask);
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        counter.tick()?;
        let closed = (0..n).all(|i| mask & (1 << i) == 0 || closure[i] & !mask == 0);
        if closed {
            out.push(Sieve {
                on: obj,
                members: (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| into[i])
                    .collect(),
            });
        }
    }
    Ok(out)
}

//! Presheaves of finite sets on a finite category.
//!
//! A [`Presheaf`] assigns a finite list of named elements to each object and
//! a transition map to each morphism, contravariantly: the action of
//! `f: a -> b` maps elements over `b` to elements over `a`.  Validation
//! checks identity and composition functoriality exhaustively, so a value of
//! this type always is a presheaf.
//!
//! Searches (hom sets, isomorphisms, subpresheaf lattices) enumerate
//! assignments in lexicographic order over declaration order and charge
//! every attempted assignment against a [`Budget`], so results are
//! deterministic and runaway searches are refused.

mod diagram;
mod nat;
mod omega;
mod pi0;

pub use diagram::{
    colimit, colimit_with_base, copower, coproduct, equalizer, limit, limit_with_base, product,
    pushout, Cocone, Cone, Diagram,
};
pub use nat::NatTrans;
pub use omega::{characteristic_map, omega, omega_truth, subobject_of_characteristic};
pub use pi0::{is_connected, pi0, pi0_map, Pi0};

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{Budget, NodeCounter, SizeGuardExceeded};
use crate::fincat::{FinCategory, ObjId};

/// A presheaf with named elements over a shared base category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub(crate) base: Arc<FinCategory>,
    /// Element names per object.
    pub(crate) carrier: Vec<Vec<String>>,
    /// Per morphism `f: a -> b`, the map `carrier[b] -> carrier[a]` by index.
    pub(crate) action: Vec<Vec<usize>>,
}

/// Raw presheaf data: carriers per object and actions per morphism, both by
/// name.  Omitted carriers are empty; omitted identity actions default to
/// the identity map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawPresheaf {
    pub carriers: Vec<(String, Vec<String>)>,
    pub actions: Vec<RawAction>,
}

/// The action of one morphism: for `f: a -> b`, pairs `(x, y)` with `x` an
/// element over `b` and `y` its image over `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAction {
    pub morphism: String,
    pub maps: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresheafError {
    UnknownObject { name: String },
    UnknownMorphism { name: String },
    UnknownElement { object: String, element: String },
    DuplicateElement { object: String, element: String },
    DuplicateCarrier { object: String },
    DuplicateAction { morphism: String, element: String },
    MissingAction { morphism: String, element: String },
    BadIdentity { object: String },
    NotFunctorial { after: String, before: String },
    BaseMismatch,
    WrongShape,
    NotComposable,
    NotNatural { morphism: String },
    Guard(SizeGuardExceeded),
}

impl From<SizeGuardExceeded> for PresheafError {
    fn from(g: SizeGuardExceeded) -> Self {
        PresheafError::Guard(g)
    }
}

impl fmt::Display for PresheafError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresheafError::UnknownObject { name } => write!(f, "unknown object `{name}`"),
            PresheafError::UnknownMorphism { name } => write!(f, "unknown morphism `{name}`"),
            PresheafError::UnknownElement { object, element } => {
                write!(f, "unknown element `{element}` over `{object}`")
            }
            PresheafError::DuplicateElement { object, element } => {
                write!(f, "duplicate element `{element}` over `{object}`")
            }
            PresheafError::DuplicateCarrier { object } => {
                write!(f, "carrier of `{object}` declared twice")
            }
            PresheafError::DuplicateAction { morphism, element } => {
                write!(f, "action of `{morphism}` declared twice on `{element}`")
            }
            PresheafError::MissingAction { morphism, element } => {
                write!(f, "action of `{morphism}` undefined on `{element}`")
            }
            PresheafError::BadIdentity { object } => {
                write!(f, "identity of `{object}` does not act as the identity")
            }
            PresheafError::NotFunctorial { after, before } => {
                write!(f, "action breaks functoriality on `{after} o {before}`")
            }
            PresheafError::BaseMismatch => write!(f, "presheaves live over different bases"),
            PresheafError::WrongShape => write!(f, "component tables have the wrong shape"),
            PresheafError::NotComposable => {
                write!(f, "transformations do not share the middle presheaf")
            }
            PresheafError::NotNatural { morphism } => {
                write!(f, "naturality fails at `{morphism}`")
            }
            PresheafError::Guard(g) => g.fmt(f),
        }
    }
}

impl Presheaf {
    /// Builds a presheaf from index tables, checking shape and functoriality.
    pub fn from_tables(
        base: Arc<FinCategory>,
        carrier: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Presheaf, PresheafError> {
        if carrier.len() != base.object_count() || action.len() != base.morphism_count() {
            return Err(PresheafError::WrongShape);
        }
        for (c, elems) in carrier.iter().enumerate() {
            for (i, name) in elems.iter().enumerate() {
                if elems[..i].contains(name) {
                    return Err(PresheafError::DuplicateElement {
                        object: String::from(base.object_name(ObjId(c))),
                        element: name.clone(),
                    });
                }
            }
        }
        for f in base.morphisms() {
            let (a, b) = (base.dom(f), base.cod(f));
            let table = &action[f.0];
            if table.len() != carrier[b.0].len() {
                return Err(PresheafError::WrongShape);
            }
            for (x, &y) in table.iter().enumerate() {
                if y >= carrier[a.0].len() {
                    return Err(PresheafError::MissingAction {
                        morphism: String::from(base.morphism_name(f)),
                        element: carrier[b.0][x].clone(),
                    });
                }
            }
        }
        let p = Presheaf {
            base,
            carrier,
            action,
        };
        p.check_functorial()?;
        Ok(p)
    }

    fn check_functorial(&self) -> Result<(), PresheafError> {
        let base = &self.base;
        for c in base.objects() {
            let id = base.identity(c);
            if self.action[id.0].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(PresheafError::BadIdentity {
                    object: String::from(base.object_name(c)),
                });
            }
        }
        for g in base.morphisms() {
            for f in base.morphisms() {
                if let Some(h) = base.compose(g, f) {
                    // action(g∘f) = action(f) ∘ action(g) on elements over cod g.
                    let n = self.carrier[base.cod(g).0].len();
                    for x in 0..n {
                        if self.action[h.0][x] != self.action[f.0][self.action[g.0][x]] {
                            return Err(PresheafError::NotFunctorial {
                                after: String::from(base.morphism_name(g)),
                                before: String::from(base.morphism_name(f)),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn elems(&self, c: ObjId) -> &[String] {
        &self.carrier[c.0]
    }

    pub fn elem_count(&self, c: ObjId) -> usize {
        self.carrier[c.0].len()
    }

    pub fn elem_name(&self, c: ObjId, i: usize) -> &str {
        &self.carrier[c.0][i]
    }

    pub fn elem_index(&self, c: ObjId, name: &str) -> Option<usize> {
        self.carrier[c.0].iter().position(|e| e == name)
    }

    /// Applies the action of `f: a -> b` to element `x` over `b`.
    pub fn act(&self, f: crate::fincat::MorId, x: usize) -> usize {
        self.action[f.0][x]
    }

    pub fn total_elements(&self) -> usize {
        self.carrier.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_elements() == 0
    }

    /// Carrier sizes in object order.
    pub fn carrier_sizes(&self) -> Vec<usize> {
        self.carrier.iter().map(Vec::len).collect()
    }
}

/// Resolves a raw presheaf against its base and validates functoriality.
pub fn validate_presheaf(
    base: &Arc<FinCategory>,
    raw: &RawPresheaf,
) -> Result<Presheaf, PresheafError> {
    let mut carrier: Vec<Option<Vec<String>>> = alloc::vec![None; base.object_count()];
    for (obj, elems) in &raw.carriers {
        let c = base
            .object_id(obj)
            .ok_or_else(|| PresheafError::UnknownObject { name: obj.clone() })?;
        if carrier[c.0].is_some() {
            return Err(PresheafError::DuplicateCarrier { object: obj.clone() });
        }
        carrier[c.0] = Some(elems.clone());
    }
    let carrier: Vec<Vec<String>> = carrier.into_iter().map(Option::unwrap_or_default).collect();
    for (c, elems) in carrier.iter().enumerate() {
        for (i, name) in elems.iter().enumerate() {
            if elems[..i].contains(name) {
                return Err(PresheafError::DuplicateElement {
                    object: String::from(base.object_name(ObjId(c))),
                    element: name.clone(),
                });
            }
        }
    }

    let mut action: Vec<Vec<Option<usize>>> = base
        .morphisms()
        .map(|f| alloc::vec![None; carrier[base.cod(f).0].len()])
        .collect();
    for c in base.objects() {
        let id = base.identity(c);
        for (x, slot) in action[id.0].iter_mut().enumerate() {
            *slot = Some(x);
        }
    }
    for entry in &raw.actions {
        let f = base
            .morphism_id(&entry.morphism)
            .ok_or_else(|| PresheafError::UnknownMorphism {
                name: entry.morphism.clone(),
            })?;
        let (a, b) = (base.dom(f), base.cod(f));
        for (from, to) in &entry.maps {
            let x = carrier[b.0].iter().position(|e| e == from).ok_or_else(|| {
                PresheafError::UnknownElement {
                    object: String::from(base.object_name(b)),
                    element: from.clone(),
                }
            })?;
            let y = carrier[a.0].iter().position(|e| e == to).ok_or_else(|| {
                PresheafError::UnknownElement {
                    object: String::from(base.object_name(a)),
                    element: to.clone(),
                }
            })?;
            match action[f.0][x] {
                Some(prev) if prev != y => {
                    return Err(PresheafError::DuplicateAction {
                        morphism: entry.morphism.clone(),
                        element: from.clone(),
                    })
                }
                _ => action[f.0][x] = Some(y),
            }
        }
    }
    let mut tables = Vec::with_capacity(action.len());
    for (fi, table) in action.into_iter().enumerate() {
        let f = crate::fincat::MorId(fi);
        let mut out = Vec::with_capacity(table.len());
        for (x, slot) in table.into_iter().enumerate() {
            match slot {
                Some(y) => out.push(y),
                None => {
                    return Err(PresheafError::MissingAction {
                        morphism: String::from(base.morphism_name(f)),
                        element: carrier[base.cod(f).0][x].clone(),
                    })
                }
            }
        }
        tables.push(out);
    }
    Presheaf::from_tables(base.clone(), carrier, tables)
}

/// The representable presheaf `y(c) = Hom(-, c)`.
///
/// Elements over `d` are the morphisms `d -> c` under their own names; the
/// action of `f` is precomposition.
pub fn yoneda(base: &Arc<FinCategory>, c: ObjId) -> Presheaf {
    let carrier: Vec<Vec<String>> = base
        .objects()
        .map(|d| {
            base.hom(d, c)
                .iter()
                .map(|&g| String::from(base.morphism_name(g)))
                .collect()
        })
        .collect();
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.dom(f), base.cod(f));
            base.hom(b, c)
                .iter()
                .map(|&g| {
                    let gf = base.compose(g, f).expect("cod f = dom g");
                    base.hom(a, c)
                        .iter()
                        .position(|&h| h == gf)
                        .expect("composite lands in hom(a, c)")
                })
                .collect()
        })
        .collect();
    Presheaf::from_tables(base.clone(), carrier, action).expect("representables are functorial")
}

/// The constant presheaf on a fixed element list, all actions identity.
pub fn constant_presheaf(base: &Arc<FinCategory>, elems: &[String]) -> Presheaf {
    let carrier: Vec<Vec<String>> = base.objects().map(|_| elems.to_vec()).collect();
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|_| (0..elems.len()).collect())
        .collect();
    Presheaf::from_tables(base.clone(), carrier, action).expect("constants are functorial")
}

/// The terminal presheaf: one element `*` everywhere.
pub fn terminal_presheaf(base: &Arc<FinCategory>) -> Presheaf {
    constant_presheaf(base, &[String::from("*")])
}

/// The initial presheaf: empty everywhere.
pub fn initial_presheaf(base: &Arc<FinCategory>) -> Presheaf {
    constant_presheaf(base, &[])
}

/// All natural transformations `p -> q`, in lexicographic order of their
/// component tables.  Charges one node per attempted element assignment.
pub fn hom_set(
    p: &Presheaf,
    q: &Presheaf,
    budget: &Budget,
) -> Result<Vec<NatTrans>, PresheafError> {
    if p.base != q.base {
        return Err(PresheafError::BaseMismatch);
    }
    let mut counter = budget.counter();
    let found = search_maps(p, q, false, Some(&mut counter), None)?;
    Ok(found
        .into_iter()
        .map(|components| NatTrans::unchecked(p.clone(), q.clone(), components))
        .collect())
}

/// The first isomorphism `p -> q` in lexicographic order, with its inverse,
/// or `None` when the presheaves are not isomorphic.
pub fn is_isomorphic(
    p: &Presheaf,
    q: &Presheaf,
    budget: &Budget,
) -> Result<Option<(NatTrans, NatTrans)>, PresheafError> {
    if p.base != q.base {
        return Err(PresheafError::BaseMismatch);
    }
    if p.carrier_sizes() != q.carrier_sizes() {
        return Ok(None);
    }
    let mut counter = budget.counter();
    let found = search_maps(p, q, true, Some(&mut counter), Some(1))?;
    Ok(found.into_iter().next().map(|components| {
        let forward = NatTrans::unchecked(p.clone(), q.clone(), components);
        let inverse = forward.inverse().expect("bijective and natural");
        (forward, inverse)
    }))
}

/// Backtracking search for natural families of maps `p -> q`.
///
/// Slots are source elements in (object, element) order; candidates are
/// target indices in ascending order.  With `bijective`, components must be
/// bijections.  `limit` stops after that many solutions.
fn search_maps(
    p: &Presheaf,
    q: &Presheaf,
    bijective: bool,
    counter: Option<&mut NodeCounter>,
    limit: Option<usize>,
) -> Result<Vec<Vec<Vec<usize>>>, SizeGuardExceeded> {
    let base = &p.base;
    let mut offset = Vec::with_capacity(base.object_count());
    let mut slots = 0usize;
    for c in base.objects() {
        offset.push(slots);
        slots += p.elem_count(c);
    }
    let slot_of = |c: ObjId, x: usize| offset[c.0] + x;
    let object_of: Vec<ObjId> = base
        .objects()
        .flat_map(|c| core::iter::repeat_n(c, p.elem_count(c)))
        .collect();

    // Constraint per (f: a -> b, x over b): assign[a, P(f)(x)] = Q(f)(assign[b, x]).
    struct Constraint {
        f: crate::fincat::MorId,
        src_slot: usize,
        dst_slot: usize,
    }
    let mut constraints: Vec<Constraint> = Vec::new();
    for f in base.morphisms() {
        if base.is_identity(f) {
            continue;
        }
        let (a, b) = (base.dom(f), base.cod(f));
        for x in 0..p.elem_count(b) {
            constraints.push(Constraint {
                f,
                src_slot: slot_of(b, x),
                dst_slot: slot_of(a, p.act(f, x)),
            });
        }
    }
    let mut touching: Vec<Vec<usize>> = alloc::vec![Vec::new(); slots];
    for (i, con) in constraints.iter().enumerate() {
        touching[con.src_slot].push(i);
        if con.dst_slot != con.src_slot {
            touching[con.dst_slot].push(i);
        }
    }

    let mut assign: Vec<Option<usize>> = alloc::vec![None; slots];
    let mut used: Vec<Vec<bool>> = base
        .objects()
        .map(|c| alloc::vec![false; q.elem_count(c)])
        .collect();
    let mut results = Vec::new();
    let mut counter = counter;

    // Iterative depth-first search.
    let mut depth = 0usize;
    let mut cursor: Vec<usize> = alloc::vec![0; slots + 1];
    loop {
        if depth == slots {
            results.push(split_components(p, base, &assign, &offset));
            if limit.is_some_and(|l| results.len() >= l) {
                return Ok(results);
            }
            if depth == 0 {
                return Ok(results);
            }
            depth -= 1;
            continue;
        }
        let c = object_of[depth];
        let q_size = q.elem_count(c);
        // Undo any previous assignment at this depth.
        if let Some(prev) = assign[depth].take() {
            if bijective {
                used[c.0][prev] = false;
            }
        }
        let mut t = cursor[depth];
        let mut advanced = false;
        while t < q_size {
            if bijective && used[c.0][t] {
                t += 1;
                continue;
            }
            if let Some(ctr) = counter.as_deref_mut() {
                ctr.tick()?;
            }
            assign[depth] = Some(t);
            let ok = touching[depth].iter().all(|&i| {
                let con = &constraints[i];
                match (assign[con.src_slot], assign[con.dst_slot]) {
                    (Some(sv), Some(dv)) => q.act(con.f, sv) == dv,
                    _ => true,
                }
            });
            if ok {
                if bijective {
                    used[c.0][t] = true;
                }
                cursor[depth] = t + 1;
                depth += 1;
                cursor[depth] = 0;
                advanced = true;
                break;
            }
            assign[depth] = None;
            t += 1;
        }
        if advanced {
            continue;
        }
        cursor[depth] = 0;
        assign[depth] = None;
        if depth == 0 {
            return Ok(results);
        }
        depth -= 1;
    }
}

fn split_components(
    p: &Presheaf,
    base: &FinCategory,
    assign: &[Option<usize>],
    offset: &[usize],
) -> Vec<Vec<usize>> {
    base.objects()
        .map(|c| {
            (0..p.elem_count(c))
                .map(|x| assign[offset[c.0] + x].expect("complete assignment"))
                .collect()
        })
        .collect()
}

/// Global sections: compatible families `(x_c)` with `P(f)(x_b) = x_a` for
/// every `f: a -> b`, as element indices in object order.
pub fn global_sections(p: &Presheaf, budget: &Budget) -> Result<Vec<Vec<usize>>, PresheafError> {
    let one = terminal_presheaf(&p.base);
    let nats = hom_set(&one, p, budget)?;
    Ok(nats
        .into_iter()
        .map(|n| n.components().iter().map(|comp| comp[0]).collect())
        .collect())
}

/// All subpresheaves of `p`, ordered lexicographically by the per-object
/// membership bitmasks.  Element names are preserved.
pub fn subpresheaves(p: &Presheaf, budget: &Budget) -> Result<Vec<Presheaf>, PresheafError> {
    let base = &p.base;
    let n_obj = base.object_count();
    for c in base.objects() {
        if p.elem_count(c) >= 64 {
            return Err(SizeGuardExceeded {
                budget: budget.max_nodes,
            }
            .into());
        }
    }
    let mut counter = budget.counter();
    let mut masks: Vec<u64> = alloc::vec![0; n_obj];
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cursor: Vec<u64> = alloc::vec![0; n_obj + 1];
    if n_obj == 0 {
        out.push(restrict(p, &masks));
        return Ok(out);
    }
    loop {
        if depth == n_obj {
            out.push(restrict(p, &masks));
            depth -= 1;
            continue;
        }
        let size = p.elem_count(ObjId(depth));
        let top = 1u64 << size;
        let mut m = cursor[depth];
        let mut advanced = false;
        while m < top {
            counter.tick()?;
            masks[depth] = m;
            if closed_so_far(p, &masks, depth) {
                cursor[depth] = m + 1;
                depth += 1;
                cursor[depth] = 0;
                advanced = true;
                break;
            }
            m += 1;
        }
        if advanced {
            continue;
        }
        cursor[depth] = 0;
        masks[depth] = 0;
        if depth == 0 {
            return Ok(out);
        }
        depth -= 1;
    }
}

/// Checks closure constraints among objects `0..=upto` only.
fn closed_so_far(p: &Presheaf, masks: &[u64], upto: usize) -> bool {
    let base = &p.base;
    for f in base.morphisms() {
        let (a, b) = (base.dom(f).0, base.cod(f).0);
        if a > upto || b > upto {
            continue;
        }
        for x in 0..p.elem_count(ObjId(b)) {
            if masks[b] & (1 << x) != 0 && masks[a] & (1 << p.act(f, x)) == 0 {
                return false;
            }
        }
    }
    true
}

fn restrict(p: &Presheaf, masks: &[u64]) -> Presheaf {
    let base = &p.base;
    let keep: Vec<Vec<usize>> = base
        .objects()
        .map(|c| {
            (0..p.elem_count(c))
                .filter(|x| masks[c.0] & (1 << x) != 0)
                .collect()
        })
        .collect();
    let carrier: Vec<Vec<String>> = base
        .objects()
        .map(|c| {
            keep[c.0]
                .iter()
                .map(|&x| String::from(p.elem_name(c, x)))
                .collect()
        })
        .collect();
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.dom(f), base.cod(f));
            keep[b.0]
                .iter()
                .map(|&x| {
                    let y = p.act(f, x);
                    keep[a.0]
                        .iter()
                        .position(|&k| k == y)
                        .expect("closure keeps images")
                })
                .collect()
        })
        .collect();
    Presheaf::from_tables(base.clone(), carrier, action).expect("subpresheaves are functorial")
}

/// The inclusion of a subpresheaf produced by [`subpresheaves`] back into
/// its ambient presheaf.
pub fn inclusion(sub: &Presheaf, ambient: &Presheaf) -> Result<NatTrans, PresheafError> {
    if sub.base != ambient.base {
        return Err(PresheafError::BaseMismatch);
    }
    let components: Vec<Vec<usize>> = sub
        .base
        .objects()
        .map(|c| {
            sub.elems(c)
                .iter()
                .map(|name| {
                    ambient
                        .elem_index(c, name)
                        .ok_or_else(|| PresheafError::UnknownElement {
                            object: String::from(sub.base.object_name(c)),
                            element: name.clone(),
                        })
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    NatTrans::new(sub.clone(), ambient.clone(), components)
}

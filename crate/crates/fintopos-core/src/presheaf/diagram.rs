//! Finite diagrams of presheaves and their limits and colimits.
//!
//! A diagram is a functor from a finite shape category into presheaves,
//! given by tables.  Limits are computed objectwise as compatible tuples,
//! colimits objectwise as zig-zag quotients of the disjoint union.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::fincat::{CategoryBuilder, FinCategory, ObjId};
use crate::unionfind::UnionFind;

use super::{NatTrans, Presheaf, PresheafError};

/// A finite diagram: one presheaf per shape object, one transformation per
/// shape morphism, functorially.
#[derive(Debug, Clone)]
pub struct Diagram {
    shape: FinCategory,
    objects: Vec<Presheaf>,
    arrows: Vec<NatTrans>,
}

impl Diagram {
    /// Validates endpoints, identities, and composition.
    pub fn new(
        shape: FinCategory,
        objects: Vec<Presheaf>,
        arrows: Vec<NatTrans>,
    ) -> Result<Diagram, PresheafError> {
        if objects.len() != shape.object_count() || arrows.len() != shape.morphism_count() {
            return Err(PresheafError::WrongShape);
        }
        if let Some(first) = objects.first() {
            if objects.iter().any(|p| p.base != first.base) {
                return Err(PresheafError::BaseMismatch);
            }
        }
        for m in shape.morphisms() {
            if arrows[m.0].source() != &objects[shape.dom(m).0]
                || arrows[m.0].target() != &objects[shape.cod(m).0]
            {
                return Err(PresheafError::WrongShape);
            }
        }
        for c in shape.objects() {
            if arrows[shape.identity(c).0] != NatTrans::identity(&objects[c.0]) {
                return Err(PresheafError::WrongShape);
            }
        }
        for g in shape.morphisms() {
            for f in shape.morphisms() {
                if let Some(h) = shape.compose(g, f) {
                    let gf = arrows[g.0].compose(&arrows[f.0])?;
                    if gf != arrows[h.0] {
                        return Err(PresheafError::NotFunctorial {
                            after: String::from(shape.morphism_name(g)),
                            before: String::from(shape.morphism_name(f)),
                        });
                    }
                }
            }
        }
        Ok(Diagram {
            shape,
            objects,
            arrows,
        })
    }

    /// Builds a diagram from the non-identity arrows only, by shape
    /// morphism name; identity arrows are filled in.
    pub fn from_named_arrows(
        shape: FinCategory,
        objects: Vec<Presheaf>,
        named: &[(&str, NatTrans)],
    ) -> Result<Diagram, PresheafError> {
        if objects.len() != shape.object_count() {
            return Err(PresheafError::WrongShape);
        }
        let mut arrows = Vec::with_capacity(shape.morphism_count());
        for m in shape.morphisms() {
            if shape.is_identity(m) {
                arrows.push(NatTrans::identity(&objects[shape.dom(m).0]));
            } else {
                let name = shape.morphism_name(m);
                let found = named
                    .iter()
                    .find(|(n, _)| *n == name)
                    .ok_or(PresheafError::WrongShape)?;
                arrows.push(found.1.clone());
            }
        }
        Diagram::new(shape, objects, arrows)
    }

    pub fn shape(&self) -> &FinCategory {
        &self.shape
    }

    pub fn object(&self, i: ObjId) -> &Presheaf {
        &self.objects[i.0]
    }

    fn base(&self) -> Option<&alloc::sync::Arc<FinCategory>> {
        self.objects.first().map(|p| &p.base)
    }
}

/// A limit cone: the apex with its projections to the diagram objects.
#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Presheaf,
    pub legs: Vec<NatTrans>,
}

/// A colimit cocone: the apex with the injections from the diagram objects.
#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: Presheaf,
    pub legs: Vec<NatTrans>,
}

/// The limit of a diagram, computed objectwise as compatible tuples in
/// lexicographic order.  Charges one node per attempted tuple entry.
///
/// Diagrams over the empty base category have no objectwise data; the limit
/// over the empty shape is the terminal presheaf.
pub fn limit(d: &Diagram, budget: &Budget) -> Result<Cone, PresheafError> {
    let base = match d.base() {
        Some(b) => b.clone(),
        None => {
            return Err(PresheafError::WrongShape);
        }
    };
    limit_over(d, &base, budget)
}

/// Limit with an explicit base, required when the shape is empty.
pub fn limit_with_base(
    d: &Diagram,
    base: &alloc::sync::Arc<FinCategory>,
    budget: &Budget,
) -> Result<Cone, PresheafError> {
    if let Some(b) = d.base() {
        if b != base {
            return Err(PresheafError::BaseMismatch);
        }
    }
    limit_over(d, base, budget)
}

fn limit_over(
    d: &Diagram,
    base: &alloc::sync::Arc<FinCategory>,
    budget: &Budget,
) -> Result<Cone, PresheafError> {
    let mut counter = budget.counter();
    // Tuples per base object, plus an index for action lookup.
    let mut carrier: Vec<Vec<String>> = Vec::with_capacity(base.object_count());
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(base.object_count());
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(base.object_count());
    for c in base.objects() {
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut partial: Vec<usize> = Vec::new();
        enumerate_tuples(d, c, &mut partial, &mut found, &mut counter)?;
        let mut map = BTreeMap::new();
        let mut names = Vec::with_capacity(found.len());
        for (i, t) in found.iter().enumerate() {
            map.insert(t.clone(), i);
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(j, &x)| d.objects[j].elem_name(c, x))
                .collect();
            names.push(format!("({})", parts.join(",")));
        }
        carrier.push(names);
        tuples.push(found);
        index.push(map);
    }
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.dom(f), base.cod(f));
            tuples[b.0]
                .iter()
                .map(|t| {
                    let image: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| d.objects[j].act(f, x))
                        .collect();
                    *index[a.0].get(&image).expect("actions preserve compatibility")
                })
                .collect()
        })
        .collect();
    let apex = Presheaf::from_tables(base.clone(), carrier, action)
        .expect("limits of presheaves are presheaves");
    let legs: Vec<NatTrans> = (0..d.shape.object_count())
        .map(|j| {
            let components: Vec<Vec<usize>> = base
                .objects()
                .map(|c| tuples[c.0].iter().map(|t| t[j]).collect())
                .collect();
            NatTrans::unchecked(apex.clone(), d.objects[j].clone(), components)
        })
        .collect();
    Ok(Cone { apex, legs })
}

fn enumerate_tuples(
    d: &Diagram,
    c: ObjId,
    partial: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    counter: &mut crate::budget::NodeCounter,
) -> Result<(), crate::budget::SizeGuardExceeded> {
    let j = partial.len();
    if j == d.shape.object_count() {
        found.push(partial.clone());
        return Ok(());
    }
    let shape_obj = ObjId(j);
    'candidates: for x in 0..d.objects[j].elem_count(c) {
        counter.tick()?;
        // Check every shape morphism with both endpoints decided.
        for m in d.shape.morphisms() {
            let (i, t) = (d.shape.dom(m), d.shape.cod(m));
            let xi = if i == shape_obj {
                Some(x)
            } else if i.0 < j {
                Some(partial[i.0])
            } else {
                None
            };
            let xt = if t == shape_obj {
                Some(x)
            } else if t.0 < j {
                Some(partial[t.0])
            } else {
                None
            };
            if let (Some(xi), Some(xt)) = (xi, xt) {
                if d.arrows[m.0].apply(c, xi) != xt {
                    continue 'candidates;
                }
            }
        }
        partial.push(x);
        enumerate_tuples(d, c, partial, found, counter)?;
        partial.pop();
    }
    Ok(())
}

/// The colimit of a diagram: objectwise quotient of the disjoint union by
/// the zig-zag closure of the arrow relation.  Class representatives are
/// least in (shape object, element) order and name the class as
/// `<shape object>:<element>`.
pub fn colimit(d: &Diagram, budget: &Budget) -> Result<Cocone, PresheafError> {
    let base = match d.base() {
        Some(b) => b.clone(),
        None => return Err(PresheafError::WrongShape),
    };
    colimit_with_base(d, &base, budget)
}

/// Colimit with an explicit base, required when the shape is empty.
pub fn colimit_with_base(
    d: &Diagram,
    base: &alloc::sync::Arc<FinCategory>,
    budget: &Budget,
) -> Result<Cocone, PresheafError> {
    if let Some(b) = d.base() {
        if b != base {
            return Err(PresheafError::BaseMismatch);
        }
    }
    let mut counter = budget.counter();
    let k = d.shape.object_count();
    let mut carrier: Vec<Vec<String>> = Vec::with_capacity(base.object_count());
    // class_of[c][j][x]: colimit class of element x of D_j over c.
    let mut class_of: Vec<Vec<Vec<usize>>> = Vec::with_capacity(base.object_count());
    // repr[c][class]: (shape object, element index).
    let mut repr: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.object_count());
    for c in base.objects() {
        let mut offset = alloc::vec![0usize; k + 1];
        for j in 0..k {
            offset[j + 1] = offset[j] + d.objects[j].elem_count(c);
        }
        counter.charge(offset[k] as u64)?;
        let mut uf = UnionFind::new(offset[k]);
        for m in d.shape.morphisms() {
            let (i, t) = (d.shape.dom(m).0, d.shape.cod(m).0);
            for x in 0..d.objects[i].elem_count(c) {
                uf.union(offset[i] + x, offset[t] + d.arrows[m.0].apply(c, x));
            }
        }
        let classes = uf.classes();
        let mut class_idx: Vec<Vec<usize>> = (0..k)
            .map(|j| alloc::vec![usize::MAX; d.objects[j].elem_count(c)])
            .collect();
        let mut reps = Vec::with_capacity(classes.len());
        let mut names = Vec::with_capacity(classes.len());
        for (ci, members) in classes.iter().enumerate() {
            let lead = members[0];
            let j = (0..k).rfind(|&j| offset[j] <= lead).unwrap();
            let x = lead - offset[j];
            reps.push((j, x));
            names.push(format!(
                "{}:{}",
                d.shape.object_name(ObjId(j)),
                d.objects[j].elem_name(c, x)
            ));
            for &member in members {
                let mj = (0..k).rfind(|&j| offset[j] <= member).unwrap();
                class_idx[mj][member - offset[mj]] = ci;
            }
        }
        carrier.push(names);
        class_of.push(class_idx);
        repr.push(reps);
    }
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.dom(f), base.cod(f));
            repr[b.0]
                .iter()
                .map(|&(j, x)| class_of[a.0][j][d.objects[j].act(f, x)])
                .collect()
        })
        .collect();
    let apex = Presheaf::from_tables(base.clone(), carrier, action)
        .expect("colimits of presheaves are presheaves");
    let legs: Vec<NatTrans> = (0..k)
        .map(|j| {
            let components: Vec<Vec<usize>> = base
                .objects()
                .map(|c| class_of[c.0][j].clone())
                .collect();
            NatTrans::unchecked(d.objects[j].clone(), apex.clone(), components)
        })
        .collect();
    Ok(Cocone { apex, legs })
}

fn discrete_shape(labels: &[&str]) -> FinCategory {
    let mut b = CategoryBuilder::new();
    for l in labels {
        b.object(*l);
    }
    b.finish().expect("discrete categories are valid")
}

/// Binary product with projections.
pub fn product(
    p: &Presheaf,
    q: &Presheaf,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans, NatTrans), PresheafError> {
    if p.base != q.base {
        return Err(PresheafError::BaseMismatch);
    }
    let d = Diagram::from_named_arrows(discrete_shape(&["l", "r"]), alloc::vec![p.clone(), q.clone()], &[])?;
    let cone = limit_with_base(&d, &p.base, budget)?;
    let mut legs = cone.legs.into_iter();
    Ok((cone.apex, legs.next().unwrap(), legs.next().unwrap()))
}

/// Binary coproduct with injections.
pub fn coproduct(
    p: &Presheaf,
    q: &Presheaf,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans, NatTrans), PresheafError> {
    if p.base != q.base {
        return Err(PresheafError::BaseMismatch);
    }
    let d = Diagram::from_named_arrows(discrete_shape(&["l", "r"]), alloc::vec![p.clone(), q.clone()], &[])?;
    let cocone = colimit_with_base(&d, &p.base, budget)?;
    let mut legs = cocone.legs.into_iter();
    Ok((cocone.apex, legs.next().unwrap(), legs.next().unwrap()))
}

/// The coproduct of copies of `p` indexed by `labels`, with its injections.
pub fn copower(
    p: &Presheaf,
    labels: &[String],
    budget: &Budget,
) -> Result<(Presheaf, Vec<NatTrans>), PresheafError> {
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let shape = discrete_shape(&label_refs);
    let objects = alloc::vec![p.clone(); labels.len()];
    let d = Diagram::from_named_arrows(shape, objects, &[])?;
    let cocone = colimit_with_base(&d, &p.base, budget)?;
    Ok((cocone.apex, cocone.legs))
}

/// Equalizer of a parallel pair, with its inclusion into the source.
pub fn equalizer(
    u: &NatTrans,
    v: &NatTrans,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans), PresheafError> {
    if u.source() != v.source() || u.target() != v.target() {
        return Err(PresheafError::NotComposable);
    }
    let shape = CategoryBuilder::new()
        .objects(["s", "t"])
        .morphism("u", "s", "t")
        .morphism("v", "s", "t")
        .finish()
        .expect("parallel pair shape is valid");
    let d = Diagram::from_named_arrows(
        shape,
        alloc::vec![u.source().clone(), u.target().clone()],
        &[("u", u.clone()), ("v", v.clone())],
    )?;
    let cone = limit(&d, budget)?;
    let incl = cone.legs.into_iter().next().unwrap();
    Ok((cone.apex, incl))
}

/// Pushout of the span `b <- a -> c`, with the two injections.
pub fn pushout(
    left: &NatTrans,
    right: &NatTrans,
    budget: &Budget,
) -> Result<(Presheaf, NatTrans, NatTrans), PresheafError> {
    if left.source() != right.source() {
        return Err(PresheafError::NotComposable);
    }
    let shape = CategoryBuilder::new()
        .objects(["m", "l", "r"])
        .morphism("u", "m", "l")
        .morphism("v", "m", "r")
        .finish()
        .expect("span shape is valid");
    let d = Diagram::from_named_arrows(
        shape,
        alloc::vec![
            left.source().clone(),
            left.target().clone(),
            right.target().clone()
        ],
        &[("u", left.clone()), ("v", right.clone())],
    )?;
    let cocone = colimit(&d, budget)?;
    let mut legs = cocone.legs.into_iter();
    let _from_apex = legs.next().unwrap();
    Ok((cocone.apex, legs.next().unwrap(), legs.next().unwrap()))
}

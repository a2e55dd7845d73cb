//! Connected components of a presheaf.
//!
//! Two elements are connected when some action identifies them; components
//! are the zig-zag closure classes over the whole category of elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::fincat::ObjId;
use crate::unionfind::UnionFind;

use super::{NatTrans, Presheaf};

/// The component partition of a presheaf's elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0 {
    /// `class_of[c][x]`: component of element `x` over object `c`.
    pub class_of: Vec<Vec<usize>>,
    /// Least (object, element) pair of each component, in component order.
    pub representatives: Vec<(ObjId, usize)>,
}

impl Pi0 {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// `<object>:<element>` for the component representative.
    pub fn class_name(&self, p: &Presheaf, class: usize) -> String {
        let (c, x) = self.representatives[class];
        format!("{}:{}", p.base().object_name(c), p.elem_name(c, x))
    }
}

/// Computes the component partition.  Components are numbered by their
/// least (object order, element order) member, which is also the stored
/// representative.
pub fn pi0(p: &Presheaf) -> Pi0 {
    let base = p.base().clone();
    let mut offset = Vec::with_capacity(base.object_count() + 1);
    offset.push(0usize);
    for c in base.objects() {
        offset.push(offset[c.0] + p.elem_count(c));
    }
    let total = *offset.last().unwrap();
    let mut uf = UnionFind::new(total);
    for f in base.morphisms() {
        let (a, b) = (base.dom(f), base.cod(f));
        for x in 0..p.elem_count(b) {
            uf.union(offset[b.0] + x, offset[a.0] + p.act(f, x));
        }
    }
    let classes = uf.classes();
    let mut class_of: Vec<Vec<usize>> = base
        .objects()
        .map(|c| alloc::vec![usize::MAX; p.elem_count(c)])
        .collect();
    let mut representatives = Vec::with_capacity(classes.len());
    for (ci, members) in classes.iter().enumerate() {
        let lead = members[0];
        let c = (0..base.object_count())
            .rfind(|&c| offset[c] <= lead)
            .unwrap();
        representatives.push((ObjId(c), lead - offset[c]));
        for &m in members {
            let mc = (0..base.object_count()).rfind(|&c| offset[c] <= m).unwrap();
            class_of[mc][m - offset[mc]] = ci;
        }
    }
    Pi0 {
        class_of,
        representatives,
    }
}

/// Nonempty with exactly one component.
pub fn is_connected(p: &Presheaf) -> bool {
    pi0(p).count() == 1
}

/// The map on components induced by a natural transformation.
pub fn pi0_map(u: &NatTrans, src: &Pi0, dst: &Pi0) -> Vec<usize> {
    src.representatives
        .iter()
        .map(|&(c, x)| dst.class_of[c.0][u.apply(c, x)])
        .collect()
}

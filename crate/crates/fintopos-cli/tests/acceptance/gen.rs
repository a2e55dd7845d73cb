//! Exhaustive generator of small categories for the oracle comparison:
//! preorders on up to three points, monoids of order up to three, and free
//! path categories of acyclic graphs on up to three vertices.  Every
//! generated category has at most 3 objects, at most 8 morphisms, and
//! hom-sets of size at most 3, which keeps the bounded presheaf search in
//! `oracle` complete.

use std::collections::BTreeSet;
use std::sync::Arc;

use fintopos_core::fincat::{
    free_path_category, preorder_category, validate_monoid, FinCategory, ObjId, RawGraph,
    RawMonoid,
};

pub fn small_categories() -> Vec<(String, Arc<FinCategory>)> {
    let mut out = Vec::new();
    preorders(&mut out);
    monoids(&mut out);
    path_categories(&mut out);
    for (name, cat) in &out {
        assert!(cat.object_count() <= 3, "{name} has too many objects");
        assert!(cat.morphism_count() <= 8, "{name} has too many morphisms");
        for a in cat.objects() {
            for b in cat.objects() {
                assert!(cat.hom(a, b).len() <= 3, "{name} has a large hom-set");
            }
        }
    }
    out
}

/// Every preorder on 1..=3 points arises as the reflexive-transitive
/// closure of some edge set; closures are deduplicated by their relation
/// matrix and kept when the category has at most 8 morphisms.
fn preorders(out: &mut Vec<(String, Arc<FinCategory>)>) {
    let mut seen = BTreeSet::new();
    for n in 1..=3usize {
        let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let rels: Vec<(String, String)> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (points[i].clone(), points[j].clone()))
                .collect();
            let cat = preorder_category(&points, &rels).expect("closures validate");
            if cat.morphism_count() > 8 {
                continue;
            }
            let matrix: Vec<bool> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| !cat.hom(ObjId(i), ObjId(j)).is_empty())
                .collect();
            if seen.insert((n, matrix)) {
                out.push((format!("preorder-{n}-{mask}"), Arc::new(cat)));
            }
        }
    }
}

/// All monoid tables on 2 or 3 named elements with a fixed unit.
fn monoids(out: &mut Vec<(String, Arc<FinCategory>)>) {
    for n in 2..=3usize {
        let elements: Vec<String> = std::iter::once("e".to_string())
            .chain((1..n).map(|i| format!("m{i}")))
            .collect();
        let free = (n - 1) * (n - 1);
        for code in 0..n.pow(free as u32) {
            let mut c = code;
            let mut products = Vec::with_capacity(free);
            for i in 1..n {
                for j in 1..n {
                    products.push((elements[i].clone(), elements[j].clone(), elements[c % n].clone()));
                    c /= n;
                }
            }
            let raw = RawMonoid {
                elements: elements.clone(),
                unit: "e".to_string(),
                products,
            };
            if let Ok(m) = validate_monoid(&raw) {
                out.push((format!("monoid-{n}-{code}"), Arc::new(m.to_category())));
            }
        }
    }
}

/// Free path categories of every acyclic simple graph on the forward edges
/// of 2 or 3 ordered vertices.
fn path_categories(out: &mut Vec<(String, Arc<FinCategory>)>) {
    let all_edges = [("v0", "v1"), ("v0", "v2"), ("v1", "v2")];
    for mask in 1u32..(1 << all_edges.len()) {
        let edges: Vec<(String, String)> = all_edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(a, b))| (a.to_string(), b.to_string()))
            .collect();
        let vertices: Vec<String> = (0..3).map(|i| format!("v{i}")).collect();
        let cat = free_path_category(&RawGraph { vertices, edges }).expect("forward edges are acyclic");
        out.push((format!("paths-3-{mask}"), Arc::new(cat)));
    }
}

//! Thin categories of finite preorders.

use alloc::format;
use alloc::string::String;
use core::fmt;

use super::{CategoryBuilder, CategoryError, FinCategory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreorderError {
    DuplicatePoint { name: String },
    UnknownPoint { name: String },
    /// Point names collided after mangling into morphism names.
    Category(CategoryError),
}

impl fmt::Display for PreorderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreorderError::DuplicatePoint { name } => write!(f, "duplicate point `{name}`"),
            PreorderError::UnknownPoint { name } => write!(f, "unknown point `{name}`"),
            PreorderError::Category(e) => e.fmt(f),
        }
    }
}

/// The thin category of the preorder generated by `rels` on `points`.
///
/// The order is the reflexive transitive closure of the given pairs; each
/// strict pair `a` below `b` yields one morphism `le_<a>_<b>`.  Cycles are
/// allowed and produce isomorphic objects.
// Matrix indices read better than enumerate chains in the closure passes.
#[allow(clippy::needless_range_loop)]
pub fn preorder_category(
    points: &[String],
    rels: &[(String, String)],
) -> Result<FinCategory, PreorderError> {
    let n = points.len();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(PreorderError::DuplicatePoint { name: p.clone() });
        }
    }
    let pid = |name: &str| -> Result<usize, PreorderError> {
        points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| PreorderError::UnknownPoint { name: name.into() })
    };
    let mut le = alloc::vec![alloc::vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in rels {
        le[pid(a)?][pid(b)?] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }

    let mor = |i: usize, j: usize| format!("le_{}_{}", points[i], points[j]);
    let mut b = CategoryBuilder::new();
    for p in points {
        b.object(p.clone());
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                b.morphism(mor(i, j), points[i].clone(), points[j].clone());
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !le[i][j] {
                continue;
            }
            for k in 0..n {
                if j == k || !le[j][k] {
                    continue;
                }
                // A cycle composes back to the identity, which the builder
                // names id_<point>.
                let result = if i == k {
                    format!("id_{}", points[i])
                } else {
                    mor(i, k)
                };
                b.composite(mor(j, k), mor(i, j), result);
            }
        }
    }
    b.finish().map_err(PreorderError::Category)
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use alloc::vec::Vec;

    use super::*;

    fn names(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn chains_compose_transitively() {
        let c = preorder_category(
            &names(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        assert_eq!(c.object_count(), 3);
        // Three identities plus a<=b, b<=c, and the forced a<=c.
        assert_eq!(c.morphism_count(), 6);
        let f = c.morphism_id("le_a_b").unwrap();
        let g = c.morphism_id("le_b_c").unwrap();
        assert_eq!(c.compose(g, f), c.morphism_id("le_a_c"));
    }

    #[test]
    fn cycles_make_isomorphic_objects() {
        let c = preorder_category(
            &names(&["a", "b"]),
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap();
        let f = c.morphism_id("le_a_b").unwrap();
        let g = c.morphism_id("le_b_a").unwrap();
        let a = c.object_id("a").unwrap();
        let b = c.object_id("b").unwrap();
        assert_eq!(c.compose(g, f), Some(c.identity(a)));
        assert_eq!(c.compose(f, g), Some(c.identity(b)));
    }

    #[test]
    fn unknown_points_are_rejected() {
        let err = preorder_category(&names(&["a"]), &[("a".into(), "z".into())]).unwrap_err();
        assert_eq!(err, PreorderError::UnknownPoint { name: "z".into() });
    }
}

//! Free categories on finite acyclic graphs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{validate_category, FinCategory, RawCategory, RawComposite, RawMorphism};

/// A finite directed graph given by vertex names and edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    DuplicateVertex { name: String },
    UnknownVertex { name: String },
    /// Parallel edges would generate distinct paths with the same name.
    DuplicateEdge { from: String, to: String },
    /// Vertex names with underscores made two generated names collide.
    NameClash { name: String },
    /// The free category on a cyclic graph is infinite.
    CyclicGraph { vertex: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateVertex { name } => write!(f, "duplicate vertex `{name}`"),
            GraphError::UnknownVertex { name } => write!(f, "unknown vertex `{name}`"),
            GraphError::DuplicateEdge { from, to } => {
                write!(f, "duplicate edge `{from} -> {to}`")
            }
            GraphError::NameClash { name } => {
                write!(f, "generated path name `{name}` collides with another morphism")
            }
            GraphError::CyclicGraph { vertex } => write!(
                f,
                "graph has a cycle through `{vertex}`; its free category is infinite"
            ),
        }
    }
}

/// The free category on a finite acyclic simple graph.
///
/// Objects are the vertices; morphisms are the paths.  A path through
/// vertices `a, b, c` is named `a_b_c`; identities are named `id_<vertex>`.
/// Composition is path concatenation.
pub fn free_path_category(g: &RawGraph) -> Result<FinCategory, GraphError> {
    let n = g.vertices.len();
    for (i, v) in g.vertices.iter().enumerate() {
        if g.vertices[..i].contains(v) {
            return Err(GraphError::DuplicateVertex { name: v.clone() });
        }
    }
    let vid = |name: &str| -> Result<usize, GraphError> {
        g.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| GraphError::UnknownVertex { name: name.into() })
    };
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edges.len());
    for (from, to) in &g.edges {
        let e = (vid(from)?, vid(to)?);
        if edges.contains(&e) {
            return Err(GraphError::DuplicateEdge {
                from: from.clone(),
                to: to.clone(),
            });
        }
        edges.push(e);
    }

    // Cycle detection by iterated DFS colouring.
    let mut colour = alloc::vec![0u8; n]; // 0 white, 1 grey, 2 black
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        stack.push((start, 0));
        while let Some(&(v, next)) = stack.last() {
            let succ = edges
                .iter()
                .filter(|(a, _)| *a == v)
                .map(|&(_, b)| b)
                .nth(next);
            match succ {
                Some(w) => {
                    stack.last_mut().unwrap().1 += 1;
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => {
                            return Err(GraphError::CyclicGraph {
                                vertex: g.vertices[w].clone(),
                            })
                        }
                        _ => {}
                    }
                }
                None => {
                    colour[v] = 2;
                    stack.pop();
                }
            }
        }
    }

    // Enumerate paths by length; acyclicity bounds lengths by n - 1.
    // A path is a vertex sequence; order paths by (length, sequence).
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| alloc::vec![a, b]).collect();
    frontier.sort();
    while !frontier.is_empty() {
        paths.extend(frontier.iter().cloned());
        let mut longer = Vec::new();
        for p in &frontier {
            let last = *p.last().unwrap();
            for &(a, b) in &edges {
                if a == last {
                    let mut q = p.clone();
                    q.push(b);
                    longer.push(q);
                }
            }
        }
        longer.sort();
        frontier = longer;
    }

    let path_name = |p: &[usize]| -> String {
        let names: Vec<&str> = p.iter().map(|&v| g.vertices[v].as_str()).collect();
        names.join("_")
    };

    let mut raw = RawCategory {
        objects: g.vertices.clone(),
        ..RawCategory::default()
    };
    for v in &g.vertices {
        raw.morphisms.push(RawMorphism {
            name: format!("id_{v}"),
            dom: v.clone(),
            cod: v.clone(),
        });
        raw.identities.push((v.clone(), format!("id_{v}")));
    }
    for p in &paths {
        raw.morphisms.push(RawMorphism {
            name: path_name(p),
            dom: g.vertices[p[0]].clone(),
            cod: g.vertices[*p.last().unwrap()].clone(),
        });
    }
    let id_name = |v: usize| format!("id_{}", g.vertices[v]);
    for p in &paths {
        raw.composites.push(RawComposite {
            after: id_name(*p.last().unwrap()),
            before: path_name(p),
            result: path_name(p),
        });
        raw.composites.push(RawComposite {
            after: path_name(p),
            before: id_name(p[0]),
            result: path_name(p),
        });
    }
    for v in 0..n {
        raw.composites.push(RawComposite {
            after: id_name(v),
            before: id_name(v),
            result: id_name(v),
        });
    }
    for p in &paths {
        for q in &paths {
            if *q.last().unwrap() == p[0] {
                let mut joined = q.clone();
                joined.extend_from_slice(&p[1..]);
                raw.composites.push(RawComposite {
                    after: path_name(p),
                    before: path_name(q),
                    result: path_name(&joined),
                });
            }
        }
    }
    match validate_category(&raw) {
        Ok(c) => Ok(c),
        Err(super::CategoryError::DuplicateName { name }) => Err(GraphError::NameClash { name }),
        Err(e) => unreachable!("free path categories satisfy the category laws: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> RawGraph {
        RawGraph {
            vertices: vertices.iter().map(|s| String::from(*s)).collect(),
            edges: edges
                .iter()
                .map(|(a, b)| (String::from(*a), String::from(*b)))
                .collect(),
        }
    }

    #[test]
    fn chain_of_three_has_six_morphisms() {
        let c = free_path_category(&graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])).unwrap();
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.morphism_count(), 6);
        let ab = c.morphism_id("a_b").unwrap();
        let bc = c.morphism_id("b_c").unwrap();
        let abc = c.morphism_id("a_b_c").unwrap();
        assert_eq!(c.compose(bc, ab), Some(abc));
    }

    #[test]
    fn commutative_square_shape_has_two_diagonals() {
        let c = free_path_category(&graph(
            &["p", "q", "r", "s"],
            &[("p", "q"), ("p", "r"), ("q", "s"), ("r", "s")],
        ))
        .unwrap();
        // Free: the two composites p->q->s and p->r->s stay distinct.
        assert_eq!(c.object_count(), 4);
        assert_eq!(c.morphism_count(), 4 + 4 + 2);
        assert!(c.morphism_id("p_q_s").is_some());
        assert!(c.morphism_id("p_r_s").is_some());
    }

    #[test]
    fn self_loop_is_cyclic() {
        let err = free_path_category(&graph(&["a"], &[("a", "a")])).unwrap_err();
        assert!(matches!(err, GraphError::CyclicGraph { .. }));
    }

    #[test]
    fn two_cycle_is_cyclic() {
        let err = free_path_category(&graph(&["a", "b"], &[("a", "b"), ("b", "a")])).unwrap_err();
        assert!(matches!(err, GraphError::CyclicGraph { .. }));
    }

    #[test]
    fn edgeless_graph_is_discrete() {
        let c = free_path_category(&graph(&["a", "b"], &[])).unwrap();
        assert_eq!(c.morphism_count(), 2);
        assert!(!c.is_connected());
    }
}

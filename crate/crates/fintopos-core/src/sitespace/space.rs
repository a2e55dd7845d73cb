//! Finite spaces given by explicit open lattices.
//!
//! A space is a finite point set and a collection of opens containing the
//! empty and full sets and closed under binary union and intersection.
//! The two questions asked of such spaces: is there a minimum nonempty
//! open, and is there an open dense point.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceError {
    DuplicatePoint { name: String },
    UnknownPoint { name: String },
    MissingEmpty,
    MissingTotal,
    /// Two opens whose union is missing.
    NotClosedUnderUnion { left: String, right: String },
    /// Two opens whose intersection is missing.
    NotClosedUnderIntersection { left: String, right: String },
    /// Two points no open tells apart.
    NotT0 { left: String, right: String },
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::DuplicatePoint { name } => write!(f, "duplicate point {name}"),
            SpaceError::UnknownPoint { name } => write!(f, "unknown point {name} in an open"),
            SpaceError::MissingEmpty => write!(f, "the empty set is not an open"),
            SpaceError::MissingTotal => write!(f, "the full point set is not an open"),
            SpaceError::NotClosedUnderUnion { left, right } => {
                write!(f, "the union of {left} and {right} is not an open")
            }
            SpaceError::NotClosedUnderIntersection { left, right } => {
                write!(f, "the intersection of {left} and {right} is not an open")
            }
            SpaceError::NotT0 { left, right } => {
                write!(f, "no open separates {left} from {right}")
            }
        }
    }
}

/// Textual form of a space: point names and opens as point-name lists.
#[derive(Debug, Clone, Default)]
pub struct RawSpace {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// A validated finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSpace {
    points: Vec<String>,
    /// Sorted point-index sets, ordered by size then membership.
    opens: Vec<Vec<usize>>,
}

impl FinSpace {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point_name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn opens(&self) -> &[Vec<usize>] {
        &self.opens
    }

    /// `{x,y}` with members in point order.
    pub fn open_name(&self, open: &[usize]) -> String {
        let mut out = String::from("{");
        for (i, &p) in open.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&self.points[p]);
        }
        out.push('}');
        out
    }
}

/// Checks lattice closure and normalizes the open list.
pub fn validate_space(raw: &RawSpace) -> Result<FinSpace, SpaceError> {
    let points = raw.points.clone();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(SpaceError::DuplicatePoint { name: p.clone() });
        }
    }
    let mut opens: Vec<Vec<usize>> = Vec::with_capacity(raw.opens.len());
    for open in &raw.opens {
        let mut set = Vec::with_capacity(open.len());
        for name in open {
            let Some(i) = points.iter().position(|p| p == name) else {
                return Err(SpaceError::UnknownPoint { name: name.clone() });
            };
            set.push(i);
        }
        set.sort_unstable();
        set.dedup();
        opens.push(set);
    }
    opens.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    opens.dedup();

    let space = FinSpace { points, opens };
    if space.opens.first().is_none_or(|o| !o.is_empty()) {
        return Err(SpaceError::MissingEmpty);
    }
    let total: Vec<usize> = (0..space.points.len()).collect();
    if !space.opens.contains(&total) {
        return Err(SpaceError::MissingTotal);
    }
    for i in 0..space.opens.len() {
        for j in (i + 1)..space.opens.len() {
            let mut union: Vec<usize> = space.opens[i]
                .iter()
                .chain(space.opens[j].iter())
                .copied()
                .collect();
            union.sort_unstable();
            union.dedup();
            if !space.opens.contains(&union) {
                return Err(SpaceError::NotClosedUnderUnion {
                    left: space.open_name(&space.opens[i]),
                    right: space.open_name(&space.opens[j]),
                });
            }
            let inter: Vec<usize> = space.opens[i]
                .iter()
                .filter(|p| space.opens[j].binary_search(p).is_ok())
                .copied()
                .collect();
            if !space.opens.contains(&inter) {
                return Err(SpaceError::NotClosedUnderIntersection {
                    left: space.open_name(&space.opens[i]),
                    right: space.open_name(&space.opens[j]),
                });
            }
        }
    }
    Ok(space)
}

/// The nonempty open contained in every nonempty open, if there is one.
///
/// It equals the intersection of all nonempty opens whenever that
/// intersection is nonempty, and does not exist otherwise.
pub fn min_nonempty_open(space: &FinSpace) -> Option<Vec<usize>> {
    let mut nonempty = space.opens().iter().filter(|o| !o.is_empty());
    let first = nonempty.next()?.clone();
    let meet = nonempty.fold(first, |acc, o| {
        acc.into_iter()
            .filter(|p| o.binary_search(p).is_ok())
            .collect()
    });
    if meet.is_empty() {
        None
    } else {
        Some(meet)
    }
}

/// The point whose singleton is open and which lies in every nonempty
/// open, if there is one.  Requires the space to tell its points apart.
pub fn open_dense_point(space: &FinSpace) -> Result<Option<usize>, SpaceError> {
    for p in 0..space.point_count() {
        for q in (p + 1)..space.point_count() {
            let separated = space.opens().iter().any(|o| {
                o.binary_search(&p).is_ok() != o.binary_search(&q).is_ok()
            });
            if !separated {
                return Err(SpaceError::NotT0 {
                    left: String::from(space.point_name(p)),
                    right: String::from(space.point_name(q)),
                });
            }
        }
    }
    match min_nonempty_open(space) {
        Some(meet) if meet.len() == 1 => Ok(Some(meet[0])),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(points: &[&str], opens: &[&[&str]]) -> RawSpace {
        RawSpace {
            points: points.iter().map(|s| String::from(*s)).collect(),
            opens: opens
                .iter()
                .map(|o| o.iter().map(|s| String::from(*s)).collect())
                .collect(),
        }
    }

    #[test]
    fn two_point_connected_space() {
        let space = validate_space(&raw(&["x", "y"], &[&[], &["x"], &["x", "y"]])).unwrap();
        assert_eq!(min_nonempty_open(&space), Some(alloc::vec![0]));
        assert_eq!(open_dense_point(&space), Ok(Some(0)));
    }

    #[test]
    fn discrete_two_points_have_no_minimum() {
        let space =
            validate_space(&raw(&["x", "y"], &[&[], &["x"], &["y"], &["x", "y"]])).unwrap();
        assert_eq!(min_nonempty_open(&space), None);
        assert_eq!(open_dense_point(&space), Ok(None));
    }

    #[test]
    fn nested_chain_has_a_dense_point() {
        let space = validate_space(&raw(
            &["x0", "x1", "x2"],
            &[&[], &["x0"], &["x0", "x1"], &["x0", "x1", "x2"]],
        ))
        .unwrap();
        assert_eq!(min_nonempty_open(&space), Some(alloc::vec![0]));
        assert_eq!(open_dense_point(&space), Ok(Some(0)));
    }

    #[test]
    fn minimum_need_not_be_a_singleton() {
        // Opens nest but the smallest nonempty one has two points, so
        // there is a minimum yet no dense point.
        let space = validate_space(&raw(
            &["x", "y", "z"],
            &[&[], &["x", "y"], &["x", "y", "z"]],
        ))
        .unwrap();
        assert_eq!(min_nonempty_open(&space), Some(alloc::vec![0, 1]));
        // x and y are not separated, so the dense-point question is refused.
        assert_eq!(
            open_dense_point(&space),
            Err(SpaceError::NotT0 {
                left: String::from("x"),
                right: String::from("y")
            })
        );
    }

    #[test]
    fn lattice_violations_are_reported() {
        assert_eq!(
            validate_space(&raw(&["x", "y"], &[&["x"], &["x", "y"]])),
            Err(SpaceError::MissingEmpty)
        );
        assert_eq!(
            validate_space(&raw(&["x", "y"], &[&[], &["x"]])),
            Err(SpaceError::MissingTotal)
        );
        assert_eq!(
            validate_space(&raw(
                &["x", "y", "z"],
                &[&[], &["x"], &["y"], &["x", "y", "z"]]
            )),
            Err(SpaceError::NotClosedUnderUnion {
                left: String::from("{x}"),
                right: String::from("{y}")
            })
        );
        assert_eq!(
            validate_space(&raw(
                &["x", "y", "z"],
                &[&[], &["x", "y"], &["y", "z"], &["x", "y", "z"]]
            )),
            Err(SpaceError::NotClosedUnderIntersection {
                left: String::from("{x,y}"),
                right: String::from("{y,z}")
            })
        );
        assert_eq!(
            validate_space(&raw(&["x", "x"], &[&[], &["x"]])),
            Err(SpaceError::DuplicatePoint {
                name: String::from("x")
            })
        );
        assert_eq!(
            validate_space(&raw(&["x"], &[&[], &["x", "w"]])),
            Err(SpaceError::UnknownPoint {
                name: String::from("w")
            })
        );
    }
}

//! Finite Grothendieck sites and finite spaces.
//!
//! A site fixes, for every object, which sieves count as covers.  The four
//! topology axioms are checked exhaustively, which is possible because all
//! sieves on an object of a finite category can be enumerated.  Site-level
//! analogues of the adjoint-string classes are decided through irreducible
//! objects, and the cone construction lifts a topology to a base with a
//! freely adjoined strict initial object.

mod space;

pub use space::{
    min_nonempty_open, open_dense_point, validate_space, FinSpace, RawSpace, SpaceError,
};

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{Budget, SizeGuardExceeded};
use crate::fincat::{adjoin_initial, ConeExtension, FinCategory, ObjId};
use crate::sieve::{is_sieve, maximal, pullback, sieves_on, Sieve};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiteError {
    /// Covers must be listed for exactly the objects of the category.
    WrongShape,
    /// A listed cover is not closed under precomposition.
    NotASieve { object: String, sieve: String },
    /// The maximal sieve on some object is not a cover.
    MissingMaximal { object: String },
    /// A cover pulls back to a non-cover.
    NotStable {
        object: String,
        sieve: String,
        morphism: String,
    },
    /// A sieve refined by a cover is itself not a cover.
    NotTransitive {
        object: String,
        cover: String,
        refined: String,
    },
    Guard(SizeGuardExceeded),
}

impl From<SizeGuardExceeded> for SiteError {
    fn from(g: SizeGuardExceeded) -> Self {
        SiteError::Guard(g)
    }
}

impl fmt::Display for SiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteError::WrongShape => {
                write!(f, "covers must be listed once per object of the category")
            }
            SiteError::NotASieve { object, sieve } => {
                write!(f, "cover {sieve} on {object} is not a sieve")
            }
            SiteError::MissingMaximal { object } => {
                write!(f, "the maximal sieve on {object} is not a cover")
            }
            SiteError::NotStable {
                object,
                sieve,
                morphism,
            } => write!(
                f,
                "cover {sieve} on {object} pulls back along {morphism} to a non-cover"
            ),
            SiteError::NotTransitive {
                object,
                cover,
                refined,
            } => write!(
                f,
                "sieve {refined} on {object} is refined by the cover {cover} but is not a cover"
            ),
            SiteError::Guard(g) => g.fmt(f),
        }
    }
}

/// A finite category with a validated Grothendieck topology.
#[derive(Debug, Clone)]
pub struct FiniteSite {
    category: Arc<FinCategory>,
    /// Covering sieves per object, sorted and deduplicated.
    covers: Vec<Vec<Sieve>>,
}

impl FiniteSite {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn covers(&self, c: ObjId) -> &[Sieve] {
        &self.covers[c.0]
    }

    pub fn is_cover(&self, s: &Sieve) -> bool {
        self.covers[s.on.0].binary_search(s).is_ok()
    }
}

/// Checks the four topology axioms exhaustively and returns the site.
///
/// `covers` lists the covering sieves per object, in object order.  Nothing
/// is added implicitly: a missing maximal sieve is an error, not a default.
pub fn validate_topology(
    category: &Arc<FinCategory>,
    covers: Vec<Vec<Sieve>>,
    budget: &Budget,
) -> Result<FiniteSite, SiteError> {
    if covers.len() != category.object_count() {
        return Err(SiteError::WrongShape);
    }
    let mut normalized: Vec<Vec<Sieve>> = Vec::with_capacity(covers.len());
    for (c, sieves) in covers.into_iter().enumerate() {
        let c = ObjId(c);
        let mut list = Vec::with_capacity(sieves.len());
        for mut s in sieves {
            if s.on != c {
                return Err(SiteError::WrongShape);
            }
            s.members.sort_unstable();
            s.members.dedup();
            if !is_sieve(category, c, &s.members) {
                return Err(SiteError::NotASieve {
                    object: String::from(category.object_name(c)),
                    sieve: s.name(category),
                });
            }
            list.push(s);
        }
        list.sort();
        list.dedup();
        normalized.push(list);
    }

    for c in category.objects() {
        let max = maximal(category, c);
        if normalized[c.0].binary_search(&max).is_err() {
            return Err(SiteError::MissingMaximal {
                object: String::from(category.object_name(c)),
            });
        }
    }

    for c in category.objects() {
        for s in &normalized[c.0] {
            for f in category.morphisms_into(c) {
                let d = category.dom(f);
                let pulled = pullback(category, s, f);
                if normalized[d.0].binary_search(&pulled).is_err() {
                    return Err(SiteError::NotStable {
                        object: String::from(category.object_name(c)),
                        sieve: s.name(category),
                        morphism: String::from(category.morphism_name(f)),
                    });
                }
            }
        }
    }

    let mut counter = budget.counter();
    for c in category.objects() {
        let all = sieves_on(category, c, &mut counter)?;
        for s in &normalized[c.0] {
            for r in &all {
                if normalized[c.0].binary_search(r).is_ok() {
                    continue;
                }
                let refines = s.members.iter().all(|&f| {
                    let d = category.dom(f);
                    let pulled = pullback(category, r, f);
                    normalized[d.0].binary_search(&pulled).is_ok()
                });
                if refines {
                    return Err(SiteError::NotTransitive {
                        object: String::from(category.object_name(c)),
                        cover: s.name(category),
                        refined: r.name(category),
                    });
                }
            }
        }
    }

    Ok(FiniteSite {
        category: category.clone(),
        covers: normalized,
    })
}

/// The topology whose only cover on each object is the maximal sieve.
pub fn trivial_topology(category: &Arc<FinCategory>) -> FiniteSite {
    let covers = category
        .objects()
        .map(|c| alloc::vec![maximal(category, c)])
        .collect();
    FiniteSite {
        category: category.clone(),
        covers,
    }
}

/// Objects whose only cover is the maximal sieve.
pub fn irreducible_objects(site: &FiniteSite) -> Vec<ObjId> {
    site.category
        .objects()
        .filter(|&c| site.covers[c.0].len() == 1)
        .collect()
}

/// Site-level analogue of the adjoint-string classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteClass {
    pub completely_connected: bool,
    pub local: bool,
}

/// A site is completely connected when some initial object is irreducible,
/// and local when some terminal object is.
pub fn site_class(site: &FiniteSite) -> SiteClass {
    let irr = irreducible_objects(site);
    let completely_connected = site
        .category
        .initial_objects()
        .iter()
        .any(|c| irr.contains(c));
    let local = site
        .category
        .terminal_objects()
        .iter()
        .any(|c| irr.contains(c));
    SiteClass {
        completely_connected,
        local,
    }
}

/// Lifts a topology to the category with a freely adjoined strict initial
/// object: the new object is covered only maximally, and each original
/// cover gains the new morphism into its object.
pub fn cone_topology(site: &FiniteSite) -> (FiniteSite, ConeExtension) {
    let ext = adjoin_initial(&site.category);
    let cone_cat = Arc::new(ext.category.clone());
    let mut covers: Vec<Vec<Sieve>> = Vec::with_capacity(cone_cat.object_count());
    for c in cone_cat.objects() {
        if c == ext.init {
            covers.push(alloc::vec![maximal(&cone_cat, c)]);
            continue;
        }
        let old = ObjId(
            site.category
                .objects()
                .position(|d| ext.embedding.apply_obj(d) == c)
                .expect("every non-initial object comes from the base"),
        );
        let bang = cone_cat.hom(ext.init, c)[0];
        let lifted = site.covers[old.0]
            .iter()
            .map(|s| {
                let mut members: Vec<_> = s
                    .members
                    .iter()
                    .map(|&f| ext.embedding.apply_mor(f))
                    .collect();
                members.push(bang);
                members.sort_unstable();
                Sieve { on: c, members }
            })
            .collect::<Vec<_>>();
        let mut lifted = lifted;
        lifted.sort();
        covers.push(lifted);
    }
    (
        FiniteSite {
            category: cone_cat,
            covers,
        },
        ext,
    )
}

/// Human-readable cover listing: object name and sieve text per cover.
pub fn describe_covers(site: &FiniteSite) -> Vec<(String, Vec<String>)> {
    site.category
        .objects()
        .map(|c| {
            (
                String::from(site.category.object_name(c)),
                site.covers[c.0]
                    .iter()
                    .map(|s| s.name(&site.category))
                    .collect(),
            )
        })
        .collect()
}

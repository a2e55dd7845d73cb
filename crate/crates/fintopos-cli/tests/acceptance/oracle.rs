//! Independent decision procedure for the extra left adjoint: search every
//! presheaf with carriers of size at most 3 for one that represents the
//! connected-components functor on the standard battery.
//!
//! The search never consults the Cauchy completion.  A candidate `R`
//! represents components exactly when some component of `R` induces, by
//! evaluation, a bijection `hom(R, X) -> pi0(X)` for every battery member
//! `X`; the induced map is natural by construction, and naturality is
//! re-checked on sampled battery maps for the winning candidate.

use std::sync::Arc;

use fintopos_core::budget::Budget;
use fintopos_core::fincat::{FinCategory, MorId, ObjId};
use fintopos_core::presheaf::{hom_set, is_connected, pi0, pi0_map, Presheaf};
use fintopos_core::toposcalc::BatteryMember;

const MAX_CARRIER: usize = 3;
const NATURALITY_SQUARES: usize = 24;

/// True when some presheaf with carriers of size at most 3 represents the
/// components functor on `battery`.
pub fn components_representable(
    base: &Arc<FinCategory>,
    battery: &[BatteryMember],
    budget: &Budget,
) -> Result<bool, String> {
    let mut sizes = vec![0usize; base.object_count()];
    loop {
        if let Some(r) = search_actions(base, &sizes, battery, budget)? {
            verify_naturality(&r, battery, budget)?;
            return Ok(true);
        }
        if !bump(&mut sizes) {
            return Ok(false);
        }
    }
}

/// Advances the carrier size vector through {0..=MAX_CARRIER}^n.
fn bump(sizes: &mut [usize]) -> bool {
    for s in sizes.iter_mut() {
        if *s < MAX_CARRIER {
            *s += 1;
            return true;
        }
        *s = 0;
    }
    false
}

/// Depth-first assignment of the action tables over fixed carrier sizes.
/// Identity actions are fixed; every composition constraint is checked as
/// soon as all three tables in it are known.
fn search_actions(
    base: &Arc<FinCategory>,
    sizes: &[usize],
    battery: &[BatteryMember],
    budget: &Budget,
) -> Result<Option<Presheaf>, String> {
    let free: Vec<MorId> = base.morphisms().filter(|&f| !base.is_identity(f)).collect();
    let mut tables: Vec<Option<Vec<usize>>> = base
        .morphisms()
        .map(|f| {
            if base.is_identity(f) {
                Some((0..sizes[base.dom(f).0]).collect())
            } else {
                None
            }
        })
        .collect();
    // Composition triples (f, g, g∘f) indexed by the last-assigned table.
    let mut triples: Vec<(MorId, MorId, MorId)> = Vec::new();
    for f in base.morphisms() {
        for g in base.morphisms() {
            if base.cod(f) == base.dom(g) {
                let h = base.compose(g, f).expect("categories are closed");
                triples.push((f, g, h));
            }
        }
    }
    search(base, sizes, &free, 0, &mut tables, &triples, battery, budget)
}

#[allow(clippy::too_many_arguments)]
fn search(
    base: &Arc<FinCategory>,
    sizes: &[usize],
    free: &[MorId],
    depth: usize,
    tables: &mut Vec<Option<Vec<usize>>>,
    triples: &[(MorId, MorId, MorId)],
    battery: &[BatteryMember],
    budget: &Budget,
) -> Result<Option<Presheaf>, String> {
    if depth == free.len() {
        let action: Vec<Vec<usize>> = tables
            .iter()
            .map(|t| t.clone().expect("all tables assigned"))
            .collect();
        let carrier: Vec<Vec<String>> = sizes
            .iter()
            .enumerate()
            .map(|(c, &n)| (0..n).map(|i| format!("r{c}_{i}")).collect())
            .collect();
        let r = Presheaf::from_tables(base.clone(), carrier, action)
            .expect("checked assignments are functorial");
        return Ok(represents_components(&r, battery, budget)?.map(|_| r));
    }
    let f = free[depth];
    let (nd, nc) = (sizes[base.dom(f).0], sizes[base.cod(f).0]);
    if nc == 0 {
        tables[f.0] = Some(Vec::new());
        if consistent(tables, triples, f) {
            if let Some(hit) = search(base, sizes, free, depth + 1, tables, triples, battery, budget)? {
                return Ok(Some(hit));
            }
        }
        tables[f.0] = None;
        return Ok(None);
    }
    if nd == 0 {
        // A morphism into an empty carrier admits no action.
        return Ok(None);
    }
    let mut table = vec![0usize; nc];
    loop {
        tables[f.0] = Some(table.clone());
        if consistent(tables, triples, f) {
            if let Some(hit) = search(base, sizes, free, depth + 1, tables, triples, battery, budget)? {
                return Ok(Some(hit));
            }
        }
        tables[f.0] = None;
        let mut pos = 0;
        loop {
            if pos == nc {
                return Ok(None);
            }
            table[pos] += 1;
            if table[pos] < nd {
                break;
            }
            table[pos] = 0;
            pos += 1;
        }
    }
}

/// All composition constraints whose three tables are known and which
/// involve the morphism just assigned.
fn consistent(tables: &[Option<Vec<usize>>], triples: &[(MorId, MorId, MorId)], last: MorId) -> bool {
    for &(f, g, h) in triples {
        if f != last && g != last && h != last {
            continue;
        }
        let (Some(tf), Some(tg), Some(th)) = (&tables[f.0], &tables[g.0], &tables[h.0]) else {
            continue;
        };
        // Contravariance: the table of g∘f is the table of g followed by f.
        if th.iter().enumerate().any(|(x, &y)| tf[tg[x]] != y) {
            return false;
        }
    }
    true
}

/// The component of `r` whose evaluation map is a bijection onto the
/// components of every battery member, if one exists.
fn represents_components(
    r: &Presheaf,
    battery: &[BatteryMember],
    budget: &Budget,
) -> Result<Option<(ObjId, usize)>, String> {
    if !is_connected(r) {
        return Ok(None);
    }
    let p0 = pi0(r);
    let (c, x) = p0.representatives[0];
    for m in battery {
        let homs = hom_set(r, &m.presheaf, budget).map_err(|e| e.to_string())?;
        let classes = pi0(&m.presheaf);
        if homs.len() != classes.count() {
            return Ok(None);
        }
        let mut image: Vec<usize> = homs.iter().map(|h| classes.class_of[c.0][h.apply(c, x)]).collect();
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
    }
    Ok(Some((c, x)))
}

/// Naturality of the evaluation map along battery maps: transporting a map
/// from `r` forward and then taking components agrees with taking
/// components first.
fn verify_naturality(r: &Presheaf, battery: &[BatteryMember], budget: &Budget) -> Result<(), String> {
    let p0 = pi0(r);
    let (c, x) = p0.representatives[0];
    let mut squares = 0usize;
    for m in battery {
        for n in battery {
            if squares >= NATURALITY_SQUARES {
                return Ok(());
            }
            let maps = hom_set(&m.presheaf, &n.presheaf, budget).map_err(|e| e.to_string())?;
            let from_r = hom_set(r, &m.presheaf, budget).map_err(|e| e.to_string())?;
            let pm = pi0(&m.presheaf);
            let pn = pi0(&n.presheaf);
            for v in maps.iter().take(2) {
                squares += 1;
                let v0 = pi0_map(v, &pm, &pn);
                for h in &from_r {
                    let direct = pn.class_of[c.0][v.compose(h).map_err(|e| e.to_string())?.apply(c, x)];
                    let through = v0[pm.class_of[c.0][h.apply(c, x)]];
                    if direct != through {
                        return Err("evaluation map fails a naturality square".to_string());
                    }
                }
            }
        }
    }
    Ok(())
}

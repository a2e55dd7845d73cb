//! Verification of the four adjunctions along the string.
//!
//! For each adjacent pair the canonical correspondence between the two hom
//! sets is computed explicitly and checked to be a bijection, against
//! finite sets of size 0 to 3.  Naturality is spot-checked: transporting a
//! correspondence along battery maps commutes with composition.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::check::Check;
use crate::fincat::FinCategory;
use crate::presheaf::{global_sections, hom_set, pi0, pi0_map, NatTrans, Presheaf};

use super::battery::BatteryMember;
use super::{container_object, gamma0, gamma2, gamma_minus2, ToposError};

const SET_SIZES: core::ops::RangeInclusive<usize> = 0..=3;
/// Battery maps sampled for naturality squares.
const NATURALITY_CAP: usize = 6;

fn label_set(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// All rows: per-size, per-member bijection checks for the four adjacent
/// pairs, then naturality squares along sampled battery maps.
pub fn adjunction_checks(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let cc_reason = match container_object(base) {
        Ok(_) => None,
        Err(ToposError::NotCompletelyConnected { reason }) => Some(reason),
        Err(e) => return Err(e),
    };
    let local_reason = match gamma_minus2(base, &label_set(1), budget) {
        Ok(_) => None,
        Err(ToposError::NotLocal { reason }) => Some(reason),
        Err(e) => return Err(e),
    };

    let mut rows = Vec::new();
    for size in SET_SIZES {
        let labels = label_set(size);
        let copies = match &cc_reason {
            None => Some(gamma2(base, &labels, budget)?.0),
            Some(_) => None,
        };
        let constant = gamma0(base, &labels);
        let cosections = match &local_reason {
            None => Some(gamma_minus2(base, &labels, budget)?),
            Some(_) => None,
        };
        for m in members {
            let p0 = pi0(&m.presheaf);
            let sections = global_sections(&m.presheaf, budget)?;

            let name = format!("adjunction copies -| components ({size} labels, {})", m.name);
            match &copies {
                Some(g) => rows.push(copies_row(name, g, size, &m.presheaf, &p0, budget)?),
                None => rows.push(Check::refused(name, cc_reason.clone().expect("recorded"))),
            }

            let name = format!(
                "adjunction components -| constant ({size} labels, {})",
                m.name
            );
            rows.push(constant_row(name, &m.presheaf, &p0, &constant, size, budget)?);

            let name = format!(
                "adjunction constant -| sections ({size} labels, {})",
                m.name
            );
            rows.push(sections_row(name, &constant, size, &m.presheaf, &sections, budget)?);

            let name = format!(
                "adjunction sections -| cosections ({size} labels, {})",
                m.name
            );
            match &cosections {
                Some((g, split)) => rows.push(cosections_row(
                    name,
                    &m.presheaf,
                    &sections,
                    g,
                    split,
                    &labels,
                    budget,
                )?),
                None => rows.push(Check::refused(name, local_reason.clone().expect("recorded"))),
            }
        }
    }
    rows.extend(naturality_rows(
        base,
        members,
        cc_reason.as_deref(),
        local_reason.as_deref(),
        budget,
    )?);
    Ok(rows)
}

/// `hom(copies(S), X) -> functions S -> pi0(X)`: send a map to the
/// component hit by each copy of the container.
fn copies_transpose(
    g: &Presheaf,
    size: usize,
    x: &Presheaf,
    x_pi0: &crate::presheaf::Pi0,
    h: &NatTrans,
) -> Vec<usize> {
    // Copy s of the container holds the idempotent's own element; its name
    // is `label:element`, and copies are blocks in label order, so the s-th
    // preimage of the block structure is found by scanning g's carrier.
    let base = x.base();
    let mut out = alloc::vec![0usize; size];
    let c0 = base
        .objects()
        .find(|&c| g.elem_count(c) > 0)
        .expect("nonempty copies presheaf");
    let mut per_label = alloc::vec![Vec::new(); size];
    for i in 0..g.elem_count(c0) {
        let name = g.elem_name(c0, i);
        let label = name.split(':').next().expect("labelled block");
        let s: usize = label
            .strip_prefix('s')
            .and_then(|t| t.parse().ok())
            .expect("labels are s1..sk");
        per_label[s - 1].push(i);
    }
    for s in 0..size {
        let rep = per_label[s][0];
        out[s] = x_pi0.class_of[c0.0][h.apply(c0, rep)];
    }
    out
}

fn copies_row(
    name: String,
    g: &Presheaf,
    size: usize,
    x: &Presheaf,
    p0: &crate::presheaf::Pi0,
    budget: &Budget,
) -> Result<Check, ToposError> {
    let homs = hom_set(g, x, budget)?;
    let expected = p0.count().checked_pow(size as u32).expect("small powers");
    if homs.len() != expected {
        return Ok(Check::fail(
            name,
            format!("{} maps vs {} functions", homs.len(), expected),
        ));
    }
    if size == 0 {
        return Ok(Check::pass(name));
    }
    let mut images: Vec<Vec<usize>> = homs
        .iter()
        .map(|h| copies_transpose(g, size, x, p0, h))
        .collect();
    images.sort_unstable();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    Ok(Check::from_bool(
        name,
        distinct,
        "two maps from the copies transpose to the same function",
    ))
}

/// `hom(X, constant(S)) -> functions pi0(X) -> S`, by the constant value a
/// map takes on each component.
fn constant_transpose(
    x: &Presheaf,
    x_pi0: &crate::presheaf::Pi0,
    h: &NatTrans,
) -> Option<Vec<usize>> {
    let base = x.base();
    let mut out = alloc::vec![usize::MAX; x_pi0.count()];
    for c in base.objects() {
        for i in 0..x.elem_count(c) {
            let class = x_pi0.class_of[c.0][i];
            let value = h.apply(c, i);
            if out[class] == usize::MAX {
                out[class] = value;
            } else if out[class] != value {
                return None;
            }
        }
    }
    Some(out)
}

fn constant_row(
    name: String,
    x: &Presheaf,
    p0: &crate::presheaf::Pi0,
    constant: &Presheaf,
    size: usize,
    budget: &Budget,
) -> Result<Check, ToposError> {
    let homs = hom_set(x, constant, budget)?;
    let expected = size.checked_pow(p0.count() as u32).unwrap_or(usize::MAX);
    if homs.len() != expected {
        return Ok(Check::fail(
            name,
            format!("{} maps vs {} functions", homs.len(), expected),
        ));
    }
    let mut images = Vec::with_capacity(homs.len());
    for h in &homs {
        match constant_transpose(x, p0, h) {
            Some(im) => images.push(im),
            None => {
                return Ok(Check::fail(
                    name,
                    "a map into the constant presheaf is not constant on a component",
                ))
            }
        }
    }
    images.sort_unstable();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    Ok(Check::from_bool(
        name,
        distinct,
        "two maps transpose to the same function on components",
    ))
}

/// `hom(constant(S), X) -> functions S -> sections(X)`, by the section each
/// label traces out.
fn sections_transpose(
    size: usize,
    x: &Presheaf,
    sections: &[Vec<usize>],
    h: &NatTrans,
) -> Option<Vec<usize>> {
    let base = x.base();
    let mut out = Vec::with_capacity(size);
    for s in 0..size {
        let trace: Vec<usize> = base.objects().map(|c| h.apply(c, s)).collect();
        let idx = sections.iter().position(|sec| *sec == trace)?;
        out.push(idx);
    }
    Some(out)
}

fn sections_row(
    name: String,
    constant: &Presheaf,
    size: usize,
    x: &Presheaf,
    sections: &[Vec<usize>],
    budget: &Budget,
) -> Result<Check, ToposError> {
    let homs = hom_set(constant, x, budget)?;
    let expected = sections.len().checked_pow(size as u32).expect("small powers");
    if homs.len() != expected {
        return Ok(Check::fail(
            name,
            format!("{} maps vs {} functions", homs.len(), expected),
        ));
    }
    let mut images = Vec::with_capacity(homs.len());
    for h in &homs {
        match sections_transpose(size, x, sections, h) {
            Some(im) => images.push(im),
            None => {
                return Ok(Check::fail(
                    name,
                    "a label traces out a family that is not a global section",
                ))
            }
        }
    }
    images.sort_unstable();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    Ok(Check::from_bool(
        name,
        distinct,
        "two maps transpose to the same function into sections",
    ))
}

/// `hom(X, cosections(S)) -> functions sections(X) -> S`, by evaluating at
/// the terminal split's own morphism.
fn cosections_transpose(
    sections: &[Vec<usize>],
    g: &Presheaf,
    labels: &[String],
    eval_obj: crate::fincat::ObjId,
    eval_pos: usize,
    h: &NatTrans,
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(sections.len());
    for sec in sections {
        let gi = h.apply(eval_obj, sec[eval_obj.0]);
        // Element names are `[v1,...,vk]` over the exponent in order.
        let name = g.elem_name(eval_obj, gi);
        let inner = name.strip_prefix('[')?.strip_suffix(']')?;
        let parts: Vec<&str> = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(',').collect()
        };
        let value = parts.get(eval_pos)?;
        out.push(labels.iter().position(|l| l == value)?);
    }
    Some(out)
}

fn cosections_row(
    name: String,
    x: &Presheaf,
    sections: &[Vec<usize>],
    g: &Presheaf,
    split: &crate::fincat::SplitIdempotent,
    labels: &[String],
    budget: &Budget,
) -> Result<Check, ToposError> {
    let base = x.base();
    let homs = hom_set(x, g, budget)?;
    let expected = labels
        .len()
        .checked_pow(sections.len() as u32)
        .unwrap_or(usize::MAX);
    if homs.len() != expected {
        return Ok(Check::fail(
            name,
            format!("{} maps vs {} functions", homs.len(), expected),
        ));
    }
    if labels.is_empty() || sections.is_empty() {
        return Ok(Check::pass(name));
    }
    let (c1, eval_pos) = eval_slot(base, split);
    let mut images = Vec::with_capacity(homs.len());
    for h in &homs {
        match cosections_transpose(sections, g, labels, c1, eval_pos, h) {
            Some(im) => images.push(im),
            None => {
                return Ok(Check::fail(
                    name,
                    "evaluation at the terminal split failed to decode",
                ))
            }
        }
    }
    images.sort_unstable();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    Ok(Check::from_bool(
        name,
        distinct,
        "two maps evaluate to the same function on sections",
    ))
}

/// Position of the terminal split's own idempotent inside the exponent
/// over its carrier, used to evaluate cosection elements.
fn eval_slot(
    base: &Arc<FinCategory>,
    split: &crate::fincat::SplitIdempotent,
) -> (crate::fincat::ObjId, usize) {
    let (c1, e1) = (split.carrier, split.idempotent);
    let eval_pos = base
        .hom(c1, c1)
        .iter()
        .filter(|&&f| base.compose(f, e1) == Some(f))
        .position(|&f| f == e1)
        .expect("the idempotent fixes itself");
    (c1, eval_pos)
}

/// Squares: transposing after composing with a battery map equals acting on
/// the transpose.  Two labels throughout.
fn naturality_rows(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    cc_reason: Option<&str>,
    local_reason: Option<&str>,
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let size = 2usize;
    let labels = label_set(size);
    let constant = gamma0(base, &labels);
    let copies = match cc_reason {
        None => Some(gamma2(base, &labels, budget)?.0),
        Some(_) => None,
    };
    let cosections = match local_reason {
        None => Some(gamma_minus2(base, &labels, budget)?),
        Some(_) => None,
    };

    // Sampled battery maps u: X -> Y.
    let mut samples: Vec<(String, NatTrans)> = Vec::new();
    'outer: for x in members {
        for y in members {
            let homs = hom_set(&x.presheaf, &y.presheaf, budget)?;
            for (k, u) in homs.into_iter().enumerate() {
                samples.push((format!("hom({}, {}) [{k}]", x.name, y.name), u));
                if samples.len() >= NATURALITY_CAP {
                    break 'outer;
                }
            }
        }
    }

    let mut rows = Vec::new();
    for (uname, u) in &samples {
        let x = u.source();
        let y = u.target();
        let px = pi0(x);
        let py = pi0(y);
        let u0 = pi0_map(u, &px, &py);

        let name = format!("adjunction naturality copies -| components along {uname}");
        match &copies {
            Some(g) => {
                let mut ok = true;
                for h in hom_set(g, x, budget)? {
                    let uh = u.compose(&h)?;
                    let lhs = copies_transpose(g, size, y, &py, &uh);
                    let rhs: Vec<usize> = copies_transpose(g, size, x, &px, &h)
                        .into_iter()
                        .map(|k| u0[k])
                        .collect();
                    if lhs != rhs {
                        ok = false;
                        break;
                    }
                }
                rows.push(Check::from_bool(name, ok, "a transpose square does not commute"));
            }
            None => rows.push(Check::refused(name, cc_reason.unwrap_or("no container"))),
        }

        let name = format!("adjunction naturality components -| constant along {uname}");
        let mut ok = true;
        for h in hom_set(y, &constant, budget)? {
            let hu = h.compose(u)?;
            let lhs = constant_transpose(x, &px, &hu);
            let rhs = constant_transpose(y, &py, &h).map(|im| {
                (0..px.count()).map(|k| im[u0[k]]).collect::<Vec<_>>()
            });
            if lhs != rhs {
                ok = false;
                break;
            }
        }
        rows.push(Check::from_bool(name, ok, "a transpose square does not commute"));

        let sx = global_sections(x, budget)?;
        let sy = global_sections(y, budget)?;
        let name = format!("adjunction naturality constant -| sections along {uname}");
        // sections map along u.
        let su: Vec<usize> = sx
            .iter()
            .map(|sec| {
                let image: Vec<usize> = base
                    .objects()
                    .map(|c| u.apply(c, sec[c.0]))
                    .collect();
                sy.iter().position(|t| *t == image).expect("maps carry sections")
            })
            .collect();
        let mut ok = true;
        for h in hom_set(&constant, x, budget)? {
            let uh = u.compose(&h)?;
            let lhs = sections_transpose(size, y, &sy, &uh);
            let rhs = sections_transpose(size, x, &sx, &h)
                .map(|im| im.into_iter().map(|s| su[s]).collect::<Vec<_>>());
            if lhs != rhs {
                ok = false;
                break;
            }
        }
        rows.push(Check::from_bool(name, ok, "a transpose square does not commute"));

        let name = format!("adjunction naturality sections -| cosections along {uname}");
        match &cosections {
            Some((g, split)) => {
                let (c1, eval_pos) = eval_slot(base, split);
                let mut ok = true;
                for h in hom_set(y, g, budget)? {
                    let hu = h.compose(u)?;
                    let lhs = cosections_transpose(&sx, g, &labels, c1, eval_pos, &hu);
                    let rhs = cosections_transpose(&sy, g, &labels, c1, eval_pos, &h)
                        .map(|im| su.iter().map(|&s| im[s]).collect::<Vec<_>>());
                    if lhs != rhs {
                        ok = false;
                        break;
                    }
                }
                rows.push(Check::from_bool(name, ok, "a transpose square does not commute"));
            }
            None => rows.push(Check::refused(name, local_reason.unwrap_or("not local"))),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::CheckStatus;
    use crate::fincat::CategoryBuilder;
    use crate::toposcalc::battery_core;

    #[test]
    fn arrow_adjunctions_all_pass() {
        let base = Arc::new(
            CategoryBuilder::new()
                .objects(["a", "b"])
                .morphism("f", "a", "b")
                .finish()
                .unwrap(),
        );
        let budget = Budget::default();
        let members = battery_core(&base, &budget).unwrap();
        let rows = adjunction_checks(&base, &members, &budget).unwrap();
        assert!(rows.len() >= 4 * 4 * members.len());
        for row in &rows {
            assert_ne!(
                row.status,
                CheckStatus::Fail,
                "{} failed: {:?}",
                row.name,
                row.witness
            );
        }
        assert!(rows.iter().any(|r| r.status == CheckStatus::Pass));
    }

    #[test]
    fn idempotent_monoid_adjunctions_all_pass() {
        let m = crate::fincat::validate_monoid(&crate::fincat::RawMonoid {
            elements: alloc::vec!["1".into(), "e".into()],
            unit: "1".into(),
            products: alloc::vec![("e".into(), "e".into(), "e".into())],
        })
        .unwrap();
        let base = Arc::new(m.to_category());
        let budget = Budget::default();
        let members = battery_core(&base, &budget).unwrap();
        let rows = adjunction_checks(&base, &members, &budget).unwrap();
        for row in &rows {
            assert_ne!(
                row.status,
                CheckStatus::Fail,
                "{} failed: {:?}",
                row.name,
                row.witness
            );
        }
    }

    #[test]
    fn disconnected_base_refuses_outer_rows() {
        let base = Arc::new(CategoryBuilder::new().objects(["a", "b"]).finish().unwrap());
        let budget = Budget::default();
        let members = battery_core(&base, &budget).unwrap();
        let rows = adjunction_checks(&base, &members, &budget).unwrap();
        assert!(rows
            .iter()
            .filter(|r| r.name.starts_with("adjunction copies"))
            .all(|r| r.status == CheckStatus::Refused));
        assert!(rows
            .iter()
            .filter(|r| r.name.starts_with("adjunction components"))
            .all(|r| r.status != CheckStatus::Refused));
    }
}

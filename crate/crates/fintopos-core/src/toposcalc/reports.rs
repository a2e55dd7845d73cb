//! Semantic check batteries.
//!
//! Each function returns one named [`Check`] row per verified statement.
//! Rows whose hypothesis does not hold come back `Refused`, never silently
//! dropped, so a report always has the same shape for the same input.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::check::Check;
use crate::fincat::FinCategory;
use crate::presheaf::{
    characteristic_map, equalizer, global_sections, hom_set, is_connected, omega, pi0, pi0_map,
    product, pushout, subobject_of_characteristic, subpresheaves, yoneda, Presheaf,
};

use super::adjunction::adjunction_checks;
use super::battery::BatteryMember;
use super::reflection::reflect_with;
use super::{classify_axioms, container_object, ToposError};

/// Members drawn into pairwise-quadratic checks.
const PAIR_CAP: usize = 8;
/// Parallel pairs drawn into equalizer preservation checks.
const EQUALIZER_CAP: usize = 12;
/// Surjections drawn into projectivity and epi checks.
const EPI_CAP: usize = 12;

fn pair_slice(members: &[BatteryMember]) -> &[BatteryMember] {
    &members[..members.len().min(PAIR_CAP)]
}

/// For every object pair, postcomposition is a bijection from base
/// morphisms to maps of representables.
pub fn yoneda_checks(
    base: &Arc<FinCategory>,
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let representables: Vec<Presheaf> = base.objects().map(|c| yoneda(base, c)).collect();
    let mut rows = Vec::new();
    for c in base.objects() {
        for d in base.objects() {
            let name = format!(
                "yoneda hom(y({}), y({}))",
                base.object_name(c),
                base.object_name(d)
            );
            let homs = hom_set(&representables[c.0], &representables[d.0], budget)?;
            let mut images: Vec<Vec<Vec<usize>>> = Vec::new();
            for &f in base.hom(c, d) {
                let components: Vec<Vec<usize>> = base
                    .objects()
                    .map(|e| {
                        base.hom(e, c)
                            .iter()
                            .map(|&g| {
                                let fg = base.compose(f, g).expect("composable");
                                base.hom(e, d)
                                    .iter()
                                    .position(|&h| h == fg)
                                    .expect("composite lands in hom(e, d)")
                            })
                            .collect()
                    })
                    .collect();
                images.push(components);
            }
            let count_ok = homs.len() == images.len();
            let mut injective = true;
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    if images[i] == images[j] {
                        injective = false;
                    }
                }
            }
            let all_present = images
                .iter()
                .all(|im| homs.iter().any(|h| h.components() == im.as_slice()));
            rows.push(Check::from_bool(
                name,
                count_ok && injective && all_present,
                format!(
                    "{} base morphisms vs {} natural maps",
                    base.hom(c, d).len(),
                    homs.len()
                ),
            ));
        }
    }
    Ok(rows)
}

/// Subobjects of each member correspond to characteristic maps into the
/// classifier, one to one, with the round trip restoring the subobject.
pub fn classifier_checks(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let omega_p = omega(base, budget)?;
    let mut rows = Vec::new();
    for m in members {
        let name = format!("classifier on {}", m.name);
        if m.presheaf.carrier_sizes().iter().any(|&n| n >= 64) {
            rows.push(Check::refused(name, "carrier too large to enumerate subobjects"));
            continue;
        }
        let subs = subpresheaves(&m.presheaf, budget)?;
        let homs = hom_set(&m.presheaf, &omega_p, budget)?;
        let mut ok = subs.len() == homs.len();
        let mut witness = format!("{} subobjects vs {} maps into Omega", subs.len(), homs.len());
        if ok {
            for sub in &subs {
                let chi = characteristic_map(&m.presheaf, sub, &omega_p)?;
                let back = subobject_of_characteristic(&m.presheaf, &chi)?;
                let same = base.objects().all(|c| back.elems(c) == sub.elems(c));
                if !same {
                    ok = false;
                    witness = String::from("round trip through the characteristic map moved a subobject");
                    break;
                }
                if !homs.iter().any(|h| h.components() == chi.components()) {
                    ok = false;
                    witness = String::from("a characteristic map is missing from the enumerated hom set");
                    break;
                }
            }
        }
        rows.push(Check::from_bool(name, ok, witness));
    }
    Ok(rows)
}

/// When the string is unbounded, components and sections agree in size on
/// every member.
pub fn pi0_sections_checks(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let report = classify_axioms(base, budget)?;
    let mut rows = Vec::new();
    for m in members {
        let name = format!("components match sections on {}", m.name);
        if !report.ax_inf {
            rows.push(Check::refused(name, "requires the unbounded string"));
            continue;
        }
        let components = pi0(&m.presheaf).count();
        let sections = global_sections(&m.presheaf, budget)?.len();
        rows.push(Check::from_bool(
            name,
            components == sections,
            format!("{components} components vs {sections} sections"),
        ));
    }
    Ok(rows)
}

/// Structural facts about the container object, verified against the
/// battery: connected, rigid, projective, never initial, and classifying
/// components of every member through its maps.
pub fn container_properties(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let witness = match container_object(base) {
        Ok(w) => w,
        Err(ToposError::NotCompletelyConnected { reason }) => {
            return Ok(alloc::vec![Check::refused("container exists", reason)]);
        }
        Err(e) => return Err(e),
    };
    let bx = &witness.container;
    let mut rows = Vec::new();
    rows.push(Check::pass("container exists"));
    rows.push(Check::from_bool(
        "container is connected",
        is_connected(bx),
        format!("{} components", pi0(bx).count()),
    ));
    rows.push(Check::from_bool(
        "container is not initial",
        !bx.is_empty(),
        "all carriers are empty",
    ));
    let endos = hom_set(bx, bx, budget)?.len();
    rows.push(Check::from_bool(
        "container is rigid",
        endos == 1,
        format!("{endos} endomorphisms"),
    ));

    let slice = pair_slice(members);
    let mut unique_ok = true;
    let mut unique_witness = String::new();
    let mut count_ok = true;
    let mut count_witness = String::new();
    let mut empty_ok = true;
    let mut empty_witness = String::new();
    for m in slice {
        let homs = hom_set(bx, &m.presheaf, budget)?;
        let components = pi0(&m.presheaf).count();
        if components == 1 && homs.len() != 1 {
            unique_ok = false;
            unique_witness = format!("{} admits {} maps from the container", m.name, homs.len());
        }
        if homs.len() != components {
            count_ok = false;
            count_witness = format!(
                "{}: {} maps vs {} components",
                m.name,
                homs.len(),
                components
            );
        }
        if homs.is_empty() != m.presheaf.is_empty() {
            empty_ok = false;
            empty_witness = format!("{} breaks the emptiness correspondence", m.name);
        }
    }
    rows.push(Check::from_bool(
        "unique map to each connected member",
        unique_ok,
        unique_witness,
    ));
    rows.push(Check::from_bool(
        "maps from container count components",
        count_ok,
        count_witness,
    ));
    rows.push(Check::from_bool(
        "no map from container only into nothing",
        empty_ok,
        empty_witness,
    ));

    // Projectivity: every surjection lifts against maps from the container.
    let mut projective_ok = true;
    let mut projective_witness = String::new();
    let mut seen = 0usize;
    'outer: for p in slice {
        for q in slice {
            if seen >= EPI_CAP {
                break 'outer;
            }
            let homs = hom_set(&p.presheaf, &q.presheaf, budget)?;
            let from_box_p = hom_set(bx, &p.presheaf, budget)?;
            let from_box_q = hom_set(bx, &q.presheaf, budget)?;
            for e in homs.iter().filter(|e| e.is_epic()) {
                if seen >= EPI_CAP {
                    break 'outer;
                }
                seen += 1;
                for h in &from_box_q {
                    let lifts = from_box_p
                        .iter()
                        .any(|g| match e.compose(g) {
                            Ok(eg) => eg.components() == h.components(),
                            Err(_) => false,
                        });
                    if !lifts {
                        projective_ok = false;
                        projective_witness = format!(
                            "a map into {} fails to lift along a surjection from {}",
                            q.name, p.name
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    rows.push(Check::from_bool(
        "container is projective",
        projective_ok,
        projective_witness,
    ));
    Ok(rows)
}

/// The components functor preserves the terminal object, binary products,
/// and equalizers whenever the container exists.
pub fn preservation_checks(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    if let Err(ToposError::NotCompletelyConnected { reason }) = container_object(base) {
        return Ok(alloc::vec![Check::refused(
            "components preserve finite limits",
            reason
        )]);
    }
    let mut rows = Vec::new();
    let one = crate::presheaf::terminal_presheaf(base);
    rows.push(Check::from_bool(
        "components of the terminal",
        pi0(&one).count() == 1,
        format!("{} components", pi0(&one).count()),
    ));

    let slice = pair_slice(members);
    for p in slice {
        for q in slice {
            let name = format!("components of {} x {}", p.name, q.name);
            let (apex, left, right) = product(&p.presheaf, &q.presheaf, budget)?;
            let pi_apex = pi0(&apex);
            let pi_p = pi0(&p.presheaf);
            let pi_q = pi0(&q.presheaf);
            let to_p = pi0_map(&left, &pi_apex, &pi_p);
            let to_q = pi0_map(&right, &pi_apex, &pi_q);
            let mut images: Vec<(usize, usize)> = (0..pi_apex.count())
                .map(|k| (to_p[k], to_q[k]))
                .collect();
            images.sort_unstable();
            let distinct = images.windows(2).all(|w| w[0] != w[1]);
            let ok = distinct && images.len() == pi_p.count() * pi_q.count();
            rows.push(Check::from_bool(
                name,
                ok,
                format!(
                    "{} product components vs {} x {}",
                    pi_apex.count(),
                    pi_p.count(),
                    pi_q.count()
                ),
            ));
        }
    }

    let mut seen = 0usize;
    'outer: for p in slice {
        for q in slice {
            if seen >= EQUALIZER_CAP {
                break 'outer;
            }
            let homs = hom_set(&p.presheaf, &q.presheaf, budget)?;
            for i in 0..homs.len() {
                for j in i..homs.len() {
                    if seen >= EQUALIZER_CAP {
                        break 'outer;
                    }
                    seen += 1;
                    let (u, v) = (&homs[i], &homs[j]);
                    let name = format!(
                        "components of an equalizer in hom({}, {}) [{i},{j}]",
                        p.name, q.name
                    );
                    let (eq, incl) = equalizer(u, v, budget)?;
                    let pi_eq = pi0(&eq);
                    let pi_p = pi0(&p.presheaf);
                    let pi_q = pi0(&q.presheaf);
                    let u0 = pi0_map(u, &pi_p, &pi_q);
                    let v0 = pi0_map(v, &pi_p, &pi_q);
                    let expected: Vec<usize> = (0..pi_p.count())
                        .filter(|&k| u0[k] == v0[k])
                        .collect();
                    let mut got: Vec<usize> = pi0_map(&incl, &pi_eq, &pi_p);
                    got.sort_unstable();
                    let distinct = got.windows(2).all(|w| w[0] != w[1]);
                    rows.push(Check::from_bool(
                        name,
                        distinct && got == expected,
                        format!(
                            "{} equalizer components vs {} fixed components",
                            pi_eq.count(),
                            expected.len()
                        ),
                    ));
                }
            }
        }
    }
    Ok(rows)
}

/// Objectwise surjectivity decides epimorphy: a map is epic exactly when
/// its two pushout injections along itself coincide.
pub fn epi_checks(
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let slice = pair_slice(members);
    let mut rows = Vec::new();
    let mut seen = 0usize;
    'outer: for p in slice {
        for q in slice {
            if seen >= EPI_CAP {
                break 'outer;
            }
            let homs = hom_set(&p.presheaf, &q.presheaf, budget)?;
            for (k, e) in homs.iter().enumerate() {
                if seen >= EPI_CAP {
                    break 'outer;
                }
                seen += 1;
                let (_, j1, j2) = pushout(e, e, budget)?;
                let cancellable = j1.components() == j2.components();
                rows.push(Check::from_bool(
                    format!("epi is surjective in hom({}, {}) [{k}]", p.name, q.name),
                    e.is_epic() == cancellable,
                    format!(
                        "objectwise surjective: {}, cokernel pair collapsed: {}",
                        e.is_epic(),
                        cancellable
                    ),
                ));
            }
        }
    }
    Ok(rows)
}

/// Reflections land in connected presheaves and are universal among maps
/// into connected members.
pub fn reflection_checks(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let witness = match container_object(base) {
        Ok(w) => w,
        Err(ToposError::NotCompletelyConnected { reason }) => {
            return Ok(alloc::vec![Check::refused("reflection exists", reason)]);
        }
        Err(e) => return Err(e),
    };
    let slice = pair_slice(members);
    let mut rows = Vec::new();
    for m in slice {
        let (reflected, unit) = reflect_with(&witness, &m.presheaf, budget)?;
        rows.push(Check::from_bool(
            format!("reflection of {} is connected", m.name),
            is_connected(&reflected),
            format!("{} components", pi0(&reflected).count()),
        ));
        let mut ok = true;
        let mut witness_text = String::new();
        for target in slice {
            if !is_connected(&target.presheaf) {
                continue;
            }
            let direct = hom_set(&m.presheaf, &target.presheaf, budget)?;
            let through = hom_set(&reflected, &target.presheaf, budget)?;
            let mut composed: Vec<Vec<Vec<usize>>> = Vec::new();
            for h in &through {
                composed.push(h.compose(&unit)?.components().to_vec());
            }
            composed.sort_unstable();
            let distinct = composed.windows(2).all(|w| w[0] != w[1]);
            let mut expected: Vec<Vec<Vec<usize>>> =
                direct.iter().map(|h| h.components().to_vec()).collect();
            expected.sort_unstable();
            if !(distinct && composed == expected) {
                ok = false;
                witness_text = format!(
                    "maps into {} do not correspond: {} direct vs {} through the reflection",
                    target.name,
                    direct.len(),
                    through.len()
                );
                break;
            }
        }
        rows.push(Check::from_bool(
            format!("reflection of {} is universal", m.name),
            ok,
            witness_text,
        ));
    }
    Ok(rows)
}

/// Every check battery in one list, for a whole-topos report.
pub fn full_report(
    base: &Arc<FinCategory>,
    members: &[BatteryMember],
    budget: &Budget,
) -> Result<Vec<Check>, ToposError> {
    let mut rows = yoneda_checks(base, budget)?;
    rows.extend(classifier_checks(base, members, budget)?);
    rows.extend(adjunction_checks(base, members, budget)?);
    rows.extend(pi0_sections_checks(base, members, budget)?);
    rows.extend(container_properties(base, members, budget)?);
    rows.extend(preservation_checks(base, members, budget)?);
    rows.extend(epi_checks(members, budget)?);
    rows.extend(reflection_checks(base, members, budget)?);
    Ok(rows)
}

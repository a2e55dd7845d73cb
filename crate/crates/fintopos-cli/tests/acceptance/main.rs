//! Release gate: one line per criterion, `acceptance <name>: PASS|FAIL`,
//! exiting nonzero when anything fails.  Run it with
//! `cargo test --test acceptance`.

mod gen;
mod oracle;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use fintopos_core::budget::Budget;
use fintopos_core::check::CheckStatus;
use fintopos_core::family::{closed_subtopos_test, detect_cone, family_round_trip};
use fintopos_core::fincat::{
    adjoin_initial, preorder_category, validate_monoid, CategoryBuilder, FinCategory, RawMonoid,
};
use fintopos_core::presheaf::{global_sections, hom_set, omega, pi0, subpresheaves};
use fintopos_core::sitespace::{
    cone_topology, min_nonempty_open, open_dense_point, site_class, trivial_topology,
    validate_space, validate_topology, RawSpace, SpaceError,
};
use fintopos_core::toposcalc::{
    adjunction_checks, battery_full, classify_axioms, container_object, duality_check, gamma2,
    gamma_minus2, preservation_checks, reflect_with, BatteryMember, StringLength,
};

use fintopos_cli::commands::{run, Invocation};
use fintopos_cli::report::Format;

type Criterion = fn() -> Result<(), String>;

fn main() -> ExitCode {
    let criteria: &[(&str, Criterion)] = &[
        ("walking-arrow-classification", walking_arrow_classification),
        ("two-element-monoid-unbounded", two_element_monoid_unbounded),
        ("representability-oracle", representability_oracle),
        ("container-properties", container_properties_suite),
        ("classifier-and-reflection", classifier_and_reflection),
        ("adjunction-strings", adjunction_strings),
        ("family-round-trips", family_round_trips),
        ("finite-space-dense-points", finite_space_dense_points),
        ("limit-preservation", limit_preservation),
        ("byte-determinism", byte_determinism),
    ];
    let mut all_passed = true;
    for (name, criterion) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| {
            let text = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panicked".to_string());
            Err(format!("panic: {text}"))
        });
        match outcome {
            Ok(()) => println!("acceptance {name}: PASS"),
            Err(why) => {
                all_passed = false;
                println!("acceptance {name}: FAIL");
                eprintln!("  {name}: {why}");
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, why: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

fn walking_arrow() -> Arc<FinCategory> {
    Arc::new(
        CategoryBuilder::new()
            .objects(["a", "b"])
            .morphism("f", "a", "b")
            .finish()
            .expect("the walking arrow validates"),
    )
}

/// The multiplicative monoid of the two-element field: unit `u`, absorbing
/// element `z`.
fn f2_monoid() -> Arc<FinCategory> {
    let raw = RawMonoid {
        elements: vec!["u".to_string(), "z".to_string()],
        unit: "u".to_string(),
        products: vec![("z".to_string(), "z".to_string(), "z".to_string())],
    };
    Arc::new(validate_monoid(&raw).expect("the table validates").to_category())
}

/// The chain with `n + 1` points `c0 <= ... <= cn`.
fn chain(n: usize) -> Arc<FinCategory> {
    let points: Vec<String> = (0..=n).map(|i| format!("c{i}")).collect();
    let rels: Vec<(String, String)> = (0..n)
        .map(|i| (format!("c{i}"), format!("c{}", i + 1)))
        .collect();
    Arc::new(preorder_category(&points, &rels).expect("chains validate"))
}

fn cone_over(base: &FinCategory) -> Arc<FinCategory> {
    Arc::new(adjoin_initial(base).category)
}

fn discrete(names: &[&str]) -> Arc<FinCategory> {
    Arc::new(
        CategoryBuilder::new()
            .objects(names.iter().copied())
            .finish()
            .expect("discrete categories validate"),
    )
}

/// Every completely connected fixture: the walking arrow, the two-element
/// multiplicative monoid, the chains with 2..=5 points, and cones over the
/// empty, terminal, discrete two-object, and walking arrow bases.
fn connected_fixtures() -> Vec<(String, Arc<FinCategory>)> {
    let empty = CategoryBuilder::new().finish().expect("the empty category validates");
    let point = CategoryBuilder::new().object("c").finish().expect("the point validates");
    let mut fixtures = vec![
        ("walking-arrow".to_string(), walking_arrow()),
        ("f2-monoid".to_string(), f2_monoid()),
    ];
    for n in 1..=4 {
        fixtures.push((format!("chain-{n}"), chain(n)));
    }
    fixtures.push(("cone-empty".to_string(), cone_over(&empty)));
    fixtures.push(("cone-point".to_string(), cone_over(&point)));
    fixtures.push(("cone-discrete-2".to_string(), cone_over(&discrete(&["a", "b"]))));
    fixtures.push(("cone-arrow".to_string(), cone_over(&walking_arrow())));
    fixtures
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

// Criterion 1: the walking arrow keeps both outer adjoints but not the
// unbounded string, and the outer functors on a two-element set have the
// advertised carrier sizes.
fn walking_arrow_classification() -> Result<(), String> {
    let base = walking_arrow();
    let budget = Budget::default();
    let report = classify_axioms(&base, &budget).map_err(|e| e.to_string())?;
    ensure(report.ax2, "the extra left adjoint should exist")?;
    ensure(report.ax_minus2, "the extra right adjoint should exist")?;
    ensure(!report.ax_inf, "the string should not be unbounded")?;
    ensure(
        report.string_length == StringLength::Finite(5),
        &format!("string length should be 5, got {}", report.string_length),
    )?;
    let set = labels(&["x", "y"]);
    let (copies, _) = gamma2(&base, &set, &budget).map_err(|e| e.to_string())?;
    ensure(
        copies.carrier_sizes() == [2, 0],
        &format!("copies of {{x,y}} should have sizes [2, 0], got {:?}", copies.carrier_sizes()),
    )?;
    let (cosections, _) = gamma_minus2(&base, &set, &budget).map_err(|e| e.to_string())?;
    ensure(
        cosections.carrier_sizes() == [1, 2],
        &format!(
            "cosections of {{x,y}} should have sizes [1, 2], got {:?}",
            cosections.carrier_sizes()
        ),
    )
}

// Criterion 2: the two-element multiplicative monoid has the unbounded
// string, and components equal sections in size on every battery member.
fn two_element_monoid_unbounded() -> Result<(), String> {
    let base = f2_monoid();
    let budget = Budget::default();
    let report = classify_axioms(&base, &budget).map_err(|e| e.to_string())?;
    ensure(report.ax_inf, "the string should be unbounded")?;
    let battery = battery_full(&base, &[], &budget).map_err(|e| e.to_string())?;
    ensure(
        battery.len() >= 10,
        &format!("battery should hold at least 10 members, got {}", battery.len()),
    )?;
    ensure(
        battery.iter().any(|m| m.name == "Omega"),
        "battery should include the classifier",
    )?;
    ensure(
        battery.iter().any(|m| m.name == "y(pt) x y(pt)"),
        "battery should include products of representables",
    )?;
    for m in &battery {
        let components = pi0(&m.presheaf).count();
        let sections = global_sections(&m.presheaf, &budget).map_err(|e| e.to_string())?.len();
        ensure(
            components == sections,
            &format!("{}: {components} components vs {sections} sections", m.name),
        )?;
    }
    Ok(())
}

// Criterion 3: over every generated small category, the completion route
// to the extra left adjoint agrees with the bounded representability
// search, and classification commutes with the opposite.
fn representability_oracle() -> Result<(), String> {
    let categories = gen::small_categories();
    ensure(
        categories.len() >= 50,
        &format!("need at least 50 generated categories, got {}", categories.len()),
    )?;
    let budget = Budget::default();
    let mut verdicts = [0usize; 2];
    for (name, base) in &categories {
        let report = classify_axioms(base, &budget).map_err(|e| format!("{name}: {e}"))?;
        let battery = fintopos_core::toposcalc::battery_core(base, &budget)
            .map_err(|e| format!("{name}: {e}"))?;
        let oracle_says = oracle::components_representable(base, &battery, &budget)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(
            report.ax2 == oracle_says,
            &format!(
                "{name}: completion route says {}, bounded search says {}",
                report.ax2, oracle_says
            ),
        )?;
        verdicts[usize::from(report.ax2)] += 1;
        let duality = duality_check(base, &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(duality.agree, &format!("{name}: classification disagrees with the dual"))?;
    }
    ensure(
        verdicts[0] > 0 && verdicts[1] > 0,
        &format!(
            "both verdicts should occur: {} without the adjoint, {} with it",
            verdicts[0], verdicts[1]
        ),
    )
}

// Criterion 4: on every completely connected fixture the container is
// connected, nontrivial, rigid, and counts components through its maps.
fn container_properties_suite() -> Result<(), String> {
    let budget = Budget::default();
    for (name, base) in connected_fixtures() {
        let witness = container_object(&base).map_err(|e| format!("{name}: {e}"))?;
        let bx = &witness.container;
        ensure(
            pi0(bx).count() == 1,
            &format!("{name}: container should have one component"),
        )?;
        ensure(!bx.is_empty(), &format!("{name}: container should not be initial"))?;
        let endos = hom_set(bx, bx, &budget).map_err(|e| format!("{name}: {e}"))?.len();
        ensure(
            endos == 1,
            &format!("{name}: container should have one endomorphism, got {endos}"),
        )?;
        let battery = battery_full(&base, &[], &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            battery.len() >= 10,
            &format!("{name}: battery should hold at least 10 members"),
        )?;
        for m in &battery {
            let maps = hom_set(bx, &m.presheaf, &budget).map_err(|e| format!("{name}: {e}"))?;
            let components = pi0(&m.presheaf).count();
            if components == 1 {
                ensure(
                    maps.len() == 1,
                    &format!(
                        "{name}: connected member {} should receive one map, got {}",
                        m.name,
                        maps.len()
                    ),
                )?;
            }
            ensure(
                maps.is_empty() == m.presheaf.is_empty(),
                &format!(
                    "{name}: maps into {} should exist exactly when it is not initial",
                    m.name
                ),
            )?;
        }
    }
    Ok(())
}

// Criterion 5: two subobjects of the container and two components of the
// classifier on every completely connected fixture; reflections are
// connected and restrict hom onto connected members bijectively.
fn classifier_and_reflection() -> Result<(), String> {
    let budget = Budget::default();
    for (name, base) in connected_fixtures() {
        let witness = container_object(&base).map_err(|e| format!("{name}: {e}"))?;
        let subs = subpresheaves(&witness.container, &budget)
            .map_err(|e| format!("{name}: {e}"))?
            .len();
        ensure(
            subs == 2,
            &format!("{name}: container should have two subobjects, got {subs}"),
        )?;
        let classifier = omega(&base, &budget).map_err(|e| format!("{name}: {e}"))?;
        let classes = pi0(&classifier).count();
        ensure(
            classes == 2,
            &format!("{name}: classifier should have two components, got {classes}"),
        )?;

        let battery = battery_full(&base, &[], &budget).map_err(|e| format!("{name}: {e}"))?;
        let members: Vec<&BatteryMember> = battery.iter().take(12).collect();
        ensure(members.len() >= 10, &format!("{name}: battery slice too small"))?;
        for m in &members {
            let (reflected, unit) =
                reflect_with(&witness, &m.presheaf, &budget).map_err(|e| format!("{name}: {e}"))?;
            ensure(
                pi0(&reflected).count() == 1,
                &format!("{name}: reflection of {} should be connected", m.name),
            )?;
            for target in &members {
                if pi0(&target.presheaf).count() != 1 {
                    continue;
                }
                let direct = hom_set(&m.presheaf, &target.presheaf, &budget)
                    .map_err(|e| format!("{name}: {e}"))?;
                let through = hom_set(&reflected, &target.presheaf, &budget)
                    .map_err(|e| format!("{name}: {e}"))?;
                let mut composed: Vec<Vec<Vec<usize>>> = Vec::with_capacity(through.len());
                for h in &through {
                    composed.push(
                        h.compose(&unit)
                            .map_err(|e| format!("{name}: {e}"))?
                            .components()
                            .to_vec(),
                    );
                }
                composed.sort_unstable();
                let distinct = composed.windows(2).all(|w| w[0] != w[1]);
                let mut expected: Vec<Vec<Vec<usize>>> =
                    direct.iter().map(|h| h.components().to_vec()).collect();
                expected.sort_unstable();
                ensure(
                    distinct && composed == expected,
                    &format!(
                        "{name}: maps from {} into {} do not factor bijectively",
                        m.name, target.name
                    ),
                )?;
            }
        }
    }
    Ok(())
}

// Criterion 6: every hom-count bijection and naturality row for the four
// adjacent adjunctions holds on every fixture; rows are refused only when
// the adjoint in question does not exist.
fn adjunction_strings() -> Result<(), String> {
    let budget = Budget::default();
    for (name, base) in connected_fixtures() {
        let report = classify_axioms(&base, &budget).map_err(|e| format!("{name}: {e}"))?;
        // The first dozen members keep every core presheaf while skipping
        // wide products, whose section sets make the cosections hom-count
        // astronomically large on the longer chains.
        let battery: Vec<BatteryMember> = battery_full(&base, &[], &budget)
            .map_err(|e| format!("{name}: {e}"))?
            .into_iter()
            .take(12)
            .collect();
        ensure(battery.len() >= 10, &format!("{name}: battery too small"))?;
        let rows = adjunction_checks(&base, &battery, &budget).map_err(|e| format!("{name}: {e}"))?;
        for row in &rows {
            ensure(
                row.status != CheckStatus::Fail,
                &format!("{name}: {} failed: {:?}", row.name, row.witness),
            )?;
            if row.status == CheckStatus::Refused {
                let about_copies = row.name.contains("copies");
                let about_cosections = row.name.contains("cosections");
                ensure(
                    (about_copies && !report.ax2) || (about_cosections && !report.ax_minus2),
                    &format!("{name}: {} refused although the adjoint exists", row.name),
                )?;
            }
        }
    }
    Ok(())
}

// Criterion 7: decomposing and recomposing battery presheaves over cone
// categories round-trips up to isomorphism, the three connectedness
// criteria agree, and the lifted topology is a completely connected site.
fn family_round_trips() -> Result<(), String> {
    let budget = Budget::default();
    let empty = CategoryBuilder::new().finish().expect("the empty category validates");
    let point = CategoryBuilder::new().object("c").finish().expect("the point validates");
    let arrow = walking_arrow();
    let bases: Vec<(&str, FinCategory)> = vec![
        ("empty", empty),
        ("point", point),
        ("arrow", (*arrow).clone()),
    ];
    for (name, c) in &bases {
        let ambient = cone_over(c);
        let cone = detect_cone(&ambient)
            .ok_or_else(|| format!("{name}: the cone should have a strict initial object"))?;
        let battery = battery_full(&ambient, &[], &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            battery.len() >= 20,
            &format!("{name}: need at least 20 presheaves, got {}", battery.len()),
        )?;
        for m in &battery {
            let trip = family_round_trip(&m.presheaf, &cone).map_err(|e| format!("{name}: {e}"))?;
            ensure(
                trip.is_iso(),
                &format!("{name}: round trip on {} is not an isomorphism", m.name),
            )?;
            let sub = closed_subtopos_test(&m.presheaf, &cone, &budget)
                .map_err(|e| format!("{name}: {e}"))?;
            for row in &sub.checks {
                ensure(
                    row.status == CheckStatus::Pass,
                    &format!("{name}: {} on {}: {:?}", row.name, m.name, row.witness),
                )?;
            }
        }

        let site = trivial_topology(&Arc::new(c.clone()));
        let (lifted, _) = cone_topology(&site);
        let covers: Vec<Vec<_>> = lifted
            .category()
            .objects()
            .map(|ob| lifted.covers(ob).to_vec())
            .collect();
        validate_topology(lifted.category(), covers, &budget)
            .map_err(|e| format!("{name}: lifted topology does not validate: {e}"))?;
        ensure(
            site_class(&lifted).completely_connected,
            &format!("{name}: the lifted site should be completely connected"),
        )?;
    }
    Ok(())
}

// Criterion 8: dense-point analysis of three standard spaces, the
// least-open agreement, and refusal of a space that cannot tell its
// points apart.
fn finite_space_dense_points() -> Result<(), String> {
    let space = |points: &[&str], opens: &[&[&str]]| -> RawSpace {
        RawSpace {
            points: points.iter().map(|s| s.to_string()).collect(),
            opens: opens.iter().map(|o| o.iter().map(|s| s.to_string()).collect()).collect(),
        }
    };
    let cases: Vec<(&str, RawSpace, Option<&str>)> = vec![
        (
            "sierpinski",
            space(&["x", "y"], &[&[], &["x"], &["x", "y"]]),
            Some("x"),
        ),
        (
            "discrete-2",
            space(&["x", "y"], &[&[], &["x"], &["y"], &["x", "y"]]),
            None,
        ),
        (
            "chain-3",
            space(&["x", "y", "z"], &[&[], &["x"], &["x", "y"], &["x", "y", "z"]]),
            Some("x"),
        ),
    ];
    for (name, raw, expected) in cases {
        let fin = validate_space(&raw).map_err(|e| format!("{name}: {e}"))?;
        let dense = open_dense_point(&fin).map_err(|e| format!("{name}: {e}"))?;
        let got = dense.map(|p| fin.point_name(p).to_string());
        ensure(
            got.as_deref() == expected,
            &format!("{name}: dense point should be {expected:?}, got {got:?}"),
        )?;
        let min = min_nonempty_open(&fin);
        let min_is_singleton = min.as_ref().is_some_and(|o| o.len() == 1);
        ensure(
            min_is_singleton == dense.is_some(),
            &format!("{name}: least-open and dense-point verdicts disagree"),
        )?;
        if let (Some(open), Some(p)) = (min, dense) {
            ensure(open == [p], &format!("{name}: the least open is not the dense singleton"))?;
        }
    }
    let glued = validate_space(&space(&["l", "r"], &[&[], &["l", "r"]]))
        .map_err(|e| format!("non-t0: {e}"))?;
    match open_dense_point(&glued) {
        Err(SpaceError::NotT0 { .. }) => Ok(()),
        other => Err(format!("non-t0 space should be refused, got {other:?}")),
    }
}

// Criterion 9: components preserve the terminal object, products, and
// equalizers on every completely connected fixture, and the check refuses
// outright on bases without the container.
fn limit_preservation() -> Result<(), String> {
    let budget = Budget::default();
    for (name, base) in connected_fixtures() {
        let battery = battery_full(&base, &[], &budget).map_err(|e| format!("{name}: {e}"))?;
        let rows = preservation_checks(&base, &battery, &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(!rows.is_empty(), &format!("{name}: no preservation rows"))?;
        for row in &rows {
            ensure(
                row.status == CheckStatus::Pass,
                &format!("{name}: {}: {:?}", row.name, row.witness),
            )?;
        }
    }
    let two_unit_monoid = {
        let raw = RawMonoid {
            elements: vec!["e".to_string(), "g".to_string()],
            unit: "e".to_string(),
            products: vec![("g".to_string(), "g".to_string(), "e".to_string())],
        };
        Arc::new(validate_monoid(&raw).expect("the table validates").to_category())
    };
    for (name, base) in [
        ("discrete-2".to_string(), discrete(&["a", "b"])),
        ("order-2-group".to_string(), two_unit_monoid),
    ] {
        let battery = battery_full(&base, &[], &budget).map_err(|e| format!("{name}: {e}"))?;
        let rows = preservation_checks(&base, &battery, &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            rows.len() == 1 && rows[0].status == CheckStatus::Refused,
            &format!("{name}: expected one refused row, got {} rows", rows.len()),
        )?;
    }
    Ok(())
}

// Criterion 10: the whole command corpus renders byte-identically across
// two runs.
fn byte_determinism() -> Result<(), String> {
    let source = "
category A { objects a b; arrow f : a -> b }
monoid F2 { elements u z; unit u; table { z*z=z; z*u=z; u*z=z; u*u=u } }
poset V { points x y z; rel x <= y; rel x <= z }
poset C3 { points c0 c1 c2; rel c0 <= c1; rel c1 <= c2 }
space S { points x y; opens {} {x} {x, y} }
space N { points x y z; opens {} {x} {x, y} {x, y, z} }
site J over A { cover b : { f } }
presheaf P over A { at a : { m }; at b : { n, o }; act f : n -> m; act f : o -> m }
presheaf Q over A { at a : { w } }
presheaf R over F2 { at pt : { s, t }; act z : s -> s; act z : t -> s }
family F over A { index i j; member i = P; member j = Q }
";
    let invocations: Vec<(&str, Option<&str>)> = vec![
        ("validate", None),
        ("classify", Some("A")),
        ("classify", Some("F2")),
        ("classify", Some("V")),
        ("classify", Some("C3")),
        ("container", Some("A")),
        ("omega", Some("A")),
        ("pi0", Some("P")),
        ("sections", Some("P")),
        ("gamma", Some("A")),
        ("reflect", Some("P")),
        ("fam", Some("P")),
        ("fam", Some("F")),
        ("site", Some("J")),
        ("space", Some("S")),
        ("space", Some("N")),
        ("props", Some("F2")),
        ("battery", Some("A")),
    ];
    let render_all = || -> Result<Vec<String>, String> {
        let sources = vec![("corpus.dsl".to_string(), source.to_string())];
        invocations
            .iter()
            .map(|(command, target)| {
                let inv = Invocation {
                    command: command.to_string(),
                    target: target.map(|t| t.to_string()),
                    budget: Budget::default(),
                    battery: Vec::new(),
                    labels: labels(&["x", "y"]),
                };
                run(&sources, &inv)
                    .map(|r| r.render(Format::Json))
                    .map_err(|e| format!("{command}: {e}"))
            })
            .collect()
    };
    let first = render_all()?;
    let second = render_all()?;
    ensure(first == second, "two runs rendered different bytes")?;
    let digests: BTreeSet<&String> = first.iter().collect();
    ensure(digests.len() == invocations.len(), "distinct invocations collapsed")?;
    Ok(())
}

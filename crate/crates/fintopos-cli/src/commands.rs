//! Command dispatch: each command resolves its target in the workspace,
//! runs the corresponding core operations, and collects check rows plus a
//! value map into a [`Report`].

use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use fintopos_core::budget::Budget;
use fintopos_core::check::Check;
use fintopos_core::family::{
    closed_subtopos_test, decompose_family, detect_cone, family_round_trip, FamilyObject,
};
use fintopos_core::fincat::adjoin_initial;
use fintopos_core::presheaf::{
    global_sections, hom_set, omega, pi0, validate_presheaf, PresheafError,
};
use fintopos_core::sitespace::{
    describe_covers, irreducible_objects, min_nonempty_open, open_dense_point, site_class,
    SpaceError,
};
use fintopos_core::toposcalc::{
    battery_full, classifier_checks, classify_axioms, connected_reflection, container_object,
    describe_split, duality_check, gamma0, gamma2, gamma_minus2, BatteryMember, ToposError,
};

use crate::dsl::{parse_dsl, Decl, SyntaxError};
use crate::report::{input_digest, Report};
use crate::workspace::{resolve, resolve_all, ResolveError, Workspace};

pub const COMMANDS: &[&str] = &[
    "validate", "classify", "container", "omega", "pi0", "sections", "gamma", "reflect", "fam",
    "site", "space", "props", "battery",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandError {
    UnknownCommand { name: String },
    UnknownName { wanted: &'static str, name: String },
    MissingTarget { command: String },
    Invalid { message: String },
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::UnknownCommand { name } => {
                write!(f, "unknown command `{name}` (commands: {})", COMMANDS.join(", "))
            }
            CommandError::UnknownName { wanted, name } => {
                write!(f, "no {wanted} named `{name}` in the workspace")
            }
            CommandError::MissingTarget { command } => {
                write!(f, "command `{command}` needs a target name")
            }
            CommandError::Invalid { message } => f.write_str(message),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: String,
    pub target: Option<String>,
    pub budget: Budget,
    /// Extra battery members (presheaf names) for `props` and `battery`.
    pub battery: Vec<String>,
    /// Label set for `gamma`.
    pub labels: Vec<String>,
}

#[derive(Debug)]
pub enum RunError {
    Syntax { file: String, error: SyntaxError },
    Resolve(ResolveError),
    Command(CommandError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Syntax { file, error } => write!(f, "{file}: {error}"),
            RunError::Resolve(e) => e.fmt(f),
            RunError::Command(e) => e.fmt(f),
        }
    }
}

impl From<CommandError> for RunError {
    fn from(e: CommandError) -> Self {
        RunError::Command(e)
    }
}

/// Parses the sources, resolves the workspace, and runs one command.
pub fn run(sources: &[(String, String)], inv: &Invocation) -> Result<Report, RunError> {
    let digest = input_digest(&sources.iter().map(|(_, text)| text.as_str()).collect::<Vec<_>>());
    let mut decls = Vec::new();
    for (file, text) in sources {
        let parsed = parse_dsl(text).map_err(|error| RunError::Syntax {
            file: file.clone(),
            error,
        })?;
        decls.extend(parsed);
    }

    if inv.command == "validate" {
        let (ws, mut checks) = resolve_all(decls, &inv.budget);
        if let Some(target) = &inv.target {
            if !ws.decls.iter().any(|d| d.name() == target) {
                return Err(CommandError::UnknownName {
                    wanted: "declaration",
                    name: target.clone(),
                }
                .into());
            }
            let keep: Vec<String> = ws
                .decls
                .iter()
                .filter(|d| d.name() == target)
                .map(|d| format!("{} {}", d.kind(), d.name()))
                .collect();
            checks.retain(|c| keep.contains(&c.name));
        }
        let mut values = Map::new();
        values.insert("categories".into(), Value::from(ws.categories.len()));
        values.insert("monoids".into(), Value::from(ws.monoids.len()));
        values.insert("presheaves".into(), Value::from(ws.presheaves.len()));
        values.insert("sites".into(), Value::from(ws.sites.len()));
        values.insert("spaces".into(), Value::from(ws.spaces.len()));
        values.insert("families".into(), Value::from(ws.families.len()));
        return Ok(Report::new("validate", &digest, checks, values));
    }

    if !COMMANDS.contains(&inv.command.as_str()) {
        return Err(CommandError::UnknownCommand {
            name: inv.command.clone(),
        }
        .into());
    }
    let ws = resolve(decls, &inv.budget).map_err(RunError::Resolve)?;
    let target = inv.target.as_deref().ok_or_else(|| CommandError::MissingTarget {
        command: inv.command.clone(),
    })?;

    let (checks, values) = match inv.command.as_str() {
        "classify" => classify_cmd(&ws, target, &inv.budget)?,
        "container" => container_cmd(&ws, target, &inv.budget)?,
        "omega" => omega_cmd(&ws, target, &inv.budget)?,
        "pi0" => pi0_cmd(&ws, target)?,
        "sections" => sections_cmd(&ws, target, &inv.budget)?,
        "gamma" => gamma_cmd(&ws, target, &inv.labels, &inv.budget)?,
        "reflect" => reflect_cmd(&ws, target, &inv.budget)?,
        "fam" => fam_cmd(&ws, target, &inv.budget)?,
        "site" => site_cmd(&ws, target)?,
        "space" => space_cmd(&ws, target)?,
        "props" => props_cmd(&ws, target, &inv.battery, &inv.budget)?,
        "battery" => battery_cmd(&ws, target, &inv.battery, &inv.budget)?,
        _ => unreachable!(),
    };
    Ok(Report::new(&inv.command, &digest, checks, values))
}

type Rows = (Vec<Check>, Map<String, Value>);

fn category<'w>(
    ws: &'w Workspace,
    name: &str,
) -> Result<&'w Arc<fintopos_core::fincat::FinCategory>, CommandError> {
    ws.categories.get(name).ok_or(CommandError::UnknownName {
        wanted: "category",
        name: name.into(),
    })
}

fn presheaf<'w>(
    ws: &'w Workspace,
    name: &str,
) -> Result<&'w crate::workspace::ResolvedPresheaf, CommandError> {
    ws.presheaves.get(name).ok_or(CommandError::UnknownName {
        wanted: "presheaf",
        name: name.into(),
    })
}

fn names(items: impl IntoIterator<Item = impl Into<String>>) -> Value {
    Value::Array(items.into_iter().map(|s| Value::from(s.into())).collect())
}

fn sizes(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&n| Value::from(n)).collect())
}

/// Turns a topos-level error into a check row: refusals for budget and
/// precondition problems, a failure otherwise.
fn topos_error_check(name: &str, e: &ToposError) -> Check {
    match e {
        ToposError::NotCompletelyConnected { reason } | ToposError::NotLocal { reason } => {
            Check::refused(name, reason.clone())
        }
        ToposError::Guard(g) => Check::refused(name, g.to_string()),
        ToposError::Presheaf(p) => Check::fail(name, p.to_string()),
    }
}

fn presheaf_error_check(name: &str, e: &PresheafError) -> Check {
    match e {
        PresheafError::Guard(g) => Check::refused(name, g.to_string()),
        other => Check::fail(name, other.to_string()),
    }
}

fn classify_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    let base = category(ws, target)?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    match classify_axioms(base, budget) {
        Ok(report) => {
            values.insert("connected".into(), Value::from(report.connected));
            values.insert("ax2".into(), Value::from(report.ax2));
            values.insert("ax_minus2".into(), Value::from(report.ax_minus2));
            values.insert("ax_inf".into(), Value::from(report.ax_inf));
            // The string is straight at level three and beyond.
            values.insert("ax3".into(), Value::from(report.ax_inf));
            values.insert("ax_minus3".into(), Value::from(report.ax_inf));
            values.insert(
                "string_length".into(),
                Value::from(report.string_length.to_string()),
            );
            if let Some(s) = &report.initial_split {
                values.insert("initial_split".into(), Value::from(describe_split(base, s)));
            }
            if let Some(s) = &report.terminal_split {
                values.insert("terminal_split".into(), Value::from(describe_split(base, s)));
            }
            if let Some(s) = &report.zero_split {
                values.insert("zero_split".into(), Value::from(describe_split(base, s)));
            }
            if let Some(s) = &report.container_sizes {
                values.insert("container_sizes".into(), sizes(s));
            }
            if let Some(n) = report.container_sections {
                values.insert("container_sections".into(), Value::from(n));
            }
            checks.push(Check::from_bool(
                "zero object route agrees with the section route",
                report.routes_agree,
                format!(
                    "zero object: {}, container sections: {:?}",
                    report.ax_inf, report.container_sections
                ),
            ));
            match duality_check(base, budget) {
                Ok(d) => checks.push(Check::from_bool(
                    "classification agrees with the dual base",
                    d.agree,
                    "the dual base swaps the outer axioms differently",
                )),
                Err(e) => checks.push(topos_error_check("classification agrees with the dual base", &e)),
            }
        }
        Err(e) => checks.push(topos_error_check("classification", &e)),
    }
    Ok((checks, values))
}

fn container_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    let base = category(ws, target)?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    match container_object(base) {
        Ok(w) => {
            checks.push(Check::pass("container exists"));
            values.insert("split".into(), Value::from(describe_split(base, &w.split)));
            values.insert("sizes".into(), sizes(&w.container.carrier_sizes()));
            values.insert("components".into(), Value::from(pi0(&w.container).count()));
            let mut elements = Map::new();
            for c in base.objects() {
                elements.insert(
                    base.object_name(c).to_string(),
                    names(w.container.elems(c).iter().cloned()),
                );
            }
            values.insert("elements".into(), Value::Object(elements));
            match hom_set(&w.container, &w.container, budget) {
                Ok(endos) => {
                    values.insert("endomorphisms".into(), Value::from(endos.len()));
                }
                Err(e) => checks.push(presheaf_error_check("container endomorphisms", &e)),
            }
            match global_sections(&w.container, budget) {
                Ok(secs) => {
                    values.insert("sections".into(), Value::from(secs.len()));
                }
                Err(e) => checks.push(presheaf_error_check("container sections", &e)),
            }
        }
        Err(e) => checks.push(topos_error_check("container exists", &e)),
    }
    Ok((checks, values))
}

fn omega_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    let base = category(ws, target)?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    match omega(base, budget) {
        Ok(om) => {
            values.insert("sizes".into(), sizes(&om.carrier_sizes()));
            values.insert("components".into(), Value::from(pi0(&om).count()));
            let mut elements = Map::new();
            for c in base.objects() {
                elements.insert(
                    base.object_name(c).to_string(),
                    names(om.elems(c).iter().cloned()),
                );
            }
            values.insert("elements".into(), Value::Object(elements));
        }
        Err(e) => checks.push(presheaf_error_check("subobject classifier", &e)),
    }
    match fintopos_core::toposcalc::battery_core(base, budget) {
        Ok(members) => match classifier_checks(base, &members, budget) {
            Ok(rows) => checks.extend(rows),
            Err(e) => checks.push(topos_error_check("classifier battery", &e)),
        },
        Err(e) => checks.push(topos_error_check("classifier battery", &e)),
    }
    Ok((checks, values))
}

fn pi0_cmd(ws: &Workspace, target: &str) -> Result<Rows, CommandError> {
    let p = presheaf(ws, target)?;
    let pi = pi0(&p.presheaf);
    let base = p.presheaf.base();
    let mut classes: Vec<Vec<String>> = vec![Vec::new(); pi.count()];
    for c in base.objects() {
        for (x, name) in p.presheaf.elems(c).iter().enumerate() {
            classes[pi.class_of[c.0][x]].push(format!("{}:{}", base.object_name(c), name));
        }
    }
    let mut values = Map::new();
    values.insert("over".into(), Value::from(p.over.clone()));
    values.insert("count".into(), Value::from(pi.count()));
    values.insert(
        "classes".into(),
        Value::Array(classes.into_iter().map(names).collect()),
    );
    Ok((Vec::new(), values))
}

fn sections_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    let p = presheaf(ws, target)?;
    let base = p.presheaf.base();
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert("over".into(), Value::from(p.over.clone()));
    values.insert(
        "objects".into(),
        names(base.objects().map(|c| base.object_name(c).to_string())),
    );
    match global_sections(&p.presheaf, budget) {
        Ok(secs) => {
            values.insert("count".into(), Value::from(secs.len()));
            let rendered: Vec<Value> = secs
                .iter()
                .map(|s| {
                    names(
                        base.objects()
                            .map(|c| p.presheaf.elem_name(c, s[c.0]).to_string()),
                    )
                })
                .collect();
            values.insert("sections".into(), Value::Array(rendered));
        }
        Err(e) => checks.push(presheaf_error_check("global sections", &e)),
    }
    Ok((checks, values))
}

fn gamma_cmd(
    ws: &Workspace,
    target: &str,
    labels: &[String],
    budget: &Budget,
) -> Result<Rows, CommandError> {
    let base = category(ws, target)?;
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(CommandError::Invalid {
                message: format!("label `{l}` given twice"),
            });
        }
    }
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert("labels".into(), names(labels.iter().cloned()));
    values.insert(
        "gamma0_sizes".into(),
        sizes(&gamma0(base, labels).carrier_sizes()),
    );
    match gamma2(base, labels, budget) {
        Ok((g2, witness)) => {
            checks.push(Check::pass("copies functor exists"));
            values.insert("gamma2_sizes".into(), sizes(&g2.carrier_sizes()));
            values.insert(
                "initial_split".into(),
                Value::from(describe_split(base, &witness.split)),
            );
        }
        Err(e) => checks.push(topos_error_check("copies functor exists", &e)),
    }
    match gamma_minus2(base, labels, budget) {
        Ok((gm2, split)) => {
            checks.push(Check::pass("cosections functor exists"));
            values.insert("gamma_minus2_sizes".into(), sizes(&gm2.carrier_sizes()));
            values.insert(
                "terminal_split".into(),
                Value::from(describe_split(base, &split)),
            );
        }
        Err(e) => checks.push(topos_error_check("cosections functor exists", &e)),
    }
    Ok((checks, values))
}

fn reflect_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    let p = presheaf(ws, target)?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert("over".into(), Value::from(p.over.clone()));
    values.insert(
        "components_before".into(),
        Value::from(pi0(&p.presheaf).count()),
    );
    match connected_reflection(&p.presheaf, budget) {
        Ok((l, unit)) => {
            let after = pi0(&l).count();
            values.insert("components_after".into(), Value::from(after));
            values.insert("sizes".into(), sizes(&l.carrier_sizes()));
            values.insert("unit_is_iso".into(), Value::from(unit.is_iso()));
            checks.push(Check::from_bool(
                "reflection is connected",
                after == 1,
                format!("{after} components"),
            ));
        }
        Err(e) => checks.push(topos_error_check("reflection exists", &e)),
    }
    Ok((checks, values))
}

fn fam_cmd(ws: &Workspace, target: &str, budget: &Budget) -> Result<Rows, CommandError> {
    if let Some(p) = ws.presheaves.get(target) {
        return fam_decompose(p, budget);
    }
    if let Some(decl) = ws.families.get(target).cloned() {
        return fam_recompose(ws, &decl, budget);
    }
    Err(CommandError::UnknownName {
        wanted: "presheaf or family",
        name: target.into(),
    })
}

fn fam_decompose(
    p: &crate::workspace::ResolvedPresheaf,
    budget: &Budget,
) -> Result<Rows, CommandError> {
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert("over".into(), Value::from(p.over.clone()));
    let Some(cone) = detect_cone(p.presheaf.base()) else {
        checks.push(Check::refused(
            "base is a cone",
            "the base category has no strict initial object",
        ));
        return Ok((checks, values));
    };
    checks.push(Check::pass("base is a cone"));
    values.insert(
        "initial_object".into(),
        Value::from(cone.ambient.object_name(cone.init).to_string()),
    );
    match decompose_family(&p.presheaf, &cone) {
        Ok(family) => {
            values.insert("index".into(), names(family.index.iter().cloned()));
            let mut member_sizes = Map::new();
            for (i, m) in family.index.iter().zip(&family.members) {
                member_sizes.insert(i.clone(), sizes(&m.carrier_sizes()));
            }
            values.insert("member_sizes".into(), Value::Object(member_sizes));
            checks.push(Check::from_bool(
                "components count the index",
                pi0(&p.presheaf).count() == family.index.len(),
                format!(
                    "{} components, index of size {}",
                    pi0(&p.presheaf).count(),
                    family.index.len()
                ),
            ));
        }
        Err(e) => checks.push(Check::fail("family decomposition", e.to_string())),
    }
    match family_round_trip(&p.presheaf, &cone) {
        Ok(nat) => checks.push(Check::from_bool(
            "decompose then recompose is isomorphic",
            nat.is_iso(),
            "the canonical comparison is not invertible",
        )),
        Err(e) => checks.push(Check::fail(
            "decompose then recompose is isomorphic",
            e.to_string(),
        )),
    }
    match closed_subtopos_test(&p.presheaf, &cone, budget) {
        Ok(report) => {
            values.insert("absorbed_by_container".into(), Value::from(report.absorbed));
            values.insert("singleton_index".into(), Value::from(report.singleton_index));
            values.insert("connected".into(), Value::from(report.connected));
            checks.extend(report.checks);
        }
        Err(e) => checks.push(Check::fail("closed subtopos criteria", e.to_string())),
    }
    Ok((checks, values))
}

fn fam_recompose(
    ws: &Workspace,
    decl: &crate::dsl::FamilyDecl,
    budget: &Budget,
) -> Result<Rows, CommandError> {
    let base = category(ws, &decl.over)?;
    let ambient = Arc::new(adjoin_initial(base).category);
    let cone = detect_cone(&ambient).expect("adjoined cones have a strict initial");
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert("over".into(), Value::from(decl.over.clone()));
    values.insert("index".into(), names(decl.index.iter().cloned()));

    // Rebuild the members over the cone's own copy of the base so the
    // family machinery sees one shared category value.
    let mut members = Vec::new();
    for i in &decl.index {
        let member_name = &decl
            .members
            .iter()
            .find(|(j, _)| j == i)
            .expect("resolution checked completeness")
            .1;
        let Some(Decl::Presheaf(pd)) = ws
            .decls
            .iter()
            .find(|d| d.name() == member_name.as_str() && matches!(d, Decl::Presheaf(_)))
        else {
            return Err(CommandError::UnknownName {
                wanted: "presheaf",
                name: member_name.clone(),
            });
        };
        let raw = crate::workspace::raw_presheaf(pd);
        match validate_presheaf(&cone.base, &raw) {
            Ok(p) => members.push(p),
            Err(e) => {
                checks.push(Check::fail(
                    format!("member `{member_name}` lifts to the cone"),
                    e.to_string(),
                ));
                return Ok((checks, values));
            }
        }
    }
    let family = FamilyObject {
        index: decl.index.clone(),
        members,
    };
    let recomposed = match fintopos_core::family::recompose_family(&family, &cone) {
        Ok(p) => p,
        Err(e) => {
            checks.push(Check::fail("family recomposition", e.to_string()));
            return Ok((checks, values));
        }
    };
    values.insert("sizes".into(), sizes(&recomposed.carrier_sizes()));
    values.insert(
        "ambient_objects".into(),
        names(
            cone.ambient
                .objects()
                .map(|c| cone.ambient.object_name(c).to_string()),
        ),
    );
    checks.push(Check::from_bool(
        "components count the index",
        pi0(&recomposed).count() == decl.index.len(),
        format!(
            "{} components, index of size {}",
            pi0(&recomposed).count(),
            decl.index.len()
        ),
    ));
    match family_round_trip(&recomposed, &cone) {
        Ok(nat) => checks.push(Check::from_bool(
            "decompose then recompose is isomorphic",
            nat.is_iso(),
            "the canonical comparison is not invertible",
        )),
        Err(e) => checks.push(Check::fail(
            "decompose then recompose is isomorphic",
            e.to_string(),
        )),
    }
    match closed_subtopos_test(&recomposed, &cone, budget) {
        Ok(report) => {
            values.insert("absorbed_by_container".into(), Value::from(report.absorbed));
            values.insert("singleton_index".into(), Value::from(report.singleton_index));
            values.insert("connected".into(), Value::from(report.connected));
            checks.extend(report.checks);
        }
        Err(e) => checks.push(Check::fail("closed subtopos criteria", e.to_string())),
    }
    Ok((checks, values))
}

fn site_cmd(ws: &Workspace, target: &str) -> Result<Rows, CommandError> {
    let s = ws.sites.get(target).ok_or(CommandError::UnknownName {
        wanted: "site",
        name: target.into(),
    })?;
    let mut values = Map::new();
    values.insert("over".into(), Value::from(s.over.clone()));
    let mut covers = Map::new();
    for (obj, sieves) in describe_covers(&s.site) {
        covers.insert(obj, names(sieves));
    }
    values.insert("covers".into(), Value::Object(covers));
    let cat = s.site.category();
    values.insert(
        "irreducibles".into(),
        names(
            irreducible_objects(&s.site)
                .into_iter()
                .map(|c| cat.object_name(c).to_string()),
        ),
    );
    let class = site_class(&s.site);
    values.insert(
        "completely_connected".into(),
        Value::from(class.completely_connected),
    );
    values.insert("local".into(), Value::from(class.local));
    let checks = vec![Check::pass("topology axioms hold")];
    Ok((checks, values))
}

fn space_cmd(ws: &Workspace, target: &str) -> Result<Rows, CommandError> {
    let sp = ws.spaces.get(target).ok_or(CommandError::UnknownName {
        wanted: "space",
        name: target.into(),
    })?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    values.insert(
        "points".into(),
        names((0..sp.point_count()).map(|p| sp.point_name(p).to_string())),
    );
    values.insert(
        "opens".into(),
        names(sp.opens().iter().map(|o| sp.open_name(o))),
    );
    let min = min_nonempty_open(sp);
    if let Some(m) = &min {
        values.insert("min_nonempty_open".into(), Value::from(sp.open_name(m)));
    }
    match open_dense_point(sp) {
        Ok(dense) => {
            if let Some(p) = dense {
                values.insert("dense_point".into(), Value::from(sp.point_name(p).to_string()));
            }
            let agree = match (&min, dense) {
                (Some(m), Some(p)) => m.len() == 1 && m[0] == p,
                (Some(m), None) => m.len() != 1,
                (None, None) => true,
                (None, Some(_)) => false,
            };
            checks.push(Check::from_bool(
                "least nonempty open matches the open dense point",
                agree,
                format!(
                    "least open {:?}, dense point {:?}",
                    min.as_ref().map(|m| sp.open_name(m)),
                    dense.map(|p| sp.point_name(p).to_string())
                ),
            ));
        }
        Err(SpaceError::NotT0 { left, right }) => checks.push(Check::refused(
            "least nonempty open matches the open dense point",
            format!("not T0: `{left}` and `{right}` share all opens"),
        )),
        Err(e) => checks.push(Check::fail(
            "least nonempty open matches the open dense point",
            e.to_string(),
        )),
    }
    Ok((checks, values))
}

fn battery_members(
    ws: &Workspace,
    target: &str,
    extra: &[String],
    budget: &Budget,
) -> Result<Result<Vec<BatteryMember>, ToposError>, CommandError> {
    let base = category(ws, target)?;
    let mut extras = Vec::new();
    for name in extra {
        let p = presheaf(ws, name)?;
        if p.over != target {
            return Err(CommandError::Invalid {
                message: format!(
                    "battery member `{name}` lives over `{}`, not `{target}`",
                    p.over
                ),
            });
        }
        extras.push((name.clone(), p.presheaf.clone()));
    }
    Ok(battery_full(base, &extras, budget))
}

fn props_cmd(
    ws: &Workspace,
    target: &str,
    extra: &[String],
    budget: &Budget,
) -> Result<Rows, CommandError> {
    let base = category(ws, target)?;
    let mut checks = Vec::new();
    let mut values = Map::new();
    match battery_members(ws, target, extra, budget)? {
        Ok(members) => {
            values.insert(
                "battery".into(),
                names(members.iter().map(|m| m.name.clone())),
            );
            match fintopos_core::toposcalc::full_report(base, &members, budget) {
                Ok(rows) => checks.extend(rows),
                Err(e) => checks.push(topos_error_check("property suite", &e)),
            }
        }
        Err(e) => checks.push(topos_error_check("battery", &e)),
    }
    Ok((checks, values))
}

fn battery_cmd(
    ws: &Workspace,
    target: &str,
    extra: &[String],
    budget: &Budget,
) -> Result<Rows, CommandError> {
    let mut checks = Vec::new();
    let mut values = Map::new();
    match battery_members(ws, target, extra, budget)? {
        Ok(members) => {
            let mut table = Map::new();
            for m in &members {
                let mut row = Map::new();
                row.insert("sizes".into(), sizes(&m.presheaf.carrier_sizes()));
                row.insert("components".into(), Value::from(pi0(&m.presheaf).count()));
                match global_sections(&m.presheaf, budget) {
                    Ok(secs) => {
                        row.insert("sections".into(), Value::from(secs.len()));
                    }
                    Err(e) => checks.push(presheaf_error_check(
                        &format!("sections of {}", m.name),
                        &e,
                    )),
                }
                table.insert(m.name.clone(), Value::Object(row));
            }
            values.insert("members".into(), Value::Object(table));
        }
        Err(e) => checks.push(topos_error_check("battery", &e)),
    }
    Ok((checks, values))
}

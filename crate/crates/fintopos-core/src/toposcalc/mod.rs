//! Adjoint-string classification of presheaf topoi.
//!
//! The components/sections string of a presheaf topos always contains
//! `pi0 -| const -| sections`.  This module decides how far it extends:
//!
//! * a further left adjoint of `pi0` exists exactly when the Cauchy
//!   completion of the base has an initial object (the topos is then
//!   completely connected, and the representable of that initial object is
//!   the container object),
//! * a further right adjoint of `sections` exists exactly when the Cauchy
//!   completion has a terminal object (the topos is local),
//! * both extend without end exactly when the Cauchy completion has a zero
//!   object, which also happens exactly when the container object has a
//!   global section.
//!
//! All verdicts come with witnesses: the split idempotent presenting the
//! initial or terminal completion object, the container carriers, or the
//! obstruction that refutes the axiom.

mod adjunction;
mod battery;
mod reflection;
mod reports;

pub use adjunction::adjunction_checks;
pub use battery::{battery_core, battery_full, BatteryMember};
pub use reflection::{connected_reflection, reflect_with};
pub use reports::{
    classifier_checks, container_properties, epi_checks, full_report, pi0_sections_checks,
    preservation_checks, reflection_checks, yoneda_checks,
};

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{Budget, SizeGuardExceeded};
use crate::fincat::{cauchy_completion, FinCategory, MorId, SplitIdempotent};
use crate::presheaf::{
    constant_presheaf, copower, global_sections, NatTrans, Presheaf, PresheafError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToposError {
    /// The topos has no extra left adjoint: no container object exists.
    NotCompletelyConnected { reason: String },
    /// The topos has no extra right adjoint beyond sections.
    NotLocal { reason: String },
    Guard(SizeGuardExceeded),
    Presheaf(PresheafError),
}

impl From<SizeGuardExceeded> for ToposError {
    fn from(g: SizeGuardExceeded) -> Self {
        ToposError::Guard(g)
    }
}

impl From<PresheafError> for ToposError {
    fn from(e: PresheafError) -> Self {
        match e {
            PresheafError::Guard(g) => ToposError::Guard(g),
            other => ToposError::Presheaf(other),
        }
    }
}

impl fmt::Display for ToposError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToposError::NotCompletelyConnected { reason } => {
                write!(f, "the topos is not completely connected: {reason}")
            }
            ToposError::NotLocal { reason } => write!(f, "the topos is not local: {reason}"),
            ToposError::Guard(g) => g.fmt(f),
            ToposError::Presheaf(e) => e.fmt(f),
        }
    }
}

/// The container object of a completely connected presheaf topos, together
/// with the split idempotent presenting the initial completion object.
#[derive(Debug, Clone)]
pub struct ContainerWitness {
    pub split: SplitIdempotent,
    pub container: Presheaf,
}

/// How far the adjoint string extends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringLength {
    Finite(u8),
    Infinite,
}

impl fmt::Display for StringLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringLength::Finite(n) => write!(f, "{n}"),
            StringLength::Infinite => write!(f, "infinite"),
        }
    }
}

/// Classification of one presheaf topos.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// The topos of presheaves on the base is connected (the terminal
    /// presheaf has exactly one component); false for the empty base.
    pub connected: bool,
    /// A further left adjoint of components exists.
    pub ax2: bool,
    /// A further right adjoint of sections exists.
    pub ax_minus2: bool,
    /// The string extends without end in both directions.
    pub ax_inf: bool,
    pub initial_split: Option<SplitIdempotent>,
    pub terminal_split: Option<SplitIdempotent>,
    pub zero_split: Option<SplitIdempotent>,
    /// Container carrier sizes in object order, when the container exists.
    pub container_sizes: Option<Vec<usize>>,
    /// Number of global sections of the container, when it exists.
    pub container_sections: Option<usize>,
    /// The zero-object route and the container-section route to the
    /// unbounded string agree.
    pub routes_agree: bool,
    pub string_length: StringLength,
}

fn split_name(base: &FinCategory, s: &SplitIdempotent) -> String {
    format!(
        "({} @ {})",
        base.object_name(s.carrier),
        base.morphism_name(s.idempotent)
    )
}

/// Witness text for a split idempotent in the base category.
pub fn describe_split(base: &FinCategory, s: &SplitIdempotent) -> String {
    split_name(base, s)
}

/// Finds the container object: the restriction along the completion
/// embedding of the representable on the initial completion object.
///
/// Elements over `c` are the base morphisms `f: c -> c0` with
/// `e0 ∘ f = f`; the action is precomposition.
pub fn container_object(base: &Arc<FinCategory>) -> Result<ContainerWitness, ToposError> {
    let cc = cauchy_completion(base);
    let initials = cc.category.initial_objects();
    let Some(&first) = initials.first() else {
        return Err(ToposError::NotCompletelyConnected {
            reason: obstruction_text(base, &cc.category, true),
        });
    };
    let split = cc.split(first);
    Ok(ContainerWitness {
        split,
        container: container_from_split(base, &split),
    })
}

fn container_from_split(base: &Arc<FinCategory>, split: &SplitIdempotent) -> Presheaf {
    let c0 = split.carrier;
    let e0 = split.idempotent;
    let members: Vec<Vec<MorId>> = base
        .objects()
        .map(|c| {
            base.hom(c, c0)
                .iter()
                .copied()
                .filter(|&f| base.compose(e0, f) == Some(f))
                .collect()
        })
        .collect();
    let carrier: Vec<Vec<String>> = members
        .iter()
        .map(|fs| {
            fs.iter()
                .map(|&f| String::from(base.morphism_name(f)))
                .collect()
        })
        .collect();
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|g| {
            let (a, b) = (base.dom(g), base.cod(g));
            members[b.0]
                .iter()
                .map(|&f| {
                    let fg = base.compose(f, g).expect("cod g = dom f");
                    members[a.0]
                        .iter()
                        .position(|&h| h == fg)
                        .expect("precomposition preserves the fixing condition")
                })
                .collect()
        })
        .collect();
    Presheaf::from_tables(base.clone(), carrier, action).expect("the container is a presheaf")
}

fn obstruction_text(base: &FinCategory, completion: &FinCategory, initial: bool) -> String {
    let kind = if initial { "initial" } else { "terminal" };
    if completion.object_count() == 0 {
        return format!("the Cauchy completion is empty, so it has no {kind} object");
    }
    // Witness: for every candidate, one hom set violating unique existence.
    let mut reason = format!("no split idempotent is {kind}:");
    for cand in completion.objects() {
        if let Some(d) = completion.objects().find(|&d| {
            let n = if initial {
                completion.hom(cand, d).len()
            } else {
                completion.hom(d, cand).len()
            };
            n != 1
        }) {
            let n = if initial {
                completion.hom(cand, d).len()
            } else {
                completion.hom(d, cand).len()
            };
            let (from, to) = if initial { (cand, d) } else { (d, cand) };
            reason.push_str(&format!(
                " hom({}, {}) has {} elements;",
                completion.object_name(from),
                completion.object_name(to),
                n
            ));
        }
    }
    let _ = base;
    reason.pop();
    reason
}

/// The left-most functor `gamma_2`: the `labels`-fold copower of the
/// container, with one copy per label.
pub fn gamma2(
    base: &Arc<FinCategory>,
    labels: &[String],
    budget: &Budget,
) -> Result<(Presheaf, ContainerWitness), ToposError> {
    let witness = container_object(base)?;
    let (apex, _) = copower(&witness.container, labels, budget)?;
    Ok((apex, witness))
}

/// `gamma_0`: the constant presheaf.
pub fn gamma0(base: &Arc<FinCategory>, labels: &[String]) -> Presheaf {
    constant_presheaf(base, labels)
}

/// The right-most functor `gamma_{-2}`: over `c`, all functions from the
/// completion morphisms out of the terminal split into `labels`.
///
/// Elements over `c` are written `[v1,...,vk]`, listing one label per
/// completion morphism in morphism order.
pub fn gamma_minus2(
    base: &Arc<FinCategory>,
    labels: &[String],
    budget: &Budget,
) -> Result<(Presheaf, SplitIdempotent), ToposError> {
    let cc = cauchy_completion(base);
    let terminals = cc.category.terminal_objects();
    let Some(&term) = terminals.first() else {
        return Err(ToposError::NotLocal {
            reason: obstruction_text(base, &cc.category, false),
        });
    };
    let split = cc.split(term);
    let (c1, e1) = (split.carrier, split.idempotent);
    // exponent[c]: morphisms c1 -> c with f ∘ e1 = f.
    let exponent: Vec<Vec<MorId>> = base
        .objects()
        .map(|c| {
            base.hom(c1, c)
                .iter()
                .copied()
                .filter(|&f| base.compose(f, e1) == Some(f))
                .collect()
        })
        .collect();
    let mut counter = budget.counter();
    let k = labels.len();
    let mut carrier: Vec<Vec<String>> = Vec::with_capacity(base.object_count());
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::with_capacity(base.object_count());
    for c in base.objects() {
        let arity = exponent[c.0].len();
        let mut funcs: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        for _ in 0..arity {
            let mut next = Vec::new();
            for f in &funcs {
                for v in 0..k {
                    counter.tick()?;
                    let mut g = f.clone();
                    g.push(v);
                    next.push(g);
                }
            }
            funcs = next;
        }
        let names = funcs
            .iter()
            .map(|f| {
                let vals: Vec<&str> = f.iter().map(|&v| labels[v].as_str()).collect();
                format!("[{}]", vals.join(","))
            })
            .collect();
        carrier.push(names);
        tables.push(funcs);
    }
    let action: Vec<Vec<usize>> = base
        .morphisms()
        .map(|g| {
            let (a, b) = (base.dom(g), base.cod(g));
            tables[b.0]
                .iter()
                .map(|phi| {
                    // (phi ∘ (g ∘ -)) on the exponent over a.
                    let image: Vec<usize> = exponent[a.0]
                        .iter()
                        .map(|&f| {
                            let gf = base.compose(g, f).expect("cod f = dom g");
                            let pos = exponent[b.0]
                                .iter()
                                .position(|&h| h == gf)
                                .expect("postcomposition preserves the fixing condition");
                            phi[pos]
                        })
                        .collect();
                    tables[a.0]
                        .iter()
                        .position(|t| *t == image)
                        .expect("all functions are present")
                })
                .collect()
        })
        .collect();
    let p = Presheaf::from_tables(base.clone(), carrier, action)
        .expect("the cosections presheaf is functorial");
    Ok((p, split))
}

/// Classifies the topos of presheaves on `base`.
pub fn classify_axioms(base: &Arc<FinCategory>, budget: &Budget) -> Result<AxiomReport, ToposError> {
    let cc = cauchy_completion(base);
    let initial = cc.category.initial_objects().first().map(|&c| cc.split(c));
    let terminal = cc.category.terminal_objects().first().map(|&c| cc.split(c));
    let zero = cc.category.zero_objects().first().map(|&c| cc.split(c));
    let ax2 = initial.is_some();
    let ax_minus2 = terminal.is_some();
    let ax_inf = zero.is_some();

    let mut container_sizes = None;
    let mut container_sections = None;
    let mut section_route = false;
    if let Some(split) = initial {
        let container = container_from_split(base, &split);
        container_sizes = Some(container.carrier_sizes());
        let sections = global_sections(&container, budget)?;
        container_sections = Some(sections.len());
        section_route = !sections.is_empty();
    }
    let routes_agree = ax_inf == section_route;

    let string_length = if ax_inf {
        StringLength::Infinite
    } else if ax2 && ax_minus2 {
        StringLength::Finite(5)
    } else if ax2 || ax_minus2 {
        StringLength::Finite(4)
    } else {
        StringLength::Finite(3)
    };

    Ok(AxiomReport {
        connected: base.is_connected(),
        ax2,
        ax_minus2,
        ax_inf,
        initial_split: initial,
        terminal_split: terminal,
        zero_split: zero,
        container_sizes,
        container_sections,
        routes_agree,
        string_length,
    })
}

/// Classification of a base against its opposite: the extra left adjoint
/// for one is the extra right adjoint for the other.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub forward: AxiomReport,
    pub backward: AxiomReport,
    pub agree: bool,
}

pub fn duality_check(base: &Arc<FinCategory>, budget: &Budget) -> Result<DualityReport, ToposError> {
    let forward = classify_axioms(base, budget)?;
    let op = Arc::new(base.opposite());
    let backward = classify_axioms(&op, budget)?;
    let agree = forward.ax2 == backward.ax_minus2
        && forward.ax_minus2 == backward.ax2
        && forward.ax_inf == backward.ax_inf;
    Ok(DualityReport {
        forward,
        backward,
        agree,
    })
}

/// The canonical natural transformation `hom(container, -) -> pi0`, which
/// the extra left adjoint makes bijective: each map from the container
/// lands inside a single component.
pub fn container_to_component(
    witness: &ContainerWitness,
    x: &Presheaf,
    budget: &Budget,
) -> Result<(Vec<NatTrans>, Vec<usize>), ToposError> {
    let homs = crate::presheaf::hom_set(&witness.container, x, budget)?;
    let p0 = crate::presheaf::pi0(x);
    let c0 = witness.split.carrier;
    let e0_idx = witness
        .container
        .elem_index(
            c0,
            x.base().morphism_name(witness.split.idempotent),
        )
        .expect("the idempotent fixes itself");
    let classes = homs
        .iter()
        .map(|h| p0.class_of[c0.0][h.apply(c0, e0_idx)])
        .collect();
    Ok((homs, classes))
}

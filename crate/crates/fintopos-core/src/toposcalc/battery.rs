//! Standard families of test presheaves.
//!
//! Checks that quantify over "all presheaves" are run against a battery:
//! every representable, the terminal and initial presheaves, the subobject
//! classifier, the container when it exists, and optionally binary products
//! and coproducts of those together with caller-supplied extras.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::fincat::FinCategory;
use crate::presheaf::{
    coproduct, initial_presheaf, omega, product, terminal_presheaf, yoneda, Presheaf,
};

use super::{container_object, ToposError};

#[derive(Debug, Clone)]
pub struct BatteryMember {
    pub name: String,
    pub presheaf: Presheaf,
}

impl BatteryMember {
    fn new(name: String, presheaf: Presheaf) -> Self {
        BatteryMember { name, presheaf }
    }
}

/// Representables, `1`, `0`, `Omega`, and `box` when the container exists.
pub fn battery_core(
    base: &Arc<FinCategory>,
    budget: &Budget,
) -> Result<Vec<BatteryMember>, ToposError> {
    let mut members = Vec::new();
    for c in base.objects() {
        members.push(BatteryMember::new(
            format!("y({})", base.object_name(c)),
            yoneda(base, c),
        ));
    }
    members.push(BatteryMember::new(String::from("1"), terminal_presheaf(base)));
    members.push(BatteryMember::new(String::from("0"), initial_presheaf(base)));
    members.push(BatteryMember::new(
        String::from("Omega"),
        omega(base, budget)?,
    ));
    if let Ok(w) = container_object(base) {
        members.push(BatteryMember::new(String::from("box"), w.container));
    }
    Ok(members)
}

/// The core battery extended by binary products and coproducts of core
/// members and by caller extras.  Product and coproduct names follow the
/// members they combine, as in `y(a) x Omega` and `1 + box`.
pub fn battery_full(
    base: &Arc<FinCategory>,
    extras: &[(String, Presheaf)],
    budget: &Budget,
) -> Result<Vec<BatteryMember>, ToposError> {
    let core = battery_core(base, budget)?;
    let mut members = core.clone();
    for i in 0..core.len() {
        for j in i..core.len() {
            let (apex, _, _) = product(&core[i].presheaf, &core[j].presheaf, budget)?;
            members.push(BatteryMember::new(
                format!("{} x {}", core[i].name, core[j].name),
                apex,
            ));
        }
    }
    for i in 0..core.len() {
        for j in i..core.len() {
            let (apex, _, _) = coproduct(&core[i].presheaf, &core[j].presheaf, budget)?;
            members.push(BatteryMember::new(
                format!("{} + {}", core[i].name, core[j].name),
                apex,
            ));
        }
    }
    for (name, p) in extras {
        members.push(BatteryMember::new(name.clone(), p.clone()));
    }
    Ok(members)
}

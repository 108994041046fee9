//! Turning a [`SystemSpec`] into live structures, and checking them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::action::{verify_simply_transitive, ChiBijection};
use crate::dsl::{ChiSpec, HSpec, PhiSpec, SystemMode, SystemSpec, ZetaSpec};
use crate::error::{AlgebraError, GroupoidError};
use crate::extension::{check_cocycle, Cocycle2, ExtensionGroup, GroupAction};
use crate::group::{CayleyTable, FiniteGroup};
use crate::groupoid::{
    check_groupoid_cocycle, ActionFunctor, FormalInversionGroupoid, GroupoidCocycle,
    GroupoidExtension, HMorphism, TranspositionGroupoid,
};
use crate::groupoid_action::GroupoidChi;
use crate::neo_riemannian::NeoRiemannian;
use crate::pcs::{PcSetType, PitchClass};

#[derive(Clone, Debug)]
pub struct GroupSystem {
    pub group: Arc<ExtensionGroup>,
    pub chi: ChiBijection,
    /// Present when the system is the standard major/minor D24 one.
    pub neo_riemannian: Option<NeoRiemannian>,
}

#[derive(Clone, Debug)]
pub struct GroupoidSystem {
    pub ext: Arc<GroupoidExtension>,
    /// Absent when the anchor does not reach every object.
    pub chi: Option<GroupoidChi>,
}

#[derive(Clone, Debug)]
pub enum System {
    Group(GroupSystem),
    Groupoid(GroupoidSystem),
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// Names of the axioms that fail; empty when the check passes.
    pub failures: Vec<String>,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, detail: impl Into<String>) -> Self {
        Self {
            name,
            failures,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub summary: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn strings(v: Vec<&str>) -> Vec<String> {
    v.into_iter().map(String::from).collect()
}

fn types_of(spec: &SystemSpec) -> Vec<Arc<PcSetType>> {
    spec.types
        .iter()
        .map(|t| {
            Arc::new(
                PcSetType::new(t.name.clone(), t.intervals.clone(), spec.modulus)
                    .expect("validated by the parser"),
            )
        })
        .collect()
}

impl System {
    /// Builds without checking axioms, except that a tabulated `H` must be a
    /// group.
    pub fn build(spec: &SystemSpec) -> Result<Self, AlgebraError> {
        match spec.mode {
            SystemMode::Group => build_group(spec).map(System::Group),
            SystemMode::Groupoid => build_groupoid(spec).map(System::Groupoid),
        }
    }

    pub fn verify(&self) -> VerifyReport {
        match self {
            System::Group(g) => verify_group_system(g),
            System::Groupoid(g) => verify_groupoid_system(g),
        }
    }
}

fn build_group(spec: &SystemSpec) -> Result<GroupSystem, AlgebraError> {
    let types = types_of(spec);
    let z = Arc::new(FiniteGroup::cyclic(spec.modulus as usize, "z"));
    let h = Arc::new(match &spec.h {
        HSpec::Cyclic { names } => FiniteGroup::cyclic_named(names.len(), names.clone()),
        HSpec::Table { names, rows } => {
            FiniteGroup::from_table(CayleyTable::new(rows.clone(), names.clone())?)?
        }
        _ => {
            return Err(AlgebraError::Shape(
                "group systems need `h = cyclic <n>` or `h = table`".into(),
            ))
        }
    });
    let index = |name: &str| h.index_of(name).expect("validated by the parser");
    let phi = match &spec.phi {
        PhiSpec::Trivial => GroupAction::trivial(h.clone(), z.clone()),
        PhiSpec::Inverse => GroupAction::inverse(h.clone(), z.clone()),
        PhiSpec::Explicit(entries) => {
            let mut units = vec![1i64; h.order()];
            for e in entries {
                units[index(&e.on[0])] = e.unit as i64;
            }
            GroupAction::from_units(h.clone(), z.clone(), &units)?
        }
    };
    let mut zeta = Cocycle2::trivial(&h, &z);
    if let ZetaSpec::Explicit(entries) = &spec.zeta {
        for e in entries {
            zeta.set(index(&e.at[0]), index(&e.at[1]), e.value as usize);
        }
    }
    let group = Arc::new(ExtensionGroup::new_unchecked(phi, zeta)?);
    let ChiSpec::Group {
        root,
        types: chi_types,
    } = &spec.chi
    else {
        return Err(AlgebraError::Shape(
            "group systems need a group `chi`".into(),
        ));
    };
    let ordered = chi_types
        .iter()
        .map(|n| {
            types
                .iter()
                .find(|t| t.name() == n)
                .expect("validated by the parser")
                .clone()
        })
        .collect();
    let chi = ChiBijection::new(
        group.clone(),
        PitchClass::new(*root as i64, spec.modulus),
        ordered,
    )
    .map_err(|e| AlgebraError::Shape(e.to_string()))?;
    let neo_riemannian = NeoRiemannian::recognize(&chi);
    Ok(GroupSystem {
        group,
        chi,
        neo_riemannian,
    })
}

fn build_groupoid(spec: &SystemSpec) -> Result<GroupoidSystem, AlgebraError> {
    let types = types_of(spec);
    let z = Arc::new(FiniteGroup::cyclic(spec.modulus as usize, "z"));
    let id = |name: &str| {
        types
            .iter()
            .position(|t| t.name() == name)
            .expect("validated by the parser")
    };
    let unwrap = |e: GroupoidError| match e {
        GroupoidError::Algebra(a) => a,
        other => AlgebraError::Shape(other.to_string()),
    };
    let h = match &spec.h {
        HSpec::Complete => FormalInversionGroupoid::complete(types.clone()),
        HSpec::Classes(classes) => {
            let classes: Vec<Vec<usize>> = classes
                .iter()
                .map(|c| c.iter().map(|n| id(n)).collect())
                .collect();
            FormalInversionGroupoid::from_classes(types.clone(), &classes).map_err(unwrap)?
        }
        _ => {
            return Err(AlgebraError::Shape(
                "groupoid systems need `h = complete` or `h = classes`".into(),
            ))
        }
    };
    let phi = match &spec.phi {
        PhiSpec::Trivial => ActionFunctor::trivial(&h, &z),
        PhiSpec::Inverse => ActionFunctor::inverse(&h, &z),
        PhiSpec::Explicit(entries) => {
            let units: BTreeMap<HMorphism, i64> = entries
                .iter()
                .map(|e| (HMorphism::new(id(&e.on[0]), id(&e.on[1])), e.unit as i64))
                .collect();
            ActionFunctor::from_units(&h, &z, &units).map_err(unwrap)?
        }
    };
    let mut zeta = GroupoidCocycle::trivial(&h, &z);
    if let ZetaSpec::Explicit(entries) = &spec.zeta {
        for e in entries {
            let (x, y, w) = (id(&e.at[0]), id(&e.at[1]), id(&e.at[2]));
            zeta.set(
                &h,
                HMorphism::new(y, w),
                HMorphism::new(x, y),
                e.value as usize,
            )
            .map_err(unwrap)?;
        }
    }
    let zg = TranspositionGroupoid::new(types.clone(), z).map_err(unwrap)?;
    let ext = Arc::new(GroupoidExtension::new_unchecked(zg, h, phi, zeta).map_err(unwrap)?);
    let ChiSpec::Groupoid {
        root,
        anchor,
        variance,
    } = &spec.chi
    else {
        return Err(AlgebraError::Shape(
            "groupoid systems need a groupoid `chi`".into(),
        ));
    };
    let chi = GroupoidChi::new(
        ext.clone(),
        id(anchor),
        *variance,
        PitchClass::new(*root as i64, spec.modulus),
    )
    .ok();
    Ok(GroupoidSystem { ext, chi })
}

fn verify_group_system(s: &GroupSystem) -> VerifyReport {
    let g = &s.group;
    let mut checks = vec![Check::new(
        "H group",
        vec![],
        format!("order {}", g.h_group().order()),
    )];
    let action = g.phi().check();
    checks.push(Check::new(
        "phi action",
        strings(action.failures()),
        "homomorphism H -> Aut(Z)",
    ));
    let cocycle = check_cocycle(g.zeta(), g.phi());
    checks.push(Check::new(
        "zeta cocycle",
        strings(cocycle.failures()),
        format!("{} violating triples", cocycle.violations.len()),
    ));
    let report = g.verify_group();
    checks.push(Check::new(
        "extension group",
        strings(report.failures()),
        format!("{} elements", g.order()),
    ));
    let chords = s.chi.chords().len();
    let (left, right) = verify_simply_transitive(&s.chi);
    for (name, r) in [("left action", left), ("right action", right)] {
        let failures = if r.simply_transitive() {
            vec![]
        } else {
            vec!["simple transitivity".to_string()]
        };
        checks.push(Check::new(
            name,
            failures,
            format!("simply transitive on {chords} chords"),
        ));
    }
    if let Some(nr) = &s.neo_riemannian {
        let p = nr.verify_presentations();
        checks.push(Check::new(
            "presentations",
            strings(p.failures()),
            format!("{} relations", p.relations.len()),
        ));
    }
    VerifyReport {
        checks,
        summary: format!(
            "{} elements, simply transitive on {} chords",
            g.order(),
            chords
        ),
    }
}

fn verify_groupoid_system(s: &GroupoidSystem) -> VerifyReport {
    let ext = &s.ext;
    let report = ext.verify();
    let mut checks = vec![
        Check::new(
            "phi functor",
            strings(report.functor.failures()),
            format!("{} morphisms of H", ext.h_groupoid().morphisms().len()),
        ),
        Check::new(
            "zeta cocycle",
            strings(
                check_groupoid_cocycle(ext.zeta(), ext.phi(), ext.h_groupoid(), ext.z()).failures(),
            ),
            "cocycle condition",
        ),
    ];
    let structural: Vec<String> = report
        .failures()
        .into_iter()
        .filter(|f| {
            !report.functor.failures().contains(f) && !report.cocycle.failures().contains(f)
        })
        .map(String::from)
        .collect();
    checks.push(Check::new(
        "groupoid axioms",
        structural,
        format!(
            "{} morphisms, {} composable triples",
            report.morphisms, report.composable_triples
        ),
    ));
    match &s.chi {
        Some(chi) => {
            let chords = chi.chords();
            let ms = ext.morphisms();
            let unique = chords.iter().all(|p| {
                chords.iter().all(|q| {
                    ms.iter()
                        .filter(|&&g| chi.act(g, p).ok().as_ref() == Some(q))
                        .count()
                        == 1
                })
            });
            checks.push(Check::new(
                "hom action",
                if unique {
                    vec![]
                } else {
                    vec!["unique morphism per chord pair".to_string()]
                },
                format!("{} on {} chords", chi.variance(), chords.len()),
            ));
        }
        None => checks.push(Check::new(
            "hom action",
            vec![],
            "anchor does not reach every object; skipped",
        )),
    }
    let pass = if checks[1].passed() { "pass" } else { "fail" };
    VerifyReport {
        summary: format!(
            "{} objects, {} morphisms, cocycle condition {pass}",
            ext.objects().len(),
            report.morphisms
        ),
        checks,
    }
}

//! Groupoid extensions `1 → 𝒵 → 𝒢 → ℋ → 1`.
//!
//! Objects are chord types. `𝒵` gives each type its own copy of the
//! transposition group `Z`; `ℋ` is a thin groupoid of formal inversions, at
//! most one `h_XY` per ordered pair. A morphism of `𝒢` is `(z, h)` with `z` a
//! transposition of the codomain of `h`, and composition reads right to left:
//!
//! ```text
//! (z2, h2) · (z1, h1) = (z2 · φ_h2(z1) · ζ(h2, h1), h2 · h1)    (h1 first)
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, GroupoidError};
use crate::group::FiniteGroup;
use crate::pcs::PcSetType;

pub type ObjectId = usize;

/// `𝒵`: a disjoint union of copies of `Z`, one per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionGroupoid {
    objects: Vec<Arc<PcSetType>>,
    z: Arc<FiniteGroup>,
}

impl TranspositionGroupoid {
    pub fn new(objects: Vec<Arc<PcSetType>>, z: Arc<FiniteGroup>) -> Result<Self, GroupoidError> {
        if objects.is_empty() {
            return Err(GroupoidError::NotAGroupoid("no objects".into()));
        }
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].iter().any(|p| p.name() == o.name()) {
                return Err(GroupoidError::NotAGroupoid(format!(
                    "object `{}` repeated",
                    o.name()
                )));
            }
        }
        Ok(Self { objects, z })
    }

    pub fn objects(&self) -> &[Arc<PcSetType>] {
        &self.objects
    }

    /// The endomorphism group shared by every object.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.z
    }

    /// `Hom(X, Y)` is empty unless `X = Y`.
    pub fn hom_is_empty(&self, x: ObjectId, y: ObjectId) -> bool {
        x != y
    }
}

/// A morphism `h_XY` of the formal-inversion groupoid (`h_XX` is the identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HMorphism {
    pub dom: ObjectId,
    pub cod: ObjectId,
}

impl HMorphism {
    pub fn new(dom: ObjectId, cod: ObjectId) -> Self {
        Self { dom, cod }
    }

    pub fn is_identity(self) -> bool {
        self.dom == self.cod
    }

    pub fn inverse(self) -> Self {
        Self::new(self.cod, self.dom)
    }
}

/// `ℋ`: a thin groupoid, equivalently a partition of the objects into
/// connected components with `h_XY` present exactly when `X` and `Y` share a
/// component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalInversionGroupoid {
    objects: Vec<Arc<PcSetType>>,
    component: Vec<usize>,
}

impl FormalInversionGroupoid {
    /// Every ordered pair linked.
    pub fn complete(objects: Vec<Arc<PcSetType>>) -> Self {
        let component = vec![0; objects.len()];
        Self { objects, component }
    }

    /// One component per class; every object must appear exactly once.
    pub fn from_classes(
        objects: Vec<Arc<PcSetType>>,
        classes: &[Vec<ObjectId>],
    ) -> Result<Self, GroupoidError> {
        let mut component = vec![usize::MAX; objects.len()];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= objects.len() {
                    return Err(GroupoidError::UnknownObject(format!("#{x}")));
                }
                if component[x] != usize::MAX {
                    return Err(GroupoidError::NotAGroupoid(format!(
                        "object `{}` in two classes",
                        objects[x].name()
                    )));
                }
                component[x] = c;
            }
        }
        if let Some(x) = component.iter().position(|&c| c == usize::MAX) {
            return Err(GroupoidError::NotAGroupoid(format!(
                "object `{}` in no class",
                objects[x].name()
            )));
        }
        Ok(Self { objects, component })
    }

    /// From explicit generator edges; the edge set must already be closed
    /// under inverses and composition.
    pub fn from_edges(
        objects: Vec<Arc<PcSetType>>,
        edges: &[(ObjectId, ObjectId)],
    ) -> Result<Self, GroupoidError> {
        let n = objects.len();
        let mut linked = vec![false; n * n];
        for i in 0..n {
            linked[i * n + i] = true;
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GroupoidError::UnknownObject(format!("#{}", a.max(b))));
            }
            linked[a * n + b] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if linked[a * n + b] && !linked[b * n + a] {
                    return Err(GroupoidError::NotAGroupoid(format!(
                        "h_{}{} has no inverse",
                        objects[a].name(),
                        objects[b].name()
                    )));
                }
                for c in 0..n {
                    if linked[a * n + b] && linked[b * n + c] && !linked[a * n + c] {
                        return Err(GroupoidError::NotAGroupoid(format!(
                            "h_{}{} · h_{}{} is missing",
                            objects[b].name(),
                            objects[c].name(),
                            objects[a].name(),
                            objects[b].name()
                        )));
                    }
                }
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if component[a] == usize::MAX {
                for b in 0..n {
                    if linked[a * n + b] {
                        component[b] = next;
                    }
                }
                next += 1;
            }
        }
        Ok(Self { objects, component })
    }

    pub fn objects(&self) -> &[Arc<PcSetType>] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o.name() == name)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        self.objects[x].name()
    }

    pub fn is_complete(&self) -> bool {
        self.component.iter().all(|&c| c == self.component[0])
    }

    pub fn contains(&self, h: HMorphism) -> bool {
        h.dom < self.objects.len()
            && h.cod < self.objects.len()
            && self.component[h.dom] == self.component[h.cod]
    }

    pub fn morphism(&self, dom: ObjectId, cod: ObjectId) -> Result<HMorphism, GroupoidError> {
        let h = HMorphism::new(dom, cod);
        if self.contains(h) {
            Ok(h)
        } else {
            Err(GroupoidError::MissingMorphism {
                from: self
                    .objects
                    .get(dom)
                    .map_or("?".into(), |o| o.name().to_string()),
                to: self
                    .objects
                    .get(cod)
                    .map_or("?".into(), |o| o.name().to_string()),
            })
        }
    }

    /// All morphisms including identities, ordered by `(dom, cod)`.
    pub fn morphisms(&self) -> Vec<HMorphism> {
        let n = self.objects.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| HMorphism::new(a, b)))
            .filter(|&h| self.contains(h))
            .collect()
    }

    /// Non-identity morphisms, ordered by `(dom, cod)`.
    pub fn generators(&self) -> Vec<HMorphism> {
        self.morphisms()
            .into_iter()
            .filter(|h| !h.is_identity())
            .collect()
    }

    /// `h2 · h1` (apply `h1` first).
    pub fn compose(&self, h2: HMorphism, h1: HMorphism) -> Result<HMorphism, GroupoidError> {
        if h1.cod != h2.dom {
            return Err(GroupoidError::NotComposable {
                left: self.h_name(h2),
                right: self.h_name(h1),
                left_dom: self.object_name(h2.dom).to_string(),
                right_cod: self.object_name(h1.cod).to_string(),
            });
        }
        Ok(HMorphism::new(h1.dom, h2.cod))
    }

    pub fn h_name(&self, h: HMorphism) -> String {
        if h.is_identity() {
            format!("id_{}", self.object_name(h.dom))
        } else {
            format!(
                "h_{{{},{}}}",
                self.object_name(h.dom),
                self.object_name(h.cod)
            )
        }
    }
}

/// `φ: ℋ → Grp`, one map `Z → Z` per morphism of `ℋ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFunctor {
    maps: BTreeMap<HMorphism, Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorReport {
    pub non_isomorphisms: Vec<HMorphism>,
    pub identities_not_fixed: Vec<ObjectId>,
    /// Composable `(h2, h1)` with `φ(h2·h1) != φ(h2)∘φ(h1)`.
    pub functoriality_violations: Vec<(HMorphism, HMorphism)>,
}

impl FunctorReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.non_isomorphisms.is_empty() {
            out.push("automorphism");
        }
        if !self.identities_not_fixed.is_empty() {
            out.push("identity action");
        }
        if !self.functoriality_violations.is_empty() {
            out.push("functoriality");
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

impl ActionFunctor {
    pub fn from_maps(
        h: &FormalInversionGroupoid,
        z: &FiniteGroup,
        maps: BTreeMap<HMorphism, Vec<usize>>,
    ) -> Result<Self, GroupoidError> {
        for m in h.morphisms() {
            match maps.get(&m) {
                Some(v) if v.len() == z.order() && v.iter().all(|&x| x < z.order()) => {}
                _ => {
                    return Err(AlgebraError::Shape(format!(
                        "φ is missing or malformed at {}",
                        h.h_name(m)
                    ))
                    .into())
                }
            }
        }
        if maps.keys().any(|&m| !h.contains(m)) {
            return Err(AlgebraError::Shape("φ defined on a morphism outside ℋ".into()).into());
        }
        Ok(Self { maps })
    }

    pub fn trivial(h: &FormalInversionGroupoid, z: &FiniteGroup) -> Self {
        let id: Vec<usize> = (0..z.order()).collect();
        Self {
            maps: h.morphisms().into_iter().map(|m| (m, id.clone())).collect(),
        }
    }

    /// `z ↦ z⁻¹` on every non-identity morphism. Functorial only when no
    /// component has more than two objects.
    pub fn inverse(h: &FormalInversionGroupoid, z: &FiniteGroup) -> Self {
        let id: Vec<usize> = (0..z.order()).collect();
        let inv: Vec<usize> = (0..z.order()).map(|a| z.inv(a)).collect();
        Self {
            maps: h
                .morphisms()
                .into_iter()
                .map(|m| {
                    (
                        m,
                        if m.is_identity() {
                            id.clone()
                        } else {
                            inv.clone()
                        },
                    )
                })
                .collect(),
        }
    }

    /// For cyclic `Z`: `φ_h(z^k) = z^{k·u}` with `u` from `units`; identities
    /// default to `u = 1`.
    pub fn from_units(
        h: &FormalInversionGroupoid,
        z: &FiniteGroup,
        units: &BTreeMap<HMorphism, i64>,
    ) -> Result<Self, GroupoidError> {
        let n = z.order() as i64;
        let maps = h
            .morphisms()
            .into_iter()
            .map(|m| {
                let u = units.get(&m).copied().unwrap_or(1);
                (m, (0..n).map(|k| (k * u).rem_euclid(n) as usize).collect())
            })
            .collect();
        if units.keys().any(|&m| !h.contains(m)) {
            return Err(AlgebraError::Shape("φ defined on a morphism outside ℋ".into()).into());
        }
        Self::from_maps(h, z, maps)
    }

    pub fn apply(&self, h: HMorphism, z: usize) -> usize {
        self.maps[&h][z]
    }

    pub fn map(&self, h: HMorphism) -> &[usize] {
        &self.maps[&h]
    }

    /// Whether `φ_h` is `z ↦ z⁻¹`.
    pub fn is_inverting(&self, h: HMorphism, z: &FiniteGroup) -> bool {
        self.maps[&h]
            .iter()
            .enumerate()
            .all(|(a, &b)| b == z.inv(a))
    }

    pub fn check(&self, h: &FormalInversionGroupoid, z: &FiniteGroup) -> FunctorReport {
        let mut report = FunctorReport::default();
        let ms = h.morphisms();
        for &m in &ms {
            if !z.is_automorphism(&self.maps[&m]) {
                report.non_isomorphisms.push(m);
            }
            if m.is_identity() && self.maps[&m].iter().enumerate().any(|(a, &b)| a != b) {
                report.identities_not_fixed.push(m.dom);
            }
        }
        for &h1 in &ms {
            for &h2 in ms.iter().filter(|h2| h2.dom == h1.cod) {
                let h21 = HMorphism::new(h1.dom, h2.cod);
                if (0..z.order()).any(|a| self.apply(h21, a) != self.apply(h2, self.apply(h1, a))) {
                    report.functoriality_violations.push((h2, h1));
                }
            }
        }
        report
    }
}

/// `ζ(h2, h1)` for every composable pair, a transposition at `cod(h2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidCocycle {
    n: usize,
    values: Vec<usize>,
}

impl GroupoidCocycle {
    pub fn trivial(h: &FormalInversionGroupoid, z: &FiniteGroup) -> Self {
        let n = h.object_count();
        Self {
            n,
            values: vec![z.identity(); n * n * n],
        }
    }

    fn slot(&self, h2: HMorphism, h1: HMorphism) -> usize {
        debug_assert_eq!(h1.cod, h2.dom);
        (h1.dom * self.n + h1.cod) * self.n + h2.cod
    }

    pub fn value(&self, h2: HMorphism, h1: HMorphism) -> usize {
        self.values[self.slot(h2, h1)]
    }

    pub fn set(
        &mut self,
        h: &FormalInversionGroupoid,
        h2: HMorphism,
        h1: HMorphism,
        z: usize,
    ) -> Result<(), GroupoidError> {
        h.compose(h2, h1)?;
        if !h.contains(h1) || !h.contains(h2) {
            return Err(GroupoidError::MissingMorphism {
                from: h.object_name(h1.dom).to_string(),
                to: h.object_name(h2.cod).to_string(),
            });
        }
        let slot = self.slot(h2, h1);
        self.values[slot] = z;
        Ok(())
    }

    pub fn is_trivial(&self, z_identity: usize) -> bool {
        self.values.iter().all(|&v| v == z_identity)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupoidCocycleReport {
    pub normalized: bool,
    /// Composable `(h3, h2, h1)` failing
    /// `φ_h3(ζ(h2,h1)) · ζ(h3, h2·h1) = ζ(h3,h2) · ζ(h3·h2, h1)`.
    pub violations: Vec<(HMorphism, HMorphism, HMorphism)>,
}

impl GroupoidCocycleReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.normalized {
            out.push("cocycle normalization");
        }
        if !self.violations.is_empty() {
            out.push("cocycle identity");
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Exhaustive over all composable triples of `ℋ`.
pub fn check_groupoid_cocycle(
    zeta: &GroupoidCocycle,
    phi: &ActionFunctor,
    h: &FormalInversionGroupoid,
    z: &FiniteGroup,
) -> GroupoidCocycleReport {
    let ms = h.morphisms();
    let mut report = GroupoidCocycleReport {
        normalized: true,
        violations: Vec::new(),
    };
    for &h1 in &ms {
        for &h2 in ms.iter().filter(|m| m.dom == h1.cod) {
            if (h1.is_identity() || h2.is_identity()) && zeta.value(h2, h1) != z.identity() {
                report.normalized = false;
            }
            let h21 = HMorphism::new(h1.dom, h2.cod);
            for &h3 in ms.iter().filter(|m| m.dom == h2.cod) {
                let h32 = HMorphism::new(h2.dom, h3.cod);
                let lhs = z.mul(phi.apply(h3, zeta.value(h2, h1)), zeta.value(h3, h21));
                let rhs = z.mul(zeta.value(h3, h2), zeta.value(h32, h1));
                if lhs != rhs {
                    report.violations.push((h3, h2, h1));
                }
            }
        }
    }
    report
}

/// A morphism `(z, h_XY)` of `𝒢`; `z` is a transposition of `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidMorphism {
    pub z: usize,
    pub dom: ObjectId,
    pub cod: ObjectId,
}

impl GroupoidMorphism {
    pub fn new(z: usize, dom: ObjectId, cod: ObjectId) -> Self {
        Self { z, dom, cod }
    }

    pub fn h(self) -> HMorphism {
        HMorphism::new(self.dom, self.cod)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidExtension {
    z_groupoid: TranspositionGroupoid,
    h_groupoid: FormalInversionGroupoid,
    phi: ActionFunctor,
    zeta: GroupoidCocycle,
}

/// Exhaustive structural check of a groupoid extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidReport {
    pub morphisms: usize,
    pub composable_triples: usize,
    pub associativity_violations: usize,
    pub morphisms_without_inverse: usize,
    /// Pairs with equal `ℋ`-projection not related by exactly one `(z, id)`.
    pub extension_property_violations: usize,
    /// Objects whose endomorphisms do not compose like `Z`.
    pub endomorphism_group_failures: Vec<ObjectId>,
    pub functor: FunctorReport,
    pub cocycle: GroupoidCocycleReport,
}

impl GroupoidReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = self.functor.failures();
        out.extend(self.cocycle.failures());
        if self.associativity_violations > 0 {
            out.push("associativity");
        }
        if self.morphisms_without_inverse > 0 {
            out.push("inverses");
        }
        if self.extension_property_violations > 0 {
            out.push("extension property");
        }
        if !self.endomorphism_group_failures.is_empty() {
            out.push("endomorphism groups");
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

impl GroupoidExtension {
    /// Validated: φ must be a functor, ζ a normalized cocycle, and the
    /// composition associative with inverses.
    pub fn new(
        z_groupoid: TranspositionGroupoid,
        h_groupoid: FormalInversionGroupoid,
        phi: ActionFunctor,
        zeta: GroupoidCocycle,
    ) -> Result<Self, GroupoidError> {
        let ext = Self::new_unchecked(z_groupoid, h_groupoid, phi, zeta)?;
        let functor = ext.phi.check(&ext.h_groupoid, ext.z());
        if let Some(&axiom) = functor.failures().first() {
            let detail = match functor.functoriality_violations.first() {
                Some(&(h2, h1)) => format!(
                    "φ({} · {}) != φ({}) ∘ φ({})",
                    ext.h_groupoid.h_name(h2),
                    ext.h_groupoid.h_name(h1),
                    ext.h_groupoid.h_name(h2),
                    ext.h_groupoid.h_name(h1)
                ),
                None => "φ is not a functor into groups".to_string(),
            };
            return Err(AlgebraError::ActionAxiom { axiom, detail }.into());
        }
        let cocycle = check_groupoid_cocycle(&ext.zeta, &ext.phi, &ext.h_groupoid, ext.z());
        if let Some(&axiom) = cocycle.failures().first() {
            return Err(AlgebraError::CocycleAxiom {
                axiom,
                detail: format!("{} violating triples", cocycle.violations.len()),
            }
            .into());
        }
        let report = ext.verify();
        if let Some(&axiom) = report.failures().first() {
            return Err(AlgebraError::GroupAxiom {
                axiom,
                detail: "derived groupoid composition".into(),
            }
            .into());
        }
        Ok(ext)
    }

    pub fn new_unchecked(
        z_groupoid: TranspositionGroupoid,
        h_groupoid: FormalInversionGroupoid,
        phi: ActionFunctor,
        zeta: GroupoidCocycle,
    ) -> Result<Self, GroupoidError> {
        if z_groupoid.objects() != h_groupoid.objects() {
            return Err(GroupoidError::NotAGroupoid(
                "𝒵 and ℋ must have the same objects".into(),
            ));
        }
        if zeta.n != h_groupoid.object_count() {
            return Err(AlgebraError::Shape("cocycle sized for a different ℋ".into()).into());
        }
        Ok(Self {
            z_groupoid,
            h_groupoid,
            phi,
            zeta,
        })
    }

    pub fn z(&self) -> &FiniteGroup {
        self.z_groupoid.group()
    }

    pub fn z_groupoid(&self) -> &TranspositionGroupoid {
        &self.z_groupoid
    }

    pub fn h_groupoid(&self) -> &FormalInversionGroupoid {
        &self.h_groupoid
    }

    pub fn phi(&self) -> &ActionFunctor {
        &self.phi
    }

    pub fn zeta(&self) -> &GroupoidCocycle {
        &self.zeta
    }

    pub fn objects(&self) -> &[Arc<PcSetType>] {
        self.h_groupoid.objects()
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.h_groupoid.object_id(name)
    }

    pub fn identity(&self, x: ObjectId) -> GroupoidMorphism {
        GroupoidMorphism::new(self.z().identity(), x, x)
    }

    /// `(z^k, h_XY)`; fails if `ℋ` has no `h_XY`.
    pub fn morphism(
        &self,
        z: usize,
        dom: ObjectId,
        cod: ObjectId,
    ) -> Result<GroupoidMorphism, GroupoidError> {
        self.h_groupoid.morphism(dom, cod)?;
        if z >= self.z().order() {
            return Err(AlgebraError::Shape(format!("z index {z} out of range")).into());
        }
        Ok(GroupoidMorphism::new(z, dom, cod))
    }

    /// By name, e.g. `morphism_by_name(3, "M", "alpha")`.
    pub fn morphism_by_name(
        &self,
        z: usize,
        dom: &str,
        cod: &str,
    ) -> Result<GroupoidMorphism, GroupoidError> {
        let d = self
            .object_id(dom)
            .ok_or_else(|| GroupoidError::UnknownObject(dom.into()))?;
        let c = self
            .object_id(cod)
            .ok_or_else(|| GroupoidError::UnknownObject(cod.into()))?;
        self.morphism(z, d, c)
    }

    /// Every morphism, ordered by `(dom, cod, z)`.
    pub fn morphisms(&self) -> Vec<GroupoidMorphism> {
        self.h_groupoid
            .morphisms()
            .into_iter()
            .flat_map(|h| {
                (0..self.z().order()).map(move |z| GroupoidMorphism::new(z, h.dom, h.cod))
            })
            .collect()
    }

    /// `g2 · g1`, defined when the domain of `g2` is the codomain of `g1`.
    pub fn compose(
        &self,
        g2: GroupoidMorphism,
        g1: GroupoidMorphism,
    ) -> Result<GroupoidMorphism, GroupoidError> {
        if g1.cod != g2.dom {
            return Err(GroupoidError::NotComposable {
                left: self.name(g2),
                right: self.name(g1),
                left_dom: self.h_groupoid.object_name(g2.dom).to_string(),
                right_cod: self.h_groupoid.object_name(g1.cod).to_string(),
            });
        }
        let z = self.z();
        let (h2, h1) = (g2.h(), g1.h());
        let value = z.mul(
            z.mul(g2.z, self.phi.apply(h2, g1.z)),
            self.zeta.value(h2, h1),
        );
        Ok(GroupoidMorphism::new(value, g1.dom, g2.cod))
    }

    pub fn inverse(&self, g: GroupoidMorphism) -> GroupoidMorphism {
        let z = self.z();
        let (h, h_inv) = (g.h(), g.h().inverse());
        let zi = z.mul(
            z.inv(self.zeta.value(h_inv, h)),
            z.inv(self.phi.apply(h_inv, g.z)),
        );
        let candidate = GroupoidMorphism::new(zi, g.cod, g.dom);
        let is_inverse = |c: GroupoidMorphism| {
            self.compose(c, g).ok() == Some(self.identity(g.dom))
                && self.compose(g, c).ok() == Some(self.identity(g.cod))
        };
        if is_inverse(candidate) {
            return candidate;
        }
        // Only reachable for unchecked data.
        (0..z.order())
            .map(|k| GroupoidMorphism::new(k, g.cod, g.dom))
            .find(|&c| is_inverse(c))
            .unwrap_or(candidate)
    }

    pub fn name(&self, g: GroupoidMorphism) -> String {
        let cod = self.h_groupoid.object_name(g.cod);
        format!("(z_{}^{},{})", cod, g.z, self.h_groupoid.h_name(g.h()))
    }

    pub fn verify(&self) -> GroupoidReport {
        let z = self.z();
        let ms = self.morphisms();
        let by_dom = |x: ObjectId| ms.iter().copied().filter(move |m| m.dom == x);

        let mut composable_triples = 0;
        let mut associativity_violations = 0;
        for &g1 in &ms {
            for g2 in by_dom(g1.cod) {
                let g21 = self.compose(g2, g1).expect("composable");
                for g3 in by_dom(g2.cod) {
                    composable_triples += 1;
                    let left = self.compose(g3, g21).expect("composable");
                    let right = self
                        .compose(self.compose(g3, g2).expect("composable"), g1)
                        .expect("composable");
                    if left != right {
                        associativity_violations += 1;
                    }
                }
            }
        }

        let morphisms_without_inverse = ms
            .iter()
            .filter(|&&g| {
                let c = self.inverse(g);
                self.compose(c, g).ok() != Some(self.identity(g.dom))
                    || self.compose(g, c).ok() != Some(self.identity(g.cod))
            })
            .count();

        let mut extension_property_violations = 0;
        for &g1 in &ms {
            for &g2 in &ms {
                let witnesses = (0..z.order())
                    .filter(|&k| {
                        self.compose(GroupoidMorphism::new(k, g1.cod, g1.cod), g1)
                            .ok()
                            == Some(g2)
                    })
                    .count();
                let same_projection = g1.h() == g2.h();
                if (same_projection && witnesses != 1) || (!same_projection && witnesses != 0) {
                    extension_property_violations += 1;
                }
            }
        }

        let endomorphism_group_failures = (0..self.h_groupoid.object_count())
            .filter(|&x| {
                !(0..z.order()).all(|a| {
                    (0..z.order()).all(|b| {
                        self.compose(
                            GroupoidMorphism::new(a, x, x),
                            GroupoidMorphism::new(b, x, x),
                        )
                        .ok()
                            == Some(GroupoidMorphism::new(z.mul(a, b), x, x))
                    })
                })
            })
            .collect();

        GroupoidReport {
            morphisms: ms.len(),
            composable_triples,
            associativity_violations,
            morphisms_without_inverse,
            extension_property_violations,
            endomorphism_group_failures,
            functor: self.phi.check(&self.h_groupoid, z),
            cocycle: check_groupoid_cocycle(&self.zeta, &self.phi, &self.h_groupoid, z),
        }
    }
}

impl fmt::Display for GroupoidExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "groupoid extension on {} objects with {} morphisms",
            self.h_groupoid.object_count(),
            self.h_groupoid.morphisms().len() * self.z().order()
        )
    }
}

pub fn compose_morphisms(
    g2: GroupoidMorphism,
    g1: GroupoidMorphism,
    ext: &GroupoidExtension,
) -> Result<GroupoidMorphism, GroupoidError> {
    ext.compose(g2, g1)
}

pub fn invert_morphism(g: GroupoidMorphism, ext: &GroupoidExtension) -> GroupoidMorphism {
    ext.inverse(g)
}

pub const ALPHA: [u32; 3] = [0, 2, 5];
pub const BETA: [u32; 3] = [0, 4, 5];

/// The three-type system `M = [0,4,7]`, `α = [0,2,5]`, `β = [0,4,5]` with a
/// complete `ℋ`, trivial cocycle, and `φ` inverting along `h_Mα` and `h_αβ`
/// (hence, by functoriality, fixing along `h_Mβ`).
pub fn build_malphabeta() -> GroupoidExtension {
    let types = ["M", "alpha", "beta"]
        .iter()
        .zip([crate::neo_riemannian::MAJOR, ALPHA, BETA])
        .map(|(n, iv)| Arc::new(PcSetType::new(*n, iv.to_vec(), 12).expect("valid")))
        .collect::<Vec<_>>();
    let z = Arc::new(FiniteGroup::cyclic(12, "z"));
    let h = FormalInversionGroupoid::complete(types.clone());
    let sign = [1i64, -1, 1];
    let units = h
        .generators()
        .into_iter()
        .map(|m| (m, sign[m.dom] * sign[m.cod]))
        .collect();
    let phi = ActionFunctor::from_units(&h, &z, &units).expect("shape");
    let zeta = GroupoidCocycle::trivial(&h, &z);
    let zg = TranspositionGroupoid::new(types, z).expect("distinct objects");
    GroupoidExtension::new(zg, h, phi, zeta).expect("M/α/β extension is a groupoid")
}

/// Two objects `M`, `m` with the inverting action.
pub fn build_major_minor_groupoid() -> GroupoidExtension {
    let types = vec![
        Arc::new(PcSetType::new("M", crate::neo_riemannian::MAJOR.to_vec(), 12).expect("valid")),
        Arc::new(PcSetType::new("m", crate::neo_riemannian::MINOR.to_vec(), 12).expect("valid")),
    ];
    let z = Arc::new(FiniteGroup::cyclic(12, "z"));
    let h = FormalInversionGroupoid::complete(types.clone());
    let phi = ActionFunctor::inverse(&h, &z);
    let zeta = GroupoidCocycle::trivial(&h, &z);
    let zg = TranspositionGroupoid::new(types, z).expect("distinct objects");
    GroupoidExtension::new(zg, h, phi, zeta).expect("M/m extension is a groupoid")
}

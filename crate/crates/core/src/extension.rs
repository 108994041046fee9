//! Group extensions `1 → Z → G → H → 1` built from an action `φ: H → Aut(Z)`
//! and a normalized 2-cocycle `ζ: H × H → Z`.
//!
//! Elements of `G` are pairs `(z, h)` multiplied as
//!
//! ```text
//! (z1, h1) · (z2, h2) = (z1 · φ_h1(z2) · ζ(h1, h2), h1 · h2)
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::group::{CayleyTable, FiniteGroup, GroupReport};

/// Exhaustive associativity is re-checked at construction when `|G|³` is at
/// most this many triples.
pub const EXHAUSTIVE_TRIPLE_BOUND: usize = 1_000_000;

/// `φ`: one map `Z → Z` per element of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    maps: Vec<Vec<usize>>,
}

/// Result of checking that `φ` is a homomorphism `H → Aut(Z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionReport {
    /// `h` whose map is not an automorphism of `Z`.
    pub non_automorphisms: Vec<usize>,
    /// `(h1, h2)` with `φ(h1·h2) != φ(h1)∘φ(h2)`.
    pub functoriality_violations: Vec<(usize, usize)>,
    pub identity_preserved: bool,
}

impl ActionReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.non_automorphisms.is_empty() {
            out.push("automorphism");
        }
        if !self.identity_preserved {
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

impl GroupAction {
    /// Shape-checked but otherwise unvalidated; see [`GroupAction::check`].
    pub fn from_maps(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let zn = target.order();
        if maps.len() != source.order()
            || maps
                .iter()
                .any(|m| m.len() != zn || m.iter().any(|&v| v >= zn))
        {
            return Err(AlgebraError::Shape(format!(
                "action needs {} maps of length {}",
                source.order(),
                zn
            )));
        }
        Ok(Self {
            source,
            target,
            maps,
        })
    }

    /// Validated construction.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let action = Self::from_maps(source, target, maps)?;
        action.validate()?;
        Ok(action)
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = (0..target.order()).collect();
        let maps = vec![id; source.order()];
        Self {
            source,
            target,
            maps,
        }
    }

    /// Every non-identity `h` acts by `z ↦ z⁻¹`. This is a homomorphism only
    /// when `|H| <= 2`.
    pub fn inverse(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let maps = (0..source.order())
            .map(|h| {
                (0..target.order())
                    .map(|z| {
                        if h == source.identity() {
                            z
                        } else {
                            target.inv(z)
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            source,
            target,
            maps,
        }
    }

    /// For cyclic `Z` (element `k` is `z^k`): `h` acts by `z^k ↦ z^{k·units[h]}`.
    pub fn from_units(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        units: &[i64],
    ) -> Result<Self, AlgebraError> {
        let n = target.order() as i64;
        let maps = units
            .iter()
            .map(|&u| (0..n).map(|k| (k * u).rem_euclid(n) as usize).collect())
            .collect();
        Self::from_maps(source, target, maps)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, h: usize, z: usize) -> usize {
        self.maps[h][z]
    }

    pub fn map(&self, h: usize) -> &[usize] {
        &self.maps[h]
    }

    pub fn check(&self) -> ActionReport {
        let hg = &self.source;
        let non_automorphisms = (0..hg.order())
            .filter(|&h| !self.target.is_automorphism(&self.maps[h]))
            .collect();
        let identity_preserved = self.maps[hg.identity()]
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v);
        let mut functoriality_violations = Vec::new();
        for a in 0..hg.order() {
            for b in 0..hg.order() {
                let ab = hg.mul(a, b);
                if (0..self.target.order())
                    .any(|z| self.maps[ab][z] != self.maps[a][self.maps[b][z]])
                {
                    functoriality_violations.push((a, b));
                }
            }
        }
        ActionReport {
            non_automorphisms,
            functoriality_violations,
            identity_preserved,
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let report = self.check();
        match report.failures().first() {
            None => Ok(()),
            Some(&axiom) => {
                let detail = if let Some(&h) = report.non_automorphisms.first() {
                    format!("φ_{} is not an automorphism", self.source.name(h))
                } else if let Some(&(a, b)) = report.functoriality_violations.first() {
                    format!(
                        "φ_({}·{}) != φ_{} ∘ φ_{}",
                        self.source.name(a),
                        self.source.name(b),
                        self.source.name(a),
                        self.source.name(b)
                    )
                } else {
                    "identity of H does not act trivially".to_string()
                };
                Err(AlgebraError::ActionAxiom { axiom, detail })
            }
        }
    }
}

/// `ζ: H × H → Z`, stored as a dense `|H| × |H|` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    h_order: usize,
    z_order: usize,
    values: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub normalized: bool,
    /// `(a, b, c)` with `φ_a(ζ(b,c)) · ζ(a, b·c) != ζ(a,b) · ζ(a·b, c)`.
    pub violations: Vec<(usize, usize, usize)>,
}

impl CocycleReport {
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

impl Cocycle2 {
    /// `values[a][b] = ζ(a, b)`.
    pub fn new(
        h: &FiniteGroup,
        z: &FiniteGroup,
        values: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let (hn, zn) = (h.order(), z.order());
        if values.len() != hn
            || values
                .iter()
                .any(|r| r.len() != hn || r.iter().any(|&v| v >= zn))
        {
            return Err(AlgebraError::Shape(format!(
                "cocycle needs a {hn}×{hn} table of Z elements"
            )));
        }
        Ok(Self {
            h_order: hn,
            z_order: zn,
            values: values.into_iter().flatten().collect(),
        })
    }

    pub fn trivial(h: &FiniteGroup, z: &FiniteGroup) -> Self {
        Self {
            h_order: h.order(),
            z_order: z.order(),
            values: vec![z.identity(); h.order() * h.order()],
        }
    }

    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.h_order + b]
    }

    pub fn set(&mut self, a: usize, b: usize, z: usize) {
        assert!(z < self.z_order);
        self.values[a * self.h_order + b] = z;
    }

    pub fn is_trivial(&self, z_identity: usize) -> bool {
        self.values.iter().all(|&v| v == z_identity)
    }
}

/// Exhaustive check of the 2-cocycle identity over all `|H|³` triples.
pub fn check_cocycle(zeta: &Cocycle2, phi: &GroupAction) -> CocycleReport {
    let (h, z) = (phi.source(), phi.target());
    let e = h.identity();
    let normalized = (0..h.order())
        .all(|a| zeta.value(e, a) == z.identity() && zeta.value(a, e) == z.identity());
    let mut violations = Vec::new();
    for a in 0..h.order() {
        for b in 0..h.order() {
            for c in 0..h.order() {
                let lhs = z.mul(phi.apply(a, zeta.value(b, c)), zeta.value(a, h.mul(b, c)));
                let rhs = z.mul(zeta.value(a, b), zeta.value(h.mul(a, b), c));
                if lhs != rhs {
                    violations.push((a, b, c));
                }
            }
        }
    }
    CocycleReport {
        normalized,
        violations,
    }
}

/// An element `(z, h)` of an extension group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionElement {
    pub z: usize,
    pub h: usize,
}

impl ExtensionElement {
    pub fn new(z: usize, h: usize) -> Self {
        Self { z, h }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGroup {
    z: Arc<FiniteGroup>,
    h: Arc<FiniteGroup>,
    phi: GroupAction,
    zeta: Cocycle2,
}

impl ExtensionGroup {
    /// Validates `φ`, `ζ` and, when small enough, associativity of the result.
    pub fn new(phi: GroupAction, zeta: Cocycle2) -> Result<Self, AlgebraError> {
        let group = Self::new_unchecked(phi, zeta)?;
        group.phi.validate()?;
        let cocycle = check_cocycle(&group.zeta, &group.phi);
        if let Some(&axiom) = cocycle.failures().first() {
            let detail = match cocycle.violations.first() {
                Some(&(a, b, c)) => format!(
                    "fails at ({}, {}, {})",
                    group.h.name(a),
                    group.h.name(b),
                    group.h.name(c)
                ),
                None => "ζ(e,·) and ζ(·,e) must be the identity".to_string(),
            };
            return Err(AlgebraError::CocycleAxiom { axiom, detail });
        }
        let n = group.order();
        if n.saturating_mul(n).saturating_mul(n) <= EXHAUSTIVE_TRIPLE_BOUND {
            let report = group.verify_group();
            if let Some(&axiom) = report.failures().first() {
                return Err(AlgebraError::GroupAxiom {
                    axiom,
                    detail: "derived composition".to_string(),
                });
            }
        }
        Ok(group)
    }

    /// Builds the composition law without checking any axiom. Used when the
    /// caller wants a full report of what fails.
    pub fn new_unchecked(phi: GroupAction, zeta: Cocycle2) -> Result<Self, AlgebraError> {
        if zeta.h_order != phi.source().order() || zeta.z_order != phi.target().order() {
            return Err(AlgebraError::Shape(
                "cocycle and action disagree on H or Z".to_string(),
            ));
        }
        Ok(Self {
            z: phi.target().clone(),
            h: phi.source().clone(),
            phi,
            zeta,
        })
    }

    /// Trivial action and cocycle.
    pub fn direct_product(z: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> Self {
        let zeta = Cocycle2::trivial(&h, &z);
        let phi = GroupAction::trivial(h, z);
        Self::new(phi, zeta).expect("direct products are groups")
    }

    pub fn z_group(&self) -> &Arc<FiniteGroup> {
        &self.z
    }

    pub fn h_group(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    pub fn phi(&self) -> &GroupAction {
        &self.phi
    }

    pub fn zeta(&self) -> &Cocycle2 {
        &self.zeta
    }

    pub fn order(&self) -> usize {
        self.z.order() * self.h.order()
    }

    pub fn identity(&self) -> ExtensionElement {
        ExtensionElement::new(self.z.identity(), self.h.identity())
    }

    /// Flat index `h·|Z| + z`.
    pub fn index(&self, g: ExtensionElement) -> usize {
        g.h * self.z.order() + g.z
    }

    pub fn element(&self, index: usize) -> ExtensionElement {
        ExtensionElement::new(index % self.z.order(), index / self.z.order())
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtensionElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn contains(&self, g: ExtensionElement) -> bool {
        g.z < self.z.order() && g.h < self.h.order()
    }

    pub fn compose(&self, g1: ExtensionElement, g2: ExtensionElement) -> ExtensionElement {
        let z = self.z.mul(
            self.z.mul(g1.z, self.phi.apply(g1.h, g2.z)),
            self.zeta.value(g1.h, g2.h),
        );
        ExtensionElement::new(z, self.h.mul(g1.h, g2.h))
    }

    /// Left-to-right product of a word.
    pub fn product(&self, word: &[ExtensionElement]) -> ExtensionElement {
        word.iter()
            .fold(self.identity(), |acc, &g| self.compose(acc, g))
    }

    pub fn pow(&self, g: ExtensionElement, k: usize) -> ExtensionElement {
        (0..k).fold(self.identity(), |acc, _| self.compose(acc, g))
    }

    pub fn inverse(&self, g: ExtensionElement) -> ExtensionElement {
        let h_inv = self.h.inv(g.h);
        let rhs = self
            .z
            .mul(self.z.inv(g.z), self.z.inv(self.zeta.value(g.h, h_inv)));
        let candidate = ExtensionElement::new(self.phi.apply(h_inv, rhs), h_inv);
        let e = self.identity();
        if self.compose(g, candidate) == e && self.compose(candidate, g) == e {
            return candidate;
        }
        // Only reachable for unchecked data where φ is not a homomorphism.
        self.elements()
            .find(|&c| self.compose(g, c) == e && self.compose(c, g) == e)
            .unwrap_or(candidate)
    }

    pub fn name(&self, g: ExtensionElement) -> String {
        format!("({},{})", self.z.name(g.z), self.h.name(g.h))
    }

    pub fn parse_name(&self, s: &str) -> Option<ExtensionElement> {
        self.elements().find(|&g| self.name(g) == s)
    }

    pub fn cayley_table(&self) -> CayleyTable {
        let names = self.elements().map(|g| self.name(g)).collect();
        CayleyTable::from_fn(self.order(), names, |a, b| {
            self.index(self.compose(self.element(a), self.element(b)))
        })
        .expect("composition stays in range")
    }

    /// Closure, exhaustive associativity, identity, inverses and `|G| = |Z|·|H|`.
    pub fn verify_group(&self) -> GroupReport {
        let mut report = self.cayley_table().verify();
        report.expected_order = Some(self.z.order() * self.h.order());
        report
    }

    /// Whether `{(z, e_H)}` is closed under composition and composes like `Z`.
    pub fn kernel_is_copy_of_z(&self) -> bool {
        let e = self.h.identity();
        (0..self.z.order()).all(|a| {
            (0..self.z.order()).all(|b| {
                self.compose(ExtensionElement::new(a, e), ExtensionElement::new(b, e))
                    == ExtensionElement::new(self.z.mul(a, b), e)
            })
        })
    }
}

impl fmt::Display for ExtensionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "extension of order {}", self.order())
    }
}

pub fn compose(
    g1: ExtensionElement,
    g2: ExtensionElement,
    group: &ExtensionGroup,
) -> ExtensionElement {
    group.compose(g1, g2)
}

pub fn inverse(g: ExtensionElement, group: &ExtensionGroup) -> ExtensionElement {
    group.inverse(g)
}

pub fn verify_group(group: &ExtensionGroup) -> GroupReport {
    group.verify_group()
}

//! Simply transitive left and right actions of an extension group on chords.
//!
//! A bijection `χ: G → chords` is fixed by choosing the pitch-class that
//! stands for the identity of `Z` and one chord type per element of `H`.
//! Then `g.p = χ(g · χ⁻¹(p))` and `p.g = χ(χ⁻¹(p) · g)`.

use std::sync::Arc;

use crate::error::ActionError;
use crate::extension::{ExtensionElement, ExtensionGroup};
use crate::pcs::{ChordLabel, PcSetType, PitchClass};

/// `χ`: element `(z^k, h)` is the chord `(root_anchor + k)_{types[h]}`.
///
/// `Z` must be cyclic of order `N` with element `k` standing for `z^k`, as
/// built by [`FiniteGroup::cyclic`](crate::group::FiniteGroup::cyclic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiBijection {
    group: Arc<ExtensionGroup>,
    root_anchor: PitchClass,
    types: Vec<Arc<PcSetType>>,
}

impl ChiBijection {
    pub fn new(
        group: Arc<ExtensionGroup>,
        root_anchor: PitchClass,
        types: Vec<Arc<PcSetType>>,
    ) -> Result<Self, ActionError> {
        let n = root_anchor.modulus();
        if group.z_group().order() != n as usize {
            return Err(ActionError::InvalidBijection(format!(
                "|Z| = {} but there are {} roots",
                group.z_group().order(),
                n
            )));
        }
        if types.len() != group.h_group().order() {
            return Err(ActionError::InvalidBijection(format!(
                "|H| = {} but {} types were given",
                group.h_group().order(),
                types.len()
            )));
        }
        for (i, t) in types.iter().enumerate() {
            if t.modulus() != n {
                return Err(ActionError::InvalidBijection(format!(
                    "type `{}` uses modulus {}",
                    t.name(),
                    t.modulus()
                )));
            }
            if types[..i].iter().any(|u| u.name() == t.name()) {
                return Err(ActionError::InvalidBijection(format!(
                    "type `{}` listed twice",
                    t.name()
                )));
            }
        }
        Ok(Self {
            group,
            root_anchor,
            types,
        })
    }

    /// Anchors at pitch-class 0.
    pub fn with_default_anchor(
        group: Arc<ExtensionGroup>,
        types: Vec<Arc<PcSetType>>,
    ) -> Result<Self, ActionError> {
        let n = types.first().map_or(12, |t| t.modulus());
        Self::new(group, PitchClass::new(0, n), types)
    }

    pub fn group(&self) -> &Arc<ExtensionGroup> {
        &self.group
    }

    pub fn root_anchor(&self) -> PitchClass {
        self.root_anchor
    }

    pub fn types(&self) -> &[Arc<PcSetType>] {
        &self.types
    }

    /// The type identified with the identity of `H`.
    pub fn type_anchor(&self) -> &Arc<PcSetType> {
        &self.types[self.group.h_group().identity()]
    }

    pub fn chi(&self, g: ExtensionElement) -> ChordLabel {
        ChordLabel {
            root: self.root_anchor.transpose(g.z as i64),
            kind: self.types[g.h].clone(),
        }
    }

    pub fn chi_inv(&self, p: &ChordLabel) -> Result<ExtensionElement, ActionError> {
        let h = self
            .types
            .iter()
            .position(|t| **t == *p.kind)
            .ok_or_else(|| ActionError::UnregisteredType(p.type_name().to_string()))?;
        if p.root.modulus() != self.root_anchor.modulus() {
            return Err(ActionError::RootOutOfRange {
                root: p.root.value(),
                size: self.root_anchor.modulus() as usize,
            });
        }
        let k = p.root.value() as i64 - self.root_anchor.value() as i64;
        let z = k.rem_euclid(self.root_anchor.modulus() as i64) as usize;
        Ok(ExtensionElement::new(z, h))
    }

    /// Every chord in the image of `χ`, in element-index order.
    pub fn chords(&self) -> Vec<ChordLabel> {
        self.group.elements().map(|g| self.chi(g)).collect()
    }

    pub fn left_act(&self, g: ExtensionElement, p: &ChordLabel) -> Result<ChordLabel, ActionError> {
        let x = self.chi_inv(p)?;
        Ok(self.chi(self.group.compose(g, x)))
    }

    pub fn right_act(
        &self,
        p: &ChordLabel,
        g: ExtensionElement,
    ) -> Result<ChordLabel, ActionError> {
        let x = self.chi_inv(p)?;
        Ok(self.chi(self.group.compose(x, g)))
    }

    /// The element whose left action on `p` equals the right action of `h`
    /// on `p`: `χ⁻¹(p) · h · χ⁻¹(p)⁻¹`.
    pub fn conjugate_for(
        &self,
        p: &ChordLabel,
        h: ExtensionElement,
    ) -> Result<ExtensionElement, ActionError> {
        let x = self.chi_inv(p)?;
        let g = &self.group;
        Ok(g.compose(g.compose(x, h), g.inverse(x)))
    }

    /// The unique `g` with `g.p = q`.
    pub fn solve_left(
        &self,
        p: &ChordLabel,
        q: &ChordLabel,
    ) -> Result<ExtensionElement, ActionError> {
        let (x, y) = (self.chi_inv(p)?, self.chi_inv(q)?);
        Ok(self.group.compose(y, self.group.inverse(x)))
    }

    /// The unique `g` with `p.g = q`.
    pub fn solve_right(
        &self,
        p: &ChordLabel,
        q: &ChordLabel,
    ) -> Result<ExtensionElement, ActionError> {
        let (x, y) = (self.chi_inv(p)?, self.chi_inv(q)?);
        Ok(self.group.compose(self.group.inverse(x), y))
    }
}

pub fn left_act(
    g: ExtensionElement,
    p: &ChordLabel,
    chi: &ChiBijection,
) -> Result<ChordLabel, ActionError> {
    chi.left_act(g, p)
}

pub fn right_act(
    p: &ChordLabel,
    g: ExtensionElement,
    chi: &ChiBijection,
) -> Result<ChordLabel, ActionError> {
    chi.right_act(p, g)
}

pub fn conjugate_for(
    p: &ChordLabel,
    h: ExtensionElement,
    chi: &ChiBijection,
) -> Result<ExtensionElement, ActionError> {
    chi.conjugate_for(p, h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Counts, for every ordered chord pair `(p, q)`, the elements sending `p`
/// to `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub side: Side,
    pub chords: usize,
    pub elements: usize,
    /// Pairs reached by no element.
    pub unreachable: usize,
    /// Pairs reached by more than one element.
    pub multiply_reached: usize,
}

impl TransitivityReport {
    pub fn simply_transitive(&self) -> bool {
        self.unreachable == 0 && self.multiply_reached == 0
    }
}

/// Exhaustive simple-transitivity check of the action of `elements` on the
/// chords in the image of `χ`.
pub fn check_simply_transitive_on(
    chi: &ChiBijection,
    elements: &[ExtensionElement],
    side: Side,
) -> TransitivityReport {
    let chords = chi.chords();
    let index = |c: &ChordLabel| chords.iter().position(|d| d == c).expect("image of χ");
    let n = chords.len();
    let mut counts = vec![0usize; n * n];
    for (i, p) in chords.iter().enumerate() {
        for &g in elements {
            let q = match side {
                Side::Left => chi.left_act(g, p),
                Side::Right => chi.right_act(p, g),
            }
            .expect("chords come from χ");
            counts[i * n + index(&q)] += 1;
        }
    }
    TransitivityReport {
        side,
        chords: n,
        elements: elements.len(),
        unreachable: counts.iter().filter(|&&c| c == 0).count(),
        multiply_reached: counts.iter().filter(|&&c| c > 1).count(),
    }
}

/// Both sides, over every element of `G`.
pub fn verify_simply_transitive(chi: &ChiBijection) -> (TransitivityReport, TransitivityReport) {
    let all: Vec<_> = chi.group().elements().collect();
    (
        check_simply_transitive_on(chi, &all, Side::Left),
        check_simply_transitive_on(chi, &all, Side::Right),
    )
}

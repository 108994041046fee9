//! Pitch-class arithmetic modulo `N`, transposition/inversion operators and
//! chord labels.
//!
//! A chord is always carried as a `(root, type)` label. Raw pitch-class lists
//! only appear when a label is realized or when a list is identified back
//! into a label.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::PcsError;

/// Default number of semitones (equal temperament).
pub const DEFAULT_MODULUS: u32 = 12;

/// A residue modulo `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitchClass {
    value: u32,
    modulus: u32,
}

impl PitchClass {
    /// Builds a pitch-class, reducing `value` modulo `modulus`.
    ///
    /// Panics if `modulus` is zero.
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn transpose(self, k: i64) -> Self {
        Self::new(self.value as i64 + k, self.modulus)
    }

    /// `(k - self) mod N`
    pub fn reflect(self, k: i64) -> Self {
        Self::new(k - self.value as i64, self.modulus)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TiKind {
    Transposition,
    Inversion,
}

/// `T_k: n -> n + k` or `I_k: n -> k - n`, modulo `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TiOperator {
    pub kind: TiKind,
    index: u32,
    modulus: u32,
}

impl TiOperator {
    pub fn transposition(k: i64, modulus: u32) -> Self {
        Self {
            kind: TiKind::Transposition,
            index: PitchClass::new(k, modulus).value,
            modulus,
        }
    }

    pub fn inversion(k: i64, modulus: u32) -> Self {
        Self {
            kind: TiKind::Inversion,
            index: PitchClass::new(k, modulus).value,
            modulus,
        }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_inversion(self) -> bool {
        self.kind == TiKind::Inversion
    }

    pub fn apply(self, p: PitchClass) -> Result<PitchClass, PcsError> {
        if p.modulus != self.modulus {
            return Err(PcsError::ModulusMismatch {
                left: self.modulus,
                right: p.modulus,
            });
        }
        Ok(match self.kind {
            TiKind::Transposition => p.transpose(self.index as i64),
            TiKind::Inversion => p.reflect(self.index as i64),
        })
    }

    /// The operator `self ∘ other` (apply `other` first).
    pub fn compose(self, other: TiOperator) -> Result<TiOperator, PcsError> {
        if self.modulus != other.modulus {
            return Err(PcsError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let (p, q, n) = (self.index as i64, other.index as i64, self.modulus);
        Ok(match (self.kind, other.kind) {
            (TiKind::Transposition, TiKind::Transposition) => Self::transposition(p + q, n),
            (TiKind::Transposition, TiKind::Inversion) => Self::inversion(p + q, n),
            (TiKind::Inversion, TiKind::Transposition) => Self::inversion(p - q, n),
            (TiKind::Inversion, TiKind::Inversion) => Self::transposition(p - q, n),
        })
    }
}

impl fmt::Display for TiOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TiKind::Transposition => write!(f, "T_{}", self.index),
            TiKind::Inversion => write!(f, "I_{}", self.index),
        }
    }
}

/// Free-function form of [`TiOperator::apply`].
pub fn apply_ti(op: TiOperator, p: PitchClass) -> Result<PitchClass, PcsError> {
    op.apply(p)
}

/// Free-function form of [`TiOperator::compose`]: `a ∘ b`.
pub fn compose_ti(a: TiOperator, b: TiOperator) -> Result<TiOperator, PcsError> {
    a.compose(b)
}

/// A named, root-relative interval pattern such as `M = [0,4,7]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcSetType {
    name: String,
    intervals: Vec<u32>,
    modulus: u32,
}

impl PcSetType {
    pub fn new(
        name: impl Into<String>,
        intervals: Vec<u32>,
        modulus: u32,
    ) -> Result<Self, PcsError> {
        let name = name.into();
        if modulus == 0 {
            return Err(PcsError::ZeroModulus);
        }
        match intervals.first() {
            None => return Err(PcsError::EmptyType(name)),
            Some(&first) if first != 0 => return Err(PcsError::NonZeroFirstInterval(name)),
            _ => {}
        }
        if let Some(&bad) = intervals.iter().find(|&&i| i >= modulus) {
            return Err(PcsError::IntervalOutOfRange {
                name,
                interval: bad,
                modulus,
            });
        }
        if intervals.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PcsError::IntervalsNotIncreasing(name));
        }
        Ok(Self {
            name,
            intervals,
            modulus,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn intervals(&self) -> &[u32] {
        &self.intervals
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn cardinality(&self) -> usize {
        self.intervals.len()
    }

    fn tones_at(&self, root: u32) -> BTreeSet<u32> {
        self.intervals
            .iter()
            .map(|i| (root + i) % self.modulus)
            .collect()
    }

    /// Whether some transposition of `self` equals `other` as a set.
    pub fn transpositionally_equivalent(&self, other: &PcSetType) -> bool {
        if self.modulus != other.modulus || self.cardinality() != other.cardinality() {
            return false;
        }
        let target = other.tones_at(0);
        (0..self.modulus).any(|r| self.tones_at(r) == target)
    }

    /// Number of roots `r` for which `r + self` equals `self` (1 unless the
    /// set is transpositionally symmetric).
    pub fn symmetry_count(&self) -> usize {
        let base = self.tones_at(0);
        (0..self.modulus)
            .filter(|&r| self.tones_at(r) == base)
            .count()
    }
}

impl fmt::Display for PcSetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=[", self.name)?;
        for (i, v) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// A chord `n_t`: a root together with a type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordLabel {
    pub root: PitchClass,
    pub kind: Arc<PcSetType>,
}

impl ChordLabel {
    pub fn new(root: i64, kind: Arc<PcSetType>) -> Self {
        let root = PitchClass::new(root, kind.modulus());
        Self { root, kind }
    }

    pub fn type_name(&self) -> &str {
        self.kind.name()
    }

    /// Ordered pitch-classes `root + i` for every interval `i`.
    pub fn realize(&self) -> Vec<PitchClass> {
        self.kind
            .intervals()
            .iter()
            .map(|&i| self.root.transpose(i as i64))
            .collect()
    }

    pub fn pitch_set(&self) -> BTreeSet<PitchClass> {
        self.realize().into_iter().collect()
    }
}

impl fmt::Display for ChordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.root, self.kind.name())
    }
}

pub fn realize_chord(c: &ChordLabel) -> Vec<PitchClass> {
    c.realize()
}

/// Pitch-classes shared by two chords.
pub fn common_tones(p: &ChordLabel, q: &ChordLabel) -> BTreeSet<PitchClass> {
    p.pitch_set()
        .intersection(&q.pitch_set())
        .copied()
        .collect()
}

/// An ordered set of chord types sharing one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRegistry {
    modulus: u32,
    types: Vec<Arc<PcSetType>>,
}

impl TypeRegistry {
    pub fn new(modulus: u32, types: Vec<PcSetType>) -> Result<Self, PcsError> {
        if types.is_empty() {
            return Err(PcsError::EmptyRegistry);
        }
        for (i, t) in types.iter().enumerate() {
            if t.modulus() != modulus {
                return Err(PcsError::ModulusMismatch {
                    left: modulus,
                    right: t.modulus(),
                });
            }
            if types[..i].iter().any(|u| u.name() == t.name()) {
                return Err(PcsError::DuplicateType(t.name().to_string()));
            }
        }
        Ok(Self {
            modulus,
            types: types.into_iter().map(Arc::new).collect(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn types(&self) -> &[Arc<PcSetType>] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.types.iter().position(|t| t.name() == name)
    }

    pub fn get(&self, name: &str) -> Option<&Arc<PcSetType>> {
        self.types.iter().find(|t| t.name() == name)
    }

    pub fn chord(&self, root: i64, name: &str) -> Result<ChordLabel, PcsError> {
        let kind = self
            .get(name)
            .ok_or_else(|| PcsError::UnknownType(name.to_string()))?;
        Ok(ChordLabel::new(root, kind.clone()))
    }

    /// All `N * |types|` chords, type-major order.
    pub fn all_chords(&self) -> Vec<ChordLabel> {
        self.types
            .iter()
            .flat_map(|t| (0..self.modulus).map(move |r| ChordLabel::new(r as i64, t.clone())))
            .collect()
    }

    /// Rejects registries in which a root assignment would be ill-defined.
    pub fn check_unambiguous(&self) -> Result<(), PcsError> {
        for (i, a) in self.types.iter().enumerate() {
            if a.symmetry_count() > 1 {
                return Err(PcsError::AmbiguousRegistry {
                    first: a.name().to_string(),
                    second: a.name().to_string(),
                });
            }
            for b in &self.types[i + 1..] {
                if a.transpositionally_equivalent(b) {
                    return Err(PcsError::AmbiguousRegistry {
                        first: a.name().to_string(),
                        second: b.name().to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Finds the chord whose pitch-class set equals `pcs`.
    pub fn identify(&self, pcs: &[PitchClass]) -> Result<Option<ChordLabel>, PcsError> {
        self.check_unambiguous()?;
        if let Some(p) = pcs.iter().find(|p| p.modulus() != self.modulus) {
            return Err(PcsError::ModulusMismatch {
                left: self.modulus,
                right: p.modulus(),
            });
        }
        let wanted: BTreeSet<u32> = pcs.iter().map(|p| p.value()).collect();
        if wanted.len() != pcs.len() {
            return Ok(None);
        }
        for t in &self.types {
            if t.cardinality() != wanted.len() {
                continue;
            }
            for root in 0..self.modulus {
                if t.tones_at(root) == wanted {
                    return Ok(Some(ChordLabel::new(root as i64, t.clone())));
                }
            }
        }
        Ok(None)
    }
}

pub fn identify_chord(
    pcs: &[PitchClass],
    registry: &TypeRegistry,
) -> Result<Option<ChordLabel>, PcsError> {
    registry.identify(pcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(v: i64) -> PitchClass {
        PitchClass::new(v, 12)
    }

    fn t(k: i64) -> TiOperator {
        TiOperator::transposition(k, 12)
    }

    fn i(k: i64) -> TiOperator {
        TiOperator::inversion(k, 12)
    }

    fn mm() -> TypeRegistry {
        TypeRegistry::new(
            12,
            vec![
                PcSetType::new("M", vec![0, 4, 7], 12).unwrap(),
                PcSetType::new("m", vec![0, 3, 7], 12).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(t(1).apply(pc(0)).unwrap(), pc(1));
        assert_eq!(i(0).apply(pc(4)).unwrap(), pc(8));
        assert_eq!(t(0).apply(pc(7)).unwrap(), pc(7));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let err = t(1).apply(PitchClass::new(3, 7)).unwrap_err();
        assert!(matches!(
            err,
            PcsError::ModulusMismatch { left: 12, right: 7 }
        ));
        assert!(t(1).compose(TiOperator::inversion(0, 7)).is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(t(3).compose(t(4)).unwrap(), t(7));
        assert_eq!(i(5).compose(i(2)).unwrap(), t(3));
        assert_eq!(i(0).compose(i(0)).unwrap(), t(0));
    }

    #[test]
    fn compose_agrees_pointwise_exhaustively() {
        let ops: Vec<_> = (0..12).flat_map(|k| [t(k), i(k)]).collect();
        for &a in &ops {
            for &b in &ops {
                let ab = a.compose(b).unwrap();
                for n in 0..12 {
                    let p = pc(n);
                    assert_eq!(ab.apply(p).unwrap(), a.apply(b.apply(p).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn inversions_are_involutions() {
        for k in 0..12 {
            for n in 0..12 {
                assert_eq!(i(k).apply(i(k).apply(pc(n)).unwrap()).unwrap(), pc(n));
            }
        }
    }

    #[test]
    fn realize_examples() {
        let reg = mm();
        let as_u32 = |c: &ChordLabel| c.realize().iter().map(|p| p.value()).collect::<Vec<_>>();
        assert_eq!(as_u32(&reg.chord(0, "M").unwrap()), vec![0, 4, 7]);
        assert_eq!(as_u32(&reg.chord(5, "m").unwrap()), vec![5, 8, 0]);
        let alpha = Arc::new(PcSetType::new("alpha", vec![0, 2, 5], 12).unwrap());
        assert_eq!(as_u32(&ChordLabel::new(0, alpha)), vec![0, 2, 5]);
    }

    #[test]
    fn identify_examples() {
        let reg = mm();
        let pcs = |v: &[i64]| v.iter().map(|&x| pc(x)).collect::<Vec<_>>();
        assert_eq!(
            reg.identify(&pcs(&[0, 8, 5])).unwrap(),
            Some(reg.chord(5, "m").unwrap())
        );
        assert_eq!(
            reg.identify(&pcs(&[0, 4, 7])).unwrap(),
            Some(reg.chord(0, "M").unwrap())
        );
        assert_eq!(reg.identify(&pcs(&[0, 1, 2])).unwrap(), None);
        assert_eq!(reg.identify(&pcs(&[0, 0, 4, 7])).unwrap(), None);

        let mab = TypeRegistry::new(
            12,
            vec![
                PcSetType::new("M", vec![0, 4, 7], 12).unwrap(),
                PcSetType::new("alpha", vec![0, 2, 5], 12).unwrap(),
                PcSetType::new("beta", vec![0, 4, 5], 12).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            mab.identify(&pcs(&[7, 9, 0])).unwrap(),
            Some(mab.chord(7, "alpha").unwrap())
        );
    }

    #[test]
    fn ambiguous_registries_are_rejected() {
        let reg = TypeRegistry::new(
            12,
            vec![
                PcSetType::new("M", vec![0, 4, 7], 12).unwrap(),
                PcSetType::new("M2", vec![0, 5, 9], 12).unwrap(),
            ],
        )
        .unwrap();
        let err = reg.identify(&[pc(0), pc(4), pc(7)]).unwrap_err();
        assert!(matches!(err, PcsError::AmbiguousRegistry { .. }));

        let aug =
            TypeRegistry::new(12, vec![PcSetType::new("aug", vec![0, 4, 8], 12).unwrap()]).unwrap();
        assert!(aug.identify(&[pc(0), pc(4), pc(8)]).is_err());
    }

    #[test]
    fn type_validation() {
        assert!(matches!(
            PcSetType::new("x", vec![0, 4, 16], 12),
            Err(PcsError::IntervalOutOfRange { interval: 16, .. })
        ));
        assert!(PcSetType::new("x", vec![1, 4], 12).is_err());
        assert!(PcSetType::new("x", vec![0, 7, 4], 12).is_err());
        assert!(PcSetType::new("x", vec![0, 4, 4], 12).is_err());
        assert!(PcSetType::new("x", vec![], 12).is_err());
    }

    #[test]
    fn common_tone_examples() {
        let reg = mm();
        let c = reg.chord(0, "M").unwrap();
        let tones = |s: BTreeSet<PitchClass>| s.into_iter().map(|p| p.value()).collect::<Vec<_>>();
        assert_eq!(
            tones(common_tones(&c, &reg.chord(0, "m").unwrap())),
            vec![0, 7]
        );
        assert_eq!(
            tones(common_tones(&c, &reg.chord(4, "m").unwrap())),
            vec![4, 7]
        );
        assert_eq!(tones(common_tones(&c, &c)), vec![0, 4, 7]);
    }

    #[test]
    fn display() {
        let reg = mm();
        assert_eq!(reg.chord(5, "m").unwrap().to_string(), "5_m");
        assert_eq!(i(7).to_string(), "I_7");
        assert_eq!(reg.types()[0].to_string(), "M=[0,4,7]");
    }
}

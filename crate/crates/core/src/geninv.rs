//! Generalized inversions between chord types of equal cardinality.
//!
//! A generalized inversion `J` is fixed by a pairing `π` of source positions
//! with target positions and a root constant `c`. Tone `i` of the source
//! chord `n_s` is sent by `I_{k_i}`, `k_i = c + a_i + b_π(i)`, onto tone
//! `π(i)` of the target chord `(c − n)_t`; target chords go back through the
//! same inversions. Because every `I_k` is an involution, so is `J`.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::GenInvError;
use crate::groupoid::GroupoidMorphism;
use crate::groupoid_action::{GroupoidChi, Variance};
use crate::pcs::{common_tones, ChordLabel, PcSetType, PitchClass, TiOperator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedInversion {
    source: Arc<PcSetType>,
    target: Arc<PcSetType>,
    pairing: Vec<usize>,
    reverse: Vec<usize>,
    constant: u32,
    inversions: Vec<TiOperator>,
}

fn check_pairing(pairing: &[usize], k: usize) -> Result<(), GenInvError> {
    let mut seen = vec![false; k];
    if pairing.len() != k {
        return Err(GenInvError::BadPairing(k));
    }
    for &j in pairing {
        if j >= k || std::mem::replace(&mut seen[j], true) {
            return Err(GenInvError::BadPairing(k));
        }
    }
    Ok(())
}

fn invert_pairing(pairing: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pairing.len()];
    for (i, &j) in pairing.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

impl GeneralizedInversion {
    pub fn new(
        source: Arc<PcSetType>,
        target: Arc<PcSetType>,
        pairing: Vec<usize>,
        constant: i64,
    ) -> Result<Self, GenInvError> {
        if source.cardinality() != target.cardinality() || source.modulus() != target.modulus() {
            return Err(GenInvError::CardinalityMismatch(
                source.name().to_string(),
                target.name().to_string(),
            ));
        }
        check_pairing(&pairing, source.cardinality())?;
        let n = source.modulus();
        let constant = PitchClass::new(constant, n).value();
        let (a, b) = (source.intervals(), target.intervals());
        let inversions = pairing
            .iter()
            .enumerate()
            .map(|(i, &j)| TiOperator::inversion(constant as i64 + a[i] as i64 + b[j] as i64, n))
            .collect();
        Ok(Self {
            reverse: invert_pairing(&pairing),
            source,
            target,
            pairing,
            constant,
            inversions,
        })
    }

    /// Replaces the pairing used when acting on target chords. Anything other
    /// than the inverse of the forward pairing breaks the involution.
    pub fn with_reverse_pairing(mut self, reverse: Vec<usize>) -> Result<Self, GenInvError> {
        check_pairing(&reverse, self.source.cardinality())?;
        self.reverse = reverse;
        Ok(self)
    }

    pub fn source(&self) -> &Arc<PcSetType> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PcSetType> {
        &self.target
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    /// `I_{k_i}` for each source position `i`.
    pub fn inversions(&self) -> &[TiOperator] {
        &self.inversions
    }

    /// Distinct inversion indices, ascending.
    pub fn distinct_inversions(&self) -> Vec<u32> {
        self.inversions
            .iter()
            .map(|op| op.index())
            .sorted()
            .dedup()
            .collect()
    }

    /// `k` in `J_k`, relative to the conventional `J_0` for this type pair.
    pub fn subscript(&self) -> u32 {
        let (c0, _) = conventional_origin(&self.source, &self.target);
        PitchClass::new(self.constant as i64 - c0 as i64, self.source.modulus()).value()
    }

    fn describe(&self) -> String {
        format!("{self}")
    }

    /// Each tone of `p` with its image, in the order of `p`'s intervals.
    pub fn apply_tones(
        &self,
        p: &ChordLabel,
    ) -> Result<Vec<(PitchClass, PitchClass)>, GenInvError> {
        let ops: Vec<TiOperator> = if *p.kind == *self.source {
            self.inversions.clone()
        } else if *p.kind == *self.target {
            self.reverse.iter().map(|&i| self.inversions[i]).collect()
        } else {
            return Err(GenInvError::WrongType {
                op: self.describe(),
                chord: p.to_string(),
            });
        };
        p.realize()
            .into_iter()
            .zip(ops)
            .map(|(x, op)| {
                op.apply(x)
                    .map(|y| (x, y))
                    .map_err(|_| GenInvError::WrongType {
                        op: self.describe(),
                        chord: p.to_string(),
                    })
            })
            .collect()
    }

    /// Applies every tone's inversion and identifies the resulting chord of
    /// the other type. Source chords go to the target type and target
    /// chords back to the source type.
    pub fn apply(&self, p: &ChordLabel) -> Result<ChordLabel, GenInvError> {
        let tones = self.apply_tones(p)?;
        let other = if *p.kind == *self.source {
            &self.target
        } else {
            &self.source
        };
        let image: std::collections::BTreeSet<PitchClass> = tones.iter().map(|&(_, y)| y).collect();
        (0..other.modulus() as i64)
            .map(|r| ChordLabel::new(r, other.clone()))
            .find(|q| q.pitch_set() == image)
            .ok_or_else(|| GenInvError::NotAChord {
                op: self.describe(),
                chord: p.to_string(),
                target: other.name().to_string(),
            })
    }

    /// `J(J(p)) = p` for every chord of both types.
    pub fn verify_involution(&self) -> bool {
        [&self.source, &self.target].into_iter().all(|t| {
            (0..t.modulus() as i64).all(|r| {
                let p = ChordLabel::new(r, t.clone());
                self.apply(&p)
                    .and_then(|q| self.apply(&q))
                    .is_ok_and(|back| back == p)
            })
        })
    }
}

impl fmt::Display for GeneralizedInversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "_{{{},{}}}J_{}",
            self.source.name(),
            self.target.name(),
            self.subscript()
        )?;
        let (_, p0) = conventional_origin(&self.source, &self.target);
        if self.pairing != p0 {
            write!(f, "[{}]", self.pairing.iter().join(","))?;
        }
        Ok(())
    }
}

pub fn apply_geninv(j: &GeneralizedInversion, p: &ChordLabel) -> Result<ChordLabel, GenInvError> {
    j.apply(p)
}

pub fn verify_involution(j: &GeneralizedInversion) -> bool {
    j.verify_involution()
}

const MAJOR_ALPHA: ([u32; 3], [u32; 3], u32, [usize; 3]) = ([0, 4, 7], [0, 2, 5], 3, [0, 2, 1]);
const ALPHA_BETA: ([u32; 3], [u32; 3], u32, [usize; 3]) = ([0, 2, 5], [0, 4, 5], 7, [2, 1, 0]);

/// `(c₀, π₀)` of the operator named `J_0` for this ordered pair of types.
///
/// Pinned for `[0,4,7]`/`[0,2,5]` and `[0,2,5]`/`[0,4,5]` (either order);
/// otherwise the first operator in enumeration order, `c = 0` with the
/// identity pairing.
pub fn conventional_origin(source: &PcSetType, target: &PcSetType) -> (u32, Vec<usize>) {
    let (s, t) = (source.intervals(), target.intervals());
    for (a, b, c0, p0) in [MAJOR_ALPHA, ALPHA_BETA] {
        if s == a && t == b {
            return (c0, p0.to_vec());
        }
        if s == b && t == a {
            return (c0, invert_pairing(&p0));
        }
    }
    (0, (0..source.cardinality()).collect())
}

/// Every `(c, π)` for the pair, ordered by `c` then lexicographically by
/// `π`. With `min_common_tones`, keeps only operators whose image of the
/// root-0 source chord shares at least that many tones with it.
pub fn enumerate_geninvs(
    source: &Arc<PcSetType>,
    target: &Arc<PcSetType>,
    min_common_tones: Option<usize>,
) -> Result<Vec<GeneralizedInversion>, GenInvError> {
    if source.cardinality() != target.cardinality() || source.modulus() != target.modulus() {
        return Err(GenInvError::CardinalityMismatch(
            source.name().to_string(),
            target.name().to_string(),
        ));
    }
    let k = source.cardinality();
    let origin = ChordLabel::new(0, source.clone());
    let mut out = Vec::new();
    for c in 0..source.modulus() as i64 {
        for pairing in (0..k).permutations(k) {
            let j = GeneralizedInversion::new(source.clone(), target.clone(), pairing, c)?;
            if let Some(min) = min_common_tones {
                if common_tones(&origin, &j.apply(&origin)?).len() < min {
                    continue;
                }
            }
            out.push(j);
        }
    }
    Ok(out)
}

/// A generalized inversion read off a groupoid morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInversion {
    pub inversion: GeneralizedInversion,
    /// Set for contravariant morphisms: the operator reproduces the action
    /// on the root-anchor chord, and on `n_X` after moving it there.
    pub frame_relative: bool,
}

/// The generalized inversion (with the conventional pairing) realizing `g`.
///
/// Covariant: `g` must act on roots as `n ↦ c − n`. Contravariant: `g` acts
/// as a translation, and the operator matching it on the root-anchor chord is
/// returned with `frame_relative` set.
pub fn geninv_from_morphism(
    g: GroupoidMorphism,
    chi: &GroupoidChi,
) -> Result<MorphismInversion, GenInvError> {
    let ext = chi.extension();
    if g.h().is_identity() {
        return Err(GenInvError::IdentityMorphism(ext.name(g)));
    }
    let source_obj = chi.acting_object(g);
    let source = ext.objects()[source_obj].clone();
    let origin = chi.chord(chi.root_anchor().value() as i64, source_obj);
    let image = chi.act(g, &origin)?;
    let n = source.modulus() as i64;
    let frame_relative = match chi.variance() {
        Variance::Covariant => {
            let inverting = (0..n).all(|r| {
                let p = chi.chord(r, source_obj);
                chi.act(g, &p).is_ok_and(|q| {
                    q.root.value() as i64
                        == (image.root.value() as i64 + origin.root.value() as i64 - r)
                            .rem_euclid(n)
                })
            });
            if !inverting {
                return Err(GenInvError::NotInverting(ext.name(g)));
            }
            false
        }
        Variance::Contravariant => true,
    };
    let target = image.kind.clone();
    let (_, pairing) = conventional_origin(&source, &target);
    let constant = origin.root.value() as i64 + image.root.value() as i64;
    Ok(MorphismInversion {
        inversion: GeneralizedInversion::new(source, target, pairing, constant)?,
        frame_relative,
    })
}

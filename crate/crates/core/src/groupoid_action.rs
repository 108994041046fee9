//! Partial transformations from the Hom functors of a groupoid extension.
//!
//! With an anchor object `A`, the covariant functor `Hom(A, −)` identifies
//! `n_X` with `(z_X^n, h_AX)` and lets `g` act by `g · m_p`. The
//! contravariant functor `Hom(−, A)` identifies `n_X` with `(z_A^n, h_XA)`
//! and lets `g` act by `m_p · g`. Either way a morphism only acts on chords
//! of one type.

use std::fmt;
use std::sync::Arc;

use crate::error::ActionError;
use crate::groupoid::{GroupoidExtension, GroupoidMorphism, ObjectId};
use crate::pcs::{ChordLabel, PitchClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        })
    }
}

/// Chord ↔ morphism identification for one anchor and variance. Root
/// `root_anchor` stands for `z^0` at every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidChi {
    ext: Arc<GroupoidExtension>,
    anchor: ObjectId,
    variance: Variance,
    root_anchor: PitchClass,
}

impl GroupoidChi {
    pub fn new(
        ext: Arc<GroupoidExtension>,
        anchor: ObjectId,
        variance: Variance,
        root_anchor: PitchClass,
    ) -> Result<Self, ActionError> {
        let h = ext.h_groupoid();
        if anchor >= h.object_count() {
            return Err(ActionError::InvalidBijection(format!(
                "no object #{anchor}"
            )));
        }
        if ext.z().order() != root_anchor.modulus() as usize {
            return Err(ActionError::InvalidBijection(format!(
                "|Z| = {} but there are {} roots",
                ext.z().order(),
                root_anchor.modulus()
            )));
        }
        for x in 0..h.object_count() {
            if h.morphism(anchor, x).is_err() {
                return Err(ActionError::InvalidBijection(format!(
                    "anchor `{}` does not reach `{}`",
                    h.object_name(anchor),
                    h.object_name(x)
                )));
            }
            if h.objects()[x].modulus() != root_anchor.modulus() {
                return Err(ActionError::InvalidBijection(format!(
                    "type `{}` uses modulus {}",
                    h.object_name(x),
                    h.objects()[x].modulus()
                )));
            }
        }
        Ok(Self {
            ext,
            anchor,
            variance,
            root_anchor,
        })
    }

    pub fn covariant(ext: Arc<GroupoidExtension>, anchor: &str) -> Result<Self, ActionError> {
        Self::by_name(ext, anchor, Variance::Covariant)
    }

    pub fn contravariant(ext: Arc<GroupoidExtension>, anchor: &str) -> Result<Self, ActionError> {
        Self::by_name(ext, anchor, Variance::Contravariant)
    }

    fn by_name(
        ext: Arc<GroupoidExtension>,
        anchor: &str,
        variance: Variance,
    ) -> Result<Self, ActionError> {
        let id = ext
            .object_id(anchor)
            .ok_or_else(|| ActionError::UnregisteredType(anchor.to_string()))?;
        let n = ext.objects()[id].modulus();
        Self::new(ext, id, variance, PitchClass::new(0, n))
    }

    pub fn extension(&self) -> &Arc<GroupoidExtension> {
        &self.ext
    }

    pub fn anchor(&self) -> ObjectId {
        self.anchor
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn root_anchor(&self) -> PitchClass {
        self.root_anchor
    }

    pub fn with_variance(&self, variance: Variance) -> Self {
        Self {
            variance,
            ..self.clone()
        }
    }

    pub fn object_of(&self, p: &ChordLabel) -> Result<ObjectId, ActionError> {
        self.ext
            .objects()
            .iter()
            .position(|t| **t == *p.kind)
            .ok_or_else(|| ActionError::UnregisteredType(p.type_name().to_string()))
    }

    pub fn chord(&self, root: i64, object: ObjectId) -> ChordLabel {
        ChordLabel {
            root: PitchClass::new(root, self.root_anchor.modulus()),
            kind: self.ext.objects()[object].clone(),
        }
    }

    /// All chords, grouped by object then root.
    pub fn chords(&self) -> Vec<ChordLabel> {
        let n = self.root_anchor.modulus() as i64;
        (0..self.ext.objects().len())
            .flat_map(|x| (0..n).map(move |r| (r, x)))
            .map(|(r, x)| self.chord(r, x))
            .collect()
    }

    /// The morphism identified with `p`.
    pub fn morphism_of(&self, p: &ChordLabel) -> Result<GroupoidMorphism, ActionError> {
        let x = self.object_of(p)?;
        if p.root.modulus() != self.root_anchor.modulus() {
            return Err(ActionError::RootOutOfRange {
                root: p.root.value(),
                size: self.root_anchor.modulus() as usize,
            });
        }
        let n = self.root_anchor.modulus() as i64;
        let z = (p.root.value() as i64 - self.root_anchor.value() as i64).rem_euclid(n) as usize;
        let (dom, cod) = match self.variance {
            Variance::Covariant => (self.anchor, x),
            Variance::Contravariant => (x, self.anchor),
        };
        Ok(self.ext.morphism(z, dom, cod)?)
    }

    /// The chord identified with `m`; `m` must start (covariant) or end
    /// (contravariant) at the anchor.
    pub fn chord_of(&self, m: GroupoidMorphism) -> Result<ChordLabel, ActionError> {
        let x = match self.variance {
            Variance::Covariant if m.dom == self.anchor => m.cod,
            Variance::Contravariant if m.cod == self.anchor => m.dom,
            _ => {
                return Err(ActionError::InvalidBijection(format!(
                    "{} is not in the anchored Hom-set",
                    self.ext.name(m)
                )))
            }
        };
        Ok(self.chord(self.root_anchor.value() as i64 + m.z as i64, x))
    }

    fn undefined(&self, g: GroupoidMorphism, p: &ChordLabel) -> ActionError {
        ActionError::PartialUndefined {
            morphism: self.ext.name(g),
            chord: p.to_string(),
        }
    }

    fn require(&self, variance: Variance) -> Result<(), ActionError> {
        if self.variance == variance {
            Ok(())
        } else {
            Err(ActionError::InvalidBijection(format!(
                "{variance} action needs a {variance} bijection, this one is {}",
                self.variance
            )))
        }
    }

    /// `g.p`: defined when `dom(g)` is the type of `p`.
    pub fn covariant_act(
        &self,
        g: GroupoidMorphism,
        p: &ChordLabel,
    ) -> Result<ChordLabel, ActionError> {
        self.require(Variance::Covariant)?;
        let mp = self.morphism_of(p)?;
        if g.dom != mp.cod {
            return Err(self.undefined(g, p));
        }
        self.chord_of(self.ext.compose(g, mp)?)
    }

    /// `p.g`: defined when `cod(g)` is the type of `p`; the image has type
    /// `dom(g)`.
    pub fn contravariant_act(
        &self,
        p: &ChordLabel,
        g: GroupoidMorphism,
    ) -> Result<ChordLabel, ActionError> {
        self.require(Variance::Contravariant)?;
        let mp = self.morphism_of(p)?;
        if g.cod != mp.dom {
            return Err(self.undefined(g, p));
        }
        self.chord_of(self.ext.compose(mp, g)?)
    }

    /// Whichever of the two actions matches this bijection's variance.
    pub fn act(&self, g: GroupoidMorphism, p: &ChordLabel) -> Result<ChordLabel, ActionError> {
        match self.variance {
            Variance::Covariant => self.covariant_act(g, p),
            Variance::Contravariant => self.contravariant_act(p, g),
        }
    }

    /// Type of the chords `g` acts on.
    pub fn acting_object(&self, g: GroupoidMorphism) -> ObjectId {
        match self.variance {
            Variance::Covariant => g.dom,
            Variance::Contravariant => g.cod,
        }
    }

    /// The unique morphism taking `p` to `q`.
    pub fn label_pair(
        &self,
        p: &ChordLabel,
        q: &ChordLabel,
    ) -> Result<GroupoidMorphism, ActionError> {
        let (mp, mq) = (self.morphism_of(p)?, self.morphism_of(q)?);
        let g = match self.variance {
            Variance::Covariant => self.ext.compose(mq, self.ext.inverse(mp))?,
            Variance::Contravariant => self.ext.compose(self.ext.inverse(mp), mq)?,
        };
        Ok(g)
    }

    /// Root map of `g` on its acting type and of `g⁻¹` on the other type.
    pub fn contextual_check(&self, g: GroupoidMorphism) -> ContextualReport {
        let n = self.root_anchor.modulus() as i64;
        let mut parts = vec![g];
        if !g.h().is_identity() {
            parts.push(self.ext.inverse(g));
        }
        let per_type = parts
            .into_iter()
            .map(|m| {
                let x = self.acting_object(m);
                let images: Vec<ChordLabel> = (0..n)
                    .map(|r| {
                        self.act(m, &self.chord(r, x))
                            .expect("acting object matches")
                    })
                    .collect();
                let roots: Vec<u32> = images.iter().map(|c| c.root.value()).collect();
                RootMap {
                    morphism: self.ext.name(m),
                    source: self.ext.h_groupoid().object_name(x).to_string(),
                    target: images[0].type_name().to_string(),
                    affine: AffineRootMap::fit(&roots, n),
                    images: roots,
                }
            })
            .collect::<Vec<_>>();
        let contextual = per_type.windows(2).any(|w| w[0].images != w[1].images);
        ContextualReport {
            type_changing: !g.h().is_identity(),
            contextual,
            per_type,
        }
    }

    /// For contravariant `g` and `p = n_X`: the morphism whose covariant
    /// action on `p` is `p.g`, built by moving `p` to root 0, applying the
    /// covariant counterpart of `g` there, and moving back.
    pub fn reference_frame_morphism(
        &self,
        p: &ChordLabel,
        g: GroupoidMorphism,
        covariant: &GroupoidChi,
    ) -> Result<GroupoidMorphism, ActionError> {
        covariant.require(Variance::Covariant)?;
        let q = self.contravariant_act(p, g)?;
        let x = self.object_of(p)?;
        let y = self.object_of(&q)?;
        let origin = self.chord(self.root_anchor.value() as i64, x);
        let g0 = covariant.label_pair(&origin, &self.contravariant_act(&origin, g)?)?;
        let n = self.ext.z().order() as i64;
        let shift =
            (p.root.value() as i64 - self.root_anchor.value() as i64).rem_euclid(n) as usize;
        let to_origin = self.ext.inverse(self.ext.morphism(shift, x, x)?);
        let back = self.ext.morphism(shift, y, y)?;
        Ok(self.ext.compose(back, self.ext.compose(g0, to_origin)?)?)
    }
}

/// `n ↦ unit·n + shift`, when the root map has that form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineRootMap {
    pub unit: i64,
    pub shift: i64,
}

impl AffineRootMap {
    fn fit(images: &[u32], n: i64) -> Option<Self> {
        let shift = *images.first()? as i64;
        let unit = (*images.get(1)? as i64 - shift).rem_euclid(n);
        let fits = images
            .iter()
            .enumerate()
            .all(|(r, &v)| (unit * r as i64 + shift).rem_euclid(n) == v as i64);
        fits.then_some(Self { unit, shift })
    }
}

impl fmt::Display for AffineRootMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            1 => write!(f, "n+{}", self.shift),
            0 => write!(f, "{}", self.shift),
            u => write!(f, "{u}n+{}", self.shift),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMap {
    pub morphism: String,
    pub source: String,
    pub target: String,
    /// `images[n]` is the root of the image of `n_source`.
    pub images: Vec<u32>,
    pub affine: Option<AffineRootMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextualReport {
    pub type_changing: bool,
    pub contextual: bool,
    pub per_type: Vec<RootMap>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::build_malphabeta;
    use crate::pcs::common_tones;

    fn setup() -> (GroupoidChi, GroupoidChi) {
        let ext = Arc::new(build_malphabeta());
        (
            GroupoidChi::covariant(ext.clone(), "M").unwrap(),
            GroupoidChi::contravariant(ext, "M").unwrap(),
        )
    }

    fn m(chi: &GroupoidChi, z: i64, dom: &str, cod: &str) -> GroupoidMorphism {
        chi.extension()
            .morphism_by_name(z.rem_euclid(12) as usize, dom, cod)
            .unwrap()
    }

    fn c(chi: &GroupoidChi, root: i64, ty: &str) -> ChordLabel {
        chi.chord(root, chi.extension().object_id(ty).unwrap())
    }

    #[test]
    fn covariant_examples() {
        let (cov, _) = setup();
        for n in 0..12 {
            assert_eq!(
                cov.covariant_act(m(&cov, 3, "M", "alpha"), &c(&cov, n, "M"))
                    .unwrap(),
                c(&cov, 3 - n, "alpha")
            );
            assert_eq!(
                cov.covariant_act(m(&cov, 7, "alpha", "beta"), &c(&cov, n, "alpha"))
                    .unwrap(),
                c(&cov, 7 - n, "beta")
            );
        }
        assert_eq!(
            cov.covariant_act(m(&cov, 7, "alpha", "beta"), &c(&cov, 2, "alpha"))
                .unwrap()
                .to_string(),
            "5_beta"
        );
        let err = cov
            .covariant_act(m(&cov, 3, "M", "alpha"), &c(&cov, 0, "alpha"))
            .unwrap_err();
        assert!(matches!(err, ActionError::PartialUndefined { .. }));
        assert!(err
            .to_string()
            .contains("partial transformation undefined for this type"));
    }

    #[test]
    fn contravariant_examples() {
        let (_, con) = setup();
        for n in 0..12 {
            assert_eq!(
                con.contravariant_act(&c(&con, n, "M"), m(&con, 7, "alpha", "M"))
                    .unwrap(),
                c(&con, n + 7, "alpha")
            );
            assert_eq!(
                con.contravariant_act(&c(&con, n, "alpha"), m(&con, 7, "M", "alpha"))
                    .unwrap(),
                c(&con, n + 5, "M")
            );
            assert_eq!(
                con.contravariant_act(&c(&con, n, "alpha"), m(&con, 0, "beta", "alpha"))
                    .unwrap(),
                c(&con, n, "beta")
            );
        }
        assert!(matches!(
            con.contravariant_act(&c(&con, 0, "beta"), m(&con, 0, "beta", "alpha")),
            Err(ActionError::PartialUndefined { .. })
        ));
    }

    #[test]
    fn wrong_variance_is_rejected() {
        let (cov, con) = setup();
        assert!(cov
            .contravariant_act(&c(&cov, 0, "M"), m(&cov, 7, "alpha", "M"))
            .is_err());
        assert!(con
            .covariant_act(m(&con, 3, "M", "alpha"), &c(&con, 0, "M"))
            .is_err());
    }

    #[test]
    fn label_pair_examples() {
        let (cov, con) = setup();
        assert_eq!(
            cov.label_pair(&c(&cov, 0, "M"), &c(&cov, 3, "alpha"))
                .unwrap(),
            m(&cov, 3, "M", "alpha")
        );
        assert_eq!(
            con.label_pair(&c(&con, 0, "M"), &c(&con, 7, "alpha"))
                .unwrap(),
            m(&con, 7, "alpha", "M")
        );
        let p = c(&cov, 5, "beta");
        assert_eq!(cov.label_pair(&p, &p).unwrap(), cov.extension().identity(2));
    }

    #[test]
    fn covariant_action_is_functorial() {
        let (cov, _) = setup();
        let ext = cov.extension().clone();
        let ms = ext.morphisms();
        for p in cov.chords() {
            let x = cov.object_of(&p).unwrap();
            for &g1 in ms.iter().filter(|g| g.dom == x) {
                let q = cov.covariant_act(g1, &p).unwrap();
                for &g2 in ms.iter().filter(|g| g.dom == g1.cod) {
                    assert_eq!(
                        cov.covariant_act(ext.compose(g2, g1).unwrap(), &p).unwrap(),
                        cov.covariant_act(g2, &q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn contravariant_action_is_anti_functorial() {
        let (_, con) = setup();
        let ext = con.extension().clone();
        let ms = ext.morphisms();
        for p in con.chords() {
            let x = con.object_of(&p).unwrap();
            for &g1 in ms.iter().filter(|g| g.cod == x) {
                let q = con.contravariant_act(&p, g1).unwrap();
                for &g2 in ms.iter().filter(|g| g.cod == g1.dom) {
                    assert_eq!(
                        con.contravariant_act(&q, g2).unwrap(),
                        con.contravariant_act(&p, ext.compose(g1, g2).unwrap())
                            .unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn each_pair_of_chords_has_exactly_one_morphism() {
        let (cov, con) = setup();
        for chi in [cov, con] {
            let ms = chi.extension().morphisms();
            let chords = chi.chords();
            assert_eq!(chords.len(), 36);
            for p in &chords {
                for q in &chords {
                    let hits: Vec<_> = ms
                        .iter()
                        .filter(|&&g| chi.act(g, p).ok().as_ref() == Some(q))
                        .collect();
                    assert_eq!(hits.len(), 1, "{} {p} -> {q}", chi.variance());
                    assert_eq!(*hits[0], chi.label_pair(p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn common_tone_counts_hold_at_every_root() {
        let (_, con) = setup();
        for n in 0..12 {
            let pm = c(&con, n, "M");
            let pa = c(&con, n, "alpha");
            let a = con
                .contravariant_act(&pm, m(&con, 7, "alpha", "M"))
                .unwrap();
            let b = con
                .contravariant_act(&pm, m(&con, 2, "alpha", "M"))
                .unwrap();
            let d = con
                .contravariant_act(&pa, m(&con, 0, "beta", "alpha"))
                .unwrap();
            assert_eq!(common_tones(&pm, &a).len(), 2);
            assert_eq!(common_tones(&pm, &b).len(), 2);
            assert_eq!(common_tones(&pa, &d).len(), 2);
        }
    }

    #[test]
    fn contextual_reports() {
        let (_, con) = setup();
        let r = con.contextual_check(m(&con, 7, "alpha", "M"));
        assert!(r.contextual && r.type_changing);
        assert_eq!(r.per_type[0].source, "M");
        assert_eq!(
            r.per_type[0].affine,
            Some(AffineRootMap { unit: 1, shift: 7 })
        );
        assert_eq!(r.per_type[1].source, "alpha");
        assert_eq!(
            r.per_type[1].affine,
            Some(AffineRootMap { unit: 1, shift: 5 })
        );

        let id = con.contextual_check(con.extension().identity(0));
        assert!(!id.contextual && !id.type_changing);
        assert_eq!(id.per_type.len(), 1);
        assert_eq!(
            id.per_type[0].affine,
            Some(AffineRootMap { unit: 1, shift: 0 })
        );

        let ab = con.contextual_check(m(&con, 0, "beta", "alpha"));
        assert!(!ab.contextual && ab.type_changing);
        assert_eq!(ab.per_type[1].morphism, "(z_beta^0,h_{alpha,beta})");
        assert!(ab
            .per_type
            .iter()
            .all(|t| t.affine == Some(AffineRootMap { unit: 1, shift: 0 })));
    }

    #[test]
    fn contravariant_matches_covariant_in_reference_frame() {
        let (cov, con) = setup();
        for g in con.extension().morphisms() {
            for n in 0..12 {
                let p = con.chord(n, g.cod);
                let frame = con.reference_frame_morphism(&p, g, &cov).unwrap();
                assert_eq!(
                    cov.covariant_act(frame, &p).unwrap(),
                    con.contravariant_act(&p, g).unwrap()
                );
            }
        }
    }

    #[test]
    fn anchor_must_reach_every_object() {
        use crate::groupoid::{ActionFunctor, FormalInversionGroupoid, GroupoidCocycle};
        let full = build_malphabeta();
        let h =
            FormalInversionGroupoid::from_classes(full.objects().to_vec(), &[vec![0, 1], vec![2]])
                .unwrap();
        let phi = ActionFunctor::inverse(&h, full.z());
        let zeta = GroupoidCocycle::trivial(&h, full.z());
        let ext = GroupoidExtension::new(full.z_groupoid().clone(), h, phi, zeta).unwrap();
        assert!(matches!(
            GroupoidChi::covariant(Arc::new(ext), "M"),
            Err(ActionError::InvalidBijection(_))
        ));
    }
}

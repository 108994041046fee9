//! The dihedral group of order 24 acting on the 24 major and minor triads.
//!
//! Left actions give the T/I group (`T_k ↔ (z^k, 1)`, `I_k ↔ (z^{k+5}, s)`),
//! right actions give the PLR group (`P ↔ (1, s)`, `L ↔ (z^4, s)`,
//! `R ↔ (z^9, s)`).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::action::ChiBijection;
use crate::error::ActionError;
use crate::extension::{Cocycle2, ExtensionElement, ExtensionGroup, GroupAction};
use crate::group::FiniteGroup;
use crate::pcs::{ChordLabel, PcSetType, PitchClass};

const N: u32 = 12;
/// `I_0` is the element `(z^5, s)`.
const INVERSION_OFFSET: usize = 5;

pub const MAJOR: [u32; 3] = [0, 4, 7];
pub const MINOR: [u32; 3] = [0, 3, 7];

/// `D24 = Z12 ⋊ Z2` with `φ_s(z) = z⁻¹`, anchored at `0_M`.
pub fn build_d24() -> (Arc<ExtensionGroup>, ChiBijection) {
    let z = Arc::new(FiniteGroup::cyclic(N as usize, "z"));
    let h = Arc::new(FiniteGroup::cyclic_named(2, vec!["1".into(), "s".into()]));
    let zeta = Cocycle2::trivial(&h, &z);
    let group =
        Arc::new(ExtensionGroup::new(GroupAction::inverse(h, z), zeta).expect("D24 is a group"));
    let types = vec![
        Arc::new(PcSetType::new("M", MAJOR.to_vec(), N).expect("valid")),
        Arc::new(PcSetType::new("m", MINOR.to_vec(), N).expect("valid")),
    ];
    let chi = ChiBijection::new(group.clone(), PitchClass::new(0, N), types).expect("24 chords");
    (group, chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Plr {
    P,
    L,
    R,
}

impl Plr {
    pub const ALL: [Plr; 3] = [Plr::P, Plr::L, Plr::R];

    fn letter(self) -> char {
        match self {
            Plr::P => 'P',
            Plr::L => 'L',
            Plr::R => 'R',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'P' => Some(Plr::P),
            'L' => Some(Plr::L),
            'R' => Some(Plr::R),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TiName {
    T(u32),
    I(u32),
}

impl fmt::Display for TiName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiName::T(k) => write!(f, "T_{k}"),
            TiName::I(k) => write!(f, "I_{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Left,
    Right,
}

/// A named element together with the side it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTransformation {
    pub name: String,
    pub element: ExtensionElement,
    pub mode: Mode,
}

/// D24 with its T/I and PLR vocabulary.
#[derive(Clone, Debug)]
pub struct NeoRiemannian {
    group: Arc<ExtensionGroup>,
    chi: ChiBijection,
}

impl Default for NeoRiemannian {
    fn default() -> Self {
        Self::new()
    }
}

impl NeoRiemannian {
    pub fn new() -> Self {
        let (group, chi) = build_d24();
        Self { group, chi }
    }

    /// Recognizes a bijection that is structurally the standard D24 one:
    /// same composition law, major type at the identity, minor at `s`,
    /// root anchor 0. Used to attach T/I and PLR names to generic systems.
    pub fn recognize(chi: &ChiBijection) -> Option<Self> {
        let reference = Self::new();
        let g = chi.group();
        if g.z_group().order() != N as usize
            || g.h_group().order() != 2
            || chi.root_anchor().value() != 0
        {
            return None;
        }
        let same_law = g.elements().all(|a| {
            g.elements()
                .all(|b| g.compose(a, b) == reference.group.compose(a, b))
        });
        let types_match = chi.types()[g.h_group().identity()].intervals() == MAJOR
            && chi.types()[1 - g.h_group().identity()].intervals() == MINOR;
        if !(same_law && types_match && g.h_group().identity() == 0) {
            return None;
        }
        Some(Self {
            group: g.clone(),
            chi: chi.clone(),
        })
    }

    pub fn group(&self) -> &Arc<ExtensionGroup> {
        &self.group
    }

    pub fn chi(&self) -> &ChiBijection {
        &self.chi
    }

    pub fn chord(&self, root: i64, major: bool) -> ChordLabel {
        ChordLabel::new(root, self.chi.types()[usize::from(!major)].clone())
    }

    pub fn transposition(&self, k: i64) -> ExtensionElement {
        ExtensionElement::new(k.rem_euclid(N as i64) as usize, 0)
    }

    pub fn inversion(&self, k: i64) -> ExtensionElement {
        ExtensionElement::new(
            (k + INVERSION_OFFSET as i64).rem_euclid(N as i64) as usize,
            1,
        )
    }

    pub fn ti_element(&self, name: TiName) -> ExtensionElement {
        match name {
            TiName::T(k) => self.transposition(k as i64),
            TiName::I(k) => self.inversion(k as i64),
        }
    }

    pub fn plr_element(&self, x: Plr) -> ExtensionElement {
        match x {
            Plr::P => ExtensionElement::new(0, 1),
            Plr::L => ExtensionElement::new(4, 1),
            Plr::R => ExtensionElement::new(9, 1),
        }
    }

    /// `T_k` or `I_k` for an element acting on the left.
    pub fn ti_name(&self, g: ExtensionElement) -> TiName {
        if g.h == 0 {
            TiName::T(g.z as u32)
        } else {
            TiName::I(((g.z + N as usize - INVERSION_OFFSET) % N as usize) as u32)
        }
    }

    pub fn ti_left_action(&self, name: TiName, p: &ChordLabel) -> Result<ChordLabel, ActionError> {
        self.chi.left_act(self.ti_element(name), p)
    }

    pub fn plr_right_action(&self, x: Plr, p: &ChordLabel) -> Result<ChordLabel, ActionError> {
        self.chi.right_act(p, self.plr_element(x))
    }

    /// Evaluates a word such as `R(LR)^3` or `LRP`. Words read right to left
    /// as function application, so `LR` applies `R` first; as right actions
    /// that is the element `R · L`. `1` is the empty word.
    pub fn eval_plr_word(&self, word: &str) -> Option<ExtensionElement> {
        let letters = expand_word(word)?;
        Some(letters.iter().rev().fold(self.group.identity(), |acc, &x| {
            self.group.compose(acc, self.plr_element(x))
        }))
    }

    /// Shortest PLR word realizing `g` as a right action, ties broken by
    /// generator order `P`, `L`, `R` in application order.
    pub fn plr_word(&self, g: ExtensionElement) -> String {
        let mut seen: BTreeMap<ExtensionElement, Vec<Plr>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(self.group.identity(), Vec::new());
        queue.push_back(self.group.identity());
        while let Some(cur) = queue.pop_front() {
            if cur == g {
                break;
            }
            for x in Plr::ALL {
                let next = self.group.compose(cur, self.plr_element(x));
                if !seen.contains_key(&next) {
                    let mut path = seen[&cur].clone();
                    path.push(x);
                    seen.insert(next, path);
                    queue.push_back(next);
                }
            }
        }
        let path = &seen[&g];
        if path.is_empty() {
            "1".to_string()
        } else {
            path.iter().rev().map(|x| x.letter()).collect()
        }
    }

    pub fn named_transformations(&self) -> Vec<NamedTransformation> {
        let mut out: Vec<_> = (0..N)
            .flat_map(|k| [TiName::T(k), TiName::I(k)])
            .map(|n| NamedTransformation {
                name: n.to_string(),
                element: self.ti_element(n),
                mode: Mode::Left,
            })
            .collect();
        out.extend(Plr::ALL.iter().map(|&x| NamedTransformation {
            name: x.letter().to_string(),
            element: self.plr_element(x),
            mode: Mode::Right,
        }));
        out
    }

    /// Checks both presentations inside the group.
    pub fn verify_presentations(&self) -> PresentationReport {
        let g = &self.group;
        let e = g.identity();
        let t1 = self.transposition(1);
        let i0 = self.inversion(0);
        let word = |w: &str| self.eval_plr_word(w).expect("well-formed word");
        let mut relations = vec![
            ("(T_1)^12 = 1", g.pow(t1, 12) == e),
            ("I_0^2 = 1", g.pow(i0, 2) == e),
            (
                "I_0.T_1.I_0 = T_-1",
                g.product(&[i0, t1, i0]) == self.transposition(-1),
            ),
            ("P = R(LR)^3", word("R(LR)^3") == word("P")),
            ("(LR)^12 = 1", word("(LR)^12") == e),
            ("P^2 = 1", word("P^2") == e),
            ("(LRP)^2 = 1", word("(LRP)^2") == e),
            ("L^2 = R^2 = 1", word("L^2") == e && word("R^2") == e),
        ];
        relations.push(("<T_1, I_0> = G", generated_size(g, &[t1, i0]) == g.order()));
        relations.push((
            "<L, R> = G",
            generated_size(g, &[self.plr_element(Plr::L), self.plr_element(Plr::R)]) == g.order(),
        ));
        PresentationReport {
            relations: relations
                .into_iter()
                .map(|(n, ok)| (n.to_string(), ok))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub relations: Vec<(String, bool)>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

fn generated_size(g: &ExtensionGroup, gens: &[ExtensionElement]) -> usize {
    let mut seen = vec![g.identity()];
    let mut i = 0;
    while i < seen.len() {
        for &x in gens {
            let y = g.compose(seen[i], x);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen.len()
}

/// Expands `R(LR)^3`-style words into letters, left to right as written.
fn expand_word(word: &str) -> Option<Vec<Plr>> {
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let out = parse_seq(&chars, &mut pos)?;
    (pos == chars.len()).then_some(out)
}

fn parse_seq(chars: &[char], pos: &mut usize) -> Option<Vec<Plr>> {
    let mut out = Vec::new();
    while *pos < chars.len() && chars[*pos] != ')' {
        let atom = match chars[*pos] {
            '1' => {
                *pos += 1;
                Vec::new()
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(chars, pos)?;
                if chars.get(*pos) != Some(&')') {
                    return None;
                }
                *pos += 1;
                inner
            }
            c => {
                *pos += 1;
                vec![Plr::from_letter(c)?]
            }
        };
        let mut reps = 1usize;
        if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            reps = chars[start..*pos].iter().collect::<String>().parse().ok()?;
        }
        for _ in 0..reps {
            out.extend_from_slice(&atom);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::common_tones;

    #[test]
    fn d24_build() {
        let (g, chi) = build_d24();
        assert_eq!(g.order(), 24);
        assert_eq!(chi.chords().len(), 24);
        let nr = NeoRiemannian::new();
        for k in 0..12 {
            assert_eq!(
                nr.ti_element(TiName::T(k)),
                ExtensionElement::new(k as usize, 0)
            );
            assert_eq!(
                nr.ti_element(TiName::I(k)),
                ExtensionElement::new((k as usize + 5) % 12, 1)
            );
        }
    }

    #[test]
    fn ti_examples() {
        let nr = NeoRiemannian::new();
        assert_eq!(
            nr.ti_left_action(TiName::I(0), &nr.chord(0, true)).unwrap(),
            nr.chord(5, false)
        );
        let p = nr.chord(8, false);
        assert_eq!(nr.ti_left_action(TiName::T(0), &p).unwrap(), p);
        assert_eq!(
            nr.ti_left_action(TiName::I(3), &nr.chord(2, true)).unwrap(),
            nr.chord(6, false)
        );
        for n in 0..12 {
            assert_eq!(
                nr.ti_left_action(TiName::I(0), &nr.chord(n, true)).unwrap(),
                nr.chord(5 - n, false)
            );
            assert_eq!(
                nr.ti_left_action(TiName::I(0), &nr.chord(n, false))
                    .unwrap(),
                nr.chord(5 - n, true)
            );
        }
    }

    #[test]
    fn plr_examples_and_formulas() {
        let nr = NeoRiemannian::new();
        assert_eq!(
            nr.plr_right_action(Plr::P, &nr.chord(5, true)).unwrap(),
            nr.chord(5, false)
        );
        assert_eq!(
            nr.plr_right_action(Plr::R, &nr.chord(0, true)).unwrap(),
            nr.chord(9, false)
        );
        assert_eq!(
            nr.plr_right_action(Plr::L, &nr.chord(0, false)).unwrap(),
            nr.chord(8, true)
        );
        for n in 0..12 {
            let (maj, min) = (nr.chord(n, true), nr.chord(n, false));
            assert_eq!(nr.plr_right_action(Plr::P, &maj).unwrap(), min);
            assert_eq!(nr.plr_right_action(Plr::P, &min).unwrap(), maj);
            assert_eq!(
                nr.plr_right_action(Plr::L, &maj).unwrap(),
                nr.chord(n + 4, false)
            );
            assert_eq!(
                nr.plr_right_action(Plr::L, &min).unwrap(),
                nr.chord(n + 8, true)
            );
            assert_eq!(
                nr.plr_right_action(Plr::R, &maj).unwrap(),
                nr.chord(n + 9, false)
            );
            assert_eq!(
                nr.plr_right_action(Plr::R, &min).unwrap(),
                nr.chord(n + 3, true)
            );
        }
    }

    #[test]
    fn plr_are_involutions_with_two_common_tones() {
        let nr = NeoRiemannian::new();
        for p in nr.chi().chords() {
            for x in Plr::ALL {
                let q = nr.plr_right_action(x, &p).unwrap();
                assert_eq!(nr.plr_right_action(x, &q).unwrap(), p);
                assert_eq!(common_tones(&p, &q).len(), 2, "{x:?} on {p}");
            }
        }
    }

    #[test]
    fn presentations_hold() {
        let report = NeoRiemannian::new().verify_presentations();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn word_evaluation() {
        let nr = NeoRiemannian::new();
        let g = nr.group();
        // LR applies R first: p.R.L = p.(R·L)
        let expected = g.compose(nr.plr_element(Plr::R), nr.plr_element(Plr::L));
        assert_eq!(nr.eval_plr_word("LR"), Some(expected));
        assert_eq!(nr.eval_plr_word("1"), Some(g.identity()));
        assert_eq!(nr.eval_plr_word("R(LR)^3"), Some(nr.plr_element(Plr::P)));
        assert_eq!(nr.eval_plr_word("LX"), None);
        assert_eq!(nr.eval_plr_word("(LR"), None);
    }

    #[test]
    fn shortest_words_round_trip() {
        let nr = NeoRiemannian::new();
        for g in nr.group().elements() {
            let w = nr.plr_word(g);
            assert_eq!(nr.eval_plr_word(&w), Some(g), "{w}");
        }
        assert_eq!(nr.plr_word(nr.plr_element(Plr::L)), "L");
        assert_eq!(nr.plr_word(nr.group().identity()), "1");
    }

    #[test]
    fn names_are_bijective_per_mode() {
        let nr = NeoRiemannian::new();
        let named = nr.named_transformations();
        let left: Vec<_> = named.iter().filter(|n| n.mode == Mode::Left).collect();
        assert_eq!(left.len(), 24);
        for (i, a) in left.iter().enumerate() {
            for b in &left[i + 1..] {
                assert_ne!(a.element, b.element);
            }
            assert_eq!(nr.ti_name(a.element).to_string(), a.name);
        }
    }

    #[test]
    fn recognize_standard_bijection() {
        let (_, chi) = build_d24();
        assert!(NeoRiemannian::recognize(&chi).is_some());
    }
}

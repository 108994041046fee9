//! Random valid `SystemSpec`s, shared by the round-trip tests.

use chordgroup::dsl::{
    ChiSpec, HSpec, PhiEntry, PhiSpec, SystemMode, SystemSpec, TypeSpec, ZetaEntry, ZetaSpec,
};
use chordgroup::Variance;
use proptest::prelude::*;

const TYPE_NAMES: [&str; 8] = ["M", "m", "alpha", "beta", "α", "β", "dim", "sus_4"];
const H_NAMES: [&str; 6] = ["1", "s", "r", "t", "e2", "g"];

/// Deterministic choices drawn from a proptest-generated stream.
struct Choices<'a> {
    stream: &'a [u32],
    at: usize,
}

impl Choices<'_> {
    fn pick(&mut self, n: usize) -> usize {
        let v = self.stream[self.at % self.stream.len()];
        self.at += 1;
        v as usize % n
    }

    fn coin(&mut self) -> bool {
        self.pick(2) == 1
    }

    fn subset<T: Clone>(&mut self, items: &[T]) -> Vec<T> {
        items.iter().filter(|_| self.coin()).cloned().collect()
    }

    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.pick(i + 1);
            items.swap(i, j);
        }
    }
}

fn build_spec(modulus: u32, groupoid: bool, ntypes: usize, stream: &[u32]) -> SystemSpec {
    let mut c = Choices { stream, at: 0 };
    let mut names: Vec<&str> = TYPE_NAMES.to_vec();
    c.shuffle(&mut names);
    let types: Vec<TypeSpec> = names[..ntypes]
        .iter()
        .map(|n| {
            let mut intervals = vec![0];
            intervals.extend((1..modulus).filter(|_| c.pick(4) == 0));
            TypeSpec {
                name: n.to_string(),
                intervals,
            }
        })
        .collect();
    let type_names: Vec<String> = types.iter().map(|t| t.name.clone()).collect();
    let root = c.pick(modulus as usize) as u32;

    if !groupoid {
        let order = ntypes;
        let h_names: Vec<String> = if c.coin() {
            let mut pool = H_NAMES.to_vec();
            c.shuffle(&mut pool);
            pool[..order].iter().map(|s| s.to_string()).collect()
        } else {
            (0..order)
                .map(|k| match k {
                    0 => "1".to_string(),
                    1 => "s".to_string(),
                    _ => format!("s^{k}"),
                })
                .collect()
        };
        let h = if c.coin() {
            HSpec::Cyclic {
                names: h_names.clone(),
            }
        } else {
            let rows = (0..order)
                .map(|_| (0..order).map(|_| c.pick(order)).collect())
                .collect();
            HSpec::Table {
                names: h_names.clone(),
                rows,
            }
        };
        let phi = match c.pick(3) {
            0 => PhiSpec::Trivial,
            1 => PhiSpec::Inverse,
            _ => PhiSpec::Explicit(
                c.subset(&h_names)
                    .into_iter()
                    .map(|n| PhiEntry {
                        on: vec![n],
                        unit: c.pick(modulus as usize) as u32,
                    })
                    .collect(),
            ),
        };
        let pairs: Vec<Vec<String>> = h_names
            .iter()
            .flat_map(|a| h_names.iter().map(move |b| vec![a.clone(), b.clone()]))
            .collect();
        let zeta = if c.coin() {
            ZetaSpec::Trivial
        } else {
            ZetaSpec::Explicit(
                c.subset(&pairs)
                    .into_iter()
                    .map(|at| ZetaEntry {
                        at,
                        value: c.pick(modulus as usize) as u32,
                    })
                    .collect(),
            )
        };
        let mut chi_types = type_names.clone();
        c.shuffle(&mut chi_types);
        return SystemSpec {
            modulus,
            mode: SystemMode::Group,
            h,
            types,
            phi,
            zeta,
            chi: ChiSpec::Group {
                root,
                types: chi_types,
            },
        };
    }

    let component: Vec<usize> = (0..ntypes).map(|_| c.pick(ntypes)).collect();
    let h = if c.coin() {
        HSpec::Complete
    } else {
        let mut classes: Vec<Vec<String>> = Vec::new();
        let mut labels: Vec<usize> = Vec::new();
        for (i, &k) in component.iter().enumerate() {
            match labels.iter().position(|&l| l == k) {
                Some(p) => classes[p].push(type_names[i].clone()),
                None => {
                    labels.push(k);
                    classes.push(vec![type_names[i].clone()]);
                }
            }
        }
        HSpec::Classes(classes)
    };
    let linked = |x: usize, y: usize| matches!(h, HSpec::Complete) || component[x] == component[y];
    let arrows: Vec<(usize, usize)> = (0..ntypes)
        .flat_map(|x| (0..ntypes).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && linked(x, y))
        .collect();
    let phi = match c.pick(3) {
        0 => PhiSpec::Trivial,
        1 => PhiSpec::Inverse,
        _ => PhiSpec::Explicit(
            c.subset(&arrows)
                .into_iter()
                .map(|(x, y)| PhiEntry {
                    on: vec![type_names[x].clone(), type_names[y].clone()],
                    unit: c.pick(modulus as usize) as u32,
                })
                .collect(),
        ),
    };
    let triples: Vec<(usize, usize, usize)> = (0..ntypes)
        .flat_map(|x| (0..ntypes).flat_map(move |y| (0..ntypes).map(move |w| (x, y, w))))
        .filter(|&(x, y, w)| linked(x, y) && linked(y, w))
        .collect();
    let zeta = if c.coin() {
        ZetaSpec::Trivial
    } else {
        ZetaSpec::Explicit(
            c.subset(&triples)
                .into_iter()
                .map(|(x, y, w)| ZetaEntry {
                    at: vec![
                        type_names[x].clone(),
                        type_names[y].clone(),
                        type_names[w].clone(),
                    ],
                    value: c.pick(modulus as usize) as u32,
                })
                .collect(),
        )
    };
    let anchor = type_names[c.pick(ntypes)].clone();
    let variance = if c.coin() {
        Variance::Covariant
    } else {
        Variance::Contravariant
    };
    SystemSpec {
        modulus,
        mode: SystemMode::Groupoid,
        h,
        types,
        phi,
        zeta,
        chi: ChiSpec::Groupoid {
            root,
            anchor,
            variance,
        },
    }
}

pub fn spec_strategy() -> impl Strategy<Value = SystemSpec> {
    (
        1u32..=24,
        any::<bool>(),
        1usize..=4,
        prop::collection::vec(any::<u32>(), 128),
    )
        .prop_map(|(modulus, groupoid, ntypes, stream)| {
            build_spec(modulus, groupoid, ntypes, &stream)
        })
}

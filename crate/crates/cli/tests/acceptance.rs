//! Acceptance checks 1 through 10. Runs without the libtest harness so every
//! criterion reports a line even when an earlier one fails.

#[path = "../../core/tests/support/spec_gen.rs"]
mod spec_gen;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;

use chordgroup::dsl::{parse_system, serialize_system};
use chordgroup::groupoid::build_malphabeta;
use chordgroup::neo_riemannian::Plr;
use chordgroup::pcs::{common_tones, TiOperator};
use chordgroup::{
    enumerate_geninvs, ChordLabel, GeneralizedInversion, GroupoidChi, GroupoidMorphism,
    NeoRiemannian, PcSetType, PitchClass, TypeRegistry,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type RootFormula<'a> = (
    &'a GroupoidChi,
    GroupoidMorphism,
    &'a str,
    &'a str,
    fn(i64) -> i64,
);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ty(name: &str, iv: [u32; 3]) -> Arc<PcSetType> {
    Arc::new(PcSetType::new(name, iv.to_vec(), 12).unwrap())
}

fn d24_structure() -> Outcome {
    let nr = NeoRiemannian::new();
    let report = nr.group().verify_group();
    ensure(report.passed(), || {
        format!("group axioms: {:?}", report.failures())
    })?;
    let pres = nr.verify_presentations();
    ensure(pres.passed(), || {
        format!("relations: {:?}", pres.failures())
    })?;
    Ok(format!(
        "{} elements, {} relations",
        nr.group().order(),
        pres.relations.len()
    ))
}

fn ti_identities() -> Outcome {
    let (t, i) = (
        |k| TiOperator::transposition(k, 12),
        |k| TiOperator::inversion(k, 12),
    );
    let mut checked = 0;
    for p in 0..12 {
        for q in 0..12 {
            let cases = [
                (t(p).compose(t(q)).unwrap(), t(p + q)),
                (t(p).compose(i(q)).unwrap(), i(p + q)),
                (i(p).compose(t(q)).unwrap(), i(p - q)),
                (i(p).compose(i(q)).unwrap(), t(p - q)),
            ];
            for (got, want) in cases {
                // Compare as maps, not just as names.
                for n in 0..12 {
                    let x = PitchClass::new(n, 12);
                    ensure(got.apply(x).unwrap() == want.apply(x).unwrap(), || {
                        format!("{got} vs {want} at {n}")
                    })?;
                }
                ensure(got == want, || format!("{got} != {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} relations"))
}

fn action_correspondence() -> Outcome {
    let nr = NeoRiemannian::new();
    let reg =
        TypeRegistry::new(12, nr.chi().types().iter().map(|t| (**t).clone()).collect()).unwrap();
    for p in nr.chi().chords() {
        for k in 0..12 {
            let g = nr.inversion(k);
            let inverted: Vec<PitchClass> = p.realize().into_iter().map(|x| x.reflect(k)).collect();
            let want = reg
                .identify(&inverted)
                .unwrap()
                .ok_or("inverted triad not recognised")?;
            let got = nr.chi().left_act(g, &p).unwrap();
            ensure(got == want, || format!("I_{k} on {p}: {got} vs {want}"))?;
        }
        let n = p.root.value() as i64;
        let major = p.type_name() == "M";
        let expect = |x: Plr| match (x, major) {
            (Plr::P, _) => nr.chord(n, !major),
            (Plr::L, true) => nr.chord(n + 4, false),
            (Plr::L, false) => nr.chord(n - 4, true),
            (Plr::R, true) => nr.chord(n + 9, false),
            (Plr::R, false) => nr.chord(n + 3, true),
        };
        for x in Plr::ALL {
            let got = nr.plr_right_action(x, &p).unwrap();
            ensure(got == expect(x), || format!("{x:?} on {p}: {got}"))?;
        }
    }
    let c_major = nr.chord(0, true);
    let f_minor = nr.chi().left_act(nr.inversion(0), &c_major).unwrap();
    let tones: Vec<u32> = c_major
        .realize()
        .iter()
        .map(|x| x.reflect(0).value())
        .collect();
    ensure(f_minor.to_string() == "5_m" && tones == [0, 8, 5], || {
        format!("{f_minor} {tones:?}")
    })?;
    Ok("24 chords x 12 inversions, P/L/R on 24 chords".into())
}

fn conjugation_bridge() -> Outcome {
    let nr = NeoRiemannian::new();
    let (g, chi) = (nr.group(), nr.chi());
    let mut pairs = 0;
    for p in chi.chords() {
        for h in g.elements() {
            let k = chi.conjugate_for(&p, h).unwrap();
            ensure(
                chi.left_act(k, &p).unwrap() == chi.right_act(&p, h).unwrap(),
                || format!("{p} {h:?}"),
            )?;
            pairs += 1;
        }
    }
    let t2 = nr.transposition(2);
    let lhs = g.product(&[t2, nr.inversion(7), g.inverse(t2)]);
    ensure(lhs == nr.inversion(11), || {
        format!("T_2.I_7.T_2^-1 = {}", nr.ti_name(lhs))
    })?;
    Ok(format!("{pairs} pairs, T_2.I_7.T_2^-1 = I_11"))
}

fn groupoid_soundness() -> Outcome {
    let ext = build_malphabeta();
    let r = ext.verify();
    ensure(r.passed(), || format!("{:?}", r.failures()))?;
    ensure(
        r.associativity_violations == 0
            && r.morphisms_without_inverse == 0
            && r.extension_property_violations == 0
            && r.cocycle.passed()
            && ext.zeta().is_trivial(0),
        || format!("{r:?}"),
    )?;
    Ok(format!(
        "{} morphisms, {} composable triples",
        r.morphisms, r.composable_triples
    ))
}

fn groupoid_actions() -> Outcome {
    let ext = Arc::new(build_malphabeta());
    let cov = GroupoidChi::covariant(ext.clone(), "M").unwrap();
    let con = GroupoidChi::contravariant(ext.clone(), "M").unwrap();
    let m = |z: i64, d: &str, c: &str| {
        ext.morphism_by_name(z.rem_euclid(12) as usize, d, c)
            .unwrap()
    };
    let c = |n: i64, t: &str| cov.chord(n, ext.object_id(t).unwrap());
    let cases: [RootFormula; 6] = [
        (&cov, m(3, "M", "alpha"), "M", "alpha", |n| 3 - n),
        (&cov, m(7, "alpha", "beta"), "alpha", "beta", |n| 7 - n),
        (&con, m(7, "alpha", "M"), "M", "alpha", |n| n + 7),
        (&con, m(7, "M", "alpha"), "alpha", "M", |n| n + 5),
        (&con, m(0, "beta", "alpha"), "alpha", "beta", |n| n),
        (&con, m(0, "alpha", "beta"), "beta", "alpha", |n| n),
    ];
    for (chi, g, from, to, f) in cases {
        for n in 0..12 {
            let got = chi.act(g, &c(n, from)).map_err(|e| e.to_string())?;
            ensure(got == c(f(n), to), || {
                format!("{} on {n}_{from}: {got}", ext.name(g))
            })?;
        }
    }
    Ok("6 formulas x 12 roots".into())
}

fn generalized_inversions() -> Outcome {
    let (maj, alpha, beta) = (
        ty("M", [0, 4, 7]),
        ty("alpha", [0, 2, 5]),
        ty("beta", [0, 4, 5]),
    );
    let j_ma = GeneralizedInversion::new(maj.clone(), alpha.clone(), vec![0, 2, 1], 3).unwrap();
    let j_ab = GeneralizedInversion::new(alpha.clone(), beta.clone(), vec![2, 1, 0], 7).unwrap();
    ensure(
        j_ma.subscript() == 0 && j_ma.distinct_inversions() == [0, 3],
        || format!("{j_ma}"),
    )?;
    ensure(
        j_ab.subscript() == 0 && j_ab.distinct_inversions() == [0, 1],
        || format!("{j_ab}"),
    )?;
    for n in 0..12 {
        let a = j_ma.apply(&ChordLabel::new(n, maj.clone())).unwrap();
        ensure(a == ChordLabel::new(3 - n, alpha.clone()), || {
            format!("{j_ma} on {n}_M: {a}")
        })?;
        let b = j_ab.apply(&ChordLabel::new(n, alpha.clone())).unwrap();
        ensure(b == ChordLabel::new(7 - n, beta.clone()), || {
            format!("{j_ab} on {n}_alpha: {b}")
        })?;
    }
    let pairs = [(&maj, &alpha), (&alpha, &beta), (&maj, &beta)];
    let mut operators = 0;
    for (s, t) in pairs {
        for j in enumerate_geninvs(s, t, None).unwrap() {
            ensure(j.verify_involution(), || {
                format!("{j} is not an involution")
            })?;
            operators += 1;
        }
    }
    // Expected shared tones come from intersecting the realized triads.
    let wanted = [
        (&maj, &alpha, 7, [0, 7]),
        (&maj, &alpha, 2, [4, 7]),
        (&alpha, &beta, 0, [0, 5]),
    ];
    for (s, t, root, tones) in wanted {
        let origin = ChordLabel::new(0, s.clone());
        let target = ChordLabel::new(root, t.clone());
        let shared: Vec<u32> = common_tones(&origin, &target)
            .iter()
            .map(|p| p.value())
            .collect();
        ensure(shared == tones, || {
            format!("{origin} & {target} share {shared:?}")
        })?;
        let found = enumerate_geninvs(s, t, Some(2))
            .unwrap()
            .iter()
            .any(|j| j.apply(&origin).unwrap() == target);
        ensure(found, || {
            format!("{origin} -> {target} missing from filtered listing")
        })?;
    }
    Ok(format!(
        "{operators} operators involutive, 3 voice-leadings found"
    ))
}

/// Every `(k_0, k_1, k_2)` such that applying `I_{k_i}` to tone `i` of each
/// major triad yields some alpha chord.
fn brute_force_triples(source: &[u32], target: &PcSetType) -> BTreeSet<Vec<u32>> {
    let targets: Vec<BTreeSet<u32>> = (0..12)
        .map(|r| target.intervals().iter().map(|b| (r + b) % 12).collect())
        .collect();
    let mut found = BTreeSet::new();
    for k0 in 0..12u32 {
        for k1 in 0..12u32 {
            for k2 in 0..12u32 {
                let ks = [k0, k1, k2];
                let ok = (0..12u32).all(|n| {
                    let image: BTreeSet<u32> = source
                        .iter()
                        .zip(ks)
                        .map(|(a, k)| (k + 24 - n - a) % 12)
                        .collect();
                    targets.contains(&image)
                });
                if ok {
                    found.insert(ks.to_vec());
                }
            }
        }
    }
    found
}

fn enumeration_oracle() -> Outcome {
    let (maj, alpha) = (ty("M", [0, 4, 7]), ty("alpha", [0, 2, 5]));
    let oracle = brute_force_triples(maj.intervals(), &alpha);
    let listed = enumerate_geninvs(&maj, &alpha, None).unwrap();
    let enumerated: BTreeSet<Vec<u32>> = listed
        .iter()
        .map(|j| j.inversions().iter().map(|op| op.index()).collect())
        .collect();
    ensure(oracle.len() == 72, || {
        format!("oracle found {}", oracle.len())
    })?;
    ensure(listed.len() == 72 && enumerated.len() == 72, || {
        format!("enumerator gave {}", listed.len())
    })?;
    ensure(oracle == enumerated, || {
        "enumerator and oracle disagree".into()
    })?;
    Ok("72 operators, matches brute force".into())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chordgroup"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn parser_and_fixtures() -> Outcome {
    let mut runner = TestRunner::new(Config::default());
    let strategy = spec_gen::spec_strategy();
    for case in 0..1000 {
        let spec = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        let text = serialize_system(&spec);
        let back = parse_system(&text).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == spec, || format!("case {case} differs:\n{text}"))?;
    }
    for builtin in ["builtin:d24", "builtin:malphabeta"] {
        let out = bin().args(["verify", builtin]).output().unwrap();
        ensure(out.status.code() == Some(0), || {
            format!("{builtin} exit {:?}", out.status.code())
        })?;
    }
    let mutations = [
        ("bad_cocycle.sys", "cocycle normalization"),
        ("bad_phi.sys", "automorphism"),
        ("nonfunctorial_groupoid.sys", "functoriality"),
    ];
    for (file, axiom) in mutations {
        let out = bin().arg("verify").arg(fixture(file)).output().unwrap();
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(
            out.status.code() == Some(1) && stdout.contains(axiom),
            || format!("{file}: exit {:?}\n{stdout}", out.status.code()),
        )?;
    }
    Ok("1000 round trips, 2 fixtures pass, 3 mutations fail".into())
}

fn cli_self_check() -> Outcome {
    let run = || {
        bin()
            .args(["--format", "tsv", "analyze", "builtin:d24"])
            .arg(fixture("progression.seq"))
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    ensure(a.status.success(), || {
        String::from_utf8_lossy(&a.stderr).into_owned()
    })?;
    ensure(a.stdout == b.stdout, || {
        "output differs between runs".into()
    })?;
    let nr = NeoRiemannian::new();
    let text = String::from_utf8(a.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    ensure(rows.len() == 2, || text.clone())?;
    let chord = |s: &str| {
        let (root, kind) = s.split_once('_').unwrap();
        nr.chord(root.parse().unwrap(), kind == "M")
    };
    for row in &rows {
        let (p, q) = (chord(row[0]), chord(row[1]));
        let (kind, k) = row[2].split_once('_').unwrap();
        let k: i64 = k.parse().unwrap();
        let left = if kind == "T" {
            nr.transposition(k)
        } else {
            nr.inversion(k)
        };
        ensure(nr.chi().left_act(left, &p).unwrap() == q, || {
            format!("{} on {p}", row[2])
        })?;
        let right = nr.eval_plr_word(row[3]).ok_or("bad PLR word")?;
        ensure(nr.chi().right_act(&p, right).unwrap() == q, || {
            format!("{} on {p}", row[3])
        })?;
    }
    let labels: Vec<String> = rows.iter().map(|r| format!("{}/{}", r[2], r[3])).collect();
    Ok(format!("labels {}", labels.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("D24 group and presentations", d24_structure),
        ("T/I composition identities", ti_identities),
        ("action correspondence", action_correspondence),
        ("conjugation bridge", conjugation_bridge),
        ("groupoid soundness", groupoid_soundness),
        ("groupoid action formulas", groupoid_actions),
        ("generalized inversions", generalized_inversions),
        ("enumeration count oracle", enumeration_oracle),
        ("parser round trip and fixtures", parser_and_fixtures),
        ("CLI self-check", cli_self_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

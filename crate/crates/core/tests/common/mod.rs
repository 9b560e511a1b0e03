#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use lexval::engine::Conclusion;
use lexval::{Atom, Fact, Rule, RuleBase, Scale, Valuation};
use proptest::prelude::*;
use proptest::sample::subsequence;

pub fn corpus_dir(kind: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(kind)
}

fn read_dir(kind: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(corpus_dir(kind))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "lex"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

pub fn valid_docs() -> Vec<(String, String)> {
    read_dir("valid")
}

pub fn valid_doc(name: &str) -> String {
    fs::read_to_string(corpus_dir("valid").join(format!("{name}.lex"))).unwrap()
}

/// Malformed documents with the position their first line says the error
/// must be reported at.
pub fn malformed_docs() -> Vec<(String, String, usize, usize)> {
    read_dir("malformed")
        .into_iter()
        .map(|(name, src)| {
            let head = src.lines().next().unwrap();
            let pos = head.strip_prefix("# expect ").unwrap();
            let (l, c) = pos.split_once(':').unwrap();
            (name, src.clone(), l.parse().unwrap(), c.parse().unwrap())
        })
        .collect()
}

pub fn labelled_scale(size: usize) -> Scale {
    Scale::new("g", (0..size).map(|i| format!("G{i}"))).unwrap()
}

/// A scale of 2..=max grades and raw rank strings over it.
pub fn scale_and_strings(
    max: usize,
    len: usize,
    n: usize,
) -> impl Strategy<Value = (Scale, Vec<Vec<usize>>)> {
    (2..=max).prop_flat_map(move |m| {
        (
            Just(labelled_scale(m)),
            prop::collection::vec(prop::collection::vec(0..m, 1..=len), n),
        )
    })
}

pub fn valuations(
    max: usize,
    len: usize,
    n: usize,
) -> impl Strategy<Value = (Scale, Vec<Valuation>)> {
    scale_and_strings(max, len, n).prop_map(|(s, raw)| {
        let vs = raw
            .into_iter()
            .map(|r| Valuation::from_grades(&s, r).unwrap())
            .collect();
        (s, vs)
    })
}

const ATTRS: &[&str] = &["A", "B", "C", "D", "E"];
const VALUES: &[&str] = &["x", "y"];

fn atom() -> impl Strategy<Value = Atom> {
    (0..ATTRS.len(), 0..VALUES.len()).prop_map(|(a, v)| Atom::new(ATTRS[a], VALUES[v]).unwrap())
}

fn pv(m: usize, lo: usize, grades_only: bool) -> impl Strategy<Value = Vec<usize>> {
    let len = if grades_only { 1..=1 } else { 1..=3 };
    prop::collection::vec(lo..m, len)
}

/// Rule bases over `G0..` scales. With `grades_only` every pv is a single
/// grade.
pub fn rule_bases(grades_only: bool) -> impl Strategy<Value = RuleBase> {
    (3usize..=6).prop_flat_map(move |m| {
        let rule = (
            prop::collection::vec(atom(), 1..=3),
            prop::collection::vec((atom(), pv(m, 1, grades_only)), 1..=2),
        );
        let all_atoms: Vec<Atom> = ATTRS
            .iter()
            .flat_map(|a| VALUES.iter().map(move |v| Atom::new(*a, *v).unwrap()))
            .collect();
        (
            Just(m),
            prop::collection::vec(rule, 1..=5),
            subsequence(all_atoms.clone(), 0..=4),
            prop::collection::vec(pv(m, 0, grades_only), 4),
        )
            .prop_map(|(m, rules, fact_atoms, fact_pvs)| {
                let s = labelled_scale(m);
                let rules = rules
                    .into_iter()
                    .enumerate()
                    .map(|(i, (prem, concl))| {
                        let concl = concl
                            .into_iter()
                            .map(|(atom, r)| Conclusion {
                                atom,
                                pv: Valuation::from_grades(&s, r).unwrap(),
                            })
                            .collect();
                        Rule::new(format!("r{i}"), prem, concl).unwrap()
                    })
                    .collect();
                let facts = fact_atoms
                    .into_iter()
                    .zip(fact_pvs)
                    .map(|(atom, r)| Fact {
                        atom,
                        pv: Valuation::from_grades(&s, r).unwrap(),
                    })
                    .collect();
                RuleBase::new(s, rules, facts).unwrap()
            })
    })
}

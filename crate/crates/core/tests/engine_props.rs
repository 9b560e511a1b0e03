mod common;

use std::cmp::Ordering;

use lexval::dsl::{parse_document, serialize};
use lexval::engine::Conclusion;
use lexval::stability::{audit, TNorm};
use lexval::{infer, Atom, Fact, Mode, Rule, RuleBase, Scale, Valuation};
use proptest::prelude::*;

const MODES: [Mode; 3] = [Mode::MpgfR, Mode::MpgfS, Mode::FlatMin];

fn relabel(rb: &RuleBase) -> RuleBase {
    let s = rb.scale();
    let fresh = Scale::new("renamed", s.labels().iter().map(|l| format!("Q{l}"))).unwrap();
    let mv = |v: &Valuation| Valuation::from_canonical(&fresh, v.ranks().to_vec()).unwrap();
    let rules = rb
        .rules()
        .iter()
        .map(|r| Rule {
            id: r.id.clone(),
            premises: r.premises.clone(),
            conclusions: r
                .conclusions
                .iter()
                .map(|c| Conclusion {
                    atom: c.atom.clone(),
                    pv: mv(&c.pv),
                })
                .collect(),
        })
        .collect();
    let facts = rb
        .facts()
        .iter()
        .map(|f| Fact {
            atom: f.atom.clone(),
            pv: mv(&f.pv),
        })
        .collect();
    RuleBase::new(fresh.clone(), rules, facts).unwrap()
}

fn ranking(rb: &RuleBase, mode: Mode) -> Vec<(Atom, Vec<usize>)> {
    infer(rb, mode)
        .unwrap()
        .ranking
        .into_iter()
        .map(|r| (r.atom, r.pv.ranks().to_vec()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rule_order_does_not_matter(rb in common::rule_bases(false), seed in any::<u64>()) {
        let mut rules = rb.rules().to_vec();
        // deterministic shuffle driven by the generated seed
        let mut x = seed | 1;
        for i in (1..rules.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            rules.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let shuffled = rb.with_rules(rules).unwrap();
        for mode in MODES {
            let a = infer(&rb, mode).unwrap();
            let b = infer(&shuffled, mode).unwrap();
            prop_assert_eq!(&a.derived, &b.derived);
            prop_assert_eq!(a.ranking, b.ranking);
        }
    }

    #[test]
    fn trace_replays(rb in common::rule_bases(false)) {
        for mode in MODES {
            let res = infer(&rb, mode).unwrap();
            for d in &res.trace {
                prop_assert_eq!(d.replay(mode).unwrap(), d.output.clone());
                prop_assert_eq!(d.previous.try_cmp(&d.output).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn labels_do_not_matter(rb in common::rule_bases(false)) {
        let renamed = relabel(&rb);
        for mode in MODES {
            prop_assert_eq!(ranking(&rb, mode), ranking(&renamed, mode));
        }
    }

    #[test]
    fn stronger_facts_never_weaken_conclusions(rb in common::rule_bases(false), pick in any::<prop::sample::Index>()) {
        prop_assume!(!rb.facts().is_empty());
        let mut facts = rb.facts().to_vec();
        let i = pick.index(facts.len());
        facts[i].pv = Valuation::top(rb.scale());
        let stronger = rb.with_facts(facts).unwrap();
        let before = infer(&rb, Mode::MpgfR).unwrap();
        let after = infer(&stronger, Mode::MpgfR).unwrap();
        for (atom, pv) in &before.derived {
            prop_assert!(pv.try_cmp(&after.derived[atom]).unwrap() != Ordering::Greater);
        }
    }

    #[test]
    fn strict_monotonicity_of_conclusions(m in 3usize..=7, a in 1usize..7, b in 1usize..7, r in 1usize..7) {
        let (a, b, r) = (a % m, b % m, r % m);
        prop_assume!(a > b && r > 0);
        let s = common::labelled_scale(m);
        let text = format!(
            "{}rule R1: if E = a1 then H = h1 [{r}]\nrule R2: if E = a2 then H = h2 [{r}]\nfact E = a1 [{a}]\nfact E = a2 [{b}]\n",
            serialize(&RuleBase::new(s.clone(), vec![], vec![]).unwrap()),
            r = s.label(r), a = s.label(a), b = s.label(b)
        );
        let rb = parse_document(&text).unwrap();
        let res = infer(&rb, Mode::MpgfR).unwrap();
        let h1 = res.pv(&Atom::new("H", "h1").unwrap()).unwrap();
        let h2 = res.pv(&Atom::new("H", "h2").unwrap()).unwrap();
        prop_assert_eq!(h1.try_cmp(h2).unwrap(), Ordering::Greater);
    }

    #[test]
    fn min_tnorm_never_flips(rb in common::rule_bases(true), seed in any::<u64>()) {
        let rep = audit(&rb, TNorm::Min, 40, seed).unwrap();
        prop_assert_eq!(rep.flips, 0);
        prop_assert!(rep.witness.is_none());
    }

    #[test]
    fn audit_invariants(rb in common::rule_bases(true), seed in any::<u64>(), n in 1usize..40) {
        let rep = audit(&rb, TNorm::Product, n, seed).unwrap();
        prop_assert!(rep.flips <= (n * (n - 1) / 2) as u64);
        prop_assert_eq!(rep.witness.is_some(), rep.flips > 0);
        prop_assert!(rep.pairwise_flips >= rep.flips);
        // the ordinal ranking ignores the embeddings altogether
        let other = audit(&rb, TNorm::Product, n, seed.wrapping_add(1)).unwrap();
        prop_assert_eq!(rep.lexicographic_ranking, other.lexicographic_ranking);
    }
}

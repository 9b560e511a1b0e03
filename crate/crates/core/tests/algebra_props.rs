mod common;

use std::cmp::Ordering;

use lexval::algebra::{
    conj, conj_all, disj, meet, mpgf_r, mpgf_s, neg, r_implication, s_implication,
};
use lexval::{Scale, Valuation, WedgeString};
use proptest::prelude::*;

fn le(a: &Valuation, b: &Valuation) -> bool {
    a.try_cmp(b).unwrap() != Ordering::Greater
}

fn lt(a: &Valuation, b: &Valuation) -> bool {
    a.try_cmp(b).unwrap() == Ordering::Less
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonical_form((s, raw) in common::scale_and_strings(7, 6, 1)) {
        let v = Valuation::from_grades(&s, raw[0].clone()).unwrap();
        let r = v.ranks();
        let top = s.top_rank();
        // (0), (I), a singleton, or starts above 0 and ends below I
        prop_assert!(r.len() == 1 || (r[0] > 0 && r[r.len() - 1] < top));
        prop_assert!(r.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(v.as_wedge_string().reduce(), v.clone());
        let ws = WedgeString::sort(&s, raw[0].clone()).unwrap();
        prop_assert!(ws.indistinguishable(&v.as_wedge_string()).unwrap());
    }

    #[test]
    fn order_is_total((_, v) in common::valuations(6, 5, 3)) {
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let a = f.try_cmp(g).unwrap();
        prop_assert_eq!(a, g.try_cmp(f).unwrap().reverse());
        prop_assert_eq!(a == Ordering::Equal, f == g);
        if le(f, g) && le(g, h) {
            prop_assert!(le(f, h));
        }
    }

    #[test]
    fn conj_is_a_t_norm((s, v) in common::valuations(6, 4, 3)) {
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let top = Valuation::top(&s);
        let bot = Valuation::bottom(&s);
        prop_assert_eq!(conj(f, g).unwrap(), conj(g, f).unwrap());
        prop_assert_eq!(
            conj(&conj(f, g).unwrap(), h).unwrap(),
            conj(f, &conj(g, h).unwrap()).unwrap()
        );
        prop_assert_eq!(&conj(f, &top).unwrap(), f);
        prop_assert_eq!(conj(f, &bot).unwrap(), bot.clone());
        if le(f, g) {
            prop_assert!(le(&conj(f, h).unwrap(), &conj(g, h).unwrap()));
        }
        if lt(f, g) && lt(&bot, h) {
            prop_assert!(lt(&conj(f, h).unwrap(), &conj(g, h).unwrap()));
        }
        prop_assert_eq!(conj_all(&s, [f, g, h]).unwrap(), conj(&conj(f, g).unwrap(), h).unwrap());
    }

    #[test]
    fn disj_is_the_maximum((s, v) in common::valuations(6, 4, 3)) {
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let d = disj(f, g).unwrap();
        prop_assert!(d == *f || d == *g);
        prop_assert!(le(f, &d) && le(g, &d));
        prop_assert_eq!(disj(&disj(f, g).unwrap(), h).unwrap(), disj(f, &disj(g, h).unwrap()).unwrap());
        prop_assert_eq!(&disj(f, &Valuation::bottom(&s)).unwrap(), f);
        let m = meet(f, g).unwrap();
        prop_assert!(le(&m, f) && le(&m, g));
    }

    #[test]
    fn negation_is_antitone((s, v) in common::valuations(7, 4, 2)) {
        let (f, g) = (&v[0], &v[1]);
        prop_assert_eq!(neg(f).len(), 1);
        if le(f, g) {
            prop_assert!(le(&neg(g), &neg(f)));
        }
        prop_assert_eq!(neg(&neg(&Valuation::bottom(&s))), Valuation::bottom(&s));
        // de Morgan against the maximum
        prop_assert_eq!(neg(&disj(f, g).unwrap()), meet(&neg(f), &neg(g)).unwrap());
    }

    #[test]
    fn mpgf_r_never_drowns((s, v) in common::valuations(7, 4, 2)) {
        let (f, g) = (&v[0], &v[1]);
        let bot = Valuation::bottom(&s);
        let m = mpgf_r(f, g).unwrap();
        prop_assert!(le(&m, f) && le(&m, g));
        if lt(&bot, f) && lt(&bot, g) {
            prop_assert!(lt(&bot, &m));
        }
    }

    #[test]
    fn mpgf_s_is_modus_ponens_for_s_implication((_, v) in common::valuations(6, 3, 2)) {
        let (f, g) = (&v[0], &v[1]);
        let m = mpgf_s(f, g).unwrap();
        // the result is either (0) or the rule pv, and it supports the rule
        prop_assert!(m.is_bottom() || m == *g);
        prop_assert!(le(g, &s_implication(f, &m).unwrap()) || m.is_bottom());
    }

    #[test]
    fn residuation((_, v) in common::valuations(5, 3, 3)) {
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let r = r_implication(f, g).unwrap();
        prop_assert!(le(&conj(f, &r).unwrap(), g), "sup is attained");
        prop_assert_eq!(le(&conj(f, h).unwrap(), g), le(h, &r));
    }

    #[test]
    fn text_and_json_round_trip((s, v) in common::valuations(7, 5, 1)) {
        let f = &v[0];
        prop_assert_eq!(&Valuation::parse_text(&s, &f.to_string()).unwrap(), f);
        let json = serde_json::to_string(f).unwrap();
        let labels: Vec<String> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&Valuation::from_json_labels(&s, &labels).unwrap(), f);
    }
}

#[test]
fn cross_scale_operands_are_rejected() {
    let a = Scale::new("a", ["L", "H"]).unwrap();
    let b = Scale::new("b", ["L", "H"]).unwrap();
    let f = Valuation::top(&a);
    let g = Valuation::top(&b);
    assert_ne!(f, g);
    assert!(conj(&f, &g).is_err());
    assert!(f.try_cmp(&g).is_err());
}

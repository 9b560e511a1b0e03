//! Brute-force reference machinery.
//!
//! Everything here works by listing every canonical valuation up to a length
//! bound and scanning. It is slow on purpose and shares nothing with the
//! production algorithms in [`crate::algebra`] beyond Δ itself, so it can act
//! as a referee for [`algebra::mpgf_s`] and [`algebra::r_implication`] and as
//! the engine behind the exhaustive law checker.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra;
use crate::error::{Error, Result};
use crate::scale::Scale;
use crate::valuation::{compare_ranks, Valuation};

/// Default bound on predicate evaluations for [`check_laws`].
pub const DEFAULT_COST_CEILING: u64 = 10_000_000;

/// Scale plus a length bound: the finite slice of valuations the oracle scans.
#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    scale: Scale,
    max_len: usize,
    count: u64,
}

impl EnumerationBudget {
    pub fn new(scale: &Scale, max_len: usize) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::EmptyBudget);
        }
        let count = canonical_count(scale.size(), max_len).ok_or(Error::BudgetOverflow)?;
        Ok(EnumerationBudget {
            scale: scale.clone(),
            max_len,
            count,
        })
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of canonical valuations within the budget.
    pub fn count(&self) -> u64 {
        self.count
    }
}

/// Number of canonical valuations of length `<= max_len` on a scale of `size`
/// grades: the two boundary singletons plus every nondecreasing string over
/// the `size - 2` interior grades. `None` on overflow.
pub fn canonical_count(size: usize, max_len: usize) -> Option<u64> {
    let k = size.checked_sub(2)? as u128;
    let mut total: u128 = 2;
    // multisets of size len from k kinds: C(k + len - 1, len)
    for len in 1..=max_len as u128 {
        if k == 0 {
            break;
        }
        total = total.checked_add(binomial(k + len - 1, len)?)?;
        if total > u64::MAX as u128 {
            return None;
        }
    }
    u64::try_from(total).ok()
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Every canonical valuation within the budget, in ascending order.
pub fn enumerate_valuations(budget: &EnumerationBudget) -> Result<Vec<Valuation>> {
    let scale = &budget.scale;
    let top = scale.top_rank();
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(budget.count as usize);
    out.push(vec![0]);
    out.push(vec![top]);
    fn extend(prefix: &mut Vec<usize>, max_len: usize, top: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        if prefix.len() == max_len {
            return;
        }
        let last = *prefix.last().expect("nonempty");
        for next in last..top {
            prefix.push(next);
            extend(prefix, max_len, top, out);
            prefix.pop();
        }
    }
    let mut prefix = Vec::with_capacity(budget.max_len);
    for first in 1..top {
        prefix.push(first);
        extend(&mut prefix, budget.max_len, top, &mut out);
        prefix.clear();
    }
    out.sort_by(|a, b| compare_ranks(a, b));
    debug_assert_eq!(out.len() as u64, budget.count);
    Ok(out
        .into_iter()
        .map(|r| Valuation::new_unchecked(scale, r))
        .collect())
}

/// Largest enumerated valuation satisfying `pred`.
pub fn brute_sup(
    budget: &EnumerationBudget,
    pred: impl Fn(&Valuation) -> bool,
) -> Result<Option<Valuation>> {
    Ok(sup_in(&enumerate_valuations(budget)?, pred))
}

/// Smallest enumerated valuation satisfying `pred`.
pub fn brute_inf(
    budget: &EnumerationBudget,
    pred: impl Fn(&Valuation) -> bool,
) -> Result<Option<Valuation>> {
    Ok(inf_in(&enumerate_valuations(budget)?, pred))
}

fn sup_in(ascending: &[Valuation], pred: impl Fn(&Valuation) -> bool) -> Option<Valuation> {
    ascending.iter().rev().find(|v| pred(v)).cloned()
}

fn inf_in(ascending: &[Valuation], pred: impl Fn(&Valuation) -> bool) -> Option<Valuation> {
    ascending.iter().find(|v| pred(v)).cloned()
}

/// Outcome of one law over its whole quantifier scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub scope: String,
    pub pass: bool,
    /// Smallest failing assignment (variable -> valuation text), or for
    /// existence laws the witness that was looked for.
    pub counterexample: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LawReport {
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }
}

pub type ConjFn = fn(&Valuation, &Valuation) -> Result<Valuation>;

/// Exhaustive checker for the algebraic laws of the connectives.
///
/// Variables range over all canonical valuations of length `<= max_len`. Sup
/// and inf referees scan the longer range `<= 2 * max_len + 1` (enough to
/// contain every r-implication candidate for such operands) and are re-run one
/// length further to detect unattained suprema.
#[derive(Clone, Debug)]
pub struct LawChecker {
    scale: Scale,
    max_len: usize,
    ceiling: u64,
    conj: ConjFn,
}

/// Runs every law with the production connectives.
pub fn check_laws(scale: &Scale, max_len: usize) -> Result<LawReport> {
    LawChecker::new(scale, max_len).run()
}

type Assignment<'a> = &'a [(&'static str, &'a Valuation)];

impl LawChecker {
    pub fn new(scale: &Scale, max_len: usize) -> Self {
        LawChecker {
            scale: scale.clone(),
            max_len,
            ceiling: DEFAULT_COST_CEILING,
            conj: algebra::conj,
        }
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Self {
        self.ceiling = ceiling;
        self
    }

    /// Substitutes Δ, e.g. with a deliberately broken variant to make sure
    /// the checker notices.
    pub fn with_conj(mut self, conj: ConjFn) -> Self {
        self.conj = conj;
        self
    }

    /// Estimated number of predicate evaluations.
    pub fn estimated_cost(&self) -> Result<u128> {
        let n = EnumerationBudget::new(&self.scale, self.max_len)?.count() as u128;
        let r = EnumerationBudget::new(&self.scale, self.referee_len() + 1)?.count() as u128;
        Ok(16 * n * n * n + n * n * (4 * r + 32) + n * self.scale.size() as u128)
    }

    fn referee_len(&self) -> usize {
        2 * self.max_len + 1
    }

    pub fn run(&self) -> Result<LawReport> {
        let needed = self.estimated_cost()?;
        if needed > self.ceiling as u128 {
            return Err(Error::CostCeilingExceeded {
                needed,
                ceiling: self.ceiling,
            });
        }
        let s = &self.scale;
        let vals = enumerate_valuations(&EnumerationBudget::new(s, self.max_len)?)?;
        let referee = enumerate_valuations(&EnumerationBudget::new(s, self.referee_len())?)?;
        let referee_wide =
            enumerate_valuations(&EnumerationBudget::new(s, self.referee_len() + 1)?)?;
        let conj = self.conj;
        let bot = Valuation::bottom(s);
        let top = Valuation::top(s);
        let scope1 = format!(
            "all f with len <= {} on {} ({} valuations)",
            self.max_len,
            s.name(),
            vals.len()
        );
        let scope2 = format!("all f,g with len <= {} on {}", self.max_len, s.name());
        let scope3 = format!("all f,g,h with len <= {} on {}", self.max_len, s.name());
        let lt = |a: &Valuation, b: &Valuation| a.cmp_same(b) == Ordering::Less;
        let le = |a: &Valuation, b: &Valuation| a.cmp_same(b) != Ordering::Greater;

        let mut out = Vec::new();

        // order
        out.push(forall2(
            "order_total_antisymmetric",
            &scope2,
            &vals,
            |f, g| {
                let (a, b) = (f.cmp_same(g), g.cmp_same(f));
                Ok(a == b.reverse() && ((a == Ordering::Equal) == (f == g)))
            },
        ));
        out.push(forall3("order_transitive", &scope3, &vals, |f, g, h| {
            Ok(!(le(f, g) && le(g, h)) || le(f, h))
        }));
        out.push(forall1("reduce_idempotent", &scope1, &vals, |f| {
            Ok(f.as_wedge_string().reduce() == *f)
        }));
        out.push(forall2(
            "reduce_is_shortest_equivalent",
            &scope2,
            &vals,
            |f, g| {
                // no canonical g shorter than f is indistinguishable from f
                if g.len() < f.len() {
                    Ok(!f
                        .as_wedge_string()
                        .indistinguishable(&g.as_wedge_string())?)
                } else {
                    Ok(true)
                }
            },
        ));
        out.push(forall1("order_extension_law", &scope1, &vals, |f| {
            for x in 1..s.size() {
                let mut ranks = f.ranks().to_vec();
                ranks.push(x);
                if !le(&Valuation::from_grades(s, ranks)?, f) {
                    return Ok(false);
                }
            }
            Ok(true)
        }));

        // conjunction
        out.push(forall2("conj_commutative", &scope2, &vals, |f, g| {
            Ok(conj(f, g)? == conj(g, f)?)
        }));
        out.push(forall3("conj_associative", &scope3, &vals, |f, g, h| {
            Ok(conj(&conj(f, g)?, h)? == conj(f, &conj(g, h)?)?)
        }));
        out.push(forall1("conj_identity_top", &scope1, &vals, |f| {
            Ok(conj(f, &top)? == *f)
        }));
        out.push(forall1("conj_annihilator_bottom", &scope1, &vals, |f| {
            Ok(conj(f, &bot)? == bot)
        }));
        out.push(forall3("conj_monotone", &scope3, &vals, |f, g, h| {
            Ok(!le(f, g) || le(&conj(f, h)?, &conj(g, h)?))
        }));
        out.push(forall2("conj_strict_shrinking", &scope2, &vals, |f, g| {
            Ok(!(lt(&bot, f) && lt(g, &top)) || lt(&conj(f, g)?, f))
        }));
        out.push(forall3(
            "conj_strict_monotone",
            &scope3,
            &vals,
            |f, g, h| Ok(!(lt(f, g) && lt(&bot, h)) || lt(&conj(f, h)?, &conj(g, h)?)),
        ));

        // disjunction
        out.push(forall2("disj_commutative", &scope2, &vals, |f, g| {
            Ok(algebra::disj(f, g)? == algebra::disj(g, f)?)
        }));
        out.push(forall3("disj_associative", &scope3, &vals, |f, g, h| {
            let d = algebra::disj;
            Ok(d(&d(f, g)?, h)? == d(f, &d(g, h)?)?)
        }));
        out.push(forall1("disj_identity_bottom", &scope1, &vals, |f| {
            Ok(algebra::disj(f, &bot)? == *f)
        }));
        out.push(forall1("disj_annihilator_top", &scope1, &vals, |f| {
            Ok(algebra::disj(f, &top)? == top)
        }));
        out.push(forall3("disj_monotone", &scope3, &vals, |f, g, h| {
            Ok(!le(f, g) || le(&algebra::disj(f, h)?, &algebra::disj(g, h)?))
        }));

        // negation
        out.push(forall1(
            "neg_boundary",
            "bottom and top",
            &vals[..1],
            |_| Ok(algebra::neg(&bot) == top && algebra::neg(&top) == bot),
        ));
        out.push(forall2("neg_antitone", &scope2, &vals, |f, g| {
            Ok(!le(g, f) || le(&algebra::neg(f), &algebra::neg(g)))
        }));
        out.push(forall1(
            "neg_singleton",
            &format!("all grades of {}", s.name()),
            &vals,
            |f| Ok(f.len() != 1 || algebra::neg(f).ranks() == [s.negate_rank(f.first_rank())]),
        ));
        out.push(forall2("neg_de_morgan_conj", &scope2, &vals, |f, g| {
            Ok(algebra::neg(&conj(f, g)?) == algebra::disj(&algebra::neg(f), &algebra::neg(g))?)
        }));
        out.push(forall2("neg_de_morgan_disj", &scope2, &vals, |f, g| {
            let lhs = algebra::neg(&algebra::disj(f, g)?);
            let rhs = conj(&algebra::neg(f), &algebra::neg(g))?;
            Ok(le(&rhs, &lhs))
        }));
        if s.is_weak() {
            out.push(forall1("neg_weak", &scope1, &vals, |f| {
                Ok(le(f, &algebra::neg(&algebra::neg(f))))
            }));
        } else {
            out.push(not_applicable("neg_weak", "scale negation is not weak"));
        }
        if s.is_involutive() {
            out.push(forall1("neg_triple", &scope1, &vals, |f| {
                let c = algebra::neg(f);
                Ok(algebra::neg(&algebra::neg(&c)) == c)
            }));
        } else {
            out.push(not_applicable(
                "neg_triple",
                "scale negation is not involutive",
            ));
        }

        // modus ponens through the R-implication (m = Δ)
        let m = conj;
        out.push(forall1("mpgf_r_11_boundaries", &scope1, &vals, |g| {
            Ok(m(&top, &top)? == top && m(&bot, g)? == bot)
        }));
        out.push(forall3(
            "mpgf_r_12_strict_first",
            &scope3,
            &vals,
            |f, h, g| Ok(!(lt(f, h) && lt(&bot, g)) || lt(&m(f, g)?, &m(h, g)?)),
        ));
        out.push(forall3(
            "mpgf_r_13_strict_second",
            &scope3,
            &vals,
            |f, g, h| Ok(!(lt(g, h) && lt(&bot, f)) || lt(&m(f, g)?, &m(f, h)?)),
        ));
        out.push(forall1("mpgf_r_14_below_top", &scope1, &vals, |f| {
            Ok(!lt(f, &top) || lt(&m(f, &top)?, &top))
        }));
        out.push(forall2("mpgf_r_15_below_min", &scope2, &vals, |f, g| {
            let interior = |x: &Valuation| lt(&bot, x) && lt(x, &top);
            Ok(!(interior(f) && interior(g)) || lt(&m(f, g)?, &algebra::meet(f, g)?))
        }));
        out.push(forall2("mpgf_r_16_no_drowning", &scope2, &vals, |f, g| {
            Ok(!(lt(&bot, f) && lt(&bot, g)) || lt(&bot, &m(f, g)?))
        }));

        // modus ponens through the S-implication
        let ms = algebra::mpgf_s;
        out.push(forall1("mpgf_s_11_boundaries", &scope1, &vals, |g| {
            Ok(ms(&top, &top)? == top && ms(&bot, g)? == bot)
        }));
        out.push(forall3(
            "mpgf_s_12_nonstrict_first",
            &scope3,
            &vals,
            |f, h, g| Ok(!(lt(f, h) && lt(&bot, g)) || le(&ms(f, g)?, &ms(h, g)?)),
        ));
        out.push(forall3(
            "mpgf_s_13_nonstrict_second",
            &scope3,
            &vals,
            |f, g, h| Ok(!(lt(g, h) && lt(&bot, f)) || le(&ms(f, g)?, &ms(f, h)?)),
        ));
        if s.size() == 2 {
            // only (0) and (I) exist, and there mpgf_s is strictly monotone
            out.push(not_applicable(
                "mpgf_s_12_strict_refuted",
                "two-grade scale",
            ));
        } else {
            out.push(exists3(
                "mpgf_s_12_strict_refuted",
                &scope3,
                &vals,
                |f, h, g| Ok(lt(f, h) && lt(&bot, g) && !lt(&ms(f, g)?, &ms(h, g)?)),
            ));
        }

        // referees
        let scope_ref = format!(
            "all f,g with len <= {}; h over len <= {} and {}",
            self.max_len,
            self.referee_len(),
            self.referee_len() + 1
        );
        out.push(forall2(
            "mpgf_s_matches_oracle_inf",
            &scope_ref,
            &vals,
            |f, g| {
                let pred = |h: &Valuation| algebra::s_implication(f, h).is_ok_and(|x| le(g, &x));
                let oracle = inf_in(&referee, pred);
                Ok(oracle.as_ref() == Some(&ms(f, g)?))
            },
        ));
        out.push(forall2(
            "r_implication_sup_attained",
            &scope_ref,
            &vals,
            |f, g| {
                let pred = |h: &Valuation| conj(f, h).is_ok_and(|x| le(&x, g));
                Ok(sup_in(&referee, pred) == sup_in(&referee_wide, pred))
            },
        ));
        out.push(forall2(
            "r_implication_matches_oracle_sup",
            &scope_ref,
            &vals,
            |f, g| {
                let pred = |h: &Valuation| conj(f, h).is_ok_and(|x| le(&x, g));
                let oracle = sup_in(&referee_wide, pred);
                Ok(oracle.as_ref() == Some(&algebra::r_implication(f, g)?))
            },
        ));
        out.push(forall2("residuation", &scope_ref, &vals, |f, g| {
            let r = algebra::r_implication(f, g)?;
            for h in &referee_wide {
                if le(&conj(f, h)?, g) != le(h, &r) {
                    return Ok(false);
                }
            }
            Ok(true)
        }));

        out.sort_by(|a, b| a.law.cmp(&b.law));
        Ok(LawReport { results: out })
    }
}

fn witness(pairs: Assignment<'_>) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn finish(law: &str, scope: &str, failure: Option<BTreeMap<String, String>>) -> LawResult {
    LawResult {
        law: law.to_string(),
        scope: scope.to_string(),
        pass: failure.is_none(),
        counterexample: failure,
    }
}

fn error_witness(pairs: Assignment<'_>, e: &Error) -> BTreeMap<String, String> {
    let mut w = witness(pairs);
    w.insert("error".to_string(), e.to_string());
    w
}

fn not_applicable(law: &str, why: &str) -> LawResult {
    finish(law, &format!("not applicable: {why}"), None)
}

fn forall1(
    law: &str,
    scope: &str,
    vals: &[Valuation],
    pred: impl Fn(&Valuation) -> Result<bool>,
) -> LawResult {
    for f in vals {
        match pred(f) {
            Ok(true) => {}
            Ok(false) => return finish(law, scope, Some(witness(&[("f", f)]))),
            Err(e) => return finish(law, scope, Some(error_witness(&[("f", f)], &e))),
        }
    }
    finish(law, scope, None)
}

fn forall2(
    law: &str,
    scope: &str,
    vals: &[Valuation],
    pred: impl Fn(&Valuation, &Valuation) -> Result<bool>,
) -> LawResult {
    for f in vals {
        for g in vals {
            match pred(f, g) {
                Ok(true) => {}
                Ok(false) => return finish(law, scope, Some(witness(&[("f", f), ("g", g)]))),
                Err(e) => {
                    return finish(law, scope, Some(error_witness(&[("f", f), ("g", g)], &e)))
                }
            }
        }
    }
    finish(law, scope, None)
}

fn forall3(
    law: &str,
    scope: &str,
    vals: &[Valuation],
    pred: impl Fn(&Valuation, &Valuation, &Valuation) -> Result<bool>,
) -> LawResult {
    for f in vals {
        for g in vals {
            for h in vals {
                let names = [("f", f), ("g", g), ("h", h)];
                match pred(f, g, h) {
                    Ok(true) => {}
                    Ok(false) => return finish(law, scope, Some(witness(&names))),
                    Err(e) => return finish(law, scope, Some(error_witness(&names, &e))),
                }
            }
        }
    }
    finish(law, scope, None)
}

/// Passes when some triple satisfies `pred`; the first one found is kept as
/// the witness.
fn exists3(
    law: &str,
    scope: &str,
    vals: &[Valuation],
    pred: impl Fn(&Valuation, &Valuation, &Valuation) -> Result<bool>,
) -> LawResult {
    for f in vals {
        for h in vals {
            for g in vals {
                if let Ok(true) = pred(f, h, g) {
                    return LawResult {
                        law: law.to_string(),
                        scope: format!("exists f,h,g; {scope}"),
                        pass: true,
                        counterexample: Some(witness(&[("f", f), ("h", h), ("g", g)])),
                    };
                }
            }
        }
    }
    LawResult {
        law: law.to_string(),
        scope: format!("exists f,h,g; {scope}"),
        pass: false,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranks(vs: &[Valuation]) -> Vec<Vec<usize>> {
        vs.iter().map(|v| v.ranks().to_vec()).collect()
    }

    #[test]
    fn enumerate_three_grades() {
        let s = Scale::numeric(3).unwrap();
        let b1 = EnumerationBudget::new(&s, 1).unwrap();
        assert_eq!(b1.count(), 3);
        assert_eq!(
            ranks(&enumerate_valuations(&b1).unwrap()),
            vec![vec![0], vec![1], vec![2]]
        );
        let b2 = EnumerationBudget::new(&s, 2).unwrap();
        assert_eq!(b2.count(), 4);
        assert_eq!(
            ranks(&enumerate_valuations(&b2).unwrap()),
            vec![vec![0], vec![1, 1], vec![1], vec![2]]
        );
    }

    #[test]
    fn enumerate_two_grades() {
        let s = Scale::numeric(2).unwrap();
        for len in 1..4 {
            let b = EnumerationBudget::new(&s, len).unwrap();
            assert_eq!(
                ranks(&enumerate_valuations(&b).unwrap()),
                vec![vec![0], vec![1]]
            );
        }
    }

    #[test]
    fn hand_counts() {
        // size 3: (0), (I) and (1)^k for k = 1..n
        for n in 1..6 {
            assert_eq!(canonical_count(3, n), Some(2 + n as u64));
        }
        // size 4, n = 2: (0), (3), (1), (2), (1,1), (1,2), (2,2)
        assert_eq!(canonical_count(4, 2), Some(7));
        assert_eq!(canonical_count(2, 10), Some(2));
        assert_eq!(canonical_count(200, 200), None);
    }

    #[test]
    fn budget_errors() {
        let s = Scale::numeric(3).unwrap();
        assert_eq!(
            EnumerationBudget::new(&s, 0).unwrap_err(),
            Error::EmptyBudget
        );
        let big = Scale::numeric(300).unwrap();
        assert_eq!(
            EnumerationBudget::new(&big, 300).unwrap_err(),
            Error::BudgetOverflow
        );
    }

    #[test]
    fn enumeration_strictly_ascending() {
        for size in 2..6 {
            let s = Scale::numeric(size).unwrap();
            let b = EnumerationBudget::new(&s, 3).unwrap();
            let vs = enumerate_valuations(&b).unwrap();
            assert_eq!(vs.len() as u64, b.count());
            for w in vs.windows(2) {
                assert_eq!(w[1].try_cmp(&w[0]).unwrap(), Ordering::Greater);
            }
            for v in &vs {
                assert_eq!(
                    &Valuation::from_canonical(&s, v.ranks().to_vec()).unwrap(),
                    v
                );
            }
        }
    }

    #[test]
    fn sup_and_inf_examples() {
        let s = Scale::numeric(7).unwrap();
        let b = EnumerationBudget::new(&s, 4).unwrap();
        let f = Valuation::from_canonical(&s, vec![3]).unwrap();
        let g = Valuation::from_canonical(&s, vec![3, 5]).unwrap();
        let sup = brute_sup(&b, |h| {
            algebra::conj(&f, h).unwrap().try_cmp(&g).unwrap() != Ordering::Greater
        })
        .unwrap();
        assert_eq!(sup.unwrap().ranks(), &[5]);
        assert_eq!(brute_sup(&b, |_| true).unwrap(), Some(Valuation::top(&s)));
        assert_eq!(brute_sup(&b, |_| false).unwrap(), None);

        let five = Valuation::from_canonical(&s, vec![5]).unwrap();
        let three = Valuation::from_canonical(&s, vec![3]).unwrap();
        let inf = brute_inf(&b, |h| {
            algebra::disj(&algebra::neg(&five), h)
                .unwrap()
                .try_cmp(&three)
                .unwrap()
                != Ordering::Less
        })
        .unwrap();
        assert_eq!(inf, Some(three));
        assert_eq!(
            brute_inf(&b, |_| true).unwrap(),
            Some(Valuation::bottom(&s))
        );
        assert_eq!(brute_inf(&b, |_| false).unwrap(), None);
    }

    #[test]
    fn sup_stable_across_budgets() {
        let s = Scale::numeric(5).unwrap();
        let small = EnumerationBudget::new(&s, 5).unwrap();
        let large = EnumerationBudget::new(&s, 7).unwrap();
        let vals = enumerate_valuations(&EnumerationBudget::new(&s, 2).unwrap()).unwrap();
        for f in &vals {
            for g in &vals {
                let pred = |h: &Valuation| {
                    algebra::conj(f, h).unwrap().try_cmp(g).unwrap() != Ordering::Greater
                };
                assert_eq!(
                    brute_sup(&small, pred).unwrap(),
                    brute_sup(&large, pred).unwrap()
                );
            }
        }
    }

    #[test]
    fn all_laws_hold_small() {
        for (size, len) in [(3, 3), (4, 2), (4, 3)] {
            let s = Scale::numeric(size).unwrap();
            let report = check_laws(&s, len).unwrap();
            let failed: Vec<_> = report.failures().collect();
            assert!(failed.is_empty(), "size {size} len {len}: {failed:#?}");
        }
    }

    #[test]
    fn two_grade_scale() {
        let report = check_laws(&Scale::numeric(2).unwrap(), 3).unwrap();
        assert!(report.all_passed());
        let r = report.get("mpgf_s_12_strict_refuted").unwrap();
        assert!(r.scope.starts_with("not applicable"));
    }

    fn conj_without_reduce(f: &Valuation, g: &Valuation) -> Result<Valuation> {
        let mut r = f.ranks().to_vec();
        r.extend_from_slice(g.ranks());
        r.sort_unstable();
        Ok(Valuation::new_unchecked(f.scale(), r))
    }

    #[test]
    fn checker_catches_broken_conjunction() {
        let s = Scale::numeric(3).unwrap();
        let report = LawChecker::new(&s, 3)
            .with_conj(conj_without_reduce)
            .run()
            .unwrap();
        assert!(!report.all_passed());
        let id = report.get("conj_identity_top").unwrap();
        assert!(!id.pass);
        // smallest failing f is (0): (0) Δ (I) = (0, I) without reduction
        assert_eq!(id.counterexample.as_ref().unwrap()["f"], "(0)");
    }

    #[test]
    fn ceiling_enforced() {
        let s = Scale::numeric(4).unwrap();
        assert!(matches!(
            LawChecker::new(&s, 3).with_ceiling(10).run(),
            Err(Error::CostCeilingExceeded { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let s = Scale::numeric(3).unwrap();
        let report = check_laws(&s, 1).unwrap();
        let json: serde_json::Value = serde_json::to_value(&report).unwrap();
        let arr = json.as_array().unwrap();
        assert_eq!(arr.len(), report.results.len());
        let first = &arr[0];
        for key in ["law", "scope", "pass", "counterexample"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
        let names: Vec<&str> = arr.iter().map(|r| r["law"].as_str().unwrap()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}

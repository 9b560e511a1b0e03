//! Forward-chaining rule engine over valuations.
//!
//! A rule fires by conjoining the plausibilities of its premises with Δ and
//! combining that with each conclusion's rule plausibility through a modus
//! ponens generating function ([`Mode`]). Competing derivations of the same
//! atom are aggregated with ∇, and the whole rule base is iterated until no
//! atom's plausibility increases.
//!
//! Two behaviours here are extensions rather than anything fixed by the
//! underlying algebra, and are labelled as such in traces: the ∇ aggregation
//! across rules and the multi-step fixpoint loop.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra;
use crate::error::{Error, Result};
use crate::scale::Scale;
use crate::valuation::Valuation;

/// `attribute = value`, e.g. `CLOT-FORM = FORMLESS`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Atom {
    pub attribute: String,
    pub value: String,
}

impl Atom {
    pub fn new(attribute: impl Into<String>, value: impl Into<String>) -> Result<Self> {
        let (attribute, value) = (attribute.into(), value.into());
        if attribute.is_empty() || value.is_empty() {
            return Err(Error::InvalidRuleBase(format!(
                "atom `{attribute}={value}` has an empty side"
            )));
        }
        Ok(Atom { attribute, value })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.attribute, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub atom: Atom,
    pub pv: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub atom: Atom,
    pub pv: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub premises: Vec<Atom>,
    pub conclusions: Vec<Conclusion>,
}

impl Rule {
    pub fn new(
        id: impl Into<String>,
        premises: Vec<Atom>,
        conclusions: Vec<Conclusion>,
    ) -> Result<Self> {
        let id = id.into();
        if premises.is_empty() {
            return Err(Error::InvalidRuleBase(format!(
                "rule `{id}` has no premises"
            )));
        }
        if conclusions.is_empty() {
            return Err(Error::InvalidRuleBase(format!(
                "rule `{id}` has no conclusions"
            )));
        }
        if let Some(c) = conclusions.iter().find(|c| c.pv.is_bottom()) {
            return Err(Error::InvalidRuleBase(format!(
                "rule `{id}` concludes `{}` with bottom plausibility",
                c.atom
            )));
        }
        Ok(Rule {
            id,
            premises,
            conclusions,
        })
    }
}

/// Scale, rules and facts, validated together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleBase {
    scale: Scale,
    rules: Vec<Rule>,
    facts: Vec<Fact>,
}

impl RuleBase {
    pub fn new(scale: Scale, rules: Vec<Rule>, facts: Vec<Fact>) -> Result<Self> {
        let mut ids = HashSet::new();
        for r in &rules {
            if !ids.insert(r.id.as_str()) {
                return Err(Error::InvalidRuleBase(format!(
                    "duplicate rule id `{}`",
                    r.id
                )));
            }
            for c in &r.conclusions {
                scale.check_same(c.pv.scale())?;
            }
        }
        let mut atoms = HashSet::new();
        for f in &facts {
            scale.check_same(f.pv.scale())?;
            if !atoms.insert(&f.atom) {
                return Err(Error::InvalidRuleBase(format!(
                    "duplicate fact `{}`",
                    f.atom
                )));
            }
        }
        Ok(RuleBase {
            scale,
            rules,
            facts,
        })
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    /// Same rules, different facts.
    pub fn with_facts(&self, facts: Vec<Fact>) -> Result<Self> {
        RuleBase::new(self.scale.clone(), self.rules.clone(), facts)
    }

    /// Same rules and facts, rules in a different order.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self> {
        RuleBase::new(self.scale.clone(), rules, self.facts.clone())
    }

    /// Every atom concluded by some rule, in first-appearance order.
    pub fn hypotheses(&self) -> Vec<Atom> {
        let mut seen = HashSet::new();
        self.rules
            .iter()
            .flat_map(|r| r.conclusions.iter().map(|c| &c.atom))
            .filter(|a| seen.insert(*a))
            .cloned()
            .collect()
    }

    /// Premise atoms no rule concludes, in first-appearance order. These are
    /// the atoms a user has to supply.
    pub fn askable_atoms(&self) -> Vec<Atom> {
        let concluded: HashSet<Atom> = self.hypotheses().into_iter().collect();
        let mut seen = HashSet::new();
        self.rules
            .iter()
            .flat_map(|r| r.premises.iter())
            .filter(|a| !concluded.contains(*a) && seen.insert(*a))
            .cloned()
            .collect()
    }
}

/// How a rule's conclusion plausibility is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// `mpgf_r(premises, rule pv)`, i.e. Δ.
    #[default]
    MpgfR,
    /// `mpgf_s(premises, rule pv)`.
    MpgfS,
    /// Classical min over the first grade of every premise pv and the rule
    /// pv. Kept for comparison only; it cannot separate conclusions that
    /// differ below the weakest premise.
    FlatMin,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MpgfR => "mpgf-r",
            Mode::MpgfS => "mpgf-s",
            Mode::FlatMin => "flat-min",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mpgf-r" => Ok(Mode::MpgfR),
            "mpgf-s" => Ok(Mode::MpgfS),
            "flat-min" => Ok(Mode::FlatMin),
            other => Err(format!(
                "unknown mode `{other}` (expected mpgf-r, mpgf-s or flat-min)"
            )),
        }
    }
}

/// Current plausibility of every known atom.
pub type Env = BTreeMap<Atom, Valuation>;

fn lookup(rb: &RuleBase, env: &Env, atom: &Atom) -> Result<Valuation> {
    match env.get(atom) {
        Some(v) => {
            rb.scale.check_same(v.scale())?;
            Ok(v.clone())
        }
        None => Ok(Valuation::bottom(&rb.scale)),
    }
}

/// Δ of the premise plausibilities. Unknown premises count as `(0)`.
pub fn premise_pv(rb: &RuleBase, rule: &Rule, env: &Env) -> Result<Valuation> {
    let pvs = rule
        .premises
        .iter()
        .map(|a| lookup(rb, env, a))
        .collect::<Result<Vec<_>>>()?;
    algebra::conj_all(&rb.scale, &pvs)
}

fn apply_mode(
    scale: &Scale,
    mode: Mode,
    premise_pvs: &[Valuation],
    conjunction: &Valuation,
    rule_pv: &Valuation,
) -> Result<Valuation> {
    match mode {
        Mode::MpgfR => algebra::mpgf_r(conjunction, rule_pv),
        Mode::MpgfS => algebra::mpgf_s(conjunction, rule_pv),
        Mode::FlatMin => {
            let min = premise_pvs
                .iter()
                .chain(std::iter::once(rule_pv))
                .map(Valuation::first_rank)
                .min()
                .expect("rule pv present");
            scale.grade(min).map(|g| Valuation::singleton(&g))
        }
    }
}

/// Conclusion plausibilities of one rule under `env`.
pub fn fire(rb: &RuleBase, rule: &Rule, env: &Env, mode: Mode) -> Result<Vec<(Atom, Valuation)>> {
    let pvs = rule
        .premises
        .iter()
        .map(|a| lookup(rb, env, a))
        .collect::<Result<Vec<_>>>()?;
    let conjunction = algebra::conj_all(&rb.scale, &pvs)?;
    rule.conclusions
        .iter()
        .map(|c| {
            let out = apply_mode(&rb.scale, mode, &pvs, &conjunction, &c.pv)?;
            Ok((c.atom.clone(), out))
        })
        .collect()
}

/// One update of an atom's plausibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: String,
    pub premises: Vec<(Atom, Valuation)>,
    pub conjunction: Valuation,
    pub conclusion: Atom,
    pub rule_pv: Valuation,
    pub output: Valuation,
    /// Value of the atom before this derivation, which `output` strictly
    /// exceeds (∇ aggregation).
    pub previous: Valuation,
}

impl Derivation {
    /// Recomputes `output` from the recorded inputs.
    pub fn replay(&self, mode: Mode) -> Result<Valuation> {
        let scale = self.rule_pv.scale();
        let pvs: Vec<Valuation> = self.premises.iter().map(|(_, v)| v.clone()).collect();
        let conjunction = algebra::conj_all(scale, &pvs)?;
        apply_mode(scale, mode, &pvs, &conjunction, &self.rule_pv)
    }

    fn to_json(&self) -> Value {
        json!({
            "rule": self.rule,
            "premises": self.premises.iter().map(|(a, v)| json!({
                "attribute": a.attribute,
                "value": a.value,
                "pv": v,
            })).collect::<Vec<_>>(),
            "conjunction": self.conjunction,
            "rule_pv": self.rule_pv,
            "conclusion": {"attribute": self.conclusion.attribute, "value": self.conclusion.value},
            "previous": self.previous,
            "output": self.output,
            "aggregation": "max (extension)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranked {
    pub atom: Atom,
    pub pv: Valuation,
}

#[derive(Clone, Debug)]
pub struct InferenceResult {
    pub mode: Mode,
    /// Final plausibility of every concluded atom (bottom if never derived).
    pub derived: BTreeMap<Atom, Valuation>,
    /// Hypotheses, most plausible first; equal pvs are ordered by atom.
    pub ranking: Vec<Ranked>,
    pub trace: Vec<Derivation>,
}

impl InferenceResult {
    pub fn pv(&self, atom: &Atom) -> Option<&Valuation> {
        self.derived.get(atom)
    }

    /// Groups of hypotheses sharing a plausibility, in ranking order; only
    /// groups with at least two members are returned.
    pub fn ties(&self) -> Vec<Vec<&Ranked>> {
        let mut out: Vec<Vec<&Ranked>> = Vec::new();
        for r in &self.ranking {
            match out.last_mut() {
                Some(group) if group[0].pv == r.pv => group.push(r),
                _ => out.push(vec![r]),
            }
        }
        out.retain(|g| g.len() > 1);
        out
    }

    /// Hypotheses strictly above `(0)`.
    pub fn supported(&self) -> impl Iterator<Item = &Ranked> {
        self.ranking.iter().filter(|r| !r.pv.is_bottom())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.as_str(),
            "ranking": self.ranking.iter().map(|r| json!({
                "attribute": r.atom.attribute,
                "value": r.atom.value,
                "pv": r.pv,
            })).collect::<Vec<_>>(),
            "trace": self.trace.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        })
    }

    /// Aligned text table of the ranking. Tied entries share a rank.
    pub fn table(&self) -> String {
        let rows: Vec<(String, String, String)> = {
            let mut rank = 0;
            let mut prev: Option<&Valuation> = None;
            self.ranking
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    if prev != Some(&r.pv) {
                        rank = i + 1;
                    }
                    prev = Some(&r.pv);
                    (rank.to_string(), r.atom.to_string(), r.pv.to_string())
                })
                .collect()
        };
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(4);
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(10);
        let mut out = format!("{:<w0$}  {:<w1$}  pv\n", "rank", "hypothesis");
        for (rank, atom, pv) in rows {
            out.push_str(&format!("{rank:<w0$}  {atom:<w1$}  {pv}\n"));
        }
        for group in self.ties() {
            let names: Vec<String> = group.iter().map(|r| r.atom.to_string()).collect();
            out.push_str(&format!("tie at {}: {}\n", group[0].pv, names.join(", ")));
        }
        out
    }
}

/// Runs every rule to a fixpoint.
///
/// An atom is updated only when a derivation strictly increases its
/// plausibility. Each update moves one atom up a total order and, under Δ, a
/// derivation cycle can only produce smaller values, so the loop terminates.
pub fn infer(rb: &RuleBase, mode: Mode) -> Result<InferenceResult> {
    let scale = &rb.scale;
    let mut env: Env = rb
        .facts
        .iter()
        .map(|f| (f.atom.clone(), f.pv.clone()))
        .collect();
    let mut trace: Vec<Derivation> = Vec::new();
    let mut setter: BTreeMap<Atom, usize> = BTreeMap::new();
    loop {
        let mut changed = false;
        for rule in &rb.rules {
            let premises = rule
                .premises
                .iter()
                .map(|a| Ok((a.clone(), lookup(rb, &env, a)?)))
                .collect::<Result<Vec<_>>>()?;
            let pvs: Vec<Valuation> = premises.iter().map(|(_, v)| v.clone()).collect();
            let conjunction = algebra::conj_all(scale, &pvs)
                .map_err(|e| chain_error(rule, &trace, &setter, e))?;
            for c in &rule.conclusions {
                let output = apply_mode(scale, mode, &pvs, &conjunction, &c.pv)
                    .map_err(|e| chain_error(rule, &trace, &setter, e))?;
                let previous = lookup(rb, &env, &c.atom)?;
                if output.cmp_same(&previous) == Ordering::Greater {
                    env.insert(c.atom.clone(), output.clone());
                    setter.insert(c.atom.clone(), trace.len());
                    trace.push(Derivation {
                        rule: rule.id.clone(),
                        premises: premises.clone(),
                        conjunction: conjunction.clone(),
                        conclusion: c.atom.clone(),
                        rule_pv: c.pv.clone(),
                        output,
                        previous,
                    });
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let derived: BTreeMap<Atom, Valuation> = rb
        .hypotheses()
        .into_iter()
        .map(|a| {
            let pv = env
                .get(&a)
                .cloned()
                .unwrap_or_else(|| Valuation::bottom(scale));
            (a, pv)
        })
        .collect();
    let mut ranking: Vec<Ranked> = derived
        .iter()
        .map(|(a, v)| Ranked {
            atom: a.clone(),
            pv: v.clone(),
        })
        .collect();
    ranking.sort_by(|a, b| b.pv.cmp_same(&a.pv).then_with(|| a.atom.cmp(&b.atom)));
    Ok(InferenceResult {
        mode,
        derived,
        ranking,
        trace,
    })
}

/// Wraps an error with the chain of rules that produced the failing rule's
/// premises, newest first.
fn chain_error(
    rule: &Rule,
    trace: &[Derivation],
    setter: &BTreeMap<Atom, usize>,
    e: Error,
) -> Error {
    let mut chain = vec![rule.id.clone()];
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<&Atom> = rule.premises.iter().collect();
    while let Some(atom) = frontier.pop() {
        if let Some(&i) = setter.get(atom) {
            if seen.insert(i) {
                chain.push(trace[i].rule.clone());
                frontier.extend(trace[i].premises.iter().map(|(a, _)| a));
            }
        }
    }
    Error::Derivation {
        chain: chain.join(" <- "),
        source: Box::new(e),
    }
}

//! Numeric re-interpretation of ordinal grades, and how much the resulting
//! conclusion order moves when the interpretation changes while the grade
//! order stays fixed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::engine::{infer, Atom, Mode, Ranked, RuleBase};
use crate::error::{Error, Result};
use crate::scale::Scale;
use crate::valuation::Valuation;

/// Number type a grade can be embedded into.
pub trait Scalar: Num + Clone + PartialOrd + ToPrimitive + fmt::Debug + fmt::Display {
    fn to_json(&self) -> Value;
}

impl Scalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl Scalar for f32 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl Scalar for Rational64 {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Parses `3/10`, `0.3` or `1` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let t = text.trim();
    let bad = || Error::InvalidEmbedding(format!("`{text}` is not a number"));
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let int: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let whole = int.checked_mul(den).ok_or_else(bad)?;
        let n = if t.starts_with('-') {
            whole - num
        } else {
            whole + num
        };
        return Ok(Rational64::new(n, den));
    }
    Rational64::from_str(t).map_err(|_| bad())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TNorm {
    #[default]
    Product,
    Min,
    Lukasiewicz,
}

impl TNorm {
    pub fn as_str(self) -> &'static str {
        match self {
            TNorm::Product => "product",
            TNorm::Min => "min",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }

    pub fn apply<T: Scalar>(self, a: &T, b: &T) -> T {
        match self {
            TNorm::Product => a.clone() * b.clone(),
            TNorm::Min => {
                if b < a {
                    b.clone()
                } else {
                    a.clone()
                }
            }
            TNorm::Lukasiewicz => {
                let s = a.clone() + b.clone() - T::one();
                if s < T::zero() {
                    T::zero()
                } else {
                    s
                }
            }
        }
    }
}

impl FromStr for TNorm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "product" | "prod" => Ok(TNorm::Product),
            "min" => Ok(TNorm::Min),
            "lukasiewicz" | "luk" => Ok(TNorm::Lukasiewicz),
            _ => Err(format!(
                "unknown t-norm `{s}` (expected product, min or lukasiewicz)"
            )),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Strictly increasing map from grades to `[0, 1]` with bottom at 0 and top
/// at 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T> {
    scale: Scale,
    values: Vec<T>,
}

impl<T: Scalar> Embedding<T> {
    pub fn new(scale: &Scale, values: Vec<T>) -> Result<Self> {
        if values.len() != scale.size() {
            return Err(Error::InvalidEmbedding(format!(
                "{} values for a scale of {} grades",
                values.len(),
                scale.size()
            )));
        }
        if values[0] != T::zero() || values[values.len() - 1] != T::one() {
            return Err(Error::InvalidEmbedding(
                "bottom must map to 0 and top to 1".to_string(),
            ));
        }
        for (i, w) in values.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::InvalidEmbedding(format!(
                    "not strictly increasing at {} ({} >= {})",
                    scale.label(i + 1),
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(Embedding {
            scale: scale.clone(),
            values,
        })
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, rank: usize) -> &T {
        &self.values[rank]
    }

    fn of(&self, pv: &Valuation) -> Result<T> {
        if pv.len() != 1 {
            return Err(Error::NotAGrade(pv.to_string()));
        }
        Ok(self.values[pv.first_rank()].clone())
    }

    pub fn to_f64(&self) -> Embedding<f64> {
        Embedding {
            scale: self.scale.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (l, v) in self.scale.labels().iter().zip(&self.values) {
            m.insert(l.clone(), v.to_json());
        }
        Value::Object(m)
    }
}

impl Embedding<Rational64> {
    /// Values in rank order, each `p/q`, a decimal or an integer.
    pub fn parse(scale: &Scale, list: &str) -> Result<Self> {
        let values = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(scale, values)
    }
}

/// Numeric pv of every hypothesis in `rb` under `emb`. Rules fire with
/// `tnorm` folded over premise values and the rule pv; several rules for the
/// same conclusion combine by maximum, and chained rules are followed.
pub fn evaluate_numeric<T: Scalar>(
    rb: &RuleBase,
    emb: &Embedding<T>,
    tnorm: TNorm,
) -> Result<BTreeMap<Atom, T>> {
    rb.scale().check_same(emb.scale())?;
    let mut env: BTreeMap<Atom, T> = BTreeMap::new();
    for f in rb.facts() {
        env.insert(f.atom.clone(), emb.of(&f.pv)?);
    }
    let mut out: BTreeMap<Atom, T> = BTreeMap::new();
    for _ in 0..=rb.rules().len() {
        let mut changed = false;
        for rule in rb.rules() {
            let mut acc = T::one();
            for p in &rule.premises {
                let v = env.get(p).cloned().unwrap_or_else(T::zero);
                acc = tnorm.apply(&acc, &v);
            }
            for c in &rule.conclusions {
                let v = tnorm.apply(&acc, &emb.of(&c.pv)?);
                let slot = out.entry(c.atom.clone()).or_insert_with(T::zero);
                if v > *slot {
                    *slot = v.clone();
                    changed = true;
                }
                let e = env.entry(c.atom.clone()).or_insert_with(T::zero);
                if v > *e {
                    *e = v;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(out)
}

/// `n` embeddings of `scale`: interior grades get sorted uniform draws,
/// redrawn whenever two coincide or one lands on 0.
pub fn sample_embeddings(scale: &Scale, n: usize, seed: u64) -> Vec<Embedding<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = scale.size() - 2;
    (0..n)
        .map(|_| loop {
            let mut inner: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
            inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut values = Vec::with_capacity(k + 2);
            values.push(0.0);
            values.extend(inner);
            values.push(1.0);
            if let Ok(e) = Embedding::new(scale, values) {
                break e;
            }
        })
        .collect()
}

/// One pair of embeddings that order some two hypotheses oppositely.
#[derive(Clone, Debug)]
pub struct Witness<T> {
    pub indices: (usize, usize),
    pub embeddings: (Embedding<T>, Embedding<T>),
    pub values: Vec<(Atom, T, T)>,
}

#[derive(Clone, Debug)]
pub struct StabilityReport<T> {
    pub samples: usize,
    /// Embedding pairs that strictly reverse at least one hypothesis pair.
    pub flips: u64,
    /// Reversed hypothesis pairs, summed over embedding pairs.
    pub pairwise_flips: u64,
    /// Embedding pairs whose full rankings (ties included) differ.
    pub ranking_disagreements: u64,
    /// Embeddings under which at least two hypotheses tie.
    pub ties: usize,
    pub witness: Option<Witness<T>>,
    pub hypotheses: Vec<Atom>,
    pub lexicographic_ranking: Vec<Ranked>,
    pub tnorm: TNorm,
    pub seed: Option<u64>,
}

fn signature<T: Scalar>(hyps: &[Atom], vals: &BTreeMap<Atom, T>) -> Vec<Ordering> {
    let zero = T::zero();
    let get = |a: &Atom| vals.get(a).unwrap_or(&zero).clone();
    let mut sig = Vec::new();
    for i in 0..hyps.len() {
        for j in i + 1..hyps.len() {
            sig.push(
                get(&hyps[i])
                    .partial_cmp(&get(&hyps[j]))
                    .unwrap_or(Ordering::Equal),
            );
        }
    }
    sig
}

fn reversals(a: &[Ordering], b: &[Ordering]) -> u64 {
    a.iter()
        .zip(b)
        .filter(|(x, y)| **x != Ordering::Equal && **y == x.reverse())
        .count() as u64
}

/// Audit over the given embeddings, in order. `seed` is only recorded.
pub fn audit_with<T: Scalar>(
    rb: &RuleBase,
    tnorm: TNorm,
    embeddings: &[Embedding<T>],
    seed: Option<u64>,
) -> Result<StabilityReport<T>> {
    let hyps = rb.hypotheses();
    let evals = embeddings
        .iter()
        .map(|e| evaluate_numeric(rb, e, tnorm))
        .collect::<Result<Vec<_>>>()?;

    // group embeddings by ordering signature; counts then go group by group
    let mut groups: BTreeMap<Vec<Ordering>, Vec<usize>> = BTreeMap::new();
    for (i, v) in evals.iter().enumerate() {
        groups.entry(signature(&hyps, v)).or_default().push(i);
    }
    let ties = groups
        .iter()
        .filter(|(s, _)| s.contains(&Ordering::Equal))
        .map(|(_, m)| m.len())
        .sum();
    let keys: Vec<&Vec<Ordering>> = groups.keys().collect();
    let (mut flips, mut pairwise, mut disagree) = (0u64, 0u64, 0u64);
    for a in 0..keys.len() {
        for b in a + 1..keys.len() {
            let n = (groups[keys[a]].len() * groups[keys[b]].len()) as u64;
            disagree += n;
            let r = reversals(keys[a], keys[b]);
            if r > 0 {
                flips += n;
                pairwise += n * r;
            }
        }
    }

    let mut witness = None;
    if flips > 0 {
        let sig_of: Vec<&Vec<Ordering>> = evals
            .iter()
            .map(|v| {
                keys.iter()
                    .copied()
                    .find(|k| **k == signature(&hyps, v))
                    .unwrap()
            })
            .collect();
        'outer: for i in 0..evals.len() {
            for j in i + 1..evals.len() {
                if reversals(sig_of[i], sig_of[j]) > 0 {
                    let zero = T::zero();
                    let values = hyps
                        .iter()
                        .map(|h| {
                            (
                                h.clone(),
                                evals[i].get(h).unwrap_or(&zero).clone(),
                                evals[j].get(h).unwrap_or(&zero).clone(),
                            )
                        })
                        .collect();
                    witness = Some(Witness {
                        indices: (i, j),
                        embeddings: (embeddings[i].clone(), embeddings[j].clone()),
                        values,
                    });
                    break 'outer;
                }
            }
        }
    }

    Ok(StabilityReport {
        samples: embeddings.len(),
        flips,
        pairwise_flips: pairwise,
        ranking_disagreements: disagree,
        ties,
        witness,
        hypotheses: hyps,
        lexicographic_ranking: infer(rb, Mode::MpgfR)?.ranking,
        tnorm,
        seed,
    })
}

/// Audit over `n` sampled embeddings.
pub fn audit(rb: &RuleBase, tnorm: TNorm, n: usize, seed: u64) -> Result<StabilityReport<f64>> {
    let embs = sample_embeddings(rb.scale(), n, seed);
    audit_with(rb, tnorm, &embs, Some(seed))
}

impl<T: Scalar> StabilityReport<T> {
    pub fn to_json(&self) -> Value {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "indices": [w.indices.0, w.indices.1],
                "embeddings": [w.embeddings.0.to_json(), w.embeddings.1.to_json()],
                "values": w.values.iter().map(|(a, x, y)| json!({
                    "attribute": a.attribute,
                    "value": a.value,
                    "pv": [x.to_json(), y.to_json()],
                })).collect::<Vec<_>>(),
            })
        });
        json!({
            "samples": self.samples,
            "tnorm": self.tnorm.as_str(),
            "seed": self.seed,
            "flips": self.flips,
            "pairwise_flips": self.pairwise_flips,
            "ranking_disagreements": self.ranking_disagreements,
            "ties": self.ties,
            "witness": witness,
            "lexicographic_ranking": self.lexicographic_ranking.iter().map(|r| json!({
                "attribute": r.atom.attribute,
                "value": r.atom.value,
                "pv": r.pv.labels(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let seed = self.seed.map_or("-".to_string(), |v| v.to_string());
        let rows = [
            ("tnorm", self.tnorm.to_string()),
            ("seed", seed),
            ("samples", self.samples.to_string()),
            ("flipping pairs", self.flips.to_string()),
            ("pairwise flips", self.pairwise_flips.to_string()),
            ("ranking disagreements", self.ranking_disagreements.to_string()),
            ("embeddings with ties", self.ties.to_string()),
        ];
        for (k, v) in rows {
            s += &format!("{k:<22} {v}\n");
        }
        match &self.witness {
            None => s += "witness                none\n",
            Some(w) => {
                s += &format!(
                    "witness                embeddings #{} and #{}\n",
                    w.indices.0, w.indices.1
                );
                let labels = self
                    .lexicographic_ranking
                    .first()
                    .map(|r| r.pv.scale().clone());
                if let Some(scale) = labels {
                    for (r, l) in scale.labels().iter().enumerate() {
                        s += &format!(
                            "  {l:<18} {:>12} {:>12}\n",
                            w.embeddings.0.value(r).to_string(),
                            w.embeddings.1.value(r).to_string()
                        );
                    }
                }
                for (a, x, y) in &w.values {
                    s += &format!(
                        "  {:<18} {:>12} {:>12}\n",
                        a.to_string(),
                        x.to_string(),
                        y.to_string()
                    );
                }
            }
        }
        s += "lexicographic ranking (same under every embedding)\n";
        for (i, r) in self.lexicographic_ranking.iter().enumerate() {
            s += &format!("  {}. {} {}\n", i + 1, r.atom, r.pv);
        }
        s
    }
}

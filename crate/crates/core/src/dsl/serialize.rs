use std::fmt::Write;

use crate::engine::{Atom, RuleBase};
use crate::valuation::Valuation;

/// A pv as written in documents: a bare label for singletons, otherwise
/// a parenthesised list.
pub fn serialize_valuation(v: &Valuation) -> String {
    let labels = v.labels();
    if labels.len() == 1 {
        labels[0].to_string()
    } else {
        format!("({})", labels.join(", "))
    }
}

fn atom(a: &Atom) -> String {
    format!("{} = {}", a.attribute, a.value)
}

/// Canonical text for `rb`. The negation table is written only when it
/// differs from the reflection.
pub fn serialize(rb: &RuleBase) -> String {
    let scale = rb.scale();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scale {} {{ {} }}",
        scale.name(),
        scale.labels().join(" ")
    );
    if !scale.has_default_negation() {
        let pairs: Vec<String> = scale
            .labels()
            .iter()
            .enumerate()
            .map(|(r, l)| format!("{l} -> {}", scale.label(scale.negate_rank(r))))
            .collect();
        let _ = writeln!(out, "negation {{ {} }}", pairs.join("  "));
    }
    if !rb.rules().is_empty() {
        out.push('\n');
    }
    for r in rb.rules() {
        let prem: Vec<String> = r.premises.iter().map(atom).collect();
        let concl: Vec<String> = r
            .conclusions
            .iter()
            .map(|c| format!("{} [{}]", atom(&c.atom), serialize_valuation(&c.pv)))
            .collect();
        let _ = writeln!(
            out,
            "rule {}: if {} then {}",
            r.id,
            prem.join(" and "),
            concl.join(" and ")
        );
    }
    if !rb.facts().is_empty() {
        out.push('\n');
    }
    for f in rb.facts() {
        let _ = writeln!(
            out,
            "fact {} [{}]",
            atom(&f.atom),
            serialize_valuation(&f.pv)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_document;

    const DOC: &str = "\
scale pv { MINIMAL VERY-SMALL SMALL AVERAGE LARGE VERY-LARGE MAXIMAL }
rule R1: if HEMATURIA-INTENSITY = MACROHEMATURIA and CLOT-OF-BLOOD = YES
  and CLOT-FORM = FORMLESS
  then HYPOTHESIS = UROLITHIASIS [LARGE] and HYPOTHESIS = TUMOR-OF-KIDNEY [VERY-LARGE]
fact HEMATURIA-INTENSITY = MACROHEMATURIA [MAXIMAL]
fact CLOT-OF-BLOOD = YES [VERY-LARGE]
fact CLOT-FORM = FORMLESS [(LARGE, VERY-LARGE)]
";

    #[test]
    fn round_trip() {
        let rb = parse_document(DOC).unwrap();
        let text = serialize(&rb);
        assert_eq!(parse_document(&text).unwrap(), rb);
        assert_eq!(serialize(&parse_document(&text).unwrap()), text);
        assert!(text.contains("fact CLOT-FORM = FORMLESS [(LARGE, VERY-LARGE)]"));
    }

    #[test]
    fn scale_only() {
        let rb = parse_document("scale s { LO HI }").unwrap();
        assert_eq!(serialize(&rb), "scale s { LO HI }\n");
    }

    #[test]
    fn custom_negation() {
        let rb = parse_document("scale s { LO MID HI } negation { LO -> HI MID -> HI HI -> LO }")
            .unwrap();
        let text = serialize(&rb);
        assert_eq!(
            text,
            "scale s { LO MID HI }\nnegation { LO -> HI  MID -> HI  HI -> LO }\n"
        );
        assert_eq!(parse_document(&text).unwrap(), rb);
    }
}

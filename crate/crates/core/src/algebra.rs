//! Connectives on canonical valuations.
//!
//! | operation          | definition                                   |
//! |--------------------|----------------------------------------------|
//! | [`conj`] (Δ)       | merge both grade multisets, sort, reduce     |
//! | [`disj`] (∇)       | the larger operand                           |
//! | [`neg`]  (c)       | singleton of the negated first grade         |
//! | [`s_implication`]  | `disj(neg(f), g)`                            |
//! | [`mpgf_s`]         | least `h` with `s_implication(f, h) >= g`    |
//! | [`r_implication`]  | greatest `h` with `conj(f, h) <= g`          |
//! | [`mpgf_r`]         | `conj(f, g)`                                 |
//!
//! Every binary operation rejects operands from different scales.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scale::Scale;
use crate::valuation::{compare_ranks, reduce_ranks, Valuation};

fn same_scale(f: &Valuation, g: &Valuation) -> Result<()> {
    f.scale().check_same(g.scale())
}

/// Merges two sorted rank slices.
pub(crate) fn merge_ranks(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Lexicographic conjunction Δ.
pub fn conj(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    same_scale(f, g)?;
    let scale = f.scale();
    if f.is_bottom() || g.is_bottom() {
        return Ok(Valuation::bottom(scale));
    }
    let merged = merge_ranks(f.ranks(), g.ranks());
    Valuation::from_reduced(scale, reduce_ranks(&merged, scale.top_rank()))
}

/// Δ over any number of operands; the empty conjunction is `(I)`.
pub fn conj_all<'a>(
    scale: &Scale,
    operands: impl IntoIterator<Item = &'a Valuation>,
) -> Result<Valuation> {
    operands
        .into_iter()
        .try_fold(Valuation::top(scale), |acc, v| conj(&acc, v))
}

/// Disjunction ∇: the maximum under the lexicographic order.
pub fn disj(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    Ok(match f.try_cmp(g)? {
        Ordering::Less => g.clone(),
        _ => f.clone(),
    })
}

/// Order minimum; the dual of [`disj`].
pub fn meet(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    Ok(match f.try_cmp(g)? {
        Ordering::Greater => g.clone(),
        _ => f.clone(),
    })
}

/// Negation `c(f) = (f₁')`.
pub fn neg(f: &Valuation) -> Valuation {
    let scale = f.scale();
    Valuation::singleton_rank(scale, scale.negate_rank(f.first_rank()))
}

pub fn s_implication(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    same_scale(f, g)?;
    disj(&neg(f), g)
}

/// Modus ponens generating function of the S-implication.
///
/// `s_implication(f, h) = max(c(f), h)`, so if `c(f) >= g` every `h` works and
/// the infimum is `(0)`; otherwise the least admissible `h` is `g` itself.
pub fn mpgf_s(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    same_scale(f, g)?;
    if neg(f).cmp_same(g) != Ordering::Less {
        Ok(Valuation::bottom(f.scale()))
    } else {
        Ok(g.clone())
    }
}

/// Modus ponens generating function of the R-implication, which is Δ.
pub fn mpgf_r(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    conj(f, g)
}

/// R-implication: the greatest `h` with `conj(f, h) <= g`.
///
/// When `f <= g` the answer is `(I)`. Otherwise the candidates of length at
/// most `len(f) + len(g) + 1` are searched in descending order, pruning any
/// subtree whose smallest member already fails. The search is repeated with
/// one more position allowed; if the two answers differ the supremum was not
/// pinned down and [`Error::SearchBoundExhausted`] is returned.
pub fn r_implication(f: &Valuation, g: &Valuation) -> Result<Valuation> {
    same_scale(f, g)?;
    let scale = f.scale();
    if f.cmp_same(g) != Ordering::Greater {
        return Ok(Valuation::top(scale));
    }
    let bound = f.len() + g.len() + 1;
    let first = residual_search(f, g, bound);
    let wider = residual_search(f, g, bound + 1);
    if first != wider {
        return Err(Error::SearchBoundExhausted {
            f: f.to_string(),
            g: g.to_string(),
            bound,
        });
    }
    Valuation::from_reduced(scale, first)
}

/// Greatest canonical `h` of length `<= bound` with `conj(f, h) <= g`, given
/// `f > g`. Always succeeds because `h = (0)` qualifies.
fn residual_search(f: &Valuation, g: &Valuation, bound: usize) -> Vec<usize> {
    let top = f.scale().top_rank();
    let admits = |h: &[usize]| -> bool {
        let merged = merge_ranks(f.ranks(), h);
        compare_ranks(&reduce_ranks(&merged, top), g.ranks()) != Ordering::Greater
    };
    // Preorder over prefixes with children in descending grade order visits
    // canonical strings in descending lexicographic order.
    fn descend(
        prefix: &mut Vec<usize>,
        bound: usize,
        top: usize,
        admits: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if admits(prefix) {
            return true;
        }
        let last = *prefix.last().expect("nonempty prefix");
        if prefix.len() == bound {
            return false;
        }
        // least member of this subtree: pad with the last grade
        let depth = prefix.len();
        prefix.resize(bound, last);
        let any = admits(prefix);
        prefix.truncate(depth);
        if !any {
            return false;
        }
        for next in (last..top).rev() {
            prefix.push(next);
            if descend(prefix, bound, top, admits) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    let mut prefix = Vec::with_capacity(bound);
    for first in (1..top).rev() {
        prefix.push(first);
        if descend(&mut prefix, bound, top, &admits) {
            return prefix;
        }
        prefix.clear();
    }
    vec![0]
}

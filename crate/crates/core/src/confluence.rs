//! Bounded overlap checks for presentations (the diamond condition).

use crate::element::Element;
use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapMismatch {
    pub word: Word,
    /// Normal form reached after first reducing the pair at each position.
    pub results: Vec<(usize, Element)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub mismatches: Vec<OverlapMismatch>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn render(&self, p: &Presentation) -> String {
        let mut out = format!(
            "overlap words checked: {}\nmismatches: {}\n",
            self.words_checked,
            self.mismatches.len()
        );
        for m in &self.mismatches {
            out.push_str(&format!("word {}\n", p.render_word(&m.word)));
            for (pos, e) in &m.results {
                out.push_str(&format!("  reduce at {pos}: {}\n", p.render(e)));
            }
        }
        out
    }
}

fn alphabet(p: &Presentation) -> Vec<Letter> {
    let mut out = Vec::new();
    for g in p.generators() {
        out.push(Letter::pos(g.position));
        if g.invertible {
            out.push(Letter::neg(g.position));
        }
    }
    out
}

/// Words of length `3..=max_degree` in which every adjacent pair is
/// reducible, in deterministic order.
pub fn overlap_words(p: &Presentation, max_degree: usize) -> Vec<Word> {
    let letters = alphabet(p);
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = letters
        .iter()
        .flat_map(|&x| {
            letters
                .iter()
                .filter(move |&&y| p.rewrite_pair(x, y).is_some())
                .map(move |&y| vec![x, y])
        })
        .collect();
    for _ in 3..=max_degree {
        let mut next = Vec::new();
        for w in &frontier {
            let last = *w.last().unwrap();
            for &y in &letters {
                if p.rewrite_pair(last, y).is_some() {
                    let mut v = w.clone();
                    v.push(y);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Reduces every overlap word by each possible first step and compares
/// the resulting normal forms.
pub fn check_confluence(p: &Presentation, max_degree: usize) -> Result<ConfluenceReport> {
    let mut report = ConfluenceReport::default();
    for w in overlap_words(p, max_degree) {
        report.words_checked += 1;
        let mut results: Vec<(usize, Element)> = Vec::new();
        for i in 0..w.len() - 1 {
            let rewritten = p.rewrite_pair(w[i], w[i + 1]).expect("reducible pair");
            let words: Vec<(Scalar, Word)> = rewritten
                .into_iter()
                .map(|(c, mid)| {
                    let mut v = w[..i].to_vec();
                    v.extend(mid);
                    v.extend_from_slice(&w[i + 2..]);
                    (c, v)
                })
                .collect();
            results.push((i, p.normal_words(&words)?));
        }
        if results.iter().any(|(_, e)| *e != results[0].1) {
            report.mismatches.push(OverlapMismatch { word: w, results });
        }
    }
    Ok(report)
}

/// Runs the overlap check and marks the presentation validated on success.
pub fn validate(mut p: Presentation, max_degree: usize) -> Result<Presentation> {
    let report = check_confluence(&p, max_degree)?;
    if let Some(m) = report.mismatches.first() {
        return Err(Error::ConfluenceFailed(format!(
            "{} mismatching overlap(s), first at {}",
            report.mismatches.len(),
            p.render_word(&m.word)
        )));
    }
    p.mark_validated();
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{Parity, PresentationBuilder};

    fn osp12(kb: i64) -> Presentation {
        let b = PresentationBuilder::new("osp12")
            .generator("b+", Parity::Odd)
            .generator("k", Parity::Even)
            .generator("b-", Parity::Odd);
        let bp = b.word(Scalar::from_int(kb), &[("b+", 1)]).unwrap();
        let bm = b.word(Scalar::from_int(-1), &[("b-", 1)]).unwrap();
        let k2 = b.word(Scalar::from_int(2), &[("k", 1)]).unwrap();
        b.commutator("k", "b+", bp)
            .unwrap()
            .commutator("k", "b-", bm)
            .unwrap()
            .anticommutator("b-", "b+", k2)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn osp12_is_confluent() {
        let r = check_confluence(&osp12(1), 3).unwrap();
        assert_eq!(r.words_checked, 1);
        assert!(r.passed());
        assert!(validate(osp12(1), 4).unwrap().is_validated());
    }

    #[test]
    fn mutated_rule_fails_on_descending_triple() {
        let p = osp12(2);
        let r = check_confluence(&p, 3).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(p.render_word(&r.mismatches[0].word), "b-*k*b+");
        assert!(matches!(validate(p, 3), Err(Error::ConfluenceFailed(_))));
    }
}

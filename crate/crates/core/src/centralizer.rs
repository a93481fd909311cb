//! Degree-bounded centralizers by exact linear algebra over PBW monomials.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::presentation::{BracketKind, Presentation};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Commute,
    Supercommute,
}

#[derive(Clone, Debug)]
pub struct CentralizerQuery<'a> {
    pub presentation: &'a Presentation,
    pub constraints: Vec<Element>,
    pub degree: u32,
    pub mode: Mode,
}

/// PBW monomials of degree at most `d`, by degree, then in rendering order.
/// Generators with a square rule appear with exponent at most one.
pub fn monomial_basis(p: &Presentation, d: u32) -> Result<Vec<Monomial>> {
    if p.is_localized() {
        return Err(Error::LocalizedPresentationUnsupported);
    }
    let n = p.len();
    let caps: Vec<u32> = (0..n)
        .map(|g| if p.square_rule(g).is_some() { 1 } else { d })
        .collect();
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut layer = Vec::new();
        let mut cur = vec![0i32; n];
        fill(&caps, 0, deg, &mut cur, &mut layer);
        layer.sort_by(|a: &Monomial, b| a.render_cmp(b));
        out.extend(layer);
    }
    Ok(out)
}

fn fill(caps: &[u32], i: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
    if i == caps.len() {
        if left == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    for e in 0..=left.min(caps[i]) {
        cur[i] = e as i32;
        fill(caps, i + 1, left - e, cur, out);
    }
    cur[i] = 0;
}

/// Basis of the degree-bounded centralizer in reduced echelon form: columns
/// in rendering order, leading coefficient 1, listed from lowest leading
/// monomial to highest.
pub fn centralizer_basis(q: &CentralizerQuery) -> Result<Vec<Element>> {
    let p = q.presentation;
    if q.constraints.is_empty() {
        return Err(Error::InvalidParameters("empty constraint set".into()));
    }
    let basis = monomial_basis(p, q.degree)?;
    let kind = match q.mode {
        Mode::Commute => BracketKind::Comm,
        Mode::Supercommute => BracketKind::Super,
    };
    let cols: Vec<Vec<Element>> = basis
        .par_iter()
        .map(|m| {
            let e = Element::monomial(m.clone());
            q.constraints
                .iter()
                .map(|s| p.bracket(&e, s, kind))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // Columns are ordered highest monomial first.
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| basis[a].render_cmp(&basis[b]));
    let mut rows: BTreeMap<(usize, Monomial), Vec<Scalar>> = BTreeMap::new();
    for (j, &b) in order.iter().enumerate() {
        for (si, e) in cols[b].iter().enumerate() {
            for (m, c) in e.terms() {
                rows.entry((si, m.clone()))
                    .or_insert_with(|| vec![Scalar::zero(); order.len()])[j] = c.clone();
            }
        }
    }
    let mut mat: Vec<Vec<Scalar>> = rows.into_values().collect();
    let pivots = rref(&mut mat);
    let mut null = Vec::new();
    for f in (0..order.len()).filter(|j| !pivots.contains(j)) {
        let mut v = vec![Scalar::zero(); order.len()];
        v[f] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -mat[r][f].clone();
        }
        null.push(v);
    }
    rref(&mut null);
    let mut out: Vec<Element> = null
        .iter()
        .map(|v| {
            let mut e = Element::zero();
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    e.add_term(basis[order[j]].clone(), c.clone());
                }
            }
            e
        })
        .collect();
    out.reverse();
    Ok(out)
}

/// Row-reduces in place; returns pivot columns and truncates zero rows.
pub(crate) fn rref(m: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Generators `g` with `[c, g] != 0`, with the commutator.
pub fn is_central(p: &Presentation, c: &Element) -> Result<(bool, Vec<(String, Element)>)> {
    let mut residuals = Vec::new();
    for (i, g) in p.generators().iter().enumerate() {
        let r = p.comm(c, &Element::generator(p.len(), i))?;
        if !r.is_zero() {
            residuals.push((g.name.clone(), r));
        }
    }
    Ok((residuals.is_empty(), residuals))
}

/// Center dimensions for `d = 0..=max` with all generators as constraints.
pub fn center_dimensions(p: &Presentation, max: u32, mode: Mode) -> Result<Vec<(u32, usize)>> {
    let gens: Vec<Element> = (0..p.len()).map(|i| Element::generator(p.len(), i)).collect();
    (0..=max)
        .map(|d| {
            let q = CentralizerQuery {
                presentation: p,
                constraints: gens.clone(),
                degree: d,
                mode,
            };
            Ok((d, centralizer_basis(&q)?.len()))
        })
        .collect()
}

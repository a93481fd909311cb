//! Registry of named algebras.

use crate::error::{Error, Result};
use crate::lie::{build_f, build_osp, osp_names, transport, Dictionary, LieSuperAlgebra};
use crate::presentation::Presentation;
use crate::reference::{self, Family};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
}

pub fn list() -> Vec<BuiltinInfo> {
    let e = |name, aliases, description| BuiltinInfo { name, aliases, description };
    vec![
        e("osp(1,2)", &["osp12"][..], "U(osp(1,2)) on b+ < k < b-"),
        e("osp(1,4)", &["osp14"], "U(osp(1,4)) on b_i, a, t, k_i, s (c_i eliminated)"),
        e("osp(1,6)", &["osp16"], "U(osp(1,6)), same scheme"),
        e("osp(1,2n)full", &["osp12full", "osp14full"], "U(osp(1,2n)) on the full Lie basis with square rules"),
        e("U-n+", &[], "U(n+) on b1p < ap < b2p < t"),
        e("U-b+", &[], "U(b+) on b1p < ap < k2 < k1 < b2p < t"),
        e("U-p+", &[], "U(p+) on b1p < ap < t < k2 < k1 < b2p < b2m"),
        e("U-q+", &[], "U(q+) on b1p < b2p < ap < t < k1 < k2 < s"),
        e("A1", &[], "Weyl algebra, yx = xy - 1"),
        e("Afermi", &[], "uv + vu = 1"),
        e("A(r,s,t)", &[], "r Weyl pairs, s fermionic pairs, t central"),
        e("hatA(r,s,t)", &[], "r Weyl pairs, s anticommuting pairs, t central"),
        e("S3", &[], "xy - yx = 1, xz = -zx, yz = -zy"),
        e("S4", &[], "two Weyl pairs with cross anticommutation"),
        e("f", &[], "odd u, w with {u,u} = z, {w,w} = t"),
        e("sl2", &[], "U(sl(2)) on e < k < f"),
        e("osp12z", &[], "b+ < k < z inside U(osp(1,2))"),
        e("L79", &[], "U of the even part of p+"),
        e("L77", &[], "U of the even part of q+"),
        e("illus-n+", &["illus-b+", "illus-p+"], "presentations drawn for n+, b+, p+"),
    ]
}

fn key(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

fn args(s: &str, head: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|x| x.parse().ok()).collect()
}

/// `n` for `osp(1,2n)`, `osp12`, `osp14`, `osp16`, with a `full` suffix flag.
fn osp_rank(k: &str) -> Option<(usize, bool)> {
    let (base, full) = match k.strip_suffix("full") {
        Some(b) => (b, true),
        None => (k, false),
    };
    let m = match base {
        "osp12" => 2,
        "osp14" => 4,
        "osp16" => 6,
        _ => match args(base, "osp")?.as_slice() {
            [1, m] => *m,
            _ => return None,
        },
    };
    (m % 2 == 0 && m > 0).then_some((m / 2, full))
}

pub fn osp_order(n: usize, full: bool) -> Vec<String> {
    let nm = osp_names(n);
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut v = Vec::new();
    let mut push = |kind: &str, idx: &[(usize, usize)]| v.extend(idx.iter().map(|&(i, j)| nm(kind, i, j)));
    let singles: Vec<(usize, usize)> = (1..=n).map(|i| (i, 0)).collect();
    push("b+", &singles);
    if full {
        push("c+", &singles);
    }
    push("a+", &pairs);
    push("t", &pairs);
    push("k", &singles);
    push("s", &pairs);
    push("a-", &pairs);
    if full {
        push("c-", &singles);
    }
    push("b-", &singles);
    v
}

fn lin(entries: &[(&str, &[(i64, i64, &str)])]) -> Dictionary {
    Dictionary {
        entries: entries
            .iter()
            .map(|(n, comb)| {
                let c = comb
                    .iter()
                    .map(|&(a, b, g)| (g.to_string(), Scalar::from_frac(a, b)))
                    .collect();
                (n.to_string(), c)
            })
            .collect(),
    }
}

pub fn lie(name: &str) -> Result<LieSuperAlgebra> {
    let k = key(name);
    if let Some((n, false)) = osp_rank(&k) {
        return build_osp(n);
    }
    let osp14 = || build_osp(2);
    let sub = |nm: &str, names: &[&str]| -> Result<LieSuperAlgebra> {
        osp14()?
            .subalgebra(nm, names)?
            .map_err(|f| Error::InvalidParameters(format!("{nm} is not closed: {} escaping pairs", f.witnesses.len())))
    };
    match k.as_str() {
        "f" => Ok(build_f()),
        "sl2" => Ok(reference::sl2()),
        "n+" => sub("n+", &["c1p", "c2p", "ap", "t", "b1p", "b2p"]),
        "b+" => sub("b+", &["c1p", "c2p", "ap", "t", "b1p", "b2p", "k1", "k2"]),
        "p+" => sub("p+", &["c1p", "c2p", "ap", "t", "b1p", "b2p", "k1", "k2", "c2m", "b2m"]),
        "q+" => sub("q+", &["c1p", "c2p", "ap", "t", "k1", "k2", "s", "b1p", "b2p"]),
        "l" => sub("l", &["b2p", "b2m", "c2p", "c2m", "k2"]),
        "h" => sub("h", &["k1", "k2"]),
        "L79" => transport(
            &osp14()?,
            &lin(&[
                ("e0", &[(1, 1, "t")]),
                ("e1", &[(1, 1, "ap")]),
                ("e2", &[(1, 1, "c1p")]),
                ("e3", &[(1, 1, "k1")]),
                ("x", &[(1, 2, "c2m")]),
                ("y", &[(-1, 2, "c2p")]),
                ("h", &[(-1, 1, "k2")]),
            ]),
            "L79",
        ),
        "L77" => transport(
            &osp14()?,
            &lin(&[
                ("e0", &[(1, 1, "c1p")]),
                ("e1", &[(2, 1, "ap")]),
                ("e2", &[(1, 1, "c2p")]),
                ("e3", &[(-1, 2, "k1"), (-1, 2, "k2")]),
                ("x", &[(1, 1, "t")]),
                ("y", &[(1, 1, "s")]),
                ("h", &[(1, 1, "k1"), (-1, 1, "k2")]),
            ]),
            "L77",
        ),
        _ => Err(Error::InvalidParameters(format!("unknown Lie superalgebra `{name}`"))),
    }
}

pub fn presentation(name: &str) -> Result<Presentation> {
    let k = key(name);
    if let Some((n, full)) = osp_rank(&k) {
        let order = osp_order(n, full);
        let refs: Vec<&str> = order.iter().map(String::as_str).collect();
        let label = if full { format!("osp(1,{})full", 2 * n) } else { format!("osp(1,{})", 2 * n) };
        return build_osp(n)?.enveloping(label, &refs);
    }
    if let Some(a) = args(&k, "A") {
        if let [r, s, t] = a[..] {
            return reference::build(Family::Mixed { r, s, t });
        }
    }
    if let Some(a) = args(&k, "hatA") {
        if let [r, s, t] = a[..] {
            return reference::build(Family::Hat { r, s, t });
        }
    }
    let env = |lname: &str, pname: &str, order: &[&str]| lie(lname)?.enveloping(pname, order);
    match k.as_str() {
        "A1" => reference::build(Family::A1),
        "Afermi" => reference::build(Family::Afermi),
        "S3" => reference::build(Family::S3),
        "S4" => reference::build(Family::S4),
        "f" => reference::build(Family::F),
        "sl2" => reference::build(Family::Sl2),
        "osp12z" => reference::osp12z(),
        "U-n+" => env("n+", "U-n+", &["b1p", "ap", "b2p", "t"]),
        "U-b+" => env("b+", "U-b+", &["b1p", "ap", "k2", "k1", "b2p", "t"]),
        "U-p+" => env("p+", "U-p+", &["b1p", "ap", "t", "k2", "k1", "b2p", "b2m"]),
        "U-q+" => env("q+", "U-q+", &["b1p", "b2p", "ap", "t", "k1", "k2", "s"]),
        "L79" | "L77" => env(&k, &k, &["e0", "e1", "e2", "e3", "x", "y", "h"]),
        _ => match k.strip_prefix("illus-") {
            Some(w) => reference::illustration(w),
            None => Err(Error::InvalidParameters(format!("unknown algebra `{name}`"))),
        },
    }
}

/// Generator names of a builtin presentation, without building it.
pub fn generator_names(name: &str) -> Result<Vec<String>> {
    let k = key(name);
    if let Some((n, full)) = osp_rank(&k) {
        return Ok(osp_order(n, full));
    }
    let fam = |head: &str, second: &str| {
        args(&k, head).and_then(|a| match a[..] {
            [r, s, t] => Some(reference::family_names(r, s, t, second)),
            _ => None,
        })
    };
    if let Some(v) = fam("A", "v").or_else(|| fam("hatA", "w")) {
        return Ok(v);
    }
    let v: &[&str] = match k.as_str() {
        "A1" => &["x", "y"],
        "Afermi" => &["u", "v"],
        "S3" => &["x", "y", "z"],
        "S4" => &["x1", "x2", "y1", "y2"],
        "f" => &["u", "w", "z", "t"],
        "sl2" => &["e", "k", "f"],
        "osp12z" => &["b+", "k", "z"],
        "U-n+" => &["b1p", "ap", "b2p", "t"],
        "U-b+" => &["b1p", "ap", "k2", "k1", "b2p", "t"],
        "U-p+" => &["b1p", "ap", "t", "k2", "k1", "b2p", "b2m"],
        "U-q+" => &["b1p", "b2p", "ap", "t", "k1", "k2", "s"],
        "L79" | "L77" => &["e0", "e1", "e2", "e3", "x", "y", "h"],
        "illus-n+" => &["tp", "ap", "y", "b1p"],
        "illus-b+" => &["k2p", "ap", "k1p", "b1p", "yp", "tpp"],
        "illus-p+" => &["u1", "v1", "k1pp", "w1", "u2", "v2", "z2"],
        _ => return Err(Error::InvalidParameters(format!("unknown algebra `{name}`"))),
    };
    Ok(v.iter().map(|s| s.to_string()).collect())
}

/// Presentation whose PBW filtration is the one of the Lie basis: the
/// full-basis variant for osp(1,2n), the named presentation otherwise.
pub fn center_presentation(name: &str) -> Result<Presentation> {
    match osp_rank(&key(name)) {
        Some((n, false)) => presentation(&format!("osp(1,{})full", 2 * n)),
        _ => presentation(name),
    }
}

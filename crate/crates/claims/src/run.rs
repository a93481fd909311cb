use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use ospfield_core::builtins;
use ospfield_core::centralizer::{centralizer_basis, CentralizerQuery};
use ospfield_core::confluence::check_confluence;
use ospfield_core::expr::Expr;
use ospfield_core::frac::{
    self, clear_and_verify, eval_frac, Binding, FracExpr, Identity, Outcome, RecipeStep,
    RepresentationCertificate,
};
use ospfield_core::lie::{
    compare_table, linear_combination, parse_table, Dictionary, LieSuperAlgebra,
};
use ospfield_core::localization::{
    adjoin_inverse_generator, adjoin_inverse_witness, verify_sigma_normal, SigmaNormalWitness,
};
use ospfield_core::{Element, Error, Presentation, Scalar};
use serde::Serialize;

use crate::ast::{Script, Step, Stmt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail { residual: String },
    Error { kind: String, message: String },
}

impl Status {
    pub fn passed(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail { .. } => "FAIL",
            Status::Error { .. } => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatementReport {
    pub line: usize,
    pub statement: String,
    #[serde(flatten)]
    pub status: Status,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptReport {
    pub name: String,
    pub statements: Vec<StatementReport>,
    pub micros: u64,
}

impl ScriptReport {
    pub fn passed(&self) -> bool {
        self.statements.iter().all(|s| s.status.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &StatementReport> {
        self.statements.iter().filter(|s| !s.status.passed())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&format!(
                "{}:{}: {} {}",
                self.name,
                s.line,
                s.status.label(),
                s.statement
            ));
            match &s.status {
                Status::Pass => {}
                Status::Fail { residual } => out.push_str(&format!("\n    residual: {residual}")),
                Status::Error { kind, message } => {
                    out.push_str(&format!("\n    {kind}: {message}"))
                }
            }
            out.push('\n');
        }
        let fails = self.failures().count();
        out.push_str(&format!(
            "{}: {} statements, {} passed, {} not passed\n",
            self.name,
            self.statements.len(),
            self.statements.len() - fails,
            fails
        ));
        out
    }
}

/// Where golden tables come from, and optional replacements for builtins.
#[derive(Default)]
pub struct Context<'a> {
    pub tables: Option<&'a (dyn Fn(&str) -> Option<String> + Sync)>,
    pub overrides: HashMap<String, Presentation>,
    pub lie_overrides: HashMap<String, LieSuperAlgebra>,
    pub budget: Option<u64>,
    /// Called with every algebra a script installs, localizations included.
    pub inspect: Option<&'a (dyn Fn(&Presentation) + Sync)>,
}

fn norm(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

fn cached_presentation(name: &str) -> Result<Presentation, Error> {
    static CACHE: OnceLock<Mutex<HashMap<String, Presentation>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = norm(name);
    if let Some(p) = cache.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = builtins::presentation(&key)?;
    cache.lock().unwrap().insert(key, p.clone());
    Ok(p)
}

fn cached_lie(name: &str) -> Result<LieSuperAlgebra, Error> {
    static CACHE: OnceLock<Mutex<HashMap<String, LieSuperAlgebra>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = norm(name);
    if let Some(l) = cache.lock().unwrap().get(&key) {
        return Ok(l.clone());
    }
    let l = builtins::lie(&key)?;
    cache.lock().unwrap().insert(key, l.clone());
    Ok(l)
}

fn kind(e: &Error) -> String {
    let d = format!("{e:?}");
    d.split(['(', ' ', '{'])
        .next()
        .unwrap_or("Error")
        .to_string()
}

enum Failure {
    Fail(String),
    Err(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

type Checked = std::result::Result<(), Failure>;

fn outcome(o: Outcome) -> Checked {
    match o {
        Outcome::Pass => Ok(()),
        Outcome::Fail(r) => Err(Failure::Fail(r)),
    }
}

#[derive(Default)]
struct State {
    algebra: Option<Presentation>,
    lie: Option<LieSuperAlgebra>,
    bindings: HashMap<String, Binding>,
    identities: HashMap<String, Identity>,
    witnesses: HashMap<String, SigmaNormalWitness>,
}

impl State {
    fn p(&self) -> Result<&Presentation, Error> {
        self.algebra
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("no active algebra".into()))
    }

    fn eval(&self, e: &Expr) -> Result<FracExpr, Error> {
        let p = self.p()?;
        let lookup = |s: &str| self.bindings.get(s).cloned();
        eval_frac(p, e, &lookup)
    }

    fn element(&self, e: &Expr) -> Result<Element, Error> {
        let p = self.p()?;
        self.eval(e)?
            .to_element(p)?
            .ok_or_else(|| Error::NotInvertible(format!("`{e}` does not reduce to a polynomial")))
    }

    fn recipe(&self, steps: &[Step]) -> Result<Vec<RecipeStep>, Error> {
        steps
            .iter()
            .map(|s| {
                Ok(match s {
                    Step::LMul(e) => RecipeStep::LMul(self.eval(e)?),
                    Step::RMul(e) => RecipeStep::RMul(self.eval(e)?),
                    Step::Use(l) => RecipeStep::UseIdentity(l.clone()),
                    Step::Cancel => RecipeStep::CancelAdjacentInverses,
                })
            })
            .collect()
    }

    fn check(&self, lhs: &FracExpr, rhs: &FracExpr, steps: &[Step]) -> Checked {
        let r = self.recipe(steps)?;
        outcome(clear_and_verify(self.p()?, lhs, rhs, &r, &self.identities)?)
    }

    fn lie(&self) -> Result<&LieSuperAlgebra, Error> {
        self.lie
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("no active Lie superalgebra".into()))
    }
}

fn exec(st: &mut State, ctx: &Context, stmt: &Stmt) -> Checked {
    match stmt {
        Stmt::Algebra { builtin, .. } => {
            let mut p = match ctx.overrides.get(&norm(builtin)) {
                Some(p) => p.clone(),
                None => cached_presentation(builtin)?,
            };
            if let Some(b) = ctx.budget {
                p.set_budget(b);
            }
            if let Some(f) = ctx.inspect {
                f(&p);
            }
            *st = State {
                algebra: Some(p),
                lie: st.lie.take(),
                ..Default::default()
            };
        }
        Stmt::Lie { builtin, .. } => {
            st.lie = Some(match ctx.lie_overrides.get(&norm(builtin)) {
                Some(l) => l.clone(),
                None => cached_lie(builtin)?,
            });
        }
        Stmt::Let { name, expr } => {
            let raw = st.eval(expr)?;
            let b = Binding::new(st.p()?, raw)?;
            st.bindings.insert(name.clone(), b);
        }
        Stmt::AssertZero { expr, recipe, .. } => {
            let x = st.eval(expr)?;
            st.check(&x, &FracExpr::zero(), recipe)?;
        }
        Stmt::AssertEq {
            label,
            lhs,
            rhs,
            recipe,
        } => {
            let (a, b) = (st.eval(lhs)?, st.eval(rhs)?);
            st.check(&a, &b, recipe)?;
            if let Some(l) = label {
                let id = Identity::new(&a, &b).ok_or_else(|| {
                    Error::InvalidParameters(format!(
                        "identity `{l}` needs a single-term left side"
                    ))
                })?;
                st.identities.insert(l.clone(), id);
            }
        }
        Stmt::AssertCommute { a, b, recipe, .. } | Stmt::AssertAnticommute { a, b, recipe, .. } => {
            let (x, y) = (st.eval(a)?, st.eval(b)?);
            let yx = y.mul(&x);
            let rhs = if matches!(stmt, Stmt::AssertCommute { .. }) {
                yx
            } else {
                yx.scale(&-Scalar::one())
            };
            st.check(&x.mul(&y), &rhs, recipe)?;
        }
        Stmt::AssertCentral { expr, among } => {
            let p = st.p()?;
            let x = st.eval(expr)?;
            let others: Vec<(String, FracExpr)> = if among.is_empty() {
                p.generators()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        (
                            g.name.clone(),
                            FracExpr::atom(Element::generator(p.len(), i)),
                        )
                    })
                    .collect()
            } else {
                among
                    .iter()
                    .map(|e| Ok((e.to_string(), st.eval(e)?)))
                    .collect::<Result<_, Error>>()?
            };
            let mut bad = Vec::new();
            for (name, g) in &others {
                if let Err(f) = st.check(&x.mul(g), &g.mul(&x), &[]) {
                    match f {
                        Failure::Fail(r) => bad.push(format!("[{expr}, {name}] = {r}")),
                        Failure::Err(e) => return Err(Failure::Err(e)),
                    }
                }
            }
            if !bad.is_empty() {
                return Err(Failure::Fail(bad.join("; ")));
            }
        }
        Stmt::SigmaNormal {
            name,
            conj,
            inverse,
        } => {
            let p = st.p()?;
            let e = st.element(&Expr::sym(name))?;
            let table = |m: &[(String, Expr)]| -> Result<Vec<Element>, Error> {
                p.generators()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| match m.iter().find(|(n, _)| *n == g.name) {
                        Some((_, x)) => st.element(x),
                        None => Ok(Element::generator(p.len(), i)),
                    })
                    .collect()
            };
            let w = SigmaNormalWitness {
                e,
                conj: table(conj)?,
                conj_inv: table(inverse)?,
            };
            let r = verify_sigma_normal(p, &w)?;
            if !r.passed() {
                return Err(Failure::Fail(r.render(p)));
            }
            st.witnesses.insert(name.clone(), w);
        }
        Stmt::AdjoinInverse { name } => {
            let p = st.p()?;
            let q = match st.witnesses.get(name) {
                Some(w) => adjoin_inverse_witness(p, w, 3)?,
                None => adjoin_inverse_generator(p, name, 3)?,
            };
            if let Some(f) = ctx.inspect {
                f(&q);
            }
            st.algebra = Some(q);
        }
        Stmt::Represent {
            target,
            gens,
            relations,
            witnesses,
        } => {
            let t = match ctx.overrides.get(&norm(target)) {
                Some(p) => p.clone(),
                None => cached_presentation(target)?,
            };
            let images = gens
                .iter()
                .map(|e| st.eval(e))
                .collect::<Result<Vec<_>, _>>()?;
            let mut relation_recipes = HashMap::new();
            for (a, b, r) in relations {
                let (ia, ib) = (t.position(a)?, t.position(b)?);
                let key = if ia >= ib {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                relation_recipes.insert(key, st.recipe(r)?);
            }
            let wits = witnesses
                .iter()
                .map(|(g, e, r)| Ok((g.clone(), st.eval(e)?, st.recipe(r)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let cert = RepresentationCertificate {
                target: t,
                images,
                relation_recipes,
                witnesses: wits,
            };
            let report = frac::represent(st.p()?, &cert, &st.identities)?;
            let bad: Vec<String> = report
                .relations
                .iter()
                .chain(&report.witnesses)
                .filter_map(|i| match &i.outcome {
                    Ok(Outcome::Pass) => None,
                    Ok(Outcome::Fail(r)) => Some(format!("{}: {r}", i.label)),
                    Err(e) => Some(format!("{}: {e}", i.label)),
                })
                .collect();
            if !bad.is_empty() {
                return Err(Failure::Fail(bad.join("; ")));
            }
        }
        Stmt::CenterDim {
            degree,
            expect,
            mode,
        } => {
            let p = st.p()?;
            let q = CentralizerQuery {
                presentation: p,
                constraints: (0..p.len())
                    .map(|i| Element::generator(p.len(), i))
                    .collect(),
                degree: *degree,
                mode: *mode,
            };
            let b = centralizer_basis(&q)?;
            if b.len() != *expect {
                let basis: Vec<String> = b.iter().map(|e| p.render(e)).collect();
                return Err(Failure::Fail(format!(
                    "dimension {} (expected {expect}): {}",
                    b.len(),
                    basis.join(", ")
                )));
            }
        }
        Stmt::CompareTable { dictionary, golden } => {
            let l = st.lie()?;
            let text = ctx
                .tables
                .and_then(|f| f(golden))
                .ok_or_else(|| Error::InvalidParameters(format!("no golden table `{golden}`")))?;
            let expected =
                parse_table(&text).map_err(|e| Error::InvalidParameters(e.to_string()))?;
            let dict = Dictionary {
                entries: dictionary
                    .iter()
                    .map(|(n, e)| {
                        linear_combination(e)
                            .map(|c| (n.clone(), c))
                            .map_err(Error::InvalidParameters)
                    })
                    .collect::<Result<_, _>>()?,
            };
            let r = compare_table(l, &dict, &expected)?;
            if !r.passed() {
                let d: Vec<String> = r
                    .diffs
                    .iter()
                    .map(|d| format!("{} (recomputed {})", d.entry, d.recomputed))
                    .collect();
                return Err(Failure::Fail(d.join("; ")));
            }
        }
        Stmt::AssertJacobi => {
            let l = st.lie()?;
            let r = l.validate_jacobi();
            if !r.passed() {
                let v: Vec<String> = r
                    .violations
                    .iter()
                    .take(5)
                    .map(|&(a, b, c)| {
                        format!(
                            "({}, {}, {})",
                            l.basis_name(a),
                            l.basis_name(b),
                            l.basis_name(c)
                        )
                    })
                    .collect();
                return Err(Failure::Fail(format!(
                    "{} violations, first {}",
                    r.violations.len() + r.antisymmetry.len() + r.parity.len(),
                    v.join(" ")
                )));
            }
        }
        Stmt::AssertClosed { basis } => {
            let l = st.lie()?;
            let names: Vec<&str> = basis.iter().map(String::as_str).collect();
            if let Err(f) = l.subalgebra("sub", &names)? {
                let w: Vec<String> = f
                    .witnesses
                    .iter()
                    .map(|w| format!("[{}, {}] = {}", w.pair.0, w.pair.1, w.bracket))
                    .collect();
                return Err(Failure::Fail(w.join("; ")));
            }
        }
        Stmt::AssertConfluent { degree } => {
            let p = st.p()?;
            let r = check_confluence(p, *degree)?;
            if !r.passed() {
                return Err(Failure::Fail(r.render(p)));
            }
        }
    }
    Ok(())
}

/// Runs every statement in order; failures do not stop later statements.
pub fn run(name: &str, script: &Script, ctx: &Context) -> ScriptReport {
    let start = Instant::now();
    let mut st = State::default();
    let mut statements = Vec::new();
    for s in &script.statements {
        let t = Instant::now();
        let status = match exec(&mut st, ctx, &s.stmt) {
            Ok(()) => Status::Pass,
            Err(Failure::Fail(residual)) => Status::Fail { residual },
            Err(Failure::Err(e)) => Status::Error {
                kind: kind(&e),
                message: e.to_string(),
            },
        };
        statements.push(StatementReport {
            line: s.line,
            statement: s.stmt.to_string(),
            status,
            micros: t.elapsed().as_micros() as u64,
        });
    }
    ScriptReport {
        name: name.to_string(),
        statements,
        micros: start.elapsed().as_micros() as u64,
    }
}

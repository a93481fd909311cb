use std::fmt;

use ospfield_core::centralizer::Mode;
use ospfield_core::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    LMul(Expr),
    RMul(Expr),
    Use(String),
    Cancel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Algebra {
        name: String,
        builtin: String,
    },
    Lie {
        name: String,
        builtin: String,
    },
    Let {
        name: String,
        expr: Expr,
    },
    AssertZero {
        label: Option<String>,
        expr: Expr,
        recipe: Vec<Step>,
    },
    AssertEq {
        label: Option<String>,
        lhs: Expr,
        rhs: Expr,
        recipe: Vec<Step>,
    },
    AssertCommute {
        label: Option<String>,
        a: Expr,
        b: Expr,
        recipe: Vec<Step>,
    },
    AssertAnticommute {
        label: Option<String>,
        a: Expr,
        b: Expr,
        recipe: Vec<Step>,
    },
    /// Commutes with every generator, or with the listed elements.
    AssertCentral {
        expr: Expr,
        among: Vec<Expr>,
    },
    SigmaNormal {
        name: String,
        conj: Vec<(String, Expr)>,
        inverse: Vec<(String, Expr)>,
    },
    AdjoinInverse {
        name: String,
    },
    Represent {
        target: String,
        gens: Vec<Expr>,
        relations: Vec<(String, String, Vec<Step>)>,
        witnesses: Vec<(String, Expr, Vec<Step>)>,
    },
    CenterDim {
        degree: u32,
        expect: usize,
        mode: Mode,
    },
    CompareTable {
        dictionary: Vec<(String, Expr)>,
        golden: String,
    },
    AssertJacobi,
    AssertClosed {
        basis: Vec<String>,
    },
    AssertConfluent {
        degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub stmt: Stmt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl Script {
    pub fn stmts(&self) -> impl Iterator<Item = &Stmt> {
        self.statements.iter().map(|s| &s.stmt)
    }
}

fn recipe(f: &mut fmt::Formatter<'_>, steps: &[Step]) -> fmt::Result {
    if steps.is_empty() {
        return Ok(());
    }
    f.write_str(" via ")?;
    for (i, s) in steps.iter().enumerate() {
        if i > 0 {
            f.write_str("; ")?;
        }
        match s {
            Step::LMul(e) => write!(f, "lmul {e}")?,
            Step::RMul(e) => write!(f, "rmul {e}")?,
            Step::Use(l) => write!(f, "use {l}")?,
            Step::Cancel => f.write_str("cancel")?,
        }
    }
    Ok(())
}

fn label(f: &mut fmt::Formatter<'_>, l: &Option<String>) -> fmt::Result {
    match l {
        Some(l) => write!(f, "{l}: "),
        None => Ok(()),
    }
}

fn list<T>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    one: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        one(f, x)?;
    }
    Ok(())
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Algebra { name, builtin } => write!(f, "algebra {name} = {builtin}"),
            Stmt::Lie { name, builtin } => write!(f, "lie {name} = {builtin}"),
            Stmt::Let { name, expr } => write!(f, "let {name} = {expr}"),
            Stmt::AssertZero {
                label: l,
                expr,
                recipe: r,
            } => {
                f.write_str("assert_zero ")?;
                label(f, l)?;
                write!(f, "{expr}")?;
                recipe(f, r)
            }
            Stmt::AssertEq {
                label: l,
                lhs,
                rhs,
                recipe: r,
            } => {
                f.write_str("assert_eq ")?;
                label(f, l)?;
                write!(f, "{lhs}, {rhs}")?;
                recipe(f, r)
            }
            Stmt::AssertCommute {
                label: l,
                a,
                b,
                recipe: r,
            } => {
                f.write_str("assert_commute ")?;
                label(f, l)?;
                write!(f, "{a}, {b}")?;
                recipe(f, r)
            }
            Stmt::AssertAnticommute {
                label: l,
                a,
                b,
                recipe: r,
            } => {
                f.write_str("assert_anticommute ")?;
                label(f, l)?;
                write!(f, "{a}, {b}")?;
                recipe(f, r)
            }
            Stmt::AssertCentral { expr, among } => {
                write!(f, "assert_central {expr}")?;
                if !among.is_empty() {
                    f.write_str(" in (")?;
                    list(f, among, |f, e| write!(f, "{e}"))?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            Stmt::SigmaNormal {
                name,
                conj,
                inverse,
            } => {
                write!(f, "sigma_normal {name} : ")?;
                list(f, conj, |f, (g, e)| write!(f, "{g} -> {e}"))?;
                if !inverse.is_empty() {
                    f.write_str(" ; inverse ")?;
                    list(f, inverse, |f, (g, e)| write!(f, "{g} -> {e}"))?;
                }
                Ok(())
            }
            Stmt::AdjoinInverse { name } => write!(f, "adjoin_inverse {name}"),
            Stmt::Represent {
                target,
                gens,
                relations,
                witnesses,
            } => {
                write!(f, "represent target={target} gens=(")?;
                list(f, gens, |f, e| write!(f, "{e}"))?;
                f.write_str(")")?;
                for (a, b, r) in relations {
                    write!(f, " rel {a}, {b}")?;
                    recipe(f, r)?;
                }
                for (g, e, r) in witnesses {
                    write!(f, " witness {g} = {e}")?;
                    recipe(f, r)?;
                }
                Ok(())
            }
            Stmt::CenterDim {
                degree,
                expect,
                mode,
            } => {
                write!(f, "center_dim d={degree} expect={expect}")?;
                if *mode == Mode::Supercommute {
                    f.write_str(" super")?;
                }
                Ok(())
            }
            Stmt::CompareTable { dictionary, golden } => {
                f.write_str("compare_table dictionary=(")?;
                list(f, dictionary, |f, (n, e)| write!(f, "{n}={e}"))?;
                write!(f, ") golden={golden}")
            }
            Stmt::AssertJacobi => f.write_str("assert_jacobi"),
            Stmt::AssertClosed { basis } => {
                f.write_str("assert_closed (")?;
                list(f, basis, |f, n| f.write_str(n))?;
                f.write_str(")")
            }
            Stmt::AssertConfluent { degree } => write!(f, "assert_confluent d={degree}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.stmt)?;
        }
        Ok(())
    }
}

use std::collections::HashMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::FinAlgebra;
use crate::error::{Error, Result};

/// A term over a signature.
///
/// On the wire a term is an S-expression in JSON: a variable is a bare
/// string (`"x1"`), an application is an array headed by the operation name
/// (`["mul", ["mul", "x1", "x2"], "x3"]`). A nullary application is a
/// one-element array (`["e"]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(op.into(), args)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Value of the induced term function at `env`.
    pub fn eval(&self, alg: &FinAlgebra, env: &HashMap<String, usize>) -> Result<usize> {
        self.eval_with(alg, &|v| env.get(v).copied())
    }

    pub fn eval_with(&self, alg: &FinAlgebra, env: &dyn Fn(&str) -> Option<usize>) -> Result<usize> {
        match self {
            Term::Var(v) => {
                let x = env(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                if x >= alg.size() {
                    return Err(Error::Input(format!(
                        "variable `{v}` bound to {x}, outside carrier of size {}",
                        alg.size()
                    )));
                }
                Ok(x)
            }
            Term::App(op, args) => {
                let idx = alg
                    .signature()
                    .index_of(op)
                    .ok_or_else(|| Error::UnknownOperation(op.clone()))?;
                let arity = alg.signature().ops()[idx].arity;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        op: op.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                let vals = args
                    .iter()
                    .map(|a| a.eval_with(alg, env))
                    .collect::<Result<Vec<_>>>()?;
                Ok(alg.apply(idx, &vals))
            }
        }
    }

    /// Evaluate at positional arguments, binding `vars[i]` to `args[i]`.
    pub fn eval_positional(&self, alg: &FinAlgebra, vars: &[String], args: &[usize]) -> Result<usize> {
        self.eval_with(alg, &|v| vars.iter().position(|w| w == v).map(|i| args[i]))
    }

    /// Check arities against the signature without evaluating.
    pub fn check_against(&self, alg: &FinAlgebra) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                let idx = alg
                    .signature()
                    .index_of(op)
                    .ok_or_else(|| Error::UnknownOperation(op.clone()))?;
                let arity = alg.signature().ops()[idx].arity;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        op: op.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check_against(alg))
            }
        }
    }

    pub fn to_sexpr(&self) -> Value {
        match self {
            Term::Var(v) => Value::String(v.clone()),
            Term::App(op, args) => {
                let mut items = vec![Value::String(op.clone())];
                items.extend(args.iter().map(Term::to_sexpr));
                Value::Array(items)
            }
        }
    }

    pub fn from_sexpr(v: &Value) -> Result<Term> {
        match v {
            Value::String(s) => Ok(Term::Var(s.clone())),
            Value::Array(items) => {
                let (head, rest) = items
                    .split_first()
                    .ok_or_else(|| Error::Input("empty S-expression".into()))?;
                let op = head
                    .as_str()
                    .ok_or_else(|| Error::Input(format!("S-expression head must be a string, got {head}")))?;
                let args = rest.iter().map(Term::from_sexpr).collect::<Result<Vec<_>>>()?;
                Ok(Term::App(op.to_string(), args))
            }
            other => Err(Error::Input(format!("not a term: {other}"))),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_sexpr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Term::from_sexpr(&v).map_err(D::Error::custom)
    }
}

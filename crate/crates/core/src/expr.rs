//! Physical duoidal expressions over the unit `e`, variables `x<i>`, the
//! symmetric product `ox` and the ordered product `tri`.
//!
//! Text syntax is an s-expression: `(tri x0 (ox x1 (tri x2 x3)))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{self, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expression {
    Unit,
    Var(usize),
    Otimes(Vec<Expression>),
    Tri(Vec<Expression>),
}

impl Expression {
    pub fn otimes(children: impl IntoIterator<Item = Expression>) -> Self {
        Expression::Otimes(children.into_iter().collect())
    }

    pub fn tri(children: impl IntoIterator<Item = Expression>) -> Self {
        Expression::Tri(children.into_iter().collect())
    }

    /// Variable indices in order of appearance.
    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Expression::Unit => {}
            Expression::Var(i) => out.push(*i),
            Expression::Otimes(cs) | Expression::Tri(cs) => {
                cs.iter().for_each(|c| c.collect_vars(out))
            }
        }
    }

    /// Sorted variable indices, or an error if a variable repeats.
    pub fn var_set(&self) -> Result<Vec<usize>> {
        let mut vars = self.vars();
        vars.sort_unstable();
        if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedExpression(format!(
                "variable x{} appears more than once",
                w[0]
            )));
        }
        Ok(vars)
    }

    pub fn min_var(&self) -> Option<usize> {
        self.vars().into_iter().min()
    }

    /// Structural checks: linear in its variables, and every `ox`/`tri`
    /// node has at least two children.
    pub fn check_well_formed(&self) -> Result<()> {
        self.var_set()?;
        self.check_arity()
    }

    fn check_arity(&self) -> Result<()> {
        match self {
            Expression::Unit | Expression::Var(_) => Ok(()),
            Expression::Otimes(cs) | Expression::Tri(cs) => {
                if cs.len() < 2 {
                    return Err(Error::MalformedExpression(format!(
                        "{} node with {} children",
                        if matches!(self, Expression::Otimes(_)) { "ox" } else { "tri" },
                        cs.len()
                    )));
                }
                cs.iter().try_for_each(Expression::check_arity)
            }
        }
    }

    /// Canonical representative of the equivalence class: nested products
    /// flattened, units removed, single-child products collapsed and `ox`
    /// children sorted by least variable.
    pub fn normalize(&self) -> Expression {
        match self {
            Expression::Unit | Expression::Var(_) => self.clone(),
            Expression::Otimes(cs) => {
                let mut flat = Vec::new();
                for c in cs.iter().map(Expression::normalize) {
                    match c {
                        Expression::Unit => {}
                        Expression::Otimes(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort_by_key(Expression::min_var);
                collapse(flat, Expression::Otimes)
            }
            Expression::Tri(cs) => {
                let mut flat = Vec::new();
                for c in cs.iter().map(Expression::normalize) {
                    match c {
                        Expression::Unit => {}
                        Expression::Tri(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                collapse(flat, Expression::Tri)
            }
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    pub fn equivalent(&self, other: &Expression) -> bool {
        self.normalize() == other.normalize()
    }

    /// Evaluate on the variables actually present: element `k` of the
    /// result is the `k`-th smallest variable.
    pub fn evaluate_compact(&self) -> Result<FinitePoset> {
        self.check_well_formed()?;
        let vars = self.var_set()?;
        Ok(self.eval_rec(&vars))
    }

    fn eval_rec(&self, vars: &[usize]) -> FinitePoset {
        match self {
            Expression::Unit => FinitePoset::empty(),
            Expression::Var(_) => FinitePoset::singleton(),
            Expression::Otimes(cs) | Expression::Tri(cs) => {
                // evaluate children, then place them at their variables' ranks
                let is_tri = matches!(self, Expression::Tri(_));
                let mut order: Vec<usize> = Vec::new();
                let mut acc = FinitePoset::empty();
                for c in cs {
                    let sub = c.eval_rec(&compact(c));
                    acc = if is_tri {
                        poset::join(&acc, &sub)
                    } else {
                        poset::disjoint_union(&acc, &sub)
                    };
                    let mut cv = c.vars();
                    cv.sort_unstable();
                    order.extend(cv);
                }
                // acc element k corresponds to variable order[k]
                let map: Vec<usize> = order
                    .iter()
                    .map(|v| vars.binary_search(v).expect("variable present"))
                    .collect();
                acc.relabel(&map).expect("ranks form a bijection")
            }
        }
    }
}

fn compact(e: &Expression) -> Vec<usize> {
    let mut v = e.vars();
    v.sort_unstable();
    v
}

fn collapse(mut flat: Vec<Expression>, ctor: fn(Vec<Expression>) -> Expression) -> Expression {
    match flat.len() {
        0 => Expression::Unit,
        1 => flat.pop().unwrap(),
        _ => ctor(flat),
    }
}

/// Interpret `Var(i)` as the singleton on element `i`, `Otimes` as disjoint
/// union, `Tri` as join and `Unit` as the empty poset.
///
/// The variables must be exactly `0..n` for some `n`.
pub fn evaluate(e: &Expression) -> Result<FinitePoset> {
    let vars = e.var_set()?;
    if let Some((k, &v)) = vars.iter().enumerate().find(|&(k, &v)| k != v) {
        return Err(Error::MalformedExpression(format!(
            "variables must be x0..x{}; found x{v} at rank {k}",
            vars.len().saturating_sub(1)
        )));
    }
    e.evaluate_compact()
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Unit => write!(f, "e"),
            Expression::Var(i) => write!(f, "x{i}"),
            Expression::Otimes(cs) | Expression::Tri(cs) => {
                let head = if matches!(self, Expression::Otimes(_)) { "ox" } else { "tri" };
                write!(f, "({head}")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let e = parse_tokens(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input at token {pos}")));
        }
        Ok(e)
    }
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_owned)
        .collect()
}

fn parse_tokens(tokens: &[String], pos: &mut usize) -> Result<Expression> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "e" => Ok(Expression::Unit),
        "(" => {
            let head = tokens
                .get(*pos)
                .ok_or_else(|| Error::Parse("missing operator after `(`".into()))?;
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_tokens(tokens, pos)?),
                    None => return Err(Error::Parse("unclosed `(`".into())),
                }
            }
            match head.as_str() {
                "ox" => Ok(Expression::Otimes(children)),
                "tri" => Ok(Expression::Tri(children)),
                other => Err(Error::Parse(format!("unknown operator `{other}`"))),
            }
        }
        t if t.starts_with('x') => t[1..]
            .parse()
            .map(Expression::Var)
            .map_err(|_| Error::Parse(format!("bad variable `{t}`"))),
        t => Err(Error::Parse(format!("unexpected token `{t}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::from_pairs;

    fn x(i: usize) -> Expression {
        Expression::Var(i)
    }

    #[test]
    fn parse_print() {
        let text = "(tri x0 (ox x1 (tri x2 x3)))";
        let e: Expression = text.parse().unwrap();
        assert_eq!(
            e,
            Expression::tri([x(0), Expression::otimes([x(1), Expression::tri([x(2), x(3)])])])
        );
        assert_eq!(e.to_string(), text);
        assert_eq!("e".parse::<Expression>().unwrap(), Expression::Unit);
        assert!("(foo x0 x1)".parse::<Expression>().is_err());
        assert!("(ox x0".parse::<Expression>().is_err());
        assert!("x0 x1".parse::<Expression>().is_err());
        assert!("xq".parse::<Expression>().is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            evaluate(&Expression::tri([x(0), x(1)])).unwrap(),
            FinitePoset::chain(2)
        );
        assert_eq!(evaluate(&Expression::Unit).unwrap(), FinitePoset::empty());
        let e: Expression = "(ox (tri x0 x1) (tri x2 x3))".parse().unwrap();
        assert_eq!(evaluate(&e).unwrap().pairs(), vec![(0, 1), (2, 3)]);
        // variable order does not follow position
        let e: Expression = "(tri x2 (ox x0 x1))".parse().unwrap();
        assert_eq!(evaluate(&e).unwrap().pairs(), vec![(2, 0), (2, 1)]);
        let e: Expression = "(tri x0 (ox x1 (tri x2 x3)))".parse().unwrap();
        assert_eq!(
            evaluate(&e).unwrap(),
            from_pairs(4, &[(0, 1), (0, 2), (2, 3)]).unwrap()
        );
    }

    #[test]
    fn malformed() {
        let dup: Expression = "(ox x0 x0)".parse().unwrap();
        assert!(matches!(evaluate(&dup), Err(Error::MalformedExpression(_))));
        let gap: Expression = "(ox x0 x2)".parse().unwrap();
        assert!(matches!(evaluate(&gap), Err(Error::MalformedExpression(_))));
        let short = Expression::Tri(vec![x(0)]);
        assert!(matches!(evaluate(&short), Err(Error::MalformedExpression(_))));
    }

    #[test]
    fn normal_form() {
        let e: Expression = "(ox (ox x2 e) (tri (tri x0 e) x1))".parse().unwrap();
        assert_eq!(e.normalize().to_string(), "(ox (tri x0 x1) x2)");
        let u: Expression = "(tri e (ox e e))".parse().unwrap();
        assert_eq!(u.normalize(), Expression::Unit);
        let comparitor_src: Expression = "(ox (tri x0 e) (tri e x1))".parse().unwrap();
        assert_eq!(comparitor_src.normalize().to_string(), "(ox x0 x1)");
    }
}

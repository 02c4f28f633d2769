//! Tropical dependence algebra on nonnegative runtimes.
//!
//! `⊗` is `max`, `◁` is `+`, and a poset `P` acts on runtimes by the
//! longest chain sum: the makespan of running every task as soon as its
//! predecessors finish, with unlimited parallelism.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::poset::FinitePoset;

/// A nonnegative exact rational duration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Runtime(BigRational);

impl Runtime {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeRuntime(value.to_string()));
        }
        Ok(Runtime(value))
    }

    pub fn zero() -> Self {
        Runtime(BigRational::zero())
    }

    pub fn integer(n: u64) -> Self {
        Runtime(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        Runtime(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn max(self, other: Runtime) -> Runtime {
        std::cmp::max(self, other)
    }
}

impl Add for Runtime {
    type Output = Runtime;
    fn add(self, rhs: Runtime) -> Runtime {
        Runtime(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Runtime> for &'a Runtime {
    type Output = Runtime;
    fn add(self, rhs: &Runtime) -> Runtime {
        Runtime(&self.0 + &rhs.0)
    }
}

impl std::iter::Sum for Runtime {
    fn sum<I: Iterator<Item = Runtime>>(iter: I) -> Runtime {
        iter.fold(Runtime::zero(), Add::add)
    }
}

impl fmt::Display for Runtime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Accepts integers, decimals (`1.25`) and fractions (`5/4`), exactly.
impl FromStr for Runtime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a runtime: `{s}`"));
        let value = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let whole: BigInt = if whole.is_empty() || whole == "-" {
                BigInt::zero()
            } else {
                whole.parse().map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().map_err(|_| bad())?;
            let magnitude = whole.abs() * &scale + frac;
            let numer = if negative { -magnitude } else { magnitude };
            BigRational::new(numer, scale)
        } else {
            BigRational::from_integer(s.parse().map_err(|_| bad())?)
        };
        Runtime::new(value)
    }
}

/// Parse a comma-separated runtime list such as `1,3,4,1`.
pub fn parse_runtimes(s: &str) -> Result<Vec<Runtime>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

fn check_arity(p: &FinitePoset, a: &[Runtime]) -> Result<()> {
    if a.len() != p.size() {
        return Err(Error::Arity {
            expected: p.size(),
            found: a.len(),
        });
    }
    Ok(())
}

/// Longest chain sum ending at each element, over a linear extension.
fn finish_times(p: &FinitePoset, a: &[Runtime]) -> Vec<Runtime> {
    let mut finish = vec![Runtime::zero(); p.size()];
    for j in p.first_linear_extension() {
        let start = p
            .predecessors(j)
            .into_iter()
            .map(|i| finish[i].clone())
            .max()
            .unwrap_or_default();
        finish[j] = start + a[j].clone();
    }
    finish
}

/// `⊠^P(a)`: the maximum over chains of `P` of the summed runtimes, and
/// zero for the empty poset.
pub fn boxtimes(p: &FinitePoset, a: &[Runtime]) -> Result<Runtime> {
    check_arity(p, a)?;
    Ok(finish_times(p, a).into_iter().max().unwrap_or_default())
}

/// Earliest-start schedule with unlimited parallelism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub start: Vec<Runtime>,
    pub finish: Vec<Runtime>,
    pub makespan: Runtime,
    /// Lexicographically least chain realizing the makespan; empty only for
    /// the empty poset.
    pub critical_chain: Vec<usize>,
}

pub fn schedule(p: &FinitePoset, a: &[Runtime]) -> Result<Schedule> {
    check_arity(p, a)?;
    let n = p.size();
    let finish = finish_times(p, a);
    let start: Vec<Runtime> = (0..n)
        .map(|j| {
            p.predecessors(j)
                .into_iter()
                .map(|i| finish[i].clone())
                .max()
                .unwrap_or_default()
        })
        .collect();
    let makespan = finish.iter().cloned().max().unwrap_or_default();

    // longest chain sum starting at each element, filled in reverse order
    let mut tail = vec![Runtime::zero(); n];
    for &i in p.first_linear_extension().iter().rev() {
        let rest = p
            .successors(i)
            .into_iter()
            .map(|j| tail[j].clone())
            .max()
            .unwrap_or_default();
        tail[i] = a[i].clone() + rest;
    }
    let mut critical_chain = Vec::new();
    if let Some(first) = (0..n).find(|&i| tail[i] == makespan) {
        let mut current = first;
        critical_chain.push(current);
        loop {
            let needed = Runtime(&tail[current].0 - &a[current].0);
            if needed.is_zero() {
                break;
            }
            current = p
                .successors(current)
                .into_iter()
                .find(|&j| tail[j] == needed)
                .expect("a positive remainder is realized by some successor");
            critical_chain.push(current);
        }
    }
    Ok(Schedule {
        start,
        finish,
        makespan,
        critical_chain,
    })
}

/// The lax interchanger inequality `(a+b) max (c+d) ≤ (a max c) + (b max d)`.
pub fn check_interchange(a: &Runtime, b: &Runtime, c: &Runtime, d: &Runtime) -> bool {
    let lhs = (a + b).max(c + d);
    let rhs = a.clone().max(c.clone()) + b.clone().max(d.clone());
    lhs <= rhs
}

/// Evaluate an expression with `ox ↦ max`, `tri ↦ +`, `e ↦ 0` and
/// `x<i> ↦ a[i]`.
pub fn evaluate_expression(e: &Expression, a: &[Runtime]) -> Result<Runtime> {
    Ok(match e {
        Expression::Unit => Runtime::zero(),
        Expression::Var(i) => a
            .get(*i)
            .cloned()
            .ok_or(Error::Index {
                index: *i,
                size: a.len(),
            })?,
        Expression::Otimes(cs) => cs
            .iter()
            .map(|c| evaluate_expression(c, a))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or_default(),
        Expression::Tri(cs) => cs
            .iter()
            .map(|c| evaluate_expression(c, a))
            .sum::<Result<Runtime>>()?,
    })
}

/// Fixed-width text Gantt chart: one row per element, `resolution` columns
/// per time unit. A cell is filled when its left edge lies in
/// `[start, finish)`.
pub fn render_gantt(schedule: &Schedule, resolution: u32) -> String {
    let res = BigRational::from_integer(BigInt::from(resolution.max(1)));
    let span = &schedule.makespan.0 * &res;
    let columns = span.ceil().to_integer();
    let columns: usize = columns.try_into().unwrap_or(0);
    let width = schedule.start.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for (k, (s, f)) in schedule.start.iter().zip(&schedule.finish).enumerate() {
        let lo = &s.0 * &res;
        let hi = &f.0 * &res;
        let row: String = (0..columns)
            .map(|c| {
                let edge = BigRational::from_integer(BigInt::from(c));
                if lo <= edge && edge < hi {
                    '#'
                } else {
                    '.'
                }
            })
            .collect();
        out.push_str(&format!("{k:>width$} |{row}| {s}..{f}\n"));
    }
    out
}

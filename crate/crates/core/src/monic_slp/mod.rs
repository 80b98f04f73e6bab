//! Elementary monic representations: straight-line programs over
//! `ℤ[y_1..y_n][t]` whose every value is monic in `t`, together with
//! equality and inequality pairs whose differences do not involve `t`.
//!
//! Index 0 is `x_0 = t`, indices `1..=n` are `x_i = y_i + t`, and the
//! instruction at position `k` defines `x_{n+1+k}`.

mod compile;
mod poly;
mod templates;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;

pub use compile::{compile_algebra, PresentedAlgebra};
pub use poly::{bigint_to_field, Exponents, PolyZ};
pub use templates::{sqrt_floor_below, zinvp_rep, zmodp_rep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instr {
    Add(usize, usize),
    Mul(usize, usize),
    /// `x_j + 1`.
    Inc(usize),
}

impl Instr {
    pub fn args(&self) -> Vec<usize> {
        match *self {
            Instr::Add(j, k) | Instr::Mul(j, k) => vec![j, k],
            Instr::Inc(j) => vec![j],
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instr::Add(j, k) => write!(f, "x{j} + x{k}"),
            Instr::Mul(j, k) => write!(f, "x{j} * x{k}"),
            Instr::Inc(j) => write!(f, "x{j} + 1"),
        }
    }
}

/// Instruction counts `(a, m, o)` and constraint counts `(e, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OpCounts {
    pub n: usize,
    pub a: usize,
    pub m: usize,
    pub o: usize,
    pub e: usize,
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonicRep {
    pub n: usize,
    pub instrs: Vec<Instr>,
    pub eq: Vec<(usize, usize)>,
    pub ineq: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawInstr {
    op: String,
    args: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawRep {
    n: usize,
    instrs: Vec<RawInstr>,
    #[serde(default)]
    eq: Vec<(usize, usize)>,
    #[serde(default)]
    ineq: Vec<(usize, usize)>,
}

/// A problem found by [`MonicRep::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepViolation {
    /// An argument refers to an index that is not yet defined.
    ForwardReference { index: usize, arg: usize },
    NotMonic { index: usize, value: PolyZ },
    PairOutOfRange { pair: (usize, usize) },
    InvolvesT { pair: (usize, usize), equality: bool, difference: PolyZ },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::ForwardReference { index, arg } => {
                write!(f, "x{index} uses x{arg}, which is not defined before it")
            }
            RepViolation::NotMonic { index, value } => write!(f, "x{index} = {value} is not monic in t"),
            RepViolation::PairOutOfRange { pair } => write!(f, "pair ({}, {}) is out of range", pair.0, pair.1),
            RepViolation::InvolvesT { pair, equality, difference } => write!(
                f,
                "{} pair x{} - x{} = {difference} involves t",
                if *equality { "equality" } else { "inequality" },
                pair.0,
                pair.1
            ),
        }
    }
}

/// A coincidence found by [`MonicRep::eval_at`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvalFlag {
    /// `x_i` is 0 or 1.
    Degenerate { index: usize, value: u8 },
    EqualOperands { index: usize },
    /// The left operand of an addition is -1.
    MinusOneOperand { index: usize },
    EqualityViolated { i: usize, j: usize },
    InequalityViolated { i: usize, j: usize },
}

impl fmt::Display for EvalFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalFlag::Degenerate { index, value } => write!(f, "x{index} = {value}"),
            EvalFlag::EqualOperands { index } => write!(f, "x{index} adds two equal values"),
            EvalFlag::MinusOneOperand { index } => write!(f, "x{index} adds to -1"),
            EvalFlag::EqualityViolated { i, j } => write!(f, "x{i} != x{j}"),
            EvalFlag::InequalityViolated { i, j } => write!(f, "x{i} = x{j}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation<E> {
    pub values: Vec<E>,
    pub flags: Vec<EvalFlag>,
}

impl<E> Evaluation<E> {
    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }

    /// The first flag as an error, constraint violations first.
    pub fn to_error(&self) -> Option<Error> {
        let pick = self
            .flags
            .iter()
            .find(|f| matches!(f, EvalFlag::EqualityViolated { .. } | EvalFlag::InequalityViolated { .. }))
            .or(self.flags.first())?;
        Some(match *pick {
            EvalFlag::EqualityViolated { i, j } => Error::EqualityViolated(i, j),
            EvalFlag::InequalityViolated { i, j } => Error::InequalityViolated(i, j),
            ref other => Error::Degenerate(other.to_string()),
        })
    }
}

impl MonicRep {
    /// The representation with no instructions: `x_1..x_n` only.
    pub fn free(n: usize) -> MonicRep {
        MonicRep { n, ..MonicRep::default() }
    }

    pub fn last_index(&self) -> usize {
        self.n + self.instrs.len()
    }

    /// Index defined by the instruction at `pos`.
    pub fn instr_index(&self, pos: usize) -> usize {
        self.n + 1 + pos
    }

    /// Appends an instruction and returns the index it defines.
    pub fn push(&mut self, instr: Instr) -> usize {
        self.instrs.push(instr);
        self.last_index()
    }

    pub fn counts(&self) -> OpCounts {
        let mut c = OpCounts { n: self.n, e: self.eq.len(), i: self.ineq.len(), ..OpCounts::default() };
        for ins in &self.instrs {
            match ins {
                Instr::Add(..) => c.a += 1,
                Instr::Mul(..) => c.m += 1,
                Instr::Inc(..) => c.o += 1,
            }
        }
        c
    }

    /// Symbolic values of every index, in order.
    pub fn eval_symbolic_all(&self) -> Result<Vec<PolyZ>> {
        let n = self.n;
        let mut vals = Vec::with_capacity(self.last_index() + 1);
        vals.push(PolyZ::t(n));
        for i in 1..=n {
            vals.push(PolyZ::y(n, i).add(&PolyZ::t(n)));
        }
        let one = PolyZ::constant(n, 1);
        for (pos, ins) in self.instrs.iter().enumerate() {
            let idx = self.instr_index(pos);
            if let Some(&arg) = ins.args().iter().find(|&&a| a >= idx) {
                return Err(Error::InvalidRep(vec![RepViolation::ForwardReference { index: idx, arg }.to_string()]));
            }
            let v = match *ins {
                Instr::Add(j, k) => vals[j].add(&vals[k]),
                Instr::Mul(j, k) => vals[j].mul(&vals[k]),
                Instr::Inc(j) => vals[j].add(&one),
            };
            vals.push(v);
        }
        Ok(vals)
    }

    pub fn eval_symbolic(&self, i: usize) -> Result<PolyZ> {
        if i > self.last_index() {
            return Err(Error::Argument(format!("index {i} beyond x{}", self.last_index())));
        }
        let mut prefix = self.clone();
        prefix.instrs.truncate(i.saturating_sub(self.n));
        Ok(prefix.eval_symbolic_all()?.swap_remove(i))
    }

    /// Every violation of the defining conditions, in index order.
    pub fn validate(&self) -> Vec<RepViolation> {
        let mut out = Vec::new();
        for (pos, ins) in self.instrs.iter().enumerate() {
            let idx = self.instr_index(pos);
            for arg in ins.args() {
                if arg >= idx {
                    out.push(RepViolation::ForwardReference { index: idx, arg });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let vals = self.eval_symbolic_all().expect("indices checked");
        for (idx, v) in vals.iter().enumerate() {
            if !v.is_monic_in_t() {
                out.push(RepViolation::NotMonic { index: idx, value: v.clone() });
            }
        }
        let pairs = self.eq.iter().map(|&p| (p, true)).chain(self.ineq.iter().map(|&p| (p, false)));
        for (pair, equality) in pairs {
            if pair.0 >= vals.len() || pair.1 >= vals.len() {
                out.push(RepViolation::PairOutOfRange { pair });
                continue;
            }
            let difference = vals[pair.0].sub(&vals[pair.1]);
            if !difference.is_t_free() {
                out.push(RepViolation::InvolvesT { pair, equality, difference });
            }
        }
        out
    }

    /// `Ok` when [`validate`](Self::validate) finds nothing.
    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidRep(v.iter().map(ToString::to_string).collect()))
        }
    }

    /// The `t`-free differences `x_i - x_j` of the equality pairs.
    pub fn equality_differences(&self) -> Result<Vec<PolyZ>> {
        let vals = self.eval_symbolic_all()?;
        Ok(self.eq.iter().map(|&(i, j)| vals[i].sub(&vals[j])).collect())
    }

    /// Evaluates every index at a point and flags the coincidences that
    /// would collapse points of the associated configuration.
    pub fn eval_at<F: Field>(&self, f: &F, y: &[F::Elem], t: &F::Elem) -> Result<Evaluation<F::Elem>> {
        if y.len() != self.n {
            return Err(Error::Argument(format!("expected {} values for y, got {}", self.n, y.len())));
        }
        let mut values = Vec::with_capacity(self.last_index() + 1);
        values.push(t.clone());
        values.extend(y.iter().map(|v| f.add(v, t)));
        let one = f.one();
        let minus_one = f.neg(&one);
        let mut flags = Vec::new();
        for (pos, ins) in self.instrs.iter().enumerate() {
            let idx = self.instr_index(pos);
            if let Some(&arg) = ins.args().iter().find(|&&a| a >= idx) {
                return Err(Error::InvalidRep(vec![RepViolation::ForwardReference { index: idx, arg }.to_string()]));
            }
            let v = match *ins {
                Instr::Add(j, k) => {
                    if values[j] == values[k] {
                        flags.push(EvalFlag::EqualOperands { index: idx });
                    }
                    if values[j] == minus_one {
                        flags.push(EvalFlag::MinusOneOperand { index: idx });
                    }
                    f.add(&values[j], &values[k])
                }
                Instr::Inc(j) => {
                    if values[j] == one {
                        flags.push(EvalFlag::EqualOperands { index: idx });
                    }
                    if values[j] == minus_one {
                        flags.push(EvalFlag::MinusOneOperand { index: idx });
                    }
                    f.add(&values[j], &one)
                }
                Instr::Mul(j, k) => f.mul(&values[j], &values[k]),
            };
            values.push(v);
        }
        for (idx, v) in values.iter().enumerate() {
            if f.is_zero(v) {
                flags.push(EvalFlag::Degenerate { index: idx, value: 0 });
            } else if f.is_one(v) {
                flags.push(EvalFlag::Degenerate { index: idx, value: 1 });
            }
        }
        for &(i, j) in &self.eq {
            if values.get(i) != values.get(j) || i >= values.len() {
                flags.push(EvalFlag::EqualityViolated { i, j });
            }
        }
        for &(i, j) in &self.ineq {
            if values.get(i) == values.get(j) || i >= values.len() {
                flags.push(EvalFlag::InequalityViolated { i, j });
            }
        }
        Ok(Evaluation { values, flags })
    }

    pub fn to_json(&self) -> Value {
        let raw = RawRep {
            n: self.n,
            instrs: self
                .instrs
                .iter()
                .map(|ins| RawInstr {
                    op: match ins {
                        Instr::Add(..) => "add",
                        Instr::Mul(..) => "mul",
                        Instr::Inc(..) => "inc",
                    }
                    .into(),
                    args: ins.args(),
                })
                .collect(),
            eq: self.eq.clone(),
            ineq: self.ineq.clone(),
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<MonicRep> {
        let raw: RawRep = serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
        let instrs = raw
            .instrs
            .iter()
            .enumerate()
            .map(|(pos, r)| match (r.op.as_str(), r.args.as_slice()) {
                ("add", &[j, k]) => Ok(Instr::Add(j, k)),
                ("mul", &[j, k]) => Ok(Instr::Mul(j, k)),
                ("inc", &[j]) => Ok(Instr::Inc(j)),
                (op, args) => Err(Error::Format(format!("instruction {pos}: bad op {op:?} with {} args", args.len()))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonicRep { n: raw.n, instrs, eq: raw.eq, ineq: raw.ineq })
    }

    /// One instruction per line, followed by the constraint pairs.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\n", self.n);
        for (pos, ins) in self.instrs.iter().enumerate() {
            out += &format!("x{} = {ins}\n", self.instr_index(pos));
        }
        for (i, j) in &self.eq {
            out += &format!("x{i} == x{j}\n");
        }
        for (i, j) in &self.ineq {
            out += &format!("x{i} != x{j}\n");
        }
        out
    }
}

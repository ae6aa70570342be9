//! Hidden-pattern engine: threshold, update, iterate until a state repeats.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::special::{
    apply_component, expected_len, Algebra, Component, Kind, Op, Part, SpecialMatrix,
    SpecialStateVector, Side,
};
use crate::value::{threshold_scalar, OrderPolicy, Scalar, ThresholdMode};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub k: f64,
    pub policy: OrderPolicy,
    pub max_steps: usize,
    /// Threshold and update max-min / min-max components too (off: their raw output is the state).
    pub lattice_threshold: bool,
    pub exec: Exec,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            k: 0.0,
            policy: OrderPolicy::BookDefault,
            max_steps: DEFAULT_MAX_STEPS,
            lattice_threshold: false,
            exec: Exec::default(),
        }
    }
}

/// Coordinates that were ON in the user's seed, and the side that seed lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputMask {
    pub side: Side,
    pub on: Vec<usize>,
}

impl InputMask {
    pub fn from_seed(part: &Part) -> InputMask {
        InputMask {
            side: part.side,
            on: part
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Scalar::ONE)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn empty(side: Side) -> InputMask {
        InputMask { side, on: Vec::new() }
    }

    fn pin(&self, side: Side, v: &mut [Scalar]) {
        if side == self.side {
            for &i in &self.on {
                v[i] = Scalar::ONE;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Single(Vec<Scalar>),
    Pair {
        domain: Vec<Scalar>,
        range: Vec<Scalar>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    FixedPoint(State),
    /// States in visiting order; the last maps back to the first.
    LimitCycle(Vec<State>),
}

impl Outcome {
    pub fn period(&self) -> usize {
        match self {
            Outcome::FixedPoint(_) => 1,
            Outcome::LimitCycle(s) => s.len(),
        }
    }

    pub fn fixed(&self) -> Option<&State> {
        match self {
            Outcome::FixedPoint(s) => Some(s),
            Outcome::LimitCycle(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub step: usize,
    pub component: usize,
    pub side: Side,
    pub raw: Vec<Scalar>,
    pub thresholded: Vec<Scalar>,
    pub updated: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentResult {
    pub outcome: Outcome,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HiddenPattern {
    pub components: Vec<ComponentResult>,
    pub trace: Vec<IterationRecord>,
}

impl HiddenPattern {
    pub fn outcome(&self, i: usize) -> &Outcome {
        &self.components[i].outcome
    }

    pub fn max_period(&self) -> usize {
        self.components.iter().map(|c| c.outcome.period()).max().unwrap_or(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Detection<T> {
    FixedPoint(T),
    LimitCycle(Vec<T>),
    NotYet,
}

/// Closes on the first recurrence of an earlier state.
pub fn detect_cycle<T: PartialEq + Clone>(history: &[T]) -> Detection<T> {
    for t in 1..history.len() {
        if let Some(j) = history[..t].iter().position(|h| *h == history[t]) {
            return if t - j == 1 {
                Detection::FixedPoint(history[t].clone())
            } else {
                Detection::LimitCycle(history[j..t].to_vec())
            };
        }
    }
    Detection::NotYet
}

pub fn mode_for(algebra: Algebra, k: f64) -> ThresholdMode {
    match algebra {
        Algebra::Fuzzy => ThresholdMode::Fuzzy(k),
        Algebra::Neutrosophic => ThresholdMode::Neutrosophic(k),
    }
}

fn threshold_vec(raw: &[Scalar], mode: ThresholdMode) -> Result<Vec<Scalar>> {
    raw.iter().map(|x| threshold_scalar(*x, mode)).collect()
}

/// Thresholds every part, then pins masked coordinates to 1 on the masked side.
pub fn threshold_update(
    raw: &SpecialStateVector,
    masks: &[InputMask],
    mode: ThresholdMode,
) -> Result<SpecialStateVector> {
    if raw.parts.len() != masks.len() {
        return Err(Error::ComponentCountMismatch {
            expected: masks.len(),
            got: raw.parts.len(),
        });
    }
    let mut parts = Vec::with_capacity(raw.parts.len());
    for (i, (p, m)) in raw.parts.iter().zip(masks).enumerate() {
        if let Some(&bad) = m.on.iter().find(|&&j| j >= p.values.len()) {
            return Err(Error::ShapeMismatch(format!(
                "component {}: mask index {} outside length {}",
                i + 1,
                bad + 1,
                p.values.len()
            )));
        }
        let mut v = threshold_vec(&p.values, mode)?;
        m.pin(p.side, &mut v);
        parts.push(Part { side: p.side, values: v });
    }
    Ok(SpecialStateVector::new(parts))
}

fn key(v: &[Scalar]) -> Vec<(u64, u64)> {
    v.iter().map(|x| x.key()).collect()
}

struct Runner<'a> {
    index: usize,
    c: &'a Component,
    mask: InputMask,
    mode: ThresholdMode,
    lattice: bool,
    opts: RunOptions,
    steps: usize,
    trace: Vec<IterationRecord>,
}

impl Runner<'_> {
    fn out_side(&self, side: Side) -> Side {
        match self.c.tag.kind {
            Kind::Cm => Side::Domain,
            Kind::Rm => side.flip(),
        }
    }

    fn half(&mut self, x: &[Scalar], side: Side) -> Result<Vec<Scalar>> {
        self.steps += 1;
        if self.steps > self.opts.max_steps {
            return Err(Error::IterationCapExceeded {
                component: self.index + 1,
                cap: self.opts.max_steps,
            });
        }
        let raw = apply_component(x, self.c, side, self.c.tag.op, self.opts.policy, self.index)?;
        let out = self.out_side(side);
        let (thresholded, updated) = if self.lattice {
            (raw.clone(), raw.clone())
        } else {
            let t = threshold_vec(&raw, self.mode)?;
            let mut u = t.clone();
            self.mask.pin(out, &mut u);
            (t, u)
        };
        self.trace.push(IterationRecord {
            step: self.steps,
            component: self.index + 1,
            side: out,
            raw,
            thresholded,
            updated: updated.clone(),
        });
        Ok(updated)
    }

    fn run_cm(&mut self, seed: Vec<Scalar>) -> Result<Outcome> {
        let mut history = vec![seed.clone()];
        let mut seen = HashMap::from([(key(&seed), 0usize)]);
        let mut cur = seed;
        loop {
            let next = self.half(&cur, Side::Domain)?;
            if let Some(&j) = seen.get(&key(&next)) {
                let states: Vec<State> = history[j..].iter().cloned().map(State::Single).collect();
                return Ok(close(states));
            }
            seen.insert(key(&next), history.len());
            history.push(next.clone());
            cur = next;
        }
    }

    fn run_rm(&mut self, seed: Vec<Scalar>, side: Side) -> Result<Outcome> {
        let pair = |a: Vec<Scalar>, b: Vec<Scalar>| match side {
            Side::Domain => State::Pair { domain: a, range: b },
            Side::Range => State::Pair { domain: b, range: a },
        };
        let mut history: Vec<State> = Vec::new();
        let mut seen = HashMap::new();
        let mut cur = seed;
        loop {
            let out = self.half(&cur, side)?;
            let k = (key(&cur), key(&out));
            if let Some(&j) = seen.get(&k) {
                return Ok(close(history[j..].to_vec()));
            }
            seen.insert(k, history.len());
            history.push(pair(cur, out.clone()));
            cur = self.half(&out, side.flip())?;
        }
    }
}

fn close(states: Vec<State>) -> Outcome {
    if states.len() == 1 {
        Outcome::FixedPoint(states.into_iter().next().unwrap())
    } else {
        Outcome::LimitCycle(states)
    }
}

fn check_seed(i: usize, c: &Component, p: &Part) -> Result<()> {
    if c.tag.kind == Kind::Cm && p.side == Side::Range {
        return Err(Error::InvalidInput(format!(
            "component {}: a CM component has no range side",
            i + 1
        )));
    }
    let want = expected_len(c, p.side);
    if p.values.len() != want {
        return Err(Error::ShapeMismatch(format!(
            "component {}: {} vector has length {}, expected {}",
            i + 1,
            p.side,
            p.values.len(),
            want
        )));
    }
    if let Some(v) = p.values.iter().find(|v| **v != Scalar::ZERO && **v != Scalar::ONE) {
        return Err(Error::InvalidInput(format!(
            "component {}: non-crisp input value {v}",
            i + 1
        )));
    }
    Ok(())
}

fn run_one(i: usize, c: &Component, p: &Part, opts: RunOptions) -> Result<(ComponentResult, Vec<IterationRecord>)> {
    check_seed(i, c, p)?;
    let mut r = Runner {
        index: i,
        c,
        mask: InputMask::from_seed(p),
        mode: mode_for(c.tag.algebra, opts.k),
        lattice: c.tag.op != Op::Circle && !opts.lattice_threshold,
        opts,
        steps: 0,
        trace: Vec::new(),
    };
    let outcome = match c.tag.kind {
        Kind::Cm => r.run_cm(p.values.clone())?,
        Kind::Rm => r.run_rm(p.values.clone(), p.side)?,
    };
    Ok((ComponentResult { outcome, steps: r.steps }, r.trace))
}

/// Runs every component to its own fixed point or limit cycle.
pub fn run_mixed(m: &SpecialMatrix, x0: &SpecialStateVector, opts: RunOptions) -> Result<HiddenPattern> {
    if x0.parts.len() != m.len() {
        return Err(Error::ComponentCountMismatch {
            expected: m.len(),
            got: x0.parts.len(),
        });
    }
    let results = opts
        .exec
        .map(&x0.parts, |i, p| run_one(i, m.component(i), p, opts));
    let mut components = Vec::with_capacity(results.len());
    let mut trace = Vec::new();
    for r in results {
        let (c, t) = r?;
        components.push(c);
        trace.extend(t);
    }
    Ok(HiddenPattern { components, trace })
}

pub fn run_cm(m: &SpecialMatrix, x0: &SpecialStateVector, opts: RunOptions) -> Result<HiddenPattern> {
    if let Some(i) = m.components().iter().position(|c| c.tag.kind != Kind::Cm) {
        return Err(Error::NonCmComponent(i + 1));
    }
    run_mixed(m, x0, opts)
}

pub fn run_rm(m: &SpecialMatrix, x0: &SpecialStateVector, opts: RunOptions) -> Result<HiddenPattern> {
    if let Some(i) = m.components().iter().position(|c| c.tag.kind != Kind::Rm) {
        return Err(Error::NonRmComponent(i + 1));
    }
    run_mixed(m, x0, opts)
}

/// Independent runs, spread over `opts.exec`; each run itself is sequential.
pub fn run_batch(
    systems: &[(SpecialMatrix, SpecialStateVector)],
    opts: RunOptions,
) -> Vec<Result<HiddenPattern>> {
    let inner = RunOptions {
        exec: Exec::Sequential,
        ..opts
    };
    opts.exec.map(systems, |_, (m, x)| run_mixed(m, x, inner))
}

/// One full update from `state` (CM: one product; RM: out and back from the seed side).
pub fn advance(
    c: &Component,
    state: &State,
    mask: &InputMask,
    opts: RunOptions,
) -> Result<State> {
    let mut r = Runner {
        index: 0,
        c,
        mask: mask.clone(),
        mode: mode_for(c.tag.algebra, opts.k),
        lattice: c.tag.op != Op::Circle && !opts.lattice_threshold,
        opts: RunOptions {
            max_steps: usize::MAX,
            ..opts
        },
        steps: 0,
        trace: Vec::new(),
    };
    match state {
        State::Single(v) => Ok(State::Single(r.half(v, Side::Domain)?)),
        State::Pair { domain, range } => {
            let (start, side) = match mask.side {
                Side::Domain => (domain, Side::Domain),
                Side::Range => (range, Side::Range),
            };
            let out = r.half(start, side)?;
            let back = r.half(&out, side.flip())?;
            let out2 = r.half(&back, side)?;
            Ok(match side {
                Side::Domain => State::Pair { domain: back, range: out2 },
                Side::Range => State::Pair { domain: out2, range: back },
            })
        }
    }
}

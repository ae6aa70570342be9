//! JSON-lines run traces and a replay verifier.
//!
//! Lines, in order: one `header`, the `step` records of component 1, 2, …, then one
//! `result` per component. Scalars are strings in the canonical scalar syntax.

use serde::{Deserialize, Serialize};

use crate::dynamics::{HiddenPattern, Outcome, State};
use crate::error::{Error, Result};
use crate::models::Model;
use crate::special::{Kind, SpecialStateVector, Side};
use crate::value::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentHeader {
    pub component: usize,
    pub expert: String,
    pub kind: String,
    pub algebra: String,
    pub op: String,
    pub dims: (usize, usize),
    pub seed_side: String,
    pub seed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Record {
    Header {
        model: String,
        name: String,
        components: Vec<ComponentHeader>,
    },
    Step {
        component: usize,
        step: usize,
        side: String,
        raw: Vec<String>,
        thresholded: Vec<String>,
        updated: Vec<String>,
    },
    Result {
        component: usize,
        classification: String,
        period: usize,
        steps: usize,
        states: Vec<StateText>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateText {
    Single { state: Vec<String> },
    Pair { domain: Vec<String>, range: Vec<String> },
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn state_text(s: &State) -> StateText {
    match s {
        State::Single(v) => StateText::Single { state: strs(v) },
        State::Pair { domain, range } => StateText::Pair {
            domain: strs(domain),
            range: strs(range),
        },
    }
}

pub fn records(model: &Model, seed: &SpecialStateVector, hp: &HiddenPattern) -> Vec<Record> {
    let mut out = vec![Record::Header {
        model: model.class.to_string(),
        name: model.name.clone(),
        components: model
            .matrix
            .components()
            .iter()
            .zip(&model.labels)
            .zip(&seed.parts)
            .enumerate()
            .map(|(i, ((c, l), p))| ComponentHeader {
                component: i + 1,
                expert: l.expert.clone(),
                kind: c.tag.kind.to_string(),
                algebra: c.tag.algebra.to_string(),
                op: c.tag.op.to_string(),
                dims: c.matrix.dims(),
                seed_side: p.side.to_string(),
                seed: strs(&p.values),
            })
            .collect(),
    }];
    out.extend(hp.trace.iter().map(|r| Record::Step {
        component: r.component,
        step: r.step,
        side: r.side.to_string(),
        raw: strs(&r.raw),
        thresholded: strs(&r.thresholded),
        updated: strs(&r.updated),
    }));
    for (i, c) in hp.components.iter().enumerate() {
        let (classification, states) = match &c.outcome {
            Outcome::FixedPoint(s) => ("fixed_point", vec![state_text(s)]),
            Outcome::LimitCycle(ss) => ("limit_cycle", ss.iter().map(state_text).collect()),
        };
        out.push(Record::Result {
            component: i + 1,
            classification: classification.into(),
            period: c.outcome.period(),
            steps: c.steps,
            states,
        });
    }
    out
}

pub fn to_jsonl(records: &[Record]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("trace records always serialize") + "\n")
        .collect()
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col: 1, msg: msg.into() }
}

pub fn parse_jsonl(text: &str) -> Result<Vec<Record>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| bad(i + 1, e.to_string())))
        .collect()
}

fn first_repeat<T: PartialEq>(history: &[T]) -> Option<(usize, usize)> {
    (1..history.len()).find_map(|t| history[..t].iter().position(|h| *h == history[t]).map(|j| (j, t)))
}

/// Re-derives every component's result from its seed and step records alone.
/// Returns the number of components checked.
pub fn verify(records: &[Record]) -> Result<usize> {
    let Some(Record::Header { components, .. }) = records.first() else {
        return Err(bad(1, "trace does not start with a header"));
    };
    for h in components {
        let steps: Vec<&Vec<String>> = records
            .iter()
            .filter_map(|r| match r {
                Record::Step { component, updated, .. } if *component == h.component => Some(updated),
                _ => None,
            })
            .collect();
        let result = records.iter().find_map(|r| match r {
            Record::Result { component, states, period, .. } if *component == h.component => Some((states, *period)),
            _ => None,
        });
        let (states, period) = result.ok_or_else(|| bad(0, format!("component {} has no result", h.component)))?;
        let mismatch = || bad(0, format!("component {} result does not follow from its steps", h.component));
        let derived: Vec<StateText> = if h.kind == Kind::Cm.to_string() {
            let mut hist = vec![&h.seed];
            hist.extend(steps.iter().copied());
            let (j, t) = first_repeat(&hist).ok_or_else(mismatch)?;
            if t + 1 != hist.len() {
                return Err(mismatch());
            }
            hist[j..t].iter().map(|s| StateText::Single { state: (*s).clone() }).collect()
        } else {
            let seed_side: Side = h.seed_side.parse().map_err(|m: String| bad(0, m))?;
            let mut inputs = vec![&h.seed];
            inputs.extend(steps.iter().skip(1).step_by(2).copied());
            let pairs: Vec<(&Vec<String>, &Vec<String>)> =
                inputs.iter().copied().zip(steps.iter().step_by(2).copied()).collect();
            let (j, t) = first_repeat(&pairs).ok_or_else(mismatch)?;
            if t + 1 != pairs.len() {
                return Err(mismatch());
            }
            pairs[j..t]
                .iter()
                .map(|(a, b)| {
                    let (d, r) = match seed_side {
                        Side::Domain => (a, b),
                        Side::Range => (b, a),
                    };
                    StateText::Pair { domain: (*d).clone(), range: (*r).clone() }
                })
                .collect()
        };
        if &derived != states || derived.len() != period {
            return Err(mismatch());
        }
    }
    Ok(components.len())
}

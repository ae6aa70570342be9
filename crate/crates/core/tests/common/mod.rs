//! Fixture loading and a small integer reference engine used as an independent oracle.
#![allow(dead_code)]

use std::path::PathBuf;

use specialmaps::models::Model;
use specialmaps::special::SpecialStateVector;
use specialmaps::text::{parse_matrix, parse_model, parse_vector};
use specialmaps::{Matrix, Scalar};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read(rel: &str) -> String {
    let p = fixtures().join(rel);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn model(name: &str) -> Model {
    parse_model(&read(&format!("examples/{name}.model"))).unwrap()
}

pub fn seed(name: &str) -> SpecialStateVector {
    parse_vector(&read(&format!("examples/{name}.vec"))).unwrap()
}

pub fn matrix(rel: &str) -> Matrix {
    parse_matrix(&read(rel)).unwrap()
}

/// Every `(model, vector)` pair in the example corpus, by file stem.
pub fn example_runs() -> Vec<(String, String)> {
    let dir = fixtures().join("examples");
    let mut out = Vec::new();
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for n in &names {
        if let Some(stem) = n.strip_suffix(".vec") {
            let model = stem.split('-').next().unwrap().to_string();
            out.push((model, stem.to_string()));
        }
    }
    out
}

pub fn model_files() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for sub in ["examples", "classes"] {
        for e in std::fs::read_dir(fixtures().join(sub)).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "model") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn s(v: &[f64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::real(x)).collect()
}

/// `a + bI` with integer coefficients.
pub type N = (i64, i64);

pub const OI: N = (0, 1);

pub fn to_n(x: Scalar) -> N {
    (x.real_part() as i64, x.indet_coeff() as i64)
}

pub fn from_n(x: N) -> Scalar {
    Scalar::new(x.0 as f64, x.1 as f64)
}

pub fn grid(m: &Matrix) -> Vec<Vec<N>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(to_n).collect()).collect()
}

pub fn ints(v: &[i64]) -> Vec<N> {
    v.iter().map(|&x| (x, 0)).collect()
}

fn mul(a: N, b: N) -> N {
    (a.0 * b.0, a.0 * b.1 + a.1 * b.0 + a.1 * b.1)
}

fn product(x: &[N], m: &[Vec<N>]) -> Vec<N> {
    let cols = m[0].len();
    (0..cols)
        .map(|j| {
            x.iter().zip(m).fold((0, 0), |acc, (xi, row)| {
                let p = mul(*xi, row[j]);
                (acc.0 + p.0, acc.1 + p.1)
            })
        })
        .collect()
}

fn cut(x: N) -> N {
    match x {
        (t, 0) => (i64::from(t > 0), 0),
        (0, s) => if s > 0 { OI } else { (0, 0) },
        (t, s) if t > s => (i64::from(t > 0), 0),
        (t, s) if s > t => (i64::from(s > 0), 0),
        _ => OI,
    }
}

fn step(x: &[N], m: &[Vec<N>], pin: &[usize]) -> Vec<N> {
    let mut y: Vec<N> = product(x, m).into_iter().map(cut).collect();
    for &i in pin {
        y[i] = (1, 0);
    }
    y
}

fn on(seed: &[N]) -> Vec<usize> {
    (0..seed.len()).filter(|&i| seed[i] == (1, 0)).collect()
}

fn transpose(m: &[Vec<N>]) -> Vec<Vec<N>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Cognitive map: states from the first repeated one onward.
pub fn oracle_cm(m: &[Vec<N>], seed: &[N]) -> Vec<Vec<N>> {
    let pin = on(seed);
    let mut hist = vec![seed.to_vec()];
    loop {
        let next = step(hist.last().unwrap(), m, &pin);
        if let Some(j) = hist.iter().position(|h| *h == next) {
            return hist[j..].to_vec();
        }
        hist.push(next);
    }
}

/// Relational map seeded on the domain (or range) side: cycle of (domain, range) pairs.
pub fn oracle_rm(m: &[Vec<N>], seed: &[N], from_domain: bool) -> Vec<(Vec<N>, Vec<N>)> {
    let mt = transpose(m);
    let (fwd, back) = if from_domain { (m.to_vec(), mt) } else { (mt, m.to_vec()) };
    let pin = on(seed);
    let mut hist: Vec<(Vec<N>, Vec<N>)> = Vec::new();
    let mut x = seed.to_vec();
    loop {
        let y = step(&x, &fwd, &[]);
        if let Some(j) = hist.iter().position(|h| *h == (x.clone(), y.clone())) {
            let cyc = hist[j..].to_vec();
            return if from_domain { cyc } else { cyc.into_iter().map(|(a, b)| (b, a)).collect() };
        }
        hist.push((x, y.clone()));
        x = step(&y, &back, &pin);
    }
}

/// Plain max-min and min-max products over reals.
pub fn oracle_maxmin(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).map(|(x, br)| x.min(br[j])).fold(f64::MIN, f64::max))
                .collect()
        })
        .collect()
}

pub fn oracle_minmax(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).map(|(x, br)| x.max(br[j])).fold(f64::MAX, f64::min))
                .collect()
        })
        .collect()
}

pub fn reals(m: &Matrix) -> Vec<Vec<f64>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x.real_part()).collect()).collect()
}

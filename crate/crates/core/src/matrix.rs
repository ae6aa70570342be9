use std::fmt;

use crate::error::{Error, Result};
use crate::value::{scalar_max, scalar_min, OrderPolicy, Scalar, ValueDomain};

/// Dense row-major matrix of scalars tagged with the domain its entries live in.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    domain: ValueDomain,
    data: Vec<Scalar>,
}

fn shape(m: &Matrix) -> String {
    format!("{}x{}", m.rows, m.cols)
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, domain: ValueDomain, data: Vec<Scalar>) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !domain.contains(*x)) {
            return Err(Error::DomainViolation {
                value: data[pos].to_string(),
                domain: domain.to_string(),
                row: pos / cols + 1,
                col: pos % cols + 1,
            });
        }
        Ok(Matrix { rows, cols, domain, data })
    }

    pub fn from_rows<R, S>(domain: ValueDomain, rows: R) -> Result<Matrix>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: Into<Scalar>,
    {
        let rows: Vec<Vec<Scalar>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(n, m, domain, rows.concat())
    }

    /// Like [`Matrix::from_rows`] but picks the smallest domain holding every entry.
    pub fn infer<R, S>(rows: R) -> Result<Matrix>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: Into<Scalar>,
    {
        let m = Matrix::from_rows(ValueDomain::Unconstrained, rows)?;
        let d = ValueDomain::infer(m.data.iter());
        Ok(Matrix { domain: d, ..m })
    }

    pub fn row_vector(domain: ValueDomain, v: Vec<Scalar>) -> Result<Matrix> {
        Matrix::new(1, v.len(), domain, v)
    }

    pub fn zeros(rows: usize, cols: usize, domain: ValueDomain) -> Matrix {
        Matrix::unchecked(rows, cols, domain, vec![Scalar::ZERO; rows * cols])
    }

    pub fn identity(n: usize, domain: ValueDomain) -> Matrix {
        let mut m = Matrix::zeros(n, n, domain);
        for i in 0..n {
            m.data[i * n + i] = Scalar::ONE;
        }
        m
    }

    pub(crate) fn unchecked(rows: usize, cols: usize, domain: ValueDomain, data: Vec<Scalar>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, domain, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn domain(&self) -> ValueDomain {
        self.domain
    }

    /// Re-tags the matrix, checking every entry against the new domain.
    pub fn with_domain(self, domain: ValueDomain) -> Result<Matrix> {
        Matrix::new(self.rows, self.cols, domain, self.data)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        self.dims() == other.dims()
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(*b, tol))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn same_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::ShapeMismatch(format!(
            "operands are {} and {}",
            shape(a),
            shape(b)
        )));
    }
    Ok(())
}

fn inner(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "{} columns of the left {} do not match {} rows of the right {}",
            a.cols,
            shape(a),
            b.rows,
            shape(b)
        )));
    }
    Ok(())
}

fn zip_with(a: &Matrix, b: &Matrix, f: impl Fn(Scalar, Scalar) -> Result<Scalar>) -> Result<Vec<Scalar>> {
    a.data.iter().zip(&b.data).map(|(x, y)| f(*x, *y)).collect()
}

pub fn elementwise_max(a: &Matrix, b: &Matrix, policy: OrderPolicy) -> Result<Matrix> {
    same_shape(a, b)?;
    let data = zip_with(a, b, |x, y| scalar_max(x, y, policy))?;
    Ok(Matrix::unchecked(a.rows, a.cols, a.domain.join(b.domain), data))
}

pub fn elementwise_min(a: &Matrix, b: &Matrix, policy: OrderPolicy) -> Result<Matrix> {
    same_shape(a, b)?;
    let data = zip_with(a, b, |x, y| scalar_min(x, y, policy))?;
    Ok(Matrix::unchecked(a.rows, a.cols, a.domain.join(b.domain), data))
}

/// `r_ij = max_k min(p_ik, q_kj)`.
pub fn maxmin_compose(p: &Matrix, q: &Matrix, policy: OrderPolicy) -> Result<Matrix> {
    lattice_compose(p, q, policy, true)
}

/// `c_ij = min_k max(p_ik, q_kj)`.
pub fn minmax_compose(p: &Matrix, q: &Matrix, policy: OrderPolicy) -> Result<Matrix> {
    lattice_compose(p, q, policy, false)
}

fn lattice_compose(p: &Matrix, q: &Matrix, policy: OrderPolicy, maxmin: bool) -> Result<Matrix> {
    inner(p, q)?;
    let mut data = Vec::with_capacity(p.rows * q.cols);
    for i in 0..p.rows {
        data.extend(lattice_row(p.row(i), q, policy, maxmin)?);
    }
    Ok(Matrix::unchecked(p.rows, q.cols, p.domain.join(q.domain), data))
}

fn lattice_row(x: &[Scalar], q: &Matrix, policy: OrderPolicy, maxmin: bool) -> Result<Vec<Scalar>> {
    let (inner_op, outer_op): (fn(_, _, _) -> _, fn(_, _, _) -> _) = if maxmin {
        (scalar_min, scalar_max)
    } else {
        (scalar_max, scalar_min)
    };
    (0..q.cols)
        .map(|j| {
            let mut acc = inner_op(x[0], q.get(0, j), policy)?;
            for (k, xk) in x.iter().enumerate().skip(1) {
                acc = outer_op(acc, inner_op(*xk, q.get(k, j), policy)?, policy)?;
            }
            Ok(acc)
        })
        .collect()
}

fn vec_inner(x: &[Scalar], a: &Matrix) -> Result<()> {
    if x.len() != a.rows {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} against {} matrix",
            x.len(),
            shape(a)
        )));
    }
    Ok(())
}

/// Max-min of a row vector with a matrix.
pub fn vec_mat_maxmin(x: &[Scalar], a: &Matrix, policy: OrderPolicy) -> Result<Vec<Scalar>> {
    vec_inner(x, a)?;
    lattice_row(x, a, policy, true)
}

/// Min-max of a row vector with a matrix.
pub fn vec_mat_minmax(x: &[Scalar], a: &Matrix, policy: OrderPolicy) -> Result<Vec<Scalar>> {
    vec_inner(x, a)?;
    lattice_row(x, a, policy, false)
}

/// Ordinary row vector times matrix.
pub fn vec_mat_mul(x: &[Scalar], a: &Matrix) -> Result<Vec<Scalar>> {
    vec_inner(x, a)?;
    Ok((0..a.cols)
        .map(|j| {
            x.iter()
                .enumerate()
                .fold(Scalar::ZERO, |acc, (k, xk)| acc + *xk * a.get(k, j))
        })
        .collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    inner(a, b)?;
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        data.extend(vec_mat_mul(a.row(i), b)?);
    }
    Ok(Matrix::unchecked(a.rows, b.cols, ValueDomain::Unconstrained, data))
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    same_shape(a, b)?;
    let data = zip_with(a, b, |x, y| Ok(x + y))?;
    Ok(Matrix::unchecked(a.rows, a.cols, ValueDomain::Unconstrained, data))
}

pub fn transpose(a: &Matrix) -> Matrix {
    let mut data = Vec::with_capacity(a.data.len());
    for j in 0..a.cols {
        for i in 0..a.rows {
            data.push(a.get(i, j));
        }
    }
    Matrix::unchecked(a.cols, a.rows, a.domain, data)
}

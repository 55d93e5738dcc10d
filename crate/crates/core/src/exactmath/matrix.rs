//! Integer matrices: Smith and Hermite normal forms, determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }
    pub fn diag(d: &[BigInt]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.a[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m[(i, j)] += x * &o[(k, j)];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    None => return BigInt::zero(),
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }
    /// row_i += k · row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(j, c)] * k;
            self[(i, c)] += v;
        }
    }
    fn neg_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
    /// Replace rows (i, j) by [[a, b], [c, d]]·(row_i, row_j).
    fn combine_rows(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for k in 0..self.cols {
            let x = self[(i, k)].clone();
            let y = self[(j, k)].clone();
            self[(i, k)] = a * &x + b * &y;
            self[(j, k)] = c * &x + d * &y;
        }
    }
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, j)] * k;
            self[(r, i)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.a[i * self.cols + j]
    }
}
impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.a[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form: returns (U, D, V) with U·M·V = D, U and V unimodular,
/// D diagonal with nonnegative entries d₁ | d₂ | ….
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    for t in 0..n {
        // pivot: smallest nonzero absolute value in the remaining block
        let piv = (t..r).flat_map(|i| (t..c).map(move |j| (i, j))).filter(|&(i, j)| !d[(i, j)].is_zero()).min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
        let (pi, pj) = match piv {
            None => break,
            Some(p) => p,
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // Euclidean reduction of column t and row t against the pivot
            let p = d[(t, t)].clone();
            let mut rest = false;
            for i in t + 1..r {
                let k = d[(i, t)].div_floor(&p);
                if !k.is_zero() {
                    d.add_row(i, t, &-&k);
                    u.add_row(i, t, &-k);
                }
                rest |= !d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let k = d[(t, j)].div_floor(&p);
                if !k.is_zero() {
                    d.add_col(j, t, &-&k);
                    v.add_col(j, t, &-k);
                }
                rest |= !d[(t, j)].is_zero();
            }
            if rest {
                // a remainder is smaller than the pivot: move it into place
                let col = (t + 1..r).filter(|&i| !d[(i, t)].is_zero()).map(|i| (i, t));
                let row = (t + 1..c).filter(|&j| !d[(t, j)].is_zero()).map(|j| (t, j));
                let (pi, pj) = col.chain(row).min_by(|&a, &b| d[a].abs().cmp(&d[b].abs())).unwrap();
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: pivot must divide every remaining entry
            let bad = (t + 1..r).flat_map(|i| (t + 1..c).map(move |j| (i, j))).find(|&ij| !(&d[ij] % &p).is_zero());
            match bad {
                None => break,
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
    }
    #[cfg(debug_assertions)]
    {
        assert_eq!(u.mul(m).mul(&v), d, "SNF verification failed");
        for i in 1..n {
            let (p, q) = (&d[(i - 1, i - 1)], &d[(i, i)]);
            assert!(q.is_zero() || (!p.is_zero() && (q % p).is_zero()), "SNF divisibility failed");
        }
    }
    (u, d, v)
}

/// Invariant factors of M (diagonal of the SNF, including zeros).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = smith_normal_form(m);
    (0..m.rows.min(m.cols)).map(|i| d[(i, i)].clone()).collect()
}

/// Row-style Hermite normal form; returns the nonzero rows, which form a
/// basis of the row lattice (upper echelon, positive pivots, reduced above).
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let (r, c) = (h.rows, h.cols);
    let mut pr = 0;
    let mut pivots = vec![];
    for j in 0..c {
        if pr >= r {
            break;
        }
        // gcd-combine rows pr.. into row pr at column j
        for i in pr + 1..r {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(pr, j)].is_zero() {
                h.swap_rows(pr, i);
                continue;
            }
            let (a, b) = (h[(pr, j)].clone(), h[(i, j)].clone());
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            h.combine_rows(pr, i, &e.x, &e.y, &-&bg, &ag);
        }
        if h[(pr, j)].is_zero() {
            continue;
        }
        if h[(pr, j)].is_negative() {
            h.neg_row(pr);
        }
        let p = h[(pr, j)].clone();
        for i in 0..pr {
            let k = h[(i, j)].div_floor(&p);
            if !k.is_zero() {
                h.add_row(i, pr, &-k);
            }
        }
        pivots.push(j);
        pr += 1;
    }
    IntMatrix::from_rows((0..pr).map(|i| h.row(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(d: &IntMatrix) -> Vec<i64> {
        use num_traits::ToPrimitive;
        (0..d.rows().min(d.cols())).map(|i| d[(i, i)].to_i64().unwrap()).collect()
    }

    #[test]
    fn snf_examples() {
        let (_, d, _) = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(diag_of(&d), vec![2, 2]);
        let (_, d, _) = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 1], vec![1, 2]]));
        assert_eq!(diag_of(&d), vec![1, 3]);
        let (_, d, _) = smith_normal_form(&IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(diag_of(&d), vec![1, 1]);
        let (_, d, _) = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(diag_of(&d), vec![2, 6, 12]);
    }

    #[test]
    fn det_and_hnf() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(m.det(), BigInt::from(-144));
        let h = hermite_rows(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 2], vec![1, 1]]));
        assert_eq!(h, IntMatrix::from_i64(&[vec![1, 1], vec![0, 2]]));
    }
}

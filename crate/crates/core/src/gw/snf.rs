//! Smith normal form of integer matrices with unimodular transforms.

/// `u · a · v = d` with `d` diagonal, `d[i][i] | d[i+1][i+1]`, and `u`, `v`
/// unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i])
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| (0..k).map(|t| row[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn swap_rows(m: &mut [Vec<i64>], i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut [Vec<i64>], i: usize, j: usize) {
    for r in m.iter_mut() {
        r.swap(i, j);
    }
}

/// row_i += k · row_j
fn add_row(m: &mut [Vec<i64>], i: usize, j: usize, k: i64) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj) {
        *x += k * y;
    }
}

/// col_i += k · col_j
fn add_col(m: &mut [Vec<i64>], i: usize, j: usize, k: i64) {
    for r in m.iter_mut() {
        r[i] += k * r[j];
    }
}

pub fn smith(a: &[Vec<i64>]) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block as pivot.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t] / d[t][t];
            add_row(&mut d, i, t, -q);
            add_row(&mut u, i, t, -q);
            clean &= d[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = d[t][j] / d[t][t];
            add_col(&mut d, j, t, -q);
            add_col(&mut v, j, t, -q);
            clean &= d[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Divisibility of the rest by the pivot.
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| d[i][j] % d[t][t] != 0);
        if let Some((i, _)) = bad {
            add_row(&mut d, t, i, 1);
            add_row(&mut u, t, i, 1);
            continue;
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    Smith { d, u, v }
}

/// Integer coefficients `x` with `x · rows = target`, if any.
pub fn solve_row_combination(rows: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let s = smith(rows);
    let diag = s.diagonal();
    // x A = t  <=>  (x U^{-1}) D = t V.
    let tv = mat_mul(&[target.to_vec()], &s.v).remove(0);
    let mut y = vec![0i64; rows.len()];
    for (j, &c) in tv.iter().enumerate() {
        let dj = diag.get(j).copied().unwrap_or(0);
        if dj == 0 {
            if c != 0 {
                return None;
            }
        } else if c % dj != 0 {
            return None;
        } else {
            y[j] = c / dj;
        }
    }
    Some(mat_mul(&[y], &s.u).remove(0))
}

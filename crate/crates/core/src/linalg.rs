//! Exact linear algebra over the rationals.
//!
//! Rows are scaled to integers and eliminated by cross-multiplication with
//! content removal, so intermediate values never carry denominators.

use rug::{Integer, Rational};

fn integer_row(row: &[Rational]) -> (Vec<Integer>, Integer) {
    let mut lcm = Integer::from(1);
    for q in row {
        lcm.lcm_mut(q.denom());
    }
    let ints = row.iter().map(|q| Integer::from(q.numer() * Integer::from(&lcm / q.denom()))).collect();
    (ints, lcm)
}

fn remove_content(row: &mut [Integer]) {
    let mut g = Integer::new();
    for x in row.iter() {
        g.gcd_mut(x);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for x in row.iter_mut() {
            x.div_exact_mut(&g);
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::from(1);
    }
    let mut scale = Integer::from(1);
    let mut a: Vec<Vec<Integer>> = m
        .iter()
        .map(|r| {
            let (row, s) = integer_row(r);
            scale *= s;
            row
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&a[i][j] * &a[k][k]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev);
            }
            a[i][k] = Integer::new();
        }
        prev = a[k][k].clone();
    }
    let d = Rational::from((a[n - 1][n - 1].clone(), scale));
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Null vector of `rows` (each of length `cols`) with the smallest possible
/// highest nonzero index; that entry is normalized to 1.
///
/// Returns `None` when the columns are independent.
pub fn min_support_null_vector(rows: &[Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Integer>> = rows.iter().map(|r| integer_row(r).0).collect();
    for r in a.iter_mut() {
        remove_content(r);
    }
    let mut pivot_row = 0usize;
    let mut free = None;
    for col in 0..cols {
        let Some(p) = (pivot_row..a.len()).find(|&r| a[r][col] != 0) else {
            free = Some(col);
            break;
        };
        a.swap(pivot_row, p);
        let (head, tail) = a.split_at_mut(pivot_row + 1);
        let piv = &head[pivot_row];
        for row in tail.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let b = row[col].clone();
            for j in col..cols {
                let v = Integer::from(&row[j] * &piv[col]) - Integer::from(&b * &piv[j]);
                row[j] = v;
            }
            remove_content(row);
        }
        pivot_row += 1;
    }
    let c = free?;
    // rows 0..c are upper triangular on columns 0..c
    let mut q = vec![Rational::new(); cols];
    q[c] = Rational::from(1);
    for i in (0..c).rev() {
        let mut s = Rational::from(&a[i][c]);
        for j in i + 1..c {
            s += Rational::from(&a[i][j] * &q[j]);
        }
        q[i] = -s / Rational::from(&a[i][i]);
    }
    Some(q)
}

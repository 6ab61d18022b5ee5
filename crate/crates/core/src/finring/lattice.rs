//! Subgroups of `ℤ_{c₁} ⊕ … ⊕ ℤ_{c_V}` cut out by linear congruences,
//! represented by the lifted lattice `L ⊆ ℤ^V` in Hermite normal form.
//!
//! Every lattice kept here contains `N·ℤ^V` for a fixed exponent `N`, so
//! entries are reduced modulo `N` throughout and stay small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `(g, a, b)` with `g = gcd(x, y) = a·x + b·y`, `g ≥ 0`.
fn egcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (x, y);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    exponent: i128,
    /// Row `c` has its pivot in column `c`; entries right of a pivot are
    /// reduced modulo the pivot of their column.
    rows: Vec<Vec<i128>>,
}

impl Lattice {
    /// All of `ℤ^dim`.
    pub fn full(dim: usize, exponent: u64) -> Self {
        assert!(exponent >= 1);
        let rows = (0..dim)
            .map(|c| {
                let mut r = vec![0i128; dim];
                r[c] = 1;
                r
            })
            .collect();
        Lattice {
            exponent: exponent as i128,
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<u64> {
        (0..self.dim()).map(|c| self.rows[c][c] as u64).collect()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Restricts to `{u : Σ coeffs[v]·u[v] ≡ 0 (mod modulus)}`.
    pub fn constrain(&mut self, coeffs: &[i64], modulus: u64) {
        let d = modulus as i128;
        assert!(self.exponent % d == 0, "modulus {modulus} does not divide the exponent");
        let mut rows = std::mem::take(&mut self.rows);
        let mut s: Vec<i128> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(coeffs)
                    .map(|(&a, &c)| a * c as i128)
                    .sum::<i128>()
                    .rem_euclid(d)
            })
            .collect();
        let mut lead: Option<usize> = None;
        for t in 0..rows.len() {
            if s[t] == 0 {
                continue;
            }
            let Some(p) = lead else {
                lead = Some(t);
                continue;
            };
            let (g, a, b) = egcd(s[p], s[t]);
            let (sp, st) = (s[p] / g, s[t] / g);
            let (rp, rt) = (&rows[p], &rows[t]);
            let new_p: Vec<i128> = rp.iter().zip(rt).map(|(&x, &y)| a * x + b * y).collect();
            let new_t: Vec<i128> = rp.iter().zip(rt).map(|(&x, &y)| st * x - sp * y).collect();
            rows[p] = new_p;
            rows[t] = new_t;
            s[p] = g;
            s[t] = 0;
        }
        if let Some(p) = lead {
            let scale = d / s[p].gcd(&d);
            rows[p].iter_mut().for_each(|x| *x *= scale);
        }
        self.rows = hermite(rows, self.exponent);
    }

    /// Whether `u` lies in the lattice.
    pub fn contains(&self, u: &[i128]) -> bool {
        let mut w: Vec<i128> = u.to_vec();
        for c in 0..self.dim() {
            let p = self.rows[c][c];
            if w[c].rem_euclid(p) != 0 {
                return false;
            }
            let q = w[c].div_euclid(p);
            for j in c..self.dim() {
                w[j] -= q * self.rows[c][j];
            }
        }
        true
    }
}

/// Hermite normal form of the lattice spanned by `rows` and `n·ℤ^V`.
fn hermite(rows: Vec<Vec<i128>>, n: i128) -> Vec<Vec<i128>> {
    let dim = rows.first().map_or(0, |r| r.len());
    let mut pool: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(n)).collect())
        .collect();
    let mut out: Vec<Vec<i128>> = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut pivot = vec![0i128; dim];
        pivot[c] = n;
        for r in pool.iter_mut() {
            if r[c] == 0 {
                continue;
            }
            let (g, a, b) = egcd(pivot[c], r[c]);
            let (pc, rc) = (pivot[c] / g, r[c] / g);
            let mut new_p = vec![0i128; dim];
            let mut new_r = vec![0i128; dim];
            for j in c..dim {
                new_p[j] = (a * pivot[j] + b * r[j]).rem_euclid(n);
                new_r[j] = (rc * pivot[j] - pc * r[j]).rem_euclid(n);
            }
            new_p[c] = g;
            new_r[c] = 0;
            pivot = new_p;
            *r = new_r;
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        out.push(pivot);
    }
    for t in 0..dim {
        for c in t + 1..dim {
            let q = out[t][c].div_euclid(out[c][c]);
            if q != 0 {
                let row_c = out[c].clone();
                for j in c..dim {
                    out[t][j] -= q * row_c[j];
                }
            }
        }
    }
    out
}

/// Invariant factors (all > 1, each dividing the next) of `ℤ^V / rowspan(m)`
/// for a square nonsingular integer matrix.
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                let pivot_row = a[t].clone();
                for j in t..cols {
                    a[i][j] -= &q * &pivot_row[j];
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let mut fix = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    fix = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = fix {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.into_iter().filter(|d| !d.is_one()).collect()
}

use super::{Dyadic, Gf3, Matrix};

/// A matrix over GF(p) for a small odd prime `p`, used for the GF(3)/GF(5) projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    labels: Vec<String>,
}

impl PrimeFieldMatrix {
    pub fn project(m: &Matrix<Dyadic>, p: u64) -> Self {
        PrimeFieldMatrix {
            p,
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|v| v.mod_p(p)).collect(),
            labels: m.labels().to_vec(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Only meaningful for `p = 3`.
    pub fn to_gf3(&self) -> Option<Matrix<Gf3>> {
        (self.p == 3).then(|| {
            let rows = (0..self.rows)
                .map(|i| (0..self.cols).map(|j| Gf3::new(self.get(i, j) as i64)).collect())
                .collect();
            Matrix::from_rows(rows)
                .with_labels(self.labels.clone())
                .expect("labels copied from a valid matrix")
        })
    }

    pub fn rank_of(&self, cols: &[usize]) -> usize {
        let p = self.p;
        let mut m: Vec<Vec<u64>> = (0..self.rows).map(|i| cols.iter().map(|&j| self.get(i, j)).collect()).collect();
        let mut r = 0;
        for c in 0..cols.len() {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let inv = inv_mod(m[r][c], p);
            for v in m[r].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..self.rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols.len() {
                        m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

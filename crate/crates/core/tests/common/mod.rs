//! Reference computations for the integration tests.
//!
//! Everything here is built from plain nested `Vec`s and hand-written Pauli
//! matrices, without touching the library's dense or structured code paths.

#![allow(dead_code)]

use bellvar::pauli::PauliSum;
use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli(letter: char) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match letter {
        'I' => vec![vec![o, z], vec![z, o]],
        'X' => vec![vec![z, o], vec![o, z]],
        'Y' => vec![vec![z, -i], vec![i, z]],
        'Z' => vec![vec![o, z], vec![z, -o]],
        _ => panic!("not a Pauli letter: {letter}"),
    }
}

pub fn zeros(d: usize) -> Mat {
    vec![vec![c(0.0, 0.0); d]; d]
}

pub fn identity(d: usize) -> Mat {
    let mut m = zeros(d);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = c(1.0, 0.0);
    }
    m
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (da, db) = (a.len(), b.len());
    let mut out = zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[i * db + k][j * db + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn add(a: &Mat, b: &Mat, s: C) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + s * y).collect())
        .collect()
}

pub fn scale(a: &Mat, s: C) -> Mat {
    a.iter().map(|r| r.iter().map(|x| s * x).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[C]) -> Vec<C> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Kronecker product of the letters, qubit 1 leftmost.
pub fn string_matrix(letters: &str) -> Mat {
    letters.chars().fold(identity(1), |acc, l| kron(&acc, &pauli(l)))
}

pub fn sum_matrix(op: &PauliSum) -> Mat {
    let d = 1 << op.n();
    op.iter().fold(zeros(d), |acc, (p, coeff)| {
        add(&acc, &string_matrix(&p.to_string()), *coeff)
    })
}

/// `⟨v|M|v⟩`, complex.
pub fn expect(m: &Mat, v: &[C]) -> C {
    matvec(m, v).iter().zip(v).map(|(mv, x)| x.conj() * mv).sum()
}

/// `(Bₙ, B′ₙ)` by the dense recursion from `B₂ = ½(XX + XY + YX − YY)`.
pub fn mk_pair(n: usize) -> (Mat, Mat) {
    let half = c(0.5, 0.0);
    let (x, y) = (pauli('X'), pauli('Y'));
    let xy = |a: &Mat, b: &Mat| kron(a, b);
    let mut b = scale(
        &add(&add(&add(&xy(&x, &x), &xy(&x, &y), c(1.0, 0.0)), &xy(&y, &x), c(1.0, 0.0)), &xy(&y, &y), c(-1.0, 0.0)),
        half,
    );
    let mut bp = scale(
        &add(&add(&add(&xy(&y, &y), &xy(&y, &x), c(1.0, 0.0)), &xy(&x, &y), c(1.0, 0.0)), &xy(&x, &x), c(-1.0, 0.0)),
        half,
    );
    let plus = scale(&add(&x, &y, c(1.0, 0.0)), half);
    let minus = scale(&add(&x, &y, c(-1.0, 0.0)), half);
    for _ in 2..n {
        let next = add(&kron(&b, &plus), &kron(&bp, &minus), c(1.0, 0.0));
        // Exchanging X and Y on the last site turns ½(X ± Y) into ±½(X ± Y).
        let next_p = add(&kron(&bp, &plus), &kron(&b, &minus), c(-1.0, 0.0));
        b = next;
        bp = next_p;
    }
    (b, bp)
}

/// `(|0ⁿ⟩ ± e^{i(n−1)π/4}|1ⁿ⟩)/√2`.
pub fn ghz(n: usize, sign: f64) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    v[0] = c(r, 0.0);
    v[(1 << n) - 1] = C::from_polar(sign * r, (n as f64 - 1.0) * std::f64::consts::FRAC_PI_4);
    v
}

pub fn outer(a: &[C], b: &[C]) -> Mat {
    a.iter().map(|x| b.iter().map(|y| x * y.conj()).collect()).collect()
}

/// Diagonal of `1 + Σ` every even-weight product of σz, for n qubits.
pub fn square_closed_form_diagonal(n: usize) -> Vec<f64> {
    (0..1usize << n)
        .map(|b| {
            (0..1usize << n)
                .filter(|m| m.count_ones() % 2 == 0)
                .map(|m| if (b & m).count_ones() % 2 == 0 { 1.0 } else { -1.0 })
                .sum()
        })
        .collect()
}

/// Small deterministic generator (SplitMix64) for oracle-side sampling.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn gauss(&mut self) -> f64 {
        let u = 1.0 - self.unit();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * self.unit()).cos()
    }

    pub fn letters(&mut self, n: usize) -> String {
        (0..n).map(|_| ['I', 'X', 'Y', 'Z'][(self.next() % 4) as usize]).collect()
    }

    pub fn state(&mut self, n: usize) -> Vec<C> {
        let v: Vec<C> = (0..1 << n).map(|_| c(self.gauss(), self.gauss())).collect();
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / norm).collect()
    }
}

//! Brute-force oracle shared by the lattice and acceptance suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sextic_core::exactmath::IntMatrix;

/// Even Gram matrices of rank ≤ 6 with entries in [−8, 8]: unimodular
/// conjugates of block sums, plus raw random even forms.
pub fn corpus() -> Vec<Vec<Vec<i64>>> {
    let blocks: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2]],
        vec![vec![-2]],
        vec![vec![4]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 2], vec![2, 0]],
        vec![vec![2, 1], vec![1, 2]],
        vec![vec![-2, 1], vec![1, -2]],
        vec![vec![-2, 1, 0, 0], vec![1, -2, 1, 1], vec![0, 1, -2, 0], vec![0, 1, 0, -2]],
        vec![vec![2]],
        vec![vec![-2]],
        vec![vec![0, 2], vec![2, 0]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = vec![];
    while out.len() < 50 {
        let n = rng.gen_range(1..=6usize);
        let mut g = vec![vec![0i64; n]; n];
        if out.len() % 10 == 9 {
            for i in 0..n {
                g[i][i] = 2 * rng.gen_range(-4..=4);
                for j in i + 1..n {
                    let x = rng.gen_range(-8..=8);
                    g[i][j] = x;
                    g[j][i] = x;
                }
            }
        } else {
            let mut k = 0;
            while k < n {
                let b = &blocks[rng.gen_range(0..blocks.len())];
                if k + b.len() > n {
                    continue;
                }
                for i in 0..b.len() {
                    for j in 0..b.len() {
                        g[k + i][k + j] = b[i][j];
                    }
                }
                k += b.len();
            }
            // g ← PᵀgP with P elementary: column/row i += s·column/row j
            for _ in 0..rng.gen_range(0..4) {
                if n < 2 {
                    break;
                }
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i == j {
                    continue;
                }
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for r in 0..n {
                    g[r][i] += s * g[r][j];
                }
                for c in 0..n {
                    g[i][c] += s * g[j][c];
                }
            }
        }
        let ok = g.iter().flatten().all(|x| x.abs() <= 8);
        let m = IntMatrix::from_i64(&g);
        if ok && !m.det().is_zero() {
            out.push(g);
        }
    }
    out
}

/// Count L∨/L and its 2-torsion by enumerating y ∈ (½ℤ/ℤ)ⁿ with Gy ∈ ℤⁿ;
/// the group order is |det|. Returns (2-elementary?, a, δ).
pub fn brute(g: &[Vec<i64>]) -> (bool, u32, u32) {
    let n = g.len();
    let det = IntMatrix::from_i64(g).det().abs();
    let mut torsion = 0u64;
    let mut delta = 0;
    for mask in 0u32..(1 << n) {
        let y: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect(); // 2y
        if (0..n).any(|i| (0..n).map(|j| g[i][j] * y[j]).sum::<i64>() % 2 != 0) {
            continue;
        }
        torsion += 1;
        // ⟨y, y⟩ = (2y)ᵀG(2y)/4
        let nn: i64 = (0..n).map(|i| (0..n).map(|j| y[i] * g[i][j] * y[j]).sum::<i64>()).sum();
        if nn.rem_euclid(4) != 0 {
            delta = 1;
        }
    }
    (BigInt::from(torsion) == det, torsion.trailing_zeros(), delta)
}

//! Offline search for the builtin Korobov multipliers.
//!
//! For each n = 2^k this scores candidate multipliers a by the P₂ lattice
//! criterion in d = 4,
//!
//!   P₂(z) = −1 + (1/n) Σ_k Π_j (1 + 2π² B₂({k·z_j/n})),   B₂(x) = x²−x+1/6,
//!
//! with z = (1, a, a², a³) mod n, and keeps the minimizer. Odd candidates
//! below n/2 are scanned exhaustively up to 2^16 (a and n−a generate
//! mirrored lattices with equal P₂, so half the range suffices) and by even
//! stride sampling above. The winning multipliers are printed as the Rust
//! array embedded in the library.
//!
//! Usage: korobov_search [max_k]   (default 16; the full 20 takes minutes)

use rayon::prelude::*;

const D: usize = 4;

fn p2(a: u64, n: u64, b2: &[f64]) -> f64 {
    let mut z = [0u64; D];
    let mut cur = 1u64;
    for zj in z.iter_mut() {
        *zj = cur;
        cur = (cur as u128 * a as u128 % n as u128) as u64;
    }
    let mut sum = 0.0;
    let mut r = [0u64; D];
    for _ in 0..n {
        let mut prod = 1.0;
        for j in 0..D {
            prod *= b2[r[j] as usize];
            r[j] += z[j];
            if r[j] >= n {
                r[j] -= n;
            }
        }
        sum += prod;
    }
    sum / n as f64 - 1.0
}

fn main() {
    let max_k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let two_pi2 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    println!("// k, n, best multiplier, P2(d=4)");
    let mut table = Vec::new();
    for k in 1..=max_k {
        let n = 1u64 << k;
        let b2: Vec<f64> = (0..n)
            .map(|r| {
                let x = r as f64 / n as f64;
                1.0 + two_pi2 * (x * x - x + 1.0 / 6.0)
            })
            .collect();
        let candidates: Vec<u64> = if k <= 16 {
            (1..n / 2).step_by(2).collect()
        } else {
            // stride-sampled odd candidates (deterministic)
            let samples: u64 = if k <= 18 { 16384 } else { 8192 };
            (0..samples).map(|i| 1 + 2 * (i * (n / 4) / samples)).collect()
        };
        let candidates = if candidates.is_empty() { vec![1] } else { candidates };
        let (best_a, best_p2) = candidates
            .par_iter()
            .map(|&a| (a, p2(a, n, &b2)))
            .reduce(|| (1, f64::INFINITY), |x, y| if y.1 < x.1 { y } else { x });
        println!("// {k:2} {n:8} {best_a:8} {best_p2:.6e}");
        table.push(best_a);
    }
    println!("const KOROBOV_MULTIPLIERS: [u64; {}] = {:?};", table.len(), table);
}

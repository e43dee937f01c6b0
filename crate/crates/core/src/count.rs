//! Closed-form counts the enumerations are checked against.

use num_integer::binomial as choose;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        0
    } else {
        choose(n, k)
    }
}

/// `C_m = binom(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> u64 {
    binomial(2 * m, m) / (m + 1)
}

/// Fibonacci numbers with `F(1) = F(2) = 1`.
pub fn fibonacci(m: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..m {
        (a, b) = (b, a + b);
    }
    a
}

/// Number of monotone maps from `C_n` into a `k`-element chain.
pub fn simplex_size(n: usize, k: usize) -> u64 {
    binomial((n + k - 1) as u64, (k - 1) as u64)
}

/// Order of the right-identity subsemiring: the product of consecutive vertex gaps.
pub fn right_identity_order(vertices: &[usize]) -> u64 {
    vertices.windows(2).map(|w| (w[1] - w[0]) as u64).product()
}

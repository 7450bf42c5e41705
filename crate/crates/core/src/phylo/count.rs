use num_bigint::BigUint;

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Number of rooted binary topologies on `n` labelled leaves,
/// `(2n-3)! / (2^(n-2) (n-2)!)`. Returns 1 for `n < 2`.
pub fn topology_count(n: u64) -> BigUint {
    if n < 2 {
        return BigUint::from(1u32);
    }
    let numerator = factorial(2 * n - 3);
    let denominator = (BigUint::from(1u32) << (n - 2) as usize) * factorial(n - 2);
    numerator / denominator
}

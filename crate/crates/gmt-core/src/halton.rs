//! Halton radical-inverse sequences and small prime tables.

/// Radical inverse of `index` in the given prime `base`, in `[0, 1)`.
pub fn halton(index: u64, base: u64) -> f64 {
    debug_assert!(base >= 2);
    let mut result = 0.0;
    let mut fraction = 1.0 / base as f64;
    let mut i = index;
    while i > 0 {
        result += (i % base) as f64 * fraction;
        i /= base;
        fraction /= base as f64;
    }
    result
}

/// The first `count` primes, for one Halton base per coordinate.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// One quasirandom point in `(0, 1)^dim` at the given index, coordinate
/// `k` drawn from the `k`-th prime base.
pub fn halton_point(index: u64, bases: &[u64]) -> Vec<f64> {
    bases.iter().map(|&b| halton(index, b)).collect()
}

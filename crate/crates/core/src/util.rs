//! Small numeric helpers shared across modules.

/// Binomial coefficient in u128; saturates on overflow (not expected at desk scale).
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

pub fn binom_f64(n: f64, k: u64) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i as f64) / (i + 1) as f64;
    }
    acc
}

pub fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

/// d^p in u128, for exact integer-exponent norms.
pub fn pow_u128(base: u64, exp: u32) -> u128 {
    (base as u128).pow(exp)
}

/// Treats p as an integer exponent when it is one; comparison tolerance 1e-9.
pub fn as_integer_exponent(p: f64) -> Option<u32> {
    if p >= 0.0 && p <= u32::MAX as f64 && (p - p.round()).abs() < 1e-9 {
        Some(p.round() as u32)
    } else {
        None
    }
}

/// All k-subsets of 0..n, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

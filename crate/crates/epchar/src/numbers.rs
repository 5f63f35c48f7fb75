//! Exact integer number theory: divisors, Möbius function, Euler totient,
//! and Ramanujan sums `c_d(n)` in two independent closed forms.
//!
//! Conventions fixed here and relied on everywhere else:
//! - `gcd(d, 0) = d`, so that `c_d(0) = totient(d)`;
//! - Ramanujan sums are exact integers computed without any root of unity:
//!   the totient/Möbius form is the primary route and the divisor-sum form
//!   `Σ_{e | gcd(d,|n|)} e·μ(d/e)` is the independent cross-check;
//! - factorization is plain trial division (inputs are desk-scale, well
//!   under 10^6 in practice).

/// Prime factorization `[(p, exponent)]` with ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= n / p {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `r`, ascending.
pub fn divisors(r: u64) -> Vec<u64> {
    assert!(r >= 1, "divisors requires r >= 1");
    let mut out = vec![1u64];
    for (p, e) in factorize(r) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Möbius function: `(-1)^l` for a squarefree product of `l` primes, else 0.
pub fn moebius(d: u64) -> i64 {
    assert!(d >= 1, "moebius requires d >= 1");
    let factors = factorize(d);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient: `#{0 < k <= d : gcd(k, d) = 1}`.
pub fn totient(d: u64) -> u64 {
    assert!(d >= 1, "totient requires d >= 1");
    let mut t = d;
    for (p, _) in factorize(d) {
        t = t / p * (p - 1);
    }
    t
}

/// `gcd(d, |n|)` with the convention `gcd(d, 0) = d`.
fn gcd_abs(d: u64, n: i64) -> u64 {
    num::integer::gcd(d, n.unsigned_abs())
}

/// Ramanujan sum `c_d(n)` via the totient/Möbius form
/// `totient(d)·μ(d′)/totient(d′)` with `d′ = d / gcd(d, n)`.
///
/// The division is exact (`d′ | d` forces `totient(d′) | totient(d)`); this
/// is asserted rather than trusted.
pub fn ramanujan_sum(d: u64, n: i64) -> i64 {
    assert!(d >= 1, "ramanujan_sum requires d >= 1");
    let d_prime = d / gcd_abs(d, n);
    let mu = moebius(d_prime);
    if mu == 0 {
        return 0;
    }
    let (t, t_prime) = (totient(d), totient(d_prime));
    assert!(t % t_prime == 0, "totient quotient must be exact");
    mu * (t / t_prime) as i64
}

/// Ramanujan sum `c_d(n)` via the divisor sum `Σ_{e | gcd(d,|n|)} e·μ(d/e)`.
///
/// Kept deliberately independent of [`ramanujan_sum`]; the two routes are
/// compared exhaustively in tests.
pub fn ramanujan_sum_divisor_form(d: u64, n: i64) -> i64 {
    assert!(d >= 1, "ramanujan_sum_divisor_form requires d >= 1");
    let g = gcd_abs(d, n);
    divisors(g)
        .into_iter()
        .map(|e| e as i64 * moebius(d / e))
        .sum()
}

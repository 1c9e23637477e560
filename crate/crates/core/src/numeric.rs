//! Small integer helpers shared by the exact kernels.

/// Floor of the square root.
pub fn isqrt(n: u128) -> u128 {
    n.isqrt()
}

pub fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n as u128);
    r * r == n as u128
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128);
    (r * r == n as u128).then_some(r as i128)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Writes `q = p^r` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // no factor up to sqrt(q)
        return Some((q, 1));
    }
    let mut m = q;
    let mut r = 0;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

/// p-adic valuation; `None` stands for +infinity (n = 0).
pub fn valuation(p: u64, n: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Squarefreeness by trial division. Zero is not squarefree.
pub fn is_squarefree(n: i128) -> bool {
    let mut n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

/// Largest integer `k` with `k*k <= n` for signed input clamped at zero.
pub fn floor_sqrt_i(n: i128) -> i128 {
    if n <= 0 {
        0
    } else {
        isqrt(n as u128) as i128
    }
}

pub fn ceil_sqrt(n: u128) -> u128 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

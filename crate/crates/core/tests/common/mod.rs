//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use weilcheck::enumeration::{s_range, t_range, u_interval};
use weilcheck::weil::{FieldParams, WeilCoeffs};

pub const PRIME_POWERS_TO_25: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25];

/// Uniform `s`, then uniform `t`, then uniform `u`, retrying on empty ranges.
pub fn random_valid_triple(field: FieldParams, rng: &mut impl Rng) -> WeilCoeffs {
    loop {
        let s = rng.gen_range(s_range(field));
        let tr = t_range(s, field);
        if tr.is_empty() {
            continue;
        }
        let t = rng.gen_range(tr);
        let iv = u_interval(s, t, field);
        if !iv.is_empty() {
            return WeilCoeffs::new(field, s, t, rng.gen_range(iv.lo..=iv.hi));
        }
    }
}

pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| weilcheck::numeric::prime_power(q).is_some()).collect()
}

/// Dense polynomial over Q, constant term first.
#[derive(Clone, Debug)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn from_ints(c: &[i128]) -> Self {
        let mut p = Poly(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().unwrap()
    }

    fn derivative(&self) -> Poly {
        let mut d = Poly(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect(),
        );
        d.trim();
        d
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let f = r.lead() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                r.0[i + shift] -= &f * c;
            }
            q[shift] = f;
            r.trim();
        }
        let mut q = Poly(q);
        q.trim();
        (q, r)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

enum At<'a> {
    NegInf,
    Point(&'a BigRational),
    PosInf,
}

fn variations_at(chain: &[Poly], at: At<'_>) -> usize {
    variations(chain.iter().map(|p| match at {
        At::PosInf => sign(p.lead()),
        At::NegInf => sign(p.lead()) * if p.degree() % 2 == 0 { 1 } else { -1 },
        At::Point(x) => sign(&p.eval(x)),
    }))
}

/// Exact decision: every root of `x^3 + a x^2 + b x + c` is real and lies in
/// `[-2 sqrt q, 2 sqrt q]`.
///
/// Reality comes from a Sturm count of the squarefree part of g; the bound is
/// tested on `H(y) = y (y + b)^2 - (a y + c)^2`, whose roots are the squares
/// of the roots of g, by counting roots of H in `(4q, oo)`.
pub fn sturm_root_locus(q: u64, a: i128, b: i128, c: i128) -> bool {
    let g = Poly::from_ints(&[c, b, a, 1]).squarefree();
    let chain = sturm_chain(&g);
    if variations_at(&chain, At::NegInf) - variations_at(&chain, At::PosInf) != g.degree() {
        return false;
    }
    let h = Poly::from_ints(&[-c * c, b * b - 2 * a * c, 2 * b - a * a, 1]).squarefree();
    let chain = sturm_chain(&h);
    let four_q = BigRational::from_integer(BigInt::from(4 * q));
    variations_at(&chain, At::Point(&four_q)) == variations_at(&chain, At::PosInf)
}

pub struct Oracle {
    pub verdict: bool,
    pub escalated: bool,
}

/// Floating-point decision with exact escalation when the float margin is thin.
pub fn numeric_root_locus(q: u64, s: i64, t: i64, u: i64) -> Oracle {
    let qi = q as i128;
    let (a, b, c) = (s as i128, t as i128 - 3 * qi, u as i128 - 2 * qi * s as i128);
    let escalate = || Oracle { verdict: sturm_root_locus(q, a, b, c), escalated: true };

    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    // x = y - a/3 gives y^3 + P y + Q
    let p = bf - af * af / 3.0;
    let qq = 2.0 * af.powi(3) / 27.0 - af * bf / 3.0 + cf;
    let disc = -(4.0 * p.powi(3) + 27.0 * qq * qq);
    let scale = 4.0 * p.abs().powi(3) + 27.0 * qq * qq + 1.0;
    if disc.abs() <= 1e-9 * scale {
        return escalate();
    }
    if disc < 0.0 {
        return Oracle { verdict: false, escalated: false };
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let theta = (3.0 * qq / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
    let roots = (0..3).map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - af / 3.0);
    let w = 2.0 * (q as f64).sqrt();
    let extreme = roots.map(f64::abs).fold(0.0, f64::max);
    if (extreme - w).abs() <= 1e-7 * (1.0 + w) {
        return escalate();
    }
    Oracle { verdict: extreme < w, escalated: false }
}

/// `p_1..p_n` of the roots with elementary symmetric functions
/// `e = (s, t, u, q t, q^2 s, q^3)`, via the trace of powers of the companion matrix.
pub fn companion_power_sums(q: u64, s: i64, t: i64, u: i64, n: usize) -> Vec<BigInt> {
    let q = BigInt::from(q);
    let (s, t, u) = (BigInt::from(s), BigInt::from(t), BigInt::from(u));
    let e = [s.clone(), t.clone(), u, &q * &t, &q * &q * &s, &q * &q * &q];
    // x^6 - e1 x^5 + e2 x^4 - ... + e6; companion with last column -coeffs
    let mut low = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (k, ek) in e.iter().enumerate() {
        let sign = if (k + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        low[5 - k] = sign * ek;
    }
    let mut comp = vec![vec![BigInt::zero(); 6]; 6];
    for i in 1..6 {
        comp[i][i - 1] = BigInt::one();
    }
    for i in 0..6 {
        comp[i][5] = -low[i].clone();
    }
    let mut power = comp.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push((0..6).map(|i| power[i][i].clone()).sum());
        power = matmul(&power, &comp);
    }
    out
}

fn matmul(x: &[Vec<BigInt>], y: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
}

/// Girard-Newton identities with the `n e_n` term, `e_k = 0` for `k > 6`.
pub fn newton_power_sums(q: u64, s: i64, t: i64, u: i64, n: usize) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    let (sb, tb, ub) = (BigInt::from(s), BigInt::from(t), BigInt::from(u));
    let e = [sb.clone(), tb.clone(), ub, &qb * &tb, &qb * &qb * &sb, &qb * &qb * &qb];
    let e_at = |k: usize| if k <= 6 { e[k - 1].clone() } else { BigInt::zero() };
    let mut p: Vec<BigInt> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = e_at(m) * BigInt::from(m as i64) * if m % 2 == 1 { 1 } else { -1 };
        for i in 1..m {
            let term = e_at(i) * &p[m - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

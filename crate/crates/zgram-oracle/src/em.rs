//! Euler-Maclaurin evaluation of zeta(sigma + it), the reference the
//! Riemann-Siegel path is cross-validated against.
//!
//! The truncation point N ~ t/2 keeps the Bernoulli tail geometric with
//! ratio ~0.1, so ~16 terms reach f64 exhaustion.  The only precision-critical
//! quantity is the phase t ln n mod 2pi; ln n is taken from a table built in
//! arbitrary precision (primes) and extended multiplicatively (composites),
//! stored as (hi, lo) pairs good to ~1e-31 relative.

use crate::hp::Hp;
use crate::tf::Tf;

/// Exact Bernoulli numbers B_2 .. B_32.
const BERNOULLI: [(f64, f64); 16] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
];

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    fn add(self, o: Complex) -> Self {
        Complex::new(self.re + o.re, self.im + o.im)
    }

    fn mul(self, o: Complex) -> Self {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    fn div(self, o: Complex) -> Self {
        let d = o.re * o.re + o.im * o.im;
        Complex::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }

    fn scale(self, s: f64) -> Self {
        Complex::new(self.re * s, self.im * s)
    }
}

/// Reference zeta evaluator with a growable high-precision ln table.
pub struct ZetaOracle {
    hp: Hp,
    /// ln n as (hi, lo); entry n at index n, index 0 unused.
    ln_table: Vec<Tf>,
}

impl Default for ZetaOracle {
    fn default() -> Self {
        ZetaOracle::new()
    }
}

impl ZetaOracle {
    pub fn new() -> Self {
        ZetaOracle {
            hp: Hp::default(),
            ln_table: vec![Tf::default(), Tf::default()],
        }
    }

    /// Pre-sizes the table so later evaluations do not pay for growth.
    pub fn with_capacity(n_max: usize) -> Self {
        let mut z = ZetaOracle::new();
        z.ensure(n_max);
        z
    }

    /// ln n as a (hi, lo) pair from the high-precision table; exposed so
    /// other float paths can be cross-checked against it.
    pub fn ln_split(&mut self, n: usize) -> (f64, f64) {
        self.ensure(n);
        let tf = self.ln_table[n];
        (tf.hi, tf.lo)
    }

    fn ensure(&mut self, n_max: usize) {
        if self.ln_table.len() > n_max {
            return;
        }
        // smallest prime factor sieve over the whole new range
        let mut spf: Vec<u32> = (0..=n_max as u32).collect();
        let mut p = 2usize;
        while p * p <= n_max {
            if spf[p] == p as u32 {
                let mut q = p * p;
                while q <= n_max {
                    if spf[q] == q as u32 {
                        spf[q] = p as u32;
                    }
                    q += p;
                }
            }
            p += 1;
        }
        let start = self.ln_table.len();
        self.ln_table.reserve(n_max + 1 - start);
        for (n, &factor) in spf.iter().enumerate().take(n_max + 1).skip(start) {
            let s = factor as usize;
            let entry = if s == n {
                // prime: arbitrary-precision logarithm, split into (hi, lo)
                let big = self.hp.from_i64(n as i64);
                let l = self.hp.ln(&big);
                let (hi, lo) = self.hp.to_f64_pair(&l);
                Tf::new(hi, lo)
            } else {
                self.ln_table[s].add(self.ln_table[n / s])
            };
            self.ln_table.push(entry);
        }
    }

    /// zeta(sigma + it) for sigma in (0, 2], t >= 0, by Euler-Maclaurin.
    pub fn zeta(&mut self, sigma: f64, t: f64) -> Complex {
        assert!(sigma > 0.0 && sigma <= 2.0 && t >= 0.0 && t.is_finite());
        let n = ((t / 2.0).ceil() as usize).max(48);
        self.ensure(n);
        let s = Complex::new(sigma, t);

        // main sum over n' < N, with the phase carried in two floats
        let mut re = KahanPair::default();
        let mut im = KahanPair::default();
        for k in 1..n {
            let ln_k = self.ln_table[k];
            let phase = ln_k.mul_f64(t).rem_two_pi();
            let amp = (-sigma * (ln_k.hi + ln_k.lo)).exp();
            re.add(amp * phase.cos());
            im.add(-amp * phase.sin());
        }
        let mut acc = Complex::new(re.value(), im.value());

        // N^{-s}/2 and N^{1-s}/(s-1)
        let ln_n = self.ln_table[n];
        let phase_n = ln_n.mul_f64(t).rem_two_pi();
        let amp_n = (-sigma * (ln_n.hi + ln_n.lo)).exp();
        let n_pow_ms = Complex::new(amp_n * phase_n.cos(), -amp_n * phase_n.sin());
        acc = acc.add(n_pow_ms.scale(0.5));
        let nf = n as f64;
        let s_minus_1 = Complex::new(sigma - 1.0, t);
        acc = acc.add(n_pow_ms.scale(nf).div(s_minus_1));

        // Bernoulli tail: T_1 = B_2/2! * s * N^{-s-1}, then
        // T_{k+1} = T_k * (B_{2k+2} (2k)!)/(B_{2k} (2k+2)!) * (s+2k-1)(s+2k) / N^2
        let mut term = n_pow_ms
            .scale(1.0 / nf)
            .mul(s)
            .scale(BERNOULLI[0].0 / BERNOULLI[0].1 / 2.0);
        acc = acc.add(term);
        for k in 1..BERNOULLI.len() {
            let (bn_num, bn_den) = BERNOULLI[k];
            let (bp_num, bp_den) = BERNOULLI[k - 1];
            let k2 = 2.0 * k as f64;
            // (2k)!/(2k+2)! = 1/((2k+1)(2k+2))
            let ratio = (bn_num / bn_den) / (bp_num / bp_den) / ((k2 + 1.0) * (k2 + 2.0));
            let rising = Complex::new(sigma + k2 - 1.0, t).mul(Complex::new(sigma + k2, t));
            term = term.mul(rising).scale(ratio / (nf * nf));
            acc = acc.add(term);
            if term.abs() < 1e-18 * acc.abs().max(1e-6) {
                break;
            }
        }
        acc
    }

    /// |zeta(1/2 + it)|.
    pub fn zeta_abs_half(&mut self, t: f64) -> f64 {
        self.zeta(0.5, t).abs()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct KahanPair {
    sum: f64,
    c: f64,
}

impl KahanPair {
    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

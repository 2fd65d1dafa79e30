//! Exact evaluation of the piecewise-quadratic bound family `g_k(n, s)`,
//! its minimum, critical points and the derived class-size quantities.
//!
//! Values are exact rationals (they happen to be integral for integer
//! arguments).

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// A pair `(n, s)` with an optional piece index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalQuery {
    pub n: u64,
    pub s: u64,
    pub k: Option<u64>,
}

impl ExtremalQuery {
    pub fn new(n: u64, s: u64) -> Result<ExtremalQuery> {
        if s == 0 || s > n {
            return Err(Error::OutOfRange(format!("need 1 <= s <= n, got n={n}, s={s}")));
        }
        Ok(ExtremalQuery { n, s, k: None })
    }

    pub fn with_k(mut self, k: u64) -> ExtremalQuery {
        self.k = Some(k);
        self
    }

    pub fn lambda(&self, k: u64) -> i64 {
        lambda(self.n, self.s, k)
    }

    pub fn class_size_bounds(&self, k: u64) -> (i64, i64) {
        class_size_bounds(self.n, self.s, k)
    }
}

fn int(x: u64) -> i128 {
    x as i128
}

/// `k(k-1)n^2/2 - k(3k-4)ns + (3k-4)(3k-1)s^2/2`, expanded form.
pub fn g_k(n: u64, s: u64, k: u64) -> Rational {
    let (n, s, k) = (int(n), int(s), int(k));
    let num = k * (k - 1) * n * n - 2 * k * (3 * k - 4) * n * s + (3 * k - 4) * (3 * k - 1) * s * s;
    Rational::new(num, 2)
}

/// `ns/2 - ((k-1)n - (3k-4)s)((3k-1)s - kn)/2`, factored form.
pub fn g_k_factored(n: u64, s: u64, k: u64) -> Rational {
    let (n, s, k) = (int(n), int(s), int(k));
    let lower = (k - 1) * n - (3 * k - 4) * s;
    let slack = (3 * k - 1) * s - k * n;
    Rational::new(n * s - lower * slack, 2)
}

/// Minimum of `g_k` over `k` with the smallest minimising `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GMin {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub argmin: u64,
}

/// `min_k g_k(n, s)` for `n/3 < s <= n/2`.
///
/// For `s > floor(n/2)` the Mantel value `floor(n^2/4)` is returned with
/// `argmin = 1` (blow-ups of `K_2`). `s <= n/3` is outside the piecewise
/// regime and rejected.
pub fn g_min(n: u64, s: u64) -> Result<GMin> {
    if 3 * s <= n {
        return Err(Error::OutOfRange(format!("s={s} <= n/3 for n={n}")));
    }
    if s > n / 2 {
        return Ok(GMin {
            value: Rational::from_integer(int(n * n / 4)),
            argmin: 1,
        });
    }
    let mut best = GMin {
        value: g_k(n, s, 1),
        argmin: 1,
    };
    for k in 2..=3 * n.max(1) {
        let v = g_k(n, s, k);
        if v < best.value {
            best = GMin { value: v, argmin: k };
        }
    }
    Ok(best)
}

/// `k / (3k - 1)`.
pub fn critical_point(k: u64) -> Rational {
    Rational::new(int(k), int(3 * k - 1))
}

/// `1 / (600 k^6)`.
pub fn gamma(k: u64) -> Rational {
    Rational::new(1, 600 * int(k).pow(6))
}

/// The density interval `[k/(3k-1), k/(3k-1) + 1/(600k^6)]`.
pub fn theorem_window(k: u64) -> (Rational, Rational) {
    let lo = critical_point(k);
    (lo, lo + gamma(k))
}

/// Whether `s/n` lies in [`theorem_window`]`(k)`.
pub fn in_theorem_window(n: u64, s: u64, k: u64) -> bool {
    let (lo, hi) = theorem_window(k);
    let r = Rational::new(int(s), int(n));
    lo <= r && r <= hi
}

/// `(3k-1)s - kn`, equivalently `k(3s-n) - s`.
pub fn lambda(n: u64, s: u64, k: u64) -> i64 {
    ((3 * int(k) - 1) * int(s) - int(k) * int(n)) as i64
}

/// `((k-1)n - (3k-4)s, 3s - n)`.
pub fn class_size_bounds(n: u64, s: u64, k: u64) -> (i64, i64) {
    let (n, s, k) = (int(n), int(s), int(k));
    (((k - 1) * n - (3 * k - 4) * s) as i64, (3 * s - n) as i64)
}

/// True iff `s` is not strictly inside `(kn/(3k-1), (k-1)n/(3k-4))`.
pub fn fact_s_range_bound(n: u64, s: u64, k: u64) -> bool {
    assert!(k >= 2, "the range rule needs k >= 2");
    let (n, s, k) = (int(n), int(s), int(k));
    let above_left = (3 * k - 1) * s > k * n;
    let below_right = (3 * k - 4) * s < (k - 1) * n;
    !(above_left && below_right)
}

/// Whether `kn/(3k-1) <= s <= (k-1)n/(3k-4)` (closed window, `k >= 2`).
pub fn in_piece(n: u64, s: u64, k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let (n, s, k) = (int(n), int(s), int(k));
    (3 * k - 1) * s >= k * n && (3 * k - 4) * s <= (k - 1) * n
}

/// All `k >= 2` whose closed window contains `s`, ascending. At a cusp two
/// consecutive pieces qualify.
pub fn pieces_containing(n: u64, s: u64) -> Vec<u64> {
    if 3 * s <= n || 2 * s > n {
        return Vec::new();
    }
    // k/(3k-1) decreases to 1/3, so the windows move left as k grows
    let mut out = Vec::new();
    let mut k = 2;
    loop {
        if in_piece(n, s, k) {
            out.push(k);
        } else if !out.is_empty() || (3 * int(k) - 4) * int(s) > (int(k) - 1) * int(n) {
            break;
        }
        k += 1;
    }
    out
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_rational<S: Serializer>(r: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rational(r))
}

/// Integer value of `r` if it is integral.
pub fn as_integer(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

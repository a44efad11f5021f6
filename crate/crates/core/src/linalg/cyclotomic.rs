use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1, "phi of zero");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed as `x^n - 1` divided by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    phi_poly(n).as_ref().clone()
}

fn phi_poly(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&n) {
        return Arc::clone(p);
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &phi_poly(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cyclotomic cache").insert(n, Arc::clone(&p));
    p
}

/// Division by a monic polynomial that is known to be exact.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Element of the cyclotomic field `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coords: Vec<Q>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        Cyclotomic {
            conductor,
            coords: vec![Q::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn rational(conductor: u32, x: Q) -> Self {
        let mut c = Self::zero(conductor);
        c.coords[0] = x;
        c
    }

    pub fn one(conductor: u32) -> Self {
        Self::rational(conductor, Q::one())
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let k = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![Q::zero(); k + 1];
        poly[k] = Q::one();
        Self::from_poly(conductor, poly)
    }

    /// Reduces an arbitrary polynomial in `ζ_N` modulo `Φ_N`.
    pub fn from_poly(conductor: u32, mut poly: Vec<Q>) -> Self {
        let phi = phi_poly(conductor);
        let d = phi.len() - 1;
        while poly.len() > d {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (i, c) in phi.iter().enumerate().take(d) {
                if !c.is_zero() {
                    poly[shift + i] -= &top * Q::from_integer(c.clone());
                }
            }
        }
        poly.resize(d, Q::zero());
        Cyclotomic {
            conductor,
            coords: poly,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Image in `Q(ζ_M)` via `ζ_N = ζ_M^{M/N}`; `N` must divide `M`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::Cyclotomic(format!(
                "cannot lift conductor {} to {}",
                self.conductor, m
            )));
        }
        let step = (m / self.conductor) as usize;
        Ok(self.substitute(m, step))
    }

    /// `p(ζ^step)` reduced in `Q(ζ_M)`.
    fn substitute(&self, m: u32, step: usize) -> Self {
        let mut poly = vec![Q::zero(); step * self.coords.len().max(1)];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] += c;
            }
        }
        Self::from_poly(m, poly)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        let mut acc = Self::zero(n);
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Self::zeta_pow(n, -(i as i64)).scale(c);
            }
        }
        acc
    }

    /// Galois conjugate `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let mut acc = Self::zero(n);
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Self::zeta_pow(n, k * i as i64).scale(c);
            }
        }
        acc
    }

    pub fn scale(&self, s: &Q) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (
            a.lift(m).expect("lcm is a multiple"),
            b.lift(m).expect("lcm is a multiple"),
        )
    }

    pub fn try_add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        Cyclotomic {
            conductor: a.conductor,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let mut poly = vec![Q::zero(); (a.coords.len() * 2).saturating_sub(1).max(1)];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.conductor, poly)
    }

    /// Parses the literal grammar `q`, `q*z(N)`, `q*z(N)^k` joined by `+` and `-`.
    ///
    /// The result lives in the field generated by every `z(N)` mentioned.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty cyclotomic literal".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut depth = 0;
        for i in 0..bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if i > start && depth == 0 && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' => {
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut acc = Self::zero(1);
        for t in terms {
            acc = &acc + &parse_term(t)?;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> std::result::Result<Cyclotomic, String> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'+') => (Q::one(), &t[1..]),
        Some(b'-') => (-Q::one(), &t[1..]),
        _ => (Q::one(), t),
    };
    if body.is_empty() {
        return Err(format!("dangling sign in `{t}`"));
    }
    let (coef, zpart) = match body.find("z(") {
        None => (body, None),
        Some(0) => ("1", Some(body)),
        Some(i) => {
            let c = body[..i]
                .strip_suffix('*')
                .ok_or_else(|| format!("expected `*` before `z(` in `{t}`"))?;
            (c, Some(&body[i..]))
        }
    };
    let coef = parse_q(coef).ok_or_else(|| format!("bad rational `{coef}`"))? * sign;
    let Some(z) = zpart else {
        return Ok(Cyclotomic::rational(1, coef));
    };
    let close = z.find(')').ok_or_else(|| format!("unclosed `z(` in `{t}`"))?;
    let n: u32 = z[2..close]
        .parse()
        .map_err(|_| format!("bad conductor in `{t}`"))?;
    if n == 0 {
        return Err("conductor must be positive".into());
    }
    let rest = &z[close + 1..];
    let k: i64 = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .ok_or_else(|| format!("unexpected `{rest}` in `{t}`"))?
            .parse()
            .map_err(|_| format!("bad exponent in `{t}`"))?
    };
    Ok(Cyclotomic::zeta_pow(n, k).scale(&coef))
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(&-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(&-Q::one())
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("z({})", self.conductor),
                _ => format!("z({})^{}", self.conductor, k),
            };
            if k == 0 {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{}*{z}", fmt_q(&abs))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [in Q(z({}))]", self.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, q_frac};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        let s = &Cyclotomic::zeta_pow(3, 1) + &Cyclotomic::zeta_pow(3, 2);
        assert_eq!(s.to_rational(), Some(q(-1)));
    }

    #[test]
    fn eighth_roots_multiply() {
        let p = &Cyclotomic::zeta_pow(8, 1) * &Cyclotomic::zeta_pow(8, 3);
        assert_eq!(p.to_rational(), Some(q(-1)));
    }

    #[test]
    fn lifting_mixed_conductors() {
        let a = Cyclotomic::zeta_pow(2, 1);
        let b = Cyclotomic::zeta_pow(3, 1);
        let c = &a * &b;
        assert_eq!(c.conductor(), 6);
        assert_eq!(c, Cyclotomic::zeta_pow(6, 5));
    }

    #[test]
    fn conjugation_inverts_roots() {
        let z = Cyclotomic::zeta_pow(5, 2);
        assert_eq!((&z * &z.conj()).to_rational(), Some(q(1)));
    }

    #[test]
    fn parse_and_print() {
        let x = Cyclotomic::parse("1/2 + 1/2*z(3) - z(3)^2").unwrap();
        // z^2 = -1 - z in Q(z(3))
        assert_eq!(x.coords(), &[q_frac(3, 2), q_frac(3, 2)]);
        assert_eq!(x.to_string(), "3/2 + 3/2*z(3)");
        assert_eq!(Cyclotomic::parse(&x.to_string()).unwrap(), x);
        assert_eq!(Cyclotomic::parse("-1").unwrap().to_rational(), Some(q(-1)));
        assert_eq!(Cyclotomic::parse("z(4)^-1").unwrap(), Cyclotomic::zeta_pow(4, 3));
        assert!(Cyclotomic::parse("2*").is_err());
        assert!(Cyclotomic::parse("z(0)").is_err());
    }
}

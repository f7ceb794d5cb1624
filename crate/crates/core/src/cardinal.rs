//! Cardinal arithmetic over finite naturals and beth numbers.
//!
//! Every count and size produced for an infinite tree lives in the value
//! domain `{0, 1, 2, ...} ∪ {beth_0, beth_1, ...}` where `beth_0 = ℵ0` and
//! `beth_{k+1} = 2^beth_k`. Inside this fragment sums, products, powers and
//! the binomial convention for infinite arguments are all decidable without
//! any assumption beyond ZFC.
//!
//! Infinite binomials follow the convention used for asymmetrizing numbers:
//! `binom(a, t) = a^t` when `t <= a` and `0` when `t > a`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest finite value (in bits) the arithmetic will materialize.
pub const MAX_FINITE_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalError {
    #[error("finite result exceeds {MAX_FINITE_BITS} bits")]
    FiniteTooLarge,
    #[error("beth index overflow")]
    BethOverflow,
    #[error("invalid cardinal `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CardinalError>;

/// A finite natural or a beth number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Beth(u32),
}

impl Cardinal {
    pub fn zero() -> Self {
        Cardinal::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        Cardinal::Finite(BigUint::one())
    }

    pub fn finite(n: u64) -> Self {
        Cardinal::Finite(BigUint::from(n))
    }

    /// `ℵ0`, the least infinite cardinal.
    pub fn aleph0() -> Self {
        Cardinal::Beth(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cardinal::Finite(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Cardinal::Finite(n) if n.is_one())
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Beth(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_finite().and_then(ToPrimitive::to_u64)
    }

    /// Cardinal sum of two values.
    pub fn add(&self, other: &Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a + b),
            _ => self.clone().max(other.clone()),
        }
    }

    /// Cardinal product of two values.
    pub fn mul(&self, other: &Cardinal) -> Cardinal {
        if self.is_zero() || other.is_zero() {
            return Cardinal::zero();
        }
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a * b),
            _ => self.clone().max(other.clone()),
        }
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::finite(n)
    }
}

impl From<BigUint> for Cardinal {
    fn from(n: BigUint) -> Self {
        Cardinal::Finite(n)
    }
}

impl Ord for Cardinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => a.cmp(b),
            (Cardinal::Finite(_), Cardinal::Beth(_)) => Ordering::Less,
            (Cardinal::Beth(_), Cardinal::Finite(_)) => Ordering::Greater,
            (Cardinal::Beth(i), Cardinal::Beth(j)) => i.cmp(j),
        }
    }
}

impl PartialOrd for Cardinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Beth(k) => write!(f, "beth_{k}"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = CardinalError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "w" {
            return Ok(Cardinal::aleph0());
        }
        if let Some(k) = s.strip_prefix("beth_") {
            if !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) {
                return k
                    .parse::<u32>()
                    .map(Cardinal::Beth)
                    .map_err(|_| CardinalError::Parse(s.to_string()));
            }
            return Err(CardinalError::Parse(s.to_string()));
        }
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            return s
                .parse::<BigUint>()
                .map(Cardinal::Finite)
                .map_err(|_| CardinalError::Parse(s.to_string()));
        }
        Err(CardinalError::Parse(s.to_string()))
    }
}

fn beth_succ(k: u32) -> Result<Cardinal> {
    k.checked_add(1)
        .map(Cardinal::Beth)
        .ok_or(CardinalError::BethOverflow)
}

fn check_bits(n: BigUint) -> Result<BigUint> {
    if n.bits() > MAX_FINITE_BITS {
        Err(CardinalError::FiniteTooLarge)
    } else {
        Ok(n)
    }
}

/// `Σ value · multiplicity` over a finite family of terms.
///
/// Terms with a zero value or zero multiplicity contribute nothing. As soon as
/// one contributing term is infinite the sum is the largest infinite value or
/// multiplicity among the contributing terms.
pub fn sum_family(terms: &[(Cardinal, Cardinal)]) -> Cardinal {
    let mut finite = BigUint::zero();
    let mut infinite: Option<u32> = None;
    for (value, mult) in terms {
        if value.is_zero() || mult.is_zero() {
            continue;
        }
        match (value, mult) {
            (Cardinal::Finite(v), Cardinal::Finite(m)) => finite += v * m,
            _ => {
                let k = match value.clone().max(mult.clone()) {
                    Cardinal::Beth(k) => k,
                    Cardinal::Finite(_) => unreachable!("one side is infinite"),
                };
                infinite = Some(infinite.map_or(k, |cur| cur.max(k)));
            }
        }
    }
    match infinite {
        Some(k) => Cardinal::Beth(k),
        None => Cardinal::Finite(finite),
    }
}

/// `∏ value^exponent` over a finite family of factors.
///
/// Each factor is reduced with [`pow`]; a zero factor with nonzero exponent
/// annihilates the product, and otherwise any infinite factor absorbs the
/// finite ones (`κ · n = κ` for `n >= 1`).
pub fn product_family(factors: &[(Cardinal, Cardinal)]) -> Result<Cardinal> {
    let live: Vec<_> = factors
        .iter()
        .filter(|(value, exp)| !exp.is_zero() && !value.is_one())
        .collect();
    if live.iter().any(|(value, _)| value.is_zero()) {
        return Ok(Cardinal::zero());
    }
    // Decide infinite factors before materializing any finite power.
    let mut infinite: Option<u32> = None;
    for (value, exp) in &live {
        if value.is_infinite() || exp.is_infinite() {
            if let Cardinal::Beth(k) = pow(value, exp)? {
                infinite = Some(infinite.map_or(k, |cur| cur.max(k)));
            }
        }
    }
    if let Some(k) = infinite {
        return Ok(Cardinal::Beth(k));
    }
    let mut acc = BigUint::one();
    for (value, exp) in live {
        if let Cardinal::Finite(n) = pow(value, exp)? {
            acc = check_bits(acc * n)?;
        }
    }
    Ok(Cardinal::Finite(acc))
}

/// `2^c`.
pub fn two_pow(c: &Cardinal) -> Result<Cardinal> {
    pow(&Cardinal::finite(2), c)
}

/// `a^b` with `0^0 = 1`.
pub fn pow(a: &Cardinal, b: &Cardinal) -> Result<Cardinal> {
    if b.is_zero() {
        return Ok(Cardinal::one());
    }
    if a.is_zero() {
        return Ok(Cardinal::zero());
    }
    if a.is_one() {
        return Ok(Cardinal::one());
    }
    match (a, b) {
        (Cardinal::Finite(base), Cardinal::Finite(exp)) => {
            let exp = exp.to_u64().ok_or(CardinalError::FiniteTooLarge)?;
            let bits_per = base.bits() - 1;
            if bits_per.saturating_mul(exp) > MAX_FINITE_BITS {
                return Err(CardinalError::FiniteTooLarge);
            }
            let exp = u32::try_from(exp).map_err(|_| CardinalError::FiniteTooLarge)?;
            Ok(Cardinal::Finite(base.pow(exp)))
        }
        // b >= 1 finite: κ^n = κ.
        (Cardinal::Beth(i), Cardinal::Finite(_)) => Ok(Cardinal::Beth(*i)),
        // n >= 2: n^beth_j = 2^beth_j.
        (Cardinal::Finite(_), Cardinal::Beth(j)) => beth_succ(*j),
        // (2^κ)^λ = 2^(κλ); beth_0^λ = 2^λ for infinite λ.
        (Cardinal::Beth(i), Cardinal::Beth(j)) => {
            let lifted = j.checked_add(1).ok_or(CardinalError::BethOverflow)?;
            Ok(Cardinal::Beth((*i).max(lifted)))
        }
    }
}

/// Binomial coefficient with the infinite convention
/// `binom(a, t) = a^t` if `t <= a` and `0` if `t > a`.
pub fn binom(a: &Cardinal, t: &Cardinal) -> Result<Cardinal> {
    if t > a {
        return Ok(Cardinal::zero());
    }
    match (a, t) {
        (Cardinal::Finite(n), Cardinal::Finite(k)) => finite_binom(n, k).map(Cardinal::Finite),
        _ => pow(a, t),
    }
}

/// Usual binomial coefficient of naturals; `k > n` gives zero.
pub fn finite_binom(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    let other = n - k;
    let k = if other < *k { other } else { k.clone() };
    // binom(n, k) >= 2^k whenever k <= n/2.
    let k = match k.to_u64() {
        Some(k) if k <= MAX_FINITE_BITS => k,
        _ => return Err(CardinalError::FiniteTooLarge),
    };
    let mut acc = BigUint::one();
    let base = n - BigUint::from(k);
    for i in 1..=k {
        acc *= &base + BigUint::from(i);
        acc /= BigUint::from(i);
        if acc.bits() > MAX_FINITE_BITS + 64 {
            return Err(CardinalError::FiniteTooLarge);
        }
    }
    check_bits(acc)
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::SymbolicError;
use crate::scalar::Scalar;

/// Exact polynomial in the two memory parameters `ε` and `ε′` with integer
/// coefficients. Keys are `(ε-degree, ε′-degree)`; zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: i64, eps_deg: u32, eps_prime_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((eps_deg, eps_prime_deg), c);
        }
        Poly2 { terms }
    }

    /// `ε`
    pub fn eps() -> Self {
        Poly2::monomial(1, 1, 0)
    }

    /// `ε′`
    pub fn eps_prime() -> Self {
        Poly2::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    /// `((ε-degree, ε′-degree), coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, eps_deg: u32, eps_prime_deg: u32) -> i64 {
        self.terms.get(&(eps_deg, eps_prime_deg)).copied().unwrap_or(0)
    }

    fn add_term(&mut self, key: (u32, u32), c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(key).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    /// Smallest and largest total degree, `None` for the zero polynomial.
    pub fn total_degree_range(&self) -> Option<(u32, u32)> {
        let degs = self.terms.keys().map(|&(i, j)| i + j);
        let min = degs.clone().min()?;
        Some((min, degs.max()?))
    }

    pub fn eval<S: Scalar>(&self, eps: &S, eps_prime: &S) -> S {
        self.terms.iter().fold(S::zero(), |acc, (&(i, j), &c)| {
            acc + S::from_i64(c) * eps.powu(i) * eps_prime.powu(j)
        })
    }

    /// Substitute integers for both symbols, returning a constant.
    pub fn substitute(&self, eps: i64, eps_prime: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * eps.pow(i) * eps_prime.pow(j))
            .sum()
    }

    /// Substitute integers for whichever symbols are given; the others stay.
    pub fn partial(&self, eps: Option<i64>, eps_prime: Option<i64>) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), &c) in &self.terms {
            let (ci, i) = eps.map_or((1, i), |v| (v.pow(i), 0));
            let (cj, j) = eps_prime.map_or((1, j), |v| (v.pow(j), 0));
            out.add_term((i, j), c * ci * cj);
        }
        out
    }

    /// Human-oriented rendering with `ε` and `ε′`.
    pub fn pretty(&self) -> String {
        self.render("ε", "ε′", "·")
    }

    fn render(&self, eps: &str, eps_prime: &str, times: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (&(i, j), &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mut vars = Vec::new();
            match i {
                0 => {}
                1 => vars.push(eps.to_string()),
                _ => vars.push(format!("{eps}^{i}")),
            }
            match j {
                0 => {}
                1 => vars.push(eps_prime.to_string()),
                _ => vars.push(format!("{eps_prime}^{j}")),
            }
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push_str(times);
                }
                out.push_str(&vars.join(times));
            }
        }
        out
    }
}

/// Canonical ASCII form: `e` is `ε`, `e'` is `ε′`, terms ascending by ε-degree
/// then ε′-degree, e.g. `1 + e' - 2*e^2*e'`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("e", "e'", "*"))
    }
}

impl FromStr for Poly2 {
    type Err = SymbolicError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SymbolicError::PolyParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty"));
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);

        let mut poly = Poly2::zero();
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes().first() {
                Some(b'-') => (-1i64, &chunk[1..]),
                Some(b'+') => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            if body.is_empty() {
                return Err(fail("dangling sign"));
            }
            let (mut coef, mut i, mut j) = (1i64, 0u32, 0u32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "e" => i += exp,
                    "e'" => j += exp,
                    digits if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                        let c: i64 = digits.parse().map_err(|_| fail("bad coefficient"))?;
                        coef = coef
                            .checked_mul(c.checked_pow(exp).ok_or_else(|| fail("overflow"))?)
                            .ok_or_else(|| fail("overflow"))?;
                    }
                    _ => return Err(fail("unknown factor")),
                }
            }
            poly.add_term((i, j), sign * coef);
        }
        Ok(poly)
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;

    fn add(mut self, rhs: Poly2) -> Poly2 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (&k, &c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;

    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;

    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

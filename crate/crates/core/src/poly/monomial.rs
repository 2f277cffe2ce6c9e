use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Number of variables a monomial can carry.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^e_0 * ... * x_15^e_15`. The derived `Ord` is only a
/// storage order for maps; use `MonomialOrder::cmp` for term orders.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        let mut m = Self::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Result<Self, PolyError> {
        let mut m = Self::default();
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if i >= MAX_VARS {
                return Err(PolyError::TooManyVariables(i));
            }
            m.exps[i] = u8::try_from(k).expect("exponent fits in u8");
            m.deg += k as u16;
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// `(index, exponent)` for every variable that occurs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e as u32))
    }

    pub fn num_vars(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `self / o`; requires `o.divides(self)`.
    pub fn div(&self, o: &Self) -> Self {
        debug_assert!(o.divides(self));
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= o.exps[i];
        }
        m.deg -= o.deg;
        m
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    /// Renames variables: variable `i` becomes `map[i]`.
    pub fn rename(&self, map: &[usize]) -> Self {
        let mut m = Self::default();
        for (i, e) in self.support() {
            m.exps[map[i]] += e as u8;
        }
        m.deg = self.deg;
        m
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .support()
            .map(|(i, e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{e}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Term order with `x_0 > x_1 > ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x1 > x2 > x3
        assert_eq!(o.cmp(&m(&[1]), &m(&[0, 1])), Ordering::Greater);
        // higher degree first
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1])), Ordering::Greater);
        // x1*x3 < x2^2: the smaller exponent of the last variable wins
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn lex_examples() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 1, 3]));
        assert_eq!(a.gcd(&b), m(&[1]));
        assert!(m(&[1]).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&b).div(&a), m(&[0, 0, 3]));
        assert!(m(&[1]).is_coprime(&m(&[0, 1])));
        assert_eq!(a.num_vars(), 2);
    }
}

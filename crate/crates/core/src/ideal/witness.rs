use num_bigint::BigInt;
use num_integer::Integer;

use crate::poly::Polynomial;

struct Compiled {
    terms: Vec<(i128, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn eval_int(&self, pt: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, e) in vars {
                t = t.checked_mul((pt[i] as i128).checked_pow(e)?)?;
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval_mod(&self, pt: &[i64], p: i64) -> i64 {
        let p = p as i128;
        let mut acc: i128 = 0;
        for (c, vars) in &self.terms {
            let mut t = c.rem_euclid(p);
            for &(i, e) in vars {
                for _ in 0..e {
                    t = t * pt[i] as i128 % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as i64
    }
}

/// A common zero of all generators, which proves `1` is not in the ideal.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An integer point.
    Integer { point: Vec<i64> },
    /// A point over the prime field with `modulus` elements.
    Modular { modulus: i64, point: Vec<i64> },
}

impl Witness {
    /// Re-checks that every generator vanishes at the point.
    pub fn verify(&self, gens: &[Polynomial]) -> bool {
        match self {
            Witness::Integer { point } => gens
                .iter()
                .all(|g| g.evaluate_at(point).map(|v| v == BigInt::from(0)).unwrap_or(false)),
            Witness::Modular { modulus, point } => {
                let pt: Vec<u64> = point.iter().map(|&v| v as u64).collect();
                gens.iter()
                    .all(|g| g.num_vars() <= pt.len() && g.evaluate_mod(&pt, *modulus as u64) == 0)
            }
        }
    }
}

struct Search<'a> {
    by_last_var: Vec<Vec<&'a Compiled>>,
    domain: Vec<i64>,
    modulus: Option<i64>,
    point: Vec<i64>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of nodes.
    fn run(&mut self, var: usize) -> Option<bool> {
        if var == self.point.len() {
            return Some(true);
        }
        for k in 0..self.domain.len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return None;
            }
            self.point[var] = self.domain[k];
            let ok = self.by_last_var[var].iter().all(|g| match self.modulus {
                Some(p) => g.eval_mod(&self.point, p) == 0,
                None => g.eval_int(&self.point) == Some(0),
            });
            if ok {
                match self.run(var + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        Some(false)
    }
}

/// Integer coordinates tried first, in this order.
const INTEGER_DOMAIN: [i64; 5] = [-1, 0, 1, -2, 2];
const PRIMES: [i64; 3] = [2, 3, 5];

/// Searches `{-2..2}^n`, then `F_2^n`, `F_3^n`, `F_5^n` for a common zero of
/// `gens`, by backtracking over the variables in index order and checking
/// each generator as soon as its last variable is assigned. Each stage gives
/// up after `node_limit` nodes.
pub fn find_witness(gens: &[Polynomial], node_limit: u64) -> Option<Witness> {
    let nvars = gens.iter().map(|g| g.num_vars()).max().unwrap_or(0);
    let compiled: Vec<(usize, Compiled)> = gens
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| Some((i128::try_from(c).ok()?, m.support().collect())))
                .collect::<Option<Vec<_>>>()?;
            Some((g.num_vars(), Compiled { terms }))
        })
        .collect::<Option<Vec<_>>>()?;
    if compiled.iter().any(|(nv, _)| *nv == 0) {
        // a nonzero constant generator never vanishes over Z; over F_p only
        // when p divides it
        let consts: Vec<BigInt> = gens.iter().filter_map(|g| g.constant_value()).collect();
        let g = consts.iter().fold(BigInt::from(0), |a, c| a.gcd(c));
        return PRIMES
            .iter()
            .filter(|&&p| (&g % p) == BigInt::from(0))
            .find_map(|&p| search(&compiled, nvars, (0..p).collect(), Some(p), node_limit));
    }
    search(&compiled, nvars, INTEGER_DOMAIN.to_vec(), None, node_limit).or_else(|| {
        PRIMES
            .iter()
            .find_map(|&p| search(&compiled, nvars, (0..p).collect(), Some(p), node_limit))
    })
}

fn search(
    compiled: &[(usize, Compiled)],
    nvars: usize,
    domain: Vec<i64>,
    modulus: Option<i64>,
    limit: u64,
) -> Option<Witness> {
    let mut by_last_var: Vec<Vec<&Compiled>> = vec![Vec::new(); nvars.max(1)];
    for (nv, c) in compiled {
        if *nv == 0 {
            // constants: checked once before any variable is assigned
            let zero = match modulus {
                Some(p) => c.eval_mod(&[], p) == 0,
                None => c.eval_int(&[]) == Some(0),
            };
            if !zero {
                return None;
            }
            continue;
        }
        by_last_var[nv - 1].push(c);
    }
    let mut s = Search {
        by_last_var,
        domain,
        modulus,
        point: vec![0; nvars],
        nodes: 0,
        limit,
    };
    if s.run(0) != Some(true) {
        return None;
    }
    Some(match modulus {
        Some(p) => Witness::Modular {
            modulus: p,
            point: s.point,
        },
        None => Witness::Integer { point: s.point },
    })
}

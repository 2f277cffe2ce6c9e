use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Budget, Ideal, IdealError};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// A strong Gröbner basis over the integers: the leading term of every
/// nonzero ideal element is divisible, coefficient included, by the leading
/// term of some basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
    pairs: u64,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Number of critical pairs processed while building the basis.
    pub fn pairs_processed(&self) -> u64 {
        self.pairs
    }

    pub fn contains_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_unit())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        reduce(p, &refs, true)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.elements.iter().map(|g| g.render(names)).collect()
    }
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.elements.iter().map(|g| g.to_string()))
            .finish()
    }
}

/// Quotient of `c` by `b` rounded to the nearest integer, halves toward zero,
/// so that the remainder satisfies `|r| <= |b| / 2`.
pub(crate) fn symmetric_quotient(c: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = c.div_rem(b);
    let twice: BigInt = r.abs() * 2;
    if twice > b.abs() {
        let step = if c.is_negative() == b.is_negative() { 1 } else { -1 };
        q += step;
    }
    q
}

/// Reduces `p` by `basis`. A term `c*X` is reducible by `g` when `lm(g)`
/// divides `X` and the symmetric quotient of `c` by `lc(g)` is nonzero; each
/// step strictly lowers `|c|` or removes the term. With `full` unset only
/// the leading term is reduced.
pub(crate) fn reduce(p: &Polynomial, basis: &[&Polynomial], full: bool) -> Polynomial {
    let order = p.order();
    let mut rest = p.clone();
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let mut best: Option<(BigInt, BigInt, usize)> = None;
        for (k, g) in basis.iter().enumerate() {
            let gm = g.leading_monomial().unwrap();
            if !gm.divides(&m) {
                continue;
            }
            let q = symmetric_quotient(&c, g.leading_coeff().unwrap());
            if q.is_zero() {
                continue;
            }
            let r: BigInt = (&c - &q * g.leading_coeff().unwrap()).abs();
            if best.as_ref().is_none_or(|(br, _, _)| r < *br) {
                let exact = r.is_zero();
                best = Some((r, q, k));
                if exact {
                    break;
                }
            }
        }
        match best {
            Some((_, q, k)) => {
                let g = basis[k];
                rest = rest.sub_mul_term(&q, &m.div(g.leading_monomial().unwrap()), g);
            }
            None => {
                if !full {
                    let mut terms = vec![(m, c)];
                    terms.extend(rest.terms()[1..].iter().cloned());
                    return Polynomial::from_terms(terms, order);
                }
                done.push((m, c));
                rest = Polynomial::from_terms(rest.terms()[1..].iter().cloned(), order);
            }
        }
    }
    Polynomial::from_terms(done, order)
}

struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
    order: MonomialOrder,
}

impl PartialEq for Pair {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Pair {
    // reversed: BinaryHeap pops the smallest lcm first
    fn cmp(&self, o: &Self) -> Ordering {
        self.order
            .cmp(&o.lcm, &self.lcm)
            .then_with(|| (o.i, o.j).cmp(&(self.i, self.j)))
    }
}

struct Builder {
    order: MonomialOrder,
    basis: Vec<Option<Polynomial>>,
    pairs: BinaryHeap<Pair>,
    pending: Vec<Polynomial>,
    processed: u64,
}

enum Step {
    Continue,
    Unit,
}

impl Builder {
    fn live(&self) -> Vec<&Polynomial> {
        self.basis.iter().flatten().collect()
    }

    /// Reduces `h` and, if nonzero, adds it to the basis.
    fn insert(&mut self, h: &Polynomial) -> Step {
        let h = reduce(h, &self.live(), true).normalize_sign();
        if h.is_zero() {
            return Step::Continue;
        }
        if h.is_unit() {
            return Step::Unit;
        }
        let hm = *h.leading_monomial().unwrap();
        let hc = h.leading_coeff().unwrap().clone();
        for slot in self.basis.iter_mut() {
            let redundant = slot.as_ref().is_some_and(|g| {
                hm.divides(g.leading_monomial().unwrap()) && g.leading_coeff().unwrap().is_multiple_of(&hc)
            });
            if redundant {
                self.pending.push(slot.take().unwrap());
            }
        }
        let idx = self.basis.len();
        for (i, g) in self.basis.iter().enumerate() {
            if let Some(g) = g {
                self.pairs.push(Pair {
                    lcm: g.leading_monomial().unwrap().lcm(&hm),
                    i,
                    j: idx,
                    order: self.order,
                });
            }
        }
        self.basis.push(Some(h));
        Step::Continue
    }

    fn drain_pending(&mut self) -> Step {
        while let Some(p) = self.pending.pop() {
            if let Step::Unit = self.insert(&p) {
                return Step::Unit;
            }
        }
        Step::Continue
    }

    fn process(&mut self, pair: Pair) -> Step {
        let (Some(f), Some(g)) = (self.basis[pair.i].clone(), self.basis[pair.j].clone()) else {
            return Step::Continue;
        };
        self.processed += 1;
        let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
        let (a, b) = (f.leading_coeff().unwrap(), g.leading_coeff().unwrap());
        let l = pair.lcm;
        let (uf, ug) = (l.div(fm), l.div(gm));
        let coprime_terms = fm.is_coprime(gm) && a.gcd(b).is_one();
        if !coprime_terms {
            let c = a.lcm(b);
            let s = &f.mul_term(&uf, &(&c / a)) - &g.mul_term(&ug, &(&c / b));
            if let Step::Unit = self.insert(&s) {
                return Step::Unit;
            }
        }
        if !(b.is_multiple_of(a) || a.is_multiple_of(b)) {
            let e = a.extended_gcd(b);
            let gp = &f.mul_term(&uf, &e.x) + &g.mul_term(&ug, &e.y);
            if let Step::Unit = self.insert(&gp) {
                return Step::Unit;
            }
        }
        self.drain_pending()
    }
}

/// Strong Gröbner basis of `ideal`. Fails with `BudgetExhausted` once more
/// than `budget.max_pairs` critical pairs have been processed.
pub fn groebner_with_budget(ideal: &Ideal, budget: Budget) -> Result<GroebnerBasis, IdealError> {
    let order = ideal.order();
    let unit = |pairs| GroebnerBasis {
        elements: vec![Polynomial::one(order)],
        order,
        reduced: true,
        pairs,
    };
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    gens.sort_by(|p, q| cmp_leading(q, p, order));
    let mut b = Builder {
        order,
        basis: Vec::new(),
        pairs: BinaryHeap::new(),
        pending: gens,
        processed: 0,
    };
    if let Step::Unit = b.drain_pending() {
        return Ok(unit(0));
    }
    while let Some(pair) = b.pairs.pop() {
        if b.processed >= budget.max_pairs {
            return Err(IdealError::BudgetExhausted {
                pairs: b.processed,
                limit: budget.max_pairs,
            });
        }
        if let Step::Unit = b.process(pair) {
            return Ok(unit(b.processed));
        }
    }
    let processed = b.processed;
    Ok(GroebnerBasis {
        elements: interreduce(b.basis.into_iter().flatten().collect(), order),
        order,
        reduced: true,
        pairs: processed,
    })
}

pub fn groebner(ideal: &Ideal) -> Result<GroebnerBasis, IdealError> {
    groebner_with_budget(ideal, Budget::from_env())
}

fn cmp_leading(p: &Polynomial, q: &Polynomial, order: MonomialOrder) -> Ordering {
    match (p.terms().first(), q.terms().first()) {
        (Some((pm, pc)), Some((qm, qc))) => order.cmp(pm, qm).then_with(|| pc.abs().cmp(&qc.abs())),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}

/// Drops elements whose leading term is divisible by another's, then
/// reduces every tail. Leading terms are untouched, so the result is still a
/// strong basis of the same ideal.
fn interreduce(mut elems: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    elems.sort_by(|p, q| cmp_leading(p, q, order));
    let mut keep: Vec<Polynomial> = Vec::new();
    for (k, g) in elems.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let gc = g.leading_coeff().unwrap();
        let dominated = elems.iter().enumerate().any(|(l, h)| {
            l != k
                && h.leading_monomial().unwrap().divides(gm)
                && gc.is_multiple_of(h.leading_coeff().unwrap())
                && (l < k
                    || !(gm.divides(h.leading_monomial().unwrap()) && h.leading_coeff().unwrap().is_multiple_of(gc)))
        });
        if !dominated {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<&Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, g)| g)
            .collect();
        let lead = Polynomial::from_terms(keep[k].terms()[..1].iter().cloned(), order);
        let tail = Polynomial::from_terms(keep[k].terms()[1..].iter().cloned(), order);
        out.push(&lead + &reduce(&tail, &others, true));
    }
    out.sort_by(|p, q| cmp_leading(p, q, order));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|s| parse_polynomial(s, &[], O).unwrap()).collect(), O)
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn symmetric_quotients() {
        let q = |c: i64, b: i64| symmetric_quotient(&c.into(), &b.into());
        assert_eq!(q(3, 2), 1.into());
        assert_eq!(q(1, 2), 0.into());
        assert_eq!(q(-3, 2), (-1).into());
        assert_eq!(q(5, 3), 2.into());
        assert_eq!(q(-5, -3), 2.into());
        assert_eq!(q(4, 3), 1.into());
    }

    #[test]
    fn already_reduced_basis_is_fixed() {
        let gb = groebner(&ideal(&["1+x1", "1+x2", "1+x3"])).unwrap();
        assert_eq!(strs(&gb), vec!["x3 + 1", "x2 + 1", "x1 + 1"]);
    }

    #[test]
    fn two_and_x() {
        let gb = groebner(&ideal(&["x1", "2"])).unwrap();
        assert_eq!(strs(&gb), vec!["2", "x1"]);
        assert!(!gb.contains_unit());
        let one = parse_polynomial("1", &[], O).unwrap();
        assert_eq!(gb.normal_form(&one), one);
        let three = parse_polynomial("3", &[], O).unwrap();
        assert_eq!(gb.normal_form(&three), one);
    }

    #[test]
    fn example_pair_is_unit() {
        let gb = groebner(&ideal(&["x2+x5+x2*x5", "-(1+x2+x5+x2*x5)"])).unwrap();
        assert!(gb.contains_unit());
    }

    #[test]
    fn gcd_polynomials_are_needed() {
        // <2x, 3y> contains xy only through a gcd combination
        let gb = groebner(&ideal(&["2*x1", "3*x2"])).unwrap();
        assert!(gb.reduces_to_zero(&parse_polynomial("x1*x2", &[], O).unwrap()));
        assert!(!gb.reduces_to_zero(&parse_polynomial("x1", &[], O).unwrap()));
        // <2x, 3x> = <x>
        let gb = groebner(&ideal(&["2*x1", "3*x1"])).unwrap();
        assert_eq!(strs(&gb), vec!["x1"]);
    }

    #[test]
    fn budget_is_enforced() {
        let i = ideal(&["x1^2*x2 - 3*x3", "x2^2*x3 - 5*x1", "x3^2*x1 - 7*x2"]);
        let r = groebner_with_budget(&i, Budget { max_pairs: 1 });
        assert!(matches!(r, Err(IdealError::BudgetExhausted { limit: 1, .. })), "{r:?}");
    }
}

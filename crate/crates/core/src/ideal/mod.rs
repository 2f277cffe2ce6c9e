//! Ideals of `Z[x_1, ..., x_n]`: strong Gröbner bases, normal forms,
//! membership, equality and the triviality decision `1 in I`.

mod groebner;
mod witness;

pub use groebner::{groebner, groebner_with_budget, GroebnerBasis};
pub use witness::{find_witness, Witness};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{MonomialOrder, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("Gröbner budget exhausted after {pairs} pairs (limit {limit})")]
    BudgetExhausted { pairs: u64, limit: u64 },
}

pub const DEFAULT_PAIR_BUDGET: u64 = 200_000;
pub const BUDGET_ENV: &str = "CRITID_BUDGET";

/// Upper bound on critical pairs processed by one Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: DEFAULT_PAIR_BUDGET,
        }
    }
}

impl Budget {
    /// The default budget, overridden by `CRITID_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(|max_pairs| Budget { max_pairs })
            .unwrap_or_default()
    }
}

/// A finitely generated ideal. Zero generators are dropped, so an empty
/// generator list is the zero ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| if g.order() == order { g } else { g.with_order(order) })
            .collect();
        Ideal { generators, order }
    }

    pub fn unit(order: MonomialOrder) -> Self {
        Ideal::new(vec![Polynomial::one(order)], order)
    }

    pub fn zero(order: MonomialOrder) -> Self {
        Ideal::new(Vec::new(), order)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators rendered with the given variable names.
    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.generators.iter().map(|g| g.render(names)).collect()
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Every generator of `j` lies in `i`.
pub fn contains(i: &Ideal, j: &Ideal) -> Result<bool, IdealError> {
    contains_with_budget(i, j, Budget::from_env())
}

pub fn contains_with_budget(i: &Ideal, j: &Ideal, budget: Budget) -> Result<bool, IdealError> {
    let gb = groebner_with_budget(i, budget)?;
    Ok(j.generators().iter().all(|g| gb.reduces_to_zero(g)))
}

pub fn equal(i: &Ideal, j: &Ideal) -> Result<bool, IdealError> {
    Ok(contains(i, j)? && contains(j, i)?)
}

/// How `1 in I` was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum Triviality {
    /// Generator `index` is `1` or `-1`.
    UnitGenerator { index: usize },
    /// The constant generators have gcd `1`.
    ConstantGcd,
    /// The Gröbner basis contains a unit.
    GroebnerUnit { pairs: u64 },
    /// The zero ideal.
    ZeroIdeal,
    /// All generators vanish at a point.
    Witness { witness: Witness },
    /// The Gröbner basis has no unit.
    GroebnerNonUnit { pairs: u64 },
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(
            self,
            Triviality::UnitGenerator { .. } | Triviality::ConstantGcd | Triviality::GroebnerUnit { .. }
        )
    }
}

/// Node limit for each stage of the witness search.
pub const WITNESS_NODE_LIMIT: u64 = 20_000;

/// Decides whether `1 in I`: unit generator, then gcd of the constants,
/// then a common-zero search, then a Gröbner basis.
pub fn decide_triviality(ideal: &Ideal, budget: Budget) -> Result<Triviality, IdealError> {
    let gens = ideal.generators();
    if gens.is_empty() {
        return Ok(Triviality::ZeroIdeal);
    }
    if let Some(index) = gens.iter().position(|g| g.is_unit()) {
        return Ok(Triviality::UnitGenerator { index });
    }
    let g = gens
        .iter()
        .filter_map(|p| p.constant_value())
        .fold(BigInt::zero(), |a, c| a.gcd(&c));
    if g.is_one() {
        return Ok(Triviality::ConstantGcd);
    }
    if let Some(witness) = find_witness(gens, WITNESS_NODE_LIMIT) {
        return Ok(Triviality::Witness { witness });
    }
    let gb = groebner_with_budget(ideal, budget)?;
    let pairs = gb.pairs_processed();
    Ok(if gb.contains_unit() {
        Triviality::GroebnerUnit { pairs }
    } else {
        Triviality::GroebnerNonUnit { pairs }
    })
}

pub fn is_trivial(ideal: &Ideal) -> Result<bool, IdealError> {
    Ok(decide_triviality(ideal, Budget::from_env())?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &[], O).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|s| p(s)).collect(), O)
    }

    #[test]
    fn normal_forms() {
        let gb = groebner(&ideal(&["1+x1", "1+x2", "1+x3", "1+x4"])).unwrap();
        assert!(gb.normal_form(&p("x1*x2 - 1")).is_zero());
        assert!(gb.normal_form(&p("0")).is_zero());
    }

    #[test]
    fn triviality_examples() {
        assert!(!is_trivial(&ideal(&["x1", "x2", "1+x3"])).unwrap());
        assert!(is_trivial(&ideal(&["x2+x5+x2*x5", "-(1+x2+x5+x2*x5)"])).unwrap());
        assert!(!is_trivial(&Ideal::zero(O)).unwrap());
        assert!(!is_trivial(&ideal(&["0"])).unwrap());
        assert_eq!(
            decide_triviality(&ideal(&["x1", "-1"]), Budget::default()).unwrap(),
            Triviality::UnitGenerator { index: 1 }
        );
        assert_eq!(
            decide_triviality(&ideal(&["6", "x1", "10", "15"]), Budget::default()).unwrap(),
            Triviality::ConstantGcd
        );
        // no common zero anywhere, so only Gröbner can settle it
        assert!(matches!(
            decide_triviality(&ideal(&["x2+x5+x2*x5", "-(1+x2+x5+x2*x5)"]), Budget::default()).unwrap(),
            Triviality::GroebnerUnit { .. }
        ));
    }

    #[test]
    fn containment() {
        assert!(contains(&ideal(&["x1"]), &ideal(&["x1^2"])).unwrap());
        assert!(!contains(&ideal(&["x1^2"]), &ideal(&["x1"])).unwrap());
        assert!(equal(&ideal(&["2*x1", "3*x1"]), &ideal(&["x1"])).unwrap());
        assert!(equal(&ideal(&["x1+x2", "x1-x2"]), &ideal(&["x1+x2", "2*x2"])).unwrap());
        assert!(!equal(&ideal(&["x1+x2", "x1-x2"]), &ideal(&["x1", "x2"])).unwrap());
    }

    #[test]
    fn budget_from_env_default() {
        if std::env::var(BUDGET_ENV).is_err() {
            assert_eq!(Budget::from_env().max_pairs, DEFAULT_PAIR_BUDGET);
        }
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Polynomial>> {
        let term = ((0u32..2, 0u32..2, 0u32..3), -3i64..4);
        let poly = proptest::collection::vec(term, 1..4).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter().map(|((a, b, c), k)| {
                    (
                        crate::poly::Monomial::from_exponents(&[a, b, c]).unwrap(),
                        BigInt::from(k),
                    )
                }),
                O,
            )
        });
        proptest::collection::vec(poly, 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generators_reduce_to_zero(gens in arb_gens()) {
            let i = Ideal::new(gens, O);
            let gb = groebner(&i).unwrap();
            for g in i.generators() {
                prop_assert!(gb.reduces_to_zero(g), "{g} against {gb:?}");
            }
        }

        #[test]
        fn strong_basis_closure(gens in arb_gens()) {
            // S- and gcd-combinations of basis elements reduce to zero
            let gb = groebner(&Ideal::new(gens, O)).unwrap();
            let el = gb.elements();
            for a in 0..el.len() {
                for b in a + 1..el.len() {
                    let (f, g) = (&el[a], &el[b]);
                    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                    let (fa, gb_) = (f.leading_coeff().unwrap(), g.leading_coeff().unwrap());
                    let l = fm.lcm(gm);
                    let c = fa.lcm(gb_);
                    let s = &f.mul_term(&l.div(fm), &(&c / fa)) - &g.mul_term(&l.div(gm), &(&c / gb_));
                    prop_assert!(gb.reduces_to_zero(&s));
                    let e = fa.extended_gcd(gb_);
                    let gp = &f.mul_term(&l.div(fm), &e.x) + &g.mul_term(&l.div(gm), &e.y);
                    prop_assert!(gb.reduces_to_zero(&gp));
                }
            }
        }

        #[test]
        fn normal_form_idempotent(gens in arb_gens(), q in arb_gens()) {
            let gb = groebner(&Ideal::new(gens, O)).unwrap();
            for f in &q {
                let n = gb.normal_form(f);
                prop_assert_eq!(gb.normal_form(&n), n.clone());
                // f - NF(f) lies in the ideal
                prop_assert!(gb.reduces_to_zero(&(f - &n)));
            }
        }

        #[test]
        fn witnesses_refute_triviality(gens in arb_gens(), pt in proptest::collection::vec(-2i64..3, 3)) {
            // shift every generator so it vanishes at pt
            let shifted: Vec<Polynomial> = gens.iter().map(|g| {
                let v = g.evaluate_at(&pt).unwrap();
                g - &Polynomial::constant(v, O)
            }).collect();
            prop_assert!(!is_trivial(&Ideal::new(shifted, O)).unwrap());
        }

        #[test]
        fn triviality_stable_under_permutation_and_redundancy(gens in arb_gens()) {
            let i = Ideal::new(gens.clone(), O);
            let t = is_trivial(&i).unwrap();
            let mut rev = gens.clone();
            rev.reverse();
            let extra = &gens[0] * &(&gens[gens.len() - 1] + &Polynomial::var(0, O));
            rev.push(extra);
            prop_assert_eq!(is_trivial(&Ideal::new(rev, O)).unwrap(), t);
            // witness-free route agrees
            let gb = groebner(&i).unwrap();
            prop_assert_eq!(gb.contains_unit(), t);
        }

        #[test]
        fn equality_is_an_equivalence(a in arb_gens(), b in arb_gens()) {
            let i = Ideal::new(a.clone(), O);
            let j = Ideal::new(b.clone(), O);
            prop_assert!(equal(&i, &i).unwrap());
            let sum: Vec<Polynomial> = a.iter().chain(b.iter()).cloned().collect();
            let k = Ideal::new(sum, O);
            prop_assert!(contains(&k, &i).unwrap() && contains(&k, &j).unwrap());
            prop_assert_eq!(equal(&i, &j).unwrap(), equal(&j, &i).unwrap());
        }
    }
}

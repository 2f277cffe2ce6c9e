//! Graphs whose critical group has exactly two invariant factors equal to 1.

use num_integer::Integer;
use serde::Serialize;

use super::{parameterizations, ClassifyError, FamilyKind};
use crate::graph::Graph;
use crate::snf::f_count;

/// Which clause list to evaluate. `Printed` is the list exactly as
/// stated; `Corrected` relaxes the `o = 1` clause of the tripartite family
/// from `m, n ≥ 3` to `m, n ≥ 2`, without which `K_{2,2,1}` and `K_{5,2,1}`
/// are misclassified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseSet {
    Printed,
    Corrected,
}

/// A clause that fired, with the parameters it fired on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G2Clause {
    pub family: FamilyKind,
    /// 1-based position in the family's clause list.
    pub index: usize,
    pub condition: &'static str,
    /// `(m, n, o)`.
    pub parameters: [usize; 3],
    pub gcd: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G2Verdict {
    pub member: bool,
    pub clause: Option<G2Clause>,
    /// Every parameterisation tried, as `(family, [m, n, o])`.
    pub tried: Vec<(FamilyKind, [usize; 3])>,
    /// `f1` from the Smith normal form.
    pub f1: usize,
    pub oracle_agrees: bool,
}

const TRIPARTITE: [&str; 6] = [
    "m,n,o >= 2, same parity",
    "m,n >= 3, o = 1, gcd(m+1,n+1) != 1",
    "m >= 2, n = o = 1",
    "m,n >= 2, o = 0, gcd(m,n) != 1",
    "m >= 2, n = 2, o = 0",
    "m = 2, n = 1",
];

const TRIPARTITE_O1_CORRECTED: &str = "m,n >= 2, o = 1, gcd(m+1,n+1) != 1";

const T_JOIN: [&str; 8] = [
    "m,n,o >= 2, same parity",
    "m,o >= 2, n = 1, gcd(m+1,o+1) != 1",
    "m,n >= 2, o = 1, gcd(m+1,n-1) != 1",
    "m >= 1, n = o = 1",
    "n >= 1, m = o = 1",
    "m,n >= 3, o = 0, gcd(m,n) != 1",
    "m >= 2, n = 2, o = 0",
    "m = 2, n >= 2, o = 0",
];

/// Clauses that hold at `(m, n, o)`. For the tripartite family the caller
/// passes `m ≥ n ≥ o`; for `T_n ∨ (K_m + K_o)`, `m ≥ o`.
pub fn g2_clauses(family: FamilyKind, m: usize, n: usize, o: usize, set: ClauseSet) -> Vec<G2Clause> {
    let same_parity = m % 2 == n % 2 && n % 2 == o % 2;
    let mk = |index: usize, condition: &'static str, gcd: Option<usize>| G2Clause {
        family,
        index,
        condition,
        parameters: [m, n, o],
        gcd,
    };
    let mut out = Vec::new();
    match family {
        FamilyKind::Tripartite => {
            let g1 = (m + 1).gcd(&(n + 1));
            let g0 = m.gcd(&n);
            let lo = if set == ClauseSet::Printed { 3 } else { 2 };
            let conds = [
                (m >= 2 && n >= 2 && o >= 2 && same_parity, None),
                (m >= lo && n >= lo && o == 1 && g1 != 1, Some(g1)),
                (m >= 2 && n == 1 && o == 1, None),
                (m >= 2 && n >= 2 && o == 0 && g0 != 1, Some(g0)),
                (m >= 2 && n == 2 && o == 0, None),
                (m == 2 && n == 1, None),
            ];
            for (i, (fires, gcd)) in conds.into_iter().enumerate() {
                if fires {
                    let text = if i == 1 && set == ClauseSet::Corrected {
                        TRIPARTITE_O1_CORRECTED
                    } else {
                        TRIPARTITE[i]
                    };
                    out.push(mk(i + 1, text, gcd));
                }
            }
        }
        FamilyKind::TJoinCliques => {
            let ga = (m + 1).gcd(&(o + 1));
            let gb = if n >= 1 { (m + 1).gcd(&(n - 1)) } else { 0 };
            let g0 = m.gcd(&n);
            let conds = [
                (m >= 2 && n >= 2 && o >= 2 && same_parity, None),
                (m >= 2 && o >= 2 && n == 1 && ga != 1, Some(ga)),
                (m >= 2 && n >= 2 && o == 1 && gb != 1, Some(gb)),
                (m >= 1 && n == 1 && o == 1, None),
                (n >= 1 && m == 1 && o == 1, None),
                (m >= 3 && n >= 3 && o == 0 && g0 != 1, Some(g0)),
                (m >= 2 && n == 2 && o == 0, None),
                (m == 2 && n >= 2 && o == 0, None),
            ];
            for (i, (fires, gcd)) in conds.into_iter().enumerate() {
                if fires {
                    out.push(mk(i + 1, T_JOIN[i], gcd));
                }
            }
        }
        _ => {}
    }
    out
}

/// `f1(G) = 2` decided from the clause lists, over every way of writing `G`
/// as a family member, and cross-checked against the Smith normal form.
pub fn in_g2(g: &Graph) -> Result<G2Verdict, ClassifyError> {
    in_g2_with(g, ClauseSet::Corrected)
}

pub fn in_g2_with(g: &Graph, set: ClauseSet) -> Result<G2Verdict, ClassifyError> {
    g.require_simple()?;
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let mut tried = Vec::new();
    let mut clause = None;
    for p in parameterizations(g)? {
        // stored as (m,n,o) for tripartite, (n,m,o) for the join
        let (m, n, o) = match p.family {
            FamilyKind::Tripartite => (p.parameters[0], p.parameters[1], p.parameters[2]),
            _ => (p.parameters[1], p.parameters[0], p.parameters[2]),
        };
        tried.push((p.family, [m, n, o]));
        if clause.is_none() {
            clause = g2_clauses(p.family, m, n, o, set).into_iter().next();
        }
    }
    let f1 = f_count(g, 1).expect("connected");
    let member = clause.is_some();
    Ok(G2Verdict {
        member,
        clause,
        tried,
        f1,
        oracle_agrees: member == (f1 == 2),
    })
}

//! Reference 3-minor tables and `I_3` presentations for the complete
//! tripartite graphs and `T_n ∨ (K_m + K_o)`, kept as data and checked
//! against the minors actually computed.
//!
//! Table lines read `[marker] guard : template`. Placeholders `x{i1}`,
//! `y{j2}`, `z{k1}` range over strictly increasing indices in the `X`, `Y`,
//! `Z` blocks. A `-` marker flags a printed entry that is not a minor, a `+`
//! marker an entry the printed table lacks.

mod guard;

pub use guard::Guard;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::critical::{critical_ideal, generalized_laplacian, k_minors, CriticalError, ORDER};
use crate::graph::{families, Graph};
use crate::ideal::{decide_triviality, groebner_with_budget, Budget, Ideal, IdealError};
use crate::poly::{parse_polynomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: no I_3 presentation for (m,n,o) = {params:?}: {reason}")]
    Hypothesis {
        family: Family,
        params: [usize; 3],
        reason: String,
    },
    #[error("table {file} line {line}: {message}")]
    Syntax {
        file: &'static str,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// The four generalized Laplacians with reference 3-minor tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `K_{m,n}`
    Kmn,
    /// `K_{m,n,o}`
    Kmno,
    /// `K_m ∨ T_n`
    KmJoinTn,
    /// `T_n ∨ (K_m + K_o)`
    TnJoinKmKo,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Kmn, Family::Kmno, Family::KmJoinTn, Family::TnJoinKmKo];

    /// Whether the family has a third block.
    pub fn has_z(self) -> bool {
        matches!(self, Family::Kmno | Family::TnJoinKmKo)
    }

    /// The graph in block layout `X`, `Y`, `Z`, labelled `x1.., y1.., z1..`.
    pub fn graph(self, m: usize, n: usize, o: usize) -> Graph {
        let o = if self.has_z() { o } else { 0 };
        let g = match self {
            Family::Kmn | Family::Kmno => families::complete_multipartite(&[m, n, o]),
            Family::KmJoinTn | Family::TnJoinKmKo => families::t_join_cliques(n, m, o),
        };
        g.with_labels(block_names(m, n, o)).expect("label count matches")
    }

    fn table_source(self) -> (&'static str, &'static str) {
        match self {
            Family::Kmn => ("kmn.txt", include_str!("../../tables/kmn.txt")),
            Family::Kmno => ("kmno.txt", include_str!("../../tables/kmno.txt")),
            Family::KmJoinTn => ("km_join_tn.txt", include_str!("../../tables/km_join_tn.txt")),
            Family::TnJoinKmKo => ("tn_join_km_ko.txt", include_str!("../../tables/tn_join_km_ko.txt")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Kmn => "Kmn",
            Family::Kmno => "Kmno",
            Family::KmJoinTn => "KmJoinTn",
            Family::TnJoinKmKo => "TnJoinKmKo",
        })
    }
}

impl FromStr for Family {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, TableError> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| TableError::UnknownFamily(s.to_string()))
    }
}

pub fn block_names(m: usize, n: usize, o: usize) -> Vec<String> {
    (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|j| format!("y{j}")))
        .chain((1..=o).map(|k| format!("z{k}")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Marker {
    Printed,
    NotAMinor,
    Added,
}

/// Which table rows to instantiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMode {
    /// Rows as stated, including those marked `-`.
    Printed,
    /// Stated rows minus `-` rows plus `+` rows.
    Corrected,
}

/// One table row.
#[derive(Debug, Clone)]
pub struct MinorPattern {
    pub marker: Marker,
    pub guard: Guard,
    pub template: String,
    pub line: usize,
}

impl MinorPattern {
    fn active(&self, mode: TableMode) -> bool {
        match mode {
            TableMode::Printed => self.marker != Marker::Added,
            TableMode::Corrected => self.marker != Marker::NotAMinor,
        }
    }

    /// Every instantiation over increasing index tuples, as text.
    pub fn instantiate(&self, m: usize, n: usize, o: usize) -> Vec<String> {
        let mut slots: BTreeMap<char, Vec<String>> = BTreeMap::new();
        let t = &self.template;
        let mut rest = t.as_str();
        while let Some(a) = rest.find('{') {
            let b = rest[a..].find('}').map(|b| a + b).expect("checked on load");
            let name = rest[a + 1..b].to_string();
            let block = name.chars().next().unwrap();
            let v = slots.entry(block).or_default();
            if !v.contains(&name) {
                v.push(name);
            }
            rest = &rest[b + 1..];
        }
        let mut out = vec![t.clone()];
        for (block, names) in slots.iter_mut() {
            names.sort();
            let size = match block {
                'i' => m,
                'j' => n,
                _ => o,
            };
            let mut next = Vec::new();
            for s in &out {
                for idx in crate::critical::subsets(size, names.len()) {
                    let mut s = s.clone();
                    for (nm, i) in names.iter().zip(&idx) {
                        s = s.replace(&format!("{{{nm}}}"), &(i + 1).to_string());
                    }
                    next.push(s);
                }
            }
            out = next;
        }
        out
    }
}

fn parse_table(file: &'static str, src: &str) -> Result<Vec<MinorPattern>, TableError> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let syntax = |message: String| TableError::Syntax { file, line, message };
        let (marker, s) = match s.as_bytes()[0] {
            b'-' => (Marker::NotAMinor, s[1..].trim_start()),
            b'+' => (Marker::Added, s[1..].trim_start()),
            _ => (Marker::Printed, s),
        };
        let (g, t) = s.split_once(':').ok_or_else(|| syntax("missing ':'".into()))?;
        let guard = Guard::parse(g.trim()).map_err(syntax)?;
        let template = t.trim().to_string();
        if template.matches('{').count() != template.matches('}').count() {
            return Err(syntax("unbalanced placeholder".into()));
        }
        for piece in template.split('{').skip(1) {
            let name = piece.split('}').next().unwrap_or("");
            let ok = name.len() >= 2
                && matches!(name.as_bytes()[0], b'i' | b'j' | b'k')
                && name[1..].bytes().all(|c| c.is_ascii_digit());
            if !ok {
                return Err(syntax(format!("bad placeholder {{{name}}}")));
            }
        }
        out.push(MinorPattern {
            marker,
            guard,
            template,
            line,
        });
    }
    Ok(out)
}

/// The rows of a family's table.
pub fn minor_table(family: Family) -> Result<Vec<MinorPattern>, TableError> {
    let (file, src) = family.table_source();
    parse_table(file, src)
}

fn instantiate_all<'a>(rows: impl Iterator<Item = &'a MinorPattern>, m: usize, n: usize, o: usize) -> Vec<Polynomial> {
    let names = block_names(m, n, o);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for row in rows {
        for text in row.instantiate(m, n, o) {
            let p = parse_polynomial(&text, &names, ORDER).expect("templates use block names");
            if p.is_zero() {
                continue;
            }
            let p = p.normalize_sign();
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| a.cmp_terms(b));
    out
}

fn check_params(family: Family, m: usize, n: usize, o: usize) -> Result<(), TableError> {
    let ok = m >= 1 && n >= 1 && (!family.has_z() || o >= 1) && (family.has_z() || o == 0);
    if ok {
        Ok(())
    } else {
        Err(TableError::Hypothesis {
            family,
            params: [m, n, o],
            reason: "every block must be non-empty".into(),
        })
    }
}

/// The table's 3-minors at `(m, n, o)`, positive leading coefficient,
/// without duplicates. `o` is ignored for two-block families.
pub fn expected_3minors(
    family: Family,
    m: usize,
    n: usize,
    o: usize,
    mode: TableMode,
) -> Result<Vec<Polynomial>, TableError> {
    let o = if family.has_z() { o } else { 0 };
    check_params(family, m, n, o)?;
    let rows = minor_table(family)?;
    Ok(instantiate_all(
        rows.iter().filter(|r| r.active(mode) && r.guard.eval(m, n, o)),
        m,
        n,
        o,
    ))
}

/// Outcome of comparing a table with the computed minors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub family: Family,
    pub params: [usize; 3],
    pub mode: TableMode,
    pub computed: usize,
    pub expected: usize,
    /// Minors the table does not produce.
    pub missing_from_table: Vec<String>,
    /// Table entries that are not minors.
    pub extra_in_table: Vec<String>,
}

impl TableCheck {
    pub fn pass(&self) -> bool {
        self.missing_from_table.is_empty() && self.extra_in_table.is_empty()
    }
}

pub fn verify_minor_table(
    family: Family,
    m: usize,
    n: usize,
    o: usize,
    mode: TableMode,
) -> Result<TableCheck, TableError> {
    let o = if family.has_z() { o } else { 0 };
    let expected = expected_3minors(family, m, n, o, mode)?;
    let g = family.graph(m, n, o);
    let l = generalized_laplacian(&g);
    let computed = if g.order() >= 3 { k_minors(&l, 3)? } else { Vec::new() };
    let names = block_names(m, n, o);
    let cs: HashSet<&Polynomial> = computed.iter().collect();
    let es: HashSet<&Polynomial> = expected.iter().collect();
    Ok(TableCheck {
        family,
        params: [m, n, o],
        mode,
        computed: computed.len(),
        expected: expected.len(),
        missing_from_table: computed
            .iter()
            .filter(|p| !es.contains(p))
            .map(|p| p.render(&names))
            .collect(),
        extra_in_table: expected
            .iter()
            .filter(|p| !cs.contains(p))
            .map(|p| p.render(&names))
            .collect(),
    })
}

fn i3_source(family: Family) -> Result<(&'static str, &'static str), TableError> {
    match family {
        Family::Kmno => Ok(("i3_kmno.txt", include_str!("../../tables/i3_kmno.txt"))),
        Family::TnJoinKmKo => Ok((
            "i3_tn_join_km_ko.txt",
            include_str!("../../tables/i3_tn_join_km_ko.txt"),
        )),
        f => Err(TableError::UnknownFamily(format!("{f} has no I_3 presentation"))),
    }
}

/// One case of an `I_3` presentation: its guard and generator templates.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    pub guard: Guard,
    pub generators: Vec<MinorPattern>,
}

pub fn i3_presentations(family: Family) -> Result<Vec<IdealPresentation>, TableError> {
    let (file, src) = i3_source(family)?;
    let mut cases: Vec<IdealPresentation> = Vec::new();
    for row in parse_table(file, src)? {
        match cases.iter_mut().find(|c| c.guard == row.guard) {
            Some(c) => c.generators.push(row),
            None => cases.push(IdealPresentation {
                guard: row.guard.clone(),
                generators: vec![row],
            }),
        }
    }
    Ok(cases)
}

/// Whether `(m, n, o)` meets the hypotheses of its presentation. For the
/// join family, `m = o = 1` is admitted (the presentation lists it) although
/// those graphs are complete bipartite; stars and complete graphs are not.
pub fn i3_admissible(family: Family, m: usize, n: usize, o: usize) -> Result<(), String> {
    if m + n + o < 4 {
        return Err("m+n+o < 4".into());
    }
    match family {
        Family::Kmno => {
            if !(m >= n && n >= o) {
                return Err("needs m >= n >= o".into());
            }
            if n == 0 {
                return Err("disconnected".into());
            }
        }
        Family::TnJoinKmKo => {
            if m < o {
                return Err("needs m >= o".into());
            }
            if n == 0 || m == 0 {
                return Err("disconnected".into());
            }
            if o == 0 && n == 1 {
                return Err("complete graph".into());
            }
            if o == 0 && m == 1 {
                return Err("star (complete bipartite)".into());
            }
        }
        _ => return Err("no presentation for this family".into()),
    }
    Ok(())
}

/// The presented `I_3` at `(m, n, o)`.
pub fn expected_i3(family: Family, m: usize, n: usize, o: usize) -> Result<Ideal, TableError> {
    let hyp = |reason: String| TableError::Hypothesis {
        family,
        params: [m, n, o],
        reason,
    };
    i3_admissible(family, m, n, o).map_err(hyp)?;
    let cases = i3_presentations(family)?;
    let firing: Vec<&IdealPresentation> = cases.iter().filter(|c| c.guard.eval(m, n, o)).collect();
    match firing.as_slice() {
        [c] => Ok(Ideal::new(instantiate_all(c.generators.iter(), m, n, o), ORDER)),
        [] => Err(hyp("no case applies".into())),
        _ => Err(hyp(format!("{} cases apply", firing.len()))),
    }
}

/// Outcome of comparing computed and presented `I_3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct I3Check {
    pub family: Family,
    pub params: [usize; 3],
    pub presented: Vec<String>,
    pub computed_generators: usize,
    /// Presented generators outside the computed ideal.
    pub presented_not_in_computed: Vec<String>,
    /// Computed generators outside the presented ideal.
    pub computed_not_in_presented: Vec<String>,
    pub presented_trivial: bool,
}

impl I3Check {
    pub fn pass(&self) -> bool {
        self.presented_not_in_computed.is_empty()
            && self.computed_not_in_presented.is_empty()
            && !self.presented_trivial
    }
}

/// Mutual containment of computed and presented `I_3`, plus non-triviality.
pub fn verify_i3(family: Family, m: usize, n: usize, o: usize) -> Result<I3Check, TableError> {
    let presented = expected_i3(family, m, n, o)?;
    let g = family.graph(m, n, o);
    let computed = critical_ideal(&g, 3).ideal;
    let names = block_names(m, n, o);
    let budget = Budget::from_env();
    let gb_c = groebner_with_budget(&computed, budget)?;
    let gb_p = groebner_with_budget(&presented, budget)?;
    let outside = |gens: &[Polynomial], gb: &crate::ideal::GroebnerBasis| -> Vec<String> {
        gens.iter()
            .filter(|p| !gb.reduces_to_zero(p))
            .map(|p| p.render(&names))
            .collect()
    };
    Ok(I3Check {
        family,
        params: [m, n, o],
        presented: presented.render(&names),
        computed_generators: computed.generators().len(),
        presented_not_in_computed: outside(presented.generators(), &gb_c),
        computed_not_in_presented: outside(computed.generators(), &gb_p),
        presented_trivial: decide_triviality(&presented, budget)?.is_trivial(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, names: &[String]) -> Polynomial {
        parse_polynomial(s, names, ORDER).unwrap().normalize_sign()
    }

    #[test]
    fn tables_load() {
        for f in Family::ALL {
            assert!(!minor_table(f).unwrap().is_empty());
        }
        assert_eq!("kmno".parse::<Family>().unwrap(), Family::Kmno);
        assert!(matches!("K4".parse::<Family>(), Err(TableError::UnknownFamily(_))));
        assert!(matches!(
            parse_table("t", "m>=2 x1"),
            Err(TableError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_table("t", "m>=2 : x{q1}"),
            Err(TableError::Syntax { .. })
        ));
    }

    #[test]
    fn instantiation() {
        let row = MinorPattern {
            marker: Marker::Printed,
            guard: Guard::True,
            template: "x{i1}*x{i2}*y{j1} - x{i1} - x{i2}".into(),
            line: 0,
        };
        let v = row.instantiate(3, 2, 0);
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], "x1*x2*y1 - x1 - x2");
        assert!(row.instantiate(1, 2, 0).is_empty());
    }

    #[test]
    fn kmn_examples() {
        let names = block_names(2, 2, 0);
        let e = expected_3minors(Family::Kmn, 2, 2, 0, TableMode::Printed).unwrap();
        for s in ["x1+x2", "y1+y2", "x1*y1", "x1*x2*y1 - x1 - x2", "y1*y2*x2 - y1 - y2"] {
            assert!(e.contains(&p(s, &names)), "{s}");
        }
        assert!(verify_minor_table(Family::Kmn, 3, 3, 0, TableMode::Printed)
            .unwrap()
            .pass());
    }

    #[test]
    fn kmno_examples() {
        let names = block_names(2, 2, 2);
        let e = expected_3minors(Family::Kmno, 2, 2, 2, TableMode::Printed).unwrap();
        assert!(e.contains(&Polynomial::constant(2, ORDER)));
        let names1 = block_names(1, 1, 1);
        let e = expected_3minors(Family::Kmno, 1, 1, 1, TableMode::Printed).unwrap();
        assert!(e.contains(&p("-2-x1-y1-z1+x1*y1*z1", &names1)));
        assert!(verify_minor_table(Family::Kmno, 2, 2, 2, TableMode::Printed)
            .unwrap()
            .pass());
        let _ = names;
    }

    #[test]
    fn printed_kmno_misplaces_the_plus_two_entries() {
        let c = verify_minor_table(Family::Kmno, 2, 2, 1, TableMode::Printed).unwrap();
        assert_eq!(c.missing_from_table, vec!["z1 + 2"]);
        assert_eq!(c.extra_in_table.len(), 4);
        assert!(verify_minor_table(Family::Kmno, 2, 2, 1, TableMode::Corrected)
            .unwrap()
            .pass());
    }

    #[test]
    fn i3_examples() {
        let names = block_names(2, 1, 1);
        let i = expected_i3(Family::Kmno, 2, 1, 1).unwrap();
        let want: Vec<Polynomial> = ["x1*x2+x1+x2", "x1*z1+x1", "x2*z1+x2", "y1+z1+2"]
            .iter()
            .map(|s| p(s, &names))
            .collect();
        for w in &want {
            assert!(i.generators().contains(w));
        }
        assert_eq!(i.generators().len(), 4);
        let names = block_names(1, 2, 1);
        let i = expected_i3(Family::TnJoinKmKo, 1, 2, 1).unwrap();
        assert_eq!(i.render(&names).len(), 3);
        assert!(i.generators().contains(&p("y2*z1", &names)));
        let names = block_names(2, 2, 0);
        let i = expected_i3(Family::TnJoinKmKo, 2, 2, 0).unwrap();
        assert!(i.generators().contains(&p("x2*y1+y1", &names)));
        assert!(matches!(
            expected_i3(Family::TnJoinKmKo, 3, 1, 0),
            Err(TableError::Hypothesis { .. })
        ));
        assert!(matches!(
            expected_i3(Family::Kmno, 1, 2, 1),
            Err(TableError::Hypothesis { .. })
        ));
    }

    #[test]
    fn i3_verified() {
        let c = verify_i3(Family::Kmno, 2, 2, 2).unwrap();
        assert!(c.pass(), "{c:?}");
        assert_eq!(c.presented.len(), 7);
        let c = verify_i3(Family::TnJoinKmKo, 2, 1, 2).unwrap();
        assert!(c.pass(), "{c:?}");
        let mut got = c.presented.clone();
        got.sort();
        assert_eq!(got, vec!["x1 + 1", "x2 + 1", "y1 + 2", "z1 + 1", "z2 + 1"]);
    }

    #[test]
    fn guard_exclusivity() {
        for f in [Family::Kmno, Family::TnJoinKmKo] {
            let cases = i3_presentations(f).unwrap();
            for m in 0..=6 {
                for n in 0..=6 {
                    for o in 0..=6 {
                        let fire = cases.iter().filter(|c| c.guard.eval(m, n, o)).count();
                        if i3_admissible(f, m, n, o).is_ok() {
                            assert_eq!(fire, 1, "{f} {m} {n} {o}");
                        }
                    }
                }
            }
        }
    }
}
